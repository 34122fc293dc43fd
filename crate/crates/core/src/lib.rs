//! Chern-Schwartz-MacPherson classes and Euler characteristics of complete
//! simplicial toric varieties, computed exactly from the fan.
//!
//! The pipeline is:
//!
//! 1. [`fan::Fan`]: validated rays and maximal cones, with the face table and
//!    cone multiplicities (via [`linalg::hermite_normal_form`]).
//! 2. [`chow::ChowPresentation`]: the rational Chow ring as a quotient of a
//!    polynomial ring, with a normal form and a degree map.
//! 3. [`csm::compute`]: the sum of all orbit-closure classes, reduced, and its
//!    degree.
//!
//! ```
//! use toric_csm::prelude::*;
//!
//! let fan = weighted_projective(&[1, 1, 2])?;
//! let chow = ChowPresentation::build(&fan, None)?;
//! let result = csm::compute(&fan, &chow, CsmOptions::default())?;
//! assert_eq!(result.euler, 3.into());
//! # Ok::<(), toric_csm::Error>(())
//! ```

pub mod chow;
pub mod csm;
mod error;
pub mod fan;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::chow::ChowPresentation;
    pub use crate::csm::{self, CsmOptions, CsmResult};
    pub use crate::fan::{hirzebruch, product, projective_space, weighted_projective, Cone, Fan};
    pub use crate::poly::{GradedClass, Monomial};
    pub use crate::{Error, Result};
}

// The guide in book/ is compiled as doc tests so its snippets stay honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fans.md")]
    mod fans {}
    #[doc = include_str!("../../../book/src/multiplicity.md")]
    mod multiplicity {}
    #[doc = include_str!("../../../book/src/chow-ring.md")]
    mod chow_ring {}
    #[doc = include_str!("../../../book/src/csm-class.md")]
    mod csm_class {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
