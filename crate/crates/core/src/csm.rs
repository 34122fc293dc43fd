//! Chern-Schwartz-MacPherson classes of toric varieties.
//!
//! The class is the sum of the classes of all torus-orbit closures, one per
//! cone (the zero cone contributes the fundamental class `1`). For a
//! simplicial cone `sigma` the orbit-closure class is
//! `mult(sigma) * prod_{i in sigma} x_i`, so
//!
//! ```text
//! c_SM(X) = 1 + sum_{d=1..n} sum_{sigma in Sigma(d)} mult(sigma) x_sigma
//! ```
//!
//! reduced in the Chow ring. Its degree is the Euler characteristic, which
//! only needs the maximal cones.
//!
//! ```
//! use toric_csm::{chow::ChowPresentation, csm, fan::hirzebruch};
//!
//! let fan = hirzebruch(5)?;
//! let chow = ChowPresentation::build(&fan, Some(&[0, 3]))?;
//! let result = csm::compute(&fan, &chow, csm::CsmOptions::default())?;
//! assert_eq!(result.csm_class.to_string(), "1 + 2*x1 + 7*x2 + 4*x1*x2");
//! assert_eq!(result.euler, 4.into());
//! # Ok::<(), toric_csm::Error>(())
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::chow::ChowPresentation;
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::poly::{GradedClass, Monomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CsmOptions {
    /// Compute every multiplicity with a fresh Hermite normal form, even for
    /// smooth fans where they are all known to be 1.
    pub force_hnf: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmResult {
    pub csm_class: GradedClass,
    pub euler: BigInt,
    /// Reduced `sum_{sigma in Sigma(d)} [V(sigma)]` for `d = 0..=n`.
    pub per_dim_contributions: BTreeMap<usize, GradedClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MultiplicityPath {
    /// smooth fan, every multiplicity is 1
    Unit,
    /// Hermite form once per cone, then cached
    Cached,
    /// Hermite form on every call
    Forced,
}

impl MultiplicityPath {
    fn choose(fan: &Fan, opts: CsmOptions) -> Self {
        if opts.force_hnf {
            MultiplicityPath::Forced
        } else if fan.is_smooth() {
            MultiplicityPath::Unit
        } else {
            MultiplicityPath::Cached
        }
    }

    fn multiplicity(self, fan: &Fan, cone: &Cone) -> Result<BigInt> {
        match self {
            MultiplicityPath::Unit => Ok(BigInt::one()),
            MultiplicityPath::Cached => fan.multiplicity(cone),
            MultiplicityPath::Forced => fan.multiplicity_uncached(cone.rays()),
        }
    }
}

/// True when the computation can skip Hermite forms entirely: the fan is
/// smooth and the full path was not forced.
pub fn smooth_fast_path(fan: &Fan, opts: CsmOptions) -> bool {
    MultiplicityPath::choose(fan, opts) == MultiplicityPath::Unit
}

/// Reduced sum of the orbit-closure classes of all `d`-dimensional cones.
fn dimension_contribution(
    fan: &Fan,
    chow: &ChowPresentation,
    d: usize,
    path: MultiplicityPath,
) -> Result<GradedClass> {
    if d == 0 {
        return Ok(GradedClass::one());
    }
    fan.cones(d)
        .par_iter()
        .map(|cone| {
            let mult = path.multiplicity(fan, cone)?;
            let term = GradedClass::term(
                Monomial::from_vars(cone.rays()),
                BigRational::from_integer(mult),
            );
            Ok(chow.normal_form(&term))
        })
        .try_reduce(GradedClass::zero, |a, b| Ok(a + b))
}

fn integral_degree(chow: &ChowPresentation, class: &GradedClass) -> Result<BigInt> {
    let deg = chow.degree(class);
    if !deg.is_integer() {
        return Err(Error::InconsistentFanData(format!(
            "degree of the top class is {deg}, not an integer"
        )));
    }
    Ok(deg.to_integer())
}

/// The c_SM class with its Euler characteristic and per-dimension parts.
pub fn compute(fan: &Fan, chow: &ChowPresentation, opts: CsmOptions) -> Result<CsmResult> {
    let path = MultiplicityPath::choose(fan, opts);
    let mut per_dim = BTreeMap::new();
    let mut class = GradedClass::zero();
    for d in (0..=fan.dim()).rev() {
        let part = dimension_contribution(fan, chow, d, path)?;
        class += &part;
        per_dim.insert(d, part);
    }
    let euler = integral_degree(chow, &class)?;
    Ok(CsmResult {
        csm_class: class,
        euler,
        per_dim_contributions: per_dim,
    })
}

/// Just the reduced c_SM class.
pub fn csm_class(fan: &Fan, chow: &ChowPresentation, opts: CsmOptions) -> Result<GradedClass> {
    Ok(compute(fan, chow, opts)?.csm_class)
}

/// Euler characteristic as the degree of the c_SM class. With `euler_only`
/// only the maximal cones are summed, since nothing else reaches the top
/// degree.
pub fn euler_characteristic(
    fan: &Fan,
    chow: &ChowPresentation,
    euler_only: bool,
    opts: CsmOptions,
) -> Result<BigInt> {
    if euler_only {
        let path = MultiplicityPath::choose(fan, opts);
        let top = dimension_contribution(fan, chow, fan.dim(), path)?;
        integral_degree(chow, &top)
    } else {
        Ok(compute(fan, chow, opts)?.euler)
    }
}

/// Euler characteristic of a complete toric variety counted directly: the
/// number of maximal cones.
pub fn euler_by_cone_count(fan: &Fan) -> BigInt {
    BigInt::from(fan.max_cones().len())
}
