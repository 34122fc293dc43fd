//! Fans of complete simplicial toric varieties.
//!
//! A [`Fan`] is built once from ray generators and maximal cones, validated,
//! and then never mutated. Building it also fills in the face table: for a
//! simplicial fan every subset of a cone's rays spans a face, so the cones of
//! dimension `d` are exactly the `d`-subsets of maximal cones.
//!
//! ```
//! use toric_csm::fan::Fan;
//!
//! // the projective plane
//! let fan = Fan::new(
//!     2,
//!     vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
//!     vec![vec![0, 1], vec![1, 2], vec![2, 0]],
//! )?;
//! assert_eq!(fan.cones(1).len(), 3);
//! assert!(fan.is_smooth());
//! # Ok::<(), toric_csm::Error>(())
//! ```

mod builders;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, hermite_normal_form, strip_zero_rows, IntegerMatrix};

pub use builders::{hirzebruch, product, projective_space, weighted_projective};

/// A point of the lattice `N = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl<T: Into<BigInt>> FromIterator<T> for LatticeVector {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        v.into_iter().collect()
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        Self(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A one-dimensional cone, stored as its primitive generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    generator: LatticeVector,
}

impl Ray {
    pub fn generator(&self) -> &LatticeVector {
        &self.generator
    }
}

/// A simplicial cone, identified by the sorted indices of its rays.
///
/// The multiplicity is filled in lazily the first time it is asked for; the
/// cache is write-once and every writer computes the same value.
#[derive(Clone)]
pub struct Cone {
    rays: Vec<usize>,
    mult: OnceLock<BigInt>,
}

impl Cone {
    fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        Self {
            rays,
            mult: OnceLock::new(),
        }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    /// The cached multiplicity, if it has been computed.
    pub fn cached_multiplicity(&self) -> Option<&BigInt> {
        self.mult.get()
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

/// A validated complete simplicial fan.
#[derive(Clone)]
pub struct Fan {
    name: Option<String>,
    dim: usize,
    rays: Vec<Ray>,
    max_cones: Vec<Cone>,
    /// `faces[d - 1]` holds the `d`-dimensional cones in lexicographic order.
    faces: Vec<Vec<Cone>>,
    smooth: OnceLock<bool>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field(
                "rays",
                &self
                    .rays
                    .iter()
                    .map(|r| r.generator.to_string())
                    .collect::<Vec<_>>(),
            )
            .field("max_cones", &self.max_cones)
            .finish()
    }
}

impl Fan {
    /// Validates and builds a fan. Ray indices in `max_cones` are 0-based.
    ///
    /// Checks, in order: ray shape and primitivity, duplicate rays, maximal
    /// cone size and index range, simpliciality, that every ray is used, and
    /// the wall condition (every codimension-one face of a maximal cone lies
    /// in exactly two maximal cones). The wall condition is necessary for
    /// completeness but not sufficient.
    pub fn new<V, C>(dim: usize, rays: Vec<V>, max_cones: Vec<C>) -> Result<Fan>
    where
        V: Into<LatticeVector>,
        C: AsRef<[usize]>,
    {
        Self::build(dim, rays, max_cones, true)
    }

    /// Builds a fan with only the structural checks (dimensions, index
    /// ranges). Primitivity, simpliciality, ray coverage and the wall
    /// condition are assumed.
    pub fn new_trusted<V, C>(dim: usize, rays: Vec<V>, max_cones: Vec<C>) -> Result<Fan>
    where
        V: Into<LatticeVector>,
        C: AsRef<[usize]>,
    {
        Self::build(dim, rays, max_cones, false)
    }

    fn build<V, C>(dim: usize, rays: Vec<V>, max_cones: Vec<C>, validate: bool) -> Result<Fan>
    where
        V: Into<LatticeVector>,
        C: AsRef<[usize]>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let rays: Vec<LatticeVector> = rays.into_iter().map(Into::into).collect();
        for (index, v) in rays.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::RayWrongLength {
                    index,
                    found: v.dim(),
                    expected: dim,
                });
            }
            if validate {
                if v.is_zero() {
                    return Err(Error::ZeroRay { index });
                }
                let g = v.content();
                if !g.is_one() {
                    return Err(Error::RayNotPrimitive {
                        index,
                        gcd: g.to_string(),
                    });
                }
            }
        }
        if validate {
            let mut seen: HashMap<&LatticeVector, usize> = HashMap::new();
            for (index, v) in rays.iter().enumerate() {
                if let Some(&first) = seen.get(v) {
                    return Err(Error::DuplicateRay {
                        first,
                        second: index,
                    });
                }
                seen.insert(v, index);
            }
        }

        if max_cones.is_empty() {
            return Err(Error::NoMaxCones);
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut seen_cones: HashMap<Vec<usize>, usize> = HashMap::new();
        for (index, c) in max_cones.iter().enumerate() {
            let mut idx = c.as_ref().to_vec();
            if let Some(&ray) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::RayIndexOutOfRange {
                    cone: index,
                    ray,
                    rays: rays.len(),
                });
            }
            idx.sort_unstable();
            idx.dedup();
            if idx.len() != dim {
                return Err(Error::MaxConeWrongDimension {
                    index,
                    found: idx.len(),
                    expected: dim,
                });
            }
            if let Some(&first) = seen_cones.get(&idx) {
                return Err(Error::DuplicateMaxCone {
                    first,
                    second: index,
                });
            }
            seen_cones.insert(idx.clone(), index);
            cones.push(Cone::new(idx));
        }

        let rays: Vec<Ray> = rays
            .into_iter()
            .map(|generator| Ray { generator })
            .collect();
        let mut fan = Fan {
            name: None,
            dim,
            rays,
            max_cones: cones,
            faces: Vec::new(),
            smooth: OnceLock::new(),
        };

        if validate {
            for (index, cone) in fan.max_cones.iter().enumerate() {
                if determinant(&fan.ray_matrix(cone.rays()))?.is_zero() {
                    return Err(Error::NotSimplicial(format!(
                        "generators of maximal cone {index} {:?} are linearly dependent",
                        cone.rays()
                    )));
                }
            }
            let mut used = vec![false; fan.rays.len()];
            for cone in &fan.max_cones {
                for &i in cone.rays() {
                    used[i] = true;
                }
            }
            if let Some(index) = used.iter().position(|u| !u) {
                return Err(Error::UnusedRay { index });
            }
            if let Some((wall, count)) = fan.first_bad_wall() {
                return Err(Error::NotComplete { wall, count });
            }
        }

        fan.faces = enumerate_faces(&fan.max_cones, dim);
        Ok(fan)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Ambient lattice dimension, which is also the dimension of the variety.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Maximal cones in input order (each with sorted ray indices).
    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Cones of dimension `d` in lexicographic order of their ray indices.
    /// Empty for `d == 0` or `d > dim`.
    pub fn cones(&self, d: usize) -> &[Cone] {
        if d == 0 || d > self.dim {
            return &[];
        }
        &self.faces[d - 1]
    }

    /// All cones grouped by dimension, `1..=dim`.
    pub fn enumerate_cones(&self) -> BTreeMap<usize, &[Cone]> {
        (1..=self.dim).map(|d| (d, self.cones(d))).collect()
    }

    /// Looks up the cone spanned by the given rays.
    pub fn cone(&self, rays: &[usize]) -> Option<&Cone> {
        let key: std::borrow::Cow<[usize]> = if rays.windows(2).all(|w| w[0] < w[1]) {
            rays.into()
        } else {
            let mut key = rays.to_vec();
            key.sort_unstable();
            key.into()
        };
        let table = self.cones(key.len());
        table
            .binary_search_by(|c| c.rays.as_slice().cmp(&key))
            .ok()
            .map(|i| &table[i])
    }

    /// The `n x d` matrix whose columns are the generators of the given rays.
    pub fn ray_matrix(&self, rays: &[usize]) -> IntegerMatrix {
        IntegerMatrix::from_columns(
            self.dim,
            rays.iter().map(|&i| self.rays[i].generator.coords()),
        )
    }

    /// Multiplicity of a cone of this fan: the index of the sublattice spanned
    /// by its generators inside the lattice points of its linear span,
    /// computed as `|det|` of the Hermite block of the generator matrix.
    /// The value is cached on the cone.
    pub fn multiplicity(&self, cone: &Cone) -> Result<BigInt> {
        if let Some(m) = cone.mult.get() {
            return Ok(m.clone());
        }
        let m = self.multiplicity_uncached(cone.rays())?;
        Ok(cone.mult.get_or_init(|| m).clone())
    }

    /// Multiplicity of the cone spanned by `rays`, always running the Hermite
    /// normal form and never touching the cache.
    pub fn multiplicity_uncached(&self, rays: &[usize]) -> Result<BigInt> {
        let (h, _) = hermite_normal_form(&self.ray_matrix(rays))?;
        let block = strip_zero_rows(&h)?;
        // the block is upper triangular
        let det = (0..block.rows()).fold(BigInt::one(), |acc, i| acc * &block[(i, i)]);
        Ok(det.abs())
    }

    /// Multiplicity of the cone spanned by `rays`, which must be a cone of the fan.
    pub fn multiplicity_of(&self, rays: &[usize]) -> Result<BigInt> {
        let cone = self
            .cone(rays)
            .ok_or_else(|| Error::UnknownCone(rays.to_vec()))?;
        self.multiplicity(cone)
    }

    /// True iff every maximal cone is unimodular. Uses the determinant of each
    /// square maximal-cone matrix, so no Hermite forms are computed.
    pub fn is_smooth(&self) -> bool {
        *self.smooth.get_or_init(|| {
            self.max_cones.iter().all(|c| {
                determinant(&self.ray_matrix(c.rays()))
                    .map(|d| d.abs().is_one())
                    .unwrap_or(false)
            })
        })
    }

    /// True iff every codimension-one face of a maximal cone lies in exactly
    /// two maximal cones.
    pub fn wall_check(&self) -> bool {
        self.first_bad_wall().is_none()
    }

    fn first_bad_wall(&self) -> Option<(Vec<usize>, usize)> {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut order = Vec::new();
        for cone in &self.max_cones {
            for skip in 0..cone.rays.len() {
                let wall: Vec<usize> = cone
                    .rays
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &r)| r)
                    .collect();
                let count = counts.entry(wall.clone()).or_insert(0);
                if *count == 0 {
                    order.push(wall);
                }
                *count += 1;
            }
        }
        order.into_iter().find(|w| counts[w] != 2).map(|w| {
            let c = counts[&w];
            (w, c)
        })
    }
}

/// Faces by dimension, top down: the `(d-1)`-faces are the one-element
/// deletions of the `d`-faces.
fn enumerate_faces(max_cones: &[Cone], dim: usize) -> Vec<Vec<Cone>> {
    let top: Vec<Vec<usize>> = max_cones.iter().map(|c| c.rays.clone()).collect();
    let levels = if top.iter().flatten().all(|&r| r < 128) {
        faces_by_mask(&top, dim)
    } else {
        faces_by_vec(top, dim)
    };
    levels
        .into_iter()
        .map(|lvl| lvl.into_iter().map(Cone::new).collect())
        .collect()
}

/// Face enumeration with each cone packed into a `u128` bit set, which makes
/// the per-level deduplication a sort of plain integers.
fn faces_by_mask(top: &[Vec<usize>], dim: usize) -> Vec<Vec<Vec<usize>>> {
    let mut level: Vec<u128> = top
        .iter()
        .map(|c| c.iter().fold(0u128, |m, &r| m | (1 << r)))
        .collect();
    let mut levels = vec![Vec::new(); dim];
    for d in (0..dim).rev() {
        let mut sorted: Vec<Vec<usize>> = level
            .iter()
            .map(|&m| (0..128).filter(|&r| m >> r & 1 == 1).collect())
            .collect();
        sorted.sort_unstable();
        if d > 0 {
            let mut next = Vec::with_capacity(level.len() * (d + 1));
            for &m in &level {
                let mut rest = m;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    next.push(m & !bit);
                    rest &= !bit;
                }
            }
            next.sort_unstable();
            next.dedup();
            level = next;
        }
        levels[d] = sorted;
    }
    levels
}

fn faces_by_vec(mut top: Vec<Vec<usize>>, dim: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
    top.sort();
    levels[dim - 1] = top;
    for d in (1..dim).rev() {
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(levels[d].len() * (d + 1));
        for face in &levels[d] {
            for skip in 0..face.len() {
                let mut sub = Vec::with_capacity(face.len() - 1);
                sub.extend_from_slice(&face[..skip]);
                sub.extend_from_slice(&face[skip + 1..]);
                next.push(sub);
            }
        }
        next.sort_unstable();
        next.dedup();
        levels[d - 1] = next;
    }
    levels
}
