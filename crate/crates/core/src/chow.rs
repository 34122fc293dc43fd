//! The rational Chow ring of a complete simplicial toric variety.
//!
//! The ring is `Q[x_0, ..., x_{r-1}] / (I + J)` where `x_j` is the class of the
//! divisor of ray `j`, `I` is the Stanley-Reisner ideal (products of rays that
//! do not span a cone) and `J` is spanned by the `n` linear forms
//! `sum_j <e_k*, v_j> x_j`.
//!
//! Rather than computing a Gröbner basis in all `r` variables, the `n`
//! variables of one maximal cone are eliminated through `J` (its ray matrix is
//! invertible). What is left is the ideal generated by the substituted
//! Stanley-Reisner monomials in the `r - n` kept variables, and each graded
//! piece of the quotient is computed by exact row reduction. A basis monomial
//! is a non-pivot column when monomials are ordered graded-lex with
//! `x0 > x1 > ...`, largest first.
//!
//! ```
//! use toric_csm::{chow::ChowPresentation, fan::hirzebruch, poly::GradedClass};
//!
//! let fan = hirzebruch(5)?;
//! let chow = ChowPresentation::build(&fan, Some(&[0, 3]))?;
//! assert_eq!(chow.kept_variables(), &[1, 2]);
//! assert_eq!(chow.graded_dimensions(), vec![1, 2, 1]);
//!
//! let divisors: GradedClass = "x0 + x1 + x2 + x3".parse().unwrap();
//! assert_eq!(chow.normal_form(&divisors).to_string(), "2*x1 + 7*x2");
//! # Ok::<(), toric_csm::Error>(())
//! ```

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{rational_rref, RationalMatrix};
use crate::poly::{GradedClass, Monomial};

/// Inclusion-minimal sets of rays that do not lie in a common cone. Their
/// squarefree monomials generate the Stanley-Reisner ideal. Sorted by size,
/// then lexicographically.
pub fn stanley_reisner_nonfaces(fan: &Fan) -> Vec<Vec<usize>> {
    // `s` is sorted, so a binary search in the face table decides membership
    let is_face = |s: &[usize]| s.is_empty() || fan.cone(s).is_some();

    let mut out: Vec<Vec<usize>> = (0..fan.num_rays())
        .filter(|&j| !is_face(&[j]))
        .map(|j| vec![j])
        .collect();

    // a minimal non-face of size k has all its (k-1)-subsets as faces, so it
    // extends a (k-1)-face by a ray of larger index
    let mut sub = Vec::with_capacity(fan.dim() + 1);
    for k in 2..=fan.dim() + 1 {
        for face in fan.cones(k - 1) {
            let last = *face.rays().last().expect("cones are nonempty");
            for j in (last + 1)..fan.num_rays() {
                let mut candidate = face.rays().to_vec();
                candidate.push(j);
                if is_face(&candidate) {
                    continue;
                }
                let minimal = (0..k - 1).all(|skip| {
                    sub.clear();
                    sub.extend(
                        candidate
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &r)| r),
                    );
                    is_face(&sub)
                });
                if minimal {
                    out.push(candidate);
                }
            }
        }
    }
    out
}

/// The `n` linear relations `sum_j (v_j)_k x_j`, one per coordinate `k`.
pub fn linear_relations(fan: &Fan) -> Vec<GradedClass> {
    (0..fan.dim())
        .map(|k| {
            fan.rays()
                .iter()
                .enumerate()
                .map(|(j, ray)| {
                    (
                        Monomial::var(j),
                        BigRational::from_integer(ray.generator().coords()[k].clone()),
                    )
                })
                .collect()
        })
        .collect()
}

/// One graded piece of the quotient: its basis and how every other monomial
/// of that degree in the kept variables rewrites into it.
#[derive(Clone, Debug)]
struct DegreePiece {
    basis: Vec<Monomial>,
    reductions: HashMap<Monomial, GradedClass>,
}

/// Data used by the degree map: the reference maximal cone, the coefficient
/// of the top basis monomial in the normal form of its squarefree monomial,
/// and its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub reference_cone: Vec<usize>,
    pub coefficient: BigRational,
    pub multiplicity: BigInt,
}

/// A presentation of the rational Chow ring ready for reduction.
#[derive(Clone, Debug)]
pub struct ChowPresentation {
    dim: usize,
    num_rays: usize,
    nonfaces: Vec<Vec<usize>>,
    linear_forms: Vec<GradedClass>,
    elim_cone: Vec<usize>,
    kept: Vec<usize>,
    substitution: BTreeMap<usize, GradedClass>,
    pieces: Vec<DegreePiece>,
    calibration: Calibration,
}

impl ChowPresentation {
    /// Builds the presentation, eliminating the variables of `elim_cone` (the
    /// lexicographically smallest maximal cone when `None`).
    pub fn build(fan: &Fan, elim_cone: Option<&[usize]>) -> Result<Self> {
        let n = fan.dim();
        let elim_cone = match elim_cone {
            Some(c) => {
                let mut c = c.to_vec();
                c.sort_unstable();
                if c.len() != n || fan.cone(&c).is_none() {
                    return Err(Error::BadEliminationCone(c));
                }
                c
            }
            None => fan.cones(n)[0].rays().to_vec(),
        };
        let kept: Vec<usize> = (0..fan.num_rays())
            .filter(|j| elim_cone.binary_search(j).is_err())
            .collect();

        let substitution = solve_linear_relations(fan, &elim_cone, &kept)?;
        let nonfaces = stanley_reisner_nonfaces(fan);
        let linear_forms = linear_relations(fan);

        let mut partial = ChowPresentation {
            dim: n,
            num_rays: fan.num_rays(),
            nonfaces,
            linear_forms,
            elim_cone,
            kept,
            substitution,
            pieces: Vec::new(),
            calibration: Calibration {
                reference_cone: Vec::new(),
                coefficient: BigRational::zero(),
                multiplicity: BigInt::zero(),
            },
        };

        let generators: Vec<GradedClass> = partial
            .nonfaces
            .iter()
            .filter(|s| s.len() <= n)
            .map(|s| {
                partial.substitute(&GradedClass::term(
                    Monomial::from_vars(s),
                    BigRational::one(),
                ))
            })
            .filter(|g| !g.is_zero())
            .collect();
        partial.pieces = (0..=n as u32)
            .into_par_iter()
            .map(|d| degree_piece(&partial.kept, &generators, d))
            .collect();

        let top = partial.pieces[n].basis.len();
        if top != 1 {
            return Err(Error::TopDegreeNotOneDimensional(top));
        }

        let reference = &fan.cones(n)[0];
        let reduced = partial.normal_form(&GradedClass::term(
            Monomial::from_vars(reference.rays()),
            BigRational::one(),
        ));
        let coefficient = reduced.coefficient(&partial.pieces[n].basis[0]);
        if coefficient.is_zero() {
            return Err(Error::DegeneratePresentation);
        }
        partial.calibration = Calibration {
            reference_cone: reference.rays().to_vec(),
            coefficient,
            multiplicity: fan.multiplicity(reference)?,
        };
        Ok(partial)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.num_rays
    }

    /// Minimal non-faces (Stanley-Reisner generators).
    pub fn nonfaces(&self) -> &[Vec<usize>] {
        &self.nonfaces
    }

    pub fn linear_forms(&self) -> &[GradedClass] {
        &self.linear_forms
    }

    pub fn elimination_cone(&self) -> &[usize] {
        &self.elim_cone
    }

    pub fn kept_variables(&self) -> &[usize] {
        &self.kept
    }

    /// Eliminated variable -> linear form in the kept variables.
    pub fn substitution(&self) -> &BTreeMap<usize, GradedClass> {
        &self.substitution
    }

    /// Basis monomials of the degree-`d` piece, in display order.
    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.pieces.get(d).map_or(&[], |p| p.basis.as_slice())
    }

    /// `dim_Q` of each graded piece, degrees `0..=n`.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    /// The unique basis monomial of the top degree.
    pub fn top_monomial(&self) -> &Monomial {
        &self.pieces[self.dim].basis[0]
    }

    /// Rewrites a class in all ray variables as a polynomial in the kept
    /// variables. Terms above degree `n` are dropped (they vanish in the ring).
    pub fn substitute(&self, c: &GradedClass) -> GradedClass {
        let n = self.dim as u32;
        let mut out = GradedClass::zero();
        for (m, q) in c.terms() {
            if m.degree() > n {
                continue;
            }
            let mut expanded = GradedClass::constant(q.clone());
            for &(v, e) in m.factors() {
                let form = match self.substitution.get(&v) {
                    Some(f) => f.clone(),
                    None => GradedClass::var(v),
                };
                for _ in 0..e {
                    expanded = expanded.mul_truncated(&form, n);
                }
            }
            out += expanded;
        }
        out
    }

    /// Canonical representative: substitute eliminated variables, then rewrite
    /// each graded piece in its basis.
    pub fn normal_form(&self, c: &GradedClass) -> GradedClass {
        self.reduce_kept(self.substitute(c))
    }

    /// Reduces a polynomial that is already in the kept variables.
    fn reduce_kept(&self, c: GradedClass) -> GradedClass {
        let mut out = GradedClass::zero();
        for (m, q) in c.into_terms() {
            let d = m.degree() as usize;
            if d > self.dim {
                continue;
            }
            match self.pieces[d].reductions.get(&m) {
                Some(r) => out += r.scale(&q),
                None => out.add_term(m, q),
            }
        }
        out
    }

    /// Degree (integral) of the top-graded part of `c`: the top basis
    /// monomial `b` integrates to `1 / (c0 * mult(sigma0))`, since
    /// `mult(sigma0) * x_{sigma0}` is the class of a point and reduces to
    /// `mult(sigma0) * c0 * b`.
    pub fn degree(&self, c: &GradedClass) -> BigRational {
        let top = self.normal_form(&c.graded_piece(self.dim as u32));
        let q = top.coefficient(self.top_monomial());
        let scale = &self.calibration.coefficient
            * BigRational::from_integer(self.calibration.multiplicity.clone());
        q / scale
    }
}

/// Solves the `n` linear relations for the variables of `elim_cone`.
fn solve_linear_relations(
    fan: &Fan,
    elim_cone: &[usize],
    kept: &[usize],
) -> Result<BTreeMap<usize, GradedClass>> {
    let n = fan.dim();
    // [A | B] with A = generators of the eliminated rays, B = the kept rays
    let columns: Vec<usize> = elim_cone.iter().chain(kept).copied().collect();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|k| {
            columns
                .iter()
                .map(|&j| BigRational::from_integer(fan.rays()[j].generator().coords()[k].clone()))
                .collect()
        })
        .collect();
    let (reduced, pivots) = rational_rref(&RationalMatrix::from_rows(rows));
    if pivots != (0..n).collect::<Vec<_>>() {
        return Err(Error::Internal(format!(
            "ray matrix of elimination cone {elim_cone:?} is singular"
        )));
    }
    // x_E = -A^{-1} B x_K
    Ok(elim_cone
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let form = kept
                .iter()
                .enumerate()
                .map(|(t, &k)| (Monomial::var(k), -reduced[(i, n + t)].clone()))
                .collect();
            (e, form)
        })
        .collect())
}

fn degree_piece(kept: &[usize], generators: &[GradedClass], d: u32) -> DegreePiece {
    let columns = Monomial::all_of_degree(kept, d);
    let index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in generators {
        let gd = g.max_degree().expect("nonzero generator");
        if gd > d {
            continue;
        }
        for m in Monomial::all_of_degree(kept, d - gd) {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (gm, q) in g.terms() {
                row[index[&gm.mul(&m)]] = q.clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return DegreePiece {
            basis: columns,
            reductions: HashMap::new(),
        };
    }

    let (reduced, pivots) = rational_rref(&RationalMatrix::from_rows(rows));
    let mut is_pivot = vec![false; columns.len()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Monomial> = columns
        .iter()
        .zip(&is_pivot)
        .filter(|(_, &p)| !p)
        .map(|(m, _)| m.clone())
        .collect();
    let reductions = pivots
        .iter()
        .enumerate()
        .map(|(row, &p)| {
            let rewrite = (0..columns.len())
                .filter(|&j| !is_pivot[j])
                .map(|j| (columns[j].clone(), -reduced[(row, j)].clone()))
                .collect();
            (columns[p].clone(), rewrite)
        })
        .collect();
    DegreePiece { basis, reductions }
}
