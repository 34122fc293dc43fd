//! Brute-force oracles shared by the integration tests. None of these go
//! through the elimination pipeline or the Hermite normal form.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use toric_csm::fan::{hirzebruch, product, projective_space, weighted_projective, Fan};
use toric_csm::linalg::{determinant, rational_rank, IntegerMatrix, RationalMatrix};

/// Subsets of `0..n` of size `k`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Cones of dimension `d` by testing every `d`-subset of rays for
/// containment in a maximal cone.
pub fn brute_force_cones(fan: &Fan, d: usize) -> Vec<Vec<usize>> {
    let maximal: Vec<BTreeSet<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| c.rays().iter().copied().collect())
        .collect();
    subsets(fan.num_rays(), d)
        .into_iter()
        .filter(|s| maximal.iter().any(|m| s.iter().all(|i| m.contains(i))))
        .collect()
}

/// Multiplicity as the gcd of all maximal minors of the generator matrix
/// (Bareiss determinants of every `d`-row selection).
pub fn multiplicity_by_minors(fan: &Fan, rays: &[usize]) -> BigInt {
    let m = fan.ray_matrix(rays);
    subsets(m.rows(), m.cols())
        .into_iter()
        .map(|rows| determinant(&m.select_rows(&rows)).unwrap())
        .fold(BigInt::zero(), |g, det| g.gcd(&det))
        .abs()
}

/// Exponent vectors of all monomials of degree `d` in `r` variables.
fn exponent_vectors(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in exponent_vectors(r - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Graded dimensions of `Q[x_0..x_{r-1}] / (I + J)` computed directly in all
/// `r` variables: for each degree, the number of monomials minus the rank of
/// the span of `m * g` over all Stanley-Reisner and linear generators `g`.
pub fn brute_force_graded_dimensions(fan: &Fan) -> Vec<usize> {
    let r = fan.num_rays();
    let n = fan.dim();
    // minimal non-faces, independently: subsets not in any maximal cone with
    // every one-smaller subset in some maximal cone
    let mut nonfaces: Vec<Vec<usize>> = Vec::new();
    for k in 1..=r {
        let faces_k: BTreeSet<Vec<usize>> = brute_force_cones(fan, k).into_iter().collect();
        let faces_km1: BTreeSet<Vec<usize>> = if k == 1 {
            [vec![]].into_iter().collect()
        } else {
            brute_force_cones(fan, k - 1).into_iter().collect()
        };
        for s in subsets(r, k) {
            if faces_k.contains(&s) {
                continue;
            }
            let minimal = (0..k).all(|skip| {
                let sub: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                faces_km1.contains(&sub)
            });
            if minimal {
                nonfaces.push(s);
            }
        }
    }

    // generators as (exponent vector, coefficient) lists
    let mut gens: Vec<Vec<(Vec<u32>, BigInt)>> = Vec::new();
    for s in &nonfaces {
        let mut e = vec![0u32; r];
        for &i in s {
            e[i] = 1;
        }
        gens.push(vec![(e, BigInt::from(1))]);
    }
    for k in 0..n {
        let form: Vec<(Vec<u32>, BigInt)> = (0..r)
            .filter_map(|j| {
                let c = fan.rays()[j].generator().coords()[k].clone();
                (!c.is_zero()).then(|| {
                    let mut e = vec![0u32; r];
                    e[j] = 1;
                    (e, c)
                })
            })
            .collect();
        gens.push(form);
    }

    (0..=n as u32)
        .map(|d| {
            let columns = exponent_vectors(r, d);
            let col_of = |e: &Vec<u32>| columns.iter().position(|c| c == e).unwrap();
            let mut rows: Vec<Vec<BigRational>> = Vec::new();
            for g in &gens {
                let gd: u32 = g[0].0.iter().sum();
                if gd > d {
                    continue;
                }
                for m in exponent_vectors(r, d - gd) {
                    let mut row = vec![BigRational::zero(); columns.len()];
                    for (e, c) in g {
                        let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                        row[col_of(&prod)] += BigRational::from_integer(c.clone());
                    }
                    rows.push(row);
                }
            }
            let rank = if rows.is_empty() {
                0
            } else {
                rational_rank(&RationalMatrix::from_rows(rows))
            };
            columns.len() - rank
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Pn for n = 1..=8, Hirzebruch r = 0..=10, P(1,1,q) for q = 1..=5.
pub fn base_suite() -> Vec<Fan> {
    let mut fans = Vec::new();
    for n in 1..=8 {
        fans.push(projective_space(n).unwrap());
    }
    for r in 0..=10 {
        fans.push(hirzebruch(r).unwrap());
    }
    for q in 1..=5 {
        fans.push(weighted_projective(&[1, 1, q]).unwrap());
    }
    fans
}

/// Small fans for the brute-force checks: everything with at most
/// `max_rays` rays among the base fans and their pairwise products.
pub fn small_suite(max_rays: usize) -> Vec<Fan> {
    let base: Vec<Fan> = base_suite()
        .into_iter()
        .filter(|f| f.num_rays() <= max_rays)
        .collect();
    let mut out = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.num_rays() + b.num_rays() <= max_rays {
                out.push(product(a, b).unwrap());
            }
        }
    }
    out
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows)
}
