//! Standard fans used as test and benchmark inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Fan, LatticeVector};
use crate::error::{Error, Result};

fn unit(n: usize, i: usize) -> LatticeVector {
    (0..n).map(|k| i64::from(k == i)).collect()
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// Projective space `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`, every
/// `n`-subset of them a maximal cone.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| unit(n, i)).collect();
    rays.push((0..n).map(|_| -1i64).collect());
    Ok(Fan::new(n, rays, subsets(n + 1, n))?.with_name(format!("P^{n}")))
}

/// The Hirzebruch surface `H_r`: rays `(1,0), (0,1), (-1,r), (0,-1)` with
/// consecutive pairs as maximal cones.
pub fn hirzebruch(r: u64) -> Result<Fan> {
    let rays: Vec<LatticeVector> = vec![
        vec![BigInt::one(), BigInt::zero()].into(),
        vec![BigInt::zero(), BigInt::one()].into(),
        vec![-BigInt::one(), BigInt::from(r)].into(),
        vec![BigInt::zero(), -BigInt::one()].into(),
    ];
    Ok(Fan::new(2, rays, vec![[0, 1], [1, 2], [2, 3], [3, 0]])?.with_name(format!("H_{r}")))
}

/// Weighted projective space `P(q_0, ..., q_n)`.
///
/// Rays are `e_1, ..., e_n` followed by `v_0 = -(q_1 e_1 + ... + q_n e_n) / q_0`;
/// the maximal cones are all `n`-subsets. Only weight vectors for which `v_0`
/// is integral and primitive are supported, which for `gcd = 1` forces
/// `q_0 = 1`.
pub fn weighted_projective(weights: &[u64]) -> Result<Fan> {
    if weights.len() < 2 {
        return Err(Error::UnsupportedWeights(format!(
            "need at least two weights, got {}",
            weights.len()
        )));
    }
    if weights.contains(&0) {
        return Err(Error::UnsupportedWeights("weights must be positive".into()));
    }
    let g = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
    if g != 1 {
        return Err(Error::UnsupportedWeights(format!(
            "weights have common factor {g}"
        )));
    }
    let n = weights.len() - 1;
    let q0 = BigInt::from(weights[0]);
    let mut v0 = Vec::with_capacity(n);
    for &q in &weights[1..] {
        let (quot, rem) = BigInt::from(q).div_rem(&q0);
        if !rem.is_zero() {
            return Err(Error::UnsupportedWeights(format!(
                "q_0 = {} does not divide {q}",
                weights[0]
            )));
        }
        v0.push(-quot);
    }
    let v0 = LatticeVector::new(v0);
    if !v0.content().is_one() {
        return Err(Error::UnsupportedWeights(format!(
            "ray {v0} is not primitive"
        )));
    }
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(v0);
    let name = format!(
        "P({})",
        weights
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(Fan::new(n, rays, subsets(n + 1, n))?.with_name(name))
}

/// Product fan in `N_1 x N_2`: the rays of `a` padded with trailing zeros,
/// then the rays of `b` padded with leading zeros; every union of a maximal
/// cone of `a` with one of `b` is a maximal cone.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan> {
    let (n1, n2) = (a.dim(), b.dim());
    let mut rays: Vec<LatticeVector> = Vec::with_capacity(a.num_rays() + b.num_rays());
    for r in a.rays() {
        let mut c = r.generator().coords().to_vec();
        c.resize(n1 + n2, BigInt::zero());
        rays.push(c.into());
    }
    for r in b.rays() {
        let mut c = vec![BigInt::zero(); n1];
        c.extend_from_slice(r.generator().coords());
        rays.push(c.into());
    }
    let offset = a.num_rays();
    let mut cones = Vec::with_capacity(a.max_cones().len() * b.max_cones().len());
    for c1 in a.max_cones() {
        for c2 in b.max_cones() {
            let mut c: Vec<usize> = c1.rays().to_vec();
            c.extend(c2.rays().iter().map(|&i| i + offset));
            cones.push(c);
        }
    }
    let fan = Fan::new(n1 + n2, rays, cones)?;
    Ok(match (a.name(), b.name()) {
        (Some(x), Some(y)) => fan.with_name(format!("{x} x {y}")),
        _ => fan,
    })
}
