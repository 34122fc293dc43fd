//! Monomials in the ray variables `x0, x1, ...` and rational polynomials
//! built from them.
//!
//! [`GradedClass`] is a plain sparse polynomial; the grading is by total
//! degree, and a class in the Chow ring is a `GradedClass` whose monomials
//! have been reduced to a canonical basis (see [`crate::chow`]).
//!
//! Terms are kept in *display order*: ascending degree, and inside one degree
//! the larger monomial first under graded lex with `x0 > x1 > ...`. That is
//! the order used for printing and for choosing reduction pivots.
//!
//! ```
//! use toric_csm::poly::GradedClass;
//!
//! let c: GradedClass = "4*x1*x2 + 2*x1 + 7*x2 + 1".parse()?;
//! assert_eq!(c.to_string(), "1 + 2*x1 + 7*x2 + 4*x1*x2");
//! # Ok::<(), toric_csm::poly::ParsePolyError>(())
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A monomial `x_{i1}^{e1} ... x_{ik}^{ek}`, stored sparsely with strictly
/// increasing variable indices and positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        Self {
            factors: vec![(i, 1)],
        }
    }

    /// Squarefree product of the given variables; repeats raise the exponent.
    pub fn from_vars(vars: &[usize]) -> Self {
        Self::from_exponents(vars.iter().map(|&v| (v, 1)))
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    /// Zero exponents are dropped; repeated variables accumulate.
    pub fn from_exponents<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Self {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.factors
            .binary_search_by_key(&var, |&(v, _)| v)
            .map_or(0, |i| self.factors[i].1)
    }

    /// `(variable, exponent)` pairs with increasing variable index.
    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Graded lexicographic comparison with `x0 > x1 > ...`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_cmp(&self.factors, &other.factors))
    }

    /// All monomials of total degree `degree` in the given variables, in
    /// display order (largest first).
    pub fn all_of_degree(vars: &[usize], degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: Vec<(usize, u32)> = Vec::new();
        fn go(
            vars: &[usize],
            remaining: u32,
            current: &mut Vec<(usize, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if remaining == 0 {
                out.push(Monomial {
                    factors: current.clone(),
                });
                return;
            }
            let Some((&v, rest)) = vars.split_first() else {
                return;
            };
            // larger exponent on the earlier variable comes first
            for e in (0..=remaining).rev() {
                if e > 0 {
                    current.push((v, e));
                }
                go(rest, remaining - e, current, out);
                if e > 0 {
                    current.pop();
                }
            }
        }
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        go(&sorted, degree, &mut current, &mut out);
        out
    }
}

/// Lex comparison of sparse exponent vectors with `x0 > x1 > ...`.
fn lex_cmp(a: &[(usize, u32)], b: &[(usize, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(x, ex)), Some(&(y, ey))) => match x.cmp(&y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ex != ey {
                        return ex.cmp(&ey);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl Ord for Monomial {
    /// Display order: ascending degree, then descending graded lex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_cmp(&other.factors, &self.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial with rational coefficients in the ray variables. No zero
/// coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedClass {
    terms: BTreeMap<Monomial, BigRational>,
}

impl GradedClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), BigRational::one())
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), BigRational::one())
    }

    pub fn term(m: Monomial, coeff: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(m, coeff);
        c
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigRational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one())
    }

    /// Highest degree present, `None` for the zero class.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The homogeneous piece of the given degree.
    pub fn graded_piece(&self, degree: u32) -> GradedClass {
        GradedClass {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> GradedClass {
        if factor.is_zero() {
            return GradedClass::zero();
        }
        GradedClass {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Product, dropping every term of degree above `max_degree`.
    pub fn mul_truncated(&self, other: &GradedClass, max_degree: u32) -> GradedClass {
        let mut out = GradedClass::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > max_degree {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&GradedClass> for GradedClass {
    fn add_assign(&mut self, rhs: &GradedClass) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for GradedClass {
    fn add_assign(&mut self, rhs: GradedClass) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add for GradedClass {
    type Output = GradedClass;

    fn add(mut self, rhs: GradedClass) -> GradedClass {
        self += rhs;
        self
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;

    fn neg(self) -> GradedClass {
        GradedClass {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for GradedClass {
    type Output = GradedClass;

    fn sub(self, rhs: GradedClass) -> GradedClass {
        self + (-rhs)
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;

    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl FromIterator<(Monomial, BigRational)> for GradedClass {
    fn from_iter<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut c = GradedClass::zero();
        for (m, q) in iter {
            c.add_term(m, q);
        }
        c
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GradedClass {
    /// Renders e.g. `1 + 2*x1 + 7*x2 + 4*x1*x2`; the zero class is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedClass({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParsePolyError> {
        Err(ParsePolyError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn factor(
        &mut self,
        mono: &mut Vec<(usize, u32)>,
        coeff: &mut BigRational,
    ) -> Result<(), ParsePolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let var: usize = self.digits()?.parse().map_err(|_| ParsePolyError {
                    pos: self.pos,
                    msg: "variable index too large".into(),
                })?;
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.digits()?.parse().map_err(|_| ParsePolyError {
                        pos: self.pos,
                        msg: "exponent too large".into(),
                    })?;
                }
                mono.push((var, exp));
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits parse");
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den: BigInt = self.digits()?.parse().expect("digits parse");
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    q /= BigRational::from_integer(den);
                }
                *coeff *= q;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for GradedClass {
    type Err = ParsePolyError;

    /// Parses sums of products of rationals and `x<i>^<e>` factors, the
    /// format produced by `Display`.
    fn from_str(s: &str) -> Result<Self, ParsePolyError> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let mut out = GradedClass::zero();
        let mut first = true;
        loop {
            let mut sign = BigRational::one();
            match p.peek() {
                None if first => return p.err("empty polynomial"),
                None => break,
                Some(b'+') if !first => p.pos += 1,
                Some(b'-') => {
                    p.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(c) => return p.err(format!("expected '+' or '-', found '{}'", c as char)),
            }
            first = false;
            let mut coeff = sign;
            let mut mono = Vec::new();
            p.factor(&mut mono, &mut coeff)?;
            while p.peek() == Some(b'*') {
                p.pos += 1;
                p.factor(&mut mono, &mut coeff)?;
            }
            out.add_term(Monomial::from_exponents(mono), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn monomial_order() {
        let x1 = Monomial::var(1);
        let x2 = Monomial::var(2);
        let x1x2 = Monomial::from_vars(&[1, 2]);
        let x1sq = Monomial::from_vars(&[1, 1]);
        let x2sq = Monomial::from_vars(&[2, 2]);
        assert!(Monomial::one() < x1);
        assert!(x1 < x2, "display order puts x1 first");
        assert!(x2 < x1x2);
        assert!(x1sq < x1x2 && x1x2 < x2sq);
        assert_eq!(x1.grlex_cmp(&x2), Ordering::Greater);
        assert_eq!(x1sq.grlex_cmp(&x1x2), Ordering::Greater);
        assert_eq!(x2.grlex_cmp(&x1x2), Ordering::Less);
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(&[1, 2], 2);
        let shown: Vec<String> = ms.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["x1^2", "x1*x2", "x2^2"]);
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(sorted, ms);
        assert_eq!(Monomial::all_of_degree(&[0, 1, 2], 3).len(), 10);
        assert_eq!(Monomial::all_of_degree(&[], 0), vec![Monomial::one()]);
        assert!(Monomial::all_of_degree(&[], 1).is_empty());
    }

    #[test]
    fn render_hirzebruch_class() {
        let mut c = GradedClass::zero();
        c.add_term(Monomial::from_vars(&[1, 2]), q(4));
        c.add_term(Monomial::var(1), q(2));
        c.add_term(Monomial::var(2), q(7));
        c.add_term(Monomial::one(), q(1));
        assert_eq!(c.to_string(), "1 + 2*x1 + 7*x2 + 4*x1*x2");
    }

    #[test]
    fn render_signs_and_fractions() {
        let c: GradedClass = "-x0 + 3/2*x1^2 - 1/3".parse().unwrap();
        assert_eq!(c.to_string(), "-1/3 - x0 + 3/2*x1^2");
        assert_eq!(GradedClass::zero().to_string(), "0");
        assert_eq!("0".parse::<GradedClass>().unwrap(), GradedClass::zero());
        assert_eq!(
            "x1 - x1".parse::<GradedClass>().unwrap(),
            GradedClass::zero()
        );
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x", "2 x1", "x1 +", "1/0", "y1", "x1^"] {
            assert!(bad.parse::<GradedClass>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut c = GradedClass::var(3);
        c.add_term(Monomial::var(3), q(-1));
        assert!(c.is_zero());
        c.add_term(Monomial::var(0), q(0));
        assert!(c.is_empty());
    }

    #[test]
    fn truncated_product() {
        let a: GradedClass = "1 + x0".parse().unwrap();
        let b: GradedClass = "1 + x1".parse().unwrap();
        assert_eq!((&a * &b).to_string(), "1 + x0 + x1 + x0*x1");
        assert_eq!(a.mul_truncated(&b, 1).to_string(), "1 + x0 + x1");
    }

    fn arb_class() -> impl Strategy<Value = GradedClass> {
        let term = (
            proptest::collection::vec((0usize..5, 1u32..4), 0..4),
            -50i64..50,
            1i64..7,
        );
        proptest::collection::vec(term, 0..8).prop_map(|terms| {
            terms
                .into_iter()
                .map(|(m, n, d)| {
                    (
                        Monomial::from_exponents(m),
                        BigRational::new(BigInt::from(n), BigInt::from(d)),
                    )
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(c in arb_class()) {
            let back: GradedClass = c.to_string().parse().unwrap();
            prop_assert_eq!(back, c);
        }

        #[test]
        fn display_order_matches_reversed_grlex(a in proptest::collection::vec((0usize..4, 1u32..3), 0..4),
                                                b in proptest::collection::vec((0usize..4, 1u32..3), 0..4)) {
            let (a, b) = (Monomial::from_exponents(a), Monomial::from_exponents(b));
            if a.degree() == b.degree() {
                prop_assert_eq!(a.cmp(&b), b.grlex_cmp(&a));
            }
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
        }
    }
}
