//! Clifford-valued polynomials in commuting variables `x_1..x_n` with exact
//! coefficients. Coefficients sit on the left of the monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::clifford::{Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::rational::{falling, Rational};

/// Exponent vector `α` of the monomial `x^α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// `v_j`, the unit index in coordinate `j` (1-based).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut a = vec![0; n];
        a[j - 1] = 1;
        MultiIndex(a)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_j` (1-based).
    pub fn get(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub(crate) fn with(&self, j: usize, exponent: u32) -> Self {
        let mut a = self.0.clone();
        a[j - 1] = exponent;
        MultiIndex(a)
    }

    pub(crate) fn scaled(&self, k: u32) -> Self {
        MultiIndex(self.0.iter().map(|a| a * k).collect())
    }

    pub fn factorial(&self) -> Rational {
        self.0.iter().map(|&a| crate::rational::factorial(a)).product()
    }

    /// Every multi-index of total degree exactly `degree`, in descending
    /// graded-lex order.
    pub fn of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in (0..=left).rev() {
                prefix.push(a);
                rec(n, left - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if degree == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(n, degree, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Every multi-index with total degree at most `degree`.
    pub fn up_to_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        (0..=degree).flat_map(|d| MultiIndex::of_degree(n, d)).collect()
    }
}

/// Graded lexicographic order: total degree first, then exponents compared
/// from `x_1` onward (so `x_1 > x_2`).
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Multivector>,
}

impl CliffPoly {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} outside 1..={MAX_DIM}");
        CliffPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Multivector::one(n))
    }

    pub fn constant(c: Multivector) -> Self {
        Self::monomial(MultiIndex::zero(c.dim()), c)
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        Self::constant(Multivector::scalar(n, value))
    }

    /// `c x^α` with the multivector on the left.
    pub fn monomial(alpha: MultiIndex, c: Multivector) -> Self {
        assert_eq!(alpha.dim(), c.dim(), "multi-index length vs dimension");
        let mut p = Self::zero(c.dim());
        if !c.is_zero() {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// The coordinate function `x_j`.
    pub fn var(n: usize, j: usize) -> Result<Self> {
        check_coord(j, n)?;
        Ok(Self::monomial(MultiIndex::unit(n, j), Multivector::one(n)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Multivector)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Multivector {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Multivector::zero(self.n))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::total)
    }

    /// Degree in `x_j` alone.
    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|a| a.get(j)).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: &Multivector) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                for (b, v) in c.terms() {
                    e.get_mut().add_term(*b, v.clone());
                }
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub(crate) fn add_scaled(&mut self, other: &CliffPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (a, c) in &other.terms {
            self.add_term(a.clone(), &c.scale(factor));
        }
    }

    fn check_dim(&self, other: &CliffPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CliffPoly) -> Result<CliffPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CliffPoly) -> Result<CliffPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &CliffPoly) -> Result<CliffPoly> {
        self.check_dim(other)?;
        let mut out = CliffPoly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let alpha = MultiIndex(a.0.iter().zip(&b.0).map(|(p, q)| p + q).collect());
                out.add_term(alpha, &(x * y));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> CliffPoly {
        if factor.is_zero() {
            return CliffPoly::zero(self.n);
        }
        CliffPoly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.scale(factor))).collect(),
        }
    }

    /// `c * self` for a constant multivector `c`.
    pub fn left_mul(&self, c: &Multivector) -> Result<CliffPoly> {
        if c.dim() != self.n {
            return Err(Error::DimensionMismatch { left: c.dim(), right: self.n });
        }
        let mut out = CliffPoly::zero(self.n);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), &(c * x));
        }
        Ok(out)
    }

    /// `e_j * self`.
    pub fn left_generator_mul(&self, j: usize) -> CliffPoly {
        CliffPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.left_generator_mul(j)))
                .collect(),
        }
    }

    /// `∂/∂x_j`.
    pub fn partial(&self, j: usize) -> Result<CliffPoly> {
        check_coord(j, self.n)?;
        Ok(self.partial_power(j, 1))
    }

    /// `∂_j^k` without range checks.
    pub(crate) fn partial_power(&self, j: usize, k: u32) -> CliffPoly {
        let mut out = CliffPoly::zero(self.n);
        for (a, c) in &self.terms {
            let e = a.get(j);
            if e >= k {
                out.add_term(a.with(j, e - k), &c.scale(&falling(e, k)));
            }
        }
        out
    }

    /// Multiplication by the coordinate `x_j`.
    pub fn mul_var(&self, j: usize) -> Result<CliffPoly> {
        check_coord(j, self.n)?;
        Ok(self.shift_var(j))
    }

    pub(crate) fn shift_var(&self, j: usize) -> CliffPoly {
        CliffPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.with(j, a.get(j) + 1), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components `(m, p_m)` in increasing degree, zero parts omitted.
    pub fn homogeneous_parts(&self) -> Vec<(u32, CliffPoly)> {
        let mut parts: Vec<(u32, CliffPoly)> = Vec::new();
        for (a, c) in &self.terms {
            let m = a.total();
            if parts.last().map(|(d, _)| *d) != Some(m) {
                parts.push((m, CliffPoly::zero(self.n)));
            }
            parts.last_mut().unwrap().1.terms.insert(a.clone(), c.clone());
        }
        parts
    }

    /// Terms whose Clifford blade has the given grade.
    pub fn grade_part(&self, grade: usize) -> CliffPoly {
        let mut out = CliffPoly::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.grade_part(grade));
        }
        out
    }

    /// True if every coefficient is a scalar.
    pub fn is_scalar_valued(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    /// Evaluates the polynomial at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Multivector {
        assert_eq!(point.len(), self.n);
        let mut out = Multivector::zero(self.n);
        for (a, c) in &self.terms {
            let v: Rational = a
                .0
                .iter()
                .zip(point)
                .map(|(&e, x)| crate::rational::pow(x, e))
                .product();
            out.add_scaled(c, &v);
        }
        out
    }

    /// Substitutes `x_j -> x_j + c` (exact translation).
    pub fn translate(&self, j: usize, c: &Rational) -> CliffPoly {
        let mut out = CliffPoly::zero(self.n);
        for (a, coef) in &self.terms {
            let e = a.get(j);
            for k in 0..=e {
                let w = crate::rational::falling(e, k) / crate::rational::factorial(k)
                    * crate::rational::pow(c, e - k);
                out.add_term(a.with(j, k), &coef.scale(&w));
            }
        }
        out
    }
}

pub(crate) fn check_coord(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(())
}

impl Add for &CliffPoly {
    type Output = CliffPoly;
    fn add(self, rhs: &CliffPoly) -> CliffPoly {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub for &CliffPoly {
    type Output = CliffPoly;
    fn sub(self, rhs: &CliffPoly) -> CliffPoly {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &CliffPoly {
    type Output = CliffPoly;
    fn mul(self, rhs: &CliffPoly) -> CliffPoly {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &CliffPoly {
    type Output = CliffPoly;
    fn neg(self) -> CliffPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::print_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(text: &str, n: usize) -> CliffPoly {
        crate::text::parse_poly(text, n).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = p("x1 e[1]", 1);
        assert_eq!(&a * &a, p("-x1^2", 1));
        let q = p("3 x1 x2 + e[1,2]", 2);
        assert_eq!(&q * &CliffPoly::one(2), q);
        assert_eq!(&p("x1", 2) + &p("x2", 2), p("x1 + x2", 2));
        assert!(p("x1", 2).checked_add(&p("x1", 3)).is_err());
    }

    #[test]
    fn coefficient_order_is_left() {
        let a = p("e[1]", 2);
        let b = p("x1 e[2]", 2);
        assert_eq!(&a * &b, p("x1 e[1,2]", 2));
        assert_eq!(&b * &a, p("-x1 e[1,2]", 2));
    }

    #[test]
    fn derivative_and_multiplication_examples() {
        assert_eq!(p("x1^2 x2", 2).partial(1).unwrap(), p("2 x1 x2", 2));
        assert!(p("x1^2", 2).partial(2).unwrap().is_zero());
        assert_eq!(p("x1 e[1,2]", 2).partial(1).unwrap(), p("e[1,2]", 2));
        assert_eq!(CliffPoly::one(2).mul_var(1).unwrap(), p("x1", 2));
        assert_eq!(p("x1", 2).mul_var(1).unwrap(), p("x1^2", 2));
        assert_eq!(p("e[1]", 2).mul_var(2).unwrap(), p("x2 e[1]", 2));
        assert!(p("x1", 2).partial(3).is_err());
        assert!(p("x1", 2).mul_var(0).is_err());
    }

    #[test]
    fn homogeneous_split() {
        let parts = p("x1^2 + x2", 2).homogeneous_parts();
        assert_eq!(parts, vec![(1, p("x2", 2)), (2, p("x1^2", 2))]);
        assert!(CliffPoly::zero(2).homogeneous_parts().is_empty());
        let parts = p("5 + x1 x2 e[1]", 2).homogeneous_parts();
        assert_eq!(parts, vec![(0, p("5", 2)), (2, p("x1 x2 e[1]", 2))]);
    }

    #[test]
    fn degree_tracking() {
        assert_eq!(CliffPoly::zero(2).degree(), None);
        assert_eq!(p("x1^2 x2 + x2", 2).degree(), Some(3));
        assert_eq!(p("x1^2 x2 + x2", 2).partial(1).unwrap().degree(), Some(2));
        assert_eq!(p("x1^2 x2 + x2^4", 2).degree_in(1), 2);
    }

    #[test]
    fn multi_index_enumeration() {
        let d2 = MultiIndex::of_degree(2, 2);
        assert_eq!(d2, vec![MultiIndex::new(vec![2, 0]), MultiIndex::new(vec![1, 1]), MultiIndex::new(vec![0, 2])]);
        assert_eq!(MultiIndex::up_to_degree(3, 2).len(), 10);
    }

    #[test]
    fn translate_matches_evaluation() {
        let q = p("x1^3 - 2 x1 x2 + 1/2 e[1]", 2);
        let t = q.translate(1, &int(2));
        let pt = [int(3), int(-1)];
        assert_eq!(t.eval(&pt), q.eval(&[int(5), int(-1)]));
    }
}
