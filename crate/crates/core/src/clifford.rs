//! Exact arithmetic in the Clifford algebra `Cl(0,n)`: generators satisfy
//! `e_j e_k = -e_k e_j` for `j != k` and `e_j^2 = -1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 32;

/// Basis blade `e_{i1} e_{i2} ... e_{ik}` with `i1 < i2 < ... < ik`,
/// stored as a bitmask (bit `i-1` set for generator `e_i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_indices(indices: &[usize], n: usize) -> Result<Blade> {
        let mut mask = 0u64;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if i <= last {
                return Err(Error::InvalidParameter(format!(
                    "blade indices must be strictly increasing, got {indices:?}"
                )));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(Blade(mask))
    }

    /// The generator `e_j`.
    pub fn generator(j: usize) -> Blade {
        assert!((1..=MAX_DIM).contains(&j), "generator index {j} out of range");
        Blade(1 << (j - 1))
    }

    pub fn from_bits(bits: u64) -> Blade {
        Blade(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// Highest generator index present, 0 for the scalar blade.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// All `2^n` blades of `Cl(0,n)` in canonical order.
    pub fn all(n: usize) -> Vec<Blade> {
        let mut blades: Vec<Blade> = (0..1u64 << n).map(Blade).collect();
        blades.sort();
        blades
    }
}

/// Canonical order: by grade, then lexicographically on the index list.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal if self.0 != other.0 => {
                // With equal grades the lowest differing bit is the first
                // position where the sorted index lists disagree.
                let low = (self.0 ^ other.0) & (self.0 ^ other.0).wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices())
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e[{}]", idx.join(","))
    }
}

/// Product of two basis blades without range checks: returns `(negative, blade)`.
#[inline]
pub(crate) fn blade_mul_raw(a: Blade, b: Blade) -> (bool, Blade) {
    // Moving each generator of `b` left past the larger generators of `a`.
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a.0 >> bit >> 1).count_ones();
    }
    // Each shared generator contracts via e_j^2 = -1.
    swaps += (a.0 & b.0).count_ones();
    (swaps % 2 == 1, Blade(a.0 ^ b.0))
}

/// Clifford product of two basis blades: `sign * result`.
pub fn blade_mul(a: Blade, b: Blade, n: usize) -> Result<(i8, Blade)> {
    for blade in [a, b] {
        if blade.max_index() > n {
            return Err(Error::IndexOutOfRange { index: blade.max_index(), n });
        }
    }
    let (neg, blade) = blade_mul_raw(a, b);
    Ok((if neg { -1 } else { 1 }, blade))
}

/// Element of `Cl(0,n)` in sparse canonical form (no stored zeros).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    n: usize,
    terms: BTreeMap<Blade, Rational>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Multivector { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        Self::term(n, Blade::SCALAR, value)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn term(n: usize, blade: Blade, value: Rational) -> Self {
        assert!(blade.max_index() <= n, "blade {blade:?} outside Cl(0,{n})");
        let mut mv = Self::zero(n);
        if !value.is_zero() {
            mv.terms.insert(blade, value);
        }
        mv
    }

    /// The generator `e_j`.
    pub fn generator(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        Ok(Self::term(n, Blade::generator(j), Rational::one()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    /// Scalar part if the multivector has no higher-grade terms.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, blade: Blade, value: Rational) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Multivector, factor: &Rational) {
        for (b, c) in &other.terms {
            self.add_term(*b, c * factor);
        }
    }

    fn check_dim(&self, other: &Multivector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Multivector) -> Result<Multivector> {
        self.check_dim(other)?;
        let mut out = Multivector::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (neg, blade) = blade_mul_raw(*a, *b);
                let v = x * y;
                out.add_term(blade, if neg { -v } else { v });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Multivector {
        if factor.is_zero() {
            return Multivector::zero(self.n);
        }
        Multivector {
            n: self.n,
            terms: self.terms.iter().map(|(b, c)| (*b, c * factor)).collect(),
        }
    }

    /// `e_j * self` (left multiplication by a generator).
    pub fn left_generator_mul(&self, j: usize) -> Multivector {
        let g = Blade::generator(j);
        let mut out = Multivector::zero(self.n);
        for (b, c) in &self.terms {
            let (neg, blade) = blade_mul_raw(g, *b);
            out.terms.insert(blade, if neg { -c } else { c.clone() });
        }
        out
    }

    /// Terms whose blade has exactly `grade` generators.
    pub fn grade_part(&self, grade: usize) -> Multivector {
        Multivector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == grade)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs).expect("multivector add")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.checked_sub(rhs).expect("multivector sub")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.checked_mul(rhs).expect("multivector mul")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            n: self.n,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text: `1 + 3/2*e[1,3]`, zero prints as `0`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (blade, c)) in self.terms.iter().enumerate() {
            let shown = if i == 0 {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            if *blade == Blade::SCALAR {
                write!(f, "{shown}")?;
            } else {
                write!(f, "{shown}*{blade}")?;
            }
        }
        Ok(())
    }
}
