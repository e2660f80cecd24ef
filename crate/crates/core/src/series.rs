//! Formal power series in one indeterminate, used as indicators of
//! shift-invariant operators `Σ a_k ∂_j^k` acting on polynomials.
//!
//! A series is a lazily evaluated coefficient oracle. Coefficients are
//! memoized per instance; every derived series (product, inverse,
//! composition, reversion, derivative) is computed exactly order by order.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{check_coord, CliffPoly};
use crate::rational::{factorial, falling, pow, Rational};

type Closed = Box<dyn Fn(usize) -> Rational + Send + Sync>;

enum Generator {
    Closed(Closed),
    Product(PowerSeries, PowerSeries),
    Inverse(PowerSeries),
    Compose(PowerSeries, PowerSeries),
    Reversion(PowerSeries),
    Derivative(PowerSeries),
}

struct Inner {
    generator: Generator,
    memo: Mutex<Vec<Rational>>,
}

#[derive(Clone)]
pub struct PowerSeries(Arc<Inner>);

impl PowerSeries {
    fn from_generator(generator: Generator) -> Self {
        PowerSeries(Arc::new(Inner { generator, memo: Mutex::new(Vec::new()) }))
    }

    pub fn from_fn(f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        Self::from_generator(Generator::Closed(Box::new(f)))
    }

    /// Finite coefficient list `[a0, a1, ..., aK]`, zero beyond `K`.
    pub fn from_coefficients(coeffs: Vec<Rational>) -> Self {
        Self::from_fn(move |k| coeffs.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(vec![c])
    }

    /// The indeterminate `t`.
    pub fn identity() -> Self {
        Self::from_coefficients(vec![Rational::zero(), Rational::one()])
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        let mut memo = self.0.memo.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= k {
            let next = self.next_coeff(&memo);
            memo.push(next);
        }
        memo[k].clone()
    }

    pub fn coeffs(&self, count: usize) -> Vec<Rational> {
        if count == 0 {
            return Vec::new();
        }
        self.coeff(count - 1);
        let memo = self.0.memo.lock().unwrap_or_else(|e| e.into_inner());
        memo[..count].to_vec()
    }

    // Computes coefficient `known.len()` given this series' own prefix.
    fn next_coeff(&self, known: &[Rational]) -> Rational {
        let k = known.len();
        match &self.0.generator {
            Generator::Closed(f) => f(k),
            Generator::Product(a, b) => (0..=k).map(|i| a.coeff(i) * b.coeff(k - i)).sum(),
            Generator::Inverse(a) => {
                let a0 = a.coeff(0);
                if k == 0 {
                    return a0.recip();
                }
                let s: Rational = (1..=k).map(|i| a.coeff(i) * &known[k - i]).sum();
                -s / a0
            }
            Generator::Compose(f, g) => {
                let inner = g.coeffs(k + 1);
                let mut power = vec![Rational::zero(); k + 1];
                power[0] = Rational::one();
                let mut total = f.coeff(0) * &power[k];
                for i in 1..=k {
                    power = truncated_mul(&power, &inner, k);
                    total += f.coeff(i) * &power[k];
                }
                total
            }
            Generator::Reversion(f) => match k {
                0 => Rational::zero(),
                1 => f.coeff(1).recip(),
                _ => {
                    // [t^k] F(G) = 0 where g_k only enters through f_1 g_k.
                    let mut partial = known.to_vec();
                    partial.push(Rational::zero());
                    let mut power = partial.clone();
                    let mut rest = Rational::zero();
                    for i in 2..=k {
                        power = truncated_mul(&power, &partial, k);
                        rest += f.coeff(i) * &power[k];
                    }
                    -rest / f.coeff(1)
                }
            },
            Generator::Derivative(a) => a.coeff(k + 1) * Rational::from_integer((k as i64 + 1).into()),
        }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        Self::from_generator(Generator::Product(self.clone(), other.clone()))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn mult_inverse(&self) -> Result<PowerSeries> {
        if self.coeff(0).is_zero() {
            return Err(Error::InvalidSeries(
                "constant term is zero, series has no multiplicative inverse".into(),
            ));
        }
        Ok(Self::from_generator(Generator::Inverse(self.clone())))
    }

    /// `self(inner(t))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidSeries("inner series must have zero constant term".into()));
        }
        Ok(Self::from_generator(Generator::Compose(self.clone(), inner.clone())))
    }

    /// Formal derivative `b_k = (k+1) a_{k+1}`. For an operator indicator
    /// this is the Pincherle derivative `[Q, x_j]`.
    pub fn pincherle(&self) -> PowerSeries {
        Self::from_generator(Generator::Derivative(self.clone()))
    }

    /// Checks equality of the first `count` coefficients.
    pub fn agrees_with(&self, other: &PowerSeries, count: usize) -> bool {
        (0..count).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// `Σ_k a_k ∂_j^k p`, finite because `∂_j` is nilpotent on `p`.
    pub fn apply(&self, j: usize, p: &CliffPoly) -> Result<CliffPoly> {
        check_coord(j, p.dim())?;
        Ok(self.apply_unchecked(j, p))
    }

    pub(crate) fn apply_unchecked(&self, j: usize, p: &CliffPoly) -> CliffPoly {
        let a = self.coeffs(p.degree_in(j) as usize + 1);
        let mut out = CliffPoly::zero(p.dim());
        for (alpha, c) in p.terms() {
            let e = alpha.get(j);
            for (k, ak) in a.iter().enumerate().take(e as usize + 1) {
                if ak.is_zero() {
                    continue;
                }
                let w = ak * falling(e, k as u32);
                out.add_term(alpha.with(j, e - k as u32), &c.scale(&w));
            }
        }
        out
    }
}

fn truncated_mul(a: &[Rational], b: &[Rational], max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max + 1];
    for (i, x) in a.iter().enumerate().take(max + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(max + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.coeffs(6).iter().map(|c| c.to_string()).collect();
        write!(f, "[{}, ...]", shown.join(", "))
    }
}

/// Indicator of a delta operator: `a0 = 0`, `a1 != 0`.
#[derive(Clone, Debug)]
pub struct DeltaSeries(PowerSeries);

impl DeltaSeries {
    pub fn new(series: PowerSeries) -> Result<Self> {
        if !series.coeff(0).is_zero() {
            return Err(Error::InvalidSeries("delta series needs a0 = 0".into()));
        }
        if series.coeff(1).is_zero() {
            return Err(Error::InvalidSeries("delta series needs a1 != 0".into()));
        }
        Ok(DeltaSeries(series))
    }

    pub fn series(&self) -> &PowerSeries {
        &self.0
    }

    /// Compositional inverse `G` with `F(G(t)) = t`.
    pub fn reversion(&self) -> DeltaSeries {
        DeltaSeries(PowerSeries::from_generator(Generator::Reversion(self.0.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derivative,
    /// `(e^{ht} - 1)/h`
    Forward,
    /// `(1 - e^{-ht})/h`
    Backward,
    /// `sinh(ht)/h`
    Central,
    /// `e^{ct}`, translation by `c`.
    Shift(Rational),
}

pub fn catalog_series(kind: &SeriesKind, h: &Rational) -> Result<PowerSeries> {
    if !h.is_positive() && *kind != SeriesKind::Derivative && !matches!(kind, SeriesKind::Shift(_)) {
        return Err(Error::InvalidParameter(format!("step h must be positive, got {h}")));
    }
    let h = h.clone();
    Ok(match kind {
        SeriesKind::Derivative => PowerSeries::identity(),
        SeriesKind::Forward => PowerSeries::from_fn(move |k| match k {
            0 => Rational::zero(),
            _ => pow(&h, k as u32 - 1) / factorial(k as u32),
        }),
        SeriesKind::Backward => PowerSeries::from_fn(move |k| match k {
            0 => Rational::zero(),
            _ => {
                let v = pow(&h, k as u32 - 1) / factorial(k as u32);
                if k % 2 == 0 {
                    -v
                } else {
                    v
                }
            }
        }),
        SeriesKind::Central => PowerSeries::from_fn(move |k| {
            if k % 2 == 1 {
                pow(&h, k as u32 - 1) / factorial(k as u32)
            } else {
                Rational::zero()
            }
        }),
        SeriesKind::Shift(c) => {
            let c = c.clone();
            PowerSeries::from_fn(move |k| pow(&c, k as u32) / factorial(k as u32))
        }
    })
}
