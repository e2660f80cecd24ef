//! The umbral pair `(O_j, x_j')`: a diagonal delta operator per coordinate
//! and its raising operator built from the inverse Pincherle derivative.
//! Basic polynomials come from the Rodrigues formula `V_α = (x')^α 1`; the
//! Sheffer map sends `x^α ↦ V_α`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::poly::{check_coord, CliffPoly, MultiIndex};
use crate::rational::{int, parse_rational, Rational};
use crate::series::{catalog_series, DeltaSeries, PowerSeries, SeriesKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Derivative,
    Forward,
    Backward,
    Central,
    /// Finite coefficient list `[a0, a1, ..., aK]`.
    Custom(Vec<Rational>),
}

impl DeltaKind {
    pub const CATALOG: [DeltaKind; 4] =
        [DeltaKind::Derivative, DeltaKind::Forward, DeltaKind::Backward, DeltaKind::Central];

    fn series(&self, h: &Rational) -> Result<PowerSeries> {
        let kind = match self {
            DeltaKind::Derivative => SeriesKind::Derivative,
            DeltaKind::Forward => SeriesKind::Forward,
            DeltaKind::Backward => SeriesKind::Backward,
            DeltaKind::Central => SeriesKind::Central,
            DeltaKind::Custom(c) => return Ok(PowerSeries::from_coefficients(c.clone())),
        };
        catalog_series(&kind, h)
    }
}

impl fmt::Display for DeltaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaKind::Derivative => write!(f, "derivative"),
            DeltaKind::Forward => write!(f, "forward"),
            DeltaKind::Backward => write!(f, "backward"),
            DeltaKind::Central => write!(f, "central"),
            DeltaKind::Custom(c) => {
                let shown: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "custom:[{}]", shown.join(","))
            }
        }
    }
}

impl FromStr for DeltaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "derivative" => Ok(DeltaKind::Derivative),
            "forward" => Ok(DeltaKind::Forward),
            "backward" => Ok(DeltaKind::Backward),
            "central" => Ok(DeltaKind::Central),
            other => {
                let list = other
                    .strip_prefix("custom:")
                    .map(str::trim)
                    .and_then(|l| l.strip_prefix('['))
                    .and_then(|l| l.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse {
                        position: 1,
                        message: format!(
                            "expected derivative, forward, backward, central or custom:[a0,a1,...], found `{other}`"
                        ),
                    })?;
                let coeffs = list
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                Ok(DeltaKind::Custom(coeffs))
            }
        }
    }
}

/// Which raising operator realizes `x_j'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `x_j (O_j')^{-1}`
    Plain,
    /// `½ (x_j (O_j')^{-1} + (O_j')^{-1} x_j)`
    Symmetric,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Plain, Variant::Symmetric];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::Symmetric => "symmetric",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plain" => Ok(Variant::Plain),
            "symmetric" => Ok(Variant::Symmetric),
            other => Err(Error::Parse {
                position: 1,
                message: format!("expected plain or symmetric, found `{other}`"),
            }),
        }
    }
}

struct ContextInner {
    n: usize,
    h: Rational,
    kind: DeltaKind,
    variant: Variant,
    delta: DeltaSeries,
    pincherle: PowerSeries,
    inv_pincherle: PowerSeries,
    basic: Mutex<HashMap<MultiIndex, CliffPoly>>,
}

/// Dimension, step, delta operator and raising variant. Cheap to clone.
#[derive(Clone)]
pub struct UmbralContext(Arc<ContextInner>);

impl fmt::Debug for UmbralContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UmbralContext")
            .field("n", &self.0.n)
            .field("h", &self.0.h.to_string())
            .field("delta", &self.0.kind.to_string())
            .field("variant", &self.0.variant)
            .finish()
    }
}

impl UmbralContext {
    pub fn new(n: usize, kind: DeltaKind, h: Rational, variant: Variant) -> Result<Self> {
        if n == 0 || n > crate::clifford::MAX_DIM {
            return Err(Error::InvalidParameter(format!("dimension {n} not supported")));
        }
        if !h.is_positive() {
            return Err(Error::InvalidParameter(format!("step h must be positive, got {h}")));
        }
        let delta = DeltaSeries::new(kind.series(&h)?)?;
        let pincherle = delta.series().pincherle();
        let inv_pincherle = pincherle.mult_inverse()?;
        Ok(UmbralContext(Arc::new(ContextInner {
            n,
            h,
            kind,
            variant,
            delta,
            pincherle,
            inv_pincherle,
            basic: Mutex::new(HashMap::new()),
        })))
    }

    /// Classical Clifford analysis: `O_j = ∂_j`, `x_j' = x_j`.
    pub fn classical(n: usize) -> Self {
        Self::new(n, DeltaKind::Derivative, Rational::one(), Variant::Plain).expect("classical context")
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }

    pub fn h(&self) -> &Rational {
        &self.0.h
    }

    pub fn kind(&self) -> &DeltaKind {
        &self.0.kind
    }

    pub fn variant(&self) -> Variant {
        self.0.variant
    }

    pub fn delta(&self) -> &DeltaSeries {
        &self.0.delta
    }

    pub fn pincherle(&self) -> &PowerSeries {
        &self.0.pincherle
    }

    pub fn inv_pincherle(&self) -> &PowerSeries {
        &self.0.inv_pincherle
    }

    /// `n/2` as a rational.
    pub fn half_dim(&self) -> Rational {
        Rational::new((self.0.n as i64).into(), 2.into())
    }

    pub fn with_variant(&self, variant: Variant) -> Result<Self> {
        Self::new(self.0.n, self.0.kind.clone(), self.0.h.clone(), variant)
    }

    /// `O_j p`.
    pub fn apply_o(&self, j: usize, p: &CliffPoly) -> Result<CliffPoly> {
        check_coord(j, self.0.n)?;
        self.check_dim(p)?;
        Ok(self.lower(j, p))
    }

    /// `x_j' p`.
    pub fn apply_raise(&self, j: usize, p: &CliffPoly) -> Result<CliffPoly> {
        check_coord(j, self.0.n)?;
        self.check_dim(p)?;
        Ok(self.raise(j, p))
    }

    pub(crate) fn check_dim(&self, p: &CliffPoly) -> Result<()> {
        if p.dim() != self.0.n {
            return Err(Error::DimensionMismatch { left: self.0.n, right: p.dim() });
        }
        Ok(())
    }

    pub(crate) fn lower(&self, j: usize, p: &CliffPoly) -> CliffPoly {
        self.0.delta.series().apply_unchecked(j, p)
    }

    pub(crate) fn raise(&self, j: usize, p: &CliffPoly) -> CliffPoly {
        let inv = &self.0.inv_pincherle;
        let plain = inv.apply_unchecked(j, p).shift_var(j);
        match self.0.variant {
            Variant::Plain => plain,
            Variant::Symmetric => {
                let other = inv.apply_unchecked(j, &p.shift_var(j));
                (&plain + &other).scale(&Rational::new(1.into(), 2.into()))
            }
        }
    }

    /// `V_α = (x')^α 1`, memoized per context.
    pub fn basic_polynomial(&self, alpha: &MultiIndex) -> CliffPoly {
        assert_eq!(alpha.dim(), self.0.n, "multi-index length vs dimension");
        if let Some(v) = self.0.basic.lock().unwrap_or_else(|e| e.into_inner()).get(alpha) {
            return v.clone();
        }
        let v = match (1..=self.0.n).rev().find(|&j| alpha.get(j) > 0) {
            None => CliffPoly::one(self.0.n),
            Some(j) => {
                let prev = self.basic_polynomial(&alpha.with(j, alpha.get(j) - 1));
                self.raise(j, &prev)
            }
        };
        self.0
            .basic
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(alpha.clone(), v.clone());
        v
    }

    /// `E'_s p = s p + Σ_j x_j' O_j p`.
    pub fn euler_s(&self, s: &Rational, p: &CliffPoly) -> CliffPoly {
        let mut out = p.scale(s);
        for j in 1..=self.0.n {
            out = &out + &self.raise(j, &self.lower(j, p));
        }
        out
    }

    /// `Ψ`: replaces each monomial `x^α` by `V_α`.
    pub fn sheffer_map(&self, p: &CliffPoly) -> CliffPoly {
        map_to_basis(p, |a| self.basic_polynomial(a), |_| Rational::one())
    }

    /// `Ψ^{-1}`: coordinates of `p` in the `V` basis, returned as `Σ c_α x^α`.
    pub fn sheffer_inverse(&self, p: &CliffPoly) -> CliffPoly {
        expand_in_basis(p, |a| self.basic_polynomial(a))
    }

    /// Scales the `V`-degree-`m` component of `p` by `factor(m)`.
    pub(crate) fn spectral_scale(&self, p: &CliffPoly, factor: impl Fn(u32) -> Rational) -> CliffPoly {
        let coords = self.sheffer_inverse(p);
        map_to_basis(&coords, |a| self.basic_polynomial(a), factor)
    }

    /// Expands `exp(x·O^{<-1>}(t))` to total order `order` in `t` and checks
    /// every coefficient against `V_α / α!`. Returns the coefficient table.
    pub fn generating_check(&self, order: u32) -> Result<BTreeMap<MultiIndex, CliffPoly>> {
        if self.0.variant != Variant::Plain {
            return Err(Error::Unsupported(
                "the exponential generating function describes the plain-variant basic sequence".into(),
            ));
        }
        let n = self.0.n;
        let inverse = self.0.delta.reversion();
        // rows[a][m] = [t^a] x^m G(t)^m / m!
        let order_us = order as usize;
        let mut rows = vec![vec![Rational::zero(); order_us + 1]; order_us + 1];
        let g = inverse.series().coeffs(order_us + 1);
        let mut power = vec![Rational::zero(); order_us + 1];
        power[0] = Rational::one();
        let mut m_fact = Rational::one();
        for m in 0..=order_us {
            if m > 0 {
                power = mul_trunc(&power, &g);
                m_fact *= int(m as i64);
            }
            for (a, row) in rows.iter_mut().enumerate() {
                row[m] = &power[a] / &m_fact;
            }
        }
        let mut table = BTreeMap::new();
        for alpha in MultiIndex::up_to_degree(n, order) {
            let mut coeff = CliffPoly::one(n);
            for j in 1..=n {
                let row = &rows[alpha.get(j) as usize];
                let mut factor = CliffPoly::zero(n);
                for (m, c) in row.iter().enumerate() {
                    let mono = MultiIndex::unit(n, j).scaled(m as u32);
                    factor.add_term(mono, &Multivector::scalar(n, c.clone()));
                }
                coeff = &coeff * &factor;
            }
            let expected = self.basic_polynomial(&alpha).scale(&alpha.factorial().recip());
            if coeff != expected {
                return Err(Error::GeneratingMismatch { alpha: alpha.exponents().to_vec() });
            }
            table.insert(alpha, coeff);
        }
        Ok(table)
    }
}

fn mul_trunc(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len();
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coordinates of `p` in a graded basis `{B_α}` whose top-degree part is a
/// nonzero scalar multiple of `x^α`. Solved by top-degree elimination and
/// returned as `Σ c_α x^α`.
pub(crate) fn expand_in_basis(p: &CliffPoly, basis: impl Fn(&MultiIndex) -> CliffPoly) -> CliffPoly {
    let n = p.dim();
    let mut rest = p.clone();
    let mut coords = CliffPoly::zero(n);
    while let Some(top) = rest.degree() {
        let leading: Vec<(MultiIndex, Multivector)> = rest
            .terms()
            .rev()
            .take_while(|(a, _)| a.total() == top)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        for (alpha, c) in leading {
            let b = basis(&alpha);
            let lead = b
                .coefficient(&alpha)
                .as_scalar()
                .filter(|v| !v.is_zero())
                .expect("basis element must have a nonzero scalar leading coefficient");
            let w = c.scale(&lead.recip());
            rest = &rest - &b.left_mul(&w).expect("same dimension");
            coords.add_term(alpha, &w);
        }
        debug_assert!(rest.degree().is_none_or(|d| d < top));
    }
    coords
}

/// `Σ factor(|α|) c_α B_α` for `coords = Σ c_α x^α`.
pub(crate) fn map_to_basis(
    coords: &CliffPoly,
    basis: impl Fn(&MultiIndex) -> CliffPoly,
    factor: impl Fn(u32) -> Rational,
) -> CliffPoly {
    let n = coords.dim();
    let mut out = CliffPoly::zero(n);
    for (alpha, c) in coords.terms() {
        let f = factor(alpha.total());
        if f.is_zero() {
            continue;
        }
        let b = basis(alpha);
        out = &out + &b.left_mul(&c.scale(&f)).expect("same dimension");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::text::parse_poly;

    fn ctx(kind: DeltaKind, h: Rational, variant: Variant, n: usize) -> UmbralContext {
        UmbralContext::new(n, kind, h, variant).unwrap()
    }

    fn poly(text: &str, n: usize) -> CliffPoly {
        parse_poly(text, n).unwrap()
    }

    fn falling_product(n: usize, j: usize, count: u32, start: &Rational, h: &Rational) -> CliffPoly {
        // Π_{i<count} (x_j - start - i h)
        let mut out = CliffPoly::one(n);
        for i in 0..count {
            let shift = start + h * int(i as i64);
            let factor = &CliffPoly::var(n, j).unwrap() - &CliffPoly::scalar(n, shift);
            out = &out * &factor;
        }
        out
    }

    #[test]
    fn parse_kinds_and_variants() {
        assert_eq!("central".parse::<DeltaKind>().unwrap(), DeltaKind::Central);
        assert_eq!(
            "custom:[0, 1, 1/2]".parse::<DeltaKind>().unwrap(),
            DeltaKind::Custom(vec![int(0), int(1), frac(1, 2)])
        );
        assert_eq!(DeltaKind::Custom(vec![int(0), int(1)]).to_string(), "custom:[0,1]");
        assert!("sideways".parse::<DeltaKind>().is_err());
        assert!("custom:[0,x]".parse::<DeltaKind>().is_err());
        assert_eq!("symmetric".parse::<Variant>().unwrap(), Variant::Symmetric);
        assert!("odd".parse::<Variant>().is_err());
    }

    #[test]
    fn context_validation() {
        assert!(UmbralContext::new(0, DeltaKind::Forward, int(1), Variant::Plain).is_err());
        assert!(UmbralContext::new(2, DeltaKind::Forward, int(0), Variant::Plain).is_err());
        assert!(UmbralContext::new(2, DeltaKind::Custom(vec![int(1), int(1)]), int(1), Variant::Plain).is_err());
        assert!(UmbralContext::new(2, DeltaKind::Custom(vec![int(0), int(0), int(1)]), int(1), Variant::Plain).is_err());
    }

    #[test]
    fn lowering_examples() {
        let h = frac(1, 2);
        let d = ctx(DeltaKind::Derivative, int(1), Variant::Plain, 2);
        let p = poly("x1^2 x2 e[1] + x2^3", 2);
        assert_eq!(d.apply_o(1, &p).unwrap(), p.partial(1).unwrap());
        let f = ctx(DeltaKind::Forward, h.clone(), Variant::Plain, 1);
        let v2 = poly("x1^2 - 1/2 x1", 1);
        assert_eq!(f.apply_o(1, &v2).unwrap(), poly("2 x1", 1));
        for kind in DeltaKind::CATALOG {
            let c = ctx(kind, h.clone(), Variant::Plain, 2);
            assert!(c.apply_o(2, &poly("3 e[1,2] + 5", 2)).unwrap().is_zero());
        }
        assert!(f.apply_o(2, &v2).is_err());
    }

    #[test]
    fn raising_examples() {
        let h = frac(2, 3);
        let one = CliffPoly::one(1);
        let plain = ctx(DeltaKind::Forward, h.clone(), Variant::Plain, 1);
        assert_eq!(plain.apply_raise(1, &one).unwrap(), poly("x1", 1));
        let sym = ctx(DeltaKind::Forward, h.clone(), Variant::Symmetric, 1);
        assert_eq!(sym.apply_raise(1, &one).unwrap(), poly("x1 - 1/3", 1));
        for variant in Variant::ALL {
            let d = ctx(DeltaKind::Derivative, int(1), variant, 2);
            let p = poly("x1 x2 e[2] - 4", 2);
            assert_eq!(d.apply_raise(2, &p).unwrap(), p.mul_var(2).unwrap());
        }
    }

    #[test]
    fn basic_polynomial_examples() {
        let h = frac(1, 2);
        let plain = ctx(DeltaKind::Forward, h.clone(), Variant::Plain, 1);
        let v3 = plain.basic_polynomial(&MultiIndex::new(vec![3]));
        assert_eq!(v3, falling_product(1, 1, 3, &int(0), &h));
        let v2 = plain.basic_polynomial(&MultiIndex::new(vec![2]));
        assert_eq!(plain.apply_o(1, &v3).unwrap(), v2.scale(&int(3)));

        let sym = ctx(DeltaKind::Forward, h.clone(), Variant::Symmetric, 1);
        let w2 = sym.basic_polynomial(&MultiIndex::new(vec![2]));
        assert_eq!(w2, falling_product(1, 1, 2, &(&h / int(2)), &h));

        let cen = ctx(DeltaKind::Central, h.clone(), Variant::Plain, 1);
        let c3 = cen.basic_polynomial(&MultiIndex::new(vec![3]));
        assert_eq!(c3, poly("x1^3 - 1/4 x1", 1));
        let c2 = cen.basic_polynomial(&MultiIndex::new(vec![2]));
        assert_eq!(cen.apply_o(1, &c3).unwrap(), c2.scale(&int(3)));
        assert_eq!(cen.basic_polynomial(&MultiIndex::zero(1)), CliffPoly::one(1));
    }

    #[test]
    fn basic_polynomials_vanish_at_origin_for_plain_variant() {
        for kind in DeltaKind::CATALOG {
            let c = ctx(kind, frac(1, 3), Variant::Plain, 2);
            for alpha in MultiIndex::up_to_degree(2, 5).into_iter().skip(1) {
                assert!(c.basic_polynomial(&alpha).eval(&[int(0), int(0)]).is_zero());
            }
        }
    }

    #[test]
    fn euler_examples() {
        let c = ctx(DeltaKind::Central, frac(1, 2), Variant::Symmetric, 2);
        for alpha in MultiIndex::up_to_degree(2, 4) {
            let v = c.basic_polynomial(&alpha);
            assert_eq!(c.euler_s(&int(0), &v), v.scale(&int(alpha.total() as i64)));
        }
        let s = frac(7, 3);
        assert_eq!(c.euler_s(&s, &CliffPoly::one(2)), CliffPoly::scalar(2, s));
        let d = UmbralContext::classical(2);
        let p = poly("x1^2 x2", 2);
        assert_eq!(d.euler_s(&int(0), &p), p.scale(&int(3)));
    }

    #[test]
    fn sheffer_examples() {
        let h = frac(3, 2);
        let f = ctx(DeltaKind::Forward, h.clone(), Variant::Plain, 1);
        let x2 = poly("x1^2", 1);
        // x^2 = V_2 + h V_1 with V_2 = x^2 - h x
        assert_eq!(f.sheffer_inverse(&x2), poly("x1^2 + 3/2 x1", 1));
        let alpha = MultiIndex::new(vec![4]);
        let mono = CliffPoly::monomial(alpha.clone(), Multivector::one(1));
        assert_eq!(f.sheffer_map(&mono), f.basic_polynomial(&alpha));
        let d = UmbralContext::classical(2);
        let p = poly("x1^3 e[1] - 2 x1 x2 + 1/2 e[1,2]", 2);
        assert_eq!(d.sheffer_map(&p), p);
        assert_eq!(d.sheffer_inverse(&p), p);
    }

    #[test]
    fn generating_function_examples() {
        let h = frac(1, 2);
        let f = ctx(DeltaKind::Forward, h.clone(), Variant::Plain, 1);
        let table = f.generating_check(3).unwrap();
        let expected = falling_product(1, 1, 3, &int(0), &h).scale(&frac(1, 6));
        assert_eq!(table[&MultiIndex::new(vec![3])], expected);

        let d = UmbralContext::classical(2);
        let table = d.generating_check(3).unwrap();
        for (alpha, c) in &table {
            let mono = CliffPoly::monomial(alpha.clone(), Multivector::one(2));
            assert_eq!(*c, mono.scale(&alpha.factorial().recip()));
        }
        let table = d.generating_check(0).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[&MultiIndex::zero(2)], CliffPoly::one(2));

        let sym = ctx(DeltaKind::Forward, h, Variant::Symmetric, 1);
        assert!(sym.generating_check(2).is_err());
    }
}
