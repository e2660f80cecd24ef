//! Harmonic-oscillator ladder algebra over an umbral context.
//!
//! Two models are provided, both free of `√2` by working with
//! `d_± = √2 D'_±`:
//!
//! * direct: `d_± = x' ∓ D'` and `H' = ½((D')² − (x')²)` acting on
//!   polynomials;
//! * Gaussian gauge: a function `p·G` with ground state
//!   `G = exp(−|x|²/2)` is represented by its polynomial part `p`, and
//!   every operator is conjugated accordingly. In the classical case this
//!   gives `∂_j ↦ ∂_j − x_j`; the umbral operators are the Sheffer transport
//!   of that:
//!
//! | operator | gauge form |
//! |----------|-----------|
//! | lowering `L_j` | `O_j` |
//! | raising `R_j`  | `x_j' − O_j/2` |
//! | `d⁻` | `D'` |
//! | `d⁺` | `2x' − D'` |
//! | `H^g` | `E' + n/2 − ½ Σ O_j²` |
//!
//! In both models the bracket relations read
//! `{d₊,d₋} = −4H`, `[H,d₋] = −d₋`, `[H,d₊] = d₊`, `[d₊²,d₋²] = 16H`,
//! `[H,d₋²] = −2d₋²`, `[H,d₊²] = 2d₊²`, `[d₊²,d₊] = 0`, `[d₋²,d₊] = 4d₋`,
//! `[d₋,d₊²] = −4d₊`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Signed;

use crate::dirac::{c_k, decompose_generic, dirac, reconstruct_generic, vector_var, LadderModel};
use crate::error::{Error, Result};
use crate::poly::{CliffPoly, MultiIndex};
use crate::rational::{frac, int, Rational};
use crate::umbral::{expand_in_basis, map_to_basis, UmbralContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `d_± f = x'f ∓ D'f` (that is `√2 D'_±`, no gauge).
pub fn dirac_pm(ctx: &UmbralContext, sign: Sign, f: &CliffPoly) -> CliffPoly {
    let x = vector_var(ctx, f);
    let d = dirac(ctx, f);
    match sign {
        Sign::Plus => &x - &d,
        Sign::Minus => &x + &d,
    }
}

/// `H' f = ½((D')² f − (x')² f)`.
pub fn hamiltonian_direct(ctx: &UmbralContext, f: &CliffPoly) -> CliffPoly {
    let dd = dirac(ctx, &dirac(ctx, f));
    let xx = vector_var(ctx, &vector_var(ctx, f));
    (&dd - &xx).scale(&frac(1, 2))
}

/// Gaussian-gauge oscillator over an umbral context. Cheap to clone.
#[derive(Clone, Debug)]
pub struct GaugeContext {
    base: UmbralContext,
    hermite: Arc<Mutex<HashMap<MultiIndex, CliffPoly>>>,
}

impl GaugeContext {
    pub fn new(base: UmbralContext) -> Self {
        GaugeContext { base, hermite: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn base(&self) -> &UmbralContext {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `L_j = O_j`.
    pub fn lower(&self, j: usize, f: &CliffPoly) -> Result<CliffPoly> {
        self.base.apply_o(j, f)
    }

    /// `R_j = x_j' − O_j/2`.
    pub fn raise(&self, j: usize, f: &CliffPoly) -> Result<CliffPoly> {
        let o = self.base.apply_o(j, f)?;
        Ok(&self.base.apply_raise(j, f)? - &o.scale(&frac(1, 2)))
    }

    /// `d⁻ = D'`.
    pub fn d_minus(&self, f: &CliffPoly) -> CliffPoly {
        dirac(&self.base, f)
    }

    /// `d⁺ = 2x' − D'`.
    pub fn d_plus(&self, f: &CliffPoly) -> CliffPoly {
        &vector_var(&self.base, f).scale(&int(2)) - &dirac(&self.base, f)
    }

    /// `H^g f = E'_{n/2} f − ½ Σ_j O_j² f`.
    pub fn hamiltonian(&self, f: &CliffPoly) -> CliffPoly {
        let mut out = self.base.euler_s(&self.base.half_dim(), f);
        for j in 1..=self.dim() {
            let oo = self.base.lower(j, &self.base.lower(j, f));
            out.add_scaled(&oo, &frac(-1, 2));
        }
        out
    }

    /// `W_α = R^α 1`, an eigenfunction of `H^g` with eigenvalue `|α| + n/2`.
    pub fn hermite_basic(&self, alpha: &MultiIndex) -> CliffPoly {
        assert_eq!(alpha.dim(), self.dim(), "multi-index length vs dimension");
        if let Some(w) = self.hermite.lock().unwrap_or_else(|e| e.into_inner()).get(alpha) {
            return w.clone();
        }
        let w = match (1..=self.dim()).rev().find(|&j| alpha.get(j) > 0) {
            None => CliffPoly::one(self.dim()),
            Some(j) => {
                let prev = self.hermite_basic(&alpha.with(j, alpha.get(j) - 1));
                self.raise(j, &prev).expect("coordinate in range")
            }
        };
        self.hermite
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(alpha.clone(), w.clone());
        w
    }

    /// Eigenvalue `|α| + n/2` of `W_α`.
    pub fn eigenvalue(&self, alpha: &MultiIndex) -> Rational {
        int(alpha.total() as i64) + self.base.half_dim()
    }

    fn w_spectral(&self, f: &CliffPoly, factor: &dyn Fn(u32) -> Rational) -> CliffPoly {
        let coords = expand_in_basis(f, |a| self.hermite_basic(a));
        map_to_basis(&coords, |a| self.hermite_basic(a), factor)
    }

    /// `((s − n/2) id + H^g)^{-1} f`: the `W`-degree-`m` part is divided by `s + m`.
    pub fn resolvent(&self, s: &Rational, f: &CliffPoly) -> Result<CliffPoly> {
        if !s.is_positive() {
            return Err(Error::InvalidParameter(format!("resolvent needs s > 0, got {s}")));
        }
        self.base.check_dim(f)?;
        Ok(self.w_spectral(f, &|m| (s + int(m as i64)).recip()))
    }

    /// `f = Σ_i (d⁺)^{i−1} g_i` with `D' g_i = 0`. With `k = None` the
    /// smallest `k` with `(D')^k f = 0` is used.
    pub fn almansi(&self, f: &CliffPoly, k: Option<usize>) -> Result<OscillatorAlmansi> {
        self.base.check_dim(f)?;
        let components = decompose_generic(self, f, k)?;
        Ok(OscillatorAlmansi { k: components.len(), components, context: self.clone() })
    }

    pub fn reconstruct(&self, parts: &[CliffPoly]) -> CliffPoly {
        reconstruct_generic(self, parts)
    }
}

impl LadderModel for GaugeContext {
    fn dim(&self) -> usize {
        GaugeContext::dim(self)
    }

    fn step_down(&self, f: &CliffPoly) -> CliffPoly {
        self.d_minus(f)
    }

    fn step_up(&self, f: &CliffPoly) -> CliffPoly {
        self.d_plus(f)
    }

    fn spectral(&self, f: &CliffPoly, factor: &dyn Fn(u32) -> Rational) -> CliffPoly {
        self.w_spectral(f, factor)
    }

    /// `{d⁺, d⁻} = −4 H^g` instead of `−2 E'_{n/2}`, so each factor of the
    /// ladder picks up an extra 2.
    fn normalization(&self, k: usize) -> Rational {
        c_k(k) * int(2).pow(k as i32)
    }
}

/// Components `g_1..g_k` of `f = Σ (d⁺)^{i−1} g_i`.
///
/// Relative to the normalized operator `D'_+ = d⁺/√2` the components are
/// `g_i = 2^{−(i−1)/2} f_i`.
#[derive(Clone, Debug)]
pub struct OscillatorAlmansi {
    pub k: usize,
    pub components: Vec<CliffPoly>,
    pub context: GaugeContext,
}

impl OscillatorAlmansi {
    pub fn reconstruct(&self) -> CliffPoly {
        self.context.reconstruct(&self.components)
    }

    pub fn all_monogenic(&self) -> bool {
        self.components.iter().all(|g| self.context.d_minus(g).is_zero())
    }
}

/// Basis of `span{W_α b : |α| = d} ∩ ker D'`.
pub fn gauge_monogenic_basis(g: &GaugeContext, d: u32) -> Vec<CliffPoly> {
    crate::dirac::kernel_basis(g.dim(), d, |a| g.hermite_basic(a), |p| g.d_minus(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use crate::umbral::{DeltaKind, Variant};

    fn poly(text: &str, n: usize) -> CliffPoly {
        parse_poly(text, n).unwrap()
    }

    #[test]
    fn direct_hamiltonian_examples() {
        let c1 = UmbralContext::classical(1);
        assert_eq!(hamiltonian_direct(&c1, &poly("x1", 1)), poly("1/2 x1^3", 1));
        let c2 = UmbralContext::classical(2);
        assert_eq!(hamiltonian_direct(&c2, &CliffPoly::one(2)), poly("1/2 x1^2 + 1/2 x2^2", 2));
        let cen = UmbralContext::new(2, DeltaKind::Central, frac(1, 2), Variant::Plain).unwrap();
        let one = CliffPoly::one(2);
        let xx = vector_var(&cen, &vector_var(&cen, &one));
        assert_eq!(hamiltonian_direct(&cen, &one), xx.scale(&frac(-1, 2)));
    }

    #[test]
    fn dirac_pm_examples() {
        let c = UmbralContext::classical(1);
        let x1 = poly("x1", 1);
        assert_eq!(dirac_pm(&c, Sign::Minus, &x1), poly("x1^2 e[1] + e[1]", 1));
        let plus = |f: &CliffPoly| dirac_pm(&c, Sign::Plus, f);
        let minus = |f: &CliffPoly| dirac_pm(&c, Sign::Minus, f);
        let anti = &plus(&minus(&x1)) + &minus(&plus(&x1));
        assert_eq!(anti, poly("-2 x1^3", 1));
        assert_eq!(anti, hamiltonian_direct(&c, &x1).scale(&int(-4)));
        assert!(plus(&CliffPoly::zero(1)).is_zero());
    }

    #[test]
    fn hermite_examples() {
        let g = GaugeContext::new(UmbralContext::classical(1));
        let w2 = g.hermite_basic(&MultiIndex::new(vec![2]));
        assert_eq!(w2, poly("x1^2 - 1/2", 1));
        assert_eq!(g.hamiltonian(&w2), w2.scale(&frac(5, 2)));
        assert_eq!(g.hamiltonian(&poly("x1^2", 1)), poly("5/2 x1^2 - 1", 1));
        let w0 = g.hermite_basic(&MultiIndex::zero(1));
        assert_eq!(w0, CliffPoly::one(1));
        assert_eq!(g.hamiltonian(&w0), w0.scale(&frac(1, 2)));

        let cen = GaugeContext::new(UmbralContext::new(1, DeltaKind::Central, frac(1, 3), Variant::Symmetric).unwrap());
        for a in 0..=4 {
            let alpha = MultiIndex::new(vec![a]);
            let w = cen.hermite_basic(&alpha);
            assert_eq!(cen.hamiltonian(&w), w.scale(&cen.eigenvalue(&alpha)));
        }
    }

    #[test]
    fn gauge_weyl_pair() {
        for kind in DeltaKind::CATALOG {
            let g = GaugeContext::new(UmbralContext::new(2, kind, frac(1, 2), Variant::Plain).unwrap());
            let p = poly("x1^3 x2 e[1] - 2/3 x2^2 + x1 e[1,2] + 5", 2);
            for j in 1..=2 {
                for k in 1..=2 {
                    let lr = g.lower(j, &g.raise(k, &p).unwrap()).unwrap();
                    let rl = g.raise(k, &g.lower(j, &p).unwrap()).unwrap();
                    let expected = if j == k { p.clone() } else { CliffPoly::zero(2) };
                    assert_eq!(&lr - &rl, expected);
                }
            }
        }
    }

    #[test]
    fn resolvent_examples() {
        let g = GaugeContext::new(UmbralContext::classical(1));
        let s = frac(3, 2);
        assert_eq!(g.resolvent(&s, &CliffPoly::one(1)).unwrap(), CliffPoly::scalar(1, s.recip()));
        let w2 = g.hermite_basic(&MultiIndex::new(vec![2]));
        assert_eq!(g.resolvent(&s, &w2).unwrap(), w2.scale(&(&s + int(2)).recip()));
        let p = poly("x1^4 e[1] - 3 x1 + 7/2", 1);
        let r = g.resolvent(&s, &p).unwrap();
        let shifted = &g.hamiltonian(&r) + &r.scale(&(&s - g.base().half_dim()));
        assert_eq!(shifted, p);
        assert!(g.resolvent(&int(0), &p).is_err());
    }

    #[test]
    fn oscillator_almansi_examples() {
        let g = GaugeContext::new(UmbralContext::classical(2));
        let m = poly("x1 e[2] + x2 e[1]", 2);
        assert_eq!(g.almansi(&m, Some(1)).unwrap().components, vec![m.clone()]);
        let x1 = poly("x1", 2);
        let r = g.almansi(&x1, None).unwrap();
        assert_eq!(r.k, 2);
        assert!(r.all_monogenic());
        assert_eq!(r.reconstruct(), x1);
        let g2 = &r.components[1];
        assert_eq!(g2.terms().count(), 1);
        assert_eq!(g2.grade_part(1), *g2);
        assert!(matches!(g.almansi(&x1, Some(1)), Err(Error::NotPolymonogenic { k: 1 })));
    }
}
