//! Umbral Dirac operator `D' = Σ e_j O_j`, vector variable `x' = Σ e_j x_j'`,
//! and the Almansi / Fischer decompositions of polymonogenic polynomials.
//!
//! The decomposition engine is written against [`LadderModel`] so that the
//! same recursion serves the Dirac pair `(D', x')` and the oscillator pair
//! of the [`oscillator`](crate::oscillator) module.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::poly::{CliffPoly, MultiIndex};
use crate::rational::{factorial, int, Rational};
use crate::umbral::UmbralContext;

/// A lowering/raising pair with a graded eigenbasis on which the
/// "Euler-type" operator acts diagonally.
pub trait LadderModel {
    fn dim(&self) -> usize;

    /// The operator whose kernel defines monogenics.
    fn step_down(&self, f: &CliffPoly) -> CliffPoly;

    /// The multiplier playing the role of the vector variable.
    fn step_up(&self, f: &CliffPoly) -> CliffPoly;

    /// Scales the degree-`m` component of `f` in the model's eigenbasis by
    /// `factor(m)`.
    fn spectral(&self, f: &CliffPoly, factor: &dyn Fn(u32) -> Rational) -> CliffPoly;

    /// Constant `c` with `step_down^k step_up^k Q_k = id` on monogenics,
    /// where `Q_k = (1/c) Π_i R_{n/2+i}` and `R_s` inverts the shifted
    /// Euler-type operator.
    fn normalization(&self, k: usize) -> Rational;
}

/// `c_k = (-2)^k ⌊k/2⌋!`.
pub fn c_k(k: usize) -> Rational {
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    sign * int(2).pow(k as i32) * factorial((k / 2) as u32)
}

impl LadderModel for UmbralContext {
    fn dim(&self) -> usize {
        UmbralContext::dim(self)
    }

    fn step_down(&self, f: &CliffPoly) -> CliffPoly {
        dirac(self, f)
    }

    fn step_up(&self, f: &CliffPoly) -> CliffPoly {
        vector_var(self, f)
    }

    fn spectral(&self, f: &CliffPoly, factor: &dyn Fn(u32) -> Rational) -> CliffPoly {
        self.spectral_scale(f, factor)
    }

    fn normalization(&self, k: usize) -> Rational {
        c_k(k)
    }
}

/// Result of an Almansi-type decomposition: `f = Σ_i step_up^{i-1} f_i`.
#[derive(Clone, Debug)]
pub struct AlmansiResult {
    pub k: usize,
    /// `f_1 .. f_k`; zero components are kept so positions stay meaningful.
    pub components: Vec<CliffPoly>,
    pub context: UmbralContext,
}

/// `D' f = Σ_j e_j O_j f`.
pub fn dirac(ctx: &UmbralContext, f: &CliffPoly) -> CliffPoly {
    assert_eq!(f.dim(), ctx.dim(), "polynomial dimension vs context");
    let mut out = CliffPoly::zero(ctx.dim());
    for j in 1..=ctx.dim() {
        out = &out + &ctx.lower(j, f).left_generator_mul(j);
    }
    out
}

/// `x' f = Σ_j e_j x_j' f`.
pub fn vector_var(ctx: &UmbralContext, f: &CliffPoly) -> CliffPoly {
    assert_eq!(f.dim(), ctx.dim(), "polynomial dimension vs context");
    let mut out = CliffPoly::zero(ctx.dim());
    for j in 1..=ctx.dim() {
        out = &out + &ctx.raise(j, f).left_generator_mul(j);
    }
    out
}

/// `Δ' f = -(D')^2 f`.
pub fn laplacian(ctx: &UmbralContext, f: &CliffPoly) -> CliffPoly {
    -&dirac(ctx, &dirac(ctx, f))
}

/// `I'_s = Ψ I_s Ψ^{-1}`: divides the `V`-degree-`m` part by `s + m`.
pub fn i_s_prime(ctx: &UmbralContext, s: &Rational, f: &CliffPoly) -> Result<CliffPoly> {
    if !s.is_positive() {
        return Err(Error::InvalidParameter(format!("I'_s needs s > 0, got {s}")));
    }
    Ok(ctx.spectral_scale(f, |m| (s + int(m as i64)).recip()))
}

pub(crate) fn q_k_generic<M: LadderModel + ?Sized>(model: &M, k: usize, f: &CliffPoly) -> Result<CliffPoly> {
    if k == 0 {
        return Err(Error::InvalidParameter("Q'_k needs k >= 1".into()));
    }
    let half = Rational::new((model.dim() as i64).into(), 2.into());
    let c = model.normalization(k);
    let last = (k - 1) / 2;
    let factor = |m: u32| {
        let prod: Rational = (0..=last)
            .map(|i| &half + int(i as i64) + int(m as i64))
            .product();
        (&c * prod).recip()
    };
    Ok(model.spectral(f, &factor))
}

/// `Q'_k = (1/c_k) I'_{n/2} I'_{n/2+1} ⋯ I'_{n/2+⌊(k-1)/2⌋}`.
pub fn q_k_prime(ctx: &UmbralContext, k: usize, f: &CliffPoly) -> Result<CliffPoly> {
    q_k_generic(ctx, k, f)
}

fn iterate(f: &CliffPoly, times: usize, op: impl Fn(&CliffPoly) -> CliffPoly) -> CliffPoly {
    (0..times).fold(f.clone(), |g, _| op(&g))
}

/// Smallest `k >= 1` with `step_down^k f = 0`; terminates because the
/// lowering operator drops the degree by exactly one.
pub(crate) fn polymonogenic_order<M: LadderModel + ?Sized>(model: &M, f: &CliffPoly) -> usize {
    let mut g = f.clone();
    let mut k = 0;
    while !g.is_zero() {
        g = model.step_down(&g);
        k += 1;
    }
    k.max(1)
}

pub(crate) fn decompose_generic<M: LadderModel + ?Sized>(
    model: &M,
    f: &CliffPoly,
    k: Option<usize>,
) -> Result<Vec<CliffPoly>> {
    let k = match k {
        None => polymonogenic_order(model, f),
        Some(0) => return Err(Error::InvalidParameter("decomposition length k must be >= 1".into())),
        Some(k) => {
            if !iterate(f, k, |g| model.step_down(g)).is_zero() {
                return Err(Error::NotPolymonogenic { k });
            }
            k
        }
    };
    let mut parts = vec![CliffPoly::zero(model.dim()); k];
    let mut rest = f.clone();
    for j in (2..=k).rev() {
        let lowered = iterate(&rest, j - 1, |g| model.step_down(g));
        let part = q_k_generic(model, j - 1, &lowered)?;
        rest = &rest - &iterate(&part, j - 1, |g| model.step_up(g));
        parts[j - 1] = part;
    }
    parts[0] = rest;
    Ok(parts)
}

pub(crate) fn reconstruct_generic<M: LadderModel + ?Sized>(model: &M, parts: &[CliffPoly]) -> CliffPoly {
    // Horner: f_1 + up(f_2 + up(f_3 + ...))
    let mut acc = CliffPoly::zero(model.dim());
    for part in parts.iter().rev() {
        acc = &model.step_up(&acc) + part;
    }
    acc
}

/// Almansi decomposition `f = f_1 + x' f_2 + ⋯ + (x')^{k-1} f_k` with
/// umbral monogenic `f_i`. With `k = None` the smallest `k` with
/// `(D')^k f = 0` is used.
pub fn almansi_decompose(ctx: &UmbralContext, f: &CliffPoly, k: Option<usize>) -> Result<AlmansiResult> {
    ctx.check_dim(f)?;
    let components = decompose_generic(ctx, f, k)?;
    Ok(AlmansiResult { k: components.len(), components, context: ctx.clone() })
}

/// `Σ_i (x')^{i-1} f_i`.
pub fn almansi_reconstruct(ctx: &UmbralContext, parts: &[CliffPoly]) -> CliffPoly {
    reconstruct_generic(ctx, parts)
}

impl AlmansiResult {
    pub fn reconstruct(&self) -> CliffPoly {
        almansi_reconstruct(&self.context, &self.components)
    }

    pub fn all_monogenic(&self) -> bool {
        self.components.iter().all(|c| dirac(&self.context, c).is_zero())
    }
}

/// Exact basis of `{ Σ c_{α,b} B_α b : |α| = degree } ∩ ker(lower)`, as
/// reduced echelon vectors over the coordinates `(α, b)` ordered by
/// descending graded-lex `α`, then canonical blade order.
pub(crate) fn kernel_basis(
    n: usize,
    degree: u32,
    basis: impl Fn(&MultiIndex) -> CliffPoly,
    lower: impl Fn(&CliffPoly) -> CliffPoly,
) -> Vec<CliffPoly> {
    let blades = Blade::all(n);
    let mut columns = Vec::new();
    let mut images = Vec::new();
    for alpha in MultiIndex::of_degree(n, degree) {
        let b_alpha = basis(&alpha);
        for &blade in &blades {
            let unit = Multivector::term(n, blade, Rational::one());
            let element = b_alpha.left_mul(&unit).expect("same dimension");
            images.push(lower(&element));
            columns.push(element);
        }
    }
    let mut row_index: BTreeMap<(MultiIndex, Blade), usize> = BTreeMap::new();
    for img in &images {
        for (alpha, mv) in img.terms() {
            for (blade, _) in mv.terms() {
                let next = row_index.len();
                row_index.entry((alpha.clone(), *blade)).or_insert(next);
            }
        }
    }
    let mut rows = vec![vec![Rational::zero(); columns.len()]; row_index.len()];
    for (c, img) in images.iter().enumerate() {
        for (alpha, mv) in img.terms() {
            for (blade, v) in mv.terms() {
                rows[row_index[&(alpha.clone(), *blade)]][c] = v.clone();
            }
        }
    }
    nullspace(rows, columns.len())
        .into_iter()
        .map(|v| {
            let mut p = CliffPoly::zero(n);
            for (coef, col) in v.iter().zip(&columns) {
                p.add_scaled(col, coef);
            }
            p
        })
        .collect()
}

/// Basis of the umbral monogenics of `V`-degree `d`.
pub fn monogenic_basis(ctx: &UmbralContext, d: u32) -> Vec<CliffPoly> {
    kernel_basis(ctx.dim(), d, |a| ctx.basic_polynomial(a), |p| dirac(ctx, p))
}

/// Fischer decomposition of an `E'`-homogeneous `p` of degree `k`:
/// `p = Σ_j (x')^j m_j` with `m_j` monogenic of degree `k - j`. Trailing
/// zero components are dropped.
pub fn fischer_decompose(ctx: &UmbralContext, p: &CliffPoly) -> Result<Vec<CliffPoly>> {
    ctx.check_dim(p)?;
    let Some(degree) = p.degree() else {
        return Ok(vec![CliffPoly::zero(ctx.dim())]);
    };
    if ctx.euler_s(&Rational::zero(), p) != p.scale(&int(degree as i64)) {
        return Err(Error::NotHomogeneous { degree: degree as usize });
    }
    let mut parts = decompose_generic(ctx, p, Some(degree as usize + 1))?;
    while parts.len() > 1 && parts.last().is_some_and(CliffPoly::is_zero) {
        parts.pop();
    }
    Ok(parts)
}

/// Splits an umbral-harmonic `f` as `f = f1 + x' f0` with `f0 = Q'_1 D' f`
/// and both parts monogenic. Returns `(f1, f0)`.
pub fn harmonic_split(ctx: &UmbralContext, f: &CliffPoly) -> Result<(CliffPoly, CliffPoly)> {
    ctx.check_dim(f)?;
    if !laplacian(ctx, f).is_zero() {
        return Err(Error::NotHarmonic);
    }
    let f0 = q_k_prime(ctx, 1, &dirac(ctx, f))?;
    let f1 = f - &vector_var(ctx, &f0);
    Ok((f1, f0))
}
