//! Seeded identity suites. Every identity is checked exactly on random
//! polynomials drawn per trial from an independent stream, so the report
//! is the same whether trials run in parallel or not.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::dirac::{dirac, i_s_prime, vector_var};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::oscillator::{dirac_pm, hamiltonian_direct, GaugeContext, Sign};
use crate::poly::CliffPoly;
use crate::random::{random_poly, trial_rng};
use crate::rational::{frac, int, Rational};
use crate::umbral::{DeltaKind, UmbralContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `[O_j,O_k] = 0`, `[x_j',x_k'] = 0`, `[O_j,x_k'] = δ_jk`.
    Heisenberg,
    /// Squares of `D'` and `x'`, the anticommutator and the Euler ladder.
    DiracEuler,
    /// The three `sl2` brackets of `d₊², d₋², H`.
    Sl2,
    /// All nine scaled superalgebra brackets.
    Osp,
    /// `Δ' = Σ_j ∂_{2h}^{+j} ∂_{2h}^{-j}` by direct shifts (central delta).
    StarLaplacian,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Heisenberg => "heisenberg",
            Suite::DiracEuler => "dirac-euler",
            Suite::Sl2 => "sl2",
            Suite::Osp => "osp",
            Suite::StarLaplacian => "star-laplacian",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "heisenberg" => Ok(Suite::Heisenberg),
            "dirac-euler" | "dirac_euler" => Ok(Suite::DiracEuler),
            "sl2" => Ok(Suite::Sl2),
            "osp" => Ok(Suite::Osp),
            "star-laplacian" | "star_laplacian" => Ok(Suite::StarLaplacian),
            other => Err(Error::Parse {
                position: 1,
                message: format!(
                    "expected heisenberg, dirac-euler, sl2, osp or star-laplacian, found `{other}`"
                ),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Direct,
    Gauge,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Direct => "direct",
            Model::Gauge => "gauge",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "direct" => Ok(Model::Direct),
            "gauge" => Ok(Model::Gauge),
            other => Err(Error::Parse {
                position: 1,
                message: format!("expected direct or gauge, found `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub model: Model,
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        VerifyConfig {
            suite,
            model: Model::Direct,
            degree: 5,
            trials: 50,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub trial: usize,
    pub input: CliffPoly,
    pub residual: CliffPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    pub witness: Option<Witness>,
    /// Recorded for reference; does not affect [`Report::all_passed`].
    pub informational: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub model: Model,
    pub entries: Vec<IdentityReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().filter(|e| !e.informational).all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&IdentityReport> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Per-trial scratch space shared by the identities of one suite.
type Memo = HashMap<&'static str, CliffPoly>;

type Check<'a> = Box<dyn Fn(&CliffPoly, &mut Memo) -> CliffPoly + Sync + Send + 'a>;

struct Identity<'a> {
    name: String,
    informational: bool,
    /// Returns the first nonzero residual, or zero.
    check: Check<'a>,
}

fn identity<'a>(name: &str, check: impl Fn(&CliffPoly) -> CliffPoly + Sync + Send + 'a) -> Identity<'a> {
    Identity { name: name.to_string(), informational: false, check: Box::new(move |f, _| check(f)) }
}

fn first_nonzero(n: usize, residuals: impl IntoIterator<Item = CliffPoly>) -> CliffPoly {
    residuals.into_iter().find(|r| !r.is_zero()).unwrap_or_else(|| CliffPoly::zero(n))
}

/// Operators of one model of the oscillator algebra.
trait Ladder: Sync + Send {
    fn plus(&self, f: &CliffPoly) -> CliffPoly;
    fn minus(&self, f: &CliffPoly) -> CliffPoly;
    fn ham(&self, f: &CliffPoly) -> CliffPoly;
}

struct Direct<'a>(&'a UmbralContext);

impl Ladder for Direct<'_> {
    fn plus(&self, f: &CliffPoly) -> CliffPoly {
        dirac_pm(self.0, Sign::Plus, f)
    }
    fn minus(&self, f: &CliffPoly) -> CliffPoly {
        dirac_pm(self.0, Sign::Minus, f)
    }
    fn ham(&self, f: &CliffPoly) -> CliffPoly {
        hamiltonian_direct(self.0, f)
    }
}

impl Ladder for GaugeContext {
    fn plus(&self, f: &CliffPoly) -> CliffPoly {
        self.d_plus(f)
    }
    fn minus(&self, f: &CliffPoly) -> CliffPoly {
        self.d_minus(f)
    }
    fn ham(&self, f: &CliffPoly) -> CliffPoly {
        self.hamiltonian(f)
    }
}

fn heisenberg_identities<'a>(ctx: &'a UmbralContext, model: Model) -> Vec<Identity<'a>> {
    let n = ctx.dim();
    let gauge = GaugeContext::new(ctx.clone());
    let lower = move |j: usize, f: &CliffPoly| ctx.lower(j, f);
    let raise = move |j: usize, f: &CliffPoly| match model {
        Model::Direct => ctx.raise(j, f),
        Model::Gauge => gauge.raise(j, f).expect("coordinate in range"),
    };
    let raise = std::sync::Arc::new(raise);
    let (lo, up) = match model {
        Model::Direct => ("O", "x'"),
        Model::Gauge => ("L", "R"),
    };
    let r1 = raise.clone();
    let r2 = raise.clone();
    vec![
        identity(&format!("[{lo}_j,{lo}_k] = 0"), move |f| {
            first_nonzero(n, pairs(n).map(|(j, k)| &lower(j, &lower(k, f)) - &lower(k, &lower(j, f))))
        }),
        identity(&format!("[{up}_j,{up}_k] = 0"), move |f| {
            first_nonzero(n, pairs(n).map(|(j, k)| &r1(j, &r1(k, f)) - &r1(k, &r1(j, f))))
        }),
        identity(&format!("[{lo}_j,{up}_k] = delta_jk id"), move |f| {
            first_nonzero(
                n,
                pairs(n).map(|(j, k)| {
                    let comm = &lower(j, &r2(k, f)) - &r2(k, &lower(j, f));
                    if j == k {
                        &comm - f
                    } else {
                        comm
                    }
                }),
            )
        }),
    ]
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |j| (1..=n).map(move |k| (j, k)))
}

fn dirac_euler_identities(ctx: &UmbralContext) -> Vec<Identity<'_>> {
    let n = ctx.dim();
    let half = ctx.half_dim();
    let s = frac(3, 2);
    let s1 = &s + int(1);
    let d = move |f: &CliffPoly| dirac(ctx, f);
    let x = move |f: &CliffPoly| vector_var(ctx, f);
    let e = move |s: &Rational, f: &CliffPoly| ctx.euler_s(s, f);
    let i = move |s: &Rational, f: &CliffPoly| i_s_prime(ctx, s, f).expect("s > 0");
    let (s_a, s1_a, s_b, s1_b, s_c, s1_c) = (s.clone(), s1.clone(), s.clone(), s1.clone(), s.clone(), s1.clone());
    let (s_d, s_e) = (s.clone(), s.clone());
    vec![
        identity("(D')^2 = -sum O_j^2", move |f| {
            let mut rhs = CliffPoly::zero(n);
            for j in 1..=n {
                rhs = &rhs - &ctx.lower(j, &ctx.lower(j, f));
            }
            &d(&d(f)) - &rhs
        }),
        identity("(x')^2 = -sum (x_j')^2", move |f| {
            let mut rhs = CliffPoly::zero(n);
            for j in 1..=n {
                rhs = &rhs - &ctx.raise(j, &ctx.raise(j, f));
            }
            &x(&x(f)) - &rhs
        }),
        identity("{x',D'} = -2 E'_{n/2}", move |f| {
            &(&x(&d(f)) + &d(&x(f))) + &e(&half, f).scale(&int(2))
        }),
        identity("D' E'_s = E'_{s+1} D'", move |f| &d(&e(&s_a, f)) - &e(&s1_a, &d(f))),
        identity("E'_s x' = x' E'_{s+1}", move |f| &e(&s_b, &x(f)) - &x(&e(&s1_b, f))),
        identity("D' I'_s = I'_{s+1} D'", move |f| &d(&i(&s_c, f)) - &i(&s1_c, &d(f))),
        identity("I'_s E'_s = id", move |f| &i(&s_d, &e(&s_d, f)) - f),
        identity("E'_s I'_s = id", move |f| &e(&s_e, &i(&s_e, f)) - f),
    ]
}

fn bracket_identities<'a, L: Ladder + 'a>(ladder: std::sync::Arc<L>, full: bool) -> Vec<Identity<'a>> {
    // Applies the word right to left ("+-" is plus(minus(f))), reusing
    // every suffix already evaluated for this trial.
    fn op<L: Ladder>(l: &L, word: &'static str, f: &CliffPoly, memo: &mut Memo) -> CliffPoly {
        if word.is_empty() {
            return f.clone();
        }
        if let Some(hit) = memo.get(word) {
            return hit.clone();
        }
        let inner = op(l, &word[1..], f, memo);
        let out = match word.as_bytes()[0] {
            b'+' => l.plus(&inner),
            b'-' => l.minus(&inner),
            b'H' => l.ham(&inner),
            _ => unreachable!(),
        };
        memo.insert(word, out.clone());
        out
    }
    let mk = |name: &str, lhs: &'static [(i64, &'static str)], rhs: &'static [(i64, &'static str)], info: bool| {
        let l = ladder.clone();
        Identity {
            name: name.to_string(),
            informational: info,
            check: Box::new(move |f: &CliffPoly, memo: &mut Memo| {
                let mut acc = CliffPoly::zero(f.dim());
                for (c, w) in lhs {
                    acc.add_scaled(&op(&*l, w, f, memo), &int(*c));
                }
                for (c, w) in rhs {
                    acc.add_scaled(&op(&*l, w, f, memo), &int(-*c));
                }
                acc
            }),
        }
    };
    let mut out = Vec::new();
    if full {
        out.push(mk("{d+,d-} = -4 H", &[(1, "+-"), (1, "-+")], &[(-4, "H")], false));
        out.push(mk("[H,d-] = -d-", &[(1, "H-"), (-1, "-H")], &[(-1, "-")], false));
        out.push(mk("[H,d+] = d+", &[(1, "H+"), (-1, "+H")], &[(1, "+")], false));
    }
    out.push(mk("[d+^2,d-^2] = -16 H", &[(1, "++--"), (-1, "--++")], &[(-16, "H")], false));
    out.push(mk("[H,d-^2] = -2 d-^2", &[(1, "H--"), (-1, "--H")], &[(-2, "--")], false));
    out.push(mk("[H,d+^2] = 2 d+^2", &[(1, "H++"), (-1, "++H")], &[(2, "++")], false));
    // Same brackets with the opposite sign on the right, as they are
    // sometimes written; they contradict {d+,d-} = -4H together with
    // [H,d-] = -d-, so they are recorded but never gate.
    out.push(mk("[d+^2,d-^2] = 16 H", &[(1, "++--"), (-1, "--++")], &[(16, "H")], true));
    if full {
        out.push(mk("[d-^2,d+] = 4 d-", &[(1, "--+"), (-1, "+--")], &[(4, "-")], true));
        out.push(mk("[d+^2,d+] = 0", &[(1, "+++"), (-1, "+++")], &[], false));
        out.push(mk("[d-^2,d+] = -4 d-", &[(1, "--+"), (-1, "+--")], &[(-4, "-")], false));
        out.push(mk("[d-,d+^2] = -4 d+", &[(1, "-++"), (-1, "++-")], &[(-4, "+")], false));
        // Alternate reading of the H-d+^2 bracket with a first-order right side.
        out.push(mk("[H,d+^2] = 2 d+", &[(1, "H++"), (-1, "++H")], &[(2, "+")], true));
    }
    out
}

/// `Σ_j (f(x + 2h e_j) − 2 f(x) + f(x − 2h e_j)) / (4h²)`.
pub fn star_laplacian_by_shifts(h: &Rational, f: &CliffPoly) -> CliffPoly {
    let two_h = h * int(2);
    let weight = (&two_h * &two_h).recip();
    let mut out = CliffPoly::zero(f.dim());
    for j in 1..=f.dim() {
        let fwd = f.translate(j, &two_h);
        let back = f.translate(j, &-two_h.clone());
        let second = &(&fwd + &back) - &f.scale(&int(2));
        out.add_scaled(&second, &weight);
    }
    out
}

fn star_identities(ctx: &UmbralContext) -> Vec<Identity<'_>> {
    let h = ctx.h().clone();
    vec![identity("Delta' = sum d_{2h}^{+j} d_{2h}^{-j}", move |f| {
        &crate::dirac::laplacian(ctx, f) - &star_laplacian_by_shifts(&h, f)
    })]
}

/// Runs `config.suite` for `ctx`. Identity failures are reported as data.
pub fn verify_relations(ctx: &UmbralContext, config: &VerifyConfig) -> Report {
    let identities: Vec<Identity> = match config.suite {
        Suite::Heisenberg => heisenberg_identities(ctx, config.model),
        Suite::DiracEuler => dirac_euler_identities(ctx),
        Suite::StarLaplacian => star_identities(ctx),
        Suite::Sl2 | Suite::Osp => {
            let full = config.suite == Suite::Osp;
            match config.model {
                Model::Direct => bracket_identities(std::sync::Arc::new(Direct(ctx)), full),
                Model::Gauge => bracket_identities(std::sync::Arc::new(GaugeContext::new(ctx.clone())), full),
            }
        }
    };
    let n = ctx.dim();
    let per_trial: Vec<(CliffPoly, Vec<CliffPoly>)> = map_indexed(config.execution, config.trials, |t| {
        let f = random_poly(&mut trial_rng(config.seed, t as u64), n, config.degree);
        let mut memo = Memo::new();
        let residuals = identities.iter().map(|id| (id.check)(&f, &mut memo)).collect();
        (f, residuals)
    });
    let entries = identities
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let witness = per_trial.iter().enumerate().find_map(|(t, (f, res))| {
                (!res[i].is_zero()).then(|| Witness { trial: t, input: f.clone(), residual: res[i].clone() })
            });
            IdentityReport {
                name: id.name.clone(),
                passed: witness.is_none(),
                trials: config.trials,
                witness,
                informational: id.informational,
            }
        })
        .collect();
    let model = match config.suite {
        Suite::Heisenberg | Suite::Sl2 | Suite::Osp => config.model,
        Suite::DiracEuler | Suite::StarLaplacian => Model::Direct,
    };
    Report { suite: config.suite, model, entries }
}

/// Convenience for the star-Laplacian suite, which only holds for the
/// central delta.
pub fn star_laplacian_applies(ctx: &UmbralContext) -> bool {
    *ctx.kind() == DeltaKind::Central
}
