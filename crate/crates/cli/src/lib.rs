//! Command-line front end. [`run`] takes the argument vector and two sinks
//! and returns the process exit code, so it can be driven in-process.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 mathematical
//! precondition failure, 3 a verified identity failed.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use umbral::dirac::{almansi_decompose, fischer_decompose, harmonic_split, monogenic_basis};
use umbral::exec::Execution;
use umbral::rational::parse_rational;
use umbral::verify::{verify_relations, Model, Report, Suite, VerifyConfig};
use umbral::{parse_poly, CliffPoly, DeltaKind, Error, GaugeContext, MultiIndex, UmbralContext, Variant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Exact umbral Clifford analysis over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic polynomial V_α = (x')^α 1.
    BasicPoly {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Comma-separated multi-index, e.g. `2,1`.
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Almansi decomposition f = f_1 + x' f_2 + ... + (x')^{k-1} f_k.
    Decompose {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Polymonogenic order, or `auto` for the smallest k with (D')^k f = 0.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fischer decomposition of an E'-homogeneous polynomial.
    Fischer {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Basis of the monogenics of a given V-degree.
    Kernel {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// f = f1 + x' f0 for an umbral-harmonic f.
    HarmonicSplit {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run an identity suite on seeded random polynomials.
    Verify {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        run: VerifyArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Harmonic-oscillator ladder algebra.
    Oscillator {
        #[command(subcommand)]
        command: OscillatorCommand,
    },
    /// Check the exponential generating function of the basic sequence.
    Generating {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Highest total order |α| in t.
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum OscillatorCommand {
    Verify {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_enum, default_value = "osp")]
        suite: OscSuiteArg,
        #[command(flatten)]
        run: VerifyArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// f = Σ (d⁺)^{i-1} g_i with d⁻ g_i = 0 in the Gaussian gauge.
    Decompose {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Clifford-Hermite polynomial W_α and its eigenvalue.
    Hermite {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct ContextArgs {
    /// Dimension n of the Clifford algebra and number of variables.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=32))]
    n: u16,
    /// derivative, forward, backward, central or custom:[a0,a1,...].
    #[arg(long, default_value = "derivative")]
    delta: String,
    /// Lattice step, `int` or `int/posint`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    h: String,
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Polynomial in the text grammar.
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    /// File holding one polynomial.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "direct")]
    model: ModelArg,
    #[arg(long, default_value_t = 5)]
    degree: u32,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run trials on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Plain,
    Symmetric,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Heisenberg,
    DiracEuler,
    Sl2,
    Osp,
    StarLaplacian,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OscSuiteArg {
    Sl2,
    Osp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModelArg {
    Direct,
    Gauge,
}

/// A failure together with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::BasicPoly { ctx, alpha, out } => basic_poly(&ctx, &alpha, out.format),
        Command::Decompose { ctx, input, k, out } => decompose(&ctx, &input, &k, out.format),
        Command::Fischer { ctx, input, out } => fischer(&ctx, &input, out.format),
        Command::Kernel { ctx, degree, out } => kernel(&ctx, degree, out.format),
        Command::HarmonicSplit { ctx, input, out } => split(&ctx, &input, out.format),
        Command::Verify { ctx, suite, run, out } => {
            let suite = match suite {
                SuiteArg::Heisenberg => Suite::Heisenberg,
                SuiteArg::DiracEuler => Suite::DiracEuler,
                SuiteArg::Sl2 => Suite::Sl2,
                SuiteArg::Osp => Suite::Osp,
                SuiteArg::StarLaplacian => Suite::StarLaplacian,
            };
            verify(&ctx, suite, &run, out.format)
        }
        Command::Oscillator { command } => match command {
            OscillatorCommand::Verify { ctx, suite, run, out } => {
                let suite = match suite {
                    OscSuiteArg::Sl2 => Suite::Sl2,
                    OscSuiteArg::Osp => Suite::Osp,
                };
                verify(&ctx, suite, &run, out.format)
            }
            OscillatorCommand::Decompose { ctx, input, k, out } => oscillator_decompose(&ctx, &input, &k, out.format),
            OscillatorCommand::Hermite { ctx, alpha, out } => hermite(&ctx, &alpha, out.format),
        },
        Command::Generating { ctx, order, out } => generating(&ctx, order, out.format),
    }
}

fn context(args: &ContextArgs) -> std::result::Result<UmbralContext, Failure> {
    let kind: DeltaKind = args.delta.parse()?;
    let h = parse_rational(&args.h)?;
    let variant = match args.variant {
        VariantArg::Plain => Variant::Plain,
        VariantArg::Symmetric => Variant::Symmetric,
    };
    Ok(UmbralContext::new(args.n as usize, kind, h, variant)?)
}

fn read_input(input: &InputArgs, n: usize) -> std::result::Result<CliffPoly, Failure> {
    let text = match (&input.expr, &input.input) {
        (Some(expr), _) => expr.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read `{path}`: {e}")))?
        }
        (None, None) => return Err(Failure::usage("one of --expr or --input is required")),
    };
    Ok(parse_poly(text.trim(), n)?)
}

fn parse_k(k: &str) -> std::result::Result<Option<usize>, Failure> {
    match k.trim() {
        "auto" => Ok(None),
        other => match other.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(Failure::usage(format!("--k expects a positive integer or `auto`, found `{other}`"))),
        },
    }
}

fn parse_alpha(alpha: &str, n: usize) -> std::result::Result<MultiIndex, Failure> {
    let parts: std::result::Result<Vec<u32>, _> = alpha.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let parts = parts.map_err(|_| Failure::usage(format!("--alpha expects comma-separated exponents, found `{alpha}`")))?;
    if parts.len() != n {
        return Err(Failure::usage(format!("--alpha has {} entries, expected n = {n}", parts.len())));
    }
    Ok(MultiIndex::new(parts))
}

#[derive(Serialize)]
struct ContextJson {
    delta: String,
    h: String,
    variant: String,
    n: usize,
}

fn context_json(ctx: &UmbralContext) -> ContextJson {
    ContextJson { delta: ctx.kind().to_string(), h: ctx.h().to_string(), variant: ctx.variant().to_string(), n: ctx.dim() }
}

fn context_line(ctx: &UmbralContext) -> String {
    format!("delta {}  h {}  variant {}  n {}\n", ctx.kind(), ctx.h(), ctx.variant(), ctx.dim())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn ok_mark(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Serialize)]
struct Component {
    index: usize,
    poly: String,
}

fn components(parts: &[CliffPoly]) -> Vec<Component> {
    parts.iter().enumerate().map(|(i, p)| Component { index: i + 1, poly: p.to_string() }).collect()
}

#[derive(Serialize)]
struct DecomposeJson {
    #[serde(flatten)]
    context: ContextJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<&'static str>,
    k: usize,
    components: Vec<Component>,
    monogenic_ok: bool,
    reconstruction_ok: bool,
}

fn decomposition_output(
    ctx: &UmbralContext,
    model: Option<&'static str>,
    parts: &[CliffPoly],
    monogenic_ok: bool,
    reconstruction_ok: bool,
    symbol: &str,
    format: Format,
) -> String {
    match format {
        Format::Json => json(&DecomposeJson {
            context: context_json(ctx),
            model,
            k: parts.len(),
            components: components(parts),
            monogenic_ok,
            reconstruction_ok,
        }),
        Format::Table => {
            let mut s = context_line(ctx);
            if let Some(m) = model {
                s.push_str(&format!("model {m}\n"));
            }
            s.push_str(&format!("k {}\n", parts.len()));
            for (i, p) in parts.iter().enumerate() {
                s.push_str(&format!("{symbol}_{} = {p}\n", i + 1));
            }
            s.push_str(&format!("monogenic {}  reconstruction {}\n", ok_mark(monogenic_ok), ok_mark(reconstruction_ok)));
            s
        }
    }
}

fn basic_poly(args: &ContextArgs, alpha: &str, format: Format) -> Outcome {
    let ctx = context(args)?;
    let alpha = parse_alpha(alpha, ctx.dim())?;
    let v = ctx.basic_polynomial(&alpha);
    let text = match format {
        Format::Table => format!("{v}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                alpha: Vec<u32>,
                poly: String,
            }
            json(&Out { context: context_json(&ctx), alpha: alpha.exponents().to_vec(), poly: v.to_string() })
        }
    };
    Ok((text, EXIT_OK))
}

fn decompose(args: &ContextArgs, input: &InputArgs, k: &str, format: Format) -> Outcome {
    let ctx = context(args)?;
    let k = parse_k(k)?;
    let f = read_input(input, ctx.dim())?;
    let result = almansi_decompose(&ctx, &f, k)?;
    let text = decomposition_output(
        &ctx,
        None,
        &result.components,
        result.all_monogenic(),
        result.reconstruct() == f,
        "f",
        format,
    );
    Ok((text, EXIT_OK))
}

fn oscillator_decompose(args: &ContextArgs, input: &InputArgs, k: &str, format: Format) -> Outcome {
    let ctx = context(args)?;
    let k = parse_k(k)?;
    let f = read_input(input, ctx.dim())?;
    let gauge = GaugeContext::new(ctx.clone());
    let result = gauge.almansi(&f, k)?;
    let text = decomposition_output(
        &ctx,
        Some("gauge"),
        &result.components,
        result.all_monogenic(),
        result.reconstruct() == f,
        "g",
        format,
    );
    Ok((text, EXIT_OK))
}

fn fischer(args: &ContextArgs, input: &InputArgs, format: Format) -> Outcome {
    let ctx = context(args)?;
    let p = read_input(input, ctx.dim())?;
    let parts = fischer_decompose(&ctx, &p)?;
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                degree: usize,
                components: Vec<Component>,
            }
            let comps = parts.iter().enumerate().map(|(j, m)| Component { index: j, poly: m.to_string() }).collect();
            json(&Out { context: context_json(&ctx), degree: p.degree().unwrap_or(0) as usize, components: comps })
        }
        Format::Table => {
            let mut s = context_line(&ctx);
            for (j, m) in parts.iter().enumerate() {
                s.push_str(&format!("m_{j} = {m}\n"));
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn kernel(args: &ContextArgs, degree: u32, format: Format) -> Outcome {
    let ctx = context(args)?;
    let basis = monogenic_basis(&ctx, degree);
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                degree: u32,
                dimension: usize,
                basis: Vec<String>,
            }
            json(&Out {
                context: context_json(&ctx),
                degree,
                dimension: basis.len(),
                basis: basis.iter().map(|b| b.to_string()).collect(),
            })
        }
        Format::Table => {
            let mut s = context_line(&ctx);
            s.push_str(&format!("degree {degree}  dimension {}\n", basis.len()));
            for b in &basis {
                s.push_str(&format!("{b}\n"));
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn split(args: &ContextArgs, input: &InputArgs, format: Format) -> Outcome {
    let ctx = context(args)?;
    let f = read_input(input, ctx.dim())?;
    let (f1, f0) = harmonic_split(&ctx, &f)?;
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                f1: String,
                f0: String,
            }
            json(&Out { context: context_json(&ctx), f1: f1.to_string(), f0: f0.to_string() })
        }
        Format::Table => format!("{}f1 = {f1}\nf0 = {f0}\n", context_line(&ctx)),
    };
    Ok((text, EXIT_OK))
}

fn hermite(args: &ContextArgs, alpha: &str, format: Format) -> Outcome {
    let ctx = context(args)?;
    let alpha = parse_alpha(alpha, ctx.dim())?;
    let gauge = GaugeContext::new(ctx.clone());
    let w = gauge.hermite_basic(&alpha);
    let eigenvalue = gauge.eigenvalue(&alpha);
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                model: &'static str,
                alpha: Vec<u32>,
                poly: String,
                eigenvalue: String,
            }
            json(&Out {
                context: context_json(&ctx),
                model: "gauge",
                alpha: alpha.exponents().to_vec(),
                poly: w.to_string(),
                eigenvalue: eigenvalue.to_string(),
            })
        }
        Format::Table => format!("{w}\neigenvalue {eigenvalue}\n"),
    };
    Ok((text, EXIT_OK))
}

fn generating(args: &ContextArgs, order: u32, format: Format) -> Outcome {
    let ctx = context(args)?;
    if order > 12 {
        return Err(Failure::usage(format!("--order is limited to 12, found {order}")));
    }
    let table = ctx.generating_check(order)?;
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                alpha: Vec<u32>,
                coefficient: String,
            }
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                context: ContextJson,
                order: u32,
                matches: bool,
                coefficients: Vec<Row>,
            }
            let rows = table
                .iter()
                .map(|(a, c)| Row { alpha: a.exponents().to_vec(), coefficient: c.to_string() })
                .collect();
            json(&Out { context: context_json(&ctx), order, matches: true, coefficients: rows })
        }
        Format::Table => {
            let mut s = context_line(&ctx);
            for (a, c) in &table {
                s.push_str(&format!("{:?}  {c}\n", a.exponents()));
            }
            s.push_str(&format!("all {} coefficients equal V_alpha / alpha!\n", table.len()));
            s
        }
    };
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct WitnessJson {
    trial: usize,
    input: String,
    residual: String,
}

#[derive(Serialize)]
struct IdentityJson {
    name: String,
    passed: bool,
    informational: bool,
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(flatten)]
    context: ContextJson,
    suite: String,
    model: String,
    degree: u32,
    trials: u32,
    seed: u64,
    all_passed: bool,
    identities: Vec<IdentityJson>,
}

fn verify(args: &ContextArgs, suite: Suite, run: &VerifyArgs, format: Format) -> Outcome {
    let ctx = context(args)?;
    if suite == Suite::StarLaplacian && *ctx.kind() != DeltaKind::Central {
        return Err(Failure {
            code: EXIT_PRECONDITION,
            message: format!("the star-laplacian suite needs --delta central, got {}", ctx.kind()),
        });
    }
    let model = match run.model {
        ModelArg::Direct => Model::Direct,
        ModelArg::Gauge => Model::Gauge,
    };
    let config = VerifyConfig {
        suite,
        model,
        degree: run.degree,
        trials: run.trials as usize,
        seed: run.seed,
        execution: if run.sequential { Execution::Sequential } else { Execution::default() },
    };
    let report = verify_relations(&ctx, &config);
    Ok(verify_output(&ctx, &config, &report, format))
}

fn verify_output(ctx: &UmbralContext, config: &VerifyConfig, report: &Report, format: Format) -> (String, i32) {
    let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY };
    let text = match format {
        Format::Json => json(&verify_json(ctx, config, report)),
        Format::Table => verify_table(ctx, config, report),
    };
    (text, code)
}

fn verify_json(ctx: &UmbralContext, config: &VerifyConfig, report: &Report) -> VerifyJson {
    VerifyJson {
        context: context_json(ctx),
        suite: report.suite.to_string(),
        model: report.model.to_string(),
        degree: config.degree,
        trials: config.trials as u32,
        seed: config.seed,
        all_passed: report.all_passed(),
        identities: report
            .entries
            .iter()
            .map(|e| IdentityJson {
                name: e.name.clone(),
                passed: e.passed,
                informational: e.informational,
                witness: e.witness.as_ref().map(|w| WitnessJson {
                    trial: w.trial,
                    input: w.input.to_string(),
                    residual: w.residual.to_string(),
                }),
            })
            .collect(),
    }
}

fn verify_table(ctx: &UmbralContext, config: &VerifyConfig, report: &Report) -> String {
    let mut s = context_line(ctx);
    s.push_str(&format!(
        "suite {}  model {}  degree {}  trials {}  seed {}\n",
        report.suite, report.model, config.degree, config.trials, config.seed
    ));
    for e in &report.entries {
        let status = match (e.passed, e.informational) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "holds (informational)",
            (false, true) => "fails (informational)",
        };
        s.push_str(&format!("{status}  {}\n", e.name));
        if let Some(w) = &e.witness {
            s.push_str(&format!("    trial {}: input {}\n    residual {}\n", w.trial, w.input, w.residual));
        }
    }
    s.push_str(if report.all_passed() { "all identities hold\n" } else { "some identities FAILED\n" });
    s
}
