//! `charlab`: exact evaluation of classical group characters, mechanical
//! verification of their factorization identities, and cross-checked plane
//! partition counts.
//!
//! Every invocation writes exactly one JSON document to stdout; all numbers
//! inside it are strings (`"p/q"` or plain integers) so no consumer can
//! round them. Runs are fully determined by their flags, including `--seed`.
//!
//! Exit codes: 0 success/equal, 1 counterexample or inconsistent counts,
//! 2 usage error, 3 singular evaluation (use `--principal`).

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use charlab::characters::{
    character_at, principal_specialization, CharError, CharacterSpec, Family,
};
use charlab::combinat::{
    nth_pp, quantity_pp, quantity_spp, quantity_spp_star, quantity_tcpp, CombinatError,
    CountMethod, CountReport,
};
use charlab::identities::{
    verify_lemma, verify_theorem, IdentityError, LemmaId, Mode, TheoremId, VerificationReport,
};
use charlab::shapes::Shape;
use charlab::{parse_rat, rat_str, Rat};

#[derive(Parser)]
#[command(
    name = "charlab",
    version,
    about = "Exact classical group characters, factorization identities, and plane partition counts"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a character at a rational point or by principal specialization
    Eval(EvalArgs),
    /// Verify a factorization identity (thm1-4, uniform15/65, eq13/14)
    Verify(VerifyArgs),
    /// Verify one of the three subset-sum lemmas
    Lemma(LemmaArgs),
    /// Count a plane-partition class by independent methods
    Count(CountArgs),
    /// Render one plane partition as a lozenge tiling (SVG)
    Render(RenderArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Character family: gl, so-odd, sp, o-even, so-even
    #[arg(long)]
    family: String,
    /// Comma-separated parts, halves as a/2 (e.g. "2,2" or "3/2,1/2");
    /// shorter shapes are padded with zeros to --vars
    #[arg(long)]
    shape: String,
    /// Number of variables
    #[arg(long)]
    vars: usize,
    /// Evaluate at this comma-separated rational point (e.g. "2,3" or "5/2,-3")
    #[arg(long, conflicts_with = "principal")]
    at: Option<String>,
    /// Specialize x_h -> q^h and let q -> 1 (the all-ones point)
    #[arg(long)]
    principal: bool,
    /// With --principal: x_h -> -q^(h-1) instead (the all-minus-ones point)
    #[arg(long, requires = "principal")]
    negate: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// thm1 | thm2 | thm3 | thm4 | uniform15 | uniform65 | eq13 | eq14
    #[arg(long)]
    identity: String,
    /// Rectangle parameter m (the width M for the uniform forms)
    #[arg(long)]
    m: i64,
    /// Number of variables n
    #[arg(long)]
    n: usize,
    /// symbolic | random
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Number of random trials (random mode)
    #[arg(long, default_value_t = 20)]
    trials: u32,
    /// RNG seed; identical seeds give identical runs
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct LemmaArgs {
    /// Which lemma: 1, 2, or 3
    #[arg(long)]
    which: u32,
    /// Size parameter N (ground set 2N, or 2N+1 for lemma 3)
    #[arg(long = "N", value_name = "N")]
    n: usize,
    /// symbolic | random
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Number of random trials (random mode)
    #[arg(long, default_value_t = 20)]
    trials: u32,
    /// RNG seed; identical seeds give identical runs
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CountArgs {
    /// pp | spp | tcpp | spp-star
    #[arg(long)]
    family: String,
    /// Half the box height (boxes have height 2m)
    #[arg(long)]
    m: i64,
    /// Base side length
    #[arg(long)]
    n: usize,
    /// Override base rows (pp only)
    #[arg(long)]
    b: Option<usize>,
    /// Override base columns (pp only)
    #[arg(long)]
    c: Option<usize>,
    /// Comma-separated subset of: bruteforce, character, product
    #[arg(long)]
    methods: String,
}

#[derive(Args)]
struct RenderArgs {
    /// Only pp is renderable
    #[arg(long)]
    family: String,
    /// Half the box height
    #[arg(long)]
    m: i64,
    /// Base side length
    #[arg(long)]
    n: usize,
    /// Index of the plane partition in enumeration order
    #[arg(long)]
    index: u64,
    /// Output SVG path
    #[arg(long)]
    out: String,
}

enum CliError {
    Usage(String),
    Singular(String),
}

impl CliError {
    fn exit(self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Singular(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::SingularDenominator => CliError::Singular(format!(
                "{e} (rerun with --principal instead of --at)"
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CombinatError> for CliError {
    fn from(e: CombinatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Lemma(args) => cmd_lemma(args),
        Cmd::Count(args) => cmd_count(args),
        Cmd::Render(args) => cmd_render(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => e.exit(),
    }
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn parse_point(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|tok| parse_rat(tok).map_err(CliError::Usage))
        .collect()
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, CliError> {
    let family: Family = args.family.parse().map_err(usage)?;
    let shape: Shape = args.shape.parse().map_err(usage)?;
    let shape = if shape.len() == args.vars {
        shape
    } else {
        shape.padded(args.vars).map_err(usage)?
    };
    let spec = CharacterSpec::new(family, shape.clone(), args.vars)?;

    let mut obj = serde_json::Map::new();
    obj.insert("family".into(), family.as_str().into());
    obj.insert("shape".into(), shape.to_string().into());
    obj.insert("vars".into(), args.vars.to_string().into());

    let value = match (&args.at, args.principal) {
        (Some(point_str), false) => {
            let point = parse_point(point_str)?;
            let v = character_at(&spec, &point, None)?;
            obj.insert(
                "point".into(),
                serde_json::Value::Array(
                    point
                        .iter()
                        .map(|p| serde_json::Value::String(rat_str(p)))
                        .collect(),
                ),
            );
            rat_str(&v)
        }
        (None, true) => {
            let v = principal_specialization(&spec, args.negate)?;
            obj.insert(
                "specialization".into(),
                if args.negate {
                    "principal-negated".into()
                } else {
                    "principal".into()
                },
            );
            v.to_string()
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --at or --principal is required".into(),
            ))
        }
    };
    obj.insert("value".into(), value.into());
    emit(&serde_json::Value::Object(obj));
    Ok(ExitCode::SUCCESS)
}

fn report_exit(report: &VerificationReport) -> ExitCode {
    emit(&report.to_json());
    if report.is_equal() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let identity: TheoremId = args.identity.parse().map_err(CliError::Usage)?;
    let mode: Mode = args.mode.parse().map_err(CliError::Usage)?;
    let report = verify_theorem(identity, args.m, args.n, mode, args.trials, args.seed)?;
    Ok(report_exit(&report))
}

fn cmd_lemma(args: LemmaArgs) -> Result<ExitCode, CliError> {
    let which = match args.which {
        1 => LemmaId::One,
        2 => LemmaId::Two,
        3 => LemmaId::Three,
        other => {
            return Err(CliError::Usage(format!(
                "unknown lemma {other} (expected 1, 2, or 3)"
            )))
        }
    };
    let mode: Mode = args.mode.parse().map_err(CliError::Usage)?;
    let report = verify_lemma(which, args.n, mode, args.trials, args.seed)?;
    Ok(report_exit(&report))
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, CliError> {
    if args.m < 0 {
        return Err(CliError::Usage("--m must be non-negative".into()));
    }
    let methods: Vec<CountMethod> = args
        .methods
        .split(',')
        .map(|tok| tok.trim().parse().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    if methods.is_empty() {
        return Err(CliError::Usage("at least one method is required".into()));
    }
    if args.family != "pp" && (args.b.is_some() || args.c.is_some()) {
        return Err(CliError::Usage("--b/--c apply only to --family pp".into()));
    }

    let report: CountReport = match args.family.as_str() {
        "pp" => quantity_pp(
            2 * args.m,
            args.b.unwrap_or(args.n),
            args.c.unwrap_or(args.n),
            &methods,
        )?,
        "spp" => quantity_spp(2 * args.m, args.n, &methods)?,
        "tcpp" => quantity_tcpp(args.m, args.n, &methods)?,
        "spp-star" => quantity_spp_star(args.m, args.n, &methods)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?} (expected pp, spp, tcpp, spp-star)"
            )))
        }
    };
    emit(&report.to_json());
    Ok(if report.consistent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_render(args: RenderArgs) -> Result<ExitCode, CliError> {
    if args.family != "pp" {
        return Err(CliError::Usage(
            "only --family pp can be rendered".into(),
        ));
    }
    if args.m < 0 {
        return Err(CliError::Usage("--m must be non-negative".into()));
    }
    let height = (2 * args.m) as u32;
    let pp = nth_pp(height, args.n, args.n, args.index)?;
    let svg = render::render_pp_svg(&pp);
    std::fs::write(&args.out, svg.as_bytes())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", args.out)))?;

    let rhombi = args.n * args.n + 2 * args.n * height as usize;
    let mut obj = serde_json::Map::new();
    obj.insert("family".into(), "pp".into());
    obj.insert("height".into(), height.to_string().into());
    obj.insert("n".into(), args.n.to_string().into());
    obj.insert("index".into(), args.index.to_string().into());
    obj.insert("out".into(), args.out.clone().into());
    obj.insert("rhombi".into(), rhombi.to_string().into());
    emit(&serde_json::Value::Object(obj));
    Ok(ExitCode::SUCCESS)
}
