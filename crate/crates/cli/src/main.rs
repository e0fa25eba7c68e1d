use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilaffine::affine::{verify_morphism, AlgebraRef, MorphismJson};
use nilaffine::catalog::Catalog;
use nilaffine::exactla::expr::{self, Bindings};
use nilaffine::liealg::{
    center, derived_series, identify_nilpotent_dim_le4, is_nilpotent, is_solvable, lower_central_series, nilradical,
    AlgebraJson, LieAlgebra,
};
use nilaffine::splitting::build_splitting;
use nilaffine::survey::{self, Summary};
use nilaffine::transitivity::{check_pair, check_simply_transitive, Verdict};
use nilaffine::Error;
use rayon::prelude::*;
use serde_json::json;

mod render;

#[derive(Parser)]
#[command(name = "nilaffine", version, about = "Semisimple splittings, nilshadows and simply transitive NIL-affine actions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// directory with algebras.json / witnesses.json / expected.json overriding the built-in catalog
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AlgebraArgs {
    /// catalog name, e.g. rr3 or r4mulambda
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    g: Option<String>,
    /// parameter binding, repeatable
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// JSON file with an algebra (inline structure or catalog reference)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a Lie algebra
    Describe(AlgebraArgs),
    /// Semisimple splitting and nilshadow of a solvable Lie algebra
    Splitting(AlgebraArgs),
    /// Check whether a morphism g → aff(h) is a simply transitive action
    CheckMorphism {
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide whether g acts simply transitively by NIL-affine maps on h
    CheckPair {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Re-derive every catalog result
    VerifyPaper {
        /// worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// list passing checks too
        #[arg(long)]
        verbose: bool,
    },
}

enum Failure {
    Input(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownAlgebra(_)
            | Error::OutOfDomain(..)
            | Error::Expr(_)
            | Error::Json(_)
            | Error::Dimension(_)
            | Error::Catalog(_)
            | Error::UnsupportedTarget(_)
            | Error::Jacobi(..)
            | Error::Antisymmetry(..) => Failure::Input(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let catalog = match &cli.catalog {
        Some(dir) => Catalog::load_dir(dir)?,
        None => Catalog::builtin()?,
    };
    match &cli.command {
        Command::Describe(a) => describe(cli.format, &catalog, a),
        Command::Splitting(a) => splitting(cli.format, &catalog, a),
        Command::CheckMorphism { input } => check_morphism(cli.format, &catalog, input),
        Command::CheckPair { g, h, params } => pair(cli.format, &catalog, g, h, params),
        Command::VerifyPaper { jobs, verbose } => verify(cli.format, &catalog, *jobs, *verbose),
    }
}

fn parse_params(raw: &[String]) -> Result<Bindings, Failure> {
    let mut out = Bindings::new();
    for p in raw {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("parameter {p:?} is not of the form KEY=VALUE")))?;
        let x = expr::eval_scalar(v.trim(), &Bindings::new())
            .map_err(|e| Failure::Input(format!("parameter {}: {e}", k.trim())))?;
        out.insert(k.trim().to_string(), x);
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(c: &Catalog, a: &AlgebraArgs) -> Result<(String, LieAlgebra), Failure> {
    let params = parse_params(&a.params)?;
    if let Some(path) = &a.input {
        if !params.is_empty() {
            return Err(Failure::Input("--param cannot be combined with --input".into()));
        }
        let r: AlgebraRef = serde_json::from_str(&read(path)?).map_err(Error::from)?;
        let g = r.resolve(&|n, p| c.get_algebra(n, p))?;
        return Ok((path.display().to_string(), g));
    }
    let name = a.g.as_deref().expect("clap requires --g or --input");
    let g = c.get_algebra(name, &params)?;
    Ok((format!("{name}{}", survey::format_params(&params)), g))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn describe(format: Format, c: &Catalog, a: &AlgebraArgs) -> CmdResult {
    let (label, g) = load_algebra(c, a)?;
    let names = g.names().to_vec();
    let solvable = is_solvable(&g);
    let nilpotent = is_nilpotent(&g);
    let derived: Vec<usize> = derived_series(&g).iter().map(|s| s.dim()).collect();
    let lcs: Vec<usize> = lower_central_series(&g).iter().map(|s| s.dim()).collect();
    let z = center(&g);
    let nil = if solvable { Some(nilradical(&g)?) } else { None };
    let class = if nilpotent { identify_nilpotent_dim_le4(&g).ok() } else { None };
    let shadow = if solvable && !nilpotent {
        build_splitting(&g).ok().and_then(|sp| sp.nilshadow_class)
    } else {
        class
    };

    if format == Format::Json {
        print_json(&json!({
            "algebra": label,
            "structure": AlgebraJson::from_algebra(&g),
            "solvable": solvable,
            "nilpotent": nilpotent,
            "derived_series": derived,
            "lower_central_series": lcs,
            "center": z.basis(),
            "nilradical": nil.as_ref().map(|n| n.basis().to_vec()),
            "class": class.map(|k| k.name()),
            "nilshadow": shadow.map(|k| k.name()),
        }));
        return Ok(ExitCode::SUCCESS);
    }
    let dims = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ⊃ ");
    println!("{label}: dimension {}", g.dim());
    println!("brackets: {}", render::brackets(&g));
    println!("solvable: {}, nilpotent: {}", yes(solvable), yes(nilpotent));
    println!("derived series dims: {}", dims(&derived));
    println!("lower central series dims: {}", dims(&lcs));
    println!("center: {}", render::span(&names, &z));
    if let Some(n) = &nil {
        println!("nilradical: {}", render::span(&names, n));
    }
    if let Some(k) = class {
        println!("isomorphic to {k}");
    }
    if let Some(k) = shadow {
        println!("nilshadow: {k}");
    }
    Ok(ExitCode::SUCCESS)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn splitting(format: Format, c: &Catalog, a: &AlgebraArgs) -> CmdResult {
    let (label, g) = load_algebra(c, a)?;
    let sp = build_splitting(&g)?;
    match format {
        Format::Json => print_json(&sp.to_json()),
        Format::Text => {
            println!("{label}");
            print!("{}", render::splitting(&sp));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_morphism(format: Format, c: &Catalog, input: &Path) -> CmdResult {
    let phi = MorphismJson::parse(&read(input)?, &|n, p| c.get_algebra(n, p))?;
    let hom = verify_morphism(&phi);
    if !hom.passed {
        match format {
            Format::Json => print_json(&json!({ "morphism": hom, "verdict": Verdict::NotSimplyTransitive })),
            Format::Text => {
                print!("{}", render::morphism_report(&hom));
                println!("verdict: {}", Verdict::NotSimplyTransitive);
            }
        }
        return Ok(ExitCode::FAILURE);
    }
    let r = check_simply_transitive(&phi)?;
    match format {
        Format::Json => print_json(&json!({ "morphism": hom, "report": r })),
        Format::Text => {
            print!("{}", render::morphism_report(&hom));
            print!("{}", render::transitivity(&r));
        }
    }
    Ok(if r.verdict == Verdict::SimplyTransitive {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn pair(format: Format, c: &Catalog, g: &str, h: &str, raw: &[String]) -> CmdResult {
    let params = parse_params(raw)?;
    let r = check_pair(c, g, &params, h)?;
    let expected = c.expected_result(g, &params, h).unwrap_or(None);
    let contradicts = match (expected, r.verdict) {
        (Some(true), Verdict::Obstructed) | (Some(false), Verdict::Exists) => true,
        _ => false,
    };
    match format {
        Format::Json => print_json(&json!({ "report": r, "expected": expected, "consistent": !contradicts })),
        Format::Text => {
            println!("{g}{} → {h}", survey::format_params(&params));
            print!("{}", render::transitivity(&r));
            if let Some(e) = expected {
                let want = if e { Verdict::Exists } else { Verdict::Obstructed };
                println!("catalog: {want}{}", if contradicts { " (CONTRADICTED)" } else { "" });
            }
        }
    }
    Ok(if r.verdict == Verdict::Unknown || contradicts {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn verify(format: Format, c: &Catalog, jobs: Option<usize>, verbose: bool) -> CmdResult {
    let tasks = survey::tasks(c)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Failure::Other(e.to_string()))?;
    let outcomes = pool.install(|| tasks.par_iter().map(|t| survey::run(c, t)).collect());
    let s = Summary::new(outcomes);
    match format {
        Format::Json => print_json(&serde_json::to_value(&s).map_err(Error::from)?),
        Format::Text => print!("{}", render::summary(&s, verbose)),
    }
    Ok(if s.success() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

