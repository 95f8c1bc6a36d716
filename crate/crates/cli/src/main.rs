//! `catlim`: build and verify homotopy limits and colimits of finite
//! diagrams of finite categories from JSON files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use catlim_core::corpus::{self, random_bidiagram, CorpusOptions, FinalMode};
use catlim_core::diagnostics::{diagnose, initial_final, is_groupoid, pi0};
use catlim_core::diagram::{load_bidiagram, load_diagram};
use catlim_core::export::{dot, functor_json, hocolim_codec, hocolim_dot, holim_codec};
use catlim_core::fincat::{validate_category, RawCategory};
use catlim_core::interchange::iota;
use catlim_core::padic::{padic_bidiagram, row_category, row_hocolim_homset_check, PadicParams};
use catlim_core::{
    find_pseudo_finals, hocolim, holim_explicit, holim_pullback, inner_outer, verify_retract,
    Error, FinCat, Limits,
};

#[derive(Parser, Debug)]
#[command(
    name = "catlim",
    version,
    about = "Homotopy limits and colimits of finite diagrams of finite categories"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Object cap for every construction.
    #[arg(long, global = true)]
    max_objects: Option<usize>,
    /// Morphism cap for every construction.
    #[arg(long, global = true)]
    max_morphisms: Option<usize>,
    /// Default caps as `objects,morphisms`; the explicit flags take precedence.
    #[arg(
        long = "size-cap",
        env = "CATLIM_SIZE_CAP",
        global = true,
        hide_env_values = true
    )]
    size_cap: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FinalArg {
    Force,
    Forbid,
    Any,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a category, diagram or bidiagram.
    #[command(group(ArgGroup::new("input").required(true)))]
    Validate {
        #[arg(long, group = "input")]
        category: Option<PathBuf>,
        #[arg(long, group = "input")]
        diagram: Option<PathBuf>,
        #[arg(long, group = "input")]
        bidiagram: Option<PathBuf>,
    },
    /// The Grothendieck construction of a diagram.
    Hocolim {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// The category of families of a diagram.
    Holim {
        #[arg(long)]
        diagram: PathBuf,
        /// Include the family of every object and morphism.
        #[arg(long)]
        codec: bool,
    },
    /// The homotopy limit as a pullback of functor categories.
    HolimPullback {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Both interchange categories of a bidiagram and the comparison functor.
    Interchange {
        #[arg(long)]
        bidiagram: PathBuf,
    },
    /// Run every retract check on a bidiagram or on a random corpus.
    Verify {
        /// A bidiagram file.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        diagram: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Whether corpus index categories must, may or must not have a final object.
        #[arg(long, value_enum, default_value_t = FinalArg::Force)]
        final_object: FinalArg,
    },
    /// Groupoid test, initial and final objects, components and nerve counts.
    Diagnose {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        nerve_dim: usize,
    },
    /// The truncated p-adic grid and its row hom-set checks.
    Padic {
        #[arg(long)]
        p: u64,
        #[arg(long = "M")]
        rows: u32,
        #[arg(long = "N")]
        cols: u32,
        /// Write the grid as a bidiagram file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Row whose hocolim is drawn with `--format dot`.
        #[arg(long, default_value_t = 1)]
        row: u32,
    },
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(Value),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(error_json(&e))
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::MissingComposite { .. } => "MissingComposite",
        Error::CompositeTyping { .. } => "CompositeTyping",
        Error::AssociativityViolation { .. } => "AssociativityViolation",
        Error::IdentityViolation { .. } => "IdentityViolation",
        Error::DanglingIndex(_) => "DanglingIndex",
        Error::DuplicateName(_) => "DuplicateName",
        Error::InvalidParameter(_) => "InvalidParameter",
        Error::IndexOutOfRange(_) => "IndexOutOfRange",
        Error::SizeCapExceeded { .. } => "SizeCapExceeded",
        Error::SourceTargetMismatch(_) => "SourceTargetMismatch",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::FunctorialityViolation { .. } => "FunctorialityViolation",
        Error::FiberMismatch(_) => "FiberMismatch",
        Error::NotPseudoFinal(_) => "NotPseudoFinal",
        Error::ConstructionMismatch(_) => "ConstructionMismatch",
        Error::Parse { .. } => "ParseError",
        Error::Io { .. } => "IoError",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    match e {
        Error::SizeCapExceeded { stage, .. } => v["stage"] = json!(stage),
        Error::AssociativityViolation { h, g, f } => v["at"] = json!([h, g, f]),
        Error::Parse { path, .. } | Error::Io { path, .. } => v["path"] = json!(path),
        _ => {}
    }
    v
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure::Input(json!({ "error": "InvalidArgument", "message": message.into() }))
}

fn parse_cap(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || {
        input_error(format!(
            "CATLIM_SIZE_CAP must be `objects,morphisms`, got `{s}`"
        ))
    };
    let (o, m) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        o.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

fn limits(g: &Global) -> Result<Limits, Failure> {
    let mut l = Limits::default();
    if let Some(s) = &g.size_cap {
        let (o, m) = parse_cap(s)?;
        l = Limits::new(o, m);
    }
    if let Some(o) = g.max_objects {
        l.max_objects = o;
    }
    if let Some(m) = g.max_morphisms {
        l.max_morphisms = m;
    }
    Ok(l)
}

fn read_category(path: &Path) -> Result<FinCat, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let raw: RawCategory = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(validate_category(&raw)?)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| {
        Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

fn sizes(c: &FinCat) -> Value {
    json!({ "objects": c.object_count(), "morphisms": c.morphism_count() })
}

enum Output {
    Json(Value),
    Dot(String),
}

fn json_only(format: Format, command: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(input_error(format!("{command} has no DOT output"))),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let limits = limits(&cli.global)?;
    let format = cli.global.format;
    let out = match &cli.command {
        Command::Validate {
            category,
            diagram,
            bidiagram,
        } => {
            if let Some(path) = category {
                let c = read_category(path)?;
                match format {
                    Format::Dot => Output::Dot(dot(&c, "category")),
                    Format::Json => Output::Json(
                        json!({ "valid": true, "kind": "category", "category": sizes(&c) }),
                    ),
                }
            } else if let Some(path) = diagram {
                json_only(format, "validate --diagram")?;
                let d = load_diagram(path)?;
                Output::Json(json!({
                    "valid": true,
                    "kind": "diagram",
                    "index": sizes(d.index()),
                    "fibers": d.fibers().iter().map(|f| sizes(f)).collect::<Vec<_>>(),
                }))
            } else {
                json_only(format, "validate --bidiagram")?;
                let path = bidiagram.as_ref().expect("one input is required");
                let bd = load_bidiagram(path, &limits)?;
                Output::Json(json!({
                    "valid": true,
                    "kind": "bidiagram",
                    "I": sizes(bd.i_cat()),
                    "J": sizes(bd.j_cat()),
                }))
            }
        }
        Command::Hocolim { diagram } => {
            let h = hocolim(&load_diagram(diagram)?, &limits)?;
            match format {
                Format::Dot => Output::Dot(hocolim_dot(&h, "hocolim")),
                Format::Json => Output::Json(json!({
                    "sizes": sizes(h.cat()),
                    "category": h.cat().to_raw(),
                    "codec": hocolim_codec(&h),
                    "projection": functor_json(h.projection()),
                })),
            }
        }
        Command::Holim { diagram, codec } => {
            let h = holim_explicit(&load_diagram(diagram)?, &limits)?;
            match format {
                Format::Dot => Output::Dot(dot(h.cat(), "holim")),
                Format::Json => {
                    let mut v = json!({ "sizes": sizes(h.cat()), "category": h.cat().to_raw() });
                    if *codec {
                        v["codec"] = holim_codec(&h);
                    }
                    Output::Json(v)
                }
            }
        }
        Command::HolimPullback { diagram } => {
            let h = holim_pullback(&load_diagram(diagram)?, &limits)?;
            match format {
                Format::Dot => Output::Dot(dot(h.cat(), "holim_pullback")),
                Format::Json => Output::Json(json!({
                    "sizes": sizes(h.cat()),
                    "functor_category": sizes(h.functor_category().cat()),
                    "category": h.cat().to_raw(),
                    "sections": h.cat().objects().map(|x| functor_json(&h.section(x))).collect::<Vec<_>>(),
                })),
            }
        }
        Command::Interchange { bidiagram } => {
            json_only(format, "interchange")?;
            let pair = inner_outer(&load_bidiagram(bidiagram, &limits)?, &limits)?;
            let i = pair.bidiagram().i_cat();
            Output::Json(json!({
                "A": { "sizes": sizes(pair.a_cat()), "category": pair.a_cat().to_raw() },
                "B": { "sizes": sizes(pair.b_cat()), "category": pair.b_cat().to_raw() },
                "iota": functor_json(&iota(&pair)?),
                "pseudo_finals": find_pseudo_finals(i).iter().map(|pf| i.object_label(pf.e)).collect::<Vec<_>>(),
            }))
        }
        Command::Verify {
            diagram,
            random,
            count,
            seed,
            final_object,
        } => {
            json_only(format, "verify")?;
            if *random {
                verify_random(*count, *seed, *final_object, &limits)?
            } else {
                let path = diagram.as_ref().expect("required unless --random");
                let pair = inner_outer(&load_bidiagram(path, &limits)?, &limits)?;
                let report = verify_retract(&pair, None);
                let v = json!({ "passed": report.passed(), "report": report });
                if !report.passed() {
                    return Err(Failure::Check(v));
                }
                Output::Json(v)
            }
        }
        Command::Diagnose {
            category,
            nerve_dim,
        } => {
            json_only(format, "diagnose")?;
            let c = read_category(category)?;
            Output::Json(serde_json::to_value(diagnose(&c, *nerve_dim)?).expect("serializable"))
        }
        Command::Padic {
            p,
            rows,
            cols,
            emit,
            row,
        } => {
            let params = PadicParams::new(*p, *rows, *cols)?;
            let bd = padic_bidiagram(&params, &limits)?;
            if let Some(path) = emit {
                write_json(path, &bd.to_raw())?;
            }
            if format == Format::Dot {
                let l = row_category(&params, *row, &limits)?;
                return Ok(Output::Dot(hocolim_dot(&l, &format!("L_{row}"))));
            }
            let mut homsets = Vec::new();
            let mut rows_out = Vec::new();
            for m in 1..=*rows {
                let report = row_hocolim_homset_check(&params, m, &limits)?;
                let l = row_category(&params, m, &limits)?;
                let ends = initial_final(l.cat());
                rows_out.push(json!({
                    "m": m,
                    "groupoid": is_groupoid(l.cat()),
                    "initial": ends.initial.map(|x| l.cat().object_label(x).to_string()),
                    "final": ends.terminal.map(|x| l.cat().object_label(x).to_string()),
                    "components": pi0(l.cat()).len(),
                }));
                homsets.push(report);
            }
            let passed = homsets.iter().all(|r| r.passed());
            let v = json!({
                "params": { "p": p, "M": rows, "N": cols },
                "passed": passed,
                "homsets": homsets,
                "rows": rows_out,
            });
            if !passed {
                return Err(Failure::Check(v));
            }
            Output::Json(v)
        }
    };
    Ok(out)
}

/// Upper bound on redraws of corpus instances over the caps.
const MAX_REDRAWS: usize = 1000;

fn verify_random(
    count: usize,
    seed: u64,
    mode: FinalArg,
    limits: &Limits,
) -> Result<Output, Failure> {
    let opts = CorpusOptions {
        final_mode: match mode {
            FinalArg::Force => FinalMode::Force,
            FinalArg::Forbid => FinalMode::Forbid,
            FinalArg::Any => FinalMode::Any,
        },
        ..CorpusOptions::default()
    };
    let mut rng = corpus::rng(seed);
    let mut reports = Vec::with_capacity(count);
    let mut redrawn = 0;
    while reports.len() < count {
        let built =
            random_bidiagram(&mut rng, &opts, limits).and_then(|bd| inner_outer(&bd, limits));
        match built {
            Ok(pair) => reports.push(verify_retract(&pair, None)),
            Err(Error::SizeCapExceeded { .. }) if redrawn < MAX_REDRAWS => redrawn += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    let v = json!({
        "seed": seed,
        "count": count,
        "redrawn": redrawn,
        "passed": passed,
        "reports": reports,
    });
    if passed {
        Ok(Output::Json(v))
    } else {
        Err(Failure::Check(v))
    }
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Json(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Dot(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(v)) => {
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&v).expect("serializable")
            );
            ExitCode::from(2)
        }
    }
}
