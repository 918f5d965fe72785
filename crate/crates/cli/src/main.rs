//! `wgrz`: command-line front-end for the reduction toolkit.
//!
//! Exit status: 0 on success / pass, 1 on a semantic failure (false
//! formula, unsatisfiable query, failed check, bad input), 2 on usage
//! errors.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wgrz_core::formula::{parse_modal, parse_qbf, ModalFormula, QbfFormula};
use wgrz_core::kripke::{
    frame_from_json, frame_validates, model_to_json, wgrz_axiom, FrameClass, KripkeFrame, Validity,
    DEFAULT_VALIDITY_BUDGET,
};
use wgrz_core::qbf::{evaluate, is_true_qbf, negate_prenex, to_prenex, QbfModel};
use wgrz_core::reduction::{
    alpha, encode_alpha, encode_star, extend_model, frame_fm, frame_fm_plus, quantifier_tree,
};
use wgrz_core::solver::{
    sat_bounded, sat_k_tableau_with, Engine, TableauConfig, DEFAULT_NODE_BUDGET,
};
use wgrz_core::verify::{run_verify, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "wgrz",
    version,
    about = "TQBF to constant modal formulas: encode, solve, witness, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantified Boolean formulas.
    Qbf {
        #[command(subcommand)]
        action: QbfAction,
    },
    /// Print φ* or φ*_α for a closed prenex QBF.
    Encode {
        #[arg(long, value_enum, default_value_t = Stage::Star)]
        stage: Stage,
        /// Print without modal abbreviations.
        #[arg(long)]
        expand: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Decide K-satisfiability of a modal formula.
    Sat {
        #[arg(long, value_enum, default_value_t = EngineArg::Tableau)]
        engine: EngineArg,
        /// World bound for the bounded engine.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Node budget for the tableau engine.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Write the witness model (JSON) here when satisfiable.
        #[arg(long, value_name = "PATH")]
        emit_witness: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Print a witness model for a true closed prenex QBF as JSON.
    Witness {
        #[arg(long, value_enum, default_value_t = ModelKind::Tree)]
        model: ModelKind,
        #[command(flatten)]
        input: Input,
    },
    /// Check a gadget frame or a frame read from JSON.
    Frame(FrameArgs),
    /// Run the end-to-end check over a generated corpus.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        /// Number of random instances with 2 ≤ n ≤ n-max.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matrix size bound for the exhaustive n = 1 part.
        #[arg(long, default_value_t = 5)]
        exhaustive_size: usize,
        /// Matrix size bound for random instances.
        #[arg(long, default_value_t = 9)]
        random_size: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Report path (line-delimited JSON); stdout if omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QbfAction {
    /// Evaluate under an assignment (free variables default to false).
    Eval {
        /// Variables assigned true, e.g. `--true 1,3`.
        #[arg(long = "true", value_delimiter = ',')]
        true_vars: Vec<u32>,
        #[command(flatten)]
        input: Input,
    },
    /// Decide membership in TQBF (free variables are closed universally).
    Tqbf {
        #[command(flatten)]
        input: Input,
    },
    /// Print a prenex form of a closed formula.
    Prenex {
        /// Print the negation of a prenex input instead.
        #[arg(long)]
        negate: bool,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Formula text given inline.
    #[arg(short, long, conflicts_with = "file")]
    expr: Option<String>,
    /// Formula file; `-` or nothing reads stdin.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct FrameArgs {
    /// Use the gadget frame F_m.
    #[arg(
        long,
        value_name = "M",
        conflicts_with = "input",
        required_unless_present = "input"
    )]
    gadget: Option<u32>,
    /// With --gadget, use F_m⁺.
    #[arg(long, requires = "gadget")]
    plus: bool,
    /// Frame JSON file.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    check: FrameCheck,
    /// Cap on |worlds|·|variables| for valuation enumeration.
    #[arg(long, default_value_t = DEFAULT_VALIDITY_BUDGET)]
    budget: usize,
    /// α indices for alpha-validity (default 1..=6).
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<u32>,
    /// Also write the frame in DOT format here.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Star,
    Alpha,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Tableau,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Tree,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameCheck {
    Gl,
    Grz,
    Ktb,
    WgrzAxiom,
    AlphaValidity,
}

/// A failure reported as one JSON line on stderr with exit status 1.
struct Failure {
    kind: &'static str,
    message: String,
}

fn fail(kind: &'static str, message: impl ToString) -> Failure {
    Failure {
        kind,
        message: message.to_string(),
    }
}

type Outcome = Result<bool, Failure>;

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush());
}

macro_rules! out {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format_args!($($arg)*)))
    };
}

impl Input {
    fn text(&self) -> Result<String, Failure> {
        if let Some(e) = &self.expr {
            return Ok(e.clone());
        }
        match &self.file {
            Some(p) if p.as_os_str() != "-" => {
                fs::read_to_string(p).map_err(|e| fail("io", format!("{}: {e}", p.display())))
            }
            _ => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| fail("io", e))?;
                Ok(s)
            }
        }
    }

    fn qbf(&self) -> Result<QbfFormula, Failure> {
        parse_qbf(self.text()?.trim()).map_err(|e| fail("parse", e))
    }

    fn modal(&self) -> Result<ModalFormula, Failure> {
        parse_modal(self.text()?.trim()).map_err(|e| fail("parse", e))
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail("io", format!("{}: {e}", path.display())))
}

fn cmd_qbf(action: &QbfAction) -> Outcome {
    match action {
        QbfAction::Eval { true_vars, input } => {
            let f = input.qbf()?;
            let value = evaluate(&true_vars.iter().copied().collect::<QbfModel>(), &f);
            out!("{value}");
            Ok(true)
        }
        QbfAction::Tqbf { input } => {
            let value = is_true_qbf(&input.qbf()?);
            out!("{value}");
            Ok(value)
        }
        QbfAction::Prenex { negate, input } => {
            let f = input.qbf()?;
            let g = if *negate {
                negate_prenex(&f)
            } else {
                to_prenex(&f)
            }
            .map_err(|e| fail("qbf", e))?;
            out!("{g}");
            Ok(true)
        }
    }
}

fn cmd_encode(stage: Stage, expand: bool, input: &Input) -> Outcome {
    let f = input.qbf()?;
    let g = match stage {
        Stage::Star => encode_star(&f).map(|(g, _)| g),
        Stage::Alpha => encode_alpha(&f),
    }
    .map_err(|e| fail("reduction", e))?;
    if expand {
        out!("{}", g.expand_sugar());
    } else {
        out!("{g}");
    }
    Ok(true)
}

fn cmd_sat(
    engine: EngineArg,
    bound: usize,
    budget: u64,
    emit: Option<&PathBuf>,
    input: &Input,
) -> Outcome {
    let f = input.modal()?;
    let verdict = match engine {
        EngineArg::Tableau => sat_k_tableau_with(
            &f,
            &TableauConfig {
                node_budget: budget,
            },
        ),
        EngineArg::Bounded => sat_bounded(&f, bound),
    }
    .map_err(|e| fail("solver", e))?;
    let engine = match verdict.engine {
        Engine::Tableau => json!("tableau"),
        Engine::Bounded { bound } => json!({ "bounded": bound }),
    };
    let line = json!({
        "verdict": if verdict.is_sat() { "sat" } else { "unsat" },
        "engine": engine,
        "nodes_explored": verdict.stats.nodes_explored,
        "max_depth": verdict.stats.max_depth,
    });
    out!("{line}");
    if let (Some(path), Some(w)) = (emit, verdict.witness()) {
        write_file(path, &model_to_json(w))?;
    }
    Ok(verdict.is_sat())
}

fn cmd_witness(kind: ModelKind, input: &Input) -> Outcome {
    let f = input.qbf()?;
    let (tree, ctx) = quantifier_tree(&f).map_err(|e| fail("reduction", e))?;
    let model = match kind {
        ModelKind::Tree => tree,
        ModelKind::Extended => extend_model(&tree, &ctx).map_err(|e| fail("reduction", e))?,
    };
    out!("{}", model_to_json(&model));
    Ok(true)
}

fn validity_json(fr: &KripkeFrame, v: &Validity) -> serde_json::Value {
    match v {
        Validity::Valid => json!("valid"),
        Validity::Refuted { world, valuation } => json!({
            "refuted_at": fr.world(*world).to_string(),
            "valuation": valuation
                .iter()
                .map(|(var, ws)| (format!("p{var}"), json!(ws.iter().map(|&w| fr.world(w).to_string()).collect::<Vec<_>>())))
                .collect::<serde_json::Map<_, _>>(),
        }),
    }
}

fn cmd_frame(args: &FrameArgs) -> Outcome {
    let fr = match (args.gadget, &args.input) {
        (Some(m), _) => if args.plus {
            frame_fm_plus(m)
        } else {
            frame_fm(m)
        }
        .map_err(|e| fail("reduction", e))?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| fail("io", format!("{}: {e}", path.display())))?;
            frame_from_json(&text).map_err(|e| fail("kripke", e))?
        }
        (None, None) => unreachable!("clap requires one of --gadget, --input"),
    };
    if let Some(path) = &args.dot {
        write_file(path, &fr.to_dot())?;
    }
    let (name, pass, detail) = match args.check {
        FrameCheck::Gl => ("gl", fr.in_class(FrameClass::Gl), json!(null)),
        FrameCheck::Grz => ("grz", fr.in_class(FrameClass::Grz), json!(null)),
        FrameCheck::Ktb => ("ktb", fr.in_class(FrameClass::Ktb), json!(null)),
        FrameCheck::WgrzAxiom => {
            let v =
                frame_validates(&fr, &wgrz_axiom(), args.budget).map_err(|e| fail("kripke", e))?;
            ("wgrz-axiom", v.is_valid(), validity_json(&fr, &v))
        }
        FrameCheck::AlphaValidity => {
            let ks: Vec<u32> = if args.alpha.is_empty() {
                (1..=6).collect()
            } else {
                args.alpha.clone()
            };
            let mut all = true;
            let mut per = serde_json::Map::new();
            for k in ks {
                let a = alpha(k).map_err(|e| fail("reduction", e))?;
                let v = frame_validates(&fr, &a, args.budget).map_err(|e| fail("kripke", e))?;
                all &= v.is_valid();
                per.insert(format!("alpha{k}"), validity_json(&fr, &v));
            }
            ("alpha-validity", all, serde_json::Value::Object(per))
        }
    };
    let mut line = json!({ "check": name, "result": if pass { "pass" } else { "fail" } });
    if !detail.is_null() {
        line["detail"] = detail;
    }
    out!("{line}");
    Ok(pass)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Qbf { action } => cmd_qbf(action),
        Command::Encode {
            stage,
            expand,
            input,
        } => cmd_encode(*stage, *expand, input),
        Command::Sat {
            engine,
            bound,
            budget,
            emit_witness,
            input,
        } => cmd_sat(*engine, *bound, *budget, emit_witness.as_ref(), input),
        Command::Witness { model, input } => cmd_witness(*model, input),
        Command::Frame(args) => cmd_frame(args),
        Command::Verify {
            n_max,
            count,
            seed,
            exhaustive_size,
            random_size,
            budget,
            out,
        } => {
            let config = VerifyConfig {
                n_max: *n_max,
                exhaustive_size: *exhaustive_size,
                random_size: *random_size,
                count: *count,
                seed: *seed,
                node_budget: *budget,
                ..VerifyConfig::default()
            };
            let report = run_verify(&config);
            match out {
                Some(path) => write_file(path, &report.to_jsonl())?,
                None => emit(&report.to_jsonl()),
            }
            eprintln!("{}", report.summary());
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure { kind, message }) => {
            eprintln!("{}", json!({ "error": kind, "message": message }));
            ExitCode::from(1)
        }
    }
}
