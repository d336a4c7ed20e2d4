use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superll::instance::{
    check_cut_axioms, check_expansion_axiom, check_girardization_axioms, check_subsumption_axioms,
    parse_instance, AxiomReport, Bounds, Instance,
};
use superll::parse_sequent;
use superll::presets::{
    check_native, decode_native, encode_native, make_preset, parse_native, print_native, PresetId,
};
use superll::proof::{
    check_proof, parse_proof, print_proof, proof_size, to_latex, CheckOptions, Proof, SizeMode,
};
use superll::search::{search_cutfree, SearchBudget, SearchResult};
use superll::transform::{
    eliminate_cut, eliminate_subsumption, expand_axioms, forget_to_ll, girardize, TransformReport,
};

#[derive(Parser)]
#[command(
    name = "superll",
    version,
    about = "Superexponential linear logic proof tool"
)]
struct Cli {
    /// Instance file, or `preset:NAME`.
    #[arg(long, global = true)]
    instance: Option<String>,
    /// Bounds `K,N` for axiom checks.
    #[arg(long, global = true, value_parser = parse_bounds)]
    bounds: Option<Bounds>,
    /// Output path for the resulting proof.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Require list-equal conclusions when checking.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Measure::ExchangeFree)]
    measure: Measure,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Raw,
    ExchangeFree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Cut,
    Expansion,
    Girard,
    Subsumption,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Encode,
    Decode,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof against the instance.
    Check { proof: PathBuf },
    /// Eliminate all cuts.
    CutElim { proof: PathBuf },
    /// Replace functorial promotion and digging by Girard's promotion.
    Girardize { proof: PathBuf },
    /// Remove unary contractions and functorial promotion.
    Desubsume { proof: PathBuf },
    /// Expand axioms to atomic ones.
    Expand { proof: PathBuf },
    /// Map every signature to the single LL signature.
    Forget { proof: PathBuf },
    /// Check one axiom table on the instance.
    VerifyAxioms {
        #[arg(long, value_enum)]
        table: Table,
    },
    /// Bounded search for a cut-free proof.
    Search {
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 8)]
        width: usize,
    },
    /// Convert between a preset's native proofs and superLL proofs.
    Translate {
        #[arg(value_enum)]
        direction: Direction,
        proof: PathBuf,
        /// Preset name; defaults to the `preset:NAME` instance.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Print a proof as a bussproofs tree.
    ExportLatex { proof: PathBuf },
}

/// An error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn logical(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let (k, n) = s.split_once(',').ok_or("expected K,N")?;
    let k = k.trim().parse().map_err(|_| format!("bad K in {s}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad N in {s}"))?;
    if k == 0 || n == 0 {
        return Err("bounds must be positive".into());
    }
    Ok(Bounds { k, n })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_proof(path: &Path) -> Result<Proof, Failure> {
    parse_proof(&read(path)?).map_err(|e| usage(format!("{}:{e}", path.display())))
}

fn preset_id(name: &str) -> Result<PresetId, Failure> {
    PresetId::from_name(name).ok_or_else(|| {
        usage(format!(
            "unknown preset `{name}` (expected one of {})",
            PresetId::NAMES.join(", ")
        ))
    })
}

fn load_instance(reference: Option<&str>) -> Result<Instance, Failure> {
    let reference = reference.ok_or_else(|| usage("--instance is required"))?;
    if let Some(name) = reference.strip_prefix("preset:") {
        return make_preset(&preset_id(name)?).map_err(|e| usage(format!("{name}: {e}")));
    }
    let text = read(Path::new(reference))?;
    parse_instance(&text).map_err(|e| usage(format!("{reference}:{e}")))
}

struct Out {
    report: String,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.report, "{key}: {value}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = Out {
        report: String::new(),
    };
    let status = run(&cli, &mut out);
    print!("{}", out.report);
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn size_mode(cli: &Cli) -> SizeMode {
    match cli.measure {
        Measure::Raw => SizeMode::Raw,
        Measure::ExchangeFree => SizeMode::ExchangeFree,
    }
}

fn check_options(cli: &Cli) -> CheckOptions {
    if cli.strict {
        CheckOptions::strict()
    } else {
        CheckOptions::default()
    }
}

/// Writes `text` to `-o` if given, otherwise to the report.
fn emit(cli: &Cli, out: &mut Out, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            out.kv("output", path.display());
        }
        None => out.report.push_str(text),
    }
    Ok(())
}

fn emit_proof(cli: &Cli, out: &mut Out, p: &Proof) -> Result<(), Failure> {
    let mut text = print_proof(p);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(cli, out, &text)
}

fn transform_report(cli: &Cli, out: &mut Out, r: &TransformReport, p: &Proof) {
    out.kv("conclusion", &p.conclusion);
    out.kv("cut-free", p.is_cut_free());
    out.kv("input-size", r.input_size);
    out.kv("output-size", proof_size(p, size_mode(cli)));
    out.kv("steps", r.total_steps());
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { proof } => {
            let inst = load_instance(cli.instance.as_deref())?;
            let p = load_proof(proof)?;
            match check_proof(&inst, &p, &check_options(cli)) {
                Ok(()) => {
                    out.report.push_str("valid\n");
                    out.kv("conclusion", &p.conclusion);
                    out.kv("cut-free", p.is_cut_free());
                    out.kv("size", proof_size(&p, size_mode(cli)));
                    out.kv("depth", p.depth());
                    Ok(())
                }
                Err(e) => {
                    out.report.push_str("invalid\n");
                    Err(logical(format!(
                        "{}:{}: {}",
                        proof.display(),
                        superll::proof::fmt_path(&e.path),
                        e.error
                    )))
                }
            }
        }
        Command::CutElim { proof }
        | Command::Girardize { proof }
        | Command::Desubsume { proof }
        | Command::Expand { proof } => {
            let inst = load_instance(cli.instance.as_deref())?;
            let p = load_proof(proof)?;
            let f = match &cli.command {
                Command::CutElim { .. } => eliminate_cut,
                Command::Girardize { .. } => girardize,
                Command::Desubsume { .. } => eliminate_subsumption,
                _ => expand_axioms,
            };
            let (q, report) =
                f(&inst, &p).map_err(|e| logical(format!("{}: {e}", proof.display())))?;
            emit_proof(cli, out, &q)?;
            transform_report(cli, out, &report, &q);
            Ok(())
        }
        Command::Forget { proof } => {
            let p = load_proof(proof)?;
            if cli.instance.is_some() {
                let inst = load_instance(cli.instance.as_deref())?;
                check_proof(&inst, &p, &check_options(cli))
                    .map_err(|e| logical(format!("{}: input {e}", proof.display())))?;
            }
            let q = forget_to_ll(&p).map_err(|e| logical(format!("{}: {e}", proof.display())))?;
            emit_proof(cli, out, &q)?;
            out.kv("conclusion", &q.conclusion);
            out.kv("size", proof_size(&q, size_mode(cli)));
            Ok(())
        }
        Command::VerifyAxioms { table } => {
            let inst = load_instance(cli.instance.as_deref())?;
            let bounds = cli.bounds.unwrap_or_default();
            let report = match table {
                Table::Cut => check_cut_axioms(&inst, bounds),
                Table::Expansion => check_expansion_axiom(&inst),
                Table::Girard => check_girardization_axioms(&inst, bounds),
                Table::Subsumption => check_subsumption_axioms(&inst, bounds),
            };
            axiom_report(out, &report);
            if report.passed() {
                Ok(())
            } else {
                Err(logical(format!("{} axioms fail", report.table)))
            }
        }
        Command::Search {
            goal,
            depth,
            nodes,
            arity,
            width,
        } => {
            let inst = load_instance(cli.instance.as_deref())?;
            let goal = parse_sequent(goal).map_err(|e| usage(format!("goal: {e}")))?;
            if *depth == 0 || *nodes == 0 || *arity == 0 || *width == 0 {
                return Err(usage("search budgets must be positive"));
            }
            let budget = SearchBudget {
                max_depth: *depth,
                max_nodes: *nodes,
                max_contraction_arity: *arity,
                max_promotion_width: *width,
                ..SearchBudget::default()
            };
            let outcome = search_cutfree(&inst, &goal, &budget);
            out.kv("result", &outcome.result);
            out.kv("nodes", outcome.nodes);
            match outcome.result {
                SearchResult::Found(p) => {
                    out.kv("size", proof_size(&p, size_mode(cli)));
                    emit_proof(cli, out, &p)
                }
                r => Err(logical(format!("no proof: {r}"))),
            }
        }
        Command::Translate {
            direction,
            proof,
            preset,
        } => {
            let name = match (preset, cli.instance.as_deref()) {
                (Some(n), _) => n.as_str(),
                (None, Some(r)) => r
                    .strip_prefix("preset:")
                    .ok_or_else(|| usage("translate needs --preset or --instance preset:NAME"))?,
                (None, None) => {
                    return Err(usage("translate needs --preset or --instance preset:NAME"))
                }
            };
            let id = preset_id(name)?;
            let text = read(proof)?;
            match direction {
                Direction::Encode => {
                    let np = parse_native(&text)
                        .map_err(|e| usage(format!("{}:{e}", proof.display())))?;
                    let p = encode_native(&id, &np)
                        .map_err(|e| logical(format!("{}: {e}", proof.display())))?;
                    emit_proof(cli, out, &p)?;
                    out.kv("conclusion", &p.conclusion);
                }
                Direction::Decode => {
                    let p = parse_proof(&text)
                        .map_err(|e| usage(format!("{}:{e}", proof.display())))?;
                    let np = decode_native(&id, &p)
                        .map_err(|e| logical(format!("{}: {e}", proof.display())))?;
                    check_native(&id.native_system(), &np)
                        .map_err(|e| logical(format!("{}: {e}", proof.display())))?;
                    let mut s = print_native(&np);
                    if !s.ends_with('\n') {
                        s.push('\n');
                    }
                    emit(cli, out, &s)?;
                    out.kv("conclusion", &np.conclusion);
                }
            }
            Ok(())
        }
        Command::ExportLatex { proof } => {
            let p = load_proof(proof)?;
            emit(cli, out, &to_latex(&p))
        }
    }
}

fn axiom_report(out: &mut Out, r: &AxiomReport) {
    out.kv("table", r.table);
    out.kv("bounds", format!("{},{}", r.bounds.k, r.bounds.n));
    out.kv("exhaustive", r.exhaustive);
    for (axiom, ok) in &r.verdicts {
        out.kv(axiom, if *ok { "pass" } else { "fail" });
    }
    for c in &r.counterexamples {
        out.kv("counterexample", c);
    }
    out.kv("result", if r.passed() { "pass" } else { "fail" });
}
