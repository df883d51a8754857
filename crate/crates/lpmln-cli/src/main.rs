//! Command-line front end for the `lpmln-core` library.
//!
//! Reads programs from `.lpmln` files and exposes model listing,
//! probabilities, reducts, the choice and doubled-vocabulary translations,
//! and the strong-equivalence checks, in plain text or JSON.
//!
//! Exit codes are a contract: 0 success / equivalent, 1 not equivalent (or
//! condition fails / violation found), 2 parse, usage, or unknown-atom
//! errors, 3 signature over the enumeration cap, 4 no soft stable models,
//! 5 the cross-check conditions disagree.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpmln_core::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lpmln",
    version,
    about = "Soft stable models, limit probabilities, and strong equivalence of LP^MLN programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the soft stable models with total weights and probabilities
    Models(FileArgs),
    /// Print the limit probability distribution (or one point of it)
    Prob(ProbArgs),
    /// Decide strong equivalence of two programs
    CheckSe(CheckSeArgs),
    /// Show the rules an interpretation satisfies and their reducts
    Reduct(ReductArgs),
    /// Print each rule's doubled-vocabulary translation
    Delta(FileArgs),
    /// Print each rule's choice counterpart
    Choice(FileArgs),
    /// Evaluate every equivalence condition independently and compare
    CrossCheck(TwoFileArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Program file
    file: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProbArgs {
    /// Program file
    file: PathBuf,
    /// Query one interpretation, as comma-separated atoms ("" for empty)
    #[arg(long)]
    interp: Option<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckSeArgs {
    /// Left program file
    file_f: PathBuf,
    /// Right program file
    file_g: PathBuf,
    /// Exact check, a single condition, or randomized search
    #[arg(long, value_enum, default_value_t = Method::Theorem1)]
    method: Method,
    /// Trial budget for --method falsify
    #[arg(long, default_value_t = 1000)]
    trials: u32,
    /// PRNG seed for --method falsify
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Theorem1,
    B,
    C,
    D,
    E,
    F,
    G,
    Falsify,
}

#[derive(Args)]
struct ReductArgs {
    /// Program file
    file: PathBuf,
    /// The interpretation, as comma-separated atoms ("" for empty)
    #[arg(long)]
    interp: String,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TwoFileArgs {
    /// Left program file
    file_f: PathBuf,
    /// Right program file
    file_g: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, ParseError),
    Cap(CapExceeded),
    NoModels,
    UnknownAtom(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) | Failure::Parse(..) | Failure::UnknownAtom(_) => 2,
            Failure::Cap(_) => 3,
            Failure::NoModels => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(path, e) => write!(out, "cannot read {}: {e}", path.display()),
            Failure::Parse(path, e) => write!(out, "{}: {e}", path.display()),
            Failure::Cap(e) => write!(out, "{e}"),
            Failure::NoModels => write!(out, "{NoSoftStableModels}"),
            Failure::UnknownAtom(name) => {
                write!(out, "unknown atom `{name}`: not in the program's signature")
            }
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`lpmln ... | head`),
    // as other line-oriented tools do, instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Models(a) => cmd_models(a),
        Command::Prob(a) => cmd_prob(a),
        Command::CheckSe(a) => cmd_check_se(a),
        Command::Reduct(a) => cmd_reduct(a),
        Command::Delta(a) => cmd_delta(a),
        Command::Choice(a) => cmd_choice(a),
        Command::CrossCheck(a) => cmd_cross_check(a),
    }
}

fn load(path: &Path) -> Result<Program, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    parse_program(&text).map_err(|e| Failure::Parse(path.to_owned(), e))
}

/// Parse `"a,b"` (or `""`) into an interpretation over `sig`.
fn parse_interp(spec: &str, sig: &Signature) -> Result<Interpretation, Failure> {
    let mut atoms = Vec::new();
    for part in spec.split(',') {
        let name = part.trim();
        if name.is_empty() {
            continue;
        }
        if !sig.contains(name) {
            return Err(Failure::UnknownAtom(name.to_string()));
        }
        atoms.push(name.to_string());
    }
    Ok(Interpretation::from_atoms(atoms))
}

/// Weights in listings print as `e^{c1}` or `e^{c1+c2a}`.
fn weight_text(w: WExpr) -> String {
    if w.hard == 0 {
        format!("e^{{{}}}", w.soft)
    } else {
        format!("e^{{{}{:+}a}}", w.soft, w.hard)
    }
}

/// Primed atoms are not legal input syntax; print them as `_prime` names.
fn unprime_name(name: &str) -> String {
    name.replace('\'', "_prime")
}

fn unprime(f: &Formula) -> Formula {
    match f {
        Formula::Atom(name) => Formula::atom(unprime_name(name)),
        Formula::Top | Formula::Bot => f.clone(),
        Formula::Not(g) => Formula::not(unprime(g)),
        Formula::And(l, r) => Formula::and(unprime(l), unprime(r)),
        Formula::Or(l, r) => Formula::or(unprime(l), unprime(r)),
        Formula::Implies(l, r) => Formula::implies(unprime(l), unprime(r)),
    }
}

fn atoms_json(x: &Interpretation) -> Value {
    Value::Array(
        x.iter()
            .map(|a| Value::String(unprime_name(a)))
            .collect::<Vec<_>>(),
    )
}

fn wexpr_json(w: WExpr) -> Value {
    json!({ "c1": w.soft, "c2": w.hard })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_models(a: FileArgs) -> Result<u8, Failure> {
    let prog = load(&a.file)?;
    let sig = prog.atoms();
    ensure_classical_cap(&sig).map_err(Failure::Cap)?;
    let dist = probability_distribution(&prog, &sig).map_err(|_| Failure::NoModels)?;
    let rows: Vec<(Interpretation, WExpr, f64)> = soft_stable_models(&prog, &sig)
        .into_iter()
        .map(|x| {
            let w = total_weight(&satisfied_rules(&prog, &x));
            let p = dist.probability(&x);
            (x, w, p)
        })
        .collect();
    if a.json {
        print_json(&json!({
            "models": rows
                .iter()
                .map(|(x, w, p)| json!({
                    "atoms": atoms_json(x),
                    "weight": wexpr_json(*w),
                    "probability": p,
                }))
                .collect::<Vec<_>>(),
        }));
    } else {
        for (x, w, p) in &rows {
            println!("{x}  {}  {p}", weight_text(*w));
        }
    }
    Ok(0)
}

fn cmd_prob(a: ProbArgs) -> Result<u8, Failure> {
    let prog = load(&a.file)?;
    let sig = prog.atoms();
    ensure_classical_cap(&sig).map_err(Failure::Cap)?;
    let dist = probability_distribution(&prog, &sig).map_err(|_| Failure::NoModels)?;
    if let Some(spec) = &a.interp {
        let x = parse_interp(spec, &sig)?;
        let p = dist.probability(&x);
        if a.json {
            print_json(&json!({ "atoms": atoms_json(&x), "probability": p }));
        } else {
            println!("{p}");
        }
    } else if a.json {
        print_json(&json!({
            "distribution": dist
                .iter()
                .map(|(x, p)| json!({ "atoms": atoms_json(x), "probability": p }))
                .collect::<Vec<_>>(),
        }));
    } else {
        for (x, p) in dist.iter() {
            println!("{x}  {p}");
        }
    }
    Ok(0)
}

fn method_condition(m: Method) -> Option<ConditionId> {
    match m {
        Method::B => Some(ConditionId::B),
        Method::C => Some(ConditionId::C),
        Method::D => Some(ConditionId::D),
        Method::E => Some(ConditionId::E),
        Method::F => Some(ConditionId::F),
        Method::G => Some(ConditionId::G),
        Method::Theorem1 | Method::Falsify => None,
    }
}

fn verdict_json(v: &SEVerdict) -> Value {
    match v {
        SEVerdict::Equivalent { witness } => json!({
            "verdict": "equivalent",
            "witness": wexpr_json(*witness),
        }),
        SEVerdict::Vacuous => json!({
            "verdict": "equivalent",
            "witness": wexpr_json(WExpr::ONE),
            "vacuous": true,
        }),
        SEVerdict::WeightMismatch {
            x1,
            ratio1,
            x2,
            ratio2,
        } => json!({
            "verdict": "not_equivalent",
            "counterexample": {
                "kind": "weight",
                "x1": atoms_json(x1),
                "ratio1": wexpr_json(*ratio1),
                "x2": atoms_json(x2),
                "ratio2": wexpr_json(*ratio2),
            },
        }),
        SEVerdict::ReductMismatch { x, distinguishing } => json!({
            "verdict": "not_equivalent",
            "counterexample": {
                "kind": "reduct",
                "x": atoms_json(x),
                "distinguishing": atoms_json(distinguishing),
            },
        }),
    }
}

fn witness_text(w: &ConditionWitness) -> String {
    match w {
        ConditionWitness::Interpretation(x) => format!("at {x}"),
        ConditionWitness::HtPair(m) => format!("at the here-and-there pair {m}"),
        ConditionWitness::Valuation(v) => format!(
            "at the valuation {}",
            Interpretation::from_atoms(v.iter().map(|a| unprime_name(a)))
        ),
    }
}

fn witness_json(w: &ConditionWitness) -> Value {
    match w {
        ConditionWitness::Interpretation(x) => json!({
            "kind": "interpretation",
            "atoms": atoms_json(x),
        }),
        ConditionWitness::HtPair(m) => json!({
            "kind": "ht_pair",
            "here": atoms_json(m.here()),
            "there": atoms_json(m.there()),
        }),
        ConditionWitness::Valuation(v) => json!({
            "kind": "valuation",
            "atoms": atoms_json(v),
        }),
    }
}

fn condition_json(r: &ConditionReport) -> Value {
    json!({
        "id": r.id.to_string(),
        "holds": r.holds,
        "hypothesis": r.id.is_hypothesis(),
        "witness": r.witness.as_ref().map(witness_json).unwrap_or(Value::Null),
    })
}

fn print_condition_text(r: &ConditionReport) {
    let status = if r.holds { "holds" } else { "fails" };
    match &r.witness {
        Some(w) => println!("condition {} {status} {}", r.id, witness_text(w)),
        None => println!("condition {} {status}: {}", r.id, r.id.describe()),
    }
    if r.id.is_hypothesis() {
        println!(
            "note: condition d uses a candidate definition of soft \
             here-and-there models, cross-validated against the others"
        );
    }
}

fn cmd_check_se(a: CheckSeArgs) -> Result<u8, Failure> {
    let f = load(&a.file_f)?;
    let g = load(&a.file_g)?;
    match a.method {
        Method::Theorem1 => {
            let verdict = check_se(&f, &g).map_err(Failure::Cap)?;
            if a.json {
                print_json(&verdict_json(&verdict));
            } else {
                println!("{verdict}");
            }
            Ok(u8::from(!verdict.is_equivalent()))
        }
        Method::Falsify => {
            let report = falsify(&f, &g, a.trials, a.seed).map_err(Failure::Cap)?;
            if a.json {
                let counterexample = report
                    .violation
                    .as_ref()
                    .map(|v| {
                        json!({
                            "extension": render_program(&v.extension),
                            "at": atoms_json(&v.at),
                            "p_left": v.p_left,
                            "p_right": v.p_right,
                        })
                    })
                    .unwrap_or(Value::Null);
                print_json(&json!({
                    "verdict": if report.found() { "violation_found" } else { "no_violation" },
                    "seed": report.seed,
                    "trials_used": report.trials_used,
                    "counterexample": counterexample,
                }));
            } else if let Some(v) = &report.violation {
                println!(
                    "violation found after {} trials (seed {}): at {}, p_left = {}, p_right = {}",
                    report.trials_used, report.seed, v.at, v.p_left, v.p_right
                );
                print!("extension:\n{}", render_program(&v.extension));
                if v.extension.is_empty() {
                    println!("(empty)");
                }
            } else {
                println!(
                    "no violation in {} trials (seed {})",
                    report.trials_used, report.seed
                );
            }
            Ok(u8::from(report.found()))
        }
        method => {
            let id = method_condition(method).expect("condition method");
            let report = check_condition(id, &f, &g).map_err(Failure::Cap)?;
            if a.json {
                print_json(&json!({
                    "verdict": if report.holds { "holds" } else { "fails" },
                    "conditions": [condition_json(&report)],
                }));
            } else {
                print_condition_text(&report);
            }
            Ok(u8::from(!report.holds))
        }
    }
}

fn cmd_reduct(a: ReductArgs) -> Result<u8, Failure> {
    let prog = load(&a.file)?;
    let sig = prog.atoms();
    let x = parse_interp(&a.interp, &sig)?;
    let kept = satisfied_rules(&prog, &x);
    let reducts: Vec<Formula> = kept.formulas().map(|f| reduct(f, &x)).collect();
    if a.json {
        print_json(&json!({
            "interpretation": atoms_json(&x),
            "rules": kept.rules().iter().map(|r| format!("{r}.")).collect::<Vec<_>>(),
            "reducts": reducts.iter().map(render_formula).collect::<Vec<_>>(),
        }));
    } else {
        println!("F_X:");
        for rule in kept.rules() {
            println!("  {rule}.");
        }
        println!("reducts:");
        for r in &reducts {
            println!("  {r}");
        }
    }
    Ok(0)
}

fn cmd_delta(a: FileArgs) -> Result<u8, Failure> {
    let prog = load(&a.file)?;
    let pm = PrimingMap::for_signature(&prog.atoms());
    let lines: Vec<String> = prog
        .formulas()
        .map(|f| render_formula(&unprime(&delta_transform(f, &pm))))
        .collect();
    if a.json {
        print_json(&json!({ "formulas": lines }));
    } else {
        for line in &lines {
            println!("{line}");
        }
    }
    Ok(0)
}

fn cmd_choice(a: FileArgs) -> Result<u8, Failure> {
    let prog = load(&a.file)?;
    let lines: Vec<String> = choice_program(&prog).iter().map(render_formula).collect();
    if a.json {
        print_json(&json!({ "formulas": lines }));
    } else {
        for line in &lines {
            println!("{line}");
        }
    }
    Ok(0)
}

fn cmd_cross_check(a: TwoFileArgs) -> Result<u8, Failure> {
    let f = load(&a.file_f)?;
    let g = load(&a.file_g)?;
    let matrix = check_all_conditions(&f, &g).map_err(Failure::Cap)?;
    let (verdict, code) = match matrix.verdict() {
        Some(true) => ("holds", 0),
        Some(false) => ("fails", 1),
        None => ("disagreement", 5),
    };
    if a.json {
        print_json(&json!({
            "conditions": matrix.reports.iter().map(condition_json).collect::<Vec<_>>(),
            "agreement": matrix.all_agree(),
            "verdict": verdict,
        }));
    } else {
        for report in &matrix.reports {
            print_condition_text(report);
        }
        match matrix.verdict() {
            Some(true) => println!("all conditions agree: the programs are equivalent under every extension's soft stable models"),
            Some(false) => println!("all conditions agree: some extension separates the programs' soft stable models"),
            None => println!("conditions disagree: implementation bug or a failure of the condition-d candidate definition"),
        }
    }
    Ok(code)
}
