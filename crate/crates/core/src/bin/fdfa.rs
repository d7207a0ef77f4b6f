//! Command-line front end.
//!
//! Exit codes: 0 the property holds (or the command succeeded), 1 it is refuted,
//! 2 usage or input error, 3 a search cap was exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fdfa::almost_saturation::DEFAULT_CAP;
use fdfa::faf::{parse_sample, to_dot};
use fdfa::learning::{dollar_dfa_to_fdfa, fdfa_to_dollar_dfa, learn_active, learn_passive, make_teacher};
use fdfa::oracle::{brute_almost_saturation, brute_saturation};
use fdfa::regularity::{GoodCase, DEFAULT_PROFILE_CAP};
use fdfa::{
    check_almost_saturated, check_fdwa_saturated, check_regular, check_saturated, complement_saturated_fdwa,
    duo_to_fdwa, fdwa_to_duo, fdwa_to_nba, gen_family, parse_document, serialize_document, AlmostStatus,
    AlmostWitness, Alphabet, AnyFamily, Counterexample, Document, Error, Fdfa, ReferenceSet, RegularityStatus, SaturationMode,
    SaturationVerdict, Stage,
};

#[derive(Parser)]
#[command(name = "fdfa", version, about = "Check, translate, learn and generate families of automata")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a property of a family.
    Check {
        #[arg(value_enum)]
        property: Property,
        /// FAF file, or `-` for stdin.
        file: String,
        /// Search cap for almost saturation and regularity.
        #[arg(long)]
        cap: Option<usize>,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Convert between representations.
    Translate {
        #[arg(value_enum)]
        op: Translation,
        file: String,
        #[arg(short, long, default_value = "-")]
        out: String,
        /// Write Graphviz instead of FAF.
        #[arg(long)]
        dot: bool,
    },
    /// Learn an FDFA.
    Learn {
        #[command(subcommand)]
        mode: Learn,
    },
    /// Write a family from one of the built-in constructions.
    Gen {
        /// fixpoint-fdwa, fixpoint-alsat, subset-occurrence, zero-u-zero-fdfa,
        /// zero-u-zero-fdwa or syntactic-gap
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(short, long, default_value = "-")]
        out: String,
        #[arg(long)]
        dot: bool,
    },
    /// Bounded brute-force checks, and counterexample replay.
    Oracle {
        #[arg(value_enum)]
        check: OracleCheck,
        /// FAF file, or `-` for stdin.
        file: String,
        /// Counterexample JSON for `replay` (`-` for stdin).
        counterexample: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_u: usize,
        #[arg(long, default_value_t = 6)]
        max_x: usize,
        /// Largest power tried by the almost-saturation oracle.
        #[arg(long, default_value_t = 4)]
        max_power: usize,
        /// Replay against all representations instead of normalized ones.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Learn {
    /// Learn from a teacher backed by a fully saturated target.
    Active {
        #[arg(long)]
        target: String,
        #[arg(short, long, default_value = "-")]
        out: String,
        /// Report query counts on stderr.
        #[arg(long)]
        log: bool,
    },
    /// Learn from a labelled sample.
    Passive {
        #[arg(long)]
        sample: String,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Saturation,
    FullSaturation,
    AlmostSaturation,
    FdwaSaturation,
    Regularity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Translation {
    FdwaToNba,
    ToDollar,
    FromDollar,
    Complement,
    DuoToFdwa,
    FdwaToDuo,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleCheck {
    Saturation,
    FullSaturation,
    AlmostSaturation,
    FdwaSaturation,
    Replay,
}

enum Failure {
    Usage(String),
    Cap(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(n) => Failure::Cap(n),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<bool, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<Document, Failure> {
    let text = read_input(path)?;
    parse_document(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn load_family(path: &str) -> Result<AnyFamily, Failure> {
    match load(path)? {
        Document::Family(f) => Ok(f),
        d => Err(Failure::Usage(format!("{path}: expected a family, found kind `{}`", d.kind_name()))),
    }
}

fn wrong_kind<T>(what: &str, f: &AnyFamily) -> Result<T, Failure> {
    Err(Failure::Usage(format!("{what} needs {}, got kind `{}`", article(what), f.kind().name())))
}

fn article(what: &str) -> &'static str {
    match what {
        "fdwa-saturation" | "fdwa-to-nba" | "complement" | "fdwa-to-duo" => "an fdwa",
        "duo-to-fdwa" => "an fdfa-duo",
        _ => "an fdfa or fdwa",
    }
}

/// FDFA view of families read under normalized semantics.
fn as_fdfa(what: &str, f: &AnyFamily) -> Result<Fdfa, Failure> {
    match f {
        AnyFamily::Fdfa(f) => Ok(f.clone()),
        AnyFamily::Fdwa(w) => Ok(w.as_fdfa()),
        _ => wrong_kind(what, f),
    }
}

fn emit(doc: &Document, out: &str, dot: bool) -> Result<(), Failure> {
    let text = if dot { to_dot(doc) } else { serialize_document(doc)? };
    write_output(out, &text)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn stage_name(s: Option<Stage>) -> Value {
    match s {
        Some(Stage::Loopshift) => json!("loopshift"),
        Some(Stage::Power) => json!("power"),
        Some(Stage::FdwaWitness) => json!("fdwa"),
        None => Value::Null,
    }
}

fn report_counterexample(property: &str, held: &str, refuted: &str, c: Option<(&Counterexample, Value)>, al: &Alphabet, json: bool) -> bool {
    match c {
        None => {
            if json {
                print_json(&json!({"property": property, "verdict": held}));
            } else {
                println!("{}", held.to_uppercase().replace('-', " "));
            }
            true
        }
        Some((c, stage)) => {
            if json {
                print_json(&json!({
                    "property": property,
                    "verdict": refuted,
                    "stage": stage,
                    "counterexample": c.to_json(al),
                }));
            } else {
                println!("{}", refuted.to_uppercase().replace('-', " "));
                if let Some(s) = stage.as_str() {
                    println!("stage: {s}");
                }
                println!("witness: {}", c.display(al));
            }
            false
        }
    }
}

fn report_saturation(property: &str, v: &SaturationVerdict, al: &Alphabet, json: bool) -> bool {
    let held = if property == "full-saturation" { "fully-saturated" } else { "saturated" };
    let refuted = if property == "full-saturation" { "not-fully-saturated" } else { "not-saturated" };
    report_counterexample(property, held, refuted, v.witness.as_ref().map(|c| (c, stage_name(v.stage))), al, json)
}

fn case_json(case: &GoodCase, al: &Alphabet) -> Value {
    let w = |x: &[usize]| al.format(x);
    match case {
        GoodCase::InfinitelyManyFirstVisitors { prefix, cycle, suffix } => json!({
            "case": "infinitely-many-first-visitors", "prefix": w(prefix), "cycle": w(cycle), "suffix": w(suffix)
        }),
        GoodCase::TwoFirstVisitors { x, y, u } => json!({"case": "two-first-visitors", "x": w(x), "y": w(y), "u": w(u)}),
        GoodCase::TwoRecurring { x, u, v } => json!({"case": "two-recurring", "x": w(x), "u": w(u), "v": w(v)}),
        GoodCase::DistinctRoots { x, u } => json!({"case": "distinct-roots", "x": w(x), "u": w(u)}),
    }
}

fn check(property: Property, file: &str, cap: Option<usize>, json: bool) -> Run {
    let f = load_family(file)?;
    let al = f.alphabet().clone();
    match property {
        Property::Saturation | Property::FullSaturation => {
            let (name, mode) = match property {
                Property::Saturation => ("saturation", SaturationMode::Saturated),
                _ => ("full-saturation", SaturationMode::FullySaturated),
            };
            let fd = as_fdfa(name, &f)?;
            Ok(report_saturation(name, &check_saturated(&fd, mode), &al, json))
        }
        Property::FdwaSaturation => {
            let AnyFamily::Fdwa(w) = &f else { return wrong_kind("fdwa-saturation", &f) };
            Ok(report_saturation("fdwa-saturation", &check_fdwa_saturated(w), &al, json))
        }
        Property::AlmostSaturation => {
            let fd = as_fdfa("almost-saturation", &f)?;
            let v = check_almost_saturated(&fd, cap.unwrap_or(DEFAULT_CAP))?;
            match v.status {
                AlmostStatus::CapExceeded => Err(Failure::Cap(cap.unwrap_or(DEFAULT_CAP))),
                _ => Ok(report_almost(v.witness.as_ref(), &al, json)),
            }
        }
        Property::Regularity => {
            let cap = cap.unwrap_or(DEFAULT_PROFILE_CAP);
            let v = check_regular(&f, cap)?;
            match v.status {
                RegularityStatus::Regular => {
                    if json {
                        print_json(&json!({"property": "regularity", "verdict": "regular"}));
                    } else {
                        println!("REGULAR");
                    }
                    Ok(true)
                }
                RegularityStatus::CapExceeded => Err(Failure::Cap(cap)),
                RegularityStatus::NotRegular => {
                    let w = v.evidence.expect("evidence");
                    let (lal, _) = v.labeled.expect("labeled automaton");
                    let mut ev = case_json(&w.case, &lal);
                    ev["access"] = json!(lal.format(&w.access));
                    if json {
                        print_json(&json!({"property": "regularity", "verdict": "not-regular", "evidence": ev}));
                    } else {
                        println!("NOT REGULAR");
                        println!("profile of: {}", display_word(&lal, &w.access));
                        println!("evidence: {}", ev);
                    }
                    Ok(false)
                }
            }
        }
    }
}

fn display_word(al: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        al.format(w)
    }
}

fn report_almost(w: Option<&AlmostWitness>, al: &Alphabet, json: bool) -> bool {
    let Some(w) = w else {
        return report_counterexample("almost-saturation", "almost-saturated", "not-almost-saturated", None, al, json);
    };
    let c = w.as_counterexample();
    if json {
        print_json(&json!({
            "property": "almost-saturation",
            "verdict": "not-almost-saturated",
            "power": w.power,
            "counterexample": c.to_json(al),
        }));
    } else {
        println!("NOT ALMOST SATURATED");
        println!("power: {}", w.power);
        println!("witness: {}", c.display(al));
    }
    false
}

fn translate(op: Translation, file: &str, out: &str, dot: bool) -> Run {
    let doc = load(file)?;
    let name = match op {
        Translation::FdwaToNba => "fdwa-to-nba",
        Translation::ToDollar => "to-dollar",
        Translation::FromDollar => "from-dollar",
        Translation::Complement => "complement",
        Translation::DuoToFdwa => "duo-to-fdwa",
        Translation::FdwaToDuo => "fdwa-to-duo",
    };
    let result = match (op, &doc) {
        (Translation::FromDollar, Document::Dfa(d)) => Document::Family(AnyFamily::Fdfa(dollar_dfa_to_fdfa(d)?)),
        (Translation::FromDollar, d) => {
            return Err(Failure::Usage(format!("from-dollar needs a dfa, got kind `{}`", d.kind_name())))
        }
        (_, Document::Family(f)) => match (op, f) {
            (Translation::FdwaToNba, AnyFamily::Fdwa(w)) => Document::Nba(fdwa_to_nba(w)),
            (Translation::Complement, AnyFamily::Fdwa(w)) => {
                Document::Family(AnyFamily::Fdwa(complement_saturated_fdwa(w)?))
            }
            (Translation::FdwaToDuo, AnyFamily::Fdwa(w)) => Document::Family(AnyFamily::Duo(fdwa_to_duo(w)?)),
            (Translation::DuoToFdwa, AnyFamily::Duo(d)) => Document::Family(AnyFamily::Fdwa(duo_to_fdwa(d)?)),
            (Translation::ToDollar, _) => Document::Dfa(fdfa_to_dollar_dfa(&as_fdfa(name, f)?)?),
            _ => return wrong_kind(name, f),
        },
        (_, d) => return Err(Failure::Usage(format!("{name} needs a family, got kind `{}`", d.kind_name()))),
    };
    emit(&result, out, dot)?;
    Ok(true)
}

fn learn(mode: Learn) -> Run {
    match mode {
        Learn::Active { target, out, log } => {
            let f = as_fdfa("learn active", &load_family(&target)?)?;
            let mut teacher = make_teacher(&f)?;
            let (h, l) = learn_active(&mut teacher)?;
            if log {
                eprintln!(
                    "membership queries: {}\nequivalence queries: {}\nrounds: {}\nsaturation checks: {}\nlongest counterexample: {}",
                    l.membership_queries, l.equivalence_queries, l.rounds, l.saturation_checks, l.max_counterexample
                );
            }
            emit(&Document::Family(AnyFamily::Fdfa(h)), &out, false)?;
        }
        Learn::Passive { sample, out } => {
            let text = read_input(&sample)?;
            let s = parse_sample(&text).map_err(|e| Failure::Usage(format!("{sample}: {e}")))?;
            let h = learn_passive(&s)?;
            emit(&Document::Family(AnyFamily::Fdfa(h)), &out, false)?;
        }
    }
    Ok(true)
}

/// Accept a bare counterexample or any report carrying one under `counterexample`.
fn counterexample_from(v: &Value, al: &Alphabet) -> Result<Counterexample, Failure> {
    let inner = v.get("counterexample").unwrap_or(v);
    Ok(Counterexample::from_json(inner, al)?)
}

#[allow(clippy::too_many_arguments)]
fn oracle(check: OracleCheck, file: &str, cex: Option<&str>, max_u: usize, max_x: usize, max_power: usize, full: bool, json: bool) -> Run {
    let f = load_family(file)?;
    let al = f.alphabet().clone();
    match check {
        OracleCheck::Replay => {
            let path = cex.ok_or_else(|| Failure::Usage("replay needs a counterexample file".into()))?;
            let v: Value = serde_json::from_str(&read_input(path)?)
                .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let c = counterexample_from(&v, &al)?;
            let rs = if full { ReferenceSet::All } else { ReferenceSet::Normalized };
            let ok = match &f {
                AnyFamily::Fdfa(f) => c.replays(f, rs),
                AnyFamily::Fdwa(f) => c.replays(f, rs),
                AnyFamily::Fnfa(f) => c.replays(f, rs),
                AnyFamily::Duo(_) => return wrong_kind("replay", &f),
            };
            if json {
                print_json(&json!({"replays": ok, "counterexample": c.to_json(&al)}));
            } else {
                println!("{}", if ok { "REPLAYS" } else { "DOES NOT REPLAY" });
                println!("witness: {}", c.display(&al));
            }
            Ok(ok)
        }
        OracleCheck::AlmostSaturation => {
            let fd = as_fdfa("almost-saturation", &f)?;
            Ok(report_almost(brute_almost_saturation(&fd, max_x, max_power).as_ref(), &al, json))
        }
        OracleCheck::Saturation | OracleCheck::FullSaturation | OracleCheck::FdwaSaturation => {
            let (name, rs) = match check {
                OracleCheck::FullSaturation => ("full-saturation", ReferenceSet::All),
                OracleCheck::FdwaSaturation => ("fdwa-saturation", ReferenceSet::Normalized),
                _ => ("saturation", ReferenceSet::Normalized),
            };
            let c = match (&f, check) {
                (AnyFamily::Fdwa(w), OracleCheck::FdwaSaturation) => brute_saturation(w, rs, max_u, max_x),
                (_, OracleCheck::FdwaSaturation) => return wrong_kind(name, &f),
                (AnyFamily::Fnfa(n), _) => brute_saturation(n, rs, max_u, max_x),
                _ => brute_saturation(&as_fdfa(name, &f)?, rs, max_u, max_x),
            };
            let held = if rs == ReferenceSet::All { "fully-saturated" } else { "saturated" };
            let refuted = if rs == ReferenceSet::All { "not-fully-saturated" } else { "not-saturated" };
            Ok(report_counterexample(name, held, refuted, c.as_ref().map(|c| (c, Value::Null)), &al, json))
        }
    }
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::Check { property, file, cap, json } => check(property, &file, cap, json),
        Cmd::Translate { op, file, out, dot } => translate(op, &file, &out, dot),
        Cmd::Learn { mode } => learn(mode),
        Cmd::Gen { name, n, out, dot } => {
            let f = gen_family(&name, n)?;
            emit(&Document::Family(f), &out, dot)?;
            Ok(true)
        }
        Cmd::Oracle { check, file, counterexample, max_u, max_x, max_power, full, json } => {
            oracle(check, &file, counterexample.as_deref(), max_u, max_x, max_power, full, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(n)) => {
            eprintln!("cap of {n} exceeded");
            ExitCode::from(3)
        }
    }
}
