use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use keyboard_core::bk::{build_nfa_bek, build_nfa_bk};
use keyboard_core::blek::build_pda_blek;
use keyboard_core::corpus::{entry, run_corpus};
use keyboard_core::decide::{self, Decision, Verdict, Witness};
use keyboard_core::normalform::normalize_keyboard;
use keyboard_core::oracle::{default_cap, enumerate};
use keyboard_core::props::{run_all, PropsConfig};
use keyboard_core::transforms::{
    apply_morphism, intersection_nonempty_bounded, mirror_ak, mirror_mk, parse_morphism, pcp_to_lk, PcpInstance,
};
use keyboard_core::{classify, dsl, ClassName, Keyboard};

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "kbd", version, about = "Keyboard languages: enumerate, decide, compile")]
struct Cli {
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Longest word considered.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Largest intermediate configuration size.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the recognised words up to --max-len, shortest first.
    Enumerate { file: PathBuf },
    /// Decide whether WORD is recognised.
    Member {
        file: PathBuf,
        word: String,
        /// Print the witness.
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether every word is recognised.
    Universal { file: PathBuf },
    /// Build the finite automaton of a keyboard without arrows.
    CompileNfa {
        file: PathBuf,
        /// Output file; `.dot` selects Graphviz, anything else JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the pushdown automaton of a keyboard without `►`.
    CompilePda {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite every key as backspaces followed by letters.
    Normalize { file: PathBuf },
    /// Print the class of a keyboard.
    Classify { file: PathBuf },
    /// Keyboard recognising the mirror language.
    Mirror { file: PathBuf },
    /// Keyboard recognising the image under a letter-to-letter morphism.
    Morphism {
        file: PathBuf,
        /// Comma-separated `a=b` pairs.
        #[arg(long)]
        map: String,
    },
    /// Reduce a correspondence instance to two keyboards and search their intersection.
    PcpReduce {
        pairs: PathBuf,
        #[arg(long, default_value_t = 20)]
        search_len: usize,
    },
    /// Run the randomised property suite.
    Props {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Check the example keyboards against their described languages.
    Corpus {
        /// Only this entry.
        name: Option<String>,
    },
}

type Outcome = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Keyboard, String> {
    dsl::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn verdict_code(d: &Decision) -> u8 {
    match d.verdict {
        Verdict::Yes => YES,
        Verdict::No => NO,
        Verdict::Unknown(_) => UNKNOWN,
    }
}

fn print_decision(d: &Decision, with_witness: bool, as_json: bool) {
    if as_json {
        print_json(&d.to_json());
        return;
    }
    match &d.verdict {
        Verdict::Yes => println!("yes ({})", d.procedure),
        Verdict::No => println!("no ({})", d.procedure),
        Verdict::Unknown(reason) => println!("unknown ({}): {reason}", d.procedure),
    }
    if !with_witness {
        return;
    }
    match &d.witness {
        Some(Witness::Execution(keys)) => {
            let keys: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
            println!("execution: {}", keys.join(" "));
        }
        Some(Witness::NfaPath { names, .. }) => println!("path: {}", names.join(" ")),
        Some(Witness::Counterexample(w)) => println!("counterexample: {w:?}"),
        None => {}
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enumerate { file } => {
            let k = load(&file)?;
            let max_len = cli.max_len.unwrap_or(8);
            let cap = cli.cap.unwrap_or_else(|| default_cap(&k, max_len));
            let sample = enumerate(&k, max_len, cap);
            if cli.json {
                print_json(&json!({
                    "max_len": max_len,
                    "cap": cap,
                    "complete": sample.complete,
                    "words": sample.sorted_words(),
                }));
            } else {
                for w in sample.sorted_words() {
                    println!("{w}");
                }
                println!("# complete: {}", sample.complete);
            }
            Ok(YES)
        }
        Command::Member { file, word, witness } => {
            let k = load(&file)?;
            let d = decide::member(&k, &word).map_err(|e| e.to_string())?;
            print_decision(&d, witness, cli.json);
            Ok(verdict_code(&d))
        }
        Command::Universal { file } => {
            let k = load(&file)?;
            let d = decide::universal(&k).map_err(|e| e.to_string())?;
            print_decision(&d, true, cli.json);
            Ok(verdict_code(&d))
        }
        Command::CompileNfa { file, out } => {
            let k = load(&file)?;
            let nfa = match classify(&k).name {
                ClassName::BK => build_nfa_bk(&k),
                _ => build_nfa_bek(&k),
            }
            .map_err(|e| e.to_string())?;
            let dot = out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "dot"));
            let text = if dot {
                nfa.to_dot()
            } else {
                serde_json::to_string_pretty(&nfa.to_json()).expect("serialisable")
            };
            emit(&text, out.as_deref())?;
            Ok(YES)
        }
        Command::CompilePda { file, out } => {
            let k = load(&file)?;
            let pda = build_pda_blek(&k).map_err(|e| e.to_string())?;
            emit(
                &serde_json::to_string_pretty(&pda.to_json()).expect("serialisable"),
                out.as_deref(),
            )?;
            Ok(YES)
        }
        Command::Normalize { file } => {
            let k = load(&file)?;
            let n = normalize_keyboard(&k).map_err(|e| e.to_string())?;
            print!("{}", dsl::serialize(&n));
            Ok(YES)
        }
        Command::Classify { file } => {
            let k = load(&file)?;
            let label = classify(&k);
            if cli.json {
                print_json(&serde_json::to_value(&label).expect("serialisable"));
            } else {
                println!("{}", label.name);
                if let Some(w) = &label.warning {
                    eprintln!("warning: {w}");
                }
            }
            Ok(YES)
        }
        Command::Mirror { file } => {
            let k = load(&file)?;
            let class = classify(&k).name;
            let m = if class == ClassName::MK {
                mirror_mk(&k)
            } else if !class.has_backspace() {
                mirror_ak(&k)
            } else {
                return Err(format!("class {class} is not mirror-stable"));
            };
            print!("{}", dsl::serialize(&m.map_err(|e| e.to_string())?));
            Ok(YES)
        }
        Command::Morphism { file, map } => {
            let k = load(&file)?;
            let g = parse_morphism(&map).map_err(|e| e.to_string())?;
            let image = apply_morphism(&k, &g).map_err(|e| e.to_string())?;
            print!("{}", dsl::serialize(&image));
            Ok(YES)
        }
        Command::PcpReduce { pairs, search_len } => {
            let inst = PcpInstance::parse(&read(&pairs)?).map_err(|e| e.to_string())?;
            let (k1, k2) = pcp_to_lk(&inst).map_err(|e| e.to_string())?;
            let cap = cli.cap.unwrap_or_else(|| default_cap(&k1, search_len));
            let found = intersection_nonempty_bounded(&k1, &k2, search_len, cap).map_err(|e| e.to_string())?;
            if cli.json {
                print_json(&json!({
                    "first": dsl::serialize(&k1),
                    "second": dsl::serialize(&k2),
                    "search_len": search_len,
                    "cap": cap,
                    "witness": found.as_ref().map(|w| json!({
                        "word": w.word,
                        "execution": w.first.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                    })),
                }));
            } else {
                println!("# first keyboard\n{}", dsl::serialize(&k1));
                println!("# second keyboard\n{}", dsl::serialize(&k2));
                match &found {
                    Some(w) => println!("intersection: {}", w.word),
                    None => println!("no common word up to length {search_len} (cap {cap})"),
                }
            }
            Ok(if found.is_some() { YES } else { UNKNOWN })
        }
        Command::Props { cases } => {
            let cfg = PropsConfig {
                seed: cli.seed,
                cases,
                ..PropsConfig::default()
            };
            let reports = run_all(&cfg);
            if cli.json {
                print_json(&serde_json::to_value(&reports).expect("serialisable"));
            } else {
                for r in &reports {
                    let status = if r.passed() { "ok" } else { "FAILED" };
                    println!(
                        "{status:6} {:32} cases={} vacuous={} violations={}",
                        r.name, r.cases, r.vacuous, r.violations
                    );
                    if let Some(v) = &r.first_violation {
                        println!("       first violation: {v}");
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.passed()) { YES } else { NO })
        }
        Command::Corpus { name } => {
            let reports = match name {
                Some(n) => {
                    let e = entry(&n).ok_or_else(|| format!("no corpus entry named {n}"))?;
                    vec![keyboard_core::corpus::check_entry(&e)]
                }
                None => run_corpus(),
            };
            if cli.json {
                print_json(&serde_json::to_value(&reports).expect("serialisable"));
            } else {
                for r in &reports {
                    let status = if r.passed() { "ok" } else { "FAILED" };
                    println!(
                        "{status:6} {:20} {:4} max_len={} cap={} words={} ({})",
                        r.name, r.class, r.max_len, r.cap, r.words, r.procedure
                    );
                    if !r.missing.is_empty() {
                        println!("       missing: {:?}", r.missing);
                    }
                    if !r.unexpected.is_empty() {
                        println!("       unexpected: {:?}", r.unexpected);
                    }
                    if !r.procedure_mismatches.is_empty() {
                        println!("       procedure disagrees on: {:?}", r.procedure_mismatches);
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.passed()) { YES } else { NO })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
