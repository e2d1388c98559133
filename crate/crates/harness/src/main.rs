use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use suffix_convex::automata::{complexity, minimize};
use suffix_convex::classify::classify;
use suffix_convex::measures::{
    atom_complexity_with_limit, atoms_with_limit, quotient_complexities,
    syntactic_semigroup_size, DEFAULT_ATOM_LIMIT, DEFAULT_SEMIGROUP_CAP,
};
use suffix_convex::ops::{
    boolean_restricted, boolean_unrestricted, complement, concat, reverse, star, BoolOp,
    LetterMap,
};
use suffix_convex::witnesses::{make_dialect, make_witness, Family};
use suffix_convex::Dfa;
use suffix_convex_harness::document::{read_dfa, write_dfa};
use suffix_convex_harness::dot::export_dot;
use suffix_convex_harness::verify::{parse_range, quantity_tags, verify, Caps, Selection};
use suffix_convex_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(name = "sconvex", version, about = "Witness DFAs and complexity checks for suffix-convex languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the witness DFA of a family.
    Witness {
        family: Family,
        n: usize,
        /// Letter map such as `a,-,-,d,e`.
        #[arg(long)]
        dialect: Option<LetterMap>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply an operation and print the minimal result.
    Op {
        op: OpName,
        file: PathBuf,
        file2: Option<PathBuf>,
        /// Binary operations over the union of the alphabets.
        #[arg(long)]
        unrestricted: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print one measure of a DFA.
    Measure {
        measure: MeasureName,
        file: PathBuf,
        /// Semigroup enumeration cap.
        #[arg(long, default_value_t = DEFAULT_SEMIGROUP_CAP)]
        cap: usize,
    },
    /// Report class membership with counterexamples.
    Classify { file: PathBuf },
    /// Render a DFA in Graphviz DOT.
    Dot { file: PathBuf },
    /// Compare measured complexities of the witness streams with their closed forms.
    Verify {
        #[arg(long)]
        family: Vec<Family>,
        /// Quantity tag, or a bare boolean/product name for both modes.
        #[arg(long)]
        quantity: Vec<String>,
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = parse_range)]
        m: Option<RangeInclusive<usize>>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, default_value_t = 7)]
        semigroup_n: usize,
        #[arg(long, default_value_t = 8)]
        reverse_n: usize,
        #[arg(long, default_value_t = 6)]
        binary_n: usize,
        #[arg(long, default_value_t = DEFAULT_SEMIGROUP_CAP)]
        semigroup_cap: usize,
        #[arg(long, default_value_t = DEFAULT_ATOM_LIMIT)]
        atom_limit: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Union,
    Symdiff,
    Difference,
    Intersection,
    Concat,
    Star,
    Reverse,
    Complement,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureName {
    Complexity,
    Semigroup,
    Quotients,
    Atoms,
    AtomComplexities,
    ReverseComplexity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Structured,
}

fn load(path: &Path) -> Result<Dfa> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_dfa(&text).map_err(|e| HarnessError::Document {
        location: format!("{}: {}", path.display(), location(&e)),
        message: message(&e),
    })
}

fn location(e: &HarnessError) -> String {
    match e {
        HarnessError::Document { location, .. } => location.clone(),
        _ => "document".into(),
    }
}

fn message(e: &HarnessError) -> String {
    match e {
        HarnessError::Document { message, .. } => message.clone(),
        other => other.to_string(),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            out(&format!("{text}\n"));
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or("dfa".into(), |s| s.to_string_lossy().into_owned())
}

fn pretty(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("json values serialize")
}

/// Runs a subcommand; `Ok(false)` means verification found failures.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Witness { family, n, dialect, output } => {
            let d = match &dialect {
                Some(pi) => make_dialect(family, n, pi)?,
                None => make_witness(family, n)?,
            };
            emit(&write_dfa(&d, &format!("{family}-{n}")), output.as_deref())?;
        }
        Command::Op { op, file, file2, unrestricted, output } => {
            let d1 = load(&file)?;
            let second = || -> Result<Dfa> {
                let path = file2.as_deref().ok_or_else(|| HarnessError::Document {
                    location: "arguments".into(),
                    message: "this operation needs a second file".into(),
                })?;
                load(path)
            };
            let boolean = |op: BoolOp| -> Result<Dfa> {
                let d2 = second()?;
                Ok(if unrestricted {
                    boolean_unrestricted(&d1, &d2, op)
                } else {
                    boolean_restricted(&d1, &d2, op)?
                })
            };
            let result = match op {
                OpName::Union => boolean(BoolOp::Union)?,
                OpName::Symdiff => boolean(BoolOp::SymmetricDifference)?,
                OpName::Difference => boolean(BoolOp::Difference)?,
                OpName::Intersection => boolean(BoolOp::Intersection)?,
                OpName::Concat => concat(&d1, &second()?),
                OpName::Star => star(&d1),
                OpName::Reverse => reverse(&d1),
                OpName::Complement => complement(&d1),
            };
            let name = format!("{}-{}", stem(&file), op.to_possible_value().unwrap().get_name());
            emit(&write_dfa(&minimize(&result), &name), output.as_deref())?;
        }
        Command::Measure { measure, file, cap } => {
            let d = load(&file)?;
            let value = match measure {
                MeasureName::Complexity => json!(complexity(&d)),
                MeasureName::Semigroup => {
                    let s = syntactic_semigroup_size(&d, cap);
                    json!({ "size": s.size, "truncated": s.truncated })
                }
                MeasureName::Quotients => {
                    let q = quotient_complexities(&d);
                    json!({ "quotients": q, "sum": q.iter().sum::<usize>() })
                }
                MeasureName::Atoms => {
                    let keys = atoms_with_limit(&d, DEFAULT_ATOM_LIMIT)?;
                    json!(keys.iter().map(ToString::to_string).collect::<Vec<_>>())
                }
                MeasureName::AtomComplexities => {
                    let mut map = serde_json::Map::new();
                    for key in atoms_with_limit(&d, DEFAULT_ATOM_LIMIT)? {
                        let c = atom_complexity_with_limit(&d, &key, DEFAULT_ATOM_LIMIT)?;
                        map.insert(key.to_string(), json!(c));
                    }
                    serde_json::Value::Object(map)
                }
                MeasureName::ReverseComplexity => json!(complexity(&reverse(&d))),
            };
            out(&format!("{}\n", pretty(value)));
        }
        Command::Classify { file } => {
            let report = classify(&load(&file)?);
            out(&format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize")));
        }
        Command::Dot { file } => out(&export_dot(&load(&file)?, &stem(&file))),
        Command::Verify {
            family,
            quantity,
            n,
            m,
            report,
            format,
            semigroup_n,
            reverse_n,
            binary_n,
            semigroup_cap,
            atom_limit,
            threads,
        } => {
            let mut sel = Selection { n, m, ..Selection::default() };
            if !family.is_empty() {
                sel.families = family;
            }
            if !quantity.is_empty() {
                sel.quantities.clear();
                for q in &quantity {
                    sel.quantities.extend(quantity_tags(q)?);
                }
            }
            let caps = Caps { semigroup_n, reverse_n, binary_n, semigroup_cap, atom_limit };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool starts");
            let result = pool.install(|| verify(&sel, &caps));
            let text = match format {
                Format::Table => result.to_table(),
                Format::Structured => result.to_json(),
            };
            match report {
                Some(path) => {
                    emit(&text, Some(&path))?;
                    let s = &result.summary;
                    out(&format!(
                        "{} entries: {} pass, {} fail, {} skipped, {} truncated\n",
                        s.total, s.pass, s.fail, s.skipped, s.truncated
                    ));
                }
                None => out(&text),
            }
            return Ok(!result.has_failures());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
