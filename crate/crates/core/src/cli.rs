//! Command-line front end.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input
//! error, 3 budget refusal, 4 discrepancy found.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::gf2::subsets_lex;
use crate::model::{parse_matrix_file, validate, write_matrix_file, DimensionVector, ReducedMatrix};
use crate::oracle::{normal_form, relation_generators, Oracle};
use crate::swclosed::{self, Reading, Violation};
use crate::verify::{self, Check, RunConfig, DEFAULT_BUDGET, DEFAULT_SEED};
use crate::wdigraph::{self, WeightedDigraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISCREPANCY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gbott", version, about = "Spin structures and Stiefel-Whitney classes of small covers over products of simplices")]
pub struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a matrix file and decide Spin.
    Check {
        file: PathBuf,
    },
    /// Print a Stiefel-Whitney class.
    Sw {
        file: PathBuf,
        #[arg(long, short = 'm')]
        degree: usize,
        #[arg(long, conflicts_with_all = ["closed", "both"])]
        oracle: bool,
        #[arg(long, conflicts_with = "both")]
        closed: bool,
        #[arg(long)]
        both: bool,
    },
    /// Convert between the matrix and digraph formats.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all valid matrices of a family into a census.
    Enumerate(RunArgs),
    /// Cross-check closed forms against the oracle over a family.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "spin")]
        check: CheckKind,
    },
    /// Compare the conjectured congruences with the oracle over a family.
    Conjecture {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "shifted")]
        reading: ReadingArg,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Dimension vector, e.g. 1,2,2.
    #[arg(long)]
    pub omega: String,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Check this many random valid matrices instead of all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Write the JSON-lines census here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Matrix,
    Digraph,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Spin,
    W3,
    W4,
    Elementary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReadingArg {
    AsWritten,
    Shifted,
}

impl From<ReadingArg> for Reading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::AsWritten => Reading::AsWritten,
            ReadingArg::Shifted => Reading::Shifted,
        }
    }
}

/// Text or JSON output plus exit code.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = dispatch(&cli.command);
    match result {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", o.json)
            } else {
                write!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "exit": code }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}

fn dispatch(cmd: &Command) -> crate::Result<Outcome> {
    match cmd {
        Command::Check { file } => run_check(file),
        Command::Sw {
            file,
            degree,
            closed,
            both,
            ..
        } => run_sw(file, *degree, *closed, *both),
        Command::Convert { input, to, out } => run_convert(input, *to, out.as_deref()),
        Command::Enumerate(args) => run_family(args, Check::Spin, true),
        Command::Verify { run, check } => {
            let check = match check {
                CheckKind::Spin => Check::Spin,
                CheckKind::W3 => Check::W(3),
                CheckKind::W4 => Check::W(4),
                CheckKind::Elementary => Check::Elementary,
            };
            run_family(run, check, false)
        }
        Command::Conjecture { run, t, reading } => run_family(
            run,
            Check::Conjecture {
                t: *t,
                reading: (*reading).into(),
            },
            false,
        ),
    }
}

fn read(path: &Path) -> crate::Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set_label(s: &[usize]) -> String {
    s.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "condition": v.condition.to_string(),
        "indices": v.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
    })
}

pub fn run_check_text(a: &ReducedMatrix) -> crate::Result<(i32, String, Value)> {
    let mut text = format!("omega: {}\n", a.omega());
    let report = validate(a);
    if !report.valid {
        text.push_str(&format!("valid: no ({report})\n"));
        let j = json!({
            "omega": a.omega().dims(),
            "valid": false,
            "failing_selection": report.failing_selection.as_ref().map(|v| v.iter().map(|i| i + 1).collect::<Vec<_>>()),
            "failing_subset": report.failing_subset.as_ref().map(|v| v.iter().map(|i| i + 1).collect::<Vec<_>>()),
        });
        return Ok((EXIT_INPUT, text, j));
    }
    let spin = swclosed::has_spin(a)?;
    text.push_str("valid: yes\n");
    text.push_str(&format!("orientable: {}\n", yes_no(spin.orientable)));
    match &spin.failed {
        None => text.push_str("spin: yes\n"),
        Some(v) => text.push_str(&format!("spin: no ({v})\n")),
    }
    text.push_str("k_S:\n");
    let counts = swclosed::Counts::new(a);
    let mut kmap = serde_json::Map::new();
    let mut sets: Vec<Vec<usize>> = subsets_lex(a.k()).into_iter().filter(|s| s.len() <= 3).collect();
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    for s in sets {
        let label = set_label(&s);
        let v = counts.k_of(&s);
        text.push_str(&format!("  {{{label}}}: {v}\n"));
        kmap.insert(label, json!(v));
    }
    let j = json!({
        "omega": a.omega().dims(),
        "valid": true,
        "orientable": spin.orientable,
        "spin": spin.spin,
        "failed": spin.failed.as_ref().map(violation_json),
        "violations": spin.violations.iter().map(violation_json).collect::<Vec<_>>(),
        "k": kmap,
    });
    let code = if spin.spin { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, text, j))
}

fn run_check(file: &Path) -> crate::Result<Outcome> {
    let a = parse_matrix_file(&read(file)?)?;
    let (code, text, json) = run_check_text(&a)?;
    Ok(Outcome { code, text, json })
}

fn run_sw(file: &Path, m: usize, closed: bool, both: bool) -> crate::Result<Outcome> {
    let a = parse_matrix_file(&read(file)?)?;
    crate::model::require_valid(&a)?;
    let want_oracle = !closed || both;
    let want_closed = closed || both;
    if want_closed && !(1..=4).contains(&m) {
        return Err(Error::Argument(format!(
            "closed forms exist for degrees 1..=4, got {m}"
        )));
    }
    if want_oracle && (m == 0 || m > a.n()) {
        return Err(Error::Argument(format!(
            "degree {m} outside 1..={} (the manifold dimension)",
            a.n()
        )));
    }
    let mut text = String::new();
    let mut j = json!({ "omega": a.omega().dims(), "degree": m });
    let oracle_poly = if want_oracle {
        let p = Oracle::new(a.k(), m).evaluate(&a)?.reduced(m);
        text.push_str(&format!("w{m} (oracle): {p}\n"));
        j["oracle"] = json!(p.to_string());
        Some(p)
    } else {
        None
    };
    let closed_poly = if want_closed {
        let table = match m {
            1 => swclosed::w1_coefficients(&a)?,
            2 => swclosed::w2_coefficients(&a)?,
            3 => swclosed::w3_coefficients(&a)?,
            _ => swclosed::w4_coefficients(&a)?,
        };
        let p = table.to_polynomial(a.k());
        text.push_str(&format!("w{m} (closed, before reduction): {p}\n"));
        j["closed"] = json!(p.to_string());
        Some(p)
    } else {
        None
    };
    let mut code = EXIT_OK;
    if let (Some(o), Some(c)) = (oracle_poly, closed_poly) {
        let pre = a.omega().dims().iter().all(|&n| n >= m);
        let (level, agree) = if pre {
            let expanded = Oracle::new(a.k(), m).evaluate(&a)?.expanded(m);
            ("pre-reduction", expanded == c && c == o)
        } else {
            let r = relation_generators(&a)?;
            ("post-reduction", normal_form(&c, &r) == o)
        };
        text.push_str(&format!(
            "agreement ({level}): {}\n",
            if agree { "agree" } else { "DISAGREE" }
        ));
        j["level"] = json!(level);
        j["agree"] = json!(agree);
        if !agree {
            code = EXIT_DISCREPANCY;
        }
    }
    Ok(Outcome {
        code,
        text,
        json: j,
    })
}

fn run_convert(input: &Path, to: Format, out: Option<&Path>) -> crate::Result<Outcome> {
    let text = read(input)?;
    let converted = match to {
        Format::Digraph => {
            let a = parse_matrix_file(&text)?;
            let mut s = wdigraph::from_matrix(&a)?.to_json();
            s.push('\n');
            s
        }
        Format::Matrix => {
            let g = WeightedDigraph::from_json(&text)?;
            write_matrix_file(&wdigraph::to_matrix(&g))
        }
    };
    let j = match out {
        Some(p) => {
            fs::write(p, &converted)?;
            json!({ "written": p.display().to_string() })
        }
        None => json!({ "output": converted }),
    };
    let shown = if out.is_some() { String::new() } else { converted };
    Ok(Outcome {
        code: EXIT_OK,
        text: shown,
        json: j,
    })
}

fn run_family(args: &RunArgs, check: Check, enumerate: bool) -> crate::Result<Outcome> {
    let omega = DimensionVector::parse_list(&args.omega)?;
    let cfg = RunConfig {
        threads: args.threads,
        budget: args.budget,
        seed: args.seed,
        sample: args.sample,
    };
    let report = match &args.out {
        Some(p) => {
            let file = fs::File::create(p)?;
            let mut w = std::io::BufWriter::new(file);
            let r = verify::run(&omega, check, &cfg, Some(&mut w))?;
            w.flush()?;
            r
        }
        None => verify::run(&omega, check, &cfg, None)?,
    };
    let mut text = String::new();
    if !enumerate && !report.is_clean() {
        text.push_str(&report.to_string());
    }
    text.push_str(&report.summary());
    text.push('\n');
    let code = if enumerate || report.is_clean() {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    };
    let json = serde_json::to_value(&report)?;
    Ok(Outcome { code, text, json })
}
