//! The `bourbaki` command line. [`run`] returns the exit status and the text
//! written to stdout and stderr, so the binary is a thin wrapper.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::assembly::Assembly;
use crate::count::{count_materialized, count_symbolic, growth_table, CountVector, GrowthRow, DEFAULT_BUDGET};
use crate::dot::{to_dot, DEFAULT_MAX_NODES};
use crate::expand::expand;
use crate::expr::{numeral_expr, parse_expression, Expression};
use crate::fixpoint::{cantor_bernstein, fixed_point_lattice, koenig_uncovered, tarski_extrema, FixpointError};
use crate::formats::{parse_injection_pair, parse_koenig, parse_monotone_map};
use crate::formative::{formative_construction, verify_formative};
use crate::hf::{eval_program, HfSet, HfValue};
use crate::linear::{linearize, linearize_bounded, LinearAssembly};

#[derive(Parser, Debug)]
#[command(name = "bourbaki", version, about = "Bourbaki assemblies and finite set witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Inline text.
    #[arg(conflicts_with = "file")]
    text: Option<String>,
    /// Read the input from a file.
    #[arg(short, long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InstanceFile {
    path: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the linear form of an expression.
    Expand {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        /// Largest number of signs to print.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count signs and links of an expression.
    Count {
        #[command(flatten)]
        input: Input,
        /// Count the numeral `n` instead of an expression.
        #[arg(long, value_name = "N")]
        numeral: Option<u64>,
        #[arg(long)]
        symbolic: bool,
        /// Walk the expanded assembly (bounded by `--budget`).
        #[arg(long)]
        materialize: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Classify an expression or a linear form.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Verify a formative construction given as blank-line separated linear forms.
    Formative {
        #[command(flatten)]
        input: Input,
        /// Print the canonical construction of the given expression instead.
        #[arg(long)]
        construct: bool,
    },
    /// Sign and link counts of a numeral.
    Numeral {
        n: u64,
        /// All rows from 0 to `n`.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a set program.
    Hf {
        #[command(flatten)]
        input: Input,
        /// Print numerals in decimal.
        #[arg(long)]
        compact: bool,
    },
    /// Extremal fixed points of a monotone map.
    Tarski(InstanceFile),
    /// Bijection from a pair of injections.
    Cb(InstanceFile),
    /// Tuple outside a finite union of small subsets of a product.
    Koenig(InstanceFile),
    /// Graphviz tree of an expanded expression.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(message: impl std::fmt::Display) -> Self {
        let line = message.to_string().replace('\n', " ");
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {line}\n"),
        }
    }
}

/// Run with `args[0]` as the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::fail(e),
    }
}

fn usage(message: &str) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

type Res = Result<Outcome, String>;

impl Input {
    fn read(&self) -> Result<Option<String>, String> {
        match (&self.text, &self.file) {
            (Some(t), _) => Ok(Some(t.clone())),
            (None, Some(p)) => fs::read_to_string(p)
                .map(Some)
                .map_err(|e| format!("cannot read {}: {e}", p.display())),
            (None, None) => Ok(None),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse(text: &str) -> Result<Expression, String> {
    parse_expression(text).map_err(|e| e.to_string())
}

fn expand_text(text: &str) -> Result<Assembly, String> {
    expand(&parse(text)?).map_err(|e| e.to_string())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn set_json(s: &HfSet) -> Value {
    Value::String(s.compact().to_string())
}

macro_rules! need_input {
    ($input:expr) => {
        match $input.read()? {
            Some(t) => t,
            None => return Ok(usage("give the input inline or with --file")),
        }
    };
}

fn execute(command: Command) -> Res {
    match command {
        Command::Expand { input, json, budget } => {
            let a = expand_text(&need_input!(input))?;
            let lin = linearize_bounded(&a, budget as usize)
                .ok_or_else(|| format!("expansion has more than {budget} signs"))?;
            Ok(Outcome::ok(if json {
                pretty(&serde_json::to_value(lin.to_json()).expect("serializable"))
            } else {
                lin.to_string()
            }))
        }
        Command::Count {
            input,
            numeral,
            symbolic,
            materialize,
            json,
            budget,
        } => {
            let expr = match (numeral, input.read()?) {
                (Some(_), Some(_)) => return Ok(usage("give either --numeral or an expression")),
                (Some(n), None) => numeral_expr(n),
                (None, Some(t)) => parse(&t)?,
                (None, None) => return Ok(usage("give an expression or --numeral")),
            };
            let sym = (symbolic || !materialize)
                .then(|| count_symbolic(&expr))
                .transpose()
                .map_err(|e| e.to_string())?;
            let mat = if materialize {
                let a = expand(&expr).map_err(|e| e.to_string())?;
                Some(count_materialized(&a, budget).map_err(|e| e.to_string())?)
            } else {
                None
            };
            if let (Some(s), Some(m)) = (&sym, &mat) {
                if s != m {
                    return Err("symbolic and materialized counts differ".into());
                }
            }
            let c = sym.or(mat).expect("one method ran");
            Ok(Outcome::ok(count_output(&c, numeral, json)))
        }
        Command::Classify { input } => {
            let text = need_input!(input);
            let class = if text.trim_start().starts_with("signs:") {
                let lin: LinearAssembly = text.parse().map_err(|e: crate::linear::LinearError| e.to_string())?;
                lin.classify()
            } else {
                expand_text(&text)?.classify()
            };
            Ok(Outcome::ok(format!("{class}\n")))
        }
        Command::Formative { input, construct } => {
            let text = need_input!(input);
            if construct {
                let seq = formative_construction(&expand_text(&text)?);
                let blocks: Vec<String> = seq.iter().map(|a| linearize(a).to_string()).collect();
                return Ok(Outcome::ok(blocks.join("\n")));
            }
            let seq = blocks(&text)
                .iter()
                .map(|b| b.parse::<LinearAssembly>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let report = verify_formative(&seq);
            if let Some(fail) = &report.failure {
                return Err(format!("invalid at element {}: {}", fail.index, fail.reason));
            }
            Ok(Outcome::ok(report.to_string()))
        }
        Command::Numeral { n, table, json } => {
            let rows = growth_table(n);
            let rows = if table { &rows[..] } else { &rows[n as usize..] };
            let out: String = rows
                .iter()
                .map(|r| if json { r.to_json() } else { r.to_string() } + "\n")
                .collect();
            Ok(Outcome::ok(out))
        }
        Command::Hf { input, compact } => {
            let value = eval_program(&need_input!(input)).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(match value {
                HfValue::Set(s) if compact => format!("{}\n", s.compact()),
                v => format!("{v}\n"),
            }))
        }
        Command::Tarski(f) => tarski_report(&read_file(&f.path)?, f.json).map(Outcome::ok),
        Command::Cb(f) => cb_report(&read_file(&f.path)?, f.json).map(Outcome::ok),
        Command::Koenig(f) => koenig_report(&read_file(&f.path)?, f.json).map(Outcome::ok),
        Command::Dot { input, max_nodes } => {
            let a = expand_text(&need_input!(input))?;
            to_dot(&a, max_nodes).map(Outcome::ok).map_err(|e| e.to_string())
        }
    }
}

fn count_output(c: &CountVector, numeral: Option<u64>, json: bool) -> String {
    match (numeral, json) {
        (Some(n), true) => {
            let row = GrowthRow {
                n,
                signs: c.signs.clone(),
                links: c.links.clone(),
            };
            row.to_json() + "\n"
        }
        (None, true) => serde_json::to_string(&c.to_json()).expect("serializable") + "\n",
        (_, false) => c.to_string(),
    }
}

fn blocks(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur += line;
            cur.push('\n');
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Witness for a Cantor–Bernstein instance file, as text or JSON.
pub fn cb_report(text: &str, as_json: bool) -> Result<String, String> {
    let p = parse_injection_pair(text).map_err(|e| e.to_string())?;
    let w = cantor_bernstein(&p);
    if !w.verify(&p) {
        return Err("constructed map failed verification".into());
    }
    if as_json {
        return Ok(pretty(&w.to_json()));
    }
    let mut s = format!("A: {}\niterations: {}\n", w.a.compact(), w.iterations);
    for (x, y) in &w.bijection {
        s += &format!("{} -> {}\n", x.compact(), y.compact());
    }
    Ok(s)
}

pub fn koenig_report(text: &str, as_json: bool) -> Result<String, String> {
    let k = parse_koenig(text).map_err(|e| e.to_string())?;
    let w = koenig_uncovered(&k.b, &k.a).map_err(|e| e.to_string())?;
    if !w.uncovered {
        return Err("constructed tuple lies in some A_i".into());
    }
    if as_json {
        return Ok(pretty(&w.to_json()));
    }
    let tuple: Vec<String> = w.tuple.iter().map(|x| x.compact().to_string()).collect();
    Ok(format!("tuple: ({})\nsum: {}\nproduct: {}\n", tuple.join(","), w.sum, w.product))
}

pub fn tarski_report(text: &str, as_json: bool) -> Result<String, String> {
    let m = parse_monotone_map(text).map_err(|e| e.to_string())?;
    let t = tarski_extrema(&m).map_err(|e| e.to_string())?;
    let lattice = match fixed_point_lattice(&m) {
        Ok(r) => Some(r),
        Err(FixpointError::NotLattice) => None,
        Err(e) => return Err(e.to_string()),
    };
    let fixed: Vec<HfSet> = m.fixed_points().iter().map(|&i| m.domain().elements()[i].clone()).collect();
    if as_json {
        let mut v = t.to_json();
        v["fixed_points"] = fixed.iter().map(set_json).collect::<Vec<_>>().into();
        if let Some(r) = &lattice {
            v["complete"] = r.complete.into();
            v["interval_construction_agrees"] = r.interval_construction_agrees.into();
        }
        return Ok(pretty(&v));
    }
    let names: Vec<String> = fixed.iter().map(|x| x.compact().to_string()).collect();
    let mut s = format!("v: {}\nw: {}\nfixed points: {}\n", t.v.compact(), t.w.compact(), names.join(" "));
    if let Some(r) = lattice {
        s += &format!(
            "complete: {}\ninterval construction agrees: {}\n",
            r.complete, r.interval_construction_agrees
        );
    }
    Ok(s)
}
