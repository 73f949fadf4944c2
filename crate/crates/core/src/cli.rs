//! Command-line front end.
//!
//! Every subcommand is a plain function returning the rendered output, so
//! the binary is a thin wrapper around [`run`]. Exit codes: 0 on success,
//! 1 for bad input or exceeded budgets, 2 when an internal consistency check
//! fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::oracle::{self, Mode};
use crate::orbit::{n_lambda, orbit_census};
use crate::poly::{coeff_to_json, QPoly};
use crate::poset::{partitions_of, OrderIdeal, Partition};
use crate::quiver;
use crate::refined::refined_matrix;
use crate::store::ResultStore;

/// Refined matrices above this weight need `--force`.
pub const REFINED_LIMIT: u64 = 8;

#[derive(Parser, Debug)]
#[command(name = "pairorbits", version, about = "Orbit counts for pairs in finite modules over a DVR")]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with_all = ["csv", "latex"])]
    pub json: bool,
    /// Emit CSV.
    #[arg(long, global = true, conflicts_with = "latex")]
    pub csv: bool,
    /// Emit LaTeX.
    #[arg(long, global = true)]
    pub latex: bool,
    /// Also evaluate at q = Q.
    #[arg(long, global = true, value_name = "Q")]
    pub at: Option<u64>,
    /// JSON file caching n_λ between runs.
    #[arg(long, global = true, value_name = "FILE")]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// n_λ(q) for one partition, e.g. "3,1" or "5,4^2,2,1".
    Nlambda { partition: String },
    /// n_λ(q) for every partition of N.
    Table { n: u32 },
    /// Stabilizer-orbit census for the orbit with the given maximal points.
    Census {
        partition: String,
        /// Maximal points of the ideal, "v:k,v:k,...".
        #[arg(long, value_name = "POINTS")]
        max: Option<String>,
    },
    /// Orbit counts in M*_I × M*_L for every pair of ideals.
    Refined {
        partition: String,
        /// Allow partitions above the size limit.
        #[arg(long)]
        force: bool,
    },
    /// R_{n,1}(q), the number of (A, x, y) triples up to change of basis.
    Quiver {
        n: u32,
        /// List each matrix type with c_τ and n_τ.
        #[arg(long)]
        types: bool,
    },
    /// Compare the formulas with explicit orbit enumeration over Z/p^k.
    Verify {
        partition: String,
        p: u64,
        /// Use every automorphism instead of a generating set.
        #[arg(long)]
        full_endos: bool,
    },
    /// Scan n_λ for negative coefficients, |λ| ≤ N_MAX.
    Conjecture { n_max: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

impl Cli {
    pub fn format(&self) -> Format {
        match (self.json, self.csv, self.latex) {
            (true, _, _) => Format::Json,
            (_, true, _) => Format::Csv,
            (_, _, true) => Format::Latex,
            _ => Format::Text,
        }
    }
}

/// Output of a command plus whether its own consistency checks held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::error::ErrorKind;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let store = match &cli.cache {
        Some(path) => {
            let (store, warning) = ResultStore::open(path);
            if let Some(w) = warning {
                let _ = writeln!(err, "warning: {w}");
            }
            store
        }
        None => ResultStore::in_memory(),
    };
    let result = execute(&cli, &store);
    let saved = store.save();
    let mut code = match result {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.text);
            if outcome.ok {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    if let Err(e) = saved {
        let _ = writeln!(err, "error: could not write cache: {e}");
        if code == 0 {
            code = 1;
        }
    }
    code
}

pub fn execute(cli: &Cli, store: &ResultStore) -> Result<Outcome> {
    let fmt = cli.format();
    match &cli.command {
        Command::Nlambda { partition } => cmd_nlambda(partition, fmt, cli.at, store).map(Outcome::from),
        Command::Table { n } => cmd_table(*n, fmt, cli.at, store).map(Outcome::from),
        Command::Census { partition, max } => {
            let max = max
                .as_deref()
                .ok_or_else(|| Error::Parse("census needs --max \"v:k,...\"".into()))?;
            cmd_census(partition, max, fmt).map(Outcome::from)
        }
        Command::Refined { partition, force } => cmd_refined(partition, *force, fmt, store).map(Outcome::from),
        Command::Quiver { n, types } => cmd_quiver(*n, *types, fmt, cli.at, store).map(Outcome::from),
        Command::Verify { partition, p, full_endos } => {
            let mode = if *full_endos { Mode::FullEndos } else { Mode::Quick };
            cmd_verify(partition, *p, mode, fmt, store)
        }
        Command::Conjecture { n_max } => cmd_conjecture(*n_max, fmt, store).map(Outcome::from),
    }
}

fn value_at(p: &QPoly, q: u64) -> Value {
    coeff_to_json(&p.eval_int(q))
}

fn value_text(p: &QPoly, q: u64) -> String {
    match value_at(p, q) {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let cells: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
    cells.join(",") + "\n"
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

/// `(q - 1)^2 q^11` → `(q - 1)^{2} q^{11}`.
fn latex_exponents(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' && chars.peek() != Some(&'{') {
            out.push('{');
            while let Some(d) = chars.next_if(char::is_ascii_digit) {
                out.push(d);
            }
            out.push('}');
        }
    }
    out
}

/// Left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < r.len() {
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn latex_row(p: &Partition, n: &QPoly) -> String {
    format!("      $ {p} $ & $ {} $\\\\\n", n.to_latex())
}

pub fn cmd_nlambda(partition: &str, fmt: Format, at: Option<u64>, store: &ResultStore) -> Result<String> {
    let lambda: Partition = partition.parse()?;
    let n = n_lambda(&lambda, store)?;
    Ok(match fmt {
        Format::Text => {
            let mut s = format!("{n}\n");
            if let Some(q) = at {
                let _ = writeln!(s, "at q = {q}: {}", value_text(&n, q));
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "partition": lambda, "n_lambda": n });
            if let Some(q) = at {
                v["q"] = json!(q);
                v["value"] = value_at(&n, q);
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut head = vec!["partition".to_string(), "n_lambda".to_string()];
            let mut row = vec![lambda.key(), n.to_string()];
            if let Some(q) = at {
                head.push(format!("value_at_{q}"));
                row.push(value_text(&n, q));
            }
            csv_line(&head) + &csv_line(&row)
        }
        Format::Latex => latex_row(&lambda, &n),
    })
}

/// n_λ for every partition of `n`, in the order of [`partitions_of`].
pub fn table_rows(n: u32, store: &ResultStore) -> Result<Vec<(Partition, QPoly)>> {
    if n == 0 {
        return Err(Error::Parse("table needs n ≥ 1".into()));
    }
    partitions_of(n)
        .into_par_iter()
        .map(|p| n_lambda(&p, store).map(|v| (p, v)))
        .collect()
}

pub fn cmd_table(n: u32, fmt: Format, at: Option<u64>, store: &ResultStore) -> Result<String> {
    let rows = table_rows(n, store)?;
    Ok(match fmt {
        Format::Text => {
            let grid: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, v)| {
                    let mut r = vec![p.to_string(), v.to_string()];
                    if let Some(q) = at {
                        r.push(format!("[{}]", value_text(v, q)));
                    }
                    r
                })
                .collect();
            align(&grid)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(p, v)| {
                    let mut r = json!({ "partition": p, "n_lambda": v });
                    if let Some(q) = at {
                        r["value"] = value_at(v, q);
                    }
                    r
                })
                .collect();
            let mut out = json!({ "n": n, "rows": rows });
            if let Some(q) = at {
                out["q"] = json!(q);
            }
            pretty(&out)
        }
        Format::Csv => {
            let mut head = vec!["partition".to_string(), "n_lambda".to_string()];
            if let Some(q) = at {
                head.push(format!("value_at_{q}"));
            }
            let mut s = csv_line(&head);
            for (p, v) in &rows {
                let mut r = vec![p.key(), v.to_string()];
                if let Some(q) = at {
                    r.push(value_text(v, q));
                }
                s += &csv_line(&r);
            }
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{|c|c|}\n  \\hline\n");
            let _ = writeln!(s, "  \\multicolumn{{2}}{{|c|}}{{$\\mathbf{{n= {n} }}$}}\\\\");
            s.push_str("  \\hline\n");
            for (p, v) in &rows {
                s += &latex_row(p, v);
            }
            s.push_str("  \\hline\n\\end{tabular}\n");
            s
        }
    })
}

pub fn cmd_census(partition: &str, max: &str, fmt: Format) -> Result<String> {
    let lambda: Partition = partition.parse()?;
    let ideal: OrderIdeal = max.parse()?;
    if !ideal.in_context(&lambda) {
        return Err(Error::IdealOutOfContext {
            ideal: ideal.to_string(),
            partition: lambda.to_string(),
        });
    }
    let census = orbit_census(&lambda, &ideal)?;
    let total = census.total();
    Ok(match fmt {
        Format::Text => {
            let mut grid = vec![vec!["cardinality".to_string(), "orbits".to_string()]];
            for (a, c) in &census.rows {
                grid.push(vec![a.factored(), c.factored()]);
            }
            align(&grid) + &format!("total: {total}\n")
        }
        Format::Json => {
            let rows: Vec<Value> = census
                .rows
                .iter()
                .map(|(a, c)| json!({ "cardinality": a, "orbits": c }))
                .collect();
            pretty(&json!({
                "partition": lambda,
                "max_points": ideal,
                "rows": rows,
                "total": total,
            }))
        }
        Format::Csv => {
            let mut s = csv_line(&["cardinality".into(), "orbits".into()]);
            for (a, c) in &census.rows {
                s += &csv_line(&[a.to_string(), c.to_string()]);
            }
            s
        }
        Format::Latex => {
            let mut s = String::from(
                "\\begin{array}{|c|c|}\n  \\hline\n  \\text{Cardinality} & \\text{Number of Orbits}\\\\\n  \\hline\n",
            );
            for (a, c) in &census.rows {
                let _ = writeln!(
                    s,
                    "  {} & {} \\\\",
                    latex_exponents(&a.factored()),
                    latex_exponents(&c.factored())
                );
            }
            s.push_str("  \\hline\n\\end{array}\n");
            s
        }
    })
}

pub fn cmd_refined(partition: &str, force: bool, fmt: Format, store: &ResultStore) -> Result<String> {
    let lambda: Partition = partition.parse()?;
    if lambda.weight() > REFINED_LIMIT && !force {
        return Err(Error::BudgetExceeded(format!(
            "refined matrices are limited to |λ| ≤ {REFINED_LIMIT}; pass --force to go further"
        )));
    }
    let m = refined_matrix(&lambda)?;
    let total = m.grand_total();
    let expected = n_lambda(&lambda, store)?;
    if total != expected {
        return Err(Error::MassMismatch {
            what: format!("refined matrix of {lambda}"),
            got: total.to_string(),
            expected: expected.to_string(),
        });
    }
    let k = m.ideals.len();
    let row_sums: Vec<QPoly> = (0..k).map(|i| m.row_sum(i)).collect();
    let col_sums: Vec<QPoly> = (0..k).map(|l| m.col_sum(l)).collect();
    let names: Vec<String> = m.ideals.iter().map(OrderIdeal::to_string).collect();
    Ok(match fmt {
        Format::Text => {
            let mut grid = vec![std::iter::once("I \\ L".to_string())
                .chain(names.iter().cloned())
                .chain(["sum".to_string()])
                .collect::<Vec<_>>()];
            for i in 0..k {
                let mut r = vec![names[i].clone()];
                r.extend(m.totals[i].iter().map(QPoly::to_string));
                r.push(row_sums[i].to_string());
                grid.push(r);
            }
            let mut last = vec!["sum".to_string()];
            last.extend(col_sums.iter().map(QPoly::to_string));
            last.push(total.to_string());
            grid.push(last);
            align(&grid) + &format!("total: {total}\n")
        }
        Format::Json => pretty(&json!({
            "partition": lambda,
            "ideals": m.ideals,
            "matrix": m.totals,
            "row_sums": row_sums,
            "col_sums": col_sums,
            "total": total,
        })),
        Format::Csv => {
            let mut head = vec!["I\\L".to_string()];
            head.extend(names.iter().cloned());
            head.push("sum".into());
            let mut s = csv_line(&head);
            for i in 0..k {
                let mut r = vec![names[i].clone()];
                r.extend(m.totals[i].iter().map(QPoly::to_string));
                r.push(row_sums[i].to_string());
                s += &csv_line(&r);
            }
            let mut last = vec!["sum".to_string()];
            last.extend(col_sums.iter().map(QPoly::to_string));
            last.push(total.to_string());
            s + &csv_line(&last)
        }
        Format::Latex => {
            let mut s = format!("\\begin{{array}}{{|c|{}|c|}}\n  \\hline\n", "c".repeat(k));
            let head: Vec<String> = names.iter().map(|n| format!("\\text{{{n}}}")).collect();
            let _ = writeln!(s, "  I \\backslash L & {} & \\Sigma \\\\\n  \\hline", head.join(" & "));
            for i in 0..k {
                let cells: Vec<String> = m.totals[i].iter().map(QPoly::to_latex).collect();
                let _ = writeln!(
                    s,
                    "  \\text{{{}}} & {} & {} \\\\",
                    names[i],
                    cells.join(" & "),
                    row_sums[i].to_latex()
                );
            }
            let cells: Vec<String> = col_sums.iter().map(QPoly::to_latex).collect();
            let _ = writeln!(s, "  \\hline\n  \\Sigma & {} & {} \\\\", cells.join(" & "), total.to_latex());
            s.push_str("  \\hline\n\\end{array}\n");
            s
        }
    })
}

pub fn cmd_quiver(n: u32, types: bool, fmt: Format, at: Option<u64>, store: &ResultStore) -> Result<String> {
    if n == 0 {
        return Err(Error::Parse("quiver needs n ≥ 1".into()));
    }
    let r = quiver::r_n1(n, store)?;
    let breakdown = if types { quiver::type_breakdown(n, store)? } else { Vec::new() };
    Ok(match fmt {
        Format::Text => {
            let mut s = String::new();
            if types {
                let mut grid = vec![vec!["type".to_string(), "c_tau".to_string(), "n_tau".to_string()]];
                for (t, c, nt) in &breakdown {
                    grid.push(vec![t.to_string(), c.to_string(), nt.to_string()]);
                }
                s += &align(&grid);
            }
            let _ = writeln!(s, "{r}");
            if let Some(q) = at {
                let _ = writeln!(s, "at q = {q}: {}", value_text(&r, q));
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "n": n, "r_n1": r });
            if types {
                v["types"] = breakdown
                    .iter()
                    .map(|(t, c, nt)| json!({ "type": t.to_string(), "c_tau": c, "n_tau": nt }))
                    .collect();
            }
            if let Some(q) = at {
                v["q"] = json!(q);
                v["value"] = value_at(&r, q);
            }
            pretty(&v)
        }
        Format::Csv => {
            if types {
                let mut s = csv_line(&["type".into(), "c_tau".into(), "n_tau".into()]);
                for (t, c, nt) in &breakdown {
                    s += &csv_line(&[t.to_string(), c.to_string(), nt.to_string()]);
                }
                s
            } else {
                let mut head = vec!["n".to_string(), "r_n1".to_string()];
                let mut row = vec![n.to_string(), r.to_string()];
                if let Some(q) = at {
                    head.push(format!("value_at_{q}"));
                    row.push(value_text(&r, q));
                }
                csv_line(&head) + &csv_line(&row)
            }
        }
        Format::Latex => format!("R_{{{n},1}}(q) = {}\n", r.to_latex()),
    })
}

pub fn cmd_verify(partition: &str, p: u64, mode: Mode, fmt: Format, store: &ResultStore) -> Result<Outcome> {
    let lambda: Partition = partition.parse()?;
    let report = oracle::verify(&lambda, p, mode, store)?;
    let ok = report.all_pass();
    let text = match fmt {
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(s, "[{tag}] {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
            let failed = report.failures().count();
            if failed == 0 {
                let _ = writeln!(s, "all {} checks passed", report.checks.len());
            } else {
                let _ = writeln!(s, "{failed} of {} checks failed", report.checks.len());
            }
            s
        }
        Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
        Format::Csv => {
            let mut s = csv_line(&["name".into(), "pass".into(), "expected".into(), "actual".into()]);
            for c in &report.checks {
                s += &csv_line(&[
                    c.name.clone(),
                    c.pass.to_string(),
                    c.expected.to_string(),
                    c.actual.to_string(),
                ]);
            }
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{|l|c|}\n  \\hline\n");
            for c in &report.checks {
                let _ = writeln!(s, "  {} & {} \\\\", c.name, if c.pass { "pass" } else { "fail" });
            }
            s.push_str("  \\hline\n\\end{tabular}\n");
            s
        }
    };
    Ok(Outcome { text, ok })
}

/// Every `(λ, n_λ)` with `|λ| ≤ n_max` that has a negative coefficient,
/// plus the number of partitions scanned.
pub fn conjecture_scan(n_max: u32, store: &ResultStore) -> Result<(Vec<(Partition, QPoly)>, usize)> {
    let all: Vec<Partition> = (1..=n_max).flat_map(partitions_of).collect();
    let checked = all.len();
    let found: Vec<(Partition, QPoly)> = all
        .into_par_iter()
        .map(|p| n_lambda(&p, store).map(|v| (p, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, v)| !v.has_nonnegative_coeffs())
        .collect();
    Ok((found, checked))
}

pub fn cmd_conjecture(n_max: u32, fmt: Format, store: &ResultStore) -> Result<String> {
    let (found, checked) = conjecture_scan(n_max, store)?;
    Ok(match fmt {
        Format::Json => pretty(&json!({
            "n_max": n_max,
            "checked": checked,
            "negative": found.iter().map(|(p, v)| json!({ "partition": p, "n_lambda": v })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = csv_line(&["partition".into(), "n_lambda".into()]);
            for (p, v) in &found {
                s += &csv_line(&[p.key(), v.to_string()]);
            }
            s
        }
        Format::Text | Format::Latex => {
            if found.is_empty() {
                format!("no negative coefficients in n_λ for |λ| ≤ {n_max} ({checked} partitions)\n")
            } else {
                let mut s = format!("negative coefficients found ({} of {checked} partitions):\n", found.len());
                for (p, v) in &found {
                    let _ = writeln!(s, "{p}  {v}");
                }
                s
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pairorbits").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn nlambda_text() {
        assert_eq!(call(&["nlambda", "3,1"]), (0, "q^3 + 5q^2 + 7q + 4\n".into(), String::new()));
        assert_eq!(call(&["nlambda", "1,1,1,1,1"]).1, "q + 3\n");
        assert_eq!(call(&["nlambda", ""]).1, "1\n");
        assert_eq!(call(&["nlambda", "2,1", "--at", "2"]).1, "q^2 + 5q + 5\nat q = 2: 19\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["nlambda", "3,x"]).0, 1);
        assert_eq!(call(&["census", "2,1", "--max", "0:3"]).0, 1);
        assert_eq!(call(&["census", "2,1"]).0, 1);
        assert_eq!(call(&["refined", "5,4"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
        assert_eq!(call(&["nlambda", "1", "--json", "--csv"]).0, 1);
        assert_eq!(call(&["verify", "1", "4"]).0, 1);
        assert_eq!(call(&["verify", "5,5,3", "2"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(exit_code(&Error::NonIntegerResult("x".into())), 2);
    }

    #[test]
    fn table_formats() {
        let (code, out, _) = call(&["table", "1"]);
        assert_eq!((code, out.as_str()), (0, "(1)  q + 2\n"));
        let (_, out, _) = call(&["table", "2", "--latex"]);
        assert!(out.contains("      $ (2) $ & $ q^2 + 2q + 2 $\\\\\n      $ (1, 1) $ & $ q + 3 $\\\\\n"));
        assert!(out.contains("\\mathbf{n= 2 }"));
        let (_, out, _) = call(&["table", "3", "--csv"]);
        assert_eq!(out, "partition,n_lambda\n3,q^3 + 2q^2 + 2q + 2\n\"2,1\",q^2 + 5q + 5\n1^3,q + 3\n");
        let (_, out, _) = call(&["table", "4", "--json", "--at", "3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 5);
        assert_eq!(v["rows"][1]["partition"], "3,1");
        assert_eq!(v["rows"][1]["value"], 27 + 45 + 21 + 4);
        let n: QPoly = serde_json::from_value(v["rows"][1]["n_lambda"].clone()).unwrap();
        assert_eq!(n, QPoly::from_ints(&[4, 7, 5, 1]));
        assert_eq!(call(&["table", "0"]).0, 1);
    }

    #[test]
    fn census_output() {
        let (code, out, _) = call(&["census", "2", "--max", "1:2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("total: 2q - 1\n"), "{out}");
        let (_, out, _) = call(&["census", "1", "--max", "0:1", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"], json!([{ "cardinality": { "coeffs": [1] }, "orbits": { "coeffs": [0, 1] } }]));
        assert_eq!(v["max_points"], "0:1");
        assert_eq!(latex_exponents("(q - 1)^2 q^11"), "(q - 1)^{2} q^{11}");
    }

    #[test]
    fn refined_output() {
        let (code, out, _) = call(&["refined", "1", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matrix"], json!([[{ "coeffs": [1] }, { "coeffs": [1] }], [{ "coeffs": [1] }, { "coeffs": [-1, 1] }]]));
        assert_eq!(v["total"], json!({ "coeffs": [2, 1] }));
        let (_, out, _) = call(&["refined", "2,1"]);
        assert!(out.ends_with("total: q^2 + 5q + 5\n"));
        let (_, out, _) = call(&["refined", ""]);
        assert!(out.ends_with("total: 1\n"));
    }

    #[test]
    fn quiver_verify_conjecture() {
        assert_eq!(call(&["quiver", "1"]).1, "q^2 + 2q\n");
        let (_, out, _) = call(&["quiver", "2", "--types"]);
        assert!(out.ends_with("q^4 + 2q^3 + 4q^2 + 2q\n"));
        assert_eq!(out.lines().count(), 6);
        let (code, out, _) = call(&["verify", "2,1", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("pair orbit count: expected 19, got 19"));
        let (code, out, _) = call(&["verify", "1,1", "2", "--full-endos", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert_eq!(call(&["conjecture", "8"]).1, "no negative coefficients in n_λ for |λ| ≤ 8 (66 partitions)\n");
    }

    #[test]
    fn cache_warm_and_cold_agree() {
        let dir = std::env::temp_dir().join(format!("pairorbits-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("n.json");
        let p = path.to_str().unwrap();
        let cold = call(&["table", "6", "--cache", p]);
        let warm = call(&["table", "6", "--cache", p]);
        assert_eq!(cold, warm);
        let plain = call(&["table", "6"]);
        assert_eq!(plain.1, cold.1);
        std::fs::write(&path, "garbage").unwrap();
        let (code, out, err) = call(&["table", "6", "--cache", p]);
        assert_eq!((code, out), (0, cold.1));
        assert!(err.starts_with("warning: ignoring cache"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
