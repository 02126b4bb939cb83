//! Verification driver behind the `hstower` binary: suite selection, field
//! choice, report assembly and rendering.

pub mod export;
mod suites;

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use suites::run_suite;

/// Scalar field requested with `--field`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    F30,
    F31,
    F32,
}

impl FieldChoice {
    pub fn label(self) -> String {
        match self {
            FieldChoice::Rational => "rational".into(),
            FieldChoice::F30 => "fp:1073741827".into(),
            FieldChoice::F31 => "fp:2147483647".into(),
            FieldChoice::F32 => "fp:4294967291".into(),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rational" | "q" | "Q" => Ok(FieldChoice::Rational),
            "fp:1073741827" => Ok(FieldChoice::F30),
            "fp:2147483647" => Ok(FieldChoice::F31),
            "fp:4294967291" => Ok(FieldChoice::F32),
            other => Err(Error::Invalid(format!(
                "unsupported field {other:?}; use rational, fp:1073741827, fp:2147483647 or fp:4294967291"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Dims,
    Basis,
    Sandwich,
    CartanHsn,
    Morita,
    ModulesHsn,
    Prop2,
    Prop3,
    Affine,
    Ndf,
    Ndpf,
    Grassmann,
    Prop6,
    Prop8,
    Prop9,
    QsymNcsf,
    Towers,
    Nonhopf,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 18] = [
        Suite::Dims,
        Suite::Basis,
        Suite::Sandwich,
        Suite::CartanHsn,
        Suite::Morita,
        Suite::ModulesHsn,
        Suite::Prop2,
        Suite::Prop3,
        Suite::Affine,
        Suite::Ndf,
        Suite::Ndpf,
        Suite::Grassmann,
        Suite::Prop6,
        Suite::Prop8,
        Suite::Prop9,
        Suite::QsymNcsf,
        Suite::Towers,
        Suite::Nonhopf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dims => "dims",
            Suite::Basis => "basis",
            Suite::Sandwich => "sandwich",
            Suite::CartanHsn => "cartan-hsn",
            Suite::Morita => "morita",
            Suite::ModulesHsn => "modules-hsn",
            Suite::Prop2 => "prop2",
            Suite::Prop3 => "prop3",
            Suite::Affine => "affine",
            Suite::Ndf => "ndf",
            Suite::Ndpf => "ndpf",
            Suite::Grassmann => "grassmann",
            Suite::Prop6 => "prop6",
            Suite::Prop8 => "prop8",
            Suite::Prop9 => "prop9",
            Suite::QsymNcsf => "qsym-ncsf",
            Suite::Towers => "towers",
            Suite::Nonhopf => "nonhopf",
            Suite::All => "all",
        }
    }

    /// Range used when no `--n`/`--range` is given. For suites driven by a
    /// single bound (`prop8`, `qsym-ncsf`, `towers`) only the upper end matters.
    pub fn default_range(self) -> Option<(usize, usize)> {
        match self {
            Suite::Dims => Some((1, 5)),
            Suite::Basis | Suite::Sandwich | Suite::CartanHsn | Suite::Morita => Some((1, 4)),
            Suite::ModulesHsn | Suite::Prop2 | Suite::Prop3 => Some((1, 4)),
            Suite::Affine => Some((3, 5)),
            Suite::Ndf | Suite::Ndpf | Suite::Grassmann | Suite::Prop6 => Some((1, 5)),
            Suite::Prop8 => Some((2, 5)),
            Suite::Prop9 => Some((1, 4)),
            Suite::QsymNcsf => Some((1, 6)),
            Suite::Towers => Some((1, 4)),
            Suite::Nonhopf | Suite::All => None,
        }
    }

    /// Field-generic suites honour `--field`; the others need characteristic zero.
    pub fn field_generic(self) -> bool {
        matches!(self, Suite::Dims | Suite::Basis | Suite::Sandwich | Suite::Affine | Suite::ModulesHsn | Suite::Prop6)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::MEMBERS
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::MEMBERS.iter().map(|x| x.name()).collect();
                Error::Invalid(format!("unknown suite {s:?}; expected one of: {}, all", names.join(", ")))
            })
    }
}

/// Parses `N`, `A..B`, `A..=B` or `A-B` into an inclusive range.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Invalid(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let n = num(s)?;
        (n, n)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// For failures: the failing labels and the values that differ. For skips: the reason.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(usize, usize)>,
    pub checks: Vec<Check>,
    /// Computed data (sequences, matrices, expansions), in a fixed order.
    pub output: Vec<String>,
    /// Wall-clock seconds per step. Not serialized, so reports stay byte-identical.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn new(suite: Suite, field: String, range: Option<(usize, usize)>) -> Self {
        VerificationReport { suite: suite.name().into(), field, range, checks: vec![], output: vec![], timings: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let witness = if ok { None } else { Some(witness()) };
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, witness });
    }

    /// Records `Ok(true)` as pass, `Ok(false)` as a failure with `witness`,
    /// and an error as a failure carrying the error text.
    pub fn outcome(&mut self, name: impl Into<String>, r: Result<bool>, witness: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(name, ok, witness),
            Err(e) => self.checks.push(Check { name: name.into(), status: Status::Fail, witness: Some(format!("error: {e}")) }),
        }
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, witness: Some(reason.into()) });
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }

    pub fn timed<T>(&mut self, label: impl Into<String>, f: impl FnOnce() -> T) -> T {
        let t = std::time::Instant::now();
        let out = f();
        self.timings.push((label.into(), t.elapsed().as_secs_f64()));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Invalid(format!("unknown format {s:?}; use json, csv or table"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub range: Option<(usize, usize)>,
    pub field: FieldChoice,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { range: None, field: FieldChoice::Rational }
    }
}

/// Runs one suite, or every suite for `all`. Under `all`, a given range caps
/// each suite's default range from above. Suites run concurrently on the
/// current rayon pool; the reports come back in the fixed suite order.
pub fn run(suite: Suite, opts: &RunOptions) -> Vec<VerificationReport> {
    if suite != Suite::All {
        let range = opts.range.or(suite.default_range());
        return vec![run_suite(suite, range, opts.field)];
    }
    Suite::MEMBERS
        .par_iter()
        .map(|&s| {
            let range = match (s.default_range(), opts.range) {
                (Some((lo, hi)), Some((_, cap))) => Some((lo, hi.min(cap))),
                (r, _) => r,
            };
            run_suite(s, range, opts.field)
        })
        .collect()
}

pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders reports. JSON is an array of report objects; CSV has one row per
/// check; the table form adds the computed data lines.
pub fn render(reports: &[VerificationReport], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(reports).map_err(|e| Error::Invalid(e.to_string()))?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("suite,field,check,status,witness\n");
            for r in reports {
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        csv_field(&r.suite),
                        csv_field(&r.field),
                        csv_field(&c.name),
                        c.status.as_str(),
                        csv_field(c.witness.as_deref().unwrap_or(""))
                    );
                }
            }
        }
        Format::Table => {
            for r in reports {
                let range = r.range.map(|(a, b)| if a == b { format!(" n={a}") } else { format!(" n={a}..{b}") }).unwrap_or_default();
                let _ = writeln!(out, "== {}{} [{}]", r.suite, range, r.field);
                for l in &r.output {
                    let _ = writeln!(out, "   {l}");
                }
                for c in &r.checks {
                    let _ = write!(out, "{:>7}  {}", c.status.as_str(), c.name);
                    if let Some(w) = &c.witness {
                        let _ = write!(out, "  ({w})");
                    }
                    out.push('\n');
                }
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "   {verdict}: {} passed, {} failed, {} skipped",
                    r.count(Status::Pass),
                    r.count(Status::Fail),
                    r.count(Status::Skipped)
                );
            }
        }
    }
    Ok(out)
}

/// Per-step timings, for stderr.
pub fn render_timings(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for (label, secs) in &r.timings {
            let _ = writeln!(out, "[time] {} {label}: {secs:.2}s", r.suite);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_flags() {
        assert_eq!(parse_range("3").unwrap(), (3, 3));
        assert_eq!(parse_range("1..5").unwrap(), (1, 5));
        assert_eq!(parse_range("2..=4").unwrap(), (2, 4));
        assert_eq!(parse_range("1-3").unwrap(), (1, 3));
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("x").is_err());
        assert_eq!("fp:2147483647".parse::<FieldChoice>().unwrap(), FieldChoice::F31);
        assert!("fp:7".parse::<FieldChoice>().is_err());
        for s in Suite::MEMBERS {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn skipped_checks_do_not_fail() {
        let mut r = VerificationReport::new(Suite::Dims, "rational".into(), Some((1, 1)));
        r.check("a", true, String::new);
        r.skip("b", "out of range");
        assert!(r.passed());
        r.outcome("c", Err(Error::Invalid("boom".into())), String::new);
        assert!(!r.passed());
        let csv = render(&[r], Format::Csv).unwrap();
        assert!(csv.lines().any(|l| l.starts_with("dims,rational,c,fail,error:") && l.contains("boom")));
    }
}
