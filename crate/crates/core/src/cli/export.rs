//! `hstower export`: Cartan matrices, the operator basis `B_n` and
//! Grothendieck tables as JSON, CSV or an aligned table.

use std::fmt::Write as _;

use serde::Serialize;

use super::Format;
use crate::combinatorics::Composition;
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix, SparseMatrixJson, Q};
use crate::hsn::{cartan_hsn, idempotents, HsnAlgebra};
use crate::ndf::{ndf_modules, ndpf_modules};
use crate::towers::{ndf_label, GKind, GrothendieckTables, Tower, TowerKind};

#[derive(Clone, Debug, PartialEq)]
pub enum ExportObject {
    /// `[I][J] = dim Hom(P_I, P_J)` for `HS_n`.
    CartanHsn(usize),
    CartanNdf(usize),
    CartanNdpf(usize),
    /// The operators of `B_n`, labelled `(σ,τ)`.
    BasisBn(usize),
    Grothendieck(TowerKind, usize),
}

pub const OBJECTS: &str = "cartan-hsn N | cartan-ndf N | cartan-ndpf N | basis-Bn N | grothendieck TOWER N";

impl ExportObject {
    /// `object` plus its positional arguments, e.g. `["grothendieck", "ndf", "4"]`.
    pub fn parse(args: &[String]) -> Result<Self> {
        let usage = || Error::Invalid(format!("expected one of: {OBJECTS}"));
        let num = |s: Option<&String>| s.ok_or_else(usage)?.parse::<usize>().map_err(|_| usage());
        let obj = match args.first().map(String::as_str) {
            Some("cartan-hsn") => ExportObject::CartanHsn(num(args.get(1))?),
            Some("cartan-ndf") => ExportObject::CartanNdf(num(args.get(1))?),
            Some("cartan-ndpf") => ExportObject::CartanNdpf(num(args.get(1))?),
            Some("basis-Bn") | Some("basis-bn") => ExportObject::BasisBn(num(args.get(1))?),
            Some("grothendieck") => {
                let kind = TowerKind::parse(args.get(1).ok_or_else(usage)?)?;
                ExportObject::Grothendieck(kind, num(args.get(2))?)
            }
            _ => return Err(usage()),
        };
        let expected = if matches!(obj, ExportObject::Grothendieck(..)) { 3 } else { 2 };
        if args.len() != expected {
            return Err(usage());
        }
        Ok(obj)
    }
}

struct Labelled {
    title: String,
    labels: Vec<String>,
    rows: Vec<Vec<i64>>,
}

impl Labelled {
    fn render(&self, format: Format) -> Result<String> {
        let mut out = String::new();
        match format {
            Format::Json => {
                let dense: Vec<Vec<Q>> = self.rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect();
                let m = SparseMatrix::from_dense(&dense).to_json().with_labels(self.labels.clone(), self.labels.clone());
                out = serde_json::to_string_pretty(&m)?;
                out.push('\n');
            }
            Format::Csv => {
                let _ = writeln!(out, "{},{}", csv(&self.title), self.labels.iter().map(|l| csv(l)).collect::<Vec<_>>().join(","));
                for (l, r) in self.labels.iter().zip(&self.rows) {
                    let _ = writeln!(out, "{},{}", csv(l), r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                }
            }
            Format::Table => {
                let w = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
                let _ = writeln!(out, "{}", self.title);
                let _ = write!(out, "{:w$}", "");
                for l in &self.labels {
                    let _ = write!(out, " {l:>w$}");
                }
                out.push('\n');
                for (l, r) in self.labels.iter().zip(&self.rows) {
                    let _ = write!(out, "{l:>w$}");
                    for x in r {
                        let _ = write!(out, " {x:>w$}");
                    }
                    out.push('\n');
                }
            }
        }
        Ok(out)
    }
}

fn csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_i64(m: &[Vec<impl Copy + Into<u64>>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|&x| x.into() as i64).collect()).collect()
}

#[derive(Serialize)]
struct OperatorJson {
    label: String,
    matrix: SparseMatrixJson,
}

fn basis_bn(n: usize, format: Format) -> Result<String> {
    if !(1..=5).contains(&n) {
        return Err(Error::OutOfRange(format!("basis-Bn needs 1 <= n <= 5, got {n}")));
    }
    let hs = HsnAlgebra::<Q>::build(n, false)?;
    let perms = hs.perm_basis().labels();
    let labels = hs.labels();
    let mut out = String::new();
    match format {
        Format::Json => {
            let ops: Vec<OperatorJson> = labels
                .iter()
                .enumerate()
                .map(|(k, l)| OperatorJson { label: l.clone(), matrix: hs.operator(k).to_json().with_labels(perms.clone(), perms.clone()) })
                .collect();
            out = serde_json::to_string_pretty(&ops)?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("operator,source,image\n");
            for (k, l) in labels.iter().enumerate() {
                for (mu, &img) in hs.map(k).iter().enumerate() {
                    let _ = writeln!(out, "{},{},{}", csv(l), csv(&perms[mu]), csv(&perms[img]));
                }
            }
        }
        Format::Table => {
            let _ = writeln!(out, "B_{n}: {} operators on the permutations of {n}", labels.len());
            for (k, l) in labels.iter().enumerate() {
                let images: Vec<String> = hs.map(k).iter().enumerate().map(|(mu, &img)| format!("{}->{}", perms[mu], perms[img])).collect();
                let _ = writeln!(out, "{l}: {}", images.join(" "));
            }
        }
    }
    Ok(out)
}

fn grothendieck(kind: TowerKind, n: usize, format: Format) -> Result<String> {
    let cap = if kind == TowerKind::Hsn { 4 } else { 5 };
    if matches!(kind, TowerKind::SymGrp | TowerKind::Hecke(_)) {
        return Err(Error::Invalid(format!("no module catalogue for the {kind} tower")));
    }
    if !(1..=cap).contains(&n) {
        return Err(Error::OutOfRange(format!("grothendieck {kind} needs 1 <= n <= {cap}, got {n}")));
    }
    let tower = Tower::build(kind, n, true)?;
    let tables = GrothendieckTables::compute(&tower, n, false)?;
    let all: Vec<_> = [GKind::G, GKind::K].into_iter().flat_map(|k| tables.to_json(k)).collect();
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(&all)?;
            out.push('\n');
        }
        Format::Csv | Format::Table => {
            if format == Format::Csv {
                out.push_str("tower,kind,op,left,right,term,coefficient,note\n");
            }
            for t in &all {
                for e in &t.entries {
                    let right = e.right.clone().unwrap_or_default();
                    let note = e.note.clone().unwrap_or_default();
                    if format == Format::Csv {
                        for (term, c) in &e.result {
                            let _ = writeln!(out, "{},{:?},{},{},{},{},{c},{}", csv(&t.tower), t.kind, t.op, csv(&e.left), csv(&right), csv(term), csv(&note));
                        }
                    } else {
                        let lhs = if t.op == "product" { format!("[{}]·[{}]", e.left, right) } else { format!("Δ[{}]", e.left) };
                        let rhs: Vec<String> = e.result.iter().map(|(term, c)| format!("{c}·[{term}]")).collect();
                        let note = if note.is_empty() { String::new() } else { format!("  ({note})") };
                        let _ = writeln!(out, "{} {:?} {lhs} = {}{note}", t.tower, t.kind, rhs.join(" + "));
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn export(obj: &ExportObject, format: Format) -> Result<String> {
    match obj {
        ExportObject::CartanHsn(n) => {
            let n = *n;
            if !(1..=4).contains(&n) {
                return Err(Error::OutOfRange(format!("cartan-hsn needs 1 <= n <= 4, got {n}")));
            }
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let ps = idempotents::<Q>(hs.perm_basis())?;
            let rows = cartan_hsn(&hs, &ps).into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
            let labels = Composition::all(n).iter().map(|c| c.label()).collect();
            Labelled { title: format!("Cartan(HS_{n}) [I][J] = dim Hom(P_I, P_J)"), labels, rows }.render(format)
        }
        ExportObject::CartanNdf(n) => {
            let m = ndf_modules(*n)?;
            let rows = m.cartan.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let labels = (1..=*n).map(|k| ndf_label(*n, k)).collect();
            Labelled { title: format!("Cartan(NDF_{n}) [k][l] = dim Hom(P^k, P^l)"), labels, rows }.render(format)
        }
        ExportObject::CartanNdpf(n) => {
            let m = ndpf_modules(*n)?;
            let labels = m.compositions.iter().map(|c| c.label()).collect();
            Labelled { title: format!("Cartan(NDPF_{n}) [I][J] = [P_I : S_J]"), labels, rows: to_i64(&m.cartan) }.render(format)
        }
        ExportObject::BasisBn(n) => basis_bn(*n, format),
        ExportObject::Grothendieck(kind, n) => grothendieck(kind.clone(), *n, format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parse_objects() {
        assert_eq!(ExportObject::parse(&args("cartan-hsn 3")).unwrap(), ExportObject::CartanHsn(3));
        assert_eq!(ExportObject::parse(&args("grothendieck NDF 4")).unwrap(), ExportObject::Grothendieck(TowerKind::Ndf, 4));
        assert!(ExportObject::parse(&args("grothendieck NDF")).is_err());
        assert!(ExportObject::parse(&args("cartan-hsn 3 4")).is_err());
        assert!(ExportObject::parse(&args("nothing 3")).is_err());
    }

    #[test]
    fn basis_b2_has_three_operators() {
        let json = export(&ExportObject::BasisBn(2), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        let csv = export(&ExportObject::BasisBn(2), Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + 3 * 2);
    }

    #[test]
    fn cartan_hsn_3_round_trips() {
        let json = export(&ExportObject::CartanHsn(3), Format::Json).unwrap();
        let m: SparseMatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!((m.nrows, m.ncols), (4, 4));
        assert_eq!(m.row_labels.as_ref().unwrap().len(), 4);
        let back = m.to_matrix().unwrap();
        // Des(I) ⊆ Des(J) for all four compositions of 3: nine comparable pairs
        let ones = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| back.get(i, j).is_one()).count();
        assert_eq!(ones, 9);
        let table = export(&ExportObject::CartanHsn(3), Format::Table).unwrap();
        assert_eq!(table.lines().count(), 6);
    }
}
