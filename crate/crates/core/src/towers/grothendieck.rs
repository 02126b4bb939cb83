//! Grothendieck groups of simples (`G`) and projectives (`K`), their
//! product and coproduct tables, and the characteristic maps into QSym and
//! NCSF.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::induction::{induce, projective_decomposition, restrict, simple_decomposition, tensor_catalogue, Coeffs};
use super::{Tower, TowerKind, EMPTY_LABEL};
use crate::combinatorics::Composition;
use crate::error::{Error, Result};
use crate::exactla::{Field, Q};
use crate::repr::{find_isomorphism, AlgebraModule};
use crate::symfunc::{Basis, Multiply, NcsfBasis, QsymBasis, SymElem, Tensor};

/// Which Grothendieck group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GKind {
    /// Classes of simples (composition factors).
    G,
    /// Classes of projectives.
    K,
}

/// An integer combination of labelled classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrothendieckElem {
    pub tower: String,
    pub kind: GKind,
    pub coeffs: Coeffs,
}

/// Coefficients over pairs of labels, for `A_m ⊗ A_n`.
pub type TensorCoeffs = BTreeMap<(String, String), i64>;

/// One product or coproduct rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub left: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    /// Labels, or `a⊗b` for coproducts.
    pub result: Coeffs,
    /// Set when a restricted projective is not projective; `result` then
    /// holds composition factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Exported form of a table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub tower: String,
    pub kind: GKind,
    pub op: String,
    pub entries: Vec<TableEntry>,
}

/// Product and coproduct tables of `G` and `K` up to degree `n_max`.
#[derive(Clone, Debug)]
pub struct GrothendieckTables {
    pub tower: TowerKind,
    pub n_max: usize,
    pub labels: Vec<Vec<String>>,
    pub product: BTreeMap<GKind, BTreeMap<(String, String), Coeffs>>,
    pub coproduct: BTreeMap<GKind, BTreeMap<String, TensorCoeffs>>,
    /// Restricted projectives that turned out not to be projective.
    pub non_projective: Vec<String>,
}

const TENSOR_SEP: char = '⊗';

fn split_pair(label: &str) -> (String, String) {
    let (a, b) = label.split_once(TENSOR_SEP).expect("tensor labels contain ⊗");
    (a.to_string(), b.to_string())
}

fn degree_of(tables: &[Vec<String>], label: &str) -> Option<usize> {
    tables.iter().position(|ls| ls.iter().any(|l| l == label))
}

/// Direct sum of `P_K^{c_K}` from a decomposition.
fn assemble(projectives: &[AlgebraModule<Q>], labels: &[String], coeffs: &Coeffs) -> Result<Option<AlgebraModule<Q>>> {
    let mut acc: Option<AlgebraModule<Q>> = None;
    for (l, &c) in coeffs {
        let i = labels.iter().position(|x| x == l).ok_or_else(|| Error::UnknownBasis(l.clone()))?;
        for _ in 0..c {
            acc = Some(match acc {
                None => projectives[i].clone(),
                Some(a) => a.direct_sum(&projectives[i])?,
            });
        }
    }
    Ok(acc)
}

fn certify(module: &AlgebraModule<Q>, projectives: &[AlgebraModule<Q>], labels: &[String], coeffs: &Coeffs) -> Result<()> {
    let sum = assemble(projectives, labels, coeffs)?.ok_or_else(|| Error::Verification("empty decomposition".into()))?;
    match find_isomorphism(module, &sum)? {
        Some(_) => Ok(()),
        None => Err(Error::Verification(format!("{} is not isomorphic to its claimed decomposition {coeffs:?}", module.label()))),
    }
}

impl GrothendieckTables {
    /// Computes every product of labelled classes of positive degrees with
    /// total degree `≤ n_max` and every restriction of a labelled class of
    /// degree `≤ n_max`. With `certify_iso`, projective decompositions are
    /// confirmed by an explicit module isomorphism.
    pub fn compute(tower: &Tower, n_max: usize, certify_iso: bool) -> Result<Self> {
        if n_max > tower.nmax() {
            return Err(Error::OutOfRange(format!("tower built to {}, tables requested to {n_max}", tower.nmax())));
        }
        let labels: Vec<Vec<String>> = (0..=n_max).map(|n| Ok(tower.floor(n)?.catalogue()?.labels.clone())).collect::<Result<_>>()?;
        let mut jobs = vec![];
        for m in 1..n_max {
            for n in 1..=n_max - m {
                for i in 0..labels[m].len() {
                    for j in 0..labels[n].len() {
                        for kind in [GKind::G, GKind::K] {
                            jobs.push((kind, m, i, n, j));
                        }
                    }
                }
            }
        }
        let products = jobs
            .par_iter()
            .map(|&(kind, m, i, n, j)| -> Result<_> {
                let (cm, cn, ct) = (tower.floor(m)?.catalogue()?, tower.floor(n)?.catalogue()?, tower.floor(m + n)?.catalogue()?);
                let coeffs = match kind {
                    GKind::G => simple_decomposition(ct, &induce(tower, m, &cm.simples[i], n, &cn.simples[j])?)?,
                    GKind::K => {
                        let ind = induce(tower, m, &cm.projectives[i], n, &cn.projectives[j])?;
                        let c = projective_decomposition(ct, &ind)?;
                        if certify_iso {
                            certify(&ind, &ct.projectives, &ct.labels, &c)?;
                        }
                        c
                    }
                };
                Ok((kind, (labels[m][i].clone(), labels[n][j].clone()), coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut product: BTreeMap<GKind, BTreeMap<(String, String), Coeffs>> = BTreeMap::new();
        for (k, key, c) in products {
            product.entry(k).or_default().insert(key, c);
        }

        let mut jobs = vec![];
        for total in 1..=n_max {
            for i in 0..labels[total].len() {
                for kind in [GKind::G, GKind::K] {
                    jobs.push((kind, total, i));
                }
            }
        }
        let coproducts = jobs
            .par_iter()
            .map(|&(kind, total, i)| -> Result<_> {
                let cat = tower.floor(total)?.catalogue()?;
                let mut out = TensorCoeffs::new();
                let mut non_projective = None;
                for m in 0..=total {
                    let n = total - m;
                    let module = match kind {
                        GKind::G => &cat.simples[i],
                        GKind::K => &cat.projectives[i],
                    };
                    let (talg, res) = restrict(tower, module, m, n)?;
                    let tcat = tensor_catalogue(tower, m, n, &talg)?;
                    let coeffs = match kind {
                        GKind::G => simple_decomposition(&tcat, &res)?,
                        GKind::K => match projective_decomposition(&tcat, &res) {
                            Ok(c) => {
                                if certify_iso {
                                    certify(&res, &tcat.projectives, &tcat.labels, &c)?;
                                }
                                c
                            }
                            Err(Error::Verification(_)) => {
                                non_projective = Some(format!("{}↓{m},{n}", labels[total][i]));
                                simple_decomposition(&tcat, &res)?
                            }
                            Err(e) => return Err(e),
                        },
                    };
                    for (l, c) in coeffs {
                        out.insert(split_pair(&l), c);
                    }
                }
                Ok((kind, labels[total][i].clone(), out, non_projective))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut coproduct: BTreeMap<GKind, BTreeMap<String, TensorCoeffs>> = BTreeMap::new();
        let mut non_projective = vec![];
        for (k, l, c, np) in coproducts {
            coproduct.entry(k).or_default().insert(l, c);
            non_projective.extend(np);
        }
        Ok(GrothendieckTables { tower: tower.kind.clone(), n_max, labels, product, coproduct, non_projective })
    }

    pub fn degree(&self, label: &str) -> Option<usize> {
        degree_of(&self.labels, label)
    }

    /// `[x]·[y]` for labels, with the degree-zero class as unit.
    pub fn product_of(&self, kind: GKind, x: &str, y: &str) -> Result<Coeffs> {
        if x == EMPTY_LABEL {
            return Ok(Coeffs::from([(y.to_string(), 1)]));
        }
        if y == EMPTY_LABEL {
            return Ok(Coeffs::from([(x.to_string(), 1)]));
        }
        self.product
            .get(&kind)
            .and_then(|t| t.get(&(x.to_string(), y.to_string())))
            .cloned()
            .ok_or_else(|| Error::OutOfRange(format!("product {x}·{y} not tabulated")))
    }

    /// Product of two combinations.
    pub fn multiply(&self, kind: GKind, a: &Coeffs, b: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (x, s) in a {
            for (y, t) in b {
                for (z, u) in self.product_of(kind, x, y)? {
                    *out.entry(z).or_default() += s * t * u;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn coproduct_of(&self, kind: GKind, x: &str) -> Result<TensorCoeffs> {
        if x == EMPTY_LABEL {
            return Ok(TensorCoeffs::from([((EMPTY_LABEL.to_string(), EMPTY_LABEL.to_string()), 1)]));
        }
        self.coproduct.get(&kind).and_then(|t| t.get(x)).cloned().ok_or_else(|| Error::OutOfRange(format!("coproduct of {x} not tabulated")))
    }

    /// `Δ(x·y)` and `Δ(x)·Δ(y)` (componentwise product) for two labels.
    pub fn bialgebra_sides(&self, kind: GKind, x: &str, y: &str) -> Result<(TensorCoeffs, TensorCoeffs)> {
        let mut lhs = TensorCoeffs::new();
        for (z, c) in self.product_of(kind, x, y)? {
            for (k, d) in self.coproduct_of(kind, &z)? {
                *lhs.entry(k).or_default() += c * d;
            }
        }
        let mut rhs = TensorCoeffs::new();
        for ((a, b), s) in self.coproduct_of(kind, x)? {
            for ((c, d), t) in self.coproduct_of(kind, y)? {
                let left = self.product_of(kind, &a, &c)?;
                let right = self.product_of(kind, &b, &d)?;
                for (u, p) in &left {
                    for (v, q) in &right {
                        *rhs.entry((u.clone(), v.clone())).or_default() += s * t * p * q;
                    }
                }
            }
        }
        lhs.retain(|_, v| *v != 0);
        rhs.retain(|_, v| *v != 0);
        Ok((lhs, rhs))
    }

    /// Every pair of labels of positive degree with total degree `≤ n_max`
    /// where `Δ(xy) ≠ Δ(x)Δ(y)`, with the first differing coefficient.
    pub fn bialgebra_failures(&self, kind: GKind) -> Result<Vec<BialgebraFailure>> {
        let mut out = vec![];
        for m in 1..self.n_max {
            for n in 1..=self.n_max - m {
                for x in &self.labels[m] {
                    for y in &self.labels[n] {
                        let (lhs, rhs) = self.bialgebra_sides(kind, x, y)?;
                        if lhs != rhs {
                            let key = lhs.keys().chain(rhs.keys()).find(|k| lhs.get(*k) != rhs.get(*k)).cloned().expect("sides differ");
                            out.push(BialgebraFailure {
                                left: x.clone(),
                                right: y.clone(),
                                term: key.clone(),
                                restrict_after_product: lhs.get(&key).copied().unwrap_or(0),
                                product_of_restrictions: rhs.get(&key).copied().unwrap_or(0),
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, kind: GKind) -> Vec<TableJson> {
        let name = self.tower.name();
        let product = self.product.get(&kind).map(|t| {
            t.iter().map(|((a, b), c)| TableEntry { left: a.clone(), right: Some(b.clone()), result: c.clone(), note: None }).collect()
        });
        let coproduct = self.coproduct.get(&kind).map(|t| {
            t.iter()
                .map(|(a, c)| {
                    let np = self.non_projective.iter().any(|s| s.starts_with(&format!("{a}↓"))) && kind == GKind::K;
                    TableEntry {
                        left: a.clone(),
                        right: None,
                        result: c.iter().map(|((x, y), v)| (format!("{x}{TENSOR_SEP}{y}"), *v)).collect(),
                        note: np.then(|| "restriction not projective; composition factors".to_string()),
                    }
                })
                .collect()
        });
        vec![
            TableJson { tower: name.clone(), kind, op: "product".into(), entries: product.unwrap_or_default() },
            TableJson { tower: name, kind, op: "coproduct".into(), entries: coproduct.unwrap_or_default() },
        ]
    }
}

/// A product/coproduct incompatibility.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BialgebraFailure {
    pub left: String,
    pub right: String,
    pub term: (String, String),
    pub restrict_after_product: i64,
    pub product_of_restrictions: i64,
}

/// Target of a characteristic map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharTarget {
    Qsym(QsymBasis),
    Ncsf(NcsfBasis),
}

/// Whether a composition is replaced by its complement before indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharMap {
    pub target: CharTarget,
    pub complement: bool,
}

/// Which structure a characteristic map is asserted to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Product,
    Coproduct,
}

/// The labelled characteristic maps: `None` where no map is asserted
/// (NDF, the symmetric group and generic Hecke floors, and the coproduct of
/// NDPF projectives, which is emitted as data only).
pub fn characteristic_map(kind: &TowerKind, g: GKind, side: Side) -> Option<CharMap> {
    use CharTarget::*;
    let m = |target, complement| Some(CharMap { target, complement });
    match (kind, g, side) {
        (TowerKind::Hsn, GKind::G, Side::Product) => m(Qsym(QsymBasis::M), true),
        (TowerKind::Hsn, GKind::G, Side::Coproduct) => m(Ncsf(NcsfBasis::R), true),
        (TowerKind::Hsn, GKind::K, Side::Product) => m(Qsym(QsymBasis::F), true),
        (TowerKind::Hsn, GKind::K, Side::Coproduct) => m(Ncsf(NcsfBasis::Lambda), false),
        (TowerKind::H0, GKind::G, _) => m(Qsym(QsymBasis::F), false),
        (TowerKind::H0, GKind::K, _) => m(Ncsf(NcsfBasis::R), false),
        (TowerKind::Ndpf, GKind::G, Side::Product) => m(Ncsf(NcsfBasis::G), false),
        (TowerKind::Ndpf, GKind::G, Side::Coproduct) => m(Qsym(QsymBasis::F), false),
        (TowerKind::Ndpf, GKind::K, Side::Product) => m(Ncsf(NcsfBasis::R), false),
        _ => None,
    }
}

fn index_of(label: &str, complement: bool) -> Result<Composition> {
    let c = if label == EMPTY_LABEL { Composition::empty() } else { Composition::parse(label)? };
    Ok(if complement { c.complement() } else { c })
}

fn image<B: Basis>(basis: B, map: CharMap, coeffs: &Coeffs) -> Result<SymElem<B>> {
    let mut acc = SymElem::zero(basis);
    for (l, c) in coeffs {
        acc = acc.add(&SymElem::basis_element(basis, index_of(l, map.complement)?).scale(&Q::from_i64(*c)));
    }
    Ok(acc)
}

fn tensor_image<B: Basis>(basis: B, map: CharMap, coeffs: &TensorCoeffs) -> Result<Tensor<B>> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in coeffs {
        let key = (index_of(a, map.complement)?, index_of(b, map.complement)?);
        let e = out.entry(key).or_insert_with(Q::zero);
        *e = e.add(&Q::from_i64(*c));
    }
    out.retain(|_, v: &mut Q| !v.is_zero());
    Ok(Tensor { basis, coeffs: out })
}

/// `χ` of a class, as an element of the target space.
pub fn characteristic(kind: &TowerKind, elem: &GrothendieckElem, side: Side) -> Result<CharImage> {
    let map = characteristic_map(kind, elem.kind, side).ok_or_else(|| Error::Invalid(format!("no characteristic map for {kind} {:?} {side:?}", elem.kind)))?;
    Ok(match map.target {
        CharTarget::Qsym(b) => CharImage::Qsym(image(b, map, &elem.coeffs)?),
        CharTarget::Ncsf(b) => CharImage::Ncsf(image(b, map, &elem.coeffs)?),
    })
}

/// Image of a characteristic map.
#[derive(Clone, Debug, PartialEq)]
pub enum CharImage {
    Qsym(SymElem<QsymBasis>),
    Ncsf(SymElem<NcsfBasis>),
}

/// Outcome of a homomorphism check of one table against a characteristic map.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.mismatches.is_empty()
    }
}

fn check_product<B: Basis>(basis: B, map: CharMap, table: &BTreeMap<(String, String), Coeffs>) -> Result<HomomorphismReport>
where
    SymElem<B>: Multiply,
{
    let mut rep = HomomorphismReport::default();
    for ((x, y), c) in table {
        let one = |l: &str| Coeffs::from([(l.to_string(), 1)]);
        let lhs = image(basis, map, &one(x))?.mul(&image(basis, map, &one(y))?).convert(basis);
        let rhs = image(basis, map, c)?;
        rep.checked += 1;
        if lhs != rhs {
            rep.mismatches.push(format!("{x}·{y}"));
        }
    }
    Ok(rep)
}

fn check_coproduct<B: Basis>(basis: B, map: CharMap, table: &BTreeMap<String, TensorCoeffs>) -> Result<HomomorphismReport>
where
    SymElem<B>: Multiply + crate::symfunc::HasBasis<B = B>,
{
    let mut rep = HomomorphismReport::default();
    for (x, c) in table {
        let lhs = image(basis, map, &Coeffs::from([(x.clone(), 1)]))?.coproduct().convert(basis);
        let rhs = tensor_image(basis, map, c)?;
        rep.checked += 1;
        if lhs != rhs {
            rep.mismatches.push(format!("Δ{x}"));
        }
    }
    Ok(rep)
}

/// Checks that the characteristic map of `(kind, side)` turns the computed
/// table into the product (resp. coproduct) of its target.
pub fn homomorphism_check(tables: &GrothendieckTables, kind: GKind, side: Side) -> Result<HomomorphismReport> {
    let map = characteristic_map(&tables.tower, kind, side)
        .ok_or_else(|| Error::Invalid(format!("no characteristic map for {} {kind:?} {side:?}", tables.tower)))?;
    let empty_p = BTreeMap::new();
    let empty_c = BTreeMap::new();
    let prod = tables.product.get(&kind).unwrap_or(&empty_p);
    let coprod = tables.coproduct.get(&kind).unwrap_or(&empty_c);
    match (map.target, side) {
        (CharTarget::Qsym(b), Side::Product) => check_product(b, map, prod),
        (CharTarget::Ncsf(b), Side::Product) => check_product(b, map, prod),
        (CharTarget::Qsym(b), Side::Coproduct) => check_coproduct(b, map, coprod),
        (CharTarget::Ncsf(b), Side::Coproduct) => check_coproduct(b, map, coprod),
    }
}

/// `C(P)`: composition factors of every labelled projective of floor `n`,
/// rows indexed by projectives.
pub fn cartan_map(tower: &Tower, n: usize) -> Result<(Vec<String>, Vec<Vec<i64>>)> {
    let cat = tower.floor(n)?.catalogue()?;
    let rows = cat
        .projectives
        .iter()
        .map(|p| {
            let c = simple_decomposition(cat, p)?;
            Ok(cat.labels.iter().map(|l| c.get(l).copied().unwrap_or(0)).collect())
        })
        .collect::<Result<_>>()?;
    Ok((cat.labels.clone(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_tables_are_hopf() {
        let t = Tower::build(TowerKind::H0, 3, true).unwrap();
        let tab = GrothendieckTables::compute(&t, 3, true).unwrap();
        for kind in [GKind::G, GKind::K] {
            for side in [Side::Product, Side::Coproduct] {
                let r = homomorphism_check(&tab, kind, side).unwrap();
                assert!(r.passed(), "{kind:?} {side:?} {:?}", r.mismatches);
            }
            assert!(tab.bialgebra_failures(kind).unwrap().is_empty());
        }
    }

    #[test]
    fn cartan_maps() {
        let hs = Tower::build(TowerKind::Hsn, 3, true).unwrap();
        let (labels, rows) = cartan_map(&hs, 3).unwrap();
        let i = labels.iter().position(|l| l == "1,1,1").unwrap();
        assert_eq!(rows[i], vec![1, 1, 1, 1]);
        let ndf = Tower::build(TowerKind::Ndf, 3, true).unwrap();
        let (labels, rows) = cartan_map(&ndf, 3).unwrap();
        assert_eq!(labels, vec!["3|1", "3|2", "3|3"]);
        assert_eq!(rows[1], vec![0, 1, 1]);
        let ndpf = Tower::build(TowerKind::Ndpf, 3, true).unwrap();
        let (labels, rows) = cartan_map(&ndpf, 3).unwrap();
        let i = labels.iter().position(|l| l == "2,1").unwrap();
        let mut expect = vec![0; labels.len()];
        for l in ["2,1", "1,2"] {
            expect[labels.iter().position(|x| x == l).unwrap()] = 1;
        }
        assert_eq!(rows[i], expect);
    }

    #[test]
    fn json_shape() {
        let t = Tower::build(TowerKind::Ndf, 2, true).unwrap();
        let tab = GrothendieckTables::compute(&t, 2, false).unwrap();
        let j = serde_json::to_value(&tab.to_json(GKind::K)[0]).unwrap();
        assert_eq!(j["tower"], "NDF");
        assert_eq!(j["entries"][0]["left"], "1|1");
        assert_eq!(j["entries"][0]["result"]["2|1"], 1);
    }
}
