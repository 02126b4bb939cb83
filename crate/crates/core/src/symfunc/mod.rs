//! Quasi-symmetric functions (QSym) and noncommutative symmetric functions
//! (NCSF) as composition-indexed coefficient spaces with exact rational
//! coefficients.

mod ops;
mod realize;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::fmt::{self, Debug, Display};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{grassmann_poset, Composition, DescentSet};
use crate::error::{Error, Result};
use crate::exactla::{inverse, Field, SparseMatrix, SparseVec, Q};

pub use ops::{commutative_image, pairing, pairing_tensor, HasBasis, Multiply, Tensor};
pub use realize::{monomial_realization, Polynomial};

pub type Coeffs = BTreeMap<Composition, Q>;

pub(crate) fn add_coeff(acc: &mut Coeffs, k: Composition, c: &Q) {
    let e = acc.entry(k.clone()).or_insert_with(Q::zero);
    *e = e.add(c);
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// A basis tag of one of the two spaces. Each space has a canonical basis
/// (M for QSym, S for NCSF) in which products and coproducts are computed.
pub trait Basis: Copy + Eq + Ord + Debug + Display + Send + Sync + 'static {
    const CANONICAL: Self;
    fn all() -> &'static [Self];
    fn parse(s: &str) -> Option<Self>;
    /// Expansion of the basis element `I` in the canonical basis.
    fn to_canonical(self, i: &Composition) -> Coeffs;
}

/// Bases of QSym. `X` is the dual basis of the elementary basis `Λ` of NCSF.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QsymBasis {
    M,
    F,
    X,
}

/// Bases of NCSF.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NcsfBasis {
    S,
    Lambda,
    R,
    G,
}

impl Display for QsymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Debug::fmt(self, f)
    }
}

impl Display for NcsfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Debug::fmt(self, f)
    }
}

/// Compositions of `n` finer than `i` (including `i`).
pub fn finer(i: &Composition) -> Vec<Composition> {
    let d = i.descent_set();
    Composition::all(i.size()).into_iter().filter(|j| d.set().is_subset(j.descent_set().set())).collect()
}

/// Compositions of `n` coarser than `i` (including `i`).
pub fn coarser(i: &Composition) -> Vec<Composition> {
    let d = i.descent_set();
    Composition::all(i.size()).into_iter().filter(|j| j.descent_set().set().is_subset(d.set())).collect()
}

fn sign(k: usize) -> Q {
    Q::from_i64(if k % 2 == 0 { 1 } else { -1 })
}

impl Basis for QsymBasis {
    const CANONICAL: Self = QsymBasis::M;

    fn all() -> &'static [Self] {
        &[QsymBasis::M, QsymBasis::F, QsymBasis::X]
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "M" => Some(QsymBasis::M),
            "F" => Some(QsymBasis::F),
            "X" => Some(QsymBasis::X),
            _ => None,
        }
    }

    fn to_canonical(self, i: &Composition) -> Coeffs {
        match self {
            QsymBasis::M => [(i.clone(), Q::one())].into_iter().collect(),
            QsymBasis::F => finer(i).into_iter().map(|j| (j, Q::one())).collect(),
            QsymBasis::X => {
                // ⟨Λ^J, X_I⟩ = δ: the X matrix (rows I, M-columns) is the
                // inverse transpose of the Λ matrix (rows J, S-columns).
                let comps = Composition::all(i.size());
                let inv = inverse_expansion(NcsfBasis::Lambda, i.size());
                let row = comps.iter().position(|c| c == i).unwrap();
                comps.iter().enumerate().filter_map(|(k, c)| {
                    let x = inv.get(k, row);
                    (!x.is_zero()).then(|| (c.clone(), x))
                }).collect()
            }
        }
    }
}

impl Basis for NcsfBasis {
    const CANONICAL: Self = NcsfBasis::S;

    fn all() -> &'static [Self] {
        &[NcsfBasis::S, NcsfBasis::Lambda, NcsfBasis::R, NcsfBasis::G]
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "S" => Some(NcsfBasis::S),
            "Lambda" | "L" => Some(NcsfBasis::Lambda),
            "R" => Some(NcsfBasis::R),
            "G" => Some(NcsfBasis::G),
            _ => None,
        }
    }

    fn to_canonical(self, i: &Composition) -> Coeffs {
        match self {
            NcsfBasis::S => [(i.clone(), Q::one())].into_iter().collect(),
            NcsfBasis::R => coarser(i).into_iter().map(|j| {
                let s = sign(i.len() - j.len());
                (j, s)
            }).collect(),
            NcsfBasis::Lambda => {
                // Λ_n = Σ_{K ⊨ n} (−1)^{n−ℓ(K)} S^K, and Λ^I = Λ_{i_1}⋯Λ_{i_p}
                let mut acc: Coeffs = [(Composition::empty(), Q::one())].into_iter().collect();
                for &p in i.parts() {
                    let mut next = Coeffs::new();
                    for (a, x) in &acc {
                        for k in Composition::all(p) {
                            add_coeff(&mut next, a.concat(&k), &x.mul(&sign(p - k.len())));
                        }
                    }
                    acc = next;
                }
                acc
            }
            NcsfBasis::G => {
                let n = i.size();
                let d = i.descent_set().set();
                let poset = grassmann_poset(n.saturating_sub(1), d.len());
                let top = poset.index_of(&d).unwrap();
                let mut acc = Coeffs::new();
                for (k, s) in poset.elements().iter().enumerate() {
                    let mu = poset.moebius(k, top);
                    if mu != 0 {
                        let j = Composition::from_descent_set(&DescentSet::new(n, *s).unwrap());
                        for (c, x) in NcsfBasis::R.to_canonical(&j) {
                            add_coeff(&mut acc, c, &x.mul(&Q::from_i64(mu)));
                        }
                    }
                }
                acc
            }
        }
    }
}

/// Rows = basis elements of degree `n`, columns = canonical basis, both in
/// [`Composition::all`] order.
pub fn expansion_matrix<B: Basis>(b: B, n: usize) -> SparseMatrix<Q> {
    let comps = Composition::all(n);
    let index: BTreeMap<&Composition, usize> = comps.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let rows = comps
        .iter()
        .map(|i| SparseVec::from_pairs(b.to_canonical(i).into_iter().map(|(c, x)| (index[&c], x))))
        .collect();
    SparseMatrix::from_rows(comps.len(), rows)
}

/// Inverse of [`expansion_matrix`], cached per (basis, degree).
pub fn inverse_expansion<B: Basis>(b: B, n: usize) -> Arc<SparseMatrix<Q>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, usize), Arc<SparseMatrix<Q>>>>> = OnceLock::new();
    let key = (b.to_string(), n);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&key) {
        return m.clone();
    }
    let m = Arc::new(inverse(&expansion_matrix(b, n)).expect("basis change is invertible"));
    cache.lock().unwrap().insert(key, m.clone());
    m
}

/// A finitely supported element in a named basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymElem<B> {
    basis: B,
    coeffs: Coeffs,
}

pub type QsymElem = SymElem<QsymBasis>;
pub type NcsfElem = SymElem<NcsfBasis>;

impl<B: Basis> SymElem<B> {
    pub fn zero(basis: B) -> Self {
        SymElem { basis, coeffs: Coeffs::new() }
    }

    pub fn basis_element(basis: B, i: Composition) -> Self {
        SymElem { basis, coeffs: [(i, Q::one())].into_iter().collect() }
    }

    /// Shorthand: `SymElem::of(R, &[2, 1])`.
    pub fn of(basis: B, parts: &[usize]) -> Self {
        Self::basis_element(basis, Composition::new(parts.to_vec()).expect("positive parts"))
    }

    pub fn from_coeffs(basis: B, coeffs: impl IntoIterator<Item = (Composition, Q)>) -> Self {
        let mut acc = Coeffs::new();
        for (k, c) in coeffs {
            add_coeff(&mut acc, k, &c);
        }
        SymElem { basis, coeffs: acc }
    }

    pub fn basis(&self) -> B {
        self.basis
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn coeff(&self, i: &Composition) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coeffs.keys().map(|c| c.size()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.convert(self.basis);
        let mut acc = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            add_coeff(&mut acc, k.clone(), c);
        }
        SymElem { basis: self.basis, coeffs: acc }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_coeffs(self.basis, self.coeffs.iter().map(|(k, x)| (k.clone(), x.mul(c))))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Q::from_i64(-1)))
    }

    /// Exact change of basis.
    pub fn convert(&self, target: B) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut canon = Coeffs::new();
        for (i, c) in &self.coeffs {
            for (k, x) in self.basis.to_canonical(i) {
                add_coeff(&mut canon, k, &x.mul(c));
            }
        }
        if target == B::CANONICAL {
            return SymElem { basis: target, coeffs: canon };
        }
        let mut out = Coeffs::new();
        for n in canon.keys().map(|c| c.size()).collect::<BTreeSet<_>>() {
            let comps = Composition::all(n);
            let inv = inverse_expansion(target, n);
            // row vector of canonical coefficients times the inverse expansion
            let v = SparseVec::from_pairs(
                comps.iter().enumerate().filter_map(|(k, c)| canon.get(c).map(|x| (k, x.clone()))),
            );
            for (k, x) in inv.apply(&v).entries() {
                add_coeff(&mut out, comps[*k].clone(), x);
            }
        }
        SymElem { basis: target, coeffs: out }
    }

    /// `{"basis":"R","coeffs":{"2,1":"1"}}`.
    pub fn to_json(&self) -> SymElemJson {
        SymElemJson {
            basis: self.basis.to_string(),
            coeffs: self.coeffs.iter().map(|(k, c)| (k.label(), c.to_exact_string())).collect(),
        }
    }

    pub fn from_json(j: &SymElemJson) -> Result<Self> {
        let basis = B::parse(&j.basis).ok_or_else(|| Error::UnknownBasis(j.basis.clone()))?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|(k, c)| {
                let q = Q::parse(c).ok_or_else(|| Error::Invalid(format!("coefficient {c}")))?;
                Ok((Composition::parse(k)?, q))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(basis, coeffs))
    }
}

impl<B: Basis> Debug for SymElem<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl<B: Basis> Display for SymElem<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("{c}*{}[{}]", self.basis, k.label())).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// JSON form of an element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymElemJson {
    pub basis: String,
    pub coeffs: BTreeMap<String, String>,
}

/// Parses a basis name of either space; errors on unknown names.
pub fn parse_basis<B: Basis>(s: &str) -> Result<B> {
    B::parse(s).ok_or_else(|| Error::UnknownBasis(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use NcsfBasis::*;
    use QsymBasis::{F, M, X};

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn ribbon_expansions() {
        assert_eq!(NcsfElem::of(Lambda, &[2]).convert(R), NcsfElem::of(R, &[1, 1]));
        let s11 = NcsfElem::of(S, &[1, 1]).convert(R);
        assert_eq!(s11, NcsfElem::of(R, &[1, 1]).add(&NcsfElem::of(R, &[2])));
        assert_eq!(NcsfElem::of(G, &[3]).convert(R), NcsfElem::of(R, &[3]));
        let g21 = NcsfElem::of(G, &[2, 1]).convert(R);
        assert_eq!(g21, NcsfElem::of(R, &[2, 1]).sub(&NcsfElem::of(R, &[1, 2])));
    }

    #[test]
    fn lambda_is_sum_of_complemented_ribbons() {
        // Λ^I = Σ_{J coarser than I} R_{J^c}
        for n in 1..=5 {
            for i in Composition::all(n) {
                let expect = NcsfElem::from_coeffs(R, coarser(&i).into_iter().map(|j| (j.complement(), Q::one())));
                assert_eq!(NcsfElem::basis_element(Lambda, i.clone()).convert(R), expect, "{i}");
            }
        }
    }

    #[test]
    fn round_trips() {
        for n in 1..=6 {
            for i in Composition::all(n) {
                for &b in QsymBasis::all() {
                    for &t in QsymBasis::all() {
                        let x = QsymElem::basis_element(b, i.clone());
                        assert_eq!(x.convert(t).convert(b), x);
                    }
                }
                for &b in NcsfBasis::all() {
                    let x = NcsfElem::basis_element(b, i.clone());
                    assert_eq!(x.convert(R).convert(b), x);
                }
            }
        }
        // inverse triangle with signs
        for i in Composition::all(4) {
            let m = QsymElem::from_coeffs(F, finer(&i).into_iter().map(|j| {
                let s = sign(j.len() - i.len());
                (j, s)
            }));
            assert_eq!(m.convert(M), QsymElem::basis_element(M, i));
        }
        let _ = X;
    }

    #[test]
    fn json_form() {
        let x = NcsfElem::of(R, &[2, 1]).sub(&NcsfElem::of(R, &[1, 2]));
        let s = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(s, r#"{"basis":"R","coeffs":{"1,2":"-1","2,1":"1"}}"#);
        let back: SymElemJson = serde_json::from_str(&s).unwrap();
        assert_eq!(NcsfElem::from_json(&back).unwrap(), x);
        let bad = SymElemJson { basis: "Q".into(), coeffs: BTreeMap::new() };
        assert!(matches!(NcsfElem::from_json(&bad), Err(Error::UnknownBasis(_))));
        let _ = comp(&[1]);
    }
}
