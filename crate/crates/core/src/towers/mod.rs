//! Towers of algebras `A_0 = ℂ ⊂ A_1 ⊂ ⋯` with embeddings
//! `A_m ⊗ A_n → A_{m+n}`, induction and restriction of modules, and the
//! Grothendieck tables read through characteristic maps.

mod checks;
mod grothendieck;
mod induction;

pub use checks::*;
pub use grothendieck::*;
pub use induction::*;

use std::collections::HashMap;
use std::fmt;

use crate::combinatorics::{Composition, Permutation};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec, Q};
use crate::hsn::{hecke0_algebra, hecke0_simple, module_p_i, simple_s_i, HsnAlgebra, PermBasis};
use crate::ndf::{monoid_algebra, ndf_modules, ndpf_modules, NdFunction};
use crate::repr::{hom_dim, is_indecomposable, AlgebraModule, FinDimAlgebra};

/// The towers handled here.
#[derive(Clone, Debug, PartialEq)]
pub enum TowerKind {
    Hsn,
    /// Hecke algebras at a fixed rational `q`.
    Hecke(Q),
    H0,
    SymGrp,
    Ndf,
    Ndpf,
}

impl TowerKind {
    pub fn name(&self) -> String {
        match self {
            TowerKind::Hsn => "HS".into(),
            TowerKind::Hecke(q) => format!("H(q={q})"),
            TowerKind::H0 => "H0".into(),
            TowerKind::SymGrp => "Sym".into(),
            TowerKind::Ndf => "NDF".into(),
            TowerKind::Ndpf => "NDPF".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "hs" | "hsn" => TowerKind::Hsn,
            "h0" => TowerKind::H0,
            "sym" | "symgrp" => TowerKind::SymGrp,
            "ndf" => TowerKind::Ndf,
            "ndpf" => TowerKind::Ndpf,
            other => match other.strip_prefix("hq:").and_then(Q::parse) {
                Some(q) => TowerKind::Hecke(q),
                None => return Err(Error::Invalid(format!("unknown tower {s}"))),
            },
        })
    }
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Basis key of a floor; embeddings concatenate keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Key {
    Empty,
    Perm(Permutation),
    /// `σπ_τ` of `HS_n`.
    Pair(Permutation, Permutation),
    Fun(NdFunction),
}

impl Key {
    pub fn concat(&self, other: &Key) -> Result<Key> {
        Ok(match (self, other) {
            (Key::Empty, k) | (k, Key::Empty) => k.clone(),
            (Key::Perm(a), Key::Perm(b)) => Key::Perm(a.direct_sum(b)),
            (Key::Pair(s, t), Key::Pair(s2, t2)) => Key::Pair(s.direct_sum(s2), t.direct_sum(t2)),
            (Key::Fun(f), Key::Fun(g)) => Key::Fun(f.direct_sum(g)),
            _ => return Err(Error::Invalid("keys of different towers".into())),
        })
    }
}

/// Labelled simples and indecomposable projectives of one floor; `P[i]`
/// is the projective cover of `S[i]`.
#[derive(Clone, Debug)]
pub struct Catalogue {
    pub labels: Vec<String>,
    pub simples: Vec<AlgebraModule<Q>>,
    pub projectives: Vec<AlgebraModule<Q>>,
}

impl Catalogue {
    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn trivial(alg: &FinDimAlgebra<Q>) -> Result<Self> {
        let m = AlgebraModule::regular(alg).with_label("1");
        Ok(Catalogue { labels: vec![EMPTY_LABEL.into()], simples: vec![m.clone()], projectives: vec![m] })
    }
}

/// Label of the unit module of the degree-zero floor.
pub const EMPTY_LABEL: &str = "()";

/// Comma-joined parts, the label of composition-indexed modules.
pub fn composition_label(c: &Composition) -> String {
    if c.is_empty() {
        EMPTY_LABEL.into()
    } else {
        c.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `n|k`, the label of the `NDF_n` modules `P^k`, `S^k`.
pub fn ndf_label(n: usize, k: usize) -> String {
    if n == 0 {
        EMPTY_LABEL.into()
    } else {
        format!("{n}|{k}")
    }
}

/// One floor `A_n` of a tower.
#[derive(Clone, Debug)]
pub struct Floor {
    pub n: usize,
    pub algebra: FinDimAlgebra<Q>,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    pub catalogue: Option<Catalogue>,
}

impl Floor {
    fn new(n: usize, algebra: FinDimAlgebra<Q>, keys: Vec<Key>, catalogue: Option<Catalogue>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Floor { n, algebra, keys, index, catalogue }
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn catalogue(&self) -> Result<&Catalogue> {
        self.catalogue.as_ref().ok_or_else(|| Error::Invalid(format!("no module catalogue for floor {}", self.n)))
    }
}

/// `T_u T_v` in the Iwahori-Hecke algebra: `T_w T_i = T_{ws_i}` when the
/// length goes up, `(q−1)T_w + qT_{ws_i}` otherwise.
pub fn hecke_algebra<F: Field>(n: usize, q: &F) -> FinDimAlgebra<F> {
    let pb = PermBasis::new(n);
    let qm1 = q.sub(&F::one());
    let right_ti = |x: &SparseVec<F>, i: usize| {
        let mut out = SparseVec::zero();
        for (w, c) in x.entries() {
            let w = pb.perm(*w);
            let ws = w.swap_positions(i);
            if ws.length() > w.length() {
                out = out.axpy(c, &SparseVec::unit(pb.index(&ws)));
            } else {
                out = out.axpy(&c.mul(&qm1), &SparseVec::unit(pb.index(w)));
                out = out.axpy(&c.mul(q), &SparseVec::unit(pb.index(&ws)));
            }
        }
        out
    };
    let table = (0..pb.len())
        .map(|u| {
            pb.perms()
                .iter()
                .map(|v| v.reduced_word().into_iter().fold(SparseVec::unit(u), |x, i| right_ti(&x, i)))
                .collect()
        })
        .collect();
    let gens = (1..n).map(|i| pb.index(&Permutation::transposition(n, i))).collect();
    let labels = pb.perms().iter().map(|w| format!("T[{}]", w.label())).collect();
    FinDimAlgebra::from_table(format!("H{n}(q={q})"), labels, table, SparseVec::unit(0), Some(gens)).expect("Hecke algebra is unital")
}

fn group_algebra(n: usize) -> FinDimAlgebra<Q> {
    let pb = PermBasis::new(n);
    let mul: Vec<Vec<usize>> = pb.perms().iter().map(|u| pb.perms().iter().map(|v| pb.index(&u.compose(v))).collect()).collect();
    let gens = (1..n).map(|i| pb.index(&Permutation::transposition(n, i))).collect();
    FinDimAlgebra::from_monoid(format!("QS{n}"), pb.labels(), &mul, 0, Some(gens)).expect("group algebra is unital")
}

/// Indecomposable projectives of `H_n(0)`: the right ideals generated by
/// `π_{w_0(D)} π̄_{w_0(D^c)}` (with `π̄_i = 1 − π_i`), labelled by their top.
pub fn hecke0_projectives(alg: &FinDimAlgebra<Q>, n: usize, simples: &[AlgebraModule<Q>], comps: &[Composition]) -> Result<Vec<AlgebraModule<Q>>> {
    let pb = PermBasis::new(n);
    let regular = AlgebraModule::regular(alg);
    let pi = |i: usize| SparseVec::unit(pb.index(&Permutation::transposition(n, i)));
    let one = alg.unit().clone();
    let longest_word = |gens: &[usize]| -> Vec<usize> {
        // reduced word of the longest element of the parabolic subgroup
        let mut w = Permutation::identity(n);
        loop {
            match gens.iter().find(|&&i| w.swap_positions(i).length() > w.length()) {
                Some(&i) => w = w.swap_positions(i),
                None => return w.reduced_word(),
            }
        }
    };
    let mut out: Vec<Option<AlgebraModule<Q>>> = vec![None; comps.len()];
    for c in comps {
        let d = c.descent_set();
        let inside: Vec<usize> = (1..n).filter(|&i| d.contains(i)).collect();
        let outside: Vec<usize> = (1..n).filter(|&i| !d.contains(i)).collect();
        let mut x = one.clone();
        for i in longest_word(&inside) {
            x = alg.mul(&x, &pi(i));
        }
        for i in longest_word(&outside) {
            x = alg.mul(&x, &one.sub(&pi(i)));
        }
        let span = regular.generated_subspace(&[x]);
        let module = regular.submodule(alg, "P0", &span)?;
        let tops: Vec<usize> = simples.iter().map(|s| hom_dim(&module, s)).collect::<Result<_>>()?;
        let top = match tops.iter().enumerate().filter(|(_, &t)| t > 0).collect::<Vec<_>>()[..] {
            [(k, 1)] => k,
            _ => return Err(Error::Verification(format!("generator for {c} has tops {tops:?}"))),
        };
        if !is_indecomposable(&module)? {
            return Err(Error::Verification(format!("H{n}(0) ideal for {c} is decomposable")));
        }
        out[top] = Some(module.with_label(format!("P0_{}", comps[top])));
    }
    let total: usize = out.iter().flatten().map(|m| m.dim()).sum();
    if out.iter().any(|m| m.is_none()) || total != alg.dim() {
        return Err(Error::Verification(format!("H{n}(0) projectives incomplete (total dim {total})")));
    }
    Ok(out.into_iter().flatten().collect())
}

fn comp_catalogue(comps: &[Composition], simples: Vec<AlgebraModule<Q>>, projectives: Vec<AlgebraModule<Q>>) -> Catalogue {
    Catalogue { labels: comps.iter().map(composition_label).collect(), simples, projectives }
}

fn build_floor(kind: &TowerKind, n: usize, with_catalogue: bool) -> Result<Floor> {
    if n == 0 {
        let alg = FinDimAlgebra::trivial(format!("{}0", kind.name()));
        let cat = Catalogue::trivial(&alg)?;
        return Ok(Floor::new(0, alg, vec![Key::Empty], Some(cat)));
    }
    let pb = PermBasis::new(n);
    let perm_keys = || pb.perms().iter().map(|p| Key::Perm(p.clone())).collect::<Vec<_>>();
    let comps = Composition::all(n);
    Ok(match kind {
        TowerKind::Hsn => {
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let alg = hs.to_algebra()?;
            let keys = hs.pairs().iter().map(|(s, t)| Key::Pair(s.clone(), t.clone())).collect();
            let cat = if with_catalogue {
                let simples = comps.iter().map(|c| simple_s_i(&hs, &alg, c)).collect::<Result<Vec<_>>>()?;
                let projectives = comps.iter().map(|c| module_p_i::<Q>(&pb, c)?.module(&hs, &alg)).collect::<Result<Vec<_>>>()?;
                Some(comp_catalogue(&comps, simples, projectives))
            } else {
                None
            };
            Floor::new(n, alg, keys, cat)
        }
        TowerKind::Hecke(q) => Floor::new(n, hecke_algebra(n, q), perm_keys(), None),
        TowerKind::SymGrp => Floor::new(n, group_algebra(n), perm_keys(), None),
        TowerKind::H0 => {
            let alg = hecke0_algebra::<Q>(n);
            let cat = if with_catalogue {
                let simples = comps.iter().map(|c| hecke0_simple(&alg, n, c)).collect::<Result<Vec<_>>>()?;
                let projectives = hecke0_projectives(&alg, n, &simples, &comps)?;
                Some(comp_catalogue(&comps, simples, projectives))
            } else {
                None
            };
            Floor::new(n, alg, perm_keys(), cat)
        }
        TowerKind::Ndf => {
            if with_catalogue {
                let m = ndf_modules(n)?;
                let keys = m.elements.iter().map(|f| Key::Fun(f.clone())).collect();
                let cat = Catalogue { labels: (1..=n).map(|k| ndf_label(n, k)).collect(), simples: m.simples, projectives: m.projectives };
                Floor::new(n, m.algebra, keys, Some(cat))
            } else {
                let (elems, alg) = monoid_algebra::<Q>(n, false);
                Floor::new(n, alg, elems.into_iter().map(Key::Fun).collect(), None)
            }
        }
        TowerKind::Ndpf => {
            if with_catalogue {
                let m = ndpf_modules(n)?;
                let keys = m.elements.iter().map(|f| Key::Fun(f.clone())).collect();
                let projectives = m.projectives.into_iter().map(|p| p.module).collect();
                let cat = comp_catalogue(&m.compositions, m.simples, projectives);
                Floor::new(n, m.algebra, keys, Some(cat))
            } else {
                let (elems, alg) = monoid_algebra::<Q>(n, true);
                Floor::new(n, alg, elems.into_iter().map(Key::Fun).collect(), None)
            }
        }
    })
}

/// Floors `A_0..A_N` of a tower.
#[derive(Clone, Debug)]
pub struct Tower {
    pub kind: TowerKind,
    pub floors: Vec<Floor>,
}

impl Tower {
    /// Builds floors `0..=nmax`, with module catalogues where available.
    pub fn build(kind: TowerKind, nmax: usize, with_catalogue: bool) -> Result<Self> {
        let floors = (0..=nmax).map(|n| build_floor(&kind, n, with_catalogue)).collect::<Result<_>>()?;
        Ok(Tower { kind, floors })
    }

    pub fn nmax(&self) -> usize {
        self.floors.len() - 1
    }

    pub fn floor(&self, n: usize) -> Result<&Floor> {
        self.floors.get(n).ok_or_else(|| Error::OutOfRange(format!("floor {n} of {} not built", self.kind)))
    }

    /// `A_m ⊗ A_n` and the images of its basis in `A_{m+n}`.
    pub fn embed(&self, m: usize, n: usize) -> Result<(FinDimAlgebra<Q>, Vec<SparseVec<Q>>)> {
        let (a, b, c) = (self.floor(m)?, self.floor(n)?, self.floor(m + n)?);
        let tensor = a.algebra.tensor(&b.algebra);
        let mut images = Vec::with_capacity(tensor.dim());
        for x in &a.keys {
            for y in &b.keys {
                let k = x.concat(y)?;
                let i = c.index.get(&k).ok_or_else(|| Error::Verification(format!("{:?} is not a basis key of floor {}", k, m + n)))?;
                images.push(SparseVec::unit(*i));
            }
        }
        Ok((tensor, images))
    }
}

/// Unit preservation and multiplicativity of `A_m ⊗ A_n → A_{m+n}`
/// (on all basis pairs when small, otherwise generators against the basis).
pub fn embedding_check(tower: &Tower, m: usize, n: usize) -> Result<bool> {
    let (t, img) = tower.embed(m, n)?;
    let target = &tower.floor(m + n)?.algebra;
    let apply = |x: &SparseVec<Q>| crate::exactla::combine(x, &img);
    if apply(t.unit()) != *target.unit() {
        return Ok(false);
    }
    let left: Vec<usize> = if t.dim() <= 64 { (0..t.dim()).collect() } else { t.test_elements() };
    for &x in &left {
        for y in 0..t.dim() {
            if apply(t.basis_product(x, y)) != target.mul(&img[x], &img[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `emb(l, m+n) ∘ (1 ⊗ emb(m, n)) = emb(l+m, n) ∘ (emb(l, m) ⊗ 1)` on basis keys.
pub fn embedding_associativity(tower: &Tower, l: usize, m: usize, n: usize) -> Result<bool> {
    let (a, b, c) = (tower.floor(l)?, tower.floor(m)?, tower.floor(n)?);
    for x in &a.keys {
        for y in &b.keys {
            for z in &c.keys {
                if x.concat(&y.concat(z)?)? != x.concat(y)?.concat(z)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hecke_specializations() {
        let h1 = hecke_algebra::<Q>(3, &Q::one());
        assert!(h1.check_associative().is_ok());
        let h2 = hecke_algebra::<Q>(3, &Q::from_i64(2));
        assert!(h2.check_associative().is_ok());
        // q = 0 gives H_n(0) with T_i = π_i − 1 relations: T_i^2 = −T_i
        let h0 = hecke_algebra::<Q>(3, &Q::zero());
        let t = SparseVec::unit(1);
        assert_eq!(h0.mul(&t, &t), t.scale(&Q::one().neg()));
    }

    #[test]
    fn embeddings_are_morphisms() {
        for kind in [TowerKind::H0, TowerKind::SymGrp, TowerKind::Hecke(Q::from_i64(3)), TowerKind::Ndf, TowerKind::Ndpf] {
            let t = Tower::build(kind.clone(), 4, false).unwrap();
            for m in 0..=4 {
                for n in 0..=4 - m {
                    assert!(embedding_check(&t, m, n).unwrap(), "{kind} {m}+{n}");
                }
            }
            assert!(embedding_associativity(&t, 1, 1, 2).unwrap());
        }
        let hs = Tower::build(TowerKind::Hsn, 3, false).unwrap();
        for (m, n) in [(1, 1), (1, 2), (2, 1), (0, 3)] {
            assert!(embedding_check(&hs, m, n).unwrap());
        }
    }

    #[test]
    fn h0_projectives() {
        for n in 1..=4 {
            let t = Tower::build(TowerKind::H0, n, true).unwrap();
            let cat = t.floors[n].catalogue().unwrap();
            for (c, p) in Composition::all(n).iter().zip(&cat.projectives) {
                assert_eq!(p.dim(), crate::hsn::hecke0_projective_dim(c), "{c}");
            }
        }
    }
}
