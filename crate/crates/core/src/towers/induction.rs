//! Induction by explicit tensor quotient, restriction along the floor
//! embeddings, and decomposition against labelled catalogues.

use std::collections::BTreeMap;

use super::{Catalogue, Tower};
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec, Subspace, Q};
use crate::repr::{composition_factors, hom_dim, AlgebraModule, FinDimAlgebra};

/// `(M ⊗ N) ⊗_{A_m ⊗ A_n} A_{m+n}`.
///
/// Built as the quotient of `(M⊗N) ⊗ A_{m+n}` by `(x·b)⊗a − x⊗(ι(b)a)`;
/// `b` runs over algebra generators of `A_m ⊗ A_n` when known (the
/// relations for products then follow), otherwise over its whole basis.
pub fn induce(tower: &Tower, m: usize, mm: &AlgebraModule<Q>, n: usize, nn: &AlgebraModule<Q>) -> Result<AlgebraModule<Q>> {
    let (talg, images) = tower.embed(m, n)?;
    let target = &tower.floor(m + n)?.algebra;
    let x = mm.tensor(nn, &talg)?;
    let (dx, da) = (x.dim(), target.dim());
    let bs: Vec<usize> = match talg.generators() {
        Some(g) => g.to_vec(),
        None => (0..talg.dim()).collect(),
    };
    // left multiplication by ι(b) on A_{m+n}
    let left: Vec<SparseMatrix<Q>> = bs
        .iter()
        .map(|&b| SparseMatrix::from_rows(da, (0..da).map(|a| target.mul(&images[b], &SparseVec::unit(a))).collect()))
        .collect();
    let mut rels = Subspace::new(dx * da, false);
    for (bi, &b) in bs.iter().enumerate() {
        let xb = x.action(b);
        for i in 0..dx {
            let lhs_x = xb.row(i);
            for a in 0..da {
                let mut v = SparseVec::from_pairs(lhs_x.entries().iter().map(|(j, c)| (j * da + a, c.clone())));
                let rhs = left[bi].row(a);
                v = v.sub(&SparseVec::from_pairs(rhs.entries().iter().map(|(k, c)| (i * da + k, c.clone()))));
                if !v.is_zero() {
                    rels.insert(v)?;
                }
            }
        }
    }
    let ident = SparseMatrix::identity(dx);
    AlgebraModule::from_quotient(
        format!("({}⊗{})↑", mm.label(), nn.label()),
        target,
        &Subspace::full(dx * da),
        &rels,
        |c| ident.kron(&target.right_regular(c)),
    )
}

/// `M↓` to `A_m ⊗ A_n`.
pub fn restrict(tower: &Tower, module: &AlgebraModule<Q>, m: usize, n: usize) -> Result<(FinDimAlgebra<Q>, AlgebraModule<Q>)> {
    let (talg, images) = tower.embed(m, n)?;
    let r = module.restrict(&talg, &images)?;
    Ok((talg, r))
}

/// Labelled simples and projectives of `A_m ⊗ A_n`, from outer tensor products.
pub fn tensor_catalogue(tower: &Tower, m: usize, n: usize, talg: &FinDimAlgebra<Q>) -> Result<Catalogue> {
    let (a, b) = (tower.floor(m)?.catalogue()?, tower.floor(n)?.catalogue()?);
    let mut cat = Catalogue { labels: vec![], simples: vec![], projectives: vec![] };
    for i in 0..a.labels.len() {
        for j in 0..b.labels.len() {
            cat.labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            cat.simples.push(a.simples[i].tensor(&b.simples[j], talg)?);
            cat.projectives.push(a.projectives[i].tensor(&b.projectives[j], talg)?);
        }
    }
    Ok(cat)
}

/// Integer coefficients over labels.
pub type Coeffs = BTreeMap<String, i64>;

fn to_coeffs(labels: &[String], mult: &[u64]) -> Coeffs {
    labels.iter().zip(mult).filter(|(_, &k)| k > 0).map(|(l, &k)| (l.clone(), k as i64)).collect()
}

/// Composition factors of `module` as a map from simple labels.
pub fn simple_decomposition(cat: &Catalogue, module: &AlgebraModule<Q>) -> Result<Coeffs> {
    Ok(to_coeffs(&cat.labels, &composition_factors(module, &cat.simples)?))
}

/// Decomposition of a projective module `P ≅ ⊕ P_K^{c_K}` from its top,
/// `c_K = dim Hom(P, S_K) / dim End(S_K)`; the total dimension is checked.
pub fn projective_decomposition(cat: &Catalogue, module: &AlgebraModule<Q>) -> Result<Coeffs> {
    let mut mult = Vec::with_capacity(cat.labels.len());
    for s in &cat.simples {
        let end = hom_dim(s, s)?;
        let h = hom_dim(module, s)?;
        if h % end != 0 {
            return Err(Error::Verification(format!("top of {} is not a sum of simples", module.label())));
        }
        mult.push((h / end) as u64);
    }
    let total: usize = mult.iter().zip(&cat.projectives).map(|(k, p)| *k as usize * p.dim()).sum();
    if total != module.dim() {
        return Err(Error::Verification(format!(
            "{}: projective covers of its top have total dimension {total}, module has {}",
            module.label(),
            module.dim()
        )));
    }
    Ok(to_coeffs(&cat.labels, &mult))
}

/// Frobenius reciprocity `Hom(Ind(M⊗N), L) = Hom(M⊗N, L↓)` for one triple.
pub fn frobenius_check(tower: &Tower, m: usize, mm: &AlgebraModule<Q>, n: usize, nn: &AlgebraModule<Q>, l: &AlgebraModule<Q>) -> Result<(usize, usize)> {
    let ind = induce(tower, m, mm, n, nn)?;
    let (talg, res) = restrict(tower, l, m, n)?;
    let x = mm.tensor(nn, &talg)?;
    Ok((hom_dim(&ind, l)?, hom_dim(&x, &res)?))
}

#[cfg(test)]
mod tests {
    use super::super::TowerKind;
    use super::*;
    use crate::repr::find_isomorphism;

    #[test]
    fn ndf_small_inductions() {
        let t = Tower::build(TowerKind::Ndf, 2, true).unwrap();
        let c1 = t.floors[1].catalogue().unwrap();
        let c2 = t.floors[2].catalogue().unwrap();
        let p = &c1.projectives[0];
        let ind = induce(&t, 1, p, 1, p).unwrap();
        assert_eq!(ind.dim(), 3);
        let d = projective_decomposition(c2, &ind).unwrap();
        assert_eq!(d, Coeffs::from([("2|1".into(), 1), ("2|2".into(), 1)]));
        let s = &c1.simples[0];
        let ind = induce(&t, 1, s, 1, s).unwrap();
        assert_eq!(simple_decomposition(c2, &ind).unwrap().values().sum::<i64>(), ind.dim() as i64);
    }

    #[test]
    fn hs_regular_from_points() {
        let t = Tower::build(TowerKind::Hsn, 2, true).unwrap();
        let p = &t.floors[1].catalogue().unwrap().projectives[0];
        let ind = induce(&t, 1, p, 1, p).unwrap();
        let reg = AlgebraModule::regular(&t.floors[2].algebra);
        assert!(find_isomorphism(&ind, &reg).unwrap().is_some());
    }

    #[test]
    fn trivial_split_is_identity() {
        let t = Tower::build(TowerKind::H0, 3, true).unwrap();
        let cat = t.floors[3].catalogue().unwrap();
        for p in &cat.projectives {
            let (_, r) = restrict(&t, p, 0, 3).unwrap();
            assert_eq!(r.dim(), p.dim());
            let one = &t.floors[0].catalogue().unwrap().projectives[0];
            let ind = induce(&t, 0, one, 3, p).unwrap();
            assert!(find_isomorphism(&ind, p).unwrap().is_some());
        }
    }

    #[test]
    fn frobenius_small() {
        let t = Tower::build(TowerKind::Ndf, 3, true).unwrap();
        let c1 = t.floors[1].catalogue().unwrap().clone();
        let c2 = t.floors[2].catalogue().unwrap().clone();
        for l in &t.floors[3].catalogue().unwrap().simples {
            for p in &c2.projectives {
                let (a, b) = frobenius_check(&t, 1, &c1.projectives[0], 2, p, l).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
