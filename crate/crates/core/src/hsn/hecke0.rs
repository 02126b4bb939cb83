use crate::combinatorics::{Composition, Permutation};
use crate::error::Result;
use crate::exactla::{Field, SparseMatrix, SparseVec, Q};
use crate::repr::{composition_factors, hom_dim, is_indecomposable, AlgebraModule, FinDimAlgebra};
use crate::symfunc::{commutative_image, NcsfBasis, NcsfElem, QsymBasis};

use super::basis::HsnAlgebra;
use super::modules::{module_p_i, simple_s_i};
use super::operators::PermBasis;

/// `π_u · π_v` in the 0-Hecke monoid: apply the letters of `v` to `u`,
/// absorbing letters that would shorten it.
pub fn hecke0_product(u: &Permutation, v: &Permutation) -> Permutation {
    let mut w = u.clone();
    for i in v.reduced_word() {
        let next = w.swap_positions(i);
        if next.length() > w.length() {
            w = next;
        }
    }
    w
}

/// `H_n(0)` as the monoid algebra of `{π_w}`, basis ordered like [`PermBasis`].
pub fn hecke0_algebra<F: Field>(n: usize) -> FinDimAlgebra<F> {
    let pb = PermBasis::new(n);
    let mul: Vec<Vec<usize>> = pb
        .perms()
        .iter()
        .map(|u| pb.perms().iter().map(|v| pb.index(&hecke0_product(u, v))).collect())
        .collect();
    let gens = (1..n).map(|i| pb.index(&Permutation::transposition(n, i))).collect();
    let labels = pb.perms().iter().map(|w| format!("pi[{}]", w.label())).collect();
    FinDimAlgebra::from_monoid(format!("H{n}(0)"), labels, &mul, 0, Some(gens)).expect("monoid algebra is unital")
}

/// Images of `π_w` in the `σπ_τ` basis of `HS_n` (they are the members with `σ = id`).
pub fn hecke0_embedding<F: Field>(hs: &HsnAlgebra<F>) -> Vec<SparseVec<F>> {
    let id = Permutation::identity(hs.n());
    hs.perm_basis().perms().iter().map(|w| SparseVec::unit(hs.index_of(&id, w).unwrap())).collect()
}

/// One-dimensional `H_n(0)` simple: `π_i ↦ 0` if `i ∈ Des(K)`, else `1`.
pub fn hecke0_simple<F: Field>(alg: &FinDimAlgebra<F>, n: usize, k: &Composition) -> Result<AlgebraModule<F>> {
    let des = k.descent_set();
    let pb = PermBasis::new(n);
    let acts = pb
        .perms()
        .iter()
        .map(|w| {
            let v = if w.reduced_word().iter().any(|&i| des.contains(i)) { F::zero() } else { F::one() };
            SparseMatrix::from_dense(&[vec![v]])
        })
        .collect();
    AlgebraModule::new(format!("S0_{k}"), alg, 1, acts)
}

/// `#{σ : Des(σ) = Des(K)}`, the dimension of the `H_n(0)` projective cover of `S_K`.
pub fn hecke0_projective_dim(k: &Composition) -> usize {
    let des = k.descent_set().set();
    Permutation::all(k.size()).iter().filter(|s| s.descents().set() == des).count()
}

/// Outcome for one composition of a restriction-to-`H_n(0)` check.
#[derive(Clone, Debug)]
pub struct RestrictionCheck {
    pub composition: Composition,
    pub passed: bool,
    pub detail: String,
}

fn f_coeffs(x: &NcsfElem, comps: &[Composition]) -> Vec<u64> {
    let img = commutative_image(x).convert(QsymBasis::F);
    comps.iter().map(|c| img.coeff(c).to_i64().unwrap_or(-1) as u64).collect()
}

/// `P_I` restricted to `H_n(0)`: composition factors equal the F-expansion
/// of the commutative image of `Λ^I`, tops equal its R-coefficients, and the
/// projective covers of the tops fill the whole dimension (so the
/// restriction is projective).
pub fn hecke0_projective_check(hs: &HsnAlgebra<Q>, alg: &FinDimAlgebra<Q>) -> Result<Vec<RestrictionCheck>> {
    let n = hs.n();
    let h0 = hecke0_algebra::<Q>(n);
    let emb = hecke0_embedding(hs);
    let comps = Composition::all(n);
    let simples: Vec<AlgebraModule<Q>> = comps.iter().map(|k| hecke0_simple(&h0, n, k)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in &comps {
        let m = module_p_i::<Q>(hs.perm_basis(), i)?.module(hs, alg)?.restrict(&h0, &emb)?;
        let lam = NcsfElem::basis_element(NcsfBasis::Lambda, i.clone());
        let factors = composition_factors(&m, &simples)?;
        let expect_factors = f_coeffs(&lam, &comps);
        let tops: Vec<u64> = simples.iter().map(|s| hom_dim(&m, s).map(|d| d as u64)).collect::<Result<_>>()?;
        let r = lam.convert(NcsfBasis::R);
        let expect_tops: Vec<u64> = comps.iter().map(|c| r.coeff(c).to_i64().unwrap_or(-1) as u64).collect();
        let cover: usize = tops.iter().zip(&comps).map(|(t, k)| *t as usize * hecke0_projective_dim(k)).sum();
        let passed = factors == expect_factors && tops == expect_tops && cover == m.dim();
        out.push(RestrictionCheck {
            composition: i.clone(),
            passed,
            detail: format!("factors {factors:?} (expected {expect_factors:?}), tops {tops:?} (expected {expect_tops:?}), cover dim {cover} vs {}", m.dim()),
        });
    }
    Ok(out)
}

/// `S_I` restricted to `H_n(0)` is the indecomposable projective with top
/// `S_{I^c}`: single top, indecomposable, dimension of the cover, and
/// composition factors given by the commutative image of `R_{I^c}`.
pub fn hecke0_simple_restriction_check(hs: &HsnAlgebra<Q>, alg: &FinDimAlgebra<Q>) -> Result<Vec<RestrictionCheck>> {
    let n = hs.n();
    let h0 = hecke0_algebra::<Q>(n);
    let emb = hecke0_embedding(hs);
    let comps = Composition::all(n);
    let simples: Vec<AlgebraModule<Q>> = comps.iter().map(|k| hecke0_simple(&h0, n, k)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in &comps {
        let ic = i.complement();
        let m = simple_s_i(hs, alg, i)?.restrict(&h0, &emb)?;
        let tops: Vec<u64> = simples.iter().map(|s| hom_dim(&m, s).map(|d| d as u64)).collect::<Result<_>>()?;
        let expect_tops: Vec<u64> = comps.iter().map(|c| (*c == ic) as u64).collect();
        let factors = composition_factors(&m, &simples)?;
        let expect_factors = f_coeffs(&NcsfElem::basis_element(NcsfBasis::R, ic.clone()), &comps);
        let indecomposable = is_indecomposable(&m)?;
        let dim_ok = m.dim() == hecke0_projective_dim(&ic);
        let passed = tops == expect_tops && factors == expect_factors && indecomposable && dim_ok;
        out.push(RestrictionCheck {
            composition: i.clone(),
            passed,
            detail: format!(
                "tops {tops:?} (expected {expect_tops:?}), factors {factors:?} (expected {expect_factors:?}), indecomposable {indecomposable}, dim {} vs {}",
                m.dim(),
                hecke0_projective_dim(&ic)
            ),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hecke0_basics() {
        let a = hecke0_algebra::<Q>(3);
        assert_eq!(a.dim(), 6);
        assert!(a.check_associative().is_ok());
        assert_eq!(a.radical().unwrap().dim(), 2);
        assert_eq!(hecke0_algebra::<Q>(2).radical().unwrap().dim(), 0);
        for k in Composition::all(3) {
            hecke0_simple(&a, 3, &k).unwrap().verify(&a).unwrap();
        }
        let hs = HsnAlgebra::<Q>::build(3, true).unwrap();
        let alg = hs.to_algebra().unwrap();
        // the embedding is multiplicative
        let emb = hecke0_embedding(&hs);
        assert!(AlgebraModule::regular(&alg).restrict(&a, &emb).unwrap().verify(&a).is_ok());
    }

    #[test]
    fn restrictions_n3() {
        let hs = HsnAlgebra::<Q>::build(3, true).unwrap();
        let alg = hs.to_algebra().unwrap();
        for c in hecke0_projective_check(&hs, &alg).unwrap() {
            assert!(c.passed, "P_{}: {}", c.composition, c.detail);
        }
        for c in hecke0_simple_restriction_check(&hs, &alg).unwrap() {
            assert!(c.passed, "S_{}: {}", c.composition, c.detail);
        }
    }
}
