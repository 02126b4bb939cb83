use crate::combinatorics::{young_subgroup, Composition, Permutation};
use crate::error::{Error, Result};
use crate::exactla::{kernel_from_rref, Field, SparseMatrix, SparseVec, Subspace, F31};
use crate::repr::FinDimAlgebra;

use super::operators::{functional, PermBasis};

/// Number of pairs `(σ, τ)` in `S_n²` with `Des(σ) ∩ Des(τ) = ∅`, by enumeration.
pub fn pair_count_oracle(n: usize) -> u64 {
    let perms = Permutation::all(n);
    let des: Vec<u32> = perms.iter().map(|p| p.descents().set().0).collect();
    let mut c = 0;
    for a in &des {
        for b in &des {
            if a & b == 0 {
                c += 1;
            }
        }
    }
    c
}

/// The algebra spanned by the operators `σπ_τ` with `Des(σ) ∩ Des(τ⁻¹) = ∅`,
/// each stored as the index map of a functional operator on `ℂS_n`.
#[derive(Clone, Debug)]
pub struct HsnAlgebra<F> {
    basis: PermBasis,
    pairs: Vec<(Permutation, Permutation)>,
    maps: Vec<Vec<usize>>,
    span: Subspace<F>,
}

impl<F: Field> HsnAlgebra<F> {
    /// Builds the family and its echelonized span. With `track`, exact
    /// coordinates in the family are available (needed for structure constants).
    pub fn build(n: usize, track: bool) -> Result<Self> {
        let basis = PermBasis::new(n);
        let mut pairs = Vec::new();
        let mut maps: Vec<Vec<usize>> = Vec::new();
        for tau in basis.perms() {
            let rec = tau.recoils().set();
            let pi_tau = basis.pi_word(tau);
            for sigma in basis.perms() {
                if sigma.descents().set().intersection(rec).is_empty() {
                    let right = basis.right_mult(sigma);
                    maps.push(right.iter().map(|&k| pi_tau[k]).collect());
                    pairs.push((sigma.clone(), tau.clone()));
                }
            }
        }
        let len = basis.len();
        let mut span = Subspace::new(len * len, track);
        for m in &maps {
            span.insert(flatten_map::<F>(m))?;
        }
        if span.dim() != maps.len() {
            return Err(Error::Verification(format!("family of {} operators has rank {}", maps.len(), span.dim())));
        }
        Ok(HsnAlgebra { basis, pairs, maps, span })
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn perm_basis(&self) -> &PermBasis {
        &self.basis
    }

    pub fn pairs(&self) -> &[(Permutation, Permutation)] {
        &self.pairs
    }

    pub fn span(&self) -> &Subspace<F> {
        &self.span
    }

    pub fn labels(&self) -> Vec<String> {
        self.pairs.iter().map(|(s, t)| format!("{}|{}", s.label(), t.label())).collect()
    }

    pub fn index_of(&self, sigma: &Permutation, tau: &Permutation) -> Option<usize> {
        self.pairs.iter().position(|(s, t)| s == sigma && t == tau)
    }

    pub fn map(&self, k: usize) -> &[usize] {
        &self.maps[k]
    }

    pub fn operator(&self, k: usize) -> SparseMatrix<F> {
        functional(&self.maps[k])
    }

    /// Basis indices of `σ_i` and `π_i`, `1 ≤ i < n`.
    pub fn generator_indices(&self) -> Vec<usize> {
        let n = self.n();
        let id = Permutation::identity(n);
        let mut g: Vec<usize> = (1..n).map(|i| self.index_of(&Permutation::transposition(n, i), &id).unwrap()).collect();
        g.extend((1..n).map(|i| self.index_of(&id, &Permutation::transposition(n, i)).unwrap()));
        g
    }

    pub fn contains(&self, op: &SparseMatrix<F>) -> bool {
        self.span.contains(&op.flatten())
    }

    /// Coordinates of an operator in the family (requires tracking).
    pub fn coordinates(&self, op: &SparseMatrix<F>) -> Option<SparseVec<F>> {
        self.span.coordinates(&op.flatten())
    }

    /// `b ∘ g ∈ span` for every member `b` and every listed generator `g`.
    pub fn closure_check(&self, members: impl IntoIterator<Item = usize>) -> Result<()> {
        let gens = self.generator_indices();
        for b in members {
            for &g in &gens {
                let prod: Vec<usize> = self.maps[b].iter().map(|&k| self.maps[g][k]).collect();
                if !self.span.contains(&flatten_map::<F>(&prod)) {
                    let l = self.labels();
                    return Err(Error::Verification(format!("{}·{} leaves the span", l[b], l[g])));
                }
            }
        }
        Ok(())
    }

    /// Checks that the smallest row index of the transposed matrix of
    /// `σπ_τ` (smallest permutation in its image) is `τ`, and that the
    /// permutations sent to `τ` form the coset `⟨s_i : i ∈ Des(τ⁻¹)⟩ σ⁻¹`.
    pub fn triangularity_check(&self) -> Result<()> {
        let n = self.n();
        for (k, (sigma, tau)) in self.pairs.iter().enumerate() {
            let m = &self.maps[k];
            let t = self.basis.index(tau);
            let init = *m.iter().min().unwrap();
            let mut pre: Vec<usize> = (0..m.len()).filter(|&mu| m[mu] == t).collect();
            let comp = Composition::from_descent_set(&tau.recoils().complement());
            let sinv = sigma.inverse();
            let mut coset: Vec<usize> = young_subgroup(&comp).iter().map(|w| self.basis.index(&w.compose(&sinv))).collect();
            pre.sort();
            coset.sort();
            if init != t || pre != coset {
                return Err(Error::Verification(format!("triangularity fails for {}|{} (n = {n})", sigma, tau)));
            }
        }
        Ok(())
    }

    /// Structure constants in the `σπ_τ` basis (requires tracking).
    ///
    /// Coordinates are first solved over a word-size prime field and lifted
    /// to integers; every lifted expansion is then checked exactly in `F`,
    /// falling back to the exact solver where the check fails.
    pub fn to_algebra(&self) -> Result<FinDimAlgebra<F>> {
        if !self.span.is_tracked() {
            return Err(Error::Invalid("structure constants need a tracked span".into()));
        }
        let d = self.dim();
        let len = self.basis.len();
        let mut modular = Subspace::<F31>::new(len * len, true);
        for m in &self.maps {
            modular.insert(flatten_map(m))?;
        }
        let mut table = Vec::with_capacity(d);
        for a in 0..d {
            let mut row = Vec::with_capacity(d);
            for b in 0..d {
                let prod: Vec<usize> = self.maps[a].iter().map(|&k| self.maps[b][k]).collect();
                let lifted = modular
                    .coordinates(&flatten_map(&prod))
                    .map(|c| SparseVec::from_pairs(c.entries().iter().map(|(i, x)| (*i, F::from_i64(x.to_i64().unwrap())))));
                let c = match lifted {
                    Some(c) if self.expand(&c) == flatten_map::<F>(&prod) => c,
                    _ => self
                        .span
                        .coordinates(&flatten_map::<F>(&prod))
                        .ok_or_else(|| Error::Verification(format!("product {a}·{b} leaves the span")))?,
                };
                row.push(c);
            }
            table.push(row);
        }
        let id = Permutation::identity(self.n());
        let unit = SparseVec::unit(self.index_of(&id, &id).unwrap());
        FinDimAlgebra::from_table(format!("HS{}", self.n()), self.labels(), table, unit, Some(self.generator_indices()))
    }

    /// Flattened operator `Σ c_k b_k`.
    fn expand(&self, coords: &SparseVec<F>) -> SparseVec<F> {
        let len = self.basis.len();
        let mut acc = std::collections::BTreeMap::new();
        for (k, c) in coords.entries() {
            for (mu, &nu) in self.maps[*k].iter().enumerate() {
                let e = acc.entry(mu * len + nu).or_insert_with(F::zero);
                *e = c.add(e);
            }
        }
        SparseVec::from_pairs(acc)
    }
}

pub(crate) fn flatten_map<F: Field>(m: &[usize]) -> SparseVec<F> {
    let len = m.len();
    SparseVec::from_pairs(m.iter().enumerate().map(|(mu, &nu)| (mu * len + nu, F::one())))
}

/// Solution space of `(1 − σ̄_i) f (1 + σ̄_i) = 0` for all `i`, together with
/// the number of independent constraints.
pub fn sandwich_space<F: Field>(n: usize) -> Result<(Subspace<F>, usize)> {
    let b = PermBasis::new(n);
    let len = b.len();
    let mut eqs = Subspace::new(len * len, false);
    for i in 1..n {
        let bar = b.map_indices(|m| m.swap_values(i));
        for mu in 0..len {
            for nu in 0..len {
                let (mu2, nu2) = (bar[mu], bar[nu]);
                let form = SparseVec::from_pairs([
                    (mu * len + nu, F::one()),
                    (mu * len + nu2, F::one()),
                    (mu2 * len + nu, F::one().neg()),
                    (mu2 * len + nu2, F::one().neg()),
                ]);
                if !form.is_zero() {
                    eqs.insert(form)?;
                }
            }
        }
    }
    let constraints = eqs.dim();
    let sol = Subspace::span(len * len, kernel_from_rref(len * len, &eqs.rref_basis()), false)?;
    Ok((sol, constraints))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    #[test]
    fn pair_counts() {
        let got: Vec<u64> = (0..=5).map(pair_count_oracle).collect();
        assert_eq!(got, vec![1, 1, 3, 19, 211, 3651]);
    }

    #[test]
    fn small_bases() {
        let h2 = HsnAlgebra::<Q>::build(2, true).unwrap();
        let mut labels = h2.labels();
        labels.sort();
        assert_eq!(labels, vec!["12|12", "12|21", "21|12"]);
        let h3 = HsnAlgebra::<Q>::build(3, true).unwrap();
        assert_eq!(h3.dim(), 19);
        h3.closure_check(0..h3.dim()).unwrap();
        h3.triangularity_check().unwrap();
        let a = h3.to_algebra().unwrap();
        assert!(a.check_associative().is_ok());
        assert_eq!(HsnAlgebra::<F31>::build(3, false).unwrap().span().dim(), 19);
    }

    #[test]
    fn sandwich_matches_span() {
        for (n, rel) in [(2, 1), (3, 17)] {
            let (sol, c) = sandwich_space::<Q>(n).unwrap();
            assert_eq!(c, rel);
            let h = HsnAlgebra::<Q>::build(n, false).unwrap();
            assert!(sol.same_as(h.span()));
        }
    }
}
