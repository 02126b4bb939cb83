use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{inverse, quotient_space, Field, SparseMatrix, SparseVec, Subspace};

/// A finite-dimensional right module: one action matrix per algebra basis
/// element, acting on row vectors (`x ↦ x·M_a`), so `M_{ab} = M_a M_b`.
#[derive(Clone, Debug)]
pub struct AlgebraModule<F> {
    label: String,
    algebra: String,
    dim: usize,
    actions: Vec<SparseMatrix<F>>,
    test_elements: Vec<usize>,
}

impl<F: Field> AlgebraModule<F> {
    /// Wraps action matrices for every basis element of `alg`.
    pub fn new(label: impl Into<String>, alg: &FinDimAlgebra<F>, dim: usize, actions: Vec<SparseMatrix<F>>) -> Result<Self> {
        let label = label.into();
        if actions.len() != alg.dim() {
            return Err(Error::SizeMismatch(format!("{label}: {} actions for algebra of dim {}", actions.len(), alg.dim())));
        }
        if actions.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::SizeMismatch(format!("{label}: action matrices must be {dim}x{dim}")));
        }
        Ok(AlgebraModule { label, algebra: alg.name().to_string(), dim, actions, test_elements: alg.test_elements() })
    }

    /// Right regular module.
    pub fn regular(alg: &FinDimAlgebra<F>) -> Self {
        let actions = (0..alg.dim()).map(|a| alg.right_regular(a)).collect();
        Self::new(format!("{} (regular)", alg.name()), alg, alg.dim(), actions).expect("regular action has the right shape")
    }

    /// Module structure on an invariant subspace `w` (independent rows) of
    /// an ambient action.
    pub fn from_subspace(
        label: impl Into<String>,
        alg: &FinDimAlgebra<F>,
        w: &[SparseVec<F>],
        ambient_action: impl Fn(usize) -> SparseMatrix<F>,
    ) -> Result<Self> {
        let label = label.into();
        let amb = ambient_action(0).nrows();
        let span = Subspace::span(amb, w.iter().cloned(), true)?;
        if span.dim() != w.len() {
            return Err(Error::Invalid(format!("{label}: spanning vectors are dependent")));
        }
        let mut actions = Vec::with_capacity(alg.dim());
        for a in 0..alg.dim() {
            let m = ambient_action(a);
            let rows = w
                .iter()
                .map(|v| span.coordinates(&m.apply(v)).ok_or_else(|| Error::Verification(format!("{label}: subspace not invariant"))))
                .collect::<Result<Vec<_>>>()?;
            actions.push(SparseMatrix::from_rows(w.len(), rows));
        }
        Self::new(label, alg, w.len(), actions)
    }

    /// Subquotient `V / W` for invariant subspaces `W ⊆ V` of an ambient action.
    pub fn from_quotient(
        label: impl Into<String>,
        alg: &FinDimAlgebra<F>,
        v: &Subspace<F>,
        w: &Subspace<F>,
        ambient_action: impl Fn(usize) -> SparseMatrix<F>,
    ) -> Result<Self> {
        let label = label.into();
        let q = quotient_space(v, w)?;
        let mut actions = Vec::with_capacity(alg.dim());
        for a in 0..alg.dim() {
            let m = ambient_action(a);
            let rows = q
                .reps()
                .iter()
                .map(|r| q.project(&m.apply(r)).ok_or_else(|| Error::Verification(format!("{label}: subspace not invariant"))))
                .collect::<Result<Vec<_>>>()?;
            actions.push(SparseMatrix::from_rows(q.dim(), rows));
        }
        Self::new(label, alg, q.dim(), actions)
    }

    /// Submodule generated by invariant subspace `w` of this module.
    pub fn submodule(&self, alg: &FinDimAlgebra<F>, label: impl Into<String>, w: &Subspace<F>) -> Result<Self> {
        Self::from_subspace(label, alg, &w.rref_basis(), |a| self.actions[a].clone())
    }

    /// `self / w` for an invariant subspace `w`.
    pub fn quotient(&self, alg: &FinDimAlgebra<F>, label: impl Into<String>, w: &Subspace<F>) -> Result<Self> {
        Self::from_quotient(label, alg, &Subspace::full(self.dim), w, |a| self.actions[a].clone())
    }

    /// Smallest invariant subspace containing `vecs`.
    pub fn generated_subspace(&self, vecs: &[SparseVec<F>]) -> Subspace<F> {
        let mut s = Subspace::new(self.dim, false);
        let mut queue: Vec<SparseVec<F>> = vecs.to_vec();
        while let Some(v) = queue.pop() {
            if s.insert(v.clone()).expect("vector fits") {
                for m in &self.actions {
                    queue.push(m.apply(&v));
                }
            }
        }
        s
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: usize) -> &SparseMatrix<F> {
        &self.actions[a]
    }

    pub fn actions(&self) -> &[SparseMatrix<F>] {
        &self.actions
    }

    /// Action of an arbitrary algebra element.
    pub fn action_of(&self, x: &SparseVec<F>) -> SparseMatrix<F> {
        x.entries().iter().fold(SparseMatrix::zero(self.dim, self.dim), |m, (a, c)| m.axpy(c, &self.actions[*a]))
    }

    /// Checks `M_1 = I` and `M_a M_b = M_{ab}` on all basis pairs.
    pub fn verify(&self, alg: &FinDimAlgebra<F>) -> Result<()> {
        if self.action_of(alg.unit()) != SparseMatrix::identity(self.dim) {
            return Err(Error::Verification(format!("{}: unit acts nontrivially", self.label)));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if self.actions[a].mul(&self.actions[b]) != self.action_of(alg.basis_product(a, b)) {
                    return Err(Error::Verification(format!(
                        "{}: action not multiplicative at ({}, {})",
                        self.label,
                        alg.labels()[a],
                        alg.labels()[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Character: trace of every basis element.
    pub fn traces(&self) -> Vec<F> {
        self.actions.iter().map(|m| m.trace()).collect()
    }

    /// Restriction along an algebra map given by the images of the basis of `sub`.
    pub fn restrict(&self, sub: &FinDimAlgebra<F>, images: &[SparseVec<F>]) -> Result<Self> {
        if images.len() != sub.dim() {
            return Err(Error::SizeMismatch("embedding must give one image per basis element".into()));
        }
        let actions = images.iter().map(|x| self.action_of(x)).collect();
        Self::new(format!("{}↓{}", self.label, sub.name()), sub, self.dim, actions)
    }

    /// Outer tensor product, a module over `A ⊗ B` with basis `(i, j) ↦ i * dim(other) + j`.
    pub fn tensor(&self, other: &AlgebraModule<F>, alg: &FinDimAlgebra<F>) -> Result<Self> {
        let mut actions = Vec::with_capacity(self.actions.len() * other.actions.len());
        for a in &self.actions {
            for b in &other.actions {
                actions.push(a.kron(b));
            }
        }
        Self::new(format!("{}⊗{}", self.label, other.label), alg, self.dim * other.dim, actions)
    }

    /// Direct sum of two modules over the same algebra.
    pub fn direct_sum(&self, other: &AlgebraModule<F>) -> Result<Self> {
        self.same_algebra(other)?;
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(AlgebraModule {
            label: format!("{}⊕{}", self.label, other.label),
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            actions,
            test_elements: self.test_elements.clone(),
        })
    }

    fn same_algebra(&self, other: &AlgebraModule<F>) -> Result<()> {
        if self.algebra != other.algebra || self.actions.len() != other.actions.len() {
            return Err(Error::AlgebraMismatch(format!("{} vs {}", self.algebra, other.algebra)));
        }
        Ok(())
    }
}

/// Basis of `Hom_A(M, N)` as `dim M × dim N` matrices `F` with `M_g F = F N_g`.
pub fn hom_basis<F: Field>(m: &AlgebraModule<F>, n: &AlgebraModule<F>) -> Result<Vec<SparseMatrix<F>>> {
    m.same_algebra(n)?;
    let (dm, dn) = (m.dim, n.dim);
    let nvars = dm * dn;
    let mut eqs = Subspace::new(nvars, false);
    for &g in &m.test_elements {
        let (a, b) = (&m.actions[g], &n.actions[g]);
        // entry (i, j): Σ_k A[i,k] F[k,j] − Σ_l F[i,l] B[l,j]
        let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, F>> = BTreeMap::new();
        for (i, row) in a.rows().iter().enumerate() {
            for &(k, ref x) in row.entries() {
                for j in 0..dn {
                    add(rows.entry((i, j)).or_default(), k * dn + j, x);
                }
            }
        }
        for (l, row) in b.rows().iter().enumerate() {
            for &(j, ref y) in row.entries() {
                for i in 0..dm {
                    add(rows.entry((i, j)).or_default(), i * dn + l, &y.neg());
                }
            }
        }
        for (_, r) in rows {
            let v = SparseVec::from_pairs(r);
            if !v.is_zero() {
                eqs.insert(v)?;
            }
        }
        if eqs.dim() == nvars {
            return Ok(Vec::new());
        }
    }
    Ok(crate::exactla::kernel_from_rref(nvars, &eqs.rref_basis())
        .iter()
        .map(|v| SparseMatrix::unflatten(dm, dn, v))
        .collect())
}

fn add<F: Field>(acc: &mut BTreeMap<usize, F>, i: usize, x: &F) {
    let e = acc.entry(i).or_insert_with(F::zero);
    *e = e.add(x);
}

pub fn hom_dim<F: Field>(m: &AlgebraModule<F>, n: &AlgebraModule<F>) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// An explicit isomorphism `M → N`, found as a random combination of a
/// Hom basis (fixed seed). `None` when none of the tried combinations is
/// invertible, in particular when the modules differ.
pub fn find_isomorphism<F: Field>(m: &AlgebraModule<F>, n: &AlgebraModule<F>) -> Result<Option<SparseMatrix<F>>> {
    if m.dim != n.dim {
        return Ok(None);
    }
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok((m.dim == 0).then(|| SparseMatrix::zero(0, 0)));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let mut f = SparseMatrix::zero(m.dim, n.dim);
        for b in &basis {
            f = f.axpy(&F::from_i64(rng.gen_range(1..=1000)), b);
        }
        if inverse(&f).is_some() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Composition-factor multiplicities of `m` against a complete list of
/// pairwise non-isomorphic simples, from the linear relation between
/// characters. Requires characteristic zero.
pub fn composition_factors<F: Field>(m: &AlgebraModule<F>, simples: &[AlgebraModule<F>]) -> Result<Vec<u64>> {
    if F::characteristic() != 0 {
        return Err(Error::NonZeroCharacteristic);
    }
    for s in simples {
        m.same_algebra(s)?;
    }
    let na = m.actions.len();
    let chars: Vec<SparseVec<F>> = simples.iter().map(|s| SparseVec::from_dense(&s.traces())).collect();
    let span = Subspace::span(na, chars.iter().cloned(), true)?;
    if span.dim() != simples.len() {
        return Err(Error::BadSimpleList("characters of the listed simples are dependent".into()));
    }
    let coords = span
        .coordinates(&SparseVec::from_dense(&m.traces()))
        .ok_or_else(|| Error::BadSimpleList(format!("character of {} is not a combination of the simples", m.label)))?;
    let mut out = vec![0u64; simples.len()];
    for (i, c) in coords.entries() {
        match c.to_i64() {
            Some(v) if v >= 0 => out[*i] = v as u64,
            _ => return Err(Error::BadSimpleList(format!("non-natural multiplicity {c}"))),
        }
    }
    let total: usize = out.iter().zip(simples).map(|(k, s)| *k as usize * s.dim).sum();
    if total != m.dim {
        return Err(Error::BadSimpleList(format!("factors account for dimension {total}, module has {}", m.dim)));
    }
    Ok(out)
}

/// Absolute simplicity: the action matrices span all of `End(M)`.
pub fn is_absolutely_simple<F: Field>(m: &AlgebraModule<F>) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    let span = Subspace::span(m.dim * m.dim, m.actions.iter().map(|a| a.flatten()), false)?;
    Ok(span.dim() == m.dim * m.dim)
}

/// Whether `End(M)` is local, i.e. `M` is indecomposable (assuming the
/// simple quotient of `End(M)` is the ground field). Requires characteristic zero.
pub fn is_indecomposable<F: Field>(m: &AlgebraModule<F>) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    let ends = hom_basis(m, m)?;
    let labels = (0..ends.len()).map(|i| format!("f{i}")).collect();
    // End(M) acting on the right of row vectors composes as matrices.
    let end = FinDimAlgebra::from_operators(format!("End({})", m.label), labels, &ends, None)?;
    Ok(end.dim() - end.radical()?.dim() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn h0_2() -> FinDimAlgebra<Q> {
        FinDimAlgebra::from_monoid("H2(0)", vec!["1".into(), "π".into()], &[vec![0, 1], vec![1, 1]], 0, Some(vec![1])).unwrap()
    }

    fn one_dim(alg: &FinDimAlgebra<Q>, label: &str, pi: i64) -> AlgebraModule<Q> {
        let acts = vec![SparseMatrix::identity(1), SparseMatrix::from_dense(&[vec![Q::from_i64(pi)]])];
        AlgebraModule::new(label, alg, 1, acts).unwrap()
    }

    #[test]
    fn regular_module_decomposes() {
        let a = h0_2();
        let reg = AlgebraModule::regular(&a);
        reg.verify(&a).unwrap();
        let s0 = one_dim(&a, "S0", 0);
        let s1 = one_dim(&a, "S1", 1);
        s0.verify(&a).unwrap();
        assert_eq!(composition_factors(&reg, &[s0.clone(), s1.clone()]).unwrap(), vec![1, 1]);
        assert_eq!(hom_dim(&reg, &s0).unwrap(), 1);
        assert_eq!(hom_dim(&s0, &s1).unwrap(), 0);
        assert!(!is_indecomposable(&reg).unwrap());
        assert!(is_indecomposable(&s1).unwrap());
        assert!(matches!(composition_factors(&reg, &[s0.clone()]), Err(Error::BadSimpleList(_))));
        let sum = s0.direct_sum(&s1).unwrap();
        assert!(find_isomorphism(&reg, &sum).unwrap().is_some());
        assert!(find_isomorphism(&s0, &s1).unwrap().is_none());
    }

    #[test]
    fn submodule_and_quotient() {
        let a = h0_2();
        let reg = AlgebraModule::regular(&a);
        // span of π is invariant: π·π = π
        let w = reg.generated_subspace(&[SparseVec::unit(1)]);
        assert_eq!(w.dim(), 1);
        let sub = reg.submodule(&a, "πA", &w).unwrap();
        let quo = reg.quotient(&a, "A/πA", &w).unwrap();
        sub.verify(&a).unwrap();
        quo.verify(&a).unwrap();
        assert_eq!(sub.traces()[1], Q::one());
        assert_eq!(quo.traces()[1], Q::zero());
    }

    #[test]
    fn tensor_of_modules() {
        let a = h0_2();
        let t = a.tensor(&a);
        let m = one_dim(&a, "S1", 1).tensor(&AlgebraModule::regular(&a), &t).unwrap();
        m.verify(&t).unwrap();
        assert_eq!(m.dim(), 2);
    }
}
