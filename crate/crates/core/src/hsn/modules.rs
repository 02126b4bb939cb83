use crate::combinatorics::{
    boolean_lattice, factorial, young_subgroup, Composition, Permutation, Subset,
};
use crate::error::{Error, Result};
use crate::exactla::{inverse, kernel_basis, Field, SparseMatrix, SparseVec, Subspace};
use crate::repr::{algebra_isomorphic_via, incidence_algebra, AlgebraModule, FinDimAlgebra};

use super::basis::HsnAlgebra;
use super::operators::{elementary_operator, OpKind, PermBasis};

/// `Σ_{ν ∈ S_I} (−1)^{ℓ(ν)} ν` for the Young subgroup of `I`.
pub fn vector_v_composition<F: Field>(pb: &PermBasis, i: &Composition) -> SparseVec<F> {
    pb.vector(young_subgroup(i).into_iter().map(|nu| {
        let s = F::from_i64(nu.sign());
        (nu, s)
    }))
}

/// `v_σ = v_J · σ` where `Des(J) = Rec(σ)`; `σ` is its shortest term, with coefficient 1.
pub fn vector_v<F: Field>(pb: &PermBasis, sigma: &Permutation) -> SparseVec<F> {
    let j = Composition::from_descent_set(&sigma.recoils());
    pb.vector(young_subgroup(&j).into_iter().map(|nu| {
        let s = F::from_i64(nu.sign());
        (nu.compose(sigma), s)
    }))
}

/// The vectors antisymmetric under every value swap `i ∉ Des(I)`.
pub fn antisymmetric_space<F: Field>(pb: &PermBasis, des: Subset) -> Result<Subspace<F>> {
    let n = pb.n();
    let mut rows = Vec::new();
    for i in (1..n).filter(|&i| !des.contains(i)) {
        // x·(1 + σ̄_i) = 0, one condition per permutation
        let bar = pb.map_indices(|m| m.swap_values(i));
        for (mu, &mu2) in bar.iter().enumerate() {
            rows.push(SparseVec::from_pairs([(mu, F::one()), (mu2, F::one())]));
        }
    }
    let m = SparseMatrix::from_rows(pb.len(), rows);
    Subspace::span(pb.len(), kernel_basis(&m), false)
}

/// A projective `P_I` realized inside `ℂS_n`.
#[derive(Clone, Debug)]
pub struct ProjectiveHs<F> {
    pub composition: Composition,
    pub space: Subspace<F>,
    /// `{v_σ : Rec(σ) ⊆ Des(I)}`, ordered along the permutation basis.
    pub basis: Vec<SparseVec<F>>,
    pub basis_perms: Vec<Permutation>,
}

/// Builds `P_I` as a kernel intersection and checks its dimension, the
/// `v_σ` basis, and that `v_I` generates it under `σ_i, π_i`.
pub fn module_p_i<F: Field>(pb: &PermBasis, i: &Composition) -> Result<ProjectiveHs<F>> {
    let n = pb.n();
    if i.size() != n {
        return Err(Error::SizeMismatch(format!("{i} is not a composition of {n}")));
    }
    let des = i.descent_set().set();
    let space = antisymmetric_space::<F>(pb, des)?;
    let expected = i.multinomial() as usize;
    if space.dim() != expected {
        return Err(Error::Verification(format!("dim P_{i} = {}, expected {expected}", space.dim())));
    }
    let basis_perms: Vec<Permutation> = pb.perms().iter().filter(|s| s.recoils().set().is_subset(des)).cloned().collect();
    let basis: Vec<SparseVec<F>> = basis_perms.iter().map(|s| vector_v(pb, s)).collect();
    let vspan = Subspace::span(pb.len(), basis.iter().cloned(), false)?;
    if vspan.dim() != expected || !vspan.same_as(&space) {
        return Err(Error::Verification(format!("v-family is not a basis of P_{i}")));
    }
    let gens: Vec<SparseMatrix<F>> = (1..n)
        .flat_map(|k| [OpKind::Sigma, OpKind::Pi].map(|kind| elementary_operator(pb, &kind, k)))
        .collect::<Result<_>>()?;
    let generated = orbit_span(pb.len(), &vector_v_composition(pb, i), &gens);
    if !generated.same_as(&space) {
        return Err(Error::Verification(format!("v_{i} does not generate P_{i}")));
    }
    Ok(ProjectiveHs { composition: i.clone(), space, basis, basis_perms })
}

/// Smallest subspace containing `v` and stable under the operators.
pub fn orbit_span<F: Field>(dim: usize, v: &SparseVec<F>, ops: &[SparseMatrix<F>]) -> Subspace<F> {
    let mut s = Subspace::new(dim, false);
    let mut queue = vec![v.clone()];
    while let Some(x) = queue.pop() {
        if s.insert(x.clone()).expect("vector fits") {
            queue.extend(ops.iter().map(|m| m.apply(&x)));
        }
    }
    s
}

impl<F: Field> ProjectiveHs<F> {
    /// Right module over the structure-constant algebra of `hs`.
    pub fn module(&self, hs: &HsnAlgebra<F>, alg: &FinDimAlgebra<F>) -> Result<AlgebraModule<F>> {
        AlgebraModule::from_subspace(format!("P_{}", self.composition), alg, &self.basis, |a| hs.operator(a))
    }
}

/// The v-basis change (rows `v_σ`), checked to be unitriangular.
pub fn v_matrix<F: Field>(pb: &PermBasis) -> Result<SparseMatrix<F>> {
    let rows: Vec<SparseVec<F>> = pb.perms().iter().map(|s| vector_v(pb, s)).collect();
    for (k, r) in rows.iter().enumerate() {
        match r.leading() {
            Some((j, c)) if *j == k && c.is_one() => {}
            _ => return Err(Error::Verification(format!("v_{} is not unitriangular", pb.perm(k)))),
        }
    }
    Ok(SparseMatrix::from_rows(pb.len(), rows))
}

/// All projectors `p_σ` onto `ℂv_σ` parallel to the other `v_τ`, in
/// permutation-basis order.
pub fn idempotents<F: Field>(pb: &PermBasis) -> Result<Vec<SparseMatrix<F>>> {
    let v = v_matrix::<F>(pb)?;
    let vinv = inverse(&v).ok_or_else(|| Error::Verification("v-basis change is singular".into()))?;
    let col = vinv.transpose();
    let len = pb.len();
    Ok((0..len)
        .map(|s| {
            let c = col.row(s);
            let r = v.row(s);
            SparseMatrix::from_triplets(len, len, c.entries().iter().flat_map(|(i, a)| r.entries().iter().map(move |(j, b)| (*i, *j, a.mul(b)))))
        })
        .collect())
}

/// `p_I := p_α` for the shortest `α` with `Rec(α) = Des(I)`.
pub fn idempotent_p_i<F: Field>(pb: &PermBasis, ps: &[SparseMatrix<F>], i: &Composition) -> SparseMatrix<F> {
    let des = i.descent_set().set();
    // permutation basis is sorted by length, so the first hit is shortest
    let k = pb.perms().iter().position(|s| s.recoils().set() == des).expect("every subset is a recoil set");
    ps[k].clone()
}

/// Checks `p_σ ∈ HS_n` and that `p_σ` annihilates every sandwich `(1−σ̄_i)·p·(1+σ̄_i)`.
pub fn idempotent_membership<F: Field>(hs: &HsnAlgebra<F>, ps: &[SparseMatrix<F>]) -> Result<()> {
    let pb = hs.perm_basis();
    let one = SparseMatrix::identity(pb.len());
    let bars: Vec<SparseMatrix<F>> =
        (1..pb.n()).map(|i| elementary_operator(pb, &OpKind::SigmaBar, i)).collect::<Result<_>>()?;
    for (k, p) in ps.iter().enumerate() {
        if !hs.contains(p) {
            return Err(Error::Verification(format!("p_{} is not in the span", pb.perm(k))));
        }
        for b in &bars {
            if !one.sub(b).mul(p).mul(&one.add(b)).is_zero() {
                return Err(Error::Verification(format!("p_{} breaks an antisymmetry", pb.perm(k))));
            }
        }
    }
    Ok(())
}

/// `P_I / Σ_{Des J ⊊ Des I} P_J` as a pair `(P_I, Σ P_J)` of subspaces of
/// `ℂS_n`; the quotient dimension is checked against `#{σ : Rec(σ) = Des(I)}`.
pub fn simple_quotient<F: Field>(pb: &PermBasis, i: &Composition) -> Result<(Subspace<F>, Subspace<F>)> {
    let des = i.descent_set().set();
    let top = antisymmetric_space::<F>(pb, des)?;
    let mut below = Subspace::new(pb.len(), false);
    for d in des.elems() {
        for v in antisymmetric_space::<F>(pb, des.remove(d))?.rref_basis() {
            below.insert(v)?;
        }
    }
    let expected = pb.perms().iter().filter(|s| s.recoils().set() == des).count();
    if top.dim() - below.dim() != expected {
        return Err(Error::Verification(format!("dim S_{i} = {}, expected {expected}", top.dim() - below.dim())));
    }
    // the images of {v_σ : Rec σ = Des I} must be independent modulo `below`
    let mut probe = below.clone();
    for s in pb.perms().iter().filter(|s| s.recoils().set() == des) {
        if !probe.insert(vector_v(pb, s))? {
            return Err(Error::Verification(format!("v_{s} is dependent in S_{i}")));
        }
    }
    Ok((top, below))
}

/// Simple module `S_I` over the structure-constant algebra.
pub fn simple_s_i<F: Field>(hs: &HsnAlgebra<F>, alg: &FinDimAlgebra<F>, i: &Composition) -> Result<AlgebraModule<F>> {
    let (top, below) = simple_quotient::<F>(hs.perm_basis(), i)?;
    AlgebraModule::from_quotient(format!("S_{i}"), alg, &top, &below, |a| hs.operator(a))
}

/// Span of `x b y` over the basis `b` of `hs`, as flattened operators.
pub fn sandwich_dim<F: Field>(hs: &HsnAlgebra<F>, x: &SparseMatrix<F>, y: &SparseMatrix<F>) -> Subspace<F> {
    let len = hs.perm_basis().len();
    let vecs = (0..hs.dim()).map(|k| x.mul(&hs.operator(k)).mul(y).flatten());
    Subspace::span(len * len, vecs, false).expect("operators fit")
}

/// Cartan matrix of `HS_n` with `[I][J] = dim Hom(P_I, P_J) = dim p_J·HS_n·p_I`
/// (right modules: `Hom(eA, fA) ≅ fAe`), compositions in bitmask order.
pub fn cartan_hsn<F: Field>(hs: &HsnAlgebra<F>, ps: &[SparseMatrix<F>]) -> Vec<Vec<usize>> {
    let pb = hs.perm_basis();
    let comps = Composition::all(pb.n());
    let pis: Vec<SparseMatrix<F>> = comps.iter().map(|c| idempotent_p_i(pb, ps, c)).collect();
    pis.iter().map(|x| pis.iter().map(|y| sandwich_dim(hs, y, x).dim()).collect()).collect()
}

/// Boolean-lattice incidence matrix `[I][J] = 1 iff Des(I) ⊆ Des(J)`.
pub fn boolean_incidence(n: usize) -> Vec<Vec<usize>> {
    let comps = Composition::all(n);
    comps
        .iter()
        .map(|a| comps.iter().map(|b| a.descent_set().set().is_subset(b.descent_set().set()) as usize).collect())
        .collect()
}

/// How the corner algebra `e·HS_n·e` matches the incidence algebra of `B_{n−1}`.
#[derive(Clone, Debug)]
pub struct MoritaReport {
    pub corner_dim: usize,
    /// `true` when `p_I·HS·p_J ≠ 0` iff `Des(I) ⊆ Des(J)`; `false` when the
    /// containment runs the other way (then subsets are complemented).
    pub same_orientation: bool,
    pub isomorphic: bool,
}

/// Builds `e = Σ_I p_I`, the corner algebra `e·HS_n·e` from a normalized
/// basis `b_{IJ}` of the pieces `p_I·HS_n·p_J`, and certifies an isomorphism
/// with the incidence algebra of the boolean lattice.
pub fn morita_check<F: Field>(hs: &HsnAlgebra<F>, ps: &[SparseMatrix<F>]) -> Result<MoritaReport> {
    let pb = hs.perm_basis();
    let n = pb.n();
    let comps = Composition::all(n);
    let sets: Vec<Subset> = comps.iter().map(|c| c.descent_set().set()).collect();
    let pis: Vec<SparseMatrix<F>> = comps.iter().map(|c| idempotent_p_i(pb, ps, c)).collect();
    let len = pb.len();
    let k = comps.len();
    // one spanning operator for each nonzero piece
    let mut piece: Vec<Vec<Option<SparseMatrix<F>>>> = vec![vec![None; k]; k];
    let mut corner_dim = 0;
    for a in 0..k {
        for b in 0..k {
            let s = sandwich_dim(hs, &pis[a], &pis[b]);
            corner_dim += s.dim();
            if s.dim() > 1 {
                return Err(Error::Verification(format!("piece ({}, {}) has dim {}", comps[a], comps[b], s.dim())));
            }
            if let Some(v) = s.rref_basis().first() {
                piece[a][b] = Some(SparseMatrix::unflatten(len, len, v));
            }
        }
    }
    let nonzero = |a: usize, b: usize| piece[a][b].is_some();
    let same = (0..k).all(|a| (0..k).all(|b| nonzero(a, b) == sets[a].is_subset(sets[b])));
    let reversed = (0..k).all(|a| (0..k).all(|b| nonzero(a, b) == sets[b].is_subset(sets[a])));
    if !same && !reversed {
        return Ok(MoritaReport { corner_dim, same_orientation: false, isomorphic: false });
    }
    // lattice label of each composition: the descent set, or its complement
    let full = Subset::full(n.saturating_sub(1));
    let label = |a: usize| if same { sets[a] } else { Subset(full.0 & !sets[a].0) };
    let root = (0..k).find(|&a| label(a).is_empty()).unwrap();
    // normalize: b_{root,J} as found, b_{IJ} scaled so that b_{root,I} b_{IJ} = b_{root,J}
    let mut norm: Vec<Vec<Option<SparseMatrix<F>>>> = vec![vec![None; k]; k];
    for a in 0..k {
        for b in 0..k {
            let Some(x) = &piece[a][b] else { continue };
            let x = if a == root {
                x.clone()
            } else {
                let lhs = piece[root][a].as_ref().unwrap().mul(x);
                let target = piece[root][b].as_ref().unwrap();
                let (r, c, t) = target.triplets().next().expect("nonzero");
                let lam = lhs.get(r, c).div(t);
                if lam.is_zero() || lhs != target.scale(&lam) {
                    return Err(Error::Verification(format!("piece ({}, {}) does not compose", comps[a], comps[b])));
                }
                x.scale(&lam.inv())
            };
            norm[a][b] = Some(x);
        }
    }
    let mut ops = Vec::new();
    let mut names = Vec::new();
    let mut keys = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if let Some(x) = &norm[a][b] {
                ops.push(x.clone());
                names.push(format!("b[{},{}]", comps[a], comps[b]));
                keys.push((label(a), label(b)));
            }
        }
    }
    // the corner algebra, with unit e = Σ p_I
    let e = pis.iter().fold(SparseMatrix::zero(len, len), |s, p| s.add(p));
    let corner = corner_algebra(format!("eHS{n}e"), names, &ops, &e)?;
    let lattice = boolean_lattice(n.saturating_sub(1));
    let inc: FinDimAlgebra<F> = incidence_algebra(format!("B{}", n.saturating_sub(1)), &lattice);
    let pairs = lattice.comparable_pairs();
    let map: Vec<SparseVec<F>> = keys
        .iter()
        .map(|(u, v)| {
            let iu = lattice.index_of(u).unwrap();
            let iv = lattice.index_of(v).unwrap();
            SparseVec::unit(pairs.iter().position(|&p| p == (iu, iv)).unwrap())
        })
        .collect();
    let isomorphic = algebra_isomorphic_via(&corner, &inc, &map)?;
    Ok(MoritaReport { corner_dim, same_orientation: same, isomorphic })
}

/// Algebra on independent operators closed under product, with a unit `e`
/// that need not be the identity.
fn corner_algebra<F: Field>(name: String, labels: Vec<String>, ops: &[SparseMatrix<F>], e: &SparseMatrix<F>) -> Result<FinDimAlgebra<F>> {
    let len = e.nrows();
    let span = Subspace::span(len * len, ops.iter().map(|o| o.flatten()), true)?;
    if span.dim() != ops.len() {
        return Err(Error::Verification(format!("{name}: pieces are dependent")));
    }
    let coords = |m: &SparseMatrix<F>| span.coordinates(&m.flatten()).ok_or_else(|| Error::Verification(format!("{name}: not closed")));
    let table = ops.iter().map(|a| ops.iter().map(|b| coords(&a.mul(b))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let unit = coords(e)?;
    FinDimAlgebra::from_table(name, labels, table, unit, None)
}

/// Trace of an operator restricted to the span of independent `basis` vectors
/// (which it must preserve).
pub fn restricted_trace<F: Field>(basis: &[SparseVec<F>], op: &SparseMatrix<F>) -> Result<F> {
    let dim = op.nrows();
    let span = Subspace::span(dim, basis.iter().cloned(), true)?;
    let mut t = F::zero();
    for (k, v) in basis.iter().enumerate() {
        let c = span.coordinates(&op.apply(v)).ok_or_else(|| Error::Verification("subspace not invariant".into()))?;
        t = t.add(&c.get(k));
    }
    Ok(t)
}

/// Character of the sign representation of `S_I` induced to `S_n`, at `g`.
pub fn induced_sign_character(i: &Composition, g: &Permutation) -> i64 {
    let h: std::collections::HashSet<Permutation> = young_subgroup(i).into_iter().collect();
    let n = g.n();
    let mut total = 0i64;
    for x in Permutation::all(n) {
        let c = x.compose(g).compose(&x.inverse());
        if h.contains(&c) {
            total += c.sign();
        }
    }
    total / (h.len() as i64)
}

/// Compares the trace of every cycle-type representative acting on `P_I`
/// with the induced sign character; returns `(cycle type, trace, expected)`.
pub fn symmetric_group_character_check<F: Field>(pb: &PermBasis, i: &Composition) -> Result<Vec<(Vec<usize>, i64, i64)>> {
    let p = module_p_i::<F>(pb, i)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in pb.perms() {
        let ct = g.cycle_type();
        if !seen.insert(ct.clone()) {
            continue;
        }
        let op = super::operators::functional::<F>(&pb.right_mult(g));
        let t = restricted_trace(&p.basis, &op)?;
        let t = t.to_i64().ok_or_else(|| Error::Verification("non-integer trace".into()))?;
        out.push((ct, t, induced_sign_character(i, g)));
    }
    Ok(out)
}

/// `Σ_I dim P_I · dim S_I` computed from the subspaces.
pub fn projective_simple_pairing<F: Field>(pb: &PermBasis) -> Result<usize> {
    let mut total = 0;
    for i in Composition::all(pb.n()) {
        let p = antisymmetric_space::<F>(pb, i.descent_set().set())?.dim();
        let (top, below) = simple_quotient::<F>(pb, &i)?;
        total += p * (top.dim() - below.dim());
    }
    Ok(total)
}

/// `n!/∏ i_j!` versus the computed kernel dimension, for every `I ⊨ n`.
pub fn projective_dimensions<F: Field>(n: usize) -> Result<Vec<(Composition, usize, usize)>> {
    let pb = PermBasis::new(n);
    Composition::all(n)
        .into_iter()
        .map(|i| {
            let d = antisymmetric_space::<F>(&pb, i.descent_set().set())?.dim();
            let count = pb.perms().iter().filter(|s| s.recoils().set().is_subset(i.descent_set().set())).count();
            let formula = (factorial(n) / i.parts().iter().map(|&p| factorial(p)).product::<u64>()) as usize;
            if count != formula {
                return Err(Error::Verification(format!("recoil count {count} vs {formula} for {i}")));
            }
            Ok((i, d, formula))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;
    use crate::repr::{find_isomorphism, hom_dim, verify_idempotent_family};

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn projectives_small() {
        let pb = PermBasis::new(2);
        let v = vector_v_composition::<Q>(&pb, &c(&[2]));
        let e = |w: &[u8]| SparseVec::<Q>::unit(pb.index(&Permutation::new(w.to_vec()).unwrap()));
        assert_eq!(v, e(&[1, 2]).sub(&e(&[2, 1])));
        assert_eq!(module_p_i::<Q>(&pb, &c(&[2])).unwrap().space.dim(), 1);
        let pb3 = PermBasis::new(3);
        assert_eq!(module_p_i::<Q>(&pb3, &c(&[1, 1, 1])).unwrap().space.dim(), 6);
        assert_eq!(module_p_i::<Q>(&pb3, &c(&[1, 2])).unwrap().space.dim(), 3);
        for (_, d, f) in projective_dimensions::<Q>(4).unwrap() {
            assert_eq!(d, f);
        }
    }

    #[test]
    fn hs3_representations() {
        let hs = HsnAlgebra::<Q>::build(3, true).unwrap();
        let alg = hs.to_algebra().unwrap();
        let pb = hs.perm_basis();
        let ps = idempotents::<Q>(pb).unwrap();
        idempotent_membership(&hs, &ps).unwrap();
        let fam: Vec<SparseVec<Q>> = ps.iter().map(|p| hs.coordinates(p).unwrap()).collect();
        assert!(verify_idempotent_family(&alg, &fam).passed());
        let dims: Vec<usize> = [c(&[3]), c(&[2, 1]), c(&[1, 2]), c(&[1, 1, 1])]
            .iter()
            .map(|i| simple_s_i(&hs, &alg, i).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 1]);
        assert_eq!(projective_simple_pairing::<Q>(pb).unwrap(), 19);
        // p_σ HS ≅ P_{Rec σ}
        for (k, s) in pb.perms().iter().enumerate() {
            let x = &fam[k];
            let w = crate::repr::AlgebraModule::regular(&alg).generated_subspace(std::slice::from_ref(x));
            let ideal = AlgebraModule::regular(&alg).submodule(&alg, "pHS", &w).unwrap();
            let p = module_p_i::<Q>(pb, &Composition::from_descent_set(&s.recoils())).unwrap().module(&hs, &alg).unwrap();
            assert!(find_isomorphism(&ideal, &p).unwrap().is_some(), "{s}");
        }
        let cartan = cartan_hsn(&hs, &ps);
        let nonzero: usize = cartan.iter().flatten().filter(|&&x| x > 0).count();
        assert_eq!(nonzero, 9);
        assert_eq!(cartan, boolean_incidence(3));
        let m = morita_check(&hs, &ps).unwrap();
        assert_eq!(m.corner_dim, 9);
        assert!(m.isomorphic);
        let p2 = module_p_i::<Q>(pb, &c(&[2, 1])).unwrap().module(&hs, &alg).unwrap();
        assert_eq!(hom_dim(&p2, &p2).unwrap(), 1);
    }

    #[test]
    fn sign_character() {
        let pb = PermBasis::new(3);
        for i in Composition::all(3) {
            for (_, t, e) in symmetric_group_character_check::<Q>(&pb, &i).unwrap() {
                assert_eq!(t, e);
            }
        }
    }
}
