use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::combinatorics::{binomial, catalan, factorial, grassmann_poset, Composition, Permutation, Subset};
use crate::error::{Error, Result};
use crate::exactla::{left_kernel_basis, Field, SparseMatrix, SparseVec, Subspace, Q};
use crate::hsn::{hecke0_algebra, hecke0_product, PermBasis};
use crate::repr::{
    algebra_isomorphic_via, composition_factors, hom_dim, incidence_algebra, is_absolutely_simple, is_indecomposable,
    AlgebraModule, FinDimAlgebra,
};

use super::{border_map, monoid_algebra, monoid_closure, ExteriorBasis, NdFunction};

fn verify(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}

/// Module of a monoid algebra given by a monomial action on `basis`.
fn exterior_module(label: String, alg: &FinDimAlgebra<Q>, elems: &[NdFunction], basis: &ExteriorBasis) -> Result<AlgebraModule<Q>> {
    let acts = elems.iter().map(|f| basis.action(f)).collect();
    AlgebraModule::new(label, alg, basis.len(), acts)
}

/// Projectives `P^k = ⋀^k`, simples `S^k = P^k / ker δ` and the Cartan
/// matrix `[k][l] = dim Hom(P^k, P^l)` of `ℂ[NDF_n]`, `k = 1..n`.
#[derive(Clone, Debug)]
pub struct NdfModules {
    pub n: usize,
    pub elements: Vec<NdFunction>,
    pub algebra: FinDimAlgebra<Q>,
    pub projectives: Vec<AlgebraModule<Q>>,
    pub simples: Vec<AlgebraModule<Q>>,
    pub cartan: Vec<Vec<usize>>,
    /// `[k][l]` = multiplicity of `S^l` in `P^k`.
    pub factors: Vec<Vec<u64>>,
    /// `Σ_k dim S^k`: the number of primitive idempotents in a decomposition of `1`.
    pub primitive_count: usize,
    /// `Σ_k dim P^k`: the dimension of the representation on exterior powers.
    pub exterior_dim: usize,
}

/// Builds and certifies the `ℂ[NDF_n]` projectives and simples.
pub fn ndf_modules(n: usize) -> Result<NdfModules> {
    if n == 0 || n > 6 {
        return Err(Error::OutOfRange(format!("ndf modules need 1 <= n <= 6, got {n}")));
    }
    let (elements, algebra) = monoid_algebra::<Q>(n, false);
    let mut projectives = Vec::new();
    let mut simples = Vec::new();
    for k in 1..=n {
        let p = exterior_module(format!("P^{k}"), &algebra, &elements, &ExteriorBasis::graded(n, k))?;
        p.verify(&algebra)?;
        let ker = Subspace::span(p.dim(), left_kernel_basis(&border_map::<Q>(n, k)?), false)?;
        verify(p.generated_subspace(&ker.rref_basis()).same_as(&ker), || format!("ker δ_{k} is not a submodule"))?;
        let s = p.quotient(&algebra, format!("S^{k}"), &ker)?;
        verify(p.dim() as u64 == binomial(n, k), || format!("dim P^{k} = {}", p.dim()))?;
        verify(s.dim() as u64 == binomial(n - 1, k - 1), || format!("dim S^{k} = {}, expected C({}, {})", s.dim(), n - 1, k - 1))?;
        verify(is_absolutely_simple(&s)?, || format!("S^{k} is not simple"))?;
        verify(is_indecomposable(&p)?, || format!("P^{k} is decomposable"))?;
        projectives.push(p);
        simples.push(s);
    }
    let mut cartan = vec![vec![0; n]; n];
    let mut factors = Vec::new();
    for (k, p) in projectives.iter().enumerate() {
        for (l, q) in projectives.iter().enumerate() {
            cartan[k][l] = hom_dim(p, q)?;
        }
        for (l, s) in simples.iter().enumerate() {
            let tops = hom_dim(p, s)?;
            verify(tops == (k == l) as usize, || format!("dim Hom(P^{}, S^{}) = {tops}", k + 1, l + 1))?;
        }
        factors.push(composition_factors(p, &simples)?);
    }
    for k in 0..n {
        for l in 0..n {
            // l ∈ {k, k−1}
            let expected = (l == k || l + 1 == k) as usize;
            verify(cartan[k][l] == expected, || format!("dim Hom(P^{}, P^{}) = {}, expected {expected}", k + 1, l + 1, cartan[k][l]))?;
        }
    }
    let total: usize = projectives.iter().zip(&simples).map(|(p, s)| p.dim() * s.dim()).sum();
    verify(total == algebra.dim(), || format!("Σ dim P^k · dim S^k = {total}, algebra has dim {}", algebra.dim()))?;
    let primitive_count = simples.iter().map(|s| s.dim()).sum();
    let exterior_dim = projectives.iter().map(|p| p.dim()).sum();
    Ok(NdfModules { n, elements, algebra, projectives, simples, cartan, factors, primitive_count, exterior_dim })
}

/// `P_I = e_{S₀}·ℂ[NDPF_n]` with `S₀ = {1} ∪ (Des(I) + 1)`.
#[derive(Clone, Debug)]
pub struct NdpfProjective {
    pub composition: Composition,
    pub generator: Subset,
    /// `{T : T ≤_G S₀}` in bitmask order.
    pub basis: Vec<Subset>,
    /// A parking function `f` with `f(S₀) = T` for each basis subset.
    pub witnesses: Vec<NdFunction>,
    pub module: AlgebraModule<Q>,
}

/// Projectives, one-dimensional simples and the Cartan data of `ℂ[NDPF_n]`.
#[derive(Clone, Debug)]
pub struct NdpfModules {
    pub n: usize,
    pub elements: Vec<NdFunction>,
    pub algebra: FinDimAlgebra<Q>,
    pub compositions: Vec<Composition>,
    pub projectives: Vec<NdpfProjective>,
    pub simples: Vec<AlgebraModule<Q>>,
    /// `[I][J]` = multiplicity of `S_J` in `P_I`.
    pub cartan: Vec<Vec<u64>>,
}

pub fn ndpf_generator(i: &Composition) -> Subset {
    Subset::from_elems(std::iter::once(1).chain(i.descent_set().elems().into_iter().map(|d| d + 1)))
}

/// One-dimensional simple: `π_i ↦ 0` for `i ∈ Des(I)`, `π_i ↦ 1` otherwise,
/// extended to the monoid (`f ↦ 1` iff `f` is a product of allowed `π_i`).
pub fn ndpf_simple(alg: &FinDimAlgebra<Q>, elems: &[NdFunction], i: &Composition) -> Result<AlgebraModule<Q>> {
    let n = i.size();
    let des = i.descent_set();
    let allowed: Vec<NdFunction> = (1..n).filter(|&j| !des.contains(j)).map(|j| NdFunction::pi(n, j)).collect();
    let ones = monoid_closure(n, &allowed);
    let acts = elems.iter().map(|f| SparseMatrix::from_dense(&[vec![if ones.contains(f) { Q::one() } else { Q::zero() }]])).collect();
    let m = AlgebraModule::new(format!("S_{i}"), alg, 1, acts)?;
    m.verify(alg)?;
    Ok(m)
}

/// Builds and certifies the `ℂ[NDPF_n]` projectives and simples.
pub fn ndpf_modules(n: usize) -> Result<NdpfModules> {
    if n == 0 || n > 6 {
        return Err(Error::OutOfRange(format!("ndpf modules need 1 <= n <= 6, got {n}")));
    }
    let (elements, algebra) = monoid_algebra::<Q>(n, true);
    let compositions = Composition::all(n);
    let simples: Vec<AlgebraModule<Q>> = compositions.iter().map(|i| ndpf_simple(&algebra, &elements, i)).collect::<Result<_>>()?;
    verify(simples.len() == 1 << (n - 1), || format!("{} simples", simples.len()))?;
    let mut projectives = Vec::new();
    for i in &compositions {
        let s0 = ndpf_generator(i);
        let graded = ExteriorBasis::graded(n, s0.len());
        let mut reach: BTreeMap<Subset, NdFunction> = BTreeMap::new();
        for f in &elements {
            if let Some(t) = f.apply_injective(s0) {
                reach.entry(t).or_insert_with(|| f.clone());
            }
        }
        let ideal: Vec<Subset> = graded.subsets().iter().copied().filter(|t| t.grassmann_leq(s0)).collect();
        let reached: Vec<Subset> = reach.keys().copied().collect();
        let mut sorted_ideal = ideal.clone();
        sorted_ideal.sort();
        verify(reached == sorted_ideal, || format!("orbit of e_{s0} is not the order ideal below it"))?;
        let ambient = exterior_module(format!("L^{}", s0.len()), &algebra, &elements, &graded)?;
        let vecs: Vec<SparseVec<Q>> = reached.iter().map(|&t| SparseVec::unit(graded.index(t).expect("subset"))).collect();
        let gen = SparseVec::unit(graded.index(s0).expect("subset"));
        let generated = ambient.generated_subspace(&[gen]);
        verify(generated.same_as(&Subspace::span(graded.len(), vecs.iter().cloned(), false)?), || {
            format!("e_{s0} does not generate the span of its orbit")
        })?;
        let module = AlgebraModule::from_subspace(format!("P_{i}"), &algebra, &vecs, |a| ambient.action(a).clone())?;
        verify(is_indecomposable(&module)?, || format!("P_{i} is decomposable"))?;
        let witnesses = reached.iter().map(|t| reach[t].clone()).collect();
        projectives.push(NdpfProjective { composition: i.clone(), generator: s0, basis: reached, witnesses, module });
    }
    let total: usize = projectives.iter().map(|p| p.module.dim()).sum();
    verify(total as u64 == catalan(n), || format!("Σ dim P_I = {total}, expected Catalan({n})"))?;
    let mut cartan = Vec::new();
    for (a, p) in projectives.iter().enumerate() {
        for (b, s) in simples.iter().enumerate() {
            let tops = hom_dim(&p.module, s)?;
            verify(tops == (a == b) as usize, || format!("dim Hom(P_{}, S_{}) = {tops}", compositions[a], compositions[b]))?;
        }
        cartan.push(composition_factors(&p.module, &simples)?);
    }
    Ok(NdpfModules { n, elements, algebra, compositions, projectives, simples, cartan })
}

/// `[I][J] = 1` iff `Des(J) ≤_G Des(I)`.
pub fn grassmann_cartan(n: usize) -> Vec<Vec<u64>> {
    let comps = Composition::all(n);
    comps
        .iter()
        .map(|i| comps.iter().map(|j| j.descent_set().set().grassmann_leq(i.descent_set().set()) as u64).collect())
        .collect()
}

/// The morphism `H_n(0) → ℂ[NDPF_n]`, `π_i ↦ π_i`.
#[derive(Clone, Debug)]
pub struct PhiReport {
    pub n: usize,
    pub multiplicative: bool,
    pub image_rank: usize,
    pub kernel_dim: usize,
    pub radical_dim: usize,
    pub kernel_in_radical: bool,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        let n = self.n;
        self.multiplicative
            && self.image_rank as u64 == catalan(n)
            && self.kernel_dim as u64 == factorial(n) - catalan(n)
            && self.kernel_in_radical
    }
}

/// `π_w ↦ π_{i_1}⋯π_{i_k}` for a reduced word of `w`.
pub fn phi_image(w: &Permutation) -> NdFunction {
    let n = w.n();
    w.reduced_word().into_iter().fold(NdFunction::identity(n), |f, i| f.then(&NdFunction::pi(n, i)))
}

pub fn phi_hecke0_to_ndpf(n: usize) -> Result<PhiReport> {
    if n == 0 || n > 5 {
        return Err(Error::OutOfRange(format!("phi check needs 1 <= n <= 5, got {n}")));
    }
    let pb = PermBasis::new(n);
    let h0 = hecke0_algebra::<Q>(n);
    let images: Vec<NdFunction> = pb.perms().iter().map(phi_image).collect();
    let multiplicative = pb.perms().iter().enumerate().all(|(a, u)| {
        pb.perms().iter().enumerate().all(|(b, v)| images[pb.index(&hecke0_product(u, v))] == images[a].then(&images[b]))
    });
    let mut fibers: BTreeMap<&NdFunction, Vec<usize>> = BTreeMap::new();
    for (a, f) in images.iter().enumerate() {
        fibers.entry(f).or_default().push(a);
    }
    let kernel: Vec<SparseVec<Q>> = fibers
        .values()
        .flat_map(|fib| fib[1..].iter().map(move |&b| SparseVec::from_pairs([(fib[0], Q::one()), (b, Q::one().neg())])))
        .collect();
    let radical = h0.radical()?;
    let kernel_in_radical = kernel.iter().all(|v| radical.contains(v));
    let all_parking: BTreeSet<&NdFunction> = images.iter().collect();
    verify(all_parking.len() == NdFunction::all(n, true).len(), || "phi is not onto NDPF".into())?;
    Ok(PhiReport { n, multiplicative, image_rank: fibers.len(), kernel_dim: kernel.len(), radical_dim: radical.dim(), kernel_in_radical })
}

/// `ℂ[NDPF_n] ≅ ⊕_k ℂ[G_{n−1,k}]` via the action on `⊕_I P_I`.
#[derive(Clone, Debug)]
pub struct GrassmannReport {
    pub n: usize,
    pub ndpf_dim: usize,
    pub component_dims: Vec<usize>,
    pub isomorphic: bool,
    /// Composition factors of every `P_I` match the Grassmann order.
    pub cartan_matches: bool,
}

impl GrassmannReport {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.cartan_matches && self.component_dims.iter().sum::<usize>() == self.ndpf_dim
    }
}

/// Number of comparable pairs in `G_{m,k}` summed over `k`.
pub fn grassmann_incidence_dims(m: usize) -> Vec<usize> {
    (0..=m).map(|k| grassmann_poset(m, k).comparable_pairs().len()).collect()
}

/// `f ↦ Σ_T (φ(T'), φ(f(T)'))` over subsets `T ∋ 1` on which `f` is
/// injective, with `T' = T∖{1} − 1 ⊆ {1..n−1}` and the order-reversing
/// `φ(x) = n − x`; the pair lies in `G_{n−1,|T|−1}` since `f(T) ≤_G T`.
pub fn grassmann_isomorphism(n: usize) -> Result<GrassmannReport> {
    if n == 0 || n > 5 {
        return Err(Error::OutOfRange(format!("grassmann isomorphism needs 1 <= n <= 5, got {n}")));
    }
    let (elements, ndpf) = monoid_algebra::<Q>(n, true);
    let m = n - 1;
    let posets: Vec<_> = (0..=m).map(|k| grassmann_poset(m, k)).collect();
    let parts: Vec<FinDimAlgebra<Q>> = posets.iter().enumerate().map(|(k, p)| incidence_algebra(format!("G({m},{k})"), p)).collect();
    let mut index: HashMap<(Subset, Subset), usize> = HashMap::new();
    let mut off = 0;
    for p in &posets {
        for (a, &(x, y)) in p.comparable_pairs().iter().enumerate() {
            index.insert((p.elements()[x], p.elements()[y]), off + a);
        }
        off += p.comparable_pairs().len();
    }
    let target = FinDimAlgebra::direct_sum(format!("⊕G({m},k)"), &parts);
    let reduce = |t: Subset| Subset::from_elems(t.elems().into_iter().filter(|&x| x != 1).map(|x| n - (x - 1)));
    let map: Vec<SparseVec<Q>> = elements
        .iter()
        .map(|f| {
            SparseVec::from_pairs(
                Subset::all(n)
                    .filter(|t| t.contains(1))
                    .filter_map(|t| f.apply_injective(t).map(|ft| (index[&(reduce(t), reduce(ft))], Q::one()))),
            )
        })
        .collect();
    let isomorphic = algebra_isomorphic_via(&ndpf, &target, &map)?;
    let mods = ndpf_modules(n)?;
    Ok(GrassmannReport {
        n,
        ndpf_dim: ndpf.dim(),
        component_dims: parts.iter().map(|p| p.dim()).collect(),
        isomorphic,
        cartan_matches: mods.cartan == grassmann_cartan(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ndf_modules_small() {
        let m = ndf_modules(3).unwrap();
        assert_eq!(m.simples.iter().map(|s| s.dim()).collect::<Vec<_>>(), [1, 2, 1]);
        assert_eq!(m.cartan, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.factors, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!((m.primitive_count, m.exterior_dim), (4, 7));
        for n in [1, 2, 4] {
            ndf_modules(n).unwrap();
        }
    }

    #[test]
    fn vandermonde_accounting() {
        for n in 1..=8 {
            let s: u64 = (1..=n).map(|k| binomial(n, k) * binomial(n - 1, k - 1)).sum();
            assert_eq!(s, binomial(2 * n - 1, n - 1));
        }
    }

    #[test]
    fn ndpf_modules_small() {
        let m = ndpf_modules(3).unwrap();
        let i21 = Composition::new(vec![2, 1]).unwrap();
        let p = &m.projectives[m.compositions.iter().position(|c| *c == i21).unwrap()];
        assert_eq!(p.generator, Subset::from_elems([1, 3]));
        assert_eq!(p.basis, vec![Subset::from_elems([1, 2]), Subset::from_elems([1, 3])]);
        let top = &m.projectives[m.compositions.iter().position(|c| c.len() == 1).unwrap()];
        assert_eq!(top.module.dim(), 1);
        assert_eq!(m.cartan, grassmann_cartan(3));
        let m4 = ndpf_modules(4).unwrap();
        let s: usize = m4.projectives.iter().map(|p| p.module.dim()).sum();
        assert_eq!(s, 14);
    }

    #[test]
    fn grassmann_cartan_example() {
        // C(P_(2,1)) = S_(2,1) + S_(1,2)
        let comps = Composition::all(3);
        let c = grassmann_cartan(3);
        let row = comps.iter().position(|c| c.parts() == [2, 1]).unwrap();
        let hits: Vec<String> = comps.iter().zip(&c[row]).filter(|(_, &x)| x == 1).map(|(c, _)| c.to_string()).collect();
        let mut expect = vec![Composition::new(vec![2, 1]).unwrap().to_string(), Composition::new(vec![1, 2]).unwrap().to_string()];
        expect.sort();
        let mut hits = hits;
        hits.sort();
        assert_eq!(hits, expect);
    }

    #[test]
    fn phi_reports() {
        let r2 = phi_hecke0_to_ndpf(2).unwrap();
        assert_eq!((r2.image_rank, r2.kernel_dim), (2, 0));
        let r3 = phi_hecke0_to_ndpf(3).unwrap();
        assert_eq!((r3.image_rank, r3.kernel_dim, r3.radical_dim), (5, 1, 2));
        for n in 2..=4 {
            assert!(phi_hecke0_to_ndpf(n).unwrap().passed());
        }
    }

    #[test]
    fn grassmann() {
        assert_eq!(grassmann_incidence_dims(2), [1, 3, 1]);
        assert_eq!(grassmann_incidence_dims(3), [1, 6, 6, 1]);
        for n in 1..=7 {
            assert_eq!(grassmann_incidence_dims(n - 1).iter().sum::<usize>() as u64, catalan(n));
        }
        for n in 1..=4 {
            let r = grassmann_isomorphism(n).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
