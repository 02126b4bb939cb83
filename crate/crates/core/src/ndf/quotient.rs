use crate::combinatorics::{binomial, catalan, Permutation, Subset};
use crate::error::{Error, Result};
use crate::exactla::{inverse, quotient_space, Field, Quotient, SparseMatrix, SparseVec, Subspace};
use crate::hsn::{antisymmetric_space, elementary_operator, HsnAlgebra, OpKind, PermBasis, RelationReport};

use super::{ExteriorBasis, NdFunction};

/// `P_{(k,1^{n−k})}` modulo the sum of the `P_J` obtained by merging two of
/// its trailing singleton parts, with the classes of the vectors `e_S`.
#[derive(Clone, Debug)]
pub struct ExteriorQuotient<F> {
    pub k: usize,
    pub basis: ExteriorBasis,
    quotient: Quotient<F>,
    /// `e_S` in `ℂS_n`.
    pub e_vectors: Vec<SparseVec<F>>,
    // inverse of the matrix whose rows are the classes of the `e_S`
    e_inv: SparseMatrix<F>,
}

/// Sign attached to the terms of `e_S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ESign {
    /// Sign of the arrangement of `1..k` inside the positions of `S`.
    Inner,
    /// Sign of the whole permutation.
    Global,
}

/// `Σ ± σ` over words with the letters `1..k` in the positions of `S` and
/// the letters `k+1..n` increasing in the other positions.
pub fn exterior_vector_e_s<F: Field>(pb: &PermBasis, s: Subset, sign: ESign) -> SparseVec<F> {
    let n = pb.n();
    let k = s.len();
    let pos = s.elems();
    let rest: Vec<usize> = (1..=n).filter(|p| !s.contains(*p)).collect();
    pb.vector(Permutation::all(k).into_iter().map(|inner| {
        let mut word = vec![0u8; n];
        for (j, &p) in pos.iter().enumerate() {
            word[p - 1] = inner.at(j + 1) as u8;
        }
        for (j, &p) in rest.iter().enumerate() {
            word[p - 1] = (k + 1 + j) as u8;
        }
        let sigma = Permutation::new(word).expect("valid word");
        let c = F::from_i64(match sign {
            ESign::Inner => inner.sign(),
            ESign::Global => sigma.sign(),
        });
        (sigma, c)
    }))
}

impl<F: Field> ExteriorQuotient<F> {
    pub fn build(pb: &PermBasis, k: usize, sign: ESign) -> Result<Self> {
        let n = pb.n();
        if k == 0 || k > n {
            return Err(Error::OutOfRange(format!("exterior degree {k} for n = {n}")));
        }
        // Des(k,1,..,1) = {k, .., n−1}
        let des = Subset::from_elems(k..n);
        let top = antisymmetric_space::<F>(pb, des)?;
        let mut below = Subspace::new(pb.len(), false);
        for d in k + 1..n {
            for v in antisymmetric_space::<F>(pb, des.remove(d))?.rref_basis() {
                below.insert(v)?;
            }
        }
        let quotient = quotient_space(&top, &below)?;
        let basis = ExteriorBasis::graded(n, k);
        if quotient.dim() != basis.len() {
            return Err(Error::Verification(format!("quotient has dim {}, expected {}", quotient.dim(), basis.len())));
        }
        let e_vectors: Vec<SparseVec<F>> = basis.subsets().iter().map(|&s| exterior_vector_e_s(pb, s, sign)).collect();
        let rows = e_vectors
            .iter()
            .map(|v| quotient.project(v).ok_or_else(|| Error::Verification(format!("e_S not in P_({k},1..1) for n = {n}"))))
            .collect::<Result<Vec<_>>>()?;
        let e_inv = inverse(&SparseMatrix::from_rows(quotient.dim(), rows))
            .ok_or_else(|| Error::Verification("classes of e_S are not a basis".into()))?;
        Ok(ExteriorQuotient { k, basis, quotient, e_vectors, e_inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix, in the `e_S` basis, of the action induced by an operator on `ℂS_n`.
    pub fn induced(&self, op: &SparseMatrix<F>) -> Result<SparseMatrix<F>> {
        let rows = self
            .e_vectors
            .iter()
            .map(|v| {
                self.quotient
                    .project(&op.apply(v))
                    .map(|c| self.e_inv.apply(&c))
                    .ok_or_else(|| Error::Verification("operator does not preserve the kernel intersection".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_rows(self.dim(), rows))
    }
}

/// All degrees `k = 1..n` side by side: the representation on exterior powers of `HS_n`.
#[derive(Clone, Debug)]
pub struct ExteriorRepresentation<F> {
    pub n: usize,
    pub blocks: Vec<ExteriorQuotient<F>>,
}

impl<F: Field> ExteriorRepresentation<F> {
    pub fn build(pb: &PermBasis, sign: ESign) -> Result<Self> {
        let blocks = (1..=pb.n()).map(|k| ExteriorQuotient::build(pb, k, sign)).collect::<Result<_>>()?;
        Ok(ExteriorRepresentation { n: pb.n(), blocks })
    }

    /// Block-diagonal matrix on `⊕_k ⋀^k` (ordered like [`ExteriorBasis::full`]).
    pub fn induced(&self, op: &SparseMatrix<F>) -> Result<SparseMatrix<F>> {
        let mut out: Option<SparseMatrix<F>> = None;
        for b in &self.blocks {
            let m = b.induced(op)?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.direct_sum(&m),
            });
        }
        Ok(out.unwrap_or_else(|| SparseMatrix::zero(0, 0)))
    }
}

/// The `HS_n`-action on `⊕_k P_n^k` against the exterior action of `NDF_n`.
#[derive(Clone, Debug)]
pub struct ExteriorQuotientReport {
    pub n: usize,
    /// Generator-by-generator agreement.
    pub agreement: RelationReport,
    /// The global-sign reading of `e_S` agrees after rescaling each `e_S` by `±1`.
    pub global_sign_agrees_up_to_rescaling: bool,
    pub image_dim: usize,
    pub image_in_ndf_span: bool,
    pub ndf_dim: usize,
    pub pi_image_dim: usize,
    pub temperley_lieb_dim: usize,
    pub catalan: usize,
}

impl ExteriorQuotientReport {
    pub fn passed(&self) -> bool {
        self.agreement.passed()
            && self.global_sign_agrees_up_to_rescaling
            && self.image_in_ndf_span
            && self.image_dim == self.ndf_dim
            && self.pi_image_dim == self.catalan
            && self.temperley_lieb_dim == self.catalan
    }
}

/// Smallest algebra containing the identity and the given operators, as a
/// span of flattened matrices.
fn generated_algebra<F: Field>(gens: &[SparseMatrix<F>], d: usize) -> Subspace<F> {
    let mut span = Subspace::new(d * d, false);
    let mut queue = vec![SparseMatrix::identity(d)];
    while let Some(m) = queue.pop() {
        if span.insert(m.flatten()).expect("fits") {
            queue.extend(gens.iter().map(|g| m.mul(g)));
        }
    }
    span
}

/// Does `b = D a D` hold for some diagonal `D` with `±1` entries? The signs
/// are propagated along the nonzero entries of `a`.
fn conjugate_by_signs<F: Field>(a: &[SparseMatrix<F>], b: &[SparseMatrix<F>], dim: usize) -> bool {
    let mut sign: Vec<Option<bool>> = vec![None; dim];
    loop {
        let mut changed = false;
        for (x, y) in a.iter().zip(b) {
            for (i, j, v) in x.triplets() {
                let flip = y.get(i, j) != *v;
                match (sign[i], sign[j]) {
                    (Some(s), None) => {
                        sign[j] = Some(s ^ flip);
                        changed = true;
                    }
                    (None, Some(t)) => {
                        sign[i] = Some(t ^ flip);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            match sign.iter().position(|s| s.is_none()) {
                Some(free) => sign[free] = Some(false),
                None => break,
            }
        }
    }
    let dm = SparseMatrix::from_triplets(
        dim,
        dim,
        sign.iter().enumerate().map(|(i, s)| (i, i, if s.unwrap_or(false) { F::one().neg() } else { F::one() })),
    );
    a.iter().zip(b).all(|(x, y)| dm.mul(x).mul(&dm) == *y)
}

/// Builds `⊕_k P_n^k` as `HS_n`-modules, compares generator actions with
/// the exterior action of `NDF_n` (the decreasing sort `π_i` of `HS_n`
/// induces `π̄_i` of `NDF_n`, the increasing sort induces `π_i`), and
/// measures the image of `HS_n`, of its `π`-subalgebra and of the algebra
/// generated by the `T_i(−1)`.
pub fn hsn_exterior_quotient<F: Field>(hs: &HsnAlgebra<F>) -> Result<ExteriorQuotientReport> {
    let n = hs.n();
    let pb = hs.perm_basis();
    let rep = ExteriorRepresentation::<F>::build(pb, ESign::Inner)?;
    let full = ExteriorBasis::full(n);
    let dim = full.len();
    let mut agreement = RelationReport::default();
    let mut hs_gens = Vec::new();
    let mut nd_gens = Vec::new();
    for i in 1..n {
        let (p, pbar, s) = (
            elementary_operator(pb, &OpKind::Pi, i)?,
            elementary_operator(pb, &OpKind::PiBar, i)?,
            elementary_operator(pb, &OpKind::Sigma, i)?,
        );
        let (ip, ipbar, is) = (rep.induced(&p)?, rep.induced(&pbar)?, rep.induced(&s)?);
        let (np, npbar) = (full.action::<F>(&NdFunction::pi(n, i)), full.action::<F>(&NdFunction::pibar(n, i)));
        agreement.push(format!("HS pi{i} acts as NDF pibar{i}"), ip == npbar);
        agreement.push(format!("HS pibar{i} acts as NDF pi{i}"), ipbar == np);
        let expected_s = np.add(&npbar).sub(&SparseMatrix::identity(dim));
        agreement.push(format!("HS sigma{i} acts as pi{i} + pibar{i} - 1"), is == expected_s);
        agreement.push(format!("sigma{i} is the signed exterior action of s_{i}"), is == signed_transposition::<F>(&full, i));
        hs_gens.extend([p, pbar]);
        nd_gens.extend([npbar, np]);
    }
    let global = ExteriorRepresentation::<F>::build(pb, ESign::Global)?;
    let global_ops = hs_gens.iter().map(|g| global.induced(g)).collect::<Result<Vec<_>>>()?;
    let global_sign_agrees_up_to_rescaling = conjugate_by_signs(&nd_gens, &global_ops, dim);

    let ndf_ops: Vec<SparseVec<F>> = NdFunction::all(n, false).iter().map(|f| full.action::<F>(f).flatten()).collect();
    let ndf_span = Subspace::span(dim * dim, ndf_ops, false)?;
    let mut image = Subspace::new(dim * dim, false);
    let mut image_in_ndf_span = true;
    for k in 0..hs.dim() {
        let m = rep.induced(&hs.operator(k))?.flatten();
        image_in_ndf_span &= ndf_span.contains(&m);
        image.insert(m)?;
    }
    let id = Permutation::identity(n);
    let mut pi_image = Subspace::new(dim * dim, false);
    for w in pb.perms() {
        let k = hs.index_of(&id, w).ok_or_else(|| Error::Verification(format!("pi_{w} missing from the basis")))?;
        pi_image.insert(rep.induced(&hs.operator(k))?.flatten())?;
    }
    let minus_one = F::one().neg();
    let tl_gens = (1..n)
        .map(|i| rep.induced(&elementary_operator(pb, &OpKind::T(minus_one.clone()), i)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExteriorQuotientReport {
        n,
        agreement,
        global_sign_agrees_up_to_rescaling,
        image_dim: image.dim(),
        image_in_ndf_span,
        ndf_dim: binomial(2 * n - 1, n - 1) as usize,
        pi_image_dim: pi_image.dim(),
        temperley_lieb_dim: generated_algebra(&tl_gens, dim).dim(),
        catalan: catalan(n) as usize,
    })
}

/// `e_S ↦ e_{s_i(S)}` when exactly one of `i, i+1` lies in `S`, `−e_S` when both do.
fn signed_transposition<F: Field>(basis: &ExteriorBasis, i: usize) -> SparseMatrix<F> {
    let idx = |s: Subset| basis.index(s).expect("subset of 1..n");
    let rows = basis
        .subsets()
        .iter()
        .map(|&s| match (s.contains(i), s.contains(i + 1)) {
            (true, true) => SparseVec::from_pairs([(idx(s), F::one().neg())]),
            (true, false) => SparseVec::unit(idx(s.remove(i).insert(i + 1))),
            (false, true) => SparseVec::unit(idx(s.remove(i + 1).insert(i))),
            (false, false) => SparseVec::unit(idx(s)),
        })
        .collect();
    SparseMatrix::from_rows(basis.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{F31, Q};

    #[test]
    fn e_s_examples() {
        let pb = PermBasis::new(2);
        let e2: SparseVec<Q> = exterior_vector_e_s(&pb, Subset::from_elems([2]), ESign::Inner);
        let w = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(e2, SparseVec::unit(pb.index(&w)));
        let g: SparseVec<Q> = exterior_vector_e_s(&pb, Subset::from_elems([2]), ESign::Global);
        assert_eq!(g, SparseVec::unit(pb.index(&w)).scale(&Q::one().neg()));
        assert_eq!(exterior_vector_e_s::<Q>(&PermBasis::new(3), Subset::from_elems([1, 3]), ESign::Inner).nnz(), 2);
    }

    #[test]
    fn quotient_n3() {
        let hs = HsnAlgebra::<Q>::build(3, false).unwrap();
        let r = hsn_exterior_quotient(&hs).unwrap();
        assert!(r.agreement.passed(), "{:?}", r.agreement.checks);
        assert_eq!((r.image_dim, r.pi_image_dim, r.temperley_lieb_dim), (10, 5, 5));
        assert!(r.passed());
    }

    #[test]
    fn quotient_n2_n4() {
        for n in [2, 4] {
            let hs = HsnAlgebra::<F31>::build(n, false).unwrap();
            let r = hsn_exterior_quotient(&hs).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
