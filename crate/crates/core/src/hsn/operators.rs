use std::collections::HashMap;

use crate::combinatorics::{weak_order_linear_extension, Permutation};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix, SparseVec};

/// The permutation basis of `ℂS_n`, indexed along a linear extension of the
/// right weak order (length, then lexicographic).
#[derive(Clone, Debug)]
pub struct PermBasis {
    n: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermBasis {
    pub fn new(n: usize) -> Self {
        let perms = weak_order_linear_extension(n);
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        PermBasis { n, perms, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn index(&self, p: &Permutation) -> usize {
        self.index[p]
    }

    pub fn labels(&self) -> Vec<String> {
        self.perms.iter().map(|p| p.label()).collect()
    }

    /// Image table of a map on permutations.
    pub fn map_indices(&self, f: impl Fn(&Permutation) -> Permutation) -> Vec<usize> {
        self.perms.iter().map(|p| self.index[&f(p)]).collect()
    }

    /// Right multiplication `μ ↦ μσ` (action on positions).
    pub fn right_mult(&self, sigma: &Permutation) -> Vec<usize> {
        self.map_indices(|mu| mu.compose(sigma))
    }

    /// `π_w = π_{i_1}⋯π_{i_k}` for a reduced word of `w`, as an index map.
    pub fn pi_word(&self, w: &Permutation) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.len()).collect();
        for i in w.reduced_word() {
            let step = self.map_indices(|mu| pi_step(mu, i));
            map = map.iter().map(|&k| step[k]).collect();
        }
        map
    }

    /// Vector `Σ c_ν ν` from (permutation, coefficient) pairs.
    pub fn vector<F: Field>(&self, terms: impl IntoIterator<Item = (Permutation, F)>) -> SparseVec<F> {
        SparseVec::from_pairs(terms.into_iter().map(|(p, c)| (self.index[&p], c)))
    }
}

/// Decreasing sort at position `i`.
pub fn pi_step(mu: &Permutation, i: usize) -> Permutation {
    if mu.at(i) > mu.at(i + 1) {
        mu.clone()
    } else {
        mu.swap_positions(i)
    }
}

/// Increasing sort at position `i`.
pub fn pibar_step(mu: &Permutation, i: usize) -> Permutation {
    if mu.at(i) < mu.at(i + 1) {
        mu.clone()
    } else {
        mu.swap_positions(i)
    }
}

/// Operator of a map of basis elements: row `μ` has a single `1` at `f(μ)`.
pub fn functional<F: Field>(map: &[usize]) -> SparseMatrix<F> {
    SparseMatrix::from_rows(map.len(), map.iter().map(|&j| SparseVec::unit(j)).collect())
}

/// Elementary operators on `ℂS_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum OpKind<F> {
    /// `μ ↦ μ s_i` (positions).
    Sigma,
    /// Decreasing sort.
    Pi,
    /// Increasing sort.
    PiBar,
    /// `μ ↦ s_i μ` (values).
    SigmaBar,
    /// `(q−1)(1 − π_i) + q σ_i`.
    T(F),
}

pub fn elementary_operator<F: Field>(basis: &PermBasis, kind: &OpKind<F>, i: usize) -> Result<SparseMatrix<F>> {
    let n = basis.n();
    if i == 0 || i >= n {
        return Err(Error::OutOfRange(format!("generator index {i} for n = {n}")));
    }
    Ok(match kind {
        OpKind::Sigma => functional(&basis.map_indices(|m| m.swap_positions(i))),
        OpKind::Pi => functional(&basis.map_indices(|m| pi_step(m, i))),
        OpKind::PiBar => functional(&basis.map_indices(|m| pibar_step(m, i))),
        OpKind::SigmaBar => functional(&basis.map_indices(|m| m.swap_values(i))),
        OpKind::T(q) => {
            let one = SparseMatrix::identity(basis.len());
            let pi = elementary_operator(basis, &OpKind::Pi, i)?;
            let sigma = elementary_operator(basis, &OpKind::Sigma, i)?;
            one.sub(&pi).scale(&q.sub(&F::one())).axpy(q, &sigma)
        }
    })
}

/// Outcome of a named family of exact identities.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checks: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub(crate) fn push(&mut self, name: String, ok: bool) {
        self.checks.push((name, ok));
    }
}

/// Braid and quadratic relations of `T_i(q)`, the sorting identities
/// `π_i + π̄_i = 1 + σ_i`, the six absorption identities, and the three
/// mixed relations between `σ` and `π`.
pub fn check_relations<F: Field>(n: usize, q_samples: &[F]) -> Result<RelationReport> {
    let b = PermBasis::new(n);
    let mut rep = RelationReport::default();
    let one = SparseMatrix::<F>::identity(b.len());
    let op = |k: OpKind<F>, i: usize| elementary_operator(&b, &k, i);
    for q in q_samples {
        let t: Vec<SparseMatrix<F>> = (1..n).map(|i| op(OpKind::T(q.clone()), i)).collect::<Result<_>>()?;
        for i in 1..n {
            let ti = &t[i - 1];
            let quad = ti.mul(ti) == ti.scale(&q.sub(&F::one())).add(&one.scale(q));
            rep.push(format!("T{i}^2 = (q-1)T{i} + q at q={q}"), quad);
            if i + 1 < n {
                let tj = &t[i];
                rep.push(format!("braid T{i}T{}T{i} at q={q}", i + 1), ti.mul(tj).mul(ti) == tj.mul(ti).mul(tj));
            }
            for j in i + 2..n {
                let tj = &t[j - 1];
                rep.push(format!("T{i}T{j} = T{j}T{i} at q={q}"), ti.mul(tj) == tj.mul(ti));
            }
        }
    }
    for i in 1..n {
        let (s, p, pb) = (op(OpKind::Sigma, i)?, op(OpKind::Pi, i)?, op(OpKind::PiBar, i)?);
        rep.push(format!("pi{i} + pibar{i} = 1 + sigma{i}"), p.add(&pb) == one.add(&s));
        rep.push(format!("sigma{i} pi{i} = pi{i}"), s.mul(&p) == p);
        rep.push(format!("sigma{i} pibar{i} = pibar{i}"), s.mul(&pb) == pb);
        rep.push(format!("pibar{i} pi{i} = pi{i}"), pb.mul(&p) == p);
        rep.push(format!("pibar{i} pibar{i} = pibar{i}"), pb.mul(&pb) == pb);
        rep.push(format!("pi{i} sigma{i} = pibar{i}"), p.mul(&s) == pb);
        rep.push(format!("pibar{i} sigma{i} = pi{i}"), pb.mul(&s) == p);
    }
    for i in 1..n.saturating_sub(1) {
        let (si, sj) = (op(OpKind::Sigma, i)?, op(OpKind::Sigma, i + 1)?);
        let (pi, pj) = (op(OpKind::Pi, i)?, op(OpKind::Pi, i + 1)?);
        let pij = pi.mul(&pj).mul(&pi);
        let lhs1 = pj.mul(&si);
        let rhs1 = pj.mul(&pi).add(&si.mul(&sj).mul(&pi).mul(&pj)).sub(&pij);
        rep.push(format!("pi{} sigma{i} expansion", i + 1), lhs1 == rhs1);
        let lhs2 = pi.mul(&sj);
        let rhs2 = pi.mul(&pj).add(&sj.mul(&si).mul(&pj).mul(&pi)).sub(&pij);
        rep.push(format!("pi{i} sigma{} expansion", i + 1), lhs2 == rhs2);
    }
    if n >= 3 {
        let (s1, s2, p1, p2) = (op(OpKind::Sigma, 1)?, op(OpKind::Sigma, 2)?, op(OpKind::Pi, 1)?, op(OpKind::Pi, 2)?);
        rep.push("sigma1 pi2 sigma1 = sigma2 pi1 sigma2".into(), s1.mul(&p2).mul(&s1) == s2.mul(&p1).mul(&s2));
    }
    Ok(rep)
}

/// `ω T_{i−1}(q) = T_i(q) ω` for `2 ≤ i ≤ n−1`, with `ω = σ_1σ_2⋯σ_{n−1}`.
pub fn affine_relation_check<F: Field>(q: &F, n: usize) -> Result<RelationReport> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("affine check needs n >= 3, got {n}")));
    }
    let b = PermBasis::new(n);
    let mut omega = SparseMatrix::identity(b.len());
    for i in 1..n {
        omega = omega.mul(&elementary_operator(&b, &OpKind::Sigma, i)?);
    }
    let t: Vec<SparseMatrix<F>> = (1..n).map(|i| elementary_operator(&b, &OpKind::T(q.clone()), i)).collect::<Result<_>>()?;
    let mut rep = RelationReport::default();
    for i in 2..n {
        let ok = omega.mul(&t[i - 2]) == t[i - 1].mul(&omega);
        rep.push(format!("omega T{} = T{i} omega at q={q}, n={n}", i - 1), ok);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn p(w: &[u8]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn elementary_actions() {
        let b = PermBasis::new(2);
        let pi = elementary_operator::<Q>(&b, &OpKind::Pi, 1).unwrap();
        let e = |w: &[u8]| SparseVec::<Q>::unit(b.index(&p(w)));
        assert_eq!(pi.apply(&e(&[1, 2])), e(&[2, 1]));
        assert_eq!(pi.apply(&e(&[2, 1])), e(&[2, 1]));
        let sb = elementary_operator::<Q>(&b, &OpKind::SigmaBar, 1).unwrap();
        assert_eq!(sb.apply(&e(&[2, 1])), e(&[1, 2]));
        let b3 = PermBasis::new(3);
        let t1 = elementary_operator(&b3, &OpKind::T(Q::one()), 1).unwrap();
        assert_eq!(t1, elementary_operator(&b3, &OpKind::Sigma, 1).unwrap());
        let t0 = elementary_operator(&b3, &OpKind::T(Q::zero()), 2).unwrap();
        let pim1 = elementary_operator(&b3, &OpKind::Pi, 2).unwrap().sub(&SparseMatrix::identity(6));
        assert_eq!(t0, pim1);
        assert!(elementary_operator::<Q>(&b3, &OpKind::Pi, 3).is_err());
    }

    #[test]
    fn relations_hold() {
        let qs: Vec<Q> = [0, 1, 2, -1].iter().map(|&x| Q::from_i64(x)).collect();
        for n in 2..=4 {
            let r = check_relations(n, &qs).unwrap();
            assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.1).collect::<Vec<_>>());
        }
    }

    #[test]
    fn affine_relation() {
        assert!(affine_relation_check(&Q::from_i64(2), 3).unwrap().passed());
        assert!(affine_relation_check(&Q::from_i64(1), 3).unwrap().passed());
        assert!(affine_relation_check(&Q::from_i64(3), 4).unwrap().passed());
    }
}
