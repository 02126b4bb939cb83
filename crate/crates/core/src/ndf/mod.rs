//! Non-decreasing (parking) functions, their monoid algebras and the
//! representation on exterior powers.
//!
//! Functions act on the right: `e_i · f = e_{f(i)}`, so the monoid product
//! `fg` applies `f` first (see [`NdFunction::then`]).

mod modules;
mod quotient;

pub use modules::*;
pub use quotient::*;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, catalan, Subset};
use crate::error::{Error, Result};
use crate::exactla::{rank, Field, SparseMatrix, SparseVec};
use crate::hsn::RelationReport;
use crate::repr::FinDimAlgebra;

/// A non-decreasing map `{1..n} → {1..n}`, stored as its image word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NdFunction(Vec<u8>);

impl NdFunction {
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        if image.iter().any(|&x| x == 0 || x as usize > n) {
            return Err(Error::Invalid(format!("{image:?} is not a map on 1..{n}")));
        }
        if image.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("{image:?} is not non-decreasing")));
        }
        Ok(NdFunction(image))
    }

    pub fn identity(n: usize) -> Self {
        NdFunction((1..=n as u8).collect())
    }

    /// `π_i`: `i+1 ↦ i`, other points fixed.
    pub fn pi(n: usize, i: usize) -> Self {
        let mut w: Vec<u8> = (1..=n as u8).collect();
        w[i] = i as u8;
        NdFunction(w)
    }

    /// `π̄_i`: `i ↦ i+1`, other points fixed.
    pub fn pibar(n: usize, i: usize) -> Self {
        let mut w: Vec<u8> = (1..=n as u8).collect();
        w[i - 1] = i as u8 + 1;
        NdFunction(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self) -> &[u8] {
        &self.0
    }

    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_parking(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize <= i + 1)
    }

    /// Monoid product: `self` first, then `g`.
    pub fn then(&self, g: &NdFunction) -> NdFunction {
        NdFunction(self.0.iter().map(|&x| g.0[x as usize - 1]).collect())
    }

    /// `f(S)`, or `None` when `f` is not injective on `S`.
    pub fn apply_injective(&self, s: Subset) -> Option<Subset> {
        let img = Subset::from_elems(s.elems().into_iter().map(|x| self.at(x)));
        (img.len() == s.len()).then_some(img)
    }

    /// Block sum `f ⊕ g` acting on `{1..n}` and `{n+1..n+m}`.
    pub fn direct_sum(&self, g: &NdFunction) -> NdFunction {
        let n = self.n() as u8;
        NdFunction(self.0.iter().copied().chain(g.0.iter().map(|&x| x + n)).collect())
    }

    /// All non-decreasing functions (or parking ones), lexicographically.
    pub fn all(n: usize, parking: bool) -> Vec<NdFunction> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::<u8>::new()];
        while let Some(w) = stack.pop() {
            if w.len() == n {
                out.push(NdFunction(w));
                continue;
            }
            let lo = w.last().copied().unwrap_or(1);
            let hi = if parking { w.len() as u8 + 1 } else { n as u8 };
            for x in (lo..=hi).rev() {
                let mut w2 = w.clone();
                w2.push(x);
                stack.push(w2);
            }
        }
        out
    }

    pub fn label(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
    }
}

impl fmt::Display for NdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label())
    }
}

/// Submonoid generated by `gens` (identity included).
pub fn monoid_closure(n: usize, gens: &[NdFunction]) -> BTreeSet<NdFunction> {
    let mut seen = BTreeSet::from([NdFunction::identity(n)]);
    let mut queue = vec![NdFunction::identity(n)];
    while let Some(f) = queue.pop() {
        for g in gens {
            let h = f.then(g);
            if seen.insert(h.clone()) {
                queue.push(h);
            }
        }
    }
    seen
}

/// Idempotence and braid-like relations of the `π_i`, the size of the
/// monoid they generate, and generation of `NDF_n` by the `π_i, π̄_i`.
pub fn monoid_generator_checks(n: usize) -> Result<RelationReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}, need n >= 2")));
    }
    let mut rep = RelationReport::default();
    let pi: Vec<NdFunction> = (1..n).map(|i| NdFunction::pi(n, i)).collect();
    let pibar: Vec<NdFunction> = (1..n).map(|i| NdFunction::pibar(n, i)).collect();
    for i in 1..n {
        let p = &pi[i - 1];
        rep.push(format!("pi{i}^2 = pi{i}"), p.then(p) == *p);
        let b = &pibar[i - 1];
        rep.push(format!("pibar{i}^2 = pibar{i}"), b.then(b) == *b);
        if i + 1 < n {
            let q = &pi[i];
            let target = q.then(p);
            rep.push(format!("pi{0} pi{i} pi{0} = pi{0} pi{i}", i + 1), q.then(p).then(q) == target);
            rep.push(format!("pi{i} pi{0} pi{i} = pi{0} pi{i}", i + 1), p.then(q).then(p) == target);
            let (bp, bq) = (b, &pibar[i]);
            rep.push(format!("pibar{i} pibar{0} pibar{i} = pibar{i} pibar{0}", i + 1), bp.then(bq).then(bp) == bp.then(bq));
        }
        for j in i + 2..n {
            let q = &pi[j - 1];
            rep.push(format!("pi{i} pi{j} = pi{j} pi{i}"), p.then(q) == q.then(p));
        }
    }
    let parking: BTreeSet<NdFunction> = NdFunction::all(n, true).into_iter().collect();
    let gen_pi = monoid_closure(n, &pi);
    rep.push(format!("<pi> has {} = Catalan({n}) elements", gen_pi.len()), gen_pi.len() as u64 == catalan(n));
    rep.push("<pi> is the set of parking functions".into(), gen_pi == parking);
    let both: Vec<NdFunction> = pi.iter().chain(&pibar).cloned().collect();
    let gen_all = monoid_closure(n, &both);
    let nd: BTreeSet<NdFunction> = NdFunction::all(n, false).into_iter().collect();
    rep.push(format!("<pi, pibar> has {} = C({}, {}) elements", gen_all.len(), 2 * n - 1, n - 1), gen_all == nd);
    Ok(rep)
}

/// Basis `{e_S}` of `⊕_k ⋀^k ℂ^n` for `k` in a range, ordered by `(|S|, S)`.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    subsets: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl ExteriorBasis {
    fn from_subsets(n: usize, subsets: Vec<Subset>) -> Self {
        let index = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        ExteriorBasis { n, subsets, index }
    }

    /// `⋀^k ℂ^n` (`k = 0` gives the scalar line).
    pub fn graded(n: usize, k: usize) -> Self {
        Self::from_subsets(n, Subset::all_of_size(n, k))
    }

    /// `⊕_{k=1}^n ⋀^k ℂ^n`, of dimension `2^n − 1`.
    pub fn full(n: usize) -> Self {
        Self::from_subsets(n, (1..=n).flat_map(|k| Subset::all_of_size(n, k)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn index(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.subsets.iter().map(|s| s.label()).collect()
    }

    /// `e_S ↦ e_{f(S)}` if `f` is injective on `S`, else `0` (no sign).
    pub fn action<F: Field>(&self, f: &NdFunction) -> SparseMatrix<F> {
        let rows = self
            .subsets
            .iter()
            .map(|&s| match f.apply_injective(s) {
                Some(t) => SparseVec::unit(self.index[&t]),
                None => SparseVec::zero(),
            })
            .collect();
        SparseMatrix::from_rows(self.len(), rows)
    }
}

/// A vector of `⊕_k ⋀^k ℂ^n` in the `e_S` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorVector<F> {
    pub n: usize,
    pub coeffs: BTreeMap<Subset, F>,
}

impl<F: Field> ExteriorVector<F> {
    pub fn basis(n: usize, s: Subset) -> Self {
        ExteriorVector { n, coeffs: BTreeMap::from([(s, F::one())]) }
    }

    fn add_term(&mut self, s: Subset, c: F) {
        let e = self.coeffs.entry(s).or_insert_with(F::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn act(&self, f: &NdFunction) -> Self {
        let mut out = ExteriorVector { n: self.n, coeffs: BTreeMap::new() };
        for (s, c) in &self.coeffs {
            if let Some(t) = f.apply_injective(*s) {
                out.add_term(t, c.clone());
            }
        }
        out
    }

    /// `δ(e_S) = Σ_i (−1)^{k−i} e_{S∖{s_i}}`; the empty set stands for `⋀^0`.
    pub fn border(&self) -> Self {
        let mut out = ExteriorVector { n: self.n, coeffs: BTreeMap::new() };
        for (s, c) in &self.coeffs {
            let e = s.elems();
            let k = e.len();
            for (i, &x) in e.iter().enumerate() {
                let sign = if (k - (i + 1)) % 2 == 0 { F::one() } else { F::one().neg() };
                out.add_term(s.remove(x), c.mul(&sign));
            }
        }
        out
    }
}

/// Matrix of the exterior action of `f` on `⋀^k` (or on all `k ≥ 1`).
pub fn exterior_action<F: Field>(f: &NdFunction, k: Option<usize>) -> SparseMatrix<F> {
    let basis = match k {
        Some(k) => ExteriorBasis::graded(f.n(), k),
        None => ExteriorBasis::full(f.n()),
    };
    basis.action(f)
}

/// Rank of the flattened exterior matrices of all of `NDF_n`.
pub fn faithfulness_rank(n: usize) -> usize {
    let basis = ExteriorBasis::full(n);
    let d = basis.len();
    let rows: Vec<SparseVec<crate::exactla::F31>> =
        NdFunction::all(n, false).iter().map(|f| basis.action(f).flatten()).collect();
    rank(&SparseMatrix::from_rows(d * d, rows))
}

/// `|NDF_n|` matrices of the exterior action are linearly independent.
pub fn faithfulness_check(n: usize) -> Result<bool> {
    if n > 6 {
        return Err(Error::OutOfRange(format!("faithfulness check limited to n <= 6, got {n}")));
    }
    Ok(faithfulness_rank(n) as u64 == binomial(2 * n - 1, n - 1))
}

/// `δ : ⋀^k → ⋀^{k−1}` as a `C(n,k) × C(n,k−1)` matrix.
pub fn border_map<F: Field>(n: usize, k: usize) -> Result<SparseMatrix<F>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("border map degree {k} for n = {n}")));
    }
    let (src, dst) = (ExteriorBasis::graded(n, k), ExteriorBasis::graded(n, k - 1));
    let rows = src
        .subsets()
        .iter()
        .map(|&s| {
            let img = ExteriorVector::<F>::basis(n, s).border();
            SparseVec::from_pairs(img.coeffs.into_iter().map(|(t, c)| (dst.index[&t], c)))
        })
        .collect();
    Ok(SparseMatrix::from_rows(dst.len(), rows))
}

/// The monoid algebra of `NDF_n` (or `NDPF_n`); generators `π_i` then `π̄_i`
/// (only `π_i` for parking functions).
pub fn monoid_algebra<F: Field>(n: usize, parking: bool) -> (Vec<NdFunction>, FinDimAlgebra<F>) {
    let elems = NdFunction::all(n, parking);
    let index: HashMap<&NdFunction, usize> = elems.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mul: Vec<Vec<usize>> = elems.iter().map(|f| elems.iter().map(|g| index[&f.then(g)]).collect()).collect();
    let mut gens: Vec<usize> = (1..n).map(|i| index[&NdFunction::pi(n, i)]).collect();
    if !parking {
        gens.extend((1..n).map(|i| index[&NdFunction::pibar(n, i)]));
    }
    let labels = elems.iter().map(|f| f.label()).collect();
    let unit = index[&NdFunction::identity(n)];
    let name = if parking { format!("NDPF{n}") } else { format!("NDF{n}") };
    let alg = FinDimAlgebra::from_monoid(name, labels, &mul, unit, Some(gens)).expect("monoid algebra is unital");
    (elems, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    #[test]
    fn enumeration_counts() {
        assert_eq!(NdFunction::all(2, false).iter().map(|f| f.label()).collect::<Vec<_>>(), ["11", "12", "22"]);
        assert_eq!(NdFunction::all(3, true).len(), 5);
        for n in 1..=8 {
            let all = NdFunction::all(n, false);
            assert_eq!(all.len() as u64, binomial(2 * n - 1, n - 1));
            assert_eq!(all.iter().filter(|f| f.is_parking()).count() as u64, catalan(n));
            assert_eq!(NdFunction::all(n, true).len() as u64, catalan(n));
        }
    }

    #[test]
    fn closed_monoid() {
        for n in 1..=5 {
            let all: BTreeSet<NdFunction> = NdFunction::all(n, false).into_iter().collect();
            assert!(all.contains(&NdFunction::identity(n)));
            for f in &all {
                for g in &all {
                    assert!(all.contains(&f.then(g)));
                }
            }
        }
        assert!(NdFunction::new(vec![2, 1]).is_err());
        assert!(NdFunction::new(vec![1, 3]).is_err());
    }

    #[test]
    fn generators() {
        for n in 2..=6 {
            let rep = monoid_generator_checks(n).unwrap();
            assert!(rep.passed(), "{:?}", rep.checks.iter().filter(|c| !c.1).collect::<Vec<_>>());
        }
        assert_eq!(monoid_closure(4, &(1..4).map(|i| NdFunction::pi(4, i)).collect::<Vec<_>>()).len(), 14);
    }

    #[test]
    fn exterior_examples() {
        let f = NdFunction::new(vec![1, 1]).unwrap();
        let b = ExteriorBasis::full(2);
        let m: SparseMatrix<Q> = b.action(&f);
        let (e1, e2, e12) = (Subset::from_elems([1]), Subset::from_elems([2]), Subset::from_elems([1, 2]));
        assert_eq!(m.row(b.index(e2).unwrap()), &SparseVec::unit(b.index(e1).unwrap()));
        assert!(m.row(b.index(e12).unwrap()).is_zero());
        for n in 1..=4 {
            assert_eq!(exterior_action::<Q>(&NdFunction::identity(n), None), SparseMatrix::identity((1 << n) - 1));
        }
    }

    #[test]
    fn exterior_is_multiplicative() {
        for n in 1..=4 {
            let b = ExteriorBasis::full(n);
            let all = NdFunction::all(n, false);
            for f in &all {
                for g in &all {
                    assert_eq!(b.action::<Q>(&f.then(g)), b.action::<Q>(f).mul(&b.action(g)));
                }
            }
        }
    }

    #[test]
    fn faithful() {
        assert_eq!(faithfulness_rank(2), 3);
        assert_eq!(faithfulness_rank(3), 10);
        assert_eq!(faithfulness_rank(5), 126);
        assert!(faithfulness_check(4).unwrap());
    }

    #[test]
    fn border_map_properties() {
        let d: SparseMatrix<Q> = border_map(2, 2).unwrap();
        // rows: e_{12}; columns: e_1, e_2
        assert_eq!(d.to_dense(), vec![vec![Q::one(), Q::one().neg()]]);
        for n in 1..=6 {
            for k in 2..=n {
                let (a, b) = (border_map::<Q>(n, k).unwrap(), border_map::<Q>(n, k - 1).unwrap());
                assert!(a.mul(&b).is_zero());
            }
            for k in 1..=n {
                assert_eq!(rank(&border_map::<Q>(n, k).unwrap()) as u64, binomial(n - 1, k - 1));
            }
        }
        for n in 3..=4 {
            for k in 1..=n {
                let d = border_map::<Q>(n, k).unwrap();
                for f in NdFunction::all(n, false) {
                    let lhs = exterior_action::<Q>(&f, Some(k)).mul(&d);
                    let rhs = d.mul(&exterior_action(&f, Some(k - 1)));
                    assert_eq!(lhs, rhs, "{f} k={k}");
                }
            }
        }
    }

    #[test]
    fn exterior_vector_ops() {
        let s = Subset::from_elems([1, 2, 3]);
        let v = ExteriorVector::<Q>::basis(3, s);
        assert!(v.border().border().coeffs.is_empty());
        let f = NdFunction::new(vec![1, 2, 2]).unwrap();
        assert!(v.act(&f).coeffs.is_empty());
    }
}
