use std::collections::{BTreeMap, HashMap};

use super::field::Field;
use super::sparse::{add_into, linear_combination, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Incrementally echelonized span of sparse vectors.
///
/// Rows are kept in semi-echelon form: every row is normalized so that its
/// leading entry (the pivot) is `1`, and pivots are distinct. When tracking
/// is enabled each row also remembers its expression in the generators
/// passed to [`Subspace::insert`], which gives exact coordinates.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec<F>>>,
    ngens: usize,
}

/// Result of reducing a vector against a subspace.
#[derive(Clone, Debug)]
pub enum Membership<F> {
    /// Coordinates in the generating family (empty when tracking is off).
    Member(SparseVec<F>),
    /// The nonzero residual after reduction: a certificate of non-membership.
    NonMember(SparseVec<F>),
}

impl<F: Field> Subspace<F> {
    pub fn new(ambient: usize, track: bool) -> Self {
        Subspace { ambient, rows: Vec::new(), pivot_row: HashMap::new(), combos: track.then(Vec::new), ngens: 0 }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::new(ambient, false)
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(SparseVec::unit), false).unwrap()
    }

    /// Span of `vecs`; with `track`, coordinates refer to positions in `vecs`.
    pub fn span<I: IntoIterator<Item = SparseVec<F>>>(ambient: usize, vecs: I, track: bool) -> Result<Self> {
        let mut s = Self::new(ambient, track);
        for v in vecs {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn is_tracked(&self) -> bool {
        self.combos.is_some()
    }

    fn check_dim(&self, v: &SparseVec<F>) -> Result<()> {
        match v.max_index() {
            Some(m) if m >= self.ambient => {
                Err(Error::SizeMismatch(format!("vector index {m} outside ambient dimension {}", self.ambient)))
            }
            _ => Ok(()),
        }
    }

    /// Reduces `v`; returns the residual and, if tracking, the combination of
    /// existing rows that was subtracted (in generator coordinates).
    fn reduce_inner(&self, v: &SparseVec<F>) -> (SparseVec<F>, BTreeMap<usize, F>) {
        let mut acc: BTreeMap<usize, F> = v.entries().iter().cloned().collect();
        let mut used: BTreeMap<usize, F> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let r = self.pivot_row[&col];
            let neg = coef.neg();
            for (j, x) in self.rows[r].entries() {
                add_into(&mut acc, *j, &x.mul(&neg));
            }
            if let Some(combos) = &self.combos {
                for (g, x) in combos[r].entries() {
                    add_into(&mut used, *g, &x.mul(&coef));
                }
            }
            cursor = col + 1;
        }
        (SparseVec::from_map(acc), used)
    }

    /// Adds `v` to the spanning family. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> Result<bool> {
        self.check_dim(&v)?;
        let g = self.ngens;
        self.ngens += 1;
        let (res, used) = self.reduce_inner(&v);
        let Some((pivot, lead)) = res.leading().cloned() else {
            return Ok(false);
        };
        let inv = lead.inv();
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(res.scale(&inv));
        if let Some(combos) = &mut self.combos {
            // row = (v - Σ used) / lead
            let mut c = used;
            for x in c.values_mut() {
                *x = x.neg();
            }
            add_into(&mut c, g, &F::one());
            let c = SparseVec::from_map(c).scale(&inv);
            combos.push(c);
        }
        Ok(true)
    }

    pub fn membership(&self, v: &SparseVec<F>) -> Result<Membership<F>> {
        self.check_dim(v)?;
        let (res, used) = self.reduce_inner(v);
        if res.is_zero() {
            Ok(Membership::Member(SparseVec::from_map(used)))
        } else {
            Ok(Membership::NonMember(res))
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_inner(v).0.is_zero()
    }

    /// Exact coordinates of `v` in the generating family (tracking required).
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.combos.is_some(), "coordinates require a tracked subspace");
        match self.membership(v) {
            Ok(Membership::Member(c)) => Some(c),
            _ => None,
        }
    }

    /// Rows of the semi-echelon basis (insertion order).
    pub fn echelon_rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Canonical reduced row echelon basis, sorted by pivot column.
    pub fn rref_basis(&self) -> Vec<SparseVec<F>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading().unwrap().0);
        // back-substitute from the last pivot upwards
        let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(order.len());
        let mut done = Subspace::<F>::new(self.ambient, false);
        for &r in order.iter().rev() {
            let row = &self.rows[r];
            let (p, _) = row.leading().unwrap().clone();
            // eliminate entries of later pivots (they are already fully reduced)
            let mut acc: BTreeMap<usize, F> = row.entries().iter().cloned().collect();
            let later: Vec<usize> = acc.keys().copied().filter(|c| *c != p && done.pivot_row.contains_key(c)).collect();
            for c in later {
                let coef = match acc.get(&c) {
                    Some(x) => x.clone(),
                    None => continue,
                };
                let neg = coef.neg();
                for (j, x) in done.rows[done.pivot_row[&c]].entries() {
                    add_into(&mut acc, *j, &x.mul(&neg));
                }
            }
            let v = SparseVec::from_map(acc);
            done.pivot_row.insert(p, done.rows.len());
            done.rows.push(v.clone());
            reduced.push(v);
        }
        reduced.reverse();
        reduced
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_as(&self, other: &Subspace<F>) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Subspace sum.
    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if self.ambient != other.ambient {
            return Err(Error::SizeMismatch(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Subspace::span(self.ambient, self.rows.iter().chain(other.rows.iter()).cloned(), false)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        let n = self.ambient;
        if n != other.ambient {
            return Err(Error::SizeMismatch(format!("ambient {} vs {}", n, other.ambient)));
        }
        let mut z = Subspace::new(2 * n, false);
        for a in &self.rows {
            z.insert(a.add(&a.map_indices(|j| j + n)))?;
        }
        for b in &other.rows {
            z.insert(b.clone())?;
        }
        let right = z.rows.iter().filter(|r| r.leading().unwrap().0 >= n).map(|r| r.map_indices(|j| j - n));
        Subspace::span(n, right, false)
    }
}

/// `V / W` with a basis of representatives and the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    ambient: usize,
    sub_dim: usize,
    reps: Vec<SparseVec<F>>,
    // tracked span of (W basis ++ reps)
    combined: Subspace<F>,
}

impl<F: Field> Quotient<F> {
    pub fn reps(&self) -> &[SparseVec<F>] {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coordinates of the class of `v` in the representative basis;
    /// `None` when `v ∉ V`.
    pub fn project(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let c = self.combined.coordinates(v)?;
        let k = self.sub_dim;
        Some(SparseVec::from_sorted(c.entries().iter().filter(|(i, _)| *i >= k).map(|(i, x)| (i - k, x.clone())).collect()))
    }
}

/// Quotient `V / W`; errors when `W ⊄ V`.
pub fn quotient_space<F: Field>(v: &Subspace<F>, w: &Subspace<F>) -> Result<Quotient<F>> {
    if !w.is_subspace_of(v) {
        return Err(Error::NotASubspace);
    }
    let wb = w.rref_basis();
    let mut probe = Subspace::span(v.ambient(), wb.iter().cloned(), false)?;
    let mut reps = Vec::new();
    for b in v.rref_basis() {
        if probe.insert(b.clone())? {
            reps.push(b);
        }
    }
    let combined = Subspace::span(v.ambient(), wb.iter().cloned().chain(reps.iter().cloned()), true)?;
    Ok(Quotient { ambient: v.ambient(), sub_dim: wb.len(), reps, combined })
}

/// Rank of a matrix.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    Subspace::span(m.ncols(), m.rows().iter().cloned(), false).expect("rows fit").dim()
}

/// Basis of `{x : M xᵀ = 0}` (column kernel), in canonical reduced form.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let s = Subspace::span(m.ncols(), m.rows().iter().cloned(), false).expect("rows fit");
    kernel_from_rref(m.ncols(), &s.rref_basis())
}

/// Kernel of the row space given in reduced echelon form.
pub fn kernel_from_rref<F: Field>(ncols: usize, rref: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let pivots: Vec<usize> = rref.iter().map(|r| r.leading().unwrap().0).collect();
    let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    // column f -> list of (pivot col, coefficient at f)
    let mut by_free: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
    for (r, p) in rref.iter().zip(&pivots) {
        for (j, x) in r.entries() {
            if *j != *p {
                by_free.entry(*j).or_default().push((*p, x.clone()));
            }
        }
    }
    (0..ncols)
        .filter(|c| !is_pivot.contains(c))
        .map(|f| {
            let mut e: Vec<(usize, F)> = by_free.remove(&f).unwrap_or_default().into_iter().map(|(p, x)| (p, x.neg())).collect();
            e.push((f, F::one()));
            SparseVec::from_pairs(e)
        })
        .collect()
}

/// Basis of `{x : x·M = 0}` (left kernel).
pub fn left_kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    kernel_basis(&m.transpose())
}

/// Solves `x·M = b` for the row vector `x`, if possible.
pub fn solve_left<F: Field>(m: &SparseMatrix<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    let s = Subspace::span(m.ncols(), m.rows().iter().cloned(), true).ok()?;
    s.coordinates(b)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse<F: Field>(m: &SparseMatrix<F>) -> Option<SparseMatrix<F>> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let s = Subspace::span(n, m.rows().iter().cloned(), true).ok()?;
    if s.dim() < n {
        return None;
    }
    // row i of M^{-1} = coordinates of e_i in the rows of M
    let rows = (0..n).map(|i| s.coordinates(&SparseVec::unit(i)).unwrap()).collect();
    Some(SparseMatrix::from_rows(n, rows))
}

/// `Σ c_k v_k` over a slice of generators.
pub fn combine<F: Field>(coords: &SparseVec<F>, gens: &[SparseVec<F>]) -> SparseVec<F> {
    linear_combination(coords.entries().iter().map(|(i, c)| (c.clone(), &gens[*i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{F31, Q};

    fn q(x: i64) -> Q {
        Q::from_i64(x)
    }

    fn v(xs: &[i64]) -> SparseVec<Q> {
        SparseVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel_examples() {
        let id = SparseMatrix::<Q>::identity(3);
        assert_eq!(rank(&id), 3);
        assert!(kernel_basis(&id).is_empty());
        let z = SparseMatrix::<Q>::zero(2, 5);
        assert_eq!(rank(&z), 0);
        assert_eq!(kernel_basis(&z).len(), 5);
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(k[0].get(0).mul(&q(-1)), k[0].get(1).mul(&q(2)));
    }

    #[test]
    fn membership_and_intersection() {
        let e1 = v(&[1, 0, 0]);
        let e2 = v(&[0, 1, 0]);
        let e3 = v(&[0, 0, 1]);
        let s = Subspace::span(3, [e1.add(&e2)], true).unwrap();
        match s.membership(&e1.add(&e2)).unwrap() {
            Membership::Member(c) => assert_eq!(c, SparseVec::unit(0)),
            _ => panic!(),
        }
        let span2 = Subspace::span(3, [e2.clone()], false).unwrap();
        assert!(matches!(span2.membership(&e1).unwrap(), Membership::NonMember(_)));
        let a = Subspace::span(3, [e1.clone(), e2.clone()], false).unwrap();
        let b = Subspace::span(3, [e2.clone(), e3.clone()], false).unwrap();
        let i = a.intersect(&b).unwrap();
        assert!(i.same_as(&span2));
        assert!(Subspace::<Q>::zero(2).membership(&v(&[0, 0, 1])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::<Q>::full(2);
        let w = Subspace::span(2, [v(&[1, 0])], false).unwrap();
        assert_eq!(quotient_space(&full, &w).unwrap().dim(), 1);
        assert_eq!(quotient_space(&full, &full).unwrap().dim(), 0);
        let qz = quotient_space(&full, &Subspace::zero(2)).unwrap();
        assert_eq!(qz.dim(), 2);
        assert_eq!(qz.project(&v(&[3, 4])).unwrap(), v(&[3, 4]));
        let small = Subspace::span(2, [v(&[0, 1])], false).unwrap();
        assert!(matches!(quotient_space(&w, &small), Err(Error::NotASubspace)));
        // projection kills W
        let qw = quotient_space(&full, &w).unwrap();
        assert!(qw.project(&v(&[5, 0])).unwrap().is_zero());
    }

    #[test]
    fn inverse_matrix() {
        let m = SparseMatrix::from_dense(&[vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(2));
        assert!(inverse(&SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]])).is_none());
    }

    fn small_matrix() -> impl proptest::strategy::Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 1..6)
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<Q>>>());
            let k = kernel_basis(&m);
            proptest::prop_assert_eq!(rank(&m) + k.len(), 5);
            for x in &k {
                for r in m.rows() {
                    proptest::prop_assert!(r.dot(x).is_zero());
                }
            }
        }

        #[test]
        fn rref_is_canonical(rows in small_matrix(), seed in 0usize..100) {
            let vecs: Vec<SparseVec<Q>> = rows.iter().map(|r| v(r)).collect();
            let mut perm = vecs.clone();
            let len = perm.len();
            perm.rotate_left(seed % len);
            let a = Subspace::span(5, vecs, false).unwrap().rref_basis();
            let b = Subspace::span(5, perm, false).unwrap().rref_basis();
            proptest::prop_assert_eq!(a, b);
        }

        #[test]
        fn fp_rank_matches_rational(rows in small_matrix()) {
            let mq = SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<Q>>>());
            let mp = SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| F31::from_i64(x)).collect()).collect::<Vec<Vec<F31>>>());
            proptest::prop_assert_eq!(rank(&mq), rank(&mp));
        }
    }
}
