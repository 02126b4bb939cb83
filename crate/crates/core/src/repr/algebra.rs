use crate::combinatorics::Poset;
use crate::error::{Error, Result};
use crate::exactla::{combine, kernel_basis, linear_combination, rank, Field, SparseMatrix, SparseVec, Subspace};

/// A finite-dimensional associative unital algebra given by structure
/// constants on a labeled basis.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra<F> {
    name: String,
    labels: Vec<String>,
    // table[a][b] = e_a * e_b
    table: Vec<Vec<SparseVec<F>>>,
    unit: SparseVec<F>,
    generators: Option<Vec<usize>>,
}

impl<F: Field> FinDimAlgebra<F> {
    /// Builds from a full multiplication table. Unit laws are checked.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec<F>>>,
        unit: SparseVec<F>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let d = labels.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(Error::SizeMismatch(format!("table is not {d}x{d}")));
        }
        let alg = FinDimAlgebra { name: name.into(), labels, table, unit, generators };
        alg.check_unit()?;
        Ok(alg)
    }

    /// Monoid algebra from an index multiplication table.
    pub fn from_monoid(
        name: impl Into<String>,
        labels: Vec<String>,
        mul: &[Vec<usize>],
        unit: usize,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let table = mul.iter().map(|r| r.iter().map(|&c| SparseVec::unit(c)).collect()).collect();
        Self::from_table(name, labels, table, SparseVec::unit(unit), generators)
    }

    /// Algebra spanned by linearly independent operators closed under
    /// product; structure constants are obtained by exact coordinates.
    pub fn from_operators(
        name: impl Into<String>,
        labels: Vec<String>,
        ops: &[SparseMatrix<F>],
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = ops.first().map_or(0, |o| o.nrows());
        let span = Subspace::span(n * n, ops.iter().map(|o| o.flatten()), true)?;
        if span.dim() != ops.len() {
            return Err(Error::Verification(format!("{name}: operators are linearly dependent")));
        }
        let coords = |m: &SparseMatrix<F>| {
            span.coordinates(&m.flatten())
                .ok_or_else(|| Error::Verification(format!("{name}: span not closed under product")))
        };
        let mut table = Vec::with_capacity(ops.len());
        for a in ops {
            let row = ops.iter().map(|b| coords(&a.mul(b))).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let unit = coords(&SparseMatrix::identity(n))?;
        Self::from_table(name, labels, table, unit, generators)
    }

    /// The one-dimensional algebra (the degree-zero floor of every tower).
    pub fn trivial(name: impl Into<String>) -> Self {
        FinDimAlgebra {
            name: name.into(),
            labels: vec!["1".into()],
            table: vec![vec![SparseVec::unit(0)]],
            unit: SparseVec::unit(0),
            generators: Some(vec![]),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    /// Basis indices used to test module morphisms: the generators when
    /// known, otherwise the whole basis.
    pub fn test_elements(&self) -> Vec<usize> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim()).collect(),
        }
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec<F> {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut terms = Vec::new();
        for (a, ca) in x.entries() {
            for (b, cb) in y.entries() {
                terms.push((ca.mul(cb), &self.table[*a][*b]));
            }
        }
        linear_combination(terms)
    }

    pub fn check_unit(&self) -> Result<()> {
        for a in 0..self.dim() {
            let e = SparseVec::unit(a);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Verification(format!("{}: unit law fails at {}", self.name, self.labels[a])));
            }
        }
        Ok(())
    }

    /// Exhaustive associativity on basis triples; returns the first failing triple.
    pub fn check_associative(&self) -> std::result::Result<(), (usize, usize, usize)> {
        self.check_associative_against(&(0..self.dim()).collect::<Vec<_>>())
    }

    /// `(ab)c = a(bc)` for all basis `a, b` and the listed `c`. When the
    /// listed elements generate the algebra (and the unit law holds), this
    /// implies associativity: induct on the length of words in them.
    pub fn check_associative_against(&self, right: &[usize]) -> std::result::Result<(), (usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = &self.table[a][b];
                for &c in right {
                    let left = linear_combination(ab.entries().iter().map(|(k, x)| (x.clone(), &self.table[*k][c])));
                    let right = self.mul(&SparseVec::unit(a), &self.table[b][c]);
                    if left != right {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Matrix of `x ↦ x·e_a` in the row convention.
    pub fn right_regular(&self, a: usize) -> SparseMatrix<F> {
        SparseMatrix::from_rows(self.dim(), (0..self.dim()).map(|x| self.table[x][a].clone()).collect())
    }

    /// Trace of left multiplication by each basis element.
    fn left_traces(&self) -> Vec<F> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                let mut s = F::zero();
                for x in 0..d {
                    s = s.add(&self.table[a][x].get(x));
                }
                s
            })
            .collect()
    }

    /// Jacobson radical as the kernel of the trace form `(a, b) ↦ tr(L_{ab})`.
    /// Valid in characteristic zero only.
    pub fn radical(&self) -> Result<Subspace<F>> {
        if F::characteristic() != 0 {
            return Err(Error::NonZeroCharacteristic);
        }
        let d = self.dim();
        let t = self.left_traces();
        let rows = (0..d)
            .map(|a| {
                let entries = (0..d).map(|b| self.table[a][b].entries().iter().fold(F::zero(), |s, (c, x)| s.add(&x.mul(&t[*c]))));
                SparseVec::from_dense(&entries.collect::<Vec<_>>())
            })
            .collect();
        let form = SparseMatrix::from_rows(d, rows);
        Subspace::span(d, kernel_basis(&form), false)
    }

    /// Whether `w` is a two-sided ideal.
    pub fn is_two_sided_ideal(&self, w: &Subspace<F>) -> bool {
        let basis = w.rref_basis();
        basis.iter().all(|v| {
            (0..self.dim()).all(|a| {
                let e = SparseVec::unit(a);
                w.contains(&self.mul(v, &e)) && w.contains(&self.mul(&e, v))
            })
        })
    }

    /// Whether products of `len` elements of `w` vanish.
    pub fn is_nilpotent_of_order(&self, w: &Subspace<F>, len: usize) -> bool {
        let basis = w.rref_basis();
        let mut power = basis.clone();
        for _ in 1..len {
            let prods: Vec<SparseVec<F>> =
                power.iter().flat_map(|p| basis.iter().map(move |b| (p, b))).map(|(p, b)| self.mul(p, b)).collect();
            power = Subspace::span(self.dim(), prods, false).map(|s| s.rref_basis()).unwrap_or_default();
            if power.is_empty() {
                return true;
            }
        }
        power.is_empty()
    }

    /// Tensor product algebra; basis `(a, b)` is indexed `a * other.dim() + b`.
    pub fn tensor(&self, other: &FinDimAlgebra<F>) -> FinDimAlgebra<F> {
        let (da, db) = (self.dim(), other.dim());
        let kron = |x: &SparseVec<F>, y: &SparseVec<F>| {
            SparseVec::from_pairs(
                x.entries().iter().flat_map(|(i, a)| y.entries().iter().map(move |(j, b)| (i * db + j, a.mul(b)))),
            )
        };
        let mut labels = Vec::with_capacity(da * db);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut table = Vec::with_capacity(da * db);
        for a in 0..da {
            for b in 0..db {
                let mut row = Vec::with_capacity(da * db);
                for c in 0..da {
                    for d in 0..db {
                        row.push(kron(&self.table[a][c], &other.table[b][d]));
                    }
                }
                table.push(row);
            }
        }
        let unit = kron(&self.unit, &other.unit);
        let generators = match (&self.generators, &other.generators, unit_index(&self.unit), unit_index(&other.unit)) {
            (Some(g), Some(h), Some(ua), Some(ub)) => {
                let mut v: Vec<usize> = g.iter().map(|&x| x * db + ub).collect();
                v.extend(h.iter().map(|&y| ua * db + y));
                Some(v)
            }
            _ => None,
        };
        FinDimAlgebra { name: format!("{}⊗{}", self.name, other.name), labels, table, unit, generators }
    }

    /// Direct sum of algebras (block-diagonal).
    pub fn direct_sum(name: impl Into<String>, parts: &[FinDimAlgebra<F>]) -> FinDimAlgebra<F> {
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        let mut labels = Vec::with_capacity(total);
        let mut table = vec![vec![SparseVec::zero(); total]; total];
        let mut unit = SparseVec::zero();
        let mut off = 0;
        for p in parts {
            labels.extend(p.labels.iter().cloned());
            for a in 0..p.dim() {
                for b in 0..p.dim() {
                    table[off + a][off + b] = p.table[a][b].map_indices(|i| i + off);
                }
            }
            unit = unit.add(&p.unit.map_indices(|i| i + off));
            off += p.dim();
        }
        FinDimAlgebra { name: name.into(), labels, table, unit, generators: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Subspace `x·A·y` spanned by `x e_a y`.
    pub fn sandwich_span(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> Subspace<F> {
        let vecs = (0..self.dim()).map(|a| self.mul(&self.mul(x, &SparseVec::unit(a)), y));
        Subspace::span(self.dim(), vecs, false).expect("vectors lie in the algebra")
    }
}

fn unit_index<F: Field>(u: &SparseVec<F>) -> Option<usize> {
    match u.entries() {
        [(i, x)] if x.is_one() => Some(*i),
        _ => None,
    }
}

/// Incidence algebra of a poset: basis = comparable pairs, `(u,v)(v,w) = (u,w)`.
pub fn incidence_algebra<F: Field, E: Clone + std::fmt::Debug + std::fmt::Display>(
    name: impl Into<String>,
    p: &Poset<E>,
) -> FinDimAlgebra<F> {
    let pairs = p.comparable_pairs();
    let index: std::collections::HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let labels = pairs.iter().map(|&(u, v)| format!("({},{})", p.elements()[u], p.elements()[v])).collect();
    let table = pairs
        .iter()
        .map(|&(u, v)| {
            pairs
                .iter()
                .map(|&(u2, w)| if v == u2 { SparseVec::unit(index[&(u, w)]) } else { SparseVec::zero() })
                .collect()
        })
        .collect();
    let unit = SparseVec::from_pairs((0..p.len()).map(|u| (index[&(u, u)], F::one())));
    FinDimAlgebra::from_table(name, labels, table, unit, None).expect("incidence algebra is unital")
}

/// Checks that `map` (images of the basis of `a` in `b`) is an algebra
/// isomorphism: bijective, unital and multiplicative on all basis pairs.
pub fn algebra_isomorphic_via<F: Field>(a: &FinDimAlgebra<F>, b: &FinDimAlgebra<F>, map: &[SparseVec<F>]) -> Result<bool> {
    if a.dim() != b.dim() || map.len() != a.dim() {
        return Err(Error::SizeMismatch(format!("dim {} vs {} (map of length {})", a.dim(), b.dim(), map.len())));
    }
    if rank(&SparseMatrix::from_rows(b.dim(), map.to_vec())) != a.dim() {
        return Ok(false);
    }
    if combine(a.unit(), map) != *b.unit() {
        return Ok(false);
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            if combine(a.basis_product(x, y), map) != b.mul(&map[x], &map[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`verify_idempotent_family`].
#[derive(Clone, Debug, Default)]
pub struct IdempotentReport {
    pub failures: Vec<String>,
}

impl IdempotentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `e² = e`, `e f = 0` for distinct members, and `Σ e = 1`.
pub fn verify_idempotent_family<F: Field>(alg: &FinDimAlgebra<F>, fam: &[SparseVec<F>]) -> IdempotentReport {
    let mut rep = IdempotentReport::default();
    for (i, e) in fam.iter().enumerate() {
        for (j, f) in fam.iter().enumerate() {
            let p = alg.mul(e, f);
            if i == j && p != *e {
                rep.failures.push(format!("member {i} is not idempotent"));
            } else if i != j && !p.is_zero() {
                rep.failures.push(format!("members {i},{j} are not orthogonal"));
            }
        }
    }
    let sum = fam.iter().fold(SparseVec::zero(), |s, e| s.add(e));
    if sum != *alg.unit() {
        rep.failures.push("family does not sum to the unit".into());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{boolean_lattice, Subset};
    use crate::exactla::Q;

    fn group_algebra_s2() -> FinDimAlgebra<Q> {
        FinDimAlgebra::from_monoid("S2", vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]], 0, Some(vec![1])).unwrap()
    }

    fn hecke0_2() -> FinDimAlgebra<Q> {
        // basis 1, π ; π² = π
        FinDimAlgebra::from_monoid("H2(0)", vec!["1".into(), "π".into()], &[vec![0, 1], vec![1, 1]], 0, Some(vec![1])).unwrap()
    }

    #[test]
    fn radical_examples() {
        assert_eq!(group_algebra_s2().radical().unwrap().dim(), 0);
        assert_eq!(hecke0_2().radical().unwrap().dim(), 0);
        let p = boolean_lattice(1);
        let inc: FinDimAlgebra<Q> = incidence_algebra("B1", &p);
        let rad = inc.radical().unwrap();
        assert_eq!(rad.dim(), 1);
        assert!(inc.is_two_sided_ideal(&rad));
        assert!(inc.is_nilpotent_of_order(&rad, 2));
    }

    #[test]
    fn radical_rejects_prime_field() {
        let a: FinDimAlgebra<crate::exactla::F31> =
            FinDimAlgebra::from_monoid("S2", vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]], 0, None).unwrap();
        assert!(matches!(a.radical(), Err(Error::NonZeroCharacteristic)));
    }

    #[test]
    fn incidence_algebra_examples() {
        let chain = crate::combinatorics::grassmann_poset(2, 1);
        let a: FinDimAlgebra<Q> = incidence_algebra("chain", &chain);
        assert_eq!(a.dim(), 3);
        assert!(a.check_associative().is_ok());
        let anti = crate::combinatorics::Poset::new(vec![1, 2, 3], |x, y| x == y).unwrap();
        let b: FinDimAlgebra<Q> = incidence_algebra("anti", &anti);
        assert_eq!(b.dim(), 3);
        assert!(b.is_commutative());
        let b2: FinDimAlgebra<Q> = incidence_algebra("B2", &boolean_lattice(2));
        assert_eq!(b2.dim(), 9);
        assert!(b2.check_associative().is_ok());
        let _ = Subset::empty();
    }

    #[test]
    fn isomorphism_and_idempotents() {
        let a = hecke0_2();
        let id: Vec<SparseVec<Q>> = (0..2).map(SparseVec::unit).collect();
        assert!(algebra_isomorphic_via(&a, &a, &id).unwrap());
        assert!(verify_idempotent_family(&a, &[SparseVec::unit(0)]).passed());
        let pi = SparseVec::unit(1);
        let one_minus = SparseVec::unit(0).sub(&pi);
        assert!(verify_idempotent_family(&a, &[pi.clone(), one_minus]).passed());
        assert!(!verify_idempotent_family(&a, &[pi]).passed());
        assert!(algebra_isomorphic_via(&a, &group_algebra_s2(), &id).is_ok_and(|b| !b));
    }

    #[test]
    fn tensor_algebra_generators() {
        let t = hecke0_2().tensor(&group_algebra_s2());
        assert_eq!(t.dim(), 4);
        assert_eq!(t.generators().unwrap(), &[2, 1]);
        assert!(t.check_associative().is_ok());
    }
}
