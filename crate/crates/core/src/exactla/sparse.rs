use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds from arbitrary (index, value) pairs; duplicates are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, F)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            add_into(&mut acc, i, &v);
        }
        Self::from_map(acc)
    }

    pub(crate) fn from_map(acc: BTreeMap<usize, F>) -> Self {
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Trusted constructor: sorted, nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<F> {
        let mut d = vec![F::zero(); dim];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg(), other)
    }

    /// `self + c * other`, merged in one pass.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = b[j].1.mul(c);
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = a[i].1.add(&b[j].1.mul(c));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &Self) -> F {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut s = F::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s = s.add(&a[i].1.mul(&b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    /// Re-indexes entries through `f` (must be injective).
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

pub(crate) fn add_into<F: Field>(acc: &mut BTreeMap<usize, F>, i: usize, v: &F) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&i) {
        Some(x) => {
            *x = x.add(v);
            if x.is_zero() {
                acc.remove(&i);
            }
        }
        None => {
            acc.insert(i, v.clone());
        }
    }
}

/// `Σ c_k v_k`.
pub fn linear_combination<'a, F: Field + 'a>(terms: impl IntoIterator<Item = (F, &'a SparseVec<F>)>) -> SparseVec<F> {
    let mut acc = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v.entries() {
            add_into(&mut acc, *i, &x.mul(&c));
        }
    }
    SparseVec::from_map(acc)
}

/// Row-sparse matrix. Right-module convention: a row vector `x` maps to `x·M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![SparseVec::zero(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec<F>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < ncols)));
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, trip: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in trip {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of bounds");
            add_into(&mut acc[i], j, &v);
        }
        SparseMatrix { nrows, ncols, rows: acc.into_iter().map(SparseVec::from_map).collect() }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseMatrix { nrows: rows.len(), ncols, rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.rows[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.entries().iter().map(move |(j, v)| (i, *j, v)))
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &SparseVec<F>) -> SparseVec<F> {
        linear_combination(x.entries().iter().map(|(i, c)| (c.clone(), &self.rows[*i])))
    }

    /// Matrix product `self · other` (apply `self` first, then `other`).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matrix product dimension mismatch");
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows: self.rows.iter().map(|r| other.apply(r)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg(), other)
    }

    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "matrix sum dimension mismatch");
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix::from_triplets(self.ncols, self.nrows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn trace(&self) -> F {
        let mut s = F::zero();
        for i in 0..self.nrows.min(self.ncols) {
            s = s.add(&self.rows[i].get(i));
        }
        s
    }

    /// Row-major flattening into a vector of length `nrows * ncols`.
    pub fn flatten(&self) -> SparseVec<F> {
        let nc = self.ncols;
        SparseVec::from_sorted(self.triplets().map(|(i, j, v)| (i * nc + j, v.clone())).collect())
    }

    pub fn unflatten(nrows: usize, ncols: usize, v: &SparseVec<F>) -> Self {
        SparseMatrix::from_triplets(nrows, ncols, v.entries().iter().map(|(k, x)| (k / ncols, k % ncols, x.clone())))
    }

    /// Kronecker product; row `(i, k)` is indexed `i * other.nrows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for a in &self.rows {
            for b in &other.rows {
                let mut e = Vec::with_capacity(a.nnz() * b.nnz());
                for (j, x) in a.entries() {
                    for (l, y) in b.entries() {
                        e.push((j * other.ncols + l, x.mul(y)));
                    }
                }
                rows.push(SparseVec::from_sorted(e));
            }
        }
        SparseMatrix { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r.map_indices(|j| j + self.ncols)));
        SparseMatrix { nrows: self.nrows + other.nrows, ncols: self.ncols + other.ncols, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn to_json(&self) -> SparseMatrixJson {
        SparseMatrixJson {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.triplets().map(|(i, j, v)| (i, j, v.to_exact_string())).collect(),
            row_labels: None,
            col_labels: None,
        }
    }
}

/// Exchange format: `{"nrows":…, "ncols":…, "entries":[[i, j, "p/q"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrixJson {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub row_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub col_labels: Option<Vec<String>>,
}

impl SparseMatrixJson {
    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        self
    }

    pub fn to_matrix(&self) -> Result<SparseMatrix<super::Q>> {
        let mut trip = Vec::with_capacity(self.entries.len());
        for (i, j, s) in &self.entries {
            if *i >= self.nrows || *j >= self.ncols {
                return Err(Error::OutOfRange(format!("entry ({i},{j})")));
            }
            let v = super::Q::parse(s).ok_or_else(|| Error::Invalid(format!("bad scalar {s:?}")))?;
            trip.push((*i, *j, v));
        }
        Ok(SparseMatrix::from_triplets(self.nrows, self.ncols, trip))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn q(x: i64) -> Q {
        Q::from_i64(x)
    }

    #[test]
    fn product_follows_row_convention() {
        // x·(AB) = (x·A)·B
        let a = SparseMatrix::from_dense(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
        let b = SparseMatrix::from_dense(&[vec![q(2), q(0)], vec![q(0), q(3)]]);
        let x = SparseVec::unit(0);
        assert_eq!(a.mul(&b).apply(&x), b.apply(&a.apply(&x)));
        assert_eq!(a.mul(&b).get(0, 1), q(3));
    }

    #[test]
    fn json_round_trip() {
        let m = SparseMatrix::from_triplets(2, 3, [(0, 2, Q::new(1, 2)), (1, 0, q(-3))]);
        let js = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(js, r#"{"nrows":2,"ncols":3,"entries":[[0,2,"1/2"],[1,0,"-3"]]}"#);
        let back: SparseMatrixJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn kron_and_flatten() {
        let a = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(3), q(4)]]);
        let i = SparseMatrix::<Q>::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 2), q(4));
        assert_eq!(k.get(2, 0), q(3));
        assert_eq!(k.trace(), q(10));
        assert_eq!(SparseMatrix::unflatten(2, 2, &a.flatten()), a);
    }
}
