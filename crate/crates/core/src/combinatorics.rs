//! Permutations, compositions, descent sets and the finite posets used by
//! the towers (refinement, boolean lattice, Grassmann lattice).
//!
//! Permutations are one-line words over `1..=n`. The group product follows
//! the right action on positions: `(a * b)(j) = a(b(j))`, so that
//! `mu.compose(&s_i)` swaps the letters of `mu` in positions `i` and `i + 1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite subset of `{1, .., 32}` stored as a bitmask (bit `s - 1` for `s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Subset(pub u32);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut bits = 0u32;
        for s in elems {
            assert!((1..=32).contains(&s), "subset element {s} out of range");
            bits |= 1 << (s - 1);
        }
        Subset(bits)
    }

    /// `{1, .., n}`.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn contains(self, s: usize) -> bool {
        s >= 1 && s <= 32 && self.0 & (1 << (s - 1)) != 0
    }

    pub fn insert(self, s: usize) -> Self {
        Subset(self.0 | (1 << (s - 1)))
    }

    pub fn remove(self, s: usize) -> Self {
        Subset(self.0 & !(1 << (s - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Increasing list of elements.
    pub fn elems(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn shift(self, by: usize) -> Self {
        Subset(self.0 << by)
    }

    /// Componentwise comparison of the sorted elements (the Grassmann order).
    /// Subsets of different sizes are incomparable.
    pub fn grassmann_leq(self, other: Subset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.elems().iter().zip(other.elems()).all(|(a, b)| *a <= b)
    }

    /// All subsets of `{1, .., n}` in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0u32..(1u32 << n)).map(Subset)
    }

    /// All `k`-subsets of `{1, .., n}` in increasing bitmask order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        Self::all(n).filter(|s| s.len() == k).collect()
    }

    /// Label used in exports: sorted elements joined by commas.
    pub fn label(self) -> String {
        let e = self.elems();
        if e.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A subset of `{1, .., n - 1}` together with its ambient size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescentSet {
    n: usize,
    elems: Subset,
}

impl DescentSet {
    pub fn new(n: usize, elems: Subset) -> Result<Self> {
        if n == 0 && !elems.is_empty() || n > 0 && !elems.is_subset(Subset::full(n - 1)) {
            return Err(Error::OutOfRange(format!("{elems} is not a subset of {{1..{}}}", n.saturating_sub(1))));
        }
        Ok(DescentSet { n, elems })
    }

    pub fn from_elems(n: usize, elems: &[usize]) -> Result<Self> {
        if elems.iter().any(|&e| e == 0 || e >= n) {
            return Err(Error::OutOfRange(format!("{elems:?} not in 1..{n}")));
        }
        Self::new(n, Subset::from_elems(elems.iter().copied()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> Subset {
        self.elems
    }

    pub fn elems(&self) -> Vec<usize> {
        self.elems.elems()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.contains(i)
    }

    pub fn complement(&self) -> DescentSet {
        let full = if self.n == 0 { Subset(0) } else { Subset::full(self.n - 1) };
        DescentSet { n: self.n, elems: Subset(full.0 & !self.elems.0) }
    }
}

/// A composition of `n`: a sequence of positive parts summing to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(i_1, i_2 - i_1, .., n - i_p)`.
    pub fn from_descent_set(s: &DescentSet) -> Composition {
        let n = s.n();
        if n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for i in s.elems() {
            parts.push(i - prev);
            prev = i;
        }
        parts.push(n - prev);
        Composition(parts)
    }

    pub fn descent_set(&self) -> DescentSet {
        let n = self.size();
        let mut acc = 0;
        let mut bits = Subset::empty();
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            bits = bits.insert(acc);
        }
        DescentSet { n, elems: bits }
    }

    pub fn complement(&self) -> Composition {
        Composition::from_descent_set(&self.descent_set().complement())
    }

    /// `self` is finer than `other`: `Des(self) ⊇ Des(other)`.
    pub fn refines(&self, other: &Composition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!("{self} and {other}")));
        }
        Ok(other.descent_set().set().is_subset(self.descent_set().set()))
    }

    /// Concatenation.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// Near-concatenation: last part of `self` merged with first part of `other`.
    pub fn near_concat(&self, other: &Composition) -> Option<Composition> {
        if self.is_empty() || other.is_empty() {
            return None;
        }
        let mut v = self.0.clone();
        *v.last_mut().unwrap() += other.0[0];
        v.extend_from_slice(&other.0[1..]);
        Some(Composition(v))
    }

    /// All compositions of `n`, ordered by descent-set bitmask.
    pub fn all(n: usize) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition::empty()];
        }
        Subset::all(n - 1)
            .map(|s| Composition::from_descent_set(&DescentSet { n, elems: s }))
            .collect()
    }

    /// `n! / (i_1! i_2! ..)`.
    pub fn multinomial(&self) -> u64 {
        let mut r = factorial(self.size());
        for &p in &self.0 {
            r /= factorial(p);
        }
        r
    }

    /// Label "2,1" (empty composition: "").
    pub fn label(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(s: &str) -> Result<Composition> {
        if s.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Invalid(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

pub fn catalan(n: usize) -> u64 {
    binomial(2 * n, n) / (n as u64 + 1)
}

/// A permutation of `{1, .., n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &w in &word {
            let w = w as usize;
            if w == 0 || w > n || seen[w] {
                return Err(Error::Invalid(format!("{word:?} is not a permutation")));
            }
            seen[w] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The elementary transposition `s_i` of `S_n`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut w: Vec<u8> = (1..=n as u8).collect();
        w.swap(i - 1, i);
        Permutation(w)
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    /// `mu(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// Group product `self * other`, i.e. `j -> self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j as usize - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// Swap of positions `i, i + 1` (right multiplication by `s_i`).
    pub fn swap_positions(&self, i: usize) -> Permutation {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Permutation(w)
    }

    /// Swap of the values `i, i + 1` (left multiplication by `s_i`).
    pub fn swap_values(&self, i: usize) -> Permutation {
        Permutation(
            self.0
                .iter()
                .map(|&v| {
                    if v as usize == i {
                        (i + 1) as u8
                    } else if v as usize == i + 1 {
                        i as u8
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Number of inversions (Coxeter length).
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn descents(&self) -> DescentSet {
        let w = &self.0;
        let elems = Subset::from_elems((1..w.len()).filter(|&i| w[i - 1] > w[i]));
        DescentSet { n: w.len(), elems }
    }

    pub fn recoils(&self) -> DescentSet {
        self.inverse().descents()
    }

    /// A reduced word `[i_1, .., i_k]` with `self = s_{i_1} .. s_{i_k}`
    /// (lexicographically smallest among bubble-sort words).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (1..w.n()).find(|&i| w.0[i - 1] > w.0[i]) {
            w = w.swap_positions(i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Concatenation `self × other` (second block shifted by `self.n()`).
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.n() as u8;
        let mut w = self.0.clone();
        w.extend(other.0.iter().map(|&v| v + m));
        Permutation(w)
    }

    /// Cycle type as a non-increasing partition.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut ct = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize - 1;
                len += 1;
            }
            ct.push(len);
        }
        ct.sort_unstable_by(|a, b| b.cmp(a));
        ct
    }

    /// All permutations of `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn label(&self) -> String {
        if self.n() < 10 {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The standard Young subgroup `S_I`: permutations stabilizing every block of `I`.
pub fn young_subgroup(i: &Composition) -> Vec<Permutation> {
    let mut out = vec![Vec::<u8>::new()];
    let mut offset = 0u8;
    for &p in i.parts() {
        let block = Permutation::all(p);
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for b in &block {
                let mut w = prefix.clone();
                w.extend(b.word().iter().map(|&v| v + offset));
                next.push(w);
            }
        }
        out = next;
        offset += p as u8;
    }
    let mut perms: Vec<Permutation> = out.into_iter().map(Permutation).collect();
    perms.sort();
    perms
}

/// `S_n` ordered by (length, lexicographic word); extends the right weak order.
pub fn weak_order_linear_extension(n: usize) -> Vec<Permutation> {
    let mut all = Permutation::all(n);
    all.sort_by_cached_key(|p| (p.length(), p.clone()));
    all
}

/// A finite poset on indexed elements with an explicit order relation.
#[derive(Clone, Debug)]
pub struct Poset<E> {
    elements: Vec<E>,
    leq: Vec<Vec<bool>>,
    moebius: OnceLock<Vec<Vec<i64>>>,
}

impl<E: Clone + fmt::Debug> Poset<E> {
    /// Builds the poset and checks reflexivity, antisymmetry and transitivity.
    pub fn new(elements: Vec<E>, leq: impl Fn(&E, &E) -> bool) -> Result<Self> {
        let m = elements.len();
        let rel: Vec<Vec<bool>> =
            (0..m).map(|i| (0..m).map(|j| leq(&elements[i], &elements[j])).collect()).collect();
        for i in 0..m {
            if !rel[i][i] {
                return Err(Error::Invalid(format!("not reflexive at {:?}", elements[i])));
            }
            for j in 0..m {
                if i != j && rel[i][j] && rel[j][i] {
                    return Err(Error::Invalid(format!("not antisymmetric: {:?}, {:?}", elements[i], elements[j])));
                }
                if rel[i][j] {
                    for k in 0..m {
                        if rel[j][k] && !rel[i][k] {
                            return Err(Error::Invalid(format!("not transitive at {:?}", elements[j])));
                        }
                    }
                }
            }
        }
        Ok(Poset { elements, leq: rel, moebius: OnceLock::new() })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// All comparable pairs `(x, y)` with `x <= y`, ordered by `(x, y)`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        (0..m).flat_map(|x| (0..m).filter(move |&y| self.leq[x][y]).map(move |y| (x, y))).collect()
    }

    /// Möbius function; `0` when `x` is not below `y`.
    pub fn moebius(&self, x: usize, y: usize) -> i64 {
        self.moebius.get_or_init(|| self.moebius_table())[x][y]
    }

    fn moebius_table(&self) -> Vec<Vec<i64>> {
        let m = self.len();
        // order indices by the number of elements below (a linear extension)
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&y| (0..m).filter(|&z| self.leq[z][y]).count());
        let mut mu = vec![vec![0i64; m]; m];
        for x in 0..m {
            for &y in &order {
                if !self.leq[x][y] {
                    continue;
                }
                if x == y {
                    mu[x][y] = 1;
                } else {
                    let s: i64 = (0..m).filter(|&z| z != y && self.leq[x][z] && self.leq[z][y]).map(|z| mu[x][z]).sum();
                    mu[x][y] = -s;
                }
            }
        }
        mu
    }

    pub fn index_of(&self, e: &E) -> Option<usize>
    where
        E: PartialEq,
    {
        self.elements.iter().position(|x| x == e)
    }
}

/// `G_{n,k}`: `k`-subsets of `{1..n}` under the componentwise order.
pub fn grassmann_poset(n: usize, k: usize) -> Poset<Subset> {
    Poset::new(Subset::all_of_size(n, k), |a, b| a.grassmann_leq(*b)).expect("Grassmann order is a partial order")
}

/// `B_n`: all subsets of `{1..n}` under inclusion.
pub fn boolean_lattice(n: usize) -> Poset<Subset> {
    Poset::new(Subset::all(n).collect(), |a, b| a.is_subset(*b)).expect("inclusion is a partial order")
}

/// Map from items to their index in a list.
pub fn index_map<T: Clone + Eq + std::hash::Hash>(items: &[T]) -> HashMap<T, usize> {
    items.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}

/// Closure of `gens` under a binary product, starting from `unit`.
pub fn monoid_closure<T: Clone + Ord>(unit: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> BTreeSet<T> {
    let mut seen = BTreeSet::new();
    seen.insert(unit.clone());
    let mut frontier = vec![unit];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| b - b'0').collect()).unwrap()
    }

    #[test]
    fn composition_from_subset_examples() {
        let s = DescentSet::from_elems(4, &[1, 3]).unwrap();
        assert_eq!(Composition::from_descent_set(&s), comp(&[1, 2, 1]));
        assert_eq!(Composition::from_descent_set(&DescentSet::from_elems(3, &[]).unwrap()), comp(&[3]));
        assert_eq!(Composition::from_descent_set(&DescentSet::from_elems(4, &[1, 2, 3]).unwrap()), comp(&[1, 1, 1, 1]));
    }

    #[test]
    fn descent_set_examples_and_round_trip() {
        assert_eq!(comp(&[1, 2, 1]).descent_set().elems(), vec![1, 3]);
        assert!(comp(&[5]).descent_set().elems().is_empty());
        for n in 1..=8 {
            let all = Composition::all(n);
            assert_eq!(all.len(), 1 << (n - 1));
            for c in all {
                assert_eq!(Composition::from_descent_set(&c.descent_set()), c);
            }
            for s in Subset::all(n - 1) {
                let d = DescentSet::new(n, s).unwrap();
                assert_eq!(Composition::from_descent_set(&d).descent_set(), d);
            }
        }
    }

    #[test]
    fn complement_and_refinement() {
        assert_eq!(comp(&[2, 1]).complement(), comp(&[1, 2]));
        for n in 1..=8 {
            for c in Composition::all(n) {
                assert_eq!(c.complement().complement(), c);
            }
        }
        assert!(comp(&[1, 1, 1]).refines(&comp(&[2, 1])).unwrap());
        assert!(!comp(&[3]).refines(&comp(&[1, 2])).unwrap());
        assert!(comp(&[3]).refines(&comp(&[1, 2, 1])).is_err());
    }

    #[test]
    fn descents_and_recoils() {
        assert_eq!(perm("312").descents().elems(), vec![1]);
        assert_eq!(perm("312").recoils().elems(), vec![2]);
        assert!(Permutation::identity(5).descents().elems().is_empty());
        assert_eq!(Permutation::longest(4).descents().elems(), vec![1, 2, 3]);
    }

    #[test]
    fn young_subgroups() {
        assert_eq!(young_subgroup(&comp(&[2, 1])), vec![perm("123"), perm("213")]);
        assert_eq!(young_subgroup(&comp(&[1, 1, 1])), vec![perm("123")]);
        for n in 1..=6 {
            for c in Composition::all(n) {
                let expect: u64 = c.parts().iter().map(|&p| factorial(p)).product();
                assert_eq!(young_subgroup(&c).len() as u64, expect);
            }
        }
    }

    #[test]
    fn weak_order_extension() {
        assert_eq!(weak_order_linear_extension(2), vec![perm("12"), perm("21")]);
        for n in 1..=6 {
            let ord = weak_order_linear_extension(n);
            assert_eq!(ord[0], Permutation::identity(n));
            assert_eq!(ord.last().unwrap(), &Permutation::longest(n));
            assert!(ord.windows(2).all(|w| w[0].length() <= w[1].length()));
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 1..=5 {
            for p in Permutation::all(n) {
                let w = p.reduced_word();
                assert_eq!(w.len(), p.length());
                let mut q = Permutation::identity(n);
                for i in w {
                    q = q.swap_positions(i);
                }
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn descent_and_recoil_classes_equinumerous() {
        for n in 1..=6 {
            let all = Permutation::all(n);
            for c in Composition::all(n) {
                let d = c.descent_set();
                let des = all.iter().filter(|p| p.descents() == d).count();
                let rec = all.iter().filter(|p| p.recoils() == d).count();
                assert_eq!(des, rec);
                let sub = all.iter().filter(|p| p.recoils().set().is_subset(d.set())).count();
                assert_eq!(sub as u64, c.multinomial());
            }
        }
    }

    #[test]
    fn posets_and_moebius() {
        let g = grassmann_poset(3, 2);
        let a = g.index_of(&Subset::from_elems([1, 3])).unwrap();
        let b = g.index_of(&Subset::from_elems([2, 3])).unwrap();
        assert!(g.leq(a, b));
        let chain = grassmann_poset(2, 1);
        assert_eq!(chain.moebius(0, 1), -1);
        for p in [boolean_lattice(3), grassmann_poset(5, 2), grassmann_poset(4, 2)] {
            for x in 0..p.len() {
                assert_eq!(p.moebius(x, x), 1);
                for y in 0..p.len() {
                    let s: i64 = (0..p.len()).filter(|&z| p.leq(x, z) && p.leq(z, y)).map(|z| p.moebius(x, z)).sum();
                    assert_eq!(s, i64::from(x == y));
                }
            }
        }
        // boolean lattice Möbius is (-1)^{|T - S|}
        let b3 = boolean_lattice(3);
        for x in 0..8 {
            for y in 0..8 {
                let (sx, sy) = (b3.elements()[x], b3.elements()[y]);
                let expect = if sx.is_subset(sy) { (-1i64).pow((sy.len() - sx.len()) as u32) } else { 0 };
                assert_eq!(b3.moebius(x, y), expect);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn refinement_matches_inclusion(n in 1usize..8, a in 0u32..128, b in 0u32..128) {
            let mask = if n == 1 { 0 } else { (1u32 << (n - 1)) - 1 };
            let da = DescentSet::new(n, Subset(a & mask)).unwrap();
            let db = DescentSet::new(n, Subset(b & mask)).unwrap();
            let (ca, cb) = (Composition::from_descent_set(&da), Composition::from_descent_set(&db));
            proptest::prop_assert_eq!(ca.refines(&cb).unwrap(), db.set().is_subset(da.set()));
        }
    }
}
