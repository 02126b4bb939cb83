use std::collections::BTreeMap;

use super::{QsymBasis, QsymElem};
use crate::combinatorics::Composition;
use crate::error::{Error, Result};
use crate::exactla::{Field, Q};

/// A polynomial in `m` commuting variables: exponent vector → coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    fn add_term(&mut self, e: Vec<u32>, c: &Q) {
        let t = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *t = t.add(c);
        if t.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial { vars: self.vars, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(g, &c.mul(d));
            }
        }
        out
    }
}

/// `M_I ↦ Σ_{j_1 < ⋯ < j_p ≤ m} x_{j_1}^{i_1}⋯x_{j_p}^{i_p}`.
fn realize_m(i: &Composition, m: usize) -> Polynomial {
    let mut p = Polynomial { vars: m, terms: BTreeMap::new() };
    let parts = i.parts();
    let mut stack: Vec<(usize, usize, Vec<u32>)> = vec![(0, 0, vec![0; m])];
    while let Some((k, start, e)) = stack.pop() {
        if k == parts.len() {
            p.add_term(e, &Q::one());
            continue;
        }
        for j in start..m {
            let mut e2 = e.clone();
            e2[j] += parts[k] as u32;
            stack.push((k + 1, j + 1, e2));
        }
    }
    p
}

/// `F_I ↦ Σ x_{j_1}⋯x_{j_n}` over `j_1 ≤ ⋯ ≤ j_n` strict at the descents of `I`.
fn realize_f(i: &Composition, m: usize) -> Polynomial {
    let mut p = Polynomial { vars: m, terms: BTreeMap::new() };
    let n = i.size();
    let des = i.descent_set();
    let mut stack: Vec<(usize, usize, Vec<u32>)> = vec![(0, 0, vec![0; m])];
    while let Some((k, low, e)) = stack.pop() {
        if k == n {
            p.add_term(e, &Q::one());
            continue;
        }
        for j in low..m {
            let mut e2 = e.clone();
            e2[j] += 1;
            // position k+1 is followed by a strict step if k+1 is a descent
            let next = if des.contains(k + 1) { j + 1 } else { j };
            stack.push((k + 1, next, e2));
        }
    }
    p
}

/// Evaluation of a quasi-symmetric function in `m` variables.
pub fn monomial_realization(x: &QsymElem, m: usize) -> Result<Polynomial> {
    let deg = x.degrees().into_iter().max().unwrap_or(0);
    if m < deg {
        return Err(Error::OutOfRange(format!("{m} variables for degree {deg}")));
    }
    let (basis, x) = match x.basis() {
        QsymBasis::X => (QsymBasis::M, x.convert(QsymBasis::M)),
        b => (b, x.clone()),
    };
    let mut out = Polynomial { vars: m, terms: BTreeMap::new() };
    for (i, c) in x.coeffs() {
        let p = if basis == QsymBasis::F { realize_f(i, m) } else { realize_m(i, m) };
        for (e, d) in p.terms {
            out.add_term(e, &c.mul(&d));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::ops::Multiply;
    use crate::symfunc::QsymBasis::{F, M};

    fn poly(terms: &[(&[u32], i64)]) -> Polynomial {
        let mut p = Polynomial { vars: terms[0].0.len(), terms: BTreeMap::new() };
        for (e, c) in terms {
            p.add_term(e.to_vec(), &Q::from_i64(*c));
        }
        p
    }

    #[test]
    fn small_realizations() {
        assert_eq!(monomial_realization(&QsymElem::of(M, &[2]), 2).unwrap(), poly(&[(&[2, 0], 1), (&[0, 2], 1)]));
        assert_eq!(monomial_realization(&QsymElem::of(M, &[1, 1]), 2).unwrap(), poly(&[(&[1, 1], 1)]));
        let f2 = monomial_realization(&QsymElem::of(F, &[2]), 2).unwrap();
        assert_eq!(f2, poly(&[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]));
        assert!(monomial_realization(&QsymElem::of(F, &[2, 1]), 2).is_err());
    }

    #[test]
    fn realization_fixes_fundamental_expansion() {
        for n in 1..=5 {
            for i in Composition::all(n) {
                let f = QsymElem::basis_element(F, i.clone());
                assert_eq!(monomial_realization(&f, n).unwrap(), monomial_realization(&f.convert(M), n).unwrap(), "{i}");
            }
        }
    }

    #[test]
    fn realization_is_multiplicative() {
        for a in 1..=2 {
            for b in 1..=2 {
                for i in Composition::all(a) {
                    for j in Composition::all(b) {
                        let (x, y) = (QsymElem::basis_element(F, i.clone()), QsymElem::basis_element(M, j.clone()));
                        let m = a + b;
                        let lhs = monomial_realization(&x.mul(&y), m).unwrap();
                        let rhs = monomial_realization(&x, m).unwrap().mul(&monomial_realization(&y, m).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
