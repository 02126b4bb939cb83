use std::collections::BTreeMap;

use super::{add_coeff, Basis, Coeffs, NcsfBasis, NcsfElem, QsymBasis, QsymElem, SymElem};
use crate::combinatorics::Composition;
use crate::exactla::{Field, Q};

/// Quasi-shuffles of two compositions, with multiplicity.
fn quasi_shuffle(a: &[usize], b: &[usize]) -> Coeffs {
    let mut out = Coeffs::new();
    if a.is_empty() || b.is_empty() {
        let w: Vec<usize> = a.iter().chain(b).copied().collect();
        out.insert(Composition::new(w).unwrap(), Q::one());
        return out;
    }
    let prefix = |head: usize, rest: Coeffs, out: &mut Coeffs| {
        for (c, x) in rest {
            let mut w = vec![head];
            w.extend_from_slice(c.parts());
            add_coeff(out, Composition::new(w).unwrap(), &x);
        }
    };
    prefix(a[0], quasi_shuffle(&a[1..], b), &mut out);
    prefix(b[0], quasi_shuffle(a, &b[1..]), &mut out);
    prefix(a[0] + b[0], quasi_shuffle(&a[1..], &b[1..]), &mut out);
    out
}

/// Every way of cutting each part into a left and a right piece (zeros dropped).
fn splits(i: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut acc = vec![(Vec::new(), Vec::new())];
    for &p in i {
        let mut next = Vec::new();
        for (l, r) in &acc {
            for a in 0..=p {
                let (mut l2, mut r2): (Vec<usize>, Vec<usize>) = (l.clone(), r.clone());
                if a > 0 {
                    l2.push(a);
                }
                if p - a > 0 {
                    r2.push(p - a);
                }
                next.push((l2, r2));
            }
        }
        acc = next;
    }
    acc
}

fn canonical<B: Basis>(x: &SymElem<B>) -> Coeffs {
    x.convert(B::CANONICAL).coeffs().clone()
}

/// A two-fold tensor in `basis ⊗ basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<B> {
    pub basis: B,
    pub coeffs: BTreeMap<(Composition, Composition), Q>,
}

impl<B: Basis> Tensor<B> {
    fn from_canonical(terms: BTreeMap<(Composition, Composition), Q>) -> Self {
        Tensor { basis: B::CANONICAL, coeffs: terms.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    /// Re-expresses both factors in `target`.
    pub fn convert(&self, target: B) -> Self {
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.coeffs {
            let ea = SymElem::basis_element(self.basis, a.clone()).convert(target);
            let eb = SymElem::basis_element(self.basis, b.clone()).convert(target);
            for (ka, ya) in ea.coeffs() {
                for (kb, yb) in eb.coeffs() {
                    let e = out.entry((ka.clone(), kb.clone())).or_insert_with(Q::zero);
                    *e = e.add(&x.mul(&ya.mul(yb)));
                }
            }
        }
        Tensor { basis: target, coeffs: out.into_iter().filter(|(_, x): &(_, Q)| !x.is_zero()).collect() }
    }
}

impl<B: Basis> Tensor<B>
where
    SymElem<B>: Multiply,
{
    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let (x, y) = (self.convert(B::CANONICAL), other.convert(B::CANONICAL));
        let mut out = BTreeMap::new();
        for ((a, b), s) in &x.coeffs {
            for ((c, d), t) in &y.coeffs {
                let left = SymElem::basis_element(B::CANONICAL, a.clone()).mul(&SymElem::basis_element(B::CANONICAL, c.clone()));
                let right = SymElem::basis_element(B::CANONICAL, b.clone()).mul(&SymElem::basis_element(B::CANONICAL, d.clone()));
                for (k, u) in left.coeffs() {
                    for (l, v) in right.coeffs() {
                        let e = out.entry((k.clone(), l.clone())).or_insert_with(Q::zero);
                        *e = e.add(&s.mul(t).mul(&u.mul(v)));
                    }
                }
            }
        }
        Self::from_canonical(out)
    }
}

/// Product and coproduct of a graded bialgebra.
pub trait Multiply: Sized {
    fn mul(&self, other: &Self) -> Self;
    fn coproduct(&self) -> Tensor<<Self as HasBasis>::B>
    where
        Self: HasBasis;
}

pub trait HasBasis {
    type B: Basis;
}

impl<B: Basis> HasBasis for SymElem<B> {
    type B = B;
}

impl Multiply for QsymElem {
    /// Quasi-shuffle product on M; the result is returned in `self`'s basis.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Coeffs::new();
        for (a, x) in canonical(self) {
            for (b, y) in canonical(other) {
                for (c, z) in quasi_shuffle(a.parts(), b.parts()) {
                    add_coeff(&mut out, c, &x.mul(&y).mul(&z));
                }
            }
        }
        SymElem::from_coeffs(QsymBasis::M, out).convert(self.basis())
    }

    /// Deconcatenation on M.
    fn coproduct(&self) -> Tensor<QsymBasis> {
        let mut out = BTreeMap::new();
        for (a, x) in canonical(self) {
            let p = a.parts();
            for k in 0..=p.len() {
                let l = Composition::new(p[..k].to_vec()).unwrap();
                let r = Composition::new(p[k..].to_vec()).unwrap();
                let e = out.entry((l, r)).or_insert_with(Q::zero);
                *e = e.add(&x);
            }
        }
        Tensor::from_canonical(out)
    }
}

impl Multiply for NcsfElem {
    /// Concatenation on S.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Coeffs::new();
        for (a, x) in canonical(self) {
            for (b, y) in canonical(other) {
                add_coeff(&mut out, a.concat(&b), &x.mul(&y));
            }
        }
        SymElem::from_coeffs(NcsfBasis::S, out).convert(self.basis())
    }

    /// `ΔS^n = Σ S^i ⊗ S^{n−i}`, extended multiplicatively.
    fn coproduct(&self) -> Tensor<NcsfBasis> {
        let mut out = BTreeMap::new();
        for (a, x) in canonical(self) {
            for (l, r) in splits(a.parts()) {
                let key = (Composition::new(l).unwrap(), Composition::new(r).unwrap());
                let e = out.entry(key).or_insert_with(Q::zero);
                *e = e.add(&x);
            }
        }
        Tensor::from_canonical(out)
    }
}

/// `⟨f, g⟩` with `⟨S^I, M_J⟩ = δ_{IJ}`.
pub fn pairing(f: &NcsfElem, g: &QsymElem) -> Q {
    let (a, b) = (canonical(f), canonical(g));
    a.iter().fold(Q::zero(), |s, (k, x)| match b.get(k) {
        Some(y) => s.add(&x.mul(y)),
        None => s,
    })
}

/// `⟨f ⊗ g, t⟩` for a QSym tensor `t`.
pub fn pairing_tensor(f: &NcsfElem, g: &NcsfElem, t: &Tensor<QsymBasis>) -> Q {
    let t = t.convert(QsymBasis::M);
    let (a, b) = (canonical(f), canonical(g));
    t.coeffs.iter().fold(Q::zero(), |s, ((k, l), x)| match (a.get(k), b.get(l)) {
        (Some(u), Some(v)) => s.add(&x.mul(&u.mul(v))),
        _ => s,
    })
}

/// Commutative image NCSF → QSym: `S^K ↦ h_{k_1}⋯h_{k_p}` with `h_k = F_{(k)}`.
pub fn commutative_image(f: &NcsfElem) -> QsymElem {
    let mut acc = SymElem::zero(QsymBasis::M);
    for (k, x) in canonical(f) {
        let mut prod = SymElem::basis_element(QsymBasis::M, Composition::empty());
        for &p in k.parts() {
            prod = prod.mul(&SymElem::of(QsymBasis::F, &[p]));
        }
        acc = acc.add(&prod.scale(&x));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{finer, NcsfBasis::*, QsymBasis::*};

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn product_examples() {
        let m1 = QsymElem::of(M, &[1]);
        let expect = QsymElem::of(M, &[1, 1]).scale(&Q::from_i64(2)).add(&QsymElem::of(M, &[2]));
        assert_eq!(m1.mul(&m1), expect);
        let r1 = NcsfElem::of(R, &[1]);
        assert_eq!(r1.mul(&r1), NcsfElem::of(R, &[1, 1]).add(&NcsfElem::of(R, &[2])));
        let d = NcsfElem::of(S, &[3]).coproduct();
        assert_eq!(d.coeffs.len(), 4);
        assert!(d.coeffs.contains_key(&(Composition::empty(), c(&[3]))));
    }

    #[test]
    fn ribbon_product_is_concat_plus_near_concat() {
        for (a, b) in [(c(&[1, 2]), c(&[2])), (c(&[2, 1]), c(&[1, 1]))] {
            let got = NcsfElem::basis_element(R, a.clone()).mul(&NcsfElem::basis_element(R, b.clone()));
            let expect = NcsfElem::basis_element(R, a.concat(&b)).add(&NcsfElem::basis_element(R, a.near_concat(&b).unwrap()));
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn duality() {
        assert_eq!(pairing(&NcsfElem::of(S, &[2, 1]), &QsymElem::of(M, &[2, 1])), Q::one());
        assert_eq!(pairing(&NcsfElem::of(S, &[2]), &QsymElem::of(M, &[1])), Q::zero());
        for n in 1..=5 {
            for i in Composition::all(n) {
                for j in Composition::all(n) {
                    let d = if i == j { Q::one() } else { Q::zero() };
                    assert_eq!(pairing(&NcsfElem::basis_element(R, i.clone()), &QsymElem::basis_element(F, j.clone())), d);
                    assert_eq!(pairing(&NcsfElem::basis_element(Lambda, i.clone()), &QsymElem::basis_element(X, j.clone())), d);
                }
            }
        }
    }

    #[test]
    fn bialgebra_compatibility() {
        for n in 1..=3 {
            for m in 1..=(5 - n).min(3) {
                for a in Composition::all(n) {
                    for b in Composition::all(m) {
                        let (x, y) = (QsymElem::basis_element(F, a.clone()), QsymElem::basis_element(F, b.clone()));
                        assert_eq!(x.mul(&y).coproduct(), x.coproduct().mul(&y.coproduct()));
                        let (u, v) = (NcsfElem::basis_element(R, a.clone()), NcsfElem::basis_element(R, b.clone()));
                        assert_eq!(u.mul(&v).coproduct(), u.coproduct().mul(&v.coproduct()));
                    }
                }
            }
        }
    }

    #[test]
    fn product_coproduct_adjoint() {
        // ⟨fg, h⟩ = ⟨f ⊗ g, Δh⟩
        for h in Composition::all(4) {
            let hq = QsymElem::basis_element(F, h);
            let dh = hq.coproduct();
            for f in Composition::all(1).into_iter().chain(Composition::all(2)) {
                for g in Composition::all(4 - f.size()) {
                    let (fe, ge) = (NcsfElem::basis_element(R, f.clone()), NcsfElem::basis_element(S, g));
                    assert_eq!(pairing(&fe.mul(&ge), &hq), pairing_tensor(&fe, &ge, &dh));
                }
            }
        }
    }

    #[test]
    fn commutative_image_of_ribbons() {
        // image of R_(2,1): permutations with descent composition (2,1)
        let img = commutative_image(&NcsfElem::of(R, &[2, 1])).convert(F);
        let expect = QsymElem::of(F, &[2, 1]).add(&QsymElem::of(F, &[1, 2]));
        assert_eq!(img, expect);
        assert_eq!(commutative_image(&NcsfElem::of(S, &[2])), QsymElem::of(F, &[2]).convert(M));
        assert_eq!(finer(&c(&[2])).len(), 2);
    }
}
