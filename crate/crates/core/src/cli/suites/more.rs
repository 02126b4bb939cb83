//! Suites for the nondecreasing-function monoids, the symmetric function
//! spaces and the towers.

use super::{guard, in_scope, matrix_lines};
use crate::cli::VerificationReport;
use crate::combinatorics::{binomial, catalan, Composition};
use crate::error::Result;
use crate::exactla::{Field, Q};
use crate::ndf::*;
use crate::symfunc::{
    monomial_realization, pairing, Basis, Multiply, NcsfBasis, NcsfElem, Polynomial, QsymBasis, QsymElem,
};
use crate::towers::*;

pub(super) fn ndf(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: |NDF_n| = C(2n-1, n-1), |NDPF_n| = Catalan(n)");
        if in_scope(r, &name, n, 1, 8) {
            let (a, b) = (NdFunction::all(n, false).len() as u64, NdFunction::all(n, true).len() as u64);
            let (ea, eb) = (binomial(2 * n - 1, n - 1), catalan(n));
            r.check(name, a == ea && b == eb, || format!("NDF {a} vs {ea}, NDPF {b} vs {eb}"));
        }
        let name = format!("n={n}: monoid generator identities");
        if in_scope(r, &name, n, 2, 6) {
            super::relation_result(r, name, monoid_generator_checks(n));
        }
        let name = format!("n={n}: exterior representation is faithful");
        if in_scope(r, &name, n, 1, 6) {
            r.outcome(name, faithfulness_check(n), || format!("n={n}: rank {} vs {}", faithfulness_rank(n), binomial(2 * n - 1, n - 1)));
        }
        let name = format!("n={n}: NDF_n projectives, simples and Cartan matrix");
        if in_scope(r, &name, n, 1, 6) {
            guard(r, &name, |r| {
                let m = r.timed(format!("NDF_{n} modules"), || ndf_modules(n))?;
                let sdims: Vec<usize> = m.simples.iter().map(|s| s.dim()).collect();
                let expect: Vec<usize> = (1..=n).map(|k| binomial(n - 1, k - 1) as usize).collect();
                r.check(format!("n={n}: dim S^k = C(n-1, k-1)"), sdims == expect, || format!("{sdims:?} vs {expect:?}"));
                // dim Hom(P^k, P^l) = 1 iff l = k or l = k - 1
                let oracle: Vec<Vec<usize>> =
                    (1..=n).map(|k| (1..=n).map(|l| usize::from(l == k || l + 1 == k)).collect()).collect();
                let labels: Vec<String> = (1..=n).map(|k| ndf_label(n, k)).collect();
                r.check(format!("n={n}: Cartan(NDF_n) is bidiagonal"), m.cartan == oracle, || {
                    super::first_mismatch(&m.cartan, &oracle, &labels)
                });
                let total: usize = m.projectives.iter().zip(&m.simples).map(|(p, s)| p.dim() * s.dim()).sum();
                let ident: u64 = (1..=n).map(|k| binomial(n, k) * binomial(n - 1, k - 1)).sum();
                let size = binomial(2 * n - 1, n - 1);
                r.check(format!("n={n}: sum dim P^k dim S^k = |NDF_n|"), total as u64 == size && ident == size, || {
                    format!("computed {total}, binomial sum {ident}, |NDF_n| {size}")
                });
                matrix_lines(r, &format!("Cartan(NDF_{n}) [k][l] = dim Hom(P^k, P^l)"), &labels, &m.cartan);
                r.line(format!("n={n}: sum dim S^k = {}, sum dim P^k = {}", m.primitive_count, m.exterior_dim));
                Ok(())
            });
        }
    }
}

pub(super) fn ndpf(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: NDPF_n modules");
        if !in_scope(r, &name, n, 1, 6) {
            continue;
        }
        guard(r, &name, |r| {
            let m = r.timed(format!("NDPF_{n} modules"), || ndpf_modules(n))?;
            let cat = catalan(n) as usize;
            r.check(format!("n={n}: |NDPF_n| = Catalan(n)"), m.elements.len() == cat, || format!("{} vs {cat}", m.elements.len()));
            let two = 1usize << (n - 1);
            let ones = m.simples.iter().all(|s| s.dim() == 1);
            r.check(format!("n={n}: 2^(n-1) one-dimensional simples"), m.simples.len() == two && ones, || {
                format!("{} simples, all one-dimensional: {ones}", m.simples.len())
            });
            // pi_j acts on S_I by 0 if j is a descent of I and by 1 otherwise
            let mut bad = None;
            'outer: for (i, s) in m.compositions.iter().zip(&m.simples) {
                for j in 1..n {
                    let pos = m.elements.iter().position(|f| *f == NdFunction::pi(n, j)).expect("pi_j is in NDPF_n");
                    let expect = if i.descent_set().contains(j) { Q::zero() } else { Q::one() };
                    if s.action(pos).get(0, 0) != expect {
                        bad = Some(format!("S_{}: pi_{j}", i.label()));
                        break 'outer;
                    }
                }
            }
            r.check(format!("n={n}: generators act on S_I by the descent rule"), bad.is_none(), || bad.clone().unwrap());
            let total: usize = m.projectives.iter().map(|p| p.module.dim()).sum();
            r.check(format!("n={n}: sum dim P_I dim S_I = Catalan(n)"), total == cat, || format!("{total} vs {cat}"));
            let g = grassmann_cartan(n);
            let labels: Vec<String> = m.compositions.iter().map(|c| c.label()).collect();
            r.check(format!("n={n}: Cartan(NDPF_n) = Grassmann order"), m.cartan == g, || {
                let a: Vec<Vec<usize>> = m.cartan.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
                let b: Vec<Vec<usize>> = g.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
                super::first_mismatch(&a, &b, &labels)
            });
            r.line(format!("n={n}: |NDPF_n| = {cat}"));
            let c: Vec<Vec<usize>> = m.cartan.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
            matrix_lines(r, &format!("Cartan(NDPF_{n}) [I][J] = [P_I : S_J]"), &labels, &c);
            Ok(())
        });
    }
}

pub(super) fn grassmann(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: NDPF_n isomorphic to the sum of Grassmann incidence algebras");
        if in_scope(r, &name, n, 1, 5) {
            match r.timed(format!("Grassmann isomorphism n={n}"), || grassmann_isomorphism(n)) {
                Ok(g) => r.check(name, g.passed(), || {
                    format!("isomorphic {}, Cartan {}, dims {:?} vs {}", g.isomorphic, g.cartan_matches, g.component_dims, g.ndpf_dim)
                }),
                Err(e) => r.outcome(name, Err(e), String::new),
            }
        }
        let name = format!("n={n}: comparable pairs of G_(n-1,k) sum to Catalan(n)");
        if in_scope(r, &name, n, 1, 7) {
            let d = grassmann_incidence_dims(n - 1);
            let s: usize = d.iter().sum();
            r.check(name, s as u64 == catalan(n), || format!("{s} vs {}", catalan(n)));
            r.line(format!("n={n}: {} = {s}", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")));
        }
    }
}

pub(super) fn prop8(r: &mut VerificationReport, n_max: usize) {
    let name = "induction and restriction rules";
    if !in_scope(r, name, n_max, 2, 5) {
        return;
    }
    guard(r, name, |r| {
        let reps = r.timed(format!("NDF rules n<={n_max}"), || ndf_rules(n_max))?;
        for rep in reps {
            r.check(format!("NDF {} (n1 + n2 <= {n_max}, {} cases)", rep.rule, rep.cases), rep.passed(), || {
                format!("{} of {} cases; first: {}", rep.mismatches.len(), rep.cases, rep.mismatches[0])
            });
            r.line(format!("{}: {} cases, {} mismatches, {} printed-rule mismatches", rep.rule, rep.cases, rep.mismatches.len(), rep.printed_mismatches.len()));
            if let Some(p) = rep.printed_mismatches.first() {
                r.line(format!("  first printed-rule mismatch: {p}"));
            }
            for d in rep.detail.iter().take(3) {
                r.line(format!("  {d}"));
            }
        }
        Ok(())
    });
}

pub(super) fn prop9(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: H_n(0) -> NDPF_n is onto with kernel in the radical");
        if !in_scope(r, &name, n, 1, 5) {
            continue;
        }
        match r.timed(format!("phi n={n}"), || phi_hecke0_to_ndpf(n)) {
            Ok(p) => {
                r.check(name, p.passed(), || {
                    format!("multiplicative {}, rank {}, kernel {}, in radical {}", p.multiplicative, p.image_rank, p.kernel_dim, p.kernel_in_radical)
                });
                r.line(format!("n={n}: image {}, kernel {}, radical {}", p.image_rank, p.kernel_dim, p.radical_dim));
            }
            Err(e) => r.outcome(name, Err(e), String::new),
        }
    }
}

fn round_trip<B: Basis>(n: usize) -> Option<String> {
    for i in Composition::all(n) {
        for &a in B::all() {
            let x = crate::symfunc::SymElem::basis_element(a, i.clone());
            for &b in B::all() {
                if x.convert(b).convert(a) != x {
                    return Some(format!("{a}_{} via {b}", i.label()));
                }
            }
        }
    }
    None
}

fn duality(n: usize) -> Option<String> {
    let pairs = [(NcsfBasis::R, QsymBasis::F), (NcsfBasis::S, QsymBasis::M), (NcsfBasis::Lambda, QsymBasis::X)];
    for (a, b) in pairs {
        for i in Composition::all(n) {
            for j in Composition::all(n) {
                let v = pairing(&NcsfElem::basis_element(a, i.clone()), &QsymElem::basis_element(b, j.clone()));
                let d = if i == j { Q::one() } else { Q::zero() };
                if v != d {
                    return Some(format!("<{a}_{}, {b}_{}> = {v}", i.label(), j.label()));
                }
            }
        }
    }
    None
}

/// `p(x_1..x_m)` placed on variables `offset+1..offset+m` of `vars`.
fn shifted(p: &Polynomial, vars: usize, offset: usize) -> Polynomial {
    let terms = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mut f = vec![0; vars];
            f[offset..offset + e.len()].copy_from_slice(e);
            (f, c.clone())
        })
        .collect();
    Polynomial { vars, terms }
}

fn constant(vars: usize, c: &Q) -> Polynomial {
    Polynomial { vars, terms: [(vec![0; vars], c.clone())].into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Products `F_I · M_J` and coproducts `ΔF_K` against evaluation in
/// explicit variables: `f(x, y) = Σ f1(x) f2(y)`.
fn realization(d: usize) -> Result<Option<String>> {
    for a in 1..d {
        for b in 1..=(d - a) {
            let m = a + b;
            for i in Composition::all(a) {
                for j in Composition::all(b) {
                    let (x, y) = (QsymElem::basis_element(QsymBasis::F, i.clone()), QsymElem::basis_element(QsymBasis::M, j.clone()));
                    let lhs = monomial_realization(&x.mul(&y), m)?;
                    let rhs = monomial_realization(&x, m)?.mul(&monomial_realization(&y, m)?);
                    if lhs != rhs {
                        return Ok(Some(format!("F_{} M_{} in {m} variables", i.label(), j.label())));
                    }
                }
            }
        }
    }
    for n in 1..=d {
        for k in Composition::all(n) {
            let h = QsymElem::basis_element(QsymBasis::F, k.clone());
            let lhs = monomial_realization(&h, 2 * n)?;
            let mut rhs = Polynomial { vars: 2 * n, terms: Default::default() };
            for ((l, r), c) in &h.coproduct().coeffs {
                let pl = monomial_realization(&QsymElem::basis_element(QsymBasis::M, l.clone()), n)?;
                let pr = monomial_realization(&QsymElem::basis_element(QsymBasis::M, r.clone()), n)?;
                let t = shifted(&pl, 2 * n, 0).mul(&shifted(&pr, 2 * n, n)).mul(&constant(2 * n, c));
                rhs = rhs.add(&t);
            }
            if lhs != rhs {
                return Ok(Some(format!("coproduct of F_{} in 2x{n} variables", k.label())));
            }
        }
    }
    Ok(None)
}

fn hopf(d: usize) -> Option<String> {
    for a in 1..d {
        for b in 1..=(d - a) {
            for i in Composition::all(a) {
                for j in Composition::all(b) {
                    let (x, y) = (QsymElem::basis_element(QsymBasis::F, i.clone()), QsymElem::basis_element(QsymBasis::F, j.clone()));
                    if x.mul(&y).coproduct() != x.coproduct().mul(&y.coproduct()) {
                        return Some(format!("QSym F_{} F_{}", i.label(), j.label()));
                    }
                    let (u, v) = (NcsfElem::basis_element(NcsfBasis::R, i.clone()), NcsfElem::basis_element(NcsfBasis::R, j.clone()));
                    if u.mul(&v).coproduct() != u.coproduct().mul(&v.coproduct()) {
                        return Some(format!("NCSF R_{} R_{}", i.label(), j.label()));
                    }
                }
            }
        }
    }
    None
}

pub(super) fn qsym_ncsf(r: &mut VerificationReport, d: usize) {
    for n in 1..=d {
        let rt = round_trip::<QsymBasis>(n).or_else(|| round_trip::<NcsfBasis>(n));
        r.check(format!("degree {n}: basis conversion round trips"), rt.is_none(), || rt.clone().unwrap());
        let du = duality(n);
        r.check(format!("degree {n}: pairing duality"), du.is_none(), || du.clone().unwrap());
    }
    let dr = d.min(4);
    match r.timed("realization oracle", || realization(dr)) {
        Ok(w) => r.check(format!("degrees <= {dr}: product and coproduct agree with polynomial evaluation"), w.is_none(), || w.unwrap()),
        Err(e) => r.outcome("polynomial evaluation", Err(e), String::new),
    }
    let dh = d.min(5);
    let w = r.timed("bialgebra compatibility", || hopf(dh));
    r.check(format!("degrees <= {dh}: coproduct is multiplicative"), w.is_none(), || w.clone().unwrap());
    let dg = d.min(4);
    match r.timed("G re-derivation", || ndpf_g_rederivation(dg)) {
        Ok(v) => {
            let bad = v.iter().find(|(_, ok)| !ok);
            r.check(format!("degrees <= {dg}: G basis from NDPF Cartan data = Moebius G basis"), bad.is_none(), || {
                format!("degree {}", bad.unwrap().0)
            })
        }
        Err(e) => r.outcome("G re-derivation", Err(e), String::new),
    }
}

fn towers_for(r: &mut VerificationReport, kind: TowerKind, n_max: usize) -> Result<()> {
    let t = r.timed(format!("{kind} floors"), || Tower::build(kind.clone(), n_max, false))?;
    let mut bad = None;
    let mut count = 0;
    for s in 2..=n_max {
        for m in 1..s {
            count += 1;
            if !embedding_check(&t, m, s - m)? && bad.is_none() {
                bad = Some(format!("({m},{})", s - m));
            }
        }
    }
    r.check(format!("{kind}: floor embeddings are algebra maps ({count} splits)"), bad.is_none(), || bad.clone().unwrap());
    let mut bad = None;
    for l in 1..=n_max {
        for m in 1..=n_max {
            for n in 1..=n_max {
                if l + m + n <= n_max && !embedding_associativity(&t, l, m, n)? && bad.is_none() {
                    bad = Some(format!("({l},{m},{n})"));
                }
            }
        }
    }
    r.check(format!("{kind}: embeddings are associative"), bad.is_none(), || bad.clone().unwrap());
    Ok(())
}

pub(super) fn towers(r: &mut VerificationReport, n_max: usize) {
    if n_max == 0 {
        r.skip("towers", "need n >= 1");
        return;
    }
    let hs_max = n_max.min(4);
    for (kind, cap) in [
        (TowerKind::Hsn, hs_max),
        (TowerKind::H0, n_max),
        (TowerKind::SymGrp, n_max),
        (TowerKind::Hecke(Q::from_i64(2)), n_max),
        (TowerKind::Ndf, n_max),
        (TowerKind::Ndpf, n_max),
    ] {
        let name = format!("{kind} embeddings");
        guard(r, &name, |r| towers_for(r, kind, cap));
    }
    for (kind, cap) in [(TowerKind::Hsn, hs_max), (TowerKind::H0, n_max), (TowerKind::Ndpf, n_max)] {
        let name = format!("{kind} Grothendieck tables");
        guard(r, &name, |r| {
            let (d, _) = r.timed(format!("{kind} tables n<={cap}"), || diagram_report(kind.clone(), cap))?;
            for (g, side, target, h) in &d.maps {
                r.check(format!("{kind}: {g} {side} -> {target} is a homomorphism ({} checks)", h.checked), h.passed(), || {
                    h.mismatches[0].clone()
                });
            }
            r.check(format!("{kind}: Cartan map intertwines the characteristic maps"), d.cartan_intertwines, || kind.name());
            r.check(format!("{kind}: product tables associative"), d.associative, || kind.name());
            if kind == TowerKind::H0 {
                r.check(format!("{kind}: coproduct is multiplicative"), d.bialgebra_failures.is_empty(), || d.bialgebra_failures[0].clone());
            } else {
                r.line(format!("{kind}: {} pairs where the coproduct is not multiplicative", d.bialgebra_failures.len()));
                if let Some(f) = d.bialgebra_failures.first() {
                    r.line(format!("  first: {f}"));
                }
            }
            Ok(())
        });
    }
    for kind in [TowerKind::Hsn, TowerKind::Ndf] {
        let cap = n_max.min(4);
        let name = format!("{kind}: Frobenius reciprocity (m + n <= {cap})");
        match r.timed(format!("{kind} Frobenius"), || frobenius_reciprocity(kind.clone(), cap)) {
            Ok((count, fails)) => {
                r.check(format!("{kind}: Frobenius reciprocity ({count} triples)"), fails.is_empty(), || fails[0].clone())
            }
            Err(e) => r.outcome(name, Err(e), String::new),
        }
    }
    let (sq, sq_hs) = ((n_max + 1).min(5), hs_max);
    match r.timed("H0 square", || hecke0_square(sq, sq_hs)) {
        Ok(s) => r.check(format!("H0 sub-tower commutes with the HS embeddings ({} checks)", s.checked), s.failures.is_empty(), || {
            s.failures[0].clone()
        }),
        Err(e) => r.outcome("H0 sub-tower square", Err(e), String::new),
    }
}

fn expansion(m: &std::collections::BTreeMap<String, i64>) -> String {
    m.iter().map(|(k, v)| format!("{v}·[{k}]")).collect::<Vec<_>>().join(" + ")
}

pub(super) fn nonhopf(r: &mut VerificationReport) {
    match r.timed("counterexample", nonhopf_counterexample) {
        Ok(x) => {
            r.line(format!("restrict after product: {}", expansion(&x.restrict_after_product)));
            r.line(format!("product of restrictions: {}", expansion(&x.product_of_restrictions)));
            r.line(format!("coefficient of P_1^1 ⊗ P_1^1: {} vs {}", x.coefficient.0, x.coefficient.1));
            r.line(format!("total dimensions: {} vs {}", x.dimensions.0, x.dimensions.1));
            r.line(format!("H0 coefficient of P_(1) ⊗ P_(1): {} vs {}", x.h0_coefficient.0, x.h0_coefficient.1));
            r.check("NDF: coproduct of P_1^1 · P_1^1 differs from the product of coproducts", x.coefficient.0 != x.coefficient.1, || {
                format!("both {}", x.coefficient.0)
            });
            r.check("H0: same coefficient agrees", x.h0_coefficient.0 == x.h0_coefficient.1, || {
                format!("{} vs {}", x.h0_coefficient.0, x.h0_coefficient.1)
            });
        }
        Err(e) => r.outcome("non-Hopf counterexample", Err(e), String::new),
    }
}
