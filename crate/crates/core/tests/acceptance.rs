//! Acceptance gate: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach stdout. Each
//! criterion combines the verification suites with oracles computed here
//! from first principles (brute-force permutation counts, closed formulas,
//! literal published values). The process exits non-zero unless the set of
//! failing criteria is exactly the set whose failure is explained in the
//! project notes.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hstower::cli::{run_suite, FieldChoice, Suite, VerificationReport};
use hstower::combinatorics::Composition;
use hstower::exactla::{F31, Q};
use hstower::hsn::{boolean_incidence, cartan_hsn, idempotents, pair_count_oracle, projective_dimensions, HsnAlgebra, PermBasis};
use hstower::ndf::{grassmann_incidence_dims, NdFunction};
use hstower::towers::{diagram_report, ndf_rules, nonhopf_counterexample, TowerKind};

/// Criteria expected to fail, with the reason recorded in the notes: the
/// simple-induction rule for NDF fails in every case (dimension count).
const KNOWN_FAILING: &[usize] = &[11];

// ---- oracles -------------------------------------------------------------

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn descents(w: &[usize]) -> BTreeSet<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

/// `i` is a recoil when `i + 1` stands to the left of `i`.
fn recoils(w: &[usize]) -> BTreeSet<usize> {
    let pos = |v: usize| w.iter().position(|&x| x == v).unwrap();
    (1..w.len()).filter(|&i| pos(i + 1) < pos(i)).collect()
}

/// `h_n = #{(σ, τ) : Des(σ) ∩ Rec(τ) = ∅}` by brute force.
fn h(n: usize) -> u64 {
    let ps = perms(n);
    let des: Vec<_> = ps.iter().map(|p| descents(p)).collect();
    let rec: Vec<_> = ps.iter().map(|p| recoils(p)).collect();
    des.iter().map(|d| rec.iter().filter(|r| d.is_disjoint(r)).count() as u64).sum()
}

fn fact(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    fact(n) / (fact(k) * fact(n - k))
}

fn catalan(n: usize) -> u64 {
    choose(2 * n, n) / (n as u64 + 1)
}

fn comp_descents(parts: &[usize]) -> BTreeSet<usize> {
    let mut s = 0;
    parts[..parts.len() - 1].iter().map(|p| {
        s += p;
        s
    }).collect()
}

// ---- harness -------------------------------------------------------------

struct Criterion {
    subs: Vec<(String, bool)>,
}

impl Criterion {
    fn sub(&mut self, name: impl Into<String>, ok: bool) {
        self.subs.push((name.into(), ok));
    }

    /// Every non-skipped check of a suite run must pass.
    fn suite(&mut self, suite: Suite, range: Option<(usize, usize)>, field: FieldChoice) -> VerificationReport {
        let r = run_suite(suite, range, field);
        for c in &r.checks {
            if c.status == hstower::cli::Status::Fail {
                self.sub(format!("{}: {} ({})", r.suite, c.name, c.witness.clone().unwrap_or_default()), false);
            }
        }
        self.sub(format!("suite {} ({} checks)", r.suite, r.checks.len()), r.passed());
        r
    }
}

fn run(id: usize, title: &str, f: impl FnOnce(&mut Criterion)) -> bool {
    let t = Instant::now();
    let mut c = Criterion { subs: vec![] };
    let res = catch_unwind(AssertUnwindSafe(|| f(&mut c)));
    if let Err(e) = res {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
        c.sub(format!("panicked: {msg}"), false);
    }
    let ok = !c.subs.is_empty() && c.subs.iter().all(|(_, ok)| *ok);
    let failed: Vec<&str> = c.subs.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect();
    println!(
        "criterion {id:>2} {} {title} [{} sub-checks, {:.1}s]{}",
        if ok { "PASS" } else { "FAIL" },
        c.subs.len(),
        t.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!(" failing: {}", failed.join("; ")) }
    );
    ok
}

const Q_: FieldChoice = FieldChoice::Rational;

fn main() {
    let mut failing = BTreeSet::new();
    let mut record = |id: usize, ok: bool| {
        if !ok {
            failing.insert(id);
        }
    };

    record(1, run(1, "dimension sequence of HS_n", |c| {
        let published = [1u64, 3, 19, 211, 3651];
        for n in 1..=5 {
            let oracle = h(n);
            c.sub(format!("h_{n} brute force = published"), oracle == published[n - 1]);
            c.sub(format!("pair_count_oracle({n})"), pair_count_oracle(n) == oracle);
            if n <= 4 {
                c.sub(format!("dim HS_{n} over Q"), HsnAlgebra::<Q>::build(n, false).unwrap().dim() as u64 == oracle);
            }
            c.sub(format!("dim HS_{n} over F_p"), HsnAlgebra::<F31>::build(n, false).unwrap().dim() as u64 == oracle);
        }
    }));

    record(2, run(2, "span = sandwich solutions, closure, constraint count", |c| {
        c.suite(Suite::Sandwich, Some((1, 4)), Q_);
        c.suite(Suite::Basis, Some((1, 4)), Q_);
        let (_, c2) = hstower::hsn::sandwich_space::<Q>(2).unwrap();
        let (_, c3) = hstower::hsn::sandwich_space::<Q>(3).unwrap();
        c.sub("n=2: 1 constraint", c2 == 1);
        c.sub("n=3: 17 constraints", c3 == 17);
        let (_, c4) = hstower::hsn::sandwich_space::<Q>(4).unwrap();
        c.sub("n=4: n!^2 - h_4", c4 as u64 == fact(4) * fact(4) - h(4));
    }));

    record(3, run(3, "dim P_I = n!/prod i_j!, n <= 6", |c| {
        for n in 1..=6 {
            let ps = perms(n);
            for (i, d, _) in projective_dimensions::<Q>(n).unwrap() {
                let formula = fact(n) / i.parts().iter().map(|&p| fact(p)).product::<u64>();
                let des = comp_descents(i.parts());
                let count = ps.iter().filter(|p| recoils(p).is_subset(&des)).count() as u64;
                if d as u64 != formula || count != formula {
                    c.sub(format!("P_{}: dim {d}, formula {formula}, recoil count {count}", i.label()), false);
                }
            }
            c.sub(format!("n={n}"), true);
        }
    }));

    record(4, run(4, "idempotents, p_sigma HS = P_Rec(sigma), sum dim P dim S = dim HS_n", |c| {
        c.suite(Suite::ModulesHsn, Some((1, 5)), Q_);
        let pb3 = PermBasis::new(3);
        let pb4 = PermBasis::new(4);
        c.sub("n=3 pairing = 19", hstower::hsn::projective_simple_pairing::<Q>(&pb3).unwrap() == 19);
        c.sub("n=4 pairing = 211", hstower::hsn::projective_simple_pairing::<Q>(&pb4).unwrap() == 211);
        c.sub("n=5 pairing = h_5", hstower::hsn::projective_simple_pairing::<Q>(&PermBasis::new(5)).unwrap() as u64 == h(5));
    }));

    record(5, run(5, "Cartan(HS_n) = boolean incidence; e HS_n e = C[B_(n-1)]", |c| {
        c.suite(Suite::CartanHsn, Some((1, 4)), Q_);
        c.suite(Suite::Morita, Some((1, 4)), Q_);
        for n in 1..=4 {
            let comps = Composition::all(n);
            let oracle: Vec<Vec<usize>> = comps
                .iter()
                .map(|i| comps.iter().map(|j| usize::from(comp_descents(i.parts()).is_subset(&comp_descents(j.parts())))).collect())
                .collect();
            c.sub(format!("n={n}: incidence matrix"), boolean_incidence(n) == oracle);
            let hs = HsnAlgebra::<Q>::build(n, true).unwrap();
            let ps = idempotents::<Q>(hs.perm_basis()).unwrap();
            let cartan = cartan_hsn(&hs, &ps);
            c.sub(format!("n={n}: Cartan = incidence"), cartan == oracle);
            let nonzero = cartan.iter().flatten().filter(|&&x| x > 0).count();
            c.sub(format!("n={n}: 3^(n-1) nonzero pieces"), nonzero == 3usize.pow(n as u32 - 1));
        }
    }));

    record(6, run(6, "characters of P_I; restrictions to H_n(0)", |c| {
        c.suite(Suite::Prop2, Some((1, 4)), Q_);
        c.suite(Suite::Prop3, Some((1, 4)), Q_);
    }));

    record(7, run(7, "affine relation, q in {2, 3, -1}, n in {3, 4, 5}", |c| {
        let r = c.suite(Suite::Affine, Some((3, 5)), Q_);
        let affine = r.checks.iter().filter(|x| x.name.contains("omega")).count();
        c.sub("nine (n, q) cases", affine == 9);
    }));

    record(8, run(8, "NDF_n and NDPF_n: sizes, identities, faithfulness, modules", |c| {
        for n in 1..=8 {
            c.sub(format!("|NDF_{n}|"), NdFunction::all(n, false).len() as u64 == choose(2 * n - 1, n - 1));
            c.sub(format!("|NDPF_{n}|"), NdFunction::all(n, true).len() as u64 == catalan(n));
            let s: u64 = (1..=n).map(|k| choose(n, k) * choose(n - 1, k - 1)).sum();
            c.sub(format!("n={n}: sum C(n,k) C(n-1,k-1)"), s == choose(2 * n - 1, n - 1));
        }
        c.suite(Suite::Ndf, Some((1, 5)), Q_);
    }));

    record(9, run(9, "HS_n on exterior powers", |c| {
        let r = c.suite(Suite::Prop6, Some((1, 5)), Q_);
        for n in 1..=5 {
            let line = format!("n={n}: image {}, pi-image {}, T(-1)-image {}", choose(2 * n - 1, n - 1), catalan(n), catalan(n));
            c.sub(format!("n={n} dimensions"), r.output.iter().any(|l| l.starts_with(&line)));
        }
    }));

    record(10, run(10, "NDPF_n: kernel in radical, simples, projectives, Grassmann", |c| {
        c.suite(Suite::Prop9, Some((1, 4)), Q_);
        c.suite(Suite::Ndpf, Some((1, 5)), Q_);
        c.suite(Suite::Grassmann, Some((1, 4)), Q_);
        c.sub("n=3: 1+3+1", grassmann_incidence_dims(2) == [1, 3, 1]);
        c.sub("n=4: 1+6+6+1", grassmann_incidence_dims(3) == [1, 6, 6, 1]);
        for n in 1..=7 {
            c.sub(format!("n={n}: sum = Catalan"), grassmann_incidence_dims(n - 1).iter().sum::<usize>() as u64 == catalan(n));
        }
    }));

    record(11, run(11, "towers: NDF rules, HS characteristic maps, non-Hopf example, H(0)", |c| {
        for rep in ndf_rules(5).unwrap() {
            let first = rep.mismatches.first().cloned().unwrap_or_default();
            c.sub(format!("NDF {} ({} of {} cases disagree{})", rep.rule, rep.mismatches.len(), rep.cases, if first.is_empty() { String::new() } else { format!(", e.g. {first}") }), rep.passed());
        }
        let (hs, _) = diagram_report(TowerKind::Hsn, 4).unwrap();
        c.sub("HS maps are homomorphisms (degree <= 4)", hs.maps_passed() && hs.maps.len() == 4);
        let x = nonhopf_counterexample().unwrap();
        c.sub(format!("non-Hopf coefficient {} vs {}", x.coefficient.0, x.coefficient.1), x.coefficient.0 > x.coefficient.1);
        c.sub("H(0) coefficient agrees", x.h0_coefficient.0 == x.h0_coefficient.1);
        let (h0, _) = diagram_report(TowerKind::H0, 4).unwrap();
        c.sub("H(0) coproduct is multiplicative", h0.bialgebra_failures.is_empty());
    }));

    record(12, run(12, "QSym/NCSF conversions, duality, realization, Hopf, G basis", |c| {
        let r = c.suite(Suite::QsymNcsf, Some((1, 6)), Q_);
        c.sub("round trips for degrees 1..6", (1..=6).all(|n| r.checks.iter().any(|x| x.name == format!("degree {n}: basis conversion round trips"))));
    }));

    let expected: BTreeSet<usize> = KNOWN_FAILING.iter().copied().collect();
    println!("failing criteria: {failing:?} (expected {expected:?})");
    if failing != expected {
        std::process::exit(1);
    }
}
