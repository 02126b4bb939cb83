//! The checks behind each suite. Each suite walks its range in increasing
//! `n` and records one check per identity and size, so the first failing
//! check names the smallest failing case.

use super::{FieldChoice, Suite, VerificationReport};
use crate::combinatorics::{binomial, catalan, factorial, Composition};
use crate::error::Result;
use crate::exactla::{Field, SparseVec, F30, F31, F32, Q};
use crate::hsn::*;
use crate::repr::{find_isomorphism, hom_dim, verify_idempotent_family, AlgebraModule};

mod more;

macro_rules! with_field {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        match $field {
            FieldChoice::Rational => $f::<Q>($($arg),*),
            FieldChoice::F30 => $f::<F30>($($arg),*),
            FieldChoice::F31 => $f::<F31>($($arg),*),
            FieldChoice::F32 => $f::<F32>($($arg),*),
        }
    };
}

/// Runs a single (non-`all`) suite.
pub fn run_suite(suite: Suite, range: Option<(usize, usize)>, field: FieldChoice) -> VerificationReport {
    let used = if suite.field_generic() { field } else { FieldChoice::Rational };
    let mut r = VerificationReport::new(suite, used.label(), range);
    if used != field {
        r.line(format!("characteristic-zero suite; --field {} not used", field.label()));
    }
    let (lo, hi) = range.unwrap_or((0, 0));
    let r_ = &mut r;
    match suite {
        Suite::Dims => with_field!(used, dims(r_, lo, hi)),
        Suite::Basis => with_field!(used, basis(r_, lo, hi)),
        Suite::Sandwich => with_field!(used, sandwich(r_, lo, hi)),
        Suite::CartanHsn => cartan(r_, lo, hi),
        Suite::Morita => morita(r_, lo, hi),
        Suite::ModulesHsn => with_field!(used, modules(r_, lo, hi)),
        Suite::Prop2 => prop2(r_, lo, hi),
        Suite::Prop3 => prop3(r_, lo, hi),
        Suite::Affine => with_field!(used, affine(r_, lo, hi)),
        Suite::Ndf => more::ndf(r_, lo, hi),
        Suite::Ndpf => more::ndpf(r_, lo, hi),
        Suite::Grassmann => more::grassmann(r_, lo, hi),
        Suite::Prop6 => with_field!(used, prop6(r_, lo, hi)),
        Suite::Prop8 => more::prop8(r_, hi),
        Suite::Prop9 => more::prop9(r_, lo, hi),
        Suite::QsymNcsf => more::qsym_ncsf(r_, hi),
        Suite::Towers => more::towers(r_, hi),
        Suite::Nonhopf => more::nonhopf(r_),
        Suite::All => r_.skip("all", "expanded by the driver"),
    }
    r
}

/// Skips `name` unless `lo_ok <= n <= hi_ok`.
fn in_scope(r: &mut VerificationReport, name: &str, n: usize, lo_ok: usize, hi_ok: usize) -> bool {
    if n < lo_ok || n > hi_ok {
        r.skip(name, format!("supported for {lo_ok} <= n <= {hi_ok}"));
        return false;
    }
    true
}

/// Records an error from a multi-step block as a failure of `name`.
fn guard(r: &mut VerificationReport, name: &str, f: impl FnOnce(&mut VerificationReport) -> Result<()>) {
    if let Err(e) = f(r) {
        r.outcome(name, Err(e), String::new);
    }
}

fn first_mismatch(a: &[Vec<usize>], b: &[Vec<usize>], labels: &[String]) -> String {
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        for (j, (u, v)) in x.iter().zip(y).enumerate() {
            if u != v {
                return format!("[{}][{}]: {u} vs {v}", labels[i], labels[j]);
            }
        }
    }
    "matrix shapes differ".into()
}

fn matrix_lines(r: &mut VerificationReport, title: &str, labels: &[String], m: &[Vec<usize>]) {
    r.line(format!("{title} (rows/cols: {})", labels.join(" ")));
    for (l, row) in labels.iter().zip(m) {
        r.line(format!("  {l:>10}: {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
    }
}

fn dims<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    let mut seq = vec![];
    for n in lo..=hi {
        let name = format!("dim HS_{n} = pair count");
        if !in_scope(r, &name, n, 1, 5) {
            continue;
        }
        let d = r.timed(format!("build HS_{n}"), || HsnAlgebra::<F>::build(n, false).map(|h| h.dim()));
        let d = match d {
            Ok(d) => d,
            Err(e) => {
                r.outcome(name, Err(e), String::new);
                continue;
            }
        };
        seq.push(d.to_string());
        let o = pair_count_oracle(n);
        r.check(name, d as u64 == o, || format!("n={n}: span dimension {d}, pair count {o}"));
        if F::characteristic() != 0 && n <= 4 {
            let name = format!("dim HS_{n} rational cross-check");
            let q = HsnAlgebra::<Q>::build(n, false).map(|h| h.dim());
            r.outcome(name, q.as_ref().map(|&q| q == d).map_err(|e| crate::Error::Invalid(e.to_string())), || {
                format!("n={n}: rational {:?}, prime field {d}", q.as_ref().ok())
            });
        }
    }
    r.line(format!("dims: {}", seq.join(", ")));
}

fn basis<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("HS_{n} closure and triangularity");
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let hs = r.timed(format!("build HS_{n} with coordinates"), || HsnAlgebra::<F>::build(n, true))?;
            let dim = hs.dim();
            r.outcome(format!("HS_{n}: products of basis members stay in the span"), hs.closure_check(0..dim).map(|_| true), String::new);
            r.outcome(format!("HS_{n}: members are triangular"), hs.triangularity_check().map(|_| true), String::new);
            let alg = r.timed(format!("structure constants HS_{n}"), || hs.to_algebra())?;
            let labels = hs.labels();
            let gens = hs.generator_indices();
            let ops: Vec<_> = gens.iter().map(|&g| alg.right_regular(g)).collect();
            let orbit = orbit_span(dim, alg.unit(), &ops).dim();
            r.check(format!("HS_{n}: generated by the sigma_i and pi_i"), orbit == dim, || format!("words span {orbit} of {dim}"));
            r.outcome(format!("HS_{n}: unit law"), alg.check_unit().map(|_| true), String::new);
            let assoc = r.timed(format!("associativity HS_{n}"), || alg.check_associative_against(&gens));
            r.check(format!("HS_{n}: structure constants associative"), assoc.is_ok(), || {
                let (a, b, c) = assoc.unwrap_err();
                format!("({}·{})·{}", labels[a], labels[b], labels[c])
            });
            r.line(format!("HS_{n}: {dim} basis operators, {} generators", hs.generator_indices().len()));
            Ok(())
        });
    }
}

fn sandwich<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("HS_{n} = sandwich solutions");
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let (sol, cons) = r.timed(format!("sandwich system n={n}"), || sandwich_space::<F>(n))?;
            let hs = HsnAlgebra::<F>::build(n, false)?;
            r.check(name.clone(), sol.same_as(hs.span()), || format!("n={n}: solution dim {}, span dim {}", sol.dim(), hs.dim()));
            let expect = (factorial(n) * factorial(n)) as usize - pair_count_oracle(n) as usize;
            r.check(format!("n={n}: independent constraints = n!^2 - h_n"), cons == expect, || format!("n={n}: {cons} vs {expect}"));
            r.line(format!("n={n}: {cons} independent constraints, solution dim {}", sol.dim()));
            Ok(())
        });
    }
}

fn comp_labels(n: usize) -> Vec<String> {
    Composition::all(n).iter().map(|c| c.label()).collect()
}

fn cartan(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("Cartan(HS_{n}) = boolean incidence");
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let alg = hs.to_algebra()?;
            let pb = hs.perm_basis();
            let ps = idempotents::<Q>(pb)?;
            idempotent_membership(&hs, &ps)?;
            let labels = comp_labels(n);
            let inc = boolean_incidence(n);
            let sand = cartan_hsn(&hs, &ps);
            r.check(format!("HS_{n}: dim p_J HS p_I = incidence[I][J]"), sand == inc, || first_mismatch(&sand, &inc, &labels));
            let mods = Composition::all(n)
                .iter()
                .map(|c| module_p_i::<Q>(pb, c)?.module(&hs, &alg))
                .collect::<Result<Vec<_>>>()?;
            let mut homs = vec![vec![0; mods.len()]; mods.len()];
            for (i, a) in mods.iter().enumerate() {
                for (j, b) in mods.iter().enumerate() {
                    homs[i][j] = hom_dim(a, b)?;
                }
            }
            r.check(format!("HS_{n}: dim Hom(P_I, P_J) = incidence[I][J]"), homs == inc, || first_mismatch(&homs, &inc, &labels));
            matrix_lines(r, &format!("Cartan(HS_{n}) [I][J] = dim Hom(P_I, P_J)"), &labels, &homs);
            Ok(())
        });
    }
}

fn morita(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("e HS_{n} e = incidence algebra of B_{}", n.saturating_sub(1));
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let ps = idempotents::<Q>(hs.perm_basis())?;
            let m = r.timed(format!("corner algebra n={n}"), || morita_check(&hs, &ps))?;
            let three = 3usize.pow(n as u32 - 1);
            r.check(format!("n={n}: dim e HS e = 3^(n-1)"), m.corner_dim == three, || format!("{} vs {three}", m.corner_dim));
            r.check(name.clone(), m.isomorphic, || format!("n={n}: structure constants differ"));
            r.line(format!("n={n}: corner dim {}, same orientation: {}", m.corner_dim, m.same_orientation));
            Ok(())
        });
    }
}

fn modules<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: dim P_I = n!/prod i_j!");
        if in_scope(r, &name, n, 1, 6) {
            match projective_dimensions::<F>(n) {
                Ok(v) => {
                    let bad = v.iter().find(|(_, d, f)| d != f);
                    r.check(name, bad.is_none(), || {
                        let (i, d, f) = bad.unwrap();
                        format!("P_{}: {d} vs {f}", i.label())
                    });
                }
                Err(e) => r.outcome(name, Err(e), String::new),
            }
        }
        let name = format!("n={n}: sum dim P_I dim S_I = dim HS_n");
        if in_scope(r, &name, n, 1, 5) {
            let pb = PermBasis::new(n);
            let got = r.timed(format!("pairing n={n}"), || projective_simple_pairing::<F>(&pb));
            let o = pair_count_oracle(n);
            r.outcome(name, got.as_ref().map(|&g| g as u64 == o).map_err(|e| crate::Error::Invalid(e.to_string())), || {
                format!("{:?} vs {o}", got.as_ref().ok())
            });
        }
        let name = format!("n={n}: idempotents p_sigma and p_sigma HS = P_Rec(sigma)");
        if in_scope(r, &name, n, 1, 4) {
            guard(r, &name, |r| idempotent_checks::<F>(r, n));
        }
    }
}

fn idempotent_checks<F: Field>(r: &mut VerificationReport, n: usize) -> Result<()> {
    let hs = HsnAlgebra::<F>::build(n, true)?;
    let alg = hs.to_algebra()?;
    let pb = hs.perm_basis();
    let ps = idempotents::<F>(pb)?;
    idempotent_membership(&hs, &ps)?;
    let fam: Vec<SparseVec<F>> = ps.iter().map(|p| hs.coordinates(p).expect("idempotents lie in HS_n")).collect();
    let rep = verify_idempotent_family(&alg, &fam);
    r.check(format!("n={n}: p_sigma orthogonal idempotents summing to 1"), rep.passed(), || rep.failures[0].clone());
    let regular = AlgebraModule::regular(&alg);
    let mut bad = None;
    for (k, s) in pb.perms().iter().enumerate() {
        let w = regular.generated_subspace(std::slice::from_ref(&fam[k]));
        let ideal = regular.submodule(&alg, "p HS", &w)?;
        let p = module_p_i::<F>(pb, &Composition::from_descent_set(&s.recoils()))?.module(&hs, &alg)?;
        if find_isomorphism(&ideal, &p)?.is_none() {
            bad = Some(s.label());
            break;
        }
    }
    r.check(format!("n={n}: p_sigma HS isomorphic to P_Rec(sigma)"), bad.is_none(), || format!("sigma = {}", bad.clone().unwrap()));
    Ok(())
}

fn prop2(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: character of P_I is the induced sign character");
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let pb = PermBasis::new(n);
            let mut bad = None;
            for i in Composition::all(n) {
                if let Some((class, t, e)) = symmetric_group_character_check::<Q>(&pb, &i)?.into_iter().find(|(_, t, e)| t != e) {
                    bad = Some(format!("P_{}, class {class:?}: {t} vs {e}", i.label()));
                    break;
                }
            }
            r.check(name.clone(), bad.is_none(), || bad.clone().unwrap());
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let alg = hs.to_algebra()?;
            let checks = hecke0_projective_check(&hs, &alg)?;
            restriction_result(r, format!("n={n}: P_I restricted to H_n(0) matches Lambda^I"), &checks, "P");
            Ok(())
        });
    }
}

fn restriction_result(r: &mut VerificationReport, name: String, checks: &[RestrictionCheck], tag: &str) {
    let bad = checks.iter().find(|c| !c.passed);
    r.check(name, bad.is_none(), || {
        let c = bad.unwrap();
        format!("{tag}_{}: {}", c.composition.label(), c.detail)
    });
}

fn prop3(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: S_I restricted to H_n(0) is projective indecomposable");
        if !in_scope(r, &name, n, 1, 4) {
            continue;
        }
        guard(r, &name, |r| {
            let hs = HsnAlgebra::<Q>::build(n, true)?;
            let alg = hs.to_algebra()?;
            let checks = hecke0_simple_restriction_check(&hs, &alg)?;
            restriction_result(r, name.clone(), &checks, "S");
            Ok(())
        });
    }
}

fn affine<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    let qs = [2i64, 3, -1];
    for n in lo..=hi {
        let name = format!("n={n}: Hecke and sorting relations");
        if !in_scope(r, &name, n, 3, 5) {
            continue;
        }
        let samples: Vec<F> = qs.iter().map(|&q| F::from_i64(q)).collect();
        relation_result(r, name, check_relations(n, &samples));
        for q in qs {
            relation_result(r, format!("n={n}, q={q}: omega T_(i-1)(q) = T_i(q) omega"), affine_relation_check(&F::from_i64(q), n));
        }
    }
}

fn relation_result(r: &mut VerificationReport, name: String, rep: Result<RelationReport>) {
    match rep {
        Ok(rep) => {
            let bad = rep.checks.iter().find(|(_, ok)| !ok).map(|(s, _)| s.clone());
            r.check(name, bad.is_none(), || bad.unwrap());
        }
        Err(e) => r.outcome(name, Err(e), String::new),
    }
}

fn prop6<F: Field>(r: &mut VerificationReport, lo: usize, hi: usize) {
    for n in lo..=hi {
        let name = format!("n={n}: HS_n acting on exterior powers");
        if !in_scope(r, &name, n, 1, 5) {
            continue;
        }
        guard(r, &name, |r| {
            let hs = r.timed(format!("build HS_{n}"), || HsnAlgebra::<F>::build(n, false))?;
            let rep = r.timed(format!("exterior quotient n={n}"), || crate::ndf::hsn_exterior_quotient(&hs))?;
            let ndf = binomial(2 * n - 1, n - 1) as usize;
            let cat = catalan(n) as usize;
            r.check(format!("n={n}: image of HS_n has dim |NDF_n|"), rep.image_dim == ndf, || format!("{} vs {ndf}", rep.image_dim));
            r.check(format!("n={n}: pi-image has dim Catalan(n)"), rep.pi_image_dim == cat, || format!("{} vs {cat}", rep.pi_image_dim));
            r.check(format!("n={n}: T_i(-1)-image has dim Catalan(n)"), rep.temperley_lieb_dim == cat, || {
                format!("{} vs {cat}", rep.temperley_lieb_dim)
            });
            if n <= 4 {
                let bad = rep.agreement.checks.iter().find(|(_, ok)| !ok).map(|(s, _)| s.clone());
                r.check(format!("n={n}: quotient action equals the combinatorial action"), bad.is_none() && rep.image_in_ndf_span, || {
                    bad.unwrap_or_else(|| "image leaves the NDF span".into())
                });
                r.check(format!("n={n}: global-sign reading agrees up to rescaling"), rep.global_sign_agrees_up_to_rescaling, || {
                    format!("n={n}")
                });
            } else {
                r.skip(format!("n={n}: quotient action equals the combinatorial action"), "dimension checks only for n = 5");
            }
            r.line(format!("n={n}: image {}, pi-image {}, T(-1)-image {}, |NDF_n| {ndf}", rep.image_dim, rep.pi_image_dim, rep.temperley_lieb_dim));
            Ok(())
        });
    }
}
