//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperweyl::jz::{verify_identities, JzAlgebra};
use hyperweyl::qfield::{BaseField, RatFunc};
use hyperweyl::repmod::{
    build_finite, build_finite_classified, build_weight_module_classified, MatrixRep, Module, WeightKind,
};
use hyperweyl::spectrum::{
    classify, eval_h_shift, finite_family, special_point, theta_on_point, xi_vanishing_set, Branch, PointType,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn identity_suite() -> Check {
    let jz = JzAlgebra::symbolic();
    let report = verify_identities(&jz, 0);
    let required = [
        "relation_he",
        "relation_hf",
        "relation_ef",
        "casimir_e",
        "casimir_f",
        "casimir_h",
        "h_commutes_with_ef",
        "x_h",
    ];
    for name in required {
        let id = report
            .identities
            .iter()
            .find(|i| i.name == name)
            .ok_or(format!("{name} missing from the suite"))?;
        ensure(id.gwa_pass && id.pbw_pass, format!("{name} failed: {id:?}"))?;
    }
    ensure(
        report.identities.iter().all(|i| i.passed()),
        "some further identity failed",
    )?;
    Ok(format!("{} identities zero in both engines", report.identities.len()))
}

fn closed_forms() -> Check {
    let jz = JzAlgebra::symbolic();
    let checks = jz.check_theta_powers(16);
    for c in &checks {
        ensure(c.pass, format!("theta^n({}) differs at {:?}", c.generator, c.failures))?;
    }
    Ok("h, xi, C agree for n in [-16, 16]".into())
}

fn finite_orbit_point() -> Check {
    let sym = BaseField::symbolic();
    let s = special_point(&sym);
    ensure(theta_on_point(&s) == s, "special point is not fixed")?;
    let mut rng = common::rng(3);
    for k in 0..100 {
        let p = common::point(&mut rng, &sym);
        let mut seen = HashSet::new();
        for i in -32..=32 {
            ensure(seen.insert(eval_h_shift(i, &p)), format!("point {k} {p}: repeated beta at i = {i}"))?;
        }
    }
    Ok("special point fixed; 100 random orbits have 65 distinct beta-coordinates".into())
}

fn finite_modules(modules: &mut Vec<Module>) -> Check {
    let sym = BaseField::symbolic();
    let mut dims = Vec::new();
    for two_s in 1..=4u32 {
        for branch in [Branch::Minus, Branch::Plus] {
            let tag = format!("2s={two_s} {branch:?}");
            let p = finite_family(&sym, two_s, branch).map_err(|e| e.to_string())?;
            let class = classify(&p, 64).map_err(|e| e.to_string())?;
            ensure(
                class.point_type == PointType::T1n(two_s as u64),
                format!("{tag}: classified {}", class.point_type),
            )?;
            let rep = build_finite_classified(&p, &class).map_err(|e| e.to_string())?;
            ensure(rep.dim() == two_s as usize + 1, format!("{tag}: dim {}", rep.dim()))?;
            ensure(rep.check_relations().pass, format!("{tag}: relations fail"))?;
            let cert = rep.check_irreducible().map_err(|e| e.to_string())?;
            let by_generation = cert.generation.as_ref().is_some_and(|g| g.invariant_subspace.is_none());
            ensure(by_generation && cert.ladder.pass, format!("{tag}: {cert:?}"))?;
            dims.push(rep.dim());
            modules.push(Module::Finite(rep));
        }
    }
    Ok(format!("T1n with n = 2s, dims {dims:?}, irreducible by generation and ladder"))
}

fn weight_modules(modules: &mut Vec<Module>) -> Check {
    let cases = [
        ("8 - 4*q", "4", PointType::T1Inf, WeightKind::Highest, 200),
        ("0", "1", PointType::TInf1, WeightKind::Lowest, 200),
        ("1", "0", PointType::TInfInf, WeightKind::Dense, 100),
    ];
    for (a, b, want, kind, window) in cases {
        let p = common::pt(a, b);
        let class = classify(&p, 64).map_err(|e| e.to_string())?;
        ensure(class.point_type == want, format!("({a}, {b}) classified {}", class.point_type))?;
        if want == PointType::TInfInf {
            ensure(
                class.vanishing.shifts.is_empty() && class.certificate.orbit.as_ref().is_some_and(|o| o.distinct),
                "dense point has a nonempty vanishing set",
            )?;
        }
        let w = build_weight_module_classified(&p, &class, kind, window).map_err(|e| e.to_string())?;
        let rel = w.check_relations();
        ensure(rel.pass, format!("({a}, {b}): relation residuals {:?}", rel.residuals))?;
        let cert = w.check_irreducible();
        ensure(cert.ladder.breaks.is_empty() && cert.irreducible, format!("({a}, {b}): ladder {:?}", cert.ladder.breaks))?;
        match kind {
            WeightKind::Highest => ensure(w.ecoef(0).is_some_and(RatFunc::is_zero), "ecoef(0) != 0")?,
            WeightKind::Lowest => ensure(w.fcoef(0).is_some_and(RatFunc::is_zero), "fcoef(0) != 0")?,
            WeightKind::Dense => ensure(w.window() == (-100, 100), "dense window")?,
        }
        modules.push(Module::Weight(w));
    }
    Ok("T1Inf and TInf1 at window 200, TInfInf for |m| <= 100".into())
}

fn casimir_scaling(modules: &[Module]) -> Check {
    let mut checked = 0;
    for m in modules {
        let report = m.casimir_report().ok_or("module without a point")?;
        ensure(report.pass, format!("casimir mismatches at {:?}", report.mismatches))?;
        checked += report.checked;
    }
    Ok(format!("{checked} basis vectors across {} modules", modules.len()))
}

fn oracle_equivalence() -> Check {
    let jz = JzAlgebra::symbolic();
    let mut rng = common::rng(7);
    for k in 0..200 {
        let w = common::word(&mut rng, 6);
        let via_gwa = jz.gwa_to_pbw(&jz.from_word(&w));
        let direct = jz.pbw_normal_form(std::slice::from_ref(&w));
        ensure(via_gwa == direct, format!("word {k} disagrees"))?;
    }
    let gwa = jz.gwa();
    for k in 0..100 {
        let (a, b, c) = (
            common::gwa_element(&mut rng),
            common::gwa_element(&mut rng),
            common::gwa_element(&mut rng),
        );
        ensure(
            gwa.mul(&gwa.mul(&a, &b), &c) == gwa.mul(&a, &gwa.mul(&b, &c)),
            format!("triple {k} is not associative"),
        )?;
    }
    Ok("200 words agree; 100 triples associative".into())
}

fn negative_controls() -> Check {
    let sym = BaseField::symbolic();
    let p = finite_family(&sym, 2, Branch::Plus).map_err(|e| e.to_string())?;
    let rep = build_finite(&p).map_err(|e| e.to_string())?;
    let mut e = rep.e().clone();
    e.set(1, 2, &e.get(1, 2).clone() + &RatFunc::q());
    let bad = MatrixRep::from_matrices(&sym, e, rep.f().clone(), rep.h().clone()).map_err(|e| e.to_string())?;
    let report = bad.check_relations();
    ensure(!report.pass && !report.residuals.is_empty(), "corrupted matrix passed")?;
    let other = build_finite(&finite_family(&sym, 1, Branch::Minus).unwrap()).unwrap();
    let sum = rep.direct_sum(&other);
    let cert = sum.check_irreducible().map_err(|e| e.to_string())?;
    let witness = cert
        .generation
        .and_then(|g| g.invariant_subspace)
        .ok_or("direct sum has no invariant-subspace witness")?;
    ensure(!cert.irreducible, "direct sum reported irreducible")?;
    Ok(format!(
        "corrupted E leaves {} residual entries; direct sum has a {}-dim invariant subspace",
        report.residuals.len(),
        witness.basis.len()
    ))
}

fn reconciliation() -> Check {
    let suite = common::example_suite();
    for (name, p) in &suite {
        let v = xi_vanishing_set(p, 64).map_err(|e| format!("{name}: {e}"))?;
        let in_range: Vec<i64> = v.shifts.range(-64..=64).copied().collect();
        ensure(
            in_range == v.scanned.iter().copied().collect::<Vec<_>>(),
            format!("{name}: solver {:?} vs scan {:?}", v.shifts, v.scanned),
        )?;
        let a = classify(p, 64).map_err(|e| e.to_string())?;
        let b = classify(p, 128).map_err(|e| e.to_string())?;
        ensure(
            a.point_type == b.point_type && a.vanishing.shifts == b.vanishing.shifts,
            format!("{name}: {} at 64 but {} at 128", a.point_type, b.point_type),
        )?;
    }
    Ok(format!("{} example points agree; stable under bound 128", suite.len()))
}

fn main() -> ExitCode {
    let mut modules = Vec::new();
    let trivial = build_finite(&common::pt("0", "0")).expect("trivial module");
    modules.push(Module::Finite(trivial));

    let mut results: Vec<(&str, Duration, Check, Duration)> = Vec::new();
    let mut run = |name: &'static str, limit_s: u64, f: &mut dyn FnMut() -> Check| {
        let t = Instant::now();
        let r = f();
        results.push((name, t.elapsed(), r, Duration::from_secs(limit_s)));
    };
    run("1 identity suite", 5, &mut identity_suite);
    run("2 closed forms for theta^n", 10, &mut closed_forms);
    run("3 finite orbit point and distinct orbits", 30, &mut finite_orbit_point);
    run("4 finite-dimensional modules", 60, &mut || finite_modules(&mut modules));
    run("5 infinite weight modules", 60, &mut || weight_modules(&mut modules));
    run("6 casimir scaling", 60, &mut || casimir_scaling(&modules));
    run("7 oracle equivalence", 120, &mut oracle_equivalence);
    run("8 negative controls", 60, &mut negative_controls);
    run("9 solver and scan reconciliation", 120, &mut reconciliation);

    let mut ok = true;
    for (name, elapsed, r, limit) in &results {
        let (verdict, detail) = match r {
            Ok(d) if elapsed <= limit => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; took longer than {}s", limit.as_secs())),
            Err(e) => ("FAIL", e.clone()),
        };
        ok &= verdict == "PASS";
        println!("{verdict} [{:>7.2}s] criterion {name}: {detail}", elapsed.as_secs_f64());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
