//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use vertex_core::algebroid::{tautological_gl, Algebroid, Chart, LieAlgebraData, WeightOneElement};
use vertex_core::freefield::{AxiomInstance, FreeField, FreeFieldElement};
use vertex_core::geometry::{conformal_glue_check, monomials, transition, Direction, GluingForm};
use vertex_core::laurent::{de_rham, LaurentElement, OneForm};
use vertex_core::random::Sampler;
use vertex_core::scalar::{rat, ParamScalar, ParamSet};
use vertex_core::veronese::{
    build_model, classify_admissible, derivations, higher_witness, omega_membership, quantized_gl2, solve_charge,
    ChargeStatus, VeroneseModel,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn charge() -> Outcome {
    for big in 2..=6u32 {
        let start = Instant::now();
        let m = VeroneseModel::new(2, big).map_err(|e| e.to_string())?;
        let res = solve_charge(&m).map_err(|e| e.to_string())?;
        ensure(res.status == ChargeStatus::Unique && res.charge == Some(rat(big as i64 + 1)), || {
            format!("N={big}: {} {:?}", res.status, res.charge)
        })?;
        within(start, Duration::from_secs(10), &format!("N={big}"))?;
    }
    Ok("k = N+1 for N = 2..6".into())
}

fn gluing() -> Outcome {
    let start = Instant::now();
    let omega11 = GluingForm::basis(1, 1, ParamScalar::one());
    for big in [2u32, 3] {
        let m = VeroneseModel::new(2, big).map_err(|e| e.to_string())?;
        let survivors = classify_admissible(&m, 2 * big).map_err(|e| e.to_string())?;
        ensure(survivors == [omega11.clone()], || format!("N={big}: {survivors:?}"))?;
    }
    within(start, Duration::from_secs(30), "classification")?;
    Ok("only w[1,1] survives for N = 2, 3".into())
}

fn gl2_morphism() -> Outcome {
    for big in [2u32, 3] {
        let m = VeroneseModel::new(2, big).map_err(|e| e.to_string())?;
        let rep = quantized_gl2(&m).map_err(|e| e.to_string())?;
        let k = ParamScalar::param(&vertex_core::veronese::charge_param());
        let generic = (rep.generic.level("k1").cloned(), rep.generic.level("k2").cloned());
        let expected = (Some(&-k.clone() - &ParamScalar::one()), Some(&k - &ParamScalar::one()));
        ensure(rep.generic.passed && generic == expected, || format!("generic levels {generic:?}"))?;
        let special = (rep.specialized.level("k1").cloned(), rep.specialized.level("k2").cloned());
        let want = (Some(ParamScalar::int(-(big as i64) - 2)), Some(ParamScalar::int(big as i64)));
        ensure(special == want, || format!("N={big}: {special:?}"))?;
    }
    Ok("levels (-k-1, k-1); (-4, 2) at N=2; (-5, 3) at N=3".into())
}

fn gl_n_levels() -> Outcome {
    let params = ParamSet::new(["k1", "k2"]);
    let (k1, k2) = (params.get("k1").unwrap(), params.get("k2").unwrap());
    for n in 2..=4 {
        let rep = Algebroid::default()
            .morphism_check(&LieAlgebraData::gl(n, &k1, &k2), &tautological_gl(n))
            .map_err(|e| e.to_string())?;
        let got = (rep.level("k1").cloned(), rep.level("k2").cloned());
        let minus_one = Some(ParamScalar::int(-1));
        ensure(rep.passed && got == (minus_one.clone(), minus_one), || format!("n={n}: {got:?}"))?;
    }
    Ok("levels (-1, -1) for n = 2, 3, 4".into())
}

fn virasoro() -> Outcome {
    let engine = FreeField::with_max_weight(4);
    for n in 1..=4usize {
        let l = engine.virasoro(n).map_err(|e| e.to_string())?;
        let p = |k| engine.nproduct(&l, k, &l).map_err(|e| e.to_string());
        let tl = engine.translate(&l).map_err(|e| e.to_string())?;
        ensure(p(0)? == tl, || format!("n={n}: L_(0)L"))?;
        ensure(p(1)? == l.scale(&ParamScalar::int(2)), || format!("n={n}: L_(1)L"))?;
        ensure(p(2)?.is_zero(), || format!("n={n}: L_(2)L"))?;
        let c = FreeFieldElement::vacuum(n).scale(&ParamScalar::int(n as i64));
        ensure(p(3)? == c, || format!("n={n}: L_(3)L"))?;
    }
    Ok("Virasoro relations for n = 1..4".into())
}

fn conformal_gluing() -> Outcome {
    let engine = FreeField::with_max_weight(2);
    let forms = [
        GluingForm::basis(1, 1, ParamScalar::one()),
        GluingForm::basis(1, 2, ParamScalar::one()),
        GluingForm::basis(2, 1, ParamScalar::int(2)),
    ];
    for om in &forms {
        let ok = conformal_glue_check(om, &engine).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{om}"))?;
    }
    Ok("L is preserved for w[1,1], w[1,2], 2*w[2,1]".into())
}

fn xi_zero_l() -> Outcome {
    let engine = FreeField::with_max_weight(3);
    let mut count = 0;
    for n in 1..=3usize {
        for deg in 0..=5 {
            for e in monomials(n, deg) {
                for i in 0..n {
                    let xi = WeightOneElement::field(Chart::Affine(n), i, LaurentElement::mono(&e)).embed();
                    let d = engine.lemma441_defect(&xi).map_err(|e| e.to_string())?;
                    ensure(d.is_zero(), || format!("{xi}: {d}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} monomial fields, all defects zero"))
}

fn higher() -> Outcome {
    for (n, big) in [(3usize, 2u32), (3, 3), (4, 2)] {
        let m = VeroneseModel::new(n, big).map_err(|e| e.to_string())?;
        let w = higher_witness(&m).map_err(|e| e.to_string())?;
        let mut comps = vec![LaurentElement::zero(n); n];
        let mut e3 = vec![0; n];
        e3[1] = big as i32 - 1;
        comps[2] = LaurentElement::mono(&e3);
        let mut e2 = vec![0; n];
        e2[1] = big as i32 - 2;
        e2[2] = 1;
        comps[1] = LaurentElement::mono(&e2).scale(&ParamScalar::int(big as i64 - 2));
        ensure(w.element.form_part() == &OneForm::from_components(comps), || {
            format!("(n,N)=({n},{big}): {}", w.element)
        })?;
        ensure(w.element == w.display, || format!("display mismatch {}", w.display))?;
    }
    Ok("non-quantizable for (3,2), (3,3), (4,2)".into())
}

fn membership() -> Outcome {
    let m = VeroneseModel::new(2, 3).map_err(|e| e.to_string())?;
    for e in [[0, 2], [1, 1]] {
        let w = OneForm::basis(2, 0, LaurentElement::mono(&e));
        let inside = omega_membership(&w, &m, 3).map_err(|e| e.to_string())?;
        ensure(!inside, || format!("y^{e:?} dy1 should not be a member"))?;
    }
    for j in 0..m.generators().len() {
        let inside = omega_membership(&de_rham(&m.generator(j)), &m, 3).map_err(|e| e.to_string())?;
        ensure(inside, || format!("d(x{j}) should be a member"))?;
    }
    Ok("y2^2*dy1, y1*y2*dy1 excluded; d(x_j) included (N=3)".into())
}

fn derivation_dims() -> Outcome {
    for big in 2..=4u32 {
        let m = build_model(2, big, 2 * big + 2).map_err(|e| e.to_string())?;
        let rep = derivations(&m, 0).map_err(|e| e.to_string())?;
        ensure(rep.basis.len() == 4 && rep.generated, || {
            format!("N={big}: dim {} generated {}", rep.basis.len(), rep.generated)
        })?;
    }
    Ok("dimension 4, generated by gl2, for N = 2, 3, 4".into())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let engine = FreeField::with_max_weight(6);
    let run = |inst: AxiomInstance| -> Result<(), String> {
        let d = engine.axiom_defect(&inst).map_err(|e| e.to_string())?;
        ensure(d.is_zero(), || format!("{inst:?}: defect {d}"))
    };
    for seed in 0..200u64 {
        let mut s = Sampler::new(seed);
        let n = s.pick(&[1usize, 2]);
        let elt = |s: &mut Sampler| {
            let w = s.pick(&[0u32, 1, 2]);
            s.free_field(n, w, 2)
        };
        let (a, b, c) = (elt(&mut s), elt(&mut s), elt(&mut s));
        let m = s.pick(&[-1i64, 0, 1]);
        let k = s.pick(&[-1i64, 0, 1]);
        run(AxiomInstance::Jacobi { a: a.clone(), b: b.clone(), c, m, n: k })?;
        run(AxiomInstance::Skew { a: a.clone(), b: b.clone(), n: m })?;
        run(AxiomInstance::Translation { a: a.clone(), b: b.clone(), n: m })?;
        run(AxiomInstance::TranslationCommutator { a, b, n: m })?;
    }
    let rules = Algebroid::unchecked();
    let oracle = Algebroid::default();
    for seed in 0..100u64 {
        let mut s = Sampler::new(1000 + seed);
        let chart = s.pick(&[Chart::Affine(1), Chart::Affine(2), Chart::Affine(3)]);
        let (u, v) = (s.weight_one(chart), s.weight_one(chart));
        for n in [0, 1] {
            let got = rules.vprod(&u, n, &v).map_err(|e| e.to_string())?;
            let want = oracle.oracle_product(&u, n, &v).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("oracle mismatch for {u}, {v}, n={n}"))?;
        }
    }
    for seed in 0..100u64 {
        let mut s = Sampler::new(2000 + seed);
        let (u, v) = (s.weight_one(Chart::Overlap), s.weight_one(Chart::Overlap));
        let om = s.gluing_form(3);
        let err = |e: vertex_core::geometry::GeometryError| e.to_string();
        let tu = transition(&u, &om, Direction::OneToTwo).map_err(err)?;
        ensure(transition(&tu, &om, Direction::TwoToOne).map_err(err)? == u, || format!("round trip {u}"))?;
        if seed < 50 {
            let tv = transition(&v, &om, Direction::OneToTwo).map_err(err)?;
            let p0 = oracle.vprod0(&u, &v).map_err(|e| e.to_string())?;
            let moved = transition(&p0, &om, Direction::OneToTwo).map_err(err)?;
            ensure(moved == oracle.vprod0(&tu, &tv).map_err(|e| e.to_string())?, || format!("_(0) for {u}, {v}"))?;
            let p1 = oracle.vprod1(&u, &v).map_err(|e| e.to_string())?;
            ensure(p1 == oracle.vprod1(&tu, &tv).map_err(|e| e.to_string())?, || format!("_(1) for {u}, {v}"))?;
        }
    }
    within(start, Duration::from_secs(120), "property suites")?;
    Ok(format!("axioms x200, oracle x100, transitions x100/x50 in {:.1?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("quantization charge", charge),
        ("admissible gluing", gluing),
        ("gl2 morphism", gl2_morphism),
        ("gl_n level", gl_n_levels),
        ("Virasoro", virasoro),
        ("conformal gluing", conformal_gluing),
        ("xi_(0)L vanishes", xi_zero_l),
        ("higher Veronese", higher),
        ("membership table", membership),
        ("derivations", derivation_dims),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
