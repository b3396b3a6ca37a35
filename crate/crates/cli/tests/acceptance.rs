//! Acceptance suite: one pass/fail line per criterion, with pinned tolerances and time limits.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use rolle_core::algebra::rational::{int, pi_upper, pow, ratio};
use rolle_core::algebra::{ComplexQ, MultiPoly, UniPoly};
use rolle_core::corpus::{
    complex_poly_from_roots, curve_instance, descartes_instance, dlvp_instance, fuchs_instance, jensen_instance,
    meander_instance, polya_instance, random_germ, random_poly, rolle_instance, MULT_CAP,
};
use rolle_core::curves::{
    buffon_estimate, frenet_curvatures, rolle_rn_check, shapiro_certificate, spherical_length, Coordinate,
    CurveSampler,
};
use rolle_core::fuchsian::{
    annihilator_check, euler_solve, petrov_apply, PetrovCoefficient, PseudomonomialSum,
};
use rolle_core::meandering::{chain_stabilize, PolyVectorField, DEFAULT_SLACK};
use rolle_core::multiplicity::{
    corank_jet_test, corank_threshold_multiplicity, local_algebra_multiplicity, preimage_count, univariate_mult_poly,
    MapGerm,
};
use rolle_core::ode::{dlvp_admissible_length, dlvp_zero_bound};
use rolle_core::oracle::{
    count_real_zeros, random_affine_hits, sample_stream, AnalyticSampler, Contour, NumericFn,
};
use rolle_core::rolle::{fewnomial_positive_bound, positive_root_count_with_multiplicity, Fewnomial};
use rolle_core::wronskian::{apply_poly_operator, polya_verify, riemann_operator};
use rolle_core::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep(
    name: &str,
    count: u64,
    run: impl Fn(u64) -> rolle_core::Result<rolle_core::corpus::InstanceOutcome>,
) -> Result<(usize, usize), String> {
    let mut certified = 0;
    for i in 0..count {
        let out = run(i).map_err(|e| format!("{name} {i}: {e}"))?;
        ensure(out.passed(), || format!("{name} {i}: {out:?}"))?;
        certified += usize::from(!out.inconclusive);
    }
    Ok((certified, count as usize))
}

fn rolle_chain() -> Outcome {
    let (ok, n) = sweep("polynomial", 500, |i| rolle_instance(2024, i))?;
    Ok(format!("{ok}/{n} chains and products exact"))
}

fn descartes() -> Outcome {
    let mut sharp = 0;
    for i in 0..1000 {
        let out = descartes_instance(2024, i).map_err(|e| e.to_string())?;
        ensure(out.passed(), || format!("fewnomial {i}: {out:?}"))?;
        sharp += usize::from(out.bound == out.oracle);
    }
    let cubic = Fewnomial::new([(3, int(1)), (2, int(-6)), (1, int(11)), (0, int(-6))]);
    let b = fewnomial_positive_bound(&cubic).map_err(|e| e.to_string())?.bound.finite();
    let n = positive_root_count_with_multiplicity(&cubic).map_err(|e| e.to_string())?;
    ensure(b == Some(3) && n == 3, || format!("(t-1)(t-2)(t-3): bound {b:?}, roots {n}"))?;
    ensure(sharp > 0, || "no corpus instance attains the bound".into())?;
    Ok(format!("1000 fewnomials dominated, {sharp} sharp; (t-1)(t-2)(t-3) sharp at 3"))
}

fn dlvp() -> Outcome {
    let l = dlvp_admissible_length(&[int(0), int(1)], &int(1)).map_err(|e| e.to_string())?;
    let l = l.finite().ok_or("unbounded admissible length")?.clone();
    // |l - sqrt 2| <= 2^-60, decided exactly
    let eps = pow(&ratio(1, 2), 60);
    let below = &l * &l <= int(2);
    let upper = &l + &eps;
    ensure(below && &upper * &upper >= int(2), || format!("admissible length {l} not within 2^-60 of sqrt 2"))?;
    let c = dlvp_zero_bound(&[int(0), int(1)], &(int(10) * pi_upper())).map_err(|e| e.to_string())?;
    let sin = AnalyticSampler::Numeric(NumericFn::sin());
    let oracle = count_real_zeros(&sin, 0.0, 10.0 * std::f64::consts::PI, 20_000).map_err(|e| e.to_string())?.count;
    ensure(c.bound.finite() == Some(23) && oracle == 11, || {
        format!("oscillator: bound {:?}, oracle {oracle}", c.bound.finite())
    })?;
    let (ok, n) = sweep("equation", 100, |i| dlvp_instance(2024, i))?;
    Ok(format!("admissible length within 2^-60 of sqrt 2; 23 >= 11; {ok}/{n} equations dominated"))
}

fn jensen_voorhoeve() -> Outcome {
    let (ok, n) = sweep("polynomial", 200, |i| jensen_instance(2024, i))?;
    let circle = Contour::unit_circle();
    for k in 1..=8usize {
        let v = voorhoeve(&UniPoly::monomial(int(1), k), &circle)?;
        ensure((v - TAU * k as f64).abs() < 1e-6, || format!("V(z^{k}) = {v}"))?;
    }
    let mut pairs = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..100 {
        let mut rng = sample_stream(2024, i);
        let roots = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<ComplexQ> {
            let k = rng.random_range(1..=4);
            (0..k)
                .map(|_| loop {
                    let (a, b) = (rng.random_range(-16i64..=16), rng.random_range(-16i64..=16));
                    // keep zeros off the contour
                    if (((a * a + b * b) as f64).sqrt() / 8.0 - 1.0).abs() > 0.1 {
                        break ComplexQ::new(ratio(a, 8), ratio(b, 8));
                    }
                })
                .collect()
        };
        let (fr, gr) = (roots(&mut rng), roots(&mut rng));
        let all: Vec<ComplexQ> = fr.iter().chain(&gr).cloned().collect();
        let v = |r: &[ComplexQ]| voorhoeve_complex(&complex_poly_from_roots(r), &circle);
        let (f, g, fg) = (v(&fr)?, v(&gr)?, v(&all)?);
        worst = worst.max(fg - f - g).max((f - g).abs() - fg);
        pairs += 1;
    }
    ensure(worst <= 1e-6, || format!("triangle inequality violated by {worst}"))?;
    Ok(format!("{ok}/{n} Jensen bounds dominate; V(z^k) = 2 pi k to 1e-6 for k <= 8; {pairs} triangle pairs"))
}

fn voorhoeve(f: &UniPoly, c: &Contour) -> Result<f64, String> {
    rolle_core::complex_counting::voorhoeve_index(&AnalyticSampler::Poly(f.clone()), c)
        .map(|v| v.variation)
        .map_err(|e| e.to_string())
}

fn voorhoeve_complex(coeffs: &[ComplexQ], c: &Contour) -> Result<f64, String> {
    rolle_core::complex_counting::voorhoeve_index(&AnalyticSampler::ComplexPoly(coeffs.to_vec()), c)
        .map(|v| v.variation)
        .map_err(|e| e.to_string())
}

fn polya() -> Outcome {
    let (ok, n) = sweep("triple", 100, |i| polya_instance(2024, i))?;
    let fs: Vec<UniPoly> = (0..3).map(|k| UniPoly::monomial(int(1), k)).collect();
    ensure(polya_verify(&fs).map_err(|e| e.to_string())?.all(), || "powers not annihilated".into())?;
    let m = riemann_operator(&fs).map_err(|e| e.to_string())?;
    let third_only = m.len() == 4 && m[..3].iter().all(UniPoly::is_zero) && !m[3].is_zero();
    ensure(third_only, || format!("operator for (1, t, t^2): {m:?}"))?;
    ensure(fs.iter().all(|f| apply_poly_operator(&m, f).is_zero()), || "residual".into())?;
    Ok(format!("{ok}/{n} triples annihilated exactly; (1, t, t^2) gives {} y''' = 0", m[3]))
}

fn meandering() -> Outcome {
    let p = |s: &str| MultiPoly::parse(s, &["x", "y"]).map_err(|e| e.to_string());
    let rot = PolyVectorField::parse(&["y", "-x"]).map_err(|e| e.to_string())?;
    let c = chain_stabilize(&p("x")?, &rot, 6, DEFAULT_SLACK).map_err(|e| e.to_string())?;
    ensure(c.nu == 2 && c.cofactors == vec![p("0")?, p("-1")?], || {
        format!("oscillator: nu {}, cofactors {:?}", c.nu, c.cofactors)
    })?;
    // identities_hold covers the certificate and the degree growth of every chain
    let (ok, n) = sweep("field", 100, |i| meander_instance(2024, i))?;
    ensure(ok == n, || format!("only {ok}/{n} certified"))?;
    Ok(format!("oscillator nu = 2, h = (0, -1); {ok}/{n} certificates dominate, degree growth exact"))
}

fn multiplicity() -> Outcome {
    let both = |comps: &[&str]| -> Result<(usize, usize), String> {
        let g = MapGerm::parse(comps).map_err(|e| e.to_string())?;
        Ok((
            local_algebra_multiplicity(&g, MULT_CAP).map_err(|e| e.to_string())?.multiplicity,
            corank_threshold_multiplicity(&g, MULT_CAP).map_err(|e| e.to_string())?.multiplicity,
        ))
    };
    for (comps, mu) in [(&["x", "y"], 1), (&["x^2", "y^3"], 6), (&["x^2 - y^3", "y^2"], 4)] {
        let got = both(comps)?;
        ensure(got == (mu, mu), || format!("{comps:?}: {got:?}, expected {mu}"))?;
    }
    for i in 0..30 {
        let inst = random_germ(&mut sample_stream(2024, i));
        let dual = local_algebra_multiplicity(&inst.germ, MULT_CAP).map_err(|e| e.to_string())?.multiplicity;
        let threshold = (0..=MULT_CAP).find(|&k| corank_jet_test(&inst.germ, k).bounded).map(|k| k as usize);
        ensure(inst.expected <= 8 && dual == inst.expected && threshold == Some(dual), || {
            format!("germ {i}: expected {}, dual {dual}, threshold {threshold:?}", inst.expected)
        })?;
        let pre = preimage_count(&inst.germ, &inst.eps, inst.radius).map_err(|e| e.to_string())?;
        ensure(pre == dual, || format!("germ {i}: {pre} preimages, multiplicity {dual}"))?;
    }
    let mut checked = 0;
    for i in 0..500 {
        let f = random_poly(&mut sample_stream(2025, i), 8, 10);
        // a zero of high order at the origin
        let f = &f * &UniPoly::monomial(int(1), (i % 4) as usize);
        let df = f.derivative();
        if df.is_zero() {
            continue;
        }
        let (m, dm) = (univariate_mult_poly(&f), univariate_mult_poly(&df));
        let (m, dm) = (m.map_err(|e| e.to_string())?, dm.map_err(|e| e.to_string())?);
        ensure(m <= dm + 1, || format!("polynomial {i}: mult {m}, derivative {dm}"))?;
        checked += 1;
    }
    Ok(format!("closed forms 1, 6, 4 by both methods; 30 germs agree; local Rolle on {checked} polynomials"))
}

fn fuchsian() -> Outcome {
    for i in 0..50 {
        let mut rng = sample_stream(2024, i);
        let spec = rolle_core::corpus::random_euler(&mut rng, 4);
        let spectrum = euler_solve(&spec).map_err(|e| e.to_string())?;
        let pairs = spectrum.exact_pairs();
        for (l, k) in spectrum.basis() {
            let v = annihilator_check(&pairs, &PseudomonomialSum::from_real(&[(l, k, int(1))]));
            ensure(v.in_space && v.annihilated(), || format!("operator {i}: basis element survives"))?;
        }
    }
    let (ok, n) = sweep("solution", 200, |i| fuchs_instance(2024, i))?;
    for l in [int(0), ratio(1, 3), ratio(-5, 2)] {
        let out = petrov_apply(&l, &PseudomonomialSum::from_real(&[(l.clone(), 1, int(1))]));
        let mut want = PetrovCoefficient::default();
        want.add(1, &int(0), ComplexQ::new(int(0), int(4)));
        let terms: Vec<_> = out.terms().collect();
        let exact = terms.len() == 1 && terms[0].0 == &(l.clone(), 0) && terms[0].1 == &want;
        ensure(exact, || format!("shifted linear term at {l}: {terms:?}"))?;
    }
    Ok(format!("50 operators annihilate their bases; {ok}/{n} scans dominated; linear term maps to 4 pi i exactly"))
}

fn moment_curve(t0: f64, t1: f64) -> Result<CurveSampler, String> {
    let coords = vec![
        Coordinate::poly(&[0.0, 1.0]),
        Coordinate::poly(&[0.0, 0.0, 1.0]),
        Coordinate::poly(&[0.0, 0.0, 0.0, 1.0]),
    ];
    CurveSampler::new(coords, t0, t1, false).map_err(|e| e.to_string())
}

fn curves() -> Outcome {
    let r = rolle_rn_check(&CurveSampler::circle(1.0)).map_err(|e| e.to_string())?;
    let err = (r.curve_length - TAU).abs().max((r.velocity_length - TAU).abs());
    ensure(err < 1e-6, || format!("circle lengths off by {err}"))?;
    for c in [0.25, 0.5, 1.0, 2.0] {
        let h = CurveSampler::helix(c, -3.0, 3.0).map_err(|e| e.to_string())?;
        for t in [-2.5, 0.0, 1.1] {
            let k = frenet_curvatures(&h, t).map_err(|e| e.to_string())?.curvatures;
            let d = 1.0 + c * c;
            let err = (k[0] - 1.0 / d).abs().max((k[1] - c / d).abs());
            ensure(err < 1e-6, || format!("helix c = {c}, t = {t}: off by {err}"))?;
        }
    }
    let mut buffon = 0;
    let mut worst_sigma: f64 = 0.0;
    for i in 0.. {
        if buffon == 5 {
            break;
        }
        let curve = CurveSampler::random_trig(3, 2, 2024, i);
        let length = match spherical_length(&curve) {
            Ok(q) => q.value,
            Err(Error::OriginProximity { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let b = buffon_estimate(&curve, 10_000, 2024 + i);
        let sigmas = (b.estimate - length).abs() / b.std_err;
        ensure(sigmas <= 3.0, || format!("curve {i}: Buffon {} vs quadrature {length}", b.estimate))?;
        worst_sigma = worst_sigma.max(sigmas);
        buffon += 1;
    }
    let mut arcs = vec![
        CurveSampler::helix(1.0, 0.0, 0.1).map_err(|e| e.to_string())?,
        CurveSampler::helix(0.5, 1.0, 1.2).map_err(|e| e.to_string())?,
        CurveSampler::helix(2.0, -1.0, 1.0).map_err(|e| e.to_string())?,
        moment_curve(0.0, 0.05)?,
        moment_curve(0.1, 0.13)?,
    ];
    for i in 0..10 {
        let c = CurveSampler::random_trig(3, 1, 2024, 100 + i);
        arcs.push(c.with_interval(0.0, 0.1).map_err(|e| e.to_string())?);
    }
    let mut certified = 0;
    for (i, curve) in arcs.iter().enumerate() {
        let Ok(s) = shapiro_certificate(curve) else { continue };
        if s.certified {
            let hits = random_affine_hits(curve, 1000, 2024 + i as u64);
            ensure(hits.max <= curve.dim(), || format!("arc {i}: certified but {} hits", hits.max))?;
            certified += 1;
        }
    }
    ensure(certified >= 4, || format!("only {certified} arcs certified"))?;
    let (ok, n) = sweep("curve", 20, |i| curve_instance(2024, i))?;
    Ok(format!(
        "circle 2 pi to 1e-6; helix curvatures to 1e-6; Buffon within {worst_sigma:.2} sigma; \
         {certified} certified arcs hit <= n; {ok}/{n} rotation bounds dominate"
    ))
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rolle-lab")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn determinism() -> Outcome {
    let kinds = ["rolle", "descartes", "dlvp", "jensen", "polya", "meander", "mult", "fuchs", "curve"];
    for kind in kinds {
        let run = || {
            Command::new(bin())
                .args(["corpus", "--kind", kind, "--count", "12", "--seed", "99"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("corpus {kind}: reports differ"))?;
        ensure(a.status.code() == Some(0), || format!("corpus {kind}: exit {:?}", a.status.code()))?;
    }
    let mut shipped = 0;
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    files.sort();
    for path in &files {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        if name == "contradiction" {
            continue;
        }
        let kind = name.split('_').next().unwrap_or_default();
        let kind = if kind == "malformed" { "dlvp" } else { kind };
        let out = Command::new(bin()).args([kind, "--verify"]).arg(path).output().map_err(|e| e.to_string())?;
        ensure(out.status.code() != Some(3), || format!("{name}: shipped fixture raised a contradiction"))?;
        shipped += 1;
    }
    let out = Command::new(bin())
        .arg("verify")
        .arg(fixtures().join("contradiction.json"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(3), || format!("contradiction fixture: exit {:?}", out.status.code()))?;
    Ok(format!("9 corpus kinds byte-identical on rerun; {shipped} fixtures never exit 3; alarm fixture exits 3"))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "rolle chain", limit: secs(30), run: rolle_chain },
        Criterion { name: "descartes / fewnomial", limit: secs(60), run: descartes },
        Criterion { name: "de la vallee poussin", limit: secs(120), run: dlvp },
        Criterion { name: "jensen / voorhoeve", limit: secs(120), run: jensen_voorhoeve },
        Criterion { name: "polya / riemann", limit: secs(60), run: polya },
        Criterion { name: "meandering", limit: secs(300), run: meandering },
        Criterion { name: "multiplicity", limit: secs(180), run: multiplicity },
        Criterion { name: "petrov / fuchsian", limit: secs(120), run: fuchsian },
        Criterion { name: "curves", limit: secs(180), run: curves },
        Criterion { name: "end-to-end determinism", limit: secs(300), run: determinism },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let verdict = match &result {
            Ok(_) if took > c.limit => Err(format!("took {:.1}s, limit {}s", took.as_secs_f64(), c.limit.as_secs())),
            Ok(msg) => Ok(msg.clone()),
            Err(e) => Err(e.clone()),
        };
        let (tag, msg) = match verdict {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "{tag} criterion {:>2} {:<24} {:>6.1}s / {:>3}s  {msg}",
            i + 1,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
