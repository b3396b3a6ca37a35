//! One handler per problem kind.

use num_traits::Signed;
use num_complex::Complex64;
use rolle_core::algebra::rational::{self, Rational};
use rolle_core::algebra::{MultiPoly, UniPoly};
use rolle_core::complex_counting::{
    bernstein_index, convex_rolle_check, jensen_zero_bound, pseudopoly_voorhoeve_bound, voorhoeve_index, CPGonPair,
    PseudoPolynomial,
};
use rolle_core::corpus::{coefficient_l1, FUCHS_EPS, FUCHS_SCAN_CELLS};
use rolle_core::curves::{
    buffon_estimate, hyperplane_rotation_bound, rolle_rn_check, shapiro_certificate, CurveSampler,
};
use rolle_core::fuchsian::{annihilator_check, euler_solve, roitman_zero_bound, EulerOperatorSpec, PseudomonomialSum};
use rolle_core::meandering::{chain_stabilize, meandering_bound_from_chain, tangency_order, PolyVectorField, DEFAULT_SLACK};
use rolle_core::multiplicity::{corank_threshold_multiplicity, local_algebra_multiplicity, preimage_count, MapGerm};
use rolle_core::ode::{complex_variation_bound, dlvp_zero_bound, kim_zero_bound};
use rolle_core::oracle::{
    count_disk_zeros, count_real_zeros, count_sign_changes, integrate_field_span, random_affine_hits, AnalyticSampler,
    Contour, NumericFn,
};
use rolle_core::oracle::field::integrate_ode;
use rolle_core::rolle::{fewnomial_positive_bound, positive_root_count_with_multiplicity, rolle_chain_check, Fewnomial};
use rolle_core::wronskian::{apply_poly_operator, polya_verify, riemann_operator};
use rolle_core::BoundCertificate;
use serde_json::Value;

use crate::error::CliError;
use crate::problem::{center_c64, Payload};
use crate::report::{to_value, Report};

pub struct Context {
    pub verify: bool,
    pub seed: u64,
}

type Outcome = Result<Report, CliError>;

pub fn run(kind: &str, p: &Payload, ctx: &Context) -> Outcome {
    let mut r = Report::new(kind, p.echo());
    match kind {
        "descartes" => descartes(p, ctx, &mut r)?,
        "dlvp" => dlvp(p, ctx, &mut r)?,
        "kim" => kim(p, ctx, &mut r)?,
        "argvar" => argvar(p, ctx, &mut r)?,
        "jensen" => jensen(p, ctx, &mut r)?,
        "bernstein" => bernstein(p, &mut r)?,
        "voorhoeve" => voorhoeve(p, &mut r)?,
        "pseudopoly" => pseudopoly(p, ctx, &mut r)?,
        "polya" => polya(p, &mut r)?,
        "chain" => chain(p, &mut r)?,
        "tangency" => tangency(p, &mut r)?,
        "meander" => meander(p, ctx, &mut r)?,
        "mult" => mult(p, ctx, &mut r)?,
        "fuchs" => fuchs(p, ctx, &mut r)?,
        "curve" => curve(p, ctx, &mut r)?,
        "verify" => verify(p, &mut r)?,
        other => return Err(CliError::field("kind", format!("unknown problem kind `{other}`"))),
    }
    Ok(r)
}

fn certificate(r: &mut Report, c: BoundCertificate) {
    r.certificate = Some(c);
}

fn display_multi(p: &MultiPoly) -> String {
    p.display_with(&rolle_core::algebra::multipoly::default_var_names(p.nvars()))
}

/// `terms`: `[{"exponent": 3, "coeff": "1"}, ...]`.
fn descartes(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let pairs = p
        .objects("terms")?
        .iter()
        .map(|t| Ok((t.integer("exponent")?, t.rational("coeff")?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let f = Fewnomial::new(pairs);
    r.result("terms", f.len());
    r.result("sign_changes", f.sign_changes());
    certificate(r, fewnomial_positive_bound(&f)?);
    if ctx.verify {
        let n = positive_root_count_with_multiplicity(&f)?;
        r.oracle_count = Some(n as u64);
        r.oracle = Some(serde_json::json!({ "method": "sturm", "positive_roots_with_multiplicity": n }));
    }
    Ok(())
}

/// Oracle solution for the real ODE bounds: a named function or a constant-coefficient equation.
fn real_solution_count(p: &Payload, bounds: &[Rational], length: f64) -> Result<(u64, Value), CliError> {
    let s = p.sub("solution")?;
    if let Some(name) = s.opt_string("named")? {
        let f = match name.as_str() {
            "sin" => NumericFn::sin(),
            "cos" => NumericFn::cos(),
            other => return Err(CliError::field("solution.named", format!("unknown function `{other}`"))),
        };
        let rep = count_real_zeros(&AnalyticSampler::Numeric(f), 0.0, length, 20_000)?;
        return Ok((rep.count as u64, to_value(&rep)));
    }
    let coeffs = s.rationals("coefficients")?;
    let initial = s.reals("initial")?;
    let n = bounds.len();
    if coeffs.len() != n || initial.len() != n {
        return Err(CliError::field("solution", format!("expected {n} coefficients and {n} initial values")));
    }
    if let Some(k) = coeffs.iter().zip(bounds).position(|(a, b)| a.abs() > *b) {
        return Err(CliError::field(
            format!("solution.coefficients[{k}]"),
            "exceeds the declared coefficient bound",
        ));
    }
    let a: Vec<f64> = coeffs.iter().map(rational::to_f64).collect();
    let rhs = |_: f64, y: &[f64]| {
        let mut dy: Vec<f64> = y[1..].to_vec();
        dy.push(-(1..=n).map(|k| a[k - 1] * y[n - k]).sum::<f64>());
        dy
    };
    let sol = integrate_ode(rhs, &initial, 0.0, length, 1e-11);
    let cells = (400.0 * length).ceil().max(1000.0) as usize;
    let rep = count_sign_changes(|t| sol.at(t)[0], 0.0, length, cells);
    Ok((rep.count as u64, to_value(&rep)))
}

fn dlvp(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let bounds = p.rationals("bounds")?;
    let length = p.length("length")?;
    let c = dlvp_zero_bound(&bounds, &length)?;
    if let Some(l) = c.get_quantity("admissible_length") {
        r.result("admissible_length", l.to_string());
        r.result("admissible_length_approx", rational::to_f64(&l));
    }
    certificate(r, c);
    if ctx.verify {
        let (n, rep) = real_solution_count(p, &bounds, rational::to_f64(&length))?;
        r.oracle_count = Some(n);
        r.oracle = Some(rep);
    }
    Ok(())
}

fn kim(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let bounds = p.rationals("bounds")?;
    let domain = p.domain("domain")?;
    certificate(r, kim_zero_bound(&bounds, &domain)?);
    if ctx.verify {
        let name = p.sub("solution")?.string("named")?;
        let f = match name.as_str() {
            "sin" => NumericFn::sin(),
            "cos" => NumericFn::cos(),
            other => return Err(CliError::field("solution.named", format!("unknown function `{other}`"))),
        };
        let (center, radius) =
            center_c64(&domain).ok_or_else(|| CliError::field("domain", "verification supports disks only"))?;
        let w = count_disk_zeros(&AnalyticSampler::Numeric(f), center, radius)?;
        r.oracle_count = Some(w.winding.max(0) as u64);
        r.oracle = Some(to_value(&w));
    }
    Ok(())
}

/// Bound in half-turns; the oracle samples `exp(i w t)`, a solution of `y' = i w y`.
fn argvar(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let bounds = p.rationals("bounds")?;
    let length = p.length("length")?;
    let c = complex_variation_bound(&bounds, &length)?;
    if let Some(b) = c.bound.finite() {
        r.result("variation_upper_radians", b as f64 * std::f64::consts::PI);
    }
    certificate(r, c);
    if ctx.verify {
        let s = p.sub("solution")?;
        let w = s.rational("frequency")?;
        if bounds.len() != 1 || w.abs() > bounds[0] {
            return Err(CliError::field("solution.frequency", "exceeds the declared first-order bound"));
        }
        let (w, l) = (rational::to_f64(&w), rational::to_f64(&length));
        let cells = 10_000;
        let mut total = 0.0;
        let mut prev = 0.0f64;
        for k in 1..=cells {
            let arg = Complex64::new(0.0, w * l * k as f64 / cells as f64).exp().arg();
            let mut d = arg - prev;
            if d > std::f64::consts::PI {
                d -= std::f64::consts::TAU;
            } else if d < -std::f64::consts::PI {
                d += std::f64::consts::TAU;
            }
            total += d.abs();
            prev = arg;
        }
        let half_turns = (total / std::f64::consts::PI - 1e-9).ceil().max(0.0) as u64;
        r.oracle_count = Some(half_turns);
        r.oracle = Some(serde_json::json!({ "variation_radians": total, "half_turns": half_turns }));
    }
    Ok(())
}

fn complex_poly(p: &Payload) -> Result<AnalyticSampler, CliError> {
    Ok(AnalyticSampler::ComplexPoly(p.complexes("coeffs")?))
}

fn jensen(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let coeffs = p.complexes("coeffs")?;
    let radius = p.rational("radius")?;
    let m = match p.opt_rational("boundary_max")? {
        Some(m) => m,
        None => coefficient_l1(&coeffs),
    };
    r.result("boundary_max", m.to_string());
    let f = AnalyticSampler::ComplexPoly(coeffs);
    certificate(r, jensen_zero_bound(&f, &radius, &m)?);
    if ctx.verify {
        let w = count_disk_zeros(&f, Complex64::new(0.0, 0.0), rational::to_f64(&radius))?;
        r.oracle_count = Some(w.winding.max(0) as u64);
        r.oracle = Some(to_value(&w));
    }
    Ok(())
}

fn bernstein(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let f = complex_poly(p)?;
    let pair = CPGonPair::disks(p.real("inner_radius")?, p.real("outer_radius")?)?;
    r.result("gap", pair.gap);
    r.result("index", bernstein_index(&f, &pair)?);
    Ok(())
}

fn voorhoeve(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let f = complex_poly(p)?;
    let center = if p.has("center") { p.complex("center")?.to_c64() } else { Complex64::new(0.0, 0.0) };
    let contour = Contour::circle(center, p.real("radius")?);
    r.result("index", voorhoeve_index(&f, &contour)?);
    let c = convex_rolle_check(&f, &contour, 1e-6)?;
    r.check("convex_rolle", c.holds);
    r.result("convex_rolle", c);
    Ok(())
}

fn pseudopoly(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let terms = p
        .objects("terms")?
        .iter()
        .map(|t| Ok((t.complex("lambda")?, t.complexes("coeffs")?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let f = PseudoPolynomial::new(terms)?;
    let domain = p.domain("domain")?;
    r.result("degree", f.degree());
    certificate(r, pseudopoly_voorhoeve_bound(&f, &domain)?);
    if ctx.verify {
        let (center, radius) =
            center_c64(&domain).ok_or_else(|| CliError::field("domain", "verification supports disks only"))?;
        let w = count_disk_zeros(&AnalyticSampler::Pseudo(f), center, radius)?;
        r.oracle_count = Some(w.winding.max(0) as u64);
        r.oracle = Some(to_value(&w));
    }
    Ok(())
}

fn polya(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let fs = p.unipolys("tuple")?;
    let v = polya_verify(&fs)?;
    r.check("polya_annihilates", v.all());
    let m = riemann_operator(&fs)?;
    r.check("riemann_annihilates", fs.iter().all(|f| apply_poly_operator(&m, f).is_zero()));
    r.result("wronskians", v.wronskians.iter().map(ToString::to_string).collect::<Vec<_>>());
    r.result("riemann_operator", m.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}

fn chain(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let f: UniPoly = p.unipoly("poly")?;
    let iv = p.rationals("interval")?;
    if iv.len() != 2 {
        return Err(CliError::field("interval", "expected two endpoints"));
    }
    let rep = rolle_chain_check(&f, &iv[0], &iv[1])?;
    r.check("rolle_chain", rep.all_ok());
    r.result("rows", rep.rows);
    Ok(())
}

fn field_and_point(p: &Payload) -> Result<(PolyVectorField, Vec<Rational>), CliError> {
    let comps = p.strings("field")?;
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    let v = PolyVectorField::parse(&refs).map_err(|e| CliError::field("field", e.to_string()))?;
    let q = p.rationals("point")?;
    if q.len() != v.dim() {
        return Err(CliError::field("point", format!("expected {} coordinates", v.dim())));
    }
    Ok((v, q))
}

fn var_names(n: usize) -> Vec<String> {
    rolle_core::algebra::multipoly::default_var_names(n)
}

fn tangency(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let (v, q) = field_and_point(p)?;
    let names = var_names(v.dim());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let f = p.multipoly("function", &refs)?;
    let cap = p.opt_natural("cap", 16)? as usize;
    r.result("tangency_order", tangency_order(&v, &f, &q, cap)?);
    Ok(())
}

fn meander(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let (v, q) = field_and_point(p)?;
    let names = var_names(v.dim());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let u0 = p.multipoly("hyperplane", &refs)?;
    if u0.degree().unwrap_or(0) > 1 {
        return Err(CliError::field("hyperplane", "must be affine"));
    }
    let delta = p.rational("delta")?;
    let cap = p.opt_natural("cap", 12)? as usize;
    let chain = chain_stabilize(&u0, &v, cap, DEFAULT_SLACK)?;
    r.check("chain_certificate", chain.verify(&v));
    r.result("nu", chain.nu);
    r.result("chain", chain.chain.iter().map(display_multi).collect::<Vec<_>>());
    r.result("cofactors", chain.cofactors.iter().map(display_multi).collect::<Vec<_>>());
    certificate(r, meandering_bound_from_chain(&v, &chain, &q, &delta)?);
    if ctx.verify {
        let d = rational::to_f64(&delta);
        let traj = integrate_field_span(&v, &q, -d, d, 1e-11)?;
        let rep = count_sign_changes(|t| u0.eval_f64(&traj.at(t)), -d, d, 8000);
        r.oracle_count = Some(rep.count as u64);
        r.oracle = Some(to_value(&rep));
    }
    Ok(())
}

fn mult(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let comps = p.strings("germ")?;
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    let germ = MapGerm::parse(&refs).map_err(|e| CliError::field("germ", e.to_string()))?;
    let cap = p.opt_natural("cap", 12)? as u32;
    let dual = local_algebra_multiplicity(&germ, cap)?;
    let corank = corank_threshold_multiplicity(&germ, cap)?;
    r.check("methods_agree", dual.multiplicity == corank.multiplicity);
    r.result("multiplicity", dual.multiplicity);
    r.result("local_algebra", &dual);
    r.result("corank_threshold", &corank);
    if ctx.verify {
        let eps = p.rationals("epsilon")?;
        let rho = p.real("radius")?;
        let n = preimage_count(&germ, &eps, rho)?;
        r.check("preimages_match", n == dual.multiplicity);
        r.oracle = Some(serde_json::json!({ "preimages": n }));
    }
    Ok(())
}

/// `solution`: `[{"lambda", "log_power", "coeff"}, ...]`.
fn fuchs(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let spec = EulerOperatorSpec::new(p.rationals("coeffs")?)?;
    let spectrum = euler_solve(&spec)?;
    r.result("spectrum", &spectrum);
    certificate(r, roitman_zero_bound(&spec)?);
    if ctx.verify {
        let terms = p
            .objects("solution")?
            .iter()
            .map(|t| Ok((t.rational("lambda")?, t.natural("log_power")? as usize, t.rational("coeff")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let f = PseudomonomialSum::from_real(&terms);
        let v = annihilator_check(&spectrum.exact_pairs(), &f);
        if !v.in_space {
            return Err(CliError::field("solution", "not in the solution space of the operator"));
        }
        r.check("petrov_annihilates", v.annihilated());
        let rep = count_sign_changes(|z| f.eval_z(Complex64::new(z, 0.0)).re, FUCHS_EPS.ln(), 0.0, FUCHS_SCAN_CELLS);
        r.oracle_count = Some(rep.count as u64);
        r.oracle = Some(to_value(&rep));
    }
    Ok(())
}

fn curve_sampler(c: &Payload, seed: u64) -> Result<CurveSampler, CliError> {
    let kind = c.string("type")?;
    let out = match kind.as_str() {
        "circle" => CurveSampler::circle(c.real("radius")?),
        "ellipse" => CurveSampler::ellipse(c.real("a")?, c.real("b")?),
        "helix" => CurveSampler::helix(c.real("pitch")?, c.real("t0")?, c.real("t1")?)?,
        "segment" => CurveSampler::segment(&c.reals("from")?, &c.reals("to")?)?,
        "random_trig" => CurveSampler::random_trig(
            c.natural("dimension")? as usize,
            c.natural("degree")? as usize,
            seed,
            c.opt_natural("index", 0)?,
        ),
        other => return Err(CliError::field("curve.type", format!("unknown curve `{other}`"))),
    };
    Ok(out)
}

fn curve(p: &Payload, ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    let c = curve_sampler(&p.sub("curve")?, ctx.seed)?;
    match rolle_rn_check(&c) {
        Ok(rot) => {
            r.check("rolle_in_space", rot.holds);
            r.result("rotation", rot);
        }
        Err(e) => r.result("rotation_skipped", e.to_string()),
    }
    match shapiro_certificate(&c) {
        Ok(s) => r.result("shapiro", s),
        Err(e) => r.result("shapiro_skipped", e.to_string()),
    }
    certificate(r, hyperplane_rotation_bound(&c)?);
    if ctx.verify {
        let samples = p.opt_natural("samples", 1000)? as usize;
        let hits = random_affine_hits(&c, samples, ctx.seed);
        r.oracle_count = Some(hits.max as u64);
        r.oracle = Some(serde_json::json!({
            "samples": samples,
            "max_hits": hits.max,
            "mean_hits": hits.mean,
        }));
        if c.dim() >= 2 {
            r.result("buffon", buffon_estimate(&c, samples, ctx.seed));
        }
    }
    Ok(())
}

/// Re-validates an emitted report: hypothesis comparisons and the bound against the recorded oracle count.
fn verify(p: &Payload, r: &mut Report) -> Result<(), CliError> {
    let report = p.sub("report")?;
    let cert: BoundCertificate = serde_json::from_value(report.sub("certificate")?.echo())
        .map_err(|e| CliError::field("report.certificate", e.to_string()))?;
    r.check("hypotheses_revalidate", cert.revalidate());
    r.result("method", &cert.method);
    if report.has("oracle_count") {
        r.oracle_count = Some(report.natural("oracle_count")?);
    }
    if let Some(checks) = report.has("checks").then(|| report.sub("checks")).transpose()? {
        for (k, v) in checks.echo().as_object().into_iter().flatten() {
            r.check(&format!("recorded.{k}"), v.as_bool().unwrap_or(false));
        }
    }
    r.certificate = Some(cert);
    Ok(())
}
