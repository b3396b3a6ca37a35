//! Numerical integration of ODEs with a certified a-priori enclosure.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::interval::{Interval, IntervalBox};
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::meandering::PolyVectorField;

/// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Accepted steps of an adaptive Runge-Kutta run; `derivs[k]` is `f(times[k], states[k])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseSolution {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub derivs: Vec<Vec<f64>>,
}

impl DenseSolution {
    /// Cubic Hermite interpolation between accepted steps.
    pub fn at(&self, t: f64) -> Vec<f64> {
        let n = self.times.len();
        let increasing = self.times[n - 1] >= self.times[0];
        let pos = |x: f64| if increasing { x } else { -x };
        let k = match self
            .times
            .binary_search_by(|x| pos(*x).total_cmp(&pos(t)))
        {
            Ok(k) => return self.states[k].clone(),
            Err(k) => k.clamp(1, n - 1),
        };
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (h00, h10, h01, h11) = (
            2.0 * s * s * s - 3.0 * s * s + 1.0,
            s * s * s - 2.0 * s * s + s,
            -2.0 * s * s * s + 3.0 * s * s,
            s * s * s - s * s,
        );
        (0..self.states[0].len())
            .map(|i| {
                h00 * self.states[k - 1][i]
                    + h10 * h * self.derivs[k - 1][i]
                    + h01 * self.states[k][i]
                    + h11 * h * self.derivs[k][i]
            })
            .collect()
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().expect("nonempty solution")
    }
}

/// Adaptive Dormand-Prince integration of `y' = f(t, y)` from `t0` to `t1` (either direction).
pub fn integrate_ode(
    f: impl Fn(f64, &[f64]) -> Vec<f64>,
    y0: &[f64],
    t0: f64,
    t1: f64,
    tol: f64,
) -> DenseSolution {
    let dim = y0.len();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut fy = f(t, &y);
    let mut out = DenseSolution {
        times: vec![t],
        states: vec![y.clone()],
        derivs: vec![fy.clone()],
    };
    if span == 0.0 {
        return out;
    }
    let mut h = (span / 100.0).min(0.1).max(1e-6 * span);
    let mut guard = 0usize;
    while (t1 - t) * dir > 1e-14 * span.max(1.0) && guard < 2_000_000 {
        guard += 1;
        h = h.min((t1 - t).abs());
        let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
        k.push(fy.clone());
        for s in 1..7 {
            let yi: Vec<f64> = (0..dim)
                .map(|i| y[i] + dir * h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>())
                .collect();
            k.push(f(t + dir * C[s] * h, &yi));
        }
        let y5: Vec<f64> = (0..dim)
            .map(|i| y[i] + dir * h * (0..7).map(|j| B5[j] * k[j][i]).sum::<f64>())
            .collect();
        let err = (0..dim)
            .map(|i| {
                let e = dir * h * (0..7).map(|j| (B5[j] - B4[j]) * k[j][i]).sum::<f64>();
                let sc = tol * (1.0 + y[i].abs().max(y5[i].abs()));
                (e / sc).abs()
            })
            .fold(0.0f64, f64::max);
        if err <= 1.0 || h <= 1e-12 * span {
            t += dir * h;
            y = y5;
            fy = k[6].clone();
            out.times.push(t);
            out.states.push(y.clone());
            out.derivs.push(fy.clone());
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    if let Some(last) = out.times.last_mut() {
        *last = t1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// Certified to contain the exact trajectory over the whole span.
    pub enclosure: IntervalBox,
    #[serde(skip)]
    dense: Option<DenseSolution>,
}

impl Trajectory {
    pub fn endpoint(&self) -> &[f64] {
        self.states.last().expect("nonempty trajectory")
    }

    pub fn at(&self, t: f64) -> Vec<f64> {
        self.dense.as_ref().expect("dense output").at(t)
    }
}

/// Largest single-step length tried before subdividing.
const PICARD_STEP: (i64, i64) = (1, 16);
const PICARD_MAX_DEPTH: u32 = 16;
const PICARD_MAX_WIDTH: f64 = 1e12;
const ROUND_BITS: u32 = 40;

/// One Picard step from the box `start` over time `h`: returns `X` with
/// `start + [-r, r]` and `sup_X |v_i| * h <= r_i`, which contains every trajectory.
fn picard_step(v: &PolyVectorField, start: &IntervalBox, h: &Rational) -> Result<Option<IntervalBox>> {
    let n = start.dim();
    let mags = |b: &IntervalBox| -> Result<Vec<Rational>> {
        v.components()
            .iter()
            .map(|c| c.interval_eval(b).map(|iv| iv.mag()))
            .collect()
    };
    let eps = Rational::new(1.into(), num_bigint::BigInt::from(1u64) << 30);
    let mut r: Vec<Rational> = mags(start)?
        .into_iter()
        .map(|m| m * h * rational::ratio(9, 8) + &eps)
        .collect();
    for _ in 0..40 {
        let x = IntervalBox::new((0..n).map(|i| start[i].inflate(&r[i]).round_out(ROUND_BITS)).collect());
        let m = mags(&x)?;
        let need: Vec<Rational> = m.iter().map(|mi| mi * h).collect();
        if need.iter().zip(&r).all(|(a, b)| a <= b) {
            return Ok(Some(x));
        }
        if rational::to_f64(&x.max_width()) > PICARD_MAX_WIDTH {
            return Ok(None);
        }
        for i in 0..n {
            if need[i] > r[i] {
                r[i] = &need[i] * rational::ratio(5, 4);
            }
        }
    }
    Ok(None)
}

fn picard_cover(v: &PolyVectorField, start: &IntervalBox, h: &Rational, depth: u32) -> Result<(IntervalBox, IntervalBox)> {
    if let Some(x) = picard_step(v, start, h)? {
        return Ok((x.clone(), x));
    }
    if depth >= PICARD_MAX_DEPTH {
        return Err(Error::SpanTooLarge);
    }
    let half = h / rational::int(2);
    let (hull1, end1) = picard_cover(v, start, &half, depth + 1)?;
    let (hull2, end2) = picard_cover(v, &end1, &half, depth + 1)?;
    Ok((hull1.hull(&hull2), end2))
}

/// Box containing the exact solution from `q` over `|t| <= span` in one direction.
/// Built as the hull of a chain of short Picard steps; the field is autonomous so
/// the backward direction uses `-v` implicitly through `|v|`.
pub fn picard_enclosure(v: &PolyVectorField, q: &[Rational], span: &Rational) -> Result<IntervalBox> {
    if q.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: q.len(),
        });
    }
    let mut state = IntervalBox::new(q.iter().map(|x| Interval::point(x.clone())).collect());
    let mut hull = state.clone();
    if span.is_zero() {
        return Ok(hull);
    }
    let max_step = rational::ratio(PICARD_STEP.0, PICARD_STEP.1);
    let steps = rational::ceil_u64(&(span / &max_step)).max(1);
    let h = span / Rational::from_integer(steps.into());
    for _ in 0..steps {
        let (x, end) = picard_cover(v, &state, &h, 0)?;
        hull = hull.hull(&x);
        state = end;
        if rational::to_f64(&hull.max_width()) > PICARD_MAX_WIDTH {
            return Err(Error::SpanTooLarge);
        }
    }
    Ok(hull)
}

/// Integrates `x' = v(x)` from `q` over `[t0, t1]` (`t0 <= 0 <= t1`, time 0 at `q`).
pub fn integrate_field_span(v: &PolyVectorField, q: &[Rational], t0: f64, t1: f64, tol: f64) -> Result<Trajectory> {
    if !(t0 <= 0.0 && 0.0 <= t1) || t0 == t1 {
        return Err(Error::InvalidInterval(format!("[{t0}, {t1}] must contain 0")));
    }
    let fwd = picard_enclosure(v, q, &rational::from_f64(t1))?;
    let bwd = picard_enclosure(v, q, &rational::from_f64(-t0))?;
    let enclosure = fwd.hull(&bwd);
    let q64: Vec<f64> = q.iter().map(rational::to_f64).collect();
    let rhs = |_: f64, x: &[f64]| v.eval_f64(x);
    let back = integrate_ode(rhs, &q64, 0.0, t0, tol);
    let forw = integrate_ode(rhs, &q64, 0.0, t1, tol);
    let mut dense = DenseSolution {
        times: Vec::new(),
        states: Vec::new(),
        derivs: Vec::new(),
    };
    let nb = back.times.len();
    for k in (1..nb).rev() {
        dense.times.push(back.times[k]);
        dense.states.push(back.states[k].clone());
        dense.derivs.push(back.derivs[k].clone());
    }
    dense.times.extend(forw.times.iter().copied());
    dense.states.extend(forw.states.iter().cloned());
    dense.derivs.extend(forw.derivs.iter().cloned());
    if t0 == 0.0 {
        // keep the grid strictly increasing when the backward run is empty
        dense.times.dedup();
    }
    Ok(Trajectory {
        times: dense.times.clone(),
        states: dense.states.clone(),
        enclosure,
        dense: Some(dense),
    })
}

/// Integrates from `q` for time `span` (negative runs backward).
pub fn integrate_field(v: &PolyVectorField, q: &[Rational], span: f64, tol: f64) -> Result<Trajectory> {
    let traj = if span >= 0.0 {
        integrate_field_span(v, q, 0.0, span, tol)?
    } else {
        integrate_field_span(v, q, span, 0.0, tol)?
    };
    if span < 0.0 {
        // report the run in the direction of travel, ending at the far point
        let mut t = traj.clone();
        t.times.reverse();
        t.states.reverse();
        return Ok(t);
    }
    Ok(traj)
}

/// Convenience: the rational point with all coordinates given as integers.
pub fn int_point(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rational::int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiPoly;
    use std::f64::consts::FRAC_PI_2;

    fn field(cs: &[&str]) -> PolyVectorField {
        PolyVectorField::new(cs.iter().map(|c| MultiPoly::parse(c, &["x", "y"]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rotation_quarter_turn() {
        let v = field(&["y", "-x"]);
        let tr = integrate_field(&v, &int_point(&[1, 0]), -FRAC_PI_2, 1e-10).unwrap();
        let e = tr.endpoint();
        assert!((e[0]).abs() < 1e-7 && (e[1] - 1.0).abs() < 1e-7, "{e:?}");
        let fwd = integrate_field(&v, &int_point(&[1, 0]), FRAC_PI_2, 1e-10).unwrap();
        assert!((fwd.endpoint()[1] + 1.0).abs() < 1e-7);
        assert!(fwd.states.iter().all(|s| fwd.enclosure.contains_f64(s)));
    }

    #[test]
    fn shear_closed_form() {
        let v = field(&["1", "x"]);
        let tr = integrate_field(&v, &int_point(&[0, 0]), 1.0, 1e-10).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!((s[0] - t).abs() < 1e-8 && (s[1] - t * t / 2.0).abs() < 1e-8);
        }
        let mid = tr.at(0.5);
        assert!((mid[1] - 0.125).abs() < 1e-6);
    }

    #[test]
    fn blow_up_does_not_close() {
        let v = PolyVectorField::new(vec![MultiPoly::parse("x^2", &["x"]).unwrap()]).unwrap();
        assert_eq!(
            integrate_field(&v, &int_point(&[1]), 2.0, 1e-8).err(),
            Some(Error::SpanTooLarge)
        );
    }
}
