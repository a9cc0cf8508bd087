//! ODE integration: fixed-step one-step schemes and an embedded
//! Dormand-Prince 5(4) pair with step control and dense output.
//!
//! Fixed-step schemes follow the one-step form `y_{k+1} = y_k + h f_h(t_k, y_k)`;
//! the Heun increment is `f_h(t, y) = ½ (f(t, y) + f(t + h, y + h f(t, y)))`,
//! which keeps the per-step defect of the exact flow at `O(h)` uniformly.

use crate::error::{Error, Result};
use crate::model::Trajectory;

/// One-step integration scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Euler,
    Heun,
    Rk4,
}

fn check_finite(x: &[f64]) -> bool {
    x.iter().all(|v| v.is_finite())
}

/// Integrates `ẋ = vf(t, x)` on `[t0, t1]` with a uniform mesh of `steps`
/// intervals. Returns a trajectory with `steps + 1` nodes (controls empty).
pub fn integrate_fixed<F>(
    mut vf: F,
    t0: f64,
    x0: &[f64],
    t1: f64,
    steps: usize,
    scheme: Scheme,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(t1 > t0) {
        return Err(Error::BadInterval { t0, t1 });
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let n = x0.len();
    let h = (t1 - t0) / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(x0.to_vec());

    let mut x = x0.to_vec();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    for k in 0..steps {
        let t = t0 + k as f64 * h;
        match scheme {
            Scheme::Euler => {
                vf(t, &x, &mut k1);
                for i in 0..n {
                    x[i] += h * k1[i];
                }
            }
            Scheme::Heun => {
                vf(t, &x, &mut k1);
                for i in 0..n {
                    tmp[i] = x[i] + h * k1[i];
                }
                vf(t + h, &tmp, &mut k2);
                for i in 0..n {
                    x[i] += 0.5 * h * (k1[i] + k2[i]);
                }
            }
            Scheme::Rk4 => {
                vf(t, &x, &mut k1);
                for i in 0..n {
                    tmp[i] = x[i] + 0.5 * h * k1[i];
                }
                vf(t + 0.5 * h, &tmp, &mut k2);
                for i in 0..n {
                    tmp[i] = x[i] + 0.5 * h * k2[i];
                }
                vf(t + 0.5 * h, &tmp, &mut k3);
                for i in 0..n {
                    tmp[i] = x[i] + h * k3[i];
                }
                vf(t + h, &tmp, &mut k4);
                for i in 0..n {
                    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
        }
        if !check_finite(&x) {
            return Err(Error::Diverged { last_valid: k });
        }
        times.push(t0 + (k + 1) as f64 * h);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states, controls: Vec::new(), running_cost_integral: 0.0 })
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Adaptive solution with accepted nodes, slopes, and cubic Hermite
/// evaluation between them.
pub struct DenseSolution {
    pub trajectory: Trajectory,
    derivs: Vec<Vec<f64>>,
}

impl DenseSolution {
    /// Hermite interpolation of the state at `t` (clamped to the span).
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let times = &self.trajectory.times;
        let states = &self.trajectory.states;
        let forward = *times.last().unwrap() >= times[0];
        let m = times.len();
        if m == 1 {
            return states[0].clone();
        }
        // Bracketing interval (mesh may run backward in time).
        let mut k = 0;
        while k + 2 < m {
            let next = times[k + 1];
            let passed = if forward { t >= next } else { t <= next };
            if passed {
                k += 1;
            } else {
                break;
            }
        }
        let (t0, t1) = (times[k], times[k + 1]);
        let h = t1 - t0;
        if h == 0.0 {
            return states[k].clone();
        }
        let s = ((t - t0) / h).clamp(0.0, 1.0);
        let (x0, x1) = (&states[k], &states[k + 1]);
        let (d0, d1) = (&self.derivs[k], &self.derivs[k + 1]);
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        (0..x0.len())
            .map(|i| h00 * x0[i] + h10 * h * d0[i] + h01 * x1[i] + h11 * h * d1[i])
            .collect()
    }
}

/// Integrates `ẋ = vf(t, x)` with the embedded 5(4) pair; `t1 < t0` runs
/// the integration backward. `t1 == t0` returns the single-node trajectory.
pub fn integrate_adaptive<F>(
    mut vf: F,
    t0: f64,
    x0: &[f64],
    t1: f64,
    rtol: f64,
    atol: f64,
) -> Result<DenseSolution>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(rtol > 0.0 && atol > 0.0) {
        return Err(Error::InvalidArgument("rtol and atol must be positive".into()));
    }
    let n = x0.len();
    let span = t1 - t0;
    let mut times = vec![t0];
    let mut states = vec![x0.to_vec()];
    let mut f0 = vec![0.0; n];
    vf(t0, x0, &mut f0);
    if !check_finite(&f0) {
        return Err(Error::Diverged { last_valid: 0 });
    }
    let mut derivs = vec![f0.clone()];
    if span == 0.0 {
        return Ok(DenseSolution {
            trajectory: Trajectory { times, states, controls: Vec::new(), running_cost_integral: 0.0 },
            derivs,
        });
    }

    let dir = span.signum();
    let h_min = 1e-14 * span.abs();
    let mut h = (0.01 * span.abs()).min(span.abs()) * dir;
    let mut t = t0;
    let mut x = x0.to_vec();
    let mut k_stages: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    k_stages[0] = f0;
    let mut tmp = vec![0.0; n];
    let max_steps = 1_000_000usize;

    for _ in 0..max_steps {
        let remaining = t1 - t;
        if remaining == 0.0 || remaining.signum() != dir {
            break;
        }
        if h.abs() > remaining.abs() {
            h = remaining;
        }
        // Stages 1..6 (stage 0 holds f(t, x), FSAL from the previous step).
        for s in 1..7 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, ks) in k_stages.iter().enumerate().take(s) {
                    acc += A[s][j] * ks[i];
                }
                tmp[i] = x[i] + h * acc;
            }
            let ts = t + C[s] * h;
            let (head, tail) = k_stages.split_at_mut(s);
            let _ = head;
            vf(ts, &tmp, &mut tail[0]);
        }
        if k_stages.iter().any(|k| !check_finite(k)) {
            return Err(Error::Diverged { last_valid: times.len() - 1 });
        }
        // 5th order solution and embedded error.
        let mut x5 = vec![0.0; n];
        let mut err = 0.0f64;
        for i in 0..n {
            let mut s5 = 0.0;
            let mut s4 = 0.0;
            for s in 0..7 {
                s5 += B5[s] * k_stages[s][i];
                s4 += B4[s] * k_stages[s][i];
            }
            x5[i] = x[i] + h * s5;
            let sc = atol + rtol * x[i].abs().max(x5[i].abs());
            let e = h * (s5 - s4) / sc;
            err += e * e;
        }
        let err = (err / n as f64).sqrt();

        if err <= 1.0 {
            // Accept; stage 6 is f(t + h, x5) (FSAL).
            t += h;
            x = x5;
            if !check_finite(&x) {
                return Err(Error::Diverged { last_valid: times.len() - 1 });
            }
            times.push(t);
            states.push(x.clone());
            derivs.push(k_stages[6].clone());
            k_stages[0] = k_stages[6].clone();
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < h_min {
            return Err(Error::StepUnderflow { t });
        }
        if err > 1.0 {
            // Rejected: recompute stage 0 at the unchanged (t, x).
            vf(t, &x, &mut k_stages[0]);
        }
    }

    Ok(DenseSolution {
        trajectory: Trajectory { times, states, controls: Vec::new(), running_cost_integral: 0.0 },
        derivs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_field_is_constant_for_every_scheme() {
        for scheme in [Scheme::Euler, Scheme::Heun, Scheme::Rk4] {
            let traj = integrate_fixed(|_, _, out| out[0] = 0.0, 0.0, &[5.0], 1.0, 7, scheme).unwrap();
            assert!(traj.states.iter().all(|x| x[0] == 5.0));
            assert_eq!(traj.times.len(), 8);
        }
    }

    #[test]
    fn unit_field_euler_is_exact() {
        let traj = integrate_fixed(|_, _, out| out[0] = 1.0, 0.0, &[0.0], 1.0, 10, Scheme::Euler).unwrap();
        assert_relative_eq!(traj.final_state()[0], 1.0, max_relative = 1e-15);
    }

    #[test]
    fn exponential_rk4_matches_closed_form() {
        let traj =
            integrate_fixed(|_, x, out| out[0] = x[0], 0.0, &[1.0], 1.0, 100, Scheme::Rk4).unwrap();
        assert!((traj.final_state()[0] - 2.718282).abs() < 1e-6);
    }

    fn error_at_one(scheme: Scheme, steps: usize) -> f64 {
        let traj = integrate_fixed(|_, x, out| out[0] = x[0], 0.0, &[1.0], 1.0, steps, scheme).unwrap();
        (traj.final_state()[0] - 1f64.exp()).abs()
    }

    #[test]
    fn observed_orders_match_theory_within_factor_1_5() {
        for (scheme, order) in [(Scheme::Euler, 1.0), (Scheme::Heun, 2.0), (Scheme::Rk4, 4.0)] {
            for (n0, n1) in [(50, 100), (100, 200)] {
                let ratio = error_at_one(scheme, n0) / error_at_one(scheme, n1);
                let observed = ratio.log2();
                assert!(
                    observed > order / 1.5 && observed < order * 1.5,
                    "{scheme:?}: observed order {observed}, expected {order}"
                );
            }
        }
    }

    #[test]
    fn adaptive_exponential_hits_tolerance() {
        let sol = integrate_adaptive(|_, x, out| out[0] = x[0], 0.0, &[1.0], 1.0, 1e-10, 1e-12).unwrap();
        assert!((sol.trajectory.final_state()[0] - 2.7182818284).abs() < 1e-8);
    }

    #[test]
    fn adaptive_riccati_matches_closed_form() {
        // x' = -x^2, x(0) = 1 has x(t) = 1/(1+t).
        let sol =
            integrate_adaptive(|_, x, out| out[0] = -x[0] * x[0], 0.0, &[1.0], 1.0, 1e-10, 1e-12).unwrap();
        assert!((sol.trajectory.final_state()[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn adaptive_degenerate_interval_returns_single_node() {
        let sol = integrate_adaptive(|_, x, out| out[0] = x[0], 2.0, &[3.0], 2.0, 1e-8, 1e-10).unwrap();
        assert_eq!(sol.trajectory.times, vec![2.0]);
        assert_eq!(sol.trajectory.states, vec![vec![3.0]]);
    }

    #[test]
    fn adaptive_backward_integration_runs() {
        // Integrate x' = x backward from t=1 to t=0 starting at e: should hit 1.
        let sol = integrate_adaptive(|_, x, out| out[0] = x[0], 1.0, &[1f64.exp()], 0.0, 1e-10, 1e-12)
            .unwrap();
        assert!((sol.trajectory.final_state()[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn dense_output_interpolates_between_nodes() {
        let sol = integrate_adaptive(|_, x, out| out[0] = x[0], 0.0, &[1.0], 1.0, 1e-10, 1e-12).unwrap();
        for &t in &[0.1, 0.25, 0.5, 0.77, 0.93] {
            assert!((sol.eval(t)[0] - t.exp()).abs() < 1e-7, "t = {t}");
        }
    }

    #[test]
    fn diverging_field_reports_last_valid_node() {
        // Finite-time blow-up: x' = x^2, x(0)=1 blows up at t=1.
        let res = integrate_adaptive(|_, x, out| out[0] = x[0] * x[0], 0.0, &[1.0], 2.0, 1e-8, 1e-10);
        match res {
            Err(Error::Diverged { .. }) | Err(Error::StepUnderflow { .. }) => {}
            other => panic!("expected divergence, got {other:?}", other = other.map(|s| s.trajectory.times.len())),
        }
    }

    #[test]
    fn gronwall_bound_holds_for_linear_growth() {
        // |f| <= 1 + |x| with c_f = 1.
        let traj = integrate_fixed(|_, x, out| out[0] = 1.0 + x[0], 0.0, &[0.5], 2.0, 200, Scheme::Rk4)
            .unwrap();
        assert!(traj.satisfies_gronwall(1.0, 1.05));
    }
}
