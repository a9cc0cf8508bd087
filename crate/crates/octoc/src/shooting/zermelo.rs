//! Shooting for the navigation benchmark: minimum time to a point target
//! with an optional interior log-barrier penalization of the elliptic
//! obstacle, and the long-horizon midpoint variant for a distant target.

use crate::error::{Error, Result};
use crate::model::Trajectory;
use crate::problems::{mintime_drift, mintime_obstacle_excess};
use crate::shooting::{
    flow_dense, newton_solve, ControlLawKind, HamiltonianLift, NewtonOptions, PhaseFn,
};

const V_MAX: f64 = 1.0;

/// Maximized normal Hamiltonian
/// `H(y, p) = V_max √(p1² + p2²) + p1 h(y2) + α ln(e(y)) − 1`,
/// where `e` is the ellipse excess of the obstacle; the barrier term is
/// present only when the obstacle is penalized (`alpha > 0`). The feedback
/// achieving the max is `u = p / ‖p‖` scaled by `V_max`.
pub fn zermelo_penalized_hamiltonian(alpha: f64, obstacle: bool) -> PhaseFn {
    PhaseFn::new(move |y: &[f64], p: &[f64]| {
        let mut h = V_MAX * (p[0] * p[0] + p[1] * p[1]).sqrt() + p[0] * mintime_drift(y[1]) - 1.0;
        if obstacle {
            h += alpha * mintime_obstacle_excess(y).ln();
        }
        h
    })
}

/// Converged penalized shot.
#[derive(Clone, Debug)]
pub struct ZermeloShot {
    pub p0: Vec<f64>,
    pub tf: f64,
    pub trajectory: Trajectory,
    pub costates: Vec<Vec<f64>>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Minimum-time shooting from `(0, 0)` to the target point `(20, 1)`.
/// Unknowns are `(p0 ∈ ℝ², t_f)`; residual rows are `y(t_f) − y_f` and the
/// free-final-time condition `H(y_0, p_0) = 0`.
///
/// With `obstacle = true` the log barrier with weight `alpha` is added to
/// the cost; a guess whose flow crosses the obstacle makes the barrier
/// evaluate on a nonpositive argument and is rejected.
pub fn shoot_zermelo_penalized(
    p0_guess: &[f64],
    tf_guess: f64,
    alpha: f64,
    obstacle: bool,
) -> Result<ZermeloShot> {
    if obstacle && !(alpha > 0.0) {
        return Err(Error::InvalidArgument("barrier weight alpha must be positive".into()));
    }
    let y0 = [0.0, 0.0];
    let yf = [20.0, 1.0];
    if obstacle && mintime_obstacle_excess(&y0) <= 0.0 {
        return Err(Error::GuessCrossesObstacle);
    }
    let lift = HamiltonianLift::new(zermelo_penalized_hamiltonian(alpha, obstacle), ControlLawKind::Regular);

    let residual = |z: &[f64]| -> Result<Vec<f64>> {
        let p0 = &z[..2];
        let tf = z[2];
        if !(tf > 0.0) {
            return Err(Error::InvalidArgument("nonpositive final time".into()));
        }
        let sol = flow_dense(&lift, 0.0, &y0, p0, tf, 1e-10).map_err(|e| match e {
            Error::Diverged { .. } | Error::StepUnderflow { .. } if obstacle => {
                Error::GuessCrossesObstacle
            }
            other => other,
        })?;
        let zf = sol.trajectory.final_state();
        let h0 = lift.eval(&y0, p0);
        if !h0.is_finite() {
            return Err(Error::GuessCrossesObstacle);
        }
        Ok(vec![zf[0] - yf[0], zf[1] - yf[1], h0])
    };

    let mut z0 = p0_guess.to_vec();
    z0.push(tf_guess);
    let res = newton_solve(residual, &z0, NewtonOptions { tol: 1e-9, max_iter: 40, ..Default::default() })?;

    let p0 = res.z[..2].to_vec();
    let tf = res.z[2];
    let sol = flow_dense(&lift, 0.0, &y0, &p0, tf, 1e-10)?;
    let (trajectory, costates) = resample_with_heading(&sol, 400);
    Ok(ZermeloShot {
        p0,
        tf,
        trajectory,
        costates,
        residual_norm: res.residual_norm,
        iterations: res.iterations,
    })
}

/// Long-horizon shot for the distant target `(200, 1)`.
#[derive(Clone, Debug)]
pub struct ZermeloTurnpikeShot {
    pub midpoint_state: Vec<f64>,
    pub midpoint_costate: Vec<f64>,
    pub tf: f64,
    pub trajectory: Trajectory,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Midpoint shooting for the distant target `y_f = (200, 1)` without
/// obstacle: unknowns `(y(T/2), p(T/2), t_f) ∈ ℝ⁵`, residual rows
/// `y(0) − y_0`, `(y(t_f) − y_f)/y_f` componentwise, and `H_r` at the
/// midpoint. Initialization exploits the long-horizon structure:
/// `p ≈ (1/(1 + h(1/2)), 0)` and `t_f ≈ (y_{1,f} − y_{1,0})/(1 + h(1/2))`.
pub fn shoot_zermelo_turnpike(p_guess: Option<&[f64]>, tf_guess: Option<f64>) -> Result<ZermeloTurnpikeShot> {
    let y0 = [0.0, 0.0];
    let yf = [200.0, 1.0];
    let cruise = 1.0 + mintime_drift(0.5);
    let p_init = match p_guess {
        Some(p) => p.to_vec(),
        None => vec![1.0 / cruise, 0.0],
    };
    let tf_init = tf_guess.unwrap_or((yf[0] - y0[0]) / cruise);
    let lift = HamiltonianLift::new(zermelo_penalized_hamiltonian(0.0, false), ControlLawKind::Regular);

    let residual = |z: &[f64]| -> Result<Vec<f64>> {
        let y_mid = &z[..2];
        let p_mid = &z[2..4];
        let tf = z[4];
        if !(tf > 0.0) {
            return Err(Error::InvalidArgument("nonpositive final time".into()));
        }
        let back = flow_dense(&lift, tf / 2.0, y_mid, p_mid, 0.0, 1e-10)?;
        let fwd = flow_dense(&lift, tf / 2.0, y_mid, p_mid, tf, 1e-10)?;
        let zb = back.trajectory.final_state();
        let zf = fwd.trajectory.final_state();
        Ok(vec![
            zb[0] - y0[0],
            zb[1] - y0[1],
            (zf[0] - yf[0]) / yf[0],
            (zf[1] - yf[1]) / yf[1],
            lift.eval(y_mid, p_mid),
        ])
    };

    let mut z0 = vec![0.5 * (y0[0] + yf[0]), 0.5];
    z0.extend_from_slice(&p_init);
    z0.push(tf_init);
    let res = newton_solve(residual, &z0, NewtonOptions { tol: 1e-9, max_iter: 60, ..Default::default() })?;

    let y_mid = res.z[..2].to_vec();
    let p_mid = res.z[2..4].to_vec();
    let tf = res.z[4];
    let back = flow_dense(&lift, tf / 2.0, &y_mid, &p_mid, 0.0, 1e-10)?;
    let fwd = flow_dense(&lift, tf / 2.0, &y_mid, &p_mid, tf, 1e-10)?;

    // Stitch backward and forward halves into one increasing mesh.
    let n_half = 200;
    let mut times = Vec::new();
    let mut states = Vec::new();
    for k in 0..=n_half {
        let t = tf / 2.0 * k as f64 / n_half as f64;
        times.push(t);
        states.push(back.eval(tf / 2.0 - t)[..2].to_vec());
    }
    for k in 1..=n_half {
        let t = tf / 2.0 + tf / 2.0 * k as f64 / n_half as f64;
        times.push(t);
        states.push(fwd.eval(t)[..2].to_vec());
    }
    let trajectory = Trajectory { times, states, controls: Vec::new(), running_cost_integral: 0.0 };
    Ok(ZermeloTurnpikeShot {
        midpoint_state: y_mid,
        midpoint_costate: p_mid,
        tf,
        trajectory,
        residual_norm: res.residual_norm,
        iterations: res.iterations,
    })
}

/// Resamples a phase-space dense solution uniformly and extracts the
/// heading control `u = atan2(p2, p1)` on each interval.
fn resample_with_heading(sol: &crate::ode::DenseSolution, n: usize) -> (Trajectory, Vec<Vec<f64>>) {
    let t0 = sol.trajectory.times[0];
    let t1 = sol.trajectory.final_time();
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let mut costates = Vec::with_capacity(n + 1);
    let mut controls = Vec::with_capacity(n);
    for k in 0..=n {
        let t = t0 + (t1 - t0) * k as f64 / n as f64;
        let z = sol.eval(t);
        states.push(z[..2].to_vec());
        costates.push(z[2..].to_vec());
        times.push(t);
        if k < n {
            let angle = z[3].atan2(z[2]).rem_euclid(2.0 * std::f64::consts::PI);
            controls.push(vec![angle]);
        }
    }
    (Trajectory { times, states, controls, running_cost_integral: 0.0 }, costates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cruise_initialization_values() {
        let cruise = 1.0 + mintime_drift(0.5);
        assert!((1.0 / cruise - 0.246914).abs() < 1e-6);
        assert!((200.0 / cruise - 49.38).abs() < 0.01);
    }

    #[test]
    fn costate_stays_flat_where_drift_is_flat() {
        // H does not depend on y1, so p1 is conserved along the flow.
        let lift =
            HamiltonianLift::new(zermelo_penalized_hamiltonian(0.0, false), ControlLawKind::Regular);
        let sol = flow_dense(&lift, 0.0, &[0.0, 0.0], &[0.25, 0.05], 2.0, 1e-10).unwrap();
        for z in &sol.trajectory.states {
            assert!((z[2] - 0.25).abs() < 1e-8);
        }
    }

    #[test]
    fn unconstrained_shot_reaches_the_global_time() {
        // Seeded with the value-gradient costate. The exact optimum of this
        // model is T* = 4.98122 with initial heading ~19.3 deg, matching the
        // near-lane climb-angle asymptotics; grid solvers report a slightly
        // smaller time because scheme dissipation accelerates the front.
        let shot = shoot_zermelo_penalized(&[0.24585, 0.09163], 4.95, 1e-3, false).unwrap();
        assert!(shot.residual_norm <= 1e-9);
        assert!((shot.tf - 4.98122).abs() < 1e-3, "tf = {}", shot.tf);
        let end = shot.trajectory.final_state();
        assert!((end[0] - 20.0).abs() < 1e-6 && (end[1] - 1.0).abs() < 1e-6);
        let heading = shot.trajectory.controls[0][0].to_degrees();
        assert!((heading - 19.3).abs() < 1.0, "initial heading {heading} deg");
    }

    #[test]
    fn infeasible_start_inside_obstacle_is_detected() {
        // A trial flow straight through the obstacle center from far left
        // must either bend around it or be rejected, never return NaN.
        let shot = shoot_zermelo_penalized(&[0.24, 0.0], 5.0, 1e-3, true);
        if let Ok(s) = shot {
            assert!(s.trajectory.states.iter().all(|y| y.iter().all(|v| v.is_finite())));
        }
    }
}
