//! Transcription of a control problem to a finite-dimensional nonlinear
//! program.
//!
//! Decision vector layout: `Z = (x_1, …, x_N, u_0, …, u_{N-1} [, Δt])`
//! with `x_0` fixed. Dynamics defects (one block of `d` equations per
//! interval) are equality constraints; pointwise constraints `g` are
//! posted at the nodes `x_1..x_N` and `g_f` at `x_N`. Constraint
//! components of the form `±x_j + c` are detected structurally and turned
//! into variable bounds instead of generic inequality rows.

use crate::error::{Error, Result};
use crate::model::ControlProblem;

/// State integration scheme of the transcription.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranscriptionScheme {
    /// Explicit Euler defects with left-rectangle cost quadrature.
    Euler,
    /// Trapezoidal (Crank-Nicolson) defects with trapezoid cost quadrature.
    CrankNicolson,
}

/// A constraint component recognized as `sign * x[state] + offset <= 0`.
#[derive(Clone, Copy, Debug)]
pub struct BoxRow {
    pub component: usize,
    pub state: usize,
    pub sign: f64,
    pub offset: f64,
}

#[derive(Clone)]
pub struct TranscribedNlp {
    pub problem: ControlProblem,
    pub n_intervals: usize,
    pub scheme: TranscriptionScheme,
    pub free_time: bool,
    pub x0: Vec<f64>,
    /// Fixed step when `free_time` is false.
    pub fixed_dt: f64,
    /// Per-variable bounds (`±INFINITY` when absent).
    pub bounds: Vec<(f64, f64)>,
    /// `g` components turned into node-wise bounds.
    pub g_box_rows: Vec<BoxRow>,
    /// `g_f` components turned into final-node bounds.
    pub gf_box_rows: Vec<BoxRow>,
    /// Remaining generic `g` components.
    g_generic: Vec<usize>,
    gf_generic: Vec<usize>,
}

impl TranscribedNlp {
    pub fn d(&self) -> usize {
        self.problem.state_dim
    }

    pub fn r(&self) -> usize {
        self.problem.control_dim
    }

    pub fn num_vars(&self) -> usize {
        let n = self.n_intervals;
        n * self.d() + n * self.r() + usize::from(self.free_time)
    }

    pub fn num_defects(&self) -> usize {
        self.n_intervals * self.d()
    }

    pub fn num_inequalities(&self) -> usize {
        self.g_generic.len() * self.n_intervals + self.gf_generic.len()
    }

    /// Offset of node `i` (`1 <= i <= N`) in the decision vector.
    pub fn x_off(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n_intervals);
        (i - 1) * self.d()
    }

    pub fn u_off(&self, k: usize) -> usize {
        debug_assert!(k < self.n_intervals);
        self.n_intervals * self.d() + k * self.r()
    }

    pub fn dt_index(&self) -> Option<usize> {
        self.free_time.then(|| self.n_intervals * (self.d() + self.r()))
    }

    pub fn dt(&self, z: &[f64]) -> f64 {
        match self.dt_index() {
            Some(i) => z[i],
            None => self.fixed_dt,
        }
    }

    pub fn node_state<'a>(&'a self, z: &'a [f64], i: usize) -> &'a [f64] {
        if i == 0 {
            &self.x0
        } else {
            &z[self.x_off(i)..self.x_off(i) + self.d()]
        }
    }

    pub fn interval_control<'a>(&self, z: &'a [f64], k: usize) -> &'a [f64] {
        &z[self.u_off(k)..self.u_off(k) + self.r()]
    }

    /// Bolza objective under the transcription quadrature.
    pub fn objective(&self, z: &[f64]) -> f64 {
        let n = self.n_intervals;
        let dt = self.dt(z);
        let mut total = 0.0;
        for k in 0..n {
            let u = self.interval_control(z, k);
            let t = k as f64 * dt;
            match self.scheme {
                TranscriptionScheme::Euler => {
                    total += dt * (self.problem.running_cost)(t, self.node_state(z, k), u);
                }
                TranscriptionScheme::CrankNicolson => {
                    let l0 = (self.problem.running_cost)(t, self.node_state(z, k), u);
                    let l1 = (self.problem.running_cost)(t + dt, self.node_state(z, k + 1), u);
                    total += 0.5 * dt * (l0 + l1);
                }
            }
        }
        total + (self.problem.final_cost)(self.node_state(z, n))
    }

    /// Dynamics defects, one block per interval:
    /// Euler `x_{i+1} − x_i − Δt f(t_i, x_i, u_i)`,
    /// trapezoid `x_{i+1} − x_i − (Δt/2)(f_i + f_{i+1})`, both endpoint
    /// evaluations taking the interval's piecewise-constant control.
    pub fn defects(&self, z: &[f64], out: &mut [f64]) {
        let n = self.n_intervals;
        let d = self.d();
        let dt = self.dt(z);
        let mut f0 = vec![0.0; d];
        let mut f1 = vec![0.0; d];
        for i in 0..n {
            let t = i as f64 * dt;
            let xi = self.node_state(z, i);
            let xn = self.node_state(z, i + 1);
            let u = self.interval_control(z, i);
            (self.problem.dynamics)(t, xi, u, &mut f0);
            let block = &mut out[i * d..(i + 1) * d];
            match self.scheme {
                TranscriptionScheme::Euler => {
                    for j in 0..d {
                        block[j] = xn[j] - xi[j] - dt * f0[j];
                    }
                }
                TranscriptionScheme::CrankNicolson => {
                    (self.problem.dynamics)(t + dt, xn, u, &mut f1);
                    for j in 0..d {
                        block[j] = xn[j] - xi[j] - 0.5 * dt * (f0[j] + f1[j]);
                    }
                }
            }
        }
    }

    /// Generic inequality rows (`<= 0`): the non-box `g` components at each
    /// node `x_1..x_N`, then the non-box `g_f` components at `x_N`.
    pub fn inequalities(&self, z: &[f64]) -> Vec<f64> {
        let mut rows = Vec::with_capacity(self.num_inequalities());
        if let Some(g) = &self.problem.state_constraint {
            if !self.g_generic.is_empty() {
                let mut vals = vec![0.0; g.dim];
                for i in 1..=self.n_intervals {
                    (g.eval)(self.node_state(z, i), &mut vals);
                    rows.extend(self.g_generic.iter().map(|&m| vals[m]));
                }
            }
        }
        if let Some(gf) = &self.problem.final_constraint {
            if !self.gf_generic.is_empty() {
                let mut vals = vec![0.0; gf.dim];
                (gf.eval)(self.node_state(z, self.n_intervals), &mut vals);
                rows.extend(self.gf_generic.iter().map(|&m| vals[m]));
            }
        }
        rows
    }

    /// Default initial guess: controls at the box midpoint, `Δt` from the
    /// nominal horizon, and states from the matching forward recursion
    /// (with a target point given, the states are linearly interpolated
    /// toward it instead).
    ///
    /// A dynamics-consistent start matters for free-final-time problems:
    /// from states that do not satisfy the defects, the penalty gradient
    /// with respect to `Δt` points toward the spurious stationary point
    /// `Δt = 0`.
    pub fn default_guess(&self, target: Option<&[f64]>) -> Vec<f64> {
        let n = self.n_intervals;
        let d = self.d();
        let mut z = vec![0.0; self.num_vars()];
        let mid = self.problem.control_midpoint();
        for k in 0..n {
            z[self.u_off(k)..self.u_off(k) + self.r()].copy_from_slice(&mid);
        }
        if let Some(di) = self.dt_index() {
            z[di] = self.problem.horizon.nominal() / n as f64;
        }
        match target {
            Some(goal) => {
                for i in 1..=n {
                    let s = i as f64 / n as f64;
                    for j in 0..d {
                        z[self.x_off(i) + j] = (1.0 - s) * self.x0[j] + s * goal[j];
                    }
                }
                for (v, &(lo, hi)) in z.iter_mut().zip(&self.bounds) {
                    *v = v.clamp(lo, hi);
                }
            }
            None => {
                // Greedy simulation: per interval, pick the control sample
                // whose next state violates the node bounds least
                // (midpoint-preferred on ties), then lock the states in.
                let samples = crate::model::sample_control_box(&self.problem.control_box, 5);
                let mid = self.problem.control_midpoint();
                let dt = self.dt(&z);
                let mut x = self.x0.clone();
                let mut fx = vec![0.0; d];
                for i in 0..n {
                    let t = i as f64 * dt;
                    let mut best: Option<(f64, f64, Vec<f64>, Vec<f64>)> = None;
                    for u in &samples {
                        (self.problem.dynamics)(t, &x, u, &mut fx);
                        let next: Vec<f64> = (0..d).map(|j| x[j] + dt * fx[j]).collect();
                        let viol: f64 = (0..d)
                            .map(|j| {
                                let (lo, hi) = self.bounds[i * d + j];
                                (lo - next[j]).max(next[j] - hi).max(0.0)
                            })
                            .fold(0.0, f64::max);
                        let dist: f64 = u
                            .iter()
                            .zip(&mid)
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum();
                        let better = match &best {
                            None => true,
                            Some((bv, bd, _, _)) => {
                                viol < bv - 1e-12 || (viol <= bv + 1e-12 && dist < *bd)
                            }
                        };
                        if better {
                            best = Some((viol, dist, u.clone(), next.clone()));
                        }
                    }
                    let (_, _, u, next) = best.expect("control box is sampled");
                    z[self.u_off(i)..self.u_off(i) + self.r()].copy_from_slice(&u);
                    z[self.x_off(i + 1)..self.x_off(i + 1) + d].copy_from_slice(&next);
                    x = next;
                }
                // Consistency for the trapezoidal scheme.
                self.restore_states(&mut z);
            }
        }
        z
    }

    /// Re-runs the state recursion from `x0` under the current controls and
    /// step, zeroing the defects exactly. The trapezoidal step is implicit;
    /// each node is solved by fixed-point iteration (the contraction rate
    /// `Δt·L/2` is small on any reasonable mesh).
    pub fn restore_states(&self, z: &mut [f64]) {
        let n = self.n_intervals;
        let d = self.d();
        let dt = self.dt(z);
        let mut x = self.x0.clone();
        let mut f0 = vec![0.0; d];
        let mut f1 = vec![0.0; d];
        for i in 0..n {
            let t = i as f64 * dt;
            let u = self.interval_control(z, i).to_vec();
            (self.problem.dynamics)(t, &x, &u, &mut f0);
            let mut next: Vec<f64> = match self.scheme {
                TranscriptionScheme::Euler => {
                    (0..d).map(|j| x[j] + dt * f0[j]).collect()
                }
                TranscriptionScheme::CrankNicolson => {
                    let mut guess: Vec<f64> = (0..d).map(|j| x[j] + dt * f0[j]).collect();
                    for _ in 0..60 {
                        (self.problem.dynamics)(t + dt, &guess, &u, &mut f1);
                        let mut delta = 0.0f64;
                        for j in 0..d {
                            let updated = x[j] + 0.5 * dt * (f0[j] + f1[j]);
                            delta = delta.max((updated - guess[j]).abs());
                            guess[j] = updated;
                        }
                        if delta <= 1e-15 {
                            break;
                        }
                    }
                    guess
                }
            };
            if next.iter().any(|v| !v.is_finite()) {
                next = x.clone();
            }
            z[self.x_off(i + 1)..self.x_off(i + 1) + d].copy_from_slice(&next);
            x = next;
        }
    }

    /// Trajectory view of a decision vector.
    pub fn unpack(&self, z: &[f64]) -> crate::model::Trajectory {
        let n = self.n_intervals;
        let dt = self.dt(z);
        let times = (0..=n).map(|i| i as f64 * dt).collect();
        let states = (0..=n).map(|i| self.node_state(z, i).to_vec()).collect();
        let controls = (0..n).map(|k| self.interval_control(z, k).to_vec()).collect();
        crate::model::Trajectory { times, states, controls, running_cost_integral: 0.0 }
    }
}

/// Detects constraint components of the form `±x_j + c` by probing the
/// gradient at three points; returns (box rows, remaining generic
/// component indices).
fn detect_box_rows(
    map: &crate::model::ConstraintMap,
    d: usize,
    anchor: &[f64],
) -> (Vec<BoxRow>, Vec<usize>) {
    let probes: Vec<Vec<f64>> = (0..3)
        .map(|q| {
            anchor
                .iter()
                .enumerate()
                .map(|(j, a)| a + 0.37 * (q as f64 + 1.0) * (if (j + q) % 2 == 0 { 1.0 } else { -0.53 }))
                .collect()
        })
        .collect();
    let grad = |x: &[f64], m: usize| -> Vec<f64> {
        let mut out = vec![0.0; d];
        let mut vals = vec![0.0; map.dim];
        let mut xb = x.to_vec();
        for j in 0..d {
            let h = 1e-6 * (1.0 + x[j].abs());
            xb[j] = x[j] + h;
            (map.eval)(&xb, &mut vals);
            let vp = vals[m];
            xb[j] = x[j] - h;
            (map.eval)(&xb, &mut vals);
            let vm = vals[m];
            xb[j] = x[j];
            out[j] = (vp - vm) / (2.0 * h);
        }
        out
    };

    let mut box_rows = Vec::new();
    let mut generic = Vec::new();
    'comp: for m in 0..map.dim {
        let g0 = grad(&probes[0], m);
        // One ±1 entry, all others zero, identical at every probe.
        let mut state = None;
        for (j, v) in g0.iter().enumerate() {
            if (v.abs() - 1.0).abs() < 1e-6 {
                if state.is_some() {
                    generic.push(m);
                    continue 'comp;
                }
                state = Some(j);
            } else if v.abs() > 1e-6 {
                generic.push(m);
                continue 'comp;
            }
        }
        let Some(j) = state else {
            generic.push(m);
            continue;
        };
        let sign = g0[j].signum();
        for probe in &probes[1..] {
            let gq = grad(probe, m);
            if gq.iter().enumerate().any(|(k, v)| (v - if k == j { sign } else { 0.0 }).abs() > 1e-6) {
                generic.push(m);
                continue 'comp;
            }
        }
        let mut vals = vec![0.0; map.dim];
        (map.eval)(&probes[0], &mut vals);
        let offset = vals[m] - sign * probes[0][j];
        box_rows.push(BoxRow { component: m, state: j, sign, offset });
    }
    (box_rows, generic)
}

/// Builds the transcription. The decision variables carry control-box
/// bounds, node-wise bounds from the box-detected `g` components,
/// final-node bounds from `g_f`, and `Δt >= 0` when the horizon is free.
pub fn transcribe(
    problem: &ControlProblem,
    n_intervals: usize,
    scheme: TranscriptionScheme,
    free_time: bool,
) -> Result<TranscribedNlp> {
    if n_intervals < 2 {
        return Err(Error::InvalidArgument("need at least 2 intervals".into()));
    }
    let x0 = problem
        .initial_state
        .clone()
        .ok_or_else(|| Error::InvalidArgument("problem has no initial state".into()))?;
    let d = problem.state_dim;
    let r = problem.control_dim;
    let n = n_intervals;

    let (g_box, g_generic) = match &problem.state_constraint {
        Some(g) => detect_box_rows(g, d, &x0),
        None => (Vec::new(), Vec::new()),
    };
    let (gf_box, gf_generic) = match &problem.final_constraint {
        Some(gf) => detect_box_rows(gf, d, &x0),
        None => (Vec::new(), Vec::new()),
    };

    let num_vars = n * d + n * r + usize::from(free_time);
    let mut bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); num_vars];
    for k in 0..n {
        for (q, &(lo, hi)) in problem.control_box.iter().enumerate() {
            bounds[n * d + k * r + q] = (lo, hi);
        }
    }
    // sign*x_j + c <= 0 at every node for g, at the final node for g_f.
    for i in 1..=n {
        for row in &g_box {
            let slot = &mut bounds[(i - 1) * d + row.state];
            if row.sign > 0.0 {
                slot.1 = slot.1.min(-row.offset);
            } else {
                slot.0 = slot.0.max(row.offset);
            }
        }
    }
    for row in &gf_box {
        let slot = &mut bounds[(n - 1) * d + row.state];
        if row.sign > 0.0 {
            slot.1 = slot.1.min(-row.offset);
        } else {
            slot.0 = slot.0.max(row.offset);
        }
    }
    if free_time {
        // The lower bound keeps the horizon above a tenth of its nominal
        // value; Δt = 0 with constant states is a spurious stationary point
        // of the transcription.
        bounds[n * (d + r)] = (0.1 * problem.horizon.nominal() / n as f64, f64::INFINITY);
    }

    let fixed_dt = problem.horizon.nominal() / n as f64;
    Ok(TranscribedNlp {
        problem: problem.clone(),
        n_intervals,
        scheme,
        free_time,
        x0,
        fixed_dt,
        bounds,
        g_box_rows: g_box,
        gf_box_rows: gf_box,
        g_generic,
        gf_generic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintMap, Horizon, LipschitzBundle};
    use crate::problems::{make_goddard, GoddardParams};
    use std::sync::Arc;

    fn integrator_problem() -> ControlProblem {
        ControlProblem {
            state_dim: 1,
            control_dim: 1,
            dynamics: Arc::new(|_t, _x, u, out| out[0] = u[0]),
            running_cost: Arc::new(|_, _, _| 0.0),
            final_cost: Arc::new(|x| x[0]),
            state_constraint: None,
            final_constraint: None,
            control_box: vec![(-1.0, 1.0)],
            horizon: Horizon::Fixed(1.0),
            lipschitz: LipschitzBundle::default(),
            initial_state: Some(vec![0.0]),
        }
    }

    #[test]
    fn euler_defect_hand_value() {
        // x' = u, N = 2, x0 = 0: defect at interval 0 with x1 = 0.5, u0 = 1,
        // dt = 0.5 vanishes.
        let nlp = transcribe(&integrator_problem(), 2, TranscriptionScheme::Euler, false).unwrap();
        let mut z = vec![0.0; nlp.num_vars()];
        z[nlp.x_off(1)] = 0.5;
        z[nlp.x_off(2)] = 1.0;
        z[nlp.u_off(0)] = 1.0;
        z[nlp.u_off(1)] = 1.0;
        let mut c = vec![0.0; nlp.num_defects()];
        nlp.defects(&z, &mut c);
        assert!(c[0].abs() < 1e-15);
        assert!(c[1].abs() < 1e-15);
    }

    #[test]
    fn zero_dynamics_constant_states_have_zero_defects() {
        let mut p = integrator_problem();
        p.dynamics = Arc::new(|_t, _x, _u, out| out[0] = 0.0);
        p.initial_state = Some(vec![3.0]);
        let nlp = transcribe(&p, 5, TranscriptionScheme::CrankNicolson, false).unwrap();
        let mut z = nlp.default_guess(None);
        for i in 1..=5 {
            z[nlp.x_off(i)] = 3.0;
        }
        let mut c = vec![0.0; nlp.num_defects()];
        nlp.defects(&z, &mut c);
        assert!(c.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn goddard_transcription_dimensions() {
        // d = 3, r = 1, N = 100, free time: 401 variables, 300 defects.
        let p = make_goddard(GoddardParams::default()).unwrap();
        let nlp = transcribe(&p, 100, TranscriptionScheme::CrankNicolson, true).unwrap();
        assert_eq!(nlp.num_vars(), 401);
        assert_eq!(nlp.num_defects(), 300);
        // v <= v_max and m* - m <= 0 become bounds, no generic rows remain.
        assert_eq!(nlp.num_inequalities(), 0);
        assert_eq!(nlp.g_box_rows.len(), 1);
        assert_eq!(nlp.gf_box_rows.len(), 1);
        // Velocity upper bound at an interior node, fuel lower bound at the
        // final node only.
        assert!((nlp.bounds[nlp.x_off(50) + 1].1 - 0.1).abs() < 1e-9);
        assert!((nlp.bounds[nlp.x_off(100) + 2].0 - 0.6).abs() < 1e-9);
        assert_eq!(nlp.bounds[nlp.x_off(50) + 2].0, f64::NEG_INFINITY);
    }

    #[test]
    fn transcription_consistent_with_integrator() {
        // Defects vanish on a trajectory produced by the matching scheme.
        let p = ControlProblem {
            dynamics: Arc::new(|_t, x: &[f64], u: &[f64], out: &mut [f64]| {
                out[0] = -x[0] + u[0];
            }),
            initial_state: Some(vec![1.0]),
            ..integrator_problem()
        };
        let nlp = transcribe(&p, 20, TranscriptionScheme::Euler, false).unwrap();
        let mut z = vec![0.0; nlp.num_vars()];
        let dt = 1.0 / 20.0;
        let mut x = 1.0;
        for i in 0..20 {
            z[nlp.u_off(i)] = 0.3;
            x += dt * (-x + 0.3);
            z[nlp.x_off(i + 1)] = x;
        }
        let mut c = vec![0.0; nlp.num_defects()];
        nlp.defects(&z, &mut c);
        assert!(c.iter().all(|v| v.abs() <= 1e-12));
    }

    #[test]
    fn generic_constraint_rows_survive_detection() {
        // A genuinely nonlinear g must not be mistaken for a box.
        let mut p = integrator_problem();
        p.state_constraint = Some(ConstraintMap::scalar(|x| x[0] * x[0] - 4.0));
        let nlp = transcribe(&p, 4, TranscriptionScheme::Euler, false).unwrap();
        assert_eq!(nlp.g_box_rows.len(), 0);
        assert_eq!(nlp.num_inequalities(), 4);
    }
}
