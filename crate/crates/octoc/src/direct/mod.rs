//! Discretize-then-optimize: transcription to a nonlinear program, an
//! in-repo augmented-Lagrangian solve, and repackaging of the dynamics
//! multipliers as costate estimates for warm-starting the indirect method.

mod nlp;
mod solver;

pub use nlp::{transcribe, BoxRow, TranscribedNlp, TranscriptionScheme};
pub use solver::{solve_nlp, BoxedNlp, NlpOptions, NlpSolution, SolveStatus};

use crate::error::Result;
use crate::model::{ControlProblem, Trajectory};

impl BoxedNlp for TranscribedNlp {
    fn num_vars(&self) -> usize {
        TranscribedNlp::num_vars(self)
    }

    fn num_eq(&self) -> usize {
        self.num_defects()
    }

    fn num_ineq(&self) -> usize {
        self.num_inequalities()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn objective(&self, z: &[f64]) -> f64 {
        TranscribedNlp::objective(self, z)
    }

    fn equalities(&self, z: &[f64], out: &mut [f64]) {
        self.defects(z, out);
    }

    fn inequalities(&self, z: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&TranscribedNlp::inequalities(self, z));
    }

    fn gradient_combination(&self, z: &[f64], w: &[f64], v: &[f64], out: &mut [f64]) {
        self.gradient_combination_impl(z, w, v, out);
    }

    fn restore_feasibility(&self, z: &mut [f64]) -> bool {
        self.restore_states(z);
        true
    }
}

impl TranscribedNlp {
    /// `∇F + J_eqᵀ w + J_ineqᵀ v` assembled from per-node finite-difference
    /// Jacobians of `f`, `ℓ`, `φ`, `g`; one pass over the intervals.
    fn gradient_combination_impl(&self, z: &[f64], w: &[f64], v: &[f64], out: &mut [f64]) {
        let n = self.n_intervals;
        let d = self.d();
        let r = self.r();
        let dt = self.dt(z);
        let euler = matches!(self.scheme, TranscriptionScheme::Euler);
        out.iter_mut().for_each(|o| *o = 0.0);

        let h_of = |val: f64| 1e-6 * (1.0 + val.abs());
        let fd_l_grads = |t: f64, x: &[f64], u: &[f64]| -> (Vec<f64>, Vec<f64>, f64) {
            let mut gx = vec![0.0; d];
            let mut xb = x.to_vec();
            for j in 0..d {
                let h = h_of(x[j]);
                xb[j] = x[j] + h;
                let fp = (self.problem.running_cost)(t, &xb, u);
                xb[j] = x[j] - h;
                let fm = (self.problem.running_cost)(t, &xb, u);
                xb[j] = x[j];
                gx[j] = (fp - fm) / (2.0 * h);
            }
            let mut gu = vec![0.0; r];
            let mut ub = u.to_vec();
            for j in 0..r {
                let h = h_of(u[j]);
                ub[j] = u[j] + h;
                let fp = (self.problem.running_cost)(t, x, &ub);
                ub[j] = u[j] - h;
                let fm = (self.problem.running_cost)(t, x, &ub);
                ub[j] = u[j];
                gu[j] = (fp - fm) / (2.0 * h);
            }
            let gt = if self.free_time {
                let h = h_of(t);
                ((self.problem.running_cost)(t + h, x, u) - (self.problem.running_cost)(t - h, x, u))
                    / (2.0 * h)
            } else {
                0.0
            };
            (gx, gu, gt)
        };
        // Jacobians of f wrt x (rows), wrt u (rows), and f_t, plus f itself.
        let fd_f_grads = |t: f64, x: &[f64], u: &[f64]| -> (Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
            let mut fval = vec![0.0; d];
            (self.problem.dynamics)(t, x, u, &mut fval);
            let mut ax = vec![vec![0.0; d]; d];
            let mut xb = x.to_vec();
            let mut fp = vec![0.0; d];
            let mut fm = vec![0.0; d];
            for j in 0..d {
                let h = h_of(x[j]);
                xb[j] = x[j] + h;
                (self.problem.dynamics)(t, &xb, u, &mut fp);
                xb[j] = x[j] - h;
                (self.problem.dynamics)(t, &xb, u, &mut fm);
                xb[j] = x[j];
                for i in 0..d {
                    ax[i][j] = (fp[i] - fm[i]) / (2.0 * h);
                }
            }
            let mut bu = vec![vec![0.0; r]; d];
            let mut ub = u.to_vec();
            for j in 0..r {
                let h = h_of(u[j]);
                ub[j] = u[j] + h;
                (self.problem.dynamics)(t, x, &ub, &mut fp);
                ub[j] = u[j] - h;
                (self.problem.dynamics)(t, x, &ub, &mut fm);
                ub[j] = u[j];
                for i in 0..d {
                    bu[i][j] = (fp[i] - fm[i]) / (2.0 * h);
                }
            }
            let mut ft = vec![0.0; d];
            if self.free_time {
                let h = h_of(t);
                (self.problem.dynamics)(t + h, x, u, &mut fp);
                (self.problem.dynamics)(t - h, x, u, &mut fm);
                for i in 0..d {
                    ft[i] = (fp[i] - fm[i]) / (2.0 * h);
                }
            }
            (ax, bu, ft, fval)
        };

        let dt_idx = self.dt_index();
        // Objective quadrature + defect blocks, one interval at a time.
        for i in 0..n {
            let t = i as f64 * dt;
            let xi = self.node_state(z, i);
            let xn = self.node_state(z, i + 1);
            let ui = self.interval_control(z, i);
            let wi = &w[i * d..(i + 1) * d];

            // Running-cost quadrature gradient.
            if euler {
                let (gx, gu, gt) = fd_l_grads(t, xi, ui);
                if i >= 1 {
                    let off = self.x_off(i);
                    for j in 0..d {
                        out[off + j] += dt * gx[j];
                    }
                }
                let uo = self.u_off(i);
                for j in 0..r {
                    out[uo + j] += dt * gu[j];
                }
                if let Some(di) = dt_idx {
                    out[di] += (self.problem.running_cost)(t, xi, ui) + dt * i as f64 * gt;
                }
            } else {
                let (gx0, gu0, gt0) = fd_l_grads(t, xi, ui);
                let (gx1, gu1, gt1) = fd_l_grads(t + dt, xn, ui);
                if i >= 1 {
                    let off = self.x_off(i);
                    for j in 0..d {
                        out[off + j] += 0.5 * dt * gx0[j];
                    }
                }
                let off_n = self.x_off(i + 1);
                for j in 0..d {
                    out[off_n + j] += 0.5 * dt * gx1[j];
                }
                let uo = self.u_off(i);
                for j in 0..r {
                    out[uo + j] += 0.5 * dt * (gu0[j] + gu1[j]);
                }
                if let Some(di) = dt_idx {
                    let l0 = (self.problem.running_cost)(t, xi, ui);
                    let l1 = (self.problem.running_cost)(t + dt, xn, ui);
                    out[di] += 0.5 * (l0 + l1)
                        + 0.5 * dt * (i as f64 * gt0 + (i + 1) as f64 * gt1);
                }
            }

            // Defect block: c_i = x_{i+1} − x_i − q (dt) (f_i [+ f_{i+1}]).
            let q = if euler { dt } else { 0.5 * dt };
            let (ax0, bu0, ft0, f0) = fd_f_grads(t, xi, ui);
            // x_{i+1} slice: +w − q A_{i+1}ᵀ w (CN only for the A-part).
            let off_n = self.x_off(i + 1);
            for j in 0..d {
                out[off_n + j] += wi[j];
            }
            // x_i slice: −w − q A_iᵀ w.
            if i >= 1 {
                let off = self.x_off(i);
                for j in 0..d {
                    out[off + j] -= wi[j];
                    let mut acc = 0.0;
                    for k in 0..d {
                        acc += ax0[k][j] * wi[k];
                    }
                    out[off + j] -= q * acc;
                }
            }
            let uo = self.u_off(i);
            for j in 0..r {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += bu0[k][j] * wi[k];
                }
                out[uo + j] -= q * acc;
            }
            if euler {
                if let Some(di) = dt_idx {
                    for k in 0..d {
                        out[di] -= wi[k] * (f0[k] + dt * i as f64 * ft0[k]);
                    }
                }
            } else {
                let (ax1, bu1, ft1, f1) = fd_f_grads(t + dt, xn, ui);
                for j in 0..d {
                    let mut acc = 0.0;
                    for k in 0..d {
                        acc += ax1[k][j] * wi[k];
                    }
                    out[off_n + j] -= q * acc;
                }
                for j in 0..r {
                    let mut acc = 0.0;
                    for k in 0..d {
                        acc += bu1[k][j] * wi[k];
                    }
                    out[uo + j] -= q * acc;
                }
                if let Some(di) = dt_idx {
                    for k in 0..d {
                        out[di] -= wi[k]
                            * (0.5 * (f0[k] + f1[k])
                                + 0.5 * dt * (i as f64 * ft0[k] + (i + 1) as f64 * ft1[k]));
                    }
                }
            }
        }

        // Final cost gradient.
        {
            let xn = self.node_state(z, n);
            let off = self.x_off(n);
            let mut xb = xn.to_vec();
            for j in 0..d {
                let h = h_of(xn[j]);
                xb[j] = xn[j] + h;
                let fp = (self.problem.final_cost)(&xb);
                xb[j] = xn[j] - h;
                let fm = (self.problem.final_cost)(&xb);
                xb[j] = xn[j];
                out[off + j] += (fp - fm) / (2.0 * h);
            }
        }

        // Generic inequality rows.
        if !v.is_empty() {
            let mut row = 0usize;
            if let Some(g) = &self.problem.state_constraint {
                let generic: Vec<usize> = {
                    let all: Vec<usize> = (0..g.dim).collect();
                    all.into_iter()
                        .filter(|m| !self.g_box_rows.iter().any(|b| b.component == *m))
                        .collect()
                };
                if !generic.is_empty() {
                    let mut vals_p = vec![0.0; g.dim];
                    let mut vals_m = vec![0.0; g.dim];
                    for i in 1..=n {
                        let xi = self.node_state(z, i).to_vec();
                        let off = self.x_off(i);
                        let mut xb = xi.clone();
                        for j in 0..d {
                            let h = h_of(xi[j]);
                            xb[j] = xi[j] + h;
                            (g.eval)(&xb, &mut vals_p);
                            xb[j] = xi[j] - h;
                            (g.eval)(&xb, &mut vals_m);
                            xb[j] = xi[j];
                            for (q, &m) in generic.iter().enumerate() {
                                out[off + j] += v[row + q] * (vals_p[m] - vals_m[m]) / (2.0 * h);
                            }
                        }
                        row += generic.len();
                    }
                }
            }
            if let Some(gf) = &self.problem.final_constraint {
                let generic: Vec<usize> = (0..gf.dim)
                    .filter(|m| !self.gf_box_rows.iter().any(|b| b.component == *m))
                    .collect();
                if !generic.is_empty() {
                    let xn = self.node_state(z, n).to_vec();
                    let off = self.x_off(n);
                    let mut vals_p = vec![0.0; gf.dim];
                    let mut vals_m = vec![0.0; gf.dim];
                    let mut xb = xn.clone();
                    for j in 0..d {
                        let h = h_of(xn[j]);
                        xb[j] = xn[j] + h;
                        (gf.eval)(&xb, &mut vals_p);
                        xb[j] = xn[j] - h;
                        (gf.eval)(&xb, &mut vals_m);
                        xb[j] = xn[j];
                        for (q, &m) in generic.iter().enumerate() {
                            out[off + j] += v[row + q] * (vals_p[m] - vals_m[m]) / (2.0 * h);
                        }
                    }
                }
            }
        }
    }
}

/// Interval classification produced by the arc classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    BangLow,
    BangHigh,
    Boundary,
    Interior,
}

/// A maximal run of intervals sharing one classification.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ArcEpisode {
    pub kind: ArcKind,
    pub first_interval: usize,
    pub last_interval: usize,
    pub t_start: f64,
    pub t_end: f64,
}

/// Classifies each interval of a solution: control within `1e-2` of a box
/// bound (relative to its width) is bang; otherwise an active state
/// constraint (`|g| <= 1e-3`) marks a boundary arc; the rest is
/// interior/singular. Runs shorter than `max(2, N/50)` intervals are
/// absorbed by their predecessor so the reported structure is stable.
pub fn classify_arcs(problem: &ControlProblem, traj: &Trajectory) -> Vec<ArcEpisode> {
    let n = traj.controls.len();
    if n == 0 {
        return Vec::new();
    }
    let kinds: Vec<ArcKind> = (0..n)
        .map(|k| {
            let u = &traj.controls[k];
            let near_lo = u
                .iter()
                .zip(&problem.control_box)
                .all(|(v, &(lo, hi))| (v - lo).abs() <= 1e-2 * (hi - lo).max(1e-12));
            let near_hi = u
                .iter()
                .zip(&problem.control_box)
                .all(|(v, &(lo, hi))| (hi - v).abs() <= 1e-2 * (hi - lo).max(1e-12));
            if near_hi {
                ArcKind::BangHigh
            } else if near_lo {
                ArcKind::BangLow
            } else if let Some(g) = &problem.state_constraint {
                let active = g.values(&traj.states[k + 1]).iter().any(|v| v.abs() <= 1e-3);
                if active {
                    ArcKind::Boundary
                } else {
                    ArcKind::Interior
                }
            } else {
                ArcKind::Interior
            }
        })
        .collect();

    let min_len = (n / 50).max(2);
    let mut episodes: Vec<ArcEpisode> = Vec::new();
    for (k, &kind) in kinds.iter().enumerate() {
        match episodes.last_mut() {
            Some(ep) if ep.kind == kind => {
                ep.last_interval = k;
                ep.t_end = traj.times[k + 1];
            }
            _ => episodes.push(ArcEpisode {
                kind,
                first_interval: k,
                last_interval: k,
                t_start: traj.times[k],
                t_end: traj.times[k + 1],
            }),
        }
    }
    // Absorb blips.
    let mut merged: Vec<ArcEpisode> = Vec::new();
    for ep in episodes {
        let len = ep.last_interval - ep.first_interval + 1;
        match merged.last_mut() {
            Some(prev) if len < min_len => {
                prev.last_interval = ep.last_interval;
                prev.t_end = ep.t_end;
            }
            Some(prev) if prev.kind == ep.kind => {
                prev.last_interval = ep.last_interval;
                prev.t_end = ep.t_end;
            }
            _ => merged.push(ep),
        }
    }
    merged
}

/// Compact pattern string, e.g. `bang_high->interior->boundary->bang_low`.
pub fn arc_pattern(episodes: &[ArcEpisode]) -> String {
    episodes
        .iter()
        .map(|e| match e.kind {
            ArcKind::BangLow => "bang_low",
            ArcKind::BangHigh => "bang_high",
            ArcKind::Boundary => "boundary",
            ArcKind::Interior => "interior",
        })
        .collect::<Vec<_>>()
        .join("->")
}

/// Packaged result of a direct solve.
#[derive(Clone, Debug)]
pub struct DirectSolution {
    pub trajectory: Trajectory,
    pub objective: f64,
    /// Costate estimates at nodes `1..N` (from the defect multipliers,
    /// sign-adjusted toward the adjoint convention).
    pub costates: Vec<Vec<f64>>,
    pub costate_times: Vec<f64>,
    pub status: SolveStatus,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub feasibility: f64,
    pub arcs: Vec<ArcEpisode>,
    pub dt: f64,
}

#[derive(Clone, Debug)]
pub struct DirectOptions {
    pub nlp: NlpOptions,
    /// Extra per-state bounds applied at every node (solver aid, as in the
    /// reference discretization, which boxes all states).
    pub state_bounds: Option<Vec<(f64, f64)>>,
    /// Target point used by the default linear-interpolation guess.
    pub guess_target: Option<Vec<f64>>,
    /// Full custom initial guess (overrides the default).
    pub initial_guess: Option<Vec<f64>>,
}

impl Default for DirectOptions {
    fn default() -> Self {
        Self { nlp: NlpOptions::default(), state_bounds: None, guess_target: None, initial_guess: None }
    }
}

/// Transcribes, solves, and repackages. The costate estimate at node
/// `k+1` is the multiplier of defect block `k`, with the overall sign
/// chosen so that `⟨p(T), −∇φ(x_N)⟩ ≥ 0` (for an altitude-maximization
/// final cost this makes the altitude costate end at `+1`).
pub fn solve_direct(
    problem: &ControlProblem,
    n_intervals: usize,
    scheme: TranscriptionScheme,
    opts: &DirectOptions,
) -> Result<DirectSolution> {
    let free_time = problem.horizon.is_free();
    let mut nlp = transcribe(problem, n_intervals, scheme, free_time)?;
    if let Some(sb) = &opts.state_bounds {
        let d = problem.state_dim;
        for i in 1..=n_intervals {
            for (j, &(lo, hi)) in sb.iter().enumerate() {
                let slot = &mut nlp.bounds[(i - 1) * d + j];
                slot.0 = slot.0.max(lo);
                slot.1 = slot.1.min(hi);
            }
        }
    }
    let guess = match &opts.initial_guess {
        Some(g) => g.clone(),
        None => nlp.default_guess(opts.guess_target.as_deref()),
    };
    let sol = solve_nlp(&nlp, &guess, opts.nlp)?;
    let trajectory = nlp.unpack(&sol.z);
    let d = problem.state_dim;

    // Sign of the costate mapping, from the final-cost gradient when it is
    // informative.
    let mut sign = 1.0;
    let xn = trajectory.final_state().to_vec();
    let lam_last = &sol.eq_multipliers[(n_intervals - 1) * d..];
    let mut phi_grad = vec![0.0; d];
    let mut xb = xn.clone();
    for j in 0..d {
        let h = 1e-6 * (1.0 + xn[j].abs());
        xb[j] = xn[j] + h;
        let fp = (problem.final_cost)(&xb);
        xb[j] = xn[j] - h;
        let fm = (problem.final_cost)(&xb);
        xb[j] = xn[j];
        phi_grad[j] = (fp - fm) / (2.0 * h);
    }
    let proj: f64 = lam_last.iter().zip(&phi_grad).map(|(l, g)| -l * g).sum();
    if proj < 0.0 {
        sign = -1.0;
    }

    let costates: Vec<Vec<f64>> = (0..n_intervals)
        .map(|k| sol.eq_multipliers[k * d..(k + 1) * d].iter().map(|l| sign * l).collect())
        .collect();
    let dt = nlp.dt(&sol.z);
    let costate_times = (1..=n_intervals).map(|k| k as f64 * dt).collect();
    let arcs = classify_arcs(problem, &trajectory);

    Ok(DirectSolution {
        trajectory,
        objective: sol.objective,
        costates,
        costate_times,
        status: sol.status,
        outer_iterations: sol.outer_iterations,
        inner_iterations: sol.inner_iterations,
        feasibility: sol.feasibility,
        arcs,
        dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate_cost, Horizon, LipschitzBundle, Quadrature};
    use std::sync::Arc;

    fn lq_scalar_problem() -> ControlProblem {
        // min ∫ (x^2 + u^2) on x' = u, x(0) = 1, free endpoint, T = 1.
        ControlProblem {
            state_dim: 1,
            control_dim: 1,
            dynamics: Arc::new(|_t, _x, u, out| out[0] = u[0]),
            running_cost: Arc::new(|_t, x, u| x[0] * x[0] + u[0] * u[0]),
            final_cost: Arc::new(|_| 0.0),
            state_constraint: None,
            final_constraint: None,
            control_box: vec![(-10.0, 10.0)],
            horizon: Horizon::Fixed(1.0),
            lipschitz: LipschitzBundle::default(),
            initial_state: Some(vec![1.0]),
        }
    }

    #[test]
    fn gradient_combination_matches_finite_differences() {
        let p = lq_scalar_problem();
        let nlp = transcribe(&p, 5, TranscriptionScheme::CrankNicolson, false).unwrap();
        let mut z = nlp.default_guess(None);
        for (k, v) in z.iter_mut().enumerate() {
            *v += 0.1 * ((k as f64 * 0.7).sin());
        }
        let w: Vec<f64> = (0..nlp.num_defects()).map(|k| 0.3 + 0.1 * k as f64).collect();
        let v: Vec<f64> = vec![];
        let mut grad = vec![0.0; nlp.num_vars()];
        nlp.gradient_combination_impl(&z, &w, &v, &mut grad);

        let scalar = |z: &[f64]| -> f64 {
            let mut c = vec![0.0; nlp.num_defects()];
            nlp.defects(z, &mut c);
            nlp.objective(z) + c.iter().zip(&w).map(|(ci, wi)| ci * wi).sum::<f64>()
        };
        for j in 0..nlp.num_vars() {
            let h = 1e-6 * (1.0 + z[j].abs());
            let mut zp = z.clone();
            zp[j] += h;
            let mut zm = z.clone();
            zm[j] -= h;
            let fd = (scalar(&zp) - scalar(&zm)) / (2.0 * h);
            assert!(
                (fd - grad[j]).abs() <= 1e-6 * (1.0 + fd.abs()),
                "var {j}: fd {fd} vs assembled {}",
                grad[j]
            );
        }
    }

    #[test]
    fn scalar_lq_matches_riccati_closed_form() {
        // Optimal value for min ∫_0^1 x^2+u^2, x' = u, x(0)=1 is tanh(1).
        let p = lq_scalar_problem();
        let sol = solve_direct(&p, 60, TranscriptionScheme::CrankNicolson, &DirectOptions::default())
            .unwrap();
        assert_eq!(sol.status, SolveStatus::Converged);
        assert!((sol.objective - 1f64.tanh()).abs() < 2e-3, "objective {}", sol.objective);
        // Reported objective equals the trajectory cost under the matching
        // quadrature.
        let re_eval = evaluate_cost(&p, &sol.trajectory, Quadrature::Trapezoid);
        assert!((sol.objective - re_eval).abs() <= 1e-8 * (1.0 + re_eval.abs()));
        // The Riccati costate is p(t) = -2 tanh(1-t) x(t); check sign and
        // rough value mid-horizon, p(0.5) ≈ -2 tanh(0.5) x(0.5).
        let mid = 29usize;
        let x_mid = sol.trajectory.states[mid + 1][0];
        let expect = -2.0 * (0.5f64).tanh() * x_mid;
        let got = sol.costates[mid][0];
        assert!(
            (got - expect).abs() < 0.05 * expect.abs(),
            "costate {got} vs Riccati {expect}"
        );
    }

    #[test]
    fn infeasible_target_is_reported() {
        // x' = u with |u| <= 1 cannot reach 5 in unit time.
        let mut p = lq_scalar_problem();
        p.control_box = vec![(-1.0, 1.0)];
        p.final_constraint = Some(crate::model::ConstraintMap::new(
            2,
            Arc::new(|x, out| {
                out[0] = x[0] - 5.0;
                out[1] = 5.0 - x[0];
            }),
        ));
        let sol = solve_direct(&p, 20, TranscriptionScheme::Euler, &DirectOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::InfeasibleStationary);
    }

    #[test]
    fn classifier_reads_a_synthetic_bang_pattern() {
        let p = crate::problems::make_goddard(crate::problems::GoddardParams::default()).unwrap();
        let n = 40;
        let dt = 0.2 / n as f64;
        let times: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
        // States: v pinned at the constraint in the third quarter.
        let states: Vec<Vec<f64>> = (0..=n)
            .map(|k| {
                let v = if (20..30).contains(&k) { 0.1 } else { 0.05 };
                vec![1.0, v, 0.8]
            })
            .collect();
        let controls: Vec<Vec<f64>> = (0..n)
            .map(|k| {
                if k < 10 {
                    vec![1.0]
                } else if k < 20 {
                    vec![0.6]
                } else if k < 30 {
                    vec![0.4]
                } else {
                    vec![0.0]
                }
            })
            .collect();
        let traj = Trajectory { times, states, controls, running_cost_integral: 0.0 };
        let eps = classify_arcs(&p, &traj);
        let pattern = arc_pattern(&eps);
        assert_eq!(pattern, "bang_high->interior->boundary->bang_low");
    }
}
