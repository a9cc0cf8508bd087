//! Problem model shared by all solvers.
//!
//! A [`ControlProblem`] is a Bolza problem: minimize
//! `φ(x(T)) + ∫ ℓ(s, x(s), u(s)) ds` over measurable controls with values
//! in a compact box `U`, subject to a pointwise state constraint
//! `g(x(s)) ≤ 0` and a final constraint `g_f(x(T)) ≤ 0` (componentwise).
//! Either constraint map may be absent. The horizon is a fixed `T` or a
//! free final time (with a nominal value used only to initialize solvers).

use std::sync::Arc;

use crate::error::{Error, Result};

/// Dynamics callback: writes `f(t, x, u)` into `out` (length `state_dim`).
pub type DynFn = Arc<dyn Fn(f64, &[f64], &[f64], &mut [f64]) + Send + Sync>;
/// Running cost callback `ℓ(t, x, u)`.
pub type CostFn = Arc<dyn Fn(f64, &[f64], &[f64]) -> f64 + Send + Sync>;
/// Final cost callback `φ(x)`.
pub type FinalCostFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Constraint callback: writes the constraint components into `out`.
pub type ConstraintFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

/// A vector-valued constraint map `x ↦ ℝ^m`, feasible iff every component ≤ 0.
#[derive(Clone)]
pub struct ConstraintMap {
    pub dim: usize,
    pub eval: ConstraintFn,
}

impl ConstraintMap {
    pub fn new(dim: usize, eval: ConstraintFn) -> Self {
        Self { dim, eval }
    }

    /// Scalar map from a closure returning one component.
    pub fn scalar<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            dim: 1,
            eval: Arc::new(move |x, out| out[0] = f(x)),
        }
    }

    pub fn values(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        (self.eval)(x, &mut out);
        out
    }

    /// Maximum component, the scalar exact-penalty form of the map.
    pub fn max_value(&self, x: &[f64]) -> f64 {
        self.values(x).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Time horizon: fixed `T`, or free final time with a nominal guess.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Horizon {
    Fixed(f64),
    Free { nominal: f64 },
}

impl Horizon {
    /// Fixed horizon or the nominal guess for free-time problems.
    pub fn nominal(&self) -> f64 {
        match *self {
            Horizon::Fixed(t) => t,
            Horizon::Free { nominal } => nominal,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Horizon::Free { .. })
    }
}

/// Lipschitz and growth constants declared with the problem.
///
/// These are used by the planning module to build error radii and by the
/// Gronwall trajectory bound; they are bounds on the stated domain, not
/// global constants.
#[derive(Clone, Copy, Debug, Default)]
pub struct LipschitzBundle {
    pub l_fx: f64,
    pub l_fu: f64,
    pub l_lx: f64,
    pub l_lu: f64,
    pub l_phi: f64,
    pub l_g: f64,
    pub l_gf: f64,
    pub c_f: f64,
    pub c_l: f64,
    pub c_phi: f64,
    pub c_g: f64,
}

impl LipschitzBundle {
    pub fn validate(&self) -> Result<()> {
        let vals = [
            self.l_fx, self.l_fu, self.l_lx, self.l_lu, self.l_phi, self.l_g, self.l_gf,
            self.c_f, self.c_l, self.c_phi, self.c_g,
        ];
        if vals.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument(
                "Lipschitz bundle entries must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// The Bolza optimal control problem.
#[derive(Clone)]
pub struct ControlProblem {
    pub state_dim: usize,
    pub control_dim: usize,
    pub dynamics: DynFn,
    pub running_cost: CostFn,
    pub final_cost: FinalCostFn,
    /// Pointwise state constraint `g(x) ≤ 0`; `None` means `m_g = 0`.
    pub state_constraint: Option<ConstraintMap>,
    /// Final constraint `g_f(x(T)) ≤ 0`; `None` means `m_f = 0`.
    pub final_constraint: Option<ConstraintMap>,
    /// Per-coordinate closed control intervals `[lo, hi]`.
    pub control_box: Vec<(f64, f64)>,
    pub horizon: Horizon,
    pub lipschitz: LipschitzBundle,
    /// Initial state, when the problem fixes one (benchmark constructors do).
    pub initial_state: Option<Vec<f64>>,
}

impl ControlProblem {
    /// Checks the structural invariants: compact nonempty `U`, positive
    /// dimensions, finite Lipschitz entries.
    pub fn validate(&self) -> Result<()> {
        if self.state_dim == 0 || self.control_dim == 0 {
            return Err(Error::InvalidArgument("state_dim and control_dim must be positive".into()));
        }
        if self.control_box.len() != self.control_dim {
            return Err(Error::DimensionMismatch(format!(
                "control box has {} intervals for control_dim {}",
                self.control_box.len(),
                self.control_dim
            )));
        }
        for &(lo, hi) in &self.control_box {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidArgument(
                    "control box intervals must be finite with lo <= hi".into(),
                ));
            }
        }
        self.lipschitz.validate()
    }

    pub fn eval_dynamics(&self, t: f64, x: &[f64], u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.state_dim];
        (self.dynamics)(t, x, u, &mut out);
        out
    }

    /// Clamps a control vector into `U` componentwise.
    pub fn clamp_control(&self, u: &mut [f64]) {
        for (ui, &(lo, hi)) in u.iter_mut().zip(&self.control_box) {
            *ui = ui.clamp(lo, hi);
        }
    }

    /// Midpoint of the control box.
    pub fn control_midpoint(&self) -> Vec<f64> {
        self.control_box.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect()
    }
}

/// A control signal: piecewise constant on a mesh, or state feedback.
///
/// Piecewise-constant signals are right-continuous: the value on
/// `[s_k, s_{k+1})` is `values[k]`.
#[derive(Clone)]
pub enum ControlSignal {
    PiecewiseConstant { times: Vec<f64>, values: Vec<Vec<f64>> },
    Feedback(Arc<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>),
}

impl ControlSignal {
    pub fn constant(u: Vec<f64>) -> Self {
        ControlSignal::PiecewiseConstant { times: vec![0.0], values: vec![u] }
    }

    /// Value of the signal at `(t, x)`.
    pub fn value(&self, t: f64, x: &[f64]) -> Vec<f64> {
        match self {
            ControlSignal::PiecewiseConstant { times, values } => {
                // Right-continuous lookup: last k with times[k] <= t.
                let k = match times.binary_search_by(|s| s.partial_cmp(&t).unwrap()) {
                    Ok(k) => k,
                    Err(0) => 0,
                    Err(k) => k - 1,
                };
                values[k.min(values.len() - 1)].clone()
            }
            ControlSignal::Feedback(f) => f(t, x),
        }
    }

    /// Checks that every sampled value lies inside `U` componentwise.
    pub fn admissible(&self, control_box: &[(f64, f64)], tol: f64) -> bool {
        match self {
            ControlSignal::PiecewiseConstant { values, .. } => values.iter().all(|u| {
                u.iter()
                    .zip(control_box)
                    .all(|(v, &(lo, hi))| *v >= lo - tol && *v <= hi + tol)
            }),
            ControlSignal::Feedback(_) => true,
        }
    }
}

/// Time mesh, state samples, control samples, and accumulated running cost.
#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    /// Strictly increasing time mesh.
    pub times: Vec<f64>,
    /// One state per mesh node.
    pub states: Vec<Vec<f64>>,
    /// One control per mesh interval (may be empty for raw ODE solutions).
    pub controls: Vec<Vec<f64>>,
    /// Accumulated quadrature of the running cost, when known.
    pub running_cost_integral: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least one node")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one node")
    }

    /// Structural invariants: mesh monotone, matching sample counts.
    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() || self.states.len() != self.times.len() {
            return Err(Error::DimensionMismatch("states count must equal times count".into()));
        }
        if !self.controls.is_empty() && self.controls.len() + 1 != self.times.len() {
            return Err(Error::DimensionMismatch(
                "controls count must equal times count - 1".into(),
            ));
        }
        if self.times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("times must be strictly increasing".into()));
        }
        Ok(())
    }

    /// Checks the Gronwall growth bound `1 + ‖x(s)‖ ≤ (1 + ‖x(t0)‖) e^{c_f (s - t0)}`
    /// with multiplicative slack.
    pub fn satisfies_gronwall(&self, c_f: f64, slack: f64) -> bool {
        let t0 = self.times[0];
        let n0 = 1.0 + norm(&self.states[0]);
        self.times.iter().zip(&self.states).all(|(&t, x)| {
            1.0 + norm(x) <= slack * n0 * (c_f * (t - t0)).exp()
        })
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Quadrature rule for the running-cost integral; matched to the order of
/// the state integration scheme (left rectangle for Euler, trapezoid for
/// the higher-order schemes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    LeftRectangle,
    Trapezoid,
}

/// Bolza cost `φ(x(T)) + ∫ ℓ` of a trajectory, the integral evaluated by
/// the given rule on the trajectory mesh with its piecewise-constant
/// controls.
pub fn evaluate_cost(problem: &ControlProblem, traj: &Trajectory, quad: Quadrature) -> f64 {
    let terminal = (problem.final_cost)(traj.final_state());
    terminal + integrate_running_cost(problem, traj, quad)
}

/// Quadrature of `ℓ` alone over the trajectory mesh.
pub fn integrate_running_cost(problem: &ControlProblem, traj: &Trajectory, quad: Quadrature) -> f64 {
    let mut total = 0.0;
    for k in 0..traj.times.len().saturating_sub(1) {
        let h = traj.times[k + 1] - traj.times[k];
        let u = &traj.controls[k];
        let l0 = (problem.running_cost)(traj.times[k], &traj.states[k], u);
        total += match quad {
            Quadrature::LeftRectangle => h * l0,
            Quadrature::Trapezoid => {
                let l1 = (problem.running_cost)(traj.times[k + 1], &traj.states[k + 1], u);
                0.5 * h * (l0 + l1)
            }
        };
    }
    total
}

/// Feasibility report of [`check_admissible`].
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AdmissibilityReport {
    pub feasible: bool,
    /// Max of `g` over mesh nodes and components; `None` when `m_g = 0`.
    pub max_g: Option<f64>,
    /// Max component of `g_f(x(T))`; `None` when `m_f = 0`.
    pub max_gf: Option<f64>,
}

/// Evaluates constraint violation along a trajectory. A missing constraint
/// map contributes an absent maximum (never a float infinity in output).
pub fn check_admissible(problem: &ControlProblem, traj: &Trajectory, tol: f64) -> AdmissibilityReport {
    let max_g = problem.state_constraint.as_ref().map(|g| {
        traj.states
            .iter()
            .map(|x| g.max_value(x))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    let max_gf = problem
        .final_constraint
        .as_ref()
        .map(|gf| gf.max_value(traj.final_state()));
    let feasible = max_g.map_or(true, |v| v <= tol) && max_gf.map_or(true, |v| v <= tol);
    AdmissibilityReport { feasible, max_g, max_gf }
}

/// Uniform samples of the control box, `n_per_axis` per coordinate
/// (endpoints included), in row-major order. The sampled set stands in for
/// the continuous sup/inf over `U` in grid solvers and reconstruction.
pub fn sample_control_box(control_box: &[(f64, f64)], n_per_axis: usize) -> Vec<Vec<f64>> {
    assert!(n_per_axis >= 1);
    let axes: Vec<Vec<f64>> = control_box
        .iter()
        .map(|&(lo, hi)| {
            if n_per_axis == 1 || hi == lo {
                vec![0.5 * (lo + hi)]
            } else {
                (0..n_per_axis)
                    .map(|j| lo + (hi - lo) * j as f64 / (n_per_axis - 1) as f64)
                    .collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    loop {
        out.push(idx.iter().enumerate().map(|(a, &j)| axes[a][j]).collect());
        let mut a = axes.len();
        loop {
            if a == 0 {
                return out;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < axes[a].len() {
                break;
            }
            idx[a] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_problem() -> ControlProblem {
        ControlProblem {
            state_dim: 2,
            control_dim: 1,
            dynamics: Arc::new(|_t, _x, u, out| {
                out[0] = u[0];
                out[1] = 0.0;
            }),
            running_cost: Arc::new(|_, _, _| 0.0),
            final_cost: Arc::new(|x| x[0]),
            state_constraint: None,
            final_constraint: None,
            control_box: vec![(-1.0, 1.0)],
            horizon: Horizon::Fixed(2.0),
            lipschitz: LipschitzBundle::default(),
            initial_state: Some(vec![0.0, 0.0]),
        }
    }

    fn line_traj() -> Trajectory {
        Trajectory {
            times: vec![0.0, 1.0, 2.0],
            states: vec![vec![0.0, 0.0], vec![1.5, 0.0], vec![3.0, 0.0]],
            controls: vec![vec![1.0], vec![1.0]],
            running_cost_integral: 0.0,
        }
    }

    #[test]
    fn cost_is_final_state_component_when_running_cost_vanishes() {
        let p = toy_problem();
        let cost = evaluate_cost(&p, &line_traj(), Quadrature::Trapezoid);
        assert_eq!(cost, 3.0);
    }

    #[test]
    fn constant_running_cost_integrates_exactly() {
        let mut p = toy_problem();
        p.running_cost = Arc::new(|_, _, _| 1.0);
        p.final_cost = Arc::new(|_| 0.0);
        let c_left = evaluate_cost(&p, &line_traj(), Quadrature::LeftRectangle);
        let c_trap = evaluate_cost(&p, &line_traj(), Quadrature::Trapezoid);
        assert_eq!(c_left, 2.0);
        assert_eq!(c_trap, 2.0);
    }

    #[test]
    fn unconstrained_admissibility_reports_absent_maxima() {
        let p = toy_problem();
        let rep = check_admissible(&p, &line_traj(), 0.0);
        assert!(rep.feasible);
        assert_eq!(rep.max_g, None);
        assert_eq!(rep.max_gf, None);
    }

    #[test]
    fn state_constraint_maximum_is_reported() {
        let mut p = toy_problem();
        // g(x) = x1 - 1 with all x1 <= 0.5 along a shorter trajectory.
        p.state_constraint = Some(ConstraintMap::scalar(|x| x[0] - 1.0));
        let traj = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![vec![0.0, 0.0], vec![0.5, 0.0]],
            controls: vec![vec![0.5]],
            running_cost_integral: 0.0,
        };
        let rep = check_admissible(&p, &traj, 0.0);
        assert!(rep.feasible);
        assert_eq!(rep.max_g, Some(-0.5));
    }

    #[test]
    fn violated_final_constraint_is_infeasible() {
        let mut p = toy_problem();
        // g_f(x) = ||x||_inf - 0.1 with x(T) = (0.2, 0).
        p.final_constraint = Some(ConstraintMap::scalar(|x| {
            x.iter().fold(0.0f64, |a, v| a.max(v.abs())) - 0.1
        }));
        let traj = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![vec![0.0, 0.0], vec![0.2, 0.0]],
            controls: vec![vec![0.2]],
            running_cost_integral: 0.0,
        };
        let rep = check_admissible(&p, &traj, 0.0);
        assert!(!rep.feasible);
        assert!((rep.max_gf.unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn piecewise_constant_signal_is_right_continuous() {
        let sig = ControlSignal::PiecewiseConstant {
            times: vec![0.0, 1.0, 2.0],
            values: vec![vec![10.0], vec![20.0], vec![30.0]],
        };
        assert_eq!(sig.value(0.0, &[])[0], 10.0);
        assert_eq!(sig.value(0.99, &[])[0], 10.0);
        assert_eq!(sig.value(1.0, &[])[0], 20.0);
        assert_eq!(sig.value(5.0, &[])[0], 30.0);
    }

    #[test]
    fn control_box_sampling_covers_endpoints() {
        let samples = sample_control_box(&[(0.0, 1.0), (-1.0, 1.0)], 3);
        assert_eq!(samples.len(), 9);
        assert_eq!(samples[0], vec![0.0, -1.0]);
        assert_eq!(samples[8], vec![1.0, 1.0]);
    }
}
