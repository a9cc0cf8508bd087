//! Benchmark problem constructors: boat navigation in a current (three
//! variants), vertical rocket ascent, and the linear-quadratic family used
//! for turnpike experiments.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConstraintMap, ControlProblem, Horizon, LipschitzBundle};

/// Navigation variants on the channel.
#[derive(Clone, Debug, PartialEq)]
pub enum ZermeloVariant {
    /// Minimum time to the point (20, 1) across the drift
    /// `h(y2) = 3 + 0.2 y2 (1 - y2)`, fixed speed `V_max = 1`, control = heading
    /// angle. An elliptic obstacle `(y1-10)^2/4 + (y2-0.4)^2/0.01 <= 1` can be
    /// switched on; it sits on the unconstrained optimal path. The
    /// distant-target flag replaces the target point by (200, 1) for
    /// long-horizon runs.
    MintimePointTarget { obstacle: bool, distant_target: bool },
    /// Channel `R x [-2, 2]` with drift `2 - y2^2/2`, controls
    /// (speed, angle) in `[0,1] x [0,2pi]`, target ball `B(0; 0.1)`,
    /// minimum time.
    ChannelBallTarget,
    /// Same channel dynamics, fuel cost `l = v`, fixed horizon `T = 1`,
    /// two rectangular obstacles, final target `||x||_inf <= 0.1`.
    FuelTwoObstacles,
}

/// Drift of the minimum-time variant.
pub fn mintime_drift(y2: f64) -> f64 {
    3.0 + 0.2 * y2 * (1.0 - y2)
}

/// Drift of the channel variants.
pub fn channel_drift(y2: f64) -> f64 {
    2.0 - 0.5 * y2 * y2
}

/// Ellipse excess `(y1-10)^2/a1^2 + (y2-0.4)^2/a2^2 - 1` with `a1 = 2`,
/// `a2 = 0.1`; nonpositive inside the obstacle.
pub fn mintime_obstacle_excess(x: &[f64]) -> f64 {
    let d1 = x[0] - 10.0;
    let d2 = x[1] - 0.4;
    d1 * d1 / 4.0 + d2 * d2 / 0.01 - 1.0
}

/// State constraint of the fuel variant: positive exactly inside one of the
/// two rectangular obstacles.
pub fn fuel_obstacles_g(x: &[f64]) -> f64 {
    let o1 = 0.4 - (x[0] + 2.0).abs().max((x[1] - 0.5).abs());
    let o2 = (0.2 - (x[0] + 2.5).abs()).min(1.0 - (x[1] + 1.0).abs());
    o1.max(o2)
}

/// Spatial descriptors of a navigation variant, needed by grid solvers and
/// plotting: computation domain, target set as a nonpositive-level function.
#[derive(Clone)]
pub struct ZermeloGeometry {
    pub domain: Vec<(f64, f64)>,
    pub target_center: Vec<f64>,
    pub target_radius: f64,
}

pub fn zermelo_geometry(variant: &ZermeloVariant) -> ZermeloGeometry {
    match variant {
        ZermeloVariant::MintimePointTarget { distant_target, .. } => ZermeloGeometry {
            domain: vec![(-1.0, 21.0), (-0.5, 1.5)],
            target_center: if *distant_target { vec![200.0, 1.0] } else { vec![20.0, 1.0] },
            target_radius: 0.0,
        },
        ZermeloVariant::ChannelBallTarget | ZermeloVariant::FuelTwoObstacles => ZermeloGeometry {
            domain: vec![(-5.0, 2.0), (-2.0, 2.0)],
            target_center: vec![0.0, 0.0],
            target_radius: 0.1,
        },
    }
}

/// Builds the navigation problem for a variant.
pub fn make_zermelo(variant: &ZermeloVariant) -> Result<ControlProblem> {
    let geom = zermelo_geometry(variant);
    let problem = match variant {
        ZermeloVariant::MintimePointTarget { obstacle, distant_target } => {
            let v_max = 1.0;
            let center = geom.target_center.clone();
            let state_constraint = if *obstacle {
                Some(ConstraintMap::scalar(|x| -mintime_obstacle_excess(x)))
            } else {
                None
            };
            let nominal = if *distant_target { 49.4 } else { 5.0 };
            ControlProblem {
                state_dim: 2,
                control_dim: 1,
                dynamics: Arc::new(move |_t, x, u, out| {
                    out[0] = v_max * u[0].cos() + mintime_drift(x[1]);
                    out[1] = v_max * u[0].sin();
                }),
                running_cost: Arc::new(|_, _, _| 1.0),
                final_cost: Arc::new(|_| 0.0),
                state_constraint,
                final_constraint: Some(ConstraintMap::scalar(move |x| {
                    let d0 = x[0] - center[0];
                    let d1 = x[1] - center[1];
                    (d0 * d0 + d1 * d1).sqrt()
                })),
                control_box: vec![(0.0, 2.0 * std::f64::consts::PI)],
                horizon: Horizon::Free { nominal },
                lipschitz: LipschitzBundle {
                    l_fx: 0.2 * 0.5 + 0.2, // |h'(y2)| <= 0.2 |1 - 2 y2| on the domain
                    l_fu: 1.0,
                    c_f: 4.05,
                    ..Default::default()
                },
                initial_state: Some(vec![0.0, 0.0]),
            }
        }
        ZermeloVariant::ChannelBallTarget => ControlProblem {
            state_dim: 2,
            control_dim: 2,
            dynamics: Arc::new(|_t, x, u, out| {
                out[0] = u[0] * u[1].cos() + channel_drift(x[1]);
                out[1] = u[0] * u[1].sin();
            }),
            running_cost: Arc::new(|_, _, _| 1.0),
            final_cost: Arc::new(|_| 0.0),
            state_constraint: None,
            final_constraint: Some(ConstraintMap::scalar(|x| {
                (x[0] * x[0] + x[1] * x[1]).sqrt() - 0.1
            })),
            control_box: vec![(0.0, 1.0), (0.0, 2.0 * std::f64::consts::PI)],
            horizon: Horizon::Free { nominal: 5.0 },
            lipschitz: LipschitzBundle { l_fx: 2.0, l_fu: 1.5, c_f: 3.0, ..Default::default() },
            initial_state: None,
        },
        ZermeloVariant::FuelTwoObstacles => ControlProblem {
            state_dim: 2,
            control_dim: 2,
            dynamics: Arc::new(|_t, x, u, out| {
                out[0] = u[0] * u[1].cos() + channel_drift(x[1]);
                out[1] = u[0] * u[1].sin();
            }),
            running_cost: Arc::new(|_, _, u| u[0]),
            final_cost: Arc::new(|_| 0.0),
            state_constraint: Some(ConstraintMap::scalar(fuel_obstacles_g)),
            final_constraint: Some(ConstraintMap::scalar(|x| {
                x[0].abs().max(x[1].abs()) - 0.1
            })),
            control_box: vec![(0.0, 1.0), (0.0, 2.0 * std::f64::consts::PI)],
            horizon: Horizon::Fixed(1.0),
            lipschitz: LipschitzBundle {
                l_fx: 2.0,
                l_fu: 1.5,
                l_lu: 1.0,
                l_g: 1.0,
                l_gf: 1.0,
                c_f: 3.0,
                c_l: 1.0,
                ..Default::default()
            },
            initial_state: None,
        },
    };
    problem.validate()?;
    Ok(problem)
}

/// Rocket ascent parameters (dimensionless model).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GoddardParams {
    pub c_d: f64,
    pub beta: f64,
    pub t_max: f64,
    pub b: f64,
    pub m_star: f64,
    pub v_max: f64,
}

impl Default for GoddardParams {
    fn default() -> Self {
        Self { c_d: 310.0, beta: 500.0, t_max: 3.5, b: 2.0, m_star: 0.6, v_max: 0.1 }
    }
}

impl GoddardParams {
    /// Drag `D(r, v) = C_D v |v| e^{-beta (r - 1)}`.
    pub fn drag(&self, r: f64, v: f64) -> f64 {
        self.c_d * v * v.abs() * (-self.beta * (r - 1.0)).exp()
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.c_d, self.beta, self.t_max, self.b, self.m_star, self.v_max];
        if vals.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::InvalidArgument("rocket parameters must be positive".into()));
        }
        Ok(())
    }
}

/// Builds the rocket ascent problem: state `(r, v, m)`, scalar thrust
/// `u in [0, 1]`, maximize final altitude (`phi = -r`), free final time,
/// velocity bound `v <= v_max` and final fuel constraint `m(t_f) >= m*`.
pub fn make_goddard(params: GoddardParams) -> Result<ControlProblem> {
    params.validate()?;
    let p = params;
    let problem = ControlProblem {
        state_dim: 3,
        control_dim: 1,
        dynamics: Arc::new(move |_t, x, u, out| {
            let (r, v, m) = (x[0], x[1], x[2]);
            out[0] = v;
            out[1] = (p.t_max * u[0] - p.drag(r, v)) / m - 1.0 / (r * r);
            out[2] = -p.t_max * p.b * u[0];
        }),
        running_cost: Arc::new(|_, _, _| 0.0),
        final_cost: Arc::new(|x| -x[0]),
        state_constraint: Some(ConstraintMap::scalar(move |x| x[1] - p.v_max)),
        final_constraint: Some(ConstraintMap::scalar(move |x| p.m_star - x[2])),
        control_box: vec![(0.0, 1.0)],
        horizon: Horizon::Free { nominal: 0.2 },
        lipschitz: LipschitzBundle {
            l_fx: 120.0, // dominated by the drag slope in r on the flight domain
            l_fu: p.t_max * (1.0 / p.m_star).max(p.b),
            l_g: 1.0,
            l_gf: 1.0,
            c_f: 10.0,
            ..Default::default()
        },
        initial_state: Some(vec![1.0, 0.0, 1.0]),
    };
    problem.validate()?;
    Ok(problem)
}

/// Goddard dynamics split `x' = F0(x) + u F1(x)` used by the indirect method.
pub fn goddard_fields(p: GoddardParams) -> (Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>, Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>) {
    let f0 = Arc::new(move |x: &[f64]| {
        let (r, v, m) = (x[0], x[1], x[2]);
        vec![v, -p.drag(r, v) / m - 1.0 / (r * r), 0.0]
    });
    let f1 = Arc::new(move |x: &[f64]| {
        let m = x[2];
        vec![0.0, p.t_max / m, -p.b * p.t_max]
    });
    (f0, f1)
}

/// Linear-quadratic problem with fixed endpoints:
/// running cost `(x - x_ref)' Q (x - x_ref) + (u - u_ref)' R (u - u_ref)`
/// on `x' = A x + B u`, `x(0) = x0`, `x(T) = x1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LqSpec {
    /// Row-major `d x d`.
    pub a: Vec<Vec<f64>>,
    /// Row-major `d x r`.
    pub b: Vec<Vec<f64>>,
    pub q: Vec<Vec<f64>>,
    pub r: Vec<Vec<f64>>,
    pub x_ref: Vec<f64>,
    pub u_ref: Vec<f64>,
    pub x0: Vec<f64>,
    pub x1: Vec<f64>,
    pub horizon: f64,
}

impl LqSpec {
    pub fn state_dim(&self) -> usize {
        self.x_ref.len()
    }

    pub fn control_dim(&self) -> usize {
        self.u_ref.len()
    }

    pub fn a_mat(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.a)
    }

    pub fn b_mat(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.b)
    }

    pub fn q_mat(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.q)
    }

    pub fn r_mat(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.r)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.state_dim();
        let r = self.control_dim();
        let dims_ok = self.a.len() == d
            && self.a.iter().all(|row| row.len() == d)
            && self.b.len() == d
            && self.b.iter().all(|row| row.len() == r)
            && self.q.len() == d
            && self.r.len() == r
            && self.x0.len() == d
            && self.x1.len() == d;
        if !dims_ok {
            return Err(Error::DimensionMismatch("inconsistent LQ matrix dimensions".into()));
        }
        for (m, name) in [(self.q_mat(), "Q"), (self.r_mat(), "R")] {
            if (&m - m.transpose()).abs().max() > 1e-12 {
                return Err(Error::InvalidArgument(format!("{name} must be symmetric")));
            }
            let eig = m.symmetric_eigenvalues();
            if eig.iter().any(|l| *l <= 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive definite")));
            }
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidArgument("horizon must be positive".into()));
        }
        Ok(())
    }

    /// Kalman controllability check: rank `[B, AB, ..., A^{d-1}B] = d`.
    pub fn is_controllable(&self) -> bool {
        let d = self.state_dim();
        let a = self.a_mat();
        let b = self.b_mat();
        let mut blocks = Vec::with_capacity(d);
        let mut cur = b.clone();
        for _ in 0..d {
            blocks.push(cur.clone());
            cur = &a * &cur;
        }
        let mut k = DMatrix::zeros(d, d * self.control_dim());
        for (i, blk) in blocks.iter().enumerate() {
            k.view_mut((0, i * self.control_dim()), (d, self.control_dim()))
                .copy_from(blk);
        }
        k.rank(1e-10) == d
    }
}

fn rows_to_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    DMatrix::from_fn(nr, nc, |i, j| rows[i][j])
}

/// Result of [`make_lq`]: the generic problem plus the matrices, and a
/// warning flag when the Kalman rank condition fails (turnpike guarantees
/// are void then, but the problem is still well formed).
pub struct LqProblem {
    pub problem: ControlProblem,
    pub spec: LqSpec,
    pub controllable: bool,
}

/// Builds the LQ problem. Fixed endpoints are encoded in the final
/// constraint as paired inequalities `±(x - x1) ≤ 0`, which solvers treat as
/// equalities.
pub fn make_lq(spec: LqSpec) -> Result<LqProblem> {
    spec.validate()?;
    let controllable = spec.is_controllable();
    let d = spec.state_dim();
    let a = spec.a_mat();
    let b = spec.b_mat();
    let q = spec.q_mat();
    let r = spec.r_mat();
    let x_ref = DVector::from_vec(spec.x_ref.clone());
    let u_ref = DVector::from_vec(spec.u_ref.clone());
    let x1 = spec.x1.clone();
    let (qc, rc, xrc, urc) = (q.clone(), r.clone(), x_ref.clone(), u_ref.clone());

    let problem = ControlProblem {
        state_dim: d,
        control_dim: spec.control_dim(),
        dynamics: Arc::new(move |_t, x, u, out| {
            let xv = DVector::from_column_slice(x);
            let uv = DVector::from_column_slice(u);
            let dx = &a * xv + &b * uv;
            out.copy_from_slice(dx.as_slice());
        }),
        running_cost: Arc::new(move |_t, x, u| {
            let dx = DVector::from_column_slice(x) - &xrc;
            let du = DVector::from_column_slice(u) - &urc;
            (dx.transpose() * &qc * &dx)[(0, 0)] + (du.transpose() * &rc * &du)[(0, 0)]
        }),
        final_cost: Arc::new(|_| 0.0),
        state_constraint: None,
        final_constraint: Some(ConstraintMap::new(
            2 * d,
            Arc::new(move |x, out| {
                for i in 0..x1.len() {
                    out[2 * i] = x[i] - x1[i];
                    out[2 * i + 1] = x1[i] - x[i];
                }
            }),
        )),
        // Large finite box standing in for unconstrained controls.
        control_box: vec![(-1e3, 1e3); spec.control_dim()],
        horizon: Horizon::Fixed(spec.horizon),
        lipschitz: LipschitzBundle {
            l_fx: spec.a_mat().abs().max().max(1.0),
            l_fu: spec.b_mat().abs().max().max(1.0),
            ..Default::default()
        },
        initial_state: Some(spec.x0.clone()),
    };
    problem.validate()?;
    Ok(LqProblem { problem, spec, controllable })
}

/// Variant tag in configuration files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZermeloVariantTag {
    MintimePointTarget,
    ChannelBallTarget,
    FuelTwoObstacles,
}

/// Optional switches of the minimum-time variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZermeloConfigParams {
    pub obstacle: bool,
    pub distant_target: bool,
}

/// Problem configuration file schema. Unknown keys are rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields, tag = "problem")]
pub enum ProblemConfig {
    Zermelo {
        variant: ZermeloVariantTag,
        #[serde(default)]
        params: ZermeloConfigParams,
    },
    Goddard {
        #[serde(default)]
        params: GoddardParams,
    },
    Lq {
        spec: LqSpec,
    },
}

impl ProblemConfig {
    /// Rich variant description for a navigation config.
    pub fn zermelo_variant(&self) -> Option<ZermeloVariant> {
        match self {
            ProblemConfig::Zermelo { variant, params } => Some(match variant {
                ZermeloVariantTag::MintimePointTarget => ZermeloVariant::MintimePointTarget {
                    obstacle: params.obstacle,
                    distant_target: params.distant_target,
                },
                ZermeloVariantTag::ChannelBallTarget => ZermeloVariant::ChannelBallTarget,
                ZermeloVariantTag::FuelTwoObstacles => ZermeloVariant::FuelTwoObstacles,
            }),
            _ => None,
        }
    }
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn build(&self) -> Result<ControlProblem> {
        match self {
            ProblemConfig::Zermelo { .. } => make_zermelo(&self.zermelo_variant().unwrap()),
            ProblemConfig::Goddard { params } => make_goddard(*params),
            ProblemConfig::Lq { spec } => Ok(make_lq(spec.clone())?.problem),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drift_values_on_the_parabola() {
        assert!((mintime_drift(0.5) - 3.05).abs() < 1e-15);
        assert_eq!(mintime_drift(0.0), 3.0);
        assert_eq!(mintime_drift(1.0), 3.0);
    }

    #[test]
    fn channel_drift_vanishes_at_banks() {
        assert_eq!(channel_drift(2.0), 0.0);
        assert_eq!(channel_drift(-2.0), 0.0);
    }

    #[test]
    fn fuel_constraint_positive_inside_first_obstacle() {
        // Deep inside obstacle one (its center): violated with value 0.4.
        assert!((fuel_obstacles_g(&[-2.0, 0.5]) - 0.4).abs() < 1e-15);
        // Far away: satisfied.
        assert!(fuel_obstacles_g(&[1.0, 1.8]) < 0.0);
    }

    #[test]
    fn drag_values_match_closed_form() {
        let p = GoddardParams::default();
        assert_eq!(p.drag(1.0, 0.0), 0.0);
        assert!((p.drag(1.0, 0.1) - 3.1).abs() < 1e-12);
        assert!((p.drag(1.01, 0.1) - 0.0208876).abs() < 1e-6);
    }

    #[test]
    fn goddard_pure_gravity_at_rest() {
        let p = make_goddard(GoddardParams::default()).unwrap();
        let dx = p.eval_dynamics(0.0, &[1.0, 0.0, 1.0], &[0.0]);
        assert_eq!(dx, vec![0.0, -1.0, 0.0]);
    }

    fn scalar_lq() -> LqSpec {
        LqSpec {
            a: vec![vec![0.0]],
            b: vec![vec![1.0]],
            q: vec![vec![1.0]],
            r: vec![vec![1.0]],
            x_ref: vec![1.0],
            u_ref: vec![0.0],
            x0: vec![0.0],
            x1: vec![0.0],
            horizon: 10.0,
        }
    }

    #[test]
    fn lq_running_cost_at_and_off_reference() {
        let lq = make_lq(scalar_lq()).unwrap();
        assert_eq!((lq.problem.running_cost)(0.0, &[1.0], &[0.0]), 0.0);
        assert_eq!((lq.problem.running_cost)(0.0, &[0.0], &[0.0]), 1.0);
    }

    #[test]
    fn double_integrator_is_controllable() {
        let spec = LqSpec {
            a: vec![vec![0.0, 1.0], vec![0.0, 0.0]],
            b: vec![vec![0.0], vec![1.0]],
            q: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            r: vec![vec![1.0]],
            x_ref: vec![0.0, 0.0],
            u_ref: vec![0.0],
            x0: vec![1.0, 0.0],
            x1: vec![0.0, 0.0],
            horizon: 1.0,
        };
        assert!(spec.is_controllable());
    }

    #[test]
    fn config_round_trips_and_rejects_unknown_keys() {
        let cfg = ProblemConfig::Goddard { params: GoddardParams::default() };
        let text = cfg.to_json();
        let back = ProblemConfig::from_json(&text).unwrap();
        assert!(matches!(back, ProblemConfig::Goddard { .. }));

        let bad = r#"{"problem": "goddard", "params": {"c_d": 1.0, "bogus": 2}}"#;
        assert!(ProblemConfig::from_json(bad).is_err());

        let z = r#"{"problem": "zermelo", "variant": "mintime_point_target", "params": {"obstacle": true}}"#;
        let zc = ProblemConfig::from_json(z).unwrap();
        let built = zc.build().unwrap();
        assert_eq!(built.state_dim, 2);
        assert!(built.state_constraint.is_some());
    }

    #[test]
    fn unknown_variant_tag_is_rejected() {
        let bad = r#"{"problem": "zermelo", "variant": "no_such_variant"}"#;
        assert!(ProblemConfig::from_json(bad).is_err());
    }
}
