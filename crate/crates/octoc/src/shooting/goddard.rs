//! Four-arc shooting for the rocket ascent problem.
//!
//! The system is control-affine, `x' = F0(x) + u F1(x)` with `u ∈ [0, 1]`,
//! and the solution structure is a concatenation
//! bang(u = 1) / singular / boundary (velocity constraint active) /
//! bang(u = 0). The shooting unknowns are the initial costate `p0 ∈ ℝ³`
//! and the four times `t1 < t2 < t3 < t_f`; the residual collects the
//! transversality rows `p_r(t_f) = 1`, `p_v(t_f) = 0`, the active fuel
//! constraint `m(t_f) = m*`, the singular-entry conditions
//! `H1 = H01 = 0` at `t1`, the boundary-entry condition `g = 0` at `t2`,
//! and the free-final-time condition `H0(t_f) = 0`.

use crate::error::{Error, Result};
use crate::model::Trajectory;
use crate::problems::{goddard_fields, GoddardParams};
use crate::shooting::{
    make_control_laws, newton_solve, ControlLaws, NewtonOptions, VectorField,
};

/// Initial guess for the shot.
#[derive(Clone, Copy, Debug)]
pub struct GoddardGuess {
    pub p0: [f64; 3],
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub tf: f64,
}

/// Converged four-arc extremal.
#[derive(Clone, Debug)]
pub struct GoddardShot {
    pub p0: Vec<f64>,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub tf: f64,
    pub trajectory: Trajectory,
    pub costates: Vec<Vec<f64>>,
    /// Constraint multiplier samples on the boundary arc.
    pub boundary_multiplier: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

pub(crate) struct GoddardArcs {
    pub laws: ControlLaws,
    pub params: GoddardParams,
}

impl GoddardArcs {
    pub fn new(params: GoddardParams) -> Self {
        let (f0, f1) = goddard_fields(params);
        let f0 = VectorField::new(move |x: &[f64]| f0(x));
        let f1 = VectorField::new(move |x: &[f64]| f1(x));
        let v_max = params.v_max;
        let laws = make_control_laws(f0, f1, move |x: &[f64]| v_max - x[1]);
        Self { laws, params }
    }

    /// Chains the four flows; fails when the time ordering is violated or a
    /// flow degenerates, which Newton treats as a rejected trial.
    fn chain(&self, z: &[f64], tol: f64) -> Result<ChainEnd> {
        let (t1, t2, t3, tf) = (z[3], z[4], z[5], z[6]);
        if !(0.0 < t1 && t1 < t2 && t2 < t3 && t3 < tf) {
            return Err(Error::InvalidArgument("arc times out of order".into()));
        }
        let x0 = [1.0, 0.0, 1.0];
        let p0 = &z[..3];
        use crate::shooting::ControlLawKind as K;
        let s1 = self.laws.flow_arc(K::Bang(1.0), 0.0, &x0, p0, t1, tol)?;
        let z1 = s1.trajectory.final_state().to_vec();
        let s2 = self.laws.flow_arc(K::Singular, t1, &z1[..3], &z1[3..], t2, tol)?;
        let z2 = s2.trajectory.final_state().to_vec();
        let s3 = self.laws.flow_arc(K::Boundary, t2, &z2[..3], &z2[3..], t3, tol)?;
        let z3 = s3.trajectory.final_state().to_vec();
        let s4 = self.laws.flow_arc(K::Bang(0.0), t3, &z3[..3], &z3[3..], tf, tol)?;
        let zf = s4.trajectory.final_state().to_vec();
        Ok(ChainEnd { z1, z2, zf, segments: [s1, s2, s3, s4] })
    }

    pub fn residual(&self, z: &[f64], tol: f64) -> Result<Vec<f64>> {
        let end = self.chain(z, tol)?;
        let (x1, p1) = end.z1.split_at(3);
        let (x2, _) = end.z2.split_at(3);
        let (xf, pf) = end.zf.split_at(3);
        Ok(vec![
            pf[0] - 1.0,
            pf[1],
            xf[2] - self.params.m_star,
            self.laws.h1.eval(x1, p1),
            self.laws.h01.eval(x1, p1),
            self.params.v_max - x2[1],
            self.laws.h0.eval(xf, pf),
        ])
    }
}

struct ChainEnd {
    z1: Vec<f64>,
    z2: Vec<f64>,
    zf: Vec<f64>,
    segments: [crate::ode::DenseSolution; 4],
}

/// Runs the four-arc shot from a guess. `tol` is the flow tolerance used
/// inside the residual (1e-11 is a good default).
pub fn shoot_goddard(params: GoddardParams, guess: &GoddardGuess, tol: f64) -> Result<GoddardShot> {
    let arcs = GoddardArcs::new(params);
    let z0 = vec![guess.p0[0], guess.p0[1], guess.p0[2], guess.t1, guess.t2, guess.t3, guess.tf];
    let res = newton_solve(
        |z| arcs.residual(z, tol),
        &z0,
        NewtonOptions { tol: 1e-8, max_iter: 60, ..Default::default() },
    )?;

    let end = arcs.chain(&res.z, tol)?;
    let (t1, t2, t3, tf) = (res.z[3], res.z[4], res.z[5], res.z[6]);
    let spans = [(0.0, t1), (t1, t2), (t2, t3), (t3, tf)];
    let per_arc = 80usize;
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut costates = Vec::new();
    let mut controls = Vec::new();
    let mut boundary_multiplier = Vec::new();
    for (arc, ((a, b), seg)) in spans.iter().zip(&end.segments).enumerate() {
        for k in 0..per_arc {
            let t = a + (b - a) * k as f64 / per_arc as f64;
            let z = seg.eval(t);
            let (x, p) = z.split_at(3);
            let u = match arc {
                0 => 1.0,
                1 => arcs.laws.singular_control(x, p)?,
                2 => {
                    boundary_multiplier.push(arcs.laws.boundary_multiplier(x, p)?);
                    arcs.laws.boundary_control(x)?
                }
                _ => 0.0,
            };
            times.push(t);
            states.push(x.to_vec());
            costates.push(p.to_vec());
            controls.push(vec![u]);
        }
    }
    let zf = &end.zf;
    times.push(tf);
    states.push(zf[..3].to_vec());
    costates.push(zf[3..].to_vec());

    Ok(GoddardShot {
        p0: res.z[..3].to_vec(),
        t1,
        t2,
        t3,
        tf,
        trajectory: Trajectory { times, states, controls, running_cost_integral: 0.0 },
        costates,
        boundary_multiplier,
        residual_norm: res.residual_norm,
        iterations: res.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Converged unknowns used as regression anchors across the suite.
    pub(crate) fn reference_guess() -> GoddardGuess {
        GoddardGuess {
            p0: [3.945, 0.1504, 0.05371],
            t1: 0.02351,
            t2: 0.05974,
            t3: 0.1016,
            tf: 0.2020,
        }
    }

    #[test]
    fn velocity_constraint_is_order_one() {
        // F1·g = −T_max/m < 0 on the flight domain for g = v_max − v.
        let arcs = GoddardArcs::new(GoddardParams::default());
        for m in [1.0, 0.8, 0.6] {
            let x = [1.01, 0.1, m];
            let lg1 = crate::shooting::lie_derivative(
                &VectorField::new({
                    let (_, f1) = goddard_fields(GoddardParams::default());
                    move |x: &[f64]| f1(x)
                }),
                |y: &[f64]| GoddardParams::default().v_max - y[1],
            )(&x);
            assert!((lg1 + 3.5 / m).abs() < 1e-5, "m = {m}: {lg1}");
            let ub = arcs.laws.boundary_control(&x).unwrap();
            assert!(ub.is_finite());
        }
    }

    #[test]
    fn boundary_control_holds_velocity() {
        // On g = 0 the boundary feedback keeps v' = 0: check u_b closes v'.
        let p = GoddardParams::default();
        let arcs = GoddardArcs::new(p);
        let x = [1.005, p.v_max, 0.8];
        let ub = arcs.laws.boundary_control(&x).unwrap();
        let vdot = (p.t_max * ub - p.drag(x[0], x[1])) / x[2] - 1.0 / (x[0] * x[0]);
        assert!(vdot.abs() < 1e-6, "v' = {vdot} at u_b = {ub}");
        assert!(ub > 0.0 && ub < 1.0);
    }

    #[test]
    fn converges_from_reference_guess() {
        let shot = shoot_goddard(GoddardParams::default(), &reference_guess(), 1e-11).unwrap();
        assert!(shot.residual_norm <= 1e-8);
        assert!((shot.tf - 0.20205).abs() < 1e-4);
        assert!((shot.p0[0] - 3.9458).abs() < 1e-3);
        // The fuel constraint is active and the rocket stops climbing at
        // the free final time.
        let xf = shot.trajectory.final_state();
        assert!((xf[2] - 0.6).abs() < 1e-6);
        assert!(xf[1].abs() < 1e-6);
    }
}
