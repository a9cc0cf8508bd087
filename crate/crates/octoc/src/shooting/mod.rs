//! Indirect method machinery: Hamiltonian lifts and flows, Poisson
//! brackets, singular and boundary feedback laws, Newton shooting, and the
//! turnpike variants.
//!
//! Extremals of a normal lift `H(x, p)` solve the reduced system
//! `x' = ∂H/∂p`, `p' = −∂H/∂x`; a shooting function chains such flows and
//! collects boundary, matching, and transversality rows into a square
//! residual handed to [`newton_solve`].

mod goddard;
mod newton;
mod phase;
mod turnpike;
mod zermelo;

pub use goddard::{shoot_goddard, GoddardGuess, GoddardShot};
pub use newton::{newton_solve, NewtonOptions, NewtonResult};
pub use phase::{lie_bracket, lie_derivative, poisson_bracket, PhaseFn, VectorField};
pub use turnpike::{turnpike_lq, turnpike_midpoint_shoot, MidpointShot, TurnpikeLqSolution};
pub use zermelo::{
    shoot_zermelo_penalized, shoot_zermelo_turnpike, zermelo_penalized_hamiltonian, ZermeloShot,
    ZermeloTurnpikeShot,
};

use crate::error::{Error, Result};
use crate::ode::{integrate_adaptive, DenseSolution};

/// Which control law a lift embeds; metadata used when assembling arcs and
/// reporting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ControlLawKind {
    /// Control pinned at a value (a bound of the box, typically).
    Bang(f64),
    /// Singular feedback from length-three brackets.
    Singular,
    /// Boundary feedback keeping a state constraint active.
    Boundary,
    /// Regular maximized Hamiltonian.
    Regular,
}

/// A Hamiltonian with finite-difference gradient evaluation and law
/// metadata. Lifts here are autonomous (free-final-time problems drop the
/// explicit time dependence).
#[derive(Clone)]
pub struct HamiltonianLift {
    pub h: PhaseFn,
    pub law: ControlLawKind,
}

impl HamiltonianLift {
    pub fn new(h: PhaseFn, law: ControlLawKind) -> Self {
        Self { h, law }
    }

    pub fn eval(&self, x: &[f64], p: &[f64]) -> f64 {
        self.h.eval(x, p)
    }
}

/// Integrates the Hamiltonian system `x' = ∂H/∂p`, `p' = −∂H/∂x` from
/// `(x0, p0)` over `[t0, t1]` (backward if `t1 < t0`). Returns the dense
/// solution on the stacked state `(x, p)`.
pub fn flow_dense(
    lift: &HamiltonianLift,
    t0: f64,
    x0: &[f64],
    p0: &[f64],
    t1: f64,
    tol: f64,
) -> Result<DenseSolution> {
    let d = x0.len();
    let h = lift.h.clone();
    let vf = move |_t: f64, z: &[f64], out: &mut [f64]| {
        let (x, p) = z.split_at(d);
        let gp = h.grad_p(x, p);
        let gx = h.grad_x(x, p);
        out[..d].copy_from_slice(&gp);
        for i in 0..d {
            out[d + i] = -gx[i];
        }
    };
    let mut z0 = x0.to_vec();
    z0.extend_from_slice(p0);
    integrate_adaptive(vf, t0, &z0, t1, tol, tol * 1e-2)
}

/// Endpoint of the Hamiltonian flow: `(x(t1), p(t1))`.
pub fn flow(
    lift: &HamiltonianLift,
    t0: f64,
    x0: &[f64],
    p0: &[f64],
    t1: f64,
    tol: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = x0.len();
    let sol = flow_dense(lift, t0, x0, p0, t1, tol)?;
    let zf = sol.trajectory.final_state();
    Ok((zf[..d].to_vec(), zf[d..].to_vec()))
}

/// Feedback laws for a single-input control-affine system
/// `x' = F0(x) + u F1(x)` with a scalar order-one constraint `g(x) ≥ 0`
/// (active on `g = 0`):
///
/// * singular control `u_s = −H001/H101` from the length-three brackets
///   `H001 = {H0, {H0, H1}}`, `H101 = {H1, {H0, H1}}`;
/// * boundary control `u_b = −(F0·g)/(F1·g)` holding `g = 0`;
/// * constraint multiplier `μ_b = H01 / (F1·g)`.
///
/// Brackets of lifts are evaluated through the identity
/// `{H_F, H_G} = H_[F,G]`, which keeps the finite-difference nesting on the
/// vector fields where it is best conditioned; `poisson_bracket` gives the
/// same values directly on phase space.
pub struct ControlLaws {
    pub h0: PhaseFn,
    pub h1: PhaseFn,
    pub h01: PhaseFn,
    pub h001: PhaseFn,
    pub h101: PhaseFn,
    f0: VectorField,
    f1: VectorField,
    b001: VectorField,
    b101: VectorField,
    b01: VectorField,
    g: std::sync::Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl ControlLaws {
    pub fn singular_control(&self, x: &[f64], p: &[f64]) -> Result<f64> {
        let denom = self.h101.eval(x, p);
        if denom.abs() < 1e-12 {
            return Err(Error::DegenerateOrder { quantity: "H101".into() });
        }
        Ok(-self.h001.eval(x, p) / denom)
    }

    pub fn boundary_control(&self, x: &[f64]) -> Result<f64> {
        let lf1 = lie_derivative(&self.f1, |y| (self.g)(y))(x);
        if lf1.abs() < 1e-12 {
            return Err(Error::DegenerateOrder { quantity: "F1.g".into() });
        }
        let lf0 = lie_derivative(&self.f0, |y| (self.g)(y))(x);
        Ok(-lf0 / lf1)
    }

    pub fn boundary_multiplier(&self, x: &[f64], p: &[f64]) -> Result<f64> {
        let lf1 = lie_derivative(&self.f1, |y| (self.g)(y))(x);
        if lf1.abs() < 1e-12 {
            return Err(Error::DegenerateOrder { quantity: "F1.g".into() });
        }
        Ok(self.h01.eval(x, p) / lf1)
    }

    /// Bang lift `H0 + u H1` at a fixed control value.
    pub fn bang_lift(&self, u: f64) -> HamiltonianLift {
        let (h0, h1) = (self.h0.clone(), self.h1.clone());
        HamiltonianLift::new(
            PhaseFn::new(move |x, p| h0.eval(x, p) + u * h1.eval(x, p)),
            ControlLawKind::Bang(u),
        )
    }

    /// Singular lift `H(x, p, u_s(x, p), μ = 0)`; evaluates to NaN where the
    /// order-one condition degenerates, which flow integration reports as
    /// divergence.
    pub fn singular_lift(&self) -> HamiltonianLift {
        let (h0, h1) = (self.h0.clone(), self.h1.clone());
        let (h001, h101) = (self.h001.clone(), self.h101.clone());
        let noise = h001.noise;
        HamiltonianLift::new(
            PhaseFn::with_noise(
                move |x, p| {
                    let us = -h001.eval(x, p) / h101.eval(x, p);
                    h0.eval(x, p) + us * h1.eval(x, p)
                },
                noise,
            ),
            ControlLawKind::Singular,
        )
    }

    /// Boundary lift `H(x, p, u_b(x), μ_b(x, p))`.
    pub fn boundary_lift(&self) -> HamiltonianLift {
        let (h0, h1, h01) = (self.h0.clone(), self.h1.clone(), self.h01.clone());
        let (f0, f1) = (self.f0.clone(), self.f1.clone());
        let g = self.g.clone();
        let noise = h01.noise;
        HamiltonianLift::new(
            PhaseFn::with_noise(
                move |x, p| {
                    let lg0 = lie_derivative(&f0, |y| g(y))(x);
                    let lg1 = lie_derivative(&f1, |y| g(y))(x);
                    let ub = -lg0 / lg1;
                    let mu = h01.eval(x, p) / lg1;
                    h0.eval(x, p) + ub * h1.eval(x, p) + mu * g(x)
                },
                noise,
            ),
            ControlLawKind::Boundary,
        )
    }

    /// Integrates one extremal arc in structural form,
    /// `x' = F0 + u F1`, `p' = −(J_F0 + u J_F1)ᵀ p − μ ∇g`,
    /// with `(u, μ)` given by the arc's law. On the arc surfaces
    /// (`H1 = 0` for singular, `H1 = g = 0` for boundary) this coincides
    /// with the Hamiltonian flow of the corresponding lift — the feedback
    /// gradient terms are multiplied by quantities that vanish there — and
    /// it avoids nesting finite differences a level deeper.
    pub fn flow_arc(
        &self,
        kind: ControlLawKind,
        t0: f64,
        x0: &[f64],
        p0: &[f64],
        t1: f64,
        tol: f64,
    ) -> Result<DenseSolution> {
        let d = x0.len();
        let f0 = self.f0.clone();
        let f1 = self.f1.clone();
        let b001 = self.b001.clone();
        let b101 = self.b101.clone();
        let b01 = self.b01.clone();
        let g = self.g.clone();
        let vf = move |_t: f64, z: &[f64], out: &mut [f64]| {
            let (x, p) = z.split_at(d);
            let (u, mu) = match kind {
                ControlLawKind::Bang(v) => (v, 0.0),
                ControlLawKind::Regular => (f64::NAN, f64::NAN),
                ControlLawKind::Singular => {
                    let num: f64 = b001.eval(x).iter().zip(p).map(|(a, b)| a * b).sum();
                    let den: f64 = b101.eval(x).iter().zip(p).map(|(a, b)| a * b).sum();
                    (-num / den, 0.0)
                }
                ControlLawKind::Boundary => {
                    let lg0 = lie_derivative(&f0, |y| g(y))(x);
                    let lg1 = lie_derivative(&f1, |y| g(y))(x);
                    let h01: f64 = b01.eval(x).iter().zip(p).map(|(a, b)| a * b).sum();
                    (-lg0 / lg1, h01 / lg1)
                }
            };
            let v0 = f0.eval(x);
            let v1 = f1.eval(x);
            let j0 = f0.jacobian(x);
            let j1 = f1.jacobian(x);
            for i in 0..d {
                out[i] = v0[i] + u * v1[i];
            }
            // p' = −(J0 + u J1)ᵀ p − μ ∇g.
            let grad_g = if mu != 0.0 { fd_gradient(&g, x) } else { vec![0.0; d] };
            for j in 0..d {
                let mut acc = 0.0;
                for i in 0..d {
                    acc += (j0[i][j] + u * j1[i][j]) * p[i];
                }
                out[d + j] = -acc - mu * grad_g[j];
            }
        };
        let mut z0 = x0.to_vec();
        z0.extend_from_slice(p0);
        integrate_adaptive(vf, t0, &z0, t1, tol, tol * 1e-2)
    }
}

fn fd_gradient(g: &std::sync::Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>, x: &[f64]) -> Vec<f64> {
    let mut xb = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = 1e-6 * (1.0 + x[i].abs());
            xb[i] = x[i] + h;
            let gp = g(&xb);
            xb[i] = x[i] - h;
            let gm = g(&xb);
            xb[i] = x[i];
            (gp - gm) / (2.0 * h)
        })
        .collect()
}

/// Builds the feedback laws from the affine split and the constraint.
pub fn make_control_laws<G>(f0: VectorField, f1: VectorField, g: G) -> ControlLaws
where
    G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
{
    let h0 = PhaseFn::lift(f0.clone());
    let h1 = PhaseFn::lift(f1.clone());
    let b01 = lie_bracket(&f0, &f1);
    let b001 = lie_bracket(&f0, &b01);
    let b101 = lie_bracket(&f1, &b01);
    let h01 = PhaseFn::lift(b01.clone());
    let h001 = PhaseFn::lift(b001.clone());
    let h101 = PhaseFn::lift(b101.clone());
    ControlLaws { h0, h1, h01, h001, h101, f0, f1, b001, b101, b01, g: std::sync::Arc::new(g) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_particle_flows_on_straight_lines() {
        // H = |p|^2 / 2: x(t) = x0 + p0 t, p constant.
        let lift = HamiltonianLift::new(
            PhaseFn::new(|_x, p: &[f64]| 0.5 * p.iter().map(|v| v * v).sum::<f64>()),
            ControlLawKind::Regular,
        );
        let (x, p) = flow(&lift, 0.0, &[1.0, -2.0], &[0.5, 2.0], 3.0, 1e-10).unwrap();
        assert!((x[0] - 2.5).abs() < 1e-7 && (x[1] - 4.0).abs() < 1e-7);
        assert!((p[0] - 0.5).abs() < 1e-7 && (p[1] - 2.0).abs() < 1e-7);
    }

    #[test]
    fn harmonic_oscillator_conserves_energy_over_a_period() {
        let lift = HamiltonianLift::new(
            PhaseFn::new(|x: &[f64], p: &[f64]| 0.5 * (p[0] * p[0] + x[0] * x[0])),
            ControlLawKind::Regular,
        );
        let period = 2.0 * std::f64::consts::PI;
        let (x, p) = flow(&lift, 0.0, &[1.0], &[0.0], period, 1e-10).unwrap();
        let r = (x[0] * x[0] + p[0] * p[0]).sqrt();
        assert!((r - 1.0).abs() < 1e-8);
        assert!((x[0] - 1.0).abs() < 1e-6 && p[0].abs() < 1e-6);
    }

    #[test]
    fn hamiltonian_conserved_along_autonomous_flow() {
        let lift = HamiltonianLift::new(
            PhaseFn::new(|x: &[f64], p: &[f64]| p[0] * x[1] + 0.5 * p[1] * p[1] - x[0].cos()),
            ControlLawKind::Regular,
        );
        let sol = flow_dense(&lift, 0.0, &[0.3, -0.2], &[0.8, 0.1], 2.0, 1e-10).unwrap();
        let h = &lift.h;
        let h0 = h.eval(&[0.3, -0.2], &[0.8, 0.1]);
        for z in &sol.trajectory.states {
            let (x, p) = z.split_at(2);
            assert!((h.eval(x, p) - h0).abs() <= 1e-6 * (1.0 + h0.abs()));
        }
    }
}
