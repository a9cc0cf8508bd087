//! Long-horizon structure of the linear-quadratic problem: the static
//! optimality system, hyperbolicity of the extremal matrix, and the
//! midpoint variant of the shooting method that exploits both.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::Trajectory;
use crate::ode::integrate_adaptive;
use crate::problems::LqSpec;
use crate::shooting::{newton_solve, NewtonOptions};

/// Static triple and the extremal matrix of an LQ problem.
#[derive(Clone, Debug)]
pub struct TurnpikeLqSolution {
    pub x_bar: DVector<f64>,
    pub u_bar: DVector<f64>,
    pub p_bar: DVector<f64>,
    /// Extremal matrix `M = [[A, B R⁻¹ Bᵀ], [Q, −Aᵀ]]`.
    pub m: DMatrix<f64>,
    /// Constant part of the extremal system, `(B û, −Q x̂)`.
    pub c: DVector<f64>,
    /// Spectral abscissa gap `ν = min |Re λ(M)| > 0`.
    pub nu: f64,
    pub eigenvalues: Vec<(f64, f64)>,
}

/// Solves the static optimality system
/// `A x̄ + B R⁻¹ Bᵀ p̄ + B û = 0`, `Q x̄ − Aᵀ p̄ − Q x̂ = 0`
/// by one linear solve, assembles `M`, and checks hyperbolicity
/// (`|Re λ| ≥ ν > 0` for every eigenvalue).
pub fn turnpike_lq(spec: &LqSpec) -> Result<TurnpikeLqSolution> {
    spec.validate()?;
    let d = spec.state_dim();
    let a = spec.a_mat();
    let b = spec.b_mat();
    let q = spec.q_mat();
    let r = spec.r_mat();
    let r_inv = r.clone().try_inverse().ok_or_else(|| {
        Error::InvalidArgument("R is not invertible".into())
    })?;
    let brb = &b * &r_inv * b.transpose();
    let x_ref = DVector::from_vec(spec.x_ref.clone());
    let u_ref = DVector::from_vec(spec.u_ref.clone());

    let mut m = DMatrix::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(&a);
    m.view_mut((0, d), (d, d)).copy_from(&brb);
    m.view_mut((d, 0), (d, d)).copy_from(&q);
    m.view_mut((d, d), (d, d)).copy_from(&(-a.transpose()));

    let bu = &b * &u_ref;
    let qx = &q * &x_ref;
    let mut c = DVector::zeros(2 * d);
    c.rows_mut(0, d).copy_from(&bu);
    c.rows_mut(d, d).copy_from(&(-&qx));

    // Hyperbolicity first: a near-imaginary eigenvalue flags a Kalman
    // violation before the (then singular) static solve is attempted.
    let eig = m.complex_eigenvalues();
    let eigenvalues: Vec<(f64, f64)> = eig.iter().map(|z| (z.re, z.im)).collect();
    let nu = eigenvalues.iter().map(|(re, _)| re.abs()).fold(f64::INFINITY, f64::min);
    if nu < 1e-10 {
        return Err(Error::NotHyperbolic);
    }

    // M (x̄, p̄) = −c.
    let sol = m
        .clone()
        .lu()
        .solve(&(-&c))
        .ok_or_else(|| Error::InvalidArgument("static optimality system is singular".into()))?;
    let x_bar = sol.rows(0, d).into_owned();
    let p_bar = sol.rows(d, d).into_owned();
    let u_bar = &u_ref + &r_inv * b.transpose() * &p_bar;

    Ok(TurnpikeLqSolution { x_bar, u_bar, p_bar, m, c, nu, eigenvalues })
}

/// Extremal of the midpoint shot: full `(x, p)` run on `[0, T]`.
#[derive(Clone, Debug)]
pub struct MidpointShot {
    pub midpoint: Vec<f64>,
    pub trajectory: Trajectory,
    pub costates: Vec<Vec<f64>>,
    pub controls: Vec<Vec<f64>>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Midpoint shooting on the LQ extremal system: the unknown is
/// `z(T/2) ∈ ℝ^{2d}`, initialized at the static pair `(x̄, p̄)`; the system
/// is integrated backward to `0` and forward to `T`, and Newton drives
/// `(x(0) − x0, x(T) − x1)` to zero.
pub fn turnpike_midpoint_shoot(spec: &LqSpec, horizon: f64) -> Result<MidpointShot> {
    let stat = turnpike_lq(spec)?;
    let d = spec.state_dim();
    let m = stat.m.clone();
    let c = stat.c.clone();
    let vf = move |_t: f64, z: &[f64], out: &mut [f64]| {
        let zv = DVector::from_column_slice(z);
        let dz = &m * zv + &c;
        out.copy_from_slice(dz.as_slice());
    };

    let x0 = spec.x0.clone();
    let x1 = spec.x1.clone();
    let residual = |z_mid: &[f64]| -> Result<Vec<f64>> {
        let back = integrate_adaptive(&vf, horizon / 2.0, z_mid, 0.0, 1e-11, 1e-13)?;
        let fwd = integrate_adaptive(&vf, horizon / 2.0, z_mid, horizon, 1e-11, 1e-13)?;
        let zb = back.trajectory.final_state();
        let zf = fwd.trajectory.final_state();
        let mut r = Vec::with_capacity(2 * d);
        for i in 0..d {
            r.push(zb[i] - x0[i]);
        }
        for i in 0..d {
            r.push(zf[i] - x1[i]);
        }
        Ok(r)
    };

    let mut z0: Vec<f64> = stat.x_bar.iter().cloned().collect();
    z0.extend(stat.p_bar.iter().cloned());
    let res = newton_solve(residual, &z0, NewtonOptions { tol: 1e-9, max_iter: 40, ..Default::default() })?;

    let back = integrate_adaptive(&vf, horizon / 2.0, &res.z, 0.0, 1e-11, 1e-13)?;
    let fwd = integrate_adaptive(&vf, horizon / 2.0, &res.z, horizon, 1e-11, 1e-13)?;

    let r_inv = spec.r_mat().try_inverse().expect("validated");
    let bt = spec.b_mat().transpose();
    let u_ref = DVector::from_vec(spec.u_ref.clone());
    let control_of = |p: &[f64]| -> Vec<f64> {
        let pv = DVector::from_column_slice(p);
        (&u_ref + &r_inv * &bt * pv).iter().cloned().collect()
    };

    let n_half = 200;
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut costates = Vec::new();
    let mut controls = Vec::new();
    for k in 0..=(2 * n_half) {
        let t = horizon * k as f64 / (2 * n_half) as f64;
        let z = if t <= horizon / 2.0 { back.eval(t) } else { fwd.eval(t) };
        times.push(t);
        states.push(z[..d].to_vec());
        costates.push(z[d..].to_vec());
        if k < 2 * n_half {
            controls.push(control_of(&z[d..]));
        }
    }
    let trajectory = Trajectory { times, states, controls: controls.clone(), running_cost_integral: 0.0 };
    Ok(MidpointShot {
        midpoint: res.z,
        trajectory,
        costates,
        controls,
        residual_norm: res.residual_norm,
        iterations: res.iterations,
    })
}

/// Closed-form extremal of the LQ two-point problem via the matrix
/// exponential, used as the independent reference for the shooting route:
/// solves `z' = M z + c`, `x(0) = x0`, `x(T) = x1` exactly (up to the
/// quadrature of the exponential integral) and evaluates `z(t)`.
pub struct LqBvpReference {
    m: DMatrix<f64>,
    c: DVector<f64>,
    z0: DVector<f64>,
    d: usize,
}

impl LqBvpReference {
    pub fn new(spec: &LqSpec, horizon: f64) -> Result<Self> {
        let stat = turnpike_lq(spec)?;
        let d = spec.state_dim();
        let n = 2 * d;
        // z(T) = E z(0) + w with E = e^{MT}, w = ∫_0^T e^{M(T-s)} c ds.
        // Using the augmented matrix [[M, c], [0, 0]]: its exponential's top
        // right block applied to 1 is exactly w.
        let mut aug = DMatrix::zeros(n + 1, n + 1);
        aug.view_mut((0, 0), (n, n)).copy_from(&stat.m);
        aug.view_mut((0, n), (n, 1)).copy_from(&stat.c);
        let e_aug = (aug * horizon).exp();
        let e = e_aug.view((0, 0), (n, n)).into_owned();
        let w = e_aug.view((0, n), (n, 1)).into_owned();

        // Unknown p(0): x-rows of E (x0, p0) + w = x1.
        let exx = e.view((0, 0), (d, d)).into_owned();
        let exp = e.view((0, d), (d, d)).into_owned();
        let x0 = DVector::from_vec(spec.x0.clone());
        let x1 = DVector::from_vec(spec.x1.clone());
        let rhs = &x1 - &exx * &x0 - w.rows(0, d);
        let p0 = exp
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidArgument("LQ boundary system is singular".into()))?;
        let mut z0 = DVector::zeros(n);
        z0.rows_mut(0, d).copy_from(&x0);
        z0.rows_mut(d, d).copy_from(&p0);
        Ok(Self { m: stat.m, c: stat.c, z0, d })
    }

    /// Exact extremal `(x(t), p(t))`.
    pub fn eval(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.m.nrows();
        let mut aug = DMatrix::zeros(n + 1, n + 1);
        aug.view_mut((0, 0), (n, n)).copy_from(&self.m);
        aug.view_mut((0, n), (n, 1)).copy_from(&self.c);
        let e_aug = (aug * t).exp();
        let z = e_aug.view((0, 0), (n, n)) * &self.z0 + e_aug.view((0, n), (n, 1));
        (z.as_slice()[..self.d].to_vec(), z.as_slice()[self.d..].to_vec())
    }
}
