//! Damped Newton method on square residual maps.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Relative central-difference step for the Jacobian.
    pub fd_step: f64,
    pub max_backtracks: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 50, fd_step: 1e-6, max_backtracks: 20 }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonResult {
    pub z: Vec<f64>,
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Finds `z` with `‖G(z)‖∞ ≤ tol` by damped Newton with a
/// central-difference Jacobian and backtracking (step halving) on the
/// residual norm.
///
/// `G` may fail on a trial point (flow divergence, ordering violation,
/// barrier crossing); a failed trial is treated as a non-decreasing
/// residual and the step is halved. Failure at the starting point is an
/// error.
pub fn newton_solve<G>(mut g: G, z0: &[f64], opts: NewtonOptions) -> Result<NewtonResult>
where
    G: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let n = z0.len();
    let mut z = z0.to_vec();
    let mut r = g(&z)?;
    if r.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "residual dimension {} != unknown dimension {}",
            r.len(),
            n
        )));
    }
    let mut rnorm = inf_norm(&r);

    for iter in 0..opts.max_iter {
        if rnorm <= opts.tol {
            return Ok(NewtonResult { z, residual: r, residual_norm: rnorm, iterations: iter });
        }

        // Central-difference Jacobian, column by column; a one-sided
        // fallback keeps a column usable when one probe fails.
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let h = opts.fd_step * (1.0 + z[j].abs());
            let mut zp = z.clone();
            zp[j] += h;
            let mut zm = z.clone();
            zm[j] -= h;
            let col: Vec<f64> = match (g(&zp), g(&zm)) {
                (Ok(rp), Ok(rm)) => {
                    rp.iter().zip(&rm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
                }
                (Ok(rp), Err(_)) => rp.iter().zip(&r).map(|(a, b)| (a - b) / h).collect(),
                (Err(_), Ok(rm)) => r.iter().zip(&rm).map(|(a, b)| (a - b) / h).collect(),
                (Err(_), Err(_)) => return Err(Error::NoDecrease { iter }),
            };
            for i in 0..n {
                jac[(i, j)] = col[i];
            }
        }

        let svd = jac.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin <= 0.0 || smax / smin > 1e14 {
            return Err(Error::SingularJacobian { cond: if smin > 0.0 { smax / smin } else { f64::INFINITY } });
        }

        let rhs = DVector::from_iterator(n, r.iter().map(|v| -v));
        let step = jac
            .lu()
            .solve(&rhs)
            .ok_or(Error::SingularJacobian { cond: f64::INFINITY })?;

        // Backtracking on ‖G‖∞.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_backtracks {
            let trial: Vec<f64> = z.iter().zip(step.iter()).map(|(zi, di)| zi + lambda * di).collect();
            match g(&trial) {
                Ok(rt) => {
                    let tn = inf_norm(&rt);
                    if tn < rnorm || tn <= opts.tol {
                        z = trial;
                        r = rt;
                        rnorm = tn;
                        accepted = true;
                        break;
                    }
                }
                Err(_) => {}
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NoDecrease { iter });
        }
        if rnorm <= opts.tol {
            return Ok(NewtonResult { z, residual: r, residual_norm: rnorm, iterations: iter + 1 });
        }
    }
    Err(Error::MaxIterations(opts.max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_root() {
        let res = newton_solve(|z| Ok(vec![z[0] * z[0] - 4.0]), &[3.0], NewtonOptions::default())
            .unwrap();
        assert!((res.z[0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn affine_map_solves_in_one_iteration() {
        // G(z) = A z - b with A = [[2, 1], [0, 3]], b = (5, 9): z = (1, 3).
        let res = newton_solve(
            |z| Ok(vec![2.0 * z[0] + z[1] - 5.0, 3.0 * z[1] - 9.0]),
            &[10.0, -4.0],
            NewtonOptions { tol: 1e-8, ..Default::default() },
        )
        .unwrap();
        assert_eq!(res.iterations, 1);
        assert!((res.z[0] - 1.0).abs() < 1e-6 && (res.z[1] - 3.0).abs() < 1e-6);
    }

    #[test]
    fn circle_line_intersection() {
        let res = newton_solve(
            |z| Ok(vec![z[0] * z[0] + z[1] * z[1] - 1.0, z[0] - z[1]]),
            &[1.0, 0.0],
            NewtonOptions::default(),
        )
        .unwrap();
        let s = 0.5f64.sqrt();
        assert!((res.z[0] - s).abs() < 1e-8 && (res.z[1] - s).abs() < 1e-8);
    }

    #[test]
    fn singular_jacobian_is_reported() {
        let res = newton_solve(
            |z| Ok(vec![z[0] + z[1] - 1.0, 2.0 * (z[0] + z[1]) - 2.0]),
            &[0.0, 0.0],
            NewtonOptions::default(),
        );
        assert!(matches!(res, Err(Error::SingularJacobian { .. })));
    }

    #[test]
    fn max_iterations_is_reported() {
        // No root: G(z) = z^2 + 1 > 0; Newton stalls then errors.
        let res = newton_solve(
            |z| Ok(vec![z[0] * z[0] + 1.0]),
            &[0.5],
            NewtonOptions { max_iter: 5, ..Default::default() },
        );
        assert!(matches!(res, Err(Error::NoDecrease { .. }) | Err(Error::MaxIterations(_))));
    }
}
