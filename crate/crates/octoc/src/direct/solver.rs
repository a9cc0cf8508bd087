//! Augmented-Lagrangian method with a projected limited-memory
//! quasi-Newton inner solver.
//!
//! The outer loop maintains multiplier estimates for the equality blocks
//! and the generic inequality rows and a penalty parameter; each inner
//! solve minimizes the augmented function over the variable box. The
//! penalty grows tenfold whenever feasibility improves by less than a
//! factor of four.

use crate::error::{Error, Result};

/// Smooth problem over a box, as seen by the solver: value and gradient of
/// the objective, equality residuals, inequality rows, and their
/// gradient-transpose actions.
pub trait BoxedNlp {
    fn num_vars(&self) -> usize;
    fn num_eq(&self) -> usize;
    fn num_ineq(&self) -> usize;
    fn bounds(&self) -> &[(f64, f64)];
    fn objective(&self, z: &[f64]) -> f64;
    fn equalities(&self, z: &[f64], out: &mut [f64]);
    fn inequalities(&self, z: &[f64], out: &mut [f64]);
    /// `out = ∇F(z) + J_eq(z)ᵀ w + J_ineq(z)ᵀ v`.
    fn gradient_combination(&self, z: &[f64], w: &[f64], v: &[f64], out: &mut [f64]);
    /// Optional exact feasibility restoration: move `z` onto the equality
    /// manifold (transcriptions re-run the state recursion from the current
    /// controls). Returns whether anything was done.
    fn restore_feasibility(&self, _z: &mut [f64]) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NlpOptions {
    pub max_outer: usize,
    pub max_inner: usize,
    pub tol_feas: f64,
    pub tol_opt: f64,
    pub initial_penalty: f64,
    pub max_penalty: f64,
}

impl Default for NlpOptions {
    fn default() -> Self {
        Self {
            max_outer: 40,
            max_inner: 3000,
            tol_feas: 1e-8,
            tol_opt: 1e-6,
            initial_penalty: 10.0,
            max_penalty: 1e8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    InfeasibleStationary,
}

#[derive(Clone, Debug)]
pub struct NlpSolution {
    pub z: Vec<f64>,
    pub objective: f64,
    pub eq_multipliers: Vec<f64>,
    pub ineq_multipliers: Vec<f64>,
    /// Objective-gradient components at variables sitting on an active
    /// bound (zero elsewhere); the KKT multiplier of that bound.
    pub bound_multipliers: Vec<f64>,
    pub status: SolveStatus,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub feasibility: f64,
    pub optimality: f64,
}

fn project(z: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in z.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Projected-gradient stationarity measure `‖P(z − ∇) − z‖∞`.
fn pg_norm(z: &[f64], grad: &[f64], bounds: &[(f64, f64)]) -> f64 {
    z.iter()
        .zip(grad)
        .zip(bounds)
        .map(|((zi, gi), &(lo, hi))| ((zi - gi).clamp(lo, hi) - zi).abs())
        .fold(0.0, f64::max)
}

/// Augmented function and its gradient at fixed multipliers/penalty.
struct AugEval<'a, P: BoxedNlp> {
    nlp: &'a P,
    lambda: &'a [f64],
    mu: &'a [f64],
    rho: f64,
}

impl<P: BoxedNlp> AugEval<'_, P> {
    fn value(&self, z: &[f64], c: &mut [f64], g: &mut [f64]) -> f64 {
        self.nlp.equalities(z, c);
        self.nlp.inequalities(z, g);
        let mut val = self.nlp.objective(z);
        for (ci, li) in c.iter().zip(self.lambda) {
            val += li * ci + 0.5 * self.rho * ci * ci;
        }
        for (gi, mi) in g.iter().zip(self.mu) {
            let s = (mi + self.rho * gi).max(0.0);
            val += (s * s - mi * mi) / (2.0 * self.rho);
        }
        val
    }

    fn gradient(&self, z: &[f64], c: &[f64], g: &[f64], out: &mut [f64]) {
        let w: Vec<f64> = c.iter().zip(self.lambda).map(|(ci, li)| li + self.rho * ci).collect();
        let v: Vec<f64> = g.iter().zip(self.mu).map(|(gi, mi)| (mi + self.rho * gi).max(0.0)).collect();
        self.nlp.gradient_combination(z, &w, &v, out);
    }
}

/// Inner solve: projected L-BFGS with Armijo backtracking along the
/// projected path; falls back to the projected gradient direction when the
/// quasi-Newton direction fails to descend.
fn inner_minimize<P: BoxedNlp>(
    aug: &AugEval<'_, P>,
    z: &mut Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, usize)> {
    let n = z.len();
    let bounds = aug.nlp.bounds();
    let mut c = vec![0.0; aug.nlp.num_eq()];
    let mut g = vec![0.0; aug.nlp.num_ineq()];
    let mut grad = vec![0.0; n];
    let mut val = aug.value(z, &mut c, &mut g);
    if !val.is_finite() {
        return Err(Error::NonFiniteObjective);
    }
    aug.gradient(z, &c, &g, &mut grad);

    let memory = 10usize;
    let mut s_hist: Vec<Vec<f64>> = Vec::new();
    let mut y_hist: Vec<Vec<f64>> = Vec::new();
    let mut rho_hist: Vec<f64> = Vec::new();
    let mut iters = 0;

    for _ in 0..max_iter {
        let stat = pg_norm(z, &grad, bounds);
        if stat <= tol {
            break;
        }
        iters += 1;

        // Two-loop recursion.
        let mut dir: Vec<f64> = grad.iter().map(|v| -v).collect();
        let mut alphas = vec![0.0; s_hist.len()];
        for i in (0..s_hist.len()).rev() {
            let a = rho_hist[i] * dot(&s_hist[i], &dir);
            alphas[i] = a;
            axpy(-a, &y_hist[i], &mut dir);
        }
        if let (Some(s), Some(y)) = (s_hist.last(), y_hist.last()) {
            let gamma = dot(s, y) / dot(y, y).max(1e-300);
            dir.iter_mut().for_each(|v| *v *= gamma.max(1e-12));
        }
        for i in 0..s_hist.len() {
            let b = rho_hist[i] * dot(&y_hist[i], &dir);
            axpy(alphas[i] - b, &s_hist[i], &mut dir);
        }

        let mut improved = false;
        for fallback in 0..2 {
            if fallback == 1 {
                dir = grad.iter().map(|v| -v).collect();
            }
            let slope = dot(&grad, &dir);
            if slope >= 0.0 {
                continue;
            }
            // First trial moves no variable by more than a tenth of its
            // own scale; components such as a free time step live on much
            // smaller scales than their gradient suggests, and one raw
            // gradient step would slam them into a bound.
            let rel = z
                .iter()
                .zip(&dir)
                .map(|(zi, di)| di.abs() / (0.1 * (1.0 + zi.abs())))
                .fold(0.0f64, f64::max);
            let mut alpha = (1.0 / rel.max(1.0)).min(1.0);
            for _ in 0..60 {
                let mut trial: Vec<f64> = z.iter().zip(&dir).map(|(zi, di)| zi + alpha * di).collect();
                project(&mut trial, bounds);
                let step: Vec<f64> = trial.iter().zip(z.iter()).map(|(a, b)| a - b).collect();
                if inf_norm(&step) < 1e-15 * (1.0 + inf_norm(z)) {
                    break;
                }
                let tval = aug.value(&trial, &mut c, &mut g);
                let decrease = 1e-4 * dot(&grad, &step).min(0.0);
                if tval.is_finite() && tval <= val + decrease {
                    let mut new_grad = vec![0.0; n];
                    aug.gradient(&trial, &c, &g, &mut new_grad);
                    let y: Vec<f64> = new_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
                    let sy = dot(&step, &y);
                    if sy > 1e-12 * dot(&step, &step).sqrt() * dot(&y, &y).sqrt() {
                        s_hist.push(step);
                        y_hist.push(y);
                        rho_hist.push(1.0 / sy);
                        if s_hist.len() > memory {
                            s_hist.remove(0);
                            y_hist.remove(0);
                            rho_hist.remove(0);
                        }
                    }
                    *z = trial;
                    val = tval;
                    grad = new_grad;
                    improved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if improved {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    let stat = pg_norm(z, &grad, bounds);
    Ok((stat, iters))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Projected truncated-Newton polish: conjugate gradients on the free
/// variables with finite-difference Hessian-vector products of the
/// augmented function, then an Armijo search along the projected path.
///
/// The quasi-Newton phase cannot finish problems whose Lagrangian is
/// nearly flat in some control directions (singular arcs); curvature that
/// small is exactly what a Newton-type step exploits.
fn truncated_newton_polish<P: BoxedNlp>(
    aug: &AugEval<'_, P>,
    z: &mut Vec<f64>,
    tol: f64,
    max_steps: usize,
) -> Result<(f64, usize)> {
    let n = z.len();
    let bounds = aug.nlp.bounds();
    let mut c = vec![0.0; aug.nlp.num_eq()];
    let mut g = vec![0.0; aug.nlp.num_ineq()];
    let mut grad = vec![0.0; n];
    let mut val = aug.value(z, &mut c, &mut g);
    aug.gradient(z, &c, &g, &mut grad);
    let mut iters = 0;

    let grad_at = |zq: &[f64], cbuf: &mut Vec<f64>, gbuf: &mut Vec<f64>, out: &mut Vec<f64>| {
        let _ = aug.value(zq, cbuf, gbuf);
        aug.gradient(zq, cbuf, gbuf, out);
    };

    for _ in 0..max_steps {
        let stat = pg_norm(z, &grad, bounds);
        if stat <= tol {
            break;
        }
        iters += 1;

        // Free set: strictly inside, or on a bound with an inward gradient.
        let free: Vec<bool> = z
            .iter()
            .zip(bounds)
            .zip(&grad)
            .map(|((zi, &(lo, hi)), gi)| {
                let at_lo = *zi <= lo + 1e-10 * (1.0 + lo.abs());
                let at_hi = *zi >= hi - 1e-10 * (1.0 + hi.abs());
                !(at_lo && *gi > 0.0 || at_hi && *gi < 0.0)
            })
            .collect();
        let mask = |v: &mut [f64]| {
            for (vi, fi) in v.iter_mut().zip(&free) {
                if !fi {
                    *vi = 0.0;
                }
            }
        };

        // CG on H d = −g over the free subspace; the forcing tolerance
        // tightens with the gradient so the late steps become Newton-like.
        let mut d = vec![0.0; n];
        let mut r: Vec<f64> = grad.iter().map(|v| -v).collect();
        mask(&mut r);
        let mut p = r.clone();
        let rhs_norm = dot(&r, &r).sqrt();
        let forcing = rhs_norm.sqrt().clamp(0.01, 0.5);
        let mut rs = dot(&r, &r);
        let mut cbuf = vec![0.0; aug.nlp.num_eq()];
        let mut gbuf = vec![0.0; aug.nlp.num_ineq()];
        let mut gp = vec![0.0; n];
        let mut gm = vec![0.0; n];
        for _cg in 0..120 {
            if rs.sqrt() <= forcing * rhs_norm || rhs_norm == 0.0 {
                break;
            }
            // Hessian-vector product by central differences of the gradient.
            let pscale = p
                .iter()
                .zip(z.iter())
                .map(|(pi, zi)| pi.abs() / (1.0 + zi.abs()))
                .fold(0.0f64, f64::max);
            if pscale == 0.0 {
                break;
            }
            let h = 1e-6 / pscale;
            let zp: Vec<f64> = z.iter().zip(&p).map(|(zi, pi)| zi + h * pi).collect();
            let zm: Vec<f64> = z.iter().zip(&p).map(|(zi, pi)| zi - h * pi).collect();
            grad_at(&zp, &mut cbuf, &mut gbuf, &mut gp);
            grad_at(&zm, &mut cbuf, &mut gbuf, &mut gm);
            let mut hp: Vec<f64> = gp.iter().zip(&gm).map(|(a, b)| (a - b) / (2.0 * h)).collect();
            mask(&mut hp);
            let php = dot(&p, &hp);
            if php <= 1e-12 * dot(&p, &p) {
                // Negative/zero curvature: keep the Cauchy-like progress made.
                if dot(&d, &d) == 0.0 {
                    d = p.clone();
                }
                break;
            }
            let alpha = rs / php;
            axpy(alpha, &p, &mut d);
            axpy(-alpha, &hp, &mut r);
            let rs_new = dot(&r, &r);
            p = r.iter().zip(&p).map(|(ri, pi)| ri + (rs_new / rs) * pi).collect();
            rs = rs_new;
        }
        if dot(&d, &d) == 0.0 {
            break;
        }

        // Armijo along the projected path.
        let slope = dot(&grad, &d);
        if slope >= 0.0 {
            break;
        }
        let rel = z
            .iter()
            .zip(&d)
            .map(|(zi, di)| di.abs() / (0.25 * (1.0 + zi.abs())))
            .fold(0.0f64, f64::max);
        let mut alpha = (1.0 / rel.max(1.0)).min(1.0);
        let mut improved = false;
        for _ in 0..50 {
            let mut trial: Vec<f64> = z.iter().zip(&d).map(|(zi, di)| zi + alpha * di).collect();
            project(&mut trial, bounds);
            let step: Vec<f64> = trial.iter().zip(z.iter()).map(|(a, b)| a - b).collect();
            if inf_norm(&step) < 1e-15 * (1.0 + inf_norm(z)) {
                break;
            }
            let tval = aug.value(&trial, &mut c, &mut g);
            if tval.is_finite() && tval <= val + 1e-4 * dot(&grad, &step).min(0.0) {
                *z = trial;
                val = tval;
                aug.gradient(z, &c, &g, &mut grad);
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let stat = pg_norm(z, &grad, bounds);
    Ok((stat, iters))
}

/// Solves the boxed NLP from `guess` by the augmented-Lagrangian outer
/// loop. Exhausting the iteration budget returns the best point found with
/// `MaxIterations` status; a stalled feasibility at the penalty cap is
/// reported as `InfeasibleStationary`.
pub fn solve_nlp<P: BoxedNlp>(nlp: &P, guess: &[f64], opts: NlpOptions) -> Result<NlpSolution> {
    let n = nlp.num_vars();
    if guess.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "guess has {} entries for {} variables",
            guess.len(),
            n
        )));
    }
    let mut z = guess.to_vec();
    project(&mut z, nlp.bounds());
    if !nlp.objective(&z).is_finite() {
        return Err(Error::NonFiniteObjective);
    }

    let mut lambda = vec![0.0; nlp.num_eq()];
    let mut mu = vec![0.0; nlp.num_ineq()];
    let mut rho = opts.initial_penalty;
    let mut c = vec![0.0; nlp.num_eq()];
    let mut g = vec![0.0; nlp.num_ineq()];
    let mut feas_prev = f64::INFINITY;
    let mut inner_total = 0;
    let mut status = SolveStatus::MaxIterations;
    let mut optimality = f64::INFINITY;
    let mut outer_done = 0;
    let mut stalled_at_cap = 0;

    for outer in 0..opts.max_outer {
        outer_done = outer + 1;
        // Loose inner solves while infeasible, full polish once the
        // constraints are met.
        let inner_tol = if feas_prev <= opts.tol_feas {
            opts.tol_opt
        } else {
            opts.tol_opt.max((1.0 / rho).min(1e-2))
        };
        let aug = AugEval { nlp, lambda: &lambda, mu: &mu, rho };
        let (mut stat, inners) = inner_minimize(&aug, &mut z, inner_tol, opts.max_inner)?;
        inner_total += inners;
        if stat > inner_tol {
            let (tn_stat, tn_iters) = truncated_newton_polish(&aug, &mut z, inner_tol, 100)?;
            stat = tn_stat;
            inner_total += tn_iters;
        }
        optimality = stat;

        // Multiplier update from the pre-restoration residuals (the
        // first-order multiplier estimate at the inner minimizer).
        nlp.equalities(&z, &mut c);
        nlp.inequalities(&z, &mut g);
        for (li, ci) in lambda.iter_mut().zip(&c) {
            *li += rho * ci;
        }
        for (mi, gi) in mu.iter_mut().zip(&g) {
            *mi = (*mi + rho * gi).max(0.0);
        }

        let restored = nlp.restore_feasibility(&mut z);
        let mut bound_viol = 0.0f64;
        if restored {
            nlp.equalities(&z, &mut c);
            nlp.inequalities(&z, &mut g);
            // Restoration ignores the variable box; what sticks out is the
            // true remaining infeasibility (unreachable endpoint bounds).
            bound_viol = z
                .iter()
                .zip(nlp.bounds())
                .map(|(zi, &(lo, hi))| (lo - zi).max(zi - hi).max(0.0))
                .fold(0.0, f64::max);
            // Stationarity of the plain Lagrangian at the restored point.
            let mut grad = vec![0.0; n];
            nlp.gradient_combination(&z, &lambda, &mu, &mut grad);
            stat = pg_norm(&z, &grad, nlp.bounds());
            optimality = stat;
        }
        let feas_cons = inf_norm(&c).max(g.iter().fold(0.0f64, |a, v| a.max(v.max(0.0))));
        let feas = feas_cons.max(bound_viol);

        if feas <= opts.tol_feas && stat <= opts.tol_opt {
            status = SolveStatus::Converged;
            break;
        }

        // Structural infeasibility: constraint residuals stagnating at the
        // penalty cap, or restoration leaving the same variables the same
        // distance outside their bounds round after round (an unreachable
        // endpoint). Transient bound overshoot while the iteration is
        // moving does not count.
        let feas_stalled = feas_cons > opts.tol_feas && feas_cons > feas_prev / 4.0;
        if feas_stalled && rho >= opts.max_penalty && feas_cons > 0.9 * feas_prev {
            stalled_at_cap += 1;
        } else if bound_viol > opts.tol_feas && (bound_viol - feas_prev).abs() <= 1e-8 * (1.0 + feas_prev)
        {
            stalled_at_cap += 1;
        } else {
            stalled_at_cap = 0;
        }
        if stalled_at_cap >= 4 {
            status = SolveStatus::InfeasibleStationary;
            break;
        }
        if feas_stalled {
            rho = (rho * 10.0).min(opts.max_penalty);
        }
        feas_prev = feas;
    }

    nlp.equalities(&z, &mut c);
    nlp.inequalities(&z, &mut g);
    let feasibility = inf_norm(&c).max(g.iter().fold(0.0f64, |a, v| a.max(v.max(0.0))));

    // Bound multipliers: the combined gradient restricted to active bounds.
    let mut grad = vec![0.0; n];
    let w: Vec<f64> = lambda.clone();
    let v: Vec<f64> = mu.clone();
    nlp.gradient_combination(&z, &w, &v, &mut grad);
    let bound_multipliers: Vec<f64> = z
        .iter()
        .zip(nlp.bounds())
        .zip(&grad)
        .map(|((zi, &(lo, hi)), gi)| {
            let at_lo = (zi - lo).abs() <= 1e-9 * (1.0 + lo.abs());
            let at_hi = (hi - zi).abs() <= 1e-9 * (1.0 + hi.abs());
            if at_lo || at_hi {
                *gi
            } else {
                0.0
            }
        })
        .collect();

    Ok(NlpSolution {
        objective: nlp.objective(&z),
        z,
        eq_multipliers: lambda,
        ineq_multipliers: mu,
        bound_multipliers,
        status,
        outer_iterations: outer_done,
        inner_iterations: inner_total,
        feasibility,
        optimality,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Small dense test problem with closed-form callbacks.
    pub(crate) struct DenseNlp {
        pub n: usize,
        pub bounds: Vec<(f64, f64)>,
        pub f: Box<dyn Fn(&[f64]) -> f64>,
        pub df: Box<dyn Fn(&[f64]) -> Vec<f64>>,
        pub eq: Vec<(Box<dyn Fn(&[f64]) -> f64>, Box<dyn Fn(&[f64]) -> Vec<f64>>)>,
        pub ineq: Vec<(Box<dyn Fn(&[f64]) -> f64>, Box<dyn Fn(&[f64]) -> Vec<f64>>)>,
    }

    impl BoxedNlp for DenseNlp {
        fn num_vars(&self) -> usize {
            self.n
        }
        fn num_eq(&self) -> usize {
            self.eq.len()
        }
        fn num_ineq(&self) -> usize {
            self.ineq.len()
        }
        fn bounds(&self) -> &[(f64, f64)] {
            &self.bounds
        }
        fn objective(&self, z: &[f64]) -> f64 {
            (self.f)(z)
        }
        fn equalities(&self, z: &[f64], out: &mut [f64]) {
            for (k, (c, _)) in self.eq.iter().enumerate() {
                out[k] = c(z);
            }
        }
        fn inequalities(&self, z: &[f64], out: &mut [f64]) {
            for (k, (c, _)) in self.ineq.iter().enumerate() {
                out[k] = c(z);
            }
        }
        fn gradient_combination(&self, z: &[f64], w: &[f64], v: &[f64], out: &mut [f64]) {
            let base = (self.df)(z);
            out.copy_from_slice(&base);
            for (k, (_, dc)) in self.eq.iter().enumerate() {
                let grad = dc(z);
                for (o, gi) in out.iter_mut().zip(&grad) {
                    *o += w[k] * gi;
                }
            }
            for (k, (_, dc)) in self.ineq.iter().enumerate() {
                let grad = dc(z);
                for (o, gi) in out.iter_mut().zip(&grad) {
                    *o += v[k] * gi;
                }
            }
        }
    }

    #[test]
    fn unconstrained_quadratic() {
        let nlp = DenseNlp {
            n: 1,
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY)],
            f: Box::new(|z| (z[0] - 3.0) * (z[0] - 3.0)),
            df: Box::new(|z| vec![2.0 * (z[0] - 3.0)]),
            eq: vec![],
            ineq: vec![],
        };
        let sol = solve_nlp(&nlp, &[0.0], NlpOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Converged);
        assert!((sol.z[0] - 3.0).abs() < 1e-6);
    }

    #[test]
    fn active_bound_multiplier() {
        // min z^2 s.t. z >= 1: solution 1, bound multiplier 2.
        let nlp = DenseNlp {
            n: 1,
            bounds: vec![(1.0, f64::INFINITY)],
            f: Box::new(|z| z[0] * z[0]),
            df: Box::new(|z| vec![2.0 * z[0]]),
            eq: vec![],
            ineq: vec![],
        };
        let sol = solve_nlp(&nlp, &[5.0], NlpOptions::default()).unwrap();
        assert!((sol.z[0] - 1.0).abs() < 1e-8);
        assert!((sol.bound_multipliers[0] - 2.0).abs() < 1e-4);
    }

    #[test]
    fn equality_multiplier_matches_kkt() {
        // min z1^2 + z2^2 s.t. z1 + z2 = 1: solution (1/2, 1/2), λ = −1.
        let nlp = DenseNlp {
            n: 2,
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); 2],
            f: Box::new(|z| z[0] * z[0] + z[1] * z[1]),
            df: Box::new(|z| vec![2.0 * z[0], 2.0 * z[1]]),
            eq: vec![(Box::new(|z: &[f64]| z[0] + z[1] - 1.0), Box::new(|_| vec![1.0, 1.0]))],
            ineq: vec![],
        };
        let sol = solve_nlp(&nlp, &[2.0, -0.7], NlpOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Converged);
        assert!((sol.z[0] - 0.5).abs() < 1e-6 && (sol.z[1] - 0.5).abs() < 1e-6);
        assert!((sol.eq_multipliers[0] + 1.0).abs() < 1e-4);
    }

    #[test]
    fn strictly_convex_qp_with_inequality() {
        // min (z1-2)^2 + (z2-2)^2 s.t. z1 + z2 <= 1: KKT point (1/2, 1/2),
        // inequality multiplier 3.
        let nlp = DenseNlp {
            n: 2,
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); 2],
            f: Box::new(|z| (z[0] - 2.0).powi(2) + (z[1] - 2.0).powi(2)),
            df: Box::new(|z| vec![2.0 * (z[0] - 2.0), 2.0 * (z[1] - 2.0)]),
            eq: vec![],
            ineq: vec![(Box::new(|z: &[f64]| z[0] + z[1] - 1.0), Box::new(|_| vec![1.0, 1.0]))],
        };
        let sol = solve_nlp(&nlp, &[0.0, 0.0], NlpOptions::default()).unwrap();
        assert!((sol.z[0] - 0.5).abs() < 1e-5 && (sol.z[1] - 0.5).abs() < 1e-5);
        assert!((sol.ineq_multipliers[0] - 3.0).abs() < 1e-3);
    }

    #[test]
    fn infeasible_problem_is_flagged() {
        // z in [0, 1] with equality z = 3: no feasible point.
        let nlp = DenseNlp {
            n: 1,
            bounds: vec![(0.0, 1.0)],
            f: Box::new(|_| 0.0),
            df: Box::new(|_| vec![0.0]),
            eq: vec![(Box::new(|z: &[f64]| z[0] - 3.0), Box::new(|_| vec![1.0]))],
            ineq: vec![],
        };
        let sol = solve_nlp(&nlp, &[0.5], NlpOptions { max_outer: 60, ..Default::default() }).unwrap();
        assert_eq!(sol.status, SolveStatus::InfeasibleStationary);
        assert!((sol.z[0] - 1.0).abs() < 1e-4);
    }
}
