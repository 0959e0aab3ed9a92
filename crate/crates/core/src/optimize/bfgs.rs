//! Dense BFGS with a strong-Wolfe line search.
//!
//! The inverse Hessian approximation starts as the identity and is rescaled
//! by `y's / y'y` before the first update. Line search follows the
//! bracketing/zoom scheme with cubic interpolation; every trial point gets
//! both a value and a gradient.

use nalgebra::{DMatrix, DVector};

use super::OptimizerSettings;
use crate::error::{Error, Result};

/// Sufficient-decrease constant.
pub const WOLFE_C1: f64 = 1e-4;
/// Curvature constant.
pub const WOLFE_C2: f64 = 0.9;

const MAX_LINE_SEARCH_STEPS: usize = 40;
const MAX_STEP: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// `||grad||_inf <= tolerance`.
    GradientTolerance,
    MaxIterations,
    /// No step satisfying the Wolfe conditions was found.
    LineSearchFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BfgsOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub gradient_inf_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub termination: Termination,
    /// Objective at each accepted iterate, starting with `f(x0)`.
    pub history: Vec<f64>,
}

struct Point {
    x: DVector<f64>,
    f: f64,
    g: DVector<f64>,
}

struct Oracle<F, G> {
    objective: F,
    gradient: G,
}

impl<F, G> Oracle<F, G>
where
    F: FnMut(&[f64]) -> f64,
    G: FnMut(&[f64]) -> Vec<f64>,
{
    fn eval(&mut self, x: DVector<f64>) -> Result<Point> {
        let f = (self.objective)(x.as_slice());
        if !f.is_finite() {
            return Err(Error::NonFinite(format!("objective returned {f}")));
        }
        let g = DVector::from_vec((self.gradient)(x.as_slice()));
        if g.len() != x.len() {
            return Err(Error::ParameterLength {
                expected: x.len(),
                found: g.len(),
            });
        }
        if let Some(bad) = g.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("gradient component {bad}")));
        }
        Ok(Point { x, f, g })
    }
}

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Minimizes `objective` from `x0`.
///
/// Stops once `||grad||_inf <= settings.gradient_norm_tolerance` or after
/// `settings.max_iterations` accepted steps. A line-search failure returns
/// the best iterate so far with `converged = false`. A non-finite objective
/// or gradient aborts with [`Error::NonFinite`].
pub fn bfgs_minimize<F, G>(
    objective: F,
    gradient: G,
    x0: &[f64],
    settings: &OptimizerSettings,
) -> Result<BfgsOutcome>
where
    F: FnMut(&[f64]) -> f64,
    G: FnMut(&[f64]) -> Vec<f64>,
{
    settings.validate()?;
    let mut oracle = Oracle {
        objective,
        gradient,
    };
    let k = x0.len();
    let mut current = oracle.eval(DVector::from_column_slice(x0))?;
    let mut h_inv = DMatrix::<f64>::identity(k, k);
    let mut first_update = true;
    let mut history = vec![current.f];
    let mut iterations = 0;

    let termination = loop {
        if inf_norm(&current.g) <= settings.gradient_norm_tolerance {
            break Termination::GradientTolerance;
        }
        if iterations >= settings.max_iterations {
            break Termination::MaxIterations;
        }

        let mut direction = -(&h_inv * &current.g);
        if direction.dot(&current.g) >= 0.0 {
            // Lost positive definiteness; restart from steepest descent.
            h_inv = DMatrix::identity(k, k);
            first_update = true;
            direction = -current.g.clone();
        }

        let next = match line_search(&mut oracle, &current, &direction)? {
            Some(p) => p,
            None => break Termination::LineSearchFailed,
        };

        let s = &next.x - &current.x;
        let y = &next.g - &current.g;
        let sy = s.dot(&y);
        if sy > f64::EPSILON * s.norm() * y.norm() {
            if first_update {
                h_inv *= sy / y.dot(&y);
                first_update = false;
            }
            let rho = 1.0 / sy;
            let hy = &h_inv * &y;
            let yhy = y.dot(&hy);
            // H+ = H - rho (Hy s' + s y'H) + (rho^2 y'Hy + rho) s s'
            h_inv.ger(-rho, &hy, &s, 1.0);
            h_inv.ger(-rho, &s, &hy, 1.0);
            h_inv.ger(rho * rho * yhy + rho, &s, &s, 1.0);
        }

        current = next;
        history.push(current.f);
        iterations += 1;
    };

    Ok(BfgsOutcome {
        gradient_inf_norm: inf_norm(&current.g),
        x: current.x.as_slice().to_vec(),
        f: current.f,
        iterations,
        converged: termination == Termination::GradientTolerance,
        termination,
        history,
    })
}

/// Finds a step along `direction` satisfying the strong Wolfe conditions.
/// Returns `None` when no such step exists within the iteration budget.
fn line_search<F, G>(
    oracle: &mut Oracle<F, G>,
    start: &Point,
    direction: &DVector<f64>,
) -> Result<Option<Point>>
where
    F: FnMut(&[f64]) -> f64,
    G: FnMut(&[f64]) -> Vec<f64>,
{
    let f0 = start.f;
    let d0 = start.g.dot(direction);
    let mut trial = |alpha: f64| -> Result<(Point, f64)> {
        let p = oracle.eval(&start.x + direction * alpha)?;
        let d = p.g.dot(direction);
        Ok((p, d))
    };

    let mut prev = Sample {
        alpha: 0.0,
        f: f0,
        d: d0,
    };
    let mut alpha = 1.0;
    for i in 0..MAX_LINE_SEARCH_STEPS {
        let (p, d) = trial(alpha)?;
        let cur = Sample { alpha, f: p.f, d };
        if p.f > f0 + WOLFE_C1 * alpha * d0 || (i > 0 && p.f >= prev.f) {
            return zoom(&mut trial, f0, d0, prev, cur);
        }
        if d.abs() <= -WOLFE_C2 * d0 {
            return Ok(Some(p));
        }
        if d >= 0.0 {
            return zoom(&mut trial, f0, d0, cur, prev);
        }
        prev = cur;
        alpha = (2.0 * alpha).min(MAX_STEP);
        if prev.alpha >= MAX_STEP {
            break;
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    alpha: f64,
    f: f64,
    d: f64,
}

fn zoom<T>(trial: &mut T, f0: f64, d0: f64, mut lo: Sample, mut hi: Sample) -> Result<Option<Point>>
where
    T: FnMut(f64) -> Result<(Point, f64)>,
{
    for _ in 0..MAX_LINE_SEARCH_STEPS {
        let width = hi.alpha - lo.alpha;
        if width.abs() <= f64::EPSILON * lo.alpha.abs().max(1.0) {
            break;
        }
        let alpha = cubic_minimizer(lo, hi)
            .filter(|a| {
                let (a_min, a_max) = if lo.alpha < hi.alpha {
                    (lo.alpha, hi.alpha)
                } else {
                    (hi.alpha, lo.alpha)
                };
                let margin = 0.1 * width.abs();
                *a > a_min + margin && *a < a_max - margin
            })
            .unwrap_or(lo.alpha + 0.5 * width);

        let (p, d) = trial(alpha)?;
        if p.f > f0 + WOLFE_C1 * alpha * d0 || p.f >= lo.f {
            hi = Sample { alpha, f: p.f, d };
        } else {
            if d.abs() <= -WOLFE_C2 * d0 {
                return Ok(Some(p));
            }
            if d * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = Sample { alpha, f: p.f, d };
        }
    }
    Ok(None)
}

/// Minimizer of the cubic interpolating values and slopes at both ends.
fn cubic_minimizer(a: Sample, b: Sample) -> Option<f64> {
    let d1 = a.d + b.d - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    let disc = d1 * d1 - a.d * b.d;
    if disc < 0.0 {
        return None;
    }
    let d2 = (b.alpha - a.alpha).signum() * disc.sqrt();
    let denom = b.d - a.d + 2.0 * d2;
    if denom == 0.0 {
        return None;
    }
    let alpha = b.alpha - (b.alpha - a.alpha) * (b.d + d2 - d1) / denom;
    alpha.is_finite().then_some(alpha)
}
