//! Safeguarded scalar root finding for strictly increasing maps.
//!
//! The solver brackets by geometric expansion around the initial guess
//! (half-width 1, doubling) and then runs Newton iterations that fall back
//! to bisection whenever a step would leave the bracket or the derivative
//! is unusable. For a strictly increasing map with a finite root the
//! expansion terminates, and the bisection safeguard makes every iteration
//! shrink the bracket, so the loop cannot stall.

use crate::error::{Error, Result};

/// Expansion stops once the bracket would extend past this magnitude
/// beyond the starting point.
const BRACKET_LIMIT: f64 = 1e8;

/// Iteration cap for the Newton/bisection loop.
const MAX_ITERATIONS: usize = 200;

/// Outcome of a monotone scalar solve.
#[derive(Debug, Clone)]
pub struct RootSolve {
    /// Point with `|phi(root)| <= tol`.
    pub root: f64,
    /// Residual actually achieved.
    pub residual: f64,
    /// Newton/bisection iterations used (bracketing excluded).
    pub iterations: usize,
    /// Iterates visited, ending at the root.
    pub path: Vec<f64>,
}

/// Solve `phi(t) = 0` for nondecreasing `phi` starting from `guess`.
///
/// `dphi` supplies the derivative for Newton steps; any non-finite or
/// non-positive value at an iterate demotes that step to bisection.
pub fn solve_monotone(
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    guess: f64,
    tol: f64,
) -> Result<RootSolve> {
    debug_assert!(tol >= 0.0);
    let mut path = Vec::new();

    let at_guess = phi(guess);
    if at_guess.abs() <= tol {
        path.push(guess);
        return Ok(RootSolve { root: guess, residual: at_guess.abs(), iterations: 0, path });
    }

    let (mut lo, mut hi) = bracket(&phi, guess, at_guess)?;

    let mut t = guess.clamp(lo, hi);
    let mut iterations = 0;
    let mut value = phi(t);
    loop {
        path.push(t);
        if value.abs() <= tol {
            return Ok(RootSolve { root: t, residual: value.abs(), iterations, path });
        }
        if iterations >= MAX_ITERATIONS {
            return Err(Error::ToleranceNotReached {
                residual: value.abs(),
                tol,
                iterations,
            });
        }
        iterations += 1;

        if value > 0.0 {
            hi = t;
        } else {
            lo = t;
        }

        let slope = dphi(t);
        let newton = t - value / slope;
        t = if slope.is_finite() && slope > 0.0 && newton.is_finite() && newton > lo && newton < hi
        {
            newton
        } else {
            0.5 * (lo + hi)
        };
        value = phi(t);
    }
}

/// Expand `[guess - w, guess + w]` (w doubling from 1) until the increasing
/// map changes sign across the interval.
fn bracket(phi: &impl Fn(f64) -> f64, guess: f64, at_guess: f64) -> Result<(f64, f64)> {
    let mut width = 1.0f64;
    loop {
        let (lo, hi) = (guess - width, guess + width);
        // One-sided probing: monotonicity tells us which side the root is on.
        if at_guess > 0.0 {
            let at_lo = phi(lo);
            if at_lo <= 0.0 {
                return Ok((lo, guess));
            }
        } else {
            let at_hi = phi(hi);
            if at_hi >= 0.0 {
                return Ok((guess, hi));
            }
        }
        if width > BRACKET_LIMIT {
            return Err(Error::BracketExpansionExceeded { start: guess, limit: BRACKET_LIMIT });
        }
        width *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root_is_exact() {
        let s = solve_monotone(|t| 2.0 * t - 1.0, |_| 2.0, 0.0, 1e-14).unwrap();
        assert_eq!(s.root, 0.5);
    }

    #[test]
    fn finds_root_far_from_guess() {
        // Root at 1000, guess at 0: expansion must walk out.
        let s = solve_monotone(|t| t - 1000.0, |_| 1.0, 0.0, 1e-12).unwrap();
        assert!((s.root - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn expansion_limit_is_enforced() {
        let err = solve_monotone(|t| t - 1e9, |_| 1.0, 0.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::BracketExpansionExceeded { .. }));
    }

    #[test]
    fn survives_bad_derivative() {
        // Zero derivative forces pure bisection; still converges.
        let s = solve_monotone(|t| t.tanh() - 0.5, |_| 0.0, 0.0, 1e-13).unwrap();
        assert!((s.root - 0.5493061443340548f64).abs() < 1e-12);
    }

    #[test]
    fn path_ends_at_root() {
        let s = solve_monotone(|t| t + t.tanh() - 0.5, |t| 1.0 + t.cosh().powi(-2), 0.5, 1e-14)
            .unwrap();
        assert_eq!(*s.path.last().unwrap(), s.root);
    }
}
