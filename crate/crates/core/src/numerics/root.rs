use crate::error::{EosError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolution {
    pub root: f64,
    /// Residual g(root).
    pub residual: f64,
    /// Number of Newton/bisection updates performed.
    pub iterations: usize,
}

/// Finds the root of a monotone function on `[lo, hi]`.
///
/// `g` returns the residual and its derivative. Newton steps are taken while
/// they stay strictly inside the current bracket; otherwise the bracket is
/// bisected. Iteration stops once a step is below `tol_rel·|x|` or the bracket
/// has collapsed to that width. The returned root always lies in the initial
/// bracket.
pub fn solve_monotone<G>(
    mut g: G,
    lo: f64,
    hi: f64,
    guess: Option<f64>,
    tol_rel: f64,
    max_iter: usize,
) -> Result<RootSolution>
where
    G: FnMut(f64) -> (f64, f64),
{
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (g_lo, _) = g(lo);
    if g_lo == 0.0 {
        return Ok(RootSolution { root: lo, residual: 0.0, iterations: 0 });
    }
    let (g_hi, _) = g(hi);
    if g_hi == 0.0 {
        return Ok(RootSolution { root: hi, residual: 0.0, iterations: 0 });
    }
    if !(g_lo.is_finite() && g_hi.is_finite()) || g_lo.signum() == g_hi.signum() {
        return Err(EosError::Bracket { lo, hi, g_lo, g_hi });
    }

    // Orient so that g(neg) < 0 < g(pos).
    let (mut neg, mut pos) = if g_lo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = match guess {
        Some(x0) if x0 > lo && x0 < hi => x0,
        _ => 0.5 * (lo + hi),
    };
    let mut last_step = f64::INFINITY;

    for iteration in 1..=max_iter {
        let (gx, dgx) = g(x);
        if gx == 0.0 {
            return Ok(RootSolution { root: x, residual: 0.0, iterations: iteration });
        }
        if gx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let (left, right) = if neg < pos { (neg, pos) } else { (pos, neg) };

        let newton = x - gx / dgx;
        let next = if dgx != 0.0 && newton.is_finite() && newton > left && newton < right {
            newton
        } else {
            0.5 * (left + right)
        };
        last_step = next - x;
        x = next;

        let scale = x.abs().max(f64::MIN_POSITIVE);
        if last_step.abs() <= tol_rel * scale || (right - left) <= tol_rel * scale {
            let (residual, _) = g(x);
            return Ok(RootSolution { root: x, residual, iterations: iteration });
        }
    }
    Err(EosError::Convergence { iterations: max_iter, last_step })
}
