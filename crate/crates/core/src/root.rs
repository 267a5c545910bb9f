//! Bracketing root search for monotone functions.

/// Bisection for a non-decreasing `f` with `f(lo) <= 0 <= f(hi)`.
///
/// Stops once the bracket is narrower than `tol`, when an exact zero is hit,
/// or when the midpoint can no longer be represented strictly inside the
/// bracket (so `tol = 0.0` means "to machine precision").
pub(crate) fn bisect_increasing<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    debug_assert!(lo <= hi);
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v < 0.0 {
            lo = mid;
        } else if v > 0.0 {
            hi = mid;
        } else {
            return mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect_increasing(|x| x * x - 2.0, 0.0, 2.0, 1e-12);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn machine_precision_terminates() {
        let r = bisect_increasing(|x| x - 1.0 / 3.0, 0.0, 1.0, 0.0);
        assert!((r - 1.0 / 3.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn degenerate_bracket() {
        assert_eq!(bisect_increasing(|x| x, 3.5, 3.5, 1e-9), 3.5);
    }
}
