//! Bracketed scalar root finding.
//!
//! All production zero-finding in this crate goes through bisection inside a
//! guaranteed or scanned bracket; there are no unbracketed Newton steps.

use crate::scalar::Real;

/// Bisection on a bracket with a strict sign change, to absolute tolerance.
///
/// Requires f(lo) and f(hi) to have opposite signs (or one endpoint to vanish).
pub fn bisect<S: Real, F: Fn(S) -> S>(f: F, mut lo: S, mut hi: S, tol: S) -> S {
    let mut flo = f(lo);
    if flo == S::zero() {
        return lo;
    }
    let fhi = f(hi);
    if fhi == S::zero() {
        return hi;
    }
    debug_assert!(
        (flo < S::zero()) != (fhi < S::zero()),
        "bisect requires a sign change"
    );
    let two = S::of(2.0);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if hi - lo < tol || mid == lo || mid == hi {
            return mid;
        }
        let fmid = f(mid);
        if fmid == S::zero() {
            return mid;
        }
        if (fmid < S::zero()) == (flo < S::zero()) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// Largest sign-change root of `f` on `(lo, hi]`, located by a descending grid
/// scan followed by bisection. `None` when the scan finds no sign change.
pub fn largest_root<S: Real, F: Fn(S) -> S>(
    f: F,
    lo: S,
    hi: S,
    cells: usize,
    tol: S,
) -> Option<S> {
    let cells_s = S::of_usize(cells);
    let step = (hi - lo) / cells_s;
    let mut right = hi;
    let mut fright = f(right);
    for i in (0..cells).rev() {
        let left = lo + step * S::of_usize(i);
        let fleft = f(left);
        if fright == S::zero() {
            return Some(right);
        }
        if (fleft < S::zero()) != (fright < S::zero()) {
            return Some(bisect(&f, left, right, tol));
        }
        right = left;
        fright = fleft;
    }
    if fright == S::zero() {
        return Some(right);
    }
    None
}

/// All sign-change roots of `f` on `[lo, hi]`, ascending, by grid scan plus
/// bisection. Double roots without a sign change are not detected.
pub fn all_roots<S: Real, F: Fn(S) -> S>(f: F, lo: S, hi: S, cells: usize, tol: S) -> Vec<S> {
    let cells_s = S::of_usize(cells);
    let step = (hi - lo) / cells_s;
    let mut out = Vec::new();
    let mut left = lo;
    let mut fleft = f(left);
    for i in 1..=cells {
        let right = if i == cells { hi } else { lo + step * S::of_usize(i) };
        let fright = f(right);
        if fleft == S::zero() {
            out.push(left);
        } else if (fleft < S::zero()) != (fright < S::zero()) {
            out.push(bisect(&f, left, right, tol));
        }
        left = right;
        fleft = fright;
    }
    if fleft == S::zero() {
        out.push(left);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_linear_is_exact() {
        let r = bisect(|t: f64| 2.0 * t - 1.0, 0.0, 1.0, 1e-14);
        assert!((r - 0.5).abs() < 1e-13);
    }

    #[test]
    fn largest_root_picks_rightmost() {
        // roots at -0.5, 0.2, 0.8
        let f = |t: f64| (t + 0.5) * (t - 0.2) * (t - 0.8);
        let r = largest_root(f, -1.0, 1.0, 2000, 1e-13).unwrap();
        assert!((r - 0.8).abs() < 1e-12);
    }

    #[test]
    fn largest_root_none_when_no_sign_change() {
        let f = |t: f64| t * t + 1.0;
        assert!(largest_root(f, -1.0, 1.0, 2000, 1e-13).is_none());
    }

    #[test]
    fn all_roots_against_dense_oracle() {
        // randomized polynomials with known roots vs the scan
        let mut seed = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let k = 1 + (next() * 4.0) as usize;
            let mut roots: Vec<f64> = (0..k).map(|_| next() * 1.8 - 0.9).collect();
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if roots.windows(2).any(|w| w[1] - w[0] < 2e-4) {
                continue;
            }
            let p = crate::poly::Polynomial::from_roots(&roots);
            let found = all_roots(|t| p.eval(t), -1.0, 1.0, 20000, 1e-13);
            assert_eq!(found.len(), roots.len());
            for (f, r) in found.iter().zip(roots.iter()) {
                assert!((f - r).abs() < 1e-4, "root {} vs {}", f, r);
            }
        }
    }
}
