//! Derivative-free box minimization: coordinate-wise golden-section descent
//! restarted from a uniform grid over the box.

use crate::scalar::Real;

const GOLDEN_EVALS: usize = 56;

/// Golden-section search for a minimum on [lo, hi] with a fixed evaluation
/// budget. Returns (argmin, min).
pub fn golden_section_min<S: Real, F: Fn(S) -> S>(f: F, mut lo: S, mut hi: S, evals: usize) -> (S, S) {
    let phi = S::of(0.618_033_988_749_894_9);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 2..evals.max(3) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimize over a box by coordinate-wise golden-section passes, restarted
/// from a `starts_per_dim`^d grid (plus an optional warm start), within a
/// total evaluation budget.
pub fn minimize_box<S: Real, F: Fn(&[S]) -> S>(
    f: F,
    lo: &[S],
    hi: &[S],
    starts_per_dim: usize,
    budget: usize,
    warm: Option<&[S]>,
) -> (Vec<S>, S) {
    let d = lo.len();
    assert_eq!(hi.len(), d);
    let mut starts: Vec<Vec<S>> = Vec::new();
    if let Some(w) = warm {
        starts.push(w.to_vec());
    }
    let g = starts_per_dim.max(2);
    let mut index = vec![0usize; d];
    loop {
        let point: Vec<S> = (0..d)
            .map(|i| {
                let frac = S::of_usize(index[i]) / S::of_usize(g - 1);
                lo[i] + (hi[i] - lo[i]) * frac
            })
            .collect();
        starts.push(point);
        let mut carry = true;
        for idx in index.iter_mut() {
            if carry {
                *idx += 1;
                if *idx == g {
                    *idx = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            break;
        }
    }

    let mut used = 0usize;
    let mut best_x: Vec<S> = starts[0].clone();
    let mut best_v = S::infinity();
    let pass_tol = S::of(1e-12);
    for start in starts {
        if used >= budget {
            break;
        }
        let mut x = start;
        let mut v = f(&x);
        used += 1;
        for _pass in 0..50 {
            let mut improved = false;
            for i in 0..d {
                let line = |t: S| {
                    let mut y = x.clone();
                    y[i] = t;
                    f(&y)
                };
                let (xt, vt) = golden_section_min(line, lo[i], hi[i], GOLDEN_EVALS);
                used += GOLDEN_EVALS;
                if vt < v {
                    if v - vt > pass_tol {
                        improved = true;
                    }
                    x[i] = xt;
                    v = vt;
                }
            }
            if !improved || used >= budget {
                break;
            }
        }
        if v < best_v {
            best_v = v;
            best_x = x;
        }
    }
    (best_x, best_v)
}

/// Dense-grid 1-D minimization with a golden-section polish around the best
/// cell. Deterministic and robust to multimodality at the grid scale.
pub fn minimize_grid_1d<S: Real, F: Fn(S) -> S>(f: F, lo: S, hi: S, cells: usize) -> (S, S) {
    let mut best_x = lo;
    let mut best_v = S::infinity();
    for i in 0..=cells {
        let x = lo + (hi - lo) * S::of_usize(i) / S::of_usize(cells);
        let v = f(x);
        if v < best_v {
            best_v = v;
            best_x = x;
        }
    }
    let w = (hi - lo) / S::of_usize(cells) * S::of(2.0);
    let a = if best_x - w > lo { best_x - w } else { lo };
    let b = if best_x + w < hi { best_x + w } else { hi };
    let (x2, v2) = golden_section_min(&f, a, b, 64);
    if v2 < best_v {
        (x2, v2)
    } else {
        (best_x, best_v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_min() {
        let (x, v) = golden_section_min(|t: f64| (t - 0.3).powi(2), -1.0, 1.0, 60);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v < 1e-17);
    }

    #[test]
    fn box_minimizer_two_dim() {
        let f = |x: &[f64]| (x[0] - 0.25).powi(2) + (x[1] + 0.5).powi(2);
        let (x, v) = minimize_box(f, &[-1.0, -1.0], &[1.0, 1.0], 5, 10_000, None);
        assert!((x[0] - 0.25).abs() < 1e-7);
        assert!((x[1] + 0.5).abs() < 1e-7);
        assert!(v < 1e-13);
    }

    #[test]
    fn grid_1d_escapes_local_minimum() {
        // two valleys; the global one is narrow
        let f = |t: f64| {
            let broad = (t - 0.6).powi(2) + 0.05;
            let narrow = 40.0 * (t + 0.7).powi(2);
            broad.min(narrow)
        };
        let (x, _) = minimize_grid_1d(f, -1.0, 1.0, 400);
        assert!((x + 0.7).abs() < 1e-3);
    }
}
