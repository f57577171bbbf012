//! One-dimensional helpers used by the exponent programs.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimisation on `[lo, hi]`; returns the best point seen.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        for (x, fx) in [(c, fc), (d, fd)] {
            if fx < best.1 {
                best = (x, fx);
            }
        }
    }
    for x in [lo, hi] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Minimum over a uniform grid of `points` on `[lo, hi]`, refined by golden
/// section around the best grid point.
pub(crate) fn grid_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f64::INFINITY);
    for i in 0..points {
        let x = lo + step * i as f64;
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    let refined = golden_min(&mut f, (best.0 - step).max(lo), (best.0 + step).min(hi), 60);
    if refined.1 < best.1 {
        refined
    } else {
        best
    }
}

/// Maximum of `f` on `[lo, hi]` via [`grid_min`] on `-f`.
pub(crate) fn grid_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let (x, v) = grid_min(|x| -f(x), lo, hi, points);
    (x, -v)
}

/// A root of `f` on `[lo, hi]` by bisection, assuming a sign change.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}
