/// Root of an increasing function on `[lo, hi]` by bisection, to an
/// absolute width `tol`.
pub fn bisect_increasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum of a unimodal function on `[a, b]` by golden-section search.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `x − ln(1 + x)` without cancellation for small `|x|`.
pub(crate) fn x_minus_ln1p(x: f64) -> f64 {
    if x.abs() < 0.1 {
        // Σ_{k≥2} (−1)^k x^k / k
        let mut term = x * x;
        let mut sum: f64 = 0.0;
        let mut k = 2.0;
        let mut sign = 1.0;
        while term.abs() > 1e-20 * sum.abs().max(f64::MIN_POSITIVE) && k < 80.0 {
            sum += sign * term / k;
            term *= x;
            sign = -sign;
            k += 1.0;
        }
        sum
    } else {
        x - x.ln_1p()
    }
}
