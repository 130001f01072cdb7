//! Double-precision mirror of the exact recurrences, for sizes where
//! rational arithmetic is too slow.
//!
//! The recurrences are the non-negative forms used by the exact solver, so
//! there is no cancellation and every coefficient keeps full relative
//! precision. To keep magnitudes bounded, z is rescaled by the radius of
//! convergence: the stored coefficient is `[zⁿuᵏ]F · ρⁿ`, which cancels in
//! every ratio of equal z-degree.

use super::EnumerationError;

pub const DEFAULT_FLOAT_ORDER: usize = 400;

fn rows(order: usize) -> Vec<Vec<f64>> {
    (0..=order).map(|n| vec![0.0; n + 1]).collect()
}

fn atom_row(n: usize, lambda: f64) -> Vec<f64> {
    let mut r = vec![0.0; n + 1];
    if n == 1 {
        r[0] = lambda;
        r[1] = lambda;
    }
    r
}

fn conv_acc(acc: &mut [f64], a: &[f64], b: &[f64], scale: f64) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let xs = x * scale;
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += xs * y;
        }
    }
}

fn ratio(rows: &[Vec<f64>], n: usize, k: usize) -> Result<f64, EnumerationError> {
    let order = rows.len() - 1;
    if n == 0 {
        return Err(EnumerationError::IndexOutOfRange { n, k });
    }
    if n > order {
        return Err(EnumerationError::TruncationExceeded { n, order });
    }
    if k > n {
        return Ok(0.0);
    }
    let (num, den) = (rows[n][k], rows[n][0]);
    // Every coefficient with k ≤ n is positive in both models.
    if !(num.is_finite() && den.is_finite() && num > 0.0 && den > 0.0) {
        return Err(EnumerationError::FloatRange { n, k });
    }
    Ok(num / den)
}

/// Float mirror of the cograph series `C`.
#[derive(Clone, Debug)]
pub struct FloatCographSeries {
    c: Vec<Vec<f64>>,
}

impl FloatCographSeries {
    pub fn compute(order: usize) -> Self {
        let lambda = 2.0 * std::f64::consts::LN_2 - 1.0;
        // L_n = λ[n=1] + Q_n and (e^L)_n = L_n + Q_n, Q_n = (1/n) Σ_{k<n} k L_k (e^L)_{n-k}.
        let mut l = vec![0.0; order + 1];
        let mut f = vec![0.0; order + 1];
        let mut q = vec![0.0; order + 1];
        f[0] = 1.0;
        for n in 1..=order {
            q[n] = (1..n).map(|k| k as f64 * l[k] * f[n - k]).sum::<f64>() / n as f64;
            l[n] = if n == 1 { lambda } else { 0.0 } + q[n];
            f[n] = l[n] + q[n];
        }
        let mut a = rows(order);
        let mut e = rows(order);
        let mut c = rows(order);
        let mut y = rows(order);
        e[0][0] = 1.0;
        for n in 1..=order {
            let mut e2 = vec![0.0; n + 1];
            for m in 1..n {
                conv_acc(&mut e2, &a[m], &e[n - m], m as f64);
            }
            for v in e2.iter_mut() {
                *v /= n as f64;
            }
            let mut c1 = vec![0.0; n + 1];
            c1[0] = q[n];
            for j in 1..n {
                for (k, &yk) in y[n - j].iter().enumerate() {
                    c1[k] += f[j] * yk;
                }
            }
            let atom = atom_row(n, lambda);
            for k in 0..=n {
                a[n][k] = atom[k] + c1[k];
                e[n][k] = e2[k] + a[n][k];
                c[n][k] = atom[k] + e2[k] + c1[k];
                y[n][k] = if k == 0 { 0.0 } else { e2[k] };
            }
            if n == 1 {
                y[1][1] += lambda;
            }
        }
        FloatCographSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn expected_x(&self, n: usize, k: usize) -> Result<f64, EnumerationError> {
        ratio(&self.c, n, k)
    }
}

/// Float mirror of the separable series `Z`.
#[derive(Clone, Debug)]
pub struct FloatSeparableSeries {
    z: Vec<Vec<f64>>,
}

impl FloatSeparableSeries {
    pub fn compute(order: usize) -> Self {
        let lambda = 3.0 - 2.0 * std::f64::consts::SQRT_2;
        // S_n = λ[n=1] + T_n with T = S²/(1−S) = S(S + T).
        let mut s = vec![0.0; order + 1];
        let mut t = vec![0.0; order + 1];
        for n in 1..=order {
            t[n] = (1..n).map(|j| s[j] * (s[n - j] + t[n - j])).sum();
            s[n] = if n == 1 { lambda } else { 0.0 } + t[n];
        }
        let mut r = vec![0.0; order + 1];
        r[0] = 1.0;
        for n in 1..=order {
            r[n] = (1..=n).map(|j| s[j] * r[n - j]).sum();
        }
        let m: Vec<f64> = (0..=order)
            .map(|n| if n == 0 { 0.0 } else { (0..=n).map(|j| r[j] * r[n - j]).sum() })
            .collect();
        let mut x = rows(order);
        let mut w = rows(order);
        let mut y = rows(order);
        let mut z = rows(order);
        for n in 1..=order {
            let mut sm = vec![0.0; n + 1];
            sm[0] = t[n];
            for j in 1..n {
                for (k, &yk) in y[n - j].iter().enumerate() {
                    sm[k] += m[j] * yk;
                }
            }
            let mut h = vec![0.0; n + 1];
            for j in 1..n {
                conv_acc(&mut h, &x[j], &w[n - j], 1.0);
            }
            let atom = atom_row(n, lambda);
            for k in 0..=n {
                x[n][k] = atom[k] + sm[k];
                w[n][k] = x[n][k] + h[k];
                z[n][k] = atom[k] + h[k] + sm[k];
                y[n][k] = if k == 0 { 0.0 } else { h[k] };
            }
            if n == 1 {
                y[1][1] += lambda;
            }
        }
        FloatSeparableSeries { z }
    }

    pub fn order(&self) -> usize {
        self.z.len() - 1
    }

    pub fn expected_z(&self, n: usize, k: usize) -> Result<f64, EnumerationError> {
        ratio(&self.z, n, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{CographSeries, SeparableSeries};
    use num_traits::ToPrimitive;

    #[test]
    fn agrees_with_exact() {
        let n = 40;
        let exact_c = CographSeries::compute(n).unwrap();
        let exact_s = SeparableSeries::compute(n).unwrap();
        let fc = FloatCographSeries::compute(n);
        let fs = FloatSeparableSeries::compute(n);
        for m in [1, 2, 5, 17, 40] {
            for k in 0..=m {
                let ex = exact_c.expected_x(m, k).unwrap().to_f64().unwrap();
                let fl = fc.expected_x(m, k).unwrap();
                assert!(((fl - ex) / ex).abs() < 1e-11, "X({m},{k}) {fl} vs {ex}");
                let ex = exact_s.expected_z(m, k).unwrap().to_f64().unwrap();
                let fl = fs.expected_z(m, k).unwrap();
                assert!(((fl - ex) / ex).abs() < 1e-11, "Z({m},{k}) {fl} vs {ex}");
            }
        }
    }

    #[test]
    fn reports_underflow() {
        let fc = FloatCographSeries::compute(400);
        assert!(fc.expected_x(100, 23).unwrap() > 0.0);
        assert!(matches!(fc.expected_x(400, 400), Err(EnumerationError::FloatRange { .. })));
        assert!(matches!(fc.expected_x(401, 1), Err(EnumerationError::TruncationExceeded { .. })));
    }
}
