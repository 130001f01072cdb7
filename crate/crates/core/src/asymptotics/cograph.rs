//! Cograph side: `y = L(r(u)) ∈ (0, log 2)` parametrises the solutions of
//! `G(r, s, u) = s`, `G_c(r, s, u) = 1`, where
//! `G(z,c,u) = e^L − 1 − L + (e^L − 1)(e^{c + z(1+u)} − 1 − c − L)`.
//!
//! Internally the curve is parametrised by `d = log 2 − y`, which keeps
//! full relative precision as `β → 0`.

use std::f64::consts::LN_2;
use std::sync::OnceLock;

use super::numerics::x_minus_ln1p;
use super::AsymptoticsError;

/// Radius of convergence of `L`.
pub const RHO: f64 = 2.0 * LN_2 - 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CographCharPoint {
    pub y: f64,
    pub u: f64,
    pub r: f64,
    pub s: f64,
    pub beta: f64,
    /// Growth constant `C_β`.
    pub c: f64,
}

struct Raw {
    u: f64,
    ln_u: f64,
    r: f64,
    ln_r: f64,
    beta: f64,
}

/// Below this `y` the curve is parametrised by `t = ln y`; above it by
/// `d = log 2 − y`.
const Y_SPLIT: f64 = 0.25;

/// Near the singular end, `d = log 2 − y` small.
fn raw_d(d: f64) -> Raw {
    // x = e^y − 2, so e^y − 1 = 1 + x and log(e^y − 1) = ln_1p(x).
    let x = 2.0 * (-d).exp_m1();
    let num = x_minus_ln1p(x);
    let r = RHO - 2.0 * (d + (-d).exp_m1());
    let u = num / r;
    let beta = num * (1.0 + x) / (r + (1.0 + x) * (r + num));
    Raw { u, ln_u: u.ln(), r, ln_r: r.ln(), beta }
}

/// Near `y = 0`, with `t = ln y`; `β → 1` only like `1 − 1/|t|`, so `y`
/// itself may underflow.
fn raw_t(t: f64) -> Raw {
    let y = t.exp();
    // a = (e^y − 1)/y, r/y = 2 − a
    let a = if y < 1e-300 { 1.0 } else { y.exp_m1() / y };
    let r_over_y = 2.0 - a;
    let num = a * y - 1.0 - t - a.ln();
    let ln_r = t + r_over_y.ln();
    let ln_u = num.ln() - ln_r;
    let beta = num * a / (r_over_y + a * (r_over_y * y + num));
    Raw { u: ln_u.exp(), ln_u, r: ln_r.exp(), ln_r, beta }
}

fn raw_y(y: f64) -> Raw {
    if y > Y_SPLIT {
        raw_d(LN_2 - y)
    } else {
        raw_t(y.ln())
    }
}

fn check_y(y: f64) -> Result<f64, AsymptoticsError> {
    if y > 0.0 && y < LN_2 {
        Ok(y)
    } else {
        Err(AsymptoticsError::CurveDomain(y))
    }
}

fn check_beta(beta: f64) -> Result<(), AsymptoticsError> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(AsymptoticsError::Domain(beta))
    }
}

fn growth(beta: f64, raw: &Raw) -> f64 {
    (RHO.ln() - raw.ln_r - beta * raw.ln_u).exp()
}

pub fn u_of_y(y: f64) -> Result<f64, AsymptoticsError> {
    Ok(raw_y(check_y(y)?).u)
}

pub fn r_of_y(y: f64) -> Result<f64, AsymptoticsError> {
    Ok(raw_y(check_y(y)?).r)
}

pub fn beta_of_y(y: f64) -> Result<f64, AsymptoticsError> {
    Ok(raw_y(check_y(y)?).beta)
}

/// `β = u G_u / (r G_z)` with `G_u = e^y (2y + 1 − e^y)` and
/// `G_z = e^y/(e^y − 1) + e^y (1 + u)`; an independent route to `β`.
pub fn beta_of_y_via_partials(y: f64) -> Result<f64, AsymptoticsError> {
    check_y(y)?;
    let ey = y.exp();
    let r = 2.0 * y + 1.0 - ey;
    let u = (ey - 2.0 - (ey - 1.0).ln()) / r;
    Ok(u * g_u(y, r) / (r * g_z(y, u)))
}

fn g_u(y: f64, r: f64) -> f64 {
    y.exp() * r
}

fn g_z(y: f64, u: f64) -> f64 {
    let ey = y.exp();
    ey / (ey - 1.0) + ey * (1.0 + u)
}

pub fn point_of_y(y: f64) -> Result<CographCharPoint, AsymptoticsError> {
    let y = check_y(y)?;
    Ok(point(y, &raw_y(y), None))
}

fn point(y: f64, raw: &Raw, beta: Option<f64>) -> CographCharPoint {
    let beta = beta.unwrap_or(raw.beta);
    CographCharPoint { y, u: raw.u, r: raw.r, s: 1.0 - y, beta, c: growth(beta, raw) }
}

/// Solves `β(y) = beta` to relative tolerance `tol`.
pub fn y_of_beta(beta: f64, tol: f64) -> Result<f64, AsymptoticsError> {
    Ok(solve(beta, tol)?.0)
}

/// Bisection in `d` (β below the split) or in `t = ln y` (above it).
fn solve(beta: f64, tol: f64) -> Result<(f64, Raw), AsymptoticsError> {
    check_beta(beta)?;
    check_monotone()?;
    let split = raw_d(LN_2 - Y_SPLIT).beta;
    let (y, raw) = if beta <= split {
        // Near the singular end β ≈ d²/(2 log 2 − 1), which seeds the bracket.
        let d_max = LN_2 - Y_SPLIT;
        let seed = (beta * RHO).sqrt().min(d_max);
        let (mut lo, mut hi) = (0.5 * seed, (2.0 * seed).min(d_max));
        while raw_d(lo).beta > beta {
            lo *= 0.5;
        }
        if raw_d(hi).beta < beta {
            hi = d_max;
        }
        let d = bisect(|d| raw_d(d).beta < beta, lo, hi);
        (LN_2 - d, raw_d(d))
    } else {
        let hi = Y_SPLIT.ln();
        let mut lo = 2.0 * hi;
        while raw_t(lo).beta < beta {
            lo *= 2.0;
        }
        // β decreases in t.
        let t = bisect(|t| raw_t(t).beta > beta, lo, hi);
        (t.exp(), raw_t(t))
    };
    let residual = (raw.beta - beta).abs() / beta;
    if residual > tol {
        return Err(AsymptoticsError::NonConvergence { residual });
    }
    Ok((y, raw))
}

/// Last point of `[lo, hi]` where `below` holds, to full precision.
pub(crate) fn bisect(below: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn point_of_beta(beta: f64) -> Result<CographCharPoint, AsymptoticsError> {
    let (y, raw) = solve(beta, 1e-12)?;
    Ok(point(y, &raw, Some(beta)))
}

/// `C_β = (2 log 2 − 1) / (r u^β)`.
pub fn c_of_beta(beta: f64) -> Result<f64, AsymptoticsError> {
    Ok(point_of_beta(beta)?.c)
}

/// `L(z)` for `0 ≤ z ≤ 2 log 2 − 1`, from `2L + 1 − e^L = z`.
pub fn l_of_z(z: f64) -> Result<f64, AsymptoticsError> {
    if !(0.0..=RHO).contains(&z) {
        return Err(AsymptoticsError::CurveDomain(z));
    }
    let f = |l: f64| 2.0 * l - (l.exp_m1()) - z;
    Ok(super::numerics::bisect_increasing(f, 0.0, LN_2, 0.0))
}

/// `G(z, c, u)`, evaluated directly.
pub fn g(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let l = l_of_z(z)?;
    let el = l.exp_m1();
    Ok(el - l + el * ((c + z * (1.0 + u)).exp_m1() - c - l))
}

/// `∂G/∂c`.
pub fn g_c(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let l = l_of_z(z)?;
    Ok(l.exp_m1() * (c + z * (1.0 + u)).exp_m1())
}

/// `∂²G/∂c²`.
pub fn g_cc(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let l = l_of_z(z)?;
    Ok(l.exp_m1() * (c + z * (1.0 + u)).exp())
}

/// `(G(r,s,u) − s, G_c(r,s,u) − 1)` at the curve point with parameter `y`.
pub fn residuals(y: f64) -> Result<(f64, f64), AsymptoticsError> {
    let p = point_of_y(y)?;
    Ok((g(p.r, p.s, p.u)? - p.s, g_c(p.r, p.s, p.u)? - 1.0))
}

/// Closed form of `G_z` at the curve point with parameter `y`.
pub fn g_z_at(y: f64) -> Result<f64, AsymptoticsError> {
    let p = point_of_y(y)?;
    Ok(g_z(p.y, p.u))
}

/// Parameter `y` with `u(y) = u`.
pub fn y_of_u(u: f64) -> Result<f64, AsymptoticsError> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(AsymptoticsError::Domain(u));
    }
    // u decreases in y.
    Ok(bisect(|y| raw_y(y).u > u, 0.0, LN_2))
}

/// `γ₁(u) = √(2 r G_z / G_cc)` at the characteristic point.
pub fn gamma1(u: f64) -> Result<f64, AsymptoticsError> {
    let p = point_of_y(y_of_u(u)?)?;
    let gz = g_z(p.y, p.u);
    let gcc = g_cc(p.r, p.s, p.u)?;
    Ok((2.0 * p.r * gz / gcc).sqrt())
}

/// Verifies on a grid of 10⁴ points that `β` is strictly decreasing in `y`.
pub fn check_monotone() -> Result<(), AsymptoticsError> {
    static CHECK: OnceLock<Result<(), AsymptoticsError>> = OnceLock::new();
    CHECK.get_or_init(|| monotone_on_grid(|d| raw_y(LN_2 - d).beta, LN_2, |d| LN_2 - d)).clone()
}

pub(crate) fn monotone_on_grid(
    beta_of_d: impl Fn(f64) -> f64,
    d_max: f64,
    y_of_d: impl Fn(f64) -> f64,
) -> Result<(), AsymptoticsError> {
    const POINTS: usize = 10_000;
    let mut prev = 0.0;
    for i in 1..POINTS {
        let d = d_max * i as f64 / POINTS as f64;
        let b = beta_of_d(d);
        if !(b > prev) || !(b < 1.0) {
            return Err(AsymptoticsError::NonMonotonic { y: y_of_d(d) });
        }
        prev = b;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_behaviour() {
        assert!(u_of_y(LN_2 - 1e-6).unwrap() < 1e-10);
        assert!(u_of_y(1e-6).unwrap() > 1e5);
        assert!(u_of_y(0.3).unwrap() > u_of_y(0.5).unwrap());
        assert!(u_of_y(0.5).unwrap() > u_of_y(0.6).unwrap());
        assert!(beta_of_y(1e-9).unwrap() > 0.9 && beta_of_y(1e-9).unwrap() > beta_of_y(1e-3).unwrap());
        assert!(beta_of_y(0.2).unwrap() > beta_of_y(0.4).unwrap());
        let y = LN_2 - 1e-4;
        let approx = (y - LN_2).powi(2) / RHO;
        assert!((beta_of_y(y).unwrap() / approx - 1.0).abs() < 1e-3);
        assert!(matches!(u_of_y(0.0), Err(AsymptoticsError::CurveDomain(_))));
        assert!(matches!(c_of_beta(1.0), Err(AsymptoticsError::Domain(_))));
    }

    #[test]
    fn inverse_round_trip() {
        for b in [0.1, 0.25, 0.5, 0.9, 0.99, 1e-6] {
            let y = y_of_beta(b, 1e-12).unwrap();
            assert!((beta_of_y(y).unwrap() - b).abs() <= 1e-12 * b, "{b}");
        }
        // y ≈ e^{-1/(1-β)} underflows here, but the point is still computed.
        let p = point_of_beta(0.9999).unwrap();
        assert!(p.c.is_finite() && p.c > 0.0 && p.c < 1.0);
    }

    #[test]
    fn l_solver() {
        for z in [0.0, 0.1, 0.3, RHO] {
            let l = l_of_z(z).unwrap();
            assert!((2.0 * l + 1.0 - l.exp() - z).abs() < 1e-15);
        }
    }
}
