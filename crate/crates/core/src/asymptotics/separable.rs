//! Separable side: `y = S(r(u)) ∈ (0, 1 − √2/2)` parametrises the positive
//! solution branch of `G(r,s,u) = s`, `G_c(r,s,u) = 1`, where
//! `G(z,c,u) = S²/(1−S) + (w²/(1−w) + zu + z − S)(1/(1−S)² − 1)` and
//! `w = c + z(1+u)`.
//!
//! `β(y) = u G_u / (r G_z)` is assembled from the partial derivatives; all
//! quantities are evaluated from `d = y_max − y` so that the vanishing
//! factors near `u = 0` are computed without cancellation.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::sync::OnceLock;

use super::cograph::bisect;
use super::AsymptoticsError;

/// Radius of convergence of `S`.
pub const RHO: f64 = 3.0 - 2.0 * SQRT_2;
/// `S(ρ)`.
pub const Y_MAX: f64 = 1.0 - FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SepCharPoint {
    pub y: f64,
    pub u: f64,
    pub r: f64,
    pub s: f64,
    pub beta: f64,
    /// Growth constant `E_β`.
    pub e: f64,
}

struct Raw {
    y: f64,
    u: f64,
    r: f64,
    s: f64,
    gz: f64,
    beta: f64,
}

/// `G_z` at the characteristic point (closed form in `y`).
fn g_z_closed(y: f64, q: f64, a: f64) -> f64 {
    let num = 6.0 * y * y * q - 4.0 * y * y - 10.0 * y * q + 9.0 * y + 2.0 * q - 2.0;
    // 2y² − 4y + 1 is passed in as `a` (computed without cancellation).
    num / (y * (y - 1.0) * (y - 2.0) * (2.0 * y - 1.0) * a)
}

/// Below this `y` quantities are computed from `y`, above it from
/// `d = y_max − y`.
const Y_SPLIT: f64 = 0.15;

fn raw_d(d: f64) -> Raw {
    let y = Y_MAX - d;
    let q = (0.5 - SQRT_2 * d - d * d).sqrt(); // √(2y − y²)
    let a = 2.0 * d * (SQRT_2 + d); // 2(1−y)² − 1 = 2y² − 4y + 1
    let v = FRAC_1_SQRT_2 + d; // 1 − y
    assemble(y, q, a, v, a / (v + q))
}

fn raw_y(y: f64) -> Raw {
    if y > Y_SPLIT {
        return raw_d(Y_MAX - y);
    }
    let q = (y * (2.0 - y)).sqrt();
    let v = 1.0 - y;
    assemble(y, q, 2.0 * y * y - 4.0 * y + 1.0, v, v - q)
}

/// `v = 1 − y`, `q = √(2y − y²)`, `a = 2y² − 4y + 1`, `v_minus_q = v − q`.
fn assemble(y: f64, q: f64, a: f64, v: f64, v_minus_q: f64) -> Raw {
    // 2(1−y)q − 1 = −(v − q)², so u = (v − q)² / (y(1 − 2y)).
    let u = v_minus_q * v_minus_q / (y * (1.0 - 2.0 * y));
    let r = y * (1.0 - 2.0 * y) / v;
    let s = q - 2.0 * y;
    // G_u = r K (w(2−w)/(1−w)² + 1) with w = 1 − q, K = 1/v² − 1; since
    // q² + v² = 1 this is r / v².
    let gu = r / (v * v);
    let gz = g_z_closed(y, q, a);
    let beta = u * gu / (r * gz);
    Raw { y, u, r, s, gz, beta }
}

fn check_y(y: f64) -> Result<f64, AsymptoticsError> {
    if y > 0.0 && y < Y_MAX {
        Ok(y)
    } else {
        Err(AsymptoticsError::CurveDomain(y))
    }
}

fn growth(beta: f64, raw: &Raw) -> f64 {
    1.0 / ((3.0 + 2.0 * SQRT_2) * raw.r) * (-beta * raw.u.ln()).exp()
}

fn point_of_raw(raw: &Raw) -> SepCharPoint {
    SepCharPoint { y: raw.y, u: raw.u, r: raw.r, s: raw.s, beta: raw.beta, e: growth(raw.beta, raw) }
}

pub fn point_of_y(y: f64) -> Result<SepCharPoint, AsymptoticsError> {
    Ok(point_of_raw(&raw_y(check_y(y)?)))
}

pub fn beta_of_y(y: f64) -> Result<f64, AsymptoticsError> {
    Ok(raw_y(check_y(y)?).beta)
}

/// `S(z) = (1 + z − √(1 − 6z + z²))/4` for `0 ≤ z ≤ ρ`.
pub fn s_of_z(z: f64) -> Result<f64, AsymptoticsError> {
    if !(0.0..=RHO).contains(&z) {
        return Err(AsymptoticsError::CurveDomain(z));
    }
    // 1 − 6z + z² = (ρ − z)(1/ρ − z)
    let disc = (RHO - z) * (3.0 + 2.0 * SQRT_2 - z);
    Ok((1.0 + z - disc.sqrt()) / 4.0)
}

/// `G(z, c, u)`, evaluated directly.
pub fn g(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let s = s_of_z(z)?;
    let w = c + z * (1.0 + u);
    let k = 1.0 / ((1.0 - s) * (1.0 - s)) - 1.0;
    Ok(s * s / (1.0 - s) + (w * w / (1.0 - w) + z * u + z - s) * k)
}

/// `∂G/∂c`.
pub fn g_c(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let s = s_of_z(z)?;
    let w = c + z * (1.0 + u);
    let k = 1.0 / ((1.0 - s) * (1.0 - s)) - 1.0;
    Ok(w * (2.0 - w) / ((1.0 - w) * (1.0 - w)) * k)
}

/// `∂G/∂z` from the chain rule, with `S' = (1−S)²/(1 − 4S + 2S²)`.
pub fn g_z(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let s = s_of_z(z)?;
    let w = c + z * (1.0 + u);
    let om = 1.0 - s;
    let k = 1.0 / (om * om) - 1.0;
    let ds = om * om / (1.0 - 4.0 * s + 2.0 * s * s);
    let dphi = w * (2.0 - w) / ((1.0 - w) * (1.0 - w));
    let phi = w * w / (1.0 - w);
    Ok(ds * s * (2.0 - s) / (om * om)
        + (dphi * (1.0 + u) + 1.0 + u - ds) * k
        + (phi + z * (1.0 + u) - s) * 2.0 * ds / (om * om * om))
}

/// `∂G/∂u`.
pub fn g_u(z: f64, c: f64, u: f64) -> Result<f64, AsymptoticsError> {
    let s = s_of_z(z)?;
    let w = c + z * (1.0 + u);
    let k = 1.0 / ((1.0 - s) * (1.0 - s)) - 1.0;
    Ok(z * k * (w * (2.0 - w) / ((1.0 - w) * (1.0 - w)) + 1.0))
}

/// Closed form of `G_z` at the curve point with parameter `y`.
pub fn g_z_at(y: f64) -> Result<f64, AsymptoticsError> {
    Ok(raw_y(check_y(y)?).gz)
}

/// `(G(r,s,u) − s, G_c(r,s,u) − 1)` at the curve point with parameter `y`.
pub fn residuals(y: f64) -> Result<(f64, f64), AsymptoticsError> {
    let p = point_of_y(y)?;
    Ok((g(p.r, p.s, p.u)? - p.s, g_c(p.r, p.s, p.u)? - 1.0))
}

/// Verifies on a grid of 10⁴ points that `β` is strictly decreasing in `y`.
pub fn check_monotone() -> Result<(), AsymptoticsError> {
    static CHECK: OnceLock<Result<(), AsymptoticsError>> = OnceLock::new();
    CHECK
        .get_or_init(|| super::cograph::monotone_on_grid(|d| raw_y(Y_MAX - d).beta, Y_MAX, |d| Y_MAX - d))
        .clone()
}

pub fn y_of_beta(beta: f64, tol: f64) -> Result<f64, AsymptoticsError> {
    Ok(solve(beta, tol)?.y)
}

fn solve(beta: f64, tol: f64) -> Result<Raw, AsymptoticsError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(AsymptoticsError::Domain(beta));
    }
    check_monotone()?;
    let split = raw_d(Y_MAX - Y_SPLIT).beta;
    let raw = if beta <= split {
        // β is quadratic in d near the singular end: d ≈ √(β (¾√2 − 1)).
        let d_max = Y_MAX - Y_SPLIT;
        let seed = (beta * (0.75 * SQRT_2 - 1.0)).sqrt().min(d_max);
        let (mut lo, mut hi) = (0.5 * seed, (2.0 * seed).min(d_max));
        while raw_d(lo).beta > beta {
            lo *= 0.5;
        }
        if raw_d(hi).beta < beta {
            hi = d_max;
        }
        raw_d(bisect(|d| raw_d(d).beta < beta, lo, hi))
    } else {
        // β decreases in y; bisect on ln y.
        let t = bisect(|t| raw_y(t.exp()).beta > beta, -745.0, Y_SPLIT.ln());
        raw_y(t.exp())
    };
    let residual = (raw.beta - beta).abs() / beta;
    if residual > tol {
        return Err(AsymptoticsError::NonConvergence { residual });
    }
    Ok(raw)
}

pub fn point_of_beta(beta: f64) -> Result<SepCharPoint, AsymptoticsError> {
    let raw = solve(beta, 1e-12)?;
    let mut p = point_of_raw(&raw);
    p.beta = beta;
    p.e = growth(beta, &raw);
    Ok(p)
}

/// `E_β = 1 / ((3 + 2√2) r u^β)`.
pub fn e_of_beta(beta: f64) -> Result<f64, AsymptoticsError> {
    Ok(point_of_beta(beta)?.e)
}
