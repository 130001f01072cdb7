use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{EnumerationError, Rational};

/// `Σ_{n ≤ order} a_n z^n` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Pads with zeros or truncates to exactly `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        self.coeffs[n] = c;
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn exp(&self) -> Result<Self, EnumerationError> {
        if !self.coeffs[0].is_zero() {
            return Err(EnumerationError::InvalidOperation("exp needs a zero constant term".into()));
        }
        // F' = A'F, i.e. n f_n = Σ k a_k f_{n-k}.
        let order = self.order();
        let mut f = vec![Rational::zero(); order + 1];
        f[0] = Rational::one();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &f[n - k] * Rational::from_integer(BigInt::from(k));
                }
            }
            f[n] = acc / Rational::from_integer(BigInt::from(n));
        }
        Ok(TruncatedSeries { coeffs: f })
    }

    pub fn recip(&self) -> Result<Self, EnumerationError> {
        if self.coeffs[0].is_zero() {
            return Err(EnumerationError::InvalidOperation("reciprocal of a series without constant term".into()));
        }
        let order = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut b = vec![Rational::zero(); order + 1];
        b[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &b[n - k];
            }
            b[n] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self, EnumerationError> {
        if !self.coeffs[0].is_one() {
            return Err(EnumerationError::InvalidOperation("sqrt needs constant term 1".into()));
        }
        let order = self.order();
        let two = Rational::from_integer(BigInt::from(2));
        let mut g = vec![Rational::zero(); order + 1];
        g[0] = Rational::one();
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &g[k] * &g[n - k];
            }
            g[n] = acc / &two;
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `self(inner(z))` for `inner` with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, EnumerationError> {
        if !inner.coeffs[0].is_zero() {
            return Err(EnumerationError::InvalidOperation("composition needs valuation ≥ 1".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(order, self.coeff(order));
        for i in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect() }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += a * &rhs.coeffs[j];
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
