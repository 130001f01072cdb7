use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{EnumerationError, Rational, TruncatedSeries};

/// `Σ_{k ≤ n ≤ order} a_{n,k} z^n u^k`. The u-degree of the z^n coefficient
/// never exceeds n (at most n atoms are marked), so rows are triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBiSeries {
    rows: Vec<Vec<Rational>>,
}

impl TruncatedBiSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedBiSeries { rows: (0..=order).map(|n| vec![Rational::zero(); n + 1]).collect() }
    }

    /// `z(1 + u)`, one atom that may or may not be marked.
    pub fn atom(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.rows[1] = vec![Rational::one(), Rational::one()];
        }
        s
    }

    /// `zu`.
    pub fn marked_atom(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.rows[1][1] = Rational::one();
        }
        s
    }

    pub fn from_univariate(f: &TruncatedSeries) -> Self {
        let mut s = Self::zero(f.order());
        for n in 0..=f.order() {
            s.rows[n][0] = f.coeff(n);
        }
        s
    }

    /// Rows must satisfy the triangular shape.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(n, mut r)| {
                assert!(r.iter().skip(n + 1).all(|c| c.is_zero()), "u-degree exceeds z-degree");
                r.resize(n + 1, Rational::zero());
                r
            })
            .collect();
        TruncatedBiSeries { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn coeff(&self, n: usize, k: usize) -> Rational {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of z^n as a polynomial in u.
    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn set_coeff(&mut self, n: usize, k: usize, c: Rational) {
        self.rows[n][k] = c;
    }

    /// `F(z, 0)`.
    pub fn at_u_zero(&self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.order(), self.rows.iter().map(|r| r[0].clone()).collect())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 0..=order.min(self.order()) {
            s.rows[n] = self.rows[n].clone();
        }
        s
    }

    pub fn mul_univariate(&self, f: &TruncatedSeries) -> Self {
        let order = self.order().min(f.order());
        let mut out = Self::zero(order);
        for i in 0..=order {
            let a = f.coeff(i);
            if a.is_zero() {
                continue;
            }
            for n in 0..=order - i {
                for (k, c) in self.rows[n].iter().enumerate() {
                    out.rows[n + i][k] += &a * c;
                }
            }
        }
        out
    }

    pub fn exp(&self) -> Result<Self, EnumerationError> {
        if self.rows[0].iter().any(|c| !c.is_zero()) {
            return Err(EnumerationError::InvalidOperation("exp needs a zero constant term".into()));
        }
        let order = self.order();
        let mut f = Self::zero(order);
        f.rows[0][0] = Rational::one();
        for n in 1..=order {
            let mut acc = vec![Rational::zero(); n + 1];
            for m in 1..=n {
                let km = Rational::from_integer(BigInt::from(m));
                for (i, a) in self.rows[m].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let a = a * &km;
                    for (j, b) in f.rows[n - m].iter().enumerate() {
                        acc[i + j] += &a * b;
                    }
                }
            }
            let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
            f.rows[n] = acc.into_iter().map(|c| c * &inv_n).collect();
        }
        Ok(f)
    }
}

impl Add for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn add(self, rhs: &TruncatedBiSeries) -> TruncatedBiSeries {
        let order = self.order().min(rhs.order());
        TruncatedBiSeries {
            rows: (0..=order)
                .map(|n| self.rows[n].iter().zip(&rhs.rows[n]).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }
}

impl Sub for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn sub(self, rhs: &TruncatedBiSeries) -> TruncatedBiSeries {
        let order = self.order().min(rhs.order());
        TruncatedBiSeries {
            rows: (0..=order)
                .map(|n| self.rows[n].iter().zip(&rhs.rows[n]).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }
}

impl Mul for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn mul(self, rhs: &TruncatedBiSeries) -> TruncatedBiSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedBiSeries::zero(order);
        for n1 in 0..=order {
            for n2 in 0..=order - n1 {
                for (i, a) in self.rows[n1].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.rows[n2].iter().enumerate() {
                        if !b.is_zero() {
                            out.rows[n1 + n2][i + j] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_atom_is_binomial() {
        // exp(z(1+u)) = Σ (1+u)^n z^n / n!
        let e = TruncatedBiSeries::atom(4).exp().unwrap();
        let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(e.row(3), &[r(1, 6), r(1, 2), r(1, 2), r(1, 6)]);
        assert_eq!(e.at_u_zero(), TruncatedSeries::var(4).exp().unwrap());
    }

    #[test]
    fn products_stay_triangular() {
        let a = TruncatedBiSeries::atom(5);
        let p = &(&a * &a) * &a;
        assert_eq!(p.coeff(3, 3), Rational::one());
        assert_eq!(p.coeff(3, 1), Rational::from_integer(BigInt::from(3)));
        let s = &p - &p;
        assert_eq!(s, TruncatedBiSeries::zero(5));
        let geo = (&TruncatedSeries::one(5) - &TruncatedSeries::var(5)).recip().unwrap();
        assert_eq!(a.mul_univariate(&geo).coeff(4, 1), Rational::one());
    }
}
