//! Exact solutions of the counting equations.
//!
//! Cographs (exponential generating functions, `u` marks vertices of a
//! distinguished independent set):
//!
//! * `L = z + e^L − 1 − L` counts cotrees with a fixed root decoration,
//! * `C₀ = exp_{≥2}(z(1+u) + C₁)`,
//! * `C₁ = exp_{≥2}(L) + (zu + C₀⁺)(e^L − 1)`, where `C₀⁺` drops the `u⁰` terms,
//! * `C = z(1+u) + C₀ + C₁ = e^{z(1+u)+C₁} − 1`.
//!
//! Separable permutations (ordinary generating functions, `u` marks an
//! increasing subsequence):
//!
//! * `S = z + S²/(1−S)`,
//! * `S⊕ = X²/(1−X)` with `X = z(1+u) + S⊖`,
//! * `S⊖ = S²/(1−S) + (zu + S⊕⁺)(1/(1−S)² − 1)`,
//! * `Z = z(1+u) + S⊕ + S⊖`.
//!
//! These forms have non-negative terms only; they are equivalent to the
//! compact fixed-point equations checked in the tests below.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{EnumerationError, Rational, TruncatedBiSeries, TruncatedSeries};

/// Iterates `x ← step(x)` from 0, raising the truncation order by one each
/// round. Each round must leave the lower coefficients untouched, and the
/// result must be a fixed point at full order.
fn fixed_point<F>(order: usize, step: F) -> Result<TruncatedSeries, EnumerationError>
where
    F: Fn(&TruncatedSeries) -> Result<TruncatedSeries, EnumerationError>,
{
    let mut cur = TruncatedSeries::zero(0);
    for ord in 1..=order {
        let prev = cur.truncate(ord);
        let next = step(&prev)?;
        if (0..ord).any(|i| next.coeff(i) != prev.coeff(i)) {
            return Err(EnumerationError::NonConvergence { order: ord });
        }
        cur = next;
    }
    if order > 0 && step(&cur)? != cur {
        return Err(EnumerationError::NonConvergence { order });
    }
    Ok(cur)
}

/// `L(z)`; `n!·[zⁿ]L` = 1, 1, 4, 26, 236, …
pub fn series_l(order: usize) -> Result<TruncatedSeries, EnumerationError> {
    fixed_point(order, |l| {
        let ord = l.order();
        let e = l.exp()?;
        Ok(&(&(&TruncatedSeries::var(ord) + &e) - &TruncatedSeries::one(ord)) - l)
    })
}

/// `S(z)`; coefficients 0, 1, 1, 3, 11, 45, 197, 903, … (little Schröder numbers).
pub fn series_s(order: usize) -> Result<TruncatedSeries, EnumerationError> {
    fixed_point(order, |s| {
        let ord = s.order();
        let geo = (&TruncatedSeries::one(ord) - s).recip()?;
        Ok(&TruncatedSeries::var(ord) + &(&(s * s) * &geo))
    })
}

/// `S = (1 + z − √(1 − 6z + z²))/4`.
pub fn series_s_closed_form(order: usize) -> Result<TruncatedSeries, EnumerationError> {
    let disc = TruncatedSeries::from_integers(order, &[1, -6, 1]);
    let num = &TruncatedSeries::from_integers(order, &[1, 1]) - &disc.sqrt()?;
    Ok(num.scale(&Rational::new(BigInt::one(), BigInt::from(4))))
}

/// Number of labeled cographs on `n ≥ 1` vertices (0 for `n = 0`).
pub fn count_labeled_cographs(n: usize) -> Result<BigUint, EnumerationError> {
    match n {
        0 => Ok(BigUint::zero()),
        1 => Ok(BigUint::one()),
        _ => {
            let l = series_l(n)?;
            let c = l.coeff(n) * Rational::from_integer(factorial(n)) * Rational::from_integer(BigInt::from(2));
            Ok(to_biguint(&c))
        }
    }
}

/// Number of separable permutations of size `n ≥ 1` (0 for `n = 0`).
pub fn count_separable(n: usize) -> Result<BigUint, EnumerationError> {
    match n {
        0 => Ok(BigUint::zero()),
        1 => Ok(BigUint::one()),
        _ => Ok(to_biguint(&(series_s(n)?.coeff(n) * Rational::from_integer(BigInt::from(2))))),
    }
}

pub fn series_c1(order: usize) -> Result<TruncatedBiSeries, EnumerationError> {
    Ok(CographSeries::compute(order)?.c1)
}

pub fn series_c(order: usize) -> Result<TruncatedBiSeries, EnumerationError> {
    Ok(CographSeries::compute(order)?.c)
}

pub fn series_s_plus(order: usize) -> Result<TruncatedBiSeries, EnumerationError> {
    Ok(SeparableSeries::compute(order)?.s_plus)
}

pub fn series_s_minus(order: usize) -> Result<TruncatedBiSeries, EnumerationError> {
    Ok(SeparableSeries::compute(order)?.s_minus)
}

pub fn series_z(order: usize) -> Result<TruncatedBiSeries, EnumerationError> {
    Ok(SeparableSeries::compute(order)?.z)
}

/// Mean number of independent sets of size `k` in a uniform labeled cograph
/// on `n` vertices.
pub fn expected_x(n: usize, k: usize) -> Result<Rational, EnumerationError> {
    CographSeries::compute(n)?.expected_x(n, k)
}

/// Mean number of increasing subsequences of length `k` in a uniform
/// separable permutation of size `n`.
pub fn expected_z(n: usize, k: usize) -> Result<Rational, EnumerationError> {
    SeparableSeries::compute(n)?.expected_z(n, k)
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn to_biguint(q: &Rational) -> BigUint {
    assert!(q.is_integer() && !q.is_negative(), "count {q} is not a natural number");
    q.to_integer().to_biguint().unwrap()
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

type Poly = Vec<BigInt>;

fn poly(len: usize) -> Poly {
    vec![BigInt::zero(); len]
}

/// `acc += scale · a · b` (polynomials in u).
fn conv_acc(acc: &mut Poly, a: &[BigInt], b: &[BigInt], scale: &BigInt) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let xs = x * scale;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += &xs * y;
            }
        }
    }
}

fn add_to(acc: &mut Poly, a: &[BigInt]) {
    for (x, y) in acc.iter_mut().zip(a) {
        *x += y;
    }
}

/// `z(1+u)` contributes `1 + u` at `n = 1`.
fn atom_row(n: usize) -> Poly {
    let mut r = poly(n + 1);
    if n == 1 {
        r[0] = BigInt::one();
        r[1] = BigInt::one();
    }
    r
}

fn rows_to_series(rows: &[Poly], denom: impl Fn(usize) -> BigInt) -> TruncatedBiSeries {
    TruncatedBiSeries::from_rows(
        rows.iter()
            .enumerate()
            .map(|(n, r)| {
                let d = denom(n);
                r.iter().map(|c| Rational::new(c.clone(), d.clone())).collect()
            })
            .collect(),
    )
}

fn ratio(num: &Rational, den: &Rational) -> Rational {
    num / den
}

/// Cograph generating functions up to a fixed order.
#[derive(Clone, Debug)]
pub struct CographSeries {
    order: usize,
    l: TruncatedSeries,
    c0: TruncatedBiSeries,
    c1: TruncatedBiSeries,
    c: TruncatedBiSeries,
}

impl CographSeries {
    pub fn compute(order: usize) -> Result<Self, EnumerationError> {
        let l = series_l(order)?;
        let fact: Vec<BigInt> = (0..=order).map(factorial).collect();
        // Integer (n!-scaled) coefficients throughout.
        let li: Vec<BigInt> = (0..=order).map(|n| (l.coeff(n) * Rational::from_integer(fact[n].clone())).to_integer()).collect();
        let binom = binomials(order);
        // e^L: F_n = Σ_k C(n-1,k-1) ℓ_k F_{n-k}.
        let mut f = vec![BigInt::zero(); order + 1];
        f[0] = BigInt::one();
        for n in 1..=order {
            f[n] = (1..=n).map(|k| &binom[n - 1][k - 1] * &li[k] * &f[n - k]).sum();
        }
        let mut a: Vec<Poly> = vec![poly(1)];
        let mut e: Vec<Poly> = vec![vec![BigInt::one()]];
        let mut c0: Vec<Poly> = vec![poly(1)];
        let mut c1: Vec<Poly> = vec![poly(1)];
        let mut c: Vec<Poly> = vec![poly(1)];
        // y = zu + C₀⁺
        let mut y: Vec<Poly> = vec![poly(1)];
        for n in 1..=order {
            let mut e2 = poly(n + 1);
            for m in 1..n {
                conv_acc(&mut e2, &a[m], &e[n - m], &binom[n - 1][m - 1]);
            }
            let mut c1n = poly(n + 1);
            c1n[0] = &f[n] - &li[n];
            for j in 1..n {
                let s = &binom[n][j] * &f[j];
                for (k, yk) in y[n - j].iter().enumerate() {
                    c1n[k] += &s * yk;
                }
            }
            let expected_slice = if n >= 2 { li[n].clone() } else { BigInt::zero() };
            if c1n[0] != expected_slice || e2[0] != expected_slice {
                return Err(EnumerationError::NonConvergence { order: n });
            }
            let mut an = atom_row(n);
            add_to(&mut an, &c1n);
            let mut en = e2.clone();
            add_to(&mut en, &an);
            let mut cn = atom_row(n);
            add_to(&mut cn, &e2);
            add_to(&mut cn, &c1n);
            let mut yn = e2.clone();
            yn[0] = BigInt::zero();
            if n == 1 {
                yn[1] += BigInt::one();
            }
            a.push(an);
            e.push(en);
            c0.push(e2);
            c1.push(c1n);
            c.push(cn);
            y.push(yn);
        }
        let denom = |n: usize| fact[n].clone();
        Ok(CographSeries {
            order,
            l,
            c0: rows_to_series(&c0, denom),
            c1: rows_to_series(&c1, denom),
            c: rows_to_series(&c, denom),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn l(&self) -> &TruncatedSeries {
        &self.l
    }

    pub fn c0(&self) -> &TruncatedBiSeries {
        &self.c0
    }

    pub fn c1(&self) -> &TruncatedBiSeries {
        &self.c1
    }

    pub fn c(&self) -> &TruncatedBiSeries {
        &self.c
    }

    /// Number of labeled cographs on `n` vertices.
    pub fn count(&self, n: usize) -> Result<BigUint, EnumerationError> {
        check_n(n, self.order)?;
        Ok(to_biguint(&(self.c.coeff(n, 0) * Rational::from_integer(factorial(n)))))
    }

    pub fn expected_x(&self, n: usize, k: usize) -> Result<Rational, EnumerationError> {
        check_n(n, self.order)?;
        Ok(ratio(&self.c.coeff(n, k), &self.c.coeff(n, 0)))
    }
}

fn check_n(n: usize, order: usize) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::IndexOutOfRange { n, k: 0 });
    }
    if n > order {
        return Err(EnumerationError::TruncationExceeded { n, order });
    }
    Ok(())
}

/// Separable-permutation generating functions up to a fixed order.
#[derive(Clone, Debug)]
pub struct SeparableSeries {
    order: usize,
    s: TruncatedSeries,
    s_plus: TruncatedBiSeries,
    s_minus: TruncatedBiSeries,
    z: TruncatedBiSeries,
}

impl SeparableSeries {
    pub fn compute(order: usize) -> Result<Self, EnumerationError> {
        let s = series_s(order)?;
        let si: Vec<BigInt> = (0..=order).map(|n| s.coeff(n).to_integer()).collect();
        // R = 1/(1-S), M = R² - 1.
        let mut r = vec![BigInt::zero(); order + 1];
        r[0] = BigInt::one();
        for n in 1..=order {
            r[n] = (1..=n).map(|j| &si[j] * &r[n - j]).sum();
        }
        let m: Vec<BigInt> = (0..=order)
            .map(|n| if n == 0 { BigInt::zero() } else { (0..=n).map(|j| &r[j] * &r[n - j]).sum() })
            .collect();
        let mut x: Vec<Poly> = vec![poly(1)];
        let mut h: Vec<Poly> = vec![poly(1)];
        let mut sm: Vec<Poly> = vec![poly(1)];
        let mut z: Vec<Poly> = vec![poly(1)];
        // y = zu + S⊕⁺; w = X + S⊕
        let mut y: Vec<Poly> = vec![poly(1)];
        let mut w: Vec<Poly> = vec![poly(1)];
        let one = BigInt::one();
        for n in 1..=order {
            let mut smn = poly(n + 1);
            if n >= 2 {
                smn[0] = si[n].clone();
            }
            for j in 1..n {
                for (k, yk) in y[n - j].iter().enumerate() {
                    smn[k] += &m[j] * yk;
                }
            }
            let mut xn = atom_row(n);
            add_to(&mut xn, &smn);
            let mut hn = poly(n + 1);
            for j in 1..n {
                conv_acc(&mut hn, &x[j], &w[n - j], &one);
            }
            let expected_slice = if n >= 2 { si[n].clone() } else { BigInt::zero() };
            if smn[0] != expected_slice || hn[0] != expected_slice {
                return Err(EnumerationError::NonConvergence { order: n });
            }
            let mut zn = atom_row(n);
            add_to(&mut zn, &hn);
            add_to(&mut zn, &smn);
            let mut wn = xn.clone();
            add_to(&mut wn, &hn);
            let mut yn = hn.clone();
            yn[0] = BigInt::zero();
            if n == 1 {
                yn[1] += BigInt::one();
            }
            x.push(xn);
            h.push(hn);
            sm.push(smn);
            z.push(zn);
            y.push(yn);
            w.push(wn);
        }
        let denom = |_| BigInt::one();
        Ok(SeparableSeries {
            order,
            s,
            s_plus: rows_to_series(&h, denom),
            s_minus: rows_to_series(&sm, denom),
            z: rows_to_series(&z, denom),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn s(&self) -> &TruncatedSeries {
        &self.s
    }

    pub fn s_plus(&self) -> &TruncatedBiSeries {
        &self.s_plus
    }

    pub fn s_minus(&self) -> &TruncatedBiSeries {
        &self.s_minus
    }

    pub fn z(&self) -> &TruncatedBiSeries {
        &self.z
    }

    pub fn count(&self, n: usize) -> Result<BigUint, EnumerationError> {
        check_n(n, self.order)?;
        Ok(to_biguint(&self.z.coeff(n, 0)))
    }

    pub fn expected_z(&self, n: usize, k: usize) -> Result<Rational, EnumerationError> {
        check_n(n, self.order)?;
        Ok(ratio(&self.z.coeff(n, k), &self.z.coeff(n, 0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    fn int(a: i64) -> Rational {
        Rational::from_integer(BigInt::from(a))
    }

    #[test]
    fn l_coefficients() {
        let l = series_l(6).unwrap();
        let scaled: Vec<Rational> = (1..=6).map(|n| l.coeff(n) * Rational::from_integer(factorial(n))).collect();
        assert_eq!(scaled, [1, 1, 4, 26, 236, 2752].map(int));
    }

    #[test]
    fn s_fixed_point_matches_closed_form() {
        let s = series_s(10).unwrap();
        assert_eq!(s, series_s_closed_form(10).unwrap());
        assert_eq!(&s.coeffs()[..8], &[0, 1, 1, 3, 11, 45, 197, 903].map(int));
    }

    #[test]
    fn counts() {
        let c: Vec<u64> = (1..=5).map(|n| count_labeled_cographs(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(c, [1, 2, 8, 52, 472]);
        let s: Vec<u64> = (1..=7).map(|n| count_separable(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(s, [1, 2, 6, 22, 90, 394, 1806]);
        let cs = CographSeries::compute(5).unwrap();
        assert_eq!(cs.count(5).unwrap(), BigUint::from(472u32));
        assert_eq!(SeparableSeries::compute(7).unwrap().count(7).unwrap(), BigUint::from(1806u32));
    }

    #[test]
    fn c1_satisfies_compact_equation() {
        // C₁ = e^L − 1 − L + (e^L − 1)(e^{z(1+u)+C₁} − 1 − C₁ − L)
        let ord = 8;
        let cs = CographSeries::compute(ord).unwrap();
        let l = cs.l();
        let el = l.exp().unwrap();
        let one = TruncatedSeries::one(ord);
        let p = &el - &one;
        let k = &p - l;
        let c1 = cs.c1();
        let inner = (&TruncatedBiSeries::atom(ord) + c1).exp().unwrap();
        let rest = &(&(&inner - &TruncatedBiSeries::from_univariate(&one)) - c1) - &TruncatedBiSeries::from_univariate(l);
        let rhs = &TruncatedBiSeries::from_univariate(&k) + &rest.mul_univariate(&p);
        assert_eq!(&rhs, c1);
        // C₀ and C from their compact forms.
        let a = TruncatedBiSeries::atom(ord);
        let c0 = &(&(&inner - &TruncatedBiSeries::from_univariate(&one)) - &a) - c1;
        assert_eq!(&c0, cs.c0());
        assert_eq!(&(&inner - &TruncatedBiSeries::from_univariate(&one)), cs.c());
    }

    #[test]
    fn separable_compact_equations() {
        let ord = 8;
        let ss = SeparableSeries::compute(ord).unwrap();
        let s = ss.s();
        let one = TruncatedSeries::one(ord);
        let geo = (&one - s).recip().unwrap();
        let k = &(&geo * &geo) - &one;
        let x = &TruncatedBiSeries::atom(ord) + ss.s_minus();
        // X²/(1−X) via S⊕ (1 − X) = X²
        let lhs = ss.s_plus() - &(ss.s_plus() * &x);
        assert_eq!(lhs, &x * &x);
        let s2 = TruncatedBiSeries::from_univariate(&(&(s * s) * &geo));
        let bracket = &(&(ss.s_plus() + &TruncatedBiSeries::atom(ord)) - &TruncatedBiSeries::from_univariate(s));
        assert_eq!(&(&s2 + &bracket.mul_univariate(&k)), ss.s_minus());
    }

    #[test]
    fn small_coefficients() {
        let ss = SeparableSeries::compute(3).unwrap();
        assert_eq!(ss.s_plus().coeff(2, 1), int(2));
        assert_eq!(ss.s_plus().coeff(2, 2), int(1));
        assert_eq!(ss.s_minus().coeff(2, 1), int(2));
        assert_eq!(ss.s_minus().coeff(2, 2), int(0));
        assert_eq!(ss.expected_z(3, 3).unwrap(), q(1, 6));
        assert_eq!(expected_x(2, 2).unwrap(), q(1, 2));
        assert_eq!(expected_x(2, 0).unwrap(), int(1));
        assert_eq!(expected_x(3, 1).unwrap(), int(3));
        assert!(matches!(
            CographSeries::compute(3).unwrap().expected_x(4, 1),
            Err(EnumerationError::TruncationExceeded { n: 4, order: 3 })
        ));
        assert_eq!(expected_x(3, 5).unwrap(), int(0));
    }
}
