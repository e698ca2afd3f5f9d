//! Truncated formal power series over a pluggable coefficient ring.
//!
//! A series of order `N` stores exactly the coefficients of `x^0..=x^N`.
//! `exp` and `log` use the quadratic differential recurrences
//! `n E_n = sum k a_k E_{n-k}` and `n L_n = n a_n - sum k L_k a_{n-k}`;
//! Newton iteration is avoided because it inflates denominators over `Q`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{is_integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("exp needs a zero constant term")]
    NonZeroConstant,
    #[error("log and rational powers need constant term 1")]
    ConstantNotOne,
}

/// A commutative ring containing `Q`, as far as the series code needs it.
///
/// `div_int` must be exact for the instantiations used (it is for `Q`,
/// `Q[y]` and, up to rounding, `f64`).
pub trait CoefficientRing: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn div_int(&self, d: &BigInt) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::ring_one().scale(r)
    }

    /// Coefficients `0..=order` of `prod_{m=1..order} (1 - x^m)^{beta[m-1]}`.
    ///
    /// Rings may override this with a faster kernel; the result must agree
    /// exactly with [`euler_product_generic`].
    fn euler_product_kernel(beta: &[Self], order: usize) -> Vec<Self> {
        euler_product_generic(beta, order)
    }
}

impl CoefficientRing for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn div_int(&self, d: &BigInt) -> Self {
        self / Rational::from_integer(d.clone())
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn euler_product_kernel(beta: &[Self], order: usize) -> Vec<Self> {
        let integral: Option<Vec<BigInt>> = beta
            .iter()
            .take(order)
            .map(|b| is_integer(b).then(|| b.to_integer()))
            .collect();
        match integral {
            Some(exps) => euler_product_integral(&exps, order)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
            None => euler_product_generic(beta, order),
        }
    }
}

impl CoefficientRing for f64 {
    fn ring_zero() -> Self {
        0.0
    }
    fn ring_one() -> Self {
        1.0
    }
    fn is_ring_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r.to_f64().unwrap_or(f64::NAN)
    }
    fn div_int(&self, d: &BigInt) -> Self {
        self / d.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Generalized binomial expansion of each factor, multiplied in place.
/// Only `j <= order / m` terms of `(1 - x^m)^b` can reach the truncation.
pub fn euler_product_generic<R: CoefficientRing>(beta: &[R], order: usize) -> Vec<R> {
    let mut acc = vec![R::ring_zero(); order + 1];
    acc[0] = R::ring_one();
    for (idx, b) in beta.iter().take(order).enumerate() {
        let m = idx + 1;
        if b.is_ring_zero() {
            continue;
        }
        let terms = order / m;
        // c_j = (-1)^j binom(b, j)
        let mut factor = Vec::with_capacity(terms + 1);
        factor.push(R::ring_one());
        for j in 1..=terms {
            let prev: &R = &factor[j - 1];
            let shifted = b.sub(&R::from_rational(&Rational::from_integer(BigInt::from(j - 1))));
            let next = prev.mul(&shifted).neg().div_int(&BigInt::from(j));
            factor.push(next);
        }
        for i in (m..=order).rev() {
            let mut v = acc[i].clone();
            for j in 1..=i / m {
                if !factor[j].is_ring_zero() {
                    v = v.add(&factor[j].mul(&acc[i - j * m]));
                }
            }
            acc[i] = v;
        }
    }
    acc
}

/// Integer exponents keep every intermediate coefficient an integer;
/// multiplying by `(1 - x^m)` and dividing by it are in-place sweeps.
pub fn euler_product_integral(beta: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for (idx, b) in beta.iter().take(order).enumerate() {
        let m = idx + 1;
        let reps = b.abs().to_usize().unwrap_or(usize::MAX);
        let terms = order / m;
        if reps == 0 {
            continue;
        }
        if reps <= terms {
            for _ in 0..reps {
                if b.is_positive() {
                    for i in (m..=order).rev() {
                        let (lo, hi) = acc.split_at_mut(i);
                        hi[0] -= &lo[i - m];
                    }
                } else {
                    for i in m..=order {
                        let (lo, hi) = acc.split_at_mut(i);
                        hi[0] += &lo[i - m];
                    }
                }
            }
        } else {
            let mut factor = Vec::with_capacity(terms + 1);
            factor.push(BigInt::one());
            for j in 1..=terms {
                let next = -(&factor[j - 1] * (b - BigInt::from(j - 1))) / BigInt::from(j);
                factor.push(next);
            }
            for i in (m..=order).rev() {
                let mut v = acc[i].clone();
                for j in 1..=i / m {
                    v += &factor[j] * &acc[i - j * m];
                }
                acc[i] = v;
            }
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: CoefficientRing> PowerSeries<R> {
    /// Series whose order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least x^0");
        PowerSeries { coeffs }
    }

    /// Takes the first `order + 1` entries, zero-padding if `coeffs` is short.
    pub fn from_prefix(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::ring_zero());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![R::ring_zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::ring_one();
        s
    }

    /// `x` (or `0` when `order == 0`).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::ring_one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_prefix(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(R::neg).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![R::ring_zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_ring_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::new(out))
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_ring_zero() {
            return Err(SeriesError::NonZeroConstant);
        }
        let n_max = self.order();
        // k * a_k, reused by every row
        let weighted: Vec<R> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.mul_int(&BigInt::from(k)))
            .collect();
        let mut e = Vec::with_capacity(n_max + 1);
        e.push(R::ring_one());
        for n in 1..=n_max {
            let mut acc = R::ring_zero();
            for k in 1..=n {
                if !weighted[k].is_ring_zero() {
                    acc = acc.add(&weighted[k].mul(&e[n - k]));
                }
            }
            e.push(acc.div_int(&BigInt::from(n)));
        }
        Ok(Self::new(e))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != R::ring_one() {
            return Err(SeriesError::ConstantNotOne);
        }
        let n_max = self.order();
        let mut l = Vec::with_capacity(n_max + 1);
        l.push(R::ring_zero());
        // k * L_k
        let mut weighted: Vec<R> = vec![R::ring_zero()];
        for n in 1..=n_max {
            let mut acc = self.coeffs[n].mul_int(&BigInt::from(n));
            for k in 1..n {
                if !self.coeffs[n - k].is_ring_zero() {
                    acc = acc.sub(&weighted[k].mul(&self.coeffs[n - k]));
                }
            }
            weighted.push(acc.clone());
            l.push(acc.div_int(&BigInt::from(n)));
        }
        Ok(Self::new(l))
    }

    /// `exp(e log(a))` for constant term 1.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self, SeriesError> {
        self.log()?.scale(e).exp()
    }

    /// Formal derivative, keeping the order (top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out: Vec<R> = (1..=n)
            .map(|k| self.coeffs[k].mul_int(&BigInt::from(k)))
            .collect();
        out.push(R::ring_zero());
        Self::new(out)
    }
}

/// `prod_{m=1..order} (1 - x^m)^{beta(m)}` truncated at `order`, where
/// `beta[m-1] = β(m)`. Factors with `m > order` cannot reach `x^order`.
///
/// # Panics
/// If fewer than `order` exponents are supplied.
pub fn euler_product<R: CoefficientRing>(beta: &[R], order: usize) -> PowerSeries<R> {
    assert!(beta.len() >= order, "need β(1..={order}), got {} values", beta.len());
    PowerSeries::new(R::euler_product_kernel(beta, order))
}
