//! Appell and Sheffer polynomial families generated by Bell recurrences.
//!
//! Each family has a dedicated recurrence (the primary route) and a
//! polynomial-valued driver `g` that, pushed through the generic transform
//! over `Q[x]`, reproduces the family up to normalization. Laguerre uses an
//! ordinary generating function in `t`; every other family is exponential
//! (coefficient of `t^n / n!`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arithfn::ArithmeticFunction;
use crate::bell::recurrence_from_values;
use crate::poly::Polynomial;
use crate::scalar::{binomial_rows, factorials, format_rational, int, Rational};
use crate::series::CoefficientRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyFamError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` requires parameter `{param}`")]
    MissingParam {
        family: Family,
        param: &'static str,
    },
    #[error("family `{0}` takes no parameter")]
    UnexpectedParam(Family),
    #[error("charlier parameter a must be nonzero")]
    ZeroCharlierParameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Bernoulli,
    Euler,
    Hermite,
    Touchard,
    Laguerre,
    Charlier,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Bernoulli,
        Family::Euler,
        Family::Hermite,
        Family::Touchard,
        Family::Laguerre,
        Family::Charlier,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
            Family::Hermite => "hermite",
            Family::Touchard => "touchard",
            Family::Laguerre => "laguerre",
            Family::Charlier => "charlier",
        }
    }

    /// Name of the family's rational parameter, if it has one.
    pub fn param_name(self) -> Option<&'static str> {
        match self {
            Family::Laguerre => Some("alpha"),
            Family::Charlier => Some("a"),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = PolyFamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| PolyFamError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `sum P_n(x) t^n / n!`
    Exponential,
    /// `sum P_n(x) t^n`
    Ordinary,
}

/// A family together with its parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    family: Family,
    param: Option<Rational>,
}

impl FamilySpec {
    pub fn new(family: Family, param: Option<Rational>) -> Result<Self, PolyFamError> {
        match (family.param_name(), &param) {
            (Some(name), None) => {
                return Err(PolyFamError::MissingParam {
                    family,
                    param: name,
                })
            }
            (None, Some(_)) => return Err(PolyFamError::UnexpectedParam(family)),
            _ => {}
        }
        if family == Family::Charlier && param.as_ref().is_some_and(Zero::is_zero) {
            return Err(PolyFamError::ZeroCharlierParameter);
        }
        Ok(FamilySpec { family, param })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> Option<&Rational> {
        self.param.as_ref()
    }

    pub fn normalization(&self) -> Normalization {
        match self.family {
            Family::Laguerre => Normalization::Ordinary,
            _ => Normalization::Exponential,
        }
    }

    /// `(name, value)` pairs for serialization.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match (self.family.param_name(), &self.param) {
            (Some(name), Some(v)) => vec![(name, format_rational(v))],
            _ => Vec::new(),
        }
    }

    fn p(&self) -> &Rational {
        self.param.as_ref().expect("validated in new")
    }

    /// Degrees `0..=n` by the family's own recurrence.
    pub fn table(&self, n: usize) -> Vec<Polynomial> {
        match self.family {
            Family::Bernoulli => bernoulli_table(n),
            Family::Euler => euler_table(n),
            Family::Hermite => hermite_table(n),
            Family::Touchard => touchard_table(n),
            Family::Laguerre => laguerre_table(n, self.p()),
            Family::Charlier => charlier_table(n, self.p()),
        }
    }

    pub fn poly(&self, n: usize) -> Polynomial {
        self.table(n).pop().expect("table has n + 1 entries")
    }

    /// The family's driver `g(1..=limit)` with values in `Q[x]`.
    pub fn driver(&self, limit: usize) -> ArithmeticFunction<Polynomial> {
        let x = Polynomial::x();
        let fact = factorials(limit);
        let values: Vec<Polynomial> = match self.family {
            Family::Bernoulli | Family::Euler => {
                let b = bernoulli_numbers(limit);
                // both drivers start with the t^1 term 1/2 - x
                let half = Polynomial::constant(Rational::new(BigInt::one(), BigInt::from(2)));
                (1..=limit)
                    .map(|n| {
                        if n == 1 {
                            return half.sub(&x);
                        }
                        let weight = match self.family {
                            Family::Euler => BigInt::from(2).pow(n as u32) - 1u32,
                            _ => BigInt::one(),
                        };
                        Polynomial::constant(
                            &b[n] * Rational::new(weight, fact[n].clone()),
                        )
                    })
                    .collect()
            }
            Family::Hermite => (1..=limit)
                .map(|n| match n {
                    1 => x.scale(&int(-2)),
                    2 => Polynomial::constant(int(2)),
                    _ => Polynomial::zero(),
                })
                .collect(),
            Family::Touchard => (1..=limit)
                .map(|n| x.neg().div_int(&fact[n - 1]))
                .collect(),
            Family::Laguerre => {
                let shift = Polynomial::constant(self.p() + int(1));
                (1..=limit)
                    .map(|n| x.mul_int(&BigInt::from(n)).sub(&shift))
                    .collect()
            }
            Family::Charlier => {
                let a = self.p();
                (1..=limit)
                    .map(|n| {
                        let mut c = Rational::one() / num_traits::Pow::pow(a, n as u32);
                        if n % 2 == 1 {
                            c = -c;
                        }
                        let term = x.scale(&c);
                        if n == 1 {
                            term.add(&Polynomial::constant(a.clone()))
                        } else {
                            term
                        }
                    })
                    .collect()
            }
        };
        ArithmeticFunction::from_values(self.family.as_str(), values)
    }

    /// Degrees `0..=n` by the generic transform over `Q[x]`, rescaled by
    /// `k!` for exponential families.
    pub fn table_via_transform(&self, n: usize) -> Vec<Polynomial> {
        let g = self
            .driver(n)
            .values(n)
            .expect("driver table covers 1..=n");
        let a = recurrence_from_values(&g, n).into_values();
        match self.normalization() {
            Normalization::Ordinary => a,
            Normalization::Exponential => {
                let fact = factorials(n);
                a.into_iter()
                    .zip(fact)
                    .map(|(p, f)| p.mul_int(&f))
                    .collect()
            }
        }
    }
}

/// `B_0..=B_n` with `B_1 = -1/2`, from `sum_{j=0..n} C(n+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let binom = binomial_rows(n + 1);
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|j| &b[j] * Rational::from_integer(binom[m + 1][j].clone()))
            .sum();
        b.push(-s / int(m as i64 + 1));
    }
    b
}

/// `B_n(x) = (x - 1/2) B_{n-1}(x) - sum_{k=2..n} C(n-1, k-1) (B_k / k) B_{n-k}(x)`.
pub fn bernoulli_table(n: usize) -> Vec<Polynomial> {
    appell_table(n, |k, b| b / int(k as i64))
}

/// `E_n(x) = (x - 1/2) E_{n-1}(x) - sum_{k=2..n} C(n-1, k-1) ((2^k - 1) B_k / k) E_{n-k}(x)`.
pub fn euler_table(n: usize) -> Vec<Polynomial> {
    appell_table(n, |k, b| {
        let w = BigInt::from(2).pow(k as u32) - 1u32;
        b * Rational::from_integer(w) / int(k as i64)
    })
}

fn appell_table(n: usize, weight: impl Fn(usize, &Rational) -> Rational) -> Vec<Polynomial> {
    let b = bernoulli_numbers(n);
    let binom = binomial_rows(n);
    let lead = Polynomial::x().sub(&Polynomial::constant(Rational::new(1.into(), 2.into())));
    let mut out: Vec<Polynomial> = vec![Polynomial::constant(Rational::one())];
    for m in 1..=n {
        let mut p = lead.mul(&out[m - 1]);
        for k in 2..=m {
            let c = weight(k, &b[k]);
            if c.is_zero() {
                continue;
            }
            let c = c * Rational::from_integer(binom[m - 1][k - 1].clone());
            p = p.sub(&out[m - k].scale(&c));
        }
        out.push(p);
    }
    out
}

/// `H_n(x) = 2x H_{n-1}(x) - 2(n-1) H_{n-2}(x)`.
pub fn hermite_table(n: usize) -> Vec<Polynomial> {
    let two_x = Polynomial::x().scale(&int(2));
    let mut out = vec![Polynomial::constant(int(1))];
    for m in 1..=n {
        let mut p = two_x.mul(&out[m - 1]);
        if m >= 2 {
            p = p.sub(&out[m - 2].scale(&int(2 * (m as i64 - 1))));
        }
        out.push(p);
    }
    out
}

/// `T_n(x) = x sum_{j=0..n-1} C(n-1, j) T_j(x)`.
pub fn touchard_table(n: usize) -> Vec<Polynomial> {
    let binom = binomial_rows(n);
    let x = Polynomial::x();
    let mut out = vec![Polynomial::constant(int(1))];
    for m in 1..=n {
        let s = (0..m).fold(Polynomial::zero(), |acc, j| {
            acc.add(&out[j].mul_int(&binom[m - 1][j]))
        });
        out.push(x.mul(&s));
    }
    out
}

/// `n L_n(x) = -sum_{k=1..n} (x k - alpha - 1) L_{n-k}(x)`.
pub fn laguerre_table(n: usize, alpha: &Rational) -> Vec<Polynomial> {
    let x = Polynomial::x();
    let shift = Polynomial::constant(alpha + int(1));
    let mut out = vec![Polynomial::constant(int(1))];
    for m in 1..=n {
        let s = (1..=m).fold(Polynomial::zero(), |acc, k| {
            let g = x.mul_int(&BigInt::from(k)).sub(&shift);
            acc.add(&g.mul(&out[m - k]))
        });
        out.push(s.neg().div_int(&BigInt::from(m)));
    }
    out
}

/// `C_n(x; a) = (x/a - a) C_{n-1} - sum_{k=2..n} C(n-1, k-1) (k-1)! x (-1)^k / a^k C_{n-k}`.
///
/// # Panics
/// If `a` is zero.
pub fn charlier_table(n: usize, a: &Rational) -> Vec<Polynomial> {
    assert!(!a.is_zero(), "charlier parameter must be nonzero");
    let binom = binomial_rows(n);
    let fact = factorials(n);
    let x = Polynomial::x();
    let inv_a = Rational::one() / a;
    let lead = x.scale(&inv_a).sub(&Polynomial::constant(a.clone()));
    let mut out = vec![Polynomial::constant(int(1))];
    for m in 1..=n {
        let mut p = lead.mul(&out[m - 1]);
        let mut inv_pow = inv_a.clone();
        for k in 2..=m {
            inv_pow = &inv_pow * &inv_a;
            let mut c = &inv_pow * Rational::from_integer(&binom[m - 1][k - 1] * &fact[k - 1]);
            if k % 2 == 1 {
                c = -c;
            }
            p = p.sub(&x.mul(&out[m - k]).scale(&c));
        }
        out.push(p);
    }
    out
}

pub fn bernoulli_poly(n: usize) -> Polynomial {
    bernoulli_table(n).pop().unwrap()
}

pub fn euler_poly(n: usize) -> Polynomial {
    euler_table(n).pop().unwrap()
}

pub fn hermite_poly(n: usize) -> Polynomial {
    hermite_table(n).pop().unwrap()
}

pub fn touchard_poly(n: usize) -> Polynomial {
    touchard_table(n).pop().unwrap()
}

pub fn laguerre_poly(n: usize, alpha: &Rational) -> Polynomial {
    laguerre_table(n, alpha).pop().unwrap()
}

pub fn charlier_poly(n: usize, a: &Rational) -> Result<Polynomial, PolyFamError> {
    if a.is_zero() {
        return Err(PolyFamError::ZeroCharlierParameter);
    }
    Ok(charlier_table(n, a).pop().unwrap())
}
