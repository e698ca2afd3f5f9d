//! Checkable forms of the congruence-inheritance and exact-vanishing
//! results, and the sequences they are applied to: Ramanujan's τ,
//! k-colored partitions and cyclotomic polynomials.
//!
//! "Indices in (Z/pZ)^×" is read throughout as "indices not divisible by p".
//! A rational `u/v` is reduced mod `p` as `u v^{-1}` when `p ∤ v`; anything
//! else is not p-integral and is reported as an error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arithfn::{euler_phi, mobius};
use crate::bell::{exponents_from_values, recover_driver, recover_driver_integral, BellExponents};
use crate::poly::Polynomial;
use crate::scalar::{format_rational, is_integer, Rational};
use crate::series::{euler_product, euler_product_integral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value {value} at index {index} is not {p}-integral")]
    NotPIntegral { index: usize, value: String, p: u64 },
    #[error("sequence has {available} terms after index 0, limit {limit} requested")]
    TooShort { limit: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Congruence,
    Vanishing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub residue: String,
}

/// Outcome of a sweep. `verdict` is true exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub theorem: Theorem,
    pub p: u64,
    pub limit: usize,
    pub hypothesis_ok: bool,
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    fn new(theorem: Theorem, p: u64, limit: usize, hypothesis_ok: bool, violations: Vec<Violation>) -> Self {
        CongruenceReport {
            theorem,
            p,
            limit,
            hypothesis_ok,
            verdict: violations.is_empty(),
            violations,
        }
    }
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<(), CongruenceError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CongruenceError::NotPrime(p))
    }
}

/// `r mod p` in `0..p`, or `None` when `p` divides the reduced denominator.
pub fn residue_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb);
    // p is prime, so den^(p-2) is the inverse
    let inv = den.modpow(&BigInt::from(p - 2), &pb);
    Some((num * inv).mod_floor(&pb).to_u64().expect("residue < p"))
}

fn residue_at(r: &Rational, p: u64, index: usize) -> Result<u64, CongruenceError> {
    residue_mod(r, p).ok_or_else(|| CongruenceError::NotPIntegral {
        index,
        value: format_rational(r),
        p,
    })
}

/// Whether `β(m) ≡ 0 (mod p)` for every `m <= limit` with `p ∤ m`.
///
/// Every such `β(m)` must be p-integral; the first one that is not is an error.
pub fn check_exponent_hypothesis(
    beta: &BellExponents,
    p: u64,
    limit: usize,
) -> Result<bool, CongruenceError> {
    require_prime(p)?;
    let limit = limit.min(beta.limit());
    let mut ok = true;
    for m in (1..=limit).filter(|m| *m as u64 % p != 0) {
        if residue_at(beta.get(m), p, m)? != 0 {
            ok = false;
        }
    }
    Ok(ok)
}

/// Whether `β(m) = 0` exactly for every `m <= limit` with `p ∤ m`.
pub fn check_vanishing_hypothesis(beta: &BellExponents, p: u64, limit: usize) -> bool {
    (1..=limit.min(beta.limit()))
        .filter(|m| *m as u64 % p != 0)
        .all(|m| beta.get(m).is_zero())
}

fn check_length(a: &[Rational], limit: usize) -> Result<(), CongruenceError> {
    let available = a.len().saturating_sub(1);
    if available < limit {
        return Err(CongruenceError::TooShort { limit, available });
    }
    Ok(())
}

/// Exponents of the driver underlying `a(0..=limit)`, when `a(0) = 1`.
fn underlying_exponents(a: &[Rational], limit: usize) -> Option<BellExponents> {
    let a = &a[..=limit];
    let g = if a.iter().all(is_integer) {
        let ints: Vec<BigInt> = a.iter().map(Rational::to_integer).collect();
        recover_driver_integral(&ints)
            .ok()?
            .into_iter()
            .map(Rational::from_integer)
            .collect()
    } else {
        recover_driver(a).ok()?
    };
    Some(exponents_from_values(&g))
}

/// Reports every `n <= limit` with `p ∤ n` and `a(n) ≢ 0 (mod p)`.
///
/// `hypothesis_ok` records whether the exponents of the driver recovered
/// from `a` satisfy the congruence hypothesis.
pub fn verify_congruence(
    a: &[Rational],
    p: u64,
    limit: usize,
) -> Result<CongruenceReport, CongruenceError> {
    require_prime(p)?;
    check_length(a, limit)?;
    let mut violations = Vec::new();
    for n in (1..=limit).filter(|n| *n as u64 % p != 0) {
        let r = residue_at(&a[n], p, n)?;
        if r != 0 {
            violations.push(Violation {
                n,
                residue: r.to_string(),
            });
        }
    }
    let hypothesis_ok = underlying_exponents(a, limit)
        .map(|beta| matches!(check_exponent_hypothesis(&beta, p, limit), Ok(true)))
        .unwrap_or(false);
    Ok(CongruenceReport::new(Theorem::Congruence, p, limit, hypothesis_ok, violations))
}

/// Reports every `n <= limit` with `p ∤ n` and `a(n) != 0` (exact test).
pub fn verify_vanishing(
    a: &[Rational],
    p: u64,
    limit: usize,
) -> Result<CongruenceReport, CongruenceError> {
    require_prime(p)?;
    check_length(a, limit)?;
    let violations = (1..=limit)
        .filter(|n| *n as u64 % p != 0 && !a[*n].is_zero())
        .map(|n| Violation {
            n,
            residue: format_rational(&a[n]),
        })
        .collect();
    let hypothesis_ok = underlying_exponents(a, limit)
        .map(|beta| check_vanishing_hypothesis(&beta, p, limit))
        .unwrap_or(false);
    Ok(CongruenceReport::new(Theorem::Vanishing, p, limit, hypothesis_ok, violations))
}

/// Coefficients `a(0..=limit)` of `prod (1 - x^m)^b` for a constant integer `b`.
pub fn constant_exponent_series(b: i64, limit: usize) -> Vec<BigInt> {
    euler_product_integral(&vec![BigInt::from(b); limit], limit)
}

/// `τ(1..=n)` from `Δ(q) = q prod (1 - q^m)^24`, so `τ(k) = a(k - 1)`.
pub fn tau(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "tau is indexed from 1");
    constant_exponent_series(24, n - 1)
}

/// `p_k(0..=n)`, the coefficients of `prod (1 - x^m)^{-k}`.
pub fn colored_partitions(k: u64, n: usize) -> Vec<BigInt> {
    assert!(k >= 1, "need at least one color");
    constant_exponent_series(-(k as i64), n)
}

/// `prod_{m | q} (1 - x^m)^{μ(q/m)}`, a polynomial of degree `φ(q)`.
///
/// For `q = 1` this is `1 - x`, the negative of the usual `x - 1`; for
/// `q >= 2` it coincides with the usual cyclotomic polynomial.
pub fn cyclotomic(q: u64) -> Polynomial {
    assert!(q >= 1, "cyclotomic index must be positive");
    let degree = euler_phi(q).to_integer().to_usize().expect("phi(q) fits");
    let beta: Vec<Rational> = (1..=degree as u64)
        .map(|m| {
            let e = if q % m == 0 { mobius(q / m).expect("q/m >= 1") } else { 0 };
            Rational::from_integer(BigInt::from(e))
        })
        .collect();
    Polynomial::new(euler_product(&beta, degree).into_coeffs())
}
