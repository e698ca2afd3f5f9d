//! Arithmetic functions: factorization, the classical multiplicative
//! functions, Dirichlet convolution and the named driver registry.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::scalar::{int, is_integer, parse_rational, Rational};

pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ArithError {
    #[error("arithmetic functions are defined for n >= 1, got n = {n}")]
    Domain { n: u64 },
    #[error("driver `{name}` has {len} values, cannot evaluate at n = {n}")]
    OutOfRange { name: String, n: u64, len: usize },
    #[error("unknown driver `{0}`")]
    UnknownDriver(String),
    #[error("driver `{driver}` takes {expected} parameter(s), got {got}")]
    Arity {
        driver: String,
        expected: usize,
        got: usize,
    },
    #[error("driver `{driver}`: {message}")]
    BadParam { driver: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Smallest-prime-factor table for `n <= bound`; trial division above it.
#[derive(Debug, Clone)]
pub struct Factorizer {
    spf: Vec<u32>,
}

impl Factorizer {
    pub fn new(bound: u64) -> Self {
        let bound = bound.min(u32::MAX as u64 - 1) as usize;
        let mut spf = vec![0u32; bound + 1];
        for i in 2..=bound {
            if spf[i] == 0 {
                let mut j = i;
                while j <= bound {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Factorizer { spf }
    }

    pub fn bound(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    /// Prime factorization as `(p, e)` pairs in increasing `p`. `1` maps to `[]`.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n >= 1, "cannot factor 0");
        let mut out: Vec<(u64, u32)> = Vec::new();
        let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        };
        if n > self.bound() {
            let mut p = 2u64;
            while p * p <= n && n > self.bound() {
                while n % p == 0 {
                    push(p, &mut out);
                    n /= p;
                }
                p += if p == 2 { 1 } else { 2 };
            }
            if n > self.bound() {
                // remaining cofactor has no factor below sqrt(n)
                push(n, &mut out);
                return out;
            }
        }
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            push(p, &mut out);
            n /= p;
        }
        out
    }
}

static SIEVE: OnceLock<Factorizer> = OnceLock::new();

/// Sets the bound of the shared sieve. Returns `false` if the sieve was
/// already built (the existing one is kept).
pub fn configure_sieve(bound: u64) -> bool {
    let mut fresh = false;
    SIEVE.get_or_init(|| {
        fresh = true;
        Factorizer::new(bound)
    });
    fresh
}

pub fn factorizer() -> &'static Factorizer {
    SIEVE.get_or_init(|| Factorizer::new(DEFAULT_SIEVE_BOUND))
}

pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    factorizer().factorize(n)
}

/// All positive divisors of `n`, ascending, by trial up to `sqrt(n)`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "0 has no divisor list");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(n: u64) -> Result<i8, ArithError> {
    if n == 0 {
        return Err(ArithError::Domain { n });
    }
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

fn mu(n: u64) -> i8 {
    mobius(n).expect("n >= 1")
}

/// `(f * g)(n) = sum over d | n of f(d) g(n/d)`.
pub fn dirichlet_convolve(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    n: u64,
) -> Result<Rational, ArithError> {
    if n == 0 {
        return Err(ArithError::Domain { n });
    }
    let mut acc = Rational::zero();
    for d in divisors(n) {
        acc += f.eval(d)? * g.eval(n / d)?;
    }
    Ok(acc)
}

pub fn euler_phi(n: u64) -> Rational {
    jordan_totient(1, n)
}

/// `J_k(n) = n^k * prod over p | n of (1 - p^-k)`; `J_0 = ε`.
pub fn jordan_totient(k: u32, n: u64) -> Rational {
    assert!(n >= 1, "jordan_totient needs n >= 1");
    let mut acc = BigInt::one();
    for (p, e) in factorize(n) {
        let pk = BigInt::from(p).pow(k);
        acc *= (&pk - 1u32) * pk.pow(e - 1);
    }
    Rational::from_integer(acc)
}

/// `σ_k(n)`, the sum of `k`-th powers of divisors.
pub fn sigma(k: u32, n: u64) -> Rational {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut acc = BigInt::one();
    for (p, e) in factorize(n) {
        let pk = BigInt::from(p).pow(k);
        let mut term = BigInt::one();
        let mut sum = BigInt::one();
        for _ in 0..e {
            term *= &pk;
            sum += &term;
        }
        acc *= sum;
    }
    Rational::from_integer(acc)
}

/// `c_q(n) = sum over d | gcd(q, n) of d μ(q/d)`.
pub fn ramanujan_sum(q: u64, n: u64) -> Rational {
    assert!(q >= 1 && n >= 1, "ramanujan_sum needs q, n >= 1");
    let g = q.gcd(&n);
    let total: i64 = divisors(g)
        .into_iter()
        .map(|d| d as i64 * mu(q / d) as i64)
        .sum();
    int(total)
}

pub fn chi4(n: u64) -> i8 {
    match n % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Four-square count `8σ(n) - 32σ(n/4)`, the second term present only when `4 | n`.
pub fn r4(n: u64) -> Rational {
    let mut v = sigma(1, n) * int(8);
    if n % 4 == 0 {
        v -= sigma(1, n / 4) * int(32);
    }
    v
}

pub fn von_mangoldt_float(n: u64) -> f64 {
    assert!(n >= 1, "von_mangoldt needs n >= 1");
    match factorize(n).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

type Evaluator<T> = dyn Fn(u64) -> Result<T, ArithError> + Send + Sync;

/// A named map `n ↦ value` on the positive integers.
///
/// Evaluators are pure; clones share the same closure.
pub struct ArithmeticFunction<T = Rational> {
    name: String,
    params: Vec<Rational>,
    eval: Arc<Evaluator<T>>,
}

impl<T> Clone for ArithmeticFunction<T> {
    fn clone(&self) -> Self {
        ArithmeticFunction {
            name: self.name.clone(),
            params: self.params.clone(),
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<T> fmt::Debug for ArithmeticFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithmeticFunction")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl<T: Clone + Send + Sync + 'static> ArithmeticFunction<T> {
    pub fn new<F>(name: impl Into<String>, params: Vec<Rational>, f: F) -> Self
    where
        F: Fn(u64) -> T + Send + Sync + 'static,
    {
        Self::fallible(name, params, move |n| Ok(f(n)))
    }

    pub fn fallible<F>(name: impl Into<String>, params: Vec<Rational>, f: F) -> Self
    where
        F: Fn(u64) -> Result<T, ArithError> + Send + Sync + 'static,
    {
        ArithmeticFunction {
            name: name.into(),
            params,
            eval: Arc::new(f),
        }
    }

    /// A driver backed by a finite table, `values[i] = g(i + 1)`.
    /// Evaluating past the end is an error, never an implicit zero.
    pub fn from_values(name: impl Into<String>, values: Vec<T>) -> Self {
        let name = name.into();
        let table = Arc::new(values);
        let label = name.clone();
        Self::fallible(name, Vec::new(), move |n| {
            table
                .get(n as usize - 1)
                .cloned()
                .ok_or_else(|| ArithError::OutOfRange {
                    name: label.clone(),
                    n,
                    len: table.len(),
                })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    pub fn eval(&self, n: u64) -> Result<T, ArithError> {
        if n == 0 {
            return Err(ArithError::Domain { n });
        }
        (self.eval)(n)
    }

    /// `[g(1), ..., g(limit)]`.
    pub fn values(&self, limit: usize) -> Result<Vec<T>, ArithError> {
        (1..=limit as u64).map(|n| self.eval(n)).collect()
    }
}

/// A registry driver: exact, or float-only (the logarithm).
#[derive(Debug, Clone)]
pub enum Driver {
    Exact(ArithmeticFunction<Rational>),
    Float(ArithmeticFunction<f64>),
}

impl Driver {
    pub fn name(&self) -> &str {
        match self {
            Driver::Exact(f) => f.name(),
            Driver::Float(f) => f.name(),
        }
    }
}

pub const DRIVER_NAMES: &[&str] = &[
    "epsilon",
    "power_k",
    "chi4",
    "phi",
    "ramanujan_q",
    "log_float",
    "r4",
    "constant_c",
    "custom_file",
];

fn expect_arity(driver: &str, params: &[Rational], expected: usize) -> Result<(), ArithError> {
    if params.len() != expected {
        return Err(ArithError::Arity {
            driver: driver.to_string(),
            expected,
            got: params.len(),
        });
    }
    Ok(())
}

fn small_natural(driver: &str, r: &Rational, min: u64) -> Result<u64, ArithError> {
    let bad = || ArithError::BadParam {
        driver: driver.to_string(),
        message: format!("expected an integer >= {min}, got {r}"),
    };
    if !is_integer(r) || r.is_negative() {
        return Err(bad());
    }
    let v = r.numer().to_u64().ok_or_else(bad)?;
    if v < min {
        return Err(bad());
    }
    Ok(v)
}

/// Looks up a named driver. `custom_file` requires `file`; every other
/// driver rejects it.
pub fn builtin_driver(
    name: &str,
    params: &[Rational],
    file: Option<&Path>,
) -> Result<Driver, ArithError> {
    if name != "custom_file" && file.is_some() {
        return Err(ArithError::BadParam {
            driver: name.to_string(),
            message: "only custom_file takes a file".into(),
        });
    }
    let exact = |f: ArithmeticFunction| Ok(Driver::Exact(f));
    match name {
        "epsilon" => {
            expect_arity(name, params, 0)?;
            exact(ArithmeticFunction::new(name, vec![], |n| {
                int(i64::from(n == 1))
            }))
        }
        "power_k" => {
            expect_arity(name, params, 1)?;
            let k = small_natural(name, &params[0], 0)?;
            let k = u32::try_from(k).map_err(|_| ArithError::BadParam {
                driver: name.to_string(),
                message: format!("exponent {k} is too large"),
            })?;
            exact(ArithmeticFunction::new(name, params.to_vec(), move |n| {
                Rational::from_integer(BigInt::from(n).pow(k))
            }))
        }
        "chi4" => {
            expect_arity(name, params, 0)?;
            exact(ArithmeticFunction::new(name, vec![], |n| int(chi4(n) as i64)))
        }
        "phi" => {
            expect_arity(name, params, 0)?;
            exact(ArithmeticFunction::new(name, vec![], euler_phi))
        }
        "ramanujan_q" => {
            expect_arity(name, params, 1)?;
            let q = small_natural(name, &params[0], 1)?;
            exact(ArithmeticFunction::new(name, params.to_vec(), move |n| {
                ramanujan_sum(q, n)
            }))
        }
        "log_float" => {
            expect_arity(name, params, 0)?;
            Ok(Driver::Float(ArithmeticFunction::new(name, vec![], |n| {
                (n as f64).ln()
            })))
        }
        "r4" => {
            expect_arity(name, params, 0)?;
            exact(ArithmeticFunction::new(name, vec![], r4))
        }
        "constant_c" => {
            expect_arity(name, params, 1)?;
            let c = params[0].clone();
            exact(ArithmeticFunction::new(name, params.to_vec(), move |_| c.clone()))
        }
        "custom_file" => {
            expect_arity(name, params, 0)?;
            let path = file.ok_or_else(|| ArithError::BadParam {
                driver: name.to_string(),
                message: "a driver file is required".into(),
            })?;
            exact(load_custom_driver(path)?)
        }
        other => Err(ArithError::UnknownDriver(other.to_string())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DriverFile {
    name: String,
    values: Vec<String>,
}

/// Line numbers (1-based) of the string literals inside the array that
/// follows `key`, in order.
fn array_string_lines(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let Some(start) = text.find(&needle) else {
        return Vec::new();
    };
    let mut lines = Vec::new();
    let mut line = 1 + text[..start].matches('\n').count();
    let mut chars = text[start + needle.len()..].chars();
    let mut depth = 0usize;
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            '[' => depth += 1,
            ']' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            '"' if depth == 1 => {
                lines.push(line);
                while let Some(s) = chars.next() {
                    match s {
                        '\\' => {
                            chars.next();
                        }
                        '"' => break,
                        '\n' => line += 1,
                        _ => {}
                    }
                }
            }
            _ => {}
        }
    }
    lines
}

/// Parses the driver-file JSON `{"name": "...", "values": ["p/q", ...]}`.
pub fn parse_custom_driver(text: &str) -> Result<ArithmeticFunction, ArithError> {
    let file: DriverFile = serde_json::from_str(text).map_err(|e| ArithError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let lines = array_string_lines(text, "values");
    let mut values = Vec::with_capacity(file.values.len());
    for (i, entry) in file.values.iter().enumerate() {
        let v = parse_rational(entry).map_err(|e| ArithError::Parse {
            line: lines.get(i).copied().unwrap_or(0),
            message: format!("values[{i}]: {e}"),
        })?;
        values.push(v);
    }
    Ok(ArithmeticFunction::from_values(file.name, values))
}

pub fn load_custom_driver(path: &Path) -> Result<ArithmeticFunction, ArithError> {
    let text = std::fs::read_to_string(path).map_err(|source| ArithError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_custom_driver(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact(name: &str, params: &[Rational]) -> ArithmeticFunction {
        match builtin_driver(name, params, None).unwrap() {
            Driver::Exact(f) => f,
            Driver::Float(_) => panic!("{name} is float-only"),
        }
    }

    fn one() -> ArithmeticFunction {
        ArithmeticFunction::new("one", vec![], |_| int(1))
    }

    fn mobius_fn() -> ArithmeticFunction {
        ArithmeticFunction::new("mu", vec![], |n| int(mu(n) as i64))
    }

    fn identity() -> ArithmeticFunction {
        ArithmeticFunction::new("id", vec![], |n| int(n as i64))
    }

    // gcd-counting totient, independent of factorization
    fn phi_by_gcd(n: u64) -> i64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(matches!(mobius(0), Err(ArithError::Domain { n: 0 })));
    }

    #[test]
    fn factorization_above_the_sieve_bound() {
        let small = Factorizer::new(100);
        assert_eq!(small.factorize(1), vec![]);
        assert_eq!(small.factorize(2 * 2 * 101 * 103), vec![(2, 2), (101, 1), (103, 1)]);
        assert_eq!(small.factorize(1_000_003), vec![(1_000_003, 1)]);
        assert_eq!(small.factorize(97 * 97), vec![(97, 2)]);
        let big = Factorizer::new(10_000);
        for n in 1..3000u64 {
            assert_eq!(small.factorize(n), big.factorize(n), "n = {n}");
        }
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        for n in 1..200u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    fn convolution_examples() {
        let eps = dirichlet_convolve(&mobius_fn(), &one(), 1).unwrap();
        assert_eq!(eps, int(1));
        assert_eq!(dirichlet_convolve(&mobius_fn(), &one(), 6).unwrap(), int(0));
        let expected = [frac(1, 1), frac(1, 2), frac(2, 3), frac(1, 2), frac(4, 5), frac(1, 3)];
        for (m, want) in (1..=6u64).zip(expected) {
            let got = dirichlet_convolve(&mobius_fn(), &identity(), m).unwrap() / int(m as i64);
            assert_eq!(got, want);
            assert_eq!(got, frac(phi_by_gcd(m), m as i64));
        }
        let sigma_fn = ArithmeticFunction::new("sigma", vec![], |n| {
            // brute-force divisor sum, independent of the multiplicative formula
            int((1..=n).filter(|d| n % d == 0).sum::<u64>() as i64)
        });
        for n in 1..=50u64 {
            assert_eq!(dirichlet_convolve(&mobius_fn(), &sigma_fn, n).unwrap(), int(n as i64));
        }
        assert!(matches!(
            dirichlet_convolve(&one(), &one(), 0),
            Err(ArithError::Domain { .. })
        ));
    }

    #[test]
    fn mobius_times_one_is_epsilon() {
        for n in 1..=10_000u64 {
            let v = dirichlet_convolve(&mobius_fn(), &one(), n).unwrap();
            assert_eq!(v, int(i64::from(n == 1)), "n = {n}");
        }
    }

    #[test]
    fn mobius_inversion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f: Vec<i64> = (0..2000).map(|_| rng.gen_range(-9..=9)).collect();
        let summatory: Vec<Rational> = (1..=2000u64)
            .map(|n| int(divisors(n).iter().map(|&d| f[d as usize - 1]).sum()))
            .collect();
        let big_f = ArithmeticFunction::from_values("F", summatory);
        for n in 1..=2000u64 {
            let back = dirichlet_convolve(&mobius_fn(), &big_f, n).unwrap();
            assert_eq!(back, int(f[n as usize - 1]), "n = {n}");
        }
    }

    #[test]
    fn totients_and_sigma() {
        assert_eq!(euler_phi(1), int(1));
        assert_eq!(jordan_totient(2, 4), int(12));
        assert_eq!(sigma(1, 6), int(12));
        assert_eq!(sigma(0, 12), int(6));
        assert_eq!(jordan_totient(0, 1), int(1));
        assert_eq!(jordan_totient(0, 5), int(0));
        for n in 1..=300u64 {
            assert_eq!(euler_phi(n), int(phi_by_gcd(n)));
        }
    }

    #[test]
    fn jordan_totient_matches_divisor_sum() {
        for k in 0..=4u32 {
            for n in 1..=500u64 {
                let by_sum: BigInt = divisors(n)
                    .into_iter()
                    .map(|d| BigInt::from(mu(n / d)) * BigInt::from(d).pow(k))
                    .sum();
                assert_eq!(jordan_totient(k, n), Rational::from_integer(by_sum), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn ramanujan_sums() {
        for n in 1..=30u64 {
            assert_eq!(ramanujan_sum(1, n), int(1));
        }
        assert_eq!(ramanujan_sum(4, 2), int(-2));
        for q in 1..=100u64 {
            assert_eq!(ramanujan_sum(q, 1), int(mu(q) as i64), "q = {q}");
        }
    }

    #[test]
    fn characters_and_four_squares() {
        assert_eq!(chi4(7), -1);
        assert_eq!(chi4(5), 1);
        assert_eq!(chi4(8), 0);
        assert_eq!(r4(1), int(8));
        assert_eq!(r4(4), int(24));
        assert_eq!(von_mangoldt_float(6), 0.0);
        assert_eq!(von_mangoldt_float(1), 0.0);
        assert!((von_mangoldt_float(8) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn r4_matches_brute_force_counts() {
        let bound = 8i64;
        let mut counts = vec![0i64; 51];
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    for d in -bound..=bound {
                        let s = a * a + b * b + c * c + d * d;
                        if (1..=50).contains(&s) {
                            counts[s as usize] += 1;
                        }
                    }
                }
            }
        }
        for n in 1..=50u64 {
            let v = r4(n);
            assert!(is_integer(&(v.clone() / int(8))) && v.is_positive());
            assert_eq!(v, int(counts[n as usize]), "n = {n}");
        }
    }

    #[test]
    fn registry_drivers() {
        let eps = exact("epsilon", &[]);
        assert_eq!(eps.values(3).unwrap(), vec![int(1), int(0), int(0)]);
        let p0 = exact("power_k", &[int(0)]);
        assert!(p0.values(20).unwrap().iter().all(|v| *v == int(1)));
        let phi = exact("phi", &[]);
        assert_eq!(phi.values(4).unwrap(), vec![int(1), int(1), int(2), int(2)]);
        let c = exact("constant_c", &[frac(-3, 2)]);
        assert_eq!(c.eval(17).unwrap(), frac(-3, 2));
        let rq = exact("ramanujan_q", &[int(4)]);
        assert_eq!(rq.eval(2).unwrap(), int(-2));
        assert!(matches!(
            builtin_driver("log_float", &[], None).unwrap(),
            Driver::Float(_)
        ));
    }

    #[test]
    fn registry_errors() {
        assert!(matches!(
            builtin_driver("zeta", &[], None),
            Err(ArithError::UnknownDriver(_))
        ));
        assert!(matches!(
            builtin_driver("power_k", &[], None),
            Err(ArithError::Arity { expected: 1, got: 0, .. })
        ));
        assert!(matches!(
            builtin_driver("power_k", &[frac(1, 2)], None),
            Err(ArithError::BadParam { .. })
        ));
        assert!(matches!(
            builtin_driver("ramanujan_q", &[int(0)], None),
            Err(ArithError::BadParam { .. })
        ));
        assert!(matches!(
            builtin_driver("custom_file", &[], None),
            Err(ArithError::BadParam { .. })
        ));
        assert!(matches!(exact("epsilon", &[]).eval(0), Err(ArithError::Domain { .. })));
    }

    #[test]
    fn custom_driver_files() {
        let g = parse_custom_driver(r#"{"name": "t", "values": ["1", "-1/2", "3"]}"#).unwrap();
        assert_eq!(g.name(), "t");
        assert_eq!(g.eval(2).unwrap(), frac(-1, 2));
        assert!(matches!(
            g.eval(4),
            Err(ArithError::OutOfRange { n: 4, len: 3, .. })
        ));

        let text = "{\n  \"name\": \"bad\",\n  \"values\": [\n    \"1\",\n    \"2/4\"\n  ]\n}";
        match parse_custom_driver(text) {
            Err(ArithError::Parse { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("values[1]"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_custom_driver("{\n\"name\": \"x\",\n\"values\": [1]\n}") {
            Err(ArithError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load_custom_driver(Path::new("/nonexistent/driver.json")),
            Err(ArithError::Io { .. })
        ));
    }
}
