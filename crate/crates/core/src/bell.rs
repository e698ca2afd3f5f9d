//! The Bell transform `F_g(x) = exp(-sum g(n) x^n / n)`.
//!
//! Three independent routes produce the coefficients `a(0..=N)`:
//!
//! * the linear recurrence `n a(n) = -sum_{k=1..n} g(k) a(n-k)`;
//! * complete exponential Bell polynomials,
//!   `a(n) = B_n(-0! g(1), -1! g(2), ..., -(n-1)! g(n)) / n!`;
//! * the Euler product `prod (1 - x^m)^{β(m)}` with `m β(m) = (μ * g)(m)`.
//!
//! They must agree exactly. The recurrence is the default everywhere else.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arithfn::{mobius, ArithError, ArithmeticFunction};
use crate::scalar::{binomial_rows, factorials, Rational};
use crate::series::{euler_product, CoefficientRing};

#[derive(Debug, Error)]
pub enum BellError {
    #[error(transparent)]
    Driver(#[from] ArithError),
    #[error("coefficient sequences must start with a(0) = 1")]
    LeadingCoefficient,
}

/// `β(1..=N)`, stored so that `values()[m - 1] = β(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellExponents<R = Rational> {
    values: Vec<R>,
}

impl<R: CoefficientRing> BellExponents<R> {
    pub fn new(values: Vec<R>) -> Self {
        BellExponents { values }
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// `β(m)`, 1-based.
    pub fn get(&self, m: usize) -> &R {
        assert!(m >= 1, "exponents are indexed from 1");
        &self.values[m - 1]
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn into_values(self) -> Vec<R> {
        self.values
    }
}

/// `a(0..=N)` with `a(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<R = Rational> {
    values: Vec<R>,
}

impl<R: CoefficientRing> Coefficients<R> {
    pub fn new(values: Vec<R>) -> Result<Self, BellError> {
        match values.first() {
            Some(a0) if *a0 == R::ring_one() => Ok(Coefficients { values }),
            _ => Err(BellError::LeadingCoefficient),
        }
    }

    pub fn limit(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> &R {
        &self.values[n]
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn into_values(self) -> Vec<R> {
        self.values
    }
}

/// Which of the three coefficient routes to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPath {
    Recurrence,
    BellPolynomial,
    Product,
}

impl TransformPath {
    pub const ALL: [TransformPath; 3] = [
        TransformPath::Recurrence,
        TransformPath::BellPolynomial,
        TransformPath::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TransformPath::Recurrence => "recurrence",
            TransformPath::BellPolynomial => "bellpoly",
            TransformPath::Product => "product",
        }
    }
}

impl fmt::Display for TransformPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransformPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recurrence" => Ok(TransformPath::Recurrence),
            "bellpoly" => Ok(TransformPath::BellPolynomial),
            "product" => Ok(TransformPath::Product),
            other => Err(format!("unknown path `{other}`")),
        }
    }
}

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

/// `β(m) = (1/m) sum_{d | m} μ(d) g(m/d)` from `g[n-1] = g(n)`, by sieving
/// over the squarefree `d`.
pub fn exponents_from_values<R: CoefficientRing>(g: &[R]) -> BellExponents<R> {
    let n_max = g.len();
    let mut acc = vec![R::ring_zero(); n_max];
    for d in 1..=n_max {
        let mu = mobius(d as u64).expect("d >= 1");
        if mu == 0 {
            continue;
        }
        for k in 1..=n_max / d {
            let term = &g[k - 1];
            let slot = &mut acc[d * k - 1];
            *slot = if mu > 0 { slot.add(term) } else { slot.sub(term) };
        }
    }
    BellExponents::new(
        acc.into_iter()
            .enumerate()
            .map(|(i, v)| v.div_int(&big(i + 1)))
            .collect(),
    )
}

pub fn bell_exponents<R: CoefficientRing>(
    g: &ArithmeticFunction<R>,
    limit: usize,
) -> Result<BellExponents<R>, BellError> {
    Ok(exponents_from_values(&g.values(limit)?))
}

/// `g(n) = sum_{d | n} d β(d)` for `n = 1..=N`.
pub fn inverse_exponents<R: CoefficientRing>(beta: &BellExponents<R>) -> Vec<R> {
    let n_max = beta.limit();
    let mut g = vec![R::ring_zero(); n_max];
    for d in 1..=n_max {
        let b = beta.get(d);
        if b.is_ring_zero() {
            continue;
        }
        let weighted = b.mul_int(&big(d));
        for k in 1..=n_max / d {
            g[d * k - 1] = g[d * k - 1].add(&weighted);
        }
    }
    g
}

/// `a(0..=N)` by the linear recurrence, from `g[n-1] = g(n)` (at least `N` values).
pub fn recurrence_from_values<R: CoefficientRing>(g: &[R], limit: usize) -> Coefficients<R> {
    assert!(g.len() >= limit, "need g(1..={limit})");
    let mut a: Vec<R> = Vec::with_capacity(limit + 1);
    a.push(R::ring_one());
    for n in 1..=limit {
        let mut acc = R::ring_zero();
        for k in 1..=n {
            if !g[k - 1].is_ring_zero() && !a[n - k].is_ring_zero() {
                acc = acc.add(&g[k - 1].mul(&a[n - k]));
            }
        }
        a.push(acc.neg().div_int(&big(n)));
    }
    Coefficients { values: a }
}

pub fn coeffs_via_recurrence<R: CoefficientRing>(
    g: &ArithmeticFunction<R>,
    limit: usize,
) -> Result<Coefficients<R>, BellError> {
    Ok(recurrence_from_values(&g.values(limit)?, limit))
}

/// Complete exponential Bell polynomials `B_0..=B_n` evaluated at
/// `x = (x_1, ..., x_n)`, via `B_{n+1} = sum_i C(n, i) B_{n-i} x_{i+1}`.
pub fn complete_bell<R: CoefficientRing>(x: &[R]) -> Vec<R> {
    let n_max = x.len();
    let binom = binomial_rows(n_max.saturating_sub(1));
    let mut b: Vec<R> = Vec::with_capacity(n_max + 1);
    b.push(R::ring_one());
    for n in 0..n_max {
        let mut acc = R::ring_zero();
        for i in 0..=n {
            if x[i].is_ring_zero() {
                continue;
            }
            acc = acc.add(&b[n - i].mul(&x[i]).mul_int(&binom[n][i]));
        }
        b.push(acc);
    }
    b
}

pub fn bell_poly_from_values<R: CoefficientRing>(g: &[R], limit: usize) -> Coefficients<R> {
    assert!(g.len() >= limit, "need g(1..={limit})");
    let fact = factorials(limit);
    let x: Vec<R> = (1..=limit)
        .map(|m| g[m - 1].mul_int(&fact[m - 1]).neg())
        .collect();
    let values = complete_bell(&x)
        .into_iter()
        .enumerate()
        .map(|(n, bn)| bn.div_int(&fact[n]))
        .collect();
    Coefficients { values }
}

pub fn coeffs_via_bell_poly<R: CoefficientRing>(
    g: &ArithmeticFunction<R>,
    limit: usize,
) -> Result<Coefficients<R>, BellError> {
    Ok(bell_poly_from_values(&g.values(limit)?, limit))
}

pub fn product_from_values<R: CoefficientRing>(g: &[R], limit: usize) -> Coefficients<R> {
    let beta = exponents_from_values(&g[..limit]);
    Coefficients {
        values: euler_product(beta.values(), limit).into_coeffs(),
    }
}

pub fn coeffs_via_product<R: CoefficientRing>(
    g: &ArithmeticFunction<R>,
    limit: usize,
) -> Result<Coefficients<R>, BellError> {
    Ok(product_from_values(&g.values(limit)?, limit))
}

pub fn coefficients<R: CoefficientRing>(
    path: TransformPath,
    g: &ArithmeticFunction<R>,
    limit: usize,
) -> Result<Coefficients<R>, BellError> {
    match path {
        TransformPath::Recurrence => coeffs_via_recurrence(g, limit),
        TransformPath::BellPolynomial => coeffs_via_bell_poly(g, limit),
        TransformPath::Product => coeffs_via_product(g, limit),
    }
}

/// The unique driver `g(1..=N)` whose transform has coefficients `a(0..=N)`:
/// `g(n) = -n a(n) - sum_{k=1..n-1} g(k) a(n-k)`.
pub fn recover_driver<R: CoefficientRing>(a: &[R]) -> Result<Vec<R>, BellError> {
    if a.first() != Some(&R::ring_one()) {
        return Err(BellError::LeadingCoefficient);
    }
    let n_max = a.len() - 1;
    let mut g: Vec<R> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = a[n].mul_int(&big(n)).neg();
        for k in 1..n {
            if !g[k - 1].is_ring_zero() && !a[n - k].is_ring_zero() {
                acc = acc.sub(&g[k - 1].mul(&a[n - k]));
            }
        }
        g.push(acc);
    }
    Ok(g)
}

/// [`recover_driver`] for integer sequences, whose drivers are integral too.
pub fn recover_driver_integral(a: &[BigInt]) -> Result<Vec<BigInt>, BellError> {
    if a.first() != Some(&BigInt::from(1)) {
        return Err(BellError::LeadingCoefficient);
    }
    let n_max = a.len() - 1;
    let mut g: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = -(&a[n] * n);
        for k in 1..n {
            acc -= &g[k - 1] * &a[n - k];
        }
        g.push(acc);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfn::{builtin_driver, dirichlet_convolve, sigma, Driver};
    use crate::poly::Polynomial;
    use crate::scalar::{frac, int};
    use crate::series::PowerSeries;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact(name: &str, params: &[Rational]) -> ArithmeticFunction {
        match builtin_driver(name, params, None).unwrap() {
            Driver::Exact(f) => f,
            Driver::Float(_) => unreachable!(),
        }
    }

    fn rationals(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| frac(p, q)).collect()
    }

    fn random_int_driver(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        (0..n).map(|_| int(rng.gen_range(-5..=5))).collect()
    }

    // set partitions of {0..n-1} counted by restricted growth strings
    fn set_partitions(n: usize) -> u64 {
        fn go(pos: usize, n: usize, max: usize) -> u64 {
            if pos == n {
                return 1;
            }
            (0..=max + 1).map(|b| go(pos + 1, n, max.max(b))).sum()
        }
        if n == 0 {
            1
        } else {
            go(1, n, 0)
        }
    }

    #[test]
    fn exponent_examples() {
        let eps = bell_exponents(&exact("epsilon", &[]), 5).unwrap();
        assert_eq!(eps.values(), rationals(&[(1, 1), (-1, 2), (-1, 3), (0, 1), (-1, 5)]).as_slice());
        let id = bell_exponents(&exact("power_k", &[int(1)]), 4).unwrap();
        assert_eq!(id.values(), rationals(&[(1, 1), (1, 2), (2, 3), (1, 2)]).as_slice());

        let constant = BellExponents::new(vec![int(24); 60]);
        let g = inverse_exponents(&constant);
        for (n, v) in g.iter().enumerate() {
            assert_eq!(*v, sigma(1, n as u64 + 1) * int(24));
        }
        let driver = ArithmeticFunction::from_values("24sigma", g);
        assert_eq!(bell_exponents(&driver, 60).unwrap(), constant);
    }

    #[test]
    fn inverse_exponent_examples() {
        for k in [1i64, 3, 7] {
            let g = inverse_exponents(&BellExponents::new(vec![int(-k); 50]));
            for (n, v) in g.iter().enumerate() {
                assert_eq!(*v, sigma(1, n as u64 + 1) * int(-k));
            }
        }
        let mut unit = vec![int(0); 30];
        unit[0] = int(1);
        assert!(inverse_exponents(&BellExponents::new(unit)).iter().all(|v| *v == int(1)));
    }

    #[test]
    fn recurrence_examples() {
        // Bell transform of Euler's phi; the values are checked independently
        // against exp(-sum phi(n) x^n / n) below.
        let phi = coeffs_via_recurrence(&exact("phi", &[]), 4).unwrap();
        assert_eq!(phi.values(), rationals(&[(1, 1), (-1, 1), (0, 1), (-1, 3), (1, 12)]).as_slice());
        // e^{-arctan x}
        let chi = coeffs_via_recurrence(&exact("chi4", &[]), 4).unwrap();
        assert_eq!(chi.values(), rationals(&[(1, 1), (-1, 1), (1, 2), (1, 6), (-7, 24)]).as_slice());
        let sq = coeffs_via_recurrence(&exact("power_k", &[int(2)]), 2).unwrap();
        assert_eq!(*sq.get(2), frac(1 - 4, 2));
    }

    #[test]
    fn recurrence_agrees_with_series_exponential() {
        for name in ["phi", "chi4", "r4", "epsilon"] {
            let g = exact(name, &[]);
            let vals = g.values(25).unwrap();
            let mut log = vec![int(0)];
            log.extend(vals.iter().enumerate().map(|(i, v)| -v / int(i as i64 + 1)));
            let via_exp = PowerSeries::new(log).exp().unwrap();
            assert_eq!(
                coeffs_via_recurrence(&g, 25).unwrap().values(),
                via_exp.coeffs(),
                "{name}"
            );
        }
    }

    #[test]
    fn complete_bell_examples() {
        assert_eq!(complete_bell::<Rational>(&[]), vec![int(1)]);
        assert_eq!(complete_bell(&[frac(3, 7)]), vec![int(1), frac(3, 7)]);
        let ones = complete_bell(&vec![int(1); 10]);
        assert_eq!(ones[3], int(5));
        assert_eq!(ones[4], int(15));
        for (n, b) in ones.iter().enumerate() {
            assert_eq!(*b, int(set_partitions(n) as i64), "n = {n}");
        }
    }

    #[test]
    fn bell_poly_examples() {
        let eps = coeffs_via_bell_poly(&exact("epsilon", &[]), 8).unwrap();
        let fact = factorials(8);
        for (n, a) in eps.values().iter().enumerate() {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(*a, Rational::new(BigInt::from(sign), fact[n].clone()));
        }
        let g = ArithmeticFunction::from_values("g", vec![frac(7, 3)]);
        assert_eq!(*coeffs_via_bell_poly(&g, 1).unwrap().get(1), frac(-7, 3));
    }

    #[test]
    fn product_examples() {
        let g = ArithmeticFunction::from_values(
            "24sigma",
            inverse_exponents(&BellExponents::new(vec![int(24); 12])),
        );
        let via_product = coeffs_via_product(&g, 12).unwrap();
        let mut eta = PowerSeries::<Rational>::one(12);
        for m in 1..=12 {
            let mut f = vec![int(0); 13];
            f[0] = int(1);
            f[m] = int(-1);
            eta = eta.mul(&PowerSeries::new(f)).unwrap();
        }
        assert_eq!(via_product.values(), eta.pow_rational(&int(24)).unwrap().coeffs());

        let eps = coeffs_via_product(&exact("epsilon", &[]), 6).unwrap();
        let exp_minus_x = PowerSeries::<Rational>::from_prefix(vec![int(0), int(-1)], 6).exp().unwrap();
        assert_eq!(eps.values(), exp_minus_x.coeffs());
    }

    #[test]
    fn three_paths_agree_on_random_integer_drivers() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..20 {
            let g = random_int_driver(&mut rng, 40);
            let rec = recurrence_from_values(&g, 40);
            assert_eq!(rec, bell_poly_from_values(&g, 40), "trial {trial}");
            assert_eq!(rec, product_from_values(&g, 40), "trial {trial}");
        }
    }

    #[test]
    fn three_paths_agree_over_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..4 {
            let g: Vec<Polynomial> = (0..12)
                .map(|_| Polynomial::new((0..3).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect()))
                .collect();
            let rec = recurrence_from_values(&g, 12);
            assert_eq!(rec, bell_poly_from_values(&g, 12));
            assert_eq!(rec, product_from_values(&g, 12));
            assert_eq!(recover_driver(rec.values()).unwrap(), g);
        }
    }

    #[test]
    fn recover_examples() {
        let mut one_minus_x = vec![int(0); 11];
        one_minus_x[0] = int(1);
        one_minus_x[1] = int(-1);
        assert_eq!(recover_driver(&one_minus_x).unwrap(), vec![int(1); 10]);

        let partitions = euler_product(&vec![int(-1); 40], 40).into_coeffs();
        let g = recover_driver(&partitions).unwrap();
        for (n, v) in g.iter().enumerate() {
            assert_eq!(*v, -sigma(1, n as u64 + 1));
        }
        let ints: Vec<BigInt> = partitions.iter().map(Rational::to_integer).collect();
        let gi: Vec<Rational> = recover_driver_integral(&ints)
            .unwrap()
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        assert_eq!(gi, g);
        assert!(matches!(
            recover_driver_integral(&[BigInt::from(-1)]),
            Err(BellError::LeadingCoefficient)
        ));
        assert!(matches!(
            recover_driver(&[int(2), int(1)]),
            Err(BellError::LeadingCoefficient)
        ));
        assert!(matches!(
            recover_driver::<Rational>(&[]),
            Err(BellError::LeadingCoefficient)
        ));
        assert!(Coefficients::new(vec![int(0)]).is_err());
    }

    #[test]
    fn driver_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g: Vec<Rational> = (0..100)
            .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            .collect();
        let a = recurrence_from_values(&g, 100);
        assert_eq!(recover_driver(a.values()).unwrap(), g);
    }

    #[test]
    fn exponents_match_dirichlet_convolution() {
        let mu = ArithmeticFunction::new("mu", vec![], |n| int(mobius(n).unwrap() as i64));
        let drivers = [
            exact("phi", &[]),
            exact("chi4", &[]),
            exact("power_k", &[int(0)]),
            exact("power_k", &[int(1)]),
            exact("power_k", &[int(2)]),
            exact("power_k", &[int(3)]),
        ];
        for g in &drivers {
            let beta = bell_exponents(g, 500).unwrap();
            for m in 1..=500u64 {
                let conv = dirichlet_convolve(&mu, g, m).unwrap();
                assert_eq!(beta.get(m as usize) * int(m as i64), conv, "{} m={m}", g.name());
            }
        }
    }

    #[test]
    fn driver_errors_propagate() {
        let short = ArithmeticFunction::from_values("short", vec![int(1), int(2)]);
        assert!(matches!(
            coeffs_via_recurrence(&short, 5),
            Err(BellError::Driver(ArithError::OutOfRange { .. }))
        ));
        assert!(bell_exponents(&short, 3).is_err());
    }

    #[test]
    fn path_names_round_trip() {
        for p in TransformPath::ALL {
            assert_eq!(p.as_str().parse::<TransformPath>().unwrap(), p);
        }
        assert!("newton".parse::<TransformPath>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn exponent_round_trip(raw in prop::collection::vec((-30i64..=30, 1i64..=8), 200)) {
            let beta = BellExponents::new(raw.iter().map(|&(p, q)| frac(p, q)).collect());
            let g = inverse_exponents(&beta);
            prop_assert_eq!(exponents_from_values(&g), beta);
        }
    }
}
