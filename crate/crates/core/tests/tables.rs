//! Coefficient tables of the classical drivers through the public API.
//! Expected values were computed independently by series expansion of
//! exp(-sum g(n) x^n / n) in a computer algebra system.

use bellkit::arithfn::{builtin_driver, Driver};
use bellkit::bell::{bell_exponents, coefficients, TransformPath};
use bellkit::congruence::{cyclotomic, tau};
use bellkit::scalar::{format_rational, int, Rational};
use bellkit::ArithmeticFunction;

fn exact(name: &str, params: &[Rational]) -> ArithmeticFunction {
    match builtin_driver(name, params, None).unwrap() {
        Driver::Exact(f) => f,
        Driver::Float(_) => unreachable!(),
    }
}

fn on_every_path(g: &ArithmeticFunction, limit: usize) -> Vec<String> {
    let runs: Vec<Vec<String>> = TransformPath::ALL
        .iter()
        .map(|p| {
            coefficients(*p, g, limit)
                .unwrap()
                .values()
                .iter()
                .map(format_rational)
                .collect()
        })
        .collect();
    assert!(runs.iter().all(|r| *r == runs[0]), "routes disagree for {}", g.name());
    runs.into_iter().next().unwrap()
}

#[test]
fn power_function_tables() {
    let want = [
        ["1", "-1", "0", "0", "0"],
        ["1", "-1", "-1/2", "-1/6", "1/24"],
        ["1", "-1", "-3/2", "-7/6", "1/24"],
        ["1", "-1", "-7/2", "-31/6", "-23/24"],
        ["1", "-1", "-15/2", "-115/6", "-215/24"],
    ];
    for (k, row) in want.iter().enumerate() {
        assert_eq!(on_every_path(&exact("power_k", &[int(k as i64)]), 4), row, "k = {k}");
    }
}

#[test]
fn power_function_closed_forms() {
    // a(2) = (1 - 2^k)/2, a(3) = (-1 + 3 2^k - 2 3^k)/6,
    // a(4) = (1 - 6 2^k + 8 3^k - 3 4^k)/24
    for k in 0..=12u32 {
        let a = coefficients(TransformPath::Recurrence, &exact("power_k", &[int(k.into())]), 4)
            .unwrap()
            .into_values();
        let p = |b: i64| int(b.pow(k));
        assert_eq!(a[2], (int(1) - p(2)) / int(2));
        assert_eq!(a[3], (int(-1) + int(3) * p(2) - int(2) * p(3)) / int(6));
        assert_eq!(a[4], (int(1) - int(6) * p(2) + int(8) * p(3) - int(3) * p(4)) / int(24));
    }
}

#[test]
fn character_and_totient_tables() {
    assert_eq!(on_every_path(&exact("epsilon", &[]), 4), ["1", "-1", "1/2", "-1/6", "1/24"]);
    // exp(-arctan x)
    assert_eq!(
        on_every_path(&exact("chi4", &[]), 6),
        ["1", "-1", "1/2", "1/6", "-7/24", "-1/24", "29/144"]
    );
    assert_eq!(on_every_path(&exact("phi", &[]), 4), ["1", "-1", "0", "-1/3", "1/12"]);
}

#[test]
fn four_squares_table() {
    let want = [
        1, -8, 20, 0, -62, 0, 216, 0, -641, 0, 1636, 0, -3778, 0, 8248, 0, -17277,
    ];
    let want: Vec<String> = want.iter().map(i64::to_string).collect();
    assert_eq!(on_every_path(&exact("r4", &[]), 16), want);
}

#[test]
fn ramanujan_sums_give_cyclotomics() {
    for q in [1u64, 2, 6, 12, 15, 30, 36] {
        let phi = cyclotomic(q);
        let deg = phi.degree().unwrap();
        let a = on_every_path(&exact("ramanujan_q", &[int(q as i64)]), deg + 3);
        let mut want: Vec<String> = phi.coeffs().iter().map(format_rational).collect();
        want.extend(["0", "0", "0"].map(String::from));
        assert_eq!(a, want, "q = {q}");
    }
    // the first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
    assert_eq!(cyclotomic(105).coeff(7), int(-2));
}

#[test]
fn exponents_of_classical_drivers() {
    let shown = |name: &str, params: &[Rational], n: usize| -> Vec<String> {
        bell_exponents(&exact(name, params), n)
            .unwrap()
            .values()
            .iter()
            .map(format_rational)
            .collect()
    };
    assert_eq!(shown("epsilon", &[], 6), ["1", "-1/2", "-1/3", "0", "-1/5", "1/6"]);
    assert_eq!(shown("power_k", &[int(1)], 4), ["1", "1/2", "2/3", "1/2"]);
    assert_eq!(shown("constant_c", &[int(3)], 3), ["3", "0", "0"]);
    assert_eq!(shown("r4", &[], 8), ["8", "8", "8", "0", "8", "8", "8", "0"]);
}

#[test]
fn tau_table() {
    let t: Vec<String> = tau(10).iter().map(ToString::to_string).collect();
    assert_eq!(
        t,
        ["1", "-24", "252", "-1472", "4830", "-6048", "-16744", "84480", "-113643", "-115920"]
    );
}

#[test]
fn logarithm_driver_in_float_mode() {
    let g = match builtin_driver("log_float", &[], None).unwrap() {
        Driver::Float(f) => f,
        Driver::Exact(_) => unreachable!(),
    };
    let ln2 = 2f64.ln();
    let want = [
        1.0,
        0.0,
        -ln2 / 2.0,
        -3f64.ln() / 3.0,
        (ln2 * ln2 - 2.0 * 4f64.ln()) / 8.0,
    ];
    for path in TransformPath::ALL {
        let a = coefficients(path, &g, 4).unwrap().into_values();
        for (n, w) in want.iter().enumerate() {
            assert!((a[n] - w).abs() <= 1e-12 * w.abs().max(1.0), "{path} a({n})");
        }
    }
    // Λ(n)/n exponents: log p / p^j at n = p^j
    let beta = bell_exponents(&g, 9).unwrap();
    assert!((beta.get(8) - ln2 / 8.0).abs() < 1e-14);
    assert!(beta.get(6).abs() < 1e-14);
}
