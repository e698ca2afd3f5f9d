use std::fs;
use std::path::Path;

use bellkit::arithfn::{euler_phi, mobius};
use bellkit::bell::{bell_exponents, coefficients, recover_driver, BellError};
use bellkit::congruence::{
    check_exponent_hypothesis, check_vanishing_hypothesis, colored_partitions,
    constant_exponent_series, cyclotomic, verify_congruence, verify_vanishing, CongruenceError,
};
use bellkit::polyfam::{Family, FamilySpec};
use bellkit::scalar::{format_rational, is_integer, parse_rational};
use bellkit::{builtin_driver, ArithError, BellExponents, CoefficientRing, Driver, Rational, TransformPath};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::args::{DriverArgs, Format, Preset, VerifyKind};
use crate::output::{
    exact_strings, float_strings, poly_record, render_poly, render_poly_table, render_sequence,
    render_verify, Params, SequenceRecord, VerifyRecord,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATIONS: u8 = 1;

/// A command that could not produce a result.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Mismatch(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Mismatch(m) => m,
        }
    }
}

/// Text for standard output and the exit code.
pub type Outcome = Result<(String, u8), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn from_arith(e: ArithError) -> Failure {
    match e {
        ArithError::Parse { .. } | ArithError::Io { .. } => Failure::Io(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn from_bell(e: BellError) -> Failure {
    match e {
        BellError::Driver(e) => from_arith(e),
        other => Failure::Usage(other.to_string()),
    }
}

fn parse_flag(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| usage(format!("--{flag} {text}: {e}")))
}

fn parse_natural(flag: &str, text: &str, min: u64) -> Result<u64, Failure> {
    let r = parse_flag(flag, text)?;
    let bad = || usage(format!("--{flag} must be an integer >= {min}, got {text}"));
    if !is_integer(&r) || r.is_negative() {
        return Err(bad());
    }
    let v = r.numer().to_u64().ok_or_else(bad)?;
    if v < min {
        return Err(bad());
    }
    Ok(v)
}

/// Rejects numeric flags other than `allowed`.
fn only_flags(args: &DriverArgs, allowed: &[&str], context: &str) -> Result<(), Failure> {
    let given = [("k", &args.k), ("q", &args.q), ("c", &args.c)];
    for (flag, value) in given {
        if value.is_some() && !allowed.contains(&flag) {
            return Err(usage(format!("--{flag} is not used by {context}")));
        }
    }
    Ok(())
}

fn driver_flag(name: &str) -> Option<&'static str> {
    match name {
        "power_k" => Some("k"),
        "ramanujan_q" => Some("q"),
        "constant_c" => Some("c"),
        _ => None,
    }
}

fn resolve_driver(args: &DriverArgs) -> Result<(Driver, Params), Failure> {
    let name = args
        .driver
        .as_deref()
        .ok_or_else(|| usage("--driver is required"))?;
    let flag = driver_flag(name);
    only_flags(args, flag.as_slice(), &format!("driver {name}"))?;
    let mut params = Params::new();
    let mut values = Vec::new();
    if let Some(flag) = flag {
        let text = match flag {
            "k" => &args.k,
            "q" => &args.q,
            _ => &args.c,
        }
        .as_deref()
        .ok_or_else(|| usage(format!("driver {name} requires --{flag}")))?;
        let v = parse_flag(flag, text)?;
        params.insert(flag, format_rational(&v));
        values.push(v);
    }
    if let Some(file) = &args.file {
        params.insert("file", file.display().to_string());
    }
    if name == "custom_file" && args.file.is_none() {
        return Err(usage("driver custom_file requires --file"));
    }
    let driver = builtin_driver(name, &values, args.file.as_deref()).map_err(from_arith)?;
    Ok((driver, params))
}

pub fn exponents(args: &DriverArgs, limit: usize, format: Format) -> Outcome {
    if limit == 0 {
        return Err(usage("--limit must be at least 1"));
    }
    let (driver, params) = resolve_driver(args)?;
    let values = match &driver {
        Driver::Exact(g) => exact_strings(bell_exponents(g, limit).map_err(from_bell)?.values()),
        Driver::Float(g) => float_strings(bell_exponents(g, limit).map_err(from_bell)?.values()),
    };
    let record = SequenceRecord {
        command: "exponents",
        driver: Some(driver.name().to_string()),
        params,
        path: None,
        checked_paths: None,
        limit,
        start: 1,
        values,
    };
    Ok((render_sequence(&record, format), EXIT_OK))
}

fn floats_close(x: &f64, y: &f64) -> bool {
    (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0)
}

/// Runs every route and compares each with the first.
fn all_paths<R: CoefficientRing>(
    g: &bellkit::ArithmeticFunction<R>,
    limit: usize,
    same: impl Fn(&R, &R) -> bool,
) -> Result<(), Failure> {
    let runs = TransformPath::ALL
        .iter()
        .map(|p| coefficients(*p, g, limit).map(|c| (*p, c.into_values())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(from_bell)?;
    let (base_path, base) = &runs[0];
    for (path, values) in &runs[1..] {
        if let Some(n) = (0..=limit).find(|&n| !same(&base[n], &values[n])) {
            return Err(Failure::Mismatch(format!(
                "routes {base_path} and {path} disagree at a({n}): {:?} vs {:?}",
                base[n], values[n]
            )));
        }
    }
    Ok(())
}

pub fn coeffs(
    args: &DriverArgs,
    limit: usize,
    path: &str,
    check_all_paths: bool,
    format: Format,
) -> Outcome {
    let path = path.parse::<TransformPath>().map_err(|e| usage(e.to_string()))?;
    let (driver, params) = resolve_driver(args)?;
    let values = match &driver {
        Driver::Exact(g) => {
            if check_all_paths {
                all_paths(g, limit, |x, y| x == y)?;
            }
            exact_strings(coefficients(path, g, limit).map_err(from_bell)?.values())
        }
        Driver::Float(g) => {
            if check_all_paths {
                all_paths(g, limit, floats_close)?;
            }
            float_strings(coefficients(path, g, limit).map_err(from_bell)?.values())
        }
    };
    let record = SequenceRecord {
        command: "coeffs",
        driver: Some(driver.name().to_string()),
        params,
        path: Some(path.as_str()),
        checked_paths: check_all_paths.then(|| TransformPath::ALL.iter().map(|p| p.as_str()).collect()),
        limit,
        start: 0,
        values,
    };
    Ok((render_sequence(&record, format), EXIT_OK))
}

fn integers(v: Vec<BigInt>) -> Vec<Rational> {
    v.into_iter().map(Rational::from_integer).collect()
}

fn constant_exponents(b: i64, limit: usize) -> BellExponents {
    BellExponents::new(vec![Rational::from_integer(BigInt::from(b)); limit])
}

fn required_limit(limit: Option<usize>) -> Result<usize, Failure> {
    match limit {
        None => Err(usage("--limit is required for this preset")),
        Some(0) => Err(usage("--limit must be at least 1")),
        Some(l) => Ok(l),
    }
}

/// The sequence swept by a preset, its exponents and the output parameters.
fn preset_sequence(
    preset: Preset,
    args: &DriverArgs,
    limit: Option<usize>,
) -> Result<(Vec<Rational>, BellExponents, Params, usize), Failure> {
    let mut params = Params::new();
    if preset != Preset::Driver && (args.driver.is_some() || args.file.is_some()) {
        return Err(usage("--driver and --file apply only to the driver preset"));
    }
    let context = format!("preset {}", preset.as_str());
    match preset {
        Preset::Tau => {
            only_flags(args, &[], &context)?;
            let limit = required_limit(limit)?;
            let a = integers(constant_exponent_series(24, limit));
            Ok((a, constant_exponents(24, limit), params, limit))
        }
        Preset::Colored => {
            only_flags(args, &["k"], &context)?;
            let k = args.k.as_deref().ok_or_else(|| usage("preset colored requires --k"))?;
            let k = parse_natural("k", k, 1)?;
            let b = i64::try_from(k).map_err(|_| usage("--k is too large"))?;
            params.insert("k", k.to_string());
            let limit = required_limit(limit)?;
            let a = integers(colored_partitions(k, limit));
            Ok((a, constant_exponents(-b, limit), params, limit))
        }
        Preset::Cyclotomic => {
            only_flags(args, &["q"], &context)?;
            let q = args.q.as_deref().ok_or_else(|| usage("preset cyclotomic requires --q"))?;
            let q = parse_natural("q", q, 1)?;
            params.insert("q", q.to_string());
            let degree = euler_phi(q)
                .to_integer()
                .to_usize()
                .ok_or_else(|| usage("--q is too large"))?;
            let limit = match limit {
                None => degree,
                Some(0) => return Err(usage("--limit must be at least 1")),
                Some(l) => l,
            };
            let mut a = cyclotomic(q).coeffs().to_vec();
            a.resize(limit + 1, Rational::from_integer(BigInt::from(0)));
            let beta = (1..=limit as u64)
                .map(|m| {
                    let e = if q % m == 0 { mobius(q / m).expect("q/m >= 1") } else { 0 };
                    Rational::from_integer(BigInt::from(e))
                })
                .collect();
            Ok((a, BellExponents::new(beta), params, limit))
        }
        Preset::Driver => {
            let limit = required_limit(limit)?;
            let (driver, driver_params) = resolve_driver(args)?;
            let g = match driver {
                Driver::Exact(g) => g,
                Driver::Float(_) => return Err(usage("congruence sweeps need an exact driver")),
            };
            params.insert("driver", g.name().to_string());
            params.extend(driver_params);
            let a = coefficients(TransformPath::Product, &g, limit)
                .map_err(from_bell)?
                .into_values();
            let beta = bell_exponents(&g, limit).map_err(from_bell)?;
            Ok((a, beta, params, limit))
        }
    }
}

fn from_congruence(e: CongruenceError) -> Failure {
    usage(e.to_string())
}

pub fn verify(
    kind: VerifyKind,
    preset: Preset,
    args: &DriverArgs,
    p: u64,
    limit: Option<usize>,
    format: Format,
) -> Outcome {
    if !bellkit::congruence::is_prime(p) {
        return Err(usage(format!("--p {p} is not prime")));
    }
    let (a, beta, mut params, limit) = preset_sequence(preset, args, limit)?;
    params.insert("p", p.to_string());
    let report = match kind {
        VerifyKind::Congruence => {
            if !check_exponent_hypothesis(&beta, p, limit).map_err(from_congruence)? {
                return Err(usage(format!(
                    "hypothesis fails: some β(m) with {p} ∤ m is not divisible by {p}"
                )));
            }
            verify_congruence(&a, p, limit).map_err(from_congruence)?
        }
        VerifyKind::Vanishing => {
            if !check_vanishing_hypothesis(&beta, p, limit) {
                return Err(usage(format!("hypothesis fails: some β(m) with {p} ∤ m is nonzero")));
            }
            verify_vanishing(&a, p, limit).map_err(from_congruence)?
        }
    };
    let code = if report.verdict { EXIT_OK } else { EXIT_VIOLATIONS };
    let record = VerifyRecord {
        command: "verify",
        preset: preset.as_str(),
        params,
        report,
    };
    Ok((render_verify(&record, format), code))
}

pub struct PolyRequest<'a> {
    pub family: &'a str,
    pub n: Option<usize>,
    pub alpha: Option<&'a str>,
    pub a: Option<&'a str>,
    pub upto: Option<usize>,
}

pub fn poly(req: &PolyRequest<'_>, format: Format) -> Outcome {
    let family = req.family.parse::<Family>().map_err(|e| usage(e.to_string()))?;
    let wanted = family.param_name();
    let given = [("alpha", req.alpha), ("a", req.a)];
    let mut param = None;
    for (name, value) in given {
        let Some(text) = value else { continue };
        if wanted != Some(name) {
            return Err(usage(format!("--{name} is not used by family {family}")));
        }
        param = Some(parse_flag(name, text)?);
    }
    let spec = FamilySpec::new(family, param).map_err(|e| usage(e.to_string()))?;
    let params: Params = spec.params().into_iter().collect();
    match (req.n, req.upto) {
        (Some(n), None) => {
            let record = poly_record(family.as_str(), n, &params, &spec.poly(n));
            Ok((render_poly(&record, format), EXIT_OK))
        }
        (None, Some(upto)) => {
            let records: Vec<_> = spec
                .table(upto)
                .iter()
                .enumerate()
                .map(|(n, p)| poly_record(family.as_str(), n, &params, p))
                .collect();
            Ok((render_poly_table(&records, format), EXIT_OK))
        }
        _ => Err(usage("give either --n or --table --upto")),
    }
}

fn read_coefficients(path: &Path) -> Result<Vec<Rational>, Failure> {
    let io = |msg: String| Failure::Io(format!("{}: {msg}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| io(e.to_string()))?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| io(e.to_string()))?;
    let values = doc
        .get("values")
        .and_then(|v| v.as_array())
        .ok_or_else(|| io("expected an object with a \"values\" array".into()))?;
    if values.is_empty() {
        return Err(io("\"values\" must hold at least a(0)".into()));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => return Err(io(format!("values[{i}]: expected a rational string, got {other}"))),
            };
            parse_rational(&text).map_err(|e| io(format!("values[{i}] = {text:?}: {e}")))
        })
        .collect()
}

pub fn recover(input: &Path, format: Format) -> Outcome {
    let a = read_coefficients(input)?;
    let g = recover_driver(&a).map_err(from_bell)?;
    let record = SequenceRecord {
        command: "recover",
        driver: None,
        params: Params::new(),
        path: None,
        checked_paths: None,
        limit: a.len() - 1,
        start: 1,
        values: exact_strings(&g),
    };
    Ok((render_sequence(&record, format), EXIT_OK))
}
