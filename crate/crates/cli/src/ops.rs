//! One function per subcommand.  Each returns the JSON payload, the text
//! rendering, and whether a checked property failed; the caller maps that
//! to stdout and the exit code.

use std::fmt::Write as _;
use std::io::Read;

use serde_json::{json, Value};

use semiform::diagrams::{commutator_census, enumerate_semi_diagrams, oracle_weight_sum, MarkMode};
use semiform::operators::{
    cayley_check, hilbert_commutator_residual, operator_power, second_hilbert_residual,
    shear_expand, signature_of, taylor_check, Operator, ShearDirection, SpaceSignature,
};
use semiform::partitions::{
    count_p, delta_table, enumerate_box_partitions, gaussian_coefficient,
    strict_unimodality_report,
};
use semiform::poly::{rat, BoxPartition, Polynomial, Rational};
use semiform::sample::{random_element, seeded_rng};
use semiform::spaces::{
    additivity_witness, basis_q, is_semi_invariant, semi_invariant_basis, sylvester_report,
    Capacity, SemiCheckMode,
};
use semiform::{Error, Result};

use crate::{DirArg, MethodArg, ModeArg, OpArg, SpaceArg};

pub struct Outcome {
    pub payload: Value,
    pub human: String,
    pub violation: bool,
}

impl Outcome {
    fn ok(payload: Value, human: String) -> Self {
        Outcome { payload, human, violation: false }
    }

    fn checked(payload: Value, human: String, ok: bool) -> Self {
        Outcome { payload, human, violation: !ok }
    }
}

impl From<OpArg> for Operator {
    fn from(op: OpArg) -> Operator {
        match op {
            OpArg::D => Operator::D,
            OpArg::Delta => Operator::Delta,
        }
    }
}

impl From<DirArg> for ShearDirection {
    fn from(dir: DirArg) -> ShearDirection {
        match dir {
            DirArg::Horizontal => ShearDirection::Horizontal,
            DirArg::Vertical => ShearDirection::Vertical,
        }
    }
}

fn direction_name(direction: ShearDirection) -> &'static str {
    match direction {
        ShearDirection::Horizontal => "horizontal",
        ShearDirection::Vertical => "vertical",
    }
}

/// Exact JSON number from any big integer's decimal form.
fn int_value(v: &dyn ToString) -> Value {
    Value::Number(v.to_string().parse().expect("decimal integer"))
}

fn poly_value(p: &Polynomial) -> Value {
    serde_json::to_value(p).expect("polynomial serialization is infallible")
}

fn read_polynomial(path: &str) -> Result<Polynomial> {
    let text = if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("parsing polynomial from {path}: {e}")))
}

fn parse_lambda(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(idx, raw)| {
            raw.trim().parse::<u32>().map_err(|_| {
                Error::InvalidInput(format!(
                    "part {idx} ('{}') is not a nonnegative integer",
                    raw.trim()
                ))
            })
        })
        .collect()
}

fn require_positive_i(i: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::InvalidInput("i must be at least 1".into()));
    }
    Ok(())
}

fn inverse_factorial(i: usize) -> Rational {
    let mut f = rat(1);
    for j in 1..=i as i64 {
        f *= rat(j);
    }
    rat(1) / f
}

pub fn gauss(n: usize, k: usize) -> Result<Outcome> {
    let row = gaussian_coefficient(n, k);
    let coeffs: Vec<Value> = row.iter().map(|c| int_value(c)).collect();
    let human = row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    Ok(Outcome::ok(json!({ "coeffs": coeffs }), human))
}

pub fn pcount(n: usize, k: usize, m: i64, list: bool) -> Result<Outcome> {
    let count = count_p(k, n, m);
    let mut payload = json!({ "n": n, "k": k, "m": m, "count": int_value(&count) });
    let mut human = count.to_string();
    if list {
        let partitions = if m < 0 {
            Vec::new()
        } else {
            enumerate_box_partitions(k, n, m as usize)
        };
        payload["partitions"] = Value::Array(
            partitions
                .iter()
                .map(|l| Value::Array(l.parts().iter().map(|&p| json!(p)).collect()))
                .collect(),
        );
        for lambda in &partitions {
            write!(human, "\n{lambda}").unwrap();
        }
    }
    Ok(Outcome::ok(payload, human))
}

pub fn delta(n: usize, k: usize, m: Option<i64>) -> Result<Outcome> {
    match m {
        Some(m) => {
            let d = semiform::partitions::delta(k, n, m)?;
            Ok(Outcome::ok(json!({ "n": n, "k": k, "m": m, "delta": int_value(&d) }), d.to_string()))
        }
        None => {
            let table = delta_table(n, k);
            let values: Vec<Value> = table.values.iter().map(|v| int_value(v)).collect();
            let human = table
                .values
                .iter()
                .enumerate()
                .map(|(m, v)| format!("{m}\t{v}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(json!({ "n": n, "k": k, "deltas": values }), human))
        }
    }
}

pub fn basis(n: usize, k: usize, m: i64, space: SpaceArg) -> Result<Outcome> {
    let cap = Capacity::from_env();
    let sig = SpaceSignature::new(n, k, m);
    match space {
        SpaceArg::Q => {
            let basis = basis_q(&sig, &cap)?;
            let monomials: Vec<Value> = basis
                .monomials
                .iter()
                .map(|mono| Value::Array(mono.exps().iter().map(|&e| json!(e)).collect()))
                .collect();
            let mut human = format!("dimension: {}", basis.len());
            for mono in &basis.monomials {
                write!(human, "\n{mono}").unwrap();
            }
            Ok(Outcome::ok(
                json!({ "n": n, "k": k, "m": m, "dimension": basis.len(), "monomials": monomials }),
                human,
            ))
        }
        SpaceArg::S => {
            let basis = semi_invariant_basis(&sig, &cap)?;
            let elements: Vec<Value> = basis.elements.iter().map(poly_value).collect();
            let mut human = format!("dimension: {}", basis.dimension());
            for b in &basis.elements {
                write!(human, "\n{b}").unwrap();
            }
            Ok(Outcome::ok(
                json!({
                    "n": n, "k": k, "m": m,
                    "dimension": basis.dimension(),
                    "in_sylvester_range": basis.in_sylvester_range,
                    "elements": elements,
                }),
                human,
            ))
        }
    }
}

pub fn apply(op: OpArg, pow: usize, input: &str) -> Result<Outcome> {
    let p = read_polynomial(input)?;
    let result = operator_power(op.into(), pow, &p);
    Ok(Outcome::ok(poly_value(&result), result.to_string()))
}

pub fn shear(dir: DirArg, input: &str) -> Result<Outcome> {
    let p = read_polynomial(input)?;
    let expansion = shear_expand(&p, dir.into());
    let coefficients: Vec<Value> = expansion.coefficients.iter().map(poly_value).collect();
    let human = expansion
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| format!("z^{i}: {c}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::ok(
        json!({
            "n": p.n(),
            "direction": direction_name(expansion.direction),
            "coefficients": coefficients,
        }),
        human,
    ))
}

pub fn verify_taylor(input: &str, dir: Option<DirArg>) -> Result<Outcome> {
    let p = read_polynomial(input)?;
    let directions = match dir {
        Some(d) => vec![d.into()],
        None => vec![ShearDirection::Horizontal, ShearDirection::Vertical],
    };
    let mut all_ok = true;
    let mut reports = Vec::new();
    let mut human = String::new();
    for direction in directions {
        let report = taylor_check(&p, direction);
        all_ok &= report.ok;
        reports.push(json!({
            "direction": direction_name(direction),
            "ok": report.ok,
            "compared": report.compared,
            "first_mismatch": report.first_mismatch,
        }));
        writeln!(
            human,
            "{}: {} ({} orders compared)",
            direction_name(direction),
            if report.ok { "ok" } else { "MISMATCH" },
            report.compared
        )
        .unwrap();
    }
    human.push_str(if all_ok { "ok" } else { "failed" });
    Ok(Outcome::checked(json!({ "ok": all_ok, "reports": reports }), human, all_ok))
}

pub fn verify_hilbert(n: usize, k: usize, lambda: &str, i: usize, second: bool) -> Result<Outcome> {
    require_positive_i(i)?;
    let parts = parse_lambda(lambda)?;
    let lambda = BoxPartition::new(parts.clone(), k, n)?;
    let residual = if second {
        second_hilbert_residual(&lambda, i)
    } else {
        hilbert_commutator_residual(&lambda, i)
    };
    let sig = signature_of(&lambda);
    let ok = residual.is_zero();
    let mut payload = json!({
        "ok": ok,
        "n": n, "k": k,
        "lambda": parts,
        "i": i,
        "c": sig.c(),
        "identity": if second { 2 } else { 1 },
        "residual_terms": residual.num_terms(),
    });
    let mut human = format!("c = {}, i = {i}, residual terms = {}", sig.c(), residual.num_terms());
    if ok {
        human.push_str(": ok");
    } else {
        payload["residual"] = poly_value(&residual);
        write!(human, ": FAILED, residual {residual}").unwrap();
    }
    Ok(Outcome::checked(payload, human, ok))
}

pub fn verify_cayley(input: &str, i: usize) -> Result<Outcome> {
    require_positive_i(i)?;
    let p = read_polynomial(input)?;
    let (k, m) = p.homogeneity().ok_or_else(|| {
        Error::NotHomogeneous("the input mixes degrees or weights".into())
    })?;
    let sig = SpaceSignature::new(p.n(), k, m as i64);
    let ok = cayley_check(&p, &sig, i)?;
    let factor = i as i64 * (sig.c() - i as i64 + 1);
    let human = format!(
        "{}: D Delta^{i} = {factor} Delta^{}: {}",
        sig,
        i - 1,
        if ok { "ok" } else { "FAILED" }
    );
    Ok(Outcome::checked(
        json!({
            "ok": ok,
            "n": p.n(), "k": k, "m": m,
            "c": sig.c(),
            "i": i,
            "factor": factor,
        }),
        human,
        ok,
    ))
}

pub fn verify_diagrams(
    n: usize,
    k: usize,
    lambda: &str,
    i: usize,
    mode: ModeArg,
    census: bool,
) -> Result<Outcome> {
    let parts = parse_lambda(lambda)?;
    let lambda = BoxPartition::new(parts.clone(), k, n)?;
    if census {
        require_positive_i(i)?;
        let report = commutator_census(&lambda, i)?;
        let ok = report.ok();
        let human = format!(
            "sequences = {}, hollow-side count = {} (factor {}), shaded-side count = {} (factor {}), difference factor = {}: {}",
            report.sequences,
            report.pm_count,
            report.pm_factor,
            report.mp_count,
            report.mp_factor,
            report.difference_factor,
            if ok { "ok" } else { "FAILED" }
        );
        return Ok(Outcome::checked(
            json!({
                "ok": ok,
                "lambda": parts,
                "i": i,
                "sequences": report.sequences,
                "pm_count": report.pm_count,
                "mp_count": report.mp_count,
                "pm_factor": report.pm_factor,
                "mp_factor": report.mp_factor,
                "difference_factor": report.difference_factor,
                "pm_matches": report.pm_matches,
                "mp_matches": report.mp_matches,
                "difference_matches": report.difference_matches,
            }),
            human,
            ok,
        ));
    }
    let mark_mode = match mode {
        ModeArg::Minus => MarkMode::Minus,
        ModeArg::Plus => MarkMode::Plus,
    };
    let operator = match mark_mode {
        MarkMode::Minus => Operator::D,
        MarkMode::Plus => Operator::Delta,
    };
    let sum = oracle_weight_sum(&lambda, i, mark_mode)?;
    let diagrams = enumerate_semi_diagrams(&lambda, i, mark_mode)?.len();
    let a_lambda = Polynomial::term(lambda.monomial(), rat(1));
    let direct = operator_power(operator, i, &a_lambda).scale(&inverse_factorial(i));
    let ok = sum == direct;
    let mode_name = match mark_mode {
        MarkMode::Minus => "minus",
        MarkMode::Plus => "plus",
    };
    let human = format!(
        "{diagrams} marked diagrams, weight sum {}: {}",
        sum,
        if ok { "ok" } else { "FAILED" }
    );
    Ok(Outcome::checked(
        json!({
            "ok": ok,
            "lambda": parts,
            "i": i,
            "mode": mode_name,
            "diagrams": diagrams,
            "weight_sum": poly_value(&sum),
        }),
        human,
        ok,
    ))
}

pub fn verify_semi(input: &str, method: MethodArg) -> Result<Outcome> {
    let p = read_polynomial(input)?;
    let by_operator = matches!(method, MethodArg::Operator | MethodArg::Both)
        .then(|| is_semi_invariant(&p, SemiCheckMode::Operator));
    let by_shear = matches!(method, MethodArg::Shear | MethodArg::Both)
        .then(|| is_semi_invariant(&p, SemiCheckMode::Shear));
    let semi = by_operator.unwrap_or(true) && by_shear.unwrap_or(true);
    let mut payload = json!({
        "semi_invariant": semi,
        "operator": by_operator,
        "shear": by_shear,
    });
    let mut human = format!("semi-invariant: {}", if semi { "yes" } else { "no" });
    if !semi {
        let image = semiform::operators::apply_d(&p);
        if let Some((mono, coeff)) = image.leading() {
            let witness = format!("{}*{mono}", semiform::poly::format_rational(coeff));
            write!(human, " (D leaves {witness})").unwrap();
            payload["d_leading"] = json!(witness);
        }
    }
    Ok(Outcome::checked(payload, human, semi))
}

pub fn suite_sylvester(max_n: usize, max_k: usize) -> Result<Outcome> {
    let cap = Capacity::from_env();
    let mut rows = Vec::new();
    let mut human = String::from(
        "n\tk\tm\tp\tdelta\trank\tnullity\tsurjective\tinjective\ttelescoping",
    );
    let mut all_ok = true;
    let mut first_failure: Option<String> = None;
    let mut checked = 0usize;
    for n in 1..=max_n {
        for k in 1..=max_k {
            for m in 0..=((n * k / 2) as i64) {
                let sig = SpaceSignature::new(n, k, m);
                let report = sylvester_report(&sig, &cap)?;
                let ok = report.surjective
                    && report.injective
                    && report.telescoping_ok
                    && report.d_nullity == report.delta
                    && report.d_rank == report.p_m_minus_1;
                checked += 1;
                all_ok &= ok;
                if !ok && first_failure.is_none() {
                    first_failure = Some(sig.to_string());
                }
                write!(
                    human,
                    "\n{n}\t{k}\t{m}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    report.p_m,
                    report.delta,
                    report.d_rank,
                    report.d_nullity,
                    report.surjective,
                    report.injective,
                    report.telescoping_ok
                )
                .unwrap();
                rows.push(json!({
                    "n": n, "k": k, "m": m,
                    "p": report.p_m,
                    "delta": report.delta,
                    "rank": report.d_rank,
                    "nullity": report.d_nullity,
                    "surjective": report.surjective,
                    "injective": report.injective,
                    "telescoping": report.telescoping_ok,
                    "ok": ok,
                }));
            }
        }
    }
    write!(human, "\nchecked {checked} spaces: {}", if all_ok { "ok" } else { "FAILED" }).unwrap();
    Ok(Outcome::checked(
        json!({
            "max_n": max_n, "max_k": max_k,
            "checked": checked,
            "all_ok": all_ok,
            "first_failure": first_failure,
            "rows": rows,
        }),
        human,
        all_ok,
    ))
}

fn parse_box(spec: &str) -> Result<(usize, usize)> {
    let mut it = spec.split(['x', 'X']);
    let (Some(k), Some(n), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::InvalidInput(format!("box '{spec}' must look like 3x3 (KxN)")));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("box '{spec}' must look like 3x3 (KxN)")))
    };
    Ok((parse(k)?, parse(n)?))
}

pub fn suite_hilbert(box_spec: &str, max_i: usize) -> Result<Outcome> {
    let (k, n) = parse_box(box_spec)?;
    let mut checked = 0usize;
    let mut all_ok = true;
    let mut first_failure: Option<String> = None;
    for m in 0..=(n * k) {
        for lambda in enumerate_box_partitions(k, n, m) {
            for i in 1..=max_i {
                for (identity, residual) in [
                    (1, hilbert_commutator_residual(&lambda, i)),
                    (2, second_hilbert_residual(&lambda, i)),
                ] {
                    checked += 1;
                    if !residual.is_zero() {
                        all_ok = false;
                        if first_failure.is_none() {
                            first_failure =
                                Some(format!("lambda = {lambda}, i = {i}, identity {identity}"));
                        }
                    }
                }
            }
        }
    }
    let human = format!(
        "checked {checked} residuals in the {k}x{n} box: {}",
        if all_ok { "all zero" } else { "FAILED" }
    );
    Ok(Outcome::checked(
        json!({
            "box": format!("{k}x{n}"),
            "max_i": max_i,
            "checked": checked,
            "all_ok": all_ok,
            "first_failure": first_failure,
        }),
        human,
        all_ok,
    ))
}

pub fn suite_taylor(count: usize, seed: u64, max_n: usize, max_k: usize) -> Result<Outcome> {
    let mut rng = seeded_rng(seed);
    let mut all_ok = true;
    let mut first_failure: Option<String> = None;
    for idx in 0..count {
        let n = 1 + idx % max_n;
        let k = 1 + (idx / max_n) % max_k;
        let m = (idx % (n * k + 1)) as i64;
        let p = random_element(&SpaceSignature::new(n, k, m), &mut rng);
        for direction in [ShearDirection::Horizontal, ShearDirection::Vertical] {
            let report = taylor_check(&p, direction);
            if !report.ok {
                all_ok = false;
                if first_failure.is_none() {
                    first_failure = Some(format!(
                        "sample {idx} ({}), {} at z^{}",
                        SpaceSignature::new(n, k, m),
                        direction_name(direction),
                        report.first_mismatch.unwrap_or(0)
                    ));
                }
            }
        }
    }
    let human = format!(
        "checked {count} random polynomials with seed {seed}: {}",
        if all_ok { "ok" } else { "FAILED" }
    );
    Ok(Outcome::checked(
        json!({
            "count": count,
            "seed": seed,
            "max_n": max_n, "max_k": max_k,
            "all_ok": all_ok,
            "first_failure": first_failure,
        }),
        human,
        all_ok,
    ))
}

pub fn suite_diagrams(max_n: usize, max_k: usize, max_i: usize) -> Result<Outcome> {
    let mut checked = 0usize;
    let mut all_ok = true;
    let mut first_failure: Option<String> = None;
    let mut record = |ok: bool, what: &dyn Fn() -> String| {
        checked += 1;
        if !ok {
            all_ok = false;
            if first_failure.is_none() {
                first_failure = Some(what());
            }
        }
    };
    for n in 1..=max_n {
        for k in 1..=max_k {
            for m in 0..=(n * k) {
                for lambda in enumerate_box_partitions(k, n, m) {
                    let a_lambda = Polynomial::term(lambda.monomial(), rat(1));
                    for i in 0..=max_i.min(m) {
                        let sum = oracle_weight_sum(&lambda, i, MarkMode::Minus)?;
                        let direct = operator_power(Operator::D, i, &a_lambda)
                            .scale(&inverse_factorial(i));
                        record(sum == direct, &|| format!("minus oracle, {lambda}, i = {i}"));
                    }
                    for i in 0..=max_i.min(n * k - m) {
                        let sum = oracle_weight_sum(&lambda, i, MarkMode::Plus)?;
                        let direct = operator_power(Operator::Delta, i, &a_lambda)
                            .scale(&inverse_factorial(i));
                        record(sum == direct, &|| format!("plus oracle, {lambda}, i = {i}"));
                    }
                    for i in 1..=max_i.min(n * k - m + 1) {
                        let report = commutator_census(&lambda, i)?;
                        record(report.ok(), &|| format!("census, {lambda}, i = {i}"));
                    }
                }
            }
        }
    }
    let human = format!(
        "checked {checked} recounts: {}",
        if all_ok { "ok" } else { "FAILED" }
    );
    Ok(Outcome::checked(
        json!({
            "max_n": max_n, "max_k": max_k, "max_i": max_i,
            "checked": checked,
            "all_ok": all_ok,
            "first_failure": first_failure,
        }),
        human,
        all_ok,
    ))
}

pub fn suite_unimodality(n: usize, k: usize) -> Result<Outcome> {
    let report = strict_unimodality_report(n, k);
    let ok = report.strictly_unimodal;
    let human = if ok {
        format!("p({k},{n},m) strictly increases over 2 <= m <= {}", n * k / 2)
    } else {
        format!(
            "violations at m = {}{}",
            report
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            if report.unimodal { " (row still unimodal)" } else { "" }
        )
    };
    Ok(Outcome::checked(
        json!({
            "n": n, "k": k,
            "strictly_unimodal": report.strictly_unimodal,
            "unimodal": report.unimodal,
            "violations": report.violations,
        }),
        human,
        ok,
    ))
}

pub fn additivity(n: usize, k1: usize, k2: usize, m: i64) -> Result<Outcome> {
    let cap = Capacity::from_env();
    match additivity_witness(n, k1, k2, m, &cap) {
        Ok(witness) => {
            let verified = is_semi_invariant(&witness.polynomial, SemiCheckMode::Operator)
                && is_semi_invariant(&witness.polynomial, SemiCheckMode::Shear);
            let human = format!(
                "weight split {m} = {} + {}\n{}",
                witness.split.0, witness.split.1, witness.polynomial
            );
            Ok(Outcome::checked(
                json!({
                    "found": true,
                    "n": n, "k1": k1, "k2": k2, "m": m,
                    "split": [witness.split.0, witness.split.1],
                    "verified": verified,
                    "polynomial": poly_value(&witness.polynomial),
                    "factors": [poly_value(&witness.factors.0), poly_value(&witness.factors.1)],
                }),
                human,
                verified,
            ))
        }
        Err(Error::NoWitness(reason)) => Ok(Outcome::checked(
            json!({
                "found": false,
                "n": n, "k1": k1, "k2": k2, "m": m,
                "reason": reason,
            }),
            format!("no witness: {reason}"),
            false,
        )),
        Err(other) => Err(other),
    }
}
