//! Subcommand bodies. Each returns a JSON report, a one-line summary and a
//! verdict; every certificate is recomputed before it is returned.

use num_bigint::BigInt;
use pidmat::adequacy::{
    adequate_part, lemma3_check, right_adequate_part, theorem2_check, PrimeExponents, Theorem2Outcome,
    Theorem2Witness,
};
use pidmat::divisor::{left_coprime, left_divides, left_divides_structural, left_gcd, leftgcd_snf, transfer};
use pidmat::oracle::{definition_check, enumerate_left_divisors, HnfMatrix, OracleConfig, OracleVerdict};
use pidmat::ring::divides;
use pidmat::{snf, Mat2};
use serde_json::{json, Value};

use crate::document::{encode_all, encode_matrix, Encode};
use crate::error::{check, CliError};

pub struct Outcome {
    pub report: Value,
    pub summary: String,
    /// `false` maps to exit code 1.
    pub positive: bool,
}

type Run = Result<Outcome, CliError>;

fn outcome(command: &str, like: &impl Encode, body: Value, summary: String, positive: bool) -> Outcome {
    let mut report = json!({"command": command, "ring": like.ring()});
    if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
        r.extend(b);
    }
    Outcome { report, summary: format!("{command}: {summary}"), positive }
}

pub fn snf_cmd<R: Encode>(a: &Mat2<R>) -> Run {
    let d = snf(a)?;
    let product = &(d.p() * a) * d.q();
    check(product == d.diag_matrix(), || format!("P * A * Q = {product} is not the diagonal"))?;
    check(d.p().is_unimodular() && d.q().is_unimodular(), || "transforms not unimodular".into())?;
    let (a1, a2) = d.diagonal();
    let body = json!({
        "input": encode_matrix(a),
        "p": encode_matrix(d.p()),
        "diagonal": [a1.encode(), a2.encode()],
        "q": encode_matrix(d.q()),
        "verified": true,
    });
    Ok(outcome("snf", a1, body, format!("diag({a1}, {a2}), P * A * Q recomputed"), true))
}

pub fn leftgcd_cmd<R: Encode>(a: &Mat2<R>, b: &Mat2<R>) -> Run {
    let (da, db) = (snf(a)?, snf(b)?);
    let (d1, d2) = leftgcd_snf(&da, &db)?;
    let g = left_gcd(a, b)?;
    check(&g.gcd_matrix * &g.cofactor_a == *a && &g.gcd_matrix * &g.cofactor_b == *b, || {
        "gcd matrix times cofactor does not reproduce the input".into()
    })?;
    check((&g.d1, &g.d2) == (&d1, &d2), || {
        format!("Hermite gcd has diagonal ({}, {}), Smith data gives ({d1}, {d2})", g.d1, g.d2)
    })?;
    let coprime = d2.is_unit();
    let body = json!({
        "diagonal": [d1.encode(), d2.encode()],
        "gcd_matrix": encode_matrix(&g.gcd_matrix),
        "cofactor_a": encode_matrix(&g.cofactor_a),
        "cofactor_b": encode_matrix(&g.cofactor_b),
        "coprime": coprime,
    });
    Ok(outcome("leftgcd", &d1, body, format!("Smith form of the left gcd is diag({d1}, {d2})"), true))
}

pub fn coprime_cmd<R: Encode>(a: &Mat2<R>, b: &Mat2<R>) -> Run {
    let (da, db) = (snf(a)?, snf(b)?);
    let coprime = left_coprime(&da, &db)?;
    let (d1, d2) = leftgcd_snf(&da, &db)?;
    let body = json!({"coprime": coprime, "leftgcd_diagonal": [d1.encode(), d2.encode()]});
    let summary = if coprime { "left coprime".to_string() } else { format!("common left divisor with Smith form diag({d1}, {d2})") };
    Ok(outcome("coprime", &d1, body, summary, coprime))
}

pub fn divides_cmd<R: Encode>(b: &Mat2<R>, a: &Mat2<R>) -> Run {
    let quotient = left_divides(b, a)?;
    let structural = left_divides_structural(&snf(b)?, &snf(a)?)?;
    if let Some(c) = &quotient {
        check(&(b * c) == a, || format!("B * {c} != A"))?;
    }
    check(structural == quotient.is_some(), || "divisibility tests disagree".into())?;
    let like = b.like();
    let body = json!({
        "divides": quotient.is_some(),
        "quotient": quotient.as_ref().map(encode_matrix),
    });
    let summary = match &quotient {
        Some(c) => format!("B left-divides A with quotient {c}"),
        None => "B does not left-divide A".into(),
    };
    Ok(outcome("divides", like, body, summary, quotient.is_some()))
}

fn factorization_json<R: Encode>(x: &R) -> Result<Value, CliError> {
    let f = x.factor()?;
    check(f.reconstruct() == *x, || format!("factorization of {x} does not reconstruct"))?;
    Ok(Value::Array(
        f.factors.iter().map(|(p, e)| json!({"prime": p.encode(), "exponent": e})).collect(),
    ))
}

pub fn spectrum_cmd<R: Encode>(a: &Mat2<R>) -> Run {
    let d = snf(a)?;
    let (a1, a2) = d.diagonal();
    let body = json!({
        "diagonal": [a1.encode(), a2.encode()],
        "alpha1": factorization_json(a1)?,
        "alpha2": factorization_json(a2)?,
    });
    Ok(outcome("spectrum", a1, body, format!("invariant factors {a1}, {a2}"), true))
}

fn primes_json<R: Encode>(items: &[PrimeExponents<R>]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|p| json!({"prime": p.prime.encode(), "in_beta1": p.in_beta1, "in_beta2": p.in_beta2}))
            .collect(),
    )
}

pub fn adequate_part_cmd<R: Encode>(b: &Mat2<R>, a: &Mat2<R>, right: bool) -> Run {
    if right {
        let (t, s) = right_adequate_part(b, a)?;
        check(&(&t * &s) == b, || "T * S != B".into())?;
        let ds = snf(&s)?;
        let (s1, s2) = ds.diagonal();
        let body = json!({
            "side": "right",
            "t": encode_matrix(&t),
            "s": encode_matrix(&s),
            "sigma": [s1.encode(), s2.encode()],
            "trivial": s.is_unimodular() || t.is_unimodular(),
        });
        return Ok(outcome("adequate-part", s1, body, format!("B = T * S with S ~ diag({s1}, {s2})"), true));
    }

    let r = adequate_part(b, a)?;
    check(&(&r.s * &r.t) == b, || "S * T != B".into())?;
    let tau = transfer(&snf(b)?, &snf(a)?)?;
    check(&(&r.split.f * &r.split.l) == tau.matrix(), || "F * L differs from the transfer matrix".into())?;
    check(
        divides(&r.split.u, r.split.f.get(1, 0)) && divides(&r.split.v, r.split.l.get(1, 0)),
        || "transform split violates its divisibility constraints".into(),
    )?;
    let ds = snf(&r.s)?;
    let p = &r.partition;
    check(ds.diagonal() == (&p.sigma1, &p.sigma2), || "Smith form of S differs from (sigma1, sigma2)".into())?;
    let body = json!({
        "side": "left",
        "s": encode_matrix(&r.s),
        "t": encode_matrix(&r.t),
        "sigma": [p.sigma1.encode(), p.sigma2.encode()],
        "trivial": r.trivial,
        "partition": {
            "omega": [p.omega1.encode(), p.omega2.encode()],
            "p_omega1": primes_json(&p.p_omega1),
            "p_rest": primes_json(&p.p_rest),
            "q_shared": primes_json(&p.q_shared),
            "q_free": primes_json(&p.q_free),
            "d": p.d.encode(),
        },
        "split": {
            "f": encode_matrix(&r.split.f),
            "l": encode_matrix(&r.split.l),
            "u": r.split.u.encode(),
            "v": r.split.v.encode(),
        },
    });
    let summary = format!("B = S * T with S ~ diag({}, {}), trivial = {}", p.sigma1, p.sigma2, r.trivial);
    Ok(outcome("adequate-part", &p.sigma1, body, summary, true))
}

fn witness_json<R: Encode>(w: &Theorem2Witness<R>) -> Value {
    match w {
        Theorem2Witness::Unimodular => json!({"kind": "unimodular"}),
        Theorem2Witness::Unrestricted => json!({"kind": "unrestricted"}),
        Theorem2Witness::SpectrumNotContained { index, missing } => {
            json!({"kind": "spectrum_not_contained", "index": index, "missing": encode_all(missing)})
        }
        Theorem2Witness::Shape { q_primes, q_product, entry } => json!({
            "kind": "shape",
            "q_primes": encode_all(q_primes),
            "q_product": q_product.encode(),
            "entry": entry.encode(),
        }),
    }
}

fn theorem2_json<R: Encode>(t: &Theorem2Outcome<R>) -> Value {
    json!({"holds": t.holds, "witness": witness_json(&t.witness)})
}

pub fn theorem2_cmd<R: Encode>(a: &Mat2<R>, s: &Mat2<R>) -> Run {
    let t = theorem2_check(a, s)?;
    let body = theorem2_json(&t);
    let summary = format!("{} ({:?})", if t.holds { "holds" } else { "fails" }, t.witness);
    Ok(outcome("theorem2", a.like(), body, summary, t.holds))
}

pub fn lemma3_cmd<R: Encode>(a: &Mat2<R>, b: &Mat2<R>, s: &Mat2<R>) -> Run {
    let r = lemma3_check(a, b, s)?;
    let body = json!({
        "holds": r.holds,
        "theorem2": theorem2_json(&r.theorem2),
        "divisor": r.divisor.encode(),
        "tau21": r.tau21.encode(),
        "divisor_divides_tau21": r.divisor_divides_tau21,
    });
    let summary = format!(
        "{}; {} {} tau21 = {}",
        if r.holds { "holds" } else { "fails" },
        r.divisor,
        if r.divisor_divides_tau21 { "divides" } else { "does not divide" },
        r.tau21
    );
    Ok(outcome("lemma3", a.like(), body, summary, r.holds))
}

fn hnf_json(h: &HnfMatrix) -> Value {
    encode_matrix(&h.to_mat())
}

pub fn oracle_divisors_cmd(b: &Mat2<BigInt>, include_units: bool, config: &OracleConfig) -> Run {
    let divisors = enumerate_left_divisors(b, include_units, config)?;
    for d in &divisors {
        check(left_divides(&d.to_mat(), b)?.is_some(), || format!("{d} does not left-divide B"))?;
    }
    let body = json!({
        "count": divisors.len(),
        "divisors": divisors.iter().map(hnf_json).collect::<Vec<_>>(),
    });
    let summary = format!("{} left divisors up to right associates", divisors.len());
    Ok(outcome("oracle-divisors", b.like(), body, summary, true))
}

fn verdict_json(v: &OracleVerdict) -> Value {
    json!({"holds": v.holds, "counterexample": v.counterexample.as_ref().map(hnf_json)})
}

pub fn oracle_check_cmd(
    b: &Mat2<BigInt>,
    s: &Mat2<BigInt>,
    t: &Mat2<BigInt>,
    a: &Mat2<BigInt>,
    config: &OracleConfig,
) -> Run {
    let r = definition_check(b, s, t, a, config)?;
    if let Some(d) = &r.clause_i.counterexample {
        check(left_divides(&d.to_mat(), s)?.is_some(), || format!("clause (i) witness {d} does not divide S"))?;
    }
    if let Some(d) = &r.clause_ii.counterexample {
        check(left_divides(&d.to_mat(), t)?.is_some(), || format!("clause (ii) witness {d} does not divide T"))?;
    }
    let body = json!({
        "clause_i": verdict_json(&r.clause_i),
        "clause_ii": verdict_json(&r.clause_ii),
        "permissive_clause_ii": config.permissive_clause_ii,
    });
    let summary = format!("clause (i) {}, clause (ii) {}", r.clause_i.holds, r.clause_ii.holds);
    Ok(outcome("oracle-check", b.like(), body, summary, r.holds()))
}
