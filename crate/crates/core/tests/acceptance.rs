//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{abs_det, disguised_diag, m, random_matrix, random_poly, random_poly_matrix, random_unimodular, z};
use num_bigint::BigInt;
use pidmat::adequacy::{adequate_part, lemma3_check, theorem2_check, theorem2_check_with};
use pidmat::divisor::{
    left_coprime, left_coprime_matrices, left_divides, left_divides_direct, left_divides_structural, left_gcd,
    leftgcd_snf,
};
use pidmat::oracle::{definition_check, leftgcd_oracle, theorem2_oracle, OracleConfig};
use pidmat::ring::{gcd, rp_split, spectrum};
use pidmat::{snf, Mat2, Pid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn criterion_1() -> Outcome {
    let a = m([[2, 0], [0, 210]]);
    let b = m([[450, 0], [-1350, 67500]]);
    let (da, db) = (ok(snf(&a))?, ok(snf(&b))?);
    ensure!(ok(leftgcd_snf(&da, &db))? == (z(2), z(30)), "leftgcd_snf != (2, 30)");

    let split = ok(adequate_part(&b, &a))?;
    let ds = ok(snf(&split.s))?;
    ensure!(ds.diagonal() == (&z(2), &z(2700)), "SNF(S) = {:?}", ds.diagonal());
    ensure!(&split.s * &split.t == b, "S * T != B");

    let s = m([[2, 0], [-30, 2700]]);
    let s1 = m([[2, 0], [30, 2700]]);
    ensure!(ok(left_divides(&s, &b))? == Some(m([[225, 0], [2, 25]])), "S quotient");
    ensure!(ok(left_divides(&s1, &b))? == Some(m([[225, 0], [-3, 25]])), "S1 quotient");
    ensure!(ok(theorem2_check(&a, &s))?.holds, "theorem2(A, S) false");
    ensure!(ok(theorem2_check(&a, &s1))?.holds, "theorem2(A, S1) false");
    let q = ok(left_divides_direct(&s1, &s))?;
    ensure!(q.is_none_or(|q| !q.is_unimodular()), "S1^-1 S is unimodular");
    Ok(format!("adequate part S = {}", split.s))
}

fn criterion_2() -> Outcome {
    let a = m([[6, 0], [0, 6930]]);
    let b = m([[45, 0], [-315, 122850]]);
    let split = ok(adequate_part(&b, &a))?;
    ensure!(ok(snf(&split.s))?.diagonal() == (&z(9), &z(1890)), "SNF(S) != diag(9, 1890)");
    let s = m([[9, 0], [315, 1890]]);
    let t = m([[5, 0], [-1, 65]]);
    ensure!(&s * &t == b, "S * T != B");
    ensure!(split.s == s && split.t == t, "construction gave {} * {}", split.s, split.t);
    let l3 = ok(lemma3_check(&a, &b, &s))?;
    ensure!(l3.divisor == z(7) && l3.tau21 == z(7) && l3.holds, "gcd(42, 35) = {} vs tau21 = {}", l3.divisor, l3.tau21);
    Ok("gcd(42, 35) = 7 divides tau21 = 7".into())
}

fn criterion_3() -> Outcome {
    let a = m([[2, 0], [0, 60]]);
    let b = m([[1, 0], [3, 675]]);
    let s = m([[1, 0], [0, 3]]);
    let t = m([[1, 0], [1, 225]]);
    ensure!(&s * &t == b, "S * T != B");
    ensure!(ok(left_coprime_matrices(&a, &t))?, "(A, T) not left coprime");
    let s1 = m([[1, 0], [30, 27]]);
    let t1 = m([[1, 0], [-1, 25]]);
    ensure!(&s1 * &t1 == b, "S1 * T1 != B");
    ensure!(ok(theorem2_check(&a, &s1))?.holds, "theorem2(A, S1) false");
    ensure!(ok(left_divides(&s, &s1))?.is_some(), "S does not left-divide S1");

    let u = m([[1, 0], [-2, 1]]);
    let v = m([[1, 0], [-1, 1]]);
    let t_pert = &ok(u.inverse_unimodular())? * &t;
    let t1_pert = &ok(v.inverse_unimodular())? * &t1;
    ensure!(t_pert == &m([[1, 0], [3, 1]]) * &m([[1, 0], [0, 225]]), "T' = {t_pert}");
    ensure!(t1_pert == m([[1, 0], [0, 25]]), "T1' = {t1_pert}");
    ensure!(&(&s * &u) * &t_pert == b && &(&s1 * &v) * &t1_pert == b, "perturbed products != B");
    ensure!(!ok(left_coprime_matrices(&a, &t_pert))?, "(A, T') left coprime");
    ensure!(!ok(left_coprime_matrices(&a, &t1_pert))?, "(A, T1') left coprime");

    let dc = ok(definition_check(&b, &s, &t, &a, &OracleConfig::default()))?;
    Ok(format!(
        "perturbed quotients share a divisor with A; definition clauses for S = diag(1, 3): (i) {}, (ii) {}",
        dc.clause_i.holds, dc.clause_ii.holds
    ))
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..300 {
        let a = random_matrix(rng, 20);
        let b = random_matrix(rng, 20);
        let g = ok(leftgcd_snf(&ok(snf(&a))?, &ok(snf(&b))?))?;
        let oracle = ok(leftgcd_oracle(&a, &b))?;
        let d = ok(snf(&oracle))?;
        ensure!(
            (d.alpha1(), d.alpha2()) == (&g.0, &g.1),
            "case {i}: A = {a}, B = {b}: snf {:?} vs oracle {oracle}",
            g
        );
        ensure!(ok(left_divides(&oracle, &a))?.is_some() && ok(left_divides(&oracle, &b))?.is_some(), "case {i}: oracle gcd does not divide");
    }
    Ok("300/300 agree".into())
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Outcome {
    let mut positives = 0;
    for i in 0..300 {
        let (b, a) = if i < 100 {
            let b = random_matrix(rng, 9);
            let c = random_matrix(rng, 9);
            let a = &b * &c;
            (b, a)
        } else if i < 200 {
            // Divisors with structured Smith forms, against multiples of their diagonal.
            let b1 = rng.gen_range(1..=6);
            let b2 = b1 * rng.gen_range(1..=8);
            let b = disguised_diag(b1, b2, rng);
            let a = disguised_diag(b1 * rng.gen_range(1..=3), b2 * rng.gen_range(1..=3), rng);
            (b, a)
        } else {
            (random_matrix(rng, 12), random_matrix(rng, 40))
        };
        let direct = ok(left_divides_direct(&b, &a))?.is_some();
        let structural = ok(left_divides_structural(&ok(snf(&b))?, &ok(snf(&a))?))?;
        ensure!(direct == structural, "case {i}: B = {b}, A = {a}: direct {direct}, structural {structural}");
        ensure!(i >= 100 || direct, "case {i}: engineered product not divisible");
        positives += direct as usize;
    }
    Ok(format!("300/300 agree, {positives} divisible"))
}

fn det_at_most(x: &Mat2<BigInt>, bound: i64) -> bool {
    abs_det(x) <= z(bound)
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let config = OracleConfig::default();
    let mut holds = 0;
    for i in 0..200 {
        let (a, s) = loop {
            let (a, s) = match i % 3 {
                0 => (random_matrix(rng, 25), random_matrix(rng, 14)),
                1 => {
                    let a1 = [1, 2, 3, 5][rng.gen_range(0..4)];
                    let a2 = a1 * [1, 2, 3, 5, 6, 7, 10, 15, 30][rng.gen_range(0..9)];
                    let s1 = [1, 2, 3][rng.gen_range(0..3)];
                    let s2 = s1 * [1, 2, 3, 5, 6, 9, 10][rng.gen_range(0..7)];
                    (disguised_diag(a1, a2, rng), disguised_diag(s1, s2, rng))
                }
                _ => {
                    let s = random_matrix(rng, 6);
                    let c = random_matrix(rng, 4);
                    let a = &s * &c;
                    (a, s)
                }
            };
            if det_at_most(&a, 600) && det_at_most(&s, 200) {
                break (a, s);
            }
        };
        let closed = ok(theorem2_check(&a, &s))?.holds;
        let brute = ok(theorem2_oracle(&a, &s, &config))?;
        ensure!(closed == brute.holds, "case {i}: A = {a}, S = {s}: closed form {closed}, oracle {brute:?}");
        holds += closed as usize;
    }
    Ok(format!("200/200 agree, {holds} satisfy the criterion"))
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    let config = OracleConfig::default();
    let (mut nontrivial, mut s_unit, mut t_unit) = (0, 0, 0);
    for i in 0..100 {
        let b = loop {
            let b = if i % 4 == 0 {
                random_matrix(rng, 30)
            } else {
                let b1 = rng.gen_range(1..=6);
                let b2 = b1 * rng.gen_range(1..=60);
                disguised_diag(b1, b2, rng)
            };
            if det_at_most(&b, 2000) {
                break b;
            }
        };
        let a1 = [1, 2, 3, 5, 6][rng.gen_range(0..5)];
        let a2 = a1 * [1, 2, 3, 5, 7, 10, 14, 21, 30, 35, 42, 105][rng.gen_range(0..12)];
        let a = disguised_diag(a1, a2, rng);

        let split = ok(adequate_part(&b, &a))?;
        ensure!(&split.s * &split.t == b, "case {i}: S * T != B");
        if split.s.is_unimodular() {
            ensure!(ok(left_coprime_matrices(&a, &b))?, "case {i}: S unimodular but (A, B) not coprime");
            s_unit += 1;
            continue;
        }
        let dc = ok(definition_check(&b, &split.s, &split.t, &a, &config))?;
        ensure!(
            dc.holds(),
            "case {i}: A = {a}, B = {b}, S = {}, T = {}: {dc:?}",
            split.s,
            split.t
        );
        if split.trivial {
            t_unit += 1;
        } else {
            nontrivial += 1;
        }
    }
    Ok(format!(
        "{nontrivial} proper splits pass both clauses; {t_unit} with unimodular T pass both clauses; {s_unit} with unimodular S are left coprime"
    ))
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..100 {
        let a = if i % 2 == 0 { random_matrix(rng, 15) } else { disguised_diag(2, 60, rng) };
        let b = if i % 3 == 0 { random_matrix(rng, 15) } else { disguised_diag(3, 90, rng) };
        let s = disguised_diag(1, [2, 3, 5, 6, 30][rng.gen_range(0..5)], rng);
        let (da, db, ds) = (ok(snf(&a))?, ok(snf(&b))?, ok(snf(&s))?);

        let recertify = |rng: &mut ChaCha8Rng, x: &Mat2<BigInt>| -> Result<_, String> {
            let u = random_unimodular(rng, 4);
            let v = random_unimodular(rng, 4);
            let alt = ok(snf(&(&(&u * x) * &v)))?.pulled_back(&u, &v);
            ok(alt.verify(x))?;
            Ok(alt)
        };
        let (da2, db2, ds2) = (recertify(rng, &a)?, recertify(rng, &b)?, recertify(rng, &s)?);
        ensure!(ok(leftgcd_snf(&da, &db))? == ok(leftgcd_snf(&da2, &db2))?, "case {i}: leftgcd_snf changed");
        ensure!(ok(left_coprime(&da, &db))? == ok(left_coprime(&da2, &db2))?, "case {i}: left_coprime changed");
        ensure!(
            ok(theorem2_check_with(&da, &ds))?.holds == ok(theorem2_check_with(&da2, &ds2))?.holds,
            "case {i}: theorem2_check changed for A = {a}, S = {s}"
        );
    }
    Ok("100/100 unchanged".into())
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let p = 5;
    for i in 0..100 {
        let a = random_poly_matrix(rng, p, 3);
        let b = random_poly_matrix(rng, p, 3);
        let (da, db) = (ok(snf(&a))?, ok(snf(&b))?);
        let g = ok(leftgcd_snf(&da, &db))?;
        let h = ok(left_gcd(&a, &b))?;
        ensure!((h.d1.clone(), h.d2.clone()) == g, "case {i}: A = {a}, B = {b}: {g:?} vs Hermite ({}, {})", h.d1, h.d2);

        let (d, c) = if i % 2 == 0 {
            let d = random_poly_matrix(rng, p, 1);
            let c = random_poly_matrix(rng, p, 2);
            let prod = &d * &c;
            (d, prod)
        } else {
            (random_poly_matrix(rng, p, 1), a.clone())
        };
        let direct = ok(left_divides_direct(&d, &c))?.is_some();
        let structural = ok(left_divides_structural(&ok(snf(&d))?, &ok(snf(&c))?))?;
        ensure!(direct == structural, "case {i}: divisibility tests disagree on {d} | {c}");
        ensure!(i % 2 == 1 || direct, "case {i}: engineered product not divisible");

        let x = random_poly(rng, p, 6);
        let y = random_poly(rng, p, 4);
        if !x.is_zero() {
            let f = ok(x.factor())?;
            ensure!(f.reconstruct() == x, "factorization of {x} does not reconstruct");
            if !y.is_zero() {
                let r = ok(rp_split(&x, &y))?;
                ensure!(r.s.clone() * &r.t == x, "rp_split product");
                ensure!(ok(gcd(&r.t, &y))?.is_unit(), "rp_split t not coprime");
                ensure!(ok(spectrum(&r.s))?.is_subset(&ok(spectrum(&y))?), "rp_split s spectrum");
            }
        }
    }
    Ok("100/100 gcd and divisibility cases agree; factor and rp_split invariants hold".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("integer golden example with q-primes", Box::new(|_| criterion_1())),
        ("symbolic golden example", Box::new(|_| criterion_2())),
        ("quotient perturbation example", Box::new(|_| criterion_3())),
        ("left gcd against Hermite oracle", Box::new(criterion_4)),
        ("structural vs direct divisibility", Box::new(criterion_5)),
        ("divisor criterion against oracle", Box::new(criterion_6)),
        ("adequate part end to end", Box::new(criterion_7)),
        ("certificate-choice independence", Box::new(criterion_8)),
        ("F_5[x] smoke suite", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| run(&mut rng)))
            .unwrap_or_else(|e| Err(format!("panic: {:?}", e.downcast_ref::<String>().map(String::as_str).or(e.downcast_ref::<&str>().copied()))));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}) [{ms} ms]: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{ms} ms]: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
