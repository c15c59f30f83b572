//! Brute-force ground truth over the integers.
//!
//! Left divisors of a nonsingular integer matrix `B`, up to right
//! multiplication by unimodular matrices, are the lattices containing the
//! column lattice of `B`. Each is represented by its column Hermite form
//! `[[h11, 0], [h21, h22]]` with `h11, h22 > 0` and `0 <= h21 < h22`, so
//! enumeration is a walk over triples `(h11, h22, h21)` with `h11 * h22`
//! dividing `|det B|`.
//!
//! Everything here is `i128` with checked arithmetic and deliberately shares
//! no code with the Smith-form machinery it is used to test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::Mat2;

pub const DEFAULT_DET_BOUND: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `|det|` the enumeration accepts.
    pub det_bound: u64,
    /// Let clause (ii) of [`definition_check`] be witnessed by a unit `P`.
    pub permissive_clause_ii: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { det_bound: DEFAULT_DET_BOUND, permissive_clause_ii: false }
    }
}

/// Column Hermite form `[[h11, 0], [h21, h22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfMatrix {
    h11: i128,
    h21: i128,
    h22: i128,
}

impl HnfMatrix {
    pub fn h11(&self) -> i128 {
        self.h11
    }

    pub fn h21(&self) -> i128 {
        self.h21
    }

    pub fn h22(&self) -> i128 {
        self.h22
    }

    pub fn det(&self) -> i128 {
        self.h11 * self.h22
    }

    pub fn is_unit(&self) -> bool {
        self.det() == 1
    }

    pub fn entries(&self) -> [[i128; 2]; 2] {
        [[self.h11, 0], [self.h21, self.h22]]
    }

    pub fn to_mat(&self) -> Mat2<BigInt> {
        let [[a, b], [c, d]] = self.entries();
        Mat2::new([[a.into(), b.into()], [c.into(), d.into()]]).expect("integer entries share a domain")
    }

    /// Whether `(x, y)` lies in the column lattice.
    pub fn contains(&self, x: i128, y: i128) -> bool {
        x % self.h11 == 0 && (y - self.h21 * (x / self.h11)) % self.h22 == 0
    }

    fn columns(&self) -> [(i128, i128); 2] {
        [(self.h11, self.h21), (0, self.h22)]
    }
}

impl fmt::Display for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, 0], [{}, {}]]", self.h11, self.h21, self.h22)
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(|| overflow("i128 multiplication"))
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(|| overflow("i128 addition"))
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    egcd(a, b).0
}

fn columns_of(m: &Mat2<BigInt>) -> Result<[(i128, i128); 2]> {
    let conv = |v: &BigInt| v.to_i128().ok_or_else(|| overflow("entry exceeds i128"));
    let [[a, b], [c, d]] = m.entries();
    Ok([(conv(a)?, conv(c)?), (conv(b)?, conv(d)?)])
}

fn abs_det(m: &Mat2<BigInt>) -> BigInt {
    m.det().abs()
}

fn checked_det(m: &Mat2<BigInt>, bound: u64) -> Result<i128> {
    let det = abs_det(m);
    if det == BigInt::from(0) {
        return Err(Error::Singular);
    }
    match det.to_u64() {
        Some(d) if d <= bound => Ok(d as i128),
        _ => Err(Error::OracleBound { det: det.to_string(), bound }),
    }
}

/// Hermite form of the lattice spanned by `columns`.
pub fn col_hnf(columns: &[(i128, i128)]) -> Result<HnfMatrix> {
    let mut top = (0i128, 0i128);
    let mut bottom = 0i128;
    for &(x, y) in columns {
        if x == 0 {
            bottom = gcd(bottom, y);
            continue;
        }
        if top.0 == 0 {
            bottom = gcd(bottom, top.1);
            top = (x, y);
            continue;
        }
        // Unimodular column step turning (top, (x, y)) into ((g, *), (0, *)).
        let (g, s, t) = egcd(top.0, x);
        let new_top = (g, add(mul(s, top.1)?, mul(t, y)?)?);
        let rest = add(mul(-(x / g), top.1)?, mul(top.0 / g, y)?)?;
        bottom = gcd(bottom, rest);
        top = new_top;
    }
    if top.0 == 0 || bottom == 0 {
        return Err(Error::RankDeficient);
    }
    if top.0 < 0 {
        top = (-top.0, -top.1);
    }
    Ok(HnfMatrix { h11: top.0, h21: top.1.rem_euclid(bottom), h22: bottom })
}

/// Hermite form of the column lattice of `m`.
pub fn hnf_of(m: &Mat2<BigInt>) -> Result<HnfMatrix> {
    col_hnf(&columns_of(m)?)
}

fn joint_hnf(parts: &[[(i128, i128); 2]]) -> Result<HnfMatrix> {
    let cols: Vec<(i128, i128)> = parts.iter().flatten().copied().collect();
    col_hnf(&cols)
}

/// Left gcd of `a` and `b` as the Hermite form of `[A | B]`.
pub fn leftgcd_oracle(a: &Mat2<BigInt>, b: &Mat2<BigInt>) -> Result<Mat2<BigInt>> {
    Ok(joint_hnf(&[columns_of(a)?, columns_of(b)?])?.to_mat())
}

fn positive_divisors(n: i128) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
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

fn enumerate_columns(cols: &[(i128, i128); 2], n: i128, include_units: bool) -> Vec<HnfMatrix> {
    let mut out = Vec::new();
    for d1 in positive_divisors(n) {
        for d2 in positive_divisors(n / d1) {
            if !include_units && d1 * d2 == 1 {
                continue;
            }
            for h in 0..d2 {
                let cand = HnfMatrix { h11: d1, h21: h, h22: d2 };
                if cols.iter().all(|&(x, y)| cand.contains(x, y)) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort_by_key(|d| (d.det(), d.h11, d.h21));
    out
}

fn prime_factors(mut n: i128) -> Vec<i128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Left divisors of prime determinant: for each prime `p`, `diag(p, 1)` and
/// `[[1, 0], [h, p]]` with `0 <= h < p`, filtered by containment.
fn prime_det_divisors(cols: &[(i128, i128); 2], n: i128) -> Vec<HnfMatrix> {
    let mut out = Vec::new();
    for p in prime_factors(n) {
        let shapes = std::iter::once(HnfMatrix { h11: p, h21: 0, h22: 1 })
            .chain((0..p).map(|h| HnfMatrix { h11: 1, h21: h, h22: p }));
        out.extend(shapes.filter(|c| cols.iter().all(|&(x, y)| c.contains(x, y))));
    }
    out.sort_by_key(|d| (d.det(), d.h11, d.h21));
    out
}

/// All left divisors of `b` up to right unimodular factors, sorted by
/// `(det, h11, h21)`.
pub fn enumerate_left_divisors(
    b: &Mat2<BigInt>,
    include_units: bool,
    config: &OracleConfig,
) -> Result<Vec<HnfMatrix>> {
    let n = checked_det(b, config.det_bound)?;
    Ok(enumerate_columns(&columns_of(b)?, n, include_units))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub holds: bool,
    /// A left divisor violating the property, when it fails.
    pub counterexample: Option<HnfMatrix>,
}

/// Whether every nonunit left divisor of `s` has a nonunit left gcd with `a`.
pub fn theorem2_oracle(a: &Mat2<BigInt>, s: &Mat2<BigInt>, config: &OracleConfig) -> Result<OracleVerdict> {
    if a.is_singular() {
        return Err(Error::Singular);
    }
    let a_cols = columns_of(a)?;
    for d in enumerate_left_divisors(s, false, config)? {
        if joint_hnf(&[d.columns(), a_cols])?.is_unit() {
            return Ok(OracleVerdict { holds: false, counterexample: Some(d) });
        }
    }
    Ok(OracleVerdict { holds: true, counterexample: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionCheck {
    pub clause_i: OracleVerdict,
    /// Counterexample, if any, is a left divisor `T'` of `T` for which no
    /// suitable `P` exists.
    pub clause_ii: OracleVerdict,
}

impl DefinitionCheck {
    pub fn holds(&self) -> bool {
        self.clause_i.holds && self.clause_ii.holds
    }
}

/// Checks both adequacy clauses for `B = S * T` against `A` by enumeration.
///
/// Clause (i) is [`theorem2_oracle`]. Clause (ii) asks that for every
/// nonunit left divisor `T'` of `T` some left divisor `P` of `S * T'` be left
/// coprime with `A`, where `P` must be a nonunit unless
/// `config.permissive_clause_ii` is set.
///
/// A nonunit `P` left coprime with `A` has a left divisor of prime
/// determinant, which is again left coprime with `A`, so the search for `P`
/// runs over prime-determinant divisors only. The bound applies to `S` and
/// `T`; `S * T'` may exceed it.
pub fn definition_check(
    b: &Mat2<BigInt>,
    s: &Mat2<BigInt>,
    t: &Mat2<BigInt>,
    a: &Mat2<BigInt>,
    config: &OracleConfig,
) -> Result<DefinitionCheck> {
    if &(s * t) != b {
        return Err(Error::InvalidParameters(format!("{s} * {t} != {b}")));
    }
    let clause_i = theorem2_oracle(a, s, config)?;
    let a_cols = columns_of(a)?;
    let mut clause_ii = OracleVerdict { holds: true, counterexample: None };
    for t_div in enumerate_left_divisors(t, false, config)? {
        let st = s * &t_div.to_mat();
        let n = st.det().abs().to_i128().ok_or_else(|| overflow("det exceeds i128"))?;
        let found = config.permissive_clause_ii || has_coprime_divisor(&columns_of(&st)?, n, &a_cols, true)?;
        if !found {
            clause_ii = OracleVerdict { holds: false, counterexample: Some(t_div) };
            break;
        }
    }
    Ok(DefinitionCheck { clause_i, clause_ii })
}

fn has_coprime_divisor(
    cols: &[(i128, i128); 2],
    n: i128,
    a_cols: &[(i128, i128); 2],
    prime_only: bool,
) -> Result<bool> {
    let candidates = if prime_only {
        prime_det_divisors(cols, n)
    } else {
        enumerate_columns(cols, n, false)
    };
    for p in candidates {
        if joint_hnf(&[p.columns(), *a_cols])?.is_unit() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> Mat2<BigInt> {
        Mat2::from_i64(rows)
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn col_hnf_examples() {
        let cols = [(2, 0), (0, 210), (450, -1350), (0, 67500)];
        assert_eq!(col_hnf(&cols).unwrap().entries(), [[2, 0], [0, 30]]);
        assert!(col_hnf(&[(1, 0), (0, 1)]).unwrap().is_unit());
        let cols = [(1, 1), (5, 0), (2, 0), (0, 60), (0, 225)];
        assert!(col_hnf(&cols).unwrap().is_unit());
        assert_eq!(col_hnf(&[(1, 2), (2, 4)]), Err(Error::RankDeficient));
        assert_eq!(col_hnf(&[(-3, 5), (0, -4)]).unwrap().entries(), [[3, 0], [3, 4]]);
    }

    #[test]
    fn col_hnf_is_right_unimodular_invariant() {
        let b = m([[4, 7], [-6, 9]]);
        let u = m([[2, 3], [1, 2]]);
        assert_eq!(hnf_of(&b).unwrap(), hnf_of(&(&b * &u)).unwrap());
        let h = hnf_of(&b).unwrap();
        assert_eq!(hnf_of(&h.to_mat()).unwrap(), h);
    }

    #[test]
    fn leftgcd_oracle_examples() {
        let a = m([[2, 0], [0, 210]]);
        let b = m([[450, 0], [-1350, 67500]]);
        assert_eq!(leftgcd_oracle(&a, &b).unwrap(), m([[2, 0], [0, 30]]));
        assert!(leftgcd_oracle(&a, &m([[1, 0], [0, 1]])).unwrap().is_identity());
        let c = m([[3, 1], [5, 7]]);
        assert_eq!(leftgcd_oracle(&c, &c).unwrap(), hnf_of(&c).unwrap().to_mat());
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(enumerate_left_divisors(&m([[1, 0], [0, 3]]), true, &cfg()).unwrap().len(), 2);
        assert_eq!(enumerate_left_divisors(&m([[1, 0], [0, 1]]), true, &cfg()).unwrap().len(), 1);
        assert_eq!(enumerate_left_divisors(&m([[2, 0], [0, 2]]), true, &cfg()).unwrap().len(), 5);
        for p in [3i64, 5, 7, 11] {
            let n = enumerate_left_divisors(&m([[p, 0], [0, p]]), true, &cfg()).unwrap().len();
            assert_eq!(n as i64, p + 3);
            let n = enumerate_left_divisors(&m([[1, 0], [0, p]]), false, &cfg()).unwrap().len();
            assert_eq!(n, 1);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_bounded() {
        let ds = enumerate_left_divisors(&m([[4, 0], [2, 6]]), true, &cfg()).unwrap();
        assert!(ds.windows(2).all(|w| (w[0].det(), w[0].h11, w[0].h21) < (w[1].det(), w[1].h11, w[1].h21)));
        assert!(ds[0].is_unit());
        let tight = OracleConfig { det_bound: 10, ..cfg() };
        assert!(matches!(
            enumerate_left_divisors(&m([[4, 0], [2, 6]]), true, &tight),
            Err(Error::OracleBound { .. })
        ));
        assert_eq!(enumerate_left_divisors(&m([[1, 2], [2, 4]]), true, &cfg()), Err(Error::Singular));
    }

    #[test]
    fn theorem2_oracle_examples() {
        let a = m([[2, 0], [0, 60]]);
        assert!(theorem2_oracle(&a, &m([[1, 0], [30, 27]]), &cfg()).unwrap().holds);
        let v = theorem2_oracle(&a, &m([[0, 5], [1, 0]]), &cfg()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().det(), 5);
        assert!(theorem2_oracle(&a, &m([[2, 1], [1, 1]]), &cfg()).unwrap().holds);
    }

    #[test]
    fn definition_check_examples() {
        let a = m([[2, 0], [0, 210]]);
        let b = m([[450, 0], [-1350, 67500]]);
        let s = m([[2, 0], [-30, 2700]]);
        let t = m([[225, 0], [2, 25]]);
        let r = definition_check(&b, &s, &t, &a, &cfg()).unwrap();
        assert!(r.clause_i.holds && r.clause_ii.holds);

        let a = m([[2, 0], [0, 60]]);
        let b = m([[1, 0], [1, 49]]);
        let id = m([[1, 0], [0, 1]]);
        assert!(definition_check(&b, &id, &b, &a, &cfg()).unwrap().holds());

        assert!(matches!(
            definition_check(&b, &id, &id, &a, &cfg()),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn prime_determinant_search_matches_full_search() {
        let mut agree = 0;
        for a11 in 1..5i128 {
            for a22 in [1i128, 2, 6, 10, 12] {
                let a_cols = [(a11, 0), (0, a22)];
                for (x, y, w) in [(2, 0, 6), (1, 3, 9), (3, 1, 4), (5, 2, 10), (4, 0, 15), (7, 1, 7)] {
                    let cols = [(x, y), (0, w)];
                    let n = x * w;
                    assert_eq!(
                        has_coprime_divisor(&cols, n, &a_cols, true).unwrap(),
                        has_coprime_divisor(&cols, n, &a_cols, false).unwrap(),
                        "{cols:?} against diag({a11}, {a22})"
                    );
                    agree += 1;
                }
            }
        }
        assert_eq!(agree, 120);
        assert_eq!(prime_det_divisors(&[(2, 0), (0, 2)], 4).len(), 3);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }

    #[test]
    fn definition_check_on_divisor_with_coprime_quotient() {
        let a = m([[2, 0], [0, 60]]);
        let s = m([[1, 0], [0, 3]]);
        let t = m([[1, 0], [1, 225]]);
        let b = &s * &t;
        let r = definition_check(&b, &s, &t, &a, &cfg()).unwrap();
        assert!(r.clause_i.holds);
        // T' = [[1, 0], [1, 3]] leaves S * T' = [[1, 0], [3, 9]], whose only
        // nonunit left divisor of determinant 3 is S itself, and S meets A.
        assert!(!r.clause_ii.holds);
        let permissive = OracleConfig { permissive_clause_ii: true, ..cfg() };
        assert!(definition_check(&b, &s, &t, &a, &permissive).unwrap().holds());
    }
}
