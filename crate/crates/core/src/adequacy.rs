//! Adequate parts of nonsingular 2x2 matrices.
//!
//! Given nonsingular `A` and `B`, [`adequate_part`] factors `B = S * T` where
//! every nonunit left divisor of `S` has a nontrivial left gcd with `A`, and
//! `T` carries nothing that could not be split off as a factor left coprime
//! to `A`. The construction runs entirely on Smith certificates:
//!
//! 1. classify the primes of the left gcd `diag(w1, w2)` of `A` and `B`
//!    ([`build_sigmas`]), yielding the target diagonal `(sigma1, sigma2)`;
//! 2. factor the transfer matrix `P_B * P_A^-1 = F * L` with the bottom-left
//!    entries of `F` and `L` divisible by `sigma2 / gcd(sigma2, beta1)` and by
//!    the product of the primes of `w2` outside `alpha1` ([`split_transform`]);
//! 3. take `S = (F^-1 * P_B)^-1 * diag(sigma1, sigma2)`.
//!
//! [`theorem2_check`] decides the "every left divisor of `S` meets `A`"
//! property in closed form; [`lemma3_check`] adds the compatibility condition
//! relating `S` to `B`.

use crate::divisor::{left_divides, leftgcd_snf, transfer, TransferMatrix};
use crate::error::{Error, Result};
use crate::matrix::{snf, unimodular_complete_row, Mat2, SmithDecomposition};
use crate::ring::{divides, egcd, exact_div, gcd, pow, rp_split, spectrum, valuation, Pid, Spectrum};

/// A prime of the left gcd together with its exponents in `beta1` and `beta2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeExponents<R> {
    pub prime: R,
    pub in_beta1: u32,
    pub in_beta2: u32,
}

/// Classification of the primes of `w2`, where `diag(w1, w2)` is the Smith
/// form of the left gcd of `A` and `B`, and the resulting `(sigma1, sigma2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPartition<R> {
    pub omega1: R,
    pub omega2: R,
    /// Primes of `w1` (all of them divide `alpha1`).
    pub p_omega1: Vec<PrimeExponents<R>>,
    /// Primes of `w2` dividing `alpha1` but not `w1`.
    pub p_rest: Vec<PrimeExponents<R>>,
    /// Primes of `w2` outside `alpha1` that divide `tau21`.
    pub q_shared: Vec<PrimeExponents<R>>,
    /// Primes of `w2` outside `alpha1` that do not divide `tau21`.
    pub q_free: Vec<PrimeExponents<R>>,
    /// Part of `beta1` coprime to `alpha2`.
    pub d: R,
    pub sigma1: R,
    pub sigma2: R,
    /// `beta1 / sigma1`.
    pub beta1_rest: R,
    /// `beta2 / sigma2`.
    pub beta2_rest: R,
}

impl<R: Pid> SpectrumPartition<R> {
    pub fn p_primes(&self) -> impl Iterator<Item = &PrimeExponents<R>> {
        self.p_omega1.iter().chain(&self.p_rest)
    }

    pub fn q_primes(&self) -> impl Iterator<Item = &PrimeExponents<R>> {
        self.q_shared.iter().chain(&self.q_free)
    }

    /// Product of all `q` primes.
    pub fn q_product(&self) -> R {
        self.q_primes()
            .fold(self.omega1.one_like(), |acc, q| acc * &q.prime)
    }

    pub fn is_empty(&self) -> bool {
        self.p_omega1.is_empty() && self.p_rest.is_empty() && self.q_shared.is_empty() && self.q_free.is_empty()
    }
}

/// `M = F * L` with the bottom-left entry of `F` divisible by `u` and that of
/// `L` divisible by `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSplit<R> {
    pub f: Mat2<R>,
    pub l: Mat2<R>,
    pub u: R,
    pub v: R,
}

/// `B = S * T` with `S` the adequate part of `B` with respect to `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdequateMatrixSplit<R> {
    pub s: Mat2<R>,
    pub t: Mat2<R>,
    pub partition: SpectrumPartition<R>,
    pub split: TransformSplit<R>,
    /// Set when `S` or `T` is unimodular, so the factorization is not a
    /// product of two nonunits.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem2Witness<R> {
    /// `S` is unimodular; the property holds vacuously.
    Unimodular,
    /// Some prime of `sigma_index` is missing from `alpha_index`.
    SpectrumNotContained { index: u8, missing: Vec<R> },
    /// Every prime of `sigma2` divides `alpha1`; no constraint on `P_S`.
    Unrestricted,
    /// `q_product` must divide the bottom-left entry of `P_S * P_A^-1`.
    Shape { q_primes: Vec<R>, q_product: R, entry: R },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Outcome<R> {
    pub holds: bool,
    pub witness: Theorem2Witness<R>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Outcome<R> {
    pub holds: bool,
    pub theorem2: Theorem2Outcome<R>,
    /// `gcd(sigma2 / gcd(sigma2, beta1), q_product)`.
    pub divisor: R,
    /// Bottom-left entry of `P_B * P_A^-1`.
    pub tau21: R,
    pub divisor_divides_tau21: bool,
}

fn exponents<R: Pid>(prime: &R, beta1: &R, beta2: &R) -> PrimeExponents<R> {
    PrimeExponents {
        prime: prime.clone(),
        in_beta1: valuation(prime, beta1),
        in_beta2: valuation(prime, beta2),
    }
}

fn prime_power_product<R: Pid>(like: &R, items: &[PrimeExponents<R>], use_beta2: bool) -> R {
    items.iter().fold(like.one_like(), |acc, pe| {
        let e = if use_beta2 { pe.in_beta2 } else { pe.in_beta1 };
        acc * &pow(&pe.prime, e)
    })
}

/// Classifies the primes of the left gcd of `A` and `B` and assembles
/// `sigma1`, `sigma2`.
///
/// `sigma1` collects the `beta1`-powers of the primes of `w1`. `sigma2` takes
/// the `beta2`-powers of every prime of `w2` that divides `alpha1` or
/// `tau21`, and the `beta1`-powers of the remaining primes of `w2`.
pub fn build_sigmas<R: Pid>(
    da: &SmithDecomposition<R>,
    db: &SmithDecomposition<R>,
    tau: &TransferMatrix<R>,
) -> Result<SpectrumPartition<R>> {
    let (omega1, omega2) = leftgcd_snf(da, db)?;
    let (a1, a2) = da.diagonal();
    let (b1, b2) = db.diagonal();
    let sig_a1 = spectrum(a1)?;
    let sig_w1 = spectrum(&omega1)?;
    let sig_w2 = spectrum(&omega2)?;

    let (mut p_omega1, mut p_rest, mut q_shared, mut q_free) = (vec![], vec![], vec![], vec![]);
    for prime in sig_w2.primes() {
        let pe = exponents(prime, b1, b2);
        if pe.in_beta2 < pe.in_beta1 {
            return Err(Error::Certificate(format!("beta1 does not divide beta2 at {prime}")));
        }
        if sig_a1.contains(prime) {
            if sig_w1.contains(prime) {
                p_omega1.push(pe);
            } else {
                p_rest.push(pe);
            }
        } else if divides(prime, tau.t21()) {
            q_shared.push(pe);
        } else {
            q_free.push(pe);
        }
    }
    if !sig_w1.is_subset(&sig_w2) {
        return Err(Error::Certificate("primes of w1 missing from w2".into()));
    }

    let like = a1;
    let sigma1 = prime_power_product(like, &p_omega1, false);
    let sigma2 = prime_power_product(like, &p_omega1, true)
        * &prime_power_product(like, &p_rest, true)
        * &prime_power_product(like, &q_shared, true)
        * &prime_power_product(like, &q_free, false);
    let q_beta1 = prime_power_product(like, &q_shared, false) * &prime_power_product(like, &q_free, false);

    let beta1_rest = exact_div(b1, &sigma1)?;
    let beta2_rest = exact_div(b2, &sigma2)?;
    let d = exact_div(&beta1_rest, &q_beta1)?;
    if !gcd(&d, a2)?.is_unit() {
        return Err(Error::Certificate(format!("residual d = {d} shares a prime with alpha2 = {a2}")));
    }

    Ok(SpectrumPartition {
        omega1,
        omega2,
        p_omega1,
        p_rest,
        q_shared,
        q_free,
        d,
        sigma1,
        sigma2,
        beta1_rest,
        beta2_rest,
    })
}

fn is_squarefree<R: Pid>(v: &R) -> Result<bool> {
    Ok(v.factor()?.factors.iter().all(|(_, e)| *e == 1))
}

/// Inverse of `a` modulo the nonunit `m`, given `gcd(a, m) = 1`.
fn inverse_mod<R: Pid>(a: &R, m: &R) -> Result<R> {
    let (g, x, _) = egcd(a, m)?;
    if !g.is_unit() {
        return Err(Error::NotCoprime(a.to_string(), m.to_string()));
    }
    Ok(x.div_rem_euclid(m).1)
}

/// Solves `x = r_i (mod q_i)` for pairwise coprime moduli.
fn crt<R: Pid>(like: &R, congruences: &[(R, R)]) -> Result<(R, R)> {
    let mut x = like.zero_like();
    let mut modulus = like.one_like();
    for (r, q) in congruences {
        let inv = inverse_mod(&modulus.div_rem_euclid(q).1, q)?;
        let k = ((r.clone() - &x) * &inv).div_rem_euclid(q).1;
        x = x + &(modulus.clone() * &k);
        modulus = modulus * q;
        x = x.div_rem_euclid(&modulus).1;
    }
    Ok((x, modulus))
}

/// Factors a unimodular `M` as `F * L` where `u` divides the bottom-left
/// entry of `F` and `v` divides that of `L`.
///
/// Requires `v` squarefree and `gcd(u, v) | m21`. The factorization is
/// `F = C^-1`, `L = C * M` for a unimodular `C` whose bottom row
/// `(u * c21, c22)` satisfies `u * c21 * m11 + c22 * m21 = 0 (mod v)`.
/// When the congruence is solvable with `c22 = 1` that choice is taken
/// (balanced `c21`); otherwise `c21`, `c22` are assembled prime by prime
/// modulo `v`, and `c22` is shifted by a multiple of `v` to make the bottom
/// row coprime.
pub fn split_transform<R: Pid>(m: &Mat2<R>, u: &R, v: &R) -> Result<TransformSplit<R>> {
    let bad = |msg: String| Err(Error::InvalidParameters(msg));
    if !m.is_unimodular() {
        return Err(Error::NotUnimodular(m.det().to_string()));
    }
    if m.domain() != u.domain() || m.domain() != v.domain() {
        return Err(Error::DomainMismatch(m.domain(), u.domain()));
    }
    if u.is_zero() || v.is_zero() {
        return bad("u and v must be nonzero".into());
    }
    if !is_squarefree(v)? {
        return bad(format!("v = {v} is not squarefree"));
    }
    let [[m11, _], [m21, _]] = m.entries();
    if !divides(&gcd(u, v)?, m21) {
        return bad(format!("gcd({u}, {v}) does not divide m21 = {m21}"));
    }

    let like = m.like();
    let c = if v.is_unit() {
        Mat2::identity(like)
    } else {
        let w = u.clone() * m11;
        let g = gcd(&w, v)?;
        if divides(&g, m21) {
            let n = exact_div(v, &g)?;
            let c21 = if n.is_unit() {
                like.zero_like()
            } else {
                let inv = inverse_mod(&exact_div(&w, &g)?, &n)?;
                (-exact_div(m21, &g)? * &inv).rem_balanced(&n)
            };
            Mat2::lower(u.clone() * &c21)
        } else {
            let mut r21 = Vec::new();
            let mut r22 = Vec::new();
            for (q, _) in v.factor()?.factors {
                if divides(&q, m21) {
                    r21.push((like.zero_like(), q.clone()));
                    r22.push((like.one_like(), q));
                } else {
                    let inv = inverse_mod(m21, &q)?;
                    let c22 = (-(u.clone() * m11) * &inv).div_rem_euclid(&q).1;
                    r21.push((like.one_like(), q.clone()));
                    r22.push((c22, q));
                }
            }
            let (c21, _) = crt(like, &r21)?;
            let (c22, _) = crt(like, &r22)?;
            let c21 = c21.rem_balanced(v);
            let c22 = c22.rem_balanced(v);
            let bottom_left = u.clone() * &c21;
            // Adding v * k with k the part of bottom_left coprime to c22 makes
            // the row coprime: primes of k are avoided by c22, the others
            // divide c22 but not v.
            let k = rp_split(&bottom_left, &c22)?.t;
            let c22 = c22 + &(v.clone() * &k);
            unimodular_complete_row(&bottom_left, &c22)?
        }
    };

    let f = c.inverse_unimodular()?;
    let l = &c * m;
    let split = TransformSplit { f, l, u: u.clone(), v: v.clone() };
    verify_split(m, &split)?;
    Ok(split)
}

fn verify_split<R: Pid>(m: &Mat2<R>, s: &TransformSplit<R>) -> Result<()> {
    let ok = &s.f * &s.l == *m
        && s.f.is_unimodular()
        && s.l.is_unimodular()
        && divides(&s.u, s.f.get(1, 0))
        && divides(&s.v, s.l.get(1, 0));
    if ok {
        Ok(())
    } else {
        Err(Error::Certificate(format!(
            "split of {m} with u = {}, v = {} failed: F = {}, L = {}",
            s.u, s.v, s.f, s.l
        )))
    }
}

/// Adequate part of `B` with respect to `A`.
pub fn adequate_part<R: Pid>(b: &Mat2<R>, a: &Mat2<R>) -> Result<AdequateMatrixSplit<R>> {
    if a.is_singular() || b.is_singular() {
        return Err(Error::Singular);
    }
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(b.domain(), a.domain()));
    }
    let da = snf(a)?;
    let db = snf(b)?;
    let tau = transfer(&db, &da)?;
    let partition = build_sigmas(&da, &db, &tau)?;

    let (sigma1, sigma2) = (&partition.sigma1, &partition.sigma2);
    let u = exact_div(sigma2, &gcd(sigma2, db.alpha1())?)?;
    let v = partition.q_product();
    let split = split_transform(tau.matrix(), &u, &v)?;

    // (F^-1 * P_B)^-1 = P_B^-1 * F
    let s = &(&db.p().inverse_unimodular()? * &split.f) * &Mat2::diag(sigma1.clone(), sigma2.clone())?;
    let t = left_divides(&s, b)?
        .ok_or_else(|| Error::Certificate(format!("adequate part {s} does not left-divide {b}")))?;
    if &(&s * &t) != b {
        return Err(Error::Certificate("S * T != B".into()));
    }
    let ds = snf(&s)?;
    if ds.alpha1() != sigma1 || ds.alpha2() != sigma2 {
        return Err(Error::Certificate(format!(
            "SNF of S is ({}, {}), expected ({sigma1}, {sigma2})",
            ds.alpha1(),
            ds.alpha2()
        )));
    }
    let trivial = s.is_unimodular() || t.is_unimodular();
    Ok(AdequateMatrixSplit { s, t, partition, split, trivial })
}

/// Right adequate part via transposition: returns `(T, S)` with `B = T * S`
/// and `S` the right adequate part of `B` with respect to `A`.
pub fn right_adequate_part<R: Pid>(b: &Mat2<R>, a: &Mat2<R>) -> Result<(Mat2<R>, Mat2<R>)> {
    let left = adequate_part(&b.transpose(), &a.transpose())?;
    Ok((left.t.transpose(), left.s.transpose()))
}

/// Decides whether every left divisor of `S` has a nontrivial left gcd with `A`.
pub fn theorem2_check<R: Pid>(a: &Mat2<R>, s: &Mat2<R>) -> Result<Theorem2Outcome<R>> {
    if a.is_singular() || s.is_singular() {
        return Err(Error::Singular);
    }
    theorem2_check_with(&snf(a)?, &snf(s)?)
}

/// [`theorem2_check`] on explicit certificates; the result does not depend
/// on which certificates are supplied.
pub fn theorem2_check_with<R: Pid>(
    da: &SmithDecomposition<R>,
    ds: &SmithDecomposition<R>,
) -> Result<Theorem2Outcome<R>> {
    let (a1, a2) = da.diagonal();
    let (s1, s2) = ds.diagonal();
    if s1.is_unit() && s2.is_unit() {
        return Ok(Theorem2Outcome { holds: true, witness: Theorem2Witness::Unimodular });
    }
    let sig_a1 = spectrum(a1)?;
    let sig_a2 = spectrum(a2)?;
    let sig_s1 = spectrum(s1)?;
    let sig_s2 = spectrum(s2)?;
    for (index, ss, sa) in [(1u8, &sig_s1, &sig_a1), (2, &sig_s2, &sig_a2)] {
        let missing = ss.difference(sa);
        if !missing.is_empty() {
            return Ok(Theorem2Outcome {
                holds: false,
                witness: Theorem2Witness::SpectrumNotContained {
                    index,
                    missing: missing.primes().to_vec(),
                },
            });
        }
    }
    let qs: Spectrum<R> = sig_s2.difference(&sig_a1);
    if qs.is_empty() {
        return Ok(Theorem2Outcome { holds: true, witness: Theorem2Witness::Unrestricted });
    }
    let q_product = qs.product(a1);
    let entry = transfer(ds, da)?.t21().clone();
    Ok(Theorem2Outcome {
        holds: divides(&q_product, &entry),
        witness: Theorem2Witness::Shape {
            q_primes: qs.primes().to_vec(),
            q_product,
            entry,
        },
    })
}

/// The criterion of [`theorem2_check`] for a left divisor `S` of `B`, plus
/// `gcd(sigma2 / gcd(sigma2, beta1), q_1 ... q_k) | tau21`.
pub fn lemma3_check<R: Pid>(a: &Mat2<R>, b: &Mat2<R>, s: &Mat2<R>) -> Result<Lemma3Outcome<R>> {
    if a.is_singular() || b.is_singular() || s.is_singular() {
        return Err(Error::Singular);
    }
    if left_divides(s, b)?.is_none() {
        return Err(Error::NotALeftDivisor);
    }
    let da = snf(a)?;
    let db = snf(b)?;
    let ds = snf(s)?;
    let theorem2 = theorem2_check_with(&da, &ds)?;

    let s2 = ds.alpha2();
    let u = exact_div(s2, &gcd(s2, db.alpha1())?)?;
    let q_product = spectrum(s2)?.difference(&spectrum(da.alpha1())?).product(s2);
    let divisor = gcd(&u, &q_product)?;
    let tau21 = transfer(&db, &da)?.t21().clone();
    let divisor_divides_tau21 = divides(&divisor, &tau21);
    Ok(Lemma3Outcome {
        holds: theorem2.holds && divisor_divides_tau21,
        theorem2,
        divisor,
        tau21,
        divisor_divides_tau21,
    })
}
