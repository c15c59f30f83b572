//! Left divisors, left gcds and left coprimality, computed from Smith
//! certificates.
//!
//! For `A = P_A^-1 diag(a1, a2) Q_A^-1` and `B = P_B^-1 diag(b1, b2) Q_B^-1`
//! everything here is driven by the transfer matrix `tau = P_B * P_A^-1`:
//!
//! * `SNF((A, B)_l) = diag(gcd(a1, b1), gcd(a2, b2, lcm(a1, b1) * tau21))`;
//! * `B` left-divides `A` iff `b_i | a_i` and `b2 / gcd(b2, a1)` divides `tau21`.
//!
//! None of these results depend on which certificates were chosen.

use crate::error::{Error, Result};
use crate::matrix::{column_hermite, snf, Mat2, SmithDecomposition};
use crate::ring::{divides, exact_div, gcd, gcd_all, lcm, Pid};

/// `tau = P_B * P_A^-1` for a pair of Smith certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix<R> {
    tau: Mat2<R>,
}

impl<R: Pid> TransferMatrix<R> {
    pub fn matrix(&self) -> &Mat2<R> {
        &self.tau
    }

    /// The bottom-left entry, which governs every divisibility criterion.
    pub fn t21(&self) -> &R {
        self.tau.get(1, 0)
    }
}

/// Left gcd of two matrices together with the cofactors
/// `A = gcd_matrix * cofactor_a`, `B = gcd_matrix * cofactor_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftGcdResult<R> {
    pub d1: R,
    pub d2: R,
    pub gcd_matrix: Mat2<R>,
    pub cofactor_a: Mat2<R>,
    pub cofactor_b: Mat2<R>,
}

pub fn transfer<R: Pid>(db: &SmithDecomposition<R>, da: &SmithDecomposition<R>) -> Result<TransferMatrix<R>> {
    let pa_inv = da.p().inverse_unimodular()?;
    let tau = db.p().try_mul(&pa_inv)?;
    debug_assert!(tau.is_unimodular());
    Ok(TransferMatrix { tau })
}

/// Smith diagonal `(d1, d2)` of the left gcd `(A, B)_l`.
pub fn leftgcd_snf<R: Pid>(da: &SmithDecomposition<R>, db: &SmithDecomposition<R>) -> Result<(R, R)> {
    let tau = transfer(db, da)?;
    let (a1, a2) = da.diagonal();
    let (b1, b2) = db.diagonal();
    let d1 = gcd(a1, b1)?;
    let mixed = lcm(a1, b1)? * tau.t21();
    let d2 = gcd_all(&[a2, b2, &mixed])?;
    if !divides(&d1, &d2) {
        return Err(Error::Certificate(format!("left gcd diagonal ({d1}, {d2}) is not divisor-ordered")));
    }
    Ok((d1, d2))
}

/// `(A, B)_l = I`.
pub fn left_coprime<R: Pid>(da: &SmithDecomposition<R>, db: &SmithDecomposition<R>) -> Result<bool> {
    let (d1, d2) = leftgcd_snf(da, db)?;
    Ok(d1.is_unit() && d2.is_unit())
}

/// Convenience wrapper computing both Smith forms.
pub fn left_coprime_matrices<R: Pid>(a: &Mat2<R>, b: &Mat2<R>) -> Result<bool> {
    left_coprime(&snf(a)?, &snf(b)?)
}

/// Quotient `C = B^-1 * A` when it is integral: `adj(B) * A` divided by `det(B)`.
pub fn left_divides_direct<R: Pid>(b: &Mat2<R>, a: &Mat2<R>) -> Result<Option<Mat2<R>>> {
    let det = b.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let num = b.adjugate().try_mul(a)?;
    Ok(num.exact_div_scalar(&det))
}

/// Divisibility read off the certificates: `beta_i | alpha_i` and the
/// transfer matrix lies in the set whose bottom-left entry is a multiple of
/// `beta2 / gcd(beta2, alpha1)`.
pub fn left_divides_structural<R: Pid>(db: &SmithDecomposition<R>, da: &SmithDecomposition<R>) -> Result<bool> {
    let (a1, a2) = da.diagonal();
    let (b1, b2) = db.diagonal();
    if !divides(b1, a1) || !divides(b2, a2) {
        return Ok(false);
    }
    let tau = transfer(db, da)?;
    let modulus = exact_div(b2, &gcd(b2, a1)?)?;
    Ok(divides(&modulus, tau.t21()))
}

/// `Some(C)` with `B * C = A` if `B` is a left divisor of `A`.
///
/// Both the direct and the structural test run; a disagreement is reported
/// as a certificate failure.
pub fn left_divides<R: Pid>(b: &Mat2<R>, a: &Mat2<R>) -> Result<Option<Mat2<R>>> {
    if b.is_singular() || a.is_singular() {
        return Err(Error::Singular);
    }
    let direct = left_divides_direct(b, a)?;
    let structural = left_divides_structural(&snf(b)?, &snf(a)?)?;
    if direct.is_some() != structural {
        return Err(Error::Certificate(format!(
            "divisibility tests disagree for B = {b}, A = {a}"
        )));
    }
    if let Some(c) = &direct {
        if &(b * c) != a {
            return Err(Error::Certificate(format!("B * C != A for B = {b}, A = {a}")));
        }
    }
    Ok(direct)
}

/// The left divisor `(L * P_A)^-1 * diag(beta1, beta2)` of `A`, where `L` is
/// unimodular with bottom-left entry divisible by `beta2 / gcd(beta2, alpha1)`.
pub fn divisor_from_params<R: Pid>(
    da: &SmithDecomposition<R>,
    beta1: &R,
    beta2: &R,
    l: &Mat2<R>,
) -> Result<Mat2<R>> {
    let (a1, a2) = da.diagonal();
    let bad = |m: String| Err(Error::InvalidParameters(m));
    if beta1.is_zero() || beta2.is_zero() {
        return bad("invariant factors must be nonzero".into());
    }
    if !divides(beta1, beta2) {
        return bad(format!("beta1 = {beta1} does not divide beta2 = {beta2}"));
    }
    if !divides(beta1, a1) {
        return bad(format!("beta1 = {beta1} does not divide alpha1 = {a1}"));
    }
    if !divides(beta2, a2) {
        return bad(format!("beta2 = {beta2} does not divide alpha2 = {a2}"));
    }
    if !l.is_unimodular() {
        return bad(format!("L = {l} is not unimodular"));
    }
    let modulus = exact_div(beta2, &gcd(beta2, a1)?)?;
    if !divides(&modulus, l.get(1, 0)) {
        return bad(format!("bottom-left entry of L is not a multiple of {modulus}"));
    }

    let inv = l.try_mul(da.p())?.inverse_unimodular()?;
    let d = inv.try_mul(&Mat2::diag(beta1.clone(), beta2.clone())?)?;

    let a = da.reconstruct()?;
    if left_divides(&d, &a)?.is_none() {
        return Err(Error::Certificate(format!("{d} does not left-divide {a}")));
    }
    let sd = snf(&d)?;
    if sd.alpha1() != &beta1.split_unit().1 || sd.alpha2() != &beta2.split_unit().1 {
        return Err(Error::Certificate(format!("SNF of {d} differs from ({beta1}, {beta2})")));
    }
    Ok(d)
}

/// For `B` of prime determinant: if `(A, B)_l != I` then `B` left-divides
/// `A` and the quotient is returned; otherwise `None`.
pub fn absorb_prime_divisor<R: Pid>(a: &Mat2<R>, b: &Mat2<R>) -> Result<Option<Mat2<R>>> {
    let det = b.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let f = det.factor()?;
    if f.factors.len() != 1 || f.factors[0].1 != 1 {
        return Err(Error::CompositeDeterminant(det.to_string()));
    }
    if left_coprime_matrices(a, b)? {
        return Ok(None);
    }
    match left_divides(b, a)? {
        Some(c) => Ok(Some(c)),
        None => Err(Error::Certificate(format!(
            "{b} has prime determinant and a nontrivial left gcd with {a} but does not divide it"
        ))),
    }
}

/// Left gcd matrix via the column Hermite form of `[A | B]`.
pub fn left_gcd<R: Pid>(a: &Mat2<R>, b: &Mat2<R>) -> Result<LeftGcdResult<R>> {
    if a.is_singular() || b.is_singular() {
        return Err(Error::Singular);
    }
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    let cols = [a.column(0), a.column(1), b.column(0), b.column(1)];
    let g = column_hermite(&cols)?;
    let cofactor_a = left_divides_direct(&g, a)?
        .ok_or_else(|| Error::Certificate("gcd matrix does not divide A".into()))?;
    let cofactor_b = left_divides_direct(&g, b)?
        .ok_or_else(|| Error::Certificate("gcd matrix does not divide B".into()))?;
    let sg = snf(&g)?;
    Ok(LeftGcdResult {
        d1: sg.alpha1().clone(),
        d2: sg.alpha2().clone(),
        gcd_matrix: g,
        cofactor_a,
        cofactor_b,
    })
}
