//! Exact 2x2 matrices over a [`Pid`] and their Smith normal form.
//!
//! Smith decompositions follow the orientation `P * A * Q = diag(alpha1, alpha2)`,
//! so the source matrix is recovered as `P^-1 * diag(alpha1, alpha2) * Q^-1`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{divides, egcd, exact_div, gcd, Domain, Pid};

/// A 2x2 matrix, row-major, with all entries in one domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2<R> {
    e: [[R; 2]; 2],
}

impl<R: Pid> Mat2<R> {
    pub fn new(e: [[R; 2]; 2]) -> Result<Self> {
        let d = e[0][0].domain();
        for x in e.iter().flatten() {
            if x.domain() != d {
                return Err(Error::DomainMismatch(d, x.domain()));
            }
        }
        Ok(Mat2 { e })
    }

    fn raw(a: R, b: R, c: R, d: R) -> Self {
        Mat2 {
            e: [[a, b], [c, d]],
        }
    }

    pub fn identity(like: &R) -> Self {
        Mat2::raw(like.one_like(), like.zero_like(), like.zero_like(), like.one_like())
    }

    pub fn diag(a: R, b: R) -> Result<Self> {
        let z = a.zero_like();
        Mat2::new([[a, z.clone()], [z, b]])
    }

    /// Lower unitriangular `[[1, 0], [c, 1]]`.
    pub fn lower(c: R) -> Self {
        Mat2::raw(c.one_like(), c.zero_like(), c.clone(), c.one_like())
    }

    /// Row swap `[[0, 1], [1, 0]]`.
    pub fn swap(like: &R) -> Self {
        Mat2::raw(like.zero_like(), like.one_like(), like.one_like(), like.zero_like())
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.e[i][j]
    }

    pub fn entries(&self) -> &[[R; 2]; 2] {
        &self.e
    }

    pub fn into_entries(self) -> [[R; 2]; 2] {
        self.e
    }

    pub fn domain(&self) -> Domain {
        self.e[0][0].domain()
    }

    /// Any entry, used as a domain witness for constants.
    pub fn like(&self) -> &R {
        &self.e[0][0]
    }

    pub fn try_mul(&self, other: &Mat2<R>) -> Result<Mat2<R>> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch(self.domain(), other.domain()));
        }
        Ok(self * other)
    }

    pub fn det(&self) -> R {
        let [[a, b], [c, d]] = &self.e;
        a.clone() * d - &(b.clone() * c)
    }

    /// `adj(X)` with `X * adj(X) = det(X) * I`.
    pub fn adjugate(&self) -> Mat2<R> {
        let [[a, b], [c, d]] = &self.e;
        Mat2::raw(d.clone(), -b.clone(), -c.clone(), a.clone())
    }

    pub fn transpose(&self) -> Mat2<R> {
        let [[a, b], [c, d]] = &self.e;
        Mat2::raw(a.clone(), c.clone(), b.clone(), d.clone())
    }

    pub fn scale(&self, k: &R) -> Mat2<R> {
        let [[a, b], [c, d]] = &self.e;
        Mat2::raw(
            a.clone() * k,
            b.clone() * k,
            c.clone() * k,
            d.clone() * k,
        )
    }

    /// Divides every entry by `k`, or `None` if some entry is not a multiple.
    pub fn exact_div_scalar(&self, k: &R) -> Option<Mat2<R>> {
        let mut out = self.e.clone();
        for x in out.iter_mut().flatten() {
            *x = exact_div(x, k).ok()?;
        }
        Some(Mat2 { e: out })
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_unit()
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.like())
    }

    pub fn is_diagonal(&self) -> bool {
        self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    /// Exact inverse of a unimodular matrix: `adj(X) * det(X)^-1`.
    pub fn inverse_unimodular(&self) -> Result<Mat2<R>> {
        let det = self.det();
        let inv = det
            .unit_inverse()
            .ok_or_else(|| Error::NotUnimodular(det.to_string()))?;
        Ok(self.adjugate().scale(&inv))
    }

    /// `(u, v)` as columns `[[u1, v1], [u2, v2]]`.
    pub fn from_columns(u: [R; 2], v: [R; 2]) -> Result<Self> {
        let [u1, u2] = u;
        let [v1, v2] = v;
        Mat2::new([[u1, v1], [u2, v2]])
    }

    pub fn column(&self, j: usize) -> [R; 2] {
        [self.e[0][j].clone(), self.e[1][j].clone()]
    }
}

impl Mat2<BigInt> {
    /// Convenience constructor for integer matrices.
    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        Mat2::raw(a.into(), b.into(), c.into(), d.into())
    }
}

/// Matrix product.
///
/// # Panics
/// If the operands live in different domains; use [`Mat2::try_mul`] at
/// untrusted boundaries.
impl<'a, R: Pid> Mul<&'a Mat2<R>> for &'a Mat2<R> {
    type Output = Mat2<R>;

    fn mul(self, o: &'a Mat2<R>) -> Mat2<R> {
        let x = &self.e;
        let y = &o.e;
        let entry = |i: usize, j: usize| x[i][0].clone() * &y[0][j] + &(x[i][1].clone() * &y[1][j]);
        Mat2::raw(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

impl<R: Pid> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// A Smith normal form certificate `P * A * Q = diag(alpha1, alpha2)` of a
/// nonsingular matrix, with canonical `alpha1 | alpha2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithDecomposition<R> {
    p: Mat2<R>,
    alpha1: R,
    alpha2: R,
    q: Mat2<R>,
}

impl<R: Pid> SmithDecomposition<R> {
    /// Assembles a certificate for `source`, checking every invariant.
    pub fn from_parts(source: &Mat2<R>, p: Mat2<R>, alpha1: R, alpha2: R, q: Mat2<R>) -> Result<Self> {
        let s = SmithDecomposition { p, alpha1, alpha2, q };
        s.verify(source)?;
        Ok(s)
    }

    pub fn p(&self) -> &Mat2<R> {
        &self.p
    }

    pub fn q(&self) -> &Mat2<R> {
        &self.q
    }

    pub fn alpha1(&self) -> &R {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &R {
        &self.alpha2
    }

    pub fn diagonal(&self) -> (&R, &R) {
        (&self.alpha1, &self.alpha2)
    }

    pub fn diag_matrix(&self) -> Mat2<R> {
        Mat2::raw(
            self.alpha1.clone(),
            self.alpha1.zero_like(),
            self.alpha1.zero_like(),
            self.alpha2.clone(),
        )
    }

    /// `P^-1 * diag * Q^-1`.
    pub fn reconstruct(&self) -> Result<Mat2<R>> {
        let pi = self.p.inverse_unimodular()?;
        let qi = self.q.inverse_unimodular()?;
        Ok(&(&pi * &self.diag_matrix()) * &qi)
    }

    pub fn verify(&self, source: &Mat2<R>) -> Result<()> {
        let fail = |m: &str| Err(Error::Certificate(format!("smith form of {source}: {m}")));
        if self.p.domain() != source.domain() || self.q.domain() != source.domain() {
            return fail("domain mismatch");
        }
        if !self.p.is_unimodular() || !self.q.is_unimodular() {
            return fail("transforms are not unimodular");
        }
        if self.alpha1.is_zero() || self.alpha2.is_zero() {
            return fail("zero invariant factor");
        }
        if self.alpha1.split_unit().1 != self.alpha1 || self.alpha2.split_unit().1 != self.alpha2 {
            return fail("invariant factors are not canonical");
        }
        if !divides(&self.alpha1, &self.alpha2) {
            return fail("alpha1 does not divide alpha2");
        }
        if &(&self.p * source) * &self.q != self.diag_matrix() {
            return fail("P * A * Q != diag");
        }
        Ok(())
    }

    /// Transfers a certificate of `U * A * V` back to `A`.
    pub fn pulled_back(&self, u: &Mat2<R>, v: &Mat2<R>) -> SmithDecomposition<R> {
        SmithDecomposition {
            p: &self.p * u,
            alpha1: self.alpha1.clone(),
            alpha2: self.alpha2.clone(),
            q: v * &self.q,
        }
    }
}

/// Left-multiplies the working matrix and `P` by `u`.
fn row_op<R: Pid>(cur: &mut Mat2<R>, p: &mut Mat2<R>, u: &Mat2<R>) {
    *cur = u * &*cur;
    *p = u * &*p;
}

/// Right-multiplies the working matrix and `Q` by `v`.
fn col_op<R: Pid>(cur: &mut Mat2<R>, q: &mut Mat2<R>, v: &Mat2<R>) {
    *cur = &*cur * v;
    *q = &*q * v;
}

/// Row transform `U` (det 1) with `U * (a, c)^T = (gcd, 0)^T`.
fn clearing_rows<R: Pid>(a: &R, c: &R) -> Result<Mat2<R>> {
    if a.is_zero() {
        // c != 0 here; swapping keeps the determinant a unit.
        return Ok(Mat2::swap(a));
    }
    if divides(a, c) {
        return Ok(Mat2::lower(-exact_div(c, a)?));
    }
    let (g, x, y) = egcd(a, c)?;
    Ok(Mat2::raw(x, y, -exact_div(c, &g)?, exact_div(a, &g)?))
}

/// Smith normal form of a nonsingular matrix with transform certificates.
///
/// Bezout row steps clear the first column, Bezout column steps clear the
/// first row, repeating until diagonal; a final row addition enforces
/// `alpha1 | alpha2`. All row steps accumulate into `P` on the left, column
/// steps into `Q` on the right.
pub fn snf<R: Pid>(a: &Mat2<R>) -> Result<SmithDecomposition<R>> {
    if a.is_singular() {
        return Err(Error::Singular);
    }
    let like = a.like().clone();
    let mut cur = a.clone();
    let mut p = Mat2::identity(&like);
    let mut q = Mat2::identity(&like);

    loop {
        if !cur.e[1][0].is_zero() || cur.e[0][0].is_zero() {
            let u = clearing_rows(&cur.e[0][0], &cur.e[1][0])?;
            row_op(&mut cur, &mut p, &u);
            continue;
        }
        if !cur.e[0][1].is_zero() {
            let v = clearing_rows(&cur.e[0][0], &cur.e[0][1])?.transpose();
            col_op(&mut cur, &mut q, &v);
            continue;
        }
        if !divides(&cur.e[0][0], &cur.e[1][1]) {
            // [[a, 0], [0, d]] -> [[a, d], [0, d]], then reduce again.
            let add = Mat2::raw(like.one_like(), like.one_like(), like.zero_like(), like.one_like());
            row_op(&mut cur, &mut p, &add);
            continue;
        }
        break;
    }

    let (u1, alpha1) = cur.e[0][0].split_unit();
    let (u2, alpha2) = cur.e[1][1].split_unit();
    let fix = Mat2::raw(
        u1.unit_inverse().expect("unit"),
        like.zero_like(),
        like.zero_like(),
        u2.unit_inverse().expect("unit"),
    );
    p = &fix * &p;
    let s = SmithDecomposition { p, alpha1, alpha2, q };
    debug_assert!(s.verify(a).is_ok());
    Ok(s)
}

/// A unimodular matrix whose second row is `(u, v)`.
///
/// The first row `(x, y)` solves `x*v - y*u = 1` with `x` the least
/// representative of `v^-1` modulo `u`.
pub fn unimodular_complete_row<R: Pid>(u: &R, v: &R) -> Result<Mat2<R>> {
    let g = match gcd(u, v) {
        Ok(g) if g.is_unit() => g,
        _ => return Err(Error::NotCoprime(u.to_string(), v.to_string())),
    };
    debug_assert!(g.is_unit());
    let (x, y) = if u.is_zero() {
        (v.unit_inverse().expect("coprime with zero"), u.zero_like())
    } else if u.is_unit() {
        // x = 0, then -y*u = 1.
        (u.zero_like(), -u.unit_inverse().expect("unit"))
    } else {
        let (_, vinv, _) = egcd(v, u)?;
        let x = vinv.div_rem_euclid(u).1;
        let y = exact_div(&(x.clone() * v - &u.one_like()), u)?;
        (x, y)
    };
    let m = Mat2::new([[x, y], [u.clone(), v.clone()]])?;
    debug_assert!(m.is_unimodular());
    Ok(m)
}

/// Lower-triangular column Hermite form `[[h11, 0], [h21, h22]]` of the
/// module generated by the given columns: canonical diagonal and `h21`
/// reduced modulo `h22`.
pub fn column_hermite<R: Pid>(cols: &[[R; 2]]) -> Result<Mat2<R>> {
    let like = cols.first().ok_or(Error::RankDeficient)?[0].clone();
    let zero = like.zero_like();
    // Running basis: first = (a, b) with a the gcd of first coordinates so
    // far, second = (0, h) generating the first-coordinate-zero part.
    let (mut a, mut b) = (zero.clone(), zero.clone());
    let mut h = zero.clone();
    for [x, y] in cols {
        if x.is_zero() {
            h = if h.is_zero() && y.is_zero() { zero.clone() } else { gcd(&h, y)? };
        } else if a.is_zero() {
            a = x.clone();
            b = y.clone();
        } else {
            let (g, s, t) = egcd(&a, x)?;
            let ag = exact_div(&a, &g)?;
            let xg = exact_div(x, &g)?;
            // (x/g)*(a,b) - (a/g)*(x,y) has zero first coordinate.
            let killed = xg * &b - &(ag * y);
            let nb = s * &b + &(t * y);
            a = g;
            b = nb;
            h = if h.is_zero() && killed.is_zero() { zero.clone() } else { gcd(&h, &killed)? };
        }
        if !h.is_zero() {
            b = b.div_rem_euclid(&h).1;
        }
    }
    if a.is_zero() || h.is_zero() {
        return Err(Error::RankDeficient);
    }
    let (u, a_can) = a.split_unit();
    let uinv = u.unit_inverse().expect("unit");
    let b = (b * &uinv).div_rem_euclid(&h).1;
    Mat2::new([[a_can, zero.clone()], [b, h]])
}
