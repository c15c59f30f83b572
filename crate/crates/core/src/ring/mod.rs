//! Exact arithmetic over a commutative principal ideal domain.
//!
//! Two concrete domains implement [`Pid`]: the integers ([`num_bigint::BigInt`])
//! and univariate polynomials over a prime field ([`FpPoly`]). Everything above
//! this module is generic over the trait, so the matrix algorithms run
//! unchanged on either domain.
//!
//! Canonical associates are nonnegative integers and monic polynomials; every
//! value this module hands back (gcds, lcms, primes) is canonical.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

mod int;
mod poly;

pub use int::is_prime_u64;
pub use poly::FpPoly;

/// Which concrete ring an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    /// `F_p[x]` for the given prime `p`.
    PolyModP(u64),
}

/// An element of a commutative principal ideal domain with a Euclidean
/// division and a factorization routine.
///
/// Arithmetic operators between elements of different domains (polynomials
/// over different primes) panic; [`crate::matrix::Mat2`] checks domains at its
/// boundary so that the algorithms never mix them.
pub trait Pid:
    Clone
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn domain(&self) -> Domain;

    /// Zero of the same domain as `self`.
    fn zero_like(&self) -> Self;

    /// One of the same domain as `self`.
    fn one_like(&self) -> Self;

    fn is_zero(&self) -> bool;

    fn is_unit(&self) -> bool;

    /// Multiplicative inverse, present iff `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Splits `self = unit * canonical`. Zero maps to `(1, 0)`.
    fn split_unit(&self) -> (Self, Self);

    /// Euclidean division `self = q * d + r` where `r` is the least
    /// representative of its class (integers: `0 <= r < |d|`; polynomials:
    /// `deg r < deg d`).
    ///
    /// # Panics
    /// If `d` is zero.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);

    /// Representative of `self` modulo `m` of least size. Integers use the
    /// symmetric range `(-|m|/2, |m|/2]`; polynomials coincide with the
    /// Euclidean remainder.
    fn rem_balanced(&self, m: &Self) -> Self {
        self.div_rem_euclid(m).1
    }

    /// Total order on canonical elements used for sorting primes.
    /// Integers: by magnitude. Polynomials: by degree, then coefficients.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Prime factorization with canonical primes in ascending order.
    fn factor(&self) -> Result<Factorization<Self>>;
}

/// `unit * prod(prime^exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<R> {
    pub unit: R,
    pub factors: Vec<(R, u32)>,
}

impl<R: Pid> Factorization<R> {
    pub fn reconstruct(&self) -> R {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| acc * &pow(p, *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &R> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// The set of canonical primes dividing an element. The element 1 is an
/// implicit member of every spectrum and is never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum<R> {
    primes: Vec<R>,
}

impl<R: Pid> Spectrum<R> {
    pub fn empty() -> Self {
        Spectrum { primes: Vec::new() }
    }

    /// Builds a spectrum from arbitrary canonical primes, sorting and
    /// deduplicating them.
    pub fn from_primes(mut primes: Vec<R>) -> Self {
        primes.sort_by(|a, b| a.canonical_cmp(b));
        primes.dedup();
        Spectrum { primes }
    }

    pub fn primes(&self) -> &[R] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &R) -> bool {
        self.primes.iter().any(|q| q == p)
    }

    pub fn is_subset(&self, other: &Spectrum<R>) -> bool {
        self.primes.iter().all(|p| other.contains(p))
    }

    /// Primes of `self` that are missing from `other`.
    pub fn difference(&self, other: &Spectrum<R>) -> Spectrum<R> {
        Spectrum {
            primes: self
                .primes
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Spectrum<R>) -> Spectrum<R> {
        Spectrum {
            primes: self
                .primes
                .iter()
                .filter(|p| other.contains(p))
                .cloned()
                .collect(),
        }
    }

    /// Product of the primes; `like` supplies the domain for the empty product.
    pub fn product(&self, like: &R) -> R {
        self.primes
            .iter()
            .fold(like.one_like(), |acc, p| acc * p)
    }
}

/// Helmer's decomposition `b = s * t` with `gcd(t, a) = 1` and every prime
/// of `s` dividing `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdequateElementSplit<R> {
    pub s: R,
    pub t: R,
}

pub fn canonical<R: Pid>(a: &R) -> (R, R) {
    a.split_unit()
}

pub fn is_unit<R: Pid>(a: &R) -> bool {
    a.is_unit()
}

pub fn pow<R: Pid>(a: &R, mut e: u32) -> R {
    let mut base = a.clone();
    let mut acc = a.one_like();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * &base;
        }
    }
    acc
}

/// `d | a`. Zero divides only zero.
pub fn divides<R: Pid>(d: &R, a: &R) -> bool {
    if d.is_zero() {
        return a.is_zero();
    }
    a.div_rem_euclid(d).1.is_zero()
}

/// Canonical generator of the ideal `(a, b)`.
pub fn gcd<R: Pid>(a: &R, b: &R) -> Result<R> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem_euclid(&y).1;
        x = y;
        y = r;
    }
    Ok(x.split_unit().1)
}

/// gcd of a nonempty list, skipping the both-zero error as long as some
/// entry is nonzero.
pub fn gcd_all<R: Pid>(xs: &[&R]) -> Result<R> {
    let mut acc: Option<R> = None;
    for x in xs {
        acc = Some(match acc {
            None => (*x).clone(),
            Some(g) if g.is_zero() && x.is_zero() => g,
            Some(g) => gcd(&g, x)?,
        });
    }
    match acc {
        Some(g) if !g.is_zero() => Ok(g.split_unit().1),
        _ => Err(Error::BothZero),
    }
}

/// Extended Euclid: `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`, `g` canonical.
pub fn egcd<R: Pid>(a: &R, b: &R) -> Result<(R, R, R)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let zero = a.zero_like();
    let one = a.one_like();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_euclid(&r1);
        let s2 = s0 - &(q.clone() * &s1);
        let t2 = t0 - &(q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (u, g) = r0.split_unit();
    let inv = u.unit_inverse().expect("split_unit returns a unit");
    Ok((g, s0 * &inv, t0 * &inv))
}

/// Canonical least common multiple.
pub fn lcm<R: Pid>(a: &R, b: &R) -> Result<R> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let g = gcd(a, b)?;
    let q = exact_div(a, &g)?;
    Ok((q * b).split_unit().1)
}

/// The `q` with `q * b = a`.
pub fn exact_div<R: Pid>(a: &R, b: &R) -> Result<R> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem_euclid(b);
    if !r.is_zero() {
        return Err(Error::NotDivisible {
            dividend: a.to_string(),
            divisor: b.to_string(),
        });
    }
    Ok(q)
}

pub fn factor<R: Pid>(a: &R) -> Result<Factorization<R>> {
    a.factor()
}

pub fn spectrum<R: Pid>(a: &R) -> Result<Spectrum<R>> {
    let f = a.factor()?;
    Ok(Spectrum {
        primes: f.factors.into_iter().map(|(p, _)| p).collect(),
    })
}

/// Exponent of the prime `p` in the nonzero element `a`.
pub fn valuation<R: Pid>(p: &R, a: &R) -> u32 {
    debug_assert!(!p.is_unit() && !p.is_zero());
    if a.is_zero() {
        return u32::MAX;
    }
    let mut e = 0;
    let mut x = a.clone();
    loop {
        let (q, r) = x.div_rem_euclid(p);
        if !r.is_zero() {
            return e;
        }
        x = q;
        e += 1;
    }
}

/// Relatively prime part of `b` with respect to `a`: `b = s * t` where `t`
/// is the largest canonical divisor of `b` coprime to `a`.
pub fn rp_split<R: Pid>(b: &R, a: &R) -> Result<AdequateElementSplit<R>> {
    if b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut t = b.clone();
    loop {
        let g = gcd(&t, a)?;
        if g.is_unit() {
            break;
        }
        t = exact_div(&t, &g)?;
    }
    let t = t.split_unit().1;
    let s = exact_div(b, &t)?;
    Ok(AdequateElementSplit { s, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(&z(-450)), (z(-1), z(450)));
        assert_eq!(canonical(&z(0)), (z(1), z(0)));
        assert_eq!(canonical(&fp(5, &[3, 3])), (fp(5, &[3]), fp(5, &[1, 1])));
    }

    #[test]
    fn unit_examples() {
        assert!(is_unit(&z(-1)));
        assert!(!is_unit(&z(0)));
        assert!(is_unit(&fp(5, &[4])));
        assert!(!is_unit(&fp(5, &[])));
        assert!(!is_unit(&fp(5, &[0, 1])));
    }

    #[test]
    fn gcd_examples() {
        let g = gcd(&gcd(&z(210), &z(67500)).unwrap(), &z(1350)).unwrap();
        assert_eq!(g, z(30));
        assert_eq!(gcd(&z(-12), &z(0)).unwrap(), z(12));
        assert_eq!(gcd(&z(2700), &z(450)).unwrap(), z(450));
        assert_eq!(gcd(&z(0), &z(0)), Err(Error::BothZero));
        assert_eq!(gcd_all(&[&z(0), &z(0), &z(-6), &z(4)]).unwrap(), z(2));
    }

    #[test]
    fn egcd_examples() {
        let (g, x, y) = egcd(&z(5), &z(6)).unwrap();
        assert_eq!((g.clone(), x.clone(), y.clone()), (z(1), z(-1), z(1)));
        assert_eq!(z(5) * &x + &(z(6) * &y), g);
        assert_eq!(egcd(&z(17), &z(1)).unwrap(), (z(1), z(0), z(1)));
        assert_eq!(egcd(&z(450), &z(-1350)).unwrap(), (z(450), z(1), z(0)));

        let a = fp(5, &[2, 1]);
        let b = fp(5, &[3, 1]);
        let (g, x, y) = egcd(&a, &b).unwrap();
        assert_eq!(g, fp(5, &[1]));
        assert_eq!(a * &x + &(b * &y), g);
        assert_eq!(egcd(&z(0), &z(0)), Err(Error::BothZero));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm(&z(2), &z(450)).unwrap(), z(450));
        assert_eq!(lcm(&z(-9), &z(-9)).unwrap(), z(9));
        assert_eq!(lcm(&z(4), &z(6)).unwrap(), z(12));
        assert_eq!(lcm(&z(4), &z(0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(exact_div(&z(67500), &z(450)).unwrap(), z(150));
        assert_eq!(exact_div(&z(-31), &z(-31)).unwrap(), z(1));
        assert!(matches!(exact_div(&z(7), &z(2)), Err(Error::NotDivisible { .. })));
        assert_eq!(exact_div(&z(7), &z(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&z(67500)).unwrap();
        assert_eq!(f.unit, z(1));
        assert_eq!(f.factors, vec![(z(2), 2), (z(3), 3), (z(5), 4)]);
        let one = factor(&z(1)).unwrap();
        assert!(one.factors.is_empty());
        let f = factor(&fp(5, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fp(5, &[2, 1]), 1), (fp(5, &[3, 1]), 1)]);
        assert_eq!(factor(&z(0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&z(67500)).unwrap().primes(), &[z(2), z(3), z(5)]);
        assert!(spectrum(&z(1)).unwrap().is_empty());
        assert_eq!(
            spectrum(&z(210)).unwrap().primes(),
            &[z(2), z(3), z(5), z(7)]
        );
        let s = spectrum(&z(12)).unwrap();
        assert!(Spectrum::empty().is_subset(&s));
        assert!(s.is_subset(&spectrum(&z(30)).unwrap()));
        assert_eq!(s.difference(&spectrum(&z(3)).unwrap()).primes(), &[z(2)]);
    }

    #[test]
    fn rp_split_examples() {
        assert_eq!(
            rp_split(&z(2700), &z(210)).unwrap(),
            AdequateElementSplit { s: z(2700), t: z(1) }
        );
        assert_eq!(
            rp_split(&z(450), &z(7)).unwrap(),
            AdequateElementSplit { s: z(1), t: z(450) }
        );
        assert_eq!(
            rp_split(&z(40), &z(2)).unwrap(),
            AdequateElementSplit { s: z(8), t: z(5) }
        );
        assert_eq!(
            rp_split(&z(-40), &z(0)).unwrap(),
            AdequateElementSplit { s: z(-40), t: z(1) }
        );
    }

    #[test]
    fn valuation_counts() {
        assert_eq!(valuation(&z(5), &z(67500)), 4);
        assert_eq!(valuation(&z(7), &z(67500)), 0);
    }
}
