use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::{gcd, Domain, Factorization, Pid};
use crate::error::{Error, Result};

/// A polynomial over `F_p`, stored as ascending coefficients in `[0, p)`
/// with no trailing zeros. The zero polynomial has no coefficients.
///
/// `p` is assumed prime; callers parsing untrusted input should check it
/// with [`super::is_prime_u64`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

impl FpPoly {
    /// Builds a polynomial from ascending coefficients, reducing them mod `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    /// Builds from signed coefficients, reducing into `[0, p)`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i128;
        FpPoly::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(pi) as u64)
                .collect(),
        )
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check(&self, other: &FpPoly) {
        assert_eq!(
            self.p, other.p,
            "polynomials over different prime fields cannot be combined"
        );
    }

    fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect(),
        )
    }

    fn monic(&self) -> FpPoly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn rem(&self, m: &FpPoly) -> FpPoly {
        self.div_rem_euclid(m).1
    }

    /// `self^e mod m`.
    fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::constant(self.p, 1).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (acc.clone() * &acc).rem(m);
            if e.bit(i) {
                acc = (acc * &base).rem(m);
            }
        }
        acc
    }

    /// Inverse of the Frobenius on a polynomial whose derivative vanishes:
    /// every exponent is a multiple of `p`, and `c^(1/p) = c` in `F_p`.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    /// Squarefree decomposition of a monic polynomial into pairwise coprime
    /// squarefree monic factors with multiplicities.
    fn squarefree(&self) -> Vec<(FpPoly, u32)> {
        let one = FpPoly::constant(self.p, 1);
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let d = self.derivative();
        let mut out = Vec::new();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree() {
                out.push((g, m * self.p as u32));
            }
            return out;
        }
        let mut c = gcd(self, &d).expect("nonzero");
        let mut w = self.div_rem_euclid(&c).0;
        let mut i = 1u32;
        while w != one {
            let y = gcd(&w, &c).expect("nonzero");
            let fac = w.div_rem_euclid(&y).0;
            if fac != one {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = c.div_rem_euclid(&w).0;
        }
        if c != one {
            for (g, m) in c.pth_root().squarefree() {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let x = FpPoly::x(p);
        let pe = BigUint::from(p);
        let mut out = Vec::new();
        let mut f = self.clone();
        let mut h = x.rem(&f);
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(&pe, &f);
            let g = gcd(&f, &(h.clone() - &x)).expect("nonzero");
            if !g.is_one() {
                f = f.div_rem_euclid(&g).0;
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if f.degree().unwrap_or(0) > 0 {
            let d = f.degree().unwrap();
            out.push((f, d));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    /// Candidate splitting polynomials are enumerated deterministically.
    fn equal_degree(&self, d: usize, out: &mut Vec<FpPoly>) {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return;
        }
        if n == d {
            out.push(self.clone());
            return;
        }
        let p = self.p;
        let exponent = if p == 2 {
            None
        } else {
            Some((BigUint::from(p).pow(d as u32) - 1u32) / 2u32)
        };
        let mut k: u64 = p;
        loop {
            let a = candidate(p, k, n);
            k += 1;
            let probe = match &exponent {
                Some(e) => a.pow_mod(e, self) - &FpPoly::constant(p, 1),
                None => {
                    // Absolute trace F_{2^d} -> F_2.
                    let mut t = a.rem(self);
                    let mut acc = t.clone();
                    for _ in 1..d {
                        t = (t.clone() * &t).rem(self);
                        acc = acc + &t;
                    }
                    acc
                }
            };
            let g = match gcd(self, &probe) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let other = self.div_rem_euclid(&g).0;
                g.equal_degree(d, out);
                other.equal_degree(d, out);
                return;
            }
        }
    }

    fn factor_monic(&self) -> Vec<(FpPoly, u32)> {
        let mut factors = Vec::new();
        for (g, m) in self.squarefree() {
            for (h, d) in g.distinct_degree() {
                let mut irr = Vec::new();
                h.equal_degree(d, &mut irr);
                factors.extend(irr.into_iter().map(|q| (q, m)));
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        factors
    }
}

/// The `k`-th polynomial in base-`p` digit order, reduced to degree below `n`.
fn candidate(p: u64, mut k: u64, n: usize) -> FpPoly {
    let mut coeffs = Vec::new();
    while k > 0 && coeffs.len() < n {
        coeffs.push(k % p);
        k /= p;
    }
    FpPoly::new(p, coeffs)
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&FpPoly> for FpPoly {
    type Output = FpPoly;
    fn add(mut self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        let p = self.p;
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        self.trim();
        self
    }
}

impl Neg for FpPoly {
    type Output = FpPoly;
    fn neg(mut self) -> FpPoly {
        let p = self.p;
        for a in self.coeffs.iter_mut() {
            if *a != 0 {
                *a = p - *a;
            }
        }
        self
    }
}

impl Sub<&FpPoly> for FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self + &(-rhs.clone())
    }
}

impl Mul<&FpPoly> for FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return FpPoly::new(self.p, Vec::new());
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }
}

impl Pid for FpPoly {
    fn domain(&self) -> Domain {
        Domain::PolyModP(self.p)
    }

    fn zero_like(&self) -> Self {
        FpPoly::new(self.p, Vec::new())
    }

    fn one_like(&self) -> Self {
        FpPoly::constant(self.p, 1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| FpPoly::constant(self.p, invmod(self.coeffs[0], self.p)))
    }

    fn split_unit(&self) -> (Self, Self) {
        if self.coeffs.is_empty() {
            return (self.one_like(), self.clone());
        }
        (FpPoly::constant(self.p, self.leading()), self.monic())
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        self.check(d);
        assert!(!d.coeffs.is_empty(), "division by zero polynomial");
        let p = self.p;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return (self.zero_like(), self.clone());
        }
        let inv = invmod(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dn], inv, p);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let t = mulmod(c, dc, p);
                r[i + j] = (r[i + j] + p - t) % p;
            }
        }
        r.truncate(dn);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn factor(&self) -> Result<Factorization<Self>> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroArgument);
        }
        let (unit, f) = self.split_unit();
        Ok(Factorization {
            unit,
            factors: f.factor_monic(),
        })
    }
}
