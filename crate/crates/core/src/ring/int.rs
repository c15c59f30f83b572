use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Domain, Factorization, Pid};
use crate::error::{Error, Result};

/// Largest prime factor the integer factorizer accepts.
pub const PRIME_FACTOR_BOUND: u64 = 1_000_000_000;

const TRIAL_LIMIT: u64 = 1 << 16;
const RHO_ITERATIONS: u64 = 1 << 21;

impl Pid for BigInt {
    fn domain(&self) -> Domain {
        Domain::Integers
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn one_like(&self) -> Self {
        BigInt::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn unit_inverse(&self) -> Option<Self> {
        Pid::is_unit(self).then(|| self.clone())
    }

    fn split_unit(&self) -> (Self, Self) {
        match self.sign() {
            Sign::Minus => (-BigInt::one(), -self.clone()),
            _ => (BigInt::one(), self.clone()),
        }
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        assert!(!Zero::is_zero(d), "division by zero");
        let m = d.abs();
        let r = self.mod_floor(&m);
        let q = (self - &r) / d;
        (q, r)
    }

    fn rem_balanced(&self, m: &Self) -> Self {
        let m = m.abs();
        let r = self.mod_floor(&m);
        if &r * 2 > m {
            r - m
        } else {
            r
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.magnitude()
            .cmp(other.magnitude())
            .then_with(|| self.sign().cmp(&other.sign()))
    }

    fn factor(&self) -> Result<Factorization<Self>> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroArgument);
        }
        let (unit, n) = self.split_unit();
        let mut primes: Vec<BigInt> = Vec::new();
        let mut rest = n.clone();

        let mut d: u64 = 2;
        while d < TRIAL_LIMIT {
            let dd = BigInt::from(d);
            if &dd * &dd > rest {
                break;
            }
            while rest.is_multiple_of(&dd) {
                rest /= &dd;
                primes.push(dd.clone());
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if !rest.is_one() {
            let limit = BigInt::from(TRIAL_LIMIT);
            if rest < &limit * &limit {
                primes.push(rest);
            } else {
                split_large(rest, &mut primes, self)?;
            }
        }

        for p in &primes {
            if p > &BigInt::from(PRIME_FACTOR_BOUND) {
                return Err(Error::FactorBound(self.to_string()));
            }
        }
        primes.sort();
        let mut factors: Vec<(BigInt, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Ok(Factorization { unit, factors })
    }
}

/// Splits a cofactor with no prime factors below the trial limit.
fn split_large(n: BigInt, out: &mut Vec<BigInt>, original: &BigInt) -> Result<()> {
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    // A composite cofactor whose prime factors all lie below the bound has a
    // factor below 10^9, which Brent's rho finds well within the budget.
    for c in 1u32..8 {
        if let Some(f) = brent_rho(&n, &BigInt::from(c)) {
            let other = &n / &f;
            split_large(f, out, original)?;
            split_large(other, out, original)?;
            return Ok(());
        }
    }
    Err(Error::FactorBound(original.to_string()))
}

fn brent_rho(n: &BigInt, c: &BigInt) -> Option<BigInt> {
    let step = |x: &BigInt| (x * x + c) % n;
    let mut y = BigInt::from(2);
    let mut x = y.clone();
    let mut g = BigInt::one();
    let mut q = BigInt::one();
    let mut ys = y.clone();
    let mut r: u64 = 1;
    let batch: u64 = 128;
    let mut total: u64 = 0;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
        total += r;
        if total > RHO_ITERATIONS {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Miller–Rabin with the first twelve prime bases (deterministic below 3.3e24).
fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for b in BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test for machine integers.
pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigInt::from(n))
}
