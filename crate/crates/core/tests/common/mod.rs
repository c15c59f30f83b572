#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Signed;
use pidmat::{FpPoly, Mat2, Pid};
use rand::Rng;

pub fn z(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn m(rows: [[i64; 2]; 2]) -> Mat2<BigInt> {
    Mat2::from_i64(rows)
}

pub fn abs_det(a: &Mat2<BigInt>) -> BigInt {
    a.det().abs()
}

/// Product of `steps` random elementary matrices built from `gen`.
pub fn unimodular_from<R: Pid, G: Rng>(rng: &mut G, like: &R, steps: usize, mut gen: impl FnMut(&mut G) -> R) -> Mat2<R> {
    let mut u = Mat2::identity(like);
    for _ in 0..steps {
        let e = match rng.gen_range(0..3) {
            0 => Mat2::lower(gen(rng)),
            1 => Mat2::lower(gen(rng)).transpose(),
            _ => Mat2::swap(like),
        };
        u = &u * &e;
    }
    u
}

pub fn random_unimodular<G: Rng>(rng: &mut G, steps: usize) -> Mat2<BigInt> {
    unimodular_from(rng, &z(0), steps, |r| z(r.gen_range(-3..=3)))
}

pub fn random_matrix<G: Rng>(rng: &mut G, bound: i64) -> Mat2<BigInt> {
    loop {
        let mut e = || rng.gen_range(-bound..=bound);
        let a = m([[e(), e()], [e(), e()]]);
        if !a.is_singular() {
            return a;
        }
    }
}

/// `U * diag(d1, d2) * V` with random unimodular `U`, `V`.
pub fn disguised_diag<G: Rng>(d1: i64, d2: i64, rng: &mut G) -> Mat2<BigInt> {
    let u = random_unimodular(rng, 3);
    let v = random_unimodular(rng, 3);
    &(&u * &m([[d1, 0], [0, d2]])) * &v
}

pub fn random_poly<G: Rng>(rng: &mut G, p: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    FpPoly::new(p, (0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

pub fn random_poly_matrix<G: Rng>(rng: &mut G, p: u64, max_deg: usize) -> Mat2<FpPoly> {
    loop {
        let mut e = || random_poly(rng, p, max_deg);
        let a = Mat2::new([[e(), e()], [e(), e()]]).unwrap();
        if !a.is_singular() {
            return a;
        }
    }
}

pub fn random_poly_unimodular<G: Rng>(rng: &mut G, p: u64, steps: usize) -> Mat2<FpPoly> {
    unimodular_from(rng, &FpPoly::constant(p, 0), steps, |r| random_poly(r, p, 1))
}
