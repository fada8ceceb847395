//! Arithmetic modulo a fixed 62-bit prime and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Q;

pub const P: u64 = 4_611_686_018_427_387_847;

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    n.mod_floor(&p).to_u64().unwrap()
}

/// Image of a rational, or `None` when the denominator vanishes mod `P`.
pub fn from_q(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    (d != 0).then(|| mul(reduce_int(x.numer()), inv(d)))
}

/// The rational `n/d` with `|n|, |d| < sqrt(P/2)` congruent to `a`.
pub fn reconstruct(a: u64) -> Option<Q> {
    let bound = BigInt::from(((P / 2) as f64).sqrt() as u64);
    let (mut r0, mut r1) = (BigInt::from(P), BigInt::from(a));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() >= bound {
        return None;
    }
    Some(Q::new(r1, t1))
}
