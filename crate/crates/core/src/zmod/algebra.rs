//! Finite-dimensional algebras over the rationals given by structure
//! constants: radicals, minimal polynomials and splitting idempotents.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, Echelon, Vector};
use crate::rational::{self, Q};

/// Univariate polynomial, lowest degree first.
pub type UPoly = Vec<Q>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn upoly_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero)).collect())
}

fn upoly_divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lb = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, x) in b.iter().enumerate() {
            r[i + shift] -= &c * x;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// `(u, v)` with `u a + v b = 1` for coprime `a`, `b`.
fn bezout(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![Q::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (q, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
        let t = upoly_sub(&t0, &upoly_mul(&q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let g = r0[0].clone();
    assert_eq!(r0.len(), 1, "polynomials are not coprime");
    (s0.iter().map(|x| x / &g).collect(), t0.iter().map(|x| x / &g).collect())
}

/// Substitutes `x -> x + r`.
fn taylor_shift(p: &UPoly, r: &Q) -> UPoly {
    let mut out: UPoly = Vec::new();
    for c in p.iter().rev() {
        out = upoly_mul(&out, &vec![r.clone(), Q::one()]);
        if out.is_empty() {
            out = vec![c.clone()];
        } else {
            out[0] += c;
        }
        out = trim(out);
    }
    out
}

fn divisors(n: u64, cap: u64) -> Option<Vec<u64>> {
    if n > cap {
        return None;
    }
    let mut d = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            d.push(i);
            if i != n / i {
                d.push(n / i);
            }
        }
        i += 1;
    }
    Some(d)
}

/// Rational roots of a nonzero polynomial (those found by the rational
/// root test, skipping polynomials with huge coefficients).
pub fn rational_roots(p: &UPoly) -> Vec<Q> {
    let mut p = trim(p.clone());
    let mut roots = Vec::new();
    if p.is_empty() {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Q::zero());
        while p.first().is_some_and(Zero::is_zero) {
            p.remove(0);
        }
    }
    let l = p.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return roots;
    };
    let (Some(ps), Some(qs)) = (divisors(a0, 1 << 40), divisors(an, 1 << 40)) else {
        return roots;
    };
    for &a in &ps {
        for &b in &qs {
            for sgn in [1i64, -1] {
                let r = rational::frac(sgn * a as i64, b as i64);
                if !roots.contains(&r) && eval_upoly(&p, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval_upoly(p: &UPoly, x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pub dim: usize,
    /// `mult[a][b]` = coordinates of `e_a e_b`.
    pub mult: Vec<Vec<Vector>>,
    pub one: Vector,
}

impl FdAlgebra {
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (o, c) in out.iter_mut().zip(&self.mult[a][b]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, a: usize) -> Vector {
        let mut v = vec![Q::zero(); self.dim];
        v[a] = Q::one();
        v
    }

    /// Radical as the kernel of the trace form `(x, y) -> tr(L_{xy})`.
    pub fn radical(&self) -> Vec<Vector> {
        let traces: Vec<Q> = (0..self.dim)
            .map(|k| (0..self.dim).map(|b| self.mult[k][b][b].clone()).fold(Q::zero(), |s, x| s + x))
            .collect();
        let form: Vec<Vec<Q>> = (0..self.dim)
            .map(|a| (0..self.dim).map(|b| linalg::dot(&self.mult[a][b], &traces)).collect())
            .collect();
        linalg::nullspace(&form, self.dim)
    }

    /// Whether the algebra modulo its radical is one-dimensional.
    pub fn is_local(&self) -> bool {
        self.dim - self.radical().len() == 1
    }

    /// Monic minimal polynomial of `x`.
    pub fn min_poly(&self, x: &[Q]) -> UPoly {
        let mut ech = Echelon::tracking();
        let mut power = self.one.clone();
        let mut k = 0;
        loop {
            if let Some(c) = ech.coordinates(&power) {
                let mut p: UPoly = c.iter().map(|v| -v.clone()).collect();
                p.resize(k, Q::zero());
                p.push(Q::one());
                return trim(p);
            }
            ech.insert(&power);
            power = self.mul(&power, x);
            k += 1;
        }
    }

    pub fn eval_poly(&self, p: &UPoly, x: &[Q]) -> Vector {
        let mut acc = vec![Q::zero(); self.dim];
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            for (a, o) in acc.iter_mut().zip(&self.one) {
                *a += c * o;
            }
        }
        acc
    }

    /// An idempotent different from 0 and 1 obtained from `x` by a Fitting
    /// split of `x - r` for a rational root `r` of its minimal polynomial.
    pub fn idempotent_from(&self, x: &[Q]) -> Option<Vector> {
        let m = self.min_poly(x);
        for r in rational_roots(&m) {
            // m(x + r) = x^k g(x) with g(0) != 0
            let shifted = taylor_shift(&m, &r);
            let k = shifted.iter().take_while(|c| c.is_zero()).count();
            let g: UPoly = shifted[k..].to_vec();
            if k == 0 || g.len() < 2 {
                continue;
            }
            let mut xk = vec![Q::zero(); k];
            xk.push(Q::one());
            let (u, _) = bezout(&xk, &g);
            // e = u(y) y^k with y = x - r is 1 on the part where y is invertible
            let y: Vector = x.iter().zip(&self.one).map(|(a, o)| a - &r * o).collect();
            let e = self.eval_poly(&upoly_mul(&u, &xk), &y);
            return Some(e);
        }
        None
    }

    /// Searches basis elements, their products, then seeded random
    /// combinations for a nontrivial idempotent.
    pub fn find_idempotent(&self, tries: usize) -> Option<Vector> {
        for a in 0..self.dim {
            if let Some(e) = self.idempotent_from(&self.basis_vector(a)) {
                return Some(e);
            }
        }
        for a in 0..self.dim {
            for b in 0..self.dim {
                let p = self.mul(&self.basis_vector(a), &self.basis_vector(b));
                if let Some(e) = self.idempotent_from(&p) {
                    return Some(e);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
        for _ in 0..tries {
            let x: Vector = (0..self.dim).map(|_| rational::q(rng.gen_range(-3..=3))).collect();
            if let Some(e) = self.idempotent_from(&x) {
                return Some(e);
            }
        }
        None
    }
}
