//! Multivariate polynomials over the rationals, graded with each variable
//! in degree 2, and monomial bases of homogeneous pieces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

pub type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `sum_i c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Poly::zero(), |acc, (i, c)| acc.add(&Poly::var(n, i).scale(c)))
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Polynomial degree (each variable counts 1); `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().sum::<u32>() as usize).max()
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.iter().sum::<u32>() as usize == d)
    }

    fn insert_add(&mut self, m: Mono, c: Q) {
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.insert_add(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Mono, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }

    pub fn mul_mono(&self, m: &[u32]) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone())).collect() }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Division by a nonzero linear form: `(quotient, remainder)` where the
    /// remainder avoids the first variable occurring in `h`.
    pub fn div_linear(&self, h: &Poly) -> (Poly, Poly) {
        let (j, cj) = h
            .terms
            .iter()
            .find_map(|(m, c)| m.iter().position(|&e| e == 1).map(|j| (j, c.clone())))
            .expect("nonzero linear form");
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some((m, c)) = r.terms.iter().rev().find(|(m, _)| m[j] > 0).map(|(m, c)| (m.clone(), c.clone())) {
            let mut mq = m;
            mq[j] -= 1;
            let t = Poly::monomial(mq, c / &cj);
            r = r.sub(&h.mul(&t));
            q = q.add(&t);
        }
        (q, r)
    }

    pub fn divides_by_linear(&self, h: &Poly) -> bool {
        self.div_linear(h).1.is_zero()
    }

    /// Coefficient vector in the monomial basis of degree `d`.
    pub fn to_vec(&self, basis: &MonoBasis) -> Vec<Q> {
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index(m).expect("homogeneous of the basis degree");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vec(basis: &MonoBasis, v: &[Q]) -> Poly {
        Poly {
            terms: basis
                .monos
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sparse text: space separated `coeff:e1,e2,...` terms; empty for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<String> = m.iter().map(u32::to_string).collect();
                format!("{}:{}", rational::format_q(c), e.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        let mut p = Poly::zero();
        if s.trim() == "0" {
            return Ok(p);
        }
        for term in s.split_whitespace() {
            let (c, m) = term
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("polynomial term {term:?} lacks ':'")))?;
            let mono: Mono = if m.is_empty() {
                Vec::new()
            } else {
                m.split(',')
                    .map(|e| e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {term:?}"))))
                    .collect::<Result<_>>()?
            };
            if mono.len() != nvars {
                return Err(Error::Parse(format!("term {term:?} expects {nvars} exponents")));
            }
            p = p.add(&Poly::monomial(mono, rational::parse_q(c)?));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.to_text())
        }
    }
}

/// Monomials of a fixed degree in a fixed number of variables.
#[derive(Debug)]
pub struct MonoBasis {
    pub nvars: usize,
    pub degree: usize,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl MonoBasis {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    pub fn index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn compositions(n: usize, d: u32, prefix: &mut Mono, out: &mut Vec<Mono>) {
    if prefix.len() + 1 == n {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e);
        compositions(n, d - e, prefix, out);
        prefix.pop();
    }
}

/// Shared monomial basis of degree `d` in `nvars` variables.
pub fn monomials(nvars: usize, d: usize) -> Arc<MonoBasis> {
    type Cache = RwLock<HashMap<(usize, usize), Arc<MonoBasis>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().unwrap().get(&(nvars, d)) {
        return b.clone();
    }
    let mut monos = Vec::new();
    if nvars == 0 {
        if d == 0 {
            monos.push(Vec::new());
        }
    } else {
        compositions(nvars, d as u32, &mut Vec::new(), &mut monos);
    }
    let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let b = Arc::new(MonoBasis { nvars, degree: d, monos, index });
    cache.write().unwrap().insert((nvars, d), b.clone());
    b
}

/// `dim S_d`, the number of monomials of degree `d`.
pub fn dim(nvars: usize, d: usize) -> usize {
    monomials(nvars, d).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn basis_sizes() {
        assert_eq!(dim(2, 3), 4);
        assert_eq!(dim(3, 2), 6);
        assert_eq!(dim(1, 5), 1);
        assert_eq!(dim(3, 0), 1);
    }

    #[test]
    fn arithmetic_and_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let h = x.add(&y.scale(&q(2)));
        let p = h.mul(&x.sub(&y)).mul(&y);
        let (quo, rem) = p.div_linear(&h);
        assert!(rem.is_zero());
        assert_eq!(quo, x.sub(&y).mul(&y));
        assert!(!x.mul(&y).divides_by_linear(&h));
        assert_eq!(p.degree(), Some(3));
        assert!(p.is_homogeneous_of(3));
        assert_eq!(h.eval(&[q(1), q(3)]), q(7));
    }

    #[test]
    fn text_and_vector_round_trip() {
        let p = Poly::var(2, 0).mul(&Poly::var(2, 1)).scale(&q(-3)).add(&Poly::var(2, 1).mul(&Poly::var(2, 1)));
        let t = p.to_text();
        assert_eq!(Poly::parse(&t, 2).unwrap(), p);
        assert_eq!(Poly::parse("", 2).unwrap(), Poly::zero());
        assert_eq!(Poly::zero().to_text(), "0");
        assert_eq!(Poly::parse("0", 2).unwrap(), Poly::zero());
        let b = monomials(2, 2);
        assert_eq!(Poly::from_vec(&b, &p.to_vec(&b)), p);
        assert!(Poly::parse("1:1", 2).is_err());
    }
}
