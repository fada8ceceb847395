//! Cartan data, real roots, the invariant form and the partial order on
//! weights.
//!
//! Weights are stored in fundamental-weight coordinates. For affine Cartan
//! matrices an extra coordinate carries the coefficient of the null root
//! `delta`; the form is completed by declaring the fundamental weight of the
//! affine node isotropic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanKind {
    Finite,
    Affine,
    Indefinite,
}

/// A symmetrizable generalized Cartan matrix together with its symmetrizer.
///
/// Convention: `matrix[i][j] = <alpha_j, alpha_i^vee>`, so that
/// `(alpha_i, alpha_j) = d_i * a_ij` and `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    pub symmetrizer: Vec<Q>,
    pub kind: CartanKind,
}

#[derive(Serialize, Deserialize)]
struct CartanJson {
    rank: usize,
    matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetrizer: Option<Vec<String>>,
}

impl CartanDatum {
    /// Validates a GCM and computes a symmetrizer normalised so that the
    /// shortest simple root in each component has `d_i = 1`.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        validate_gcm(&matrix)?;
        let d = find_symmetrizer(&matrix)?;
        Self::with_symmetrizer(matrix, d)
    }

    pub fn with_symmetrizer(matrix: Vec<Vec<i64>>, symmetrizer: Vec<Q>) -> Result<Self> {
        validate_gcm(&matrix)?;
        let n = matrix.len();
        if symmetrizer.len() != n || symmetrizer.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidCartan("symmetrizer must be n positive rationals".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if &symmetrizer[i] * q(matrix[i][j]) != &symmetrizer[j] * q(matrix[j][i]) {
                    return Err(Error::InvalidCartan(format!(
                        "D*A is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let kind = classify(&matrix);
        Ok(CartanDatum { rank: n, matrix, symmetrizer, kind })
    }

    /// Cartan matrix of a finite type given by its Dynkin letter and rank,
    /// e.g. `("A", 2)`, `("B", 2)`, `("G", 2)`.
    pub fn finite(letter: &str, n: usize) -> Result<Self> {
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
            if i + 1 < n {
                row[i + 1] = -1;
            }
            if i > 0 {
                row[i - 1] = -1;
            }
        }
        match (letter, n) {
            ("A", n) if n >= 1 => {}
            ("B", n) if n >= 2 => a[n - 1][n - 2] = -2,
            ("C", n) if n >= 2 => a[n - 2][n - 1] = -2,
            ("D", n) if n >= 4 => {
                a[n - 2][n - 1] = 0;
                a[n - 1][n - 2] = 0;
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            ("G", 2) => a[1][0] = -3,
            _ => return Err(Error::InvalidCartan(format!("unknown type {letter}{n}"))),
        }
        Self::new(a)
    }

    /// Untwisted affine `A_1^(1)`.
    pub fn affine_a1() -> Self {
        Self::new(vec![vec![2, -2], vec![-2, 2]]).expect("affine A1 is a GCM")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: CartanJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.matrix.len() != j.rank {
            return Err(Error::InvalidCartan("rank does not match matrix size".into()));
        }
        match j.symmetrizer {
            Some(d) => {
                let d = d.iter().map(|x| rational::parse_q(x)).collect::<Result<Vec<_>>>()?;
                Self::with_symmetrizer(j.matrix, d)
            }
            None => Self::new(j.matrix),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CartanJson {
            rank: self.rank,
            matrix: self.matrix.clone(),
            symmetrizer: Some(self.symmetrizer.iter().map(rational::format_q).collect()),
        })
        .expect("serializable")
    }

    /// The same matrix with every `d_i` multiplied by `factor`.
    pub fn rescaled(&self, factor: &Q) -> Result<Self> {
        Self::with_symmetrizer(
            self.matrix.clone(),
            self.symmetrizer.iter().map(|d| d * factor).collect(),
        )
    }

    pub fn symmetrized(&self) -> Matrix {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| &self.symmetrizer[i] * q(self.matrix[i][j])).collect())
            .collect()
    }

    fn as_q(&self) -> Matrix {
        self.matrix.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }
}

fn validate_gcm(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidCartan("rank must be positive".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i != j && row[j] > 0 {
                return Err(Error::InvalidCartan(format!("positive off-diagonal entry ({i},{j})")));
            }
            if (row[j] == 0) != (a[j][i] == 0) {
                return Err(Error::InvalidCartan(format!("a_ij = 0 but a_ji != 0 at ({i},{j})")));
            }
        }
    }
    Ok(())
}

fn find_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<Q>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    Some(existing) if *existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        let min = component.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &component {
            d[i] = Some(d[i].take().unwrap() / &min);
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

fn principal_minor(a: &[Vec<i64>], idx: &[usize]) -> Q {
    let m: Matrix = idx.iter().map(|&i| idx.iter().map(|&j| q(a[i][j])).collect()).collect();
    linalg::det(&m)
}

fn is_indecomposable(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if a[i][j] != 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn classify(a: &[Vec<i64>]) -> CartanKind {
    let n = a.len();
    let proper_positive = (1u64..(1 << n) - 1).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        principal_minor(a, &idx).is_positive()
    });
    let full = principal_minor(a, &(0..n).collect::<Vec<_>>());
    if proper_positive && full.is_positive() {
        CartanKind::Finite
    } else if proper_positive && full.is_zero() && is_indecomposable(a) {
        CartanKind::Affine
    } else {
        CartanKind::Indefinite
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub simple_coords: Vec<i64>,
    pub sign: Sign,
    pub is_real: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn negate(&self) -> Root {
        Root {
            simple_coords: self.simple_coords.iter().map(|x| -x).collect(),
            sign: match self.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            },
            is_real: self.is_real,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    fn from_coords(coords: Vec<i64>, is_real: bool) -> Root {
        let sign = if coords.iter().all(|&x| x >= 0) { Sign::Positive } else { Sign::Negative };
        Root { simple_coords: coords, sign, is_real }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simple_coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of the weight space: fundamental-weight coordinates plus the
/// coefficient of `delta` (always zero outside affine type).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "rational::serde_qvec")]
    pub coords: Vec<Q>,
    #[serde(with = "rational::serde_q")]
    pub delta: Q,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords, delta: Q::zero() }
    }

    pub fn with_delta(coords: Vec<Q>, delta: Q) -> Self {
        Weight { coords, delta }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Q::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight::new(coords.iter().map(|&x| q(x)).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            delta: &self.delta + &other.delta,
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
            delta: &self.delta - &other.delta,
        }
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * c).collect(), delta: &self.delta * c }
    }

    pub fn neg(&self) -> Weight {
        self.scale(&-Q::one())
    }

    /// Parses `"p/q,p/q,...[;delta=p/q]"`.
    pub fn parse(s: &str) -> Result<Weight> {
        let (coords, delta) = match s.split_once(';') {
            Some((c, d)) => {
                let d = d
                    .trim()
                    .strip_prefix("delta=")
                    .ok_or_else(|| Error::Parse(format!("expected delta=p/q, got {d:?}")))?;
                (c, rational::parse_q(d)?)
            }
            None => (s, Q::zero()),
        };
        let coords = coords
            .split(',')
            .map(rational::parse_q)
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords, delta })
    }

    /// Coordinates in the vector-space model: fundamental coordinates, then
    /// `delta` when `affine`.
    pub fn vector(&self, affine: bool) -> Vec<Q> {
        let mut v = self.coords.clone();
        if affine {
            v.push(self.delta.clone());
        }
        v
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational::format_q).collect();
        write!(f, "{}", parts.join(","))?;
        if !self.delta.is_zero() {
            write!(f, ";delta={}", rational::format_q(&self.delta))?;
        }
        Ok(())
    }
}

/// Real roots up to a height bound together with the data needed to pair
/// weights and roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanDatum,
    pub height_bound: usize,
    /// Positive real roots, sorted by height then coordinates.
    positive_real: Vec<Root>,
    /// Positive imaginary roots `n delta` within the bound (affine only).
    positive_imaginary: Vec<Root>,
    /// Gram matrix of the form in model coordinates.
    gram: Matrix,
    /// Columns: model coordinates of the simple roots, then of the isotropic
    /// fundamental weight (affine).
    basis: Matrix,
    basis_inv: Matrix,
    /// Null root in simple coordinates (affine only).
    null_root: Option<Vec<i64>>,
}

impl RootSystem {
    pub fn new(cartan: CartanDatum, height_bound: usize) -> Result<Self> {
        if height_bound == 0 {
            return Err(Error::Precondition("height bound must be at least 1".into()));
        }
        let n = cartan.rank;
        let affine = cartan.kind == CartanKind::Affine;
        let a = cartan.as_q();
        if !affine && linalg::det(&a).is_zero() {
            return Err(Error::Unsupported(
                "singular indefinite Cartan matrices have no weight-space model here".into(),
            ));
        }
        let null_root = if affine {
            let ns = linalg::nullspace(&a, n);
            let v = &ns[0];
            // primitive positive integer vector
            let lcm = v.iter().fold(num_bigint::BigInt::one(), |l, x| {
                num_integer::Integer::lcm(&l, x.denom())
            });
            let ints: Vec<num_bigint::BigInt> =
                v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints
                .iter()
                .fold(num_bigint::BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            let mut out: Vec<i64> = ints
                .iter()
                .map(|x| num_traits::ToPrimitive::to_i64(&(x / &g)).expect("small null root"))
                .collect();
            if out[0] < 0 {
                out.iter_mut().for_each(|x| *x = -*x);
            }
            Some(out)
        } else {
            None
        };
        let dim = if affine { n + 1 } else { n };
        // Model coordinates of simple roots: alpha_j = sum_i a_ij omega_i (+ delta / a_p).
        let affine_node = null_root
            .as_ref()
            .map(|nr| (0..n).min_by_key(|&i| (nr[i], i)).unwrap());
        let mut basis = linalg::zeros(dim, dim);
        for j in 0..n {
            for i in 0..n {
                basis[i][j] = q(cartan.matrix[i][j]);
            }
        }
        let mut gram_b = linalg::zeros(dim, dim);
        let dsym = cartan.symmetrized();
        for i in 0..n {
            for j in 0..n {
                gram_b[i][j] = dsym[i][j].clone();
            }
        }
        if let (Some(nr), Some(p)) = (&null_root, affine_node) {
            basis[n][p] = Q::one() / q(nr[p]);
            basis[p][n] = Q::one();
            gram_b[p][n] = cartan.symmetrizer[p].clone();
            gram_b[n][p] = cartan.symmetrizer[p].clone();
        }
        let basis_inv = linalg::inverse(&basis)
            .ok_or_else(|| Error::InvalidCartan("degenerate realization".into()))?;
        let gram = linalg::mat_mul(&linalg::transpose(&basis_inv), &linalg::mat_mul(&gram_b, &basis_inv));

        let positive_real = enumerate_real_roots(&cartan.matrix, height_bound);
        let positive_imaginary = match &null_root {
            Some(nr) => {
                let ht: i64 = nr.iter().sum();
                (1..)
                    .take_while(|k| k * ht <= height_bound as i64)
                    .map(|k| Root {
                        simple_coords: nr.iter().map(|x| x * k).collect(),
                        sign: Sign::Positive,
                        is_real: false,
                    })
                    .collect()
            }
            None => Vec::new(),
        };
        Ok(RootSystem {
            cartan,
            height_bound,
            positive_real,
            positive_imaginary,
            gram,
            basis,
            basis_inv,
            null_root,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn is_affine(&self) -> bool {
        self.cartan.kind == CartanKind::Affine
    }

    /// Number of polynomial variables of the weight-space model.
    pub fn model_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn positive_real_roots(&self) -> &[Root] {
        &self.positive_real
    }

    pub fn positive_imaginary_roots(&self) -> &[Root] {
        &self.positive_imaginary
    }

    /// All enumerated roots, positive and negative, real and imaginary.
    pub fn roots(&self) -> Vec<Root> {
        let pos = self.positive_real.iter().chain(&self.positive_imaginary);
        pos.clone().cloned().chain(pos.map(Root::negate)).collect()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Root { simple_coords: c, sign: Sign::Positive, is_real: true }
    }

    pub fn null_root(&self) -> Option<Root> {
        self.null_root.as_ref().map(|nr| Root {
            simple_coords: nr.clone(),
            sign: Sign::Positive,
            is_real: false,
        })
    }

    fn check_weight(&self, x: &Weight) -> Result<()> {
        if x.coords.len() != self.rank() || (!self.is_affine() && !x.delta.is_zero()) {
            return Err(Error::MixedCartan);
        }
        Ok(())
    }

    fn check_root(&self, r: &Root) -> Result<()> {
        if r.simple_coords.len() != self.rank() {
            return Err(Error::MixedCartan);
        }
        Ok(())
    }

    /// The root as a weight.
    pub fn root_weight(&self, r: &Root) -> Weight {
        let n = self.rank();
        let mut v = vec![Q::zero(); self.model_dim()];
        for (j, &c) in r.simple_coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                *vi += &self.basis[i][j] * q(c);
            }
        }
        let delta = if self.is_affine() { v[n].clone() } else { Q::zero() };
        v.truncate(n);
        Weight { coords: v, delta }
    }

    pub fn form(&self, x: &Weight, y: &Weight) -> Result<Q> {
        self.check_weight(x)?;
        self.check_weight(y)?;
        let a = self.is_affine();
        let xv = x.vector(a);
        Ok(linalg::dot(&xv, &linalg::mat_vec(&self.gram, &y.vector(a))))
    }

    /// Coefficients `c` with `(beta, mu) = sum_i c_i mu_i` in model coordinates.
    pub fn linear_form(&self, beta: &Root) -> Vec<Q> {
        linalg::mat_vec(&self.gram, &self.root_weight(beta).vector(self.is_affine()))
    }

    /// `(beta, gamma)` straight from the symmetrized Cartan matrix.
    pub fn form_roots(&self, b: &Root, c: &Root) -> Result<Q> {
        self.check_root(b)?;
        self.check_root(c)?;
        let ds = self.cartan.symmetrized();
        let mut s = Q::zero();
        for (i, &bi) in b.simple_coords.iter().enumerate() {
            for (j, &cj) in c.simple_coords.iter().enumerate() {
                if bi != 0 && cj != 0 {
                    s += &ds[i][j] * q(bi * cj);
                }
            }
        }
        Ok(s)
    }

    pub fn form_weight_root(&self, x: &Weight, r: &Root) -> Result<Q> {
        self.check_root(r)?;
        self.form(x, &self.root_weight(r))
    }

    /// `<x, beta^vee> = 2 (x, beta) / (beta, beta)`.
    pub fn coroot_pairing(&self, x: &Weight, r: &Root) -> Result<Q> {
        if !r.is_real {
            return Err(Error::ImaginaryRoot);
        }
        let bb = self.form_roots(r, r)?;
        Ok(q(2) * self.form_weight_root(x, r)? / bb)
    }

    /// Integer pairing `<gamma, beta^vee>` of two roots.
    pub fn cartan_pairing(&self, gamma: &Root, beta: &Root) -> Result<i64> {
        if !beta.is_real {
            return Err(Error::ImaginaryRoot);
        }
        let v = q(2) * self.form_roots(gamma, beta)? / self.form_roots(beta, beta)?;
        rational::to_i64(&v).ok_or_else(|| Error::InvalidCartan("non-integral root pairing".into()))
    }

    pub fn rho(&self) -> Weight {
        Weight::new(vec![Q::one(); self.rank()])
    }

    /// `s_beta(x) = x - <x, beta^vee> beta`.
    pub fn reflect(&self, beta: &Root, x: &Weight) -> Result<Weight> {
        let c = self.coroot_pairing(x, beta)?;
        Ok(x.sub(&self.root_weight(beta).scale(&c)))
    }

    /// Reflection of a root along a real root, in simple coordinates.
    pub fn reflect_root(&self, beta: &Root, gamma: &Root) -> Result<Root> {
        let c = self.cartan_pairing(gamma, beta)?;
        let coords: Vec<i64> = gamma
            .simple_coords
            .iter()
            .zip(&beta.simple_coords)
            .map(|(g, b)| g - c * b)
            .collect();
        Ok(Root::from_coords(coords, gamma.is_real))
    }

    /// Shifted action `s_beta . x = s_beta(x + rho) - rho`.
    pub fn dot_reflect(&self, beta: &Root, x: &Weight) -> Result<Weight> {
        let rho = self.rho();
        Ok(self.reflect(beta, &x.add(&rho))?.sub(&rho))
    }

    /// Shifted action of a word in the simple reflections (letters applied
    /// right to left).
    pub fn dot_simple(&self, word: &[usize], x: &Weight) -> Result<Weight> {
        let mut w = x.clone();
        for &i in word.iter().rev() {
            if i >= self.rank() {
                return Err(Error::Precondition(format!("letter {i} out of range")));
            }
            w = self.dot_reflect(&self.simple_root(i), &w)?;
        }
        Ok(w)
    }

    /// `(x + rho, delta)`; `None` outside affine type.
    pub fn shifted_level(&self, x: &Weight) -> Result<Option<Q>> {
        match self.null_root() {
            Some(d) => Ok(Some(self.form_weight_root(&x.add(&self.rho()), &d)?)),
            None => Ok(None),
        }
    }

    /// Simple-root coordinates of `x` if `x` lies in the root lattice span.
    pub fn simple_coordinates(&self, x: &Weight) -> Result<Option<Vec<Q>>> {
        self.check_weight(x)?;
        let c = linalg::mat_vec(&self.basis_inv, &x.vector(self.is_affine()));
        let n = self.rank();
        if c[n..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        Ok(Some(c[..n].to_vec()))
    }

    /// `lhs <= rhs` iff `rhs - lhs` is a non-negative integer combination of
    /// simple roots.
    pub fn leq(&self, lhs: &Weight, rhs: &Weight) -> Result<bool> {
        Ok(match self.simple_coordinates(&rhs.sub(lhs))? {
            Some(c) => c.iter().all(rational::is_nonneg_integer),
            None => false,
        })
    }
}

/// Positive real roots of height at most `bound`, by closure of the simple
/// roots under the simple reflections.
fn enumerate_real_roots(a: &[Vec<i64>], bound: usize) -> Vec<Root> {
    let n = a.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        seen.insert(c.clone());
        queue.push_back(c);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // <beta, alpha_i^vee> = sum_j a_ij beta_j
            let p: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
            let mut g = beta.clone();
            g[i] -= p;
            if g.iter().any(|&x| x < 0) || g.iter().sum::<i64>() > bound as i64 {
                continue;
            }
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().map(|c| Root::from_coords(c, true)).collect();
    roots.sort_by(|x, y| (x.height(), &x.simple_coords).cmp(&(y.height(), &y.simple_coords)));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn a2() -> RootSystem {
        RootSystem::new(CartanDatum::finite("A", 2).unwrap(), 10).unwrap()
    }

    fn aff() -> RootSystem {
        RootSystem::new(CartanDatum::affine_a1(), 5).unwrap()
    }

    #[test]
    fn kinds() {
        assert_eq!(CartanDatum::finite("A", 2).unwrap().kind, CartanKind::Finite);
        assert_eq!(CartanDatum::finite("G", 2).unwrap().kind, CartanKind::Finite);
        assert_eq!(CartanDatum::affine_a1().kind, CartanKind::Affine);
        let hyp = CartanDatum::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(hyp.kind, CartanKind::Indefinite);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CartanDatum::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanDatum::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanDatum::new(vec![vec![3]]).is_err());
        // a 3-cycle with inconsistent products is not symmetrizable
        let m = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert!(CartanDatum::new(m).is_err());
    }

    #[test]
    fn symmetrizer_normalized() {
        let b2 = CartanDatum::finite("B", 2).unwrap();
        assert_eq!(b2.symmetrizer, vec![q(2), q(1)]);
        let s = b2.symmetrized();
        assert_eq!(s[0][1], s[1][0]);
    }

    #[test]
    fn a1_and_a2_roots() {
        let a1 = RootSystem::new(CartanDatum::finite("A", 1).unwrap(), 3).unwrap();
        assert_eq!(a1.positive_real_roots().len(), 1);
        let coords: Vec<_> = a2().positive_real_roots().iter().map(|r| r.simple_coords.clone()).collect();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn affine_a1_roots() {
        let rs = aff();
        let mut coords: Vec<_> =
            rs.positive_real_roots().iter().map(|r| r.simple_coords.clone()).collect();
        coords.sort();
        // alpha1 + n delta and alpha2 + n delta, height <= 5
        let mut expected = vec![];
        for n in 0..=2 {
            expected.push(vec![1 + n, n]);
            expected.push(vec![n, 1 + n]);
        }
        expected.sort();
        assert_eq!(coords, expected);
        let im: Vec<_> = rs.positive_imaginary_roots().iter().map(|r| r.simple_coords.clone()).collect();
        assert_eq!(im, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn form_values() {
        let rs = a2();
        let (a1, a2r) = (rs.simple_root(0), rs.simple_root(1));
        assert_eq!(rs.form_roots(&a1, &a1).unwrap(), q(2));
        assert_eq!(rs.form_roots(&a1, &a2r).unwrap(), q(-1));
        let w1 = rs.root_weight(&a1);
        assert_eq!(rs.form(&w1, &rs.root_weight(&a2r)).unwrap(), q(-1));
        let af = aff();
        let d = af.root_weight(&af.null_root().unwrap());
        assert_eq!(af.form(&d, &d).unwrap(), q(0));
        assert_eq!(af.form_weight_root(&af.rho(), &af.null_root().unwrap()).unwrap(), q(2));
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for rs in [a2(), aff(), RootSystem::new(CartanDatum::finite("B", 2).unwrap(), 5).unwrap()] {
            let n = rs.rank();
            for i in 0..n {
                let mut c = vec![Q::zero(); n];
                c[i] = Q::one();
                let omega = Weight::new(c);
                for j in 0..n {
                    let p = rs.coroot_pairing(&omega, &rs.simple_root(j)).unwrap();
                    assert_eq!(p, if i == j { q(1) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn reflections() {
        let rs = a2();
        let a1 = RootSystem::new(CartanDatum::finite("A", 1).unwrap(), 3).unwrap();
        let alpha = a1.simple_root(0);
        assert_eq!(
            a1.reflect(&alpha, &a1.rho()).unwrap(),
            a1.rho().sub(&a1.root_weight(&alpha))
        );
        let theta = Root { simple_coords: vec![1, 1], sign: Sign::Positive, is_real: true };
        // (rho, theta^vee) = 2
        let r = rs.reflect(&theta, &rs.rho()).unwrap();
        assert_eq!(r, rs.rho().sub(&rs.root_weight(&theta).scale(&q(2))));
        let x = Weight::new(vec![frac(1, 3), q(-2)]);
        assert_eq!(rs.reflect(&theta, &rs.reflect(&theta, &x).unwrap()).unwrap(), x);
        let im = aff().null_root().unwrap();
        assert_eq!(aff().reflect(&im, &aff().rho()), Err(Error::ImaginaryRoot));
    }

    #[test]
    fn order_examples() {
        let rs = a2();
        let l = Weight::new(vec![frac(1, 2), q(3)]);
        assert!(rs.leq(&l, &l).unwrap());
        let a1 = RootSystem::new(CartanDatum::finite("A", 1).unwrap(), 3).unwrap();
        let minus_alpha = a1.root_weight(&a1.simple_root(0)).neg();
        assert!(a1.leq(&minus_alpha, &Weight::zero(1)).unwrap());
        assert!(!a1.leq(&Weight::zero(1), &minus_alpha).unwrap());
        let diff = rs.root_weight(&rs.simple_root(0)).sub(&rs.root_weight(&rs.simple_root(1)));
        assert!(!rs.leq(&Weight::zero(2), &diff).unwrap());
        assert!(!rs.leq(&diff, &Weight::zero(2)).unwrap());
    }

    #[test]
    fn mixed_cartan_rejected() {
        let rs = a2();
        assert_eq!(rs.form(&Weight::zero(3), &Weight::zero(2)), Err(Error::MixedCartan));
    }

    #[test]
    fn weight_parse() {
        let w = Weight::parse("0,-1/2").unwrap();
        assert_eq!(w.coords, vec![q(0), frac(-1, 2)]);
        let w = Weight::parse("1,0;delta=3/2").unwrap();
        assert_eq!(w.delta, frac(3, 2));
        assert_eq!(Weight::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn cartan_json_roundtrip() {
        let c = CartanDatum::finite("B", 3).unwrap();
        let s = c.to_json_value().to_string();
        assert_eq!(CartanDatum::from_json(&s).unwrap(), c);
        let j = r#"{"rank":2,"matrix":[[2,-1],[-1,2]],"symmetrizer":["1/2","1/2"]}"#;
        assert_eq!(CartanDatum::from_json(j).unwrap().symmetrizer, vec![frac(1, 2), frac(1, 2)]);
    }
}
