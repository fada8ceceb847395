//! Dense exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::modp;
use crate::par;
use crate::rational::Q;

pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

/// Rows with at least this many entries are eliminated in parallel.
const PAR_THRESHOLD: usize = 64;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Q::zero(); cols];
            for k in 0..inner {
                if row[k].is_zero() {
                    continue;
                }
                for (o, bkj) in out.iter_mut().zip(&b[k]) {
                    if !bkj.is_zero() {
                        *o += &row[k] * bkj;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vector {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .fold(Q::zero(), |acc, t| acc + t)
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(Q::zero(), |acc, t| acc + t)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        let eliminate = |row: &mut Vec<Q>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        let (above, rest) = m.split_at_mut(r);
        let below = &mut rest[1..];
        if cols >= PAR_THRESHOLD {
            par::for_each_mut(above, eliminate);
            par::for_each_mut(below, eliminate);
        } else {
            above.iter_mut().for_each(eliminate);
            below.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut m = m.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, if one exists.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vector> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &Matrix) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = Q::one() / &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Incrementally maintained reduced echelon basis of a subspace.
///
/// When built with tracking, every stored row remembers its expression in
/// terms of the inserted vectors, so [`Echelon::coordinates`] can express a
/// member of the span in the original spanning set.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vector, Option<Vector>)>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Self::default() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &[Q]) -> (Vector, Vector) {
        let mut v = v.to_vec();
        let mut combo = vec![Q::zero(); self.inserted];
        for (p, row, t) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            if let Some(t) = t {
                for (c, tt) in combo.iter_mut().zip(t) {
                    if !tt.is_zero() {
                        *c += &f * tt;
                    }
                }
            }
        }
        (v, combo)
    }

    /// Residual of `v` after reduction against the stored basis.
    pub fn reduce(&self, v: &[Q]) -> Vector {
        let mut v = v.to_vec();
        for (p, row, _) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        if self.track {
            for (_, _, t) in self.rows.iter_mut() {
                t.as_mut().unwrap().push(Q::zero());
            }
        }
        let (mut r, combo) = if self.track {
            self.reduce_tracked(v)
        } else {
            (self.reduce(v), Vec::new())
        };
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &r[p];
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // Express the new row as (v - sum f_k row_k) / pivot in inserted vectors.
        let track = if self.track {
            let mut t: Vector = combo.iter().map(|c| -c.clone()).collect();
            t.resize(self.inserted, Q::zero());
            t[idx] += Q::one();
            Some(t.into_iter().map(|x| x * &inv).collect::<Vector>())
        } else {
            None
        };
        // Keep the basis fully reduced.
        for (_, row, t) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            if let (Some(t), Some(nt)) = (t.as_mut(), track.as_ref()) {
                for (x, y) in t.iter_mut().zip(nt) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r, track));
        true
    }

    /// Coefficients `c` with `v = sum c_i inserted_i`, if `v` is in the span.
    /// Requires a tracking echelon.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vector> {
        assert!(self.track, "coordinates need a tracking echelon");
        let (r, combo) = self.reduce_tracked(v);
        is_zero_vec(&r).then_some(combo)
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.rows.iter().map(|(_, r, _)| r)
    }
}

/// Homogeneous linear system with sparse equations.
///
/// The solution space is found modulo a large prime, lifted by rational
/// reconstruction and verified exactly against every equation. Exact
/// elimination is used when the lift fails. A verified lift is exact:
/// its dimension is at least the rational nullity.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    cols: usize,
    equations: Vec<Vec<(usize, Q)>>,
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem { cols, equations: Vec::new() }
    }

    /// Adds the equation `sum row[c] x_c = 0`.
    pub fn add_equation(&mut self, row: impl IntoIterator<Item = (usize, Q)>) {
        let mut r: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, q) in row {
            *r.entry(c).or_insert_with(Q::zero) += q;
        }
        r.retain(|_, q| !q.is_zero());
        if !r.is_empty() {
            self.equations.push(r.into_iter().collect());
        }
    }

    fn satisfies(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| {
            let mut acc = Q::zero();
            for (c, v) in e {
                if !x[*c].is_zero() {
                    acc += v * &x[*c];
                }
            }
            acc.is_zero()
        })
    }

    fn nullspace_modular(&self) -> Option<Vec<Vector>> {
        let n = self.cols;
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut pivot_of = vec![usize::MAX; n];
        for e in &self.equations {
            if pivots.len() == n {
                break;
            }
            let mut row = vec![0u64; n];
            for (c, v) in e {
                row[*c] = modp::from_q(v)?;
            }
            for (p, prow) in &pivots {
                let f = row[*p];
                if f != 0 {
                    for (x, y) in row.iter_mut().zip(prow) {
                        if *y != 0 {
                            *x = modp::sub(*x, modp::mul(f, *y));
                        }
                    }
                }
            }
            let Some(p) = row.iter().position(|&x| x != 0) else { continue };
            let inv = modp::inv(row[p]);
            for x in row.iter_mut() {
                *x = modp::mul(*x, inv);
            }
            for (_, prow) in pivots.iter_mut() {
                let f = prow[p];
                if f != 0 {
                    for (x, y) in prow.iter_mut().zip(&row) {
                        if *y != 0 {
                            *x = modp::sub(*x, modp::mul(f, *y));
                        }
                    }
                }
            }
            pivot_of[p] = pivots.len();
            pivots.push((p, row));
        }
        let free: Vec<usize> = (0..n).filter(|&c| pivot_of[c] == usize::MAX).collect();
        let lifted: Vec<Option<Vector>> = par::map(&free, |&f| {
            let mut x = vec![Q::zero(); n];
            x[f] = Q::one();
            for (p, prow) in &pivots {
                if prow[f] != 0 {
                    x[*p] = -modp::reconstruct(prow[f])?;
                }
            }
            self.satisfies(&x).then_some(x)
        });
        lifted.into_iter().collect()
    }

    fn nullspace_exact(&self) -> Vec<Vector> {
        let mut rows: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for e in &self.equations {
            let mut r: BTreeMap<usize, Q> = e.iter().cloned().collect();
            while let Some((&c, lead)) = r.iter().next() {
                let Some(p) = rows.get(&c) else {
                    let inv = Q::one() / lead;
                    for v in r.values_mut() {
                        *v *= &inv;
                    }
                    rows.insert(c, r);
                    break;
                };
                let f = lead.clone();
                for (k, v) in p {
                    let e = r.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !rows.contains_key(c)).collect();
        par::map(&free, |&f| {
            let mut x = vec![Q::zero(); self.cols];
            x[f] = Q::one();
            for (&p, row) in rows.iter().rev() {
                let mut acc = Q::zero();
                for (c, v) in row.range(p + 1..) {
                    if !x[*c].is_zero() {
                        acc -= v * &x[*c];
                    }
                }
                x[p] = acc;
            }
            x
        })
    }

    /// Basis of the solution space.
    pub fn nullspace(&self) -> Vec<Vector> {
        self.nullspace_modular().unwrap_or_else(|| self.nullspace_exact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(det(&a), q(3));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], frac(2, 3));
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[2, -2], &[-2, 2]])).is_none());
        assert_eq!(det(&m(&[&[2, -2], &[-2, 2]])), q(0));
    }

    #[test]
    fn nullspace_of_affine_a1() {
        let ns = nullspace(&m(&[&[2, -2], &[-2, 2]]), 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(1), q(1)]);
    }

    #[test]
    fn tracked_coordinates() {
        let mut e = Echelon::tracking();
        assert!(e.insert(&[q(1), q(1), q(0)]));
        assert!(e.insert(&[q(0), q(1), q(1)]));
        assert!(!e.insert(&[q(1), q(2), q(1)]));
        let c = e.coordinates(&[q(2), q(3), q(1)]).unwrap();
        assert_eq!(c[0], q(2));
        assert_eq!(c[1], q(1));
        assert!(e.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(solve(&a, &[q(1), q(2)]).is_none());
        assert_eq!(solve(&a, &[q(2), q(2)]).unwrap(), vec![q(2), q(0)]);
    }

    #[test]
    fn sparse_system_matches_dense() {
        let m: Matrix = vec![
            vec![q(1), q(2), q(0), q(-1)],
            vec![q(2), q(4), q(1), q(0)],
            vec![q(3), q(6), q(1), q(-1)],
        ];
        let mut sys = SparseSystem::new(4);
        for row in &m {
            sys.add_equation(row.iter().cloned().enumerate());
        }
        for null in [sys.nullspace(), sys.nullspace_exact()] {
            assert_eq!(null.len(), 4 - rank(&m));
            for v in &null {
                assert!(is_zero_vec(&mat_vec(&m, v)));
            }
        }
    }
}
