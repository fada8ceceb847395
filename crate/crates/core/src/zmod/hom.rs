//! Graded homomorphisms between lattices, as matrices over S in the
//! generator bases: `phi(b_i) = sum_j P_ij c_j`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseSystem};
use crate::rational::Q;

use super::center::separating_elements;
use super::lattice::{Span, ZLattice};
use super::poly::{monomials, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMap {
    /// Graded degree.
    pub degree: i64,
    /// Rows indexed by source generators, columns by target generators.
    pub matrix: Vec<Vec<Poly>>,
}

impl HomMap {
    pub fn identity(m: &ZLattice) -> HomMap {
        HomMap::scalar(m, &Poly::one(m.nvars()), 0)
    }

    /// Multiplication by a homogeneous polynomial of graded degree `degree`.
    pub fn scalar(m: &ZLattice, p: &Poly, degree: i64) -> HomMap {
        let r = m.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| if i == j { p.clone() } else { Poly::zero() }).collect()).collect();
        HomMap { degree, matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(Poly::is_zero))
    }

    pub fn add(&self, o: &HomMap) -> HomMap {
        let matrix = self
            .matrix
            .iter()
            .zip(&o.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        HomMap { degree: self.degree, matrix }
    }

    pub fn scale(&self, c: &Q) -> HomMap {
        HomMap { degree: self.degree, matrix: self.matrix.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect() }
    }

    /// Image of the source generator `i` as a tuple over the target slots.
    pub fn apply(&self, i: usize, target: &ZLattice) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); target.slots.len()];
        for (j, p) in self.matrix[i].iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&target.gens[j].entries) {
                *o = o.add(&p.mul(c));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Matrix {
        self.matrix.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect()
    }
}

/// `g o f` for `f: M -> N`, `g: N -> K`.
pub fn compose(f: &HomMap, g: &HomMap) -> HomMap {
    let r = f.matrix.len();
    let u = g.matrix.first().map_or(0, Vec::len);
    let mut matrix = vec![vec![Poly::zero(); u]; r];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, fij) in f.matrix[i].iter().enumerate() {
            if fij.is_zero() {
                continue;
            }
            for (m, x) in row.iter_mut().enumerate() {
                if !g.matrix[j][m].is_zero() {
                    *x = x.add(&fij.mul(&g.matrix[j][m]));
                }
            }
        }
    }
    HomMap { degree: f.degree + g.degree, matrix }
}

/// `A[i][l]` with `z b_i = sum_l A[i][l] b_l` for a structure element `z`
/// of polynomial degree `dz`.
fn action_matrix(
    m: &ZLattice,
    z: &HashMap<usize, Poly>,
    dz: usize,
    spans: &mut HashMap<usize, Span>,
) -> Result<Vec<Vec<Poly>>> {
    let mut a = Vec::with_capacity(m.rank());
    for g in &m.gens {
        let d = g.degree + dz;
        let span = spans.entry(d).or_insert_with(|| m.span(d));
        let zg = m.act(z, &g.entries)?;
        let c = span
            .coordinates(&zg, &m.gens)
            .ok_or_else(|| Error::NotFree("lattice is not stable under the structure algebra".into()))?;
        a.push(c);
    }
    Ok(a)
}

/// Basis of the graded-degree-`degree` homomorphisms `M -> N` commuting
/// with the structure algebra.
pub fn hom_graded(m: &ZLattice, n: &ZLattice, degree: i64) -> Result<Vec<HomMap>> {
    if !Arc::ptr_eq(&m.graph, &n.graph) {
        return Err(Error::Precondition("lattices live on different graphs".into()));
    }
    if degree.unsigned_abs() as usize > m.graph.degree_bound {
        return Err(Error::BoundTooSmall(format!("Hom degree {degree} exceeds the degree bound {}", m.graph.degree_bound)));
    }
    if degree % 2 != 0 {
        return Ok(Vec::new());
    }
    let k = degree / 2;
    let nvars = m.nvars();
    let (r, t) = (m.rank(), n.rank());
    // unknown layout: entry (i, j) of degree e_i + k - f_j
    let entry_deg = |i: usize, j: usize| -> Option<usize> {
        let d = m.gens[i].degree as i64 + k - n.gens[j].degree as i64;
        (d >= 0).then_some(d as usize)
    };
    let mut offset = vec![vec![usize::MAX; t]; r];
    let mut total = 0;
    for i in 0..r {
        for j in 0..t {
            if let Some(d) = entry_deg(i, j) {
                offset[i][j] = total;
                total += monomials(nvars, d).len();
            }
        }
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut support = m.support();
    support.extend(n.support());
    support.sort_unstable();
    support.dedup();
    let zs = separating_elements(&m.graph, &support)?;
    let mut system = SparseSystem::new(total);
    let (mut sm, mut sn) = (HashMap::new(), HashMap::new());
    for (dz, z) in &zs {
        let a = action_matrix(m, z, *dz, &mut sm)?;
        let b = action_matrix(n, z, *dz, &mut sn)?;
        // equations (i, c): sum_l A_il P_lc - sum_j P_ij B_jc
        for i in 0..r {
            for c in 0..t {
                let d = m.gens[i].degree as i64 + k + *dz as i64 - n.gens[c].degree as i64;
                if d < 0 {
                    continue;
                }
                let out = monomials(nvars, d as usize);
                let mut eqs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); out.len()];
                for l in 0..r {
                    let (Some(dl), false) = (entry_deg(l, c), a[i][l].is_zero()) else { continue };
                    for (mi, mono) in monomials(nvars, dl).monos().iter().enumerate() {
                        for (om, coef) in a[i][l].mul_mono(mono).terms() {
                            eqs[out.index(om).unwrap()].push((offset[l][c] + mi, coef.clone()));
                        }
                    }
                }
                for j in 0..t {
                    let (Some(dj), false) = (entry_deg(i, j), b[j][c].is_zero()) else { continue };
                    for (mi, mono) in monomials(nvars, dj).monos().iter().enumerate() {
                        for (om, coef) in b[j][c].mul_mono(mono).terms() {
                            eqs[out.index(om).unwrap()].push((offset[i][j] + mi, -coef.clone()));
                        }
                    }
                }
                for e in eqs {
                    system.add_equation(e);
                }
            }
        }
    }
    let kernel = system.nullspace();
    let kdim = kernel.len();
    let mut out = Vec::with_capacity(kdim);
    for col in 0..kdim {
        let mut matrix = vec![vec![Poly::zero(); t]; r];
        for i in 0..r {
            for j in 0..t {
                if let Some(d) = entry_deg(i, j) {
                    let mb = monomials(nvars, d);
                    let v: Vec<Q> = (0..mb.len()).map(|mi| kernel[col][offset[i][j] + mi].clone()).collect();
                    matrix[i][j] = Poly::from_vec(&mb, &v);
                }
            }
        }
        out.push(HomMap { degree, matrix });
    }
    Ok(out)
}

/// Whether a degree-zero endomorphism is nilpotent (checked on the fibre
/// at the graph's evaluation point).
pub fn is_nilpotent(f: &HomMap, m: &ZLattice) -> bool {
    let a = f.eval(&m.graph.point);
    let n = a.len();
    let mut p = a.clone();
    for _ in 1..n.max(1) {
        p = linalg::mat_mul(&p, &a);
    }
    p.iter().all(|r| linalg::is_zero_vec(r))
}
