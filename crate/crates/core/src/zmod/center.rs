//! The structure algebra of a vertex set: tuples congruent modulo the edge
//! labels, computed degreewise.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::par;
use crate::rational::Q;

use super::graph::MomentGraph;
use super::lattice::{flatten, unflatten, Generator, ZLattice};
use super::poly::{monomials, Poly};

/// Degree-`d` piece of the structure algebra on `vertices` (sorted), as a
/// basis of flattened tuples.
fn piece(graph: &MomentGraph, vertices: &[usize], d: usize) -> Vec<Vec<Q>> {
    let basis = monomials(graph.nvars, d);
    let n = basis.len();
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cols = vertices.len() * n;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for e in &graph.edges {
        let (Some(&ia), Some(&ib)) = (pos.get(&e.a), pos.get(&e.b)) else { continue };
        // remainder of each monomial modulo the edge label
        let rem: Vec<Vec<Q>> = basis
            .monos()
            .iter()
            .map(|m| Poly::monomial(m.clone(), Q::from_integer(1.into())).div_linear(&e.label).1.to_vec(&basis))
            .collect();
        for k in 0..n {
            if rem.iter().all(|r| r[k].is_zero()) {
                continue;
            }
            let mut row = vec![Q::zero(); cols];
            for (mi, r) in rem.iter().enumerate() {
                row[ia * n + mi] += &r[k];
                row[ib * n + mi] -= &r[k];
            }
            rows.push(row);
        }
    }
    linalg::nullspace(&rows, cols)
}

/// An S-basis of the structure algebra on `vertices`, one slot per vertex.
pub fn structure_algebra(graph: &Arc<MomentGraph>, vertices: &[usize]) -> Result<Arc<ZLattice>> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.is_empty() {
        return Err(Error::Precondition("empty vertex set".into()));
    }
    if let Some(z) = graph.algebras.read().unwrap().get(&vs) {
        return Ok(z.clone());
    }
    let bound = graph.poly_bound();
    let pieces = par::map_range(bound + 1, |d| piece(graph, &vs, d));
    let nvars = graph.nvars;
    let mut gens: Vec<Generator> = Vec::new();
    for (d, zd) in pieces.iter().enumerate() {
        let basis = monomials(nvars, d);
        let mut ech = Echelon::new();
        for g in &gens {
            for m in monomials(nvars, d - g.degree).monos() {
                let e: Vec<Poly> = g.entries.iter().map(|p| p.mul_mono(m)).collect();
                ech.insert(&flatten(&e, &basis));
            }
        }
        for v in zd {
            if ech.insert(v) {
                gens.push(Generator { degree: d, entries: unflatten(v, vs.len(), &basis) });
            }
        }
        if ech.dim() != zd.len() {
            return Err(Error::NotFree("structure algebra piece exceeds the generated span".into()));
        }
    }
    if gens.len() < vs.len() {
        return Err(Error::BoundTooSmall(format!(
            "degree bound {} exhibits {} of {} generators",
            graph.degree_bound,
            gens.len(),
            vs.len()
        )));
    }
    let z = ZLattice::generated(graph.clone(), vs.clone(), gens, true)?;
    if z.rank() != vs.len() {
        return Err(Error::NotFree(format!("structure algebra has {} generators on {} vertices", z.rank(), vs.len())));
    }
    let z = Arc::new(z);
    graph.algebras.write().unwrap().insert(vs, z.clone());
    Ok(z)
}

/// Values at vertices of a structure algebra generator.
pub fn values(z: &ZLattice, g: &Generator) -> HashMap<usize, Poly> {
    z.slots.iter().copied().zip(g.entries.iter().cloned()).collect()
}

/// Elements of positive degree of the structure algebra on `vertices`,
/// taken in degree order until they separate all vertices.
pub fn separating_elements(graph: &Arc<MomentGraph>, vertices: &[usize]) -> Result<Vec<(usize, HashMap<usize, Poly>)>> {
    let z = structure_algebra(graph, vertices)?;
    let mut out = Vec::new();
    let n = z.slots.len();
    let mut separated = vec![vec![false; n]; n];
    let done = |s: &Vec<Vec<bool>>| (0..n).all(|i| (0..n).all(|j| i == j || s[i][j]));
    for g in &z.gens {
        if done(&separated) {
            break;
        }
        if g.degree == 0 {
            continue;
        }
        let mut useful = false;
        for i in 0..n {
            for j in 0..n {
                if !separated[i][j] && g.entries[i] != g.entries[j] {
                    separated[i][j] = true;
                    useful = true;
                }
            }
        }
        if useful {
            out.push((g.degree, values(&z, g)));
        }
    }
    if !done(&separated) {
        return Err(Error::Decomposition("structure algebra does not separate the vertices".into()));
    }
    Ok(out)
}

/// Whether a tuple lies in the coset-invariant subalgebra for the wall `s`.
pub fn subalgebra_member(graph: &MomentGraph, slots: &[usize], tuple: &[Poly], s: usize) -> Result<bool> {
    graph.is_coset_invariant(slots, tuple, s)
}
