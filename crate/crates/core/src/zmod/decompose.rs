//! Decomposition of lattices into indecomposables, graded characters,
//! identification of projective images and singular reduction.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kl::IntPoly;
use crate::linalg::{self, Echelon, Vector};
use crate::par;
use crate::rational::Q;

use super::algebra::FdAlgebra;
use super::graph::MomentGraph;
use super::hom::{compose, hom_graded, is_nilpotent, HomMap};
use super::lattice::{bott_samelson, eval_matrix, Generator, ZLattice};
use super::poly::monomials;

const RANDOM_TRIES: usize = 200;

/// Degree-zero endomorphisms as maps together with the algebra they form.
pub struct Endomorphisms {
    pub maps: Vec<HomMap>,
    pub algebra: FdAlgebra,
}

fn flatten_map(f: &HomMap, m: &ZLattice) -> Vector {
    let mut v = Vec::new();
    for (i, row) in f.matrix.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let d = m.gens[i].degree as i64 - m.gens[j].degree as i64;
            if d >= 0 {
                v.extend(p.to_vec(&monomials(m.nvars(), d as usize)));
            }
        }
    }
    v
}

pub fn endomorphisms(m: &ZLattice) -> Result<Endomorphisms> {
    let maps = hom_graded(m, m, 0)?;
    let mut ech = Echelon::tracking();
    for f in &maps {
        ech.insert(&flatten_map(f, m));
    }
    let coords = |f: &HomMap| -> Result<Vector> {
        ech.coordinates(&flatten_map(f, m))
            .ok_or_else(|| Error::Decomposition("endomorphisms are not closed under composition".into()))
    };
    let pairs: Vec<(usize, usize)> = (0..maps.len()).flat_map(|a| (0..maps.len()).map(move |b| (a, b))).collect();
    // e_a e_b means "first e_b, then e_a"
    let products = par::map(&pairs, |&(a, b)| coords(&compose(&maps[b], &maps[a])));
    let mut mult = vec![Vec::with_capacity(maps.len()); maps.len()];
    for ((a, _), p) in pairs.iter().zip(products) {
        mult[*a].push(p?);
    }
    let one = coords(&HomMap::identity(m))?;
    Ok(Endomorphisms { algebra: FdAlgebra { dim: maps.len(), mult, one }, maps })
}

fn combine(maps: &[HomMap], x: &[Q], template: &HomMap) -> HomMap {
    let mut acc = template.scale(&Q::zero());
    for (f, c) in maps.iter().zip(x) {
        if !c.is_zero() {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}

/// Image of an idempotent endomorphism, re-slotted onto a choice of slots
/// at each vertex on which it is generically injective.
fn image(m: &ZLattice, e: &HomMap) -> Result<ZLattice> {
    let candidates: Vec<Generator> =
        (0..m.rank()).map(|i| Generator { degree: m.gens[i].degree, entries: e.apply(i, m) }).collect();
    let img = ZLattice::generated(m.graph.clone(), m.slots.clone(), candidates, false)?;
    let ev = eval_matrix(&m.graph, &img.gens);
    let mut keep = Vec::new();
    for v in m.support() {
        let mut ech = Echelon::new();
        for (j, &sv) in m.slots.iter().enumerate() {
            if sv == v {
                let col: Vector = ev.iter().map(|r| r[j].clone()).collect();
                if ech.insert(&col) {
                    keep.push(j);
                }
            }
        }
    }
    keep.sort_unstable();
    if keep.len() != img.rank() {
        return Err(Error::Decomposition(format!("summand of rank {} spread over {} slots", img.rank(), keep.len())));
    }
    let slots = keep.iter().map(|&j| m.slots[j]).collect();
    let gens = img
        .gens
        .iter()
        .map(|g| Generator { degree: g.degree, entries: keep.iter().map(|&j| g.entries[j].clone()).collect() })
        .collect();
    ZLattice::new(m.graph.clone(), slots, gens)
}

/// Splits `m` by a nontrivial idempotent of its degree-zero endomorphisms,
/// or returns `None` when those endomorphisms form a local algebra.
pub fn split(m: &ZLattice) -> Result<Option<(ZLattice, ZLattice)>> {
    let end = endomorphisms(m)?;
    if end.algebra.is_local() {
        return Ok(None);
    }
    let e = end
        .algebra
        .find_idempotent(RANDOM_TRIES)
        .ok_or_else(|| Error::Decomposition("no splitting idempotent found".into()))?;
    let template = HomMap::identity(m);
    let em = combine(&end.maps, &e, &template);
    let f: Vector = end.algebra.one.iter().zip(&e).map(|(a, b)| a - b).collect();
    let fm = combine(&end.maps, &f, &template);
    Ok(Some((image(m, &em)?, image(m, &fm)?)))
}

/// Complete list of indecomposable summands.
pub fn decompose(m: &ZLattice) -> Result<Vec<ZLattice>> {
    if m.rank() == 0 {
        return Ok(Vec::new());
    }
    match split(m)? {
        None => Ok(vec![m.clone()]),
        Some((a, b)) => {
            if a.rank() == 0 || b.rank() == 0 {
                return Err(Error::Decomposition("idempotent splitting produced an empty summand".into()));
            }
            let mut out = decompose(&a)?;
            out.extend(decompose(&b)?);
            Ok(out)
        }
    }
}

pub fn is_indecomposable(m: &ZLattice) -> Result<bool> {
    Ok(endomorphisms(m)?.algebra.is_local())
}

/// Dimension of the degree-`d` sections supported on the slots where
/// `inside` holds.
fn supported_dim(m: &ZLattice, d: usize, inside: &[bool]) -> usize {
    let span = m.span(d);
    let n = span.basis.len();
    let total = span.dim();
    let outside: Vec<usize> =
        (0..m.slots.len()).filter(|&j| !inside[j]).flat_map(|j| (j * n)..((j + 1) * n)).collect();
    let proj: Vec<Vec<Q>> = span.echelon.basis().map(|r| outside.iter().map(|&k| r[k].clone()).collect()).collect();
    total - linalg::rank(&proj)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Graded character: at each vertex `w` the generator degrees of the
/// subquotient of sections supported on weights `<= w` modulo those on
/// weights `< w`. Exponents are graded degrees.
pub fn graded_char(m: &ZLattice) -> Result<BTreeMap<usize, IntPoly>> {
    let g = &m.graph;
    let mult = m.multiplicities();
    let nv = m.nvars();
    let bound = g.poly_bound() + m.gens.iter().map(|x| x.degree).max().unwrap_or(0);
    let per_vertex = par::map(&mult.iter().map(|(&w, &n)| (w, n)).collect::<Vec<_>>(), |&(w, n)| {
        let below: Vec<bool> = m.slots.iter().map(|&v| g.weight_leq(v, w)).collect();
        let strictly: Vec<bool> = m.slots.iter().map(|&v| v != w && g.weight_leq(v, w)).collect();
        let mut hilb: Vec<i64> = Vec::new();
        let mut coeffs: Vec<i64> = Vec::new();
        let mut sum = 0i64;
        for d in 0..=bound {
            hilb.push(supported_dim(m, d, &below) as i64 - supported_dim(m, d, &strictly) as i64);
            let f: i64 = (0..=d.min(nv)).map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(nv, i) * hilb[d - i]).sum();
            if f < 0 {
                return Err(Error::NotFree(format!("negative graded rank at vertex {}", g.vertices[w].label)));
            }
            coeffs.push(f);
            sum += f;
            if sum == n as i64 {
                let mut graded = vec![0; 2 * coeffs.len()];
                for (k, c) in coeffs.iter().enumerate() {
                    graded[2 * k] = *c;
                }
                return Ok((w, IntPoly::from_coeffs(graded)));
            }
        }
        Err(Error::BoundTooSmall(format!("graded character at {} not settled by the degree bound", g.vertices[w].label)))
    });
    per_vertex.into_iter().collect()
}

/// Ungraded character: slot count per vertex label.
pub fn char_at_one(ch: &BTreeMap<usize, IntPoly>) -> BTreeMap<usize, i64> {
    ch.iter().map(|(&v, p)| (v, p.eval_one())).collect()
}

/// `Some(k)` when `b` is isomorphic to `a` with degrees raised by `k`
/// (graded units). Characters are compared first; isomorphism is then
/// certified by a non-nilpotent composite of basis maps.
pub fn isomorphic_up_to_shift(a: &ZLattice, b: &ZLattice) -> Result<Option<i64>> {
    if a.multiplicities() != b.multiplicities() {
        return Ok(None);
    }
    let (da, db) = (a.degrees(), b.degrees());
    let k = db[0] as i64 - da[0] as i64;
    if da.iter().zip(&db).any(|(x, y)| *y as i64 - *x as i64 != k) {
        return Ok(None);
    }
    let there = hom_graded(a, b, k)?;
    let back = hom_graded(b, a, -k)?;
    for f in &there {
        for g in &back {
            if !is_nilpotent(&compose(f, g), a) {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// Memoized images of indecomposable projectives in a regular block based
/// at its dominant element.
pub struct Projectives {
    pub graph: Arc<MomentGraph>,
    memo: RwLock<HashMap<usize, ZLattice>>,
}

impl Projectives {
    pub fn new(graph: Arc<MomentGraph>) -> Result<Self> {
        if graph.coxeter.is_none() || !graph.dominant_base {
            return Err(Error::Precondition("projectives need a regular block based at its dominant element".into()));
        }
        Ok(Projectives { graph, memo: RwLock::new(HashMap::new()) })
    }

    /// `V P(w)`: the summand of the Bott-Samelson lattice of the reduced
    /// word of `w` that reaches `w`.
    pub fn identify(&self, w: usize) -> Result<ZLattice> {
        if let Some(p) = self.memo.read().unwrap().get(&w) {
            return Ok(p.clone());
        }
        let el = self.graph.vertices[w].element.clone().ok_or(Error::NotRegular)?;
        let bs = bott_samelson(&self.graph, el.word())?;
        let parts = decompose(&bs)?;
        let mut hits: Vec<ZLattice> =
            parts.into_iter().filter(|p| p.multiplicities().contains_key(&w)).collect();
        if hits.len() != 1 {
            return Err(Error::Decomposition(format!(
                "{} summands reach {}; the truncation is too small",
                hits.len(),
                self.graph.vertices[w].label
            )));
        }
        let p = hits.pop().unwrap();
        for (v, q) in self.memo.read().unwrap().iter() {
            let shorter = self.graph.vertices[*v].element.as_ref().is_some_and(|x| x.length() < el.length());
            if shorter && q.multiplicities() == p.multiplicities() {
                return Err(Error::Decomposition("summand repeats a smaller projective".into()));
            }
        }
        self.memo.write().unwrap().insert(w, p.clone());
        Ok(p)
    }
}

/// Restriction of a regular projective image to the wall `s`: slots are
/// relabelled by cosets `{w, ws}` on the quotient graph and the result is
/// decomposed. It must split into two copies of one indecomposable.
pub fn singular_reduce(m: &ZLattice, s: Option<usize>) -> Result<Vec<ZLattice>> {
    let Some(s) = s else { return Ok(vec![m.clone()]) };
    let q = m.graph.quotient(s)?;
    let coset = q.coset_of.as_ref().unwrap();
    let slots: Vec<usize> = m.slots.iter().map(|&v| coset[v]).collect();
    let relabelled = ZLattice::new(q.clone(), slots, m.gens.clone())?.sorted_slots();
    let parts = decompose(&relabelled)?;
    if parts.len() != 2 {
        return Err(Error::Decomposition(format!("expected 2 isomorphic summands, found {}", parts.len())));
    }
    if isomorphic_up_to_shift(&parts[0], &parts[1])?.is_none() && isomorphic_up_to_shift(&parts[1], &parts[0])?.is_none() {
        return Err(Error::Decomposition("summands of the singular reduction are not isomorphic".into()));
    }
    Ok(parts)
}
