//! Moment graphs of truncated orbits and their quotients by a wall.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::BlockData;
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::rootdata::{Root, RootSystem, Weight};

use super::lattice::ZLattice;
use super::poly::Poly;

pub const DEFAULT_DEGREE_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Reduced word (or coset representative word), 1-based text; "e" for
    /// the identity.
    pub label: String,
    pub weight: Weight,
    pub element: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// `h_beta = (beta, -)`.
    pub label: Poly,
    pub root: Vec<i64>,
}

#[derive(Debug)]
pub struct MomentGraph {
    pub nvars: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Present for graphs of regular blocks, where vertices are group
    /// elements and right multiplication makes sense.
    pub coxeter: Option<CoxeterSystem>,
    /// Graded degree bound for degreewise computations.
    pub degree_bound: usize,
    /// Evaluation point at which no edge label vanishes.
    pub point: Vec<Q>,
    by_element: HashMap<Element, usize>,
    /// For quotient graphs: the vertex of the quotient each original vertex
    /// maps to.
    pub coset_of: Option<Vec<usize>>,
    pub roots: RootSystem,
    /// Integral simple roots indexing the Coxeter generators.
    pub simples: Vec<Root>,
    /// Whether the identity vertex carries the dominant weight.
    pub dominant_base: bool,
    weight_leq: Vec<Vec<bool>>,
    pub(super) algebras: RwLock<HashMap<Vec<usize>, Arc<ZLattice>>>,
}

fn vertex_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        crate::coxeter::format_word(word)
    }
}

fn choose_point(nvars: usize, labels: &[&Poly]) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        let p: Vec<Q> = (0..nvars).map(|_| rational::q(rng.gen_range(1..=97))).collect();
        if labels.iter().all(|h| !h.eval(&p).is_zero()) {
            return p;
        }
    }
}

struct Parts {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    coxeter: Option<CoxeterSystem>,
    by_element: HashMap<Element, usize>,
    coset_of: Option<Vec<usize>>,
    simples: Vec<Root>,
    dominant_base: bool,
}

impl MomentGraph {
    /// Graph on the truncated orbit of a block; edges `(w, s_beta . w)` for
    /// every positive integral root with both ends in the truncation.
    pub fn from_block(block: &BlockData, degree_bound: usize) -> Result<Arc<MomentGraph>> {
        if degree_bound == 0 {
            return Err(Error::Precondition("degree bound must be positive".into()));
        }
        let rs = &block.roots;
        let nvars = rs.model_dim();
        let index: HashMap<&Weight, usize> = block.orbit.iter().enumerate().map(|(i, v)| (&v.weight, i)).collect();
        let mut edges = Vec::new();
        for (a, v) in block.orbit.iter().enumerate() {
            for beta in &block.integral_positive_roots {
                let t = rs.dot_reflect(beta, &v.weight)?;
                let Some(&b) = index.get(&t) else { continue };
                if b <= a {
                    continue;
                }
                edges.push(Edge { a, b, label: Poly::linear(&rs.linear_form(beta)), root: beta.simple_coords.clone() });
            }
        }
        let coxeter = if block.is_regular() { block.coxeter.clone() } else { None };
        let mut vertices = Vec::new();
        let mut by_element = HashMap::new();
        for (i, v) in block.orbit.iter().enumerate() {
            let element = match &coxeter {
                Some(sys) => Some(sys.element(&v.word)?),
                None if block.rank() == 0 => Some(Element::identity()),
                None => None,
            };
            if let Some(e) = &element {
                by_element.insert(e.clone(), i);
            }
            vertices.push(Vertex { label: vertex_label(&v.word), weight: v.weight.clone(), element });
        }
        let dominant_base = block.base_is_dominant()? && block.cartan().kind != crate::rootdata::CartanKind::Indefinite;
        let parts = Parts { vertices, edges, coxeter, by_element, coset_of: None, simples: block.integral_simples.clone(), dominant_base };
        Self::assemble(rs, nvars, parts, degree_bound)
    }

    fn assemble(rs: &RootSystem, nvars: usize, parts: Parts, degree_bound: usize) -> Result<Arc<MomentGraph>> {
        let Parts { vertices, edges, coxeter, by_element, coset_of, simples, dominant_base } = parts;
        let labels: Vec<&Poly> = edges.iter().map(|e| &e.label).collect();
        let point = choose_point(nvars, &labels);
        let n = vertices.len();
        let mut weight_leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                weight_leq[i][j] = rs.leq(&vertices[i].weight, &vertices[j].weight)?;
            }
        }
        Ok(Arc::new(MomentGraph {
            nvars,
            vertices,
            edges,
            coxeter,
            degree_bound,
            point,
            by_element,
            coset_of,
            roots: rs.clone(),
            simples,
            dominant_base,
            weight_leq,
            algebras: RwLock::new(HashMap::new()),
        }))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Polynomial degree bound (graded bound halved).
    pub fn poly_bound(&self) -> usize {
        self.degree_bound / 2
    }

    pub fn vertex_of_element(&self, w: &Element) -> Option<usize> {
        self.by_element.get(w).copied()
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    /// `w.lambda <= v.lambda` in the root order.
    pub fn weight_leq(&self, w: usize, v: usize) -> bool {
        self.weight_leq[w][v]
    }

    /// The vertex `ws`, if inside the truncation.
    pub fn right_mul(&self, v: usize, s: usize) -> Result<Option<usize>> {
        let sys = self.coxeter.as_ref().ok_or(Error::NotRegular)?;
        if s >= sys.rank() {
            return Err(Error::Precondition(format!("generator {} out of range", s + 1)));
        }
        let w = self.vertices[v].element.as_ref().ok_or(Error::NotRegular)?;
        Ok(self.vertex_of_element(&sys.rmul(w, s)))
    }

    /// Edges with both ends inside `set` (given as a membership mask).
    pub fn edges_within<'a>(&'a self, mask: &'a [bool]) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| mask[e.a] && mask[e.b])
    }

    /// Whether a tuple over `slots` is constant on the cosets `{w, ws}`.
    pub fn is_coset_invariant(&self, slots: &[usize], tuple: &[Poly], s: usize) -> Result<bool> {
        let mut at: HashMap<usize, &Poly> = HashMap::new();
        for (&v, p) in slots.iter().zip(tuple) {
            at.insert(v, p);
        }
        for (&v, p) in slots.iter().zip(tuple) {
            if let Some(u) = self.right_mul(v, s)? {
                if let Some(q) = at.get(&u) {
                    if *q != p {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Quotient by the right action of `s`: one vertex per coset `{w, ws}`
    /// (labelled by its shorter element), inherited edges, loops dropped.
    pub fn quotient(&self, s: usize) -> Result<Arc<MomentGraph>> {
        self.coxeter.as_ref().ok_or(Error::NotRegular)?;
        let mut coset_of = vec![usize::MAX; self.len()];
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..self.len() {
            if coset_of[v] != usize::MAX {
                continue;
            }
            let u = self.right_mul(v, s)?.ok_or_else(|| {
                Error::BoundTooSmall(format!("vertex {} has no partner for the wall", self.vertices[v].label))
            })?;
            let rep = if self.vertices[u].label.len() < self.vertices[v].label.len() { u } else { v };
            coset_of[v] = reps.len();
            coset_of[u] = reps.len();
            reps.push(rep);
        }
        let mut seen: BTreeMap<(usize, usize, Vec<i64>), ()> = BTreeMap::new();
        let mut edges = Vec::new();
        for e in &self.edges {
            let (a, b) = (coset_of[e.a].min(coset_of[e.b]), coset_of[e.a].max(coset_of[e.b]));
            if a == b || seen.insert((a, b, e.root.clone()), ()).is_some() {
                continue;
            }
            edges.push(Edge { a, b, label: e.label.clone(), root: e.root.clone() });
        }
        let vertices: Vec<Vertex> = reps
            .iter()
            .map(|&r| Vertex { label: self.vertices[r].label.clone(), weight: self.vertices[r].weight.clone(), element: self.vertices[r].element.clone() })
            .collect();
        let parts = Parts {
            vertices,
            edges,
            coxeter: None,
            by_element: HashMap::new(),
            coset_of: Some(coset_of),
            simples: self.simples.clone(),
            dominant_base: self.dominant_base,
        };
        Self::assemble(&self.roots, self.nvars, parts, self.degree_bound)
    }
}
