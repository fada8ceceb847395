//! Graded lattices of vertex-labelled polynomial tuples: free modules over
//! the polynomial ring, stable under the structure algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::rational::Q;
use crate::rootdata::Root;

use super::graph::MomentGraph;
use super::poly::{monomials, MonoBasis, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Polynomial degree; the graded degree is twice this.
    pub degree: usize,
    pub entries: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct ZLattice {
    pub graph: Arc<MomentGraph>,
    /// Vertex of each slot.
    pub slots: Vec<usize>,
    /// Homogeneous S-basis.
    pub gens: Vec<Generator>,
}

impl PartialEq for ZLattice {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &o.graph) && self.slots == o.slots && self.gens == o.gens
    }
}

/// Q-span of the degree-`d` piece of a lattice, remembering which
/// (generator, monomial) produced each inserted vector.
pub struct Span {
    pub degree: usize,
    pub basis: Arc<MonoBasis>,
    pub echelon: Echelon,
    origin: Vec<(usize, usize)>,
    nvars: usize,
}

impl Span {
    pub fn flatten(&self, entries: &[Poly]) -> Vec<Q> {
        flatten(entries, &self.basis)
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn contains(&self, entries: &[Poly]) -> bool {
        self.echelon.contains(&self.flatten(entries))
    }

    /// Coefficients (in S) of `entries` with respect to the generators.
    pub fn coordinates(&self, entries: &[Poly], gens: &[Generator]) -> Option<Vec<Poly>> {
        let c = self.echelon.coordinates(&self.flatten(entries))?;
        let mut out = vec![Poly::zero(); gens.len()];
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (g, mi) = self.origin[k];
            let mb = monomials(self.nvars, self.degree - gens[g].degree);
            out[g] = out[g].add(&Poly::monomial(mb.monos()[mi].clone(), x.clone()));
        }
        Some(out)
    }
}

pub fn flatten(entries: &[Poly], basis: &MonoBasis) -> Vec<Q> {
    let mut v = Vec::with_capacity(entries.len() * basis.len());
    for p in entries {
        v.extend(p.to_vec(basis));
    }
    v
}

pub fn unflatten(v: &[Q], slots: usize, basis: &MonoBasis) -> Vec<Poly> {
    (0..slots).map(|j| Poly::from_vec(basis, &v[j * basis.len()..(j + 1) * basis.len()])).collect()
}

/// Evaluation matrix (generators x slots) at the graph's point.
pub fn eval_matrix(graph: &MomentGraph, gens: &[Generator]) -> linalg::Matrix {
    gens.iter().map(|g| g.entries.iter().map(|p| p.eval(&graph.point)).collect()).collect()
}

impl ZLattice {
    pub fn new(graph: Arc<MomentGraph>, slots: Vec<usize>, gens: Vec<Generator>) -> Result<Self> {
        for &v in &slots {
            if v >= graph.len() {
                return Err(Error::Precondition(format!("slot vertex {v} outside the graph")));
            }
        }
        for g in &gens {
            if g.entries.len() != slots.len() {
                return Err(Error::Precondition("generator length differs from slot count".into()));
            }
            if !g.entries.iter().all(|p| p.is_homogeneous_of(g.degree)) {
                return Err(Error::Precondition("generator is not homogeneous of its degree".into()));
            }
        }
        Ok(ZLattice { graph, slots, gens })
    }

    /// Minimal homogeneous generating set of the S-span of `candidates`,
    /// which must be free; with `full_rank` the generic rank must also equal
    /// the slot count.
    pub fn generated(
        graph: Arc<MomentGraph>,
        slots: Vec<usize>,
        mut candidates: Vec<Generator>,
        full_rank: bool,
    ) -> Result<Self> {
        candidates.retain(|g| g.entries.iter().any(|p| !p.is_zero()));
        candidates.sort_by_key(|g| g.degree);
        let max = candidates.iter().map(|g| g.degree).max().unwrap_or(0);
        let nvars = graph.nvars;
        let mut selected: Vec<Generator> = Vec::new();
        for d in 0..=max {
            let basis = monomials(nvars, d);
            let mut ech = Echelon::new();
            for g in &selected {
                for m in monomials(nvars, d - g.degree).monos() {
                    let e: Vec<Poly> = g.entries.iter().map(|p| p.mul_mono(m)).collect();
                    ech.insert(&flatten(&e, &basis));
                }
            }
            for c in candidates.iter().filter(|c| c.degree == d) {
                if ech.insert(&flatten(&c.entries, &basis)) {
                    selected.push(c.clone());
                }
            }
        }
        let r = linalg::rank(&eval_matrix(&graph, &selected));
        if r != selected.len() {
            return Err(Error::NotFree(format!("{} minimal generators but generic rank {r}", selected.len())));
        }
        if full_rank && r != slots.len() {
            return Err(Error::NotFree(format!("generic rank {r} differs from slot count {}", slots.len())));
        }
        ZLattice::new(graph, slots, selected)
    }

    pub fn nvars(&self) -> usize {
        self.graph.nvars
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Sorted distinct slot vertices.
    pub fn support(&self) -> Vec<usize> {
        self.slots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Number of slots at each vertex.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &v in &self.slots {
            *m.entry(v).or_default() += 1;
        }
        m
    }

    /// Multiplicities keyed by vertex label.
    pub fn labelled_multiplicities(&self) -> BTreeMap<String, usize> {
        self.multiplicities().into_iter().map(|(v, n)| (self.graph.vertices[v].label.clone(), n)).collect()
    }

    /// Graded degrees of the generators, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.gens.iter().map(|g| 2 * g.degree).collect();
        d.sort_unstable();
        d
    }

    pub fn span(&self, d: usize) -> Span {
        let basis = monomials(self.nvars(), d);
        let mut echelon = Echelon::tracking();
        let mut origin = Vec::new();
        for (gi, g) in self.gens.iter().enumerate() {
            if g.degree > d {
                continue;
            }
            for (mi, m) in monomials(self.nvars(), d - g.degree).monos().iter().enumerate() {
                let e: Vec<Poly> = g.entries.iter().map(|p| p.mul_mono(m)).collect();
                echelon.insert(&flatten(&e, &basis));
                origin.push((gi, mi));
            }
        }
        Span { degree: d, basis, echelon, origin, nvars: self.nvars() }
    }

    /// `dim_Q` of the degree-`d` piece.
    pub fn dim(&self, d: usize) -> usize {
        self.gens.iter().filter(|g| g.degree <= d).map(|g| super::poly::dim(self.nvars(), d - g.degree)).sum()
    }

    pub fn contains(&self, entries: &[Poly], d: usize) -> bool {
        self.span(d).contains(entries)
    }

    /// Componentwise action of a structure algebra element given by its
    /// values at vertices.
    pub fn act(&self, z: &HashMap<usize, Poly>, entries: &[Poly]) -> Result<Vec<Poly>> {
        self.slots
            .iter()
            .zip(entries)
            .map(|(v, p)| {
                z.get(v)
                    .map(|zv| zv.mul(p))
                    .ok_or_else(|| Error::Precondition(format!("structure element undefined at vertex {v}")))
            })
            .collect()
    }

    /// Lattice with the same slots whose S-span is checked equal.
    pub fn same_span(&self, o: &ZLattice) -> bool {
        if !Arc::ptr_eq(&self.graph, &o.graph) || self.slots != o.slots || self.rank() != o.rank() {
            return false;
        }
        let within = |a: &ZLattice, b: &ZLattice| a.gens.iter().all(|g| b.contains(&g.entries, g.degree));
        within(self, o) && within(o, self)
    }

    pub fn direct_sum(&self, o: &ZLattice) -> Result<ZLattice> {
        if !Arc::ptr_eq(&self.graph, &o.graph) {
            return Err(Error::Precondition("lattices live on different graphs".into()));
        }
        let (a, b) = (self.slots.len(), o.slots.len());
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut e = g.entries.clone();
            e.extend(std::iter::repeat_n(Poly::zero(), b));
            gens.push(Generator { degree: g.degree, entries: e });
        }
        for g in &o.gens {
            let mut e = vec![Poly::zero(); a];
            e.extend(g.entries.iter().cloned());
            gens.push(Generator { degree: g.degree, entries: e });
        }
        let mut slots = self.slots.clone();
        slots.extend(&o.slots);
        ZLattice::new(self.graph.clone(), slots, gens)
    }

    /// The same lattice with slots sorted by vertex.
    pub fn sorted_slots(&self) -> ZLattice {
        let mut order: Vec<usize> = (0..self.slots.len()).collect();
        order.sort_by_key(|&j| (self.slots[j], j));
        let slots = order.iter().map(|&j| self.slots[j]).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| Generator { degree: g.degree, entries: order.iter().map(|&j| g.entries[j].clone()).collect() })
            .collect();
        ZLattice { graph: self.graph.clone(), slots, gens }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "slots": self.slots.iter().map(|&v| self.graph.vertices[v].label.clone()).collect::<Vec<_>>(),
            "generators": self.gens.iter().map(|g| json!({
                "degree": 2 * g.degree,
                "entries": g.entries.iter().map(Poly::to_text).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(graph: Arc<MomentGraph>, v: &serde_json::Value) -> Result<ZLattice> {
        let bad = |m: &str| Error::Parse(format!("lattice JSON: {m}"));
        let slots = v["slots"]
            .as_array()
            .ok_or_else(|| bad("missing slots"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .and_then(|l| graph.vertex_by_label(l))
                    .ok_or_else(|| bad("unknown slot vertex"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gens = Vec::new();
        for g in v["generators"].as_array().ok_or_else(|| bad("missing generators"))? {
            let deg = g["degree"].as_u64().ok_or_else(|| bad("missing degree"))? as usize;
            if !deg.is_multiple_of(2) {
                return Err(bad("odd generator degree"));
            }
            let entries = g["entries"]
                .as_array()
                .ok_or_else(|| bad("missing entries"))?
                .iter()
                .map(|e| Poly::parse(e.as_str().unwrap_or("?"), graph.nvars))
                .collect::<Result<Vec<_>>>()?;
            gens.push(Generator { degree: deg / 2, entries });
        }
        ZLattice::new(graph, slots, gens)
    }
}

/// Rank-one lattice at a vertex generated by the constant 1.
pub fn verma_zmodule(graph: &Arc<MomentGraph>, w: usize) -> Result<ZLattice> {
    let one = Poly::one(graph.nvars);
    ZLattice::new(graph.clone(), vec![w], vec![Generator { degree: 0, entries: vec![one] }])
}

/// `w(beta)` for a vertex `w` of a regular graph.
fn act_on_root(graph: &MomentGraph, v: usize, beta: &Root) -> Result<Root> {
    let w = graph.vertices[v].element.as_ref().ok_or(Error::NotRegular)?;
    let mut r = beta.clone();
    for &i in w.word().iter().rev() {
        r = graph.roots.reflect_root(&graph.simples[i], &r)?;
    }
    Ok(r)
}

/// Translation through the wall `s`: the induction of the restriction.
///
/// Slots at `w` are the old slots at `w` followed by those at `ws`. The
/// lattice is spanned by `delta(g)` and `zeta delta(g)` where `delta` copies
/// a tuple to both slot copies and `zeta_w = h_{w(alpha_s)}`.
pub fn theta_s(m: &ZLattice, s: usize) -> Result<ZLattice> {
    let graph = &m.graph;
    if graph.coxeter.is_none() || graph.coset_of.is_some() {
        return Err(Error::NotRegular);
    }
    let r = m.slots.len();
    let mut partner = Vec::with_capacity(r);
    for &v in &m.slots {
        let u = graph.right_mul(v, s)?.ok_or_else(|| {
            Error::BoundTooSmall(format!(
                "truncation not closed under right multiplication at {}",
                graph.vertices[v].label
            ))
        })?;
        partner.push(u);
    }
    let mut slots = m.slots.clone();
    slots.extend(&partner);
    let beta = graph.simples.get(s).ok_or_else(|| Error::Precondition(format!("no generator {}", s + 1)))?;
    let mut zeta: HashMap<usize, Poly> = HashMap::new();
    for &v in &slots {
        if let std::collections::hash_map::Entry::Vacant(e) = zeta.entry(v) {
            let root = act_on_root(graph, v, beta)?;
            e.insert(Poly::linear(&graph.roots.linear_form(&root)));
        }
    }
    let mut candidates = Vec::new();
    for g in &m.gens {
        let mut e = g.entries.clone();
        e.extend(g.entries.iter().cloned());
        let ze: Vec<Poly> = slots.iter().zip(&e).map(|(v, p)| zeta[v].mul(p)).collect();
        candidates.push(Generator { degree: g.degree, entries: e });
        candidates.push(Generator { degree: g.degree + 1, entries: ze });
    }
    let out = ZLattice::generated(graph.clone(), slots, candidates, true)?.sorted_slots();
    if out.rank() != 2 * m.rank() {
        return Err(Error::NotFree(format!("translation has rank {} instead of {}", out.rank(), 2 * m.rank())));
    }
    Ok(out)
}

/// `theta_{s_n} ... theta_{s_1}` applied to the lattice at the identity.
pub fn bott_samelson(graph: &Arc<MomentGraph>, word: &[usize]) -> Result<ZLattice> {
    if !graph.dominant_base {
        return Err(Error::Precondition("Bott-Samelson lattices need the dominant element as base".into()));
    }
    let e = graph
        .vertex_of_element(&crate::coxeter::Element::identity())
        .ok_or(Error::NotRegular)?;
    let mut m = verma_zmodule(graph, e)?;
    for &s in word {
        m = theta_s(&m, s)?;
    }
    Ok(m)
}
