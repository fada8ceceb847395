//! Block data of a weight: integral roots, the integral Weyl group as a
//! Coxeter system, stabilizer, truncated orbit, criticality and level.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::coxeter::{self, CoxeterMatrix, CoxeterSystem, Label};
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::rootdata::{CartanDatum, CartanKind, Root, RootSystem, Weight};

pub const DEFAULT_HEIGHT_BOUND: usize = 20;
pub const DEFAULT_LENGTH_BOUND: usize = 8;

/// Step cap for the walks towards the dominant/antidominant element.
const WALK_CAP: usize = 10_000;
/// Element cap when enumerating a stabilizer.
const STAB_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub height: usize,
    pub length: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { height: DEFAULT_HEIGHT_BOUND, length: DEFAULT_LENGTH_BOUND }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelClass {
    DominantContaining,
    AntidominantContaining,
    NeitherDetected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelInfo {
    pub class: LevelClass,
    /// Word (in integral simple reflections) and weight of the dominant
    /// element, when detected.
    pub dominant: Option<(Vec<usize>, Weight)>,
    pub antidominant: Option<(Vec<usize>, Weight)>,
    /// `(lambda + rho, delta)` for affine type.
    pub shifted_level: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    /// Positive integral roots `beta` with `(lambda + rho, beta) = 0`.
    pub singular_roots: Vec<Root>,
    /// Indices into the integral simple roots that fix `lambda`.
    pub simple_indices: Vec<usize>,
    /// Group order when finite and enumerable.
    pub order: Option<usize>,
    pub finite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitVertex {
    /// Reduced word in integral simple reflections (0-based).
    pub word: Vec<usize>,
    pub weight: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    NotDetermined,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    /// Generator bijection witnessing the Coxeter isomorphism.
    pub bijection: Option<Vec<usize>>,
    pub reason: String,
}

/// All real roots (both signs, height within the bound) with
/// `2 (lambda + rho, beta) / (beta, beta)` integral.
pub fn integral_roots(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Root>> {
    let shifted = lambda.add(&rs.rho());
    let mut out = Vec::new();
    for beta in rs.positive_real_roots() {
        if rational::is_integer(&rs.coroot_pairing(&shifted, beta)?) {
            out.push(beta.clone());
            out.push(beta.negate());
        }
    }
    Ok(out)
}

/// Integral simple roots of a set of positive integral roots, computed by
/// two criteria that must agree on the truncated set. In the sum criterion
/// one summand may be a positive imaginary root.
pub fn integral_simples(rs: &RootSystem, positive: &[Root]) -> Result<Vec<Root>> {
    let set: HashSet<&Vec<i64>> = positive.iter().map(|r| &r.simple_coords).collect();
    let by_sum: Vec<&Root> = positive
        .iter()
        .filter(|beta| {
            !positive.iter().chain(rs.positive_imaginary_roots()).any(|g| {
                let rest: Vec<i64> =
                    beta.simple_coords.iter().zip(&g.simple_coords).map(|(b, c)| b - c).collect();
                rest.iter().all(|&x| x >= 0) && set.contains(&rest)
            })
        })
        .collect();
    let mut by_definition = Vec::new();
    for alpha in positive {
        let mut ok = true;
        for beta in positive {
            if beta == alpha {
                continue;
            }
            if !rs.reflect_root(alpha, beta)?.is_positive() {
                ok = false;
                break;
            }
        }
        if ok {
            by_definition.push(alpha);
        }
    }
    if by_sum != by_definition {
        return Err(Error::BoundTooSmall(format!(
            "integral simple roots disagree at height bound {}: {} vs {} candidates",
            rs.height_bound,
            by_sum.len(),
            by_definition.len()
        )));
    }
    Ok(by_sum.into_iter().cloned().collect())
}

fn coxeter_matrix_of(rs: &RootSystem, simples: &[Root]) -> Result<CoxeterMatrix> {
    let k = simples.len();
    let mut m = vec![vec![Label::Finite(1); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let p = rs.cartan_pairing(&simples[i], &simples[j])?
                    * rs.cartan_pairing(&simples[j], &simples[i])?;
                m[i][j] = coxeter::label_from_product(p);
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct BlockData {
    pub roots: RootSystem,
    pub base_weight: Weight,
    pub bounds: Bounds,
    pub integral_positive_roots: Vec<Root>,
    pub integral_simples: Vec<Root>,
    pub coxeter_matrix: CoxeterMatrix,
    /// Present when every Coxeter label is crystallographic.
    pub coxeter: Option<CoxeterSystem>,
    pub stabilizer: Stabilizer,
    pub orbit: Vec<OrbitVertex>,
    /// Whether the orbit was exhausted before reaching the length bound.
    pub orbit_complete: bool,
    pub level: LevelInfo,
}

impl BlockData {
    pub fn new(cartan: CartanDatum, lambda: Weight, bounds: Bounds) -> Result<Self> {
        if bounds.height == 0 || bounds.length == 0 {
            return Err(Error::Precondition("bounds must be positive".into()));
        }
        let roots = RootSystem::new(cartan, bounds.height)?;
        Self::from_roots(roots, lambda, bounds)
    }

    pub fn from_roots(roots: RootSystem, lambda: Weight, bounds: Bounds) -> Result<Self> {
        roots.form(&lambda, &lambda)?;
        let integral_positive_roots: Vec<Root> = integral_roots(&roots, &lambda)?
            .into_iter()
            .filter(Root::is_positive)
            .collect();
        let integral_simples = integral_simples(&roots, &integral_positive_roots)?;
        let coxeter_matrix = coxeter_matrix_of(&roots, &integral_simples)?;
        let coxeter = if coxeter_matrix.is_empty() {
            None
        } else {
            CoxeterSystem::new(coxeter_matrix.clone()).ok()
        };
        let mut block = BlockData {
            roots,
            base_weight: lambda,
            bounds,
            integral_positive_roots,
            integral_simples,
            coxeter_matrix,
            coxeter,
            stabilizer: Stabilizer { singular_roots: vec![], simple_indices: vec![], order: Some(1), finite: true },
            orbit: Vec::new(),
            orbit_complete: false,
            level: LevelInfo { class: LevelClass::NeitherDetected, dominant: None, antidominant: None, shifted_level: None },
        };
        block.stabilizer = block.compute_stabilizer()?;
        let (orbit, complete) = block.compute_orbit()?;
        block.orbit = orbit;
        block.orbit_complete = complete;
        block.level = block.compute_level()?;
        Ok(block)
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.roots.cartan
    }

    pub fn rank(&self) -> usize {
        self.integral_simples.len()
    }

    pub fn is_regular(&self) -> bool {
        self.stabilizer.singular_roots.is_empty()
    }

    pub fn is_critical(&self) -> Result<bool> {
        match self.cartan().kind {
            CartanKind::Finite => Ok(false),
            CartanKind::Affine => Ok(self.roots.shifted_level(&self.base_weight)?.unwrap().is_zero()),
            CartanKind::Indefinite => Err(Error::Undecidable(
                "imaginary roots of indefinite type are not modelled".into(),
            )),
        }
    }

    pub fn require_noncritical(&self) -> Result<()> {
        if self.is_critical()? {
            Err(Error::Critical)
        } else {
            Ok(())
        }
    }

    /// `w . x` for a word in the integral simple reflections.
    pub fn dot(&self, word: &[usize], x: &Weight) -> Result<Weight> {
        let mut w = x.clone();
        for &i in word.iter().rev() {
            let beta = self
                .integral_simples
                .get(i)
                .ok_or_else(|| Error::Precondition(format!("letter {} out of range", i + 1)))?;
            w = self.roots.dot_reflect(beta, &w)?;
        }
        Ok(w)
    }

    fn compute_stabilizer(&self) -> Result<Stabilizer> {
        let shifted = self.base_weight.add(&self.roots.rho());
        let mut singular = Vec::new();
        for beta in &self.integral_positive_roots {
            if self.roots.form_weight_root(&shifted, beta)?.is_zero() {
                singular.push(beta.clone());
            }
        }
        let simple_indices: Vec<usize> = self
            .integral_simples
            .iter()
            .enumerate()
            .filter(|(_, b)| singular.contains(b))
            .map(|(i, _)| i)
            .collect();
        if singular.is_empty() {
            return Ok(Stabilizer { singular_roots: singular, simple_indices, order: Some(1), finite: true });
        }
        // Faithful permutation action on the singular root subsystem.
        let all: Vec<Root> = singular.iter().cloned().chain(singular.iter().map(Root::negate)).collect();
        let index: HashMap<&Root, usize> = all.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut gens = Vec::new();
        for beta in &singular {
            let mut perm = Vec::with_capacity(all.len());
            for gamma in &all {
                match index.get(&self.roots.reflect_root(beta, gamma)?) {
                    Some(&i) => perm.push(i),
                    None => {
                        return Ok(Stabilizer { singular_roots: singular, simple_indices, order: None, finite: false })
                    }
                }
            }
            gens.push(perm);
        }
        let identity: Vec<usize> = (0..all.len()).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > STAB_CAP {
                        return Ok(Stabilizer { singular_roots: singular, simple_indices, order: None, finite: false });
                    }
                    frontier.push(q);
                }
            }
        }
        Ok(Stabilizer { singular_roots: singular, simple_indices, order: Some(seen.len()), finite: true })
    }

    fn compute_orbit(&self) -> Result<(Vec<OrbitVertex>, bool)> {
        let mut seen: HashSet<Weight> = HashSet::from([self.base_weight.clone()]);
        let mut out = vec![OrbitVertex { word: vec![], weight: self.base_weight.clone() }];
        let mut layer = out.clone();
        let mut complete = false;
        for depth in 0..=self.bounds.length {
            let mut next = Vec::new();
            for v in &layer {
                for (i, beta) in self.integral_simples.iter().enumerate() {
                    let w = self.roots.dot_reflect(beta, &v.weight)?;
                    if seen.contains(&w) {
                        continue;
                    }
                    if depth == self.bounds.length {
                        // a new weight beyond the bound exists
                        return Ok((self.canonical_orbit(out), false));
                    }
                    seen.insert(w.clone());
                    let mut word = vec![i];
                    word.extend_from_slice(&v.word);
                    next.push(OrbitVertex { word, weight: w });
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        Ok((self.canonical_orbit(out), complete))
    }

    fn canonical_orbit(&self, mut orbit: Vec<OrbitVertex>) -> Vec<OrbitVertex> {
        if let Some(sys) = &self.coxeter {
            for v in orbit.iter_mut() {
                let el = sys.element(&v.word).expect("letters in range");
                if el.length() == v.word.len() {
                    v.word = el.word().to_vec();
                }
            }
        }
        orbit.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        orbit
    }

    pub fn vertex_of_weight(&self, w: &Weight) -> Option<usize> {
        self.orbit.iter().position(|v| &v.weight == w)
    }

    pub fn vertex_of_word(&self, word: &[usize]) -> Option<usize> {
        let w = self.dot(word, &self.base_weight).ok()?;
        self.vertex_of_weight(&w)
    }

    /// Walks along simple reflections that raise (`up`) or lower the weight
    /// until no integral simple root pairs negatively (resp. positively).
    fn walk(&self, up: bool) -> Result<Option<(Vec<usize>, Weight)>> {
        let rho = self.roots.rho();
        let mut x = self.base_weight.clone();
        let mut word: Vec<usize> = Vec::new();
        for _ in 0..WALK_CAP {
            let mut step = None;
            for (i, beta) in self.integral_simples.iter().enumerate() {
                let p = self.roots.coroot_pairing(&x.add(&rho), beta)?;
                if (up && p.is_negative()) || (!up && p.is_positive()) {
                    step = Some(i);
                    break;
                }
            }
            match step {
                None => return Ok(Some((word, x))),
                Some(i) => {
                    x = self.roots.dot_reflect(&self.integral_simples[i], &x)?;
                    word.insert(0, i);
                }
            }
        }
        Ok(None)
    }

    fn compute_level(&self) -> Result<LevelInfo> {
        let shifted_level = self.roots.shifted_level(&self.base_weight)?;
        let (want_dom, want_anti) = match self.cartan().kind {
            CartanKind::Finite => (true, true),
            CartanKind::Affine => {
                let l = shifted_level.clone().unwrap();
                (l.is_positive(), l.is_negative())
            }
            CartanKind::Indefinite => (false, false),
        };
        let certify = |found: Option<(Vec<usize>, Weight)>, dominant: bool| -> Result<Option<(Vec<usize>, Weight)>> {
            let Some((word, x)) = found else { return Ok(None) };
            for v in &self.orbit {
                let ok = if dominant { self.roots.leq(&v.weight, &x)? } else { self.roots.leq(&x, &v.weight)? };
                if !ok {
                    return Ok(None);
                }
            }
            Ok(Some((word, x)))
        };
        let dominant = if want_dom { certify(self.walk(true)?, true)? } else { None };
        let antidominant = if want_anti { certify(self.walk(false)?, false)? } else { None };
        let class = if dominant.is_some() {
            LevelClass::DominantContaining
        } else if antidominant.is_some() {
            LevelClass::AntidominantContaining
        } else {
            LevelClass::NeitherDetected
        };
        Ok(LevelInfo { class, dominant, antidominant, shifted_level })
    }

    pub fn classify_level(&self) -> &LevelInfo {
        &self.level
    }

    /// `<lambda + rho, beta^vee> >= 0` for every integral simple root.
    pub fn base_is_dominant(&self) -> Result<bool> {
        self.base_sign_test(|p| !p.is_negative())
    }

    pub fn base_is_antidominant(&self) -> Result<bool> {
        self.base_sign_test(|p| !p.is_positive())
    }

    fn base_sign_test(&self, f: impl Fn(&Q) -> bool) -> Result<bool> {
        let x = self.base_weight.add(&self.roots.rho());
        for beta in &self.integral_simples {
            if !f(&self.roots.coroot_pairing(&x, beta)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same block based at its dominant element, or at its antidominant
    /// element when no dominant one was detected.
    pub fn anchored(&self) -> Result<BlockData> {
        let target = self
            .level
            .dominant
            .as_ref()
            .or(self.level.antidominant.as_ref())
            .ok_or_else(|| Error::LevelUndetected("no dominant or antidominant element".into()))?;
        if target.1 == self.base_weight {
            return Ok(self.clone());
        }
        BlockData::from_roots(self.roots.clone(), target.1.clone(), self.bounds)
    }

    /// Block of `-2 rho - lambda`.
    pub fn tilt(&self) -> Result<BlockData> {
        let rho2 = self.roots.rho().scale(&rational::q(2));
        let t = rho2.add(&self.base_weight).neg();
        BlockData::from_roots(self.roots.clone(), t, self.bounds)
    }

    pub fn integral_root_set(&self) -> BTreeSet<Vec<i64>> {
        self.integral_positive_roots.iter().map(|r| r.simple_coords.clone()).collect()
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let critical = self.is_critical().ok();
        let level = &self.level;
        Ok(json!({
            "cartan": self.cartan().to_json_value(),
            "base_weight": serde_json::to_value(&self.base_weight).expect("weight"),
            "integral_simples": self.integral_simples.iter().map(|r| r.simple_coords.clone()).collect::<Vec<_>>(),
            "integral_positive_roots": self.integral_positive_roots.len(),
            "coxeter_matrix": self.coxeter_matrix.iter().map(|r| r.iter().map(|l| l.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "stabilizer_order": self.stabilizer.order,
            "stabilizer_finite": self.stabilizer.finite,
            "stabilizer_generators": self.stabilizer.simple_indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "regular": self.is_regular(),
            "critical": critical,
            "kind": self.cartan().kind,
            "level_class": level.class,
            "has_dominant": level.dominant.is_some(),
            "has_antidominant": level.antidominant.is_some(),
            "shifted_level": level.shifted_level.as_ref().map(rational::format_q),
            "orbit_complete": self.orbit_complete,
            "height_bound": self.bounds.height,
            "length_bound": self.bounds.length,
            "orbit": self.orbit.iter().map(|v| json!({
                "word": coxeter::format_word(&v.word),
                "weight": serde_json::to_value(&v.weight).expect("weight"),
            })).collect::<Vec<_>>(),
        }))
    }
}

/// Sufficient test for an equivalence of blocks: matching level classes,
/// isomorphic Coxeter systems, and stabilizers that correspond under the
/// isomorphism. No converse is claimed, hence `NotDetermined` otherwise.
pub fn equivalence_check(a: &BlockData, b: &BlockData) -> Result<EquivalenceReport> {
    a.require_noncritical()?;
    b.require_noncritical()?;
    let nd = |reason: &str| EquivalenceReport { verdict: Verdict::NotDetermined, bijection: None, reason: reason.into() };
    let (la, lb) = (&a.level, &b.level);
    let dominant = la.dominant.is_some() && lb.dominant.is_some();
    let antidominant = la.antidominant.is_some() && lb.antidominant.is_some();
    if !dominant && !antidominant {
        return Ok(nd("level classes do not match"));
    }
    if !a.stabilizer.finite || !b.stabilizer.finite {
        return Ok(nd("stabilizer not finite"));
    }
    let k = a.rank();
    if k != b.rank() {
        return Ok(nd("Coxeter systems have different ranks"));
    }
    if k > 8 {
        return Err(Error::Unsupported("more than 8 integral simple roots".into()));
    }
    // Stabilizers at the common anchor.
    let (aa, ba) = if dominant {
        (anchor_at(a, la.dominant.as_ref().unwrap())?, anchor_at(b, lb.dominant.as_ref().unwrap())?)
    } else {
        (anchor_at(a, la.antidominant.as_ref().unwrap())?, anchor_at(b, lb.antidominant.as_ref().unwrap())?)
    };
    let sa: BTreeSet<usize> = aa.stabilizer.simple_indices.iter().copied().collect();
    let sb: BTreeSet<usize> = ba.stabilizer.simple_indices.iter().copied().collect();
    if aa.stabilizer.singular_roots.len() != ba.stabilizer.singular_roots.len() {
        return Ok(nd("stabilizers differ"));
    }
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let matrix_ok = (0..k).all(|i| (0..k).all(|j| a.coxeter_matrix[i][j] == b.coxeter_matrix[perm[i]][perm[j]]));
        let stab_ok = sa.iter().map(|&i| perm[i]).collect::<BTreeSet<_>>() == sb;
        if matrix_ok && stab_ok {
            return Ok(EquivalenceReport {
                verdict: Verdict::Equivalent,
                bijection: Some(perm),
                reason: "hypotheses verified".into(),
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(nd("no Coxeter isomorphism matching the stabilizers"))
}

fn anchor_at(block: &BlockData, target: &(Vec<usize>, Weight)) -> Result<BlockData> {
    if target.1 == block.base_weight {
        Ok(block.clone())
    } else {
        BlockData::from_roots(block.roots.clone(), target.1.clone(), block.bounds)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
