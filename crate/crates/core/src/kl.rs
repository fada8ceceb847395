//! Kazhdan-Lusztig and inverse Kazhdan-Lusztig polynomials, simple
//! characters in terms of Verma characters, decomposition numbers and
//! projective multiplicities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::blocks::BlockData;
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::rational::{self, Q};
use crate::rootdata::{CartanKind, Weight};

/// Dense integer polynomial in `q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        IntPoly(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        IntPoly(v)
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(v)
    }

    pub fn eval_one(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (k, a) {
                (0, _) => a.to_string(),
                (1, 1) => "q".to_string(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{k}"),
                _ => format!("{a}q^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a polynomial in q: {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == t.len() => (1, rest),
                _ => return Err(bad()),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (c, k) = match term.find('q') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some(i) => {
                    let c = if i == 0 { 1 } else { term[..i].parse::<i64>().map_err(|_| bad())? };
                    let e = &term[i + 1..];
                    let k = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += sign * c;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

/// Memoized Kazhdan-Lusztig polynomials of a Coxeter system.
#[derive(Debug)]
pub struct KLTable {
    sys: CoxeterSystem,
    p: RwLock<HashMap<(Element, Element), IntPoly>>,
    q: RwLock<HashMap<(Element, Element), IntPoly>>,
    cones: RwLock<HashMap<Element, Arc<Vec<Element>>>>,
}

impl KLTable {
    pub fn new(sys: CoxeterSystem) -> Self {
        KLTable {
            sys,
            p: RwLock::new(HashMap::new()),
            q: RwLock::new(HashMap::new()),
            cones: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn lower_cone(&self, w: &Element) -> Arc<Vec<Element>> {
        if let Some(c) = self.cones.read().unwrap().get(w) {
            return c.clone();
        }
        let c = Arc::new(self.sys.lower_cone(w));
        self.cones.write().unwrap().insert(w.clone(), c.clone());
        c
    }

    /// `P_{x,w}`.
    pub fn kl_poly(&self, x: &Element, w: &Element) -> IntPoly {
        if x == w {
            return IntPoly::one();
        }
        if !self.sys.bruhat_leq(x, w) {
            return IntPoly::zero();
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.p.read().unwrap().get(&key) {
            return p.clone();
        }
        let s = w.word()[0];
        let v = self.sys.lmul(s, w);
        let sx = self.sys.lmul(s, x);
        let c = usize::from(sx.length() < x.length());
        let mut p = self.kl_poly(&sx, &v).shift(1 - c).add(&self.kl_poly(x, &v).shift(c));
        for z in self.lower_cone(&v).iter() {
            if z == &v || self.sys.lmul(s, z).length() > z.length() || !self.sys.bruhat_leq(x, z) {
                continue;
            }
            let m = self.mu(z, &v);
            if m != 0 {
                let k = (w.length() - z.length()) / 2;
                p = p.sub(&self.kl_poly(x, z).shift(k).scale(m));
            }
        }
        self.p.write().unwrap().insert(key, p.clone());
        p
    }

    /// Coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`.
    pub fn mu(&self, x: &Element, w: &Element) -> i64 {
        let (lx, lw) = (x.length(), w.length());
        if lx >= lw || (lw - lx) % 2 == 0 {
            return 0;
        }
        self.kl_poly(x, w).coeff((lw - lx - 1) / 2)
    }

    /// Fills the memo for every pair of the given elements, layer by layer
    /// in the length of the upper element.
    pub fn fill(&self, elements: &[Element]) {
        let mut by_len: BTreeMap<usize, Vec<&Element>> = BTreeMap::new();
        for w in elements {
            by_len.entry(w.length()).or_default().push(w);
        }
        for ws in by_len.values() {
            let pairs: Vec<(&Element, &Element)> =
                ws.iter().flat_map(|w| elements.iter().map(move |x| (x, *w))).collect();
            par::map(&pairs, |(x, w)| self.kl_poly(x, w));
        }
    }

    /// `Q_{w,y}`, defined by `sum_z (-1)^{l(z)-l(w)} Q_{w,z} P_{z,y} = delta_{w,y}`
    /// over the interval `[w, y]`.
    pub fn inverse_kl(&self, w: &Element, y: &Element, length_bound: usize) -> Result<IntPoly> {
        if y.length() > length_bound {
            return Err(Error::BoundTooSmall(format!(
                "l({y}) = {} exceeds length bound {length_bound}",
                y.length()
            )));
        }
        Ok(self.inverse_kl_unbounded(w, y))
    }

    fn inverse_kl_unbounded(&self, w: &Element, y: &Element) -> IntPoly {
        if w == y {
            return IntPoly::one();
        }
        if !self.sys.bruhat_leq(w, y) {
            return IntPoly::zero();
        }
        let key = (w.clone(), y.clone());
        if let Some(q) = self.q.read().unwrap().get(&key) {
            return q.clone();
        }
        let mut acc = IntPoly::zero();
        for z in self.lower_cone(y).iter() {
            if z == y || !self.sys.bruhat_leq(w, z) {
                continue;
            }
            let term = self.inverse_kl_unbounded(w, z).mul(&self.kl_poly(z, y));
            acc = acc.add(&term.scale(sign(z.length() - w.length())));
        }
        let q = acc.scale(-sign(y.length() - w.length()));
        self.q.write().unwrap().insert(key, q.clone());
        q
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// `ch L(w.l) = sum_{y >= w} (-1)^{l(y)-l(w)} Q_{w,y}(1) ch M(y.l)`.
    Dominant,
    /// `ch L(w.l) = sum_{y <= w} (-1)^{l(w)-l(y)} P_{y,w}(1) ch M(y.l)`.
    Antidominant,
}

/// Integer combination of Verma characters indexed by orbit vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    pub terms: BTreeMap<usize, i64>,
    /// Set when further terms may lie beyond the orbit truncation.
    pub truncated: bool,
}

impl CharacterVector {
    pub fn to_json(&self, block: &BlockData) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> =
            self.terms.iter().map(|(&y, &c)| (vertex_label(block, y), json!(c))).collect();
        json!({ "terms": terms, "truncated": self.truncated })
    }
}

pub fn vertex_label(block: &BlockData, v: usize) -> String {
    let w = &block.orbit[v].word;
    if w.is_empty() {
        "e".into()
    } else {
        crate::coxeter::format_word(w)
    }
}

/// KL data attached to a regular, non-critical block based at its dominant
/// or antidominant element.
#[derive(Debug)]
pub struct BlockKL {
    pub block: BlockData,
    pub form: Form,
    table: Option<KLTable>,
    elements: Vec<Element>,
    decomposition: OnceLock<Vec<Vec<i64>>>,
}

impl BlockKL {
    pub fn new(block: BlockData) -> Result<Self> {
        if block.cartan().kind == CartanKind::Indefinite {
            return Err(Error::Unsupported("character formulas need finite or affine type".into()));
        }
        block.require_noncritical()?;
        if !block.is_regular() {
            return Err(Error::NotRegular);
        }
        let form = if block.level.dominant.as_ref().is_some_and(|d| d.1 == block.base_weight) {
            Form::Dominant
        } else if block.level.antidominant.as_ref().is_some_and(|d| d.1 == block.base_weight) {
            Form::Antidominant
        } else {
            return Err(Error::Precondition(
                "base weight is neither the dominant nor the antidominant element".into(),
            ));
        };
        let (table, elements) = match &block.coxeter {
            Some(sys) => {
                let els = block
                    .orbit
                    .iter()
                    .map(|v| sys.element(&v.word))
                    .collect::<Result<Vec<_>>>()?;
                (Some(KLTable::new(sys.clone())), els)
            }
            None if block.rank() == 0 => (None, vec![Element::identity()]),
            None => return Err(Error::Unsupported("non-crystallographic Coxeter label".into())),
        };
        Ok(BlockKL { block, form, table, elements, decomposition: OnceLock::new() })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, v: usize) -> &Element {
        &self.elements[v]
    }

    pub fn table(&self) -> Option<&KLTable> {
        self.table.as_ref()
    }

    pub fn p(&self, y: usize, w: usize) -> IntPoly {
        match &self.table {
            Some(t) => t.kl_poly(&self.elements[y], &self.elements[w]),
            None => IntPoly::one(),
        }
    }

    pub fn q(&self, w: usize, y: usize) -> Result<IntPoly> {
        match &self.table {
            Some(t) => t.inverse_kl(&self.elements[w], &self.elements[y], self.block.bounds.length),
            None => Ok(IntPoly::one()),
        }
    }

    fn leq(&self, x: usize, w: usize) -> bool {
        match &self.table {
            Some(t) => t.system().bruhat_leq(&self.elements[x], &self.elements[w]),
            None => true,
        }
    }

    pub fn simple_character(&self, w: usize) -> Result<CharacterVector> {
        if w >= self.len() {
            return Err(Error::Precondition(format!("vertex {w} outside the orbit truncation")));
        }
        let lw = self.elements[w].length();
        let mut terms = BTreeMap::new();
        for y in 0..self.len() {
            let ly = self.elements[y].length();
            let c = match self.form {
                Form::Dominant if self.leq(w, y) => sign(ly - lw) * self.q(w, y)?.eval_one(),
                Form::Antidominant if self.leq(y, w) => sign(lw - ly) * self.p(y, w).eval_one(),
                _ => 0,
            };
            if c != 0 {
                terms.insert(y, c);
            }
        }
        let truncated = self.form == Form::Dominant && !self.block.orbit_complete;
        Ok(CharacterVector { terms, truncated })
    }

    /// `C[w][y]` with `ch L(w) = sum_y C[w][y] ch M(y)`.
    pub fn character_matrix(&self) -> Result<Vec<Vec<i64>>> {
        if let Some(t) = &self.table {
            t.fill(&self.elements);
        }
        let rows = par::map_range(self.len(), |w| self.simple_character(w));
        rows.into_iter()
            .map(|r| {
                let r = r?;
                let mut row = vec![0; self.len()];
                for (y, c) in r.terms {
                    row[y] = c;
                }
                Ok(row)
            })
            .collect()
    }

    /// `D[y][w] = [M(y) : L(w)]`, the inverse of the character matrix.
    pub fn decomposition_matrix(&self) -> Result<&Vec<Vec<i64>>> {
        if let Some(d) = self.decomposition.get() {
            return Ok(d);
        }
        let c = self.character_matrix()?;
        let cq: linalg::Matrix = c.iter().map(|r| r.iter().map(|&x| rational::q(x)).collect()).collect();
        let inv = linalg::inverse(&cq)
            .ok_or_else(|| Error::Decomposition("character matrix is singular".into()))?;
        // ch M = C^{-1} ch L, so [M(y):L(w)] = (C^{-1})[y][w].
        let d: Vec<Vec<i64>> = inv
            .iter()
            .map(|r| r.iter().map(|x| rational::to_i64(x).expect("unitriangular integer inverse")).collect())
            .collect();
        Ok(self.decomposition.get_or_init(|| d))
    }

    /// `(P(w) : M(y)) = [M(y) : L(w)]`.
    pub fn projective_multiplicities(&self, w: usize) -> Result<BTreeMap<usize, i64>> {
        if self.form != Form::Dominant {
            return Err(if self.block.level.dominant.is_some() {
                Error::Precondition("rebase the block at its dominant element".into())
            } else {
                Error::Precondition(
                    "no dominant element: projectives live in the tilted block, use tilt".into(),
                )
            });
        }
        let d = self.decomposition_matrix()?;
        Ok((0..self.len()).filter(|&y| d[y][w] != 0).map(|y| (y, d[y][w])).collect())
    }
}

/// `dim Hom(M(w.l), M(w'.l))`, which is 1 iff `w.l <= w'.l`.
pub fn verma_hom_dim(block: &BlockData, w: &Weight, w2: &Weight) -> Result<u8> {
    block.require_noncritical()?;
    if block.level.class == crate::blocks::LevelClass::NeitherDetected {
        return Err(Error::LevelUndetected("Verma embeddings need a dominant or antidominant block".into()));
    }
    if !block.base_is_dominant()? && !block.base_is_antidominant()? {
        return Err(Error::Precondition("base weight is neither dominant nor antidominant".into()));
    }
    Ok(u8::from(block.roots.leq(w, w2)?))
}

/// Number of ways to write `gamma` (simple-root coordinates) as an
/// N-combination of the given positive roots.
pub fn kostant_partition(positive: &[Vec<i64>], gamma: &[i64]) -> u64 {
    fn go(
        roots: &[Vec<i64>],
        i: usize,
        g: &mut Vec<i64>,
        memo: &mut HashMap<(usize, Vec<i64>), u64>,
    ) -> u64 {
        if g.iter().all(|&x| x == 0) {
            return 1;
        }
        if i == roots.len() || g.iter().any(|&x| x < 0) {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, g.clone())) {
            return v;
        }
        let key = (i, g.clone());
        let mut total = go(roots, i + 1, g, memo);
        let mut k = 0;
        loop {
            for (a, b) in g.iter_mut().zip(&roots[i]) {
                *a -= b;
            }
            k += 1;
            if g.iter().any(|&x| x < 0) {
                break;
            }
            total += go(roots, i + 1, g, memo);
        }
        for (a, b) in g.iter_mut().zip(&roots[i]) {
            *a += b * k;
        }
        memo.insert(key, total);
        total
    }
    go(positive, 0, &mut gamma.to_vec(), &mut HashMap::new())
}

/// Weight multiplicities of a character vector (finite type), exact for
/// every weight within `depth` (root height) of all contributing tops.
pub fn weight_multiplicities(block: &BlockData, cv: &CharacterVector, depth: i64) -> Result<BTreeMap<Weight, i64>> {
    if block.cartan().kind != CartanKind::Finite {
        return Err(Error::Unsupported("weight multiplicities are computed for finite type only".into()));
    }
    let rs = &block.roots;
    let positive: Vec<Vec<i64>> = rs.positive_real_roots().iter().map(|r| r.simple_coords.clone()).collect();
    let n = rs.rank();
    let mut gammas: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut frontier = gammas.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..n {
                let mut h = g.clone();
                h[i] += 1;
                if !gammas.contains(&h) && !next.contains(&h) {
                    next.push(h);
                }
            }
        }
        gammas.extend(next.iter().cloned());
        frontier = next;
    }
    let root_weight = |g: &[i64]| {
        let mut w = Weight::zero(n);
        for (i, &c) in g.iter().enumerate() {
            w = w.add(&rs.root_weight(&rs.simple_root(i)).scale(&rational::q(c)));
        }
        w
    };
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (&y, &c) in &cv.terms {
        let top = &block.orbit[y].weight;
        for g in &gammas {
            let k = kostant_partition(&positive, g) as i64;
            *out.entry(top.sub(&root_weight(g))).or_default() += c * k;
        }
    }
    let mut exact = BTreeMap::new();
    'weights: for (nu, m) in out {
        for &y in cv.terms.keys() {
            let diff = block.orbit[y].weight.sub(&nu);
            if let Some(coords) = rs.simple_coordinates(&diff)? {
                if coords.iter().all(|x| x.is_integer() && !x.is_negative()) {
                    let h: Q = coords.iter().sum();
                    if h.to_integer().to_i64().unwrap_or(i64::MAX) > depth {
                        continue 'weights;
                    }
                }
            }
        }
        if m != 0 {
            exact.insert(nu, m);
        }
    }
    Ok(exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::Bounds;
    use crate::coxeter::tests as cx;
    use crate::rootdata::CartanDatum;

    fn block(letter: &str, n: usize, lambda: &[i64]) -> BlockKL {
        let b = BlockData::new(CartanDatum::finite(letter, n).unwrap(), Weight::from_ints(lambda), Bounds::default())
            .unwrap();
        BlockKL::new(b).unwrap()
    }

    #[test]
    fn poly_text_round_trip() {
        for (s, v) in [("1+q", vec![1, 1]), ("0", vec![]), ("1-2q^3", vec![1, 0, 0, -2]), ("q^2", vec![0, 0, 1])] {
            let p = IntPoly::from_coeffs(v);
            assert_eq!(p.to_string(), s);
            assert_eq!(s.parse::<IntPoly>().unwrap(), p);
        }
        assert_eq!("2 + 3q".parse::<IntPoly>().unwrap().coeffs(), &[2, 3]);
        assert!("1+x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn dihedral_polys_are_one() {
        for sys in [cx::a2(), cx::b2(), cx::inf_dihedral()] {
            let t = KLTable::new(sys.clone());
            let els = sys.elements_up_to(6);
            for w in &els {
                for x in &els {
                    let expect = if sys.bruhat_leq(x, w) { IntPoly::one() } else { IntPoly::zero() };
                    assert_eq!(t.kl_poly(x, w), expect);
                }
            }
        }
    }

    #[test]
    fn s4_example() {
        let sys = cx::a3();
        let t = KLTable::new(sys.clone());
        let w = sys.element(&[1, 0, 2, 1]).unwrap();
        let x = sys.element(&[1]).unwrap();
        assert_eq!(t.kl_poly(&x, &w).to_string(), "1+q");
        assert_eq!(t.kl_poly(&w, &w), IntPoly::one());
        for y in sys.elements_up_to(2) {
            assert_eq!(t.inverse_kl(&Element::identity(), &y, 6).unwrap(), IntPoly::one());
        }
        assert!(matches!(t.inverse_kl(&Element::identity(), &w, 3), Err(Error::BoundTooSmall(_))));
    }

    #[test]
    fn a2_inverse_all_one() {
        let sys = cx::a2();
        let t = KLTable::new(sys.clone());
        let els = sys.elements_up_to(3);
        for w in &els {
            for y in &els {
                if sys.bruhat_leq(w, y) {
                    assert_eq!(t.inverse_kl(w, y, 3).unwrap(), IntPoly::one());
                }
            }
        }
    }

    #[test]
    fn a1_dominant_character() {
        let k = block("A", 1, &[0]);
        assert_eq!(k.form, Form::Dominant);
        let ch = k.simple_character(0).unwrap();
        assert_eq!(ch.terms, BTreeMap::from([(0, 1), (1, -1)]));
        assert_eq!(k.block.orbit[1].weight, Weight::from_ints(&[-2]));
        assert!(!ch.truncated);
        let m = weight_multiplicities(&k.block, &ch, 6).unwrap();
        assert_eq!(m.values().sum::<i64>(), 1);
        assert_eq!(m.get(&Weight::zero(1)), Some(&1));
    }

    #[test]
    fn antidominant_characters() {
        let k = block("A", 2, &[-2, -2]);
        assert_eq!(k.form, Form::Antidominant);
        assert_eq!(k.simple_character(0).unwrap().terms, BTreeMap::from([(0, 1)]));
        let ch = k.simple_character(5).unwrap();
        assert_eq!(ch.terms.len(), 6);
        for (&y, &c) in &ch.terms {
            assert_eq!(c, sign(3 - k.element(y).length()));
        }
        let d = k.decomposition_matrix().unwrap();
        for y in 0..6 {
            for w in 0..6 {
                let comparable = k.leq(w, y);
                assert_eq!(d[y][w], i64::from(comparable));
            }
        }
        assert!(matches!(k.projective_multiplicities(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn a1_decomposition_and_projectives() {
        let k = block("A", 1, &[-2]);
        assert_eq!(k.decomposition_matrix().unwrap(), &vec![vec![1, 0], vec![1, 1]]);
        let k = block("A", 1, &[0]);
        let d = k.decomposition_matrix().unwrap();
        assert_eq!(d, &vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(k.projective_multiplicities(1).unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn a2_projective_of_longest() {
        let k = block("A", 2, &[0, 0]);
        let w0 = (0..6).find(|&v| k.element(v).length() == 3).unwrap();
        let p = k.projective_multiplicities(w0).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.values().all(|&c| c == 1));
        assert_eq!(k.projective_multiplicities(w0).unwrap()[&w0], 1);
    }

    #[test]
    fn verma_homs() {
        let b = BlockData::new(CartanDatum::finite("A", 1).unwrap(), Weight::zero(1), Bounds::default()).unwrap();
        assert_eq!(verma_hom_dim(&b, &Weight::from_ints(&[-2]), &Weight::zero(1)).unwrap(), 1);
        assert_eq!(verma_hom_dim(&b, &Weight::zero(1), &Weight::from_ints(&[-2])).unwrap(), 0);
        let a2 = BlockData::new(CartanDatum::finite("A", 2).unwrap(), Weight::zero(2), Bounds::default()).unwrap();
        let s = a2.dot(&[0], &a2.base_weight).unwrap();
        let t = a2.dot(&[1], &a2.base_weight).unwrap();
        assert_eq!(verma_hom_dim(&a2, &s, &t).unwrap(), 0);
        assert_eq!(verma_hom_dim(&a2, &s, &s).unwrap(), 1);
    }

    #[test]
    fn singular_block_rejected() {
        let b = BlockData::new(CartanDatum::finite("A", 2).unwrap(), Weight::from_ints(&[-1, 0]), Bounds::default())
            .unwrap();
        assert_eq!(BlockKL::new(b).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn kostant_counts() {
        let a2 = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(kostant_partition(&a2, &[1, 1]), 2);
        assert_eq!(kostant_partition(&a2, &[2, 2]), 3);
        assert_eq!(kostant_partition(&a2, &[0, 0]), 1);
    }
}
