//! Coxeter systems given by a Coxeter matrix.
//!
//! Elements are identified through a linear representation whose matrix
//! entries are integers: for labels `m in {2, 3, 4, 6, inf}` we choose
//! `k_ij * k_ji = 4 cos^2(pi / m)` (resp. `4` for `inf`), so the contragredient
//! action on integer vectors is exact. The orbit map `w -> w(rho*)` of the
//! interior point `rho* = (1, ..., 1)` is injective, and the signs of the
//! coordinates of `w(rho*)` are the left descents of `w`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An entry of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            Label::Finite(m) => serde_json::Value::from(m),
            Label::Infinite => serde_json::Value::from("inf"),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Label> {
        match v {
            serde_json::Value::String(s) if s == "inf" => Ok(Label::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|m| Label::Finite(m as u32))
                .ok_or_else(|| Error::Parse(format!("bad Coxeter label {v}"))),
            _ => Err(Error::Parse(format!("bad Coxeter label {v}"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

pub type CoxeterMatrix = Vec<Vec<Label>>;

/// A group element stored as its ShortLex normal form (0-based letters).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    word: Vec<usize>,
}

impl Element {
    pub fn identity() -> Self {
        Element { word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Space separated 1-based letters; empty for the identity.
    pub fn to_text(&self) -> String {
        format_word(&self.word)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.to_text())
        }
    }
}

pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses `"2 1 3 2"` into 0-based letters; `"e"` is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s.trim() == "e" {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad generator index {t:?}"))),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    /// `s_i(alpha_j) = alpha_j - k[i][j] alpha_i`.
    k: Vec<Vec<i64>>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Precondition("a Coxeter system needs a generator".into()));
        }
        let mut k = vec![vec![0i64; n]; n];
        for i in 0..n {
            if matrix[i].len() != n {
                return Err(Error::Parse("Coxeter matrix is not square".into()));
            }
            k[i][i] = 2;
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::Parse("Coxeter matrix is not symmetric".into()));
                }
                let (a, b) = match matrix[i][j] {
                    Label::Finite(2) => (0, 0),
                    Label::Finite(3) => (-1, -1),
                    Label::Finite(4) => (-1, -2),
                    Label::Finite(6) => (-1, -3),
                    Label::Infinite => (-2, -2),
                    Label::Finite(m) if m < 2 => {
                        return Err(Error::Parse(format!("off-diagonal label {m} < 2")))
                    }
                    Label::Finite(m) => {
                        return Err(Error::Unsupported(format!(
                            "Coxeter label {m} is not crystallographic"
                        )))
                    }
                };
                if i < j {
                    k[i][j] = a;
                    k[j][i] = b;
                }
            }
        }
        Ok(CoxeterSystem { matrix, k })
    }

    /// Coxeter matrix of a finite Weyl group given by a Cartan matrix.
    pub fn from_cartan(a: &[Vec<i64>]) -> Result<Self> {
        let n = a.len();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Label::Finite(1) } else { label_from_product(a[i][j] * a[j][i]) })
                    .collect()
            })
            .collect();
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    fn apply_letter(&self, i: usize, v: &mut [i64]) {
        let vi = v[i];
        for (j, x) in v.iter_mut().enumerate() {
            *x -= self.k[i][j] * vi;
        }
    }

    /// `w(rho*)` for a word (letters applied right to left).
    fn orbit_vector(&self, word: &[usize]) -> Vec<i64> {
        let mut v = vec![1i64; self.rank()];
        for &i in word.iter().rev() {
            self.apply_letter(i, &mut v);
        }
        v
    }

    fn normal_form(&self, mut v: Vec<i64>) -> Element {
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            word.push(i);
            self.apply_letter(i, &mut v);
        }
        Element { word }
    }

    pub fn element(&self, word: &[usize]) -> Result<Element> {
        if let Some(&i) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::Precondition(format!("generator {} out of range", i + 1)));
        }
        Ok(self.normal_form(self.orbit_vector(word)))
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        self.element(&parse_word(s)?)
    }

    pub fn generator(&self, i: usize) -> Element {
        Element { word: vec![i] }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut v = self.orbit_vector(&b.word);
        for &i in a.word.iter().rev() {
            self.apply_letter(i, &mut v);
        }
        self.normal_form(v)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let rev: Vec<usize> = a.word.iter().rev().copied().collect();
        self.normal_form(self.orbit_vector(&rev))
    }

    pub fn lmul(&self, s: usize, w: &Element) -> Element {
        self.multiply(&self.generator(s), w)
    }

    pub fn rmul(&self, w: &Element, s: usize) -> Element {
        self.multiply(w, &self.generator(s))
    }

    pub fn length(&self, w: &Element) -> usize {
        w.length()
    }

    /// Length of an arbitrary word's product.
    pub fn word_length(&self, word: &[usize]) -> Result<usize> {
        Ok(self.element(word)?.length())
    }

    pub fn left_descents(&self, w: &Element) -> BTreeSet<usize> {
        let v = self.orbit_vector(&w.word);
        (0..self.rank()).filter(|&i| v[i] < 0).collect()
    }

    pub fn right_descents(&self, w: &Element) -> BTreeSet<usize> {
        self.left_descents(&self.inverse(w))
    }

    pub fn descents(&self, w: &Element) -> BTreeSet<usize> {
        self.right_descents(w)
    }

    /// Bruhat order via the lifting property: for a left descent `s` of `w`,
    /// `x <= w` iff `sx <= sw` (when `sx < x`) or `x <= sw` (when `sx > x`).
    pub fn bruhat_leq(&self, x: &Element, w: &Element) -> bool {
        if x.length() > w.length() {
            return false;
        }
        if x.is_identity() {
            return true;
        }
        let s = w.word[0];
        let sw = Element { word: w.word[1..].to_vec() };
        let sx = self.lmul(s, x);
        if sx.length() < x.length() {
            self.bruhat_leq(&sx, &sw)
        } else {
            self.bruhat_leq(x, &sw)
        }
    }

    /// All elements `y <= w`, sorted by length then word.
    pub fn lower_cone(&self, w: &Element) -> Vec<Element> {
        let mut set: BTreeSet<Element> = BTreeSet::from([Element::identity()]);
        for &s in w.word.iter().rev() {
            let shifted: Vec<Element> = set.iter().map(|y| self.lmul(s, y)).collect();
            set.extend(shifted);
        }
        sort_shortlex(set.into_iter().collect())
    }

    /// Lower cone with a loud failure when `l(w)` exceeds the bound.
    pub fn lower_cone_bounded(&self, w: &Element, length_bound: usize) -> Result<Vec<Element>> {
        if w.length() > length_bound {
            return Err(Error::BoundTooSmall(format!(
                "l({w}) = {} exceeds length bound {length_bound}",
                w.length()
            )));
        }
        Ok(self.lower_cone(w))
    }

    /// The Bruhat interval `[x, w]`.
    pub fn interval(&self, x: &Element, w: &Element) -> Vec<Element> {
        if !self.bruhat_leq(x, w) {
            return Vec::new();
        }
        self.lower_cone(w).into_iter().filter(|y| self.bruhat_leq(x, y)).collect()
    }

    /// All elements of length at most `bound`, sorted ShortLex.
    pub fn elements_up_to(&self, bound: usize) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
        let mut layer = vec![Element::identity()];
        let mut out = vec![Element::identity()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..self.rank() {
                    let sw = self.lmul(s, w);
                    if sw.length() > w.length() && seen.insert(sw.clone()) {
                        next.push(sw);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        sort_shortlex(out)
    }

    /// Upper cone `{y >= w : l(y) <= bound}`.
    pub fn upper_cone(&self, w: &Element, bound: usize) -> Vec<Element> {
        self.elements_up_to(bound).into_iter().filter(|y| self.bruhat_leq(w, y)).collect()
    }

    /// Whether the group is finite, decided by exhausting elements up to
    /// `bound`; returns the group if so.
    pub fn all_elements(&self, bound: usize) -> Option<Vec<Element>> {
        let els = self.elements_up_to(bound + 1);
        (els.iter().all(|e| e.length() <= bound)).then_some(els)
    }

    /// Minimal length representatives of `W / <J>` of length at most `bound`.
    pub fn coset_min_reps(&self, j: &[usize], bound: usize) -> Vec<Element> {
        self.elements_up_to(bound)
            .into_iter()
            .filter(|w| j.iter().all(|&s| self.rmul(w, s).length() > w.length()))
            .collect()
    }

    /// Multiplicative order of `s_i s_j`, searched up to `cap`.
    pub fn product_order(&self, i: usize, j: usize, cap: usize) -> Option<usize> {
        let st = self.element(&[i, j]).ok()?;
        let mut p = st.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = self.multiply(&p, &st);
        }
        None
    }
}

pub fn label_from_product(p: i64) -> Label {
    match p {
        0 => Label::Finite(2),
        1 => Label::Finite(3),
        2 => Label::Finite(4),
        3 => Label::Finite(6),
        _ => Label::Infinite,
    }
}

pub fn sort_shortlex(mut v: Vec<Element>) -> Vec<Element> {
    v.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
    v
}
