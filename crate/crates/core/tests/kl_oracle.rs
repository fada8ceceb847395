use std::collections::HashMap;

use blocko::blocks::{BlockData, Bounds};
use blocko::coxeter::{CoxeterSystem, Element, Label};
use blocko::kl::{BlockKL, IntPoly, KLTable};
use blocko::rootdata::{CartanDatum, Weight};
use proptest::prelude::*;

fn sys_of(letter: &str, n: usize) -> CoxeterSystem {
    CoxeterSystem::from_cartan(&CartanDatum::finite(letter, n).unwrap().matrix).unwrap()
}

fn inf_dihedral() -> CoxeterSystem {
    CoxeterSystem::new(vec![vec![Label::Finite(1), Label::Infinite], vec![Label::Infinite, Label::Finite(1)]]).unwrap()
}

/// R-polynomials from their own recursion, then P from
/// `q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<y<=w} R_{x,y} P_{y,w}`.
struct Oracle<'a> {
    sys: &'a CoxeterSystem,
    r: HashMap<(Element, Element), IntPoly>,
    p: HashMap<(Element, Element), IntPoly>,
}

impl<'a> Oracle<'a> {
    fn new(sys: &'a CoxeterSystem) -> Self {
        Oracle { sys, r: HashMap::new(), p: HashMap::new() }
    }

    fn r(&mut self, x: &Element, w: &Element) -> IntPoly {
        if !self.sys.bruhat_leq(x, w) {
            return IntPoly::zero();
        }
        if x == w {
            return IntPoly::one();
        }
        if let Some(v) = self.r.get(&(x.clone(), w.clone())) {
            return v.clone();
        }
        let s = *self.sys.left_descents(w).iter().next().unwrap();
        let sw = self.sys.lmul(s, w);
        let sx = self.sys.lmul(s, x);
        let v = if sx.length() < x.length() {
            self.r(&sx, &sw)
        } else {
            let qm1 = IntPoly::from_coeffs(vec![-1, 1]);
            qm1.mul(&self.r(x, &sw)).add(&self.r(&sx, &sw).shift(1))
        };
        self.r.insert((x.clone(), w.clone()), v.clone());
        v
    }

    fn p(&mut self, x: &Element, w: &Element) -> IntPoly {
        if !self.sys.bruhat_leq(x, w) {
            return IntPoly::zero();
        }
        if x == w {
            return IntPoly::one();
        }
        if let Some(v) = self.p.get(&(x.clone(), w.clone())) {
            return v.clone();
        }
        let d = w.length() - x.length();
        let mut s = IntPoly::zero();
        for y in self.sys.interval(x, w) {
            if &y != x {
                let t = self.r(x, &y).mul(&self.p(&y, w));
                s = s.add(&t);
            }
        }
        let keep: Vec<i64> = (0..=(d - 1) / 2).map(|k| -s.coeff(k)).collect();
        let v = IntPoly::from_coeffs(keep);
        self.p.insert((x.clone(), w.clone()), v.clone());
        v
    }
}

fn sign(k: isize) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_against_oracle(sys: &CoxeterSystem, bound: usize) {
    let t = KLTable::new(sys.clone());
    let mut o = Oracle::new(sys);
    let els = sys.elements_up_to(bound);
    t.fill(&els);
    for w in &els {
        for x in &els {
            let p = t.kl_poly(x, w);
            assert_eq!(p, o.p(x, w), "P_{{{x},{w}}}");
            assert!(p.coeffs().iter().all(|&c| c >= 0));
            if x != w && !p.is_zero() {
                assert!(2 * p.degree().unwrap() < w.length() - x.length());
            }
        }
    }
}

#[test]
fn recursion_matches_r_polynomial_oracle() {
    check_against_oracle(&sys_of("A", 3), 6);
    check_against_oracle(&sys_of("B", 3), 5);
    check_against_oracle(&sys_of("G", 2), 6);
    check_against_oracle(&inf_dihedral(), 6);
}

#[test]
fn s4_has_nontrivial_polynomial() {
    let sys = sys_of("A", 3);
    let t = KLTable::new(sys.clone());
    let nontrivial = sys
        .elements_up_to(6)
        .iter()
        .flat_map(|w| sys.lower_cone(w).into_iter().map(|x| t.kl_poly(&x, w)).collect::<Vec<_>>())
        .filter(|p| p.degree() == Some(1))
        .count();
    assert!(nontrivial > 0);
}

#[test]
fn inverse_polynomials_match_longest_element_symmetry() {
    for (l, n) in [("A", 3), ("B", 2), ("G", 2), ("B", 3)] {
        let sys = sys_of(l, n);
        let els = sys.all_elements(20).unwrap();
        let w0 = els.last().unwrap().clone();
        let t = KLTable::new(sys.clone());
        for x in &els {
            for y in &els {
                let q = t.inverse_kl(x, y, 20).unwrap();
                let p = t.kl_poly(&sys.multiply(&w0, y), &sys.multiply(&w0, x));
                assert_eq!(q, p, "Q_{{{x},{y}}} in {l}{n}");
            }
        }
    }
}

#[test]
fn signed_matrices_are_mutually_inverse() {
    for sys in [sys_of("A", 3), sys_of("B", 2), inf_dihedral()] {
        let els = sys.elements_up_to(5);
        let t = KLTable::new(sys.clone());
        for w in &els {
            for x in &els {
                let mut acc = IntPoly::zero();
                for y in &els {
                    let s = sign(y.length() as isize - w.length() as isize);
                    acc = acc.add(&t.inverse_kl(w, y, 5).unwrap().mul(&t.kl_poly(y, x)).scale(s));
                }
                let expect = if w == x { IntPoly::one() } else { IntPoly::zero() };
                assert_eq!(acc, expect);
            }
        }
    }
}

#[test]
fn dominant_character_then_decomposition_is_identity() {
    for (l, n, lam) in [("A", 2, vec![0, 0]), ("B", 2, vec![1, 0]), ("A", 3, vec![0, 0, 0])] {
        let b = BlockData::new(CartanDatum::finite(l, n).unwrap(), Weight::from_ints(&lam), Bounds::default()).unwrap();
        let k = BlockKL::new(b).unwrap();
        let c = k.character_matrix().unwrap();
        let d = k.decomposition_matrix().unwrap();
        let n = k.len();
        for w in 0..n {
            for x in 0..n {
                let e: i64 = (0..n).map(|y| c[w][y] * d[y][x]).sum();
                assert_eq!(e, i64::from(w == x));
                assert!(d[w][x] >= 0);
                assert_eq!(d[w][x], k.p(w, x).eval_one());
            }
        }
    }
}

#[test]
fn affine_truncated_decomposition() {
    let b = BlockData::new(CartanDatum::affine_a1(), Weight::from_ints(&[0, 0]), Bounds { height: 20, length: 5 }).unwrap();
    let k = BlockKL::new(b).unwrap();
    let d = k.decomposition_matrix().unwrap();
    for y in 0..k.len() {
        for w in 0..k.len() {
            let expect = i64::from(k.table().unwrap().system().bruhat_leq(k.element(y), k.element(w)));
            assert_eq!(d[y][w], expect);
        }
    }
    assert!(k.simple_character(0).unwrap().truncated);
}

proptest! {
    #[test]
    fn poly_text_round_trips(v in proptest::collection::vec(-5i64..6, 0..6)) {
        let p = IntPoly::from_coeffs(v);
        prop_assert_eq!(p.to_string().parse::<IntPoly>().unwrap(), p);
    }
}
