use std::collections::BTreeMap;
use std::sync::Arc;

use blocko::blocks::{BlockData, Bounds};
use blocko::kl::BlockKL;
use blocko::rootdata::{CartanDatum, Weight};
use blocko::zmod::decompose::{char_at_one, decompose, graded_char, isomorphic_up_to_shift, Projectives};
use blocko::zmod::graph::{MomentGraph, DEFAULT_DEGREE_BOUND};
use blocko::zmod::hom::{compose, hom_graded, HomMap};
use blocko::zmod::lattice::{bott_samelson, theta_s, verma_zmodule, Generator, ZLattice};
use blocko::zmod::poly::Poly;
use blocko::zmod::{singular_reduce, structure_algebra, subalgebra_member};
use blocko::Q;

fn graph(letter: &str, n: usize) -> Arc<MomentGraph> {
    let block = BlockData::new(CartanDatum::finite(letter, n).unwrap(), Weight::zero(n), Bounds::default()).unwrap();
    MomentGraph::from_block(&block, DEFAULT_DEGREE_BOUND).unwrap()
}

fn v(g: &MomentGraph, label: &str) -> usize {
    g.vertex_by_label(label).unwrap_or_else(|| panic!("no vertex {label}"))
}

fn labelled(m: &ZLattice) -> BTreeMap<String, usize> {
    m.labelled_multiplicities()
}

fn mults(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|(k, n)| (k.to_string(), *n)).collect()
}

fn edge_label(g: &MomentGraph, a: usize, b: usize) -> Poly {
    g.edges.iter().find(|e| (e.a, e.b) == (a, b) || (e.a, e.b) == (b, a)).unwrap().label.clone()
}

#[test]
fn a1_structure_algebra_basis() {
    let g = graph("A", 1);
    let (e, s) = (v(&g, "e"), v(&g, "1"));
    let z = structure_algebra(&g, &[e, s]).unwrap();
    assert_eq!(z.rank(), 2);
    assert_eq!(z.degrees(), vec![0, 2]);
    let h = edge_label(&g, e, s);
    let one = Poly::one(g.nvars);
    let expected = ZLattice::new(
        g.clone(),
        z.slots.clone(),
        vec![
            Generator { degree: 0, entries: vec![one.clone(), one] },
            Generator { degree: 1, entries: if z.slots[0] == e { vec![h, Poly::zero()] } else { vec![Poly::zero(), h] } },
        ],
    )
    .unwrap();
    assert!(z.same_span(&expected));
    let single = structure_algebra(&g, &[e]).unwrap();
    assert_eq!(single.rank(), 1);
    assert_eq!(single.degrees(), vec![0]);
}

#[test]
fn a2_structure_algebra_rank_and_congruences() {
    let g = graph("A", 2);
    let all: Vec<usize> = (0..g.len()).collect();
    let z = structure_algebra(&g, &all).unwrap();
    assert_eq!(z.rank(), 6);
    for gen in &z.gens {
        for edge in &g.edges {
            let ia = z.slots.iter().position(|&x| x == edge.a).unwrap();
            let ib = z.slots.iter().position(|&x| x == edge.b).unwrap();
            let diff = gen.entries[ia].sub(&gen.entries[ib]);
            assert!(diff.div_linear(&edge.label).1.is_zero());
        }
    }
    // lower cones also have full rank
    for w in 0..g.len() {
        let cone: Vec<usize> = (0..g.len()).filter(|&x| g.weight_leq(w, x)).collect();
        assert_eq!(structure_algebra(&g, &cone).unwrap().rank(), cone.len());
    }
}

#[test]
fn coset_membership() {
    let g = graph("A", 2);
    let all: Vec<usize> = (0..g.len()).collect();
    let c = Poly::constant(g.nvars, Q::from_integer(3.into()));
    assert!(subalgebra_member(&g, &all, &vec![c; 6], 0).unwrap());
    let x = Poly::var(g.nvars, 0);
    let y = Poly::var(g.nvars, 1);
    let mut t = vec![Poly::zero(); 6];
    for (label, p) in [("e", &x), ("1", &x), ("2", &y), ("2 1", &y), ("1 2", &x.add(&y)), ("1 2 1", &x.add(&y))] {
        t[v(&g, label)] = p.clone();
    }
    assert!(subalgebra_member(&g, &all, &t, 0).unwrap());
    t[v(&g, "1")] = y.clone();
    assert!(!subalgebra_member(&g, &all, &t, 0).unwrap());

    let g1 = graph("A", 1);
    let z = structure_algebra(&g1, &[0, 1]).unwrap();
    let h = z.gens.iter().find(|x| x.degree == 1).unwrap();
    assert!(!subalgebra_member(&g1, &z.slots, &h.entries, 0).unwrap());
}

#[test]
fn theta_of_verma_is_the_structure_algebra() {
    for (letter, n) in [("A", 1), ("A", 2), ("B", 2)] {
        let g = graph(letter, n);
        let e = v(&g, "e");
        let t = theta_s(&verma_zmodule(&g, e).unwrap(), 0).unwrap();
        let z = structure_algebra(&g, &[e, v(&g, "1")]).unwrap();
        let z = ZLattice::new(g.clone(), z.slots.clone(), z.gens.clone()).unwrap().sorted_slots();
        assert_eq!(t.slots, z.slots);
        assert!(t.same_span(&z));
    }
}

#[test]
fn theta_multiplicity_rule() {
    let g = graph("A", 2);
    let mut inputs: Vec<ZLattice> = (0..g.len()).map(|w| verma_zmodule(&g, w).unwrap()).collect();
    inputs.push(bott_samelson(&g, &[0]).unwrap());
    inputs.push(bott_samelson(&g, &[0, 1]).unwrap());
    for m in &inputs {
        for s in 0..2 {
            let t = theta_s(m, s).unwrap();
            assert_eq!(t.rank(), 2 * m.rank());
            let old = m.multiplicities();
            let new = t.multiplicities();
            for w in 0..g.len() {
                let ws = g.right_mul(w, s).unwrap().unwrap();
                let expect = old.get(&w).unwrap_or(&0) + old.get(&ws).unwrap_or(&0);
                assert_eq!(*new.get(&w).unwrap_or(&0), expect);
            }
        }
    }
    let bs = bott_samelson(&g, &[0, 1, 0]).unwrap();
    assert_eq!(bs.rank(), 8);
    assert_eq!(labelled(&bs), mults(&[("e", 2), ("1", 2), ("2", 1), ("2 1", 1), ("1 2", 1), ("1 2 1", 1)]));
    let tt = theta_s(&theta_s(&bs, 1).unwrap(), 1).unwrap();
    assert_eq!(tt.rank(), 32);
}

#[test]
fn action_stability() {
    let g = graph("A", 2);
    let all: Vec<usize> = (0..g.len()).collect();
    let z = structure_algebra(&g, &all).unwrap();
    for m in [bott_samelson(&g, &[0, 1]).unwrap(), bott_samelson(&g, &[0, 1, 0]).unwrap()] {
        for zg in z.gens.iter().filter(|x| x.degree <= 3) {
            let values = z.slots.iter().copied().zip(zg.entries.iter().cloned()).collect();
            for gen in &m.gens {
                let moved = m.act(&values, &gen.entries).unwrap();
                assert!(m.contains(&moved, gen.degree + zg.degree));
            }
        }
    }
}

#[test]
fn graded_characters() {
    let g = graph("A", 1);
    let e = v(&g, "e");
    let ch = graded_char(&verma_zmodule(&g, e).unwrap()).unwrap();
    assert_eq!(ch.len(), 1);
    assert_eq!(ch[&e].to_string(), "1");
    let z = structure_algebra(&g, &[0, 1]).unwrap();
    let ch = graded_char(&z).unwrap();
    assert_eq!(ch[&e].to_string(), "1");
    assert_eq!(ch[&v(&g, "1")].to_string(), "q^2");
}

/// The subgeneric picture: `P` at `{e, s}` with the two rank-one lattices.
#[test]
fn subgeneric_relations() {
    let g = graph("A", 1);
    let (e, s) = (v(&g, "e"), v(&g, "1"));
    let p = ZLattice::clone(&structure_algebra(&g, &[e, s]).unwrap());
    let me = verma_zmodule(&g, e).unwrap();
    let ms = verma_zmodule(&g, s).unwrap();
    let h = edge_label(&g, e, s);
    for d in -6..=6 {
        assert!(hom_graded(&me, &ms, d).unwrap().is_empty());
        assert!(hom_graded(&ms, &me, d).unwrap().is_empty());
    }
    let one_map = |m: &ZLattice, n: &ZLattice, d: i64| {
        let b = hom_graded(m, n, d).unwrap();
        assert_eq!(b.len(), 1, "hom space of degree {d}");
        b[0].clone()
    };
    let a0 = one_map(&me, &p, 2);
    let b = one_map(&p, &me, 0);
    let c0 = one_map(&ms, &p, 2);
    let d = one_map(&p, &ms, 0);
    assert!(hom_graded(&me, &p, 0).unwrap().is_empty());
    let normalize = |f: &HomMap, back: &HomMap, m: &ZLattice| {
        let comp = compose(f, back);
        let (mono, hc) = h.terms().iter().next().unwrap();
        let c = comp.matrix[0][0].coeff(mono) / hc;
        let f = f.scale(&(Q::from_integer(1.into()) / c));
        assert_eq!(compose(&f, back), HomMap::scalar(m, &h, 2));
        f
    };
    let a = normalize(&a0, &b, &me);
    let c = normalize(&c0, &d, &ms);
    assert!(compose(&a, &d).is_zero());
    assert!(compose(&c, &b).is_zero());
    assert_eq!(compose(&b, &a).add(&compose(&d, &c)), HomMap::scalar(&p, &h, 2));

    // End(P) is spanned by the identity and a o b, with (a o b)^2 = h (a o b)
    assert_eq!(hom_graded(&p, &p, 0).unwrap().len(), 1);
    assert_eq!(hom_graded(&p, &p, 2).unwrap().len(), 2);
    let j = compose(&b, &a);
    let j2 = compose(&j, &j);
    assert_eq!(j2, compose(&j, &HomMap::scalar(&p, &h, 2)));
}

#[test]
fn decompose_examples() {
    let g = graph("A", 2);
    let e = v(&g, "e");
    let m = verma_zmodule(&g, e).unwrap();
    assert_eq!(decompose(&m).unwrap().len(), 1);
    let mm = m.direct_sum(&m).unwrap();
    let parts = decompose(&mm).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(isomorphic_up_to_shift(&parts[0], &parts[1]).unwrap(), Some(0));

    let bs = bott_samelson(&g, &[0, 1, 0]).unwrap();
    let mut parts: Vec<BTreeMap<String, usize>> = decompose(&bs).unwrap().iter().map(labelled).collect();
    parts.sort_by_key(|p| p.len());
    assert_eq!(parts[0], mults(&[("e", 1), ("1", 1)]));
    assert_eq!(parts[1], mults(&[("e", 1), ("1", 1), ("2", 1), ("2 1", 1), ("1 2", 1), ("1 2 1", 1)]));
}

#[test]
fn krull_schmidt() {
    let g = graph("A", 2);
    let m = bott_samelson(&g, &[0, 1]).unwrap();
    let n = bott_samelson(&g, &[0, 1, 0]).unwrap();
    let key = |ls: Vec<ZLattice>| {
        let mut k: Vec<_> = ls.iter().map(|l| graded_char(l).unwrap().into_iter().map(|(v, p)| (v, p.to_string())).collect::<Vec<_>>()).collect();
        k.sort();
        k
    };
    let mut separate = decompose(&m).unwrap();
    separate.extend(decompose(&n).unwrap());
    assert_eq!(key(decompose(&m.direct_sum(&n).unwrap()).unwrap()), key(separate));
}

#[test]
fn projectives_match_kl() {
    for (letter, n) in [("A", 1), ("A", 2), ("B", 2)] {
        let block = BlockData::new(CartanDatum::finite(letter, n).unwrap(), Weight::zero(n), Bounds::default()).unwrap();
        let g = MomentGraph::from_block(&block, DEFAULT_DEGREE_BOUND).unwrap();
        let kl = BlockKL::new(block.clone()).unwrap();
        let proj = Projectives::new(g.clone()).unwrap();
        for w in 0..g.len() {
            let p = proj.identify(w).unwrap();
            let ch: BTreeMap<usize, i64> = char_at_one(&graded_char(&p).unwrap());
            let expect = kl.projective_multiplicities(w).unwrap();
            assert_eq!(ch, expect, "{letter}{n} projective at {}", g.vertices[w].label);
        }
        if letter == "A" && n == 1 {
            let z = structure_algebra(&g, &[0, 1]).unwrap();
            assert!(proj.identify(1).unwrap().same_span(&z));
        }
    }
}

#[test]
fn singular_reduction() {
    let g = graph("A", 2);
    let proj = Projectives::new(g.clone()).unwrap();
    let p = proj.identify(v(&g, "1")).unwrap();
    let parts = singular_reduce(&p, Some(0)).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0].rank(), 1);
    assert_eq!(singular_reduce(&p, None).unwrap().len(), 1);

    let g1 = graph("A", 1);
    let p1 = Projectives::new(g1.clone()).unwrap().identify(1).unwrap();
    let parts = singular_reduce(&p1, Some(0)).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|x| x.rank() == 1));
}

#[test]
fn json_round_trip() {
    let g = graph("A", 2);
    let bs = bott_samelson(&g, &[0, 1]).unwrap();
    let back = ZLattice::from_json(g.clone(), &bs.to_json()).unwrap();
    assert!(back.same_span(&bs));
    assert_eq!(back.slots, bs.slots);
}
