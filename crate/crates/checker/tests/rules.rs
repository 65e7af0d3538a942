use certcanon_checker::{verify_ints, verify_proof, Backend, Checker, Reason};
use certcanon_core::emitter::{emit_during, emit_post};
use certcanon_core::proof::{decode_ints, encode_ints, Rule};
use certcanon_core::search::{canonical_form, SearchOptions};
use certcanon_core::{Coloring, Graph, Permutation};

fn c4() -> Graph {
    Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

fn k3() -> Graph {
    Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
}

fn col(c: &[u32]) -> Coloring {
    Coloring::from_colors(c.to_vec()).unwrap()
}

#[test]
fn premise_gate() {
    let g = c4();
    let unit = Coloring::unit(4);
    let mut ch = Checker::new(&g, &unit, Backend::Flat);
    let target = Rule::TargetCell { nu: vec![], pi: unit.clone() };
    assert_eq!(ch.apply(&target).unwrap_err().reason, Reason::MissingPremise);
    ch.apply(&Rule::ColoringAxiom).unwrap();
    ch.apply(&Rule::Equitable { nu: vec![], pi: unit.clone() }).unwrap();
    ch.apply(&target).unwrap();
    assert_eq!(ch.facts(), 3);
}

#[test]
fn side_conditions_recomputed() {
    let g = c4();
    let unit = Coloring::unit(4);
    let mut ch = Checker::new(&g, &unit, Backend::Trie);
    ch.apply(&Rule::ColoringAxiom).unwrap();
    // C4 is regular: nothing to split
    let split = Rule::SplitColoring { nu: vec![], pi: unit.clone() };
    assert_eq!(ch.apply(&split).unwrap_err().reason, Reason::SideConditionFailed);
    ch.apply(&Rule::Equitable { nu: vec![], pi: unit.clone() }).unwrap();
    ch.apply(&Rule::Individualize { nu: vec![], v: 0, pi: unit.clone() }).unwrap();
    // [{0},{1,2,3}] is not equitable
    let bad = Rule::Equitable { nu: vec![0], pi: col(&[0, 1, 1, 1]) };
    assert_eq!(ch.apply(&bad).unwrap_err().reason, Reason::SideConditionFailed);
    ch.apply(&Rule::SplitColoring { nu: vec![0], pi: col(&[0, 1, 1, 1]) }).unwrap();
    ch.apply(&Rule::Equitable { nu: vec![0], pi: col(&[0, 2, 1, 2]) }).unwrap();
}

#[test]
fn automorphism_rules() {
    let g = c4();
    let unit = Coloring::unit(4);
    let mut ch = Checker::new(&g, &unit, Backend::Flat);
    let swap = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
    let not_aut = Permutation::from_images(vec![1, 0, 2, 3]).unwrap();
    ch.apply(&Rule::PruneAutomorphism { nu1: vec![0, 1], nu2: vec![0, 3], sigma: swap.clone() }).unwrap();
    let wrong_order = Rule::PruneAutomorphism { nu1: vec![0, 3], nu2: vec![0, 1], sigma: swap.clone() };
    assert_eq!(ch.apply(&wrong_order).unwrap_err().reason, Reason::SideConditionFailed);
    let fake = Rule::PruneAutomorphism { nu1: vec![0], nu2: vec![1], sigma: not_aut };
    assert_eq!(ch.apply(&fake).unwrap_err().reason, Reason::SideConditionFailed);

    ch.apply(&Rule::OrbitsAxiom { v: 1, nu: vec![0] }).unwrap();
    ch.apply(&Rule::OrbitsAxiom { v: 3, nu: vec![0] }).unwrap();
    let merge = Rule::MergeOrbits { omega1: vec![1], omega2: vec![3], nu: vec![0], sigma: swap, w1: 1, w2: 3 };
    ch.apply(&merge).unwrap();
    ch.apply(&Rule::PruneOrbits { omega: vec![1, 3], nu: vec![0], w1: 1, w2: 3 }).unwrap();
    let reversed = Rule::PruneOrbits { omega: vec![1, 3], nu: vec![0], w1: 3, w2: 1 };
    assert_eq!(ch.apply(&reversed).unwrap_err().reason, Reason::SideConditionFailed);
}

#[test]
fn c4_proof_accepted_with_expected_form() {
    let g = c4();
    let unit = Coloring::unit(4);
    let (result, _, proof) = emit_during(&g, &unit, Vec::new()).unwrap();
    let v = verify_proof(&g, &unit, &proof, Backend::Flat);
    assert!(v.accepted);
    assert_eq!(v.canonical.as_ref(), Some(&result.canonical));
    assert_eq!(v.canonical.unwrap().graph().edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
}

#[test]
fn cross_wired_proof_rejected() {
    let unit3 = Coloring::unit(3);
    let (_, _, proof) = emit_during(&k3(), &unit3, Vec::new()).unwrap();
    let v = verify_proof(&c4(), &Coloring::unit(4), &proof, Backend::Flat);
    assert!(!v.accepted);
    assert_eq!(v.failure.unwrap().reason, Reason::NEndMismatch);
}

#[test]
fn byte_flips_never_yield_a_different_form() {
    let g = c4();
    let unit = Coloring::unit(4);
    let r = canonical_form(&g, &unit, SearchOptions::default());
    let (_, proof) = emit_post(&g, &unit, &r, Vec::new()).unwrap();
    for i in 0..proof.len() {
        for bit in 0..8 {
            let mut bad = proof.clone();
            bad[i] ^= 1 << bit;
            let v = verify_proof(&g, &unit, &bad, Backend::Flat);
            if v.accepted {
                assert_eq!(v.canonical.as_ref(), Some(&r.canonical));
            }
        }
    }
}

#[test]
fn empty_and_headerless_streams() {
    let g = c4();
    let unit = Coloring::unit(4);
    assert_eq!(verify_ints(&g, &unit, &[], Backend::Flat).failure.unwrap().reason, Reason::Decode);
    let only_n = verify_ints(&g, &unit, &[4], Backend::Flat);
    assert_eq!(only_n.failure.unwrap().reason, Reason::NoCanonicalFact);
    let bytes = encode_ints(&[4, 99]).unwrap();
    let v = verify_proof(&g, &unit, &bytes, Backend::Trie);
    assert_eq!(v.failure.unwrap().reason, Reason::Decode);
    assert_eq!(decode_ints(&bytes).unwrap(), vec![4, 99]);
}

#[test]
fn parameter_errors_are_reported_as_such() {
    let g = c4();
    let unit = Coloring::unit(4);
    // PruneParent with a descending cell
    let v = verify_ints(&g, &unit, &[4, 13, 0, 2, 3, 1], Backend::Flat);
    let f = v.failure.unwrap();
    assert_eq!(f.reason, Reason::MalformedParameter);
    assert_eq!(f.rule_index, Some(0));
}
