use bodycad_core::fixtures;
use bodycad_core::geometry::Scalar;
use bodycad_core::linalg;
use bodycad_core::model::{cad_graph_of, primitive_graph_of, Framework};
use bodycad_core::rigidity::{
    analyze, analyze_with, annihilates_trivial_motions, assemble, perturb_audit, rank, trivial_basis, FlexBasis, Mode,
};
use bodycad_core::sparsity::{nested_tight, NestedCounts};
use bodycad_core::synth::random_framework;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus(seed: u64, count: usize) -> Vec<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_framework(&mut rng, 4, 7)).collect()
}

#[test]
fn dice_minus_e3_is_minimally_rigid() {
    let r = analyze(&fixtures::dice_minus_e3()).unwrap();
    assert_eq!((r.rows, r.rank, r.dof), (6, 6, 0));
    assert!(r.is_rigid && r.is_minimally_rigid && !r.is_overconstrained);
    assert!(r.redundant_rows.is_empty());
}

#[test]
fn line_coincidence_variants() {
    let one = analyze(&fixtures::dice_one_line_coincidence()).unwrap();
    assert_eq!((one.rows, one.rank, one.dof), (4, 4, 2));
    // the two flexes: slide along the shared z-line through (0,1,0) and turn about it
    let FlexBasis::Exact(flex) = &one.flex_basis else {
        panic!()
    };
    let mut with_flex = assemble(&fixtures::dice_one_line_coincidence()).unwrap().rows;
    let slide = [0, 0, 1, 0, 0, 0];
    // rotation about the line: omega = e_z, v = -omega x p = (1,0,0) for p=(0,1,0); starred (v, -omega)
    let turn = [1, 0, 0, 0, 0, -1];
    for motion in [slide, turn] {
        let x: Vec<Scalar> = motion
            .iter()
            .chain([0i64; 6].iter())
            .map(|&k| Scalar::from_integer(k.into()))
            .collect();
        assert!(linalg::mat_vec(&with_flex, &x).iter().all(Zero::is_zero));
    }
    with_flex.extend(trivial_basis(2));
    with_flex.extend(flex.iter().cloned());
    assert_eq!(linalg::rank(&with_flex), 12);

    let two = analyze(&fixtures::dice_two_line_coincidences()).unwrap();
    assert_eq!((two.rows, two.rank, two.dof), (8, 6, 0));
    assert!(two.is_rigid && two.is_overconstrained);
    for k in 0..2 {
        let r = analyze(&fixtures::dice_two_line_coincidences().without(k)).unwrap();
        assert!(!r.is_rigid);
        assert_eq!(r.dof, 2);
    }
}

#[test]
fn counterexample_has_one_translational_flex() {
    let fw = fixtures::counterexample();
    let r = analyze(&fw).unwrap();
    assert_eq!((r.rows, r.rank, r.dof), (12, 11, 1));
    let FlexBasis::Exact(flex) = &r.flex_basis else {
        panic!()
    };
    let x = &flex[0];
    let block = |b: usize| &x[6 * b..6 * b + 6];
    // A and B move together; C moves relative to them by a pure x-translation
    assert_eq!(block(0), block(1));
    let rel: Vec<Scalar> = block(2).iter().zip(block(0)).map(|(c, a)| c - a).collect();
    assert!(!rel[0].is_zero());
    assert!(rel[1..].iter().all(Zero::is_zero));
    let h = primitive_graph_of(&cad_graph_of(&fw)).to_multigraph();
    assert!(nested_tight(&h, NestedCounts::body_and_cad()).unwrap());
}

#[test]
fn trivial_motions_are_always_in_the_kernel() {
    for fw in corpus(21, 60) {
        let m = assemble(&fw).unwrap();
        assert!(annihilates_trivial_motions(&m));
        assert_eq!(m.width(), 6 * fw.body_count());
        let r = analyze(&fw).unwrap();
        assert!(r.trivial_kernel_ok);
        assert_eq!(r.flex_basis.len(), r.dof);
        assert!(r.rank <= r.rows.min(6 * r.n - 6));
    }
}

#[test]
fn verdict_definitions_are_consistent() {
    let mut frameworks = corpus(22, 60);
    frameworks.extend(fixtures::corpus().into_iter().map(|(_, fw)| fw));
    for fw in frameworks {
        let r = analyze(&fw).unwrap();
        let full = 6 * r.n - 6;
        assert_eq!(r.is_minimally_rigid, r.rank == r.rows && r.rows == full);
        assert_eq!(r.is_rigid, r.rank == full);
        assert_eq!(r.is_overconstrained, r.rows > r.rank);
        assert_eq!(r.dof, full - r.rank);
        assert_eq!(r.redundant_rows.len(), r.rows - r.rank);
        let m = assemble(&fw).unwrap();
        let kept: Vec<_> = (0..r.rows)
            .filter(|k| !r.redundant_rows.contains(k))
            .map(|k| m.rows[k].clone())
            .collect();
        assert_eq!(linalg::rank(&kept), r.rank);
        for &k in &r.redundant_rows {
            let mut without = m.rows.clone();
            without.remove(k);
            assert_eq!(linalg::rank(&without), r.rank);
        }
        let component_dof: usize = r.components.iter().map(|c| c.dof).sum();
        assert_eq!(r.dof, component_dof + 6 * (r.components.len() - 1));
        if r.is_minimally_rigid {
            let h = primitive_graph_of(&cad_graph_of(&fw)).to_multigraph();
            assert!(nested_tight(&h, NestedCounts::body_and_cad()).unwrap());
        }
    }
}

#[test]
fn float_mode_matches_exact_rank() {
    for fw in corpus(23, 40) {
        let exact = analyze(&fw).unwrap();
        let float = analyze_with(&fw, Mode::Float { tolerance: 1e-9 }).unwrap();
        assert_eq!(exact.rank, float.rank);
        assert_eq!(exact.flex_basis.len(), float.flex_basis.len());
    }
}

#[test]
fn perturbation_audit_on_fixtures() {
    let audit = perturb_audit(&fixtures::dice_minus_e3(), 4, 3).unwrap();
    assert_eq!(audit.base_rank, 6);
    assert_eq!(audit.trial_ranks.len(), 4);
    let flexible = perturb_audit(&Framework::with_bodies(["A", "B"]), 2, 3).unwrap();
    assert!(!flexible.rank_changed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn appending_constraints_never_lowers_rank(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fw = random_framework(&mut rng, 4, 8);
        let mut prefix = Framework { bodies: fw.bodies.clone(), constraints: Vec::new() };
        let mut last = 0;
        for c in &fw.constraints {
            prefix.push(c.clone());
            let r = rank(&assemble(&prefix).unwrap());
            prop_assert!(r >= last);
            last = r;
        }
    }
}
