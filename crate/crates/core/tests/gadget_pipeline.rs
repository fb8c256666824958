use dcut_core::gadgets::tables::{
    check_dgraph_distance_table, check_sc_distance_table, retraction_table,
};
use dcut_core::gadgets::*;
use dcut_core::problems::{
    find_compaction_c4r, find_retraction_c4r, find_surjective_hom_c4r, oracle, witness,
};
use dcut_core::relational::{d_relation_pairs, d_structure, find_homomorphism};
use proptest::prelude::*;

fn r1_fixture() -> DInstance {
    DInstance::new(vec![0, 1], vec![(0, 1)], vec![], vec![], vec![]).unwrap()
}

/// Small random instances: 1..=3 elements, 1..=4 tuples, every element
/// covered.
fn arb_instance() -> impl Strategy<Value = DInstance> {
    (1usize..=3).prop_flat_map(|k| {
        let tuple = (1usize..=4, 0..k, 0..k);
        proptest::collection::vec(tuple, 1..=4).prop_map(move |tuples| {
            let mut rels: [Vec<(usize, usize)>; 4] = Default::default();
            for (rel, p, q) in tuples {
                rels[rel - 1].push((p, q));
            }
            let [r1, r2, r3, r4] = rels;
            DInstance::new((0..k).collect(), r1, r2, r3, r4).unwrap()
        })
        .prop_filter("every element covered", |a| {
            a.elements().iter().all(|&e| a.is_covered(e))
        })
    })
}

#[test]
fn single_pair_fixture_counts_and_claims() {
    let a = r1_fixture();
    let d = build_d_graph(&a).unwrap();
    assert_eq!((d.graph().n(), d.graph().edge_count()), (10, 22));
    assert_eq!(d.graph().diameter(), Some(2));
    assert_eq!(d.graph().find_dominating_non_edge(), Some((0, 2)));
    check_dgraph_distance_table(&d).unwrap();

    let sc = build_semi_compactor(d);
    assert_eq!(sc.graph().n(), 35);
    assert_eq!(sc.graph().diameter(), Some(2));
    assert_eq!(sc.graph().find_dominating_non_edge(), Some((0, 2)));
    check_sc_distance_table(&sc).unwrap();
}

#[test]
fn compactor_has_diameter_three_where_the_semicompactor_has_two() {
    let a = r1_fixture();
    let d = build_d_graph(&a).unwrap();
    let compactor = build_compactor(d.graph(), *d.h()).unwrap();
    assert_eq!(compactor.graph.diameter(), Some(3));
    let sc = build_semi_compactor(d);
    assert_eq!(sc.graph().diameter(), Some(2));
}

#[test]
fn homomorphism_free_instance_has_no_retraction() {
    // diagonal pair in both R3 and R4: no homomorphism exists
    let a = DInstance::new(vec![0], vec![], vec![], vec![(0, 0)], vec![(0, 0)]).unwrap();
    assert!(find_instance_homomorphism(&a).unwrap().is_none());
    let d = build_d_graph(&a).unwrap();
    assert!(find_retraction_c4r(d.graph(), *d.h()).unwrap().is_none());
    // cross-checked by plain enumeration on this small gadget
    assert!(oracle::retraction_by_enumeration(d.graph(), *d.h())
        .unwrap()
        .is_none());
}

#[test]
fn single_pair_fixture_retracts() {
    let a = r1_fixture();
    let d = build_d_graph(&a).unwrap();
    let found = find_retraction_c4r(d.graph(), *d.h()).unwrap();
    assert!(found.is_some());
}

#[test]
fn every_table_row_produces_a_valid_retraction() {
    for relation in 1..=4 {
        // row keys are exactly the relation's pairs
        let mut keys: Vec<(usize, usize)> = retraction_table(relation)
            .iter()
            .map(|((p, q), _)| (*p as usize, *q as usize))
            .collect();
        keys.sort();
        let mut expected = d_relation_pairs(relation).to_vec();
        expected.sort();
        assert_eq!(keys, expected);

        for &((p_label, q_label), _) in retraction_table(relation) {
            let mut rels: [Vec<(usize, usize)>; 4] = Default::default();
            rels[relation - 1].push((0, 1));
            let [r1, r2, r3, r4] = rels.clone();
            let a = DInstance::new(vec![0, 1], r1, r2, r3, r4).unwrap();
            let d = build_d_graph(&a).unwrap();
            let hom =
                DHom::new([(0, p_label), (1, q_label)].into_iter().collect()).unwrap();
            let ret = extend_hom_to_retraction(&a, &d, &hom).unwrap();
            assert!(witness::check_retraction_c4r(d.graph(), *d.h(), &ret));
        }
    }
}

#[test]
fn spec_table_row_examples() {
    use dcut_core::gadgets::tables::retraction_row;
    assert_eq!(retraction_row(1, 0, 3), Some([0, 1, 3, 0]));
    assert_eq!(retraction_row(2, 3, 1), Some([3, 2, 2, 1]));
    assert_eq!(retraction_row(4, 1, 1), Some([0, 1, 2, 1]));
    assert_eq!(retraction_row(1, 0, 0), None);
}

#[test]
fn semicompactor_extension_spec_rows() {
    use dcut_core::gadgets::tables::semi_extension_row;
    let row = semi_extension_row(0, 1).unwrap();
    assert_eq!(
        (row.u_tail, row.u_head, row.w_tail, row.w_head, row.y_tail, row.y_head),
        (0, 1, 3, 2, 3, 1)
    );
    assert_eq!(row.x_choices, &[1]);
    assert_eq!(semi_extension_row(3, 2).unwrap().x_choices, &[3]);
    assert_eq!(semi_extension_row(2, 2).unwrap().x_choices, &[1, 2]);
}

#[test]
fn all_retractions_of_small_gadgets_extend_over_the_semicompactor() {
    // every retraction of each single-pair gadget graph extends; the two
    // forbidden rows never fire
    for relation in 1..=4 {
        let mut rels: [Vec<(usize, usize)>; 4] = Default::default();
        rels[relation - 1].push((0, 1));
        let [r1, r2, r3, r4] = rels;
        let a = DInstance::new(vec![0, 1], r1, r2, r3, r4).unwrap();
        let sc = reduce_instance(&a).unwrap();
        let base = sc.base();
        let n = base.graph().n();
        let free: Vec<usize> = (4..n).collect();
        let mut labels = vec![0u8; n];
        for (i, l) in (0..4).zip(0..4u8) {
            labels[i] = l;
        }
        let mut checked = 0;
        for code in 0..4u32.pow(free.len() as u32) {
            let mut c = code;
            for &v in &free {
                labels[v] = (c % 4) as u8;
                c /= 4;
            }
            let hom = dcut_core::problems::C4rHom {
                labels: labels.clone(),
            };
            if !witness::check_retraction_c4r(base.graph(), *base.h(), &hom) {
                continue;
            }
            checked += 1;
            let extended = extend_retraction_to_semicompactor(&sc, &hom).unwrap();
            assert!(witness::check_retraction_c4r(sc.graph(), *base.h(), &extended));
        }
        assert!(checked > 0, "relation {relation} had retractions to extend");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gadget_lemma_claims_hold(a in arb_instance()) {
        let d = build_d_graph(&a).unwrap();
        verify_dgraph_structure(&d).unwrap();
        prop_assert_eq!(d.graph().diameter(), Some(2));
        prop_assert!(!d.graph().adjacent(0, 2));
        prop_assert!(d.graph().is_dominating_pair(0, 2));
        check_dgraph_distance_table(&d).map_err(|e| TestCaseError::fail(e))?;
    }

    #[test]
    fn retraction_theorem_on_random_instances(a in arb_instance()) {
        let d = build_d_graph(&a).unwrap();
        let hom = find_homomorphism(&a.to_structure(), &d_structure()).unwrap();
        let retraction = find_retraction_c4r(d.graph(), *d.h()).unwrap();
        prop_assert_eq!(hom.is_some(), retraction.is_some());
        if let Some(mapping) = hom {
            let labeled = DHom::from_mapping(&a, &mapping);
            let extended = extend_hom_to_retraction(&a, &d, &labeled).unwrap();
            prop_assert!(witness::check_retraction_c4r(d.graph(), *d.h(), &extended));
            let back = restrict_retraction_to_hom(&a, &d, &extended).unwrap();
            prop_assert_eq!(back, labeled);
        }
        if let Some(found) = retraction {
            // restriction of any found retraction is a homomorphism
            restrict_retraction_to_hom(&a, &d, &found).unwrap();
        }
    }

    #[test]
    fn semicompactor_equivalences_on_random_instances(a in arb_instance()) {
        prop_assume!(a.total_tuples() <= 2);
        let sc = reduce_instance(&a).unwrap();
        verify_semicompactor_structure(&sc).unwrap();
        prop_assert_eq!(sc.graph().diameter(), Some(2));
        check_sc_distance_table(&sc).map_err(|e| TestCaseError::fail(e))?;

        let base_found = find_retraction_c4r(sc.base().graph(), *sc.base().h()).unwrap();
        let sc_found = find_retraction_c4r(sc.graph(), *sc.base().h()).unwrap();
        let compacts = find_compaction_c4r(sc.graph());
        let surjective = find_surjective_hom_c4r(sc.graph());
        prop_assert_eq!(base_found.is_some(), sc_found.is_some());
        prop_assert_eq!(base_found.is_some(), compacts.is_some());
        prop_assert_eq!(base_found.is_some(), surjective.is_some());
        if let Some(base_hom) = base_found {
            let extended = extend_retraction_to_semicompactor(&sc, &base_hom).unwrap();
            prop_assert!(witness::check_retraction_c4r(sc.graph(), *sc.base().h(), &extended));
        }
    }
}
