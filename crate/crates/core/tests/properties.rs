use kirkman_core::oracle::valid_seed_tuples;
use kirkman_core::*;
use proptest::prelude::*;

fn label(qubits: u8) -> impl Strategy<Value = PauliLabel> {
    (0u64..1 << (2 * qubits)).prop_map(move |b| PauliLabel::new(b, qubits).unwrap())
}

fn four_seeds() -> impl Strategy<Value = Vec<u32>> {
    let all = valid_seed_tuples(4).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #[test]
    fn product_is_associative_with_phase(a in label(3), b in label(3), c in label(3)) {
        let (ab, p1) = product(a, b).unwrap();
        let (ab_c, p2) = product(ab, c).unwrap();
        let (bc, p3) = product(b, c).unwrap();
        let (a_bc, p4) = product(a, bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(p1 * p2, p3 * p4);
    }

    #[test]
    fn commutation_agrees_with_phases(a in label(2), b in label(2)) {
        let (_, ab) = product(a, b).unwrap();
        let (_, ba) = product(b, a).unwrap();
        prop_assert_eq!(commutes(a, b).unwrap(), ab == ba);
        prop_assert_eq!(commutes(a, b).unwrap(), commutes(b, a).unwrap());
        if !commutes(a, b).unwrap() {
            prop_assert_eq!(ab, -ba);
        }
    }

    #[test]
    fn product_matches_dense_matrices(a in label(2), b in label(2)) {
        let (ab, phase) = product(a, b).unwrap();
        let dense = &dense_of(a).unwrap() * &dense_of(b).unwrap();
        let w = NormalizedOp::new(a).weight() * NormalizedOp::new(b).weight() / NormalizedOp::new(ab).weight();
        let expected = dense_of(ab).unwrap().scale(phase.to_complex() * num_complex::Complex::from(w));
        prop_assert!((&dense - &expected).is_zero());
    }

    #[test]
    fn every_valid_seed_tuple_gives_a_design(seeds in four_seeds()) {
        let design = Design::from_q(&seeds).unwrap();
        let report = verify_design(&design);
        prop_assert!(report.passed(), "{}", report);
        for (t, &q) in seeds.iter().enumerate() {
            prop_assert_eq!(design.operator_at(Point::unit(t, 4).unwrap()).q_index(), q as u64);
        }
        // Linearity: the label at p ⊕ q is the product of the labels at p and q.
        for p in design.points() {
            for q in design.points().filter(|&q| q != p) {
                let (pq, _) = product(design.operator_at(p), design.operator_at(q)).unwrap();
                prop_assert_eq!(design.operator_at(Point::new(p.xor(q), 4).unwrap()), pq);
            }
        }
    }

    #[test]
    fn cyclic_blocks_display_with_phase_i(seeds in four_seeds()) {
        let design = Design::from_q(&seeds).unwrap();
        for block in design.blocks() {
            let order = design.display_order(block).unwrap();
            let ops = order.map(|p| design.operator_at(p));
            match design.classify_block(block).unwrap() {
                BlockKind::Commuting => prop_assert_eq!(order, block.points()),
                BlockKind::Cyclic => {
                    prop_assert_eq!(order[0], block.points()[0]);
                    for i in 0..3 {
                        let (next, phase) = product(ops[i], ops[(i + 1) % 3]).unwrap();
                        prop_assert_eq!(next, ops[(i + 2) % 3]);
                        prop_assert_eq!(phase, Phase::I);
                    }
                }
            }
        }
    }

    #[test]
    fn every_design_resolves_deterministically(seeds in four_seeds(), which in 0usize..24) {
        let design = Design::from_q(&seeds).unwrap();
        let matching = DayMatching::all()[which];
        let first = resolve(&design, Some(&matching)).unwrap();
        prop_assert!(validate_resolution(&design, &first).passed());
        prop_assert_eq!(&first.matching, &matching);
        prop_assert_eq!(first, resolve(&design, Some(&matching)).unwrap());
    }

    #[test]
    fn documents_round_trip(seeds in four_seeds()) {
        let design = Design::from_q(&seeds).unwrap();
        let res = resolve(&design, None).unwrap();
        let doc = DesignDocument::from_design(&design, Some(&res)).unwrap();
        let back = DesignDocument::from_json(&doc.to_json()).unwrap();
        let (d2, r2) = back.to_design().unwrap();
        prop_assert_eq!(d2, design);
        prop_assert_eq!(r2, Some(res));
        prop_assert!(back.check().unwrap().passed());
    }

    #[test]
    fn cps_scales_are_sorted_and_reduced(pick in proptest::sample::subsequence(vec![3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31], 6), tonic in 50.0f64..1000.0) {
        let scale = build_cps_scale(&pick, tonic).unwrap();
        let f = scale.frequencies();
        prop_assert_eq!(f.len(), 15);
        prop_assert!(f.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(f[0] >= tonic && f[14] < 2.0 * tonic);
    }
}
