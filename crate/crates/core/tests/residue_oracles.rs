use stperiod_core::residue::{
    affine_square_moves, affine_square_orbits, build_fields, exists_nonsquare_value, inversion_closure_orbits,
    inversion_closure_orbits_with, inversion_moves, least_square_root_of_base, moves_are_injective, twist_parameter,
    verify_fraction_identity,
};

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (5, 1), (7, 1), (3, 2)];

#[test]
fn orbit_sizes_partition_the_outer_labels() {
    for (p, n) in FIELDS {
        let f = build_fields(p, n).unwrap();
        let q = f.q as usize;
        let r = affine_square_orbits(&f);
        assert_eq!(r.orbit_sizes.iter().sum::<usize>(), q * q - q);
        let r = inversion_closure_orbits(&f).unwrap();
        assert_eq!(r.orbit_sizes.iter().sum::<usize>(), q * q - q);
    }
}

#[test]
fn affine_orbit_counts() {
    // char 2: squaring is onto, so the moves are the full affine group
    for n in 1..=4 {
        let f = build_fields(2, n).unwrap();
        let r = affine_square_orbits(&f);
        assert_eq!(r.orbit_count, 1, "q={}", f.q);
    }
    // odd q: index-2 squares give two orbits
    for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let f = build_fields(p, n).unwrap();
        let q = f.q as usize;
        let r = affine_square_orbits(&f);
        assert_eq!(r.orbit_sizes, vec![(q * q - q) / 2; 2], "q={q}");
    }
}

#[test]
fn inversions_merge_odd_orbits_for_every_root() {
    for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let f = build_fields(p, n).unwrap();
        let roots = f.square_roots_of_base();
        assert_eq!(roots.len(), f.q as usize - 1);
        for x0 in roots {
            let r = inversion_closure_orbits_with(&f, x0).unwrap();
            assert!(r.is_transitive(), "q={} x0={x0}", f.q);
            assert_eq!(r.excluded_inputs, 0);
        }
    }
}

#[test]
fn moves_are_injective_and_land_outside_base() {
    for (p, n) in FIELDS {
        let f = build_fields(p, n).unwrap();
        let mut moves = affine_square_moves(&f);
        if p != 2 {
            let c = twist_parameter(&f, least_square_root_of_base(&f).unwrap()).unwrap();
            moves.extend(inversion_moves(&f, c));
        }
        assert!(moves_are_injective(&f, &moves));
        for m in &moves {
            for x in f.outer_elements() {
                let y = m.apply(&f, x).expect("defined on every outer label");
                assert!(!f.is_base(y));
            }
        }
    }
}

#[test]
fn fraction_identity_and_witness() {
    for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let f = build_fields(p, n).unwrap();
        let c = twist_parameter(&f, least_square_root_of_base(&f).unwrap()).unwrap();
        assert!(verify_fraction_identity(&f, c).unwrap().holds());
        let (a, b) = exists_nonsquare_value(&f, c).unwrap();
        assert!(a != 0 && a < f.q && b < f.q);
    }
}

#[test]
fn extension_arithmetic_by_hand() {
    // F_9 = F_3[y]/(y^2 + 1): y * y = -1 = 2
    let f = build_fields(3, 1).unwrap();
    let y = 3;
    assert_eq!(f.mul(y, y), 2);
    assert_eq!(f.frobenius(y), f.neg(y));
    // F_4 = F_2[y]/(y^2 + y + 1): y^2 = y + 1
    let f = build_fields(2, 1).unwrap();
    assert_eq!(f.mul(2, 2), 3);
}
