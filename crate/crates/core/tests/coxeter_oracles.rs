use stperiod_core::coxeter::{
    build_affine_system, epsilon_of_omega, exponents, growth_coefficients, omega_group, poincare_finite,
    poincare_finite_enumerated, CartanType, Family, GrowthSeries, DEFAULT_ELEMENT_BUDGET, INFINITE_ORDER,
};
use stperiod_core::period::check_counting_bound;
use stperiod_core::poly::IntPoly;

use Family::*;

/// Degrees of the basic invariants, from the standard tables.
fn degrees(family: Family, rank: usize) -> Vec<usize> {
    let mut d = match family {
        A => (2..=rank + 1).collect(),
        B | C => (1..=rank).map(|i| 2 * i).collect(),
        D => {
            let mut v: Vec<usize> = (1..rank).map(|i| 2 * i).collect();
            v.push(rank);
            v
        }
        E => match rank {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => unreachable!(),
        },
        F => vec![2, 6, 8, 12],
        G => vec![2, 6],
    };
    d.sort_unstable();
    d
}

fn all_types() -> Vec<(Family, usize)> {
    let mut v = vec![];
    for r in 1..=6 {
        v.push((A, r));
    }
    for r in 2..=5 {
        v.push((C, r));
    }
    for r in 3..=5 {
        v.push((B, r));
    }
    for r in 4..=6 {
        v.push((D, r));
    }
    v.extend([(E, 6), (E, 7), (E, 8), (F, 4), (G, 2)]);
    v
}

#[test]
fn exponents_match_degree_tables() {
    for (f, r) in all_types() {
        let mut got: Vec<usize> = exponents(f, r).unwrap().into_iter().map(|m| m + 1).collect();
        got.sort_unstable();
        assert_eq!(got, degrees(f, r), "{f}{r}");
    }
}

#[test]
fn group_orders() {
    let order = |f, r| poincare_finite(f, r).unwrap().eval_i64(1);
    assert_eq!(order(E, 6), 51_840);
    assert_eq!(order(E, 7), 2_903_040);
    assert_eq!(order(E, 8), 696_729_600);
    assert_eq!(order(F, 4), 1152);
    assert_eq!(order(G, 2), 12);
    assert_eq!(order(D, 5), 1920);
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn type_a_poincare_counts_inversions() {
    for r in 1..=5 {
        let mut counts = vec![0i64; r * (r + 1) / 2 + 1];
        for p in permutations(r + 1) {
            counts[inversions(&p)] += 1;
        }
        assert_eq!(poincare_finite(A, r).unwrap(), IntPoly::new(counts), "A{r}");
    }
}

#[test]
fn parabolic_chain_matches_group_enumeration() {
    for (f, r) in all_types() {
        if poincare_finite(f, r).unwrap().eval_i64(1) > 500_000 {
            continue;
        }
        let sys = build_affine_system(f, r).unwrap();
        assert_eq!(
            poincare_finite_enumerated(&sys, DEFAULT_ELEMENT_BUDGET).unwrap(),
            poincare_finite(f, r).unwrap(),
            "{f}{r}"
        );
    }
}

#[test]
fn e8_has_no_diagram_symmetry() {
    let sys = build_affine_system(E, 8).unwrap();
    let m = sys.coxeter_matrix();
    let mut found = 0;
    for p in permutations(9) {
        if (0..9).all(|i| (0..9).all(|j| m[p[i]][p[j]] == m[i][j])) {
            found += 1;
        }
    }
    assert_eq!(found, 1);
    assert_eq!(omega_group(E, 8).unwrap().len(), 1);
}

#[test]
fn omega_orders_and_diagram_action() {
    let expected = |f: Family, r: usize| match f {
        A => r + 1,
        B | C => 2,
        E if r == 7 => 2,
        D => 4,
        E if r == 6 => 3,
        _ => 1,
    };
    for (f, r) in all_types() {
        let sys = build_affine_system(f, r).unwrap();
        let group = omega_group(f, r).unwrap();
        assert_eq!(group.len(), expected(f, r), "{f}{r}");
        for g in &group {
            assert!(g.preserves(sys.coxeter_matrix()), "{f}{r} {:?}", g.perm());
        }
    }
}

#[test]
fn omega_sign_is_multiplicative() {
    for (f, r) in all_types() {
        let group = omega_group(f, r).unwrap();
        for g in &group {
            for h in &group {
                assert_eq!(epsilon_of_omega(&g.compose(h)), epsilon_of_omega(g) * epsilon_of_omega(h), "{f}{r}");
            }
        }
    }
}

#[test]
fn affine_rank_one_matrix() {
    let sys = build_affine_system(A, 1).unwrap();
    assert_eq!(sys.coxeter_matrix()[0][1], INFINITE_ORDER);
    assert_eq!(sys.product_order(0, 1), None);
}

#[test]
fn a2_tilde_grows_linearly() {
    let sys = build_affine_system(A, 2).unwrap();
    let s = growth_coefficients(&sys, 20, DEFAULT_ELEMENT_BUDGET).unwrap();
    assert_eq!(s.coefficients[0], 1);
    for k in 1..=20 {
        assert_eq!(s.coefficients[k], 3 * k as u64);
    }
    let s = growth_coefficients(&build_affine_system(A, 1).unwrap(), 20, DEFAULT_ELEMENT_BUDGET).unwrap();
    assert!(s.coefficients[1..].iter().all(|&a| a == 2));
}

#[test]
fn enumerated_series_matches_closed_form() {
    let cases =
        [(A, 1, 30), (A, 2, 20), (A, 3, 14), (B, 3, 10), (C, 2, 16), (C, 3, 10), (D, 4, 9), (G, 2, 20), (F, 4, 7)];
    for (f, r, k) in cases {
        let sys = build_affine_system(f, r).unwrap();
        let enumerated = growth_coefficients(&sys, k, DEFAULT_ELEMENT_BUDGET).unwrap();
        let closed = GrowthSeries::closed_form(CartanType::new(f, r).unwrap(), k).unwrap();
        assert_eq!(enumerated.coefficients, closed.coefficients, "{f}{r}");
    }
}

#[test]
fn counting_bound_on_enumerated_series() {
    for (f, r) in [(A, 1), (A, 2), (A, 3), (B, 3), (C, 2), (C, 3), (D, 4), (G, 2)] {
        let s = growth_coefficients(&build_affine_system(f, r).unwrap(), 8, DEFAULT_ELEMENT_BUDGET).unwrap();
        let d = r as u64;
        for k in 1..=8 {
            assert!(s.coefficients[k] <= (d + 1) * d.pow(k as u32 - 1), "{f}{r} k={k}");
        }
        assert!(check_counting_bound(&s, 8).unwrap().all_hold());
    }
    let s = growth_coefficients(&build_affine_system(A, 1).unwrap(), 8, DEFAULT_ELEMENT_BUDGET).unwrap();
    assert!(check_counting_bound(&s, 8).unwrap().all_tight());
}
