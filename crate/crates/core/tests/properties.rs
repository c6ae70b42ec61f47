//! Structural invariants checked over generated inputs.

use proptest::prelude::*;

use eigensolver::lattice::{
    dilate_lattice_points, lattice_condition, minkowski_sum, recover_point, LatticePolytopeSpec,
};
use eigensolver::poly::monomial_vector;
use eigensolver::{Exponent, Polynomial, Support, C64};

fn exponent_strategy(dim: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max, dim)
}

fn support_strategy(dim: usize, max: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(exponent_strategy(dim, max), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_order_is_canonical(rows in support_strategy(3, 4)) {
        let s = Support::from_rows(3, &rows).unwrap();
        // Sorted strictly ascending: deduplicated and ordered.
        for w in s.exponents().windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        // Rebuilding from a shuffled copy gives the same support.
        let mut shuffled = rows.clone();
        shuffled.reverse();
        let s2 = Support::from_rows(3, &shuffled).unwrap();
        prop_assert_eq!(s, s2);
    }

    #[test]
    fn minkowski_sum_is_commutative(a in support_strategy(2, 3), b in support_strategy(2, 3)) {
        let sa = Support::from_rows(2, &a).unwrap();
        let sb = Support::from_rows(2, &b).unwrap();
        let ab = minkowski_sum(&sa, &sb).unwrap();
        let ba = minkowski_sum(&sb, &sa).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn evaluate_additive_on_integer_polynomials(
        terms1 in proptest::collection::vec((exponent_strategy(2, 3), -5i32..=5), 1..6),
        terms2 in proptest::collection::vec((exponent_strategy(2, 3), -5i32..=5), 1..6),
        zre in -2.0f64..2.0,
        zim in -2.0f64..2.0,
    ) {
        let build = |terms: &[(Vec<u32>, i32)]| {
            Polynomial::new(
                2,
                terms.iter().map(|(e, c)| (Exponent::new(e.clone()), C64::new(*c as f64, 0.0))),
            )
            .unwrap()
        };
        let p = build(&terms1);
        let q = build(&terms2);
        let z = [C64::new(zre, zim), C64::new(zim, -zre)];
        let lhs = p.add(&q).unwrap().evaluate(&z).unwrap();
        let rhs = p.evaluate(&z).unwrap() + q.evaluate(&z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm() + rhs.norm()));
    }

    #[test]
    fn dilation_sums_nest(rows in support_strategy(2, 3), a in 0u32..3, b in 0u32..3) {
        let mut with_origin = rows.clone();
        with_origin.push(vec![0, 0]);
        let gens = Support::from_rows(2, &with_origin).unwrap();
        if let Ok(p) = LatticePolytopeSpec::new(gens) {
            let da = dilate_lattice_points(&p, a);
            let db = dilate_lattice_points(&p, b);
            let dab = dilate_lattice_points(&p, a + b);
            let sum = minkowski_sum(&da, &db).unwrap();
            prop_assert!(sum.is_subset_of(&dab));
        }
    }

    #[test]
    fn recovery_round_trips(extra in exponent_strategy(3, 2), scale in 0.25f64..2.0) {
        // A0 = {0, units, extra} always satisfies the lattice condition.
        let mut rows = vec![vec![0, 0, 0]];
        for l in 0..3 {
            let mut e = vec![0u32; 3];
            e[l] = 1;
            rows.push(e);
        }
        rows.push(extra);
        let a0 = Support::from_rows(3, &rows).unwrap();
        let table = lattice_condition(&a0).unwrap();
        let z = [
            C64::new(scale, 0.3),
            C64::new(-0.7, scale),
            C64::new(0.4 * scale, -0.2),
        ];
        let vals = monomial_vector(&z, &a0).unwrap();
        let ratios: Vec<C64> = vals
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != table.base_index)
            .map(|(_, v)| *v)
            .collect();
        let back = recover_point(&ratios, &table).unwrap();
        for l in 0..3 {
            prop_assert!((back[l] - z[l]).norm() <= 1e-9 * z[l].norm());
        }
    }
}
