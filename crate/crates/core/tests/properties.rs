use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zpg_core::arith::{smith_normal_form, GroupParams, GroupRingElement, Matrix};
use zpg_core::cohomology::CohomologyTable;
use zpg_core::modules::{direct_sum, free_module, GroupRingPresentation, PresentedModule};
use zpg_core::oracle::{modules_isomorphic, stably_isomorphic, IsoSearchConfig};
use zpg_core::suites::random_presentation;
use zpg_core::yakovlev::{check_axioms, delta_unchecked};

const GROUPS: &[(u64, u32)] = &[(3, 1), (3, 2), (5, 1)];

fn params() -> impl Strategy<Value = GroupParams> {
    prop::sample::select(GROUPS).prop_map(|(p, n)| GroupParams::with_defaults(p, n).unwrap())
}

fn element(params: GroupParams) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec(-30i64..30, params.order())
        .prop_map(move |c| GroupRingElement::from_signed(params, &c).unwrap())
}

fn three_elements() -> impl Strategy<Value = (GroupRingElement, GroupRingElement, GroupRingElement)> {
    params().prop_flat_map(|p| (element(p), element(p), element(p)))
}

fn random_module(params: GroupParams, seed: u64) -> Option<PresentedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_presentation(params, &mut rng).ok()?.to_module().ok()
}

fn invariants(m: &PresentedModule) -> [Vec<Vec<u32>>; 2] {
    let mut inv = CohomologyTable::compute(m).unwrap().invariants();
    for row in inv.iter_mut().flatten() {
        row.sort_unstable();
    }
    inv
}

proptest! {
    #[test]
    fn group_ring_is_a_commutative_ring((x, y, z) in three_elements()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&GroupRingElement::one(x.params())), x.clone());
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn norm_absorbs_augmentation((x, _, _) in three_elements()) {
        let params = x.params();
        let norm = GroupRingElement::norm(params);
        prop_assert_eq!(norm.mul(&x), norm.scale(x.augmentation().value()));
        prop_assert_eq!(GroupRingElement::sigma_minus_one(params).mul(&norm).augmentation().value(), 0);
    }

    #[test]
    fn augmentation_is_multiplicative((x, y, _) in three_elements()) {
        let ring = *x.params().ring();
        prop_assert_eq!(
            x.mul(&y).augmentation().value(),
            ring.reduce(ring.mul(x.augmentation().value(), y.augmentation().value()))
        );
    }

    #[test]
    fn snf_invariant_under_unimodular_change(
        entries in prop::collection::vec(-40i64..40, 12),
        ops in prop::collection::vec((0usize..3, 0usize..3, -5i64..5), 0..8),
        col_ops in prop::collection::vec((0usize..4, 0usize..4, -5i64..5), 0..8),
    ) {
        let params = GroupParams::with_defaults(3, 1).unwrap();
        let ring = *params.ring();
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let m = Matrix::from_signed_rows(&rows, &ring);
        let mut u = Matrix::identity(3);
        for &(a, b, q) in ops.iter().filter(|(a, b, _)| a != b) {
            u.row_axpy(a, b, ring.from_i64(q), &ring);
        }
        let mut v = Matrix::identity(4);
        for &(a, b, q) in col_ops.iter().filter(|(a, b, _)| a != b) {
            v.col_axpy(a, b, ring.from_i64(q), &ring);
        }
        let moved = u.mul(&m, &ring).mul(&v, &ring);
        let r = smith_normal_form(&m, &ring).unwrap();
        let r2 = smith_normal_form(&moved, &ring).unwrap();
        prop_assert_eq!(&r.diagonal, &r2.diagonal);
        prop_assert_eq!(r.rank, r2.rank);
        let d = r.left.mul(&m, &ring).mul(&r.right, &ring);
        prop_assert_eq!(&d, &r.diagonal_matrix(3, 4, &ring));
        prop_assert_eq!(&r.left_inv.mul(&d, &ring).mul(&r.right_inv, &ring), &m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Adding a generator together with a relation that expresses it in
    /// terms of the first generator does not change the module.
    #[test]
    fn redundant_generator_changes_nothing(params in params(), seed in any::<u64>(), coeffs in prop::collection::vec(-4i64..4, 25)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok(pres) = random_presentation(params, &mut rng) else { return Ok(()) };
        let Ok(m) = pres.to_module() else { return Ok(()) };
        let k = pres.num_generators();
        let zero = GroupRingElement::zero(params);
        let mut relations: Vec<Vec<GroupRingElement>> = pres
            .relations()
            .iter()
            .map(|r| r.iter().cloned().chain([zero.clone()]).collect())
            .collect();
        let r = GroupRingElement::from_signed(params, &coeffs[..params.order()]).unwrap();
        let mut extra = vec![zero.clone(); k + 1];
        extra[0] = r;
        extra[k] = GroupRingElement::scalar(params, -1);
        relations.insert(0, extra);
        let m2 = GroupRingPresentation::new(params, k + 1, relations).unwrap().to_module().unwrap();
        prop_assert_eq!(m2.zp_rank(), m.zp_rank());
        prop_assert_eq!(m2.torsion_invariants(), m.torsion_invariants());
        prop_assert_eq!(invariants(&m2), invariants(&m));
        let iso = modules_isomorphic(&m, &m2, &IsoSearchConfig::default()).unwrap();
        prop_assert!(!iso.is_not_isomorphic());
    }

    #[test]
    fn cohomology_is_additive(params in params(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (Some(a), Some(b)) = (random_module(params, s1), random_module(params, s2)) else { return Ok(()) };
        let sum = invariants(&direct_sum(&a, &b).unwrap());
        let (ia, ib) = (invariants(&a), invariants(&b));
        for d in 0..2 {
            for i in 0..ia[d].len() {
                let mut joined = [ia[d][i].clone(), ib[d][i].clone()].concat();
                joined.sort_unstable();
                prop_assert_eq!(&sum[d][i], &joined);
            }
        }
    }

    #[test]
    fn free_summands_are_invisible(params in params(), seed in any::<u64>()) {
        let Some(m) = random_module(params, seed) else { return Ok(()) };
        let padded = direct_sum(&m, &free_module(params, 1)).unwrap();
        prop_assert_eq!(invariants(&padded), invariants(&m));
        if m.is_torsion_free() {
            let s = stably_isomorphic(&padded, &m, &IsoSearchConfig::default()).unwrap();
            prop_assert!(!s.is_not_stably_isomorphic());
        }
    }

    #[test]
    fn delta_satisfies_axioms(params in params(), seed in any::<u64>()) {
        let Some(m) = random_module(params, seed) else { return Ok(()) };
        let d = delta_unchecked(&m).unwrap();
        let report = check_axioms(&d);
        prop_assert!(report.all_pass(), "{:?}", report.failures());
    }
}
