//! Property tests for involution cohomology: elementary 2-torsion, direct
//! sum additivity, freeness of regular modules, and induced-kernel edges.

use brauer_kit::exactlin::{int, IntMat};
use brauer_kit::invcoh::{h1, h1_induced_kernel, is_free_over_involution, tate_h0, EquivariantMap, InvolutionModule};
use proptest::prelude::*;

/// Involution conjugate to t trivial summands, s sign summands, and r
/// regular (swap) summands by a random unimodular change of basis.
fn involution(t: usize, s: usize, r: usize, ops: Vec<(usize, usize, i64)>) -> InvolutionModule {
    let n = t + s + 2 * r;
    let mut sigma0 = IntMat::zero(n, n);
    for i in 0..t {
        sigma0[(i, i)] = int(1);
    }
    for i in t..t + s {
        sigma0[(i, i)] = int(-1);
    }
    for k in 0..r {
        let a = t + s + 2 * k;
        sigma0[(a, a + 1)] = int(1);
        sigma0[(a + 1, a)] = int(1);
    }
    let mut u = IntMat::identity(n);
    for (i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            u.row_sub_mul(i, j, &int(-c));
        }
    }
    let u_inv = u.to_qmat().inverse().expect("unimodular").to_intmat();
    InvolutionModule::new(u.mul(&sigma0.mul(&u_inv))).expect("conjugate of an involution")
}

fn module_strategy() -> impl Strategy<Value = (usize, usize, usize, InvolutionModule)> {
    (
        0usize..=2,
        0usize..=2,
        0usize..=2,
        prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..6),
    )
        .prop_filter("nonzero rank", |(t, s, r, _)| t + s + 2 * r > 0)
        .prop_map(|(t, s, r, ops)| (t, s, r, involution(t, s, r, ops)))
}

proptest! {
    #[test]
    fn cohomology_is_elementary_two_torsion((_t, _s, _r, m) in module_strategy()) {
        prop_assert!(tate_h0(&m).group.is_elementary_two());
        prop_assert!(h1(&m).group.is_elementary_two());
    }

    #[test]
    fn cohomology_counts_match_the_decomposition((t, s, _r, m) in module_strategy()) {
        // Trivial summands contribute to H^0, sign summands to H^1, and
        // regular summands to neither.
        prop_assert_eq!(tate_h0(&m).group.two_rank(), Some(t));
        prop_assert_eq!(h1(&m).group.two_rank(), Some(s));
    }

    #[test]
    fn direct_sums_add_cohomology(
        (_, _, _, a) in module_strategy(),
        (_, _, _, b) in module_strategy()
    ) {
        let sum = a.direct_sum(&b);
        let h0 = tate_h0(&sum).group;
        prop_assert_eq!(
            h0.two_rank().unwrap(),
            tate_h0(&a).group.two_rank().unwrap() + tate_h0(&b).group.two_rank().unwrap()
        );
        let h = h1(&sum).group;
        prop_assert_eq!(
            h.two_rank().unwrap(),
            h1(&a).group.two_rank().unwrap() + h1(&b).group.two_rank().unwrap()
        );
    }

    #[test]
    fn regular_modules_are_free(
        r in 1usize..=3,
        ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..6)
    ) {
        let m = involution(0, 0, r, ops);
        prop_assert!(is_free_over_involution(&m));
    }

    #[test]
    fn induced_kernel_edges((_, _, _, m) in module_strategy()) {
        let n = m.rank();
        let id = EquivariantMap::new(m.clone(), m.clone(), IntMat::identity(n)).unwrap();
        prop_assert!(h1_induced_kernel(&id).group.is_trivial());
        let zero = EquivariantMap::new(m.clone(), m.clone(), IntMat::zero(n, n)).unwrap();
        prop_assert_eq!(h1_induced_kernel(&zero).group, h1(&m).group);
    }
}
