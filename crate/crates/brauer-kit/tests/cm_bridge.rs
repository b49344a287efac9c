//! The conjugation-side computation against the torus-side paths: for any
//! conjugation-stable lattice in an étale algebra, the Gram matrices of its
//! dual module give a transpose-stable form lattice on which all three
//! torus-side paths must reproduce the algebra-side group.

use brauer_kit::cmfields::{
    bilinear_form_lattice, brauer_cm, build_nonsimple_cm_surface, cyclotomic_algebra, dual_module,
    dual_module_subring, trace_dual, AlgebraLattice, EtaleAlgebra,
};
use brauer_kit::exactlin::{rat, QMat, Rat, ZLattice};
use brauer_kit::torus::{brauer_mod4_oracle, brauer_via_h1, invariant_brauer};
use proptest::prelude::*;

fn algebra_choices() -> impl Strategy<Value = EtaleAlgebra> {
    prop_oneof![
        Just(cyclotomic_algebra(3).0),
        Just(cyclotomic_algebra(4).0),
        Just(cyclotomic_algebra(5).0),
        Just(build_nonsimple_cm_surface(-3, -7).unwrap().algebra().clone()),
    ]
}

/// Conjugation-stable full-rank lattice: a random triangular basis with
/// positive diagonal, summed with its conjugate.
fn stable_lattice() -> impl Strategy<Value = AlgebraLattice> {
    (algebra_choices(), prop::collection::vec((1i64..=3, -2i64..=2), 16))
        .prop_map(|(alg, entries)| {
            let d = alg.dim();
            let mut rows = QMat::zero(2 * d, d);
            for i in 0..d {
                for j in 0..d {
                    rows[(i, j)] = if i == j {
                        rat(entries[i].0, 1)
                    } else if j > i {
                        rat(entries[(i * d + j) % entries.len()].1, 1)
                    } else {
                        Rat::from(brauer_kit::exactlin::int(0))
                    };
                }
            }
            for i in 0..d {
                let c = alg.conj(rows.row(i));
                for (j, v) in c.into_iter().enumerate() {
                    rows[(d + i, j)] = v;
                }
            }
            AlgebraLattice::new(alg, &rows).expect("triangular part already has full rank")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bridge_agrees_with_all_torus_paths(l in stable_lattice()) {
        let (group, _) = brauer_cm(&l);
        prop_assert!(group.is_elementary_two());
        let f = bilinear_form_lattice(&l);
        prop_assert_eq!(&invariant_brauer(&f), &group);
        prop_assert_eq!(&brauer_via_h1(&f), &group);
        prop_assert_eq!(&brauer_mod4_oracle(&f).expect("CM ranks stay small"), &group);
    }

    #[test]
    fn trace_dual_is_involutive_on_random_lattices(l in stable_lattice()) {
        let dual = trace_dual(&l);
        let back = trace_dual(&dual);
        prop_assert_eq!(back.lattice(), l.lattice());
    }

    #[test]
    fn dual_module_scales_inverse_quadratically(l in stable_lattice()) {
        let d = l.algebra().dim();
        let basis = l.basis();
        let scaled_basis = QMat::from_fn(d, d, |i, j| &basis[(i, j)] * rat(3, 1));
        let scaled = AlgebraLattice::new(l.algebra().clone(), &scaled_basis).unwrap();
        let dual_basis = dual_module(&l).basis();
        let dual_scaled = dual_module(&scaled);
        let expected = ZLattice::from_generators(
            &QMat::from_fn(d, d, |i, j| &dual_basis[(i, j)] * rat(1, 9)),
        );
        prop_assert_eq!(dual_scaled.lattice(), &expected);
    }
}

#[test]
fn subring_shortcut_matches_the_general_dual_on_integer_rings() {
    for n in 3..=10 {
        let (_, ok) = cyclotomic_algebra(n);
        let shortcut = dual_module_subring(&ok).expect("the ring of integers is a subring");
        let general = dual_module(&ok);
        assert_eq!(shortcut.lattice(), general.lattice(), "n = {}", n);
    }
}
