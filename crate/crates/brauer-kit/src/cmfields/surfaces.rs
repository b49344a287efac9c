//! Two CM surface constructions with invariant Brauer group Z/2: a fiber
//! product of two imaginary quadratic orders glued along their residue
//! rings at 2, and a quartic CM field that becomes biquadratic over Q_2.

use num_traits::{One, Zero};

use crate::exactlin::{QMat, Rat};

use super::{AlgebraLattice, Error, EtaleAlgebra};

fn is_square_free(d: i64) -> bool {
    let mut m = d.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        } else {
            p += 1;
        }
    }
    true
}

/// Q(sqrt(d1)) + Q(sqrt(d2)) on the basis (1,0), (sqrt(d1),0), (0,1),
/// (0,sqrt(d2)) with componentwise conjugation.
fn split_quadratic_algebra(d1: i64, d2: i64) -> EtaleAlgebra {
    let z = (0i64, 1i64);
    let o = (1i64, 1i64);
    let table = vec![
        QMat::from_ratios(&[
            vec![o, z, z, z],
            vec![z, o, z, z],
            vec![z, z, z, z],
            vec![z, z, z, z],
        ]),
        QMat::from_ratios(&[
            vec![z, o, z, z],
            vec![(d1, 1), z, z, z],
            vec![z, z, z, z],
            vec![z, z, z, z],
        ]),
        QMat::from_ratios(&[
            vec![z, z, z, z],
            vec![z, z, z, z],
            vec![z, z, o, z],
            vec![z, z, z, o],
        ]),
        QMat::from_ratios(&[
            vec![z, z, z, z],
            vec![z, z, z, z],
            vec![z, z, z, o],
            vec![z, z, (d2, 1), z],
        ]),
    ];
    let one = vec![Rat::one(), Rat::zero(), Rat::one(), Rat::zero()];
    let conj = QMat::from_ratios(&[
        vec![o, z, z, z],
        vec![z, (-1, 1), z, z],
        vec![z, z, o, z],
        vec![z, z, z, (-1, 1)],
    ]);
    EtaleAlgebra::new(table, one, conj)
        .expect("a product of two quadratic fields is etale with componentwise conjugation")
}

/// The fiber product of Z[sqrt(d1)] and Z[sqrt(d2)] over their common
/// residue ring at the ramified prime 2: the lattice generated by (2,0),
/// (1,1), (2 sqrt(d1), 0) and (sqrt(d1), sqrt(d2)).
pub fn build_nonsimple_cm_surface(d1: i64, d2: i64) -> Result<AlgebraLattice, Error> {
    // Oddness makes Z[sqrt(d)]/2 a nilpotent F_2-algebra on 1 + sqrt(d), so
    // the glued lattice below is a fiber product of rings; the matching
    // residues mod 4 make B at (1/4, -1/4) even, which pins the group Z/2.
    let valid = |d: i64| d < 0 && d.rem_euclid(2) == 1 && is_square_free(d);
    if d1 == d2 || !valid(d1) || !valid(d2) || d1.rem_euclid(4) != d2.rem_euclid(4) {
        return Err(Error::InvalidDiscriminants);
    }
    let algebra = split_quadratic_algebra(d1, d2);
    let generators = QMat::from_ratios(&[
        vec![(2, 1), (0, 1), (0, 1), (0, 1)],
        vec![(1, 1), (0, 1), (1, 1), (0, 1)],
        vec![(0, 1), (2, 1), (0, 1), (0, 1)],
        vec![(0, 1), (1, 1), (0, 1), (1, 1)],
    ]);
    AlgebraLattice::new(algebra, &generators)
}

/// The quartic CM field Q(sqrt(5))(sqrt(delta)) with delta = -30 + 8 sqrt(5)
/// on the basis 1, sqrt(5), sqrt(delta), sqrt(5) sqrt(delta), with the
/// lattice spanned by that basis.
///
/// The interesting behaviour is 2-adic: delta = 2 (-15 + 4 sqrt(5)) and
/// -15 + 4 sqrt(5) is congruent to (2 + sqrt(5))^2 mod 8, hence a square in
/// Z_2[sqrt(5)] by Hensel's lemma. The completion of the lattice at 2 is
/// therefore Z_2[sqrt(5)] + Z_2[sqrt(5)] sqrt(2), and since the Brauer
/// quotient is 2-torsion it is decided entirely by that completion.
pub fn build_quartic_cm() -> AlgebraLattice {
    let z = (0i64, 1i64);
    let o = (1i64, 1i64);
    let table = vec![
        QMat::from_ratios(&[
            vec![o, z, z, z],
            vec![z, o, z, z],
            vec![z, z, o, z],
            vec![z, z, z, o],
        ]),
        QMat::from_ratios(&[
            vec![z, o, z, z],
            vec![(5, 1), z, z, z],
            vec![z, z, z, o],
            vec![z, z, (5, 1), z],
        ]),
        QMat::from_ratios(&[
            vec![z, z, o, z],
            vec![z, z, z, o],
            vec![(-30, 1), (8, 1), z, z],
            vec![(40, 1), (-30, 1), z, z],
        ]),
        QMat::from_ratios(&[
            vec![z, z, z, o],
            vec![z, z, (5, 1), z],
            vec![(40, 1), (-30, 1), z, z],
            vec![(-150, 1), (40, 1), z, z],
        ]),
    ];
    let one = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
    let conj = QMat::from_ratios(&[
        vec![o, z, z, z],
        vec![z, o, z, z],
        vec![z, z, (-1, 1), z],
        vec![z, z, z, (-1, 1)],
    ]);
    let algebra = EtaleAlgebra::new(table, one, conj)
        .expect("the quartic CM field is etale with totally negative delta");
    AlgebraLattice::new(algebra, &QMat::identity(4)).expect("the power-style basis has full rank")
}
