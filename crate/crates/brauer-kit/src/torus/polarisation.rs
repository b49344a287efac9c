//! Polarisations: alternating invariant forms E with E(Jx, y) positive
//! definite.

use crate::exactlin::{int, is_positive_definite, IntMat};

use super::{bilinear_forms, ns_sublattice, RationalTorus};

/// True when e is alternating, lies in the invariant form lattice of t, and
/// the symmetric form E(Jx, y), with Gram matrix J^T e, is positive definite.
pub fn is_polarisation(e: &IntMat, t: &RationalTorus) -> bool {
    let n = t.lattice_rank();
    if e.rows() != n || e.cols() != n || !e.is_antisymmetric() {
        return false;
    }
    let forms = bilinear_forms(t);
    if !forms.contains(e) {
        return false;
    }
    let gram = t.j().transpose().mul(&e.to_qmat());
    is_positive_definite(&gram).unwrap_or(false)
}

/// Outcome of a bounded polarisation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarisationSearch {
    Found(IntMat),
    /// The alternating sublattice is zero, so no polarisation can exist.
    NonAlgebraisable,
    /// Nothing found within the coefficient box; proves nothing.
    Inconclusive,
}

/// Cap on enumerated coefficient combinations; larger boxes stay
/// inconclusive rather than running unbounded.
const SEARCH_CAP: u64 = 2_000_000;

/// Searches integer combinations of the alternating sublattice basis with
/// coefficients in [-bound, bound] for a polarisation.
pub fn find_polarisation(t: &RationalTorus, coeff_bound: usize) -> PolarisationSearch {
    let n = t.lattice_rank();
    let forms = bilinear_forms(t);
    let ns = ns_sublattice(&forms);
    let k = ns.rank();
    if k == 0 {
        return PolarisationSearch::NonAlgebraisable;
    }
    let basis: Vec<IntMat> = {
        let b = ns.scaled_basis();
        (0..k).map(|i| IntMat::from_flat(n, n, b.row(i).to_vec())).collect()
    };
    let mut budget = SEARCH_CAP;
    let mut coeffs = vec![-(coeff_bound as i64); k];
    let jt = t.j().transpose();
    loop {
        if budget == 0 {
            return PolarisationSearch::Inconclusive;
        }
        budget -= 1;
        if coeffs.iter().any(|&c| c != 0) {
            let mut e = IntMat::zero(n, n);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    e = e.add(&b.scale(&int(*c)));
                }
            }
            let gram = jt.mul(&e.to_qmat());
            if is_positive_definite(&gram).unwrap_or(false) {
                return PolarisationSearch::Found(e);
            }
        }
        // Lexicographic odometer over [-bound, bound]^k.
        let mut pos = 0;
        loop {
            if pos == k {
                return PolarisationSearch::Inconclusive;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= coeff_bound as i64 {
                break;
            }
            coeffs[pos] = -(coeff_bound as i64);
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::tests::standard_j;

    #[test]
    fn standard_symplectic_form_polarises_the_standard_torus() {
        let t = RationalTorus::new(standard_j(1)).unwrap();
        let e = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(is_polarisation(&e, &t));
        assert!(!is_polarisation(&e.neg(), &t));
        // Non-alternating and off-lattice forms are rejected.
        let sym = IntMat::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert!(!is_polarisation(&sym, &t));
    }

    #[test]
    fn search_finds_the_standard_form() {
        let t = RationalTorus::new(standard_j(1)).unwrap();
        match find_polarisation(&t, 1) {
            PolarisationSearch::Found(e) => assert!(is_polarisation(&e, &t)),
            other => panic!("expected a polarisation, got {:?}", other),
        }
    }

    #[test]
    fn search_is_deterministic() {
        let t = RationalTorus::new(standard_j(2)).unwrap();
        let a = find_polarisation(&t, 1);
        let b = find_polarisation(&t, 1);
        assert_eq!(a, b);
        assert!(matches!(a, PolarisationSearch::Found(_)));
    }

    #[test]
    fn zero_bound_is_inconclusive() {
        let t = RationalTorus::new(standard_j(1)).unwrap();
        assert_eq!(find_polarisation(&t, 0), PolarisationSearch::Inconclusive);
    }

    #[test]
    fn polarisation_rejects_wrong_j_orientation() {
        // Swapping the complex structure's sign flips definiteness.
        let j = standard_j(1).neg();
        let t = RationalTorus::new(j).unwrap();
        let e = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(!is_polarisation(&e, &t));
        assert!(is_polarisation(&e.neg(), &t));
    }
}
