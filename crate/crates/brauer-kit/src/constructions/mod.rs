//! Exact form data for two families of complex structures with invariant
//! Brauer group Z/2: a symmetric-only family (no alternating forms, hence
//! non-algebraisable) and a polarised pair (symmetric form plus an
//! alternating one coming from an integral complex structure). The complex
//! structures themselves exist by a Baire-category argument; `numeric`
//! searches for floating-point witnesses.

mod numeric;

use num_traits::{One, Zero};

use crate::exactlin::{exact_signature, int, IntMat};

pub use numeric::{
    numeric_j_search, screen_small_endomorphisms, EndomorphismScreen, JSearchReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("S must be a symmetric 2g x 2g integer matrix with g >= 3")]
    BadConstructionShape,
    #[error("J0 must satisfy J0^2 = -1 and J0^T S J0 = S, with E = S J0")]
    IncompatibleData,
    #[error("no complex structure within tolerance; retry with another seed")]
    SearchFailed,
}

/// A symmetric integer form S on Z^2g, optionally with an integral complex
/// structure J0 preserving it and the alternating form E = S J0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionData {
    g: usize,
    s: IntMat,
    j0: Option<IntMat>,
    e: Option<IntMat>,
}

impl ConstructionData {
    pub fn new(
        g: usize,
        s: IntMat,
        j0: Option<IntMat>,
        e: Option<IntMat>,
    ) -> Result<Self, Error> {
        let n = 2 * g;
        if g < 3 || s.rows() != n || s.cols() != n || !s.is_symmetric() {
            return Err(Error::BadConstructionShape);
        }
        if let Some(j) = &j0 {
            if j.rows() != n || j.cols() != n {
                return Err(Error::BadConstructionShape);
            }
            let minus_one = IntMat::identity(n).neg();
            if j.mul(j) != minus_one || j.transpose().mul(&s).mul(j) != s {
                return Err(Error::IncompatibleData);
            }
        }
        if let Some(em) = &e {
            let Some(j) = &j0 else {
                return Err(Error::IncompatibleData);
            };
            if *em != s.mul(j) || !em.is_antisymmetric() {
                return Err(Error::IncompatibleData);
            }
        }
        Ok(ConstructionData { g, s, j0, e })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn s(&self) -> &IntMat {
        &self.s
    }

    pub fn j0(&self) -> Option<&IntMat> {
        self.j0.as_ref()
    }

    pub fn e(&self) -> Option<&IntMat> {
        self.e.as_ref()
    }
}

/// Even diagonal, unit content, nonzero determinant, and signature
/// difference congruent to the rank mod 4. These are exactly the conditions
/// under which a generic complex structure preserving s exists with
/// invariant form lattice Zs.
fn assert_admissible(s: &IntMat) {
    let n = s.rows();
    assert!((0..n).all(|i| (&s[(i, i)] % int(2)).is_zero()), "form must be even");
    assert!(s.content().is_one(), "form must be primitive");
    let (p, q, z) = exact_signature(&s.to_qmat()).expect("form is symmetric");
    assert_eq!(z, 0, "form must be nondegenerate");
    assert_eq!((p + 3 * q) % 4, n % 4, "signature must be congruent to the rank mod 4");
}

/// 2I_{2g-4} plus two hyperbolic planes. The span of S contains no
/// alternating form, so a torus with form lattice ZS has empty Neron-Severi
/// group and is not algebraisable, while ZS itself contributes Z/2.
pub fn build_symmetric_only(g: usize) -> ConstructionData {
    assert!(g >= 3, "the family starts at dimension 3");
    let h = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
    let two = IntMat::identity(2 * g - 4).scale(&int(2));
    let s = IntMat::block_diag(&[&two, &h, &h]);
    assert_admissible(&s);
    ConstructionData::new(g, s, None, None).expect("the block form is symmetric")
}

/// S = (-2I_2) + M + M + 2I_{2g-6} with M = [[2,1],[1,2]], together with the
/// integral complex structure J0 (a rotation block, a swap of the two M
/// summands, then rotation blocks) and E = S J0. The form lattice ZS + ZE is
/// saturated, E polarises the eventual torus, and the quotient is again Z/2.
pub fn build_polarised_pair(g: usize) -> ConstructionData {
    assert!(g >= 3, "the family starts at dimension 3");
    let rot = IntMat::from_rows(&[vec![0, -1], vec![1, 0]]);
    let m = IntMat::from_rows(&[vec![2, 1], vec![1, 2]]);
    let minus_two = IntMat::identity(2).scale(&int(-2));
    let tail = IntMat::identity(2 * g - 6).scale(&int(2));
    let s = IntMat::block_diag(&[&minus_two, &m, &m, &tail]);
    assert_admissible(&s);

    let swap = IntMat::from_rows(&[
        vec![0, 0, -1, 0],
        vec![0, 0, 0, -1],
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
    ]);
    let mut blocks = vec![&rot, &swap];
    for _ in 0..g - 3 {
        blocks.push(&rot);
    }
    let j0 = IntMat::block_diag(&blocks);
    let e = s.mul(&j0);
    ConstructionData::new(g, s, Some(j0), Some(e))
        .expect("the paired construction satisfies its own identities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ZLattice;
    use crate::torus::{invariant_brauer, ns_sublattice, FormLattice};

    fn form_span(data: &ConstructionData) -> ZLattice {
        let n2 = 4 * data.g() * data.g();
        let mut rows = vec![IntMat::from_flat(1, n2, data.s().flatten())];
        if let Some(e) = data.e() {
            rows.push(IntMat::from_flat(1, n2, e.flatten()));
        }
        let refs: Vec<&IntMat> = rows.iter().collect();
        ZLattice::from_generators(&IntMat::vstack(&refs).to_qmat())
    }

    #[test]
    fn symmetric_only_family_hypotheses() {
        for g in 3..=8 {
            let data = build_symmetric_only(g);
            let s = data.s();
            assert_eq!(s.rows(), 2 * g);
            assert!(data.j0().is_none() && data.e().is_none());
            let (p, q, z) = exact_signature(&s.to_qmat()).unwrap();
            assert_eq!((p, q, z), (2 * g - 2, 2, 0), "signature at g = {}", g);
        }
    }

    #[test]
    fn symmetric_only_brauer_and_empty_ns() {
        for g in [3, 4] {
            let data = build_symmetric_only(g);
            let f = FormLattice::new(2 * g, vec![data.s().clone()]).unwrap();
            assert_eq!(invariant_brauer(&f).to_string(), "Z/2");
            assert_eq!(ns_sublattice(&f).rank(), 0, "no alternating forms at g = {}", g);
        }
    }

    #[test]
    fn polarised_pair_exact_identities() {
        for g in 3..=8 {
            let data = build_polarised_pair(g);
            let n = 2 * g;
            let j0 = data.j0().expect("pair data carries J0");
            let e = data.e().expect("pair data carries E");
            assert_eq!(j0.mul(j0), IntMat::identity(n).neg(), "J0^2 at g = {}", g);
            assert_eq!(&j0.transpose().mul(data.s()).mul(j0), data.s());
            assert_eq!(e, &data.s().mul(j0));
            assert!(e.is_antisymmetric());
        }
    }

    #[test]
    fn polarised_pair_displayed_matrix() {
        let data = build_polarised_pair(3);
        let expected = IntMat::from_rows(&[
            vec![0, 2, 0, 0, 0, 0],
            vec![-2, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, -2, -1],
            vec![0, 0, 0, 0, -1, -2],
            vec![0, 0, 2, 1, 0, 0],
            vec![0, 0, 1, 2, 0, 0],
        ]);
        assert_eq!(data.e().unwrap(), &expected);
    }

    #[test]
    fn pair_span_is_saturated() {
        for g in 3..=8 {
            let data = build_polarised_pair(g);
            let span = form_span(&data);
            assert_eq!(span.rank(), 2);
            assert_eq!(span.saturate(), span, "ZS + ZE is saturated at g = {}", g);
        }
    }

    #[test]
    fn polarised_pair_brauer_and_ns_rank() {
        for g in [3, 4] {
            let data = build_polarised_pair(g);
            let forms = vec![data.s().clone(), data.e().unwrap().clone()];
            let f = FormLattice::new(2 * g, forms).unwrap();
            assert_eq!(invariant_brauer(&f).to_string(), "Z/2");
            assert_eq!(ns_sublattice(&f).rank(), 1, "NS spanned by E at g = {}", g);
        }
    }

    #[test]
    fn constructor_rejects_bad_data() {
        assert_eq!(
            ConstructionData::new(2, IntMat::identity(4), None, None).unwrap_err(),
            Error::BadConstructionShape
        );
        let s = IntMat::identity(6).scale(&int(2));
        let not_j = IntMat::identity(6);
        assert_eq!(
            ConstructionData::new(3, s.clone(), Some(not_j), None).unwrap_err(),
            Error::IncompatibleData
        );
        let good = build_polarised_pair(3);
        assert_eq!(
            ConstructionData::new(3, good.s().clone(), None, Some(good.e().unwrap().clone()))
                .unwrap_err(),
            Error::IncompatibleData,
            "E without J0 is rejected"
        );
    }
}
