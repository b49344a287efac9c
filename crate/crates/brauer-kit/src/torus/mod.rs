//! Complex tori with exact rational complex structure.
//!
//! A torus is Z^{2g} together with a rational matrix J satisfying J^2 = -1.
//! The central object is the lattice Bi_J of integral bilinear forms G with
//! G(Jx, Jy) = G(x, y), i.e. J^T G J = G, carried around as a FormLattice:
//! a saturated, transpose-stable lattice of integer Gram matrices. The
//! invariant Brauer group of the torus is computed from the FormLattice
//! alone, through three independent routes (see the brauer submodule).

pub mod albert;
pub mod brauer;
pub mod polarisation;

use num_traits::{One, Zero};

use crate::exactlin::{integer_kernel, IntMat, QMat, Rat, ZLattice};

pub use albert::{albert_bound, AlbertFactor, AlbertReport, AlbertType};
pub use brauer::{
    brauer_mod4_oracle, brauer_via_h1, brauer_via_h1_presentation, invariant_brauer,
    invariant_brauer_presentation, odd_index_sublattice_brauer, upper_bound_check,
    BrauerPresentation, UpperBoundReport,
};
pub use polarisation::{find_polarisation, is_polarisation, PolarisationSearch};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("J squared is not minus the identity")]
    NotAComplexStructure,
    #[error("complex structure must be square of even dimension")]
    BadTorusShape,
    #[error("form {0} has the wrong shape")]
    FormShapeMismatch(usize),
    #[error("basis forms are linearly dependent")]
    DependentForms,
    #[error("transpose of form {0} leaves the span")]
    NotTauStable(usize),
    #[error("form lattice is not saturated in the integral forms of its span")]
    NotSaturated,
    #[error("no nondegenerate form exists in the lattice span")]
    NoNondegenerateForm,
    #[error("instance exceeds the enumeration guard")]
    InstanceTooLarge,
    #[error("basis change has even determinant")]
    EvenIndex,
    #[error("albert table constraints violated by factor {0}")]
    TableViolation(usize),
}

/// Z^{2g} with a rational complex structure acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTorus {
    g: usize,
    j: QMat,
}

impl RationalTorus {
    pub fn new(j: QMat) -> Result<Self, Error> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(Error::BadTorusShape);
        }
        let n = j.rows();
        if j.mul(&j) != QMat::identity(n).neg() {
            return Err(Error::NotAComplexStructure);
        }
        Ok(RationalTorus { g: n / 2, j })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn lattice_rank(&self) -> usize {
        2 * self.g
    }

    pub fn j(&self) -> &QMat {
        &self.j
    }
}

/// Block-diagonal product torus.
pub fn product(t1: &RationalTorus, t2: &RationalTorus) -> RationalTorus {
    let j = QMat::block_diag(&[&t1.j, &t2.j]);
    RationalTorus { g: t1.g + t2.g, j }
}

/// A saturated, transpose-stable lattice of integral bilinear forms on Z^n,
/// presented by a basis of Gram matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormLattice {
    n: usize,
    forms: Vec<IntMat>,
    /// Coordinates of the transpose action: column i holds the coordinates
    /// of forms[i]^T in the basis. Satisfies tau^2 = 1.
    tau: IntMat,
}

impl FormLattice {
    /// Validates shapes, independence, transpose stability and saturation.
    /// The caller's basis is kept as given.
    pub fn new(n: usize, forms: Vec<IntMat>) -> Result<Self, Error> {
        for (i, f) in forms.iter().enumerate() {
            if f.rows() != n || f.cols() != n {
                return Err(Error::FormShapeMismatch(i));
            }
        }
        let r = forms.len();
        let vec_mat = vectorize(n, &forms);
        let lattice = ZLattice::from_integer_generators(&vec_mat);
        if lattice.rank() != r {
            return Err(Error::DependentForms);
        }
        if !lattice.is_saturated() {
            return Err(Error::NotSaturated);
        }
        // Transpose each basis form and express it in the caller's basis
        // (not the canonical one); stability demands integral coordinates.
        let mut tau = IntMat::zero(r, r);
        let basis_t = vec_mat.to_qmat().transpose();
        for (i, f) in forms.iter().enumerate() {
            let tv: Vec<Rat> = f.transpose().flatten().into_iter().map(Rat::from).collect();
            let coords = basis_t.solve(&tv).ok_or(Error::NotTauStable(i))?;
            for (j, c) in coords.iter().enumerate() {
                if !c.denom().is_one() {
                    return Err(Error::NotTauStable(i));
                }
                tau[(j, i)] = c.numer().clone();
            }
        }
        debug_assert_eq!(tau.mul(&tau), IntMat::identity(r), "transpose action must square to 1");
        Ok(FormLattice { n, forms, tau })
    }

    /// Closes a generating set under transpose, saturates, and returns the
    /// lattice with its canonical Hermite basis.
    pub fn span(n: usize, generators: &[IntMat]) -> Result<Self, Error> {
        for (i, f) in generators.iter().enumerate() {
            if f.rows() != n || f.cols() != n {
                return Err(Error::FormShapeMismatch(i));
            }
        }
        let mut gens: Vec<IntMat> = generators.to_vec();
        gens.extend(generators.iter().map(IntMat::transpose));
        let lattice = ZLattice::from_integer_generators(&vectorize(n, &gens)).saturate();
        let basis = lattice.scaled_basis();
        let forms: Vec<IntMat> = (0..basis.rows())
            .map(|i| unvectorize(n, basis.row(i)))
            .collect();
        FormLattice::new(n, forms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[IntMat] {
        &self.forms
    }

    pub fn tau(&self) -> &IntMat {
        &self.tau
    }

    /// The lattice of vectorized forms inside Z^{n^2}.
    pub fn vector_lattice(&self) -> ZLattice {
        ZLattice::from_integer_generators(&vectorize(self.n, &self.forms))
    }

    /// The form with the given basis coordinates.
    pub fn form_from_coords(&self, coords: &[crate::exactlin::Int]) -> IntMat {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        let mut g = IntMat::zero(self.n, self.n);
        for (c, f) in coords.iter().zip(&self.forms) {
            g = g.add(&f.scale(c));
        }
        g
    }

    /// Membership test for an integral form.
    pub fn contains(&self, form: &IntMat) -> bool {
        if form.rows() != self.n || form.cols() != self.n {
            return false;
        }
        let v: Vec<Rat> = form.flatten().into_iter().map(Rat::from).collect();
        self.vector_lattice().contains(&v)
    }
}

/// Rows = row-major flattenings of the forms.
fn vectorize(n: usize, forms: &[IntMat]) -> IntMat {
    let mut m = IntMat::zero(forms.len(), n * n);
    for (i, f) in forms.iter().enumerate() {
        for (j, v) in f.flatten().into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

fn unvectorize(n: usize, row: &[crate::exactlin::Int]) -> IntMat {
    IntMat::from_flat(n, n, row.to_vec())
}

/// All integral G with J^T G J = G, computed exactly and saturated. In the
/// row-major vectorization the condition reads (J^T ⊗ J^T - 1) vec(G) = 0.
pub fn bilinear_forms(t: &RationalTorus) -> FormLattice {
    let n = t.lattice_rank();
    let j = t.j();
    let mut op = QMat::zero(n * n, n * n);
    for i in 0..n {
        for jj in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = &j[(k, i)] * &j[(l, jj)];
                    if i == k && jj == l {
                        v -= Rat::one();
                    }
                    op[(i * n + jj, k * n + l)] = v;
                }
            }
        }
    }
    let (cleared, _) = op.clear_denominators();
    let kernel = integer_kernel(&cleared);
    let forms: Vec<IntMat> = (0..kernel.rows()).map(|i| unvectorize(n, kernel.row(i))).collect();
    FormLattice::new(n, forms).expect("kernel of a rational system is saturated and tau-stable")
}

/// Sublattice of alternating forms (G^T = -G) in the span, vectorized in
/// Z^{n^2}. Its rank is the Neron-Severi rank.
pub fn ns_sublattice(f: &FormLattice) -> ZLattice {
    let n = f.n();
    let r = f.rank();
    // Columns: vec(F_j + F_j^T); kernel vectors are alternating combinations.
    let mut sym_part = IntMat::zero(n * n, r);
    for (j, form) in f.forms().iter().enumerate() {
        let s = form.add(&form.transpose());
        for (idx, v) in s.flatten().into_iter().enumerate() {
            sym_part[(idx, j)] = v;
        }
    }
    let coeffs = integer_kernel(&sym_part);
    let vec_mat = vectorize(n, f.forms());
    ZLattice::from_integer_generators(&coeffs.mul(&vec_mat))
}

/// Rank of the lattice of integer matrices commuting with J.
pub fn end_rank(t: &RationalTorus) -> usize {
    let n = t.lattice_rank();
    let j = t.j();
    // (J ⊗ 1 - 1 ⊗ J^T) vec(M) = 0 in the row-major vectorization.
    let mut op = QMat::zero(n * n, n * n);
    for i in 0..n {
        for jj in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = Rat::zero();
                    if jj == l {
                        v += j[(i, k)].clone();
                    }
                    if i == k {
                        v -= j[(l, jj)].clone();
                    }
                    op[(i * n + jj, k * n + l)] = v;
                }
            }
        }
    }
    let (cleared, _) = op.clear_denominators();
    integer_kernel(&cleared).rows()
}

/// Rank report for the form lattice and endomorphism lattice of a torus,
/// with a nondegenerate witness form.
#[derive(Debug, Clone)]
pub struct BiEndsReport {
    pub form_rank: usize,
    pub end_rank: usize,
    pub witness: IntMat,
}

impl BiEndsReport {
    pub fn ranks_equal(&self) -> bool {
        self.form_rank == self.end_rank
    }
}

/// Budget for the complete nondegeneracy grid: a determinant of a linear
/// combination has degree <= n in each coefficient, so vanishing on the
/// whole grid {0..n}^r proves the polynomial is identically zero.
const GRID_BUDGET: u64 = 20_000;

/// Finds a nondegenerate form in the lattice, or proves none exists.
/// InstanceTooLarge is returned when the complete grid is infeasible and
/// random sampling fails; it never claims a proof either way.
pub fn nondegenerate_witness(f: &FormLattice) -> Result<IntMat, Error> {
    let r = f.rank();
    if r == 0 {
        return Err(Error::NoNondegenerateForm);
    }
    let n = f.n();
    for form in f.forms() {
        if !form.det().is_zero() {
            return Ok(form.clone());
        }
    }
    let sum = f.forms().iter().fold(IntMat::zero(n, n), |acc, g| acc.add(g));
    if !sum.det().is_zero() {
        return Ok(sum);
    }
    let grid_size = ((n + 1) as u64).checked_pow(r as u32);
    if grid_size.is_some_and(|s| s <= GRID_BUDGET) {
        let mut coeffs = vec![0usize; r];
        loop {
            // Advance the odometer; all-zero was already covered by `sum`
            // being zero, so skip nothing else.
            let mut pos = 0;
            while pos < r {
                coeffs[pos] += 1;
                if coeffs[pos] <= n {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == r {
                break;
            }
            let candidate = combination(f, &coeffs);
            if !candidate.det().is_zero() {
                return Ok(candidate);
            }
        }
        return Err(Error::NoNondegenerateForm);
    }
    // Infeasible grid: deterministic seeded sampling, inconclusive on miss.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x42);
    for _ in 0..500 {
        let coeffs: Vec<i64> = (0..r).map(|_| rng.gen_range(-(n as i64)..=n as i64)).collect();
        let mut g = IntMat::zero(n, n);
        for (c, form) in coeffs.iter().zip(f.forms()) {
            g = g.add(&form.scale(&crate::exactlin::int(*c)));
        }
        if !g.det().is_zero() {
            return Ok(g);
        }
    }
    Err(Error::InstanceTooLarge)
}

fn combination(f: &FormLattice, coeffs: &[usize]) -> IntMat {
    let mut g = IntMat::zero(f.n(), f.n());
    for (c, form) in coeffs.iter().zip(f.forms()) {
        if *c != 0 {
            g = g.add(&form.scale(&crate::exactlin::int(*c as i64)));
        }
    }
    g
}

/// Computes both ranks and a nondegeneracy witness for the form lattice.
/// For a rational J the two ranks always agree (both equal 2g^2).
pub fn check_bi_ends(t: &RationalTorus) -> Result<BiEndsReport, Error> {
    let f = bilinear_forms(t);
    let witness = nondegenerate_witness(&f)?;
    Ok(BiEndsReport { form_rank: f.rank(), end_rank: end_rank(t), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    pub(crate) fn standard_j(g: usize) -> QMat {
        // Block diagonal copies of [[0,-1],[1,0]].
        let block = QMat::from_ratios(&[vec![(0, 1), (-1, 1)], vec![(1, 1), (0, 1)]]);
        let blocks: Vec<&QMat> = (0..g).map(|_| &block).collect();
        QMat::block_diag(&blocks)
    }

    #[test]
    fn torus_validates_complex_structure() {
        assert!(RationalTorus::new(standard_j(1)).is_ok());
        assert!(RationalTorus::new(standard_j(3)).is_ok());
        let err = RationalTorus::new(QMat::identity(2)).unwrap_err();
        assert_eq!(err, Error::NotAComplexStructure);
        let err = RationalTorus::new(QMat::identity(3)).unwrap_err();
        assert_eq!(err, Error::BadTorusShape);
    }

    #[test]
    fn bilinear_forms_of_the_standard_elliptic_torus() {
        let t = RationalTorus::new(standard_j(1)).unwrap();
        let f = bilinear_forms(&t);
        assert_eq!(f.rank(), 2);
        // Contains the standard symplectic form and satisfies the defining
        // equation on every basis form.
        let symplectic = IntMat::from_rows(&[vec![0, 1], vec![-1, 0]]);
        assert!(f.contains(&symplectic));
        let j = t.j();
        for g in f.forms() {
            let gq = g.to_qmat();
            assert_eq!(j.transpose().mul(&gq).mul(j), gq);
        }
    }

    #[test]
    fn bilinear_forms_rank_is_twice_g_squared() {
        // tr(J) = 0 forces the fixed space of G -> J^T G J to have dimension
        // exactly 2g^2 for any rational complex structure.
        for g in 1..=3 {
            let t = RationalTorus::new(standard_j(g)).unwrap();
            assert_eq!(bilinear_forms(&t).rank(), 2 * g * g);
        }
    }

    #[test]
    fn form_lattice_validation_catches_bad_bases() {
        let s = IntMat::from_rows(&[vec![2, 1], vec![1, 2]]);
        let dep = FormLattice::new(2, vec![s.clone(), s.scale(&int(2))]);
        assert_eq!(dep.unwrap_err(), Error::DependentForms);
        // 2S alone spans an unsaturated lattice (S is integral in its span).
        let unsat = FormLattice::new(2, vec![s.scale(&int(2))]);
        assert_eq!(unsat.unwrap_err(), Error::NotSaturated);
        // A non-transpose-stable span.
        let e12 = IntMat::from_rows(&[vec![0, 1], vec![0, 0]]);
        let bad = FormLattice::new(2, vec![e12]);
        assert_eq!(bad.unwrap_err(), Error::NotTauStable(0));
        assert!(FormLattice::new(2, vec![s]).is_ok());
    }

    #[test]
    fn span_closes_saturates_and_canonicalizes() {
        let e12 = IntMat::from_rows(&[vec![0, 2], vec![0, 0]]);
        let f = FormLattice::span(2, &[e12]).unwrap();
        // Transpose closure plus saturation gives E12, E21 up to basis.
        assert_eq!(f.rank(), 2);
        assert!(f.contains(&IntMat::from_rows(&[vec![0, 1], vec![0, 0]])));
        assert!(f.contains(&IntMat::from_rows(&[vec![0, 0], vec![1, 0]])));
    }

    #[test]
    fn ns_sublattice_picks_out_alternating_forms() {
        let t = RationalTorus::new(standard_j(1)).unwrap();
        let f = bilinear_forms(&t);
        let ns = ns_sublattice(&f);
        assert_eq!(ns.rank(), 1);
        // Generated by the symplectic form, up to sign.
        let symplectic: Vec<Rat> = IntMat::from_rows(&[vec![0, 1], vec![-1, 0]])
            .flatten()
            .into_iter()
            .map(Rat::from)
            .collect();
        assert!(ns.contains(&symplectic));
    }

    #[test]
    fn ns_of_symmetric_only_lattice_is_zero() {
        let s = IntMat::from_rows(&[vec![2, 1], vec![1, 2]]);
        let f = FormLattice::new(2, vec![s]).unwrap();
        assert_eq!(ns_sublattice(&f).rank(), 0);
    }

    #[test]
    fn end_rank_of_standard_tori() {
        let t1 = RationalTorus::new(standard_j(1)).unwrap();
        assert_eq!(end_rank(&t1), 2);
        let t2 = product(&t1, &t1);
        assert_eq!(end_rank(&t2), 8);
    }

    #[test]
    fn check_bi_ends_reports_equal_ranks() {
        for g in 1..=2 {
            let t = RationalTorus::new(standard_j(g)).unwrap();
            let report = check_bi_ends(&t).unwrap();
            assert!(report.ranks_equal());
            assert_eq!(report.form_rank, 2 * g * g);
            assert!(!report.witness.det().is_zero());
        }
    }

    #[test]
    fn nondegenerate_witness_proves_absence_on_singular_spans() {
        // Every form in the span of E11 is singular; the grid is complete.
        let e11 = IntMat::from_rows(&[vec![1, 0], vec![0, 0]]);
        let f = FormLattice::new(2, vec![e11]).unwrap();
        assert_eq!(nondegenerate_witness(&f).unwrap_err(), Error::NoNondegenerateForm);
        // Rank 0 is immediate.
        let empty = FormLattice::new(2, vec![]).unwrap();
        assert_eq!(nondegenerate_witness(&empty).unwrap_err(), Error::NoNondegenerateForm);
    }

    #[test]
    fn product_torus_block_structure() {
        let t1 = RationalTorus::new(standard_j(1)).unwrap();
        let t2 = RationalTorus::new(standard_j(2)).unwrap();
        let p = product(&t1, &t2);
        assert_eq!(p.g(), 3);
        assert_eq!(p.j().rows(), 6);
        assert!(RationalTorus::new(p.j().clone()).is_ok());
    }
}
