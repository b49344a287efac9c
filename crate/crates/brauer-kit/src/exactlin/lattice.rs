//! Finitely generated subgroups of Q^n (lattices, possibly of non-full rank).
//!
//! A lattice is stored in canonical form: a positive scale s and an integer
//! matrix B in Hermite normal form with independent rows, representing
//! (1/s) * rowspan_Z(B). The scale is the minimal positive integer with
//! s * L integral and satisfies gcd(content(B), s) = 1, so structural
//! equality of the stored data is equality of lattices.

use num_traits::{One, Zero};

use super::group::FinAbGroup;
use super::hnf::{hnf_basis, integer_kernel};
use super::mat::{Int, IntMat, QMat, Rat};
use super::snf::snf;
use super::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct ZLattice {
    ambient: usize,
    scale: Int,
    basis_int: IntMat,
}

/// A lattice quotient sup/sub presented by invariant factors, with one
/// deterministic ambient-space representative per torsion factor.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub group: FinAbGroup,
    /// Generators of the cyclic torsion factors, aligned with
    /// group.invariant_factors(). Reduced to canonical coset representatives
    /// modulo the sublattice.
    pub torsion_generators: Vec<Vec<Rat>>,
}

impl ZLattice {
    pub fn zero(ambient: usize) -> Self {
        ZLattice { ambient, scale: Int::one(), basis_int: IntMat::zero(0, ambient) }
    }

    /// The full integer lattice Z^n.
    pub fn standard(n: usize) -> Self {
        ZLattice { ambient: n, scale: Int::one(), basis_int: IntMat::identity(n) }
    }

    /// Lattice generated by the rows of g; dependent or zero rows are fine.
    pub fn from_generators(g: &QMat) -> Self {
        let (m, s) = g.clear_denominators();
        let b = hnf_basis(&m);
        ZLattice { ambient: g.cols(), scale: s, basis_int: b }
    }

    pub fn from_integer_generators(g: &IntMat) -> Self {
        ZLattice { ambient: g.cols(), scale: Int::one(), basis_int: hnf_basis(g) }
    }

    /// Like from_generators but requires the rows to be independent.
    pub fn from_basis(g: &QMat) -> Result<Self, Error> {
        let l = ZLattice::from_generators(g);
        if l.rank() != g.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(l)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis_int.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical basis over Q (integer HNF basis divided by the scale).
    pub fn basis(&self) -> QMat {
        let s = Rat::from(self.scale.clone());
        QMat::from_fn(self.rank(), self.ambient, |i, j| {
            Rat::from(self.basis_int[(i, j)].clone()) / s.clone()
        })
    }

    /// The integer matrix part of the canonical form, i.e. scale * basis.
    pub fn scaled_basis(&self) -> &IntMat {
        &self.basis_int
    }

    pub fn scale(&self) -> &Int {
        &self.scale
    }

    pub fn is_integral(&self) -> bool {
        self.scale.is_one()
    }

    /// Coordinates of v in the basis, over Q; None when v lies outside the
    /// rational span.
    pub fn coords_in_span(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        if self.rank() == 0 {
            return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
        }
        // Solve x * basis = v via the transpose system basis^T x^T = v^T;
        // the basis rows are independent so the solution is unique if any.
        let bt = self.basis().transpose();
        bt.solve(v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.coords_in_span(v) {
            Some(coords) => coords.iter().all(|c| c.denom().is_one()),
            None => false,
        }
    }

    pub fn contains_lattice(&self, other: &ZLattice) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        (0..other.rank()).all(|i| self.contains(other.basis().row(i)))
    }

    /// Lattice sum self + other inside the common ambient space.
    pub fn sum(&self, other: &ZLattice) -> ZLattice {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        ZLattice::from_generators(&QMat::vstack(&[&self.basis(), &other.basis()]))
    }

    /// Integer points of the rational span: rowspan_Q(self) intersected with
    /// Z^n. Implemented as a double integer kernel, so the result is the
    /// saturation of the integer sublattice scale * self.
    pub fn saturate(&self) -> ZLattice {
        ZLattice::from_integer_generators(&integer_kernel(&integer_kernel(&self.basis_int)))
    }

    pub fn is_saturated(&self) -> bool {
        self.scale.is_one() && *self == self.saturate()
    }

    /// Canonical coset representative of v modulo this lattice: each pivot
    /// coordinate of the Hermite basis is reduced into [0, pivot/scale).
    /// Vectors in the same coset map to the same representative.
    pub fn reduce_mod(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w: Vec<Rat> = v.to_vec();
        for i in 0..self.rank() {
            let Some(p) = (0..self.ambient).find(|&j| !self.basis_int[(i, j)].is_zero()) else {
                continue;
            };
            // q = floor(w[p] / b[p]) where b is basis row i over Q.
            let b_p = Rat::new(self.basis_int[(i, p)].clone(), self.scale.clone());
            let q = (&w[p] / &b_p).floor();
            if q.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                let step = &q * Rat::new(self.basis_int[(i, j)].clone(), self.scale.clone());
                w[j] -= step;
            }
        }
        w
    }

    /// Quotient sup/sub. Errors with NotASublattice unless sub is contained
    /// in sup.
    pub fn quotient(sub: &ZLattice, sup: &ZLattice) -> Result<QuotientPresentation, Error> {
        if sub.ambient != sup.ambient {
            return Err(Error::AmbientMismatch(sub.ambient, sup.ambient));
        }
        // Coordinates of each sub basis vector in the sup basis; they must
        // exist and be integral.
        let r_sub = sub.rank();
        let r_sup = sup.rank();
        let mut c = IntMat::zero(r_sub, r_sup);
        let sub_basis = sub.basis();
        for i in 0..r_sub {
            let coords = sup.coords_in_span(sub_basis.row(i)).ok_or(Error::NotASublattice)?;
            for (j, x) in coords.iter().enumerate() {
                if !x.denom().is_one() {
                    return Err(Error::NotASublattice);
                }
                c[(i, j)] = x.numer().clone();
            }
        }
        let s = snf(&c);
        let diag = s.nonzero_diagonal();
        let free = r_sup - diag.len();
        // Quotient coordinates: x mod rowspan(C) corresponds to x*v mod
        // rowspan(D), so the class generating the i-th cyclic factor is row i
        // of v^{-1}, mapped back to the ambient space through the sup basis.
        let v_inv = s
            .v
            .to_qmat()
            .inverse()
            .expect("SNF column transform is unimodular");
        let sup_basis = sup.basis();
        let mut torsion_generators = Vec::new();
        let mut factors = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            factors.push(d.clone());
            let coeffs: Vec<Rat> = (0..r_sup).map(|j| v_inv[(i, j)].clone()).collect();
            let mut ambient_vec = vec![Rat::zero(); sup.ambient];
            for (j, coef) in coeffs.iter().enumerate() {
                for k in 0..sup.ambient {
                    let t = coef * &sup_basis[(j, k)];
                    ambient_vec[k] += t;
                }
            }
            torsion_generators.push(sub.reduce_mod(&ambient_vec));
        }
        Ok(QuotientPresentation { group: FinAbGroup::new(free, factors), torsion_generators })
    }

    /// Index [sup : sub] when finite.
    pub fn index_in(sub: &ZLattice, sup: &ZLattice) -> Result<Option<Int>, Error> {
        Ok(ZLattice::quotient(sub, sup)?.group.order())
    }
}

impl std::fmt::Debug for ZLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ZLattice(ambient={}, scale={}, basis={:?})", self.ambient, self.scale, self.basis_int)
    }
}

/// Dual of l with respect to a symmetric pairing g on the ambient space:
/// {v in span(l) : g(v, x) in Z for all x in l}. The pairing must be
/// nondegenerate on the span of l.
pub fn dual_lattice(l: &ZLattice, g: &QMat) -> Result<ZLattice, Error> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    assert_eq!(g.rows(), l.ambient(), "pairing has wrong ambient dimension");
    let b = l.basis();
    let gram = b.mul(g).mul(&b.transpose());
    let inv = gram.inverse().ok_or(Error::DegeneratePairing)?;
    let dual_basis = inv.mul(&b);
    ZLattice::from_basis(&dual_basis)
}
