//! Étale Q-algebras with conjugation, trace-dual lattices and the invariant
//! Brauer group of a CM lattice: the quotient of the conjugation-fixed,
//! even part of the trace dual by the image of (1 + conjugation).

pub mod cyclotomic;
pub mod surfaces;

pub use cyclotomic::{
    cyclotomic_algebra, cyclotomic_brauer, cyclotomic_different, cyclotomic_polynomial,
    ideal_lattice_brauer,
};
pub use surfaces::{build_nonsimple_cm_surface, build_quartic_cm};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactlin::{
    dual_lattice, int, integer_kernel, FinAbGroup, Int, IntMat, QMat, Rat, ZLattice,
};
use crate::torus::FormLattice;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("structure constants, unit or conjugation have inconsistent shapes")]
    BadShape,
    #[error("multiplication table is not commutative")]
    NotCommutative,
    #[error("multiplication table is not associative")]
    NotAssociative,
    #[error("designated unit is not a two-sided identity")]
    NotUnital,
    #[error("conjugation is not a ring involution")]
    NotAnInvolution,
    #[error("trace form is degenerate, the algebra is not etale")]
    DegenerateTrace,
    #[error("lattice generators do not span the algebra")]
    NotFullRank,
    #[error("lattice is not a conjugation-stable subring")]
    NotAConjugationStableSubring,
    #[error("generators do not define a nonzero ideal")]
    NotAnIdeal,
    #[error("discriminants must be distinct odd square-free negative integers agreeing mod 4")]
    InvalidDiscriminants,
}

/// A commutative étale Q-algebra with a conjugation, given by structure
/// constants on a fixed basis. Elements are coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    dim: usize,
    /// table[i] row j = coordinates of b_i * b_j.
    table: Vec<QMat>,
    one: Vec<Rat>,
    conjugation: QMat,
}

impl EtaleAlgebra {
    /// Validates commutativity, associativity, the unit, the conjugation
    /// (a ring involution) and nondegeneracy of the trace form.
    pub fn new(table: Vec<QMat>, one: Vec<Rat>, conjugation: QMat) -> Result<Self, Error> {
        let d = table.len();
        if d == 0
            || one.len() != d
            || conjugation.rows() != d
            || conjugation.cols() != d
            || table.iter().any(|m| m.rows() != d || m.cols() != d)
        {
            return Err(Error::BadShape);
        }
        for i in 0..d {
            for j in 0..i {
                if table[i].row(j) != table[j].row(i) {
                    return Err(Error::NotCommutative);
                }
            }
        }
        let alg = EtaleAlgebra { dim: d, table, one, conjugation };
        for j in 0..d {
            let ej = alg.basis_element(j);
            if alg.mul(&alg.one, &ej) != ej {
                return Err(Error::NotUnital);
            }
        }
        // Associativity over the integers: with T_i the cleared operator of
        // multiplication by b_i, the identity reads T_i T_j = sum of the
        // cleared structure constants c'_{ijk} T_k.
        let denom = alg.joint_denominator();
        let ops: Vec<IntMat> = (0..d).map(|i| alg.cleared_operator(i, &denom)).collect();
        for i in 0..d {
            for j in 0..=i {
                let lhs = ops[i].mul(&ops[j]);
                let mut rhs = IntMat::zero(d, d);
                for k in 0..d {
                    let c = &alg.table[i][(j, k)] * Rat::from(denom.clone());
                    debug_assert!(c.denom().is_one(), "cleared constants are integral");
                    if !c.numer().is_zero() {
                        rhs = rhs.add(&ops[k].scale(c.numer()));
                    }
                }
                if lhs != rhs {
                    return Err(Error::NotAssociative);
                }
            }
        }
        if alg.conjugation.mul(&alg.conjugation) != QMat::identity(d) {
            return Err(Error::NotAnInvolution);
        }
        // Ring homomorphism: C M_i = M_{C b_i} C for every basis element.
        let (c_int, c_scale) = alg.conjugation.clear_denominators();
        for i in 0..d {
            let lhs = c_int.mul(&ops[i]).scale(&c_scale);
            let mut weighted = IntMat::zero(d, d);
            for l in 0..d {
                if !c_int[(l, i)].is_zero() {
                    weighted = weighted.add(&ops[l].scale(&c_int[(l, i)]));
                }
            }
            if lhs != weighted.mul(&c_int) {
                return Err(Error::NotAnInvolution);
            }
        }
        if alg.trace_gram().rank() != d {
            return Err(Error::DegenerateTrace);
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[Rat] {
        &self.one
    }

    pub fn conjugation(&self) -> &QMat {
        &self.conjugation
    }

    pub fn table(&self) -> &[QMat] {
        &self.table
    }

    pub fn basis_element(&self, i: usize) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); self.dim];
        e[i] = Rat::one();
        e
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim, "element dimension mismatch");
        assert_eq!(y.len(), self.dim, "element dimension mismatch");
        let mut z = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.table[i].row(j).iter().enumerate() {
                    if !t.is_zero() {
                        z[k] += &c * t;
                    }
                }
            }
        }
        z
    }

    pub fn conj(&self, x: &[Rat]) -> Vec<Rat> {
        self.conjugation.mul_vec(x)
    }

    /// Matrix of multiplication by x acting on coordinate columns.
    pub fn mult_operator(&self, x: &[Rat]) -> QMat {
        let mut m = QMat::zero(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, t) in self.table[i].row(j).iter().enumerate() {
                    if !t.is_zero() {
                        m[(k, j)] += xi * t;
                    }
                }
            }
        }
        m
    }

    /// Multiplicative inverse, or None for a zero divisor.
    pub fn inverse(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        self.mult_operator(x).solve(&self.one)
    }

    /// Traces of the basis elements.
    fn trace_vector(&self) -> Vec<Rat> {
        (0..self.dim)
            .map(|k| {
                let mut t = Rat::zero();
                for j in 0..self.dim {
                    t += &self.table[k][(j, j)];
                }
                t
            })
            .collect()
    }

    /// Gram matrix of the pairing (x, y) -> tr(xy) on the basis.
    fn trace_gram(&self) -> QMat {
        let t = self.trace_vector();
        let mut g = QMat::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                let mut v = Rat::zero();
                for (k, tk) in t.iter().enumerate() {
                    let c = &self.table[i][(j, k)];
                    if !c.is_zero() {
                        v += c * tk;
                    }
                }
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        g
    }

    fn joint_denominator(&self) -> Int {
        let mut denom = Int::one();
        for m in &self.table {
            for i in 0..self.dim {
                for c in m.row(i) {
                    denom = denom.lcm(c.denom());
                }
            }
        }
        denom
    }

    /// denom * (matrix of multiplication by b_i), integral by choice of denom.
    fn cleared_operator(&self, i: usize, denom: &Int) -> IntMat {
        IntMat::from_fn(self.dim, self.dim, |k, j| {
            let v = &self.table[i][(j, k)] * Rat::from(denom.clone());
            debug_assert!(v.denom().is_one(), "joint denominator clears the table");
            v.numer().clone()
        })
    }
}

/// Trace of the multiplication-by-x operator.
pub fn trace(algebra: &EtaleAlgebra, x: &[Rat]) -> Rat {
    assert_eq!(x.len(), algebra.dim(), "element dimension mismatch");
    let t = algebra.trace_vector();
    let mut v = Rat::zero();
    for (xi, ti) in x.iter().zip(&t) {
        if !xi.is_zero() {
            v += xi * ti;
        }
    }
    v
}

/// The bilinear form attached to alpha: tr(alpha * x * conj(y)).
pub fn bilinear_value(algebra: &EtaleAlgebra, alpha: &[Rat], x: &[Rat], y: &[Rat]) -> Rat {
    trace(algebra, &algebra.mul(alpha, &algebra.mul(x, &algebra.conj(y))))
}

/// A full-rank lattice in an étale algebra, kept in canonical Hermite form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraLattice {
    algebra: EtaleAlgebra,
    lattice: ZLattice,
}

impl AlgebraLattice {
    pub fn new(algebra: EtaleAlgebra, generators: &QMat) -> Result<Self, Error> {
        if generators.cols() != algebra.dim() {
            return Err(Error::BadShape);
        }
        let lattice = ZLattice::from_generators(generators);
        if lattice.rank() != algebra.dim() {
            return Err(Error::NotFullRank);
        }
        Ok(AlgebraLattice { algebra, lattice })
    }

    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lattice
    }

    pub fn basis(&self) -> QMat {
        self.lattice.basis()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.lattice.contains(x)
    }
}

/// Rows of the two-variable integrality constraints: row (a, b) pairs alpha
/// against the basis product v_a * conj(v_b), so alpha lies in the dual
/// exactly when every pairing is an integer.
fn constraint_rows(l: &AlgebraLattice) -> QMat {
    let alg = l.algebra();
    let d = alg.dim();
    let basis = l.basis();
    let gram = alg.trace_gram();
    let conj_rows: Vec<Vec<Rat>> = (0..d).map(|b| alg.conj(basis.row(b))).collect();
    let ops: Vec<QMat> = (0..d).map(|a| alg.mult_operator(basis.row(a))).collect();
    let mut rows = QMat::zero(d * d, d);
    for a in 0..d {
        for b in 0..d {
            let w = ops[a].mul_vec(&conj_rows[b]);
            let r = gram.mul_vec(&w);
            for (i, v) in r.into_iter().enumerate() {
                rows[(a * d + b, i)] = v;
            }
        }
    }
    rows
}

/// The dual lattice of alpha with tr(alpha * x * conj(y)) integral for all
/// lattice elements x, y.
pub fn dual_module(l: &AlgebraLattice) -> AlgebraLattice {
    let rows = constraint_rows(l);
    let constraints = ZLattice::from_generators(&rows);
    let dual = dual_lattice(&constraints, &QMat::identity(l.algebra().dim()))
        .expect("constraint rows of a full-rank lattice in an etale algebra are independent");
    AlgebraLattice { algebra: l.algebra.clone(), lattice: dual }
}

/// One-variable trace dual: all alpha with tr(alpha * x) integral on the
/// lattice. An involution on full-rank lattices.
pub fn trace_dual(l: &AlgebraLattice) -> AlgebraLattice {
    let alg = l.algebra();
    let gram = alg.trace_gram();
    let basis = l.basis();
    let mut rows = QMat::zero(alg.dim(), alg.dim());
    for a in 0..alg.dim() {
        let r = gram.mul_vec(basis.row(a));
        for (i, v) in r.into_iter().enumerate() {
            rows[(a, i)] = v;
        }
    }
    let constraints = ZLattice::from_generators(&rows);
    let dual = dual_lattice(&constraints, &QMat::identity(alg.dim()))
        .expect("trace form of an etale algebra is nondegenerate");
    AlgebraLattice { algebra: l.algebra.clone(), lattice: dual }
}

/// One-variable trace dual, valid when the lattice is a conjugation-stable
/// subring containing the unit; agrees with dual_module there.
pub fn dual_module_subring(l: &AlgebraLattice) -> Result<AlgebraLattice, Error> {
    let alg = l.algebra();
    let d = alg.dim();
    let basis = l.basis();
    if !l.contains(alg.one()) {
        return Err(Error::NotAConjugationStableSubring);
    }
    let ops: Vec<QMat> = (0..d).map(|a| alg.mult_operator(basis.row(a))).collect();
    for a in 0..d {
        if !l.contains(&alg.conj(basis.row(a))) {
            return Err(Error::NotAConjugationStableSubring);
        }
        for b in 0..=a {
            if !l.contains(&ops[a].mul_vec(basis.row(b))) {
                return Err(Error::NotAConjugationStableSubring);
            }
        }
    }
    Ok(trace_dual(l))
}

/// Invariant Brauer group of the CM lattice: conjugation-fixed dual elements
/// whose forms are even, modulo (1 + conjugation) of the dual. Returns the
/// group and one algebra-element representative per cyclic factor, reduced
/// to the Hermite-minimal lift.
pub fn brauer_cm(l: &AlgebraLattice) -> (FinAbGroup, Vec<Vec<Rat>>) {
    let alg = l.algebra();
    let d = alg.dim();
    let dual = dual_module(l);
    let dual_basis = dual.basis();
    // Conjugation in dual-basis coordinates; integral because the dual of a
    // lattice spanning products x * conj(y) is conjugation stable.
    let mut iota = IntMat::zero(d, d);
    for j in 0..d {
        let cv = alg.conj(dual_basis.row(j));
        let coords = dual
            .lattice()
            .coords_in_span(&cv)
            .expect("conjugate of a dual element stays in the dual");
        for (i, c) in coords.iter().enumerate() {
            assert!(c.denom().is_one(), "dual lattice is conjugation stable");
            iota[(i, j)] = c.numer().clone();
        }
    }
    debug_assert_eq!(iota.mul(&iota), IntMat::identity(d), "conjugation squares to 1");
    // Parity of the diagonal values B_alpha(u, u) over the lattice basis.
    let gram = alg.trace_gram();
    let basis = l.basis();
    let two = int(2);
    let mut aug = IntMat::zero(2 * d, 2 * d);
    let one_minus = IntMat::identity(d).sub(&iota);
    for i in 0..d {
        for j in 0..d {
            aug[(i, j)] = one_minus[(i, j)].clone();
        }
    }
    for m in 0..d {
        let w = alg.mul(basis.row(m), &alg.conj(basis.row(m)));
        let gw = gram.mul_vec(&w);
        for j in 0..d {
            let mut v = Rat::zero();
            for (k, c) in dual_basis.row(j).iter().enumerate() {
                if !c.is_zero() {
                    v += c * &gw[k];
                }
            }
            assert!(v.denom().is_one(), "dual elements pair integrally with the lattice");
            aug[(d + m, j)] = v.numer().mod_floor(&two);
        }
        aug[(d + m, d + m)] = two.clone();
    }
    let kernel = integer_kernel(&aug);
    let x_part = IntMat::from_fn(kernel.rows(), d, |i, j| kernel[(i, j)].clone());
    let numerator = ZLattice::from_integer_generators(&x_part);
    let one_plus = IntMat::identity(d).add(&iota);
    let denominator = ZLattice::from_integer_generators(&one_plus.transpose());
    let q = ZLattice::quotient(&denominator, &numerator)
        .expect("(1 + iota) of any dual element is fixed with even diagonal values");
    debug_assert!(q.group.is_elementary_two(), "invariant Brauer groups have exponent 2");
    let generators = q
        .torsion_generators
        .iter()
        .map(|coords| {
            let mut alpha = vec![Rat::zero(); d];
            for (j, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    for (k, b) in dual_basis.row(j).iter().enumerate() {
                        alpha[k] += c * b;
                    }
                }
            }
            alpha
        })
        .collect();
    (q.group, generators)
}

/// The lattice of Gram matrices B_alpha on the lattice basis, for alpha in
/// the dual module. Transpose acts as conjugation upstairs, so the torus
/// route computes the same Brauer group from this lattice.
pub fn bilinear_form_lattice(l: &AlgebraLattice) -> FormLattice {
    let d = l.algebra().dim();
    let dual_basis = dual_module(l).basis();
    let rows = constraint_rows(l);
    let forms: Vec<IntMat> = (0..d)
        .map(|j| {
            IntMat::from_fn(d, d, |a, b| {
                let mut v = Rat::zero();
                for (k, c) in dual_basis.row(j).iter().enumerate() {
                    if !c.is_zero() {
                        v += c * &rows[(a * d + b, k)];
                    }
                }
                assert!(v.denom().is_one(), "dual forms are integral on the lattice");
                v.numer().clone()
            })
        })
        .collect();
    FormLattice::new(d, forms)
        .expect("dual Gram matrices are independent, saturated and transpose stable")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactlin::rat;

    /// Q(i) on the basis {1, i}.
    pub(crate) fn gaussian_algebra() -> EtaleAlgebra {
        let table = vec![
            QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (1, 1)]]),
            QMat::from_ratios(&[vec![(0, 1), (1, 1)], vec![(-1, 1), (0, 1)]]),
        ];
        let one = vec![Rat::one(), Rat::zero()];
        let conj = QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (-1, 1)]]);
        EtaleAlgebra::new(table, one, conj).expect("Gaussian rationals are etale")
    }

    fn gaussian_integers() -> AlgebraLattice {
        let alg = gaussian_algebra();
        AlgebraLattice::new(alg, &QMat::identity(2)).unwrap()
    }

    fn elem(coords: &[(i64, i64)]) -> Vec<Rat> {
        coords.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn construction_rejects_bad_tables() {
        // b1 * b0 != b0 * b1.
        let table = vec![
            QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (1, 1)]]),
            QMat::from_ratios(&[vec![(1, 1), (1, 1)], vec![(-1, 1), (0, 1)]]),
        ];
        let one = vec![Rat::one(), Rat::zero()];
        let conj = QMat::identity(2);
        assert_eq!(
            EtaleAlgebra::new(table, one.clone(), conj.clone()).unwrap_err(),
            Error::NotCommutative
        );
        // Dual numbers: commutative and associative but the trace form
        // pairs the nilpotent to zero.
        let table = vec![
            QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (1, 1)]]),
            QMat::from_ratios(&[vec![(0, 1), (1, 1)], vec![(0, 1), (0, 1)]]),
        ];
        assert_eq!(
            EtaleAlgebra::new(table, one.clone(), conj.clone()).unwrap_err(),
            Error::DegenerateTrace
        );
        // A designated unit that does not act as the identity.
        let table = vec![
            QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (0, 1)]]),
            QMat::from_ratios(&[vec![(0, 1), (0, 1)], vec![(1, 1), (0, 1)]]),
        ];
        assert_eq!(
            EtaleAlgebra::new(table, one.clone(), conj.clone()).unwrap_err(),
            Error::NotUnital
        );
        // Commutative and unital in dimension 3, but (b1 b2) b2 = b2 while
        // b1 (b2 b2) = 0.
        let table = vec![
            QMat::from_ratios(&[
                vec![(1, 1), (0, 1), (0, 1)],
                vec![(0, 1), (1, 1), (0, 1)],
                vec![(0, 1), (0, 1), (1, 1)],
            ]),
            QMat::from_ratios(&[
                vec![(0, 1), (1, 1), (0, 1)],
                vec![(0, 1), (0, 1), (1, 1)],
                vec![(1, 1), (0, 1), (0, 1)],
            ]),
            QMat::from_ratios(&[
                vec![(0, 1), (0, 1), (1, 1)],
                vec![(1, 1), (0, 1), (0, 1)],
                vec![(0, 1), (0, 1), (0, 1)],
            ]),
        ];
        assert_eq!(
            EtaleAlgebra::new(table, vec![Rat::one(), Rat::zero(), Rat::zero()], QMat::identity(3))
                .unwrap_err(),
            Error::NotAssociative
        );
        // Conjugation that is not multiplicative on Q(i): swap basis vectors.
        let table = vec![
            QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (1, 1)]]),
            QMat::from_ratios(&[vec![(0, 1), (1, 1)], vec![(-1, 1), (0, 1)]]),
        ];
        let swap = QMat::from_ratios(&[vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]]);
        assert_eq!(
            EtaleAlgebra::new(table, one, swap).unwrap_err(),
            Error::NotAnInvolution
        );
    }

    #[test]
    fn traces_in_the_gaussian_field() {
        let alg = gaussian_algebra();
        assert_eq!(trace(&alg, &alg.one()), rat(2, 1), "trace of 1 is the dimension");
        assert_eq!(trace(&alg, &alg.basis_element(1)), Rat::zero(), "conjugate roots cancel");
        let x = elem(&[(3, 1), (5, 1)]);
        let y = alg.mul(&x, &alg.conj(&x));
        assert_eq!(trace(&alg, &y), rat(2 * (9 + 25), 1), "norm form doubles through the trace");
    }

    #[test]
    fn gaussian_inverse_and_operators() {
        let alg = gaussian_algebra();
        let x = elem(&[(1, 1), (2, 1)]);
        let inv = alg.inverse(&x).expect("1 + 2i is a unit in the field");
        assert_eq!(alg.mul(&x, &inv), alg.one().to_vec());
        let zero = vec![Rat::zero(); 2];
        assert!(alg.inverse(&zero).is_none(), "zero has no inverse");
    }

    #[test]
    fn gaussian_dual_is_half_the_lattice() {
        let l = gaussian_integers();
        let dual = dual_module(&l);
        let expected = QMat::from_ratios(&[vec![(1, 2), (0, 1)], vec![(0, 1), (1, 2)]]);
        assert_eq!(dual.basis(), expected);
        let subring = dual_module_subring(&l).expect("Z[i] is a conjugation-stable subring");
        assert_eq!(subring, dual);
    }

    #[test]
    fn scaling_the_lattice_scales_the_dual_quadratically() {
        let alg = gaussian_algebra();
        let tripled =
            AlgebraLattice::new(alg, &QMat::from_ratios(&[vec![(3, 1), (0, 1)], vec![(0, 1), (3, 1)]]))
                .unwrap();
        let dual = dual_module(&tripled);
        let expected = QMat::from_ratios(&[vec![(1, 18), (0, 1)], vec![(0, 1), (1, 18)]]);
        assert_eq!(dual.basis(), expected);
    }

    #[test]
    fn trace_dual_is_an_involution() {
        let l = gaussian_integers();
        assert_eq!(trace_dual(&trace_dual(&l)), l);
        let alg = gaussian_algebra();
        let skew = AlgebraLattice::new(
            alg,
            &QMat::from_ratios(&[vec![(2, 3), (1, 5)], vec![(0, 1), (7, 2)]]),
        )
        .unwrap();
        assert_eq!(trace_dual(&trace_dual(&skew)), skew);
    }

    #[test]
    fn subring_dual_rejects_non_subrings() {
        let alg = gaussian_algebra();
        // 2Z[i] misses the unit.
        let doubled =
            AlgebraLattice::new(alg.clone(), &QMat::from_ratios(&[vec![(2, 1), (0, 1)], vec![(0, 1), (2, 1)]]))
                .unwrap();
        assert_eq!(
            dual_module_subring(&doubled).unwrap_err(),
            Error::NotAConjugationStableSubring
        );
        // Z + Z(i/2) is not closed under multiplication.
        let halves =
            AlgebraLattice::new(alg, &QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (1, 2)]]))
                .unwrap();
        assert_eq!(
            dual_module_subring(&halves).unwrap_err(),
            Error::NotAConjugationStableSubring
        );
    }

    #[test]
    fn gaussian_brauer_group_is_trivial() {
        let (group, gens) = brauer_cm(&gaussian_integers());
        assert!(group.is_trivial(), "Z[i] has trivial invariant Brauer group, got {}", group);
        assert!(gens.is_empty());
    }

    #[test]
    fn form_lattice_bridge_matches_on_the_gaussian_integers() {
        let l = gaussian_integers();
        let f = bilinear_form_lattice(&l);
        assert_eq!(f.rank(), 2);
        let (group, _) = brauer_cm(&l);
        assert_eq!(crate::torus::invariant_brauer(&f).to_string(), group.to_string());
        assert_eq!(crate::torus::brauer_via_h1(&f).to_string(), group.to_string());
    }

    #[test]
    fn bilinear_values_match_direct_traces() {
        let l = gaussian_integers();
        let alg = l.algebra();
        let alpha = elem(&[(1, 2), (-1, 3)]);
        let x = elem(&[(2, 1), (1, 1)]);
        let y = elem(&[(0, 1), (5, 1)]);
        let direct = trace(alg, &alg.mul(&alpha, &alg.mul(&x, &alg.conj(&y))));
        assert_eq!(bilinear_value(alg, &alpha, &x, &y), direct);
    }
}
