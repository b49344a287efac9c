//! The invariant Brauer group of a form lattice, computed three ways.
//!
//! 1. invariant_brauer: the quotient of the symmetric-even-diagonal
//!    sublattice by (1 + tau) applied to the whole lattice.
//! 2. brauer_via_h1: the kernel of the map H^1(L) -> H^1(all forms) induced
//!    by the inclusion, where the involution acts as minus the transpose.
//! 3. brauer_mod4_oracle: finite enumeration of the coordinate classes
//!    mod 2 and mod 4, with no lattice algebra beyond coset arithmetic.
//!
//! The three routes share no intermediate results and must agree.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;

use crate::exactlin::{int, FinAbGroup, Int, IntMat, ZLattice};
use crate::invcoh::{h1_induced_kernel, EquivariantMap, InvolutionModule};

use super::{ns_sublattice, Error, FormLattice};

/// A Brauer group with one Gram-matrix representative per cyclic factor.
#[derive(Debug, Clone)]
pub struct BrauerPresentation {
    pub group: FinAbGroup,
    pub generators: Vec<IntMat>,
}

/// Quotient route: Bi^{sym, even} / (1 + tau) Bi in basis coordinates.
/// A form is even when every diagonal entry of its Gram matrix is even,
/// which for symmetric integral forms is equivalent to B(x, x) being even
/// for every lattice vector.
pub fn invariant_brauer_presentation(f: &FormLattice) -> BrauerPresentation {
    let r = f.rank();
    let n = f.n();
    let two = int(2);
    // Kernel of the augmented system picks out coordinate vectors y with
    // (1 - tau) y = 0 and parity(y) = 0 mod 2 (via auxiliary z):
    //   [ 1 - tau   0  ] [y]   [0]
    //   [ parity   2*1 ] [z] = [0]
    let one_minus = IntMat::identity(r).sub(f.tau());
    let mut aug = IntMat::zero(r + n, r + n);
    for i in 0..r {
        for j in 0..r {
            aug[(i, j)] = one_minus[(i, j)].clone();
        }
    }
    for i in 0..n {
        for (j, form) in f.forms().iter().enumerate() {
            aug[(r + i, j)] = form[(i, i)].mod_floor(&two);
        }
        aug[(r + i, r + i)] = two.clone();
    }
    let kernel = crate::exactlin::integer_kernel(&aug);
    let x_part = IntMat::from_fn(kernel.rows(), r, |i, j| kernel[(i, j)].clone());
    let numerator = ZLattice::from_integer_generators(&x_part);
    let one_plus = IntMat::identity(r).add(f.tau());
    let denominator = ZLattice::from_integer_generators(&one_plus.transpose());
    let q = ZLattice::quotient(&denominator, &numerator)
        .expect("(1 + tau) of any form is symmetric with even diagonal");
    debug_assert!(q.group.is_elementary_two(), "invariant Brauer groups have exponent 2");
    let generators = q
        .torsion_generators
        .iter()
        .map(|coords| {
            let ints: Vec<Int> = coords.iter().map(|c| c.numer().clone()).collect();
            f.form_from_coords(&ints)
        })
        .collect();
    BrauerPresentation { group: q.group, generators }
}

pub fn invariant_brauer(f: &FormLattice) -> FinAbGroup {
    invariant_brauer_presentation(f).group
}

/// Cohomological route: kernel of H^1(span, -tau) -> H^1(Mat_n(Z), -T)
/// where T is the transpose permutation on vectorized forms.
pub fn brauer_via_h1_presentation(f: &FormLattice) -> BrauerPresentation {
    let r = f.rank();
    let n = f.n();
    let nn = n * n;
    let source = InvolutionModule::new(f.tau().neg())
        .expect("transpose action on a form lattice is an involution");
    let mut sigma_t = IntMat::zero(nn, nn);
    for i in 0..n {
        for j in 0..n {
            sigma_t[(i * n + j, j * n + i)] = -int(1);
        }
    }
    let target = InvolutionModule::new(sigma_t)
        .expect("negated transpose permutation is an involution");
    let mut fmat = IntMat::zero(nn, r);
    for (j, form) in f.forms().iter().enumerate() {
        for (idx, v) in form.flatten().into_iter().enumerate() {
            fmat[(idx, j)] = v;
        }
    }
    let map = EquivariantMap::new(source, target, fmat)
        .expect("vectorization intertwines -tau with the negated transpose");
    let t = h1_induced_kernel(&map);
    debug_assert!(t.group.is_elementary_two(), "invariant Brauer groups have exponent 2");
    let generators = t.generators.iter().map(|c| f.form_from_coords(c)).collect();
    BrauerPresentation { group: t.group, generators }
}

pub fn brauer_via_h1(f: &FormLattice) -> FinAbGroup {
    brauer_via_h1_presentation(f).group
}

/// Enumeration guard: the mod-4 oracle walks 4^rank coordinate classes.
const ENUM_GUARD: usize = 12;

/// Enumeration route. X2 collects the classes mod 2 that are symmetric with
/// even diagonal; X4 collects the classes mod 4 with G = -G^T and diagonal
/// divisible by 4; the group is X2 / (X4 reduced mod 2), and both sets are
/// F2-subspaces so only their cardinalities are needed.
pub fn brauer_mod4_oracle(f: &FormLattice) -> Result<FinAbGroup, Error> {
    let r = f.rank();
    if r > ENUM_GUARD {
        return Err(Error::InstanceTooLarge);
    }
    let n = f.n();
    let nn = n * n;
    // Machine-sized copies of the basis forms mod 4 (entries 0..3).
    let four = int(4);
    let fm: Vec<Vec<i64>> = f
        .forms()
        .iter()
        .map(|form| {
            form.flatten()
                .iter()
                .map(|v| i64::try_from(v.mod_floor(&four)).expect("residue fits"))
                .collect()
        })
        .collect();

    let mut x2_count: u64 = 0;
    for mask in 0u64..(1 << r) {
        let mut g = vec![0i64; nn];
        for (j, form) in fm.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (idx, v) in form.iter().enumerate() {
                    g[idx] = (g[idx] + v) % 2;
                }
            }
        }
        if passes_mod2(&g, n) {
            x2_count += 1;
        }
    }

    // Odometer over base-4 digit vectors with incremental updates: each
    // digit bump adds one basis form, and four bumps cancel mod 4.
    let mut reduced: HashSet<u64> = HashSet::new();
    let mut g = vec![0i64; nn];
    let mut digits = vec![0u8; r];
    loop {
        if passes_mod4(&g, n) {
            let mut bits = 0u64;
            for (j, d) in digits.iter().enumerate() {
                bits |= u64::from(d & 1) << j;
            }
            reduced.insert(bits);
        }
        let mut pos = 0;
        loop {
            if pos == r {
                let x2_dim = dim_of_power_of_two(x2_count);
                let red_dim = dim_of_power_of_two(reduced.len() as u64);
                assert!(red_dim <= x2_dim, "reduction of X4 must land inside X2");
                return Ok(FinAbGroup::new(0, vec![int(2); x2_dim - red_dim]));
            }
            digits[pos] += 1;
            for (idx, v) in fm[pos].iter().enumerate() {
                g[idx] = (g[idx] + v) % 4;
            }
            if digits[pos] < 4 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn passes_mod2(g: &[i64], n: usize) -> bool {
    for i in 0..n {
        if g[i * n + i] % 2 != 0 {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (g[i * n + j] - g[j * n + i]) % 2 != 0 {
                return false;
            }
        }
    }
    true
}

fn passes_mod4(g: &[i64], n: usize) -> bool {
    for i in 0..n {
        if g[i * n + i] % 4 != 0 {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (g[i * n + j] + g[j * n + i]) % 4 != 0 {
                return false;
            }
        }
    }
    true
}

fn dim_of_power_of_two(v: u64) -> usize {
    assert!(v.is_power_of_two(), "subgroup cardinalities are powers of two, got {}", v);
    v.trailing_zeros() as usize
}

/// Rank bound report: dim_{F2} Br <= rk(forms) - rk(NS).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundReport {
    pub brauer_two_rank: usize,
    pub form_rank: usize,
    pub ns_rank: usize,
}

impl UpperBoundReport {
    pub fn holds(&self) -> bool {
        self.brauer_two_rank + self.ns_rank <= self.form_rank
    }
}

pub fn upper_bound_check(f: &FormLattice) -> UpperBoundReport {
    let group = invariant_brauer(f);
    let brauer_two_rank = group
        .two_rank()
        .expect("invariant Brauer groups have exponent 2");
    UpperBoundReport {
        brauer_two_rank,
        form_rank: f.rank(),
        ns_rank: ns_sublattice(f).rank(),
    }
}

/// Transports the lattice along an odd-determinant basis change
/// G -> C^T G C, re-saturates, and recomputes the invariant Brauer group.
/// The result is isomorphic to invariant_brauer(f).
pub fn odd_index_sublattice_brauer(f: &FormLattice, basis_change: &IntMat) -> Result<FinAbGroup, Error> {
    assert_eq!(basis_change.rows(), f.n(), "basis change must act on the form domain");
    assert!(basis_change.is_square(), "basis change must be square");
    let det = basis_change.det();
    if det.mod_floor(&int(2)).is_zero() {
        return Err(Error::EvenIndex);
    }
    let transported: Vec<IntMat> = f
        .forms()
        .iter()
        .map(|g| basis_change.transpose().mul(g).mul(basis_change))
        .collect();
    let lattice = FormLattice::span(f.n(), &transported)?;
    Ok(invariant_brauer(&lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{bilinear_forms, RationalTorus};

    fn lattice(n: usize, forms: &[Vec<Vec<i64>>]) -> FormLattice {
        let mats: Vec<IntMat> = forms.iter().map(|rows| IntMat::from_rows(rows)).collect();
        FormLattice::new(n, mats).unwrap()
    }

    fn assert_three_way(f: &FormLattice, expected: &str) {
        let a = invariant_brauer(f);
        let b = brauer_via_h1(f);
        let c = brauer_mod4_oracle(f).unwrap();
        assert_eq!(a.to_string(), expected, "quotient route");
        assert_eq!(b.to_string(), expected, "cohomology route");
        assert_eq!(c.to_string(), expected, "enumeration route");
        assert!(a.is_elementary_two());
    }

    #[test]
    fn even_primitive_symmetric_form_gives_order_two() {
        let f = lattice(2, &[vec![vec![2, 1], vec![1, 2]]]);
        assert_three_way(&f, "Z/2");
        // The generator is the form itself, up to the lattice relation.
        let p = invariant_brauer_presentation(&f);
        assert_eq!(p.generators.len(), 1);
        assert!(f.contains(&p.generators[0]));
    }

    #[test]
    fn odd_diagonal_kills_the_group() {
        let f = lattice(2, &[vec![vec![1, 0], vec![0, 1]]]);
        assert_three_way(&f, "0");
    }

    #[test]
    fn rank_zero_lattice_is_trivial() {
        let f = FormLattice::new(2, vec![]).unwrap();
        assert_three_way(&f, "0");
    }

    #[test]
    fn transpose_swapped_pair_is_trivial() {
        // Saturation of {[[2,1],[1,2]], [[0,1],[-1,0]]}: basis swapped by tau.
        let f = lattice(
            2,
            &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]],
        );
        assert_three_way(&f, "0");
    }

    #[test]
    fn gaussian_elliptic_torus_has_trivial_group() {
        let j = crate::torus::tests::standard_j(1);
        let f = bilinear_forms(&RationalTorus::new(j).unwrap());
        assert_three_way(&f, "0");
    }

    #[test]
    fn rank_two_with_even_asymmetric_pair() {
        // Basis E12, E21 (transpose-swapped, zero diagonal): the symmetric
        // even sublattice is generated by E12 + E21 = (1 + tau) E12.
        let f = lattice(
            2,
            &[vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]],
        );
        assert_three_way(&f, "0");
    }

    #[test]
    fn direct_sum_of_generators_adds_groups() {
        // Two orthogonal copies of the even primitive form: (Z/2)^2... the
        // cross blocks are absent from the span, so each copy contributes.
        let f = lattice(
            4,
            &[
                vec![vec![2, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
                vec![vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 2]],
            ],
        );
        assert_three_way(&f, "Z/2 + Z/2");
    }

    #[test]
    fn enumeration_guard_rejects_large_ranks() {
        // A diagonal-supported lattice of rank 16 in 4x4 matrices.
        let t = RationalTorus::new(crate::torus::tests::standard_j(2)).unwrap();
        let f = bilinear_forms(&t);
        assert_eq!(f.rank(), 8);
        assert!(brauer_mod4_oracle(&f).is_ok());
        let t3 = RationalTorus::new(crate::torus::tests::standard_j(3)).unwrap();
        let f3 = bilinear_forms(&t3);
        assert_eq!(f3.rank(), 18);
        assert_eq!(brauer_mod4_oracle(&f3).unwrap_err(), Error::InstanceTooLarge);
    }

    #[test]
    fn upper_bound_holds_on_samples() {
        let f = lattice(2, &[vec![vec![2, 1], vec![1, 2]]]);
        let report = upper_bound_check(&f);
        assert_eq!(report, UpperBoundReport { brauer_two_rank: 1, form_rank: 1, ns_rank: 0 });
        assert!(report.holds());
        let empty = FormLattice::new(2, vec![]).unwrap();
        assert!(upper_bound_check(&empty).holds());
    }

    #[test]
    fn odd_basis_changes_preserve_the_group() {
        let f = lattice(2, &[vec![vec![2, 1], vec![1, 2]]]);
        let id = IntMat::identity(2);
        assert_eq!(odd_index_sublattice_brauer(&f, &id).unwrap().to_string(), "Z/2");
        let c = IntMat::from_rows(&[vec![1, 1], vec![0, 3]]);
        assert_eq!(odd_index_sublattice_brauer(&f, &c).unwrap().to_string(), "Z/2");
        let c9 = c.mul(&c);
        assert_eq!(odd_index_sublattice_brauer(&f, &c9).unwrap().to_string(), "Z/2");
        let even = IntMat::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(odd_index_sublattice_brauer(&f, &even).unwrap_err(), Error::EvenIndex);
    }
}
