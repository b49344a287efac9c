//! Cyclotomic fields Q(zeta_n) as étale algebras on the power basis, their
//! differents, and the invariant Brauer groups of rings of integers and
//! ideal lattices.

use num_traits::{One, Zero};

use crate::exactlin::{FinAbGroup, Int, QMat, Rat, ZLattice};

use super::{brauer_cm, AlgebraLattice, Error, EtaleAlgebra};

/// Quotient of num by a monic divisor, panicking on a nonzero remainder.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd, "degree of the divisor exceeds the dividend");
    let mut work = num.to_vec();
    let mut quot = vec![Int::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let q = work[k + dd].clone();
        if !q.is_zero() {
            for (i, c) in den.iter().enumerate() {
                work[k + i] -= &q * c;
            }
        }
        quot[k] = q;
    }
    assert!(work.iter().all(Int::is_zero), "division must be exact");
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, ascending and monic.
pub fn cyclotomic_polynomial(n: usize) -> Vec<Int> {
    assert!(n >= 1, "cyclotomic polynomials start at n = 1");
    let mut computed: Vec<(usize, Vec<Int>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1 divided by the cyclotomic polynomials of proper divisors.
        let mut num = vec![Int::zero(); d + 1];
        num[0] = -Int::one();
        num[d] = Int::one();
        for (e, phi) in &computed {
            if d % e == 0 && *e < d {
                num = poly_div_exact(&num, phi);
            }
        }
        computed.push((d, num));
    }
    computed.pop().expect("n divides n").1
}

/// Coordinates of zeta^k on the power basis, for k up to the larger of
/// n - 1 and 2 deg - 2.
fn power_table(n: usize) -> Vec<Vec<Int>> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    let top = std::cmp::max(n - 1, 2 * d - 2);
    let mut powers: Vec<Vec<Int>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        if k < d {
            let mut e = vec![Int::zero(); d];
            e[k] = Int::one();
            powers.push(e);
        } else {
            // zeta^k = -sum_i phi[i] zeta^{k-d+i}.
            let mut v = vec![Int::zero(); d];
            for (i, c) in phi.iter().take(d).enumerate() {
                if !c.is_zero() {
                    for (idx, w) in powers[k - d + i].iter().enumerate() {
                        v[idx] -= c * w;
                    }
                }
            }
            powers.push(v);
        }
    }
    powers
}

fn odd_prime_divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Q(zeta_n) on the power basis 1, zeta, ..., zeta^{phi(n)-1}, with
/// conjugation zeta -> zeta^{-1}, together with the ring of integers.
pub fn cyclotomic_algebra(n: usize) -> (EtaleAlgebra, AlgebraLattice) {
    assert!(n >= 3, "the conjugation is trivial below n = 3");
    let powers = power_table(n);
    let d = cyclotomic_polynomial(n).len() - 1;
    let table: Vec<QMat> = (0..d)
        .map(|i| QMat::from_fn(d, d, |j, k| Rat::from(powers[i + j][k].clone())))
        .collect();
    let conj = QMat::from_fn(d, d, |k, j| Rat::from(powers[(n - j) % n][k].clone()));
    let mut one = vec![Rat::zero(); d];
    one[0] = Rat::one();
    let algebra =
        EtaleAlgebra::new(table, one, conj).expect("cyclotomic structure constants form a field");
    let lattice = AlgebraLattice::new(algebra.clone(), &QMat::identity(d))
        .expect("the power basis spans the ring of integers");
    (algebra, lattice)
}

/// Generator of the different ideal of Q(zeta_n) on the power basis:
/// n (odd) or n/2 (even) divided by zeta_p - zeta_p^{-1} over the odd
/// primes p dividing n. Its inverse generates the trace dual of the ring
/// of integers.
pub fn cyclotomic_different(n: usize) -> Vec<Rat> {
    let (alg, _) = cyclotomic_algebra(n);
    let powers = power_table(n);
    let base = if n % 2 == 0 { n / 2 } else { n };
    let mut gen = vec![Rat::zero(); alg.dim()];
    gen[0] = Rat::from(Int::from(base));
    for p in odd_prime_divisors(n) {
        let diff: Vec<Rat> = powers[n / p]
            .iter()
            .zip(&powers[n - n / p])
            .map(|(a, b)| Rat::from(a - b))
            .collect();
        let inv = alg.inverse(&diff).expect("zeta_p - zeta_p^{-1} is nonzero in a field");
        gen = alg.mul(&gen, &inv);
    }
    gen
}

/// Invariant Brauer group of the ring of integers of Q(zeta_n).
pub fn cyclotomic_brauer(n: usize) -> FinAbGroup {
    let (_, lattice) = cyclotomic_algebra(n);
    brauer_cm(&lattice).0
}

/// Invariant Brauer group of the O_K-ideal generated by the given elements
/// of Q(zeta_n). The ideal lattice is the span of all generator shifts
/// g zeta^k; nonzero ideals in a field have full rank.
pub fn ideal_lattice_brauer(n: usize, ideal_gens: &[Vec<Rat>]) -> Result<FinAbGroup, Error> {
    let (alg, _) = cyclotomic_algebra(n);
    let d = alg.dim();
    for g in ideal_gens {
        if g.len() != d {
            return Err(Error::BadShape);
        }
    }
    let mut rows = QMat::zero(ideal_gens.len() * d, d);
    for (gi, g) in ideal_gens.iter().enumerate() {
        let op = alg.mult_operator(g);
        for k in 0..d {
            for i in 0..d {
                rows[(gi * d + k, i)] = op[(i, k)].clone();
            }
        }
    }
    let lattice = ZLattice::from_generators(&rows);
    if lattice.rank() != d {
        return Err(Error::NotAnIdeal);
    }
    let basis = lattice.basis();
    let zeta_op = alg.mult_operator(&alg.basis_element(1));
    for i in 0..d {
        if !lattice.contains(&zeta_op.mul_vec(basis.row(i))) {
            return Err(Error::NotAnIdeal);
        }
    }
    let al = AlgebraLattice::new(alg, &basis).expect("a full-rank ideal lattice");
    Ok(brauer_cm(&al).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmfields::{bilinear_form_lattice, dual_module, trace};
    use crate::exactlin::{int, rat, IntMat};
    use crate::invcoh::{is_free_over_involution, tate_h0, InvolutionModule};
    use crate::torus::{bilinear_forms, brauer_mod4_oracle, brauer_via_h1, invariant_brauer, RationalTorus};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Product over all divisors recovers x^n - 1.
        for n in [6usize, 12, 15] {
            let mut prod = vec![Int::one()];
            for d in 1..=n {
                if n % d == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expect = vec![Int::zero(); n + 1];
            expect[0] = -Int::one();
            expect[n] = Int::one();
            assert_eq!(prod, expect, "divisor product fails for n = {}", n);
        }
    }

    #[test]
    fn cyclotomic_algebra_small_cases() {
        let (alg, _) = cyclotomic_algebra(3);
        assert_eq!(alg.dim(), 2);
        // zeta^2 = -1 - zeta.
        assert_eq!(alg.table()[1].row(1), &[rat(-1, 1), rat(-1, 1)][..]);
        let (alg4, _) = cyclotomic_algebra(4);
        assert_eq!(
            alg4.conjugation(),
            &QMat::from_ratios(&[vec![(1, 1), (0, 1)], vec![(0, 1), (-1, 1)]])
        );
        let (alg12, _) = cyclotomic_algebra(12);
        assert_eq!(alg12.dim(), 4);
        assert_eq!(trace(&alg12, &alg12.one()), rat(4, 1));
    }

    #[test]
    fn two_power_trace_normalization() {
        // In Q(zeta_8) the element 1/4 has trace 1.
        let (alg, _) = cyclotomic_algebra(8);
        let mut x = vec![Rat::zero(); 4];
        x[0] = rat(1, 4);
        assert_eq!(trace(&alg, &x), Rat::one());
    }

    #[test]
    fn different_generators_for_small_n() {
        let four = cyclotomic_different(4);
        assert_eq!(four, vec![rat(2, 1), Rat::zero()]);
        // 3 / (zeta - zeta^{-1}) = -1 - 2 zeta in Q(zeta_3).
        let three = cyclotomic_different(3);
        assert_eq!(three, vec![rat(-1, 1), rat(-2, 1)]);
    }

    #[test]
    fn different_generates_the_trace_dual() {
        for n in 3..=12 {
            let (alg, ok) = cyclotomic_algebra(n);
            let gen = cyclotomic_different(n);
            let inv = alg.inverse(&gen).expect("different generators are nonzero");
            // Rows of the transposed operator are the coordinates of
            // inv * zeta^i, a generating set of inv * O_K.
            let expected = ZLattice::from_generators(&alg.mult_operator(&inv).transpose());
            let dual = dual_module(&ok);
            assert_eq!(dual.lattice(), &expected, "different contract fails for n = {}", n);
        }
    }

    #[test]
    fn prime_different_index_matches_the_discriminant() {
        // [D : O_K] = p^{p-2} for n = p prime.
        let (_, ok) = cyclotomic_algebra(5);
        let dual = dual_module(&ok);
        let index = ZLattice::index_in(ok.lattice(), dual.lattice())
            .expect("the ring of integers sits inside its trace dual")
            .expect("finite index");
        assert_eq!(index, int(125));
    }

    #[test]
    fn cyclotomic_brauer_vanishes() {
        for n in 3..=12 {
            let group = cyclotomic_brauer(n);
            assert!(group.is_trivial(), "Brauer group of Q(zeta_{}) is {}", n, group);
        }
        assert!(cyclotomic_brauer(15).is_trivial());
    }

    #[test]
    fn tate_h0_detects_two_power_levels() {
        for n in [4usize, 8, 16] {
            let (alg, _) = cyclotomic_algebra(n);
            let module = InvolutionModule::new(alg.conjugation().to_intmat())
                .expect("conjugation is an integral involution on the power basis");
            let h0 = tate_h0(&module);
            assert_eq!(h0.group.to_string(), "Z/2", "n = {}", n);
            assert!(!is_free_over_involution(&module));
            // The nontrivial class is the class of 1.
            let norms = IntMat::identity(alg.dim()).add(module.sigma()).transpose();
            let image = ZLattice::from_integer_generators(&norms);
            let diff: Vec<Rat> = h0.generators[0]
                .iter()
                .enumerate()
                .map(|(k, c)| Rat::from(if k == 0 { c - Int::one() } else { c.clone() }))
                .collect();
            assert!(image.contains(&diff), "generator differs from 1 by a norm, n = {}", n);
        }
        for n in [3usize, 5, 6, 7, 9, 12, 15] {
            let (alg, _) = cyclotomic_algebra(n);
            let module = InvolutionModule::new(alg.conjugation().to_intmat()).unwrap();
            assert!(is_free_over_involution(&module), "n = {}", n);
        }
    }

    #[test]
    fn ideal_lattices_have_trivial_brauer_groups() {
        let (alg, _) = cyclotomic_algebra(5);
        let one = alg.one().to_vec();
        assert!(ideal_lattice_brauer(5, &[one]).unwrap().is_trivial());
        // The ramified prime (1 - zeta) above 5.
        let mut gen = vec![Rat::zero(); 4];
        gen[0] = Rat::one();
        gen[1] = -Rat::one();
        assert!(ideal_lattice_brauer(5, &[gen]).unwrap().is_trivial());
        // (2) is principal of index 16; integer scaling preserves the
        // quotient.
        let mut two = vec![Rat::zero(); 4];
        two[0] = rat(2, 1);
        assert!(ideal_lattice_brauer(5, &[two]).unwrap().is_trivial());
        assert_eq!(
            ideal_lattice_brauer(5, &[vec![Rat::zero(); 4]]).unwrap_err(),
            Error::NotAnIdeal
        );
    }

    #[test]
    fn gaussian_torus_route_agrees() {
        // For n = 4 multiplication by zeta is a rational complex structure
        // and the endomorphism algebra is exactly Q(i), so the torus path
        // computes the same group.
        let (alg, _) = cyclotomic_algebra(4);
        let j = alg.mult_operator(&alg.basis_element(1));
        let t = RationalTorus::new(j).expect("zeta_4 squares to -1");
        let group = invariant_brauer(&bilinear_forms(&t));
        assert_eq!(group.to_string(), cyclotomic_brauer(4).to_string());
    }

    #[test]
    fn form_lattice_bridge_agrees_for_quintic_roots() {
        let (_, ok) = cyclotomic_algebra(5);
        let f = bilinear_form_lattice(&ok);
        assert_eq!(f.rank(), 4);
        let (group, _) = crate::cmfields::brauer_cm(&ok);
        assert_eq!(invariant_brauer(&f).to_string(), group.to_string());
        assert_eq!(brauer_via_h1(&f).to_string(), group.to_string());
        assert_eq!(brauer_mod4_oracle(&f).unwrap().to_string(), group.to_string());
    }
}
