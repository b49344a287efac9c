//! Tate cohomology of involutions on finitely generated free Z-modules.
//!
//! A module is a free Z-module of finite rank together with an integer
//! matrix sigma acting on column vectors with sigma^2 = 1. The two Tate
//! groups of the order-2 group generated by sigma are
//!
//!   H^0 = ker(1 - sigma) / im(1 + sigma),
//!   H^1 = ker(1 + sigma) / im(1 - sigma),
//!
//! and both are elementary abelian 2-groups. A module is free over the
//! group ring Z[sigma] exactly when both vanish.

use num_traits::{One, Signed};

use crate::exactlin::{integer_kernel, FinAbGroup, Int, IntMat, ZLattice};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("sigma must be square of the stated rank")]
    BadShape,
    #[error("sigma squared is not the identity")]
    NotAnInvolution,
    #[error("map does not intertwine the source and target involutions")]
    NotEquivariant,
    #[error("map shape does not match source and target ranks")]
    MapShapeMismatch,
    #[error("p must be an odd prime")]
    OddPrimeRequired,
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

/// A free Z-module of finite rank with an involution acting on column
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionModule {
    rank: usize,
    sigma: IntMat,
}

impl InvolutionModule {
    pub fn new(sigma: IntMat) -> Result<Self, Error> {
        if !sigma.is_square() {
            return Err(Error::BadShape);
        }
        if sigma.mul(&sigma) != IntMat::identity(sigma.rows()) {
            return Err(Error::NotAnInvolution);
        }
        Ok(InvolutionModule { rank: sigma.rows(), sigma })
    }

    /// The module Z^n with sigma = identity.
    pub fn trivial(rank: usize) -> Self {
        InvolutionModule { rank, sigma: IntMat::identity(rank) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sigma(&self) -> &IntMat {
        &self.sigma
    }

    pub fn direct_sum(&self, other: &InvolutionModule) -> InvolutionModule {
        InvolutionModule {
            rank: self.rank + other.rank,
            sigma: IntMat::block_diag(&[&self.sigma, &other.sigma]),
        }
    }

    fn one_minus_sigma(&self) -> IntMat {
        IntMat::identity(self.rank).sub(&self.sigma)
    }

    fn one_plus_sigma(&self) -> IntMat {
        IntMat::identity(self.rank).add(&self.sigma)
    }
}

/// A Tate cohomology group together with one integer representative per
/// cyclic factor, reduced to a canonical coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateCohomology {
    pub group: FinAbGroup,
    pub generators: Vec<Vec<Int>>,
}

/// ker(kernel_of) / im(image_of), both maps acting on column vectors of the
/// same module. The image must land in the kernel.
fn subquotient(kernel_of: &IntMat, image_of: &IntMat) -> TateCohomology {
    let numerator = ZLattice::from_integer_generators(&integer_kernel(kernel_of));
    let denominator = ZLattice::from_integer_generators(&image_of.transpose());
    let q = ZLattice::quotient(&denominator, &numerator)
        .expect("image of the companion map must lie in the kernel");
    let generators = q
        .torsion_generators
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    debug_assert!(x.denom().is_one(), "integral lattices give integral reps");
                    x.numer().clone()
                })
                .collect()
        })
        .collect();
    TateCohomology { group: q.group, generators }
}

/// H^0(m) = ker(1 - sigma) / im(1 + sigma).
pub fn tate_h0(m: &InvolutionModule) -> TateCohomology {
    subquotient(&m.one_minus_sigma(), &m.one_plus_sigma())
}

/// H^1(m) = ker(1 + sigma) / im(1 - sigma).
pub fn h1(m: &InvolutionModule) -> TateCohomology {
    subquotient(&m.one_plus_sigma(), &m.one_minus_sigma())
}

/// A module is free over Z[sigma] exactly when both Tate groups vanish:
/// the indecomposables are Z with the trivial action (killed by H^0), Z with
/// the sign action (killed by H^1), and the regular module.
pub fn is_free_over_involution(m: &InvolutionModule) -> bool {
    tate_h0(m).group.is_trivial() && h1(m).group.is_trivial()
}

/// A map of involution modules, x -> matrix * x, commuting with the actions.
#[derive(Debug, Clone)]
pub struct EquivariantMap {
    pub source: InvolutionModule,
    pub target: InvolutionModule,
    matrix: IntMat,
}

impl EquivariantMap {
    pub fn new(
        source: InvolutionModule,
        target: InvolutionModule,
        matrix: IntMat,
    ) -> Result<Self, Error> {
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::MapShapeMismatch);
        }
        if matrix.mul(&source.sigma) != target.sigma.mul(&matrix) {
            return Err(Error::NotEquivariant);
        }
        Ok(EquivariantMap { source, target, matrix })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }
}

/// Kernel of the induced map H^1(source) -> H^1(target).
///
/// A class [x] dies in the target exactly when f(x) = (1 - sigma_t) y for
/// some y, so the representatives form the projection to the x-block of the
/// integer kernel of
///
///   [ 1 + sigma_s        0        ]
///   [      f       -(1 - sigma_t) ].
pub fn h1_induced_kernel(f: &EquivariantMap) -> TateCohomology {
    let rs = f.source.rank;
    let rt = f.target.rank;
    let norm_s = f.source.one_plus_sigma();
    let aug_t = f.target.one_minus_sigma();
    let top = IntMat::from_fn(rs, rs + rt, |i, j| {
        if j < rs {
            norm_s[(i, j)].clone()
        } else {
            Int::from(0)
        }
    });
    let bottom = IntMat::from_fn(rt, rs + rt, |i, j| {
        if j < rs {
            f.matrix[(i, j)].clone()
        } else {
            -aug_t[(i, j - rs)].clone()
        }
    });
    let kernel = integer_kernel(&IntMat::vstack(&[&top, &bottom]));
    let x_part = IntMat::from_fn(kernel.rows(), rs, |i, j| kernel[(i, j)].clone());
    let numerator = ZLattice::from_integer_generators(&x_part);
    let denominator = ZLattice::from_integer_generators(&f.source.one_minus_sigma().transpose());
    let q = ZLattice::quotient(&denominator, &numerator)
        .expect("boundaries always map into the induced kernel");
    let generators = q
        .torsion_generators
        .iter()
        .map(|v| v.iter().map(|x| x.numer().clone()).collect())
        .collect();
    TateCohomology { group: q.group, generators }
}

/// Conjugation matrix on the ring of integers of the p^r-th cyclotomic field
/// in the power basis 1, z, ..., z^(phi-1), where z^phi reduces through the
/// sparse minimal polynomial z^phi = -(1 + z^q + ... + z^((p-2)q)) with
/// q = p^(r-1).
fn cyclotomic_conjugation(p: u32, r: u32) -> IntMat {
    let q = (p as usize).pow(r - 1);
    let n = q * (p as usize);
    let phi = q * (p as usize - 1);
    let mut sigma = IntMat::zero(phi, phi);
    sigma[(0, 0)] = Int::one();
    for j in 1..phi {
        let m = n - j;
        if m < phi {
            sigma[(m, j)] = Int::one();
        } else {
            // z^m = z^(m - phi) * z^phi = -sum_i z^(m - phi + i*q); the
            // exponents stay below phi because m <= n - 1.
            for i in 0..(p as usize - 1) {
                sigma[(m - phi + i * q, j)] = -Int::one();
            }
        }
    }
    sigma
}

fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// For an odd prime power p^r, the ring of integers of the p^r-th cyclotomic
/// field is free over Z[conjugation]. Returns the module (in the power
/// basis) and a free basis: rows are the elements z^j for
/// 1 <= j <= p^(r-1) (p-1) / 2, whose conjugates complete them to a Z-basis.
pub fn cyclotomic_free_basis(p: u32, r: u32) -> Result<(InvolutionModule, IntMat), Error> {
    if !is_odd_prime(p) {
        return Err(Error::OddPrimeRequired);
    }
    if r == 0 {
        return Err(Error::ZeroExponent);
    }
    let sigma = cyclotomic_conjugation(p, r);
    let phi = sigma.rows();
    let half = phi / 2;
    // Element z^j is the j-th power basis vector while j < phi.
    let mut basis = IntMat::zero(half, phi);
    for i in 0..half {
        basis[(i, i + 1)] = Int::one();
    }
    let module = InvolutionModule::new(sigma).expect("conjugation is an involution");
    // The defining property of a free basis: the elements and their
    // conjugates together form a Z-basis of the module.
    let conjugates = module.sigma.mul(&basis.transpose()).transpose();
    let full = IntMat::vstack(&[&basis, &conjugates]);
    debug_assert!(full.det().abs() == Int::one(), "half basis plus conjugates must be unimodular");
    Ok((module, basis))
}
