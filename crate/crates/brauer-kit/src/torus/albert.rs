//! Endomorphism-algebra bound on the 2-rank of the invariant Brauer group
//! of an abelian variety, from the Albert classification of its isogeny
//! factors.

use super::Error;

/// Albert type of the endomorphism division algebra of a simple factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlbertType {
    /// Totally real field.
    I,
    /// Totally indefinite quaternion algebra over a totally real field.
    II,
    /// Totally definite quaternion algebra over a totally real field.
    III,
    /// Division algebra over a CM field.
    IV,
}

/// One isogeny factor A_i^{n_i} of an abelian variety, with the rational
/// dimension of its endomorphism division algebra D_i and of the
/// anti-invariant part of D_i under a Rosati involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlbertFactor {
    /// Dimension of the simple abelian variety A_i.
    pub dim_a: usize,
    /// Multiplicity n_i of A_i in the isogeny decomposition.
    pub multiplicity: usize,
    pub albert_type: AlbertType,
    /// dim_Q D_i.
    pub dim_d: usize,
    /// dim_Q of the (-1)-eigenspace of the Rosati involution on D_i.
    pub dim_d_minus: usize,
}

/// Dimension count for the anti-symmetrised endomorphism space of a product
/// of isogeny factors, together with the coarse bound it must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlbertReport {
    /// dim_Q of the space of Rosati-anti-invariant endomorphisms; the
    /// 2-rank of the invariant Brauer group is at most this.
    pub h_minus: usize,
    /// Dimension of the product abelian variety.
    pub dim_total: usize,
    /// max(n_i) times the dimension of the product.
    pub coarse_bound: usize,
}

impl AlbertReport {
    pub fn holds(&self) -> bool {
        self.h_minus <= self.coarse_bound
    }
}

/// Checks each factor against the dimension restrictions of its Albert type
/// and evaluates the anti-invariant dimension
/// sum over i of n_i(n_i - 1)/2 * dim D_i + n_i * dim D_i^-.
pub fn albert_bound(factors: &[AlbertFactor]) -> Result<AlbertReport, Error> {
    for (i, f) in factors.iter().enumerate() {
        if f.dim_a == 0 || f.multiplicity == 0 || f.dim_d == 0 {
            return Err(Error::TableViolation(i));
        }
        let ok = match f.albert_type {
            AlbertType::I => f.dim_d <= f.dim_a && f.dim_d_minus == 0,
            AlbertType::II => f.dim_d <= 2 * f.dim_a && 4 * f.dim_d_minus == f.dim_d,
            AlbertType::III => f.dim_d <= f.dim_a && 4 * f.dim_d_minus == 3 * f.dim_d,
            AlbertType::IV => f.dim_d <= 2 * f.dim_a && 2 * f.dim_d_minus == f.dim_d,
        };
        if !ok {
            return Err(Error::TableViolation(i));
        }
    }
    let h_minus = factors
        .iter()
        .map(|f| {
            let n = f.multiplicity;
            n * (n - 1) / 2 * f.dim_d + n * f.dim_d_minus
        })
        .sum();
    let dim_total = factors.iter().map(|f| f.multiplicity * f.dim_a).sum();
    let max_mult = factors.iter().map(|f| f.multiplicity).max().unwrap_or(0);
    Ok(AlbertReport { h_minus, dim_total, coarse_bound: max_mult * dim_total })
}
