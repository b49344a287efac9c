//! Finitely generated abelian groups in invariant factor form.

use std::fmt;

use num_traits::{One, Zero};

use super::mat::{Int, IntMat};
use super::snf::snf;

/// Z^free_rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
#[derive(Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    free_rank: usize,
    invariant_factors: Vec<Int>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    /// Validates the divisibility chain and drops unit factors.
    pub fn new(free_rank: usize, factors: Vec<Int>) -> Self {
        let factors: Vec<Int> = factors.into_iter().filter(|f| !f.is_one()).collect();
        for f in &factors {
            assert!(*f >= Int::from(2), "invariant factor below 2");
        }
        for w in factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "invariant factors must divide in order");
        }
        FinAbGroup { free_rank, invariant_factors: factors }
    }

    /// Cokernel of the map represented by the rows of m inside Z^cols:
    /// Z^cols / (row span of m).
    pub fn cokernel(m: &IntMat) -> Self {
        let s = snf(m);
        let diag = s.nonzero_diagonal();
        let free = m.cols() - diag.len();
        FinAbGroup::new(free, diag)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        let mut n = Int::one();
        for f in &self.invariant_factors {
            n *= f;
        }
        Some(n)
    }

    /// True when the group is a finite elementary abelian 2-group (Z/2)^k,
    /// including the trivial group.
    pub fn is_elementary_two(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.iter().all(|f| *f == Int::from(2))
    }

    /// F2-dimension when the group is elementary abelian of exponent 2.
    pub fn two_rank(&self) -> Option<usize> {
        if self.is_elementary_two() {
            Some(self.invariant_factors.len())
        } else {
            None
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::mat::int;

    #[test]
    fn cokernel_of_diagonal_map() {
        // Z^3 / <2e1, 6e2> = Z/2 + Z/6 + Z.
        let m = IntMat::from_rows(&[vec![2, 0, 0], vec![0, 6, 0]]);
        let g = FinAbGroup::cokernel(&m);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), &[int(2), int(6)]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/6");
        assert!(g.order().is_none());
    }

    #[test]
    fn unit_factors_are_dropped() {
        let g = FinAbGroup::new(0, vec![int(1), int(1), int(4)]);
        assert_eq!(g.invariant_factors(), &[int(4)]);
        assert_eq!(g.order(), Some(int(4)));
        assert!(!g.is_elementary_two());
    }

    #[test]
    fn elementary_two_detection() {
        let g = FinAbGroup::new(0, vec![int(2), int(2)]);
        assert!(g.is_elementary_two());
        assert_eq!(g.two_rank(), Some(2));
        assert_eq!(g.to_string(), "Z/2 + Z/2");
        assert!(FinAbGroup::trivial().is_elementary_two());
        assert_eq!(FinAbGroup::trivial().two_rank(), Some(0));
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }
}
