//! Shared inputs for the benches: fixed matrices with mixed magnitudes and
//! the golden lattices the route benches walk.

use brauer_kit::exactlin::{Int, IntMat};

/// Deterministic dense matrix with entries spread over [-bound, bound],
/// built from a fixed multiplicative sweep so runs are comparable.
pub fn dense_matrix(n: usize, bound: i64) -> IntMat {
    let modulus = 2 * bound + 1;
    let mut state = 17i64;
    IntMat::from_fn(n, n, |_, _| {
        state = (state * 31 + 7) % modulus;
        Int::from(state - bound)
    })
}
