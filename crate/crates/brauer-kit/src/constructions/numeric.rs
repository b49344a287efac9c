//! Floating-point witnesses for the construction data: a seeded search for
//! complex structures preserving the form, and a screen for unexpected
//! small integer endomorphisms. All float arithmetic in the crate lives in
//! this file; outputs carry residuals and are never fed back into the exact
//! computations.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{congruence_diagonalize, IntMat, QMat};

use super::{ConstructionData, Error};

/// Required excess of the smallest eigenvalue of the polarising form.
pub const POSITIVITY_TOLERANCE: f64 = 1e-6;

const MAX_ATTEMPTS: usize = 12;
const POLISH_CAP: usize = 40;
const BOX_BUDGET: u64 = 1_000_000;
const SAMPLE_COUNT: u64 = 4_000;
const SCREEN_SEED: u64 = 0x6b7a;

type FMat = Vec<Vec<f64>>;

/// An approximate complex structure with its constraint residuals. The
/// commutation and positivity entries are present exactly when the input
/// carried an integral complex structure to pair with.
#[derive(Debug, Clone)]
pub struct JSearchReport {
    pub j: FMat,
    pub complex_structure_residual: f64,
    pub form_residual: f64,
    pub commutation_residual: Option<f64>,
    pub positivity_margin: Option<f64>,
    pub attempts: usize,
    pub polish_steps: usize,
}

/// Outcome of the integer commutant screen. Scalars always commute and are
/// reported separately from the interesting hits.
#[derive(Debug, Clone)]
pub struct EndomorphismScreen {
    pub hits: Vec<IntMat>,
    pub scalars_commute: bool,
    pub exhaustive: bool,
    pub candidates_tested: u64,
}

fn fzero(n: usize) -> FMat {
    vec![vec![0.0; n]; n]
}

fn fidentity(n: usize) -> FMat {
    let mut m = fzero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn fmul(a: &FMat, b: &FMat) -> FMat {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if *aik == 0.0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn fadd(a: &FMat, b: &FMat) -> FMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

fn fsub(a: &FMat, b: &FMat) -> FMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn fscale(a: &FMat, c: f64) -> FMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn ftranspose(a: &FMat) -> FMat {
    let n = a.len();
    let m = a[0].len();
    let mut out = vec![vec![0.0; n]; m];
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = *v;
        }
    }
    out
}

fn frobenius(a: &FMat) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn int_to_float(m: &IntMat) -> FMat {
    let mut out = vec![vec![0.0; m.cols()]; m.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m[(i, j)].to_f64().expect("entry fits in f64");
        }
    }
    out
}

fn rat_to_float(m: &QMat) -> FMat {
    let mut out = vec![vec![0.0; m.cols()]; m.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m[(i, j)].to_f64().expect("entry fits in f64");
        }
    }
    out
}

/// Matrix exponential by scaling, a 14-term Taylor sum, and repeated
/// squaring. Inputs here are small perturbation generators.
fn expm(a: &FMat) -> FMat {
    let n = a.len();
    let norm = a.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs())) * n as f64;
    let k = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = fscale(a, (2.0f64).powi(-k));
    let mut term = fidentity(n);
    let mut sum = fidentity(n);
    for i in 1..=14 {
        term = fscale(&fmul(&term, &b), 1.0 / i as f64);
        sum = fadd(&sum, &term);
    }
    for _ in 0..k {
        sum = fmul(&sum, &sum);
    }
    sum
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_min_eigenvalue(m: &FMat) -> f64 {
    let n = m.len();
    let mut a = m.clone();
    for _ in 0..30 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}

struct Residuals {
    complex_structure: f64,
    form: f64,
    commutation: Option<f64>,
    margin: Option<f64>,
}

fn residuals(j: &FMat, s: &FMat, j0: Option<&FMat>) -> Residuals {
    let n = j.len();
    let jj = fmul(j, j);
    let complex_structure = frobenius(&fadd(&jj, &fidentity(n)));
    let jt = ftranspose(j);
    let form = frobenius(&fsub(&fmul(&fmul(&jt, s), j), s));
    let (commutation, margin) = match j0 {
        Some(j0) => {
            let comm = frobenius(&fsub(&fmul(j, j0), &fmul(j0, j)));
            let pairing = fmul(&fmul(&jt, s), j0);
            let sym = fscale(&fadd(&pairing, &ftranspose(&pairing)), 0.5);
            (Some(comm), Some(jacobi_min_eigenvalue(&sym)))
        }
        None => (None, None),
    };
    Residuals { complex_structure, form, commutation, margin }
}

fn passes(r: &Residuals, tolerance: f64) -> bool {
    r.complex_structure <= tolerance
        && r.form <= tolerance
        && r.commutation.map_or(true, |c| c <= tolerance)
        && r.margin.map_or(true, |m| m > POSITIVITY_TOLERANCE)
}

/// One Newton step toward J^2 = -1: with E = J^2 + 1 commuting with J, the
/// update J(1 + E/2) cancels E to first order.
fn polish(j: &FMat) -> FMat {
    let n = j.len();
    let e = fadd(&fmul(j, j), &fidentity(n));
    let half = fadd(&fidentity(n), &fscale(&e, 0.5));
    fmul(j, &half)
}

/// Searches for a complex structure preserving the form of `data`, pairing
/// with its integral structure when one is present. Deterministic for fixed
/// seed. The report is numerical evidence only: residuals are measured in
/// the Frobenius norm against the caller's tolerance, and the positivity
/// margin of the polarising form must clear POSITIVITY_TOLERANCE.
///
/// SearchFailed signals either the exact parity obstruction (a preserved
/// form needs even numbers of positive and negative squares) or an
/// exhausted iteration budget; the latter invites a retry with a new seed.
pub fn numeric_j_search(
    data: &ConstructionData,
    seed: u64,
    tolerance: f64,
    max_iters: usize,
) -> Result<JSearchReport, Error> {
    let n = 2 * data.g();
    let s_exact = data.s().to_qmat();
    let (r, d) = congruence_diagonalize(&s_exact).expect("construction form is symmetric");
    let signs: Vec<i32> = (0..n)
        .map(|i| {
            let v = &d[(i, i)];
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect();
    let pos: Vec<usize> = (0..n).filter(|&i| signs[i] > 0).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| signs[i] < 0).collect();
    if pos.len() + neg.len() < n || pos.len() % 2 == 1 || neg.len() % 2 == 1 {
        return Err(Error::SearchFailed);
    }

    let s_float = int_to_float(data.s());
    let j0_float = data.j0().map(int_to_float);

    // Exact-rational frames for the diagonalized coordinates: p = r^T delta
    // sends the standard basis to an orthonormal-up-to-sign frame.
    let r_inv = r.inverse().expect("congruence transform is invertible");
    let mut p = ftranspose(&rat_to_float(&r));
    let mut p_inv = rat_to_float(&r_inv.transpose());
    for i in 0..n {
        let scale = d[(i, i)].to_f64().expect("diagonal fits in f64").abs().sqrt();
        for k in 0..n {
            p[k][i] /= scale;
            p_inv[i][k] *= scale;
        }
    }
    let mut j_blk = fzero(n);
    for pair in pos.chunks(2).chain(neg.chunks(2)) {
        j_blk[pair[0]][pair[1]] = -1.0;
        j_blk[pair[1]][pair[0]] = 1.0;
    }
    let diagonalized_start = fmul(&fmul(&p, &j_blk), &p_inv);

    // With an integral structure J1 + J2 on lattice blocks, negating the
    // block where the form is negative definite lands in the positivity
    // region; the float entries are integers, so its residuals are exact
    // zeros.
    let paired_start = data.j0().map(|j0| {
        let mut flip = fidentity(n);
        flip[0][0] = -1.0;
        flip[1][1] = -1.0;
        fmul(&int_to_float(j0), &flip)
    });

    let s_inv_float = rat_to_float(&s_exact.inverse().expect("form is nondegenerate"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polish_steps = 0usize;

    for attempt in 0..MAX_ATTEMPTS {
        let mut j = match (attempt, &paired_start) {
            (0, Some(start)) => start.clone(),
            (0, None) => diagonalized_start.clone(),
            _ => {
                // Conjugate the start by exp of a random S-skew generator,
                // averaged to commute with J0 when pairing is required.
                let base = paired_start.as_ref().unwrap_or(&diagonalized_start);
                let mut k = fzero(n);
                for i in 0..n {
                    for l in i + 1..n {
                        let v = rng.gen_range(-1.0..1.0);
                        k[i][l] = v;
                        k[l][i] = -v;
                    }
                }
                let mut a = fmul(&s_inv_float, &k);
                if let Some(j0) = &j0_float {
                    let conj = fmul(&fmul(j0, &a), j0);
                    a = fscale(&fsub(&a, &conj), 0.5);
                }
                let q = expm(&fscale(&a, 0.3));
                let q_inv = expm(&fscale(&a, -0.3));
                fmul(&fmul(&q, base), &q_inv)
            }
        };
        let mut best = residuals(&j, &s_float, j0_float.as_ref());
        for _ in 0..POLISH_CAP {
            if polish_steps >= max_iters || best.complex_structure <= f64::EPSILON {
                break;
            }
            let next = polish(&j);
            polish_steps += 1;
            let next_res = residuals(&next, &s_float, j0_float.as_ref());
            if next_res.complex_structure >= best.complex_structure {
                break;
            }
            j = next;
            best = next_res;
        }
        if passes(&best, tolerance) {
            return Ok(JSearchReport {
                j,
                complex_structure_residual: best.complex_structure,
                form_residual: best.form,
                commutation_residual: best.commutation,
                positivity_margin: best.margin,
                attempts: attempt + 1,
                polish_steps,
            });
        }
        if polish_steps >= max_iters {
            break;
        }
    }
    Err(Error::SearchFailed)
}

fn is_scalar(u: &IntMat) -> bool {
    let n = u.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || u[(i, j)].is_zero()))
        && (1..n).all(|i| u[(i, i)] == u[(0, 0)])
}

fn commutation_residual(u: &IntMat, j: &FMat) -> f64 {
    let uf = int_to_float(u);
    frobenius(&fsub(&fmul(&uf, j), &fmul(j, &uf)))
}

/// Screens integer matrices with entries in [-bound, bound] for commutation
/// with an approximate complex structure. The rounding of j itself is always
/// tested, the full box is enumerated when small enough, and a fixed-seed
/// sample is drawn otherwise. An empty hit list is evidence of a trivial
/// commutant, never proof.
pub fn screen_small_endomorphisms(
    j_approx: &FMat,
    coeff_bound: usize,
    tolerance: f64,
) -> EndomorphismScreen {
    let n = j_approx.len();
    assert!(j_approx.iter().all(|r| r.len() == n), "approximate structure must be square");
    let bound = coeff_bound as i64;
    let mut hits: Vec<IntMat> = Vec::new();
    let mut tested = 0u64;
    let mut scalars_commute = true;

    let mut consider = |u: IntMat, tested: &mut u64, hits: &mut Vec<IntMat>| {
        *tested += 1;
        let commutes = commutation_residual(&u, j_approx) < tolerance;
        if is_scalar(&u) {
            scalars_commute &= commutes;
        } else if commutes && !hits.contains(&u) && hits.len() < 128 {
            hits.push(u);
        }
    };

    for c in 0..=bound {
        consider(IntMat::identity(n).scale(&crate::exactlin::int(c)), &mut tested, &mut hits);
    }
    let rounded = IntMat::from_fn(n, n, |i, j| crate::exactlin::int(j_approx[i][j].round() as i64));
    consider(rounded, &mut tested, &mut hits);

    let cells = (n * n) as u32;
    let width = 2 * coeff_bound as u64 + 1;
    let box_size = width.checked_pow(cells).filter(|&b| b <= BOX_BUDGET);
    match box_size {
        Some(total) => {
            let mut digits = vec![0u64; cells as usize];
            for _ in 0..total {
                let u = IntMat::from_fn(n, n, |i, j| {
                    crate::exactlin::int(digits[i * n + j] as i64 - bound)
                });
                consider(u, &mut tested, &mut hits);
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < width {
                        break;
                    }
                    *d = 0;
                }
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(SCREEN_SEED);
            for _ in 0..SAMPLE_COUNT {
                let u = IntMat::from_fn(n, n, |_, _| {
                    crate::exactlin::int(rng.gen_range(-bound..=bound))
                });
                consider(u, &mut tested, &mut hits);
            }
        }
    }

    EndomorphismScreen {
        hits,
        scalars_commute,
        exhaustive: box_size.is_some(),
        candidates_tested: tested,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_polarised_pair, build_symmetric_only, ConstructionData};
    use crate::exactlin::int;

    #[test]
    fn paired_warm_start_has_exact_zero_residuals() {
        let data = build_polarised_pair(3);
        let report = numeric_j_search(&data, 7, 1e-8, 100).unwrap();
        assert_eq!(report.complex_structure_residual, 0.0);
        assert_eq!(report.form_residual, 0.0);
        assert_eq!(report.commutation_residual, Some(0.0));
        let margin = report.positivity_margin.unwrap();
        assert!(margin > 0.5, "smallest eigenvalue 1 estimated as {}", margin);
        assert_eq!(report.attempts, 1);
    }

    #[test]
    fn paired_warm_start_scales_with_g() {
        for g in [4, 5] {
            let data = build_polarised_pair(g);
            let report = numeric_j_search(&data, 0, 1e-8, 100).unwrap();
            assert_eq!(report.complex_structure_residual, 0.0, "g = {}", g);
            assert!(report.positivity_margin.unwrap() > 0.5);
        }
    }

    #[test]
    fn symmetric_form_search_meets_tolerance() {
        let data = build_symmetric_only(3);
        let report = numeric_j_search(&data, 1, 1e-8, 10_000).unwrap();
        assert!(report.complex_structure_residual < 1e-8);
        assert!(report.form_residual < 1e-8);
        assert!(report.commutation_residual.is_none());
        assert!(report.positivity_margin.is_none());
    }

    #[test]
    fn different_seeds_still_converge() {
        let data = build_symmetric_only(4);
        for seed in [2, 3] {
            let report = numeric_j_search(&data, seed, 1e-8, 10_000).unwrap();
            assert!(report.form_residual < 1e-8, "seed {}", seed);
        }
    }

    #[test]
    fn parity_obstruction_fails_fast() {
        // Signature (5, 1): no complex structure can preserve the form.
        let s = IntMat::from_rows(&[
            vec![2, 0, 0, 0, 0, 0],
            vec![0, 2, 0, 0, 0, 0],
            vec![0, 0, 2, 0, 0, 0],
            vec![0, 0, 0, 2, 0, 0],
            vec![0, 0, 0, 0, 2, 0],
            vec![0, 0, 0, 0, 0, -2],
        ]);
        let data = ConstructionData::new(3, s, None, None).unwrap();
        assert_eq!(numeric_j_search(&data, 0, 1e-8, 100).unwrap_err(), Error::SearchFailed);
        let degenerate = IntMat::from_fn(6, 6, |i, j| {
            if i == j && i < 4 {
                int(2)
            } else {
                int(0)
            }
        });
        let data = ConstructionData::new(3, degenerate, None, None).unwrap();
        assert_eq!(numeric_j_search(&data, 0, 1e-8, 100).unwrap_err(), Error::SearchFailed);
    }

    #[test]
    fn screen_detects_the_integral_structure() {
        let data = build_polarised_pair(3);
        let j0 = data.j0().unwrap();
        let screen = screen_small_endomorphisms(&int_to_float(j0), 1, 1e-6);
        assert!(screen.hits.contains(j0), "J0 commutes with itself");
        assert!(screen.scalars_commute);
        assert!(!screen.exhaustive, "the 6x6 box at bound 1 is far beyond the budget");
    }

    #[test]
    fn screen_enumerates_small_boxes_completely() {
        let j = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let screen = screen_small_endomorphisms(&j, 1, 1e-9);
        assert!(screen.exhaustive);
        // The real commutant of a rotation is a + b J; the non-scalar
        // members of the box are the six with b nonzero.
        assert_eq!(screen.hits.len(), 6);
        for u in &screen.hits {
            assert_eq!(u[(0, 0)], u[(1, 1)], "hit must have the a + bJ shape");
            assert_eq!(u[(0, 1)], -&u[(1, 0)].clone());
        }
    }

    #[test]
    fn search_on_searched_structure_reports_outcome() {
        let data = build_symmetric_only(3);
        let report = numeric_j_search(&data, 5, 1e-8, 10_000).unwrap();
        let screen = screen_small_endomorphisms(&report.j, 2, 1e-6);
        assert!(screen.scalars_commute);
        assert!(screen.candidates_tested > 0);
    }
}
