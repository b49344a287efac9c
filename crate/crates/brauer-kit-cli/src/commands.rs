//! One function per subcommand. Each returns the output envelope plus a one
//! line summary for standard error, or a Failure carrying the exit code.

use brauer_kit::cmfields::{
    bilinear_form_lattice, brauer_cm, build_nonsimple_cm_surface, build_quartic_cm,
    cyclotomic_algebra, cyclotomic_brauer, cyclotomic_different, dual_module,
    ideal_lattice_brauer, trace_dual, AlgebraLattice,
};
use brauer_kit::constructions::{
    build_polarised_pair, build_symmetric_only, numeric_j_search, screen_small_endomorphisms,
    ConstructionData, Error as ConstructionError,
};
use brauer_kit::exactlin::{exact_signature, rat, ZLattice};
use brauer_kit::invcoh::{h1, h1_induced_kernel, is_free_over_involution, tate_h0, EquivariantMap, TateCohomology};
use brauer_kit::torus::{
    albert_bound, bilinear_forms, brauer_mod4_oracle, brauer_via_h1, check_bi_ends,
    find_polarisation, invariant_brauer, invariant_brauer_presentation, is_polarisation,
    ns_sublattice, odd_index_sublattice_brauer, product, upper_bound_check, AlbertFactor,
    AlbertType, FormLattice, PolarisationSearch,
};
use brauer_kit::{FinAbGroup, IntMat, QMat, Rat};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codec;
use crate::Family;

/// Dual ranks above this skip the torus-side cross-check; the quotient
/// formula itself stays exact at any rank, the guard only keeps command
/// runtimes flat.
pub const CROSS_CHECK_RANK_BOUND: usize = 12;

/// Form lattice ranks above this skip the enumeration route: it walks
/// 4^rank coordinate classes, so rank 8 is the last size that fits the
/// command time budgets. The other two routes stay on.
pub const MOD4_RANK_BOUND: usize = 8;

#[derive(Serialize)]
pub struct Envelope {
    pub result: Value,
    pub diagnostics: Value,
    pub oracle_agreement: Value,
}

pub enum Failure {
    /// Exit 1: the input does not parse or fails its schema.
    Input(String),
    /// Exit 2: the input parses but violates a mathematical precondition.
    Precondition(String),
    /// Exit 3: a heuristic search ended without a verdict.
    Inconclusive(String, Value),
}

impl Failure {
    pub fn precondition(e: impl std::fmt::Display) -> Failure {
        Failure::Precondition(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Inconclusive(..) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Inconclusive(m, _) => m,
        }
    }

    pub fn diagnostics(&self) -> Value {
        let mut d = match self {
            Failure::Inconclusive(_, extra) => extra.clone(),
            _ => json!({}),
        };
        if let Value::Object(map) = &mut d {
            map.insert("error".into(), json!(self.message()));
        }
        d
    }
}

pub type Outcome = Result<(Envelope, String), Failure>;

/// Quotient, cohomological and enumeration routes on one form lattice. The
/// enumeration entry degrades to a note above its rank guard.
struct ThreePaths {
    group: FinAbGroup,
    generators: Vec<IntMat>,
    agreement: Value,
}

fn mod4_entry(f: &FormLattice, expected: &FinAbGroup) -> Value {
    if f.rank() > MOD4_RANK_BOUND {
        return json!(format!("skipped: enumeration bounded at rank {MOD4_RANK_BOUND}"));
    }
    match brauer_mod4_oracle(f) {
        Ok(g) => json!(g == *expected),
        Err(e) => json!(format!("skipped: {e}")),
    }
}

fn three_paths(f: &FormLattice) -> ThreePaths {
    let pres = invariant_brauer_presentation(f);
    let h1_group = brauer_via_h1(f);
    let mod4 = mod4_entry(f, &pres.group);
    ThreePaths {
        agreement: json!({
            "quotient_vs_h1": pres.group == h1_group,
            "mod4_vs_quotient": mod4,
        }),
        group: pres.group,
        generators: pres.generators,
    }
}

/// Conjugation-side group with the torus-side cross-check on the lattice of
/// Gram matrices, when the dual rank permits.
fn cm_with_bridge(l: &AlgebraLattice) -> (FinAbGroup, Vec<Vec<Rat>>, Value) {
    let (group, generators) = brauer_cm(l);
    let agreement = if l.algebra().dim() <= CROSS_CHECK_RANK_BOUND {
        let f = bilinear_form_lattice(l);
        let quotient = invariant_brauer(&f);
        let h1_group = brauer_via_h1(&f);
        json!({
            "cm_vs_quotient": quotient == group,
            "cm_vs_h1": h1_group == group,
            "cm_vs_mod4": mod4_entry(&f, &group),
        })
    } else {
        json!(format!(
            "skipped: dual rank exceeds the cross-check bound {CROSS_CHECK_RANK_BOUND}"
        ))
    };
    (group, generators, agreement)
}

fn upper_bound_value(f: &FormLattice) -> Value {
    let b = upper_bound_check(f);
    json!({
        "brauer_two_rank": b.brauer_two_rank,
        "form_rank": b.form_rank,
        "ns_rank": b.ns_rank,
        "holds": b.holds(),
    })
}

pub fn forms(input: &str, polarise: Option<usize>) -> Outcome {
    let v = codec::load_input(input)?;
    let t = codec::parse_torus(&v)?;
    let f = bilinear_forms(&t);
    let diagnostics = match check_bi_ends(&t) {
        Ok(r) => json!({
            "form_rank": r.form_rank,
            "end_rank": r.end_rank,
            "ranks_equal": r.ranks_equal(),
            "witness": codec::int_matrix_value(&r.witness),
        }),
        Err(e) => json!({ "note": e.to_string() }),
    };
    let mut result = json!({
        "n": f.n(),
        "rank": f.rank(),
        "forms": Value::Array(f.forms().iter().map(codec::int_matrix_value).collect()),
        "tau": codec::int_matrix_value(f.tau()),
    });
    let mut summary = format!("form lattice of rank {} on Z^{}", f.rank(), f.n());
    if let Some(bound) = polarise {
        result["polarisation"] = match find_polarisation(&t, bound) {
            PolarisationSearch::Found(e) => {
                summary.push_str(", polarisation found");
                json!({
                    "found": codec::int_matrix_value(&e),
                    "verified": is_polarisation(&e, &t),
                })
            }
            PolarisationSearch::NonAlgebraisable => {
                summary.push_str(", not algebraisable");
                json!({ "found": Value::Null, "non_algebraisable": true })
            }
            PolarisationSearch::Inconclusive => {
                return Err(Failure::Inconclusive(
                    format!(
                        "no polarisation with coefficients bounded by {bound}; a larger box may decide"
                    ),
                    json!({ "coeff_bound": bound }),
                ))
            }
        };
    }
    Ok((Envelope { result, diagnostics, oracle_agreement: Value::Null }, summary))
}

pub fn brauer(forms_arg: Option<&str>, cm_arg: Option<&str>, span: bool) -> Outcome {
    match (forms_arg, cm_arg) {
        (Some(arg), None) => {
            let v = codec::load_input(arg)?;
            let f = codec::parse_form_lattice(&v, span)?;
            let paths = three_paths(&f);
            let mut result = codec::group_value(&paths.group);
            result["generators"] =
                Value::Array(paths.generators.iter().map(codec::int_matrix_value).collect());
            let diagnostics = json!({
                "n": f.n(),
                "rank": f.rank(),
                "ns_rank": ns_sublattice(&f).rank(),
                "upper_bound": upper_bound_value(&f),
            });
            let summary = format!("invariant Brauer group: {}", paths.group);
            Ok((Envelope { result, diagnostics, oracle_agreement: paths.agreement }, summary))
        }
        (None, Some(arg)) => {
            let v = codec::load_input(arg)?;
            let l = codec::parse_algebra_lattice(&v)?;
            let (group, generators, agreement) = cm_with_bridge(&l);
            let mut result = codec::group_value(&group);
            result["generator_coordinates"] =
                Value::Array(generators.iter().map(|g| codec::rat_vec_value(g)).collect());
            let diagnostics = json!({
                "dual_rank": l.algebra().dim(),
                "formal_dk_value": true,
            });
            let summary = format!("invariant Brauer group: {group}");
            Ok((Envelope { result, diagnostics, oracle_agreement: agreement }, summary))
        }
        _ => Err(Failure::Input("pass exactly one of --forms or --cm".into())),
    }
}

fn cohomology_value(t: &TateCohomology) -> Value {
    json!({
        "invariant_factors": codec::int_vec_value(t.group.invariant_factors()),
        "generators": Value::Array(t.generators.iter().map(|g| codec::int_vec_value(g)).collect()),
    })
}

pub fn cohomology(input: &str) -> Outcome {
    let v = codec::load_input(input)?;
    let m = codec::parse_involution(&v)?;
    let h0 = tate_h0(&m);
    let h1c = h1(&m);
    let mut result = json!({
        "h0": cohomology_value(&h0),
        "h1": cohomology_value(&h1c),
        "free_over_involution": is_free_over_involution(&m),
    });
    let mut summary = format!("H^0 = {}, H^1 = {}", h0.group, h1c.group);
    if v.get("map").is_some() || v.get("target").is_some() {
        let target = codec::parse_involution(codec::field(&v, "target")?)?;
        let matrix = codec::parse_int_matrix(codec::field(&v, "map")?)?;
        let map = EquivariantMap::new(m.clone(), target, matrix).map_err(Failure::precondition)?;
        let kernel = h1_induced_kernel(&map);
        summary.push_str(&format!(", induced H^1 kernel {}", kernel.group));
        result["h1_kernel"] = cohomology_value(&kernel);
    }
    let diagnostics = json!({ "rank": m.rank() });
    Ok((Envelope { result, diagnostics, oracle_agreement: Value::Null }, summary))
}

/// Shifts both field components of the class representative into the
/// balanced range (-1/2, 1/2] when the shift stays inside (1 + iota) of the
/// dual module; the printed generator then matches the closed form.
pub(crate) fn balanced_pair_generator(l: &AlgebraLattice, gen: &[Rat]) -> (String, Vec<Rat>) {
    use num_traits::Zero;
    let alg = l.algebra();
    let d = alg.dim();
    let db = dual_module(l).basis();
    let mut denom_rows = QMat::zero(d, d);
    for i in 0..d {
        let c = alg.conj(db.row(i));
        for j in 0..d {
            denom_rows[(i, j)] = &db[(i, j)] + &c[j];
        }
    }
    let denom = ZLattice::from_generators(&denom_rows);
    if d == 4 && gen[1].is_zero() && gen[3].is_zero() {
        let shift = |r: &Rat| -> Rat { r - (r - rat(1, 2)).ceil() };
        let a = shift(&gen[0]);
        let b = shift(&gen[2]);
        let candidate = vec![a.clone(), Rat::zero(), b.clone(), Rat::zero()];
        let diff: Vec<Rat> = (0..4).map(|k| &candidate[k] - &gen[k]).collect();
        if denom.contains(&diff) {
            return (format!("({}, {})", a, b), candidate);
        }
    }
    (codec::tuple_string(gen), gen.to_vec())
}

pub fn cm_surface(d1: i64, d2: i64) -> Outcome {
    let l = build_nonsimple_cm_surface(d1, d2).map_err(Failure::precondition)?;
    let (group, generators, agreement) = cm_with_bridge(&l);
    let mut gen_strings = Vec::new();
    let mut gen_coords = Vec::new();
    for g in &generators {
        let (s, coords) = balanced_pair_generator(&l, g);
        gen_strings.push(s);
        gen_coords.push(coords);
    }
    let result = match gen_strings.len() {
        1 => json!({
            "invariant_factors": codec::int_vec_value(group.invariant_factors()),
            "generator": gen_strings[0],
            "generator_coordinates": codec::rat_vec_value(&gen_coords[0]),
        }),
        _ => json!({
            "invariant_factors": codec::int_vec_value(group.invariant_factors()),
            "generators": gen_strings,
        }),
    };
    let diagnostics = json!({
        "d1": d1,
        "d2": d2,
        "dual_rank": l.algebra().dim(),
        "formal_dk_value": true,
    });
    let summary = match gen_strings.len() {
        0 => format!("invariant Brauer group: {}", group),
        _ => format!("invariant Brauer group: {}, generated by {}", group, gen_strings.join(", ")),
    };
    Ok((Envelope { result, diagnostics, oracle_agreement: agreement }, summary))
}

pub fn quartic_cm() -> Outcome {
    let l = build_quartic_cm();
    let (group, generators, agreement) = cm_with_bridge(&l);
    let gen_strings: Vec<String> = generators.iter().map(|g| codec::tuple_string(g)).collect();
    let result = json!({
        "invariant_factors": codec::int_vec_value(group.invariant_factors()),
        "generator": gen_strings.first(),
        "generator_coordinates": generators.first().map(|g| codec::rat_vec_value(g)),
    });
    let diagnostics = json!({
        "basis": ["1", "sqrt(5)", "sqrt(delta)", "sqrt(5)*sqrt(delta)"],
        "delta": "-30+8*sqrt(5)",
        "dual_rank": l.algebra().dim(),
        "formal_dk_value": true,
    });
    let summary = format!(
        "invariant Brauer group: {}, generated by {}",
        group,
        gen_strings.join(", ")
    );
    Ok((Envelope { result, diagnostics, oracle_agreement: agreement }, summary))
}

pub fn cyclotomic(n: usize) -> Outcome {
    if n < 3 {
        return Err(Failure::Precondition(
            "conductor must be at least 3 for an imaginary field".into(),
        ));
    }
    let group = cyclotomic_brauer(n);
    let (alg, ok) = cyclotomic_algebra(n);
    let sigma = alg.conjugation().to_intmat();
    let module = brauer_kit::invcoh::InvolutionModule::new(sigma)
        .expect("power basis conjugation is an involution");
    let h0 = tate_h0(&module);
    let agreement = if alg.dim() <= CROSS_CHECK_RANK_BOUND {
        cm_with_bridge(&ok).2
    } else {
        json!(format!(
            "skipped: dual rank exceeds the cross-check bound {CROSS_CHECK_RANK_BOUND}"
        ))
    };
    let result = json!({
        "invariant_factors": codec::int_vec_value(group.invariant_factors()),
    });
    let diagnostics = json!({
        "n": n,
        "degree": alg.dim(),
        "free_over_involution": is_free_over_involution(&module),
        "h0_invariant_factors": codec::int_vec_value(h0.group.invariant_factors()),
        "formal_dk_value": true,
    });
    let summary = format!("invariant Brauer group of the conductor {n} ideal lattice: {group}");
    Ok((Envelope { result, diagnostics, oracle_agreement: agreement }, summary))
}

pub fn different(n: usize) -> Outcome {
    if n < 3 {
        return Err(Failure::Precondition(
            "conductor must be at least 3 for an imaginary field".into(),
        ));
    }
    let (alg, ok) = cyclotomic_algebra(n);
    let gen = cyclotomic_different(n);
    let inv = alg.inverse(&gen).expect("different generator is invertible");
    let d = alg.dim();
    let mut inverse_rows = QMat::zero(d, d);
    let mut ideal_rows = QMat::zero(d, d);
    for i in 0..d {
        let e = alg.basis_element(i);
        let p = alg.mul(&inv, &e);
        let q = alg.mul(&gen, &e);
        for j in 0..d {
            inverse_rows[(i, j)] = p[j].clone();
            ideal_rows[(i, j)] = q[j].clone();
        }
    }
    let inverse_lattice = AlgebraLattice::new(alg.clone(), &inverse_rows)
        .expect("scaling the ring basis preserves full rank");
    let ideal_lattice = AlgebraLattice::new(alg.clone(), &ideal_rows)
        .expect("scaling the ring basis preserves full rank");
    let matches = inverse_lattice.lattice() == trace_dual(&ok).lattice();
    let norm = ZLattice::quotient(ideal_lattice.lattice(), ok.lattice())
        .expect("the different is an integral ideal")
        .group
        .order()
        .expect("full rank sublattice has finite index");
    let result = json!({
        "n": n,
        "generator_coordinates": codec::rat_vec_value(&gen),
        "matches_trace_dual": matches,
        "norm": codec::int_value(&norm),
    });
    let diagnostics = json!({ "degree": d });
    let summary = format!(
        "different generator lattice {} the trace dual, norm {}",
        if matches { "matches" } else { "differs from" },
        norm
    );
    Ok((Envelope { result, diagnostics, oracle_agreement: Value::Null }, summary))
}

pub fn ideal(n: usize, gens_arg: &str) -> Outcome {
    if n < 3 {
        return Err(Failure::Precondition(
            "conductor must be at least 3 for an imaginary field".into(),
        ));
    }
    let v = codec::load_input(gens_arg)?;
    let raw = v
        .as_array()
        .ok_or_else(|| Failure::Input("ideal generators must be an array of coordinate vectors".into()))?;
    let (alg, _) = cyclotomic_algebra(n);
    let d = alg.dim();
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for g in raw {
        let coords = codec::parse_rat_vec(g)?;
        if coords.len() != d {
            return Err(Failure::Input(format!(
                "ideal generators must have {d} coordinates for conductor {n}"
            )));
        }
        gens.push(coords);
    }
    let group = ideal_lattice_brauer(n, &gens).map_err(Failure::precondition)?;
    // The module lattice spanned by the generators, rebuilt for the
    // cross-check against the direct computation.
    let mut rows = QMat::zero(gens.len() * d, d);
    for (i, gv) in gens.iter().enumerate() {
        for j in 0..d {
            let p = alg.mul(gv, &alg.basis_element(j));
            for (k, val) in p.into_iter().enumerate() {
                rows[(i * d + j, k)] = val;
            }
        }
    }
    let l = AlgebraLattice::new(alg, &rows).map_err(Failure::precondition)?;
    let (cm_group, _, bridge) = cm_with_bridge(&l);
    let mut agreement = json!({ "ideal_vs_module": cm_group == group });
    if let (Value::Object(a), Value::Object(b)) = (&mut agreement, &bridge) {
        for (k, val) in b {
            a.insert(k.clone(), val.clone());
        }
    }
    let result = json!({
        "invariant_factors": codec::int_vec_value(group.invariant_factors()),
    });
    let diagnostics = json!({ "n": n, "generator_count": gens.len(), "formal_dk_value": true });
    let summary = format!("invariant Brauer group of the ideal lattice: {group}");
    Ok((Envelope { result, diagnostics, oracle_agreement: agreement }, summary))
}

pub fn construct(family: Family, g: usize) -> Outcome {
    if g < 3 {
        return Err(Failure::Precondition("the families start at g = 3".into()));
    }
    let data = match family {
        Family::SymmetricOnly => build_symmetric_only(g),
        Family::PolarisedPair => build_polarised_pair(g),
    };
    let n = 2 * g;
    let mut gens: Vec<IntMat> = vec![data.s().clone()];
    if let Some(e) = data.e() {
        gens.push(e.clone());
    }
    let f = FormLattice::span(n, &gens).map_err(Failure::precondition)?;
    let paths = three_paths(&f);
    let ns_rank = ns_sublattice(&f).rank();
    let (p, q, z) = exact_signature(&data.s().to_qmat()).expect("construction form is symmetric");
    // E(J0 x, y) = S exactly; positivity of the pairing is a property of the
    // searched complex structure, not of the integral J0.
    let gram_recovers_s = match (data.j0(), data.e()) {
        (Some(j0), Some(e)) => Some(j0.transpose().mul(e) == *data.s()),
        _ => None,
    };
    let result = json!({
        "g": g,
        "s": codec::int_matrix_value(data.s()),
        "j0": data.j0().map(codec::int_matrix_value),
        "e": data.e().map(codec::int_matrix_value),
        "invariant_factors": codec::int_vec_value(paths.group.invariant_factors()),
    });
    let diagnostics = json!({
        "signature": { "positive": p, "negative": q, "zero": z },
        "form_rank": f.rank(),
        "ns_rank": ns_rank,
        "gram_recovers_s": gram_recovers_s,
        "upper_bound": upper_bound_value(&f),
    });
    let summary = format!(
        "invariant Brauer group {} with Neron-Severi rank {}",
        paths.group, ns_rank
    );
    Ok((Envelope { result, diagnostics, oracle_agreement: paths.agreement }, summary))
}

fn parse_construction(v: &Value) -> Result<ConstructionData, Failure> {
    let g = codec::parse_usize(codec::field(v, "g")?, "g")?;
    let s = codec::parse_int_matrix(codec::field(v, "s")?)?;
    let j0 = match v.get("j0") {
        Some(Value::Null) | None => None,
        Some(m) => Some(codec::parse_int_matrix(m)?),
    };
    let e = match v.get("e") {
        Some(Value::Null) | None => None,
        Some(m) => Some(codec::parse_int_matrix(m)?),
    };
    ConstructionData::new(g, s, j0, e).map_err(Failure::precondition)
}

#[allow(clippy::too_many_arguments)]
pub fn search_j(
    input: Option<&str>,
    family: Option<Family>,
    g: Option<usize>,
    seed: u64,
    tolerance: f64,
    max_iters: usize,
    screen_bound: usize,
) -> Outcome {
    let data = match (input, family) {
        (Some(arg), None) => parse_construction(&codec::load_input(arg)?)?,
        (None, Some(fam)) => {
            let g = g.ok_or_else(|| Failure::Input("--family requires --g".into()))?;
            if g < 3 {
                return Err(Failure::Precondition("the families start at g = 3".into()));
            }
            match fam {
                Family::SymmetricOnly => build_symmetric_only(g),
                Family::PolarisedPair => build_polarised_pair(g),
            }
        }
        _ => return Err(Failure::Input("pass exactly one of --input or --family".into())),
    };
    match numeric_j_search(&data, seed, tolerance, max_iters) {
        Ok(report) => {
            let screen = screen_small_endomorphisms(&report.j, screen_bound, tolerance);
            let result = json!({
                "j": report.j,
                "complex_structure_residual": report.complex_structure_residual,
                "form_residual": report.form_residual,
                "commutation_residual": report.commutation_residual,
                "positivity_margin": report.positivity_margin,
                "attempts": report.attempts,
                "polish_steps": report.polish_steps,
            });
            let diagnostics = json!({
                "seed": seed,
                "tolerance": tolerance,
                "max_iters": max_iters,
                "certifies_existence": false,
                "screen": {
                    "coeff_bound": screen_bound,
                    "non_scalar_hits": screen.hits.len(),
                    "scalars_commute": screen.scalars_commute,
                    "exhaustive": screen.exhaustive,
                    "candidates_tested": screen.candidates_tested,
                },
            });
            let summary = format!(
                "complex structure found: residuals {:.3e} / {:.3e}, {} screen hits",
                report.complex_structure_residual,
                report.form_residual,
                screen.hits.len()
            );
            Ok((Envelope { result, diagnostics, oracle_agreement: Value::Null }, summary))
        }
        Err(ConstructionError::SearchFailed) => Err(Failure::Inconclusive(
            "no complex structure within tolerance; retry with another seed".into(),
            json!({ "seed": seed, "tolerance": tolerance, "max_iters": max_iters }),
        )),
        Err(e) => Err(Failure::precondition(e)),
    }
}

pub fn bound(input: &str) -> Outcome {
    let v = codec::load_input(input)?;
    let raw = codec::field(&v, "factors")?
        .as_array()
        .ok_or_else(|| Failure::Input("\"factors\" must be an array".into()))?;
    let mut factors = Vec::new();
    for f in raw {
        let albert_type = match codec::field(f, "albert_type")?.as_str() {
            Some("I") => AlbertType::I,
            Some("II") => AlbertType::II,
            Some("III") => AlbertType::III,
            Some("IV") => AlbertType::IV,
            _ => {
                return Err(Failure::Input(
                    "\"albert_type\" must be one of \"I\", \"II\", \"III\", \"IV\"".into(),
                ))
            }
        };
        factors.push(AlbertFactor {
            dim_a: codec::parse_usize(codec::field(f, "dim_a")?, "dim_a")?,
            multiplicity: codec::parse_usize(codec::field(f, "multiplicity")?, "multiplicity")?,
            albert_type,
            dim_d: codec::parse_usize(codec::field(f, "dim_d")?, "dim_d")?,
            dim_d_minus: codec::parse_usize(codec::field(f, "dim_d_minus")?, "dim_d_minus")?,
        });
    }
    let report = albert_bound(&factors).map_err(Failure::precondition)?;
    let result = json!({
        "h_minus": report.h_minus,
        "dim_total": report.dim_total,
        "coarse_bound": report.coarse_bound,
        "holds": report.holds(),
    });
    let summary = format!(
        "anti-invariant dimension {} against the coarse bound {}",
        report.h_minus, report.coarse_bound
    );
    Ok((Envelope { result, diagnostics: json!({ "factor_count": factors.len() }), oracle_agreement: Value::Null }, summary))
}

pub fn product_cmd(input: &str) -> Outcome {
    let v = codec::load_input(input)?;
    let t1 = codec::parse_torus(codec::field(&v, "t1")?)?;
    let t2 = codec::parse_torus(codec::field(&v, "t2")?)?;
    let p = product(&t1, &t2);
    let f = bilinear_forms(&p);
    let paths = three_paths(&f);
    let g1 = invariant_brauer(&bilinear_forms(&t1));
    let g2 = invariant_brauer(&bilinear_forms(&t2));
    let additive = paths.group.two_rank().zip(g1.two_rank()).zip(g2.two_rank())
        .map(|((t, a), b)| t == a + b);
    let result = json!({
        "g": p.g(),
        "J": codec::rat_matrix_value(p.j()),
        "invariant_factors": codec::int_vec_value(paths.group.invariant_factors()),
    });
    let diagnostics = json!({
        "factor_invariant_factors": [
            codec::int_vec_value(g1.invariant_factors()),
            codec::int_vec_value(g2.invariant_factors()),
        ],
        "two_rank_additive": additive,
        "form_rank": f.rank(),
    });
    let summary = format!("product torus of dimension {}: {}", p.g(), paths.group);
    Ok((Envelope { result, diagnostics, oracle_agreement: paths.agreement }, summary))
}

pub fn isogeny_check(input: &str) -> Outcome {
    let v = codec::load_input(input)?;
    let f = codec::parse_form_lattice(codec::field(&v, "forms")?, false)?;
    let c = codec::parse_int_matrix(codec::field(&v, "basis_change")?)?;
    if c.rows() != f.n() || c.cols() != f.n() {
        return Err(Failure::Input(format!(
            "\"basis_change\" must be {0} x {0}",
            f.n()
        )));
    }
    let det = c.det();
    let sub = odd_index_sublattice_brauer(&f, &c).map_err(Failure::precondition)?;
    let paths = three_paths(&f);
    let preserved = sub == paths.group;
    let result = json!({
        "original_invariant_factors": codec::int_vec_value(paths.group.invariant_factors()),
        "sublattice_invariant_factors": codec::int_vec_value(sub.invariant_factors()),
        "preserved": preserved,
    });
    let diagnostics = json!({ "determinant": codec::int_value(&det) });
    let summary = format!(
        "odd index change (det {}) {} the group {}",
        det,
        if preserved { "preserves" } else { "changes" },
        paths.group
    );
    Ok((Envelope { result, diagnostics, oracle_agreement: paths.agreement }, summary))
}
