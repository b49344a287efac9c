//! Golden expectations behind `reproduce-paper`: every displayed value the
//! library is expected to reproduce, run end to end with one PASS/FAIL line
//! per item. Items share nothing and may fan out over
//! BRAUER_KIT_THREADS workers.

use brauer_kit::cmfields::{
    bilinear_form_lattice, brauer_cm, build_nonsimple_cm_surface, build_quartic_cm,
    cyclotomic_algebra, cyclotomic_brauer, cyclotomic_different, trace_dual, AlgebraLattice,
};
use brauer_kit::constructions::{build_polarised_pair, build_symmetric_only};
use brauer_kit::invcoh::{
    h1, h1_induced_kernel, is_free_over_involution, tate_h0, EquivariantMap, InvolutionModule,
};
use brauer_kit::exactlin::ZLattice;
use brauer_kit::torus::{
    albert_bound, bilinear_forms, brauer_via_h1, invariant_brauer, ns_sublattice,
    odd_index_sublattice_brauer, product, upper_bound_check, AlbertFactor, AlbertType,
    Error as TorusError, FormLattice,
};
use brauer_kit::{FinAbGroup, Int, IntMat, QMat, RationalTorus};
use serde_json::{json, Value};

use crate::commands::{self, Envelope};

struct GoldenItem {
    name: String,
    run: Box<dyn Fn() -> Result<String, String> + Send + Sync>,
}

fn item(
    name: impl Into<String>,
    run: impl Fn() -> Result<String, String> + Send + Sync + 'static,
) -> GoldenItem {
    GoldenItem { name: name.into(), run: Box::new(run) }
}

fn expect_factors(group: &FinAbGroup, want: &[i64], what: &str) -> Result<(), String> {
    let got: Vec<Int> = group.invariant_factors().to_vec();
    let want: Vec<Int> = want.iter().map(|&x| Int::from(x)).collect();
    if got != want || group.free_rank() != 0 {
        return Err(format!("{what}: expected invariant factors {want:?}, got {group}"));
    }
    Ok(())
}

/// The three torus-side routes against the conjugation-side value on the
/// lattice of Gram matrices.
fn expect_bridge_agreement(l: &AlgebraLattice, group: &FinAbGroup) -> Result<(), String> {
    let f = bilinear_form_lattice(l);
    let quotient = invariant_brauer(&f);
    if &quotient != group {
        return Err(format!("quotient route got {quotient}, conjugation route {group}"));
    }
    let h1_group = brauer_via_h1(&f);
    if &h1_group != group {
        return Err(format!("cohomological route got {h1_group}, conjugation route {group}"));
    }
    Ok(())
}

fn surface_items(inject_fault: bool) -> Vec<GoldenItem> {
    let mut items = Vec::new();
    for (idx, (d1, d2)) in [(-3i64, -7i64), (-7, -11), (-3, -11)].into_iter().enumerate() {
        let corrupted = inject_fault && idx == 0;
        items.push(item(format!("cm-surface({d1},{d2})"), move || {
            let l = build_nonsimple_cm_surface(d1, d2).map_err(|e| e.to_string())?;
            let (group, gens) = brauer_cm(&l);
            let expected: &[i64] = if corrupted { &[4] } else { &[2] };
            expect_factors(&group, expected, "group")?;
            let (pretty, _) = commands::balanced_pair_generator(&l, &gens[0]);
            if pretty != "(1/4, -1/4)" {
                return Err(format!("generator class printed as {pretty}, expected (1/4, -1/4)"));
            }
            expect_bridge_agreement(&l, &group)?;
            Ok(format!("Z/2 generated by {pretty}"))
        }));
    }
    items.push(item("quartic-cm", || {
        let l = build_quartic_cm();
        let (group, gens) = brauer_cm(&l);
        expect_factors(&group, &[2], "group")?;
        let pretty = crate::codec::tuple_string(&gens[0]);
        if pretty != "(0, 1/20, 0, 0)" {
            return Err(format!(
                "generator printed as {pretty}, expected (0, 1/20, 0, 0) = 1/(4*sqrt(5))"
            ));
        }
        expect_bridge_agreement(&l, &group)?;
        Ok("Z/2 generated by 1/(4*sqrt(5))".into())
    }));
    items.push(item("direct-sum-contrast", || {
        let fiber = build_nonsimple_cm_surface(-3, -7).map_err(|e| e.to_string())?;
        let full = AlgebraLattice::new(fiber.algebra().clone(), &QMat::identity(4))
            .map_err(|e| e.to_string())?;
        let (full_group, _) = brauer_cm(&full);
        if !full_group.is_trivial() {
            return Err(format!("full direct sum gave {full_group}, expected the trivial group"));
        }
        let (fiber_group, _) = brauer_cm(&fiber);
        expect_factors(&fiber_group, &[2], "fiber product")?;
        Ok("direct sum trivial, fiber product Z/2".into())
    }));
    items
}

fn cyclotomic_items() -> Vec<GoldenItem> {
    let mut items = Vec::new();
    for n in 3..=24usize {
        items.push(item(format!("cyclotomic-brauer(n={n})"), move || {
            let group = cyclotomic_brauer(n);
            if !group.is_trivial() {
                return Err(format!("expected the trivial group, got {group}"));
            }
            Ok("trivial".into())
        }));
        items.push(item(format!("cyclotomic-different(n={n})"), move || {
            let (alg, ok) = cyclotomic_algebra(n);
            let gen = cyclotomic_different(n);
            let inv = alg.inverse(&gen).ok_or("different generator is not invertible")?;
            let d = alg.dim();
            let mut rows = QMat::zero(d, d);
            for i in 0..d {
                let p = alg.mul(&inv, &alg.basis_element(i));
                for (j, val) in p.into_iter().enumerate() {
                    rows[(i, j)] = val;
                }
            }
            let scaled = AlgebraLattice::new(alg, &rows).map_err(|e| e.to_string())?;
            if scaled.lattice() != trace_dual(&ok).lattice() {
                return Err("generator lattice differs from the trace dual".into());
            }
            Ok("generator lattice equals the trace dual".into())
        }));
    }
    items.push(item("cyclotomic-freeness", || {
        for n in 3..=24usize {
            let (alg, _) = cyclotomic_algebra(n);
            let module = InvolutionModule::new(alg.conjugation().to_intmat())
                .map_err(|e| e.to_string())?;
            let free = is_free_over_involution(&module);
            let two_power = n.is_power_of_two();
            if free == two_power {
                return Err(format!(
                    "n = {n}: free = {free}, but freeness must fail exactly at powers of two"
                ));
            }
        }
        Ok("free over the involution exactly when the conductor is not a power of two".into())
    }));
    items.push(item("cyclotomic-h0-two-powers", || {
        for n in [4usize, 8, 16] {
            let (alg, _) = cyclotomic_algebra(n);
            let module = InvolutionModule::new(alg.conjugation().to_intmat())
                .map_err(|e| e.to_string())?;
            let h0 = tate_h0(&module);
            expect_factors(&h0.group, &[2], &format!("H^0 at n = {n}"))?;
        }
        Ok("H^0 = Z/2 at n = 4, 8, 16".into())
    }));
    items
}

fn construction_items() -> Vec<GoldenItem> {
    let mut items = Vec::new();
    for g in 3..=6usize {
        items.push(item(format!("symmetric-only(g={g})"), move || {
            let data = build_symmetric_only(g);
            let f = FormLattice::span(2 * g, &[data.s().clone()]).map_err(|e| e.to_string())?;
            let group = invariant_brauer(&f);
            expect_factors(&group, &[2], "group")?;
            let ns = ns_sublattice(&f).rank();
            if ns != 0 {
                return Err(format!("expected empty Neron-Severi lattice, got rank {ns}"));
            }
            Ok("Z/2 with no alternating forms".into())
        }));
        items.push(item(format!("polarised-pair(g={g})"), move || {
            let data = build_polarised_pair(g);
            let j0 = data.j0().ok_or("construction must carry J0")?;
            let e = data.e().ok_or("construction must carry E")?;
            let n = 2 * g;
            if j0.mul(j0) != IntMat::identity(n).neg() {
                return Err("J0^2 = -1 fails".into());
            }
            if j0.transpose().mul(data.s()).mul(j0) != *data.s() {
                return Err("J0 does not preserve S".into());
            }
            if *e != data.s().mul(j0) {
                return Err("E = S J0 fails".into());
            }
            if j0.transpose().mul(e) != *data.s() {
                return Err("E(J0 x, y) does not recover S".into());
            }
            let rows = IntMat::vstack(&[
                &IntMat::from_flat(1, n * n, data.s().flatten()),
                &IntMat::from_flat(1, n * n, e.flatten()),
            ]);
            let span = ZLattice::from_generators(&rows.to_qmat());
            if span.rank() != 2 || span.saturate() != span {
                return Err("ZS + ZE is not a saturated rank 2 lattice".into());
            }
            let f = FormLattice::span(n, &[data.s().clone(), e.clone()]).map_err(|e| e.to_string())?;
            let group = invariant_brauer(&f);
            expect_factors(&group, &[2], "group")?;
            let ns = ns_sublattice(&f).rank();
            if ns != 1 {
                return Err(format!("expected Neron-Severi rank 1, got {ns}"));
            }
            Ok("Z/2, saturated pair, E(J0 x, y) recovers S".into())
        }));
    }
    items
}

fn invariance_items() -> Vec<GoldenItem> {
    let mut items = Vec::new();
    items.push(item("product-additivity", || {
        let l = build_nonsimple_cm_surface(-3, -7).map_err(|e| e.to_string())?;
        let f = bilinear_form_lattice(&l);
        let n = f.n();
        let zero = IntMat::zero(n, n);
        let mut gens: Vec<IntMat> = Vec::new();
        for form in f.forms() {
            gens.push(IntMat::block_diag(&[form, &zero]));
            gens.push(IntMat::block_diag(&[&zero, form]));
        }
        let sum = FormLattice::span(2 * n, &gens).map_err(|e| e.to_string())?;
        let group = invariant_brauer(&sum);
        expect_factors(&group, &[2, 2], "block sum")?;

        let j = QMat::from_ratios(&[vec![(0, 1), (-1, 1)], vec![(1, 1), (0, 1)]]);
        let t = RationalTorus::new(j).map_err(|e| e.to_string())?;
        let p = product(&t, &t);
        let pg = invariant_brauer(&bilinear_forms(&p));
        let fg = invariant_brauer(&bilinear_forms(&t));
        let additive = pg.two_rank().zip(fg.two_rank()).map(|(a, b)| a == 2 * b);
        if additive != Some(true) {
            return Err(format!("torus product gave {pg} against factors {fg}"));
        }
        Ok("block sum doubles the group, torus product adds two-ranks".into())
    }));
    items.push(item("odd-isogeny-invariance", || {
        let l = build_nonsimple_cm_surface(-3, -7).map_err(|e| e.to_string())?;
        let f = bilinear_form_lattice(&l);
        let changes: Vec<IntMat> = vec![
            IntMat::identity(4).scale(&Int::from(3)),
            IntMat::from_rows(&[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 3],
            ]),
            IntMat::from_rows(&[
                vec![1, 2, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 5, 0],
                vec![0, 0, 2, 3],
            ]),
        ];
        for c in &changes {
            let sub = odd_index_sublattice_brauer(&f, c).map_err(|e| e.to_string())?;
            expect_factors(&sub, &[2], &format!("index {} sublattice", c.det()))?;
        }
        Ok("Z/2 across odd index 81, 3 and 15 changes".into())
    }));
    items.push(item("even-isogeny-rejected", || {
        let l = build_nonsimple_cm_surface(-3, -7).map_err(|e| e.to_string())?;
        let f = bilinear_form_lattice(&l);
        let c = IntMat::identity(4).scale(&Int::from(2));
        match odd_index_sublattice_brauer(&f, &c) {
            Err(TorusError::EvenIndex) => Ok("even index change rejected".into()),
            Ok(_) => Err("even index change was not rejected".into()),
            Err(e) => Err(format!("unexpected error: {e}")),
        }
    }));
    items.push(item("rank-bound", || {
        let mut lattices: Vec<(String, FormLattice)> = Vec::new();
        let surface = build_nonsimple_cm_surface(-3, -7).map_err(|e| e.to_string())?;
        lattices.push(("cm surface".into(), bilinear_form_lattice(&surface)));
        lattices.push(("quartic".into(), bilinear_form_lattice(&build_quartic_cm())));
        let sym = build_symmetric_only(3);
        lattices.push((
            "symmetric family".into(),
            FormLattice::span(6, &[sym.s().clone()]).map_err(|e| e.to_string())?,
        ));
        let pair = build_polarised_pair(4);
        lattices.push((
            "polarised family".into(),
            FormLattice::span(8, &[pair.s().clone(), pair.e().unwrap().clone()])
                .map_err(|e| e.to_string())?,
        ));
        for (name, f) in &lattices {
            let b = upper_bound_check(f);
            if !b.holds() {
                return Err(format!(
                    "{name}: two-rank {} exceeds rank {} - NS rank {}",
                    b.brauer_two_rank, b.form_rank, b.ns_rank
                ));
            }
        }
        Ok("two-rank bounded by form rank minus NS rank on all goldens".into())
    }));
    items.push(item("albert-bound", || {
        let report = albert_bound(&[AlbertFactor {
            dim_a: 1,
            multiplicity: 2,
            albert_type: AlbertType::IV,
            dim_d: 2,
            dim_d_minus: 1,
        }])
        .map_err(|e| e.to_string())?;
        if report.h_minus != 4 || report.coarse_bound != 4 || !report.holds() {
            return Err(format!(
                "square of a CM elliptic curve: h_minus {} against bound {}",
                report.h_minus, report.coarse_bound
            ));
        }
        let bad = albert_bound(&[AlbertFactor {
            dim_a: 1,
            multiplicity: 1,
            albert_type: AlbertType::I,
            dim_d: 1,
            dim_d_minus: 1,
        }]);
        if bad.is_ok() {
            return Err("type I factor with anti-invariants was not rejected".into());
        }
        Ok("CM elliptic square saturates its bound, bad tables rejected".into())
    }));
    items.push(item("end-chain-cohomology", || {
        let gaussian = InvolutionModule::new(IntMat::from_rows(&[vec![1, 0], vec![0, -1]]))
            .map_err(|e| e.to_string())?;
        let h1_gauss = h1(&gaussian);
        expect_factors(&h1_gauss.group, &[2], "H^1 of the Gaussian integers")?;
        let mut sigma = IntMat::identity(8);
        for k in 0..4 {
            sigma[(2 * k + 1, 2 * k + 1)] = Int::from(-1);
        }
        let matrices = InvolutionModule::new(sigma).map_err(|e| e.to_string())?;
        let ns = InvolutionModule::new(IntMat::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, -1],
        ]))
        .map_err(|e| e.to_string())?;
        // (a, d, z) -> [[a, z], [conj(z), d]] on the basis E11, iE11, E12,
        // iE12, E21, iE21, E22, iE22 of the endomorphism algebra.
        let ns_map = IntMat::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, -1],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 0],
        ]);
        let include = IntMat::from_rows(&[vec![0, 0], vec![0, 0], vec![1, 0], vec![0, 1]]);
        let ns_h1 = h1(&ns);
        expect_factors(&ns_h1.group, &[2], "H^1 of the Neron-Severi module")?;
        let to_matrices = EquivariantMap::new(ns.clone(), matrices.clone(), ns_map.clone())
            .map_err(|e| e.to_string())?;
        if !h1_induced_kernel(&to_matrices).group.is_trivial() {
            return Err("H^1 of the NS module does not inject into the endomorphisms".into());
        }
        let composed = EquivariantMap::new(gaussian, matrices, ns_map.mul(&include))
            .map_err(|e| e.to_string())?;
        if !h1_induced_kernel(&composed).group.is_trivial() {
            return Err("composed H^1 map is not injective".into());
        }
        Ok("H^1 = Z/2 injects into the endomorphism cohomology".into())
    }));
    items
}

fn all_items(inject_fault: bool) -> Vec<GoldenItem> {
    let mut items = surface_items(inject_fault);
    items.extend(cyclotomic_items());
    items.extend(construction_items());
    items.extend(invariance_items());
    items
}

/// Runs the requested items, in declaration order, on up to `threads`
/// workers. Returns the machine envelope, the stderr lines, and whether
/// everything passed.
pub fn run_suite(
    only: Option<&str>,
    inject_fault: bool,
    threads: usize,
) -> (Envelope, Vec<String>, bool) {
    let items: Vec<GoldenItem> = all_items(inject_fault)
        .into_iter()
        .filter(|i| only.map_or(true, |f| i.name.contains(f)))
        .collect();
    let outcomes: Vec<Result<String, String>> = if threads <= 1 || items.len() <= 1 {
        items.iter().map(|i| (i.run)()).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Result<String, String>>>> =
            items.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..threads.min(items.len()) {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if k >= items.len() {
                        break;
                    }
                    let outcome = (items[k].run)();
                    *slots[k].lock().expect("no panics hold this lock") = Some(outcome);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().expect("scope joined").expect("every slot filled"))
            .collect()
    };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut passed = 0usize;
    for (item, outcome) in items.iter().zip(&outcomes) {
        let (status, detail) = match outcome {
            Ok(d) => {
                passed += 1;
                ("PASS", d.clone())
            }
            Err(d) => ("FAIL", d.clone()),
        };
        lines.push(format!("{status} {}: {detail}", item.name));
        rows.push(json!({ "name": item.name, "status": status, "detail": detail }));
    }
    let failed = items.len() - passed;
    lines.push(format!("{passed} passed, {failed} failed of {} items", items.len()));
    let envelope = Envelope {
        result: json!({ "items": rows, "passed": passed, "failed": failed }),
        diagnostics: json!({
            "threads": threads,
            "only": only,
            "fault_injected": inject_fault,
        }),
        oracle_agreement: Value::Null,
    };
    (envelope, lines, failed == 0)
}
