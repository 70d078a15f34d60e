//! The built-in verification suite: every worked value, inequality and
//! property this library is expected to reproduce, with one row per
//! check. Shared by the `verify-paper` command and the acceptance tests.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{enumerate_curves, pool_of_height, type1_search_lower_bound, SearchParams};
use crate::engine::{
    betaq, catlin_q_slicing_bound, check_chain, type1, typeq, ChainOutcome, EngineConfig,
};
use crate::hyper::{catlinq_hyper, deltaq, generic_deltaq, RigidHypersurface};
use crate::ideal::IdealPresentation;
use crate::lang::{parse_hypersurface, parse_ideal, SourceDocument};
use crate::linalg::RatMatrix;
use crate::mult::{check_mult_bounds, mult, mult_monomial, BoundsOutcome, Colength};
use crate::poly::{rat, LinearForm, Polynomial, Rat};
use crate::puiseux::branch_decompose;
use crate::report::{ReportValue, Status};

#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub truncation_limited: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub rows: Vec<VerifyRow>,
}

impl VerifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn truncation_limited(&self) -> bool {
        self.rows.iter().any(|r| r.truncation_limited)
    }
}

fn row(
    rows: &mut Vec<VerifyRow>,
    id: &str,
    description: &str,
    expected: impl Into<String>,
    computed: impl Into<String>,
    pass: bool,
    truncation_limited: bool,
) {
    rows.push(VerifyRow {
        id: id.to_string(),
        description: description.to_string(),
        expected: expected.into(),
        computed: computed.into(),
        pass,
        truncation_limited,
    });
}

fn ideal_doc(text: &str) -> IdealPresentation {
    parse_ideal(&SourceDocument::ideal(text)).expect("built-in input parses")
}

pub fn worked_ideal() -> IdealPresentation {
    ideal_doc("ring z1..z3; ideal = z1^3 - z2*z3, z2^2;")
}

fn m_family(m: u32) -> IdealPresentation {
    ideal_doc(&format!(
        "ring z1..z3; ideal = z1^{m} - z3*z2, z2^{m};"
    ))
}

fn theorem_family(vf: u32, vg: u32) -> IdealPresentation {
    ideal_doc(&format!(
        "ring z1..z3; ideal = z1^{vf} - z2*z3, z2^{vg};"
    ))
}

fn worked_hypersurface() -> RigidHypersurface {
    let doc = SourceDocument::hypersurface(
        "ring z1..z4; hyper = Re(z4) + abs2(z1^3 - z3*z2) + abs2(z2^2);",
    );
    RigidHypersurface::new(parse_hypersurface(&doc).unwrap()).unwrap()
}

fn is_trunc(status: Status) -> bool {
    status == Status::TruncationLimited
}

fn check_exact(
    rows: &mut Vec<VerifyRow>,
    id: &str,
    description: &str,
    report: Result<crate::report::InvariantReport, crate::engine::EngineError>,
    expected: ReportValue,
    expect_status: Option<Status>,
) {
    match report {
        Ok(r) => {
            let status_ok = expect_status.map_or(true, |s| r.status == s);
            row(
                rows,
                id,
                description,
                format!("{} ({})", expected.render(), expect_status.map_or("any".into(), |s| s.to_string())),
                format!("{} ({})", r.value.render(), r.status),
                r.value == expected && status_ok,
                is_trunc(r.status),
            );
        }
        Err(e) => row(rows, id, description, expected.render(), format!("error: {e}"), false, false),
    }
}

/// Run the whole verification suite under the given configuration.
pub fn verify_paper(config: &EngineConfig) -> VerifyOutcome {
    let mut rows = Vec::new();

    criterion_1(&mut rows, config);
    criterion_2(&mut rows, config);
    criterion_3(&mut rows, config);
    criterion_4(&mut rows, config);
    criterion_5(&mut rows, config);
    criterion_6(&mut rows, config);
    criterion_7(&mut rows, config);
    criterion_8(&mut rows, config);
    criterion_9(&mut rows, config);

    VerifyOutcome { rows }
}

/// T_2 = 3 exactly, beta_2 = 4 with full sample agreement, and the three
/// strata of the sliced contact order: 4, 3, infinity.
fn criterion_1(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let i = worked_ideal();
    check_exact(
        rows,
        "1a",
        "q-type of (z1^3 - z2*z3, z2^2) at q = 2",
        typeq(&i, 2, config, &[]),
        ReportValue::exact_int(3),
        Some(Status::Exact),
    );
    match betaq(&i, 2, config) {
        Ok(r) => {
            let k = config.plan.samples.max(2) as usize;
            let agree = r.samples.len() >= k
                && r
                    .samples
                    .iter()
                    .take(k)
                    .all(|s| s.value == ReportValue::exact_int(4));
            row(
                rows,
                "1b",
                "generic value at q = 2 with full sample agreement",
                format!("4 with {k}/{k} samples agreeing"),
                format!(
                    "{} with {}/{} samples agreeing",
                    r.value.render(),
                    r.samples
                        .iter()
                        .take(k)
                        .filter(|s| s.value == r.value)
                        .count(),
                    k
                ),
                r.value == ReportValue::exact_int(4) && agree,
                is_trunc(r.status),
            );
        }
        Err(e) => row(rows, "1b", "generic value at q = 2", "4", format!("error: {e}"), false, false),
    }
    // Stratified slices: a != 0 gives 4, a = 0 gives 3, c = 0 gives inf.
    let strata: [(&str, [i64; 3], ReportValue); 3] = [
        ("a != 0", [1, 1, 1], ReportValue::exact_int(4)),
        ("a = 0", [0, 1, 1], ReportValue::exact_int(3)),
        ("c = 0", [1, 1, 0], ReportValue::Infinite),
    ];
    for (idx, (label, coeffs, expected)) in strata.into_iter().enumerate() {
        let adjoined = i.adjoin(&[LinearForm::from_ints(&coeffs)]).unwrap();
        check_exact(
            rows,
            &format!("1c.{}", idx + 1),
            &format!("sliced contact order on the stratum {label}"),
            type1(&adjoined, config),
            expected,
            None,
        );
    }
}

/// Slicing bound 4 from the variety z1^3 - z2*z3, tight on every sample.
fn criterion_2(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let i = worked_ideal();
    let variety = i.generators()[0].clone();
    match catlin_q_slicing_bound(&i, 2, &[variety], config) {
        Ok(r) => {
            let tight_samples = r
                .samples
                .iter()
                .filter(|s| !s.label.contains("not tight"))
                .count();
            let enough = tight_samples >= config.plan.samples.max(2) as usize;
            row(
                rows,
                "2",
                "slicing lower bound 4 (tight) from the first generator; hence D_2 >= 4 > 3 = T_2",
                "4, tight on >= 5 plane samples",
                format!("{}, tight on {} samples", r.value.render(), tight_samples),
                r.value == ReportValue::exact_int(4) && enough,
                is_trunc(r.status),
            );
        }
        Err(e) => row(rows, "2", "slicing lower bound", "4", format!("error: {e}"), false, false),
    }
}

/// The family (z1^m - z3*z2, z2^m) for m = 3..6: T_2 bound m via the
/// third coordinate, generic value m(m-1), slicing bound m(m-1), and the
/// gap beats m^2 - 2m - 1.
fn criterion_3(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    for m in 3..=6u32 {
        let i = m_family(m);
        let tq = typeq(&i, 2, config, &[]);
        match tq {
            Ok(r) => {
                let coord_sample = r
                    .samples
                    .iter()
                    .find(|s| s.label == "coordinates z3")
                    .map(|s| s.value.clone());
                let bound_ok = r
                    .value
                    .upper()
                    .is_some_and(|u| u <= Rat::from_integer((m as i64).into()));
                let coord_ok = coord_sample == Some(ReportValue::exact_int(m as i64));
                row(
                    rows,
                    &format!("3a.m{m}"),
                    &format!("q-type bound <= {m} attained by the tuple (z3), m = {m}"),
                    format!("<= {m}, with the z3 tuple giving {m}"),
                    format!(
                        "{} with z3 tuple giving {}",
                        r.value.render(),
                        coord_sample.map_or("-".into(), |v| v.render())
                    ),
                    bound_ok && coord_ok,
                    is_trunc(r.status),
                );
            }
            Err(e) => row(rows, &format!("3a.m{m}"), "q-type bound", format!("<= {m}"), format!("error: {e}"), false, false),
        }
        check_exact(
            rows,
            &format!("3b.m{m}"),
            &format!("generic value m(m-1) for m = {m}"),
            betaq(&i, 2, config),
            ReportValue::exact_int((m * (m - 1)) as i64),
            None,
        );
        let variety = i.generators()[0].clone();
        check_exact(
            rows,
            &format!("3c.m{m}"),
            &format!("slicing lower bound m(m-1) for m = {m}"),
            catlin_q_slicing_bound(&i, 2, &[variety], config),
            ReportValue::exact_int((m * (m - 1)) as i64),
            None,
        );
        let gap = (m * (m - 1) - m) as i64;
        let k = (m * m - 2 * m - 1) as i64;
        row(
            rows,
            &format!("3d.m{m}"),
            &format!("gap D_2 - T_2 bound exceeds k = m^2 - 2m - 1 for m = {m}"),
            format!("{gap} > {k}"),
            format!("{gap} > {k}"),
            gap > k,
            false,
        );
    }
}

/// The wider family (f(z1) - z2 z3, g(z2)): the generic value is
/// v(g)(v(f) - 1) and strictly exceeds the q-type bound max(v(f), v(g)).
fn criterion_4(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    for (vf, vg) in [(3u32, 2u32), (4, 3), (5, 2)] {
        let i = theorem_family(vf, vg);
        let expected = (vg * (vf - 1)) as i64;
        check_exact(
            rows,
            &format!("4a.f{vf}g{vg}"),
            &format!("generic value = v(g)(v(f)-1) = {expected} for v(f) = {vf}, v(g) = {vg}"),
            betaq(&i, 2, config),
            ReportValue::exact_int(expected),
            None,
        );
        match typeq(&i, 2, config, &[]) {
            Ok(r) => {
                let bound = Rat::from_integer((vf.max(vg) as i64).into());
                let ok = r
                    .value
                    .upper()
                    .is_some_and(|u| u <= bound && u < Rat::from_integer(expected.into()));
                row(
                    rows,
                    &format!("4b.f{vf}g{vg}"),
                    "q-type bound <= max(v(f), v(g)) stays below the generic value",
                    format!("<= {} < {expected}", vf.max(vg)),
                    r.value.render(),
                    ok,
                    is_trunc(r.status),
                );
            }
            Err(e) => row(rows, &format!("4b.f{vf}g{vg}"), "q-type bound", "finite", format!("error: {e}"), false, false),
        }
    }
}

/// Hypersurface reproduction: Delta_2 = 6, generic counterpart 8, and
/// slicing bound 8 inside the pure-term hyperplane.
fn criterion_5(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let m = worked_hypersurface();
    check_exact(
        rows,
        "5a",
        "hypersurface q-type Delta_2 = 6",
        deltaq(&m, 2, config),
        ReportValue::exact_int(6),
        Some(Status::Exact),
    );
    check_exact(
        rows,
        "5b",
        "generic-value counterpart = 8",
        generic_deltaq(&m, 2, config),
        ReportValue::exact_int(8),
        None,
    );
    match catlinq_hyper(&m, 2, config) {
        Ok(r) => {
            let slicing_ok = r
                .notes
                .iter()
                .any(|n| n.contains("slicing lower bound inside the pure-term hyperplane: 8"));
            row(
                rows,
                "5c",
                "Catlin-style hypersurface value 8 with slicing bound 8",
                "8 with slicing bound 8",
                format!(
                    "{}{}",
                    r.value.render(),
                    if slicing_ok { " with slicing bound 8" } else { " (no slicing bound)" }
                ),
                r.value == ReportValue::exact_int(8) && slicing_ok,
                is_trunc(r.status),
            );
        }
        Err(e) => row(rows, "5c", "hypersurface Catlin value", "8", format!("error: {e}"), false, false),
    }
}

/// Multiplicity: mult(z1^3, z2^2) = 6, and the bounds chain 3 <= 6 <= 9.
fn criterion_6(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let staircase = ideal_doc("ring z1..z2; ideal = z1^3, z2^2;");
    let m = mult(&staircase);
    row(
        rows,
        "6a",
        "colength of (z1^3, z2^2)",
        "6",
        format!("{}", m.value),
        m.value == Colength::Finite(6),
        false,
    );
    let i = ideal_doc("ring z1..z3; ideal = z1^3 - z2*z3, z2^2, z3;");
    match check_mult_bounds(&i, 1, config) {
        Ok(r) => row(
            rows,
            "6b",
            "bounds 3 <= 6 <= 9 with one linear generator in three variables",
            "pass (T1 = 3, mult = 6, power 2)",
            format!("{:?} ({})", r.outcome, r.details),
            r.outcome == BoundsOutcome::Pass
                && r.t1 == ReportValue::exact_int(3)
                && r.multiplicity == Colength::Finite(6),
            false,
        ),
        Err(e) => row(rows, "6b", "bounds chain", "pass", format!("error: {e}"), false, false),
    }
}

/// The chain T_q <= D_q <= T_q^(n-q+1) on every ideal of criteria 1-4.
fn criterion_7(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let mut cases: Vec<(String, IdealPresentation)> =
        vec![("worked example".into(), worked_ideal())];
    for m in 3..=6 {
        cases.push((format!("m-family m = {m}"), m_family(m)));
    }
    for (vf, vg) in [(3u32, 2u32), (4, 3), (5, 2)] {
        cases.push((format!("theorem family ({vf}, {vg})"), theorem_family(vf, vg)));
    }
    for (idx, (label, ideal)) in cases.iter().enumerate() {
        match check_chain(ideal, 2, config) {
            Ok(r) => row(
                rows,
                &format!("7.{}", idx + 1),
                &format!("chain T_2 <= D_2 <= T_2^2 on {label}"),
                "pass",
                format!("{:?} ({})", r.outcome, r.details),
                r.outcome == ChainOutcome::Pass,
                false,
            ),
            Err(e) => row(
                rows,
                &format!("7.{}", idx + 1),
                &format!("chain on {label}"),
                "pass",
                format!("error: {e}"),
                false,
                false,
            ),
        }
    }
}

/// Property suites: coordinate invariance, reparameterization invariance,
/// branch residuals, staircase agreement, and seed stability.
fn criterion_8(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    // 8a: coordinate-change invariance of the contact order.
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed.wrapping_add(101));
    let bases = [
        (
            ideal_doc("ring z1..z2; ideal = z1^3 + z1*z2, z2^2;"),
            ReportValue::exact_int(4),
        ),
        (
            ideal_doc("ring z1..z3; ideal = z1^3 - z2*z3, z2^2, z3;"),
            ReportValue::exact_int(3),
        ),
    ];
    let mut checked = 0;
    let mut ok = 0;
    while checked < 25 {
        let (base, expected) = &bases[checked % bases.len()];
        let n = base.nvars();
        let entries: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = RatMatrix::from_rows(entries);
        if m.det() == Rat::from_integer(0.into()) {
            continue;
        }
        checked += 1;
        let moved = base.change_coordinates(&m).unwrap();
        match type1(&moved, config) {
            Ok(r) if r.value == *expected => ok += 1,
            _ => {}
        }
    }
    row(
        rows,
        "8a",
        "contact order is invariant under 25 random invertible coordinate changes",
        "25/25",
        format!("{ok}/25"),
        ok == 25,
        false,
    );

    // 8b: reparameterization invariance of pullback ratios.
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed.wrapping_add(202));
    let pool = pool_of_height(1);
    let curves: Vec<_> = enumerate_curves(2, 2, &pool).collect();
    let mut ok = 0;
    for _ in 0..100 {
        let curve = &curves[rng.gen_range(0..curves.len())];
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let e = vec![rng.gen_range(0..=3u32), rng.gen_range(0..=2u32)];
            terms.push((e, rat(rng.gen_range(-3..=3))));
        }
        let g = Polynomial::from_terms(2, terms);
        if g.is_zero() {
            ok += 1;
            continue;
        }
        let k = rng.gen_range(2..=4u32);
        let rep = curve.reparameterize(k);
        let same = match (curve.pullback_order(&g), rep.pullback_order(&g)) {
            (
                crate::curve::PullbackOrder::Finite(a),
                crate::curve::PullbackOrder::Finite(b),
            ) => b == k * a && rep.curve_order() == k * curve.curve_order(),
            (
                crate::curve::PullbackOrder::IdenticallyZeroToTruncation,
                crate::curve::PullbackOrder::IdenticallyZeroToTruncation,
            ) => true,
            _ => false,
        };
        if same {
            ok += 1;
        }
    }
    row(
        rows,
        "8b",
        "pullback ratios are reparameterization-invariant on 100 random pairs",
        "100/100",
        format!("{ok}/100"),
        ok == 100,
        false,
    );

    // 8c: branch decompositions back-substitute below truncation (the
    // decomposition validates internally; reaching Ok is the check).
    let suite_polys = [
        "z1^3 + z1*z2 + z2^2",
        "z2^2 - z1^3",
        "z1^4 + z1*z2 + z2^2",
        "z2^2 + z1^3",
        "z1*z2",
        "z1^6 + z1*z2 + z2^2",
    ];
    let mut ok = 0;
    for text in suite_polys {
        let doc = format!("ring z1..z2; ideal = {text};");
        let p = ideal_doc(&doc).generators()[0].clone();
        if branch_decompose(&p).is_ok() {
            ok += 1;
        }
    }
    row(
        rows,
        "8c",
        "branch residuals vanish below truncation on the suite decompositions",
        format!("{}/{}", suite_polys.len(), suite_polys.len()),
        format!("{ok}/{}", suite_polys.len()),
        ok == suite_polys.len(),
        false,
    );

    // 8d: the rank route and the staircase count agree on 50 random
    // monomial ideals.
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed.wrapping_add(303));
    let mut ok = 0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=3);
        let mut gens = Vec::new();
        for var in 0..n {
            let mut e = vec![0u32; n];
            e[var] = rng.gen_range(1..=3);
            gens.push(Polynomial::from_terms(n, vec![(e, rat(1))]));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            if e.iter().all(|&x| x == 0) {
                continue;
            }
            gens.push(Polynomial::from_terms(n, vec![(e, rat(1))]));
        }
        let i = IdealPresentation::new(n, gens).unwrap();
        if mult(&i).value == mult_monomial(&i).unwrap() {
            ok += 1;
        }
    }
    row(
        rows,
        "8d",
        "rank colength equals the staircase count on 50 random monomial ideals",
        "50/50",
        format!("{ok}/50"),
        ok == 50,
        false,
    );

    // 8e: the generic value is stable across three seeds.
    let mut ok = 0;
    let mut total = 0;
    let ideals: Vec<IdealPresentation> = {
        let mut v = vec![worked_ideal()];
        for m in 3..=6 {
            v.push(m_family(m));
        }
        for (vf, vg) in [(3u32, 2u32), (4, 3), (5, 2)] {
            v.push(theorem_family(vf, vg));
        }
        v
    };
    for ideal in &ideals {
        total += 1;
        let mut values = Vec::new();
        for seed in [config.plan.seed, config.plan.seed + 1, config.plan.seed + 2] {
            let mut cfg = config.clone();
            cfg.plan.seed = seed;
            match betaq(ideal, 2, &cfg) {
                Ok(r) => values.push(r.value),
                Err(_) => {}
            }
        }
        if values.len() == 3 && values.windows(2).all(|w| w[0] == w[1]) {
            ok += 1;
        }
    }
    row(
        rows,
        "8e",
        "generic values agree across three seeds on the suite ideals",
        format!("{total}/{total}"),
        format!("{ok}/{total}"),
        ok == total,
        false,
    );
}

/// The brute-force search reaches the exact contact order on the stated
/// family with degree 4 and coefficient height 2.
fn criterion_9(rows: &mut Vec<VerifyRow>, config: &EngineConfig) {
    let params = SearchParams::with_height(4, 2);
    let mut cases: Vec<(String, IdealPresentation, i64)> = vec![
        (
            "(z1^3, z2^2)".into(),
            ideal_doc("ring z1..z2; ideal = z1^3, z2^2;"),
            3,
        ),
        (
            "(z1^3 + z1*z2, z2^2)".into(),
            ideal_doc("ring z1..z2; ideal = z1^3 + z1*z2, z2^2;"),
            4,
        ),
    ];
    for m in 2..=5u32 {
        cases.push((
            format!("(z1^{m}, z2)"),
            ideal_doc(&format!("ring z1..z2; ideal = z1^{m}, z2;")),
            m as i64,
        ));
    }
    for (idx, (label, ideal, expected)) in cases.iter().enumerate() {
        let exact = type1(ideal, config)
            .map(|r| r.value.clone())
            .unwrap_or(ReportValue::Infinite);
        let search = type1_search_lower_bound(ideal, &params);
        let found = search
            .best
            .as_ref()
            .map(|w| w.ratio.clone())
            .unwrap_or_else(Rat::one);
        let expected_rat = Rat::from_integer((*expected).into());
        let pass = exact == ReportValue::Exact(expected_rat.clone()) && found == expected_rat;
        row(
            rows,
            &format!("9.{}", idx + 1),
            &format!("search (degree 4, height 2) reaches the exact value on {label}"),
            format!("{expected}"),
            format!("exact {}, search {}", exact.render(), found),
            pass,
            false,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // The full suite runs as the dedicated acceptance test target; here
    // only the row plumbing is exercised on the cheapest criteria.
    #[test]
    fn rows_report_ids_and_outcomes() {
        let config = EngineConfig::default();
        let mut rows = Vec::new();
        criterion_6(&mut rows, &config);
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }
}
