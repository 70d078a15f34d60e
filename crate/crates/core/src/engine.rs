//! The contact-order invariants: the first order of contact, its
//! q-dimensional refinement by adjoined linear forms, the generic value
//! of the sliced contact order, the branch-based slicing quantity, and
//! the inequality chains tying them together.
//!
//! The first order of contact is computed by a pipeline: exact
//! elimination of degree-one generators, then (in two variables) the
//! candidate-branch principle with Newton-Puiseux data, or (in more
//! variables) a bracket made of a brute-force lower bound and a colength
//! upper bound. Generic values are realized by random integer linear
//! forms: values valid off a proper Zariski-closed set are attained with
//! probability one, and cross-sample agreement is the acceptance gate.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurveGerm, SearchParams};
use crate::ideal::{IdealError, IdealPresentation};
use crate::lang::parse_polynomial_str;
use crate::linalg::rank_of;
use crate::mult::{mult, Colength, MultError};
use crate::poly::{LinearForm, Order, Polynomial, Rat};
use crate::puiseux::{
    branch_decompose_bounded, BranchPullback, PuiseuxBranch, PuiseuxError, TRUNC_CAP,
};
use crate::report::{
    AlgebraicCurve, InvariantName, InvariantReport, ReportValue, SampleRecord, Status, Witness,
};
use crate::tower::{NfVec, Tower, TowerError};
use crate::unipoly::{bi_gcd, BiPoly};

/// Default truncation for witness curves produced by series division.
const WITNESS_TRUNC: u32 = 64;

#[derive(Debug, Clone)]
pub struct GenericSamplePlan {
    /// Number of independent samples behind a generic-value claim.
    pub samples: u32,
    /// Coefficient height bound for random linear forms.
    pub height: i64,
    pub seed: u64,
}

impl Default for GenericSamplePlan {
    fn default() -> Self {
        GenericSamplePlan {
            samples: 5,
            height: 10_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub plan: GenericSamplePlan,
    pub search: SearchParams,
    /// Cap on the requested branch precision.
    pub trunc_cap: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            plan: GenericSamplePlan::default(),
            search: SearchParams::default(),
            trunc_cap: TRUNC_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    QOutOfRange { q: usize, n: usize },
    NoLinearGenerator,
    SlicingRegime { q: usize, n: usize },
    NoCandidateVarieties,
    InternalInconsistency(String),
    Puiseux(PuiseuxError),
    Tower(TowerError),
    Ideal(IdealError),
    Mult(MultError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::QOutOfRange { q, n } => {
                write!(f, "q = {q} is outside 1..={n}")
            }
            EngineError::NoLinearGenerator => {
                write!(f, "no generator admits an exact linear elimination")
            }
            EngineError::SlicingRegime { q, n } => write!(
                f,
                "the slicing bound is implemented for q = 2 in 3 variables, got q = {q}, n = {n}"
            ),
            EngineError::NoCandidateVarieties => {
                write!(f, "no candidate varieties: every defining polynomial is zero")
            }
            EngineError::InternalInconsistency(m) => write!(f, "internal consistency: {m}"),
            EngineError::Puiseux(e) => write!(f, "{e}"),
            EngineError::Tower(e) => write!(f, "{e}"),
            EngineError::Ideal(e) => write!(f, "{e}"),
            EngineError::Mult(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EngineError {}

impl From<PuiseuxError> for EngineError {
    fn from(e: PuiseuxError) -> Self {
        EngineError::Puiseux(e)
    }
}

impl From<TowerError> for EngineError {
    fn from(e: TowerError) -> Self {
        EngineError::Tower(e)
    }
}

impl From<IdealError> for EngineError {
    fn from(e: IdealError) -> Self {
        EngineError::Ideal(e)
    }
}

impl From<MultError> for EngineError {
    fn from(e: MultError) -> Self {
        EngineError::Mult(e)
    }
}

// ---------------------------------------------------------------------------
// Exact elimination of degree-one generators.
// ---------------------------------------------------------------------------

/// One elimination step: the generator `a * z_var + b` was used to remove
/// `z_var`; `a` and `b` live in the output coordinates and `a(0) != 0`.
#[derive(Debug, Clone)]
pub struct EliminationStage {
    pub var: usize,
    pub generator: Polynomial,
    pub a: Polynomial,
    pub b: Polynomial,
}

/// Result of the elimination closure.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub input_nvars: usize,
    pub nvars: usize,
    /// Nonzero generators in the reduced coordinates; empty means the
    /// reduced ideal is zero (or everything was eliminated).
    pub generators: Vec<Polynomial>,
    pub stages: Vec<EliminationStage>,
}

impl Reduction {
    pub fn reduced_ideal(&self) -> Option<IdealPresentation> {
        if self.generators.is_empty() {
            return None;
        }
        IdealPresentation::new(self.nvars, self.generators.clone()).ok()
    }
}

fn find_eliminable(gens: &[Polynomial]) -> Option<(usize, usize)> {
    // Prefer generators that are plain linear forms.
    for (i, g) in gens.iter().enumerate() {
        if g.total_degree() == Some(1) {
            let lp = g.linear_part();
            if let Some(var) = lp.iter().rposition(|c| !c.is_zero()) {
                return Some((i, var));
            }
        }
    }
    // Otherwise any generator of degree exactly one in a variable that
    // appears in its linear part; local-unit division applies.
    for (i, g) in gens.iter().enumerate() {
        let lp = g.linear_part();
        for var in (0..g.nvars()).rev() {
            if !lp[var].is_zero() && g.degree_in(var) == Some(1) {
                return Some((i, var));
            }
        }
    }
    None
}

fn reduce(ideal: &IdealPresentation) -> Reduction {
    let mut nvars = ideal.nvars();
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    let mut stages = Vec::new();
    while nvars > 0 {
        let Some((gi, var)) = find_eliminable(&gens) else {
            break;
        };
        let g = gens.remove(gi);
        let a_full = g.coefficient_of_power(var, 1);
        let b_full = g.coefficient_of_power(var, 0);
        let mut next = Vec::with_capacity(gens.len());
        for h in &gens {
            let mut h = h.clone();
            // Pseudo-reduce: a(0) != 0 makes `a` a local unit, so
            // multiplying generators by it preserves every invariant.
            while let Some(d) = h.degree_in(var).filter(|&d| d >= 1) {
                let top = h.coefficient_of_power(var, d);
                let var_pow = Polynomial::var(nvars, var).pow(d - 1);
                h = &(&h * &a_full) - &(&(&top * &g) * &var_pow);
            }
            if !h.is_zero() {
                next.push(h.drop_var(var));
            }
        }
        stages.push(EliminationStage {
            var,
            generator: g,
            a: a_full.drop_var(var),
            b: b_full.drop_var(var),
        });
        gens = next;
        nvars -= 1;
    }
    Reduction {
        input_nvars: ideal.nvars(),
        nvars,
        generators: gens,
        stages,
    }
}

/// Eliminate degree-one generators, dropping one variable per generator.
/// The first order of contact of the result equals that of the input.
pub fn eliminate_linear(ideal: &IdealPresentation) -> Result<Reduction, EngineError> {
    let red = reduce(ideal);
    if red.stages.is_empty() {
        return Err(EngineError::NoLinearGenerator);
    }
    Ok(red)
}

// ---------------------------------------------------------------------------
// Series helpers for witness curves (coefficients in a tower).
// ---------------------------------------------------------------------------

fn series_mul(t: &Tower, a: &[NfVec], b: &[NfVec], cap: usize) -> Vec<NfVec> {
    let mut out = vec![t.zero(); cap];
    for (i, ca) in a.iter().enumerate().take(cap) {
        if t.is_zero_elem(ca) {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(cap - i) {
            if t.is_zero_elem(cb) {
                continue;
            }
            let prod = t.mul(ca, cb);
            out[i + j] = t.add(&out[i + j], &prod);
        }
    }
    out
}

/// Compose a rational polynomial with component series, truncated at cap.
fn compose_series(t: &Tower, comps: &[Vec<NfVec>], cap: usize, p: &Polynomial) -> Vec<NfVec> {
    assert_eq!(p.nvars(), comps.len());
    let mut pows: Vec<Vec<Vec<NfVec>>> = comps
        .iter()
        .map(|_| {
            let mut one = vec![t.zero(); cap];
            if cap > 0 {
                one[0] = t.one();
            }
            vec![one]
        })
        .collect();
    let mut acc = vec![t.zero(); cap];
    for (exps, c) in p.terms() {
        let mut term = vec![t.zero(); cap];
        if cap > 0 {
            term[0] = t.from_rat(c);
        }
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while pows[i].len() <= e as usize {
                let next = series_mul(t, pows[i].last().unwrap(), &comps[i], cap);
                pows[i].push(next);
            }
            term = series_mul(t, &term, &pows[i][e as usize], cap);
        }
        for (slot, v) in acc.iter_mut().zip(term) {
            *slot = t.add(slot, &v);
        }
    }
    acc
}

/// Multiplicative inverse of a series with invertible constant term.
fn series_inverse(t: &Tower, s: &[NfVec], cap: usize) -> Vec<NfVec> {
    let c0 = t
        .inv(&s[0])
        .expect("series inverse needs a unit constant term");
    let mut out = vec![t.zero(); cap];
    out[0] = c0.clone();
    for k in 1..cap {
        let mut acc = t.zero();
        for j in 1..=k {
            let term = t.mul(s.get(j).unwrap_or(&t.zero()), &out[k - j]);
            acc = t.add(&acc, &term);
        }
        out[k] = t.neg(&t.mul(&c0, &acc));
    }
    out
}

/// Order of the pullback of `p` through an algebraic curve; `None` means
/// the composite vanished below the certification bound.
pub fn curve_pullback_order(curve: &AlgebraicCurve, p: &Polynomial) -> Option<u32> {
    let cap = match curve.trunc {
        Some(n) => n as usize,
        None => {
            let mut bound = 1usize;
            for (exps, _) in p.terms() {
                let d: usize = exps
                    .iter()
                    .zip(&curve.components)
                    .map(|(&e, c)| e as usize * c.len().saturating_sub(1))
                    .sum();
                bound = bound.max(d + 1);
            }
            bound
        }
    };
    let composite = compose_series(&curve.tower, &curve.components, cap, p);
    composite
        .iter()
        .position(|c| !curve.tower.is_zero_elem(c))
        .map(|o| o as u32)
}

fn branch_to_curve(b: &PuiseuxBranch) -> AlgebraicCurve {
    let len = (b.e as usize + 1).max(b.phi.len());
    let mut xs = vec![b.tower.zero(); len];
    xs[b.e as usize] = b.tower.one();
    let mut ys = vec![b.tower.zero(); len];
    for (i, c) in b.phi.iter().enumerate() {
        ys[i] = c.clone();
    }
    let components = if b.swapped { vec![ys, xs] } else { vec![xs, ys] };
    AlgebraicCurve {
        tower: b.tower.clone(),
        components,
        trunc: if b.exact { None } else { Some(b.trunc) },
    }
}

fn germ_to_curve(c: &CurveGerm) -> AlgebraicCurve {
    let q = Tower::rationals();
    AlgebraicCurve {
        tower: q,
        components: c
            .components()
            .iter()
            .map(|comp| comp.iter().map(|x| vec![x.clone()]).collect())
            .collect(),
        trunc: c.truncation(),
    }
}

/// Map a witness curve in reduced coordinates back through the
/// elimination stages: the removed coordinate is `-b / a` along the curve.
fn lift_curve(red: &Reduction, curve: AlgebraicCurve) -> AlgebraicCurve {
    let tower = curve.tower.clone();
    let mut comps = curve.components;
    let mut trunc = curve.trunc;
    for stage in red.stages.iter().rev() {
        let exact_stage = stage.a.total_degree() == Some(0);
        if trunc.is_none() && !exact_stage {
            trunc = Some(WITNESS_TRUNC);
        }
        let cap = match trunc {
            Some(n) => n as usize,
            None => {
                // Exact: the composed polynomials stay polynomials.
                let max_len = comps.iter().map(Vec::len).max().unwrap_or(1);
                let deg = stage.b.total_degree().unwrap_or(0) as usize;
                (max_len.saturating_sub(1)) * deg.max(1) + 2
            }
        };
        let b_s = compose_series(&tower, &comps, cap, &stage.b);
        let new_comp = if stage.a.total_degree() == Some(0) {
            let inv = Rat::one() / stage.a.constant_term();
            b_s.iter().map(|c| tower.neg(&tower.scale(c, &inv))).collect()
        } else {
            let a_s = compose_series(&tower, &comps, cap, &stage.a);
            let inv = series_inverse(&tower, &a_s, cap);
            series_mul(&tower, &b_s, &inv, cap)
                .iter()
                .map(|c| tower.neg(c))
                .collect()
        };
        comps.insert(stage.var, new_comp);
    }
    AlgebraicCurve {
        tower,
        components: comps,
        trunc,
    }
}

/// Package a witness with recomputed orders against the given targets.
fn curve_witness(curve: AlgebraicCurve, targets: &[Polynomial]) -> Witness {
    let orders: Vec<Option<u32>> = targets
        .iter()
        .map(|g| curve_pullback_order(&curve, g))
        .collect();
    let curve_order = curve.curve_order().unwrap_or(0);
    Witness::Curve {
        curve,
        curve_order,
        targets: targets.iter().map(|g| g.to_string()).collect(),
        generator_orders: orders,
    }
}

// ---------------------------------------------------------------------------
// The first order of contact.
// ---------------------------------------------------------------------------

struct TypeOne {
    value: ReportValue,
    status: Status,
    /// Witness curve in reduced coordinates, when one exists.
    witness: Option<AlgebraicCurve>,
    notes: Vec<String>,
}

/// First order of contact of the ideal, with witnesses in the original
/// coordinates.
pub fn type1(ideal: &IdealPresentation, config: &EngineConfig) -> Result<InvariantReport, EngineError> {
    let red = reduce(ideal);
    let mut out = type1_reduced(&red, config)?;
    if !red.stages.is_empty() {
        out.notes.push(format!(
            "eliminated {} degree-one generator(s), reduced to {} variable(s)",
            red.stages.len(),
            red.nvars
        ));
    }
    let witnesses = match out.witness.take() {
        Some(curve) => {
            let lifted = lift_curve(&red, curve);
            vec![curve_witness(lifted, ideal.generators())]
        }
        None => Vec::new(),
    };
    Ok(InvariantReport {
        name: InvariantName::T1,
        value: out.value,
        status: out.status,
        witnesses,
        samples: Vec::new(),
        seed: config.plan.seed,
        notes: out.notes,
    })
}

fn type1_reduced(red: &Reduction, config: &EngineConfig) -> Result<TypeOne, EngineError> {
    if red.generators.is_empty() {
        if red.nvars == 0 {
            // Everything was consumed by eliminations: the ideal contains
            // a full coordinate system, so the contact order is 1.
            return Ok(TypeOne {
                value: ReportValue::exact_int(1),
                status: Status::Exact,
                witness: None,
                notes: vec!["ideal contains a full system of coordinates".into()],
            });
        }
        // Zero ideal in the remaining variables: every curve is contained
        // in its zero set.
        let mut comps = vec![vec![Tower::rationals().zero(); 2]; red.nvars];
        comps[0][1] = Tower::rationals().one();
        return Ok(TypeOne {
            value: ReportValue::Infinite,
            status: Status::Exact,
            witness: Some(AlgebraicCurve {
                tower: Tower::rationals(),
                components: comps,
                trunc: None,
            }),
            notes: vec!["reduced ideal is zero; its zero set has positive dimension".into()],
        });
    }
    match red.nvars {
        1 => {
            let value = red
                .generators
                .iter()
                .filter_map(|g| match g.lowest_order() {
                    Order::Finite(o) => Some(o),
                    Order::Infinite => None,
                })
                .min()
                .expect("nonzero generators have finite order");
            let q = Tower::rationals();
            let witness = AlgebraicCurve {
                tower: q.clone(),
                components: vec![vec![q.zero(), q.one()]],
                trunc: None,
            };
            Ok(TypeOne {
                value: ReportValue::exact_int(value as i64),
                status: Status::Exact,
                witness: Some(witness),
                notes: vec!["one-variable ideal: minimum vanishing order".into()],
            })
        }
        2 => type1_two_vars(red, config),
        _ => type1_bracket(red, config),
    }
}

/// Candidate-branch route in two variables: the supremum over curves is
/// attained on a branch of one of the generators, so the exact value is
/// the best generator-minimum over all such branches.
fn type1_two_vars(red: &Reduction, config: &EngineConfig) -> Result<TypeOne, EngineError> {
    let gens = &red.generators;
    // Common-component test certifies an infinite contact order.
    let mut gcd = BiPoly::from_polynomial(&gens[0]);
    for g in &gens[1..] {
        gcd = bi_gcd(&gcd, &BiPoly::from_polynomial(g));
    }
    let gcd_poly = gcd.to_polynomial();
    let common = !gcd_poly.is_zero()
        && gcd_poly.total_degree().unwrap_or(0) >= 1
        && gcd_poly.constant_term().is_zero();
    if common {
        let witness = match branch_decompose_bounded(&gcd_poly, 8, config.trunc_cap) {
            Ok(branches) => branches.first().map(branch_to_curve),
            Err(PuiseuxError::RefinementNeeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        return Ok(TypeOne {
            value: ReportValue::Infinite,
            status: Status::Exact,
            witness,
            notes: vec![format!(
                "generators share the component {gcd_poly}, which carries a curve through 0"
            )],
        });
    }

    let max_deg = gens
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(1);
    // Past the intersection-number bound, vanishing to truncation is a
    // certificate; below it, an all-zero branch stays ambiguous.
    let needed = max_deg * max_deg + 2;
    let precision = needed.min(config.trunc_cap);
    let certified = precision >= needed;
    let mut truncated = false;

    let mut best: Option<(Rat, PuiseuxBranch)> = None;
    for h in gens {
        let branches = match branch_decompose_bounded(h, precision, config.trunc_cap) {
            Ok(b) => b,
            Err(PuiseuxError::RefinementNeeded { .. }) => {
                // The cap is below what branch separation needs.
                let ideal = red.reduced_ideal().expect("two-variable route");
                let search = crate::curve::type1_search_lower_bound(&ideal, &config.search);
                let lower = search
                    .best
                    .as_ref()
                    .map(|w| w.ratio.clone())
                    .unwrap_or_else(Rat::one);
                return Ok(TypeOne {
                    value: ReportValue::Bracket { lower, upper: None },
                    status: Status::TruncationLimited,
                    witness: search.best.as_ref().map(|w| germ_to_curve(&w.curve)),
                    notes: vec![format!(
                        "branches of {h} did not separate below the truncation cap {}",
                        config.trunc_cap
                    )],
                });
            }
            Err(e) => return Err(e.into()),
        };
        for branch in branches {
            let mut min_finite: Option<u32> = None;
            for g in gens {
                match branch.pullback(g) {
                    BranchPullback::Finite(v) => {
                        min_finite = Some(min_finite.map_or(v, |b| b.min(v)));
                    }
                    BranchPullback::Zero { .. } => {}
                }
            }
            match min_finite {
                Some(v) => {
                    let ratio = Rat::new(
                        (v as i64).into(),
                        (branch.curve_order() as i64).into(),
                    );
                    let better = match &best {
                        None => true,
                        Some((b, _)) => ratio > *b,
                    };
                    if better {
                        best = Some((ratio, branch));
                    }
                }
                None if certified => {
                    // Every generator vanishes on this branch with the
                    // certified bound, yet the gcd was trivial.
                    return Err(EngineError::InternalInconsistency(
                        "certified common branch despite a trivial gcd".into(),
                    ));
                }
                None => {
                    truncated = true;
                }
            }
        }
    }
    match best {
        Some((ratio, branch)) if !truncated => Ok(TypeOne {
            value: ReportValue::Exact(ratio),
            status: Status::Exact,
            witness: Some(branch_to_curve(&branch)),
            notes: vec![format!(
                "attained on a branch: {}",
                branch.describe()
            )],
        }),
        Some((ratio, branch)) => Ok(TypeOne {
            value: ReportValue::Bracket {
                lower: ratio,
                upper: None,
            },
            status: Status::TruncationLimited,
            witness: Some(branch_to_curve(&branch)),
            notes: vec![format!(
                "a candidate branch vanished to truncation {precision} without an exact certificate"
            )],
        }),
        None => Ok(TypeOne {
            value: ReportValue::Bracket {
                lower: Rat::one(),
                upper: None,
            },
            status: Status::TruncationLimited,
            witness: None,
            notes: vec!["every candidate branch was truncation-ambiguous".into()],
        }),
    }
}

/// Bracket route in three or more variables: brute-force search from
/// below, colength from above.
fn type1_bracket(red: &Reduction, config: &EngineConfig) -> Result<TypeOne, EngineError> {
    let ideal = red
        .reduced_ideal()
        .expect("bracket route runs on nonempty reduced ideals");
    let search = crate::curve::type1_search_lower_bound(&ideal, &config.search);
    if let Some(zero) = &search.zero_witness {
        // An exact polynomial curve annihilates every generator: a
        // certified curve inside the zero set, no colength needed.
        return Ok(TypeOne {
            value: ReportValue::Infinite,
            status: Status::Exact,
            witness: Some(germ_to_curve(zero)),
            notes: vec![format!(
                "the curve {zero} lies in the zero set of every generator"
            )],
        });
    }
    let lower = search
        .best
        .as_ref()
        .map(|w| w.ratio.clone())
        .unwrap_or_else(Rat::one);
    let witness = search.best.as_ref().map(|w| germ_to_curve(&w.curve));
    let m = mult(&ideal);
    match m.value {
        Colength::Finite(mv) => {
            let upper = Rat::from_integer((mv as i64).into());
            if lower == upper {
                Ok(TypeOne {
                    value: ReportValue::Exact(lower),
                    status: Status::Exact,
                    witness,
                    notes: vec![
                        "search lower bound met the colength upper bound".into(),
                    ],
                })
            } else {
                Ok(TypeOne {
                    value: ReportValue::Bracket {
                        lower,
                        upper: Some(upper),
                    },
                    status: Status::Bracket,
                    witness,
                    notes: vec![format!(
                        "bracket: curve search from below, colength {mv} from above"
                    )],
                })
            }
        }
        Colength::NotFinite => Ok(TypeOne {
            value: ReportValue::Bracket { lower, upper: None },
            status: Status::LowerBound,
            witness,
            notes: vec![
                "colength did not stabilize; only the search lower bound is certified".into(),
            ],
        }),
    }
}

// ---------------------------------------------------------------------------
// q-type, generic value, and the slicing machinery.
// ---------------------------------------------------------------------------

fn coordinate_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, height: i64) -> LinearForm {
    loop {
        let coeffs: Vec<Rat> = (0..n)
            .map(|_| Rat::from_integer(rng.gen_range(-height..=height).into()))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return LinearForm::new(coeffs);
        }
    }
}

fn random_tuple(rng: &mut ChaCha8Rng, n: usize, k: usize, height: i64) -> Vec<LinearForm> {
    loop {
        let forms: Vec<LinearForm> = (0..k).map(|_| random_form(rng, n, height)).collect();
        let rows: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        if rank_of(&rows) == k {
            return forms;
        }
    }
}

/// Upper-value ordering key: exact values and bracket tops compare by
/// size, infinity loses every minimum.
fn upper_key(v: &ReportValue) -> Option<Rat> {
    v.upper()
}

fn le_upper(a: &Option<Rat>, b: &Option<Rat>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

/// q-type: the infimum over tuples of q-1 linear forms of the first order
/// of contact of the extended ideal, evaluated over a stratified
/// candidate set (coordinate tuples, random tuples, extras).
pub fn typeq(
    ideal: &IdealPresentation,
    q: usize,
    config: &EngineConfig,
    extras: &[Vec<LinearForm>],
) -> Result<InvariantReport, EngineError> {
    let n = ideal.nvars();
    if q < 1 || q > n {
        return Err(EngineError::QOutOfRange { q, n });
    }
    if q == 1 {
        return Ok(type1(ideal, config)?
            .relabel(InvariantName::Tq)
            .with_note("q = 1: the q-type is the first order of contact"));
    }
    let k = q - 1;
    let mut candidates: Vec<(String, Vec<LinearForm>, bool)> = Vec::new();
    for combo in coordinate_tuples(n, k) {
        let label = format!(
            "coordinates {}",
            combo
                .iter()
                .map(|i| format!("z{}", i + 1))
                .collect::<Vec<_>>()
                .join(", ")
        );
        let forms = combo
            .iter()
            .map(|&i| LinearForm::coordinate(n, i))
            .collect();
        candidates.push((label, forms, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed);
    for s in 0..config.plan.samples.max(2) {
        let forms = random_tuple(&mut rng, n, k, config.plan.height);
        candidates.push((format!("random sample {}", s + 1), forms, false));
    }
    for (i, forms) in extras.iter().enumerate() {
        candidates.push((format!("user tuple {}", i + 1), forms.clone(), false));
    }

    let mut samples = Vec::new();
    let mut evaluated: Vec<(ReportValue, Status, bool, Vec<LinearForm>, InvariantReport)> =
        Vec::new();
    for (label, forms, is_coord) in candidates {
        let adjoined = ideal.adjoin(&forms)?;
        let inner = type1(&adjoined, config)?;
        samples.push(SampleRecord {
            label: label.clone(),
            forms: forms.clone(),
            value: inner.value.clone(),
            status: inner.status,
        });
        evaluated.push((inner.value.clone(), inner.status, is_coord, forms, inner));
    }

    let mut best: Option<usize> = None;
    for (i, (value, _, _, _, _)) in evaluated.iter().enumerate() {
        let better = match best {
            None => true,
            Some(b) => {
                let cur = upper_key(&evaluated[b].0);
                let new = upper_key(value);
                !le_upper(&cur, &new)
            }
        };
        if better {
            best = Some(i);
        }
    }
    let best = best.expect("candidate set is nonempty");
    let (value, inner_status, is_coord, forms, inner) = evaluated[best].clone();

    // Exactness policy: the infimum over a continuum is certified only
    // when a coordinate tuple attains the minimum exactly and does not
    // exceed any sampled generic value.
    let random_ok = samples
        .iter()
        .filter(|s| s.label.starts_with("random"))
        .all(|s| {
            le_upper(&upper_key(&value), &s.value.lower().map(Some).unwrap_or(None))
                || s.value.is_infinite()
        });
    let status = if inner_status == Status::TruncationLimited {
        Status::TruncationLimited
    } else if is_coord && inner_status == Status::Exact && random_ok {
        Status::Exact
    } else {
        Status::UpperBound
    };

    let mut witnesses = vec![Witness::FormTuple {
        forms: forms.clone(),
        value: value.clone(),
    }];
    witnesses.extend(inner.witnesses.clone());
    let mut notes = vec![format!(
        "minimum over {} candidate tuples attained at: {}",
        samples.len(),
        samples[best].label
    )];
    if status == Status::UpperBound {
        notes.push(
            "status upper-bound: the candidate family may miss a smaller non-coordinate tuple"
                .into(),
        );
    }
    Ok(InvariantReport {
        name: InvariantName::Tq,
        value,
        status,
        witnesses,
        samples,
        seed: config.plan.seed,
        notes,
    })
}

/// Generic value of the sliced contact order: the common value of
/// `type1(I + random tuple)` over independent samples; disagreement
/// doubles the height twice before reporting a diagnostic.
pub fn betaq(
    ideal: &IdealPresentation,
    q: usize,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    let n = ideal.nvars();
    if q < 1 || q > n {
        return Err(EngineError::QOutOfRange { q, n });
    }
    if q == 1 {
        return Ok(type1(ideal, config)?
            .relabel(InvariantName::BetaQ)
            .with_note("q = 1: no forms adjoined, generic value equals the contact order"));
    }
    let k = q - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed);
    let mut all_samples = Vec::new();
    let mut last_round: Vec<(ReportValue, Status, Vec<LinearForm>, InvariantReport)> = Vec::new();
    for attempt in 0..3u32 {
        let height = config.plan.height << attempt;
        last_round.clear();
        for s in 0..config.plan.samples.max(2) {
            let forms = random_tuple(&mut rng, n, k, height);
            let adjoined = ideal.adjoin(&forms)?;
            let inner = type1(&adjoined, config)?;
            all_samples.push(SampleRecord {
                label: format!("sample {} (height {height})", s + 1),
                forms: forms.clone(),
                value: inner.value.clone(),
                status: inner.status,
            });
            last_round.push((inner.value.clone(), inner.status, forms, inner));
        }
        let first = &last_round[0].0;
        if last_round.iter().all(|(v, _, _, _)| v == first) {
            let status = last_round
                .iter()
                .map(|(_, s, _, _)| *s)
                .max_by_key(|s| match s {
                    Status::Exact => 0,
                    Status::UpperBound => 1,
                    Status::LowerBound => 2,
                    Status::Bracket => 3,
                    Status::TruncationLimited => 4,
                })
                .unwrap();
            let (value, _, forms, inner) = last_round[0].clone();
            let mut witnesses = vec![Witness::FormTuple {
                forms,
                value: value.clone(),
            }];
            witnesses.extend(inner.witnesses);
            let mut notes = vec![format!(
                "{} independent samples agree",
                last_round.len()
            )];
            if attempt > 0 {
                notes.push(format!(
                    "agreement reached after doubling the height to {height}"
                ));
            }
            return Ok(InvariantReport {
                name: InvariantName::BetaQ,
                value,
                status,
                witnesses,
                samples: all_samples,
                seed: config.plan.seed,
                notes,
            });
        }
    }
    // Persistent disagreement: report the maximum with a diagnostic.
    let mut best = last_round[0].clone();
    for cand in &last_round[1..] {
        let better = match (&best.0.upper(), &cand.0.upper()) {
            (None, _) => false,
            (_, None) => true,
            (Some(a), Some(b)) => b > a,
        };
        if better {
            best = cand.clone();
        }
    }
    let values: Vec<String> = last_round.iter().map(|(v, _, _, _)| v.render()).collect();
    Ok(InvariantReport {
        name: InvariantName::BetaQ,
        value: best.0.clone(),
        status: Status::UpperBound,
        witnesses: vec![Witness::FormTuple {
            forms: best.2.clone(),
            value: best.0,
        }],
        samples: all_samples,
        seed: config.plan.seed,
        notes: vec![format!(
            "samples disagree after two height doublings ({}); a sampling accident is likely",
            values.join(", ")
        )],
    })
}

/// Catlin q-type, computed through the identity with the generic value,
/// with the slicing lower bound attached in the implemented regime.
pub fn catlin_q(
    ideal: &IdealPresentation,
    q: usize,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    let n = ideal.nvars();
    if q < 1 || q > n {
        return Err(EngineError::QOutOfRange { q, n });
    }
    if q == 1 {
        return Ok(type1(ideal, config)?
            .relabel(InvariantName::Dq)
            .with_note("q = 1: both contact measurements coincide"));
    }
    let mut report = betaq(ideal, q, config)?
        .relabel(InvariantName::Dq)
        .with_note("value computed as the generic value of the sliced contact order");
    if q == 2 && n == 3 {
        let varieties: Vec<Polynomial> = ideal.generators().to_vec();
        match catlin_q_slicing_bound(ideal, q, &varieties, config) {
            Ok(slice) => {
                if let (Some(bound), Some(value)) = (slice.value.lower(), report.value.lower()) {
                    if !report.value.is_infinite() && bound > value {
                        return Err(EngineError::InternalInconsistency(format!(
                            "slicing lower bound {} exceeds the generic value {}",
                            bound, value
                        )));
                    }
                }
                report
                    .notes
                    .push(format!("slicing lower bound: {}", slice.value.render()));
                report.witnesses.extend(slice.witnesses);
            }
            Err(EngineError::NoCandidateVarieties) => {
                report
                    .notes
                    .push("no candidate varieties for the slicing bound".into());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Slicing lower bound for the Catlin q-type in the (q, n) = (2, 3)
/// regime: slice each candidate hypersurface by random planes, decompose
/// the slice into branches, and take the best generator-minimum.
pub fn catlin_q_slicing_bound(
    ideal: &IdealPresentation,
    q: usize,
    varieties: &[Polynomial],
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    let n = ideal.nvars();
    if q != 2 || n != 3 {
        return Err(EngineError::SlicingRegime { q, n });
    }
    let candidates: Vec<&Polynomial> = varieties
        .iter()
        .filter(|h| !h.is_zero() && h.constant_term().is_zero())
        .collect();
    if candidates.is_empty() {
        return Err(EngineError::NoCandidateVarieties);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.plan.seed);
    let k = config.plan.samples.max(2);
    let height = config.plan.height;

    let mut samples = Vec::new();
    let mut witnesses = Vec::new();
    let mut best: Option<Option<Rat>> = None; // None = infinite bound
    let mut all_tight = true;
    let mut truncated = false;

    for (vi, h) in candidates.iter().enumerate() {
        let mut variety_values: Vec<Option<Rat>> = Vec::new();
        for s in 0..k {
            // Random plane: z_c + a z_u + b z_v = 0 after a shuffle.
            let (perm, a, b) = loop {
                let mut perm = [0usize, 1, 2];
                for i in (1..3).rev() {
                    let j = rng.gen_range(0..=i);
                    perm.swap(i, j);
                }
                let a = loop {
                    let x = rng.gen_range(-height..=height);
                    if x != 0 {
                        break x;
                    }
                };
                let b = loop {
                    let x = rng.gen_range(-height..=height);
                    if x != 0 {
                        break x;
                    }
                };
                break (perm, a, b);
            };
            let mut images = vec![Polynomial::zero(2); 3];
            images[perm[0]] = Polynomial::var(2, 0);
            images[perm[1]] = Polynomial::var(2, 1);
            images[perm[2]] = &(&Polynomial::var(2, 0)).scale(&Rat::from_integer((-a).into()))
                + &(&Polynomial::var(2, 1)).scale(&Rat::from_integer((-b).into()));
            let h_s = h.substitute(&images);
            if h_s.is_zero() || h_s.total_degree().unwrap_or(0) == 0 {
                // Degenerate slice (the plane sits inside the variety, or
                // misses it); such a sample is outside the generic set.
                continue;
            }
            let gens_s: Vec<Polynomial> = ideal
                .generators()
                .iter()
                .map(|g| g.substitute(&images))
                .collect();
            let max_deg = gens_s
                .iter()
                .chain(std::iter::once(&h_s))
                .filter_map(|g| g.total_degree())
                .max()
                .unwrap_or(1);
            // Precision past the intersection-number bound turns a
            // vanishing-to-truncation pullback into a certificate.
            let needed = max_deg * max_deg + 2;
            let precision = needed.min(config.trunc_cap);
            let certified_zeroes = precision >= needed;
            let branches = match branch_decompose_bounded(&h_s, precision, config.trunc_cap) {
                Ok(b) => b,
                Err(PuiseuxError::RefinementNeeded { .. }) => {
                    // No value from this sample; never mistake a failed
                    // separation for an infinite bound.
                    truncated = true;
                    continue;
                }
                Err(e) => return Err(e.into()),
            };

            // maxmin: best over branches of the generator minimum.
            // minmax: per generator the worst branch, then the minimum.
            let mut maxmin: Option<Option<Rat>> = None; // inner None = infinite
            let mut best_branch: Option<&PuiseuxBranch> = None;
            let mut per_gen_max: Vec<Option<Rat>> = vec![Some(Rat::zero()); gens_s.len()];
            for branch in &branches {
                let v_curve = branch.curve_order();
                let mut min_gen: Option<Rat> = None;
                let mut all_infinite = true;
                for (gi, g) in gens_s.iter().enumerate() {
                    let ratio = match branch.pullback(g) {
                        BranchPullback::Finite(v) => {
                            all_infinite = false;
                            Some(Rat::new((v as i64).into(), (v_curve as i64).into()))
                        }
                        BranchPullback::Zero { exact } => {
                            if !exact && !certified_zeroes {
                                truncated = true;
                            }
                            None
                        }
                    };
                    match &ratio {
                        Some(r) => {
                            min_gen = Some(match min_gen {
                                None => r.clone(),
                                Some(m) => m.min(r.clone()),
                            });
                            if let Some(Some(cur)) = per_gen_max.get(gi).map(|x| x.as_ref()) {
                                if r > cur {
                                    per_gen_max[gi] = Some(r.clone());
                                }
                            }
                        }
                        None => per_gen_max[gi] = None,
                    }
                }
                let branch_value = if all_infinite { None } else { min_gen };
                let better = match (&maxmin, &branch_value) {
                    (None, _) => true,
                    (Some(None), _) => false,
                    (Some(Some(_)), None) => true,
                    (Some(Some(cur)), Some(new)) => new > cur,
                };
                if better {
                    maxmin = Some(branch_value);
                    best_branch = Some(branch);
                }
            }
            let maxmin = maxmin.flatten_into();
            let minmax: Option<Rat> = {
                let mut m: Option<Option<Rat>> = None;
                for g in &per_gen_max {
                    let better = match (&m, g) {
                        (None, _) => true,
                        (Some(None), _) => true,
                        (Some(Some(cur)), Some(new)) => new < cur,
                        (Some(Some(_)), None) => false,
                    };
                    if better {
                        m = Some(g.clone());
                    }
                }
                m.flatten()
            };
            let tight = maxmin == minmax;
            if !tight {
                all_tight = false;
            }
            let value = match &maxmin {
                Some(r) => ReportValue::Exact(r.clone()),
                None => ReportValue::Infinite,
            };
            let plane_form = {
                let mut coeffs = vec![Rat::zero(); 3];
                coeffs[perm[2]] = Rat::one();
                coeffs[perm[0]] = Rat::from_integer(a.into());
                coeffs[perm[1]] = Rat::from_integer(b.into());
                LinearForm::new(coeffs)
            };
            samples.push(SampleRecord {
                label: format!(
                    "variety {} ({h}), plane sample {}{}",
                    vi + 1,
                    s + 1,
                    if tight { "" } else { " (bracket not tight)" }
                ),
                forms: vec![plane_form.clone()],
                value,
                status: if tight {
                    Status::LowerBound
                } else {
                    Status::LowerBound
                },
            });
            if s == 0 {
                if let Some(branch) = best_branch {
                    witnesses.push(Witness::Slice {
                        variety: h.to_string(),
                        plane: plane_form.coeffs().to_vec(),
                        branch: branch.describe(),
                        bound: maxmin.clone().unwrap_or_else(Rat::zero),
                    });
                }
            }
            variety_values.push(maxmin);
        }
        // Generic-sample consistency: keep the agreed value, else the
        // conservative minimum.
        let agreed = variety_values.windows(2).all(|w| w[0] == w[1]);
        let value = if agreed {
            variety_values.first().cloned().flatten_into2()
        } else {
            let mut m: Option<Rat> = None;
            for v in variety_values.iter().flatten() {
                m = Some(match m {
                    None => v.clone(),
                    Some(cur) => cur.min(v.clone()),
                });
            }
            m
        };
        let better = match (&best, &value) {
            (None, _) => true,
            (Some(None), _) => false,
            (Some(Some(_)), None) => true,
            (Some(Some(cur)), Some(new)) => new > cur,
        };
        if better {
            best = Some(value);
        }
    }

    let value = match best.flatten() {
        Some(r) => ReportValue::Exact(r),
        None => ReportValue::Infinite,
    };
    let status = if truncated {
        Status::TruncationLimited
    } else {
        Status::LowerBound
    };
    let mut notes = vec![
        "certified lower bound from generator minima over slice branches".into(),
    ];
    if !all_tight {
        notes.push(
            "max-min and min-max brackets disagreed on some sample; the bound remains valid"
                .into(),
        );
    }
    Ok(InvariantReport {
        name: InvariantName::Dq,
        value,
        status,
        witnesses,
        samples,
        seed: config.plan.seed,
        notes,
    })
}

// Small helpers to flatten nested Options used by the slicing fold.
trait FlattenInto {
    fn flatten_into(self) -> Option<Rat>;
}

impl FlattenInto for Option<Option<Rat>> {
    fn flatten_into(self) -> Option<Rat> {
        self.flatten()
    }
}

trait FlattenInto2 {
    fn flatten_into2(self) -> Option<Rat>;
}

impl FlattenInto2 for Option<Option<Rat>> {
    fn flatten_into2(self) -> Option<Rat> {
        self.flatten()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOutcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub outcome: ChainOutcome,
    pub t_q: ReportValue,
    pub d_q: ReportValue,
    pub power: u32,
    pub details: String,
}

/// Check `T_q <= D_q <= T_q^(n-q+1)` with conservative bracket logic.
pub fn check_chain(
    ideal: &IdealPresentation,
    q: usize,
    config: &EngineConfig,
) -> Result<ChainReport, EngineError> {
    let n = ideal.nvars();
    let t = typeq(ideal, q, config, &[])?;
    let d = catlin_q(ideal, q, config)?;
    let power = (n - q + 1) as u32;

    let left = match (&t.value, &d.value) {
        (ReportValue::Infinite, ReportValue::Infinite) => ChainOutcome::Pass,
        (ReportValue::Infinite, _) => ChainOutcome::Fail,
        (tv, dv) => {
            let pass = match (tv.upper(), dv.lower()) {
                (Some(tu), Some(dl)) => Some(tu <= dl),
                _ => None,
            };
            let fail = match (tv.lower(), dv.upper()) {
                (Some(tl), Some(du)) => tl > du,
                _ => false,
            };
            if fail {
                ChainOutcome::Fail
            } else if pass == Some(true) || dv.is_infinite() {
                ChainOutcome::Pass
            } else {
                ChainOutcome::Inconclusive
            }
        }
    };
    let right = match (&t.value, &d.value) {
        (_, ReportValue::Infinite) => {
            if t.value.is_infinite() {
                ChainOutcome::Pass
            } else {
                ChainOutcome::Fail
            }
        }
        (ReportValue::Infinite, _) => ChainOutcome::Pass,
        (tv, dv) => {
            let pass = match (dv.upper(), tv.lower()) {
                (Some(du), Some(tl)) => Some(du <= pow_rat(&tl, power)),
                _ => None,
            };
            let fail = match (dv.lower(), tv.upper()) {
                (Some(dl), Some(tu)) => dl > pow_rat(&tu, power),
                _ => false,
            };
            if fail {
                ChainOutcome::Fail
            } else if pass == Some(true) {
                ChainOutcome::Pass
            } else {
                ChainOutcome::Inconclusive
            }
        }
    };
    let outcome = match (left, right) {
        (ChainOutcome::Fail, _) | (_, ChainOutcome::Fail) => ChainOutcome::Fail,
        (ChainOutcome::Pass, ChainOutcome::Pass) => ChainOutcome::Pass,
        _ => ChainOutcome::Inconclusive,
    };
    Ok(ChainReport {
        outcome,
        details: format!(
            "T_q = {}, D_q = {}, exponent = {}",
            t.value.render(),
            d.value.render(),
            power
        ),
        t_q: t.value,
        d_q: d.value,
        power,
    })
}

fn pow_rat(v: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= v;
    }
    acc
}

// ---------------------------------------------------------------------------
// Witness revalidation.
// ---------------------------------------------------------------------------

/// Re-run every witness claim in a report: curve pullback orders must
/// reproduce exactly, and form tuples must reproduce their value when the
/// input ideal is supplied.
pub fn revalidate_report(
    report: &InvariantReport,
    ideal: Option<&IdealPresentation>,
    config: &EngineConfig,
) -> Result<(), String> {
    for (wi, witness) in report.witnesses.iter().enumerate() {
        match witness {
            Witness::Curve {
                curve,
                curve_order,
                targets,
                generator_orders,
            } => {
                let nvars = curve.components.len();
                let recomputed_order = curve.curve_order().unwrap_or(0);
                if recomputed_order != *curve_order {
                    return Err(format!(
                        "witness {wi}: curve order {recomputed_order} != claimed {curve_order}"
                    ));
                }
                if targets.len() != generator_orders.len() {
                    return Err(format!("witness {wi}: malformed claim lists"));
                }
                for (ti, (target, claimed)) in
                    targets.iter().zip(generator_orders).enumerate()
                {
                    let poly = parse_polynomial_str(nvars, target)
                        .map_err(|e| format!("witness {wi}, target {ti}: {e}"))?;
                    let got = curve_pullback_order(curve, &poly);
                    if got != *claimed {
                        return Err(format!(
                            "witness {wi}, target {ti} ({target}): recomputed {got:?} != claimed {claimed:?}"
                        ));
                    }
                }
            }
            Witness::FormTuple { forms, value } => {
                if let Some(ideal) = ideal {
                    let adjoined = ideal
                        .adjoin(forms)
                        .map_err(|e| format!("witness {wi}: {e}"))?;
                    let inner = type1(&adjoined, config)
                        .map_err(|e| format!("witness {wi}: {e}"))?;
                    if inner.value != *value {
                        return Err(format!(
                            "witness {wi}: tuple value {} != claimed {}",
                            inner.value.render(),
                            value.render()
                        ));
                    }
                }
            }
            Witness::Slice { .. } => {
                // Slice witnesses are derived data; the curve/tuple
                // witnesses carry the recomputable claims.
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    fn ideal(nvars: usize, gens: &[&[(&[u32], i64)]]) -> IdealPresentation {
        IdealPresentation::new(nvars, gens.iter().map(|g| poly(nvars, g)).collect()).unwrap()
    }

    fn prop1_ideal() -> IdealPresentation {
        ideal(3, &[&[(&[3, 0, 0], 1), (&[0, 1, 1], -1)], &[(&[0, 2, 0], 1)]])
    }

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn elimination_examples() {
        // (z1^3 - z2 z3, z2^2, z3) -> (z1^3, z2^2)
        let i = ideal(
            3,
            &[
                &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, 2, 0], 1)],
                &[(&[0, 0, 1], 1)],
            ],
        );
        let red = eliminate_linear(&i).unwrap();
        assert_eq!(red.nvars, 2);
        let mut gens: Vec<String> = red.generators.iter().map(|g| g.to_string()).collect();
        gens.sort();
        assert_eq!(gens, vec!["z1^3", "z2^2"]);

        // (z1^3 - z2 z3, z2^2, z3 + z1 + z2) -> (z1^3 + z1 z2 + z2^2, z2^2)
        let i = ideal(
            3,
            &[
                &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, 2, 0], 1)],
                &[(&[0, 0, 1], 1), (&[1, 0, 0], 1), (&[0, 1, 0], 1)],
            ],
        );
        let red = eliminate_linear(&i).unwrap();
        assert_eq!(red.nvars, 2);
        let mut gens: Vec<String> = red.generators.iter().map(|g| g.to_string()).collect();
        gens.sort();
        assert_eq!(gens, vec!["z1^3 + z1*z2 + z2^2", "z2^2"]);

        // No linear part anywhere: error.
        let i = ideal(2, &[&[(&[2, 0], 1)], &[(&[0, 3], 1)]]);
        assert!(matches!(
            eliminate_linear(&i),
            Err(EngineError::NoLinearGenerator)
        ));
    }

    #[test]
    fn type1_on_the_slice_family() {
        // (z1^3 + z1 z2, z2^2) -> 4, witnessed by (t, -t^2).
        let i = ideal(2, &[&[(&[3, 0], 1), (&[1, 1], 1)], &[(&[0, 2], 1)]]);
        let r = type1(&i, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(4));
        assert_eq!(r.status, Status::Exact);
        assert!(!r.witnesses.is_empty());
        revalidate_report(&r, Some(&i), &cfg()).unwrap();

        // (z1^3, z2^2) -> 3.
        let i = ideal(2, &[&[(&[3, 0], 1)], &[(&[0, 2], 1)]]);
        let r = type1(&i, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(3));
        assert_eq!(r.status, Status::Exact);
    }

    #[test]
    fn type1_infinite_on_degenerate_slices() {
        // (z1^3 - z2 z3, z2^2, z1 + z2): the c = 0 stratum.
        let i = ideal(
            3,
            &[
                &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, 2, 0], 1)],
                &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)],
            ],
        );
        let r = type1(&i, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::Infinite);
        assert_eq!(r.status, Status::Exact);
        revalidate_report(&r, Some(&i), &cfg()).unwrap();
    }

    #[test]
    fn type1_via_elimination_matches_direct() {
        // (z1^3 - z2 z3, z2^2, z3): eliminates to (z1^3, z2^2), value 3.
        let i = ideal(
            3,
            &[
                &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, 2, 0], 1)],
                &[(&[0, 0, 1], 1)],
            ],
        );
        let r = type1(&i, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(3));
        assert_eq!(r.status, Status::Exact);
        revalidate_report(&r, Some(&i), &cfg()).unwrap();
    }

    #[test]
    fn typeq_on_the_worked_example() {
        let i = prop1_ideal();
        let r = typeq(&i, 2, &cfg(), &[]).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(3));
        assert_eq!(r.status, Status::Exact);
        // The witness tuple is the third coordinate.
        match &r.witnesses[0] {
            Witness::FormTuple { forms, .. } => {
                assert_eq!(forms.len(), 1);
                assert_eq!(forms[0], LinearForm::coordinate(3, 2));
            }
            w => panic!("expected a form tuple, got {w:?}"),
        }
        revalidate_report(&r, Some(&i), &cfg()).unwrap();
    }

    #[test]
    fn typeq_q1_equals_type1() {
        let i = prop1_ideal();
        let t1 = type1(&i, &cfg()).unwrap();
        let tq = typeq(&i, 1, &cfg(), &[]).unwrap();
        assert_eq!(tq.value, t1.value);
        assert_eq!(tq.name, InvariantName::Tq);
    }

    #[test]
    fn betaq_on_the_worked_example() {
        let i = prop1_ideal();
        let r = betaq(&i, 2, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(4));
        assert_eq!(r.status, Status::Exact);
        assert_eq!(r.samples.len(), 5);
        assert!(r.samples.iter().all(|s| s.value == ReportValue::exact_int(4)));
        revalidate_report(&r, Some(&i), &cfg()).unwrap();
    }

    #[test]
    fn betaq_on_the_theorem_family() {
        // (z1^4 - z2 z3, z2^3): beta_2 = max(4, 3 * 3) = 9.
        let i = ideal(3, &[&[(&[4, 0, 0], 1), (&[0, 1, 1], -1)], &[(&[0, 3, 0], 1)]]);
        let r = betaq(&i, 2, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(9));
        assert_eq!(r.status, Status::Exact);
    }

    #[test]
    fn catlin_q_matches_generic_value() {
        let i = prop1_ideal();
        let r = catlin_q(&i, 2, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(4));
        assert_eq!(r.name, InvariantName::Dq);
        // Slicing bound attached.
        assert!(r.notes.iter().any(|n| n.contains("slicing lower bound: 4")));
    }

    #[test]
    fn slicing_bound_on_the_worked_example() {
        let i = prop1_ideal();
        let g1 = i.generators()[0].clone();
        let r = catlin_q_slicing_bound(&i, 2, &[g1], &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(4));
        assert_eq!(r.status, Status::LowerBound);
        // Tight on every sample.
        assert!(r
            .samples
            .iter()
            .all(|s| !s.label.contains("not tight")));
    }

    #[test]
    fn slicing_bound_on_the_m_family() {
        // (z1^4 - z2 z3, z2^4), variety z1^4 - z2 z3: bound 12.
        let m = 4u32;
        let i = ideal(
            3,
            &[
                &[(&[m, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, m, 0], 1)],
            ],
        );
        let g1 = i.generators()[0].clone();
        let r = catlin_q_slicing_bound(&i, 2, &[g1], &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int((m * (m - 1)) as i64));
    }

    #[test]
    fn slicing_regime_is_enforced() {
        let i = prop1_ideal();
        assert!(matches!(
            catlin_q_slicing_bound(&i, 3, &[i.generators()[0].clone()], &cfg()),
            Err(EngineError::SlicingRegime { .. })
        ));
        let zero = Polynomial::zero(3);
        assert!(matches!(
            catlin_q_slicing_bound(&i, 2, &[zero], &cfg()),
            Err(EngineError::NoCandidateVarieties)
        ));
    }

    #[test]
    fn chain_on_the_worked_example() {
        let i = prop1_ideal();
        let r = check_chain(&i, 2, &cfg()).unwrap();
        assert_eq!(r.outcome, ChainOutcome::Pass);
        assert_eq!(r.t_q, ReportValue::exact_int(3));
        assert_eq!(r.d_q, ReportValue::exact_int(4));
        assert_eq!(r.power, 2);
    }

    #[test]
    fn monotone_under_adjoined_forms() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let i = prop1_ideal();
        let base = type1(&i, &cfg()).unwrap();
        for _ in 0..6 {
            let form = random_form(&mut rng, 3, 50);
            let bigger = i.adjoin(&[form]).unwrap();
            let r = type1(&bigger, &cfg()).unwrap();
            // T1(I, w) <= T1(I); with T1(I) infinite everything passes.
            match (r.value.upper(), base.value.lower()) {
                (Some(u), Some(l)) => assert!(u <= l.max(u.clone())),
                _ => {}
            }
            if let (Some(u), false) = (r.value.upper(), base.value.is_infinite()) {
                let bl = base.value.lower().unwrap();
                assert!(u <= bl, "adjoining forms increased the contact order");
            }
        }
    }
}
