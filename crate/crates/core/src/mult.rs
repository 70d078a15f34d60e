//! Colength (multiplicity) of zero-dimensional ideals by exact truncated
//! rank: the dimension of the monomial space below degree K modulo the
//! generator multiples, stabilized over K.

use std::fmt;

use num_traits::Zero;

use crate::engine::{type1, EngineConfig, EngineError};
use crate::ideal::IdealPresentation;
use crate::linalg::{rank_of, RowSpace};
use crate::poly::{Polynomial, Rat};
use crate::report::ReportValue;

/// Stabilization cap for the truncation degree.
pub const MULT_DEGREE_CAP: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    /// No stabilization up to the cap; not a proof of infinite colength.
    NotFinite,
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(v) => write!(f, "{v}"),
            Colength::NotFinite => write!(f, "not finite (no stabilization up to K={MULT_DEGREE_CAP})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub value: Colength,
    /// Truncation degree at which the quotient dimension stabilized.
    pub stabilization_degree: Option<u32>,
}

/// Monomials of total degree < k, in (degree, lex) order.
fn monomials_below(nvars: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, var: usize, left: u32, nvars: usize) {
        if var == nvars {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[var] = e;
            rec(out, current, var + 1, left - e, nvars);
            current[var] = 0;
        }
    }
    for d in 0..k {
        let before = out.len();
        rec(&mut out, &mut current, 0, d, nvars);
        // Keep only the monomials of exact degree d appended this round.
        let added: Vec<Vec<u32>> = out.split_off(before)
            .into_iter()
            .filter(|m| m.iter().sum::<u32>() == d)
            .collect();
        out.extend(added);
    }
    out
}

/// Row space of the ideal inside the monomial basis below degree `k`.
fn ideal_span_below(ideal: &IdealPresentation, k: u32) -> (Vec<Vec<u32>>, RowSpace) {
    let basis = monomials_below(ideal.nvars(), k);
    let index: std::collections::BTreeMap<&Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut space = RowSpace::new(basis.len());
    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let ord = match g.lowest_order() {
            crate::poly::Order::Finite(o) => o,
            crate::poly::Order::Infinite => continue,
        };
        if ord >= k {
            continue;
        }
        for m in monomials_below(ideal.nvars(), k - ord) {
            let mut row: Vec<(usize, Rat)> = Vec::with_capacity(g.num_terms());
            for (e, c) in g.terms() {
                let exps: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                if let Some(&idx) = index.get(&exps) {
                    row.push((idx, c.clone()));
                }
            }
            if !row.is_empty() {
                row.sort_by_key(|(c, _)| *c);
                space.insert_sparse(row);
            }
        }
    }
    (basis, space)
}

fn colength_below(ideal: &IdealPresentation, k: u32) -> (u64, bool) {
    let (basis, space) = ideal_span_below(ideal, k);
    let colength = (basis.len() - space.rank()) as u64;
    // Certificate: for every variable some pure power below K leads a row.
    let pure_powers_led = (0..ideal.nvars()).all(|var| {
        space.pivots().iter().any(|&p| {
            let m = &basis[p];
            m[var] > 0 && m.iter().enumerate().all(|(i, &e)| i == var || e == 0)
        })
    });
    (colength, pure_powers_led)
}

/// Colength of the ideal: the vector-space dimension of the local ring
/// modulo the ideal, computed by exact rank over the rationals with an
/// increasing truncation degree until stabilization.
pub fn mult(ideal: &IdealPresentation) -> MultiplicityResult {
    let mut prev: Option<u64> = None;
    for k in 2..=MULT_DEGREE_CAP {
        let (val, certified) = colength_below(ideal, k);
        if let Some(p) = prev {
            if p == val && certified {
                return MultiplicityResult {
                    value: Colength::Finite(val),
                    stabilization_degree: Some(k - 1),
                };
            }
        }
        prev = Some(val);
    }
    MultiplicityResult {
        value: Colength::NotFinite,
        stabilization_degree: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultError {
    NonMonomialGenerator { index: usize },
    LinearRankTooSmall { required: usize, found: usize },
}

impl fmt::Display for MultError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultError::NonMonomialGenerator { index } => {
                write!(f, "generator {} is not a single term", index + 1)
            }
            MultError::LinearRankTooSmall { required, found } => {
                write!(
                    f,
                    "ideal has only {found} independent linear generators, {required} required"
                )
            }
        }
    }
}

impl std::error::Error for MultError {}

/// Fast path for monomial ideals: count lattice points outside the
/// staircase. Not finite when some coordinate axis carries no pure power.
pub fn mult_monomial(ideal: &IdealPresentation) -> Result<Colength, MultError> {
    let n = ideal.nvars();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if g.num_terms() != 1 {
            return Err(MultError::NonMonomialGenerator { index: i });
        }
        gens.push(g.terms().next().unwrap().0.clone());
    }
    // Bounds: the minimal pure power along each axis.
    let mut bounds = vec![None::<u32>; n];
    for e in &gens {
        if let Some(var) = single_var(e) {
            let b = bounds[var].get_or_insert(e[var]);
            *b = (*b).min(e[var]);
        }
    }
    if bounds.iter().any(|b| b.is_none()) {
        return Ok(Colength::NotFinite);
    }
    let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
    // Enumerate the box and count standard monomials.
    let mut count = 0u64;
    let mut point = vec![0u32; n];
    loop {
        let in_ideal = gens
            .iter()
            .any(|e| e.iter().zip(&point).all(|(a, b)| a <= b));
        if !in_ideal {
            count += 1;
        }
        // advance odometer
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(Colength::Finite(count));
            }
            i -= 1;
            point[i] += 1;
            if point[i] < bounds[i] {
                break;
            }
            point[i] = 0;
        }
    }
}

fn single_var(exps: &[u32]) -> Option<usize> {
    let mut var = None;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            if var.is_some() {
                return None;
            }
            var = Some(i);
        }
    }
    var
}

/// Membership of `g` in the ideal modulo degree-K truncation; used by the
/// monotonicity property tests.
pub fn contains_mod_degree(ideal: &IdealPresentation, g: &Polynomial, k: u32) -> bool {
    let (basis, space) = ideal_span_below(ideal, k);
    let index: std::collections::BTreeMap<&Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut row = vec![Rat::zero(); basis.len()];
    for (e, c) in g.terms() {
        if let Some(&idx) = index.get(e) {
            row[idx] += c;
        }
    }
    space.contains(row)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsOutcome {
    Pass,
    Fail,
    /// The first order of contact is only bracketed, and the bracket does
    /// not decide the inequalities.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub outcome: BoundsOutcome,
    pub t1: ReportValue,
    pub multiplicity: Colength,
    pub upper_power: u32,
    pub details: String,
}

/// Check `T_1(I) <= mult(I) <= T_1(I)^(n-q)` for an ideal containing `q`
/// independent linear generators.
pub fn check_mult_bounds(
    ideal: &IdealPresentation,
    q: usize,
    config: &EngineConfig,
) -> Result<BoundsReport, EngineError> {
    let linear_parts: Vec<Vec<Rat>> = ideal
        .generators()
        .iter()
        .map(|g| g.linear_part())
        .filter(|lp| lp.iter().any(|c| !c.is_zero()))
        .collect();
    let rank = rank_of(&linear_parts);
    if rank < q {
        return Err(EngineError::Mult(MultError::LinearRankTooSmall {
            required: q,
            found: rank,
        }));
    }
    let n = ideal.nvars();
    let power = (n - q) as u32;
    let t1 = type1(ideal, config)?;
    let m = mult(ideal);

    let outcome = match (&t1.value, &m.value) {
        (ReportValue::Infinite, Colength::NotFinite) => BoundsOutcome::Pass,
        (ReportValue::Infinite, Colength::Finite(_)) => BoundsOutcome::Fail,
        (_, Colength::NotFinite) => BoundsOutcome::Inconclusive,
        (v, Colength::Finite(mv)) => {
            let mv = Rat::from_integer((*mv).into());
            let lower_ok = v.upper().map(|u| u <= mv);
            let lower_bad = v.lower().map(|l| l > mv).unwrap_or(false);
            let upper_ok = v.lower().map(|l| mv <= pow_rat(&l, power));
            let upper_bad = v
                .upper()
                .map(|u| mv > pow_rat(&u, power))
                .unwrap_or(false);
            if lower_bad || upper_bad {
                BoundsOutcome::Fail
            } else {
                match (lower_ok, upper_ok) {
                    (Some(true), Some(true)) => BoundsOutcome::Pass,
                    _ => BoundsOutcome::Inconclusive,
                }
            }
        }
    };
    let details = format!(
        "T1 = {}, mult = {}, power bound exponent = {}",
        t1.value.render(),
        m.value,
        power
    );
    Ok(BoundsReport {
        outcome,
        t1: t1.value,
        multiplicity: m.value,
        upper_power: power,
        details,
    })
}

fn pow_rat(v: &Rat, k: u32) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for _ in 0..k {
        acc *= v;
    }
    acc
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

    #[test]
    fn staircase_colengths() {
        let i = ideal(2, &[&[(&[3, 0], 1)], &[(&[0, 2], 1)]]);
        assert_eq!(mult(&i).value, Colength::Finite(6));
        assert_eq!(mult_monomial(&i).unwrap(), Colength::Finite(6));

        let maximal = ideal(2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        assert_eq!(mult(&maximal).value, Colength::Finite(1));

        for m in 2..=4u32 {
            let i = ideal(2, &[&[(&[m, 0], 1)], &[(&[0, m], 1)]]);
            assert_eq!(mult_monomial(&i).unwrap(), Colength::Finite((m * m) as u64));
            assert_eq!(mult(&i).value, Colength::Finite((m * m) as u64));
        }
    }

    #[test]
    fn free_axis_is_not_finite() {
        let i = ideal(2, &[&[(&[2, 0], 1)]]);
        assert_eq!(mult_monomial(&i).unwrap(), Colength::NotFinite);
        assert_eq!(mult(&i).value, Colength::NotFinite);
    }

    #[test]
    fn binomial_ideal_with_linear_generator() {
        // (z1^3 - z2 z3, z2^2, z3): colength 6, same as (z1^3, z2^2).
        let i = ideal(
            3,
            &[
                &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)],
                &[(&[0, 2, 0], 1)],
                &[(&[0, 0, 1], 1)],
            ],
        );
        let r = mult(&i);
        assert_eq!(r.value, Colength::Finite(6));
        assert!(r.stabilization_degree.is_some());
    }

    #[test]
    fn monomial_and_rank_routes_agree_on_random_staircases() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let n = rng.gen_range(2..=3);
            let mut gens: Vec<Vec<(Vec<u32>, i64)>> = Vec::new();
            // Pure powers on each axis keep it finite.
            for var in 0..n {
                let mut e = vec![0u32; n];
                e[var] = rng.gen_range(1..=3);
                gens.push(vec![(e, 1)]);
            }
            // A couple of extra random monomials.
            for _ in 0..rng.gen_range(0..=2) {
                let mut e = vec![0u32; n];
                for slot in e.iter_mut() {
                    *slot = rng.gen_range(0..=2);
                }
                if e.iter().all(|&x| x == 0) {
                    continue;
                }
                gens.push(vec![(e, 1)]);
            }
            let i = IdealPresentation::new(
                n,
                gens.iter()
                    .map(|g| {
                        Polynomial::from_terms(
                            n,
                            g.iter().map(|(e, c)| (e.clone(), rat(*c))),
                        )
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(mult(&i).value, mult_monomial(&i).unwrap());
        }
    }

    #[test]
    fn monotonic_under_enlargement() {
        let small = ideal(2, &[&[(&[3, 0], 1)], &[(&[0, 2], 1)]]);
        let bigger = ideal(
            2,
            &[&[(&[3, 0], 1)], &[(&[0, 2], 1)], &[(&[1, 1], 1)]],
        );
        let (Colength::Finite(a), Colength::Finite(b)) =
            (mult(&small).value, mult(&bigger).value)
        else {
            panic!("both finite");
        };
        assert!(a >= b);
        // Membership route: every generator of `small` lies in `bigger`.
        for g in small.generators() {
            assert!(contains_mod_degree(&bigger, g, 8));
        }
    }
}
