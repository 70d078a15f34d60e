//! Formal parameterized curve germs, orders of vanishing under pullback,
//! and the brute-force curve search that certifies lower bounds for the
//! first order of contact.
//!
//! Search curves are exact polynomial tuples, so a vanishing composite is
//! a certificate, not a truncation artifact. The search itself runs on
//! integer-scaled coefficients with cached power tables and lazily
//! computed composite coefficients; only witnesses are converted back to
//! exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ideal::IdealPresentation;
use crate::poly::{Polynomial, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    NonVanishing { component: usize },
    ConstantGerm,
    ArityMismatch { expected: usize, found: usize },
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::NonVanishing { component } => {
                write!(f, "component {} does not vanish at t = 0", component + 1)
            }
            CurveError::ConstantGerm => {
                write!(f, "all components vanish identically up to truncation")
            }
            CurveError::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} components, found {found}")
            }
        }
    }
}

impl std::error::Error for CurveError {}

/// Order of the pullback of a polynomial through a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackOrder {
    Finite(u32),
    /// The composite vanishes up to the curve's truncation; for exact
    /// polynomial curves this certifies it is identically zero.
    IdenticallyZeroToTruncation,
}

impl PullbackOrder {
    pub fn finite(&self) -> Option<u32> {
        match self {
            PullbackOrder::Finite(v) => Some(*v),
            PullbackOrder::IdenticallyZeroToTruncation => None,
        }
    }
}

/// Truncated formal curve `t -> (c_1(t), ..., c_n(t))` with exact
/// rational coefficients and every component vanishing at `t = 0`.
#[derive(Clone, PartialEq)]
pub struct CurveGerm {
    /// Dense coefficient vectors, index = exponent of `t`.
    components: Vec<Vec<Rat>>,
    /// Exponents below this bound are exact; `None` means the components
    /// are exact polynomials.
    trunc: Option<u32>,
}

impl CurveGerm {
    pub fn new(components: Vec<Vec<Rat>>, trunc: Option<u32>) -> Result<Self, CurveError> {
        let mut comps = components;
        for (i, c) in comps.iter_mut().enumerate() {
            if let Some(n) = trunc {
                c.truncate(n as usize);
            }
            if c.first().is_some_and(|c0| !c0.is_zero()) {
                return Err(CurveError::NonVanishing { component: i });
            }
            while c.last().is_some_and(|x| x.is_zero()) {
                c.pop();
            }
        }
        if comps.iter().all(|c| c.is_empty()) {
            return Err(CurveError::ConstantGerm);
        }
        Ok(CurveGerm {
            components: comps,
            trunc,
        })
    }

    /// Exact monomial-style curve from integer coefficient lists.
    pub fn from_int_components(components: &[&[i64]]) -> Result<Self, CurveError> {
        CurveGerm::new(
            components
                .iter()
                .map(|c| c.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
            None,
        )
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<Rat>] {
        &self.components
    }

    pub fn truncation(&self) -> Option<u32> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Order of vanishing: minimum over components of the lowest exponent
    /// carrying a nonzero coefficient.
    pub fn curve_order(&self) -> u32 {
        self.components
            .iter()
            .filter_map(|c| c.iter().position(|x| !x.is_zero()))
            .min()
            .expect("constructor guarantees a nonzero component") as u32
    }

    /// Substitute `t -> t^k`.
    pub fn reparameterize(&self, k: u32) -> CurveGerm {
        assert!(k >= 1);
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut out = vec![Rat::zero(); c.len() * k as usize];
                for (i, x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        out[i * k as usize] = x.clone();
                    }
                }
                out
            })
            .collect();
        CurveGerm {
            components,
            trunc: self.trunc.map(|n| n * k),
        }
    }

    /// Lowest exponent of `g` composed with the curve.
    pub fn pullback_order(&self, g: &Polynomial) -> PullbackOrder {
        assert_eq!(
            g.nvars(),
            self.components.len(),
            "pullback arity mismatch"
        );
        let cap = match self.trunc {
            Some(n) => n as usize,
            None => {
                // Exact curve: the composite is a polynomial of bounded degree.
                let mut bound = 1usize;
                for (exps, _) in g.terms() {
                    let d: usize = exps
                        .iter()
                        .zip(&self.components)
                        .map(|(&e, c)| e as usize * c.len().saturating_sub(1))
                        .sum();
                    bound = bound.max(d + 1);
                }
                bound
            }
        };
        let mut acc = vec![Rat::zero(); cap];
        let mut powers: Vec<Vec<Vec<Rat>>> =
            self.components.iter().map(|_| vec![vec![Rat::one()]]).collect();
        for (exps, coeff) in g.terms() {
            let mut term = vec![Rat::zero(); cap.min(1).max(1)];
            term[0] = coeff.clone();
            let mut term = {
                let mut t = vec![Rat::zero(); cap];
                t[0] = coeff.clone();
                t
            };
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul_trunc(powers[i].last().unwrap(), &self.components[i], cap);
                    powers[i].push(next);
                }
                term = mul_trunc(&term, &powers[i][e as usize], cap);
            }
            for (slot, v) in acc.iter_mut().zip(term) {
                *slot += v;
            }
        }
        match acc.iter().position(|c| !c.is_zero()) {
            Some(o) => PullbackOrder::Finite(o as u32),
            None => PullbackOrder::IdenticallyZeroToTruncation,
        }
    }

    /// Minimum pullback order over the generators; identically zero only
    /// when every generator is.
    pub fn ideal_order(&self, ideal: &IdealPresentation) -> PullbackOrder {
        let mut best: Option<u32> = None;
        for g in ideal.generators() {
            match self.pullback_order(g) {
                PullbackOrder::Finite(v) => {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
                PullbackOrder::IdenticallyZeroToTruncation => {}
            }
        }
        match best {
            Some(v) => PullbackOrder::Finite(v),
            None => PullbackOrder::IdenticallyZeroToTruncation,
        }
    }

    /// Contact ratio of the ideal along this curve.
    pub fn ideal_ratio(&self, ideal: &IdealPresentation) -> Option<Rat> {
        self.ideal_order(ideal).finite().map(|v| {
            Rat::new((v as i64).into(), (self.curve_order() as i64).into())
        })
    }
}

fn mul_trunc(a: &[Rat], b: &[Rat], cap: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); cap];
    for (i, ca) in a.iter().enumerate().take(cap) {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(cap - i) {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    out
}

impl fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t -> (")?;
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let mut first = true;
            for (k, c) in comp.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
                let a = c.abs();
                if !a.is_one() || k == 0 {
                    if a.denom().is_one() {
                        write!(f, "{}", a.numer())?;
                    } else {
                        write!(f, "{}/{}", a.numer(), a.denom())?;
                    }
                    if k > 0 {
                        write!(f, "*")?;
                    }
                }
                if k == 1 {
                    write!(f, "t")?;
                } else if k > 1 {
                    write!(f, "t^{k}")?;
                }
            }
            if first {
                write!(f, "0")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Curve enumeration.
// ---------------------------------------------------------------------------

/// All rationals `p/q` in lowest terms with `max(|p|, |q|) <= h`, plus 0.
pub fn pool_of_height(h: u32) -> Vec<Rat> {
    let h = h as i64;
    let mut pool = vec![Rat::zero()];
    for q in 1..=h {
        for p in 1..=h {
            if p.gcd(&q) != 1 {
                continue;
            }
            pool.push(Rat::new(p.into(), q.into()));
            pool.push(Rat::new((-p).into(), q.into()));
        }
    }
    pool.sort();
    pool
}

/// Deterministic stream of all `n`-tuples of polynomial components of
/// degree at most `d`, coefficients drawn from `pool`, zero constant
/// terms, excluding the all-zero tuple.
pub fn enumerate_curves(n: usize, d: u32, pool: &[Rat]) -> CurveEnumeration {
    assert!(d >= 1);
    assert!(pool.contains(&Rat::zero()), "pool must contain 0");
    assert!(
        pool.contains(&Rat::one()) && pool.contains(&(-Rat::one())),
        "pool must contain 1 and -1"
    );
    CurveEnumeration {
        n,
        d: d as usize,
        pool: pool.to_vec(),
        odometer: vec![0; n * d as usize],
        done: false,
        first: true,
    }
}

pub struct CurveEnumeration {
    n: usize,
    d: usize,
    pool: Vec<Rat>,
    odometer: Vec<usize>,
    done: bool,
    first: bool,
}

impl CurveEnumeration {
    fn bump(&mut self) -> bool {
        for slot in self.odometer.iter_mut().rev() {
            *slot += 1;
            if *slot < self.pool.len() {
                return true;
            }
            *slot = 0;
        }
        false
    }

    fn current(&self) -> Option<CurveGerm> {
        let zero_index = self.pool.iter().position(|c| c.is_zero()).unwrap();
        if self.odometer.iter().all(|&i| i == zero_index) {
            return None;
        }
        let mut comps = Vec::with_capacity(self.n);
        for c in 0..self.n {
            let digits = &self.odometer[c * self.d..(c + 1) * self.d];
            let mut coeffs = vec![Rat::zero(); self.d + 1];
            for (k, &idx) in digits.iter().enumerate() {
                coeffs[k + 1] = self.pool[idx].clone();
            }
            comps.push(coeffs);
        }
        CurveGerm::new(comps, None).ok()
    }
}

impl Iterator for CurveEnumeration {
    type Item = CurveGerm;

    fn next(&mut self) -> Option<CurveGerm> {
        loop {
            if self.done {
                return None;
            }
            if self.first {
                self.first = false;
            } else if !self.bump() {
                self.done = true;
                return None;
            }
            if let Some(curve) = self.current() {
                return Some(curve);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force lower-bound search.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub max_degree: u32,
    pub pool: Vec<Rat>,
}

impl SearchParams {
    pub fn new(max_degree: u32, pool: Vec<Rat>) -> Self {
        SearchParams { max_degree, pool }
    }

    pub fn with_height(max_degree: u32, height: u32) -> Self {
        SearchParams {
            max_degree,
            pool: pool_of_height(height.max(1)),
        }
    }
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams::with_height(3, 1)
    }
}

/// Witness for the best ratio found by the search.
#[derive(Debug, Clone)]
pub struct SearchWitness {
    pub ratio: Rat,
    pub curve: CurveGerm,
    pub curve_order: u32,
    /// Per-generator pullback orders along the witness.
    pub orders: Vec<PullbackOrder>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Best finite ratio over the family; a certified lower bound.
    pub best: Option<SearchWitness>,
    /// A curve on which every generator vanished identically, when found.
    pub zero_witness: Option<CurveGerm>,
    pub curves_tested: u64,
}

/// Scan the whole enumeration family and keep the best
/// `v(I o gamma) / v(gamma)`; every tested curve certifies a lower bound
/// for the first order of contact, so the maximum does too.
pub fn type1_search_lower_bound(
    ideal: &IdealPresentation,
    params: &SearchParams,
) -> SearchOutcome {
    let n = ideal.nvars();
    let d = params.max_degree.max(1) as usize;
    let pool = &params.pool;

    // Integer-scale the pool: pool[i] = nums[i] / den.
    let mut den = BigInt::one();
    for c in pool {
        den = den.lcm(c.denom());
    }
    let den_i: i128 = den.to_i128().expect("pool denominator fits i128");
    let nums: Vec<i128> = pool
        .iter()
        .map(|c| {
            (c.numer() * (&den / c.denom()))
                .to_i128()
                .expect("pool numerator fits i128")
        })
        .collect();

    // Integer-scale the generators (uniform scaling keeps every order).
    let gens: Vec<Vec<(Vec<u32>, i128)>> = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut gden = BigInt::one();
            for (_, c) in g.terms() {
                gden = gden.lcm(c.denom());
            }
            g.terms()
                .map(|(e, c)| {
                    let v = (c.numer() * (&gden / c.denom()))
                        .to_i128()
                        .expect("generator coefficient fits i128");
                    (e.clone(), v)
                })
                .collect()
        })
        .collect();
    let max_exp = gens
        .iter()
        .flat_map(|g| g.iter())
        .flat_map(|(e, _)| e.iter().copied())
        .max()
        .unwrap_or(1) as usize;
    let max_term_weight = gens
        .iter()
        .flat_map(|g| g.iter())
        .map(|(e, _)| e.iter().sum::<u32>())
        .max()
        .unwrap_or(1);

    // Component variants: all degree <= d coefficient tuples over the pool.
    let p = nums.len();
    let variants: u64 = (p as u64).pow(d as u32);
    let mut tables: Vec<Vec<Vec<i128>>> = Vec::with_capacity(variants as usize);
    for v in 0..variants {
        let mut poly = vec![0i128; d + 1];
        let mut rem = v;
        for k in 1..=d {
            poly[k] = nums[(rem % p as u64) as usize];
            rem /= p as u64;
        }
        let mut pows: Vec<Vec<i128>> = Vec::with_capacity(max_exp + 1);
        pows.push(vec![1]);
        for _ in 1..=max_exp {
            pows.push(int_mul(pows.last().unwrap(), &poly));
        }
        tables.push(pows);
    }
    let orders: Vec<Option<u32>> = tables
        .iter()
        .map(|pows| {
            pows[1]
                .iter()
                .position(|&c| c != 0)
                .map(|k| k as u32)
        })
        .collect();

    // Denominator adjustment so every term is over den^max_term_weight.
    let den_pows: Vec<i128> = {
        let mut v = vec![1i128];
        for _ in 1..=max_term_weight {
            v.push(v.last().unwrap() * den_i);
        }
        v
    };

    let mut best: Option<(u32, u32, Vec<usize>)> = None; // (v_ideal, v_curve, odometer)
    let mut zero_witness: Option<Vec<usize>> = None;
    let mut tested = 0u64;

    let mut odo = vec![0usize; n];
    let total = (variants as u128).pow(n as u32);
    for _ in 0..total {
        let advance = |odo: &mut Vec<usize>| {
            for slot in odo.iter_mut().rev() {
                *slot += 1;
                if *slot < variants as usize {
                    return;
                }
                *slot = 0;
            }
        };
        // Skip the all-zero tuple.
        let Some(v_curve) = odo.iter().filter_map(|&v| orders[v]).min() else {
            advance(&mut odo);
            continue;
        };
        tested += 1;

        let mut v_ideal: Option<u32> = None;
        let mut all_zero = true;
        for gen in &gens {
            let mut k_min = u32::MAX;
            let mut k_max = 0u32;
            let mut live_terms = Vec::new();
            for (exps, coeff) in gen {
                let mut lo = 0u32;
                let mut hi = 0u32;
                let mut dead = false;
                for (i, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    match orders[odo[i]] {
                        None => {
                            dead = true;
                            break;
                        }
                        Some(o) => {
                            lo += e * o;
                            hi += e * d as u32;
                        }
                    }
                }
                if dead {
                    continue;
                }
                let weight: u32 = exps.iter().sum();
                live_terms.push((exps, *coeff, weight));
                k_min = k_min.min(lo);
                k_max = k_max.max(hi);
            }
            if live_terms.is_empty() {
                continue; // generator vanishes identically on this curve
            }
            let mut found: Option<u32> = None;
            for k in k_min..=k_max {
                let mut total_coeff: i128 = 0;
                for (exps, coeff, weight) in &live_terms {
                    let c = coeff_of_term_at(&tables, &odo, exps, k as usize);
                    if c != 0 {
                        total_coeff +=
                            c * coeff * den_pows[(max_term_weight - weight) as usize];
                    }
                }
                if total_coeff != 0 {
                    found = Some(k);
                    break;
                }
            }
            if let Some(v) = found {
                all_zero = false;
                v_ideal = Some(v_ideal.map_or(v, |b| b.min(v)));
            }
        }

        if all_zero {
            if zero_witness.is_none() {
                zero_witness = Some(odo.clone());
            }
        } else if let Some(vi) = v_ideal {
            // Compare vi / v_curve against the current best, exactly.
            let better = match &best {
                None => true,
                Some((bi, bc, _)) => (vi as u64) * (*bc as u64) > (*bi as u64) * (v_curve as u64),
            };
            if better {
                best = Some((vi, v_curve, odo.clone()));
            }
        }

        advance(&mut odo);
    }

    let rebuild = |odo: &[usize]| -> CurveGerm {
        let comps: Vec<Vec<Rat>> = odo
            .iter()
            .map(|&v| {
                let poly = &tables[v][1];
                poly.iter()
                    .map(|&c| Rat::new(c.into(), den_i.into()))
                    .collect()
            })
            .collect();
        CurveGerm::new(comps, None).expect("search curves are valid germs")
    };

    let best = best.map(|(vi, vc, odo)| {
        let curve = rebuild(&odo);
        let orders = ideal
            .generators()
            .iter()
            .map(|g| curve.pullback_order(g))
            .collect();
        SearchWitness {
            ratio: Rat::new((vi as i64).into(), (vc as i64).into()),
            curve,
            curve_order: vc,
            orders,
        }
    });
    SearchOutcome {
        best,
        zero_witness: zero_witness.map(|odo| rebuild(&odo)),
        curves_tested: tested,
    }
}

fn int_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Coefficient of `t^k` in the product of the cached component powers for
/// one generator term.
fn coeff_of_term_at(
    tables: &[Vec<Vec<i128>>],
    odo: &[usize],
    exps: &[u32],
    k: usize,
) -> i128 {
    let mut factors: Vec<&Vec<i128>> = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            factors.push(&tables[odo[i]][e as usize]);
        }
    }
    match factors.len() {
        0 => {
            if k == 0 {
                1
            } else {
                0
            }
        }
        1 => factors[0].get(k).copied().unwrap_or(0),
        2 => {
            let (a, b) = (factors[0], factors[1]);
            let mut acc = 0i128;
            let lo = k.saturating_sub(b.len().saturating_sub(1));
            let hi = k.min(a.len().saturating_sub(1));
            for i in lo..=hi.min(k) {
                acc += a[i] * b.get(k - i).copied().unwrap_or(0);
            }
            acc
        }
        _ => {
            // Fold: full product of all but the last, then convolve at k.
            let mut prod = factors[0].clone();
            for f in &factors[1..factors.len() - 1] {
                prod = int_mul(&prod, f);
            }
            let last = factors[factors.len() - 1];
            let mut acc = 0i128;
            for (i, &c) in prod.iter().enumerate().take(k + 1) {
                if c != 0 {
                    acc += c * last.get(k - i).copied().unwrap_or(0);
                }
            }
            acc
        }
    }
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
    fn curve_order_examples() {
        let g1 = CurveGerm::from_int_components(&[&[0, 1], &[0, 0, -1]]).unwrap();
        assert_eq!(g1.curve_order(), 1);
        let g2 = CurveGerm::from_int_components(&[&[0, 0, 1], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(g2.curve_order(), 2);
        let g3 = CurveGerm::from_int_components(&[&[0, 0, 0, 0, 0, 1]]).unwrap();
        assert_eq!(g3.curve_order(), 5);
    }

    #[test]
    fn constructor_rejects_degenerate_germs() {
        assert_eq!(
            CurveGerm::from_int_components(&[&[1, 1], &[0, 1]]),
            Err(CurveError::NonVanishing { component: 0 })
        );
        assert_eq!(
            CurveGerm::from_int_components(&[&[0, 0], &[0]]),
            Err(CurveError::ConstantGerm)
        );
    }

    #[test]
    fn pullback_orders() {
        // gamma = (t, -t^2)
        let gamma = CurveGerm::from_int_components(&[&[0, 1], &[0, 0, -1]]).unwrap();
        let z2sq = poly(2, &[(&[0, 2], 1)]);
        assert_eq!(gamma.pullback_order(&z2sq), PullbackOrder::Finite(4));
        // z1^3 + z1 z2 cancels exactly along (t, -t^2).
        let killed = poly(2, &[(&[3, 0], 1), (&[1, 1], 1)]);
        assert_eq!(
            gamma.pullback_order(&killed),
            PullbackOrder::IdenticallyZeroToTruncation
        );
        // z1 on (t^k, 0)
        for k in 1..=4u32 {
            let mut comp = vec![0i64; k as usize + 1];
            comp[k as usize] = 1;
            let curve = CurveGerm::from_int_components(&[&comp, &[0]]).unwrap();
            assert_eq!(
                curve.pullback_order(&poly(2, &[(&[1, 0], 1)])),
                PullbackOrder::Finite(k)
            );
        }
    }

    #[test]
    fn ideal_order_on_curve() {
        let gamma = CurveGerm::from_int_components(&[&[0, 1], &[0, 0, -1]]).unwrap();
        let i = ideal(2, &[&[(&[3, 0], 1), (&[1, 1], 1)], &[(&[0, 2], 1)]]);
        assert_eq!(gamma.ideal_order(&i), PullbackOrder::Finite(4));
        assert_eq!(gamma.ideal_ratio(&i), Some(rat(4)));

        // The maximal ideal pulls back to the curve order.
        let maximal = ideal(2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        let cusp = CurveGerm::from_int_components(&[&[0, 0, 1], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(cusp.ideal_order(&maximal), PullbackOrder::Finite(2));
    }

    #[test]
    fn random_combinations_respect_the_generator_minimum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let i = ideal(2, &[&[(&[3, 0], 1), (&[1, 1], 1)], &[(&[0, 2], 1)]]);
        let gamma = CurveGerm::from_int_components(&[&[0, 1], &[0, 0, -1]]).unwrap();
        let base = gamma.ideal_order(&i).finite().unwrap();
        let mut equal = 0;
        let trials = 40;
        for _ in 0..trials {
            // h1 g1 + h2 g2 with random low-degree h's.
            let h: Vec<Polynomial> = (0..2)
                .map(|_| {
                    poly(
                        2,
                        &[
                            (&[0, 0], rng.gen_range(-20..=20)),
                            (&[1, 0], rng.gen_range(-20..=20)),
                            (&[0, 1], rng.gen_range(-20..=20)),
                        ],
                    )
                })
                .collect();
            let combo = &(&h[0] * &i.generators()[0]) + &(&h[1] * &i.generators()[1]);
            match gamma.pullback_order(&combo) {
                PullbackOrder::Finite(v) => {
                    assert!(v >= base);
                    if v == base {
                        equal += 1;
                    }
                }
                PullbackOrder::IdenticallyZeroToTruncation => {}
            }
        }
        // Generic combinations attain the minimum.
        assert!(equal * 10 >= trials * 9, "equality in only {equal}/{trials}");
    }

    #[test]
    fn enumeration_counts() {
        let pool = pool_of_height(1);
        assert_eq!(pool.len(), 3);
        // n=1, d=1: only (t) and (-t); with the documented count for
        // H = {0, 1}: a pool without -1 is rejected, so check {0,1,-1}.
        let curves: Vec<CurveGerm> = enumerate_curves(2, 2, &pool).collect();
        assert_eq!(curves.len(), 80);
        // Duplicate-free.
        let mut seen = std::collections::BTreeSet::new();
        for c in &curves {
            seen.insert(format!("{c}"));
        }
        assert_eq!(seen.len(), 80);
    }

    #[test]
    fn composition_bound_and_multiplicativity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let pool = pool_of_height(1);
        let curves: Vec<CurveGerm> = enumerate_curves(2, 2, &pool).collect();
        for _ in 0..60 {
            let g = random_poly(&mut rng, 2, 3);
            let h = random_poly(&mut rng, 2, 2);
            let curve = &curves[rng.gen_range(0..curves.len())];
            let vg = curve.pullback_order(&g);
            let vh = curve.pullback_order(&h);
            if g.is_zero() || h.is_zero() {
                continue;
            }
            if let (PullbackOrder::Finite(a), PullbackOrder::Finite(b)) = (vg, vh) {
                // Composition bound.
                if let crate::poly::Order::Finite(og) = g.lowest_order() {
                    assert!(a >= og * curve.curve_order());
                }
                // Multiplicativity.
                let prod = curve.pullback_order(&(&g * &h));
                assert_eq!(prod, PullbackOrder::Finite(a + b));
            }
        }
    }

    fn random_poly(rng: &mut impl rand::Rng, nvars: usize, deg: u32) -> Polynomial {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let mut exps = vec![0u32; nvars];
            let mut left = deg;
            for e in exps.iter_mut() {
                *e = rng.gen_range(0..=left);
                left -= *e;
            }
            terms.push((exps, rat(rng.gen_range(-3..=3))));
        }
        Polynomial::from_terms(nvars, terms)
    }

    #[test]
    fn reparameterization_scales_orders() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let pool = pool_of_height(1);
        let curves: Vec<CurveGerm> = enumerate_curves(2, 2, &pool).collect();
        for _ in 0..50 {
            let g = random_poly(&mut rng, 2, 3);
            if g.is_zero() {
                continue;
            }
            let curve = &curves[rng.gen_range(0..curves.len())];
            let k = rng.gen_range(2..=4u32);
            let rep = curve.reparameterize(k);
            assert_eq!(rep.curve_order(), k * curve.curve_order());
            match (curve.pullback_order(&g), rep.pullback_order(&g)) {
                (PullbackOrder::Finite(a), PullbackOrder::Finite(b)) => {
                    assert_eq!(b, k * a)
                }
                (
                    PullbackOrder::IdenticallyZeroToTruncation,
                    PullbackOrder::IdenticallyZeroToTruncation,
                ) => {}
                other => panic!("mismatched pullback behavior: {other:?}"),
            }
        }
    }

    #[test]
    fn search_finds_the_cusp_witness() {
        // (z1^3, z2^2): exact first order of contact is 3, witnessed by
        // the cusp parameterization.
        let i = ideal(2, &[&[(&[3, 0], 1)], &[(&[0, 2], 1)]]);
        let out = type1_search_lower_bound(&i, &SearchParams::with_height(3, 1));
        let best = out.best.unwrap();
        assert_eq!(best.ratio, rat(3));
        assert!(out.zero_witness.is_none());
        // The witness re-validates: recomputing its pullbacks reproduces
        // the claimed ratio.
        let v = best.curve.ideal_order(&i).finite().unwrap();
        assert_eq!(
            rat(v as i64) / rat(best.curve.curve_order() as i64),
            best.ratio
        );
    }

    #[test]
    fn search_on_the_maximal_ideal() {
        let i = ideal(2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        let out = type1_search_lower_bound(&i, &SearchParams::with_height(2, 1));
        assert_eq!(out.best.unwrap().ratio, rat(1));
    }

    #[test]
    fn search_in_three_variables_reports_zero_witness() {
        // (z1^3 - z2 z3, z2^2) contains the z3-axis in its zero set, so
        // the search finds both a finite lower bound >= 3 and a curve
        // killing every generator.
        let i = ideal(3, &[&[(&[3, 0, 0], 1), (&[0, 1, 1], -1)], &[(&[0, 2, 0], 1)]]);
        let out = type1_search_lower_bound(&i, &SearchParams::with_height(2, 1));
        let best = out.best.unwrap();
        assert!(best.ratio >= rat(3));
        assert!(out.zero_witness.is_some());
        let witness = out.zero_witness.unwrap();
        assert_eq!(
            witness.ideal_order(&i),
            PullbackOrder::IdenticallyZeroToTruncation
        );
    }
}
