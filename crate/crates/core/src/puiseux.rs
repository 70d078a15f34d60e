//! Newton-Puiseux decomposition of plane curve germs at the origin.
//!
//! A nonzero `f(x, y)` with `f(0,0) = 0` splits locally into finitely many
//! irreducible branches. Each branch is returned as a parameterization
//! `t -> (t^e, phi(t))` (or the swapped form for the `x = 0` axis), with
//! `phi` a truncated series whose coefficients live in an explicit tower
//! of number fields. One representative per conjugacy class is produced:
//! Galois-conjugate branches and reparameterizations `t -> zeta t` carry
//! identical contact data against rational polynomials.
//!
//! The expansion walks the Newton polygon: each segment of slope `p/q`
//! contributes roots of its characteristic polynomial, every root either
//! lies in the current field or extends the tower, and the loop repeats
//! on the substituted polynomial until the requested precision is filled.

use num_integer::Integer;
use num_traits::Zero;

use crate::poly::{Polynomial, Rat};
use crate::tower::{NfPoly, NfVec, Tower, TowerError};
use crate::unipoly::{bi_squarefree_decomposition, BiPoly};

/// Refinement cap on the requested series precision.
pub const TRUNC_CAP: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
pub enum PuiseuxError {
    /// Input violates a precondition (zero polynomial, nonzero constant term).
    InvalidInput(String),
    /// Branches did not separate below the precision cap.
    RefinementNeeded { suggested: u32 },
    /// Extension construction failed (degree cap, shifts exhausted).
    Extension(TowerError),
    /// A computed branch failed back-substitution.
    ValidationFailed(String),
}

impl std::fmt::Display for PuiseuxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PuiseuxError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            PuiseuxError::RefinementNeeded { suggested } => {
                write!(f, "branches not separated; retry with precision {suggested}")
            }
            PuiseuxError::Extension(e) => write!(f, "extension construction: {e}"),
            PuiseuxError::ValidationFailed(m) => write!(f, "branch validation failed: {m}"),
        }
    }
}

impl std::error::Error for PuiseuxError {}

impl From<TowerError> for PuiseuxError {
    fn from(e: TowerError) -> Self {
        PuiseuxError::Extension(e)
    }
}

/// One local branch of a plane curve germ.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    /// Coefficient field of the parameterization.
    pub tower: Tower,
    /// Ramification index: the first component is `t^e`.
    pub e: u32,
    /// Series coefficients of `phi`, indexed by `t`-exponent.
    pub phi: Vec<NfVec>,
    /// Exponents below this bound are exact.
    pub trunc: u32,
    /// `phi` is exactly a polynomial; the parameterization is not truncated.
    pub exact: bool,
    /// Multiplicity of the squarefree component this branch lies on.
    pub multiplicity: u32,
    /// When set, the parameterization is `t -> (phi(t), t^e)`; used for the
    /// `x = 0` axis, which a `y`-expansion cannot see.
    pub swapped: bool,
}

/// Order of a generator pullback through a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchPullback {
    Finite(u32),
    /// Vanishes below the truncation bound; `exact` certifies it is
    /// genuinely zero (polynomial data, no truncation involved).
    Zero { exact: bool },
}

impl PuiseuxBranch {
    /// Order of vanishing of the parameterized curve.
    pub fn curve_order(&self) -> u32 {
        let ord_phi = self.phi.iter().position(|c| !c.iter().all(|x| x.is_zero()));
        match ord_phi {
            Some(o) => (o as u32).min(self.e),
            None => self.e,
        }
    }

    /// Leading exponent data `(ord phi, e)`; the slope of the Newton
    /// polygon segment the branch came from is `ord phi / e`.
    pub fn leading_ratio(&self) -> Option<(u32, u32)> {
        self.phi
            .iter()
            .position(|c| !c.iter().all(|x| x.is_zero()))
            .map(|o| (o as u32, self.e))
    }

    /// The two components as series over the tower, in unswapped order,
    /// truncated at `len` coefficients.
    fn components(&self, len: usize) -> [Vec<NfVec>; 2] {
        let zero = self.tower.zero();
        let mut xs = vec![zero.clone(); len];
        if (self.e as usize) < len {
            xs[self.e as usize] = self.tower.one();
        }
        let mut ys = vec![zero; len];
        for (i, c) in self.phi.iter().enumerate() {
            if i < len {
                ys[i] = c.clone();
            }
        }
        if self.swapped {
            [ys, xs]
        } else {
            [xs, ys]
        }
    }

    /// Order of `g` composed with the branch. `g` must be a two-variable
    /// polynomial over the rationals.
    pub fn pullback(&self, g: &Polynomial) -> BranchPullback {
        assert_eq!(g.nvars(), 2, "branch pullback expects two variables");
        let cap = if self.exact {
            // Exact parameterization: beyond this bound the composite has
            // no terms at all, so an all-zero prefix certifies zero.
            let dx = g.degree_in(0).unwrap_or(0);
            let dy = g.degree_in(1).unwrap_or(0);
            let phi_deg = self.phi.len() as u32;
            (self.e * dx + phi_deg * dy + 1) as usize
        } else {
            self.trunc as usize
        };
        let [xs, ys] = self.components(cap);
        let t = &self.tower;
        let mut x_pows: Vec<Vec<NfVec>> = vec![series_one(t, cap)];
        let mut y_pows: Vec<Vec<NfVec>> = vec![series_one(t, cap)];
        let mut acc = vec![t.zero(); cap];
        for (exps, c) in g.terms() {
            let (i, j) = (exps[0] as usize, exps[1] as usize);
            while x_pows.len() <= i {
                let next = series_mul(t, x_pows.last().unwrap(), &xs, cap);
                x_pows.push(next);
            }
            while y_pows.len() <= j {
                let next = series_mul(t, y_pows.last().unwrap(), &ys, cap);
                y_pows.push(next);
            }
            let prod = series_mul(t, &x_pows[i], &y_pows[j], cap);
            for (slot, val) in acc.iter_mut().zip(prod) {
                *slot = t.add(slot, &t.scale(&val, c));
            }
        }
        match acc.iter().position(|c| !t.is_zero_elem(c)) {
            Some(o) => BranchPullback::Finite(o as u32),
            None => BranchPullback::Zero { exact: self.exact },
        }
    }

    /// Contact ratio `v(g o branch) / v(branch)`.
    pub fn ratio(&self, g: &Polynomial) -> Option<Rat> {
        match self.pullback(g) {
            BranchPullback::Finite(v) => Some(Rat::new(
                (v as i64).into(),
                (self.curve_order() as i64).into(),
            )),
            BranchPullback::Zero { .. } => None,
        }
    }

    /// Rational series coefficients when the tower is trivial.
    pub fn phi_rational(&self) -> Option<Vec<Rat>> {
        if self.tower.height() != 0 {
            // Coefficients may still all be rational inside an extension.
            let mut out = Vec::with_capacity(self.phi.len());
            for c in &self.phi {
                out.push(self.tower.to_rat(c)?);
            }
            return Some(out);
        }
        Some(self.phi.iter().map(|c| c[0].clone()).collect())
    }

    /// Readable parameterization like `(t^2, -t^3 + ...)`.
    pub fn describe(&self) -> String {
        let x = if self.e == 1 {
            "t".to_string()
        } else {
            format!("t^{}", self.e)
        };
        let mut terms = Vec::new();
        for (i, c) in self.phi.iter().enumerate() {
            if self.tower.is_zero_elem(c) {
                continue;
            }
            let cs = self.tower.elem_to_string(c);
            let pow = if i == 1 {
                "t".to_string()
            } else {
                format!("t^{i}")
            };
            match cs.as_str() {
                "1" => terms.push(pow),
                "-1" => terms.push(format!("-{pow}")),
                _ if cs.contains(' ') || cs.contains('+') => {
                    terms.push(format!("({cs})*{pow}"))
                }
                _ => terms.push(format!("{cs}*{pow}")),
            }
        }
        let mut phi = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        };
        if !self.exact && !terms.is_empty() {
            phi.push_str(" + ...");
        }
        if self.swapped {
            format!("t -> ({phi}, {x})")
        } else {
            format!("t -> ({x}, {phi})")
        }
    }
}

fn series_one(t: &Tower, cap: usize) -> Vec<NfVec> {
    let mut s = vec![t.zero(); cap];
    if cap > 0 {
        s[0] = t.one();
    }
    s
}

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

// ---------------------------------------------------------------------------
// The expansion state machine.
// ---------------------------------------------------------------------------

/// Working bivariate polynomial with tower coefficients: `ys[j][i]` is the
/// coefficient of `x^i y^j`.
#[derive(Clone)]
struct TPoly {
    ys: Vec<Vec<NfVec>>,
}

impl TPoly {
    fn from_bipoly(tower: &Tower, b: &BiPoly) -> TPoly {
        TPoly {
            ys: b
                .ys
                .iter()
                .map(|col| col.iter().map(|c| tower.from_rat(c)).collect())
                .collect(),
        }
    }

    fn embed(&self, from: &Tower, to: &Tower) -> TPoly {
        TPoly {
            ys: self
                .ys
                .iter()
                .map(|col| col.iter().map(|c| to.embed(from, c)).collect())
                .collect(),
        }
    }

    /// Minimal x-exponent with a nonzero coefficient, per y-column.
    fn column_minima(&self, tower: &Tower) -> Vec<Option<usize>> {
        self.ys
            .iter()
            .map(|col| col.iter().position(|c| !tower.is_zero_elem(c)))
            .collect()
    }
}

struct Node {
    tower: Tower,
    poly: TPoly,
    /// Remaining x-precision wanted from this node's solutions.
    budget: i64,
    /// Product of the ramifications so far.
    e: u32,
    /// Accumulated series terms (t-exponent in current scaling, coefficient).
    terms: Vec<(u64, NfVec)>,
    /// Exponent offset of the current unknown inside the final series.
    offset: u64,
    /// Set once a simple characteristic root pins the path to one branch.
    separated: bool,
}

struct Expander {
    requested: u32,
    branches: Vec<PuiseuxBranch>,
    multiplicity: u32,
}

impl Expander {
    fn emit(&mut self, node: &Node, exact: bool) {
        let max_exp = node.terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let len = (max_exp + 1).max(1) as usize;
        let mut phi = vec![node.tower.zero(); len];
        for (exp, c) in &node.terms {
            phi[*exp as usize] = node.tower.add(&phi[*exp as usize], c);
        }
        self.branches.push(PuiseuxBranch {
            tower: node.tower.clone(),
            e: node.e,
            phi,
            trunc: self.requested * node.e,
            exact,
            multiplicity: self.multiplicity,
            swapped: false,
        });
    }

    fn expand(&mut self, node: Node) -> Result<(), PuiseuxError> {
        let tower = &node.tower;
        let minima = node.poly.column_minima(tower);
        debug_assert!(minima.len() >= 2, "y-degree must stay positive");

        // Exact polynomial solution: y | f.
        let col0_zero = minima.first().is_some_and(|m| m.is_none());
        if col0_zero {
            self.emit(&node, true);
        }

        // Newton polygon of the column minima; keep segments with positive
        // slope (x-exponent strictly decreasing as the y-exponent grows).
        let points: Vec<(i64, i64)> = minima
            .iter()
            .enumerate()
            .filter_map(|(j, m)| m.map(|i| (j as i64, i as i64)))
            .collect();
        let hull = lower_hull(&points);

        let mut had_deferred_split = false;
        for w in hull.windows(2) {
            let (j1, i1) = w[0];
            let (j2, i2) = w[1];
            if i2 >= i1 {
                continue; // slope <= 0: solutions do not vanish at x = 0
            }
            let di = i1 - i2;
            let dj = j2 - j1;
            let g = di.gcd(&dj);
            let p = (di / g) as u64;
            let q = (dj / g) as u64;

            // Budget: following this segment spends p of the precision.
            let child_budget = (q as i64) * node.budget - (p as i64);
            if child_budget <= 0 {
                if !node.separated {
                    had_deferred_split = true;
                }
                continue;
            }

            // Characteristic polynomial along the segment.
            let mut phi_poly: NfPoly = Vec::with_capacity(g as usize + 1);
            for m in 0..=g {
                let i = (i1 - m * p as i64) as usize;
                let j = (j1 + m * q as i64) as usize;
                let c = node
                    .poly
                    .ys
                    .get(j)
                    .and_then(|col| col.get(i))
                    .cloned()
                    .unwrap_or_else(|| tower.zero());
                phi_poly.push(c);
            }
            let phi_poly = tower.np_normalize(phi_poly);
            debug_assert_eq!(phi_poly.len() as i64, g + 1);
            debug_assert!(!tower.is_zero_elem(&phi_poly[0]), "segment endpoints carry terms");

            for (factor, mult) in tower.factor(&phi_poly)? {
                // Adjoin the root u of this factor.
                let (tower_u, u) = adjoin_root(tower, &factor)?;
                // Then a q-th root of u; any irreducible factor of T^q - u
                // yields a twist-equivalent representative.
                let (tower_c, c) = if q == 1 {
                    (tower_u.clone(), u.clone())
                } else {
                    let mut tq: NfPoly = vec![tower_u.neg(&u)];
                    for _ in 0..q - 1 {
                        tq.push(tower_u.zero());
                    }
                    tq.push(tower_u.one());
                    let factors = tower_u.factor_squarefree(&tq)?;
                    let first = factors
                        .into_iter()
                        .next()
                        .expect("T^q - u has at least one factor");
                    adjoin_root(&tower_u, &first)?
                };

                let poly_c = node.poly.embed(tower, &tower_c);
                let (next_poly, _nu) = substitute_step(&tower_c, &poly_c, p, q, &c);
                let mut terms: Vec<(u64, NfVec)> = node
                    .terms
                    .iter()
                    .map(|(exp, coeff)| (exp * q, tower_c.embed(tower, coeff)))
                    .collect();
                let offset = node.offset * q + p;
                terms.push((offset, c.clone()));
                let child = Node {
                    tower: tower_c,
                    poly: next_poly,
                    budget: child_budget,
                    e: node.e * q as u32,
                    terms,
                    offset,
                    separated: node.separated || mult == 1,
                };
                self.expand(child)?;
            }
        }

        if had_deferred_split {
            return Err(PuiseuxError::RefinementNeeded {
                suggested: (self.requested * 2).min(TRUNC_CAP),
            });
        }
        // Paths whose continuation lies entirely beyond the precision
        // horizon: emit the truncated branch once separated.
        if !col0_zero {
            let within: bool = hull.windows(2).any(|w| {
                let (j1, i1) = (w[0].0, w[0].1);
                let (j2, i2) = (w[1].0, w[1].1);
                if i2 >= i1 {
                    return false;
                }
                let di = i1 - i2;
                let dj = j2 - j1;
                let g = di.gcd(&dj);
                let p = di / g;
                let q = dj / g;
                q * node.budget - p > 0
            });
            if !within {
                if node.separated {
                    self.emit(&node, false);
                } else if !node.terms.is_empty() {
                    return Err(PuiseuxError::RefinementNeeded {
                        suggested: (self.requested * 2).min(TRUNC_CAP),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Adjoin a root of a monic irreducible polynomial; linear factors stay in
/// the same field.
fn adjoin_root(tower: &Tower, factor: &NfPoly) -> Result<(Tower, NfVec), PuiseuxError> {
    if factor.len() == 2 {
        Ok((tower.clone(), tower.neg(&factor[0])))
    } else {
        let bigger = tower.extend_unchecked(factor.clone())?;
        let root = bigger.generator(bigger.height() - 1);
        Ok((bigger, root))
    }
}

/// `f1(x, y1) = f(x^q, x^p (c + y1)) / x^nu` with `nu` the minimal weight.
fn substitute_step(tower: &Tower, poly: &TPoly, p: u64, q: u64, c: &NfVec) -> (TPoly, u64) {
    let dy = poly.ys.len() - 1;
    // Powers of c up to the y-degree.
    let mut c_pows: Vec<NfVec> = vec![tower.one()];
    for _ in 0..dy {
        c_pows.push(tower.mul(c_pows.last().unwrap(), c));
    }
    // Minimal weight over the support.
    let mut nu = u64::MAX;
    for (j, col) in poly.ys.iter().enumerate() {
        for (i, coeff) in col.iter().enumerate() {
            if !tower.is_zero_elem(coeff) {
                nu = nu.min(q * i as u64 + p * j as u64);
            }
        }
    }
    debug_assert!(nu < u64::MAX);

    let mut max_exp = 0u64;
    for (j, col) in poly.ys.iter().enumerate() {
        if let Some(i) = col.iter().rposition(|c| !tower.is_zero_elem(c)) {
            max_exp = max_exp.max(q * i as u64 + p * j as u64 - nu);
        }
    }
    let mut out: Vec<Vec<NfVec>> = vec![vec![tower.zero(); max_exp as usize + 1]; dy + 1];
    // Pascal triangle for the binomial weights.
    let mut binom = vec![vec![1u64; 1]; dy + 1];
    for j in 1..=dy {
        let mut row = vec![1u64; j + 1];
        for k in 1..j {
            row[k] = binom[j - 1][k - 1] + binom[j - 1][k];
        }
        binom[j] = row;
    }
    for (j, col) in poly.ys.iter().enumerate() {
        for (i, coeff) in col.iter().enumerate() {
            if tower.is_zero_elem(coeff) {
                continue;
            }
            let base = q * i as u64 + p * j as u64 - nu;
            for k in 0..=j {
                let w = Rat::from_integer(binom[j][k].into());
                let scaled = tower.scale(&tower.mul(coeff, &c_pows[j - k]), &w);
                let slot = &mut out[k][base as usize];
                *slot = tower.add(slot, &scaled);
            }
        }
    }
    (TPoly { ys: out }, nu)
}

/// Lower hull of `(j, i)` points sorted by `j`, strict convexity.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Keep b only if it lies strictly below the chord a-p.
            let cross = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

/// Decompose `f` into branches with series precision `n` in the parameter.
pub fn branch_decompose_with(
    f: &Polynomial,
    n: u32,
) -> Result<Vec<PuiseuxBranch>, PuiseuxError> {
    if f.nvars() != 2 {
        return Err(PuiseuxError::InvalidInput(
            "branch decomposition expects two variables".into(),
        ));
    }
    if f.is_zero() {
        return Err(PuiseuxError::InvalidInput("zero polynomial".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(PuiseuxError::InvalidInput(
            "polynomial does not vanish at the origin".into(),
        ));
    }
    let bi = BiPoly::from_polynomial(f);
    let decomp = bi_squarefree_decomposition(&bi);
    let mut branches = Vec::new();
    if decomp.x_power > 0 {
        // The x = 0 axis, visible only after swapping coordinates.
        let q = Tower::rationals();
        branches.push(PuiseuxBranch {
            tower: q,
            e: 1,
            phi: vec![vec![Rat::zero()]],
            trunc: n,
            exact: true,
            multiplicity: decomp.x_power,
            swapped: true,
        });
    }
    for (component, mult) in &decomp.factors {
        let poly = component.to_polynomial();
        if !poly.constant_term().is_zero() {
            continue; // this component does not pass through the origin
        }
        let tower = Tower::rationals();
        let mut expander = Expander {
            requested: n,
            branches: Vec::new(),
            multiplicity: *mult,
        };
        let node = Node {
            tower: tower.clone(),
            poly: TPoly::from_bipoly(&tower, component),
            budget: n as i64,
            e: 1,
            terms: Vec::new(),
            offset: 0,
            separated: false,
        };
        expander.expand(node)?;
        branches.extend(expander.branches);
    }
    for b in &branches {
        validate_branch(f, b)?;
    }
    Ok(branches)
}

/// Decompose with the default precision `3 deg(f) + 8`, doubling on
/// refinement failures up to the cap.
pub fn branch_decompose(f: &Polynomial) -> Result<Vec<PuiseuxBranch>, PuiseuxError> {
    let deg = f.total_degree().unwrap_or(1);
    let mut n = 3 * deg + 8;
    loop {
        match branch_decompose_with(f, n) {
            Err(PuiseuxError::RefinementNeeded { .. }) if n < TRUNC_CAP => {
                n = (n * 2).min(TRUNC_CAP);
            }
            other => return other,
        }
    }
}

/// Decompose requesting at least `min_precision` exact parameter exponents.
pub fn branch_decompose_precise(
    f: &Polynomial,
    min_precision: u32,
) -> Result<Vec<PuiseuxBranch>, PuiseuxError> {
    branch_decompose_bounded(f, min_precision, TRUNC_CAP)
}

/// Decompose with both a requested precision and a hard cap on it. When
/// the cap is too small to separate branches, the refinement error is
/// surfaced so callers can flag truncation-limited results.
pub fn branch_decompose_bounded(
    f: &Polynomial,
    min_precision: u32,
    cap: u32,
) -> Result<Vec<PuiseuxBranch>, PuiseuxError> {
    let cap = cap.clamp(2, TRUNC_CAP);
    let deg = f.total_degree().unwrap_or(1);
    let mut n = (3 * deg + 8).max(min_precision).min(cap);
    loop {
        match branch_decompose_with(f, n) {
            Err(PuiseuxError::RefinementNeeded { .. }) if n < cap => {
                n = (n * 2).min(cap);
            }
            other => return other,
        }
    }
}

/// Per-branch contact quotient `v(g o branch) / v(branch)`.
pub fn branch_ratio(g: &Polynomial, b: &PuiseuxBranch) -> BranchPullback {
    b.pullback(g)
}

fn validate_branch(f: &Polynomial, b: &PuiseuxBranch) -> Result<(), PuiseuxError> {
    match b.pullback(f) {
        BranchPullback::Zero { .. } => Ok(()),
        BranchPullback::Finite(v) => Err(PuiseuxError::ValidationFailed(format!(
            "residual order {v} below truncation {} for branch {}",
            b.trunc,
            b.describe()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn poly2(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    /// x^3 + x y + y^2, the a = b = 1 slice from the worked example.
    fn slice_poly() -> Polynomial {
        poly2(&[(&[3, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
    }

    #[test]
    fn slice_has_two_unramified_branches() {
        let branches = branch_decompose(&slice_poly()).unwrap();
        assert_eq!(branches.len(), 2);
        for b in &branches {
            assert_eq!(b.e, 1);
            assert_eq!(b.tower.height(), 0);
            assert_eq!(b.multiplicity, 1);
            assert!(!b.swapped);
        }
        // Quadratic-formula oracle: the two y-roots of y^2 + xy + x^3 are
        //   y = -x^2 - x^3 - 2x^4 - 5x^5 - ...   (slope-2 segment)
        //   y = -x + x^2 + x^3 + 2x^4 + 5x^5 + ... (slope-1 segment)
        let mut series: Vec<Vec<Rat>> = branches
            .iter()
            .map(|b| b.phi_rational().unwrap())
            .collect();
        series.sort_by_key(|s| s.iter().position(|c| !c.is_zero()));
        let lead1 = &series[0];
        assert_eq!(lead1[1], rat(-1));
        assert_eq!(lead1[2], rat(1));
        assert_eq!(lead1[3], rat(1));
        assert_eq!(lead1[4], rat(2));
        assert_eq!(lead1[5], rat(5));
        let lead2 = &series[1];
        assert_eq!(lead2[1], rat(0));
        assert_eq!(lead2[2], rat(-1));
        assert_eq!(lead2[3], rat(-1));
        assert_eq!(lead2[4], rat(-2));
        assert_eq!(lead2[5], rat(-5));
    }

    #[test]
    fn cusp_is_one_ramified_branch() {
        // y^2 - x^3 -> (t^2, t^3), exactly.
        let f = poly2(&[(&[0, 2], 1), (&[3, 0], -1)]);
        let branches = branch_decompose(&f).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.e, 2);
        assert!(b.exact);
        assert_eq!(b.tower.height(), 0);
        let phi = b.phi_rational().unwrap();
        assert_eq!(phi.iter().position(|c| !c.is_zero()), Some(3));
        assert_eq!(phi[3], rat(1));
        assert_eq!(b.curve_order(), 2);
    }

    #[test]
    fn coordinate_axes_split() {
        let f = poly2(&[(&[1, 1], 1)]); // x y
        let branches = branch_decompose(&f).unwrap();
        assert_eq!(branches.len(), 2);
        let swapped: Vec<bool> = branches.iter().map(|b| b.swapped).collect();
        assert!(swapped.contains(&true) && swapped.contains(&false));
        for b in &branches {
            assert!(b.exact);
            assert_eq!(b.curve_order(), 1);
        }
    }

    #[test]
    fn pullback_orders_on_the_slice() {
        let branches = branch_decompose(&slice_poly()).unwrap();
        // Find the slope-2 branch (phi starts at t^2).
        let b = branches
            .iter()
            .find(|b| b.leading_ratio() == Some((2, 1)))
            .unwrap();
        // v(z2^2 o gamma) = 4 on the curve with phi ~ -t^2.
        let g = poly2(&[(&[0, 2], 1)]);
        assert_eq!(b.pullback(&g), BranchPullback::Finite(4));
        assert_eq!(b.ratio(&g), Some(rat(4)));
        // The defining polynomial itself dies on its own branch.
        assert!(matches!(
            b.pullback(&slice_poly()),
            BranchPullback::Zero { .. }
        ));
    }

    #[test]
    fn m_family_branch_ratio() {
        // x^m + x y + y^2 with m = 4: the slope-(m-1) branch gives
        // v(y^m o gamma) = m (m - 1) = 12.
        let m = 4u32;
        let f = poly2(&[(&[m, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        let branches = branch_decompose(&f).unwrap();
        let b = branches
            .iter()
            .find(|b| b.leading_ratio() == Some((m - 1, 1)))
            .unwrap();
        let g = Polynomial::var(2, 1).pow(m);
        assert_eq!(b.pullback(&g), BranchPullback::Finite(m * (m - 1)));
    }

    #[test]
    fn quadratic_extension_branch() {
        // y^2 + x^3: c^2 = -1, so the branch lives over a quadratic field.
        let f = poly2(&[(&[0, 2], 1), (&[3, 0], 1)]);
        let branches = branch_decompose(&f).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.e, 2);
        assert_eq!(b.tower.dim(), 2);
        // v(y^2 o gamma) = 6, curve order 2, ratio 3.
        let g = poly2(&[(&[0, 2], 1)]);
        assert_eq!(b.pullback(&g), BranchPullback::Finite(6));
        assert_eq!(b.ratio(&g), Some(rat(3)));
    }

    #[test]
    fn polygon_slopes_match_leading_ratios() {
        let cases = [
            (slice_poly(), vec![(1u32, 1u32), (2, 1)]),
            (poly2(&[(&[0, 2], 1), (&[3, 0], -1)]), vec![(3, 2)]),
        ];
        for (f, expected) in cases {
            let branches = branch_decompose(&f).unwrap();
            let mut ratios: Vec<(u32, u32)> = branches
                .iter()
                .filter_map(|b| b.leading_ratio())
                .collect();
            ratios.sort();
            assert_eq!(ratios, expected);
        }
    }

    #[test]
    fn ramification_indices_sum_to_weierstrass_degree() {
        // For y-general squarefree f with no x-axis component, the sum of
        // the e_k over rational-branch decompositions equals deg_y.
        for f in [
            slice_poly(),
            poly2(&[(&[0, 2], 1), (&[3, 0], -1)]),
            poly2(&[(&[0, 3], 1), (&[4, 0], 1), (&[1, 1], 1)]),
        ] {
            let branches = branch_decompose(&f).unwrap();
            let total: u32 = branches.iter().map(|b| b.e).sum();
            assert_eq!(total, f.degree_in(1).unwrap());
        }
    }

    #[test]
    fn resultant_counts_total_intersection() {
        // For g coprime to f, sum of v(g o gamma_k) over the branches
        // equals the t-order of Res_y(f, g) along x = t.
        use crate::unipoly::{bi_resultant_y, BiPoly};
        let cases = [
            (slice_poly(), poly2(&[(&[0, 1], 1)])),
            (
                poly2(&[(&[0, 2], 1), (&[3, 0], -1)]),
                poly2(&[(&[0, 1], 1), (&[2, 0], -1)]),
            ),
        ];
        for (f, g) in cases {
            let branches = branch_decompose(&f).unwrap();
            let mut total = 0u32;
            for b in &branches {
                match b.pullback(&g) {
                    BranchPullback::Finite(v) => total += v,
                    BranchPullback::Zero { .. } => panic!("g must be coprime to f"),
                }
            }
            let res = bi_resultant_y(
                &BiPoly::from_polynomial(&f),
                &BiPoly::from_polynomial(&g),
            );
            let ord = res.iter().position(|c| !c.is_zero()).unwrap() as u32;
            assert_eq!(total, ord);
        }
    }

    #[test]
    fn non_reduced_input_reports_multiplicity() {
        // (y - x)^2 (y^2 - x^3)
        let line = poly2(&[(&[0, 1], 1), (&[1, 0], -1)]);
        let cusp = poly2(&[(&[0, 2], 1), (&[3, 0], -1)]);
        let f = &(&line * &line) * &cusp;
        let branches = branch_decompose(&f).unwrap();
        assert_eq!(branches.len(), 2);
        let mut mults: Vec<u32> = branches.iter().map(|b| b.multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            branch_decompose(&Polynomial::zero(2)),
            Err(PuiseuxError::InvalidInput(_))
        ));
        let nonvanishing = poly2(&[(&[0, 0], 1), (&[1, 0], 1)]);
        assert!(matches!(
            branch_decompose(&nonvanishing),
            Err(PuiseuxError::InvalidInput(_))
        ));
    }

    #[test]
    fn back_substitution_residuals_vanish() {
        for f in [
            slice_poly(),
            poly2(&[(&[0, 2], 1), (&[3, 0], 1)]),
            poly2(&[(&[0, 3], 1), (&[5, 0], -1), (&[1, 1], 2)]),
        ] {
            // branch_decompose validates internally; reaching here means
            // every branch back-substituted to zero below its truncation.
            let branches = branch_decompose(&f).unwrap();
            assert!(!branches.is_empty());
        }
    }
}
