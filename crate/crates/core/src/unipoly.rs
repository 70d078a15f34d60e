//! Dense univariate polynomials over the rationals, plus the bivariate
//! helpers (primitive-PRS gcd, squarefree decomposition, resultants)
//! that the branch machinery builds on.
//!
//! A `QPoly` is a coefficient vector with no trailing zeros; the zero
//! polynomial is the empty vector.

use num_traits::{One, Zero};

use crate::poly::{Polynomial, Rat};

pub type QPoly = Vec<Rat>;

pub fn qp_normalize(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn qp_zero() -> QPoly {
    Vec::new()
}

pub fn qp_const(c: Rat) -> QPoly {
    qp_normalize(vec![c])
}

pub fn qp_is_zero(p: &QPoly) -> bool {
    p.is_empty()
}

/// Degree, or `None` for the zero polynomial.
pub fn qp_deg(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn qp_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    qp_normalize(out)
}

pub fn qp_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qp_normalize(out)
}

pub fn qp_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return qp_zero();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    qp_normalize(out)
}

pub fn qp_scale(a: &QPoly, c: &Rat) -> QPoly {
    if c.is_zero() {
        return qp_zero();
    }
    a.iter().map(|x| x * c).collect()
}

/// Quotient and remainder; the divisor must be nonzero.
pub fn qp_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut rem = a.clone();
    let mut quot = vec![Rat::zero(); a.len().saturating_sub(db)];
    loop {
        let Some(dr) = qp_deg(&rem) else { break };
        if dr < db {
            break;
        }
        let factor = rem.last().unwrap() / &lead;
        let shift = dr - db;
        quot[shift] = factor.clone();
        for (j, cb) in b.iter().enumerate() {
            let delta = &factor * cb;
            rem[shift + j] -= delta;
        }
        rem = qp_normalize(rem);
    }
    (qp_normalize(quot), rem)
}

/// Exact division; panics if the division is not exact.
pub fn qp_div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let (q, r) = qp_divrem(a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn qp_monic(p: &QPoly) -> QPoly {
    match p.last() {
        None => qp_zero(),
        Some(l) => {
            let inv = Rat::one() / l;
            qp_scale(p, &inv)
        }
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn qp_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let (_, r) = qp_divrem(&a, &b);
        a = b;
        b = r;
    }
    qp_monic(&a)
}

pub fn qp_derivative(p: &QPoly) -> QPoly {
    if p.len() <= 1 {
        return qp_zero();
    }
    qp_normalize(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect(),
    )
}

pub fn qp_eval(p: &QPoly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Squarefree decomposition: returns pairs (factor, multiplicity) with the
/// factors monic, squarefree and pairwise coprime.
pub fn qp_squarefree_decomposition(p: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if qp_deg(p).unwrap_or(0) == 0 {
        return out;
    }
    let mut g = qp_gcd(p, &qp_derivative(p));
    let mut w = qp_monic(&qp_div_exact(p, &g));
    let mut i = 1u32;
    while qp_deg(&w).unwrap_or(0) > 0 {
        let y = qp_gcd(&w, &g);
        let factor = qp_div_exact(&w, &y);
        if qp_deg(&factor).unwrap_or(0) > 0 {
            out.push((qp_monic(&factor), i));
        }
        g = qp_div_exact(&g, &y);
        w = y;
        i += 1;
    }
    out
}

/// Resultant of two rational polynomials by the Euclidean PRS.
pub fn qp_resultant(a: &QPoly, b: &QPoly) -> Rat {
    fn go(a: QPoly, b: QPoly) -> Rat {
        let da = a.len().checked_sub(1);
        let db = b.len().checked_sub(1);
        match (da, db) {
            (None, _) | (_, None) => Rat::zero(),
            (Some(0), Some(db)) => pow_rat(&a[0], db),
            (_, Some(0)) => pow_rat(&b[0], a.len() - 1),
            (Some(da), Some(db)) => {
                let (_, r) = qp_divrem(&a, &b);
                if r.is_empty() {
                    return Rat::zero();
                }
                let dr = r.len() - 1;
                let sign = if (da * db) % 2 == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                let lead = pow_rat(&b[db], da - dr);
                sign * lead * go(b, r)
            }
        }
    }
    go(a.clone(), b.clone())
}

fn pow_rat(c: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= c;
    }
    acc
}

/// Lagrange interpolation through `(points[i], values[i])`.
pub fn qp_interpolate(points: &[Rat], values: &[Rat]) -> QPoly {
    assert_eq!(points.len(), values.len());
    let mut acc = qp_zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = qp_const(Rat::one());
        let mut denom = Rat::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = qp_mul(&basis, &vec![-xj.clone(), Rat::one()]);
            denom *= xi - xj;
        }
        acc = qp_add(&acc, &qp_scale(&basis, &(yi / denom)));
    }
    acc
}

// ---------------------------------------------------------------------------
// Bivariate polynomials as y-coefficient vectors over Q[x].
// ---------------------------------------------------------------------------

/// Bivariate polynomial, dense in `y`: `ys[j]` is the `Q[x]` coefficient of
/// `y^j`. No trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub ys: Vec<QPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { ys: Vec::new() }
    }

    fn normalize(mut self) -> Self {
        while self.ys.last().is_some_and(qp_is_zero) {
            self.ys.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        if self.ys.is_empty() {
            None
        } else {
            Some(self.ys.len() - 1)
        }
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ys.iter().filter_map(|c| qp_deg(c)).max()
    }

    /// View a two-variable polynomial with `x = z1`, `y = z2`.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), 2, "BiPoly expects two variables");
        let dy = p.degree_in(1).unwrap_or(0) as usize;
        let mut ys = vec![qp_zero(); dy + 1];
        for (exps, c) in p.terms() {
            let (ex, ey) = (exps[0] as usize, exps[1] as usize);
            if ys[ey].len() <= ex {
                ys[ey].resize(ex + 1, Rat::zero());
            }
            ys[ey][ex] = c.clone();
        }
        BiPoly {
            ys: ys.into_iter().map(qp_normalize).collect(),
        }
        .normalize()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut terms = Vec::new();
        for (j, c) in self.ys.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    terms.push((vec![i as u32, j as u32], v.clone()));
                }
            }
        }
        Polynomial::from_terms(2, terms)
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut ys = vec![qp_zero(); self.ys.len() + rhs.ys.len() - 1];
        for (i, a) in self.ys.iter().enumerate() {
            for (j, b) in rhs.ys.iter().enumerate() {
                ys[i + j] = qp_add(&ys[i + j], &qp_mul(a, b));
            }
        }
        BiPoly { ys }.normalize()
    }

    pub fn derivative_y(&self) -> BiPoly {
        if self.ys.len() <= 1 {
            return BiPoly::zero();
        }
        BiPoly {
            ys: self
                .ys
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| qp_scale(c, &Rat::from_integer(j.into())))
                .collect(),
        }
        .normalize()
    }

    /// Content in `y`: the gcd of the `Q[x]` coefficients, monic.
    pub fn content_y(&self) -> QPoly {
        let mut g = qp_zero();
        for c in &self.ys {
            g = qp_gcd(&g, c);
            if qp_deg(&g) == Some(0) {
                break;
            }
        }
        g
    }

    pub fn primitive_part_y(&self) -> BiPoly {
        let c = self.content_y();
        if qp_is_zero(&c) {
            return BiPoly::zero();
        }
        BiPoly {
            ys: self.ys.iter().map(|a| qp_div_exact(a, &c)).collect(),
        }
        .normalize()
    }

    /// Evaluate `x` at a rational point, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &Rat) -> QPoly {
        qp_normalize(self.ys.iter().map(|c| qp_eval(c, x)).collect())
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `y`.
fn bi_pseudo_rem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = b.deg_y().expect("pseudo-division by zero");
    let lead = b.ys[db].clone();
    let mut rem = a.clone();
    while let Some(dr) = rem.deg_y() {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let top = rem.ys[dr].clone();
        // rem := lead * rem - top * y^shift * b
        let mut ys = vec![qp_zero(); rem.ys.len()];
        for (j, c) in rem.ys.iter().enumerate() {
            ys[j] = qp_mul(c, &lead);
        }
        for (j, c) in b.ys.iter().enumerate() {
            ys[shift + j] = qp_sub(&ys[shift + j], &qp_mul(c, &top));
        }
        let next = BiPoly { ys }.normalize();
        assert!(
            next.deg_y().map_or(true, |d| d < dr),
            "pseudo-remainder failed to reduce the degree"
        );
        rem = next;
    }
    rem
}

/// Gcd of two bivariate polynomials over `Q`, computed by the primitive
/// Euclidean algorithm in `Q[x][y]`. Canonicalized so the leading `y`
/// coefficient is monic in `x`.
pub fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return normalize_lead(b.clone());
    }
    if b.is_zero() {
        return normalize_lead(a.clone());
    }
    let cont = qp_gcd(&a.content_y(), &b.content_y());
    let mut u = a.primitive_part_y();
    let mut v = b.primitive_part_y();
    if u.deg_y() < v.deg_y() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_zero() {
        if v.deg_y() == Some(0) {
            // A nonzero primitive x-polynomial: the y-part of the gcd is 1.
            u = BiPoly {
                ys: vec![qp_const(Rat::one())],
            };
            break;
        }
        let r = bi_pseudo_rem(&u, &v);
        let r = if r.is_zero() {
            r
        } else {
            r.primitive_part_y()
        };
        u = v;
        v = r;
    }
    let with_cont = BiPoly {
        ys: u.ys.iter().map(|c| qp_mul(c, &cont)).collect(),
    }
    .normalize();
    normalize_lead(with_cont)
}

fn normalize_lead(p: BiPoly) -> BiPoly {
    if p.is_zero() {
        return p;
    }
    let lead = p.ys.last().unwrap();
    let scale = Rat::one() / lead.last().unwrap();
    BiPoly {
        ys: p.ys.iter().map(|c| qp_scale(c, &scale)).collect(),
    }
}

/// Result of splitting a bivariate polynomial into its local pieces at the
/// origin: the power of the pure factor `x` and the squarefree
/// `y`-dependent factors with multiplicities.
pub struct BiSquarefree {
    pub x_power: u32,
    pub factors: Vec<(BiPoly, u32)>,
}

pub fn bi_squarefree_decomposition(f: &BiPoly) -> BiSquarefree {
    assert!(!f.is_zero());
    // Of the pure-x content only the power of x vanishes at the origin.
    let cont = f.content_y();
    let x_power = cont.iter().take_while(|c| c.is_zero()).count() as u32;
    let prim = f.primitive_part_y();

    let mut factors = Vec::new();
    if prim.deg_y().unwrap_or(0) == 0 {
        return BiSquarefree { x_power, factors };
    }
    let mut g = bi_gcd(&prim, &prim.derivative_y());
    let mut w = bi_div_exact(&prim, &g);
    let mut i = 1u32;
    while w.deg_y().unwrap_or(0) > 0 {
        let y = bi_gcd(&w, &g);
        let factor = bi_div_exact(&w, &y);
        if factor.deg_y().unwrap_or(0) > 0 {
            factors.push((factor.primitive_part_y(), i));
        }
        g = bi_div_exact(&g, &y);
        w = y;
        i += 1;
        assert!(i <= 64, "squarefree decomposition failed to terminate");
    }
    BiSquarefree { x_power, factors }
}

/// Exact division in `Q[x][y]`; panics when not exact. The divisions used
/// by the squarefree routine are exact by construction.
fn bi_div_exact(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return BiPoly::zero();
    }
    let db = b.deg_y().expect("division by zero");
    let mut rem = a.clone();
    let mut quot = vec![qp_zero(); a.ys.len().saturating_sub(db)];
    let lead = &b.ys[db];
    while let Some(dr) = rem.deg_y() {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let (q, r) = qp_divrem(&rem.ys[dr], lead);
        assert!(r.is_empty(), "inexact bivariate division (leading)");
        let mut ys = rem.ys.clone();
        for (j, c) in b.ys.iter().enumerate() {
            ys[shift + j] = qp_sub(&ys[shift + j], &qp_mul(c, &q));
        }
        quot[shift] = q;
        rem = BiPoly { ys }.normalize();
    }
    assert!(rem.is_zero(), "inexact bivariate division (remainder)");
    BiPoly { ys: quot }.normalize()
}

/// Resultant of `f` and `g` with respect to `y`, as a polynomial in `x`,
/// computed by evaluation and Lagrange interpolation. Used as a test
/// oracle for intersection numbers.
pub fn bi_resultant_y(f: &BiPoly, g: &BiPoly) -> QPoly {
    let df = f.deg_y().expect("resultant of zero polynomial");
    let dg = g.deg_y().expect("resultant of zero polynomial");
    let bound = f.deg_x().unwrap_or(0) * dg + g.deg_x().unwrap_or(0) * df + 1;
    let lead_f = &f.ys[df];
    let lead_g = &g.ys[dg];
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut k: i64 = 0;
    while points.len() < bound {
        let x = Rat::from_integer(k.into());
        k = if k >= 0 { -(k + 1) } else { -k };
        // A leading-coefficient drop would evaluate the wrong Sylvester
        // matrix; skip such points.
        if qp_eval(lead_f, &x).is_zero() || qp_eval(lead_g, &x).is_zero() {
            continue;
        }
        let fv = f.eval_x(&x);
        let gv = g.eval_x(&x);
        points.push(x);
        values.push(qp_resultant(&fv, &gv));
    }
    qp_interpolate(&points, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn qp(coeffs: &[i64]) -> QPoly {
        qp_normalize(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = qp(&[-1, 0, 1]); // x^2 - 1
        let b = qp(&[1, 1]); // x + 1
        let (q, r) = qp_divrem(&a, &b);
        assert_eq!(q, qp(&[-1, 1]));
        assert!(r.is_empty());
        assert_eq!(qp_gcd(&a, &b), qp(&[1, 1]));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // x (x-1)^2 (x+2)^3
        let f = qp_mul(
            &qp_mul(
                &qp_mul(&qp(&[-1, 1]), &qp(&[-1, 1])),
                &qp_mul(&qp_mul(&qp(&[2, 1]), &qp(&[2, 1])), &qp(&[2, 1])),
            ),
            &qp(&[0, 1]),
        );
        let decomp = qp_squarefree_decomposition(&f);
        assert_eq!(
            decomp,
            vec![(qp(&[0, 1]), 1), (qp(&[-1, 1]), 2), (qp(&[2, 1]), 3)]
        );
    }

    #[test]
    fn resultant_matches_known_values() {
        // res(x^2 - 1, x - 2) = 3
        assert_eq!(qp_resultant(&qp(&[-1, 0, 1]), &qp(&[-2, 1])), rat(3));
        // res(x^2 + 1, x^2 - 2) = product of (beta^2 + 1) over beta^2 = 2 -> 9
        assert_eq!(qp_resultant(&qp(&[1, 0, 1]), &qp(&[-2, 0, 1])), rat(9));
        // shared root -> 0
        assert_eq!(qp_resultant(&qp(&[-1, 0, 1]), &qp(&[-1, 1])), rat(0));
    }

    #[test]
    fn interpolation_round_trip() {
        let f = vec![rat(1), ratio(-3, 2), rat(0), rat(2)];
        let points: Vec<Rat> = (0..4).map(rat).collect();
        let values: Vec<Rat> = points.iter().map(|x| qp_eval(&f, x)).collect();
        assert_eq!(qp_interpolate(&points, &values), qp_normalize(f));
    }

    fn bp(p: &Polynomial) -> BiPoly {
        BiPoly::from_polynomial(p)
    }

    fn poly2(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // gcd((y - x)(y + x^2), (y - x) y) = y - x
        let common = poly2(&[(&[0, 1], 1), (&[1, 0], -1)]);
        let a = &common * &poly2(&[(&[0, 1], 1), (&[2, 0], 1)]);
        let b = &common * &poly2(&[(&[0, 1], 1)]);
        let g = bi_gcd(&bp(&a), &bp(&b));
        assert_eq!(g.to_polynomial(), common);
    }

    #[test]
    fn bivariate_gcd_of_coprime_is_constant() {
        let a = poly2(&[(&[3, 0], 1), (&[0, 1], 1)]);
        let b = poly2(&[(&[0, 2], 1), (&[1, 0], -1)]);
        let g = bi_gcd(&bp(&a), &bp(&b));
        assert_eq!(g.deg_y(), Some(0));
        assert_eq!(qp_deg(&g.ys[0]), Some(0));
    }

    #[test]
    fn bivariate_squarefree_splits_x_power_and_factors() {
        // x^2 (y^2 - x^3) (y - x)^2
        let cusp = poly2(&[(&[0, 2], 1), (&[3, 0], -1)]);
        let line = poly2(&[(&[0, 1], 1), (&[1, 0], -1)]);
        let f = &(&(&line * &line) * &cusp) * &poly2(&[(&[2, 0], 1)]);
        let d = bi_squarefree_decomposition(&bp(&f));
        assert_eq!(d.x_power, 2);
        let mut mults: Vec<(Polynomial, u32)> = d
            .factors
            .iter()
            .map(|(p, m)| (p.to_polynomial(), *m))
            .collect();
        mults.sort_by_key(|(_, m)| *m);
        assert_eq!(mults.len(), 2);
        assert_eq!(mults[0], (cusp, 1));
        assert_eq!(mults[1], (line, 2));
    }

    #[test]
    fn resultant_y_matches_direct_product() {
        // f = y^2 - x^3, g = y - x^2: Res_y = (x^2)^2 - x^3 = x^4 - x^3
        let f = bp(&poly2(&[(&[0, 2], 1), (&[3, 0], -1)]));
        let g = bp(&poly2(&[(&[0, 1], 1), (&[2, 0], -1)]));
        let r = bi_resultant_y(&f, &g);
        assert_eq!(r, qp(&[0, 0, 0, -1, 1]));
    }
}
