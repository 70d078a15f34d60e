//! Exact multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` from exponent vectors to nonzero
//! coefficients, so every polynomial has a unique normal form and
//! iteration order is deterministic. Variables are positional: a
//! polynomial in `n` variables uses exponent vectors of length `n`
//! and prints them as `z1..zN`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Order of vanishing of a polynomial or series at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Order::Finite(v) => Some(*v),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficients are stored, every exponent vector
/// has length `nvars`, and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rat::one())
    }

    /// The coordinate function `z_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(exps, Rat::one());
        p
    }

    /// Build from raw (exponents, coefficient) pairs; zero coefficients and
    /// repeated monomials are merged away.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in terms {
            p.add_term(&exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.nvars])
    }

    fn add_term(&mut self, exps: &[u32], c: Rat) {
        assert_eq!(exps.len(), self.nvars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
    }

    /// Minimal total degree over all terms; `Infinite` for the zero polynomial.
    pub fn lowest_order(&self) -> Order {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficient of `z_var^k`, as a polynomial in the remaining variables
    /// (same arity, with `var`-exponent zeroed).
    pub fn coefficient_of_power(&self, var: usize, k: u32) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[var] == k {
                let mut e = exps.clone();
                e[var] = 0;
                p.add_term(&e, c.clone());
            }
        }
        p
    }

    /// Coefficients of the degree-1 part, one per variable.
    pub fn linear_part(&self) -> Vec<Rat> {
        let mut coeffs = vec![Rat::zero(); self.nvars];
        for (exps, c) in &self.terms {
            if exps.iter().sum::<u32>() == 1 {
                let i = exps.iter().position(|&e| e == 1).unwrap();
                coeffs[i] = c.clone();
            }
        }
        coeffs
    }

    /// True if the polynomial mentions the given variable.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at an exact rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation arity mismatch");
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Ring homomorphism sending `z_i` to `images[i]`.
    ///
    /// All images must share a common variable count, which becomes the
    /// arity of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let out_vars = images.first().map_or(0, |p| p.nvars);
        assert!(
            images.iter().all(|p| p.nvars == out_vars),
            "substitution images disagree on variable count"
        );
        let mut acc = Polynomial::zero(out_vars);
        for (exps, c) in &self.terms {
            let mut term = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Extend to a larger variable set, keeping existing variables in place.
    pub fn lift(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in &self.terms {
            let mut e = exps.clone();
            e.resize(nvars, 0);
            p.add_term(&e, c.clone());
        }
        p
    }

    /// Remove a variable that the polynomial does not mention.
    pub fn drop_var(&self, var: usize) -> Polynomial {
        assert!(!self.involves(var), "cannot drop a variable still in use");
        let mut p = Polynomial::zero(self.nvars - 1);
        for (exps, c) in &self.terms {
            let mut e = exps.clone();
            e.remove(var);
            p.add_term(&e, c.clone());
        }
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in +");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in -");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in *");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&exps, ca * cb);
            }
        }
        out
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, c: &Rat) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then reverse-lex, to read naturally.
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, exps) in keys.iter().enumerate() {
            let c = &self.terms[*exps];
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let is_const = exps.iter().all(|&e| e == 0);
            let mut need_star = false;
            if !abs.is_one() || is_const {
                write_rat(f, &abs)?;
                need_star = true;
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                write!(f, "z{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Linear form `c1*z1 + ... + cn*zn` with no constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearForm {
            coeffs: coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect(),
        }
    }

    /// The coordinate form `z_{i+1}`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[i] = Rat::one();
        LinearForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        Polynomial::from_terms(
            n,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience constructor for fractions.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))),
        )
    }

    #[test]
    fn lowest_order_examples() {
        // z1^3 - z2*z3
        let f = p(3, &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)]);
        assert_eq!(f.lowest_order(), Order::Finite(2));
        let g = p(1, &[(&[3], 1)]);
        assert_eq!(g.lowest_order(), Order::Finite(3));
        assert_eq!(Polynomial::zero(2).lowest_order(), Order::Infinite);
    }

    #[test]
    fn substitute_proposition_slice() {
        // z1^3 - z2*z3 with z3 -> -z1 - z2 gives z1^3 + z1*z2 + z2^2.
        let f = p(3, &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)]);
        let images = vec![
            Polynomial::var(3, 0),
            Polynomial::var(3, 1),
            &(-&Polynomial::var(3, 0)) - &Polynomial::var(3, 1),
        ];
        let g = f.substitute(&images);
        let expected = p(3, &[(&[3, 0, 0], 1), (&[1, 1, 0], 1), (&[0, 2, 0], 1)]);
        assert_eq!(g, expected);
    }

    #[test]
    fn substitute_identity() {
        let f = p(2, &[(&[2, 1], 3), (&[0, 1], -2)]);
        let id: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(2, i)).collect();
        assert_eq!(f.substitute(&id), f);
    }

    #[test]
    fn substitute_matches_point_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let f = random_poly(&mut rng, 2, 3);
            let images: Vec<Polynomial> =
                (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
            let point: Vec<Rat> = (0..2).map(|_| ratio(rng.gen_range(-5..=5), 3)).collect();
            let lhs = f.substitute(&images).eval(&point);
            let image_vals: Vec<Rat> = images.iter().map(|g| g.eval(&point)).collect();
            let rhs = f.eval(&image_vals);
            assert_eq!(lhs, rhs);
        }
    }

    fn random_poly(rng: &mut impl rand::Rng, nvars: usize, deg: u32) -> Polynomial {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=5) {
            let mut exps = vec![0u32; nvars];
            let mut left = deg;
            for e in exps.iter_mut() {
                *e = rng.gen_range(0..=left);
                left -= *e;
            }
            terms.push((exps, rat(rng.gen_range(-4..=4))));
        }
        Polynomial::from_terms(nvars, terms)
    }

    #[test]
    fn substitution_is_ring_homomorphism() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let a = random_poly(&mut rng, 2, 3);
            let b = random_poly(&mut rng, 2, 3);
            let images: Vec<Polynomial> =
                (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
            let sum = (&a + &b).substitute(&images);
            assert_eq!(sum, &a.substitute(&images) + &b.substitute(&images));
            let prod = (&a * &b).substitute(&images);
            assert_eq!(prod, &a.substitute(&images) * &b.substitute(&images));
        }
    }

    #[test]
    fn orders_add_under_multiplication() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let a = random_poly(&mut rng, 3, 3);
            let b = random_poly(&mut rng, 3, 3);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (oa, ob) = (a.lowest_order(), b.lowest_order());
            let prod = (&a * &b).lowest_order();
            match (oa, ob, prod) {
                (Order::Finite(x), Order::Finite(y), Order::Finite(z)) => {
                    assert_eq!(z, x + y)
                }
                _ => panic!("nonzero inputs must have finite orders"),
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let f = p(3, &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)]);
        assert_eq!(f.to_string(), "z1^3 - z2*z3");
        let g = p(2, &[(&[0, 0], 0)]);
        assert_eq!(g.to_string(), "0");
        let h = Polynomial::from_terms(2, vec![(vec![1, 0], ratio(1, 2))]);
        assert_eq!(h.to_string(), "1/2*z1");
    }
}
