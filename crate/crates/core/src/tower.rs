//! Towers of number fields with exact arithmetic.
//!
//! A tower is a chain Q = K_0 < K_1 < ... < K_h where each level adjoins a
//! root of a monic polynomial irreducible over the level below. Elements
//! are stored as flattened coordinate vectors in the product basis
//! `a1^{e1} ... ah^{eh}` (`e_i` below the level degree), so the basis of a
//! sub-tower is a prefix of the basis of every extension.
//!
//! Factorization over a tower reduces to factorization over the rationals
//! by the norm construction: the norm of a shifted polynomial is computed
//! by resultants (via evaluation/interpolation), factored one level down,
//! and the factors are pulled back with gcds.

use std::fmt;

use num_traits::{One, Zero};

use crate::factor::q_factor_squarefree;
use crate::poly::Rat;
use crate::unipoly::{qp_normalize, QPoly};

/// Coordinates of a tower element in the flattened basis.
pub type NfVec = Vec<Rat>;

/// Univariate polynomial with tower-element coefficients (dense, no
/// trailing zero coefficients).
pub type NfPoly = Vec<NfVec>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerError {
    ReducibleMinimalPolynomial,
    DegreeCapExceeded { degree: usize, cap: usize },
    ShiftsExhausted,
}

impl fmt::Display for TowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerError::ReducibleMinimalPolynomial => {
                write!(f, "minimal polynomial is reducible over the tower below")
            }
            TowerError::DegreeCapExceeded { degree, cap } => {
                write!(f, "extension degree {degree} exceeds the cap {cap}")
            }
            TowerError::ShiftsExhausted => {
                write!(f, "no squarefree norm found (shift budget exhausted)")
            }
        }
    }
}

impl std::error::Error for TowerError {}

/// Hard cap on the absolute degree of any tower this crate will build.
pub const TOWER_DEGREE_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
struct Level {
    /// Monic minimal polynomial of this level's generator; coefficients
    /// are elements of the tower below (flattened, length = dim below).
    minpoly: NfPoly,
}

impl Level {
    fn deg(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tower {
    levels: Vec<Level>,
    /// dims[l] = dimension over Q of the tower truncated to l levels.
    dims: Vec<usize>,
}

impl Tower {
    /// The trivial tower: the rationals themselves.
    pub fn rationals() -> Self {
        Tower {
            levels: Vec::new(),
            dims: vec![1],
        }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Dimension over Q.
    pub fn dim(&self) -> usize {
        *self.dims.last().unwrap()
    }

    fn dim_at(&self, lvl: usize) -> usize {
        self.dims[lvl]
    }

    /// The tower with the top level removed.
    pub fn parent(&self) -> Tower {
        assert!(!self.levels.is_empty());
        Tower {
            levels: self.levels[..self.levels.len() - 1].to_vec(),
            dims: self.dims[..self.dims.len() - 1].to_vec(),
        }
    }

    /// Minimal polynomial of the level `lvl` generator (0-based), with
    /// coefficients over the tower below that level.
    pub fn minimal_polynomial(&self, lvl: usize) -> &[NfVec] {
        &self.levels[lvl].minpoly
    }

    pub fn level_degree(&self, lvl: usize) -> usize {
        self.levels[lvl].deg()
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(&self) -> NfVec {
        vec![Rat::zero(); self.dim()]
    }

    pub fn one(&self) -> NfVec {
        self.from_rat(&Rat::one())
    }

    pub fn from_rat(&self, r: &Rat) -> NfVec {
        let mut v = vec![Rat::zero(); self.dim()];
        v[0] = r.clone();
        v
    }

    /// The generator adjoined at level `lvl` as an element of the full tower.
    pub fn generator(&self, lvl: usize) -> NfVec {
        let mut v = vec![Rat::zero(); self.dim()];
        v[self.dim_at(lvl)] = Rat::one();
        v
    }

    pub fn is_zero_elem(&self, a: &NfVec) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// The rational value of an element, when it has one.
    pub fn to_rat(&self, a: &NfVec) -> Option<Rat> {
        if a[1..].iter().all(|c| c.is_zero()) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    /// Reinterpret an element of a prefix tower inside this tower.
    pub fn embed(&self, from: &Tower, a: &NfVec) -> NfVec {
        assert!(
            self.levels[..from.levels.len()] == from.levels[..],
            "embed requires a prefix tower"
        );
        let mut v = vec![Rat::zero(); self.dim()];
        v[..a.len()].clone_from_slice(a);
        v
    }

    // -- element arithmetic --------------------------------------------------

    pub fn add(&self, a: &NfVec, b: &NfVec) -> NfVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &NfVec, b: &NfVec) -> NfVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &NfVec) -> NfVec {
        a.iter().map(|x| -x.clone()).collect()
    }

    pub fn scale(&self, a: &NfVec, c: &Rat) -> NfVec {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &NfVec, b: &NfVec) -> NfVec {
        self.mul_at(self.height(), a, b)
    }

    fn mul_at(&self, lvl: usize, a: &NfVec, b: &NfVec) -> NfVec {
        if lvl == 0 {
            return vec![&a[0] * &b[0]];
        }
        let d = self.levels[lvl - 1].deg();
        let dl = self.dim_at(lvl - 1);
        let zero_chunk = vec![Rat::zero(); dl];
        // Convolution of the alpha-digit chunks.
        let mut prod: Vec<NfVec> = vec![zero_chunk.clone(); 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * dl..(i + 1) * dl];
            if ai.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * dl..(j + 1) * dl];
                if bj.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let t = self.mul_at(lvl - 1, &ai.to_vec(), &bj.to_vec());
                for (slot, val) in prod[i + j].iter_mut().zip(t) {
                    *slot += val;
                }
            }
        }
        // Reduce powers alpha^k for k >= d via the monic minimal polynomial.
        let m = &self.levels[lvl - 1].minpoly;
        for k in (d..2 * d - 1).rev() {
            let c = prod[k].clone();
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            prod[k] = zero_chunk.clone();
            for (j, mj) in m.iter().take(d).enumerate() {
                if mj.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let t = self.mul_at(lvl - 1, &c, mj);
                for (slot, val) in prod[k - d + j].iter_mut().zip(t) {
                    *slot -= val;
                }
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    pub fn inv(&self, a: &NfVec) -> Option<NfVec> {
        self.inv_at(self.height(), a)
    }

    fn inv_at(&self, lvl: usize, a: &NfVec) -> Option<NfVec> {
        if a.iter().all(|c| c.is_zero()) {
            return None;
        }
        if lvl == 0 {
            return Some(vec![Rat::one() / &a[0]]);
        }
        let d = self.levels[lvl - 1].deg();
        let dl = self.dim_at(lvl - 1);
        // Extended Euclid of a (as a generator-polynomial) against the
        // minimal polynomial, over the tower below.
        let a_poly = self.np_normalize((0..d).map(|i| a[i * dl..(i + 1) * dl].to_vec()).collect());
        let m_poly = self.levels[lvl - 1].minpoly.clone();
        let (g, s) = self.np_half_egcd(lvl - 1, &a_poly, &m_poly);
        // g is a nonzero constant when the minimal polynomial is irreducible.
        debug_assert_eq!(g.len(), 1);
        let ginv = self.inv_at(lvl - 1, &g[0])?;
        let mut out = vec![Rat::zero(); self.dim_at(lvl)];
        for (i, coeff) in s.iter().enumerate() {
            let scaled = self.mul_at(lvl - 1, coeff, &ginv);
            out[i * dl..(i + 1) * dl].clone_from_slice(&scaled);
        }
        Some(out)
    }

    // -- polynomials with tower coefficients ---------------------------------

    fn zero_at(&self, lvl: usize) -> NfVec {
        vec![Rat::zero(); self.dim_at(lvl)]
    }

    pub fn np_normalize(&self, mut p: NfPoly) -> NfPoly {
        while p.last().is_some_and(|c| c.iter().all(|x| x.is_zero())) {
            p.pop();
        }
        p
    }

    pub fn np_deg(p: &NfPoly) -> Option<usize> {
        if p.is_empty() {
            None
        } else {
            Some(p.len() - 1)
        }
    }

    pub fn np_add(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        self.np_add_at(self.height(), a, b)
    }

    fn np_add_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let mut out = vec![self.zero_at(lvl); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = out[i].iter().zip(c).map(|(x, y)| x + y).collect();
        }
        self.np_normalize(out)
    }

    pub fn np_mul(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        self.np_mul_at(self.height(), a, b)
    }

    fn np_mul_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> NfPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_at(lvl); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                let t = self.mul_at(lvl, ca, cb);
                out[i + j] = out[i + j].iter().zip(t).map(|(x, y)| x + y).collect();
            }
        }
        self.np_normalize(out)
    }

    fn np_divrem_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> (NfPoly, NfPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let lead_inv = self
            .inv_at(lvl, b.last().unwrap())
            .expect("nonzero leading coefficient");
        let mut rem = a.clone();
        let mut quot = vec![self.zero_at(lvl); a.len().saturating_sub(db)];
        loop {
            rem = self.np_normalize(rem);
            if rem.len() <= db {
                break;
            }
            let dr = rem.len() - 1;
            let factor = self.mul_at(lvl, rem.last().unwrap(), &lead_inv);
            let shift = dr - db;
            for (j, cb) in b.iter().enumerate() {
                let t = self.mul_at(lvl, &factor, cb);
                rem[shift + j] = rem[shift + j].iter().zip(t).map(|(x, y)| x - y).collect();
            }
            quot[shift] = factor;
        }
        (self.np_normalize(quot), rem)
    }

    pub fn np_divrem(&self, a: &NfPoly, b: &NfPoly) -> (NfPoly, NfPoly) {
        self.np_divrem_at(self.height(), a, b)
    }

    pub fn np_monic(&self, p: &NfPoly) -> NfPoly {
        self.np_monic_at(self.height(), p)
    }

    fn np_monic_at(&self, lvl: usize, p: &NfPoly) -> NfPoly {
        match p.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv_at(lvl, l).expect("nonzero leading coefficient");
                p.iter().map(|c| self.mul_at(lvl, c, &inv)).collect()
            }
        }
    }

    pub fn np_gcd(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        self.np_gcd_at(self.height(), a, b)
    }

    fn np_gcd_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let mut a = self.np_normalize(a.clone());
        let mut b = self.np_normalize(b.clone());
        while !b.is_empty() {
            let (_, r) = self.np_divrem_at(lvl, &a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.np_monic_at(lvl, &a)
        }
    }

    /// Half extended Euclid: returns (g, s) with s*a = g mod m.
    fn np_half_egcd(&self, lvl: usize, a: &NfPoly, m: &NfPoly) -> (NfPoly, NfPoly) {
        let (mut r0, mut r1) = (a.clone(), m.clone());
        let (mut s0, mut s1): (NfPoly, NfPoly) = (vec![self.one_at(lvl)], Vec::new());
        while !r1.is_empty() {
            let (q, r) = self.np_divrem_at(lvl, &r0, &r1);
            let qs = self.np_mul_at(lvl, &q, &s1);
            let new_s = self.np_sub_at(lvl, &s0, &qs);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, new_s);
        }
        (r0, s0)
    }

    fn one_at(&self, lvl: usize) -> NfVec {
        let mut v = self.zero_at(lvl);
        v[0] = Rat::one();
        v
    }

    fn np_sub_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let mut out = vec![self.zero_at(lvl); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = out[i].iter().zip(c).map(|(x, y)| x - y).collect();
        }
        self.np_normalize(out)
    }

    pub fn np_derivative(&self, p: &NfPoly) -> NfPoly {
        if p.len() <= 1 {
            return Vec::new();
        }
        self.np_normalize(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, &Rat::from_integer(i.into())))
                .collect(),
        )
    }

    /// Evaluate at a tower element.
    pub fn np_eval(&self, p: &NfPoly, x: &NfVec) -> NfVec {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// p(x + c) by Horner recomposition.
    pub fn np_shift(&self, p: &NfPoly, c: &NfVec) -> NfPoly {
        let shift: NfPoly = vec![c.clone(), self.one()];
        let mut acc: NfPoly = Vec::new();
        for coeff in p.iter().rev() {
            acc = self.np_mul(&acc, &shift);
            acc = self.np_add(&acc, &vec![coeff.clone()]);
        }
        acc
    }

    /// Resultant of two polynomials over the tower, by the Euclidean PRS.
    pub fn np_resultant(&self, a: &NfPoly, b: &NfPoly) -> NfVec {
        self.np_resultant_at(self.height(), a, b)
    }

    fn np_resultant_at(&self, lvl: usize, a: &NfPoly, b: &NfPoly) -> NfVec {
        let a = self.np_normalize(a.clone());
        let b = self.np_normalize(b.clone());
        let da = a.len().checked_sub(1);
        let db = b.len().checked_sub(1);
        match (da, db) {
            (None, _) | (_, None) => self.zero_at(lvl),
            (Some(0), Some(db)) => self.elem_pow_at(lvl, &a[0], db),
            (Some(da), Some(0)) => self.elem_pow_at(lvl, &b[0], da),
            (Some(da), Some(db)) => {
                let (_, r) = self.np_divrem_at(lvl, &a, &b);
                let r = self.np_normalize(r);
                if r.is_empty() {
                    return self.zero_at(lvl);
                }
                let dr = r.len() - 1;
                let mut acc = self.elem_pow_at(lvl, &b[db], da - dr);
                if (da * db) % 2 == 1 {
                    acc = acc.iter().map(|c| -c.clone()).collect();
                }
                self.mul_at(lvl, &acc, &self.np_resultant_at(lvl, &b, &r))
            }
        }
    }

    fn elem_pow_at(&self, lvl: usize, a: &NfVec, k: usize) -> NfVec {
        let mut acc = self.one_at(lvl);
        for _ in 0..k {
            acc = self.mul_at(lvl, &acc, a);
        }
        acc
    }

    // -- extension construction ----------------------------------------------

    /// Adjoin a root of a monic polynomial assumed irreducible.
    pub fn extend_unchecked(&self, minpoly: NfPoly) -> Result<Tower, TowerError> {
        let minpoly = self.np_normalize(minpoly);
        let deg = minpoly.len() - 1;
        assert!(deg >= 1, "extension needs degree >= 1");
        assert!(
            self.to_rat(
                &self.embed_into_self_dim(minpoly.last().unwrap())
            )
            .is_some_and(|r| r.is_one())
                || minpoly.last().unwrap()[0].is_one()
                    && minpoly.last().unwrap()[1..].iter().all(|c| c.is_zero()),
            "minimal polynomial must be monic"
        );
        let new_dim = self.dim() * deg;
        if new_dim > TOWER_DEGREE_CAP {
            return Err(TowerError::DegreeCapExceeded {
                degree: new_dim,
                cap: TOWER_DEGREE_CAP,
            });
        }
        let mut levels = self.levels.clone();
        levels.push(Level { minpoly });
        let mut dims = self.dims.clone();
        dims.push(new_dim);
        Ok(Tower { levels, dims })
    }

    fn embed_into_self_dim(&self, a: &NfVec) -> NfVec {
        a.clone()
    }

    /// Adjoin a root after verifying irreducibility over this tower.
    pub fn extend_checked(&self, minpoly: NfPoly) -> Result<Tower, TowerError> {
        let minpoly = self.np_normalize(minpoly);
        if minpoly.len() < 2 {
            return Err(TowerError::ReducibleMinimalPolynomial);
        }
        if minpoly.len() == 2 {
            return self.extend_unchecked(self.np_monic(&minpoly));
        }
        let monic = self.np_monic(&minpoly);
        let deriv = self.np_derivative(&monic);
        let g = self.np_gcd(&monic, &deriv);
        if g.len() > 1 {
            return Err(TowerError::ReducibleMinimalPolynomial);
        }
        let factors = self.factor_squarefree(&monic)?;
        if factors.len() != 1 {
            return Err(TowerError::ReducibleMinimalPolynomial);
        }
        self.extend_unchecked(monic)
    }

    // -- norms and Trager factorization ---------------------------------------

    /// Norm of a polynomial from this tower down one level, computed by
    /// resultants at interpolation points. Requires height >= 1.
    pub fn norm_down(&self, f: &NfPoly) -> NfPoly {
        let h = self.height();
        assert!(h >= 1);
        let parent = self.parent();
        let d = self.levels[h - 1].deg();
        let dl = self.dim_at(h - 1);
        let deg_f = f.len() - 1;
        let bound = d * deg_f + 1;

        let m_poly: NfPoly = self.levels[h - 1].minpoly.clone();
        let mut points: Vec<Rat> = Vec::with_capacity(bound);
        let mut values: Vec<NfVec> = Vec::with_capacity(bound);
        let mut k: i64 = 0;
        while points.len() < bound {
            let x = Rat::from_integer(k.into());
            k = if k >= 0 { -(k + 1) } else { -k };
            // Evaluate f at the rational point; the result is an element of
            // this tower, i.e. a polynomial in the top generator.
            let mut v = self.zero();
            for c in f.iter().rev() {
                v = self.add(&self.scale(&v, &x), c);
            }
            let v_poly = parent
                .np_normalize((0..d).map(|i| v[i * dl..(i + 1) * dl].to_vec()).collect());
            // The minimal polynomial is monic, so the PRS resultant equals
            // the product of v over the conjugates of the generator, which
            // interpolates to the norm polynomial.
            let value = parent.np_resultant(&m_poly, &v_poly);
            points.push(x);
            values.push(value);
        }
        parent.np_interpolate(&points, &values)
    }

    /// Lagrange interpolation with rational nodes and tower-element values.
    fn np_interpolate(&self, points: &[Rat], values: &[NfVec]) -> NfPoly {
        let mut acc: NfPoly = Vec::new();
        for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
            if self.is_zero_elem(yi) {
                continue;
            }
            let mut denom = Rat::one();
            let mut b: QPoly = vec![Rat::one()];
            for (j, xj) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                b = crate::unipoly::qp_mul(&b, &vec![-xj.clone(), Rat::one()]);
                denom *= xi - xj;
            }
            let coeff = self.scale(yi, &(Rat::one() / denom));
            let term: NfPoly = b.iter().map(|c| self.mul(&coeff, &self.from_rat(c))).collect();
            acc = self.np_add(&acc, &self.np_normalize(term));
        }
        acc
    }

    /// Factor a squarefree polynomial over the tower into monic
    /// irreducible factors (Trager's method, recursing down the tower).
    pub fn factor_squarefree(&self, f: &NfPoly) -> Result<Vec<NfPoly>, TowerError> {
        let f = self.np_monic(&self.np_normalize(f.clone()));
        let deg = f.len() - 1;
        if deg == 0 {
            return Ok(Vec::new());
        }
        if deg == 1 {
            return Ok(vec![f]);
        }
        if self.height() == 0 {
            let q: QPoly = qp_normalize(f.iter().map(|c| c[0].clone()).collect());
            let factors = q_factor_squarefree(&q);
            return Ok(factors
                .into_iter()
                .map(|g| g.into_iter().map(|c| vec![c]).collect())
                .collect());
        }
        let alpha = self.generator(self.height() - 1);
        let shifts: Vec<i64> = {
            let mut s = vec![0i64];
            for k in 1..=16 {
                s.push(k);
                s.push(-k);
            }
            s
        };
        for s in shifts {
            let shift_elem = self.scale(&alpha, &Rat::from_integer((-s).into()));
            let g = self.np_shift(&f, &shift_elem);
            let norm = self.norm_down(&g);
            let parent = self.parent();
            let norm_deriv = parent.np_derivative(&norm);
            let gg = parent.np_gcd(&norm, &norm_deriv);
            if gg.len() > 1 {
                continue; // norm not squarefree; try the next shift
            }
            let sub_factors = parent.factor_squarefree(&norm)?;
            let mut out = Vec::new();
            let back = self.scale(&alpha, &Rat::from_integer(s.into()));
            for nf in sub_factors {
                let lifted: NfPoly = nf.iter().map(|c| self.embed(&parent, c)).collect();
                let shifted = self.np_shift(&lifted, &back);
                let factor = self.np_gcd(&f, &shifted);
                if factor.len() > 1 {
                    out.push(factor);
                }
            }
            let total: usize = out.iter().map(|g| g.len() - 1).sum();
            if total == deg {
                out.sort_by(np_order_key);
                return Ok(out);
            }
        }
        Err(TowerError::ShiftsExhausted)
    }

    /// Full factorization: squarefree decomposition, then Trager on each
    /// squarefree part.
    pub fn factor(&self, f: &NfPoly) -> Result<Vec<(NfPoly, u32)>, TowerError> {
        let mut out = Vec::new();
        let rest = self.np_monic(&self.np_normalize(f.clone()));
        // Repeated-gcd squarefree decomposition over a char-0 field.
        let mut g = self.np_gcd(&rest, &self.np_derivative(&rest));
        let mut w = {
            let (q, r) = self.np_divrem(&rest, &g);
            debug_assert!(r.is_empty());
            q
        };
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.np_gcd(&w, &g);
            let (factor, r) = self.np_divrem(&w, &y);
            debug_assert!(r.is_empty());
            if factor.len() > 1 {
                for irr in self.factor_squarefree(&factor)? {
                    out.push((irr, i));
                }
            }
            let (gq, gr) = self.np_divrem(&g, &y);
            debug_assert!(gr.is_empty());
            g = gq;
            w = y;
            i += 1;
        }
        out.sort_by(|(a, _), (b, _)| np_order_key(a, b));
        Ok(out)
    }

    // -- human-readable rendering ---------------------------------------------

    /// Name of the level generator: a1, a2, ...
    pub fn generator_name(lvl: usize) -> String {
        format!("a{}", lvl + 1)
    }

    /// Render an element as a polynomial in the generators.
    pub fn elem_to_string(&self, a: &NfVec) -> String {
        let h = self.height();
        let mut parts = Vec::new();
        for (idx, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Decode the flattened index into generator exponents.
            let mut rem = idx;
            let mut name = String::new();
            for lvl in 0..h {
                let d = self.levels[lvl].deg();
                let e = rem % d;
                rem /= d;
                if e > 0 {
                    if !name.is_empty() {
                        name.push('*');
                    }
                    name.push_str(&Tower::generator_name(lvl));
                    if e > 1 {
                        name.push_str(&format!("^{e}"));
                    }
                }
            }
            let coeff = if c.denom().is_one() {
                format!("{}", c.numer())
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            if name.is_empty() {
                parts.push(coeff);
            } else if c.is_one() {
                parts.push(name);
            } else if (-c.clone()).is_one() {
                parts.push(format!("-{name}"));
            } else {
                parts.push(format!("{coeff}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    /// Describe the tower levels, e.g. `a1^2 - 2 = 0; a2^2 - a1 = 0`.
    pub fn describe(&self) -> String {
        let mut lines = Vec::new();
        for (lvl, level) in self.levels.iter().enumerate() {
            let below = Tower {
                levels: self.levels[..lvl].to_vec(),
                dims: self.dims[..=lvl].to_vec(),
            };
            let name = Tower::generator_name(lvl);
            let mut terms = Vec::new();
            for (i, c) in level.minpoly.iter().enumerate().rev() {
                if below.is_zero_elem(c) {
                    continue;
                }
                let cs = below.elem_to_string(c);
                let pow = match i {
                    0 => String::new(),
                    1 => name.clone(),
                    _ => format!("{name}^{i}"),
                };
                let rendered = if pow.is_empty() {
                    format!("({cs})")
                } else if cs == "1" {
                    pow
                } else {
                    format!("({cs})*{pow}")
                };
                terms.push(rendered);
            }
            lines.push(format!("{} = 0", terms.join(" + ")));
        }
        lines.join("; ")
    }
}

/// Deterministic ordering key for factor lists.
fn np_order_key(a: &NfPoly, b: &NfPoly) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.cmp(b))
}

/// Polynomial with rational coefficients viewed over a tower.
pub fn np_from_qpoly(tower: &Tower, p: &QPoly) -> NfPoly {
    tower.np_normalize(p.iter().map(|c| tower.from_rat(c)).collect())
}

/// Project a tower polynomial to rational coefficients when possible.
pub fn np_to_qpoly(tower: &Tower, p: &NfPoly) -> Option<QPoly> {
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        out.push(tower.to_rat(c)?);
    }
    Some(qp_normalize(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sqrt2_tower() -> Tower {
        let q = Tower::rationals();
        // x^2 - 2
        let m: NfPoly = vec![q.from_rat(&rat(-2)), q.zero(), q.one()];
        q.extend_checked(m).unwrap()
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        let k = sqrt2_tower();
        let a = k.generator(0); // sqrt(2)
        let sq = k.mul(&a, &a);
        assert_eq!(k.to_rat(&sq), Some(rat(2)));
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let one_plus = k.add(&k.one(), &a);
        let sq2 = k.mul(&one_plus, &one_plus);
        assert_eq!(sq2, vec![rat(3), rat(2)]);
        // (1 + sqrt2)^(-1) = sqrt2 - 1
        let inv = k.inv(&one_plus).unwrap();
        assert_eq!(inv, vec![rat(-1), rat(1)]);
        assert_eq!(k.mul(&one_plus, &inv), k.one());
    }

    #[test]
    fn reducible_extension_is_rejected() {
        let k = sqrt2_tower();
        // y^2 - 2 factors over Q(sqrt2)
        let m: NfPoly = vec![k.from_rat(&rat(-2)), k.zero(), k.one()];
        assert_eq!(
            k.extend_checked(m),
            Err(TowerError::ReducibleMinimalPolynomial)
        );
    }

    #[test]
    fn height_two_tower_arithmetic() {
        let k = sqrt2_tower();
        // adjoin beta with beta^2 = sqrt2, so beta^4 = 2
        let m: NfPoly = vec![k.neg(&k.generator(0)), k.zero(), k.one()];
        let k2 = k.extend_checked(m).unwrap();
        assert_eq!(k2.dim(), 4);
        let beta = k2.generator(1);
        let b2 = k2.mul(&beta, &beta);
        assert_eq!(b2, k2.embed(&k, &k.generator(0)));
        let b4 = k2.mul(&b2, &b2);
        assert_eq!(k2.to_rat(&b4), Some(rat(2)));
        // Inverses in the height-two tower.
        let x = k2.add(&beta, &k2.one());
        let xi = k2.inv(&x).unwrap();
        assert_eq!(k2.mul(&x, &xi), k2.one());
    }

    #[test]
    fn norm_of_linear_is_the_minimal_polynomial() {
        let k = sqrt2_tower();
        // norm(x - sqrt2) = x^2 - 2
        let f: NfPoly = vec![k.neg(&k.generator(0)), k.one()];
        let n = k.norm_down(&f);
        let q = Tower::rationals();
        assert_eq!(np_to_qpoly(&q, &n).unwrap(), vec![rat(-2), rat(0), rat(1)]);
    }

    #[test]
    fn factoring_splits_over_the_right_field() {
        let k = sqrt2_tower();
        // x^2 - 2 splits over Q(sqrt2) into (x - sqrt2)(x + sqrt2)
        let f = np_from_qpoly(&k, &vec![rat(-2), rat(0), rat(1)]);
        let factors = k.factor_squarefree(&f).unwrap();
        assert_eq!(factors.len(), 2);
        for factor in &factors {
            assert_eq!(factor.len(), 2);
            // root is +-sqrt2
            let root = k.neg(&factor[0]);
            let sq = k.mul(&root, &root);
            assert_eq!(k.to_rat(&sq), Some(rat(2)));
        }
        // x^2 + 1 stays irreducible over Q(sqrt2)
        let g = np_from_qpoly(&k, &vec![rat(1), rat(0), rat(1)]);
        assert_eq!(k.factor_squarefree(&g).unwrap().len(), 1);
    }

    #[test]
    fn factor_with_multiplicities_over_extension() {
        let k = sqrt2_tower();
        // (x - sqrt2)^2 (x + 1)
        let lin: NfPoly = vec![k.neg(&k.generator(0)), k.one()];
        let other: NfPoly = vec![k.one(), k.one()];
        let f = k.np_mul(&k.np_mul(&lin, &lin), &other);
        let parts = k.factor(&f).unwrap();
        assert_eq!(parts.len(), 2);
        let mut mults: Vec<u32> = parts.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let mut t = Tower::rationals();
        // Keep stacking x^2 - p for distinct primes until the cap trips.
        let primes = [2i64, 3, 5, 7, 11, 13, 17];
        let mut err = None;
        for p in primes {
            let m: NfPoly = vec![t.from_rat(&rat(-p)), t.zero(), t.one()];
            match t.extend_unchecked(m) {
                Ok(next) => t = next,
                Err(e) => {
                    err = Some(e);
                    break;
                }
            }
        }
        assert!(matches!(err, Some(TowerError::DegreeCapExceeded { .. })));
    }

    #[test]
    fn rendering_is_compact() {
        let k = sqrt2_tower();
        let e = k.add(&k.scale(&k.generator(0), &rat(3)), &k.from_rat(&rat(-1)));
        assert_eq!(k.elem_to_string(&e), "-1 + 3*a1");
        assert_eq!(k.describe(), "a2 + (-2) = 0".replace("a2", "a1^2"));
    }
}
