//! Univariate factorization over the rationals: Berlekamp over a small
//! prime field, quadratic Hensel lifting, and Zassenhaus recombination.
//!
//! This is the ground floor of the number-field tower machinery; norms of
//! polynomials over towers are factored here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Rat;
use crate::unipoly::{qp_deg, qp_monic, qp_normalize, qp_squarefree_decomposition, QPoly};

type ZPoly = Vec<BigInt>;

fn z_normalize(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    z_normalize(out)
}

fn z_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn z_primitive(p: &ZPoly) -> ZPoly {
    let c = z_content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Exact division over the integers; `None` when it does not divide.
fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if b.is_empty() || a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    loop {
        rem = z_normalize(rem);
        if rem.is_empty() {
            break;
        }
        let dr = rem.len() - 1;
        if dr < db {
            return None;
        }
        let (q, r) = rem.last().unwrap().div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = dr - db;
        quot[shift] = q.clone();
        for (j, cb) in b.iter().enumerate() {
            rem[shift + j] -= &q * cb;
        }
    }
    Some(z_normalize(quot))
}

// ---------------------------------------------------------------------------
// Arithmetic and Berlekamp factorization over a small prime field.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

type FpPoly = Vec<u64>;

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, (a % self.p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert_eq!(r, 1, "inverse of zero mod p");
        t.rem_euclid(self.p as i128) as u64
    }

    fn norm(&self, p: FpPoly) -> FpPoly {
        let mut p = p;
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    fn p_mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ca, cb));
            }
        }
        self.norm(out)
    }

    fn p_divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty());
        let db = b.len() - 1;
        let lead_inv = self.inv(*b.last().unwrap());
        let mut rem = a.clone();
        let mut quot = vec![0; a.len().saturating_sub(db)];
        loop {
            rem = self.norm(rem);
            if rem.len() <= db {
                break;
            }
            let dr = rem.len() - 1;
            let factor = self.mul(*rem.last().unwrap(), lead_inv);
            let shift = dr - db;
            quot[shift] = factor;
            for (j, &cb) in b.iter().enumerate() {
                rem[shift + j] = self.sub(rem[shift + j], self.mul(factor, cb));
            }
        }
        (self.norm(quot), rem)
    }

    fn p_gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let (_, r) = self.p_divrem(&a, &b);
            a = b;
            b = r;
        }
        self.p_monic(&a)
    }

    fn p_monic(&self, a: &FpPoly) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    fn p_derivative(&self, a: &FpPoly) -> FpPoly {
        if a.len() <= 1 {
            return Vec::new();
        }
        self.norm(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
                .collect(),
        )
    }

    fn p_sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = self.add(out[i], c);
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = self.sub(out[i], c);
        }
        self.norm(out)
    }

    /// Bezout coefficients: s*a + t*b = 1 for coprime a, b.
    fn p_egcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.p_divrem(&r0, &r1);
            let qs = self.p_mul(&q, &s1);
            let qt = self.p_mul(&q, &t1);
            let new_s = self.p_sub(&s0, &qs);
            let new_t = self.p_sub(&t0, &qt);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, new_s);
            (t0, t1) = (t1, new_t);
        }
        assert_eq!(r0.len(), 1, "egcd expects coprime inputs");
        let inv = self.inv(r0[0]);
        (
            s0.iter().map(|&c| self.mul(c, inv)).collect(),
            t0.iter().map(|&c| self.mul(c, inv)).collect(),
        )
    }

    /// x^p mod f by binary exponentiation.
    fn x_pow_p_mod(&self, f: &FpPoly) -> FpPoly {
        let mut result = vec![1u64];
        let mut base = vec![0, 1];
        let mut e = self.p;
        while e > 0 {
            if e & 1 == 1 {
                let prod = self.p_mul(&result, &base);
                result = self.p_divrem(&prod, f).1;
            }
            let sq = self.p_mul(&base, &base);
            base = self.p_divrem(&sq, f).1;
            e >>= 1;
        }
        result
    }

    /// Berlekamp factorization of a monic squarefree polynomial.
    fn factor_squarefree(&self, f: &FpPoly) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.clone()];
        }
        let xp = self.x_pow_p_mod(f);
        let mut rows: Vec<FpPoly> = Vec::with_capacity(n);
        rows.push(vec![1]);
        for _ in 1..n {
            let prod = self.p_mul(rows.last().unwrap(), &xp);
            rows.push(self.p_divrem(&prod, f).1);
        }
        // Nullspace of (A^T - I), where row i of A holds x^{ip} mod f.
        let mut m = vec![vec![0u64; n]; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                m[j][i] = c;
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.sub(row[i], 1);
        }
        let basis = self.nullspace(m);
        let r = basis.len();
        if r == 1 {
            return vec![self.p_monic(f)];
        }
        let mut factors = vec![self.p_monic(f)];
        for v in &basis {
            if factors.len() == r {
                break;
            }
            let vp = self.norm(v.clone());
            if vp.len() <= 1 {
                continue; // the constants split nothing
            }
            let mut next: Vec<FpPoly> = Vec::new();
            for w in factors.drain(..) {
                if w.len() - 1 <= 1 {
                    next.push(w);
                    continue;
                }
                let mut pieces = vec![w];
                for s in 0..self.p {
                    if pieces.iter().all(|piece| piece.len() - 1 <= 1) {
                        break;
                    }
                    let mut still = Vec::new();
                    for piece in pieces.drain(..) {
                        if piece.len() - 1 <= 1 {
                            still.push(piece);
                            continue;
                        }
                        let mut shifted = vp.clone();
                        if shifted.is_empty() {
                            shifted = vec![0];
                        }
                        shifted[0] = self.sub(shifted[0], s);
                        let g = self.p_gcd(&piece, &self.norm(shifted));
                        if g.len() > 1 && g.len() < piece.len() {
                            let (q, rem) = self.p_divrem(&piece, &g);
                            debug_assert!(rem.is_empty());
                            still.push(self.p_monic(&g));
                            still.push(self.p_monic(&q));
                        } else {
                            still.push(piece);
                        }
                    }
                    pieces = still;
                }
                next.extend(pieces);
            }
            factors = next;
        }
        factors
    }

    /// Nullspace basis of a square matrix over F_p (reduced row echelon).
    fn nullspace(&self, mut m: Vec<Vec<u64>>) -> Vec<FpPoly> {
        let n = m.len();
        let mut pivot_of_col = vec![usize::MAX; n];
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = self.inv(m[row][col]);
            for c in 0..n {
                m[row][c] = self.mul(m[row][c], inv);
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..n {
                        let delta = self.mul(factor, m[row][c]);
                        m[r][c] = self.sub(m[r][c], delta);
                    }
                }
            }
            pivot_of_col[col] = row;
            row += 1;
        }
        let mut basis = Vec::new();
        for col in 0..n {
            if pivot_of_col[col] != usize::MAX {
                continue;
            }
            let mut v = vec![0u64; n];
            v[col] = 1;
            for (c, &pr) in pivot_of_col.iter().enumerate() {
                if pr != usize::MAX {
                    v[c] = self.sub(0, m[pr][col]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting mod p^(2^j) with big integers.
// ---------------------------------------------------------------------------

fn zm_reduce(p: &ZPoly, m: &BigInt) -> ZPoly {
    z_normalize(p.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    zm_reduce(&z_mul(a, b), m)
}

fn zm_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    zm_reduce(&out, m)
}

fn zm_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    zm_reduce(&out, m)
}

/// Division with remainder mod m by a monic divisor.
fn zm_divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    loop {
        rem = z_normalize(rem);
        if rem.len() <= db {
            break;
        }
        let dr = rem.len() - 1;
        let factor = rem.last().unwrap().clone();
        let shift = dr - db;
        quot[shift] += &factor;
        for (j, cb) in b.iter().enumerate() {
            rem[shift + j] -= &factor * cb;
        }
    }
    (zm_reduce(&quot, m), zm_reduce(&rem, m))
}

struct HenselPair {
    g: ZPoly,
    h: ZPoly,
    s: ZPoly,
    t: ZPoly,
}

/// One quadratic lifting step: from a factorization mod m to mod m^2.
/// f, g and h are monic.
fn hensel_step(f: &ZPoly, pair: &HenselPair, m: &BigInt) -> HenselPair {
    let m2 = m * m;
    let gh = zm_mul(&pair.g, &pair.h, &m2);
    let e = zm_sub(&zm_reduce(f, &m2), &gh, &m2);
    let se = zm_mul(&pair.s, &e, &m2);
    let (q, r) = zm_divrem_monic(&se, &pair.h, &m2);
    let te = zm_mul(&pair.t, &e, &m2);
    let qg = zm_mul(&q, &pair.g, &m2);
    let g1 = zm_add(&pair.g, &zm_add(&te, &qg, &m2), &m2);
    let h1 = zm_add(&pair.h, &r, &m2);
    debug_assert!(h1.last().is_some_and(|c| c.is_one()));
    debug_assert!(g1.last().is_some_and(|c| c.is_one()));

    let sg = zm_mul(&pair.s, &g1, &m2);
    let th = zm_mul(&pair.t, &h1, &m2);
    let mut b = zm_add(&sg, &th, &m2);
    if b.is_empty() {
        b = vec![BigInt::zero()];
    }
    b[0] -= BigInt::one();
    let b = zm_reduce(&b, &m2);
    let sb = zm_mul(&pair.s, &b, &m2);
    let (c, d) = zm_divrem_monic(&sb, &h1, &m2);
    let s1 = zm_sub(&pair.s, &d, &m2);
    let tb = zm_mul(&pair.t, &b, &m2);
    let cg = zm_mul(&c, &g1, &m2);
    let t1 = zm_sub(&zm_sub(&pair.t, &tb, &m2), &cg, &m2);
    HenselPair {
        g: g1,
        h: h1,
        s: s1,
        t: t1,
    }
}

fn fp_to_z(p: &FpPoly) -> ZPoly {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift the factorization f = prod(factors) mod p to the target modulus
/// (a power of p), recursing on a balanced split of the factor list.
fn lift_tree(fp: Fp, f: &ZPoly, factors: &[FpPoly], p: &BigInt, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zm_reduce(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(vec![1u64], |acc, x| fp.p_mul(&acc, x));
    let h0 = right.iter().fold(vec![1u64], |acc, x| fp.p_mul(&acc, x));
    let (s0, t0) = fp.p_egcd(&g0, &h0);
    let mut pair = HenselPair {
        g: fp_to_z(&g0),
        h: fp_to_z(&h0),
        s: fp_to_z(&s0),
        t: fp_to_z(&t0),
    };
    let mut m = p.clone();
    while &m < target {
        pair = hensel_step(f, &pair, &m);
        m = &m * &m;
    }
    let mut out = lift_tree(fp, &pair.g, left, p, target);
    out.extend(lift_tree(fp, &pair.h, right, p, target));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus over the integers.
// ---------------------------------------------------------------------------

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

fn z_reduce_mod_p(f: &ZPoly, fp: Fp) -> FpPoly {
    let p = BigInt::from(fp.p);
    fp.norm(
        f.iter()
            .map(|c| c.mod_floor(&p).to_u64().unwrap())
            .collect(),
    )
}

fn symmetric_rep(p: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_normalize(
        p.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Factor a primitive squarefree integer polynomial into irreducible
/// primitive factors with positive leading coefficients.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let positive = |mut g: ZPoly| {
        if g.last().unwrap().is_negative() {
            g = g.iter().map(|c| -c).collect();
        }
        g
    };
    if n == 1 {
        return vec![positive(f.clone())];
    }
    // Monicize: F(x) = l^(n-1) f(x/l) is monic with integer coefficients;
    // the coefficient of x^i in F is f_i * l^(n-1-i).
    let l = f.last().unwrap().clone();
    let monic_input = l.is_one();
    let big_f: ZPoly = if monic_input {
        f.clone()
    } else {
        (0..=n)
            .map(|i| {
                if i == n {
                    BigInt::one()
                } else {
                    &f[i] * l.pow((n - 1 - i) as u32)
                }
            })
            .collect()
    };
    debug_assert!(big_f.last().unwrap().is_one());

    // Pick a prime where F stays squarefree.
    let mut chosen = None;
    for &p in PRIMES {
        let fp = Fp { p };
        let fbar = z_reduce_mod_p(&big_f, fp);
        if fbar.len() != big_f.len() {
            continue;
        }
        let deriv = fp.p_derivative(&fbar);
        if deriv.is_empty() {
            continue;
        }
        if fp.p_gcd(&fbar, &deriv).len() == 1 {
            chosen = Some((fp, fbar));
            break;
        }
    }
    let (fp, fbar) = chosen.expect("no good prime found for a squarefree polynomial");

    let modular = fp.factor_squarefree(&fp.p_monic(&fbar));
    if modular.len() == 1 {
        return vec![positive(f.clone())];
    }

    // Landau-Mignotte bound on the coefficients of factors of monic F.
    let height = big_f
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    let bound = (BigInt::from(n as u64 + 1)).sqrt() * (BigInt::one() << n) * height;
    let two_bound = BigInt::from(2) * &bound + 1;
    let p_big = BigInt::from(fp.p);
    let mut target = p_big.clone();
    while target < two_bound {
        target = &target * &target;
    }

    let lifted = lift_tree(fp, &zm_reduce(&big_f, &target), &modular, &p_big, &target);

    // Recombine subsets of lifted factors into true integer factors of F.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut f_left = big_f.clone();
    let mut found: Vec<ZPoly> = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut progressed = false;
        let indices: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&indices, size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = zm_mul(&cand, &remaining[i], &target);
            }
            let cand = symmetric_rep(&cand, &target);
            if let Some(quot) = z_div_exact(&f_left, &cand) {
                found.push(cand);
                f_left = quot;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                progressed = true;
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if f_left.len() > 1 {
        found.push(f_left);
    }

    // Undo the monicization: factors of f are primitive parts of G(l x).
    found
        .into_iter()
        .map(|g| {
            let mapped: ZPoly = if monic_input {
                g
            } else {
                z_normalize(
                    g.iter()
                        .enumerate()
                        .map(|(i, c)| c * l.pow(i as u32))
                        .collect(),
                )
            };
            positive(z_primitive(&mapped))
        })
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        combo: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if combo.len() == k {
            out.push(combo.clone());
            return;
        }
        for i in start..items.len() {
            combo.push(items[i]);
            go(items, k, i + 1, combo, out);
            combo.pop();
        }
    }
    let mut out = Vec::new();
    let mut combo = Vec::with_capacity(k);
    go(items, k, 0, &mut combo, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Public entry points over Q.
// ---------------------------------------------------------------------------

fn q_to_primitive_z(p: &QPoly) -> ZPoly {
    let mut denom = BigInt::one();
    for c in p {
        denom = denom.lcm(c.denom());
    }
    let scaled: ZPoly = p
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    z_primitive(&z_normalize(scaled))
}

fn z_to_q_monic(p: &ZPoly) -> QPoly {
    qp_monic(&qp_normalize(
        p.iter().map(|c| Rat::from_integer(c.clone())).collect(),
    ))
}

/// Factor a squarefree rational polynomial into monic irreducible factors.
pub fn q_factor_squarefree(p: &QPoly) -> Vec<QPoly> {
    let d = qp_deg(p).expect("cannot factor the zero polynomial");
    if d == 0 {
        return Vec::new();
    }
    let z = q_to_primitive_z(p);
    zassenhaus(&z).iter().map(z_to_q_monic).collect()
}

/// Full factorization over Q: monic irreducible factors with
/// multiplicities. The constant in front is dropped.
pub fn q_factor(p: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    for (part, mult) in qp_squarefree_decomposition(p) {
        for factor in q_factor_squarefree(&part) {
            out.push((factor, mult));
        }
    }
    out
}

/// True when the polynomial is irreducible over Q (degree >= 1).
pub fn q_is_irreducible(p: &QPoly) -> bool {
    match qp_deg(p) {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let parts = qp_squarefree_decomposition(p);
            if parts.len() != 1 || parts[0].1 != 1 {
                return false;
            }
            q_factor_squarefree(&parts[0].0).len() == 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::unipoly::qp_mul;

    fn qp(coeffs: &[i64]) -> QPoly {
        qp_normalize(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn factors_quadratics() {
        let mut fs = q_factor_squarefree(&qp(&[-1, 0, 1]));
        fs.sort_by(|a, b| a[0].cmp(&b[0]));
        assert_eq!(fs, vec![qp(&[-1, 1]), qp(&[1, 1])]);
        assert_eq!(q_factor_squarefree(&qp(&[1, 0, 1])), vec![qp(&[1, 0, 1])]);
        assert!(q_is_irreducible(&qp(&[-2, 0, 1])));
    }

    #[test]
    fn factors_products_of_irreducibles() {
        // (x^2 + 1)(x^2 - 2)(x - 3)
        let f = qp_mul(&qp_mul(&qp(&[1, 0, 1]), &qp(&[-2, 0, 1])), &qp(&[-3, 1]));
        let fs = q_factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&qp(&[-3, 1])));
        assert!(fs.contains(&qp(&[1, 0, 1])));
        assert!(fs.contains(&qp(&[-2, 0, 1])));
    }

    #[test]
    fn factors_with_multiplicities() {
        // (x-1)^2 (x^2+x+1)^3
        let sq = qp_mul(&qp(&[-1, 1]), &qp(&[-1, 1]));
        let cube = qp_mul(&qp_mul(&qp(&[1, 1, 1]), &qp(&[1, 1, 1])), &qp(&[1, 1, 1]));
        let f = qp_mul(&sq, &cube);
        let mut fs = q_factor(&f);
        fs.sort_by_key(|(_, m)| *m);
        assert_eq!(fs, vec![(qp(&[-1, 1]), 2), (qp(&[1, 1, 1]), 3)]);
    }

    #[test]
    fn factors_non_monic_inputs() {
        // (2x - 1)(3x + 5) -> monic forms (x - 1/2)(x + 5/3)
        let f = qp_mul(&qp(&[-1, 2]), &qp(&[5, 3]));
        let mut fs = q_factor_squarefree(&f);
        fs.sort_by(|a, b| a[0].cmp(&b[0]));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], vec![crate::poly::ratio(-1, 2), rat(1)]);
        assert_eq!(fs[1], vec![crate::poly::ratio(5, 3), rat(1)]);
    }

    #[test]
    fn degree_six_split() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = qp(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = q_factor_squarefree(&f);
        assert_eq!(fs.len(), 4);
        let mut degs: Vec<usize> = fs.iter().map(|g| g.len() - 1).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        let prod = fs.iter().fold(qp(&[1]), |acc, g| qp_mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn random_products_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..15 {
            let a = qp(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4), 1]);
            let b = qp(&[
                rng.gen_range(-4..=4),
                rng.gen_range(-4..=4),
                rng.gen_range(1..=3),
            ]);
            if qp_deg(&a) != Some(2) || qp_deg(&b) != Some(2) {
                continue;
            }
            let f = qp_mul(&a, &b);
            let parts = q_factor(&f);
            let mut prod = qp(&[1]);
            for (g, m) in &parts {
                for _ in 0..*m {
                    prod = qp_mul(&prod, g);
                }
            }
            let lead = f.last().unwrap() / prod.last().unwrap();
            assert_eq!(crate::unipoly::qp_scale(&prod, &lead), f);
        }
    }
}
