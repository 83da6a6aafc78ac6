//! Residue-field orbit checks: `k_F = F_q` inside `k_E = F_{q^2}`.
//!
//! The chambers through a panel of `X_F` that leave `X_F` are labelled by
//! `x` in `k_E \ k_F`. Two families of moves act on these labels:
//! `x -> a^2 x + b` and, in odd characteristic, `x -> 1/(a^2 c x + b)` with
//! `c = x_0^{-2}` for some `x_0` outside `k_F` whose square lies in `k_F`.
//! This module builds both fields explicitly and computes the orbits of the
//! generated group by brute force.
//!
//! Elements of `F_q` are encoded as `sum c_i p^i` over their coefficient
//! vectors; elements of `F_{q^2} = F_q[y]` as `u + q v` for `u + v y`, so the
//! subfield `F_q` is exactly `0..q`.

use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degree {0} is outside 1..=4")]
    DegreeOutOfRange(u32),
    #[error("q = {0} exceeds the limit of 16")]
    TooLarge(u64),
    #[error("operation needs odd characteristic, got p = 2")]
    EvenCharacteristic,
    #[error("no element outside F_q squares into F_q; field arithmetic is broken")]
    NoSquareRootInBase,
    #[error("{0} does not satisfy x^2 in F_q with x outside F_q")]
    InvalidSquareRoot(u32),
    #[error("1/c is a square in F_q for c = {0}")]
    SquareParameter(u32),
    #[error("no (a, b) makes a^2 - b^2/(a^2 c) a non-square; contradicts the expected existence")]
    NoWitness,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Polynomial helpers over `F_p`, coefficients lowest degree first.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv_lead = (1..p).find(|x| x * m[dm] % p == 1).expect("nonzero leading coefficient");
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let f = r[r.len() - 1] * inv_lead % p;
            for (j, &c) in m.iter().enumerate() {
                r[k + j] = (r[k + j] + p * p - f * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients encode `code` in base `p`.
    pub fn monic_from_code(mut code: u32, deg: u32, p: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push(code % p);
            code /= p;
        }
        v.push(1);
        v
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = (m.len() - 1) as u32;
        (1..=deg / 2).all(|k| (0..p.pow(k)).all(|code| !rem(m, &monic_from_code(code, k, p), p).is_empty()))
    }
}

/// `F_q` and `F_{q^2}` with full multiplication tables.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteFieldPair {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Lowest-degree-first coefficients of the monic degree-`n` modulus over `F_p`.
    pub modulus_base: Vec<u32>,
    /// `[c, b]` for the extension modulus `y^2 + b y + c` over `F_q`.
    pub modulus_ext: [u32; 2],
    #[serde(skip)]
    base_add: Vec<u32>,
    #[serde(skip)]
    ext_mul: Vec<u32>,
    #[serde(skip)]
    ext_inv: Vec<u32>,
}

/// Builds `F_{p^n}` with the least monic irreducible modulus (lower
/// coefficients compared from the top) and its quadratic extension with the
/// least monic irreducible `y^2 + b y + c` (compared by `(b, c)`).
pub fn build_fields(p: u32, n: u32) -> Result<FiniteFieldPair, ResidueError> {
    if !is_prime(p) {
        return Err(ResidueError::NotPrime(p));
    }
    if !(1..=4).contains(&n) {
        return Err(ResidueError::DegreeOutOfRange(n));
    }
    let q64 = (p as u64).pow(n);
    if q64 > 16 {
        return Err(ResidueError::TooLarge(q64));
    }
    let q = q64 as u32;

    let modulus_base = (0..p.pow(n))
        .map(|code| fp_poly::monic_from_code(code, n, p))
        .find(|m| fp_poly::is_irreducible(m, p))
        .ok_or_else(|| ResidueError::Internal(format!("no irreducible of degree {n} over F_{p}")))?;

    let decode = |mut x: u32| -> Vec<u32> {
        let mut v = Vec::with_capacity(n as usize);
        for _ in 0..n {
            v.push(x % p);
            x /= p;
        }
        fp_poly::trim(v)
    };
    let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let qs = q as usize;
    let mut base_add = vec![0; qs * qs];
    let mut base_mul = vec![0; qs * qs];
    for a in 0..q {
        let da = decode(a);
        for b in 0..q {
            let db = decode(b);
            let len = da.len().max(db.len());
            let sum: Vec<u32> = (0..len).map(|i| (da.get(i).unwrap_or(&0) + db.get(i).unwrap_or(&0)) % p).collect();
            base_add[a as usize * qs + b as usize] = encode(&fp_poly::trim(sum));
            base_mul[a as usize * qs + b as usize] =
                encode(&fp_poly::rem(&fp_poly::mul(&da, &db, p), &modulus_base, p));
        }
    }

    let badd = |a: u32, b: u32| base_add[(a * q + b) as usize];
    let bmul = |a: u32, b: u32| base_mul[(a * q + b) as usize];
    let bneg = |a: u32| (0..q).find(|&x| badd(a, x) == 0).expect("additive inverse");

    let mut modulus_ext = None;
    'search: for b in 0..q {
        for c in 0..q {
            if (0..q).all(|t| badd(badd(bmul(t, t), bmul(b, t)), c) != 0) {
                modulus_ext = Some([c, b]);
                break 'search;
            }
        }
    }
    let [mc, mb] = modulus_ext.ok_or_else(|| ResidueError::Internal("no irreducible quadratic".into()))?;
    let (neg_c, neg_b) = (bneg(mc), bneg(mb));

    let q2 = qs * qs;
    let mut ext_mul = vec![0; q2 * q2];
    for x in 0..q2 as u32 {
        let (u1, v1) = (x % q, x / q);
        for z in 0..q2 as u32 {
            let (u2, v2) = (z % q, z / q);
            // y^2 = -b y - c
            let vv = bmul(v1, v2);
            let u = badd(bmul(u1, u2), bmul(vv, neg_c));
            let v = badd(badd(bmul(u1, v2), bmul(u2, v1)), bmul(vv, neg_b));
            ext_mul[x as usize * q2 + z as usize] = u + q * v;
        }
    }
    let mut ext_inv = vec![0; q2];
    for x in 1..q2 {
        ext_inv[x] = (1..q2 as u32)
            .find(|&z| ext_mul[x * q2 + z as usize] == 1)
            .ok_or_else(|| ResidueError::Internal(format!("{x} has no inverse")))?;
    }
    Ok(FiniteFieldPair { p, n, q, modulus_base, modulus_ext: [mc, mb], base_add, ext_mul, ext_inv })
}

impl FiniteFieldPair {
    pub fn ext_size(&self) -> u32 {
        self.q * self.q
    }

    pub fn is_base(&self, x: u32) -> bool {
        x < self.q
    }

    /// Coefficient vector `(u, v)` of `u + v y`, each in the base encoding.
    pub fn coefficients(&self, x: u32) -> (u32, u32) {
        (x % self.q, x / self.q)
    }

    pub fn add(&self, x: u32, z: u32) -> u32 {
        let (u1, v1) = self.coefficients(x);
        let (u2, v2) = self.coefficients(z);
        let q = self.q;
        self.base_add[(u1 * q + u2) as usize] + q * self.base_add[(v1 * q + v2) as usize]
    }

    pub fn neg(&self, x: u32) -> u32 {
        (0..self.ext_size()).find(|&z| self.add(x, z) == 0).expect("additive inverse")
    }

    pub fn sub(&self, x: u32, z: u32) -> u32 {
        self.add(x, self.neg(z))
    }

    pub fn mul(&self, x: u32, z: u32) -> u32 {
        self.ext_mul[(x * self.ext_size() + z) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.ext_inv[x as usize])
    }

    pub fn div(&self, x: u32, z: u32) -> Option<u32> {
        self.inv(z).map(|iz| self.mul(x, iz))
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let (mut acc, mut base) = (1, x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.q as u64)
    }

    /// Nonzero squares of `F_q`, ascending.
    pub fn base_squares(&self) -> Vec<u32> {
        let mut s: Vec<u32> = (1..self.q).map(|a| self.mul(a, a)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn is_base_nonzero_square(&self, x: u32) -> bool {
        x != 0 && self.base_squares().contains(&x)
    }

    /// `k_E \ k_F`, ascending.
    pub fn outer_elements(&self) -> Vec<u32> {
        (self.q..self.ext_size()).collect()
    }

    /// Every `x` outside `F_q` with `x^2` in `F_q`, ascending.
    pub fn square_roots_of_base(&self) -> Vec<u32> {
        self.outer_elements().into_iter().filter(|&x| self.is_base(self.mul(x, x))).collect()
    }
}

/// A label move, possibly only partially defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LabelMove {
    /// `x -> a2 x + b`.
    AffineSquare { a2: u32, b: u32 },
    /// `x -> 1 / (a2 c x + b)`.
    Inversion { a2: u32, b: u32, c: u32 },
}

impl LabelMove {
    /// Image of `x`, or `None` when `x` is outside the move's domain.
    pub fn apply(&self, fields: &FiniteFieldPair, x: u32) -> Option<u32> {
        let y = match *self {
            LabelMove::AffineSquare { a2, b } => fields.add(fields.mul(a2, x), b),
            LabelMove::Inversion { a2, b, c } => {
                let den = fields.add(fields.mul(fields.mul(a2, c), x), b);
                fields.inv(den)?
            }
        };
        (!fields.is_base(y)).then_some(y)
    }
}

pub fn affine_square_moves(fields: &FiniteFieldPair) -> Vec<LabelMove> {
    fields
        .base_squares()
        .into_iter()
        .flat_map(|a2| (0..fields.q).map(move |b| LabelMove::AffineSquare { a2, b }))
        .collect()
}

pub fn inversion_moves(fields: &FiniteFieldPair, c: u32) -> Vec<LabelMove> {
    fields
        .base_squares()
        .into_iter()
        .flat_map(|a2| (0..fields.q).map(move |b| LabelMove::Inversion { a2, b, c }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub move_set: String,
    pub orbit_count: usize,
    /// Sizes in the order of the representatives.
    pub orbit_sizes: Vec<usize>,
    /// Least label of each orbit, ascending.
    pub representatives: Vec<u32>,
    /// `(move, input)` pairs outside a move's domain.
    pub excluded_inputs: usize,
}

impl OrbitReport {
    pub fn is_transitive(&self) -> bool {
        self.orbit_count == 1
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by `moves` on `k_E \ k_F`.
pub fn orbits_under(fields: &FiniteFieldPair, moves: &[LabelMove], move_set: &str, exec: Exec) -> OrbitReport {
    let outer = fields.outer_elements();
    let images = exec::map_collect(exec, &outer, |&x| moves.iter().map(|m| m.apply(fields, x)).collect::<Vec<_>>());
    let size = fields.ext_size() as usize;
    let mut parent: Vec<usize> = (0..size).collect();
    let mut excluded = 0;
    for (&x, imgs) in outer.iter().zip(&images) {
        for img in imgs {
            match img {
                Some(y) => {
                    let (rx, ry) = (find(&mut parent, x as usize), find(&mut parent, *y as usize));
                    // keep the least element as root
                    let (lo, hi) = (rx.min(ry), rx.max(ry));
                    parent[hi] = lo;
                }
                None => excluded += 1,
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for &x in &outer {
        *sizes.entry(find(&mut parent, x as usize) as u32).or_insert(0usize) += 1;
    }
    OrbitReport {
        move_set: move_set.to_string(),
        orbit_count: sizes.len(),
        orbit_sizes: sizes.values().copied().collect(),
        representatives: sizes.keys().copied().collect(),
        excluded_inputs: excluded,
    }
}

/// Orbits of `{x -> a^2 x + b : a in F_q^*, b in F_q}`.
pub fn affine_square_orbits(fields: &FiniteFieldPair) -> OrbitReport {
    orbits_under(fields, &affine_square_moves(fields), "affine-square", Exec::default())
}

/// The least `x_0` outside `F_q` with `x_0^2` in `F_q` (odd characteristic).
pub fn least_square_root_of_base(fields: &FiniteFieldPair) -> Result<u32, ResidueError> {
    if fields.p == 2 {
        return Err(ResidueError::EvenCharacteristic);
    }
    fields.square_roots_of_base().first().copied().ok_or(ResidueError::NoSquareRootInBase)
}

/// `c = x_0^{-2}` for a valid `x_0`.
pub fn twist_parameter(fields: &FiniteFieldPair, x0: u32) -> Result<u32, ResidueError> {
    let sq = fields.mul(x0, x0);
    if fields.is_base(x0) || !fields.is_base(sq) {
        return Err(ResidueError::InvalidSquareRoot(x0));
    }
    fields.inv(sq).ok_or(ResidueError::InvalidSquareRoot(x0))
}

/// Orbits after adjoining the twisted inversions built from the least `x_0`.
/// In characteristic 2 the affine-square result is returned unchanged.
pub fn inversion_closure_orbits(fields: &FiniteFieldPair) -> Result<OrbitReport, ResidueError> {
    if fields.p == 2 {
        return Ok(affine_square_orbits(fields));
    }
    inversion_closure_orbits_with(fields, least_square_root_of_base(fields)?)
}

pub fn inversion_closure_orbits_with(fields: &FiniteFieldPair, x0: u32) -> Result<OrbitReport, ResidueError> {
    if fields.p == 2 {
        return Err(ResidueError::EvenCharacteristic);
    }
    let c = twist_parameter(fields, x0)?;
    let mut moves = affine_square_moves(fields);
    moves.extend(inversion_moves(fields, c));
    Ok(orbits_under(fields, &moves, &format!("affine-square + inversion(x0={x0}, c={c})"), Exec::default()))
}

/// Every move restricted to its domain is injective.
pub fn moves_are_injective(fields: &FiniteFieldPair, moves: &[LabelMove]) -> bool {
    moves.iter().all(|m| {
        let mut seen = vec![false; fields.ext_size() as usize];
        fields
            .outer_elements()
            .into_iter()
            .filter_map(|x| m.apply(fields, x))
            .all(|y| !std::mem::replace(&mut seen[y as usize], true))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionIdentityReport {
    pub c: u32,
    /// The `x` with `x^2 = 1/c` used as inputs.
    pub roots: Vec<u32>,
    pub checked: usize,
    /// `(x, a, b)` where the three expressions disagree.
    pub failures: Vec<(u32, u32, u32)>,
}

impl FractionIdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Checks `1/(a^2xc + b) = (a^2xc - b)/(a^4c - b^2) = (x - b/(a^2c))/(a^2 - b^2/(a^2c))`
/// for both roots `x` of `x^2 = 1/c` and every `a != 0`, `b` with nonzero denominators.
pub fn verify_fraction_identity(fields: &FiniteFieldPair, c: u32) -> Result<FractionIdentityReport, ResidueError> {
    if fields.p == 2 {
        return Err(ResidueError::EvenCharacteristic);
    }
    let f = fields;
    let inv_c = f.inv(c).ok_or(ResidueError::SquareParameter(c))?;
    let roots: Vec<u32> = f.outer_elements().into_iter().filter(|&x| f.mul(x, x) == inv_c).collect();
    let mut report = FractionIdentityReport { c, roots: roots.clone(), checked: 0, failures: Vec::new() };
    for &x in &roots {
        for a in 1..f.q {
            let a2 = f.mul(a, a);
            let a2c = f.mul(a2, c);
            for b in 0..f.q {
                let a2xc = f.mul(a2c, x);
                let lhs = f.inv(f.add(a2xc, b));
                let mid = f.div(f.sub(a2xc, b), f.sub(f.mul(f.mul(a2, a2), c), f.mul(b, b)));
                let b_over = f.div(b, a2c);
                let rhs = b_over.and_then(|bo| f.div(f.sub(x, bo), f.sub(a2, f.mul(b, bo))));
                let (Some(lhs), Some(mid), Some(rhs)) = (lhs, mid, rhs) else { continue };
                report.checked += 1;
                if lhs != mid || mid != rhs {
                    report.failures.push((x, a, b));
                }
            }
        }
    }
    Ok(report)
}

/// Lexicographically first `(a, b)` with `a^2 - b^2/(a^2 c)` a nonzero non-square of `F_q`.
pub fn exists_nonsquare_value(fields: &FiniteFieldPair, c: u32) -> Result<(u32, u32), ResidueError> {
    if fields.p == 2 {
        return Err(ResidueError::EvenCharacteristic);
    }
    let f = fields;
    let inv_c = f.inv(c).filter(|&ic| f.is_base(ic)).ok_or(ResidueError::SquareParameter(c))?;
    if f.is_base_nonzero_square(inv_c) {
        return Err(ResidueError::SquareParameter(c));
    }
    for a in 1..f.q {
        let a2 = f.mul(a, a);
        let a2c = f.mul(a2, c);
        for b in 0..f.q {
            let v = f.sub(a2, f.div(f.mul(b, b), a2c).expect("a^2 c is nonzero"));
            if v != 0 && !f.is_base_nonzero_square(v) {
                return Ok((a, b));
            }
        }
    }
    Err(ResidueError::NoWitness)
}
