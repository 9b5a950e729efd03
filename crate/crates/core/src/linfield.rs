//! Linear dynamical systems over prime fields GF(p).
//!
//! States of `GF(p)^d` are ordered lexicographically with the leftmost
//! coordinate most significant, and a matrix acts on column vectors,
//! `x -> M x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::network::{digits_of, index_of, tuple_label, Fds, Function, Prn, RawPrn};

/// Largest modulus accepted; primality is checked by trial division.
pub const MAX_MODULUS: u32 = 65_521;

/// Largest dimension for which characteristic polynomials are expanded.
pub const MAX_CHARPOLY_DIM: usize = 8;

/// Largest state space `p^d` a linear system may have.
pub const MAX_LINEAR_STATES: usize = 1 << 20;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn check_modulus(p: u32) -> Result<()> {
    if p > MAX_MODULUS || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfElement {
    value: u32,
    p: u32,
}

impl GfElement {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_modulus(p)?;
        Ok(GfElement {
            value: value.rem_euclid(p as i64) as u32,
            p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    fn raw(value: u64, p: u32) -> Self {
        GfElement {
            value: (value % p as u64) as u32,
            p,
        }
    }

    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = self.value as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        Some(GfElement::raw(result, self.p))
    }
}

impl Add for GfElement {
    type Output = GfElement;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        GfElement::raw(self.value as u64 + rhs.value as u64, self.p)
    }
}

impl Sub for GfElement {
    type Output = GfElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GfElement {
    type Output = GfElement;
    fn neg(self) -> Self {
        GfElement::raw((self.p - self.value) as u64, self.p)
    }
}

impl Mul for GfElement {
    type Output = GfElement;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        GfElement::raw(self.value as u64 * rhs.value as u64, self.p)
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl GfMatrix {
    /// Entries are reduced modulo `p`.
    pub fn new(p: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(GfMatrix {
            p,
            rows,
            cols,
            entries: entries
                .iter()
                .map(|&e| e.rem_euclid(p as i64) as u32)
                .collect(),
        })
    }

    pub fn from_rows(p: u32, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        GfMatrix::new(p, rows.len(), cols, &flat)
    }

    pub fn zero(p: u32, d: usize) -> Result<Self> {
        GfMatrix::new(p, d, d, &vec![0; d * d])
    }

    pub fn identity(p: u32, d: usize) -> Result<Self> {
        let mut e = vec![0; d * d];
        for i in 0..d {
            e[i * d + i] = 1;
        }
        GfMatrix::new(p, d, d, &e)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> GfElement {
        GfElement::raw(self.entries[r * self.cols + c] as u64, self.p)
    }

    pub fn raw_entries(&self) -> &[u32] {
        &self.entries
    }

    /// `M x` for a column vector of residues.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|r| {
                let s: u64 = (0..self.cols)
                    .map(|c| self.entries[r * self.cols + c] as u64 * x[c] as u64)
                    .sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.entries[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Monic polynomial over GF(p), constant coefficient first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: u32,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn new(p: u32, coeffs: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        let coeffs: Vec<u32> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect();
        if coeffs.len() < 2 || *coeffs.last().unwrap() != 1 {
            return Err(Error::NonMonic);
        }
        Ok(Polynomial { p, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{k}"),
            });
        }
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

/// Standard companion matrix: ones on the subdiagonal and the negated
/// coefficients in the last column.
pub fn companion_matrix(poly: &Polynomial) -> GfMatrix {
    let d = poly.degree();
    let p = poly.p;
    let mut e = vec![0u32; d * d];
    for i in 1..d {
        e[i * d + (i - 1)] = 1;
    }
    for i in 0..d {
        e[i * d + (d - 1)] = (p - poly.coeffs[i]) % p;
    }
    let m = GfMatrix {
        p,
        rows: d,
        cols: d,
        entries: e,
    };
    if d <= 4 {
        debug_assert_eq!(
            characteristic_polynomial(&m).ok().as_ref(),
            Some(poly),
            "companion matrix has the wrong characteristic polynomial"
        );
    }
    m
}

// polynomial helpers on plain coefficient vectors (constant first)
fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    out.into_iter().map(|v| v as u32).collect()
}

fn poly_add_into(acc: &mut Vec<u32>, term: &[u32], negate: bool, p: u32) {
    if acc.len() < term.len() {
        acc.resize(term.len(), 0);
    }
    for (a, &t) in acc.iter_mut().zip(term) {
        let t = if negate { (p - t) % p } else { t };
        *a = (*a + t) % p;
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each swap flips the sign
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    out.push((a.clone(), even));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `det(x I - M)` by permutation expansion.
pub fn characteristic_polynomial(m: &GfMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            left: m.rows,
            right: m.cols,
        });
    }
    let d = m.rows;
    if d == 0 || d > MAX_CHARPOLY_DIM {
        return Err(Error::invalid(format!(
            "characteristic polynomial supported for 1 <= dim <= {MAX_CHARPOLY_DIM}, got {d}"
        )));
    }
    let p = m.p;
    let entry = |r: usize, c: usize| -> Vec<u32> {
        let neg = (p - m.entries[r * d + c]) % p;
        if r == c {
            vec![neg, 1]
        } else {
            vec![neg]
        }
    };
    let mut acc = vec![0u32];
    for (perm, even) in permutations(d) {
        let mut term = vec![1u32];
        for (r, &c) in perm.iter().enumerate() {
            term = poly_mul(&term, &entry(r, c), p);
        }
        poly_add_into(&mut acc, &term, !even, p);
    }
    acc.truncate(d + 1);
    let coeffs: Vec<i64> = acc.into_iter().map(i64::from).collect();
    Polynomial::new(p, &coeffs)
}

/// State ids of `GF(p)^d` in canonical order.
pub fn linear_state_ids(p: u32, d: usize) -> Result<Vec<String>> {
    let n = state_count(p, d)?;
    Ok((0..n)
        .map(|i| tuple_label(&digits_of(i, p as usize, d)))
        .collect())
}

fn state_count(p: u32, d: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..d {
        n = n
            .checked_mul(p as usize)
            .filter(|&n| n <= MAX_LINEAR_STATES)
            .ok_or_else(|| Error::Capacity {
                what: "linear state space".into(),
                needed: (p as u128).saturating_pow(d as u32),
                cap: MAX_LINEAR_STATES as u128,
            })?;
    }
    Ok(n)
}

fn linear_table(m: &GfMatrix) -> Result<Vec<usize>> {
    if !m.is_square() || m.rows == 0 {
        return Err(Error::invalid(format!(
            "linear map needs a non-empty square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let (p, d) = (m.p as usize, m.rows);
    let n = state_count(m.p, d)?;
    Ok((0..n)
        .map(|i| index_of(&m.apply(&digits_of(i, p, d)), p))
        .collect())
}

/// The system `x -> M x` on `GF(p)^d`.
pub fn linear_fds(name: impl Into<String>, m: &GfMatrix) -> Result<Fds> {
    let table = linear_table(m)?;
    Fds::new(name, linear_state_ids(m.p, m.rows)?, table)
}

/// Superposition of linear systems sharing one modulus and dimension.
pub fn linear_prn(name: impl Into<String>, parts: &[(String, GfMatrix, f64)]) -> Result<Prn> {
    let first = parts
        .first()
        .ok_or_else(|| Error::invalid("a linear network needs at least one matrix"))?;
    let (p, dims) = (first.1.p, first.1.dims());
    let mut functions = Vec::with_capacity(parts.len());
    for (fname, m, _) in parts {
        if m.p != p {
            return Err(Error::invalid(format!(
                "matrix `{fname}` is over GF({}), expected GF({p})",
                m.p
            )));
        }
        if m.dims() != dims {
            return Err(Error::DimensionMismatch {
                left: dims.0,
                right: m.rows,
            });
        }
        functions.push(Function::new(fname.clone(), linear_table(m)?));
    }
    RawPrn {
        name: name.into(),
        states: linear_state_ids(p, dims.0)?,
        functions,
        probs: parts.iter().map(|(_, _, c)| *c).collect(),
    }
    .build()
}

/// The four representative linear maps on `GF(2)^2`, one per characteristic
/// polynomial `x^2`, `x^2 + x`, `x^2 + 1`, `x^2 + x + 1`.
pub fn z2_squared_catalog() -> [GfMatrix; 4] {
    let m = |rows: &[&[i64]]| GfMatrix::from_rows(2, rows).expect("literal matrix");
    [
        m(&[&[0, 0], &[0, 0]]),
        m(&[&[0, 0], &[0, 1]]),
        m(&[&[1, 0], &[0, 1]]),
        m(&[&[0, 1], &[1, 1]]),
    ]
}

/// The linear maps of GF(3): `x`, `2x`, `0`.
pub fn z3_catalog() -> [GfMatrix; 3] {
    let m = |k: i64| GfMatrix::new(3, 1, 1, &[k]).expect("literal matrix");
    [m(1), m(2), m(0)]
}
