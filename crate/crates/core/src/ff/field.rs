use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly;
use super::prime::{checked_pow, is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Largest field order we agree to build.
pub const MAX_ORDER: u64 = 1 << 31;

/// An element of `GF(p^n)`: `n` coefficients over `Z_p`, constant term first,
/// tagged with the field it came from.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: Vec<u32>,
    tag: u64,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem{:?}", self.coeffs)
    }
}

/// Replayable description of a field: enough to rebuild it bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    /// `n + 1` coefficients, constant term first, leading 1 last.
    pub modulus: Vec<u64>,
    pub generator_index: u64,
}

struct Inner {
    p: u32,
    n: u32,
    q: u64,
    /// Monic modulus, `n + 1` coefficients.
    modulus: Vec<u32>,
    generator: Vec<u32>,
    /// `p^k` for `k` in `0..=n`.
    place: Vec<u64>,
    tag: u64,
}

/// Arithmetic context for `GF(p^n) = Z_p[x] / (modulus)`.
///
/// Cheap to clone; all clones compare equal and produce compatible elements.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.0.p)
            .field("n", &self.0.n)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for ExtField {}

fn fingerprint(p: u32, modulus: &[u32]) -> u64 {
    // FNV-1a over (p, modulus)
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn order(p: u64, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
    }
    match checked_pow(p, n as u64) {
        Some(q) if q <= MAX_ORDER => Ok(q),
        _ => Err(Error::SizeGuard { p, n: n as u64 }),
    }
}

/// `Z_p` as a degree-1 field.
pub fn make_prime_field(p: u64) -> Result<ExtField> {
    ExtField::new(p, 1)
}

impl ExtField {
    /// `GF(p^n)` with the smallest irreducible modulus and smallest generator.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        order(p, n)?;
        let modulus = poly::find_irreducible(p, n);
        Self::with_modulus(p, &modulus)
    }

    /// Field over a caller-chosen modulus, which must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let field = Self::unchecked(p, modulus, None)?;
        let generator = field.find_generator();
        Ok(field.with_generator_coeffs(generator.coeffs))
    }

    /// Rebuild a field from its descriptor, validating every invariant.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        if d.modulus.len() != d.n as usize + 1 {
            return Err(Error::InvalidRecord("modulus length must be n + 1".into()));
        }
        let field = Self::unchecked(d.p, &d.modulus, None)?;
        if d.generator_index == 0 || d.generator_index >= field.q() {
            return Err(Error::InvalidRecord("generator index out of range".into()));
        }
        let g = field.from_index(d.generator_index);
        if !field.is_generator(&g) {
            return Err(Error::InvalidRecord("generator does not generate".into()));
        }
        Ok(field.with_generator_coeffs(g.coeffs))
    }

    fn unchecked(p: u64, modulus: &[u64], generator: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidParameter("modulus must have degree >= 1".into()));
        }
        let n = (modulus.len() - 1) as u32;
        let q = order(p, n)?;
        if modulus.iter().any(|&c| c >= p) || modulus[n as usize] != 1 {
            return Err(Error::InvalidParameter("modulus must be monic and reduced mod p".into()));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::InvalidParameter("modulus is reducible".into()));
        }
        let p32 = p as u32;
        let modulus: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        let place = (0..=n).map(|k| p.pow(k)).collect();
        let tag = fingerprint(p32, &modulus);
        let mut one = vec![0; n as usize];
        one[0] = 1;
        Ok(ExtField(Arc::new(Inner {
            p: p32,
            n,
            q,
            modulus,
            generator: generator.unwrap_or(one),
            place,
            tag,
        })))
    }

    fn with_generator_coeffs(self, generator: Vec<u32>) -> Self {
        let inner = &self.0;
        ExtField(Arc::new(Inner {
            p: inner.p,
            n: inner.n,
            q: inner.q,
            modulus: inner.modulus.clone(),
            generator,
            place: inner.place.clone(),
            tag: inner.tag,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn generator(&self) -> FieldElem {
        self.elem(self.0.generator.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            n: self.n(),
            modulus: self.modulus(),
            generator_index: self.index(&self.generator()),
        }
    }

    fn elem(&self, coeffs: Vec<u32>) -> FieldElem {
        FieldElem { coeffs, tag: self.0.tag }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(vec![0; self.0.n as usize])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The image of an integer under `Z -> Z_p -> GF(p^n)`.
    pub fn from_int(&self, k: u64) -> FieldElem {
        let mut c = vec![0; self.0.n as usize];
        c[0] = (k % self.p()) as u32;
        self.elem(c)
    }

    /// The class of `x` (the modulus root). Equals `from_int(0)` when `n = 1`
    /// and the modulus is `x`.
    pub fn root(&self) -> FieldElem {
        let mut x = vec![0u64; 2];
        x[1] = 1;
        self.reduce_poly(&x)
    }

    /// Element from coefficients, reducing each mod `p`. Errors on a length
    /// other than `n`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.0.n as usize {
            return Err(Error::FieldMismatch);
        }
        let p = self.p();
        Ok(self.elem(coeffs.iter().map(|&c| (c % p) as u32).collect()))
    }

    /// Canonical index `sum c_k p^k`.
    pub fn index(&self, a: &FieldElem) -> u64 {
        a.coeffs
            .iter()
            .zip(&self.0.place)
            .map(|(&c, &w)| c as u64 * w)
            .sum()
    }

    /// Inverse of [`index`](Self::index). Panics when `idx >= q`.
    pub fn from_index(&self, mut idx: u64) -> FieldElem {
        assert!(idx < self.q(), "index {idx} out of range for q = {}", self.q());
        let p = self.p();
        let coeffs = (0..self.0.n)
            .map(|_| {
                let c = (idx % p) as u32;
                idx /= p;
                c
            })
            .collect();
        self.elem(coeffs)
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        a.tag == self.0.tag
            && a.coeffs.len() == self.0.n as usize
            && a.coeffs.iter().all(|&c| c < self.0.p)
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let p = self.0.p;
        Ok(self.elem(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % p).collect()))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let p = self.0.p;
        Ok(self.elem(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + p - y) % p).collect()))
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        let p = self.0.p;
        Ok(self.elem(a.coeffs.iter().map(|&x| (p - x) % p).collect()))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = self.0.n as usize;
        let p = self.p();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                // n >= 2 forces p < 2^16, so these sums cannot overflow
                prod[i + j] += x as u64 * y as u64;
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        self.reduce_poly(&prod)
    }

    /// Reduce an arbitrary-length polynomial (entries already `< p`) modulo
    /// the monic modulus.
    fn reduce_poly(&self, poly: &[u64]) -> FieldElem {
        let n = self.0.n as usize;
        let p = self.p();
        let mut r = poly.to_vec();
        if r.len() < n {
            r.resize(n, 0);
        }
        for top in (n..r.len()).rev() {
            let c = r[top] % p;
            if c == 0 {
                continue;
            }
            r[top] = 0;
            // x^n = -(m_0 + ... + m_{n-1} x^{n-1})
            for k in 0..n {
                let m = self.0.modulus[k] as u64;
                let idx = top - n + k;
                r[idx] = (r[idx] + (p - c) * m) % p;
            }
        }
        self.elem(r[..n].iter().map(|&c| (c % p) as u32).collect())
    }

    pub fn square(&self, a: &FieldElem) -> Result<FieldElem> {
        self.mul(a, a)
    }

    /// Square-and-multiply; `pow(a, 0) = 1` including `a = 0`.
    pub fn pow(&self, a: &FieldElem, mut k: u64) -> Result<FieldElem> {
        self.check(a)?;
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            base = self.mul_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        self.pow(a, self.q() - 2)
    }

    /// `a^(p^m)`. `m` is taken mod `n` since the `n`-th power is the identity.
    pub fn frobenius(&self, a: &FieldElem, m: u32) -> Result<FieldElem> {
        self.check(a)?;
        let mut out = a.clone();
        for _ in 0..(m % self.0.n) {
            out = self.pow(&out, self.p())?;
        }
        Ok(out)
    }

    /// Order exactly `q - 1`.
    pub fn is_generator(&self, g: &FieldElem) -> bool {
        if !self.contains(g) || self.is_zero(g) {
            return false;
        }
        let one = self.one();
        let m = self.q() - 1;
        prime_divisors(m)
            .into_iter()
            .all(|l| self.pow(g, m / l).map(|x| x != one).unwrap_or(false))
    }

    /// Smallest canonical index whose element has multiplicative order `q - 1`.
    pub fn find_generator(&self) -> FieldElem {
        (1..self.q())
            .map(|idx| self.from_index(idx))
            .find(|g| self.is_generator(g))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// A square root of -1: `g^((q-1)/4)` or its negative, whichever has the
    /// smaller canonical index.
    pub fn sqrt_minus_one(&self) -> Result<FieldElem> {
        if self.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let q = self.q();
        if !(q - 1).is_multiple_of(4) {
            return Err(Error::NoSqrtMinusOne { q });
        }
        let a = self.pow(&self.generator(), (q - 1) / 4)?;
        let b = self.neg(&a)?;
        Ok(if self.index(&a) <= self.index(&b) { a } else { b })
    }
}
