//! Table-driven arithmetic on canonical indices, for the pair loops.
//!
//! Multiplication goes through discrete log / antilog tables against the
//! field generator. Addition is digitwise mod `p` with no carries, so an
//! index splits as `hi * P + lo` with `P = p^ceil(n/2)` and each half is added
//! through one `P x P` table.

use super::field::{ExtField, FieldElem};

/// Largest `q` for which log tables are built.
pub const LOG_TABLE_LIMIT: u64 = 1 << 23;
/// Largest half-table size `P^2`.
const HALF_TABLE_LIMIT: u64 = 1 << 22;

struct LogTables {
    /// `log[a]` for `a != 0`; `log[0]` unused.
    log: Vec<u32>,
    /// `exp[k] = g^k` for `k < 2(q-1)`.
    exp: Vec<u32>,
}

struct HalfTables {
    half: u32,
    add: Vec<u32>,
    sub: Vec<u32>,
    neg: Vec<u32>,
}

/// Arithmetic on `u32` canonical indices of a field with `q <= 2^31`.
pub struct IndexedField {
    field: ExtField,
    p: u32,
    q: u32,
    logs: Option<LogTables>,
    halves: Option<HalfTables>,
}

fn digit_op(p: u32, mut a: u32, mut b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 || b > 0 {
        out += f(a % p, b % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

impl IndexedField {
    pub fn new(field: &ExtField) -> Self {
        let p = field.p() as u32;
        let q = field.q() as u32;
        let n = field.n();
        let logs = (field.q() <= LOG_TABLE_LIMIT).then(|| {
            let order = (q - 1) as usize;
            let g = field.generator();
            let mut log = vec![0u32; q as usize];
            let mut exp = Vec::with_capacity(2 * order);
            let mut x = field.one();
            for k in 0..order {
                let idx = field.index(&x) as u32;
                exp.push(idx);
                log[idx as usize] = k as u32;
                x = field.mul(&x, &g).expect("same field");
            }
            exp.extend_from_within(..order);
            LogTables { log, exp }
        });
        let half = field.p().pow(n.div_ceil(2));
        let halves = (half * half <= HALF_TABLE_LIMIT).then(|| {
            let h = half as u32;
            let mut add = Vec::with_capacity((half * half) as usize);
            let mut sub = Vec::with_capacity((half * half) as usize);
            for a in 0..h {
                for b in 0..h {
                    add.push(digit_op(p, a, b, |x, y| (x + y) % p));
                    sub.push(digit_op(p, a, b, |x, y| (x + p - y) % p));
                }
            }
            let neg = (0..h).map(|a| digit_op(p, a, 0, |x, _| (p - x) % p)).collect();
            HalfTables { half: h, add, sub, neg }
        });
        IndexedField { field: field.clone(), p, q, logs, halves }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn has_log_tables(&self) -> bool {
        self.logs.is_some()
    }

    pub fn index_of(&self, a: &FieldElem) -> u32 {
        self.field.index(a) as u32
    }

    pub fn elem(&self, idx: u32) -> FieldElem {
        self.field.from_index(idx as u64)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.halves {
            Some(t) => {
                let h = t.half;
                let (ah, al) = (a / h, a % h);
                let (bh, bl) = (b / h, b % h);
                t.add[(ah * h + bh) as usize] * h + t.add[(al * h + bl) as usize]
            }
            None => {
                let p = self.p;
                digit_op(p, a, b, |x, y| (x + y) % p)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        match &self.halves {
            Some(t) => {
                let h = t.half;
                let (ah, al) = (a / h, a % h);
                let (bh, bl) = (b / h, b % h);
                t.sub[(ah * h + bh) as usize] * h + t.sub[(al * h + bl) as usize]
            }
            None => {
                let p = self.p;
                digit_op(p, a, b, |x, y| (x + p - y) % p)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.halves {
            Some(t) => t.neg[(a / t.half) as usize] * t.half + t.neg[(a % t.half) as usize],
            None => {
                let p = self.p;
                digit_op(p, a, 0, |x, _| (p - x) % p)
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.logs {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => {
                let x = self.field.mul(&self.elem(a), &self.elem(b)).expect("same field");
                self.index_of(&x)
            }
        }
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// `g^k` for the field generator.
    pub fn gen_pow(&self, k: u64) -> u32 {
        let k = k % (self.q as u64 - 1);
        match &self.logs {
            Some(t) => t.exp[k as usize],
            None => {
                let x = self.field.pow(&self.field.generator(), k).expect("same field");
                self.index_of(&x)
            }
        }
    }
}
