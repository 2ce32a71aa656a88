use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Membership bitset over the canonical indices `0..q` of a field.
#[derive(Clone, PartialEq, Eq)]
pub struct ElemSet {
    q: u64,
    words: Vec<u64>,
    count: u64,
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElemSet {{ q: {}, count: {} }}", self.q, self.count)
    }
}

/// Serialized form of an [`ElemSet`]. The hash covers the bitset as
/// `ceil(q/8)` bytes, element `k` at bit `k % 8` of byte `k / 8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemSetSummary {
    pub q: u64,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_witness: Option<u64>,
    pub sha256_of_bitset: String,
    /// Hex dump of the same bytes, only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<String>,
}

impl ElemSet {
    pub fn new(q: u64) -> Self {
        ElemSet { q, words: vec![0; q.div_ceil(64) as usize], count: 0 }
    }

    pub fn full(q: u64) -> Self {
        let mut s = Self::new(q);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s.count = q;
        s
    }

    pub fn from_indices(q: u64, items: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::new(q);
        for k in items {
            s.insert(k);
        }
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.q % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.q
    }

    /// Returns whether `k` was newly inserted.
    pub fn insert(&mut self, k: u32) -> bool {
        assert!((k as u64) < self.q, "index {k} out of range");
        let (w, b) = ((k / 64) as usize, k % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        self.count += fresh as u64;
        fresh
    }

    pub fn contains(&self, k: u32) -> bool {
        (k as u64) < self.q && self.words[(k / 64) as usize] & (1 << (k % 64)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(w as u32 * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.q == other.q && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        assert_eq!(self.q, other.q);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as u64).sum();
    }

    /// Smallest index not in the set, or `None` when the set is everything.
    pub fn complement_witness(&self) -> Option<u32> {
        self.words.iter().enumerate().find_map(|(w, &word)| {
            let k = w as u64 * 64 + (!word).trailing_zeros() as u64;
            (word != u64::MAX && k < self.q).then_some(k as u32)
        })
    }

    pub fn bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.q.div_ceil(8) as usize);
        out
    }

    pub fn sha256_hex(&self) -> String {
        hex::encode(Sha256::digest(self.bytes()))
    }

    pub fn summary(&self, with_bits: bool) -> ElemSetSummary {
        ElemSetSummary {
            q: self.q,
            count: self.count,
            missing_witness: self.complement_witness().map(u64::from),
            sha256_of_bitset: self.sha256_hex(),
            bits: with_bits.then(|| hex::encode(self.bytes())),
        }
    }
}

/// Raw word accumulator for the parallel pair loops; counts are recomputed
/// once when converted into an [`ElemSet`].
pub(crate) struct Bits {
    q: u64,
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(q: u64) -> Self {
        Bits { q, words: vec![0; q.div_ceil(64) as usize] }
    }

    #[inline]
    pub(crate) fn set(&mut self, k: u32) {
        self.words[(k / 64) as usize] |= 1 << (k % 64);
    }

    pub(crate) fn or(mut self, other: Bits) -> Bits {
        for (a, b) in self.words.iter_mut().zip(other.words) {
            *a |= b;
        }
        self
    }

    pub(crate) fn into_set(self) -> ElemSet {
        let mut s = ElemSet { q: self.q, words: self.words, count: 0 };
        s.recount();
        s
    }
}
