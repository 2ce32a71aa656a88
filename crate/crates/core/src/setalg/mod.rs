//! Distance sets and product sets over `F_q`, as bitsets.
//!
//! Each pair loop splits the outer index range across rayon workers. Every
//! worker fills a private bitset and the partial sets are merged by OR, so
//! the result does not depend on the thread count.

mod elemset;

use rayon::prelude::*;

pub use elemset::{ElemSet, ElemSetSummary};
use elemset::Bits;

use crate::construction::{Construction, Subspace};
use crate::error::{Error, Result};
use crate::ff::{ExtField, FieldElem, IndexedField};

/// Default cap on the number of pairs any pair loop may visit.
pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000_000;

/// A point of `F_q^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl Point {
    pub fn new(x: FieldElem, y: FieldElem) -> Self {
        Point { x, y }
    }
}

/// `(a - b)·(a - b) = (a.x - b.x)^2 + (a.y - b.y)^2`.
pub fn distance(field: &ExtField, a: &Point, b: &Point) -> Result<FieldElem> {
    let dx = field.sub(&a.x, &b.x)?;
    let dy = field.sub(&a.y, &b.y)?;
    field.add(&field.square(&dx)?, &field.square(&dy)?)
}

fn check_budget(len: usize, budget: u64) -> Result<()> {
    let needed = (len as u64).saturating_mul(len as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn pair_loop<F>(q: u32, len: usize, body: F) -> ElemSet
where
    F: Fn(usize, &mut Bits) + Sync,
{
    (0..len)
        .into_par_iter()
        .fold(
            || Bits::new(q as u64),
            |mut acc, i| {
                body(i, &mut acc);
                acc
            },
        )
        .reduce(|| Bits::new(q as u64), Bits::or)
        .into_set()
}

/// `Δ(E)` over all ordered pairs of an index-encoded point list. Needs
/// `|E|^2 <= budget`.
pub fn distance_set_bruteforce_indices(
    arith: &IndexedField,
    points: &[(u32, u32)],
    budget: u64,
) -> Result<ElemSet> {
    check_budget(points.len(), budget)?;
    Ok(pair_loop(arith.q(), points.len(), |i, acc| {
        let (ax, ay) = points[i];
        for &(bx, by) in points {
            let dx = arith.sub(ax, bx);
            let dy = arith.sub(ay, by);
            acc.set(arith.add(arith.square(dx), arith.square(dy)));
        }
    }))
}

/// `Δ(E)` by brute force over all ordered pairs.
pub fn distance_set_bruteforce(
    arith: &IndexedField,
    points: &[Point],
    budget: u64,
) -> Result<ElemSet> {
    let field = arith.field();
    let encoded = points
        .iter()
        .map(|pt| {
            if field.contains(&pt.x) && field.contains(&pt.y) {
                Ok((arith.index_of(&pt.x), arith.index_of(&pt.y)))
            } else {
                Err(Error::FieldMismatch)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    distance_set_bruteforce_indices(arith, &encoded, budget)
}

/// `AA = {a·b : a, b ∈ A}`, visiting each unordered pair once.
pub fn product_set_of(arith: &IndexedField, elems: &[u32], budget: u64) -> Result<ElemSet> {
    check_budget(elems.len(), budget)?;
    Ok(pair_loop(arith.q(), elems.len(), |i, acc| {
        let a = elems[i];
        for &b in &elems[i..] {
            acc.set(arith.mul(a, b));
        }
    }))
}

/// `VV` for a subspace.
pub fn product_set(arith: &IndexedField, v: &Subspace, budget: u64) -> Result<ElemSet> {
    product_set_of(arith, v.elements(), budget)
}

/// `{u^2 - v^2 : u, v ∈ A}`. Unordered pairs suffice since swapping `u, v`
/// negates the difference.
pub fn squares_difference_set(arith: &IndexedField, elems: &[u32]) -> ElemSet {
    let squares: Vec<u32> = elems.iter().map(|&u| arith.square(u)).collect();
    pair_loop(arith.q(), squares.len(), |i, acc| {
        let su = squares[i];
        for &sv in &squares[i..] {
            let d = arith.sub(su, sv);
            acc.set(d);
            acc.set(arith.neg(d));
        }
    })
}

/// `Δ(E)` through `(u_1 - u_2)^2 + (i v_1 - i v_2)^2 = u^2 - v^2`, without
/// materializing `E`.
pub fn distance_set_structured(c: &Construction) -> ElemSet {
    squares_difference_set(c.arith(), c.subspace().elements())
}

/// Smallest element of `F_q` outside `s`.
pub fn complement_witness(s: &ElemSet) -> Option<u32> {
    s.complement_witness()
}
