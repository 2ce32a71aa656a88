use super::arith::IndexedField;
use super::field::ExtField;
use crate::error::{Error, Result};
use crate::setalg::ElemSet;

/// The unique subfield of order `p^m` inside `GF(p^n)`, for `m | n`.
#[derive(Clone, Debug)]
pub struct SubfieldHandle {
    m: u32,
    order: u64,
    step: u64,
    members: ElemSet,
    sorted: Vec<u32>,
}

impl SubfieldHandle {
    /// `{0} ∪ {g^(k·step)}` with `step = (q-1)/(p^m-1)`.
    pub fn locate(arith: &IndexedField, m: u32) -> Result<Self> {
        let field = arith.field();
        let n = field.n();
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n });
        }
        let order = field.p().pow(m);
        let step = (field.q() - 1) / (order - 1);
        let mut members = ElemSet::new(field.q());
        members.insert(0);
        for k in 0..order - 1 {
            members.insert(arith.gen_pow(k * step));
        }
        debug_assert_eq!(members.count(), order);
        let sorted = members.iter().collect();
        Ok(SubfieldHandle { m, order, step, members, sorted })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// Member indices in ascending order.
    pub fn elements(&self) -> &[u32] {
        &self.sorted
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.contains(idx)
    }
}

/// Convenience wrapper that builds index tables for `field` on the fly.
pub fn locate_subfield(field: &ExtField, m: u32) -> Result<SubfieldHandle> {
    SubfieldHandle::locate(&IndexedField::new(field), m)
}
