//! The counterexample itself: `F_q = GF(p^{6r})`, the index-3 subfield `F`
//! of order `p^{2r}`, a 2-dimensional `F`-subspace `V`, and
//! `E = {(u, iv) : u, v ∈ V}` with `i^2 = -1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::prime::{checked_pow, is_prime};
use crate::ff::{ExtField, FieldDescriptor, IndexedField, SubfieldHandle, MAX_ORDER};
use crate::setalg::{ElemSet, Point};

/// Default cap on materialized points of `E`.
pub const DEFAULT_POINT_BUDGET: u64 = 1 << 26;

/// How to pick the basis of `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisChoice {
    /// `(1, x)` with `x` the class of the modulus variable.
    #[default]
    Auto,
    /// Canonical indices of two field elements.
    Explicit(u32, u32),
}

impl FromStr for BasisChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(BasisChoice::Auto);
        }
        let bad = || Error::InvalidParameter(format!("basis must be `auto` or `i1,i2`, got `{s}`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Ok(BasisChoice::Explicit(a, b))
    }
}

impl fmt::Display for BasisChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisChoice::Auto => f.write_str("auto"),
            BasisChoice::Explicit(a, b) => write!(f, "{a},{b}"),
        }
    }
}

/// A 2-dimensional subspace of `F_q` over a subfield `F`.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: (u32, u32),
    elements: Vec<u32>,
    members: ElemSet,
}

fn independent(arith: &IndexedField, sub: &SubfieldHandle, e1: u32, e2: u32) -> bool {
    let f = sub.elements();
    f.iter().all(|&a| {
        f.iter().all(|&b| {
            (a == 0 && b == 0) || arith.add(arith.mul(a, e1), arith.mul(b, e2)) != 0
        })
    })
}

impl Subspace {
    /// `{a·e1 + b·e2 : a, b ∈ F}` for any subfield. Fails with
    /// [`Error::DependentBasis`] unless `e1, e2` are `F`-independent.
    pub fn span(arith: &IndexedField, sub: &SubfieldHandle, e1: u32, e2: u32) -> Result<Self> {
        let q = arith.q();
        if e1 >= q || e2 >= q {
            return Err(Error::InvalidParameter(format!("basis index out of range for q = {q}")));
        }
        if !independent(arith, sub, e1, e2) {
            return Err(Error::DependentBasis);
        }
        let f = sub.elements();
        let mut members = ElemSet::new(q as u64);
        for &a in f {
            let ae1 = arith.mul(a, e1);
            for &b in f {
                members.insert(arith.add(ae1, arith.mul(b, e2)));
            }
        }
        debug_assert_eq!(members.count(), (f.len() * f.len()) as u64);
        let elements = members.iter().collect();
        Ok(Subspace { basis: (e1, e2), elements, members })
    }

    pub fn basis(&self) -> (u32, u32) {
        self.basis
    }

    /// Element indices, ascending.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.contains(idx)
    }
}

/// Subspace over the index-3 subfield, as the construction needs it.
pub fn build_subspace(
    arith: &IndexedField,
    sub: &SubfieldHandle,
    choice: BasisChoice,
) -> Result<Subspace> {
    let n = arith.field().n();
    if !n.is_multiple_of(3) || sub.m() * 3 != n {
        return Err(Error::WrongSubfieldDegree { m: sub.m(), n });
    }
    match choice {
        BasisChoice::Explicit(a, b) => Subspace::span(arith, sub, a, b),
        BasisChoice::Auto => {
            let root = arith.index_of(&arith.field().root());
            if let Ok(v) = Subspace::span(arith, sub, 1, root) {
                return Ok(v);
            }
            // unreachable while the root generates all of F_q, kept as a fallback
            let q = arith.q();
            for a in 1..q {
                for b in a + 1..q {
                    if independent(arith, sub, a, b) {
                        return Subspace::span(arith, sub, a, b);
                    }
                }
            }
            Err(Error::DependentBasis)
        }
    }
}

/// Replayable record of a construction; `V` and `E` are rebuilt from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub p: u64,
    pub r: u32,
    pub field: FieldDescriptor,
    pub subfield_m: u32,
    pub i_index: u64,
    pub basis: [u64; 2],
}

/// The full counterexample for parameters `(p, r)`.
pub struct Construction {
    p: u64,
    r: u32,
    arith: IndexedField,
    sub_f: SubfieldHandle,
    i: u32,
    v: Subspace,
}

impl fmt::Debug for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Construction")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("q", &self.q())
            .field("i", &self.i)
            .field("basis", &self.v.basis)
            .finish()
    }
}

fn check_params(p: u64, r: u32) -> Result<u32> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = r.checked_mul(6).ok_or(Error::SizeGuard { p, n: 6 * r as u64 })?;
    match checked_pow(p, n as u64) {
        Some(q) if q <= MAX_ORDER => Ok(n),
        _ => Err(Error::SizeGuard { p, n: n as u64 }),
    }
}

/// Build the construction for `q = p^{6r}`.
pub fn build_construction(p: u64, r: u32, basis: BasisChoice) -> Result<Construction> {
    let n = check_params(p, r)?;
    let field = ExtField::new(p, n)?;
    Construction::assemble(p, r, &field, None, basis)
}

impl Construction {
    fn assemble(
        p: u64,
        r: u32,
        field: &ExtField,
        i_index: Option<u64>,
        basis: BasisChoice,
    ) -> Result<Self> {
        let arith = IndexedField::new(field);
        let sub_f = SubfieldHandle::locate(&arith, 2 * r)?;
        let i = match i_index {
            None => arith.index_of(&field.sqrt_minus_one()?),
            Some(idx) => {
                if idx >= field.q() {
                    return Err(Error::InvalidRecord("i index out of range".into()));
                }
                let i = idx as u32;
                if arith.add(arith.square(i), 1) != 0 {
                    return Err(Error::InvalidRecord("i does not square to -1".into()));
                }
                i
            }
        };
        let v = build_subspace(&arith, &sub_f, basis)?;
        Ok(Construction { p, r, arith, sub_f, i, v })
    }

    /// Rebuild from a record, validating the field, `i`, and the basis.
    pub fn replay(record: &ConstructionRecord) -> Result<Self> {
        let n = check_params(record.p, record.r)?;
        if record.field.p != record.p || record.field.n != n {
            return Err(Error::InvalidRecord("field does not match (p, 6r)".into()));
        }
        if record.subfield_m != 2 * record.r {
            return Err(Error::InvalidRecord("subfield degree must be 2r".into()));
        }
        let field = ExtField::from_descriptor(&record.field)?;
        let [a, b] = record.basis;
        let (a, b) = (
            u32::try_from(a).map_err(|_| Error::InvalidRecord("basis index".into()))?,
            u32::try_from(b).map_err(|_| Error::InvalidRecord("basis index".into()))?,
        );
        Self::assemble(record.p, record.r, &field, Some(record.i_index), BasisChoice::Explicit(a, b))
    }

    pub fn record(&self) -> ConstructionRecord {
        ConstructionRecord {
            p: self.p,
            r: self.r,
            field: self.field().descriptor(),
            subfield_m: self.sub_f.m(),
            i_index: self.i as u64,
            basis: [self.v.basis.0 as u64, self.v.basis.1 as u64],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.arith.field().q()
    }

    pub fn field(&self) -> &ExtField {
        self.arith.field()
    }

    pub fn arith(&self) -> &IndexedField {
        &self.arith
    }

    pub fn subfield(&self) -> &SubfieldHandle {
        &self.sub_f
    }

    /// Index of the chosen square root of -1.
    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn subspace(&self) -> &Subspace {
        &self.v
    }

    /// `|E| = |V|^2`.
    pub fn size_e(&self) -> u64 {
        let v = self.v.len() as u64;
        v * v
    }

    fn check_point_budget(&self, budget: u64) -> Result<()> {
        if self.size_e() > budget {
            return Err(Error::BudgetExceeded { needed: self.size_e(), budget });
        }
        Ok(())
    }

    /// `E` as index pairs `(u, i·v)`, ordered by `(u, v)`.
    pub fn enumerate_e_indices(&self, budget: u64) -> Result<Vec<(u32, u32)>> {
        self.check_point_budget(budget)?;
        let iv: Vec<u32> = self.v.elements.iter().map(|&v| self.arith.mul(self.i, v)).collect();
        Ok(self
            .v
            .elements
            .iter()
            .flat_map(|&u| iv.iter().map(move |&y| (u, y)))
            .collect())
    }

    /// `E` as points, ordered by `(u, v)`.
    pub fn enumerate_e(&self, budget: u64) -> Result<Vec<Point>> {
        Ok(self
            .enumerate_e_indices(budget)?
            .into_iter()
            .map(|(x, y)| Point::new(self.arith.elem(x), self.arith.elem(y)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_choice_parsing() {
        assert_eq!("auto".parse::<BasisChoice>().unwrap(), BasisChoice::Auto);
        assert_eq!("1, 3".parse::<BasisChoice>().unwrap(), BasisChoice::Explicit(1, 3));
        assert!("1".parse::<BasisChoice>().is_err());
        assert!("a,b".parse::<BasisChoice>().is_err());
        assert_eq!(BasisChoice::Explicit(4, 9).to_string(), "4,9");
    }

    #[test]
    fn small_construction_sizes() {
        let c = build_construction(3, 1, BasisChoice::Auto).unwrap();
        assert_eq!(c.q(), 729);
        assert_eq!(c.subfield().order(), 9);
        assert_eq!(c.subspace().len(), 81);
        assert_eq!(c.size_e(), 6561);
        assert_eq!(c.subspace().basis(), (1, 3));
        let ix = c.arith();
        assert_eq!(ix.add(ix.square(c.i()), 1), 0);
    }

    #[test]
    fn rejected_parameters() {
        assert_eq!(build_construction(2, 1, BasisChoice::Auto).unwrap_err(), Error::CharacteristicTwo);
        assert_eq!(build_construction(4, 1, BasisChoice::Auto).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(build_construction(3, 0, BasisChoice::Auto), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_construction(3, 4, BasisChoice::Auto), Err(Error::SizeGuard { .. })));
        assert!(matches!(build_construction(37, 1, BasisChoice::Auto), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn dependent_explicit_basis() {
        let c = build_construction(3, 1, BasisChoice::Auto).unwrap();
        let ix = c.arith();
        let e1 = 5;
        for &k in c.subfield().elements() {
            let e2 = ix.mul(k, e1);
            assert_eq!(
                build_subspace(ix, c.subfield(), BasisChoice::Explicit(e1, e2)).unwrap_err(),
                Error::DependentBasis
            );
        }
    }

    #[test]
    fn wrong_subfield_degree() {
        let c = build_construction(3, 1, BasisChoice::Auto).unwrap();
        let prime = SubfieldHandle::locate(c.arith(), 1).unwrap();
        assert_eq!(
            build_subspace(c.arith(), &prime, BasisChoice::Auto).unwrap_err(),
            Error::WrongSubfieldDegree { m: 1, n: 6 }
        );
    }

    #[test]
    fn point_budget() {
        let c = build_construction(3, 1, BasisChoice::Auto).unwrap();
        assert_eq!(
            c.enumerate_e_indices(6560).unwrap_err(),
            Error::BudgetExceeded { needed: 6561, budget: 6560 }
        );
        let pts = c.enumerate_e_indices(6561).unwrap();
        assert_eq!(pts.len(), 6561);
        assert_eq!(pts[0], (0, 0));
    }

    #[test]
    fn record_replays() {
        let c = build_construction(3, 1, BasisChoice::Auto).unwrap();
        let rec = c.record();
        let d = Construction::replay(&rec).unwrap();
        assert_eq!(d.record(), rec);
        assert_eq!(d.subspace().elements(), c.subspace().elements());

        let mut bad = rec.clone();
        bad.i_index = 2;
        assert!(Construction::replay(&bad).is_err());
        let mut bad = rec.clone();
        bad.subfield_m = 3;
        assert!(Construction::replay(&bad).is_err());
        let mut bad = rec;
        bad.basis = [1, 2];
        assert_eq!(Construction::replay(&bad).unwrap_err(), Error::DependentBasis);
    }
}
