//! Quick randomized and exhaustive checks runnable from the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construction::{build_construction, BasisChoice};
use crate::ff::{find_irreducible, is_irreducible, ExtField, IndexedField, SubfieldHandle};
use crate::setalg::{distance_set_bruteforce_indices, distance_set_structured, product_set};
use crate::verify::{census, ir_threshold, Budgets};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn field_axioms(field: &ExtField, rng: &mut ChaCha8Rng, trials: usize) -> Result<(), String> {
    let q = field.q();
    for _ in 0..trials {
        let [a, b, c] = [0; 3].map(|_| field.from_index(rng.random_range(0..q)));
        let f = |r: crate::Result<_>| r.map_err(|e| e.to_string());
        let ab = f(field.add(&a, &b))?;
        if ab != f(field.add(&b, &a))? || f(field.mul(&a, &b))? != f(field.mul(&b, &a))? {
            return Err(format!("commutativity fails at {a:?}, {b:?}"));
        }
        if f(field.add(&ab, &c))? != f(field.add(&a, &f(field.add(&b, &c))?))? {
            return Err("additive associativity".into());
        }
        let mab = f(field.mul(&a, &b))?;
        if f(field.mul(&mab, &c))? != f(field.mul(&a, &f(field.mul(&b, &c))?))? {
            return Err("multiplicative associativity".into());
        }
        let lhs = f(field.mul(&a, &f(field.add(&b, &c))?))?;
        let rhs = f(field.add(&mab, &f(field.mul(&a, &c))?))?;
        if lhs != rhs {
            return Err("distributivity".into());
        }
        if f(field.add(&a, &f(field.neg(&a))?))? != field.zero() {
            return Err("additive inverse".into());
        }
        if !field.is_zero(&a) && f(field.mul(&a, &f(field.inv(&a))?))? != field.one() {
            return Err("multiplicative inverse".into());
        }
    }
    Ok(())
}

fn check(name: &'static str, outcome: Result<String, String>) -> Check {
    match outcome {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

pub fn run(seed: u64, budgets: Budgets) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(check("field_axioms", (|| {
        for (p, n) in [(3, 6), (7, 3), (11, 2)] {
            let field = ExtField::new(p, n).map_err(|e| e.to_string())?;
            field_axioms(&field, &mut rng, 10_000)?;
        }
        Ok("10000 random triples in each of GF(3^6), GF(7^3), GF(11^2)".to_string())
    })()));

    checks.push(check("irreducible_moduli", (|| {
        for (p, n) in [(3, 6), (3, 12), (5, 6), (7, 6), (11, 6)] {
            if !is_irreducible(&find_irreducible(p, n), p) {
                return Err(format!("modulus for GF({p}^{n}) reducible"));
            }
        }
        Ok("moduli for (3,6) (3,12) (5,6) (7,6) (11,6) pass Rabin".to_string())
    })()));

    checks.push(check("subfield_frobenius", (|| {
        let field = ExtField::new(3, 6).map_err(|e| e.to_string())?;
        let ix = IndexedField::new(&field);
        let sub = SubfieldHandle::locate(&ix, 2).map_err(|e| e.to_string())?;
        for idx in 0..field.q() {
            let a = field.from_index(idx);
            let fixed = field.frobenius(&a, 2).map_err(|e| e.to_string())? == a;
            if fixed != sub.contains(idx as u32) {
                return Err(format!("element {idx} disagrees"));
            }
        }
        Ok("order-9 subfield of GF(729) is the x -> x^9 fixed set".to_string())
    })()));

    let construction = build_construction(3, 1, BasisChoice::Auto);
    checks.push(check("sqrt_minus_one_and_subspace", match &construction {
        Err(e) => Err(e.to_string()),
        Ok(c) => (|| {
            let ix = c.arith();
            if ix.add(ix.square(c.i()), 1) != 0 {
                return Err("i^2 != -1".into());
            }
            let v = c.subspace();
            for &a in v.elements() {
                if !v.contains(ix.neg(a)) {
                    return Err("V not closed under negation".into());
                }
                for &b in v.elements() {
                    if !v.contains(ix.add(a, b)) {
                        return Err("V not closed under addition".into());
                    }
                }
            }
            Ok(format!("i = element {}, |V| = {}", c.i(), v.len()))
        })(),
    }));

    checks.push(check("oracle_equivalence", match &construction {
        Err(e) => Err(e.to_string()),
        Ok(c) => (|| {
            let ix = c.arith();
            let pts = c.enumerate_e_indices(budgets.point_budget).map_err(|e| e.to_string())?;
            let brute = distance_set_bruteforce_indices(ix, &pts, budgets.pair_budget).map_err(|e| e.to_string())?;
            let structured = distance_set_structured(c);
            let vv = product_set(ix, c.subspace(), budgets.pair_budget).map_err(|e| e.to_string())?;
            if brute != structured || structured != vv {
                return Err("distance-set oracles disagree".into());
            }
            match brute.complement_witness() {
                Some(w) => Ok(format!("|Δ(E)| = {} of 729, missing {w}", brute.count())),
                None => Err("Δ(E) is all of F_729".into()),
            }
        })(),
    }));

    checks.push(check("threshold_boundaries", {
        let ok = !ir_threshold(729, 78732, 2) && ir_threshold(729, 78733, 2) && !ir_threshold(729, 6561, 2);
        if ok { Ok("4·729^{3/2} = 78732".into()) } else { Err("boundary wrong".into()) }
    }));

    checks.push(check("census_pruning", (|| {
        for q in [2, 3] {
            let a = census(q, true).map_err(|e| e.to_string())?;
            let b = census(q, false).map_err(|e| e.to_string())?;
            if a.max_incomplete_size != b.max_incomplete_size {
                return Err(format!("pruned and unpruned disagree at q = {q}"));
            }
        }
        Ok("pruned = unpruned at q = 2, 3".to_string())
    })()));

    SelftestReport { schema_version: 1, seed, checks }
}
