//! How |VV| depends on the basis of V in GF(3^6).
//!
//! Walks every basis (1, b) with b outside the subfield and groups the
//! resulting |VV|, then tries a few bases not containing 1.

use std::collections::BTreeMap;

use falconer::construction::Subspace;
use falconer::ff::{ExtField, IndexedField, SubfieldHandle};
use falconer::setalg::{complement_witness, product_set};

fn main() -> falconer::Result<()> {
    let field = ExtField::new(3, 6)?;
    let arith = IndexedField::new(&field);
    let sub = SubfieldHandle::locate(&arith, 2)?;
    let budget = u64::MAX;

    let mut sizes: BTreeMap<u64, usize> = BTreeMap::new();
    for b in 0..arith.q() {
        if sub.contains(b) {
            continue;
        }
        let v = Subspace::span(&arith, &sub, 1, b)?;
        let vv = product_set(&arith, &v, budget)?;
        *sizes.entry(vv.count()).or_default() += 1;
    }
    println!("bases (1, b): |VV| -> number of b");
    for (size, n) in &sizes {
        println!("  {size}: {n}");
    }

    for (e1, e2) in [(5, 17), (100, 200), (333, 500)] {
        match Subspace::span(&arith, &sub, e1, e2) {
            Ok(v) => {
                let vv = product_set(&arith, &v, budget)?;
                println!("basis ({e1}, {e2}): |VV| = {}, missing {:?}", vv.count(), complement_witness(&vv));
            }
            Err(e) => println!("basis ({e1}, {e2}): {e}"),
        }
    }
    Ok(())
}
