//! The order-9 subfield of GF(3^6) and the 2-dimensional subspace V over it.

use falconer::ff::{ExtField, IndexedField, SubfieldHandle};
use falconer::{build_subspace, BasisChoice};

fn main() -> falconer::Result<()> {
    let field = ExtField::new(3, 6)?;
    let arith = IndexedField::new(&field);
    let sub = SubfieldHandle::locate(&arith, 2)?;
    println!("subfield of order {} (g^{} generates it), elements {:?}", sub.order(), sub.step(), sub.elements());

    // every subfield element is fixed by x -> x^9
    let fixed = sub.elements().iter().all(|&k| {
        let a = arith.elem(k);
        field.frobenius(&a, 2).unwrap() == a
    });
    println!("fixed by Frobenius^2: {fixed}");

    let v = build_subspace(&arith, &sub, BasisChoice::Auto)?;
    println!("V = span(1, x) has {} elements, basis indices {:?}", v.len(), v.basis());

    let closed = v.elements().iter().all(|&a| v.elements().iter().all(|&b| v.contains(arith.add(a, b))));
    println!("closed under addition: {closed}");
    Ok(())
}
