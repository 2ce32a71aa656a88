//! Build GF(3^6), print its modulus and generator, and do a little arithmetic.

use falconer::ff::{make_prime_field, ExtField};

fn main() -> falconer::Result<()> {
    let f7 = make_prime_field(7)?;
    let three = f7.from_int(3);
    println!("GF(7): 3^-1 = {}", f7.index(&f7.inv(&three)?));

    let f = ExtField::new(3, 6)?;
    let d = f.descriptor();
    println!("GF(3^6): modulus {:?} (constant term first), generator index {}", d.modulus, d.generator_index);

    let x = f.root();
    let y = f.add(&f.square(&x)?, &f.one())?;
    let z = f.mul(&x, &f.inv(&y)?)?;
    println!("x / (x^2 + 1) has coefficients {:?}", z.coeffs());
    println!("x^(q-1) = 1: {}", f.pow(&x, f.q() - 1)? == f.one());

    let i = f.sqrt_minus_one()?;
    println!("i = element {} and i^2 + 1 = 0: {}", f.index(&i), f.is_zero(&f.add(&f.square(&i)?, &f.one())?));
    Ok(())
}
