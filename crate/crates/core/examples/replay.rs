//! Save a construction record as JSON and rebuild the same E from it.

use falconer::{build_construction, BasisChoice, Construction, ConstructionRecord};
use falconer::setalg::distance_set_structured;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = build_construction(3, 1, BasisChoice::Auto)?;
    let json = serde_json::to_string_pretty(&c.record())?;
    println!("{json}");

    let rec: ConstructionRecord = serde_json::from_str(&json)?;
    let again = Construction::replay(&rec)?;
    let a = distance_set_structured(&c).sha256_hex();
    let b = distance_set_structured(&again).sha256_hex();
    println!("Δ(E) sha256 {a}, replay matches: {}", a == b);
    Ok(())
}
