//! Build E in GF(3^6)^2 and check that its distance set misses an element.
//!
//! Run with `--release`; brute force walks all 6561^2 ordered pairs.

use falconer::{verify_counterexample, OracleRequest, VerifyOptions};

fn main() -> falconer::Result<()> {
    let opts = VerifyOptions { oracle: OracleRequest::Both, ..Default::default() };
    let report = verify_counterexample(3, 1, &opts)?;
    println!("q = {}, |E| = {}", report.q, report.size_e);
    println!("|Δ(E)| = {}, |VV| = {}, equal: {}", report.size_delta, report.size_vv, report.delta_equals_vv);
    println!("brute force agrees: {:?}", report.bruteforce_matches_structured);
    println!("missing distance (element index): {:?}", report.missing_distance);
    println!("|Δ(E)|/q = {}/{} = {}", report.ratio.num, report.ratio.den, report.ratio.decimal);
    println!("claims hold: {}", report.claims_hold);
    Ok(())
}
