//! |Δ(E)|/q for p = 3 and r = 1, 2, printed as CSV.

use falconer::verify::ratio_scan;
use falconer::VerifyOptions;

fn main() {
    let table = ratio_scan(3, &[1, 2], &VerifyOptions::default());
    print!("{}", table.to_csv());
    for row in &table.rows {
        if let Some(e) = &row.error {
            eprintln!("r = {}: {e}", row.r);
        }
    }
}
