//! Where the size condition |E| > 4 q^{(d+1)/2} starts to apply, and where E sits.

use falconer::verify::ir_threshold;

fn main() {
    for (p, r) in [(3u64, 1u32), (3, 2), (7, 1), (11, 1)] {
        let q = p.pow(6 * r);
        let size_e = p.pow(8 * r);
        // smallest size that clears 4 q^{3/2}
        let mut lo = 0u64;
        let mut hi = 4 * q * q;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if ir_threshold(q, mid, 2) { hi = mid } else { lo = mid + 1 }
        }
        println!("q = {q}: |E| = {size_e}, threshold starts at {lo}, applies to E: {}", ir_threshold(q, size_e, 2));
    }
}
