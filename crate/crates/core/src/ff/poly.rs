//! Dense univariate polynomials over `Z_p`, coefficients stored constant term
//! first. Only what the irreducibility test and modulus search need.

use super::prime::prime_divisors;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the nonzero polynomial `f`.
fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    let mut r = trim(a.to_vec());
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (k, &fk) in f.iter().enumerate() {
                let sub = c * fk % p;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    rem(&out, f, p)
}

fn pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// `x^(p^k) mod f`, by `k` successive `p`-th powers.
fn x_pow_p_pow(k: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut h = rem(&[0, 1], f, p);
    for _ in 0..k {
        h = pow_mod(&h, p, f, p);
    }
    h
}

/// Rabin's test: `f` of degree `d` is irreducible over `Z_p` iff
/// `x^(p^d) = x (mod f)` and `gcd(x^(p^(d/l)) - x, f) = 1` for each prime
/// `l | d`. `f` must have degree at least 1; a non-monic `f` is judged by its
/// monic associate.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f: Vec<u64> = trim(f.iter().map(|c| c % p).collect());
    assert!(f.len() >= 2, "irreducibility needs degree >= 1");
    let d = (f.len() - 1) as u32;
    let x = rem(&[0, 1], &f, p);
    if x_pow_p_pow(d, &f, p) != x {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|l| {
        let h = x_pow_p_pow(d / l as u32, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        g.len() == 1
    })
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`
/// over `Z_p`. Candidates are ordered by the base-`p` integer
/// `c_0 + c_1 p + ... + c_{n-1} p^(n-1)` of their non-leading coefficients.
/// Returns `n + 1` coefficients, constant term first.
pub fn find_irreducible(p: u64, n: u32) -> Vec<u64> {
    assert!(n >= 1);
    let mut lower = vec![0u64; n as usize];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment the base-p counter, constant term least significant
        let mut k = 0;
        loop {
            lower[k] += 1;
            if lower[k] < p {
                break;
            }
            lower[k] = 0;
            k += 1;
            assert!(k < lower.len(), "irreducibles exist in every degree");
        }
    }
}
