//! Bare polynomial helpers over a prime field `F_p`, used while a ring is
//! still being constructed (modulus validation and default-modulus search).
//! Coefficients are ascending `u64` residues.

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let t = c * bi % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
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
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, f, p)
}

fn pow_poly_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
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

/// Rabin-style irreducibility test over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.iter().map(|c| c % p).collect());
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^i) mod f for i = 1..d
    let mut frob = x.clone();
    for i in 1..=d {
        frob = pow_poly_mod(&frob, p, &f, p);
        if i <= d / 2 {
            let mut diff = frob.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &trim(diff), p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    trim(frob) == x
}

/// Smallest monic irreducible of degree `m` over `F_p`, with candidates
/// ordered lexicographically on `(c_0, c_1, ..., c_{m-1})`.
pub(crate) fn default_modulus(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let mut digits = vec![0u64; m];
    loop {
        let mut cand = digits.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // c_0 is the most significant position
        let mut pos = m;
        loop {
            if pos == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}
