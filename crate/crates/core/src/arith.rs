//! Small integer helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, n))` when `q = p^n` for an odd prime `p` and `n ≥ 1`.
pub fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let p = (3..=q).step_by(2).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

pub fn pow(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("prime power overflows u64")
}

/// Largest `v ≤ cap` with `p^v | x`; `x = 0` gives `cap`.
pub fn valuation(x: u64, p: u64, cap: u32) -> u32 {
    let mut v = 0;
    let mut x = x;
    while v < cap && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Multiplicative order of `a` modulo `modulus`, if `a` is a unit.
pub fn multiplicative_order(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(1);
    }
    let a = a % modulus;
    if num_integer::gcd(a, modulus) != 1 {
        return None;
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % modulus;
        k += 1;
    }
    Some(k)
}
