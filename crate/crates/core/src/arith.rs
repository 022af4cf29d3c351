//! Small modular-arithmetic helpers shared by the other modules.

use num_integer::Integer;

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

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `k` modulo `modulus`, or `None` when `k` is not a unit.
pub fn mult_order(k: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(1);
    }
    if k.gcd(&modulus) != 1 {
        return None;
    }
    let mut x = k % modulus;
    let mut n = 1;
    while x != 1 {
        x = x * (k % modulus) % modulus;
        n += 1;
    }
    Some(n)
}

pub fn totient_prime_power(p: u64, i: u32) -> u64 {
    if i == 0 {
        1
    } else {
        (p - 1) * p.pow(i - 1)
    }
}

/// Smallest generator of the cyclic group `(Z/p^i)^*` (p prime, `(Z/4)^*` uses 3).
pub fn primitive_root(p: u64, i: u32) -> u64 {
    let modulus = p.pow(i);
    if modulus <= 2 {
        return 1;
    }
    let phi = totient_prime_power(p, i);
    (2..modulus)
        .find(|&g| mult_order(g, modulus) == Some(phi))
        .expect("(Z/p^i)^* is cyclic for the prime powers used here")
}

/// Exponent `d` with `base^d ≡ k (mod modulus)`, searched in `0..order`.
pub fn discrete_log(base: u64, k: u64, modulus: u64, order: u64) -> Option<u64> {
    let target = k % modulus;
    let mut x = 1 % modulus;
    for d in 0..order.max(1) {
        if x == target {
            return Some(d);
        }
        x = x * (base % modulus) % modulus;
    }
    None
}

/// Smallest positive quadratic non-residue mod an odd prime.
pub fn smallest_nonresidue(p: u64) -> Option<u64> {
    if p < 3 {
        return None;
    }
    (2..p).find(|&a| mod_pow(a, (p - 1) / 2, p) == p - 1)
}

/// Legendre symbol of a unit `a` mod odd `p` via Euler's criterion.
pub fn quadratic_character(a: u64, p: u64) -> i8 {
    if p == 2 {
        return 1;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_one_mod_four(p: u32) -> bool {
    p % 4 == 1
}
