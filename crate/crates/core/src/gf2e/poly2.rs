//! Polynomials over GF(2) packed into `u64` bitmasks (bit i = coefficient of u^i).
//!
//! Only what is needed to certify moduli: multiplication modulo a modulus,
//! remainders and gcds. Degrees stay below 64 throughout.

pub(crate) fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product of `a` and `b` reduced modulo `modulus`.
/// Both inputs must already be reduced (degree < deg(modulus) <= 32).
pub(crate) fn mulmod(mut a: u64, mut b: u64, modulus: u64) -> u64 {
    let deg = degree(modulus).expect("nonzero modulus");
    let top = 1u64 << deg;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

pub(crate) fn rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b).expect("division by zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn distinct_prime_factors(n: u64) -> Vec<u64> {
    prime_factors(n)
}

/// u^(2^k) mod `modulus`.
fn frobenius_of_u(k: u32, modulus: u64) -> u64 {
    let mut t = rem(0b10, modulus);
    for _ in 0..k {
        t = mulmod(t, t, modulus);
    }
    t
}

/// Rabin's irreducibility test: `f` of degree e is irreducible iff
/// u^(2^e) = u mod f and gcd(u^(2^(e/p)) - u, f) = 1 for every prime p | e.
pub(crate) fn is_irreducible(f: u64) -> bool {
    let Some(e) = degree(f) else { return false };
    if e == 0 {
        return false;
    }
    let u = rem(0b10, f);
    if frobenius_of_u(e, f) != u {
        return false;
    }
    prime_factors(e as u64).into_iter().all(|p| {
        let h = frobenius_of_u(e / p as u32, f) ^ u;
        degree(gcd(f, h)) == Some(0)
    })
}

/// Exhaustive search for a nontrivial factor; used as an independent check in tests.
#[cfg(test)]
pub(crate) fn has_factor_brute_force(f: u64) -> bool {
    let e = degree(f).unwrap();
    (2u64..(1u64 << (e / 2 + 1)))
        .filter(|g| degree(*g).unwrap() <= e / 2 && degree(*g).unwrap() >= 1)
        .any(|g| rem(f, g) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rabin_matches_brute_force_for_small_degrees() {
        for f in (1u64 << 2)..(1u64 << 11) {
            assert_eq!(is_irreducible(f), !has_factor_brute_force(f), "f = {f:#b}");
        }
    }

    #[test]
    fn conventional_moduli_are_irreducible() {
        for f in [0b1011u64, 0b100101, 0x1053, 0x100009] {
            assert!(is_irreducible(f), "{f:#x}");
        }
        // (u^2 + u + 1)^2 = u^4 + u^2 + 1
        assert!(!is_irreducible(0b10101));
    }
}
