//! Small-integer number theory used by the quotient builders and classifiers.

/// Prime factorisation by trial division, primes ascending.
pub fn prime_factors(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

pub fn is_prime(x: u64) -> bool {
    x >= 2 && prime_factors(x) == [(x, 1)]
}

/// `Some((p, e))` when `x = p^e` with `e >= 1`.
pub fn prime_power(x: u64) -> Option<(u64, u32)> {
    match prime_factors(x).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
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

pub fn mod_inverse(a: i128, modulus: u64) -> Option<u64> {
    let m = modulus as i128;
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_factors(12), vec![(2, 2), (3, 1)]);
        assert_eq!(prime_factors(97), vec![(97, 1)]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn modular() {
        assert_eq!(pow_mod(3, 2, 8), 1);
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(-1, 8), Some(7));
        assert_eq!(mod_inverse(2, 8), None);
    }
}
