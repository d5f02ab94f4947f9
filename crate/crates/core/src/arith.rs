//! Small-number arithmetic used throughout: gcd/lcm, factorization of table
//! orders, modular inverses and the minimal CRT solution for the stage
//! exponent.

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, as a list of (prime, exponent)
/// pairs in ascending prime order. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The primes dividing `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Returns `Some((p, e))` if `n = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factor(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// Multiplicative inverse of `a` modulo `m` (`m >= 1`, `gcd(a, m) = 1`).
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r.abs() != 1 {
        return None;
    }
    let inv = (old_s * old_r.signum()).rem_euclid(m as i128);
    Some(inv as u64)
}

/// Minimal `n >= 1` with `n ≡ 1 (mod m_e)` and `n ≡ 0 (mod m_v)`.
/// Requires `gcd(m_e, m_v) = 1`; the solution then lies in `1..=m_e*m_v`.
pub fn crt_min_exponent(m_e: u64, m_v: u64) -> Option<u64> {
    let (m_e, m_v) = (m_e.max(1), m_v.max(1));
    (1..=m_e).map(|t| t * m_v).find(|n| n % m_e == 1 % m_e)
}

/// Primality by trial division, for small table parameters.
pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Multiplicative order of `a` modulo the prime `q` (`a` not divisible by `q`).
pub fn mult_order_mod(a: u64, q: u64) -> u64 {
    let mut x = a % q;
    let mut k = 1;
    while x != 1 {
        x = x * a % q;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(81), vec![(3, 4)]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(p_part(12, 2), 4);
    }

    #[test]
    fn crt_examples() {
        // mE=8, mV=3 -> 9; mE=1, mV=1 -> 1; mE=3, mV=2 -> 4
        assert_eq!(crt_min_exponent(8, 3), Some(9));
        assert_eq!(crt_min_exponent(1, 1), Some(1));
        assert_eq!(crt_min_exponent(3, 2), Some(4));
        assert_eq!(crt_min_exponent(2, 1), Some(1));
        assert_eq!(crt_min_exponent(1, 3), Some(3));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(2, 9), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mult_order_mod(2, 3), 2);
        assert_eq!(mult_order_mod(4, 5), 2);
    }
}
