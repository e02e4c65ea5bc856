//! Elementary number-theoretic functions used by the censuses.

/// Möbius function by trial factorization. Intended for small arguments;
/// census-scale ranges use [`mobius_sieve`].
pub fn mobius(m: u64) -> i64 {
    assert!(m >= 1, "mobius requires a positive argument");
    let mut m = m;
    let mut primes = 0;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Möbius values for `1..=n` by a linear sieve.
pub fn mobius_sieve(n: usize) -> Vec<i64> {
    let mut mu = vec![1i64; n + 1];
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    }
    for i in 2..=n {
        if !is_comp[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_comp[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Number of ideals of `Z[i]` of norm `m`; equivalently the number of Gauss
/// integers of norm `m` up to unit multiples. Multiplicative, with local
/// values: 1 at powers of 2, `k+1` at `p^k` for `p = 1 mod 4`, and `1` at
/// even / `0` at odd powers of `p = 3 mod 4`.
pub fn gauss_ideal_count(m: u64) -> u64 {
    assert!(m >= 1);
    let mut m = m;
    let mut count = 1u64;
    // factor out 2 (ramified)
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0u64;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if p % 4 == 1 {
                count *= k + 1;
            } else if k % 2 == 1 {
                return 0;
            }
        }
        p += 2;
    }
    if m > 1 {
        if m % 4 == 1 {
            count *= 2;
        } else {
            return 0;
        }
    }
    count
}

/// Dirichlet inverse of [`gauss_ideal_count`] over the norm-indexed ideal
/// semigroup: the Möbius function of `Z[i]` summed over ideals of norm `m`.
/// Satisfies `sum_{ab=m} gauss_ideal_count(a) * gauss_norm_mobius(b) = [m=1]`.
pub fn gauss_norm_mobius(m: u64) -> i64 {
    assert!(m >= 1);
    let mut m = m;
    let mut value = 1i64;
    // local factor at 2: (1 - x) inverse of 1/(1-x)
    if m % 2 == 0 {
        m /= 2;
        if m % 2 == 0 {
            return 0;
        }
        value = -value;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0u64;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            value *= local_mobius_factor(p, k);
            if value == 0 {
                return 0;
            }
        }
        p += 2;
    }
    if m > 1 {
        value *= local_mobius_factor(m, 1);
    }
    value
}

fn local_mobius_factor(p: u64, k: u64) -> i64 {
    if p % 4 == 1 {
        // (1 - x)^2 = 1 - 2x + x^2
        match k {
            1 => -2,
            2 => 1,
            _ => 0,
        }
    } else {
        // inert prime contributes at norm p^2: factor (1 - x^2)
        match k {
            2 => -1,
            _ if k % 2 == 1 => 0,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn sieve_matches_direct() {
        let mu = mobius_sieve(2000);
        for m in 1..=2000u64 {
            assert_eq!(mu[m as usize], mobius(m), "mismatch at {m}");
        }
    }

    #[test]
    fn multiplicative_on_coprime_arguments() {
        for a in 1..=200u64 {
            for b in 1..=200u64 {
                if a.gcd(&b) == 1 {
                    assert_eq!(mobius(a * b), mobius(a) * mobius(b));
                }
            }
        }
    }

    #[test]
    fn divisor_sums_detect_one() {
        for n in 1..=10_000u64 {
            let mut s = 0i64;
            for d in 1..=n {
                if n % d == 0 {
                    s += mobius(d);
                }
            }
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "failure at {n}");
        }
    }

    #[test]
    fn ideal_counts_match_sum_of_squares() {
        // 4 * gauss_ideal_count(m) = number of (a, b) with a^2 + b^2 = m
        for m in 1..=500u64 {
            let mut r = 0u64;
            let bound = (m as f64).sqrt() as i64 + 1;
            for a in -bound..=bound {
                for b in -bound..=bound {
                    if (a * a + b * b) as u64 == m {
                        r += 1;
                    }
                }
            }
            assert_eq!(4 * gauss_ideal_count(m), r, "norm {m}");
        }
    }

    #[test]
    fn norm_mobius_is_dirichlet_inverse() {
        for m in 1..=500u64 {
            let mut s = 0i64;
            for a in 1..=m {
                if m % a == 0 {
                    s += gauss_ideal_count(a) as i64 * gauss_norm_mobius(m / a);
                }
            }
            assert_eq!(s, if m == 1 { 1 } else { 0 }, "failure at {m}");
        }
    }
}
