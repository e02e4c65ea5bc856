//! Exponent lists of homogeneous monomials in a fixed graded-lex order.

use num_bigint::BigInt;
use num_traits::One;

/// All exponent vectors `(e_0, ..., e_{nvars-1})` with sum `degree`, in
/// lexicographically decreasing order on the exponents. The order is fixed
/// once and shared by every consumer: coefficient vectors, Δ-weights and
/// text formats all index monomials through this list.
pub fn homogeneous_exponents(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    assert!(nvars >= 1);
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, degree);
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = rem;
        out.push(cur.clone());
        return;
    }
    for e in (0..=rem).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, rem - e);
    }
    cur[pos] = 0;
}

/// `degree! / (e_0! * ... * e_k!)` as an exact big integer.
pub fn multinomial(exponents: &[u32]) -> BigInt {
    let degree: u32 = exponents.iter().sum();
    let mut num = BigInt::one();
    let mut k = 0u32;
    let mut denom = BigInt::one();
    for &e in exponents {
        for j in 1..=e {
            k += 1;
            num *= BigInt::from(k);
            denom *= BigInt::from(j);
        }
    }
    debug_assert_eq!(k, degree);
    num / denom
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_quadratic_order() {
        let exps = homogeneous_exponents(2, 2);
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn count_matches_binomial() {
        for n in 1..=4usize {
            for d in 0..=5u32 {
                let exps = homogeneous_exponents(n, d);
                let expect = binomial((d as u64) + (n as u64) - 1, (n as u64) - 1);
                assert_eq!(BigInt::from(exps.len()), expect);
            }
        }
    }

    #[test]
    fn multinomials_of_binary_quadratic() {
        let exps = homogeneous_exponents(2, 2);
        let m: Vec<BigInt> = exps.iter().map(|e| multinomial(e)).collect();
        assert_eq!(m, vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)]);
    }
}
