use num_integer::Integer;
use num_traits::{One, Zero};

use super::Int;

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * i)
}

/// Binomial coefficient C(n, k), zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficients of the rising factorial x(x+1)...(x+n-1), constant term first.
/// Entry `k` is the unsigned Stirling number of the first kind.
pub fn rising_factorial_coeffs(n: u64) -> Vec<Int> {
    let mut row = vec![Int::one()];
    for i in 0..n {
        // multiply by (x + i)
        let mut next = vec![Int::zero(); row.len() + 1];
        for (deg, c) in row.iter().enumerate() {
            next[deg + 1] += c;
            next[deg] += c * i;
        }
        row = next;
    }
    row
}

/// Unsigned Stirling number of the first kind; zero for `k > n`.
pub fn stirling_unsigned(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    rising_factorial_coeffs(n).swap_remove(k as usize)
}

/// D_k = lcm(1, 2, ..., k).
pub fn lcm_upto(k: u64) -> u64 {
    assert!(k >= 1, "lcm_upto needs k >= 1");
    (1..=k).fold(1u64, |acc, i| acc.lcm(&i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_small() {
        assert_eq!(stirling_unsigned(3, 3), Int::from(1));
        assert_eq!(stirling_unsigned(3, 2), Int::from(3));
        assert_eq!(stirling_unsigned(3, 1), Int::from(2));
        assert_eq!(stirling_unsigned(3, 0), Int::from(0));
        assert_eq!(stirling_unsigned(0, 0), Int::from(1));
        assert_eq!(stirling_unsigned(2, 5), Int::from(0));
    }

    #[test]
    fn stirling_matches_recurrence() {
        for n in 1..=10u64 {
            for k in 1..=n {
                let rec = stirling_unsigned(n - 1, k - 1) + stirling_unsigned(n - 1, k) * (n - 1);
                assert_eq!(stirling_unsigned(n, k), rec, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rising_factorial_expands_product() {
        // coefficientwise against direct evaluation at integer points
        for n in 0..=10u64 {
            let coeffs = rising_factorial_coeffs(n);
            for x in -3i64..=3 {
                let direct = (0..n as i64).fold(Int::one(), |acc, i| acc * (x + i));
                let via: Int = coeffs
                    .iter()
                    .enumerate()
                    .map(|(d, c)| c * Int::from(x).pow(d as u32))
                    .sum();
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_upto(1), 1);
        assert_eq!(lcm_upto(3), 6);
        assert_eq!(lcm_upto(6), 60);
        assert_eq!(lcm_upto(10), 2520);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Int::from(10));
        assert_eq!(binomial(2, 5), Int::from(0));
        assert_eq!(binomial(40, 20), Int::from(137846528820u64));
    }
}
