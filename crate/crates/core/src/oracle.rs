//! Ground truth by dynamic programming and tiny-scale enumeration.

use num_traits::{One, Zero};

use crate::exactnum::Int;
use crate::{Error, Result, Which};

/// Largest `n` accepted by [`enumerate_partitions`].
pub const ENUMERATION_LIMIT: u64 = 60;

/// A nonempty sequence of positive part sizes a_1..a_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartSeq(Vec<u64>);

impl PartSeq {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("part sequence must be nonempty".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Domain("part sizes must be positive".into()));
        }
        Ok(Self(parts))
    }

    /// The sequence (1, 2, ..., k).
    pub fn staircase(k: u64) -> Self {
        assert!(k >= 1);
        Self((1..=k).collect())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Exact table of p(n,k) for 0 ≤ n ≤ n_max, 0 ≤ k ≤ k_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    n_max: u64,
    k_max: u64,
    // values[k][n]
    values: Vec<Vec<Int>>,
}

impl PTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn get(&self, n: u64, k: u64) -> Result<&Int> {
        if n > self.n_max || k > self.k_max {
            return Err(Error::OutOfTable { n, k });
        }
        Ok(&self.values[k as usize][n as usize])
    }

    /// p(n,k) or q(n,k).
    pub fn value(&self, which: Which, n: u64, k: u64) -> Result<Int> {
        match which {
            Which::P => self.get(n, k).cloned(),
            Which::Q => q_of(n, k, self),
        }
    }
}

/// Builds p(n,k) with p(n,k) = p(n-1,k-1) + p(n-k,k), p(0,0) = 1.
pub fn p_table(n_max: u64, k_max: u64) -> PTable {
    let (nn, kk) = (n_max as usize, k_max as usize);
    let mut values = vec![vec![Int::zero(); nn + 1]; kk + 1];
    values[0][0] = Int::one();
    for k in 1..=kk {
        for n in k..=nn {
            let v = &values[k - 1][n - 1] + &values[k][n - k];
            values[k][n] = v;
        }
    }
    PTable {
        n_max,
        k_max,
        values,
    }
}

/// q(n,k) = p(n - C(k,2), k) when n ≥ k + C(k,2), else 0.
pub fn q_of(n: u64, k: u64, table: &PTable) -> Result<Int> {
    if n > table.n_max || k > table.k_max {
        return Err(Error::OutOfTable { n, k });
    }
    let c = k * k.saturating_sub(1) / 2;
    if n < k + c {
        // q(0,0) = 1 falls out of p(0,0) here as well
        return Ok(if n == 0 && k == 0 {
            Int::one()
        } else {
            Int::zero()
        });
    }
    table.get(n - c, k).cloned()
}

/// p_a(0), ..., p_a(n_max): number of nonnegative solutions of Σ a_i x_i = n.
pub fn restricted_pa_table(n_max: u64, a: &PartSeq) -> Vec<Int> {
    let nn = n_max as usize;
    let mut t = vec![Int::zero(); nn + 1];
    t[0] = Int::one();
    for &ai in a.parts() {
        let ai = ai as usize;
        for n in ai..=nn {
            let v = t[n - ai].clone();
            t[n] += v;
        }
    }
    t
}

pub fn restricted_pa(n: u64, a: &PartSeq) -> Int {
    restricted_pa_table(n, a).swap_remove(n as usize)
}

/// All partitions of `n` into exactly `k` parts, each listed non-increasing.
pub fn enumerate_partitions(n: u64, k: u64) -> Result<Vec<Vec<u64>>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    fn rec(rest: u64, slots: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // the remaining slots each need at least 1
        if rest < slots {
            return;
        }
        let hi = cap.min(rest - (slots - 1));
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(rest - part, slots - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return Ok(out);
    }
    rec(n, k, n, &mut Vec::with_capacity(k as usize), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::binomial;

    #[test]
    fn golden_table_values() {
        let t = p_table(20, 6);
        assert_eq!(t.get(8, 3).unwrap(), &Int::from(5));
        assert_eq!(t.get(2, 3).unwrap(), &Int::from(0));
        assert_eq!(t.get(5, 2).unwrap(), &Int::from(2));
        assert_eq!(t.get(0, 0).unwrap(), &Int::from(1));
        assert_eq!(t.get(4, 0).unwrap(), &Int::from(0));
        assert_eq!(t.get(21, 1), Err(Error::OutOfTable { n: 21, k: 1 }));
    }

    #[test]
    fn distinct_parts() {
        let t = p_table(20, 6);
        assert_eq!(q_of(8, 3, &t).unwrap(), Int::from(2));
        assert_eq!(q_of(5, 3, &t).unwrap(), Int::from(0));
        assert_eq!(q_of(9, 3, &t).unwrap(), Int::from(3));
        assert_eq!(q_of(0, 0, &t).unwrap(), Int::from(1));
        assert!(q_of(30, 3, &t).is_err());
    }

    #[test]
    fn zero_iff_n_below_k() {
        let t = p_table(40, 8);
        for k in 1..=8 {
            for n in 0..=40 {
                assert_eq!(t.get(n, k).unwrap().is_zero(), n < k, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn restricted_examples() {
        let a = PartSeq::staircase(3);
        assert_eq!(restricted_pa(5, &a), Int::from(5));
        assert_eq!(
            restricted_pa(0, &PartSeq::new(vec![4, 7]).unwrap()),
            Int::from(1)
        );
        assert_eq!(
            restricted_pa(3, &PartSeq::new(vec![2]).unwrap()),
            Int::from(0)
        );
        assert!(PartSeq::new(vec![]).is_err());
        assert!(PartSeq::new(vec![1, 0]).is_err());
    }

    #[test]
    fn stars_and_bars() {
        for k in 1..=4u64 {
            let ones = PartSeq::new(vec![1; k as usize]).unwrap();
            let t = restricted_pa_table(50, &ones);
            for n in 0..=50u64 {
                assert_eq!(t[n as usize], binomial(n + k - 1, k - 1));
            }
        }
    }

    #[test]
    fn reduction_to_staircase() {
        let t = p_table(300, 6);
        for k in 1..=6u64 {
            let pa = restricted_pa_table(300, &PartSeq::staircase(k));
            for n in k..=300 {
                assert_eq!(t.get(n, k).unwrap(), &pa[(n - k) as usize]);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_partitions(8, 3).unwrap(),
            vec![
                vec![6, 1, 1],
                vec![5, 2, 1],
                vec![4, 3, 1],
                vec![4, 2, 2],
                vec![3, 3, 2]
            ]
        );
        assert_eq!(enumerate_partitions(3, 3).unwrap(), vec![vec![1, 1, 1]]);
        assert_eq!(
            enumerate_partitions(4, 2).unwrap(),
            vec![vec![3, 1], vec![2, 2]]
        );
        assert_eq!(
            enumerate_partitions(61, 2),
            Err(Error::TooLarge { n: 61, limit: 60 })
        );
    }

    #[test]
    fn enumeration_matches_table() {
        let t = p_table(40, 40);
        for n in 0..=40u64 {
            for k in 0..=n {
                let parts = enumerate_partitions(n, k).unwrap();
                assert_eq!(Int::from(parts.len()), *t.get(n, k).unwrap());
                let distinct = parts
                    .iter()
                    .filter(|p| p.windows(2).all(|w| w[0] > w[1]))
                    .count();
                assert_eq!(Int::from(distinct), q_of(n, k, &t).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn row_sums_are_partition_numbers() {
        let known = [1u64, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];
        let t = p_table(30, 30);
        let mut prev = Int::zero();
        for n in 1..=30u64 {
            let s: Int = (1..=n).map(|k| t.get(n, k).unwrap().clone()).sum();
            if let Some(&v) = known.get(n as usize - 1) {
                assert_eq!(s, Int::from(v));
            }
            assert!(s >= prev);
            prev = s;
        }
        assert_eq!(prev, Int::from(5604));
    }
}
