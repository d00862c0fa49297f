//! Closed forms built on the bounded tuple histogram
//!
//! f(s,k) = #{(j_1..j_k) : Σ i·j_i = s, 0 ≤ j_i ≤ D_k/i - 1}.
//!
//! Its generating polynomial is Π_i (1 - z^{D_k}) / (1 - z^i), so
//! 1/Π(1 - z^i) = F(z)/(1 - z^{D_k})^k and p_(1..k) becomes a short
//! convolution of f with binomial coefficients.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, lcm_upto, Int};
use crate::oracle::PTable;
use crate::{Error, Result, Which};

/// f(0,k), ..., f(d_k,k) with d_k = k·D_k - C(k+1,2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FHistogram {
    k: u64,
    period: u64,
    d_k: u64,
    values: Vec<Int>,
}

impl FHistogram {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// D_k.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn d_k(&self) -> u64 {
        self.d_k
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    /// f(s,k); zero outside 0..=d_k.
    pub fn get(&self, s: i64) -> Int {
        if s < 0 || s as u64 > self.d_k {
            Int::zero()
        } else {
            self.values[s as usize].clone()
        }
    }

    pub fn total(&self) -> Int {
        self.values.iter().sum()
    }
}

/// d_k = k·D_k - C(k+1,2).
pub fn degree_d(k: u64) -> u64 {
    k * lcm_upto(k) - k * (k + 1) / 2
}

/// Bounded-multiplicity DP over parts i = 1..k.
pub fn f_histogram(k: u64) -> FHistogram {
    assert!(k >= 1);
    let d = lcm_upto(k);
    let d_k = degree_d(k);
    let mut cur = vec![Int::one()];
    for i in 1..=k {
        let step = i as usize;
        let count = (d / i) as usize;
        let len = cur.len() + (count - 1) * step;
        // next[s] = Σ_{c < count} cur[s - c·i], as a sliding window along stride i
        let mut next = vec![Int::zero(); len];
        for s in 0..len {
            let mut v = if s >= step {
                next[s - step].clone()
            } else {
                Int::zero()
            };
            if let Some(x) = cur.get(s) {
                v += x;
            }
            if s >= count * step {
                if let Some(x) = cur.get(s - count * step) {
                    v -= x;
                }
            }
            next[s] = v;
        }
        cur = next;
    }
    assert_eq!(cur.len() as u64, d_k + 1);
    FHistogram {
        k,
        period: d,
        d_k,
        values: cur,
    }
}

fn domain_check(n: u64, k: u64, which: Which) -> Result<i64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let shift = which.shift(k);
    if n < shift {
        return Err(Error::Domain(format!(
            "{which}(n,k) closed forms need n >= {shift} for k={k}, got n={n}"
        )));
    }
    Ok((n - shift) as i64)
}

fn check_hist(k: u64, hist: &FHistogram) {
    assert_eq!(
        hist.k, k,
        "histogram built for k={} used with k={k}",
        hist.k
    );
}

/// Tuple-sum formula evaluated at the reduced argument `big_n` of p_(1..k).
fn tuple_sum(big_n: i64, k: u64, hist: &FHistogram, n: u64, method: &'static str) -> Result<Int> {
    let d = hist.period as i64;
    let mut acc = Int::zero();
    let start = big_n.rem_euclid(d);
    for s in (start..=hist.d_k as i64).step_by(d as usize) {
        let f = &hist.values[s as usize];
        if f.is_zero() {
            continue;
        }
        let x = (big_n - s) / d;
        let prod: Int = (1..k as i64).map(|l| Int::from(x + l)).product();
        acc += f * prod;
    }
    let (q, r) = acc.div_rem(&factorial(k - 1));
    if !r.is_zero() {
        return Err(Error::NonIntegerResult {
            method,
            n,
            k,
            value: format!("{acc}/{}", factorial(k - 1)),
        });
    }
    Ok(q)
}

/// f(·,k) by enumerating every bounded tuple; only practical for k ≤ 5.
pub fn f_histogram_enumerated(k: u64) -> Vec<Int> {
    fn rec(i: u64, k: u64, d: u64, s: u64, out: &mut Vec<Int>) {
        if i > k {
            out[s as usize] += 1;
            return;
        }
        for j in 0..d / i {
            rec(i + 1, k, d, s + i * j, out);
        }
    }
    let d = lcm_upto(k);
    let mut out = vec![Int::zero(); degree_d(k) as usize + 1];
    rec(1, k, d, 0, &mut out);
    out
}

/// p(n,k) as (1/(k-1)!)·Σ_{s ≡ n-k (D_k)} f(s,k)·Π_{ℓ<k}((n-k-s)/D_k + ℓ).
pub fn tuple_sum_p(n: u64, k: u64, hist: &FHistogram) -> Result<Int> {
    check_hist(k, hist);
    let big_n = domain_check(n, k, Which::P)?;
    tuple_sum(big_n, k, hist, n, "tuple_sum_p")
}

/// q(n,k): the tuple sum at n - k - C(k,2).
pub fn tuple_sum_q(n: u64, k: u64, hist: &FHistogram) -> Result<Int> {
    check_hist(k, hist);
    let big_n = domain_check(n, k, Which::Q)?;
    tuple_sum(big_n, k, hist, n, "tuple_sum_q")
}

pub fn tuple_sum_formula(n: u64, k: u64, which: Which, hist: &FHistogram) -> Result<Int> {
    match which {
        Which::P => tuple_sum_p(n, k, hist),
        Which::Q => tuple_sum_q(n, k, hist),
    }
}

/// Indices j ≥ 0 with 0 ≤ n' - j·D_k ≤ d_k, where n' is the reduced argument.
pub fn convolution_range(n: u64, k: u64, which: Which) -> Result<(u64, u64)> {
    let big_n = domain_check(n, k, which)?;
    let d = lcm_upto(k) as i64;
    let lo = Integer::div_ceil(&(big_n - degree_d(k) as i64), &d).max(0);
    let hi = big_n.div_euclid(d);
    Ok((lo as u64, hi as u64))
}

/// Summation bounds in their ceil/floor form:
/// p: [⌈(n + C(k,2))/D_k⌉ - k, ⌊(n - k)/D_k⌋],
/// q: [⌈n/D_k⌉ - k, ⌊(n - k - C(k,2))/D_k⌋].
pub fn convolution_closed_bounds(n: u64, k: u64, which: Which) -> (i64, i64) {
    let d = lcm_upto(k) as i64;
    let c = (k * k.saturating_sub(1) / 2) as i64;
    let (n, k) = (n as i64, k as i64);
    match which {
        Which::P => (Integer::div_ceil(&(n + c), &d) - k, (n - k).div_euclid(d)),
        Which::Q => (Integer::div_ceil(&n, &d) - k, (n - k - c).div_euclid(d)),
    }
}

/// Whether the ceil/floor bounds, intersected with j ≥ 0, equal the safe range.
pub fn convolution_bounds_agree(n: u64, k: u64, which: Which) -> Result<bool> {
    let (lo, hi) = convolution_range(n, k, which)?;
    let (plo, phi) = convolution_closed_bounds(n, k, which);
    Ok(plo.max(0) as u64 == lo && phi as u64 == hi)
}

/// p(n,k) or q(n,k) as Σ_j C(k+j-1, j)·f(n' - j·D_k, k).
pub fn binomial_convolution(n: u64, k: u64, which: Which, hist: &FHistogram) -> Result<Int> {
    check_hist(k, hist);
    let big_n = domain_check(n, k, which)?;
    if !convolution_bounds_agree(n, k, which)? {
        return Err(Error::Domain(format!(
            "closed-form summation bounds disagree with the computed range at n={n}, k={k}"
        )));
    }
    let (lo, hi) = convolution_range(n, k, which)?;
    let d = hist.period;
    Ok((lo..=hi)
        .map(|j| binomial(k + j - 1, j) * hist.get(big_n - (j * d) as i64))
        .sum())
}

/// A divisibility witness (k-1)!·value ≡ 0 mod (j+ℓ+1)(j+ℓ+2)...(j+k-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityWitness {
    pub ell: i64,
    /// Lower summation index of the convolution formula, possibly negative.
    pub j: i64,
    pub modulus: Int,
    pub holds: bool,
}

pub fn divisibility_witness(
    n: u64,
    k: u64,
    which: Which,
    table: &PTable,
) -> Result<DivisibilityWitness> {
    domain_check(n, k, which)?;
    let (lo, hi) = convolution_closed_bounds(n, k, which);
    let ell = hi - lo;
    let j = lo;
    // factors start at hi + 1 ≥ 1, so the modulus is a positive integer
    let modulus: Int = (j + ell + 1..=j + k as i64 - 1).map(Int::from).product();
    let value = table.value(which, n, k)?;
    let holds = (factorial(k - 1) * value).is_multiple_of(&modulus);
    Ok(DivisibilityWitness {
        ell,
        j,
        modulus,
        holds,
    })
}
