use num_traits::{One, Zero};

use super::{binomial, factorial, Int, Rat};

/// B_0, ..., B_upto with B_1 = -1/2, from Σ_{i=0}^{l} C(l+1, i) B_i = 0.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(upto + 1);
    b.push(Rat::one());
    for l in 1..=upto {
        let s: Rat = (0..l)
            .map(|i| &b[i] * Rat::from_integer(binomial(l as u64 + 1, i as u64)))
            .sum();
        b.push(-s / Rat::from_integer(Int::from(l + 1)));
    }
    b
}

/// Precomputed Bernoulli numbers together with the derived evaluations that
/// need them.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<Rat>,
}

impl BernoulliTable {
    pub fn new(upto: usize) -> Self {
        Self {
            numbers: bernoulli_numbers(upto),
        }
    }

    pub fn upto(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, i: usize) -> &Rat {
        assert!(
            i <= self.upto(),
            "Bernoulli index {i} beyond table ({})",
            self.upto()
        );
        &self.numbers[i]
    }

    pub fn numbers(&self) -> &[Rat] {
        &self.numbers
    }

    /// B_n(x) = Σ_k C(n,k) B_{n-k} x^k.
    pub fn poly_eval(&self, n: usize, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut xp = Rat::one();
        for k in 0..=n {
            if k > 0 {
                xp *= x;
            }
            let b = self.number(n - k);
            if !b.is_zero() {
                acc += b * &xp * Rat::from_integer(binomial(n as u64, k as u64));
            }
        }
        acc
    }

    /// Bernoulli–Barnes numbers B_0(a), ..., B_upto(a).
    ///
    /// B_j(a)/j! is the coefficient of t^j in Π_i Σ_r B_r a_i^r t^r / r!, which
    /// expands to the multinomial sum over compositions i_1+...+i_k = j.
    pub fn barnes_series(&self, upto: usize, a: &[u64]) -> Vec<Rat> {
        assert!(
            !a.is_empty(),
            "Bernoulli–Barnes numbers need a nonempty sequence"
        );
        let inv_fact: Vec<Rat> = (0..=upto)
            .map(|r| Rat::new(Int::one(), factorial(r as u64)))
            .collect();
        let mut series = vec![Rat::zero(); upto + 1];
        series[0] = Rat::one();
        for &ai in a {
            let mut pw = Rat::one();
            let factor: Vec<Rat> = (0..=upto)
                .map(|r| {
                    if r > 0 {
                        pw *= Rat::from_integer(Int::from(ai));
                    }
                    self.number(r) * &pw * &inv_fact[r]
                })
                .collect();
            let mut next = vec![Rat::zero(); upto + 1];
            for (i, s) in series.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for (r, f) in factor.iter().enumerate().take(upto + 1 - i) {
                    if !f.is_zero() {
                        next[i + r] += s * f;
                    }
                }
            }
            series = next;
        }
        series
            .into_iter()
            .enumerate()
            .map(|(j, c)| c * Rat::from_integer(factorial(j as u64)))
            .collect()
    }

    pub fn barnes(&self, j: usize, a: &[u64]) -> Rat {
        self.barnes_series(j, a).swap_remove(j)
    }
}

/// n-th Bernoulli polynomial at `x`.
pub fn bernoulli_poly_eval(n: usize, x: &Rat) -> Rat {
    BernoulliTable::new(n).poly_eval(n, x)
}

/// Bernoulli–Barnes number B_j(a).
pub fn bernoulli_barnes(j: usize, a: &[u64]) -> Rat {
    BernoulliTable::new(j).barnes(j, a)
}
