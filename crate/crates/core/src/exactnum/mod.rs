//! Exact scalars and the special numbers used throughout the crate.

mod bernoulli;
mod combinat;
pub mod cyclo;

pub use bernoulli::{bernoulli_barnes, bernoulli_numbers, bernoulli_poly_eval, BernoulliTable};
pub use combinat::{binomial, factorial, lcm_upto, rising_factorial_coeffs, stirling_unsigned};
pub use cyclo::{cyclo_extract_rational, cyclo_root_power, cyclotomic_poly, CycloElt, CycloField};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int<T: Into<Int>>(v: T) -> Rat {
    Rat::from_integer(v.into())
}

/// Returns the integer value of `r` if it has denominator one.
pub fn rat_to_int(r: &Rat) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

/// `x^e` for a rational base.
pub fn rat_pow(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(values: I) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Evaluates the polynomial with coefficients `coeffs` (constant first) at `x`.
pub fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}
