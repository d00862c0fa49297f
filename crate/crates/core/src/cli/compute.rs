//! One value of p(n,k) or q(n,k) by a chosen method.

use clap::ValueEnum;

use crate::closedform::{binomial_convolution, f_histogram, tuple_sum_formula};
use crate::exactnum::{format_rat, rat_to_int, Rat};
use crate::oracle::p_table;
use crate::quasipoly::interp_constituents;
use crate::waves::{
    poly_part_p, poly_part_q, resolve_twist_convention, three_part_formula, wave_closed_form,
    wave_closed_form_q, waves_from_constituents, FWindowSums, PolyPartVariant, ThreePartConstraint,
};
use crate::{Error, Result, Which};

/// Method names are part of the command-line interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Method {
    /// Recurrence table.
    Dp,
    /// Sum over bounded tuples weighted by shifted binomial products.
    Thm32,
    /// Binomial convolution of the tuple histogram.
    P61,
    /// Sum of the Fourier-derived waves.
    Waves,
    /// Interpolated quasi-polynomial.
    Quasipoly,
    /// Polynomial part only (a rational, not the count).
    Polypart,
    /// Bernoulli formula for k = 3.
    Prop34,
    /// Sum of the closed-form waves.
    Prop52,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Dp,
        Method::Thm32,
        Method::P61,
        Method::Waves,
        Method::Quasipoly,
        Method::Polypart,
        Method::Prop34,
        Method::Prop52,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dp => "dp",
            Method::Thm32 => "thm32",
            Method::P61 => "p61",
            Method::Waves => "waves",
            Method::Quasipoly => "quasipoly",
            Method::Polypart => "polypart",
            Method::Prop34 => "prop34",
            Method::Prop52 => "prop52",
        }
    }
}

fn domain(n: u64, k: u64, which: Which) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if n < which.shift(k) {
        return Err(Error::Domain(format!(
            "{which}({n},{k}) is outside the formula domain n >= {} (its value is 0; use --method dp)",
            which.shift(k)
        )));
    }
    Ok(())
}

/// The value by `method`; integral except for `Polypart`.
pub fn compute_value(which: Which, n: u64, k: u64, method: Method) -> Result<Rat> {
    if method == Method::Dp {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        return Ok(Rat::from_integer(p_table(n, k).value(which, n, k)?));
    }
    domain(n, k, which)?;
    let big_n = n - which.shift(k);
    let value = match method {
        Method::Dp => unreachable!(),
        Method::Thm32 => Rat::from_integer(tuple_sum_formula(n, k, which, &f_histogram(k))?),
        Method::P61 => Rat::from_integer(binomial_convolution(n, k, which, &f_histogram(k))?),
        Method::Waves => waves_from_constituents(k)?.sum_at(big_n as i64),
        Method::Quasipoly => interp_constituents(k).eval(big_n),
        Method::Polypart => {
            return match which {
                Which::P => poly_part_p(n, k, PolyPartVariant::Bernoulli),
                Which::Q => poly_part_q(n, k, PolyPartVariant::Bernoulli),
            }
        }
        Method::Prop34 => {
            if k != 3 {
                return Err(Error::Domain(format!(
                    "method prop34 needs k = 3, got k={k}"
                )));
            }
            let twist = resolve_twist_convention()?;
            three_part_formula(
                n,
                which,
                ThreePartConstraint::ThreeMinusM,
                twist,
                &FWindowSums::for_k(3),
            )?
        }
        Method::Prop52 => {
            let twist = resolve_twist_convention()?;
            let sums = FWindowSums::for_k(k);
            (1..=k)
                .map(|j| match which {
                    Which::P => wave_closed_form(j, n, k, &sums, twist),
                    Which::Q => wave_closed_form_q(j, n, k, &sums, twist),
                })
                .sum::<Result<Rat>>()?
        }
    };
    if rat_to_int(&value).is_none() {
        return Err(Error::NonIntegerResult {
            method: method.name(),
            n,
            k,
            value: format_rat(&value),
        });
    }
    Ok(value)
}
