//! Residue densities of p(n,k) and q(n,k) modulo m.
//!
//! Both sequences satisfy the linear recurrence with characteristic
//! polynomial Π_{i=1}^{k}(1 - z^i) (order M = C(k+1,2), trailing coefficient
//! ±1), so modulo m they are purely periodic from n = 1 on. A candidate period
//! that repeats over M consecutive terms therefore repeats forever, and the
//! density over one period is exact.

use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

use crate::exactnum::{lcm_upto, Int, Rat};
use crate::{Error, Result, Which};

/// Outcome for one (k, m, residue) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub k: u64,
    pub m: u64,
    pub residue: u64,
    pub which: Which,
    /// Exact when `certified`, otherwise the ratio over 1..=window.
    pub density: Rat,
    pub period: Option<u64>,
    pub window: u64,
    pub certified: bool,
}

/// Coefficients of Π_{i=1}^{k}(1 - z^i), constant first.
pub fn recurrence_poly(k: u64) -> Vec<i64> {
    let mut poly = vec![1i64];
    for i in 1..=k as usize {
        let mut next = vec![0i64; poly.len() + i];
        for (d, &c) in poly.iter().enumerate() {
            next[d] += c;
            next[d + i] -= c;
        }
        poly = next;
    }
    poly
}

/// p(n,k) mod m (or q) for 0 ≤ n ≤ n_max.
pub fn mod_sequence(k: u64, m: u64, which: Which, n_max: u64) -> Vec<u64> {
    assert!(k >= 1 && m >= 2);
    let len = n_max as usize + 1;
    let mut base = vec![0u64; len];
    base[0] = 1 % m;
    for i in 1..=k as usize {
        for n in i..len {
            base[n] = (base[n] + base[n - i]) % m;
        }
    }
    let shift = which.shift(k) as usize;
    (0..len)
        .map(|n| if n >= shift { base[n - shift] } else { 0 })
        .collect()
}

/// Whether the recurrence holds (mod m) at every n in (M, n_max].
pub fn recurrence_holds(seq: &[u64], k: u64, m: u64) -> bool {
    let c = recurrence_poly(k);
    let order = c.len() - 1;
    (order + 1..seq.len()).all(|n| {
        let s: i64 = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| ci * seq[n - i] as i64)
            .sum();
        s.rem_euclid(m as i64) == 0
    })
}

/// Largest candidate period tried: multiples of D_k up to m²·k·D_k.
pub fn period_search_bound(k: u64, m: u64) -> u64 {
    m * m * k * lcm_upto(k)
}

/// Smallest window N for which at least one candidate can be tested.
pub fn minimum_window(k: u64) -> u64 {
    lcm_upto(k) + k * (k + 1) / 2
}

/// Smallest multiple P of D_k (within the search bound and the window) with
/// seq[n + P] = seq[n] for n in 1..=M.
pub fn certify_period(seq: &[u64], k: u64, m: u64) -> Option<u64> {
    let d = lcm_upto(k);
    let order = (k * (k + 1) / 2) as usize;
    let last = seq.len() as u64 - 1;
    let bound = period_search_bound(k, m);
    (1..)
        .map(|c| c * d)
        .take_while(|&p| p <= bound && p + order as u64 <= last)
        .find(|&p| {
            let p = p as usize;
            (1..=order).all(|n| seq[n + p] == seq[n])
        })
}

/// Per-residue counts over one certified period, or over 1..=N.
#[derive(Debug, Clone)]
struct Profile {
    counts: Vec<u64>,
    total: u64,
    period: Option<u64>,
    window: u64,
}

fn profile(k: u64, m: u64, which: Which, window: u64) -> Result<Profile> {
    if k == 0 || m < 2 {
        return Err(Error::Domain(format!(
            "density needs k >= 1 and m >= 2 (got k={k}, m={m})"
        )));
    }
    let needed = minimum_window(k);
    if window < needed {
        return Err(Error::WindowTooSmall {
            needed,
            got: window,
        });
    }
    let seq = mod_sequence(k, m, which, window);
    if !recurrence_holds(&seq, k, m) {
        return Err(Error::Domain(format!(
            "sequence for k={k} violates its recurrence mod {m}"
        )));
    }
    let period = certify_period(&seq, k, m);
    let span = period.unwrap_or(window) as usize;
    let mut counts = vec![0u64; m as usize];
    for &a in &seq[1..=span] {
        counts[a as usize] += 1;
    }
    Ok(Profile {
        counts,
        total: span as u64,
        period,
        window,
    })
}

impl Profile {
    fn report(&self, k: u64, m: u64, residue: u64, which: Which) -> DensityReport {
        DensityReport {
            k,
            m,
            residue,
            which,
            density: Rat::new(
                Int::from(self.counts[residue as usize]),
                Int::from(self.total),
            ),
            period: self.period,
            window: self.window,
            certified: self.period.is_some(),
        }
    }
}

/// Density of {n : value(n,k) ≡ residue (mod m)}.
pub fn residue_density(
    k: u64,
    m: u64,
    residue: u64,
    which: Which,
    window: u64,
) -> Result<DensityReport> {
    if residue >= m {
        return Err(Error::Domain(format!(
            "residue {residue} must be below m={m}"
        )));
    }
    Ok(profile(k, m, which, window)?.report(k, m, residue, which))
}

/// Density of nonzero residues compared against 1/C(k+1,2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub density: Rat,
    pub bound: Rat,
    pub holds: bool,
    pub certified: bool,
}

pub fn nonzero_bound(k: u64) -> Rat {
    Rat::new(Int::from(1), Int::from(k * (k + 1) / 2))
}

pub fn check_bound_nonzero(k: u64, m: u64, which: Which, window: u64) -> Result<BoundCheck> {
    let zero = residue_density(k, m, 0, which, window)?;
    let density = Rat::from_integer(Int::from(1)) - zero.density;
    let bound = nonzero_bound(k);
    Ok(BoundCheck {
        holds: density >= bound,
        density,
        bound,
        certified: zero.certified,
    })
}

/// Reports for every k ≤ k_max, m in `mods`, residue < m, ordered by
/// (k, m, residue).
pub fn density_survey(
    k_max: u64,
    mods: &[u64],
    which: Which,
    window: u64,
) -> Result<Vec<DensityReport>> {
    let cells: Vec<(u64, u64)> = (1..=k_max)
        .flat_map(|k| mods.iter().map(move |&m| (k, m)))
        .collect();
    let per_cell = cells
        .par_iter()
        .map(|&(k, m)| {
            let p = profile(k, m, which, window)?;
            Ok((0..m).map(|i| p.report(k, m, i, which)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_cell.into_iter().flatten().collect())
}

/// Nonzero-residue density of the (k, m) cell in a survey.
pub fn survey_nonzero_density(reports: &[DensityReport], k: u64, m: u64) -> Option<Rat> {
    reports
        .iter()
        .find(|r| r.k == k && r.m == m && r.residue == 0)
        .map(|r| Rat::from_integer(Int::from(1)) - &r.density)
}

/// Survey rows flagged as violating the nonzero-residue bound.
pub fn survey_violations(reports: &[DensityReport]) -> Vec<(u64, u64)> {
    reports
        .iter()
        .filter(|r| r.residue == 0)
        .filter(|r| Rat::from_integer(Int::from(1)) - &r.density < nonzero_bound(r.k))
        .map(|r| (r.k, r.m))
        .collect()
}

/// CSV: k,m,i,density_num,density_den,period,certified,bound_holds.
pub fn survey_csv(reports: &[DensityReport]) -> String {
    let mut out = String::from("k,m,i,density_num,density_den,period,certified,bound_holds\n");
    for r in reports {
        let holds = survey_nonzero_density(reports, r.k, r.m)
            .map(|d| d >= nonzero_bound(r.k))
            .unwrap_or(false);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.k,
            r.m,
            r.residue,
            r.density.numer(),
            r.density.denom(),
            r.period.map(|p| p.to_string()).unwrap_or_default(),
            r.certified,
            holds
        );
    }
    out
}

/// Odd-value density for one k against the 2/3 threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDensityRow {
    pub k: u64,
    pub density: Rat,
    pub certified: bool,
    pub at_most_two_thirds: bool,
}

pub fn odd_density_rows(k_max: u64, which: Which, window: u64) -> Result<Vec<OddDensityRow>> {
    let two_thirds = Rat::new(Int::from(2), Int::from(3));
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let r = residue_density(k, 2, 1, which, window)?;
            Ok(OddDensityRow {
                k,
                at_most_two_thirds: r.density <= two_thirds,
                density: r.density,
                certified: r.certified,
            })
        })
        .collect()
}

/// Whether every k that misses the 2/3 threshold is followed by a k+1 that
/// meets it (only pairs inside the surveyed range are judged).
pub fn odd_pattern_holds(rows: &[OddDensityRow]) -> bool {
    rows.windows(2)
        .all(|w| w[0].at_most_two_thirds || w[1].at_most_two_thirds)
}

/// Sum of the densities of all residues in one certified cell.
pub fn cell_total(reports: &[DensityReport], k: u64, m: u64) -> Rat {
    reports
        .iter()
        .filter(|r| r.k == k && r.m == m)
        .fold(Rat::zero(), |acc, r| acc + &r.density)
}
