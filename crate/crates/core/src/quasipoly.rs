//! The quasi-polynomial p_(1..k)(n) = Σ_m d_m(n)·n^m of period D_k.
//!
//! Constituents are obtained two ways: interpolation through oracle values,
//! and the exact solution of a linear system in Bernoulli polynomial values
//! whose determinant is a power of D_k times Δ(k).

use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{factorial, lcm_upto, poly_eval, BernoulliTable, Int, Rat};
use crate::linalg::{bareiss_det, solve};
use crate::oracle::{restricted_pa_table, PartSeq};
use crate::{Error, Result};

/// Representative of `n` modulo `period` in `1..=period` (`period` stands for
/// residue 0).
pub fn residue_rep(n: u64, period: u64) -> u64 {
    (n + period - 1) % period + 1
}

/// Period-D quasi-polynomial for p_(1..k), one constituent polynomial per
/// residue v ∈ 1..=D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    k: u64,
    period: u64,
    // constituents[v - 1][m] = d_m(v)
    constituents: Vec<Vec<Rat>>,
}

impl QuasiPoly {
    pub fn from_constituents(k: u64, period: u64, constituents: Vec<Vec<Rat>>) -> Result<Self> {
        if constituents.len() as u64 != period || constituents.iter().any(|c| c.len() as u64 != k) {
            return Err(Error::Domain(format!(
                "constituent table must be {period} rows of {k} coefficients"
            )));
        }
        Ok(Self {
            k,
            period,
            constituents,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree_bound(&self) -> u64 {
        self.k - 1
    }

    /// d_m(v) for 0 ≤ m < k, 1 ≤ v ≤ D.
    pub fn coeff(&self, m: usize, v: u64) -> &Rat {
        &self.constituents[(v - 1) as usize][m]
    }

    /// Coefficients (constant first) of the constituent used for n ≡ v.
    pub fn constituent(&self, v: u64) -> &[Rat] {
        &self.constituents[(v - 1) as usize]
    }

    pub fn constituents(&self) -> &[Vec<Rat>] {
        &self.constituents
    }

    pub fn eval(&self, n: u64) -> Rat {
        let v = residue_rep(n, self.period);
        poly_eval(self.constituent(v), &Rat::from_integer(Int::from(n)))
    }

    /// Coefficientwise average (1/D)·Σ_v c_v, the polynomial part.
    pub fn average(&self) -> Vec<Rat> {
        let d = Rat::from_integer(Int::from(self.period));
        (0..self.k as usize)
            .map(|m| self.constituents.iter().map(|c| c[m].clone()).sum::<Rat>() / &d)
            .collect()
    }
}

/// Coefficients (constant first) of the unique polynomial of degree
/// < xs.len() through the given points.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    // Newton divided differences
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rat::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Constituents of p_(1..k) by interpolating oracle values at
/// v, v + D, ..., v + (k-1)D for every residue v ∈ 1..=D.
pub fn interp_constituents(k: u64) -> QuasiPoly {
    assert!(k >= 1);
    let d = lcm_upto(k);
    let table = restricted_pa_table(k * d, &PartSeq::staircase(k));
    let constituents = (1..=d)
        .map(|v| {
            let nodes: Vec<u64> = (0..k).map(|i| v + i * d).collect();
            let xs: Vec<Rat> = nodes
                .iter()
                .map(|&x| Rat::from_integer(Int::from(x)))
                .collect();
            let ys: Vec<Rat> = nodes
                .iter()
                .map(|&x| Rat::from_integer(table[x as usize].clone()))
                .collect();
            interpolate(&xs, &ys)
        })
        .collect();
    QuasiPoly {
        k,
        period: d,
        constituents,
    }
}

pub fn eval(qp: &QuasiPoly, n: u64) -> Rat {
    qp.eval(n)
}

/// Candidate readings of the moment identity
///
/// Σ_{m,v} d_m(v)·D^{n+m}·B_{n+m+1}(v/D)/(n+m+1) = rhs(n)
///
/// that links the constituents of p_(1..k) to Bernoulli–Barnes numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MomentConvention {
    /// rhs = (-1)^{n-1}·k!/(n+k)!·B_{n+k}(1..k) - δ_{0n}
    IndexSign,
    /// rhs = (-1)^n·k!/(n+k)!·B_{n+k}(1..k) - δ_{0n}
    AlternateSign,
    /// the `IndexSign` rhs, with D^{n+m+1} on the left
    ExtraPowerOfD,
    /// rhs = (-1)^{k-1}·n!/(k!(n+k)!)·B_{n+k}(1..k) + δ_{0n}, from the values
    /// of the Barnes zeta function of (1..k) at nonpositive integers
    #[default]
    ZetaRegularized,
}

impl MomentConvention {
    pub const ALL: [MomentConvention; 4] = [
        MomentConvention::IndexSign,
        MomentConvention::AlternateSign,
        MomentConvention::ExtraPowerOfD,
        MomentConvention::ZetaRegularized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MomentConvention::IndexSign => "index-sign",
            MomentConvention::AlternateSign => "alternate-sign",
            MomentConvention::ExtraPowerOfD => "extra-power-of-D",
            MomentConvention::ZetaRegularized => "zeta-regularized",
        }
    }
}

impl fmt::Display for MomentConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Precomputed Bernoulli data for the moment equations of p_(1..k) with
/// indices 0 ≤ n ≤ n_max.
#[derive(Debug, Clone)]
pub struct MomentEquations {
    k: u64,
    period: u64,
    n_max: usize,
    // bpoly[i][v - 1] = B_i(v/D)
    bpoly: Vec<Vec<Rat>>,
    barnes: Vec<Rat>,
}

impl MomentEquations {
    pub fn new(k: u64, n_max: usize) -> Self {
        assert!(k >= 1);
        let d = lcm_upto(k);
        let top = n_max + k as usize;
        let bern = BernoulliTable::new(top);
        let points: Vec<Rat> = (1..=d)
            .map(|v| Rat::new(Int::from(v), Int::from(d)))
            .collect();
        let bpoly = (0..=top)
            .map(|i| points.iter().map(|x| bern.poly_eval(i, x)).collect())
            .collect();
        let staircase: Vec<u64> = (1..=k).collect();
        let barnes = bern.barnes_series(top, &staircase);
        Self {
            k,
            period: d,
            n_max,
            bpoly,
            barnes,
        }
    }

    /// Number of unknowns, k·D_k.
    pub fn size(&self) -> usize {
        (self.k * self.period) as usize
    }

    fn check_n(&self, n: usize) {
        assert!(
            n <= self.n_max,
            "moment index {n} beyond precomputed range {}",
            self.n_max
        );
    }

    /// Left-hand coefficients of equation `n`, in column order (m, v) with
    /// m major.
    pub fn row(&self, n: usize, conv: MomentConvention) -> Vec<Rat> {
        self.check_n(n);
        let d = Int::from(self.period);
        let extra = usize::from(conv == MomentConvention::ExtraPowerOfD);
        let mut row = Vec::with_capacity(self.size());
        for m in 0..self.k as usize {
            let idx = n + m + 1;
            let scale = Rat::new(d.pow((n + m + extra) as u32), Int::from(idx));
            for v in 0..self.period as usize {
                row.push(&self.bpoly[idx][v] * &scale);
            }
        }
        row
    }

    pub fn rhs(&self, n: usize, conv: MomentConvention) -> Rat {
        self.check_n(n);
        let k = self.k;
        let barnes = &self.barnes[n + k as usize];
        let delta = if n == 0 { Rat::one() } else { Rat::zero() };
        let factorial_core = Rat::new(factorial(k), factorial(n as u64 + k)) * barnes;
        match conv {
            MomentConvention::IndexSign | MomentConvention::ExtraPowerOfD => {
                let signed = if n % 2 == 1 {
                    factorial_core
                } else {
                    -factorial_core
                };
                signed - delta
            }
            MomentConvention::AlternateSign => {
                let signed = if n.is_multiple_of(2) {
                    factorial_core
                } else {
                    -factorial_core
                };
                signed - delta
            }
            MomentConvention::ZetaRegularized => {
                let core =
                    Rat::new(factorial(n as u64), factorial(k) * factorial(n as u64 + k)) * barnes;
                let signed = if (k - 1).is_multiple_of(2) {
                    core
                } else {
                    -core
                };
                signed + delta
            }
        }
    }

    /// Left side minus right side of equation `n` for the constituents `qp`.
    pub fn residual(&self, qp: &QuasiPoly, n: usize, conv: MomentConvention) -> Rat {
        assert_eq!(qp.k(), self.k);
        let row = self.row(n, conv);
        let unknowns = flatten(qp);
        let lhs: Rat = row.iter().zip(&unknowns).map(|(a, x)| a * x).sum();
        lhs - self.rhs(n, conv)
    }

    /// The k·D_k × k·D_k system for n = 0..k·D_k-1.
    pub fn system(&self, conv: MomentConvention) -> (Vec<Vec<Rat>>, Vec<Rat>) {
        let size = self.size();
        let rows = (0..size).map(|n| self.row(n, conv)).collect();
        let rhs = (0..size).map(|n| self.rhs(n, conv)).collect();
        (rows, rhs)
    }

    /// The Δ(k) matrix: entry (r, (m,v)) = B_{r+m+1}(v/D)/(r+m+1).
    pub fn delta_matrix(&self) -> Vec<Vec<Rat>> {
        (0..self.size())
            .map(|r| {
                let mut row = Vec::with_capacity(self.size());
                for m in 0..self.k as usize {
                    let idx = r + m + 1;
                    let inv = Rat::new(Int::one(), Int::from(idx));
                    for v in 0..self.period as usize {
                        row.push(&self.bpoly[idx][v] * &inv);
                    }
                }
                row
            })
            .collect()
    }
}

fn flatten(qp: &QuasiPoly) -> Vec<Rat> {
    let mut out = Vec::with_capacity((qp.k * qp.period) as usize);
    for m in 0..qp.k as usize {
        for v in 1..=qp.period {
            out.push(qp.coeff(m, v).clone());
        }
    }
    out
}

fn unflatten(k: u64, period: u64, x: Vec<Rat>) -> QuasiPoly {
    let mut constituents = vec![Vec::with_capacity(k as usize); period as usize];
    for (idx, val) in x.into_iter().enumerate() {
        let v = idx % period as usize;
        constituents[v].push(val);
    }
    QuasiPoly {
        k,
        period,
        constituents,
    }
}

fn system_size(k: u64) -> usize {
    (k * lcm_upto(k)) as usize
}

/// Δ(k), by Bareiss elimination.
pub fn delta_det(k: u64) -> Rat {
    let eqs = MomentEquations::new(k, system_size(k));
    bareiss_det(&eqs.delta_matrix())
}

/// Determinant of the moment system (left-hand side only; independent of the
/// right-hand convention except for the extra power of D).
pub fn system_det(k: u64) -> Rat {
    let eqs = MomentEquations::new(k, system_size(k));
    bareiss_det(&eqs.system(MomentConvention::ZetaRegularized).0)
}

/// The exponent N with det(system) = D_k^N·Δ(k): rows scale by D^r and
/// column block m by D^m.
pub fn scaling_exponent(k: u64) -> u64 {
    let d = lcm_upto(k);
    let size = k * d;
    size * (size - 1) / 2 + d * k * (k - 1) / 2
}

/// Checks det(system)/Δ(k) = ±D_k^N and returns (ratio, N) on success.
pub fn check_det_scaling(k: u64) -> Result<(Rat, u64)> {
    let delta = delta_det(k);
    if delta.is_zero() {
        return Err(Error::SingularSystem {
            rank: 0,
            size: system_size(k),
        });
    }
    let ratio = system_det(k) / &delta;
    let n = scaling_exponent(k);
    let power = Rat::from_integer(Int::from(lcm_upto(k)).pow(n as u32));
    if ratio == power || ratio == -power {
        Ok((ratio, n))
    } else {
        Err(Error::Domain(format!(
            "system determinant is not ±D^{n}·Δ({k}); ratio {ratio}"
        )))
    }
}

/// Constituents of p_(1..k) from the moment system under `conv`.
pub fn solve_bernoulli_system_with(k: u64, conv: MomentConvention) -> Result<QuasiPoly> {
    let eqs = MomentEquations::new(k, system_size(k));
    let (rows, rhs) = eqs.system(conv);
    let x = solve(&rows, &rhs)?;
    Ok(unflatten(k, lcm_upto(k), x))
}

pub fn solve_bernoulli_system(k: u64) -> Result<QuasiPoly> {
    solve_bernoulli_system_with(k, MomentConvention::default())
}

/// Residual of moment equation `n` for the constituent table `qp`.
pub fn moment_residual(qp: &QuasiPoly, k: u64, n: usize, conv: MomentConvention) -> Rat {
    MomentEquations::new(k, n).residual(qp, n, conv)
}

/// Residual status of every catalogued convention on equations
/// 0..k·D_k-1 against the interpolated constituents.
pub fn moment_convention_table(k: u64) -> Vec<(MomentConvention, bool)> {
    let qp = interp_constituents(k);
    let size = system_size(k);
    let eqs = MomentEquations::new(k, size);
    MomentConvention::ALL
        .iter()
        .map(|&c| (c, (0..size).all(|n| eqs.residual(&qp, n, c).is_zero())))
        .collect()
}

/// The unique catalogued convention whose residuals vanish for
/// `k`, or [`Error::ConventionUnresolved`].
pub fn resolve_moment_convention(k: u64) -> Result<MomentConvention> {
    let table = moment_convention_table(k);
    let passing: Vec<_> = table
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(c, _)| *c)
        .collect();
    match passing.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::ConventionUnresolved {
            table: table
                .iter()
                .map(|(c, ok)| {
                    format!(
                        "  k={k} {:<18} {}",
                        c.name(),
                        if *ok { "vanishes" } else { "nonzero" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn residue_representatives() {
        assert_eq!(residue_rep(0, 6), 6);
        assert_eq!(residue_rep(6, 6), 6);
        assert_eq!(residue_rep(7, 6), 1);
        assert_eq!(residue_rep(5, 1), 1);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<Rat> = [1, 3, 4, 9].iter().map(|&x| rat_int(x)).collect();
        let poly = [rat(1, 2), rat_int(-3), rat_int(0), rat(2, 7)];
        let ys: Vec<Rat> = xs.iter().map(|x| poly_eval(&poly, x)).collect();
        assert_eq!(interpolate(&xs, &ys), poly.to_vec());
    }

    #[test]
    fn small_constituents() {
        let q1 = interp_constituents(1);
        assert_eq!(q1.constituents(), &[vec![rat_int(1)]]);
        let q2 = interp_constituents(2);
        // v = 1 (odd n): n/2 + 1/2 ; v = 2 (even n): n/2 + 1
        assert_eq!(q2.constituent(1), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(q2.constituent(2), &[rat_int(1), rat(1, 2)]);
        assert_eq!(q2.eval(7), rat_int(4));
        assert_eq!(interp_constituents(3).eval(5), rat_int(5));
        assert_eq!(interp_constituents(3).eval(0), rat_int(1));
        assert_eq!(q1.eval(1234), rat_int(1));
    }

    #[test]
    fn constituents_reproduce_oracle() {
        for k in 1..=6u64 {
            let qp = interp_constituents(k);
            let t = restricted_pa_table(500, &PartSeq::staircase(k));
            for n in 0..=500u64 {
                assert_eq!(
                    qp.eval(n),
                    Rat::from_integer(t[n as usize].clone()),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn delta_small() {
        assert_eq!(delta_det(1), rat(1, 2));
        // exact value from an independent Gaussian elimination
        assert_eq!(delta_det(2), rat(-1, 14745600));
    }

    #[test]
    fn residuals_under_resolved_convention() {
        let q1 = interp_constituents(1);
        assert!(moment_residual(&q1, 1, 0, MomentConvention::ZetaRegularized).is_zero());
        assert_eq!(
            moment_residual(&q1, 1, 0, MomentConvention::IndexSign),
            rat_int(1)
        );
        let q2 = interp_constituents(2);
        for n in 0..=7 {
            assert!(
                moment_residual(&q2, 2, n, MomentConvention::ZetaRegularized).is_zero(),
                "n={n}"
            );
        }
        // residuals keep vanishing past the system rows
        for n in 8..=20 {
            assert!(
                moment_residual(&q2, 2, n, MomentConvention::ZetaRegularized).is_zero(),
                "n={n}"
            );
        }
    }

    #[test]
    fn residual_detects_perturbation() {
        let q2 = interp_constituents(2);
        let mut c = q2.constituents().to_vec();
        c[0][1] += rat(1, 1000);
        let bad = QuasiPoly::from_constituents(2, 2, c).unwrap();
        let any_nonzero = (0..8)
            .any(|n| !moment_residual(&bad, 2, n, MomentConvention::ZetaRegularized).is_zero());
        assert!(any_nonzero);
    }

    #[test]
    fn convention_resolution() {
        for k in 1..=3 {
            assert_eq!(
                resolve_moment_convention(k),
                Ok(MomentConvention::ZetaRegularized)
            );
        }
    }

    #[test]
    fn system_solution_matches_interpolation() {
        for k in 1..=3 {
            assert_eq!(
                solve_bernoulli_system(k).unwrap(),
                interp_constituents(k),
                "k={k}"
            );
        }
        assert_eq!(
            solve_bernoulli_system(1).unwrap().constituents(),
            &[vec![rat_int(1)]]
        );
    }

    #[test]
    fn determinant_scaling_small() {
        for k in 1..=2 {
            let (ratio, n) = check_det_scaling(k).unwrap();
            assert!(ratio > rat_int(0));
            assert_eq!(n, scaling_exponent(k));
        }
    }

    #[test]
    fn average_of_k2() {
        assert_eq!(interp_constituents(2).average(), vec![rat(3, 4), rat(1, 2)]);
    }
}
