//! Cross-method agreement grid and module invariants.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::closedform::{
    binomial_convolution, convolution_bounds_agree, divisibility_witness, f_histogram,
    f_histogram_enumerated, tuple_sum_formula, FHistogram,
};
use crate::density::{
    density_survey, minimum_window, nonzero_bound, odd_density_rows, period_search_bound,
    survey_nonzero_density, DensityReport,
};
use crate::exactnum::{factorial, format_rat, lcm_upto, poly_eval, rat, Int, Rat};
use crate::oracle::{p_table, PTable};
use crate::quasipoly::{
    check_det_scaling, delta_det, interp_constituents, moment_convention_table,
    solve_bernoulli_system, MomentConvention, QuasiPoly,
};
use crate::waves::{
    resolve_twist_convention, three_part_formula, twist_convention_table, wave_closed_form,
    wave_closed_form_q, waves_from_quasipoly, FWindowSums, PolyPart, PolyPartVariant,
    ThreePartConstraint, WaveDecomp, TWIST_RESOLUTION_K_MAX,
};
use crate::{Result, Which};

/// Largest k for which the moment system is solved and Δ(k) computed.
pub const MOMENT_K_MAX: u64 = 4;
/// Largest k for which the histogram is cross-checked by enumeration.
pub const ENUMERATION_K_MAX: u64 = 4;
pub const DENSITY_MODULI: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Module {
    All,
    Closedform,
    Waves,
    Quasipoly,
    Density,
}

impl Module {
    fn includes(self, other: Module) -> bool {
        self == Module::All || self == other
    }

    pub fn name(self) -> &'static str {
        match self {
            Module::All => "all",
            Module::Closedform => "closedform",
            Module::Waves => "waves",
            Module::Quasipoly => "quasipoly",
            Module::Density => "density",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub k_max: u64,
    pub n_max: u64,
    pub module: Module,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub cases: u64,
    /// First counterexample, in grid order.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub options_line: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.failure.is_some())
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}\n", self.options_line);
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            s,
            "{:<11} {:<width$} {:>7}  RESULT",
            "MODULE", "CHECK", "CASES"
        );
        for c in &self.checks {
            let status = if c.failure.is_none() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{:<11} {:<width$} {:>7}  {status}",
                c.module, c.name, c.cases
            );
        }
        if !self.notes.is_empty() {
            s.push_str("notes:\n");
            for n in &self.notes {
                let _ = writeln!(s, "  {n}");
            }
        }
        let failed = self.checks.iter().filter(|c| c.failure.is_some()).count();
        let _ = writeln!(s, "summary: {} checks, {failed} failed", self.checks.len());
        if let Some(c) = self.first_failure() {
            let _ = writeln!(
                s,
                "first counterexample [{} / {}]: {}",
                c.module,
                c.name,
                c.failure.as_deref().unwrap_or_default()
            );
        }
        s
    }
}

type Outcome = std::result::Result<(), String>;

/// Runs `f` over `cells` in parallel; keeps the first failure in cell order.
fn grid<T: Sync>(
    module: &'static str,
    name: &str,
    cells: &[T],
    f: impl Fn(&T) -> Outcome + Sync,
) -> Check {
    let failure = cells
        .par_iter()
        .map(|c| f(c).err())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    Check {
        module,
        name: name.to_string(),
        cases: cells.len() as u64,
        failure,
    }
}

fn equal_or(label: &str, got: Result<Rat>, want: &Rat, what: impl Fn() -> String) -> Outcome {
    match got {
        Ok(v) if &v == want => Ok(()),
        Ok(v) => Err(format!(
            "{}: {label}={} dp={}",
            what(),
            format_rat(&v),
            format_rat(want)
        )),
        Err(e) => Err(format!("{}: {label} failed: {e}", what())),
    }
}

/// (k, which, n) for 1 ≤ k ≤ k_max and each which on its domain n ≤ n_max.
fn value_cells(k_max: u64, n_max: u64) -> Vec<(u64, Which, u64)> {
    let mut cells = Vec::new();
    for k in 1..=k_max {
        for which in [Which::P, Which::Q] {
            for n in which.shift(k)..=n_max {
                cells.push((k, which, n));
            }
        }
    }
    cells
}

struct Context {
    opts: VerifyOptions,
    table: PTable,
    cells: Vec<(u64, Which, u64)>,
    ks: Vec<u64>,
}

impl Context {
    fn dp(&self, which: Which, n: u64, k: u64) -> Rat {
        Rat::from_integer(self.table.value(which, n, k).expect("inside the table"))
    }
}

fn label(k: u64, which: Which, n: u64) -> String {
    format!("n={n} k={k} which={which}")
}

fn closedform_checks(cx: &Context, checks: &mut Vec<Check>) {
    const M: &str = "closedform";
    let hists: Vec<FHistogram> = cx.ks.par_iter().map(|&k| f_histogram(k)).collect();
    let hist = |k: u64| &hists[(k - 1) as usize];
    checks.push(grid(
        M,
        "tuple-sum formula = dp",
        &cx.cells,
        |&(k, w, n)| {
            let got = tuple_sum_formula(n, k, w, hist(k)).map(Rat::from_integer);
            equal_or("tuple_sum", got, &cx.dp(w, n, k), || label(k, w, n))
        },
    ));
    checks.push(grid(
        M,
        "binomial convolution = dp",
        &cx.cells,
        |&(k, w, n)| {
            let got = binomial_convolution(n, k, w, hist(k)).map(Rat::from_integer);
            equal_or("convolution", got, &cx.dp(w, n, k), || label(k, w, n))
        },
    ));
    checks.push(grid(
        M,
        "closed summation bounds = safe range",
        &cx.cells,
        |&(k, w, n)| match convolution_bounds_agree(n, k, w) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!(
                "{}: ceil/floor bounds differ from the safe range",
                label(k, w, n)
            )),
            Err(e) => Err(format!("{}: {e}", label(k, w, n))),
        },
    ));
    checks.push(grid(
        M,
        "divisibility witness",
        &cx.cells,
        |&(k, w, n)| match divisibility_witness(n, k, w, &cx.table) {
            Ok(d) if d.holds => Ok(()),
            Ok(d) => Err(format!(
                "{}: (k-1)!*value not divisible by {} (j={}, ell={})",
                label(k, w, n),
                d.modulus,
                d.j,
                d.ell
            )),
            Err(e) => Err(format!("{}: {e}", label(k, w, n))),
        },
    ));
    checks.push(grid(
        M,
        "histogram symmetric with total D^k/k!",
        &cx.ks,
        |&k| {
            let h = hist(k);
            let d = h.d_k() as i64;
            if let Some(s) = (0..=d).find(|&s| h.get(s) != h.get(d - s)) {
                return Err(format!("k={k}: f({s}) != f({})", d - s));
            }
            let want = Int::from(lcm_upto(k)).pow(k as u32) / factorial(k);
            if h.total() != want {
                return Err(format!("k={k}: total {} != {want}", h.total()));
            }
            Ok(())
        },
    ));
    let small: Vec<u64> = cx
        .ks
        .iter()
        .copied()
        .filter(|&k| k <= ENUMERATION_K_MAX)
        .collect();
    checks.push(grid(M, "histogram = tuple enumeration", &small, |&k| {
        if hist(k).values() == f_histogram_enumerated(k).as_slice() {
            Ok(())
        } else {
            Err(format!("k={k}: histogram differs from enumeration"))
        }
    }));
}

fn waves_checks(cx: &Context, qps: &[QuasiPoly], checks: &mut Vec<Check>, notes: &mut Vec<String>) {
    const M: &str = "waves";
    let decomps: Vec<Result<WaveDecomp>> = qps.par_iter().map(waves_from_quasipoly).collect();
    checks.push(grid(M, "fourier waves certify rational", &cx.ks, |&k| {
        decomps[(k - 1) as usize]
            .as_ref()
            .map(|_| ())
            .map_err(|e| format!("k={k}: {e}"))
    }));
    let Some(decomps) = decomps.into_iter().collect::<Result<Vec<_>>>().ok() else {
        return;
    };
    let decomp = |k: u64| &decomps[(k - 1) as usize];
    checks.push(grid(M, "wave sum = dp", &cx.cells, |&(k, w, n)| {
        let sum: Rat = (1..=k).map(|j| decomp(k).shifted_value(w, j, n)).sum();
        equal_or("wave_sum", Ok(sum), &cx.dp(w, n, k), || label(k, w, n))
    }));

    let twist = match twist_convention_table(TWIST_RESOLUTION_K_MAX) {
        Ok(table) => {
            let cells: Vec<String> = table
                .iter()
                .map(|(c, ok)| format!("{} {}", c.name(), if *ok { "match" } else { "mismatch" }))
                .collect();
            notes.push(format!(
                "closed-form wave twist (k<={TWIST_RESOLUTION_K_MAX}): {}",
                cells.join(", ")
            ));
            resolve_twist_convention()
        }
        Err(e) => Err(e),
    };
    checks.push(Check {
        module: M,
        name: "closed-form wave twist resolves uniquely".into(),
        cases: 1,
        failure: twist.as_ref().err().map(|e| e.to_string()),
    });
    let Ok(twist) = twist else { return };
    notes.push(format!("closed-form waves use the {} twist", twist.name()));

    let sums: Vec<FWindowSums> = cx.ks.par_iter().map(|&k| FWindowSums::for_k(k)).collect();
    checks.push(grid(
        M,
        "closed-form waves = fourier waves",
        &cx.cells,
        |&(k, w, n)| {
            let s = &sums[(k - 1) as usize];
            for j in 1..=k {
                let got = match w {
                    Which::P => wave_closed_form(j, n, k, s, twist),
                    Which::Q => wave_closed_form_q(j, n, k, s, twist),
                };
                let want = decomp(k).shifted_value(w, j, n);
                match got {
                    Ok(v) if v == want => {}
                    Ok(v) => {
                        return Err(format!(
                            "{} j={j}: closed_form={} fourier={}",
                            label(k, w, n),
                            format_rat(&v),
                            format_rat(&want)
                        ))
                    }
                    Err(e) => return Err(format!("{} j={j}: {e}", label(k, w, n))),
                }
            }
            Ok(())
        },
    ));

    if cx.opts.k_max >= 3 {
        let s3 = FWindowSums::for_k(3);
        let cells: Vec<_> = cx.cells.iter().copied().filter(|c| c.0 == 3).collect();
        checks.push(grid(M, "three-part formula = dp", &cells, |&(k, w, n)| {
            let got = three_part_formula(n, w, ThreePartConstraint::ThreeMinusM, twist, &s3);
            equal_or("three_part", got, &cx.dp(w, n, k), || label(k, w, n))
        }));
        let printed = three_part_formula(8, Which::P, ThreePartConstraint::TwoMinusM, twist, &s3);
        notes.push(format!(
            "three-part formula: Bernoulli total 2-m gives p(8,3)={}; total 3-m gives 5",
            printed
                .map(|v| format_rat(&v))
                .unwrap_or_else(|e| e.to_string())
        ));
    }

    checks.push(grid(M, "polynomial part forms agree", &cx.ks, |&k| {
        let pp = PolyPart::new(k);
        let avg = qps[(k - 1) as usize].average();
        if avg.as_slice() != decomp(k).polynomial_part() {
            return Err(format!("k={k}: constituent average differs from W_1"));
        }
        for big_n in 0..=k as i64 {
            let a = pp.eval_reduced(big_n, PolyPartVariant::TupleAverage);
            let b = pp.eval_reduced(big_n, PolyPartVariant::Bernoulli);
            let c = poly_eval(&avg, &Rat::from_integer(Int::from(big_n)));
            if a != b || b != c {
                return Err(format!(
                    "k={k} N={big_n}: tuple-average={} bernoulli={} average={}",
                    format_rat(&a),
                    format_rat(&b),
                    format_rat(&c)
                ));
            }
        }
        Ok(())
    }));
}

fn quasipoly_checks(
    cx: &Context,
    qps: &[QuasiPoly],
    checks: &mut Vec<Check>,
    notes: &mut Vec<String>,
) {
    const M: &str = "quasipoly";
    let p_cells: Vec<_> = cx
        .cells
        .iter()
        .copied()
        .filter(|c| c.1 == Which::P)
        .collect();
    checks.push(grid(M, "constituents = dp", &p_cells, |&(k, w, n)| {
        let got = qps[(k - 1) as usize].eval(n - k);
        equal_or("quasipoly", Ok(got), &cx.dp(w, n, k), || label(k, w, n))
    }));

    let small: Vec<u64> = cx
        .ks
        .iter()
        .copied()
        .filter(|&k| k <= MOMENT_K_MAX)
        .collect();
    let deltas: Vec<Rat> = small.par_iter().map(|&k| delta_det(k)).collect();
    checks.push(grid(M, "delta(k) != 0", &small, |&k| {
        let d = &deltas[(k - 1) as usize];
        if d.is_zero() {
            return Err(format!("k={k}: delta vanishes"));
        }
        if k == 1 && *d != rat(1, 2) {
            return Err(format!("k=1: delta={} (expected 1/2)", format_rat(d)));
        }
        Ok(())
    }));

    let tables: Vec<_> = small
        .par_iter()
        .map(|&k| moment_convention_table(k))
        .collect();
    for (k, table) in small.iter().zip(&tables) {
        let cells: Vec<String> = table
            .iter()
            .map(|(c, ok)| format!("{} {}", c.name(), if *ok { "vanishes" } else { "nonzero" }))
            .collect();
        notes.push(format!(
            "moment identity residuals k={k}: {}",
            cells.join(", ")
        ));
    }
    let printed_fails = tables.iter().any(|t| {
        t.iter()
            .any(|(c, ok)| *c == MomentConvention::IndexSign && !ok)
    });
    if printed_fails {
        notes.push(format!(
            "moment identity: the printed sign/offset convention fails the residual test; \
             the {} form is used",
            MomentConvention::default().name()
        ));
    }
    checks.push(grid(M, "moment identity residuals vanish", &small, |&k| {
        let ok = tables[(k - 1) as usize]
            .iter()
            .any(|(c, ok)| *c == MomentConvention::default() && *ok);
        if ok {
            Ok(())
        } else {
            Err(format!(
                "k={k}: {} residual nonzero",
                MomentConvention::default().name()
            ))
        }
    }));
    checks.push(grid(M, "bernoulli system = interpolation", &small, |&k| {
        match solve_bernoulli_system(k) {
            Ok(qp) if qp == qps[(k - 1) as usize] => Ok(()),
            Ok(_) => Err(format!(
                "k={k}: solved constituents differ from interpolation"
            )),
            Err(e) => Err(format!("k={k}: {e}")),
        }
    }));
    checks.push(grid(M, "system det = D^N * delta(k)", &small, |&k| {
        check_det_scaling(k)
            .map(|_| ())
            .map_err(|e| format!("k={k}: {e}"))
    }));
}

fn density_checks(cx: &Context, checks: &mut Vec<Check>, notes: &mut Vec<String>) {
    const M: &str = "density";
    let k_max = cx.opts.k_max;
    let window = DENSITY_MODULI
        .iter()
        .map(|&m| period_search_bound(k_max, m) + minimum_window(k_max))
        .max()
        .unwrap_or(0);
    let survey = density_survey(k_max, &DENSITY_MODULI, Which::P, window);
    let cells: Vec<(u64, u64)> = cx
        .ks
        .iter()
        .flat_map(|&k| DENSITY_MODULI.iter().map(move |&m| (k, m)))
        .collect();
    let reports: Vec<DensityReport> = match survey {
        Ok(r) => r,
        Err(e) => {
            checks.push(Check {
                module: M,
                name: "density survey".into(),
                cases: cells.len() as u64,
                failure: Some(e.to_string()),
            });
            return;
        }
    };
    let cell = |k: u64, m: u64| reports.iter().filter(move |r| r.k == k && r.m == m);
    checks.push(grid(
        M,
        "period certified, densities sum to 1",
        &cells,
        |&(k, m)| {
            if !cell(k, m).all(|r| r.certified) {
                return Err(format!(
                    "k={k} m={m}: no period certified within N={window}"
                ));
            }
            let total: Rat = cell(k, m).map(|r| r.density.clone()).sum();
            if !total.is_one() {
                return Err(format!(
                    "k={k} m={m}: densities sum to {}",
                    format_rat(&total)
                ));
            }
            Ok(())
        },
    ));
    checks.push(grid(
        M,
        "nonzero-residue density >= 1/C(k+1,2)",
        &cells,
        |&(k, m)| {
            let d = survey_nonzero_density(&reports, k, m).expect("cell present");
            if d >= nonzero_bound(k) {
                Ok(())
            } else {
                Err(format!(
                    "k={k} m={m}: density {} below {}",
                    format_rat(&d),
                    format_rat(&nonzero_bound(k))
                ))
            }
        },
    ));
    if k_max >= 2 {
        let odd = cell(2, 2)
            .find(|r| r.residue == 1)
            .map(|r| r.density.clone());
        checks.push(Check {
            module: M,
            name: "odd density at k=2 is 1/2".into(),
            cases: 1,
            failure: match odd {
                Some(d) if d == rat(1, 2) => None,
                other => Some(format!(
                    "k=2 m=2: odd density {:?}",
                    other.map(|d| format_rat(&d))
                )),
            },
        });
    }
    if let Ok(rows) = odd_density_rows(k_max, Which::P, window) {
        let parts: Vec<String> = rows
            .iter()
            .map(|r| {
                format!(
                    "k={} {}{}",
                    r.k,
                    format_rat(&r.density),
                    if r.at_most_two_thirds { "" } else { " (>2/3)" }
                )
            })
            .collect();
        notes.push(format!("odd densities: {}", parts.join(", ")));
    }
}

pub fn verify(opts: VerifyOptions) -> VerifyReport {
    let k_max = opts.k_max.max(1);
    let n_max = opts.n_max;
    let cx = Context {
        opts: VerifyOptions { k_max, ..opts },
        table: p_table(n_max, k_max),
        cells: value_cells(k_max, n_max),
        ks: (1..=k_max).collect(),
    };
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let m = opts.module;
    if m.includes(Module::Closedform) {
        closedform_checks(&cx, &mut checks);
    }
    if m.includes(Module::Waves) || m.includes(Module::Quasipoly) {
        let qps: Vec<QuasiPoly> = cx.ks.par_iter().map(|&k| interp_constituents(k)).collect();
        if m.includes(Module::Quasipoly) {
            quasipoly_checks(&cx, &qps, &mut checks, &mut notes);
        }
        if m.includes(Module::Waves) {
            waves_checks(&cx, &qps, &mut checks, &mut notes);
        }
    }
    if m.includes(Module::Density) {
        density_checks(&cx, &mut checks, &mut notes);
    }
    VerifyReport {
        options_line: format!("verify kmax={k_max} nmax={n_max} modules={}", m.name()),
        checks,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let r = verify(VerifyOptions {
            k_max: 3,
            n_max: 60,
            module: Module::All,
        });
        assert!(r.passed(), "{}", r.render());
        assert!(r.render().contains("twist"));
    }

    #[test]
    fn deterministic() {
        let opts = VerifyOptions {
            k_max: 3,
            n_max: 40,
            module: Module::Closedform,
        };
        assert_eq!(verify(opts).render(), verify(opts).render());
    }
}
