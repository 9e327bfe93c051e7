//! Whole-family consistency sweeps over all partitions up to a given weight.
//! Each partition is an independent job dispatched through [`crate::par`].

use crate::cmpair::{build_cm_pair, transpose_pair, verify_rank_one};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, hermite_table};
use crate::par;
use crate::partition::{partitions_up_to, Partition};
use crate::spectral::annihilators;
use crate::xhp::{bispectral_check, generating_series, s_factor, xhp_wronskian_with, XhpFamily};

/// Outcome of an exact sweep: how many checks ran and which failed.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub partitions: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(parts: &[Partition], results: Vec<Result<(usize, Vec<String>)>>) -> Self {
        let mut report = SweepReport {
            partitions: parts.len(),
            ..Default::default()
        };
        for (p, r) in parts.iter().zip(results) {
            match r {
                Ok((n, fails)) => {
                    report.checks += n;
                    report.failures.extend(fails);
                }
                Err(e) => report.failures.push(format!("{p}: {}", e.name())),
            }
        }
        report
    }
}

/// Wronskian and CM-pair routes agree for every `n ∈ I`, `n ≤ N + extra`.
pub fn dual_method_sweep(max_weight: usize, extra: usize) -> SweepReport {
    let parts = partitions_up_to(max_weight);
    let results = par::map(&parts, |p| {
        let nmax = p.weight() + extra;
        let table = hermite_table(nmax + p.len());
        let family = XhpFamily::new(p)?;
        let mut fails = Vec::new();
        let degrees = p.degree_set(nmax);
        for &n in &degrees {
            if xhp_wronskian_with(p, n, &table)? != family.get(n)? {
                fails.push(format!("{p}: n = {n}"));
            }
        }
        Ok((degrees.len(), fails))
    });
    SweepReport::collect(&parts, results)
}

/// Rank-one condition for every CM pair and its transpose partner.
pub fn rank_one_sweep(max_weight: usize) -> SweepReport {
    let parts = partitions_up_to(max_weight);
    let results = par::map(&parts, |p| {
        let c = build_cm_pair(p)?;
        let mut fails = Vec::new();
        if !verify_rank_one(&c) {
            fails.push(format!("{p}"));
        }
        if !verify_rank_one(&transpose_pair(&c)) {
            fails.push(format!("{p} (transpose)"));
        }
        Ok((2, fails))
    });
    SweepReport::collect(&parts, results)
}

/// The `zⁿ` coefficient of the generating series is `s(n)/n! · H_n^(λ)`
/// for `n < N + extra`, and zero on the excluded degrees.
pub fn generating_sweep(max_weight: usize, extra: usize) -> SweepReport {
    let parts = partitions_up_to(max_weight);
    let results = par::map(&parts, |p| {
        let order = p.weight() + extra;
        let series = generating_series(p, order)?;
        let family = XhpFamily::new(p)?;
        let mut fails = Vec::new();
        for n in 0..order {
            let c = series.coeff(n as i64).expect("below order");
            let ok = match family.get(n) {
                Ok(h) => c == h.scale(&(s_factor(p, n) / factorial(n))),
                Err(Error::DegreeExcluded(_)) => c.is_zero(),
                Err(e) => return Err(e),
            };
            if !ok {
                fails.push(format!("{p}: z^{n}"));
            }
        }
        Ok((order, fails))
    });
    SweepReport::collect(&parts, results)
}

/// The stationary wave function is symmetric under the bispectral swap.
pub fn bispectral_sweep(max_weight: usize) -> SweepReport {
    let parts = partitions_up_to(max_weight);
    let results = par::map(&parts, |p| {
        let ok = bispectral_check(&build_cm_pair(p)?)?;
        Ok((1, if ok { Vec::new() } else { vec![format!("{p}")] }))
    });
    SweepReport::collect(&parts, results)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Largest relative residual over every θ_i and tested degree.
    Checked(f64),
    /// The spectrum was not simple; nothing was tested.
    Skipped(String),
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct AnnihilationRecord {
    pub partition: Partition,
    pub y: f64,
    pub outcome: Outcome,
}

/// Runs the annihilator construction for every partition and sample `y`,
/// testing degrees `n ≤ N + extra`. Repeated eigenvalues are recorded as
/// skipped.
pub fn annihilation_sweep(
    max_weight: usize,
    ys: &[f64],
    extra: usize,
    tol: f64,
) -> Vec<AnnihilationRecord> {
    let jobs: Vec<(Partition, f64)> = partitions_up_to(max_weight)
        .into_iter()
        .flat_map(|p| ys.iter().map(move |&y| (p.clone(), y)))
        .collect();
    par::map(&jobs, |(p, y)| {
        let outcome = match annihilators(p, *y, tol, p.weight() + extra) {
            Ok(set) => Outcome::Checked(set.max_residual()),
            Err(e @ Error::DegenerateSpectrum { .. }) => Outcome::Skipped(e.to_string()),
            Err(e) => Outcome::Failed(e.to_string()),
        };
        AnnihilationRecord {
            partition: p.clone(),
            y: *y,
            outcome,
        }
    })
}
