use polymer_core::analytic_continuous::ldp_rate_continuous;
use polymer_core::continuous::{
    endpoint_clt_continuous, partition_function_continuous, range_second_order_cdf, ContinuousQuadOptions, TailPoint,
};
use polymer_core::exact::{clt_check_law, joint_law_exact, ldp_empirical, polymer_law, JointLawOptions};
use polymer_core::export::{law_table, Cell, Table};
use polymer_core::mc::{
    brownian_range_mc, corollary_bound_check, flory_probe, polymer_estimate_tilted, sample_walk, BrownianOptions,
    McEstimate, McOptions, Observable, Proposal,
};
use polymer_core::{continuous_constants, free_energy_g_star, ldp_rate_discrete, tilde_c_d, Error, Result};

use crate::args::{Command, ContinuousOutput, ExactOutput, Global, McCommand, Model, Sampling};

/// Named tables plus non-fatal warnings.
#[derive(Default)]
pub struct Report {
    pub tables: Vec<(String, Table)>,
    pub warnings: Vec<String>,
}

impl Report {
    fn table(mut self, name: &str, table: Table) -> Self {
        self.tables.push((name.to_owned(), table));
        self
    }
}

/// Parses `a,b,c` or `start:stop:count`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Domain(format!("cannot parse grid {spec:?}; use a comma list or start:stop:count"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let k: usize = parts[2].trim().parse().map_err(|_| bad())?;
        return match k {
            0 => Err(bad()),
            1 => Ok(vec![a]),
            _ => Ok((0..k).map(|i| if i + 1 == k { b } else { a + (b - a) * i as f64 / (k - 1) as f64 }).collect()),
        };
    }
    spec.split(',').map(|s| s.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn mc_options(sampling: &Sampling, global: &Global) -> McOptions {
    McOptions { seed: sampling.seed, samples: sampling.samples, threads: global.threads }
}

fn estimate_row(label: &str, e: &McEstimate) -> Vec<Cell> {
    vec![
        label.into(),
        e.mean.into(),
        e.std_error.into(),
        e.samples.into(),
        e.effective_sample_size.into(),
        i64::from(e.low_ess_warning).into(),
    ]
}

const ESTIMATE_HEADER: [&str; 6] = ["observable", "mean", "std_error", "samples", "effective_sample_size", "low_ess"];

fn ess_warning(report: &mut Report, label: &str, e: &McEstimate) {
    if e.low_ess_warning {
        report.warnings.push(format!(
            "{label}: effective sample size {:.1} is below 1% of {} samples; the estimate is unreliable",
            e.effective_sample_size, e.samples
        ));
    }
}

fn tail_table(points: &[TailPoint]) -> Table {
    let mut t = Table::new(&["c", "probability", "reference", "abs_error_estimate"]);
    for p in points {
        t.push(vec![p.c.into(), p.probability.into(), p.reference.into(), p.abs_error_estimate.into()]);
    }
    t
}

pub fn run(command: &Command, global: &Global) -> Result<Report> {
    match command {
        Command::Constants { beta, d } => constants(*beta, *d),
        Command::RateCurves { beta, model, grid } => rate_curves(*beta, *model, &parse_grid(grid)?),
        Command::Exact { beta, n, outputs, grid } => exact(*beta, *n, outputs, &parse_grid(grid)?, global),
        Command::Continuous { beta, t, outputs, grid, exact_radius } => {
            continuous(*beta, *t, outputs, &parse_grid(grid)?, *exact_radius)
        }
        Command::Mc { command } => mc(command, global),
    }
}

fn constants(beta: f64, d: u32) -> Result<Report> {
    let k = free_energy_g_star(beta)?;
    let c = continuous_constants(beta, d)?;
    let mut t = Table::new(&[
        "beta",
        "d",
        "c_star",
        "g_star",
        "sigma_star",
        "c_tilde_d",
        "c_dstar",
        "g_dstar",
        "sigma_dstar",
        "beta_tilde_d",
        "prefactor",
    ]);
    t.push(vec![
        beta.into(),
        (d as usize).into(),
        k.c_star.into(),
        k.g_star.into(),
        k.sigma_star.into(),
        tilde_c_d(beta, d)?.into(),
        c.c_dstar.into(),
        c.g_dstar.into(),
        c.sigma_dstar.into(),
        c.beta_tilde_d.into(),
        c.prefactor.into(),
    ]);
    Ok(Report::default().table("constants", t))
}

fn rate_curves(beta: f64, model: Model, grid: &[f64]) -> Result<Report> {
    let threshold = match model {
        Model::Discrete => free_energy_g_star(beta / 2.0)?.c_star,
        Model::Continuous => (beta / 2.0).cbrt(),
    };
    let mut thetas = grid.to_vec();
    let (lo, hi) = thetas.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if threshold >= lo && threshold <= hi {
        thetas.push(threshold);
    }
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    let mut t = Table::new(&["theta", "rate", "branch", "aux_root", "threshold", "at_boundary"]);
    for theta in thetas {
        let p = match model {
            Model::Discrete => ldp_rate_discrete(beta, theta)?,
            Model::Continuous => ldp_rate_continuous(beta, theta)?,
        };
        t.push(vec![
            theta.into(),
            p.rate.into(),
            (p.branch.id() as usize).into(),
            p.aux_root.unwrap_or(f64::NAN).into(),
            p.threshold.into(),
            i64::from(theta == threshold).into(),
        ]);
    }
    Ok(Report::default().table("rate-curves", t))
}

fn exact(beta: f64, n: usize, outputs: &[ExactOutput], grid: &[f64], global: &Global) -> Result<Report> {
    let options = global.cap_override.map_or_else(JointLawOptions::default, |cap| JointLawOptions { cap });
    let law = joint_law_exact(n, options)?;
    let polymer = polymer_law(beta, &law)?;
    let mut report = Report::default();
    for output in outputs {
        report = match output {
            ExactOutput::Law => report.table("law", law_table(polymer.tilted())),
            ExactOutput::Z => {
                let mut t = Table::new(&["n", "beta", "log_partition", "partition"]);
                t.push(vec![n.into(), beta.into(), polymer.log_partition.into(), polymer.partition().into()]);
                report.table("z", t)
            }
            ExactOutput::FreeEnergy => {
                let f = polymer.log_partition / n as f64;
                let g = if beta > 0.0 { free_energy_g_star(beta)?.g_star } else { 0.0 };
                let mut t = Table::new(&["n", "beta", "free_energy", "g_star", "difference"]);
                t.push(vec![n.into(), beta.into(), f.into(), g.into(), (f - g).into()]);
                report.table("free-energy", t)
            }
            ExactOutput::Clt => {
                let k = clt_check_law(&polymer)?;
                let mut t = Table::new(&["n", "beta", "ks", "center", "scale", "ks_midpoint", "mean_offset"]);
                t.push(vec![
                    n.into(),
                    beta.into(),
                    k.ks.into(),
                    k.center.into(),
                    k.scale.into(),
                    k.ks_midpoint.into(),
                    k.mean_offset.into(),
                ]);
                report.table("clt", t)
            }
            ExactOutput::Ldp => {
                let rates = ldp_empirical(&polymer, grid, 1)?;
                let mut t = Table::new(&["theta", "x", "probability", "empirical_rate", "rate"]);
                for r in rates {
                    let exact = if beta > 0.0 { ldp_rate_discrete(beta, r.theta)?.rate } else { f64::NAN };
                    t.push(vec![r.theta.into(), r.x.into(), r.probability.into(), r.rate.into(), exact.into()]);
                }
                report.table("ldp", t)
            }
        };
    }
    Ok(report)
}

fn continuous(beta: f64, t: f64, outputs: &[ContinuousOutput], grid: &[f64], exact_radius: bool) -> Result<Report> {
    let options = ContinuousQuadOptions { use_exact_radius: exact_radius, ..Default::default() };
    let mut report = Report::default();
    for output in outputs {
        report = match output {
            ContinuousOutput::Z => {
                let z = partition_function_continuous(beta, t, options)?;
                let mut tab = Table::new(&[
                    "beta",
                    "t",
                    "ratio_to_asymptote",
                    "log_value",
                    "scaled_value",
                    "abs_error_estimate",
                    "lower_cut",
                    "upper_cut",
                    "below_cut_log_mass",
                    "below_cut_log_bound",
                ]);
                tab.push(vec![
                    beta.into(),
                    t.into(),
                    z.ratio_to_asymptote.into(),
                    z.log_value.into(),
                    z.scaled.value.into(),
                    z.scaled.abs_error_estimate.into(),
                    z.lower_cut.into(),
                    z.upper_cut.into(),
                    z.below_cut_log_mass.into(),
                    z.below_cut_log_bound.into(),
                ]);
                report.table("z", tab)
            }
            ContinuousOutput::RangeClt => {
                let points =
                    grid.iter().map(|&c| range_second_order_cdf(beta, t, c, options)).collect::<Result<Vec<_>>>()?;
                report.table("range-clt", tail_table(&points))
            }
            ContinuousOutput::EndpointClt => {
                let points =
                    grid.iter().map(|&c| endpoint_clt_continuous(beta, t, c, options)).collect::<Result<Vec<_>>>()?;
                report.table("endpoint-clt", tail_table(&points))
            }
        };
    }
    Ok(report)
}

fn mc(command: &McCommand, global: &Global) -> Result<Report> {
    let mut report = Report::default();
    match command {
        McCommand::Walk { d, n, sampling } => {
            let options = mc_options(sampling, global);
            let paths = options.run(|i| sample_walk(*d, *n, sampling.seed, i))?.into_iter().collect::<Result<Vec<_>>>()?;
            let nf = *n as f64;
            let ranges: Vec<f64> = paths.iter().map(|p| p.range as f64 / nf).collect();
            let dist: Vec<f64> =
                paths.iter().map(|p| p.endpoint.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt()).collect();
            let mut t = Table::new(&ESTIMATE_HEADER);
            t.push(estimate_row("range_fraction", &McEstimate::from_values(&ranges)));
            t.push(estimate_row("abs_endpoint", &McEstimate::from_values(&dist)));
            report = report.table("walk", t);
        }
        McCommand::Tilted { beta, n, sampling } => {
            let options = mc_options(sampling, global);
            let mut t = Table::new(&ESTIMATE_HEADER);
            for (label, obs) in [
                ("positive_endpoint_speed", Observable::PositiveEndpointSpeed),
                ("range_fraction", Observable::RangeFraction),
                ("endpoint_speed", Observable::EndpointSpeed),
            ] {
                let proposal = Proposal::for_observable(*beta, obs)?;
                let e = polymer_estimate_tilted(*beta, *n, obs, proposal, options)?;
                ess_warning(&mut report, label, &e);
                t.push(estimate_row(label, &e));
            }
            report = report.table("tilted", t);
        }
        McCommand::Corollary { beta, d, n, sampling } => {
            let r = corollary_bound_check(*beta, *d, *n, mc_options(sampling, global))?;
            ess_warning(&mut report, "range_fraction", &r.estimate);
            let mut t = Table::new(&[
                "beta",
                "d",
                "n",
                "mean",
                "std_error",
                "effective_sample_size",
                "bound",
                "soft_check_passed",
                "reliable",
            ]);
            t.push(vec![
                (*beta).into(),
                (*d).into(),
                (*n).into(),
                r.estimate.mean.into(),
                r.estimate.std_error.into(),
                r.estimate.effective_sample_size.into(),
                r.bound.into(),
                i64::from(r.soft_check_passed).into(),
                i64::from(r.reliable).into(),
            ]);
            report = report.table("corollary", t);
        }
        McCommand::Flory { beta, d, grid, sampling } => {
            let ns = parse_grid(grid)?
                .into_iter()
                .map(|v| {
                    if v >= 1.0 && v.fract() == 0.0 {
                        Ok(v as usize)
                    } else {
                        Err(Error::Domain(format!("walk lengths must be positive integers, got {v}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let fit = flory_probe(*d, *beta, &ns, mc_options(sampling, global))?;
            let mut points = Table::new(&["n", "mean_abs_endpoint", "std_error", "effective_sample_size", "dropped"]);
            for p in &fit.points {
                if p.dropped {
                    report.warnings.push(format!("n = {}: effective sample size collapsed; point dropped", p.n));
                }
                points.push(vec![
                    p.n.into(),
                    p.estimate.mean.into(),
                    p.estimate.std_error.into(),
                    p.estimate.effective_sample_size.into(),
                    i64::from(p.dropped).into(),
                ]);
            }
            let mut summary = Table::new(&["d", "beta", "slope", "intercept"]);
            summary.push(vec![fit.d.into(), fit.beta.into(), fit.slope.into(), fit.intercept.into()]);
            report = report.table("flory-points", points).table("flory-fit", summary);
        }
        McCommand::Brownian { t, dt, sampling } => {
            let b = brownian_range_mc(BrownianOptions::new(*t, *dt), mc_options(sampling, global))?;
            let mut summary = Table::new(&ESTIMATE_HEADER);
            summary.push(estimate_row("positive_fraction", &b.positive_fraction));
            summary.push(estimate_row("range_mean", &b.range_mean));
            summary.push(vec![
                "range_mean_corrected".into(),
                b.range_mean_corrected.into(),
                b.range_mean.std_error.into(),
                b.range_mean.samples.into(),
                b.range_mean.effective_sample_size.into(),
                0i64.into(),
            ]);
            let mut hist = Table::new(&["r_lo", "r_hi", "density", "std_error"]);
            for i in 0..b.range.counts.len() {
                let (lo, hi) = b.range.edges(i);
                hist.push(vec![lo.into(), hi.into(), b.range.density(i).into(), b.range.std_error(i).into()]);
            }
            let mut joint = Table::new(&["x_lo", "r_lo", "width", "density", "std_error"]);
            let h = &b.joint_positive;
            for i in 0..h.bins {
                for j in 0..h.bins {
                    if h.counts[i * h.bins + j] > 0 {
                        joint.push(vec![
                            (i as f64 * h.width).into(),
                            (j as f64 * h.width).into(),
                            h.width.into(),
                            h.density(i, j).into(),
                            h.std_error(i, j).into(),
                        ]);
                    }
                }
            }
            report = report.table("brownian-summary", summary).table("range-histogram", hist).table("joint-histogram", joint);
        }
    }
    Ok(report)
}
