use num_traits::ToPrimitive;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use super::ledger::CrossingLedger;
use super::sim::{Batch, SimOutcome, DEFAULT_BATCHES};
use crate::observables::ClosedForms;
use crate::symbolic::{RatePoint, RationalFunction};
use crate::{Error, Result};

/// Point estimate with a batch-means standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
    /// Set when fewer than the nominal number of batches carried time; the
    /// error bar is then scaled by the ratio of Student and normal quantiles.
    pub widened: bool,
}

/// Simulation estimates of every density and current. Layouts match
/// [`crate::observables::CurrentReport`].
#[derive(Clone, Debug, Serialize)]
pub struct EstimatedReport {
    pub elapsed: f64,
    pub batches_used: usize,
    pub density_bullet: Vec<Vec<Estimate>>,
    pub density_box: Vec<Vec<Estimate>>,
    pub bullet_edge: Vec<Vec<Estimate>>,
    pub bullet_total: Vec<Estimate>,
    pub box_h_column: Vec<Estimate>,
    pub box_v_up: Vec<Estimate>,
    pub box_v_down: Vec<Estimate>,
    pub box_v_net: Vec<Estimate>,
    pub box_h_row: Vec<Vec<Estimate>>,
}

struct BatchView<'a> {
    batches: Vec<&'a Batch>,
    total_time: f64,
    factor: f64,
    widened: bool,
}

impl<'a> BatchView<'a> {
    fn new(out: &'a SimOutcome) -> Self {
        let batches: Vec<&Batch> = out.batches.iter().filter(|b| b.time > 0.0).collect();
        let total_time = batches.iter().map(|b| b.time).sum();
        let m = batches.len();
        let widened = m < DEFAULT_BATCHES;
        let factor = if m < 2 {
            f64::INFINITY
        } else if widened {
            let t = StudentsT::new(0.0, 1.0, (m - 1) as f64).expect("valid dof").inverse_cdf(0.975);
            let z = Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.975);
            t / z
        } else {
            1.0
        };
        BatchView { batches, total_time, factor, widened }
    }

    /// `f` gives a batch's accumulated amount (crossings or occupied time);
    /// the estimate is amount per unit time.
    fn estimate(&self, f: impl Fn(&Batch) -> f64) -> Estimate {
        let m = self.batches.len();
        let mean = self.batches.iter().map(|b| f(b)).sum::<f64>() / self.total_time;
        let per: Vec<f64> = self.batches.iter().map(|b| f(b) / b.time).collect();
        let se = if m < 2 {
            f64::INFINITY
        } else {
            let avg = per.iter().sum::<f64>() / m as f64;
            let var = per.iter().map(|x| (x - avg).powi(2)).sum::<f64>() / (m - 1) as f64;
            (var / m as f64).sqrt() * self.factor
        };
        Estimate { mean, se, widened: self.widened }
    }
}

fn led(b: &Batch) -> &CrossingLedger {
    &b.ledger
}

/// Densities are occupation time over elapsed time; currents are signed
/// crossing counts over elapsed time.
pub fn estimate_observables(out: &SimOutcome) -> Result<EstimatedReport> {
    if out.state.elapsed <= 0.0 {
        return Err(Error::domain("no elapsed time to estimate from"));
    }
    let (l, n) = (out.config.l, out.config.n);
    let v = BatchView::new(out);
    let grid = |f: &dyn Fn(&Batch, usize, usize) -> f64| -> Vec<Vec<Estimate>> {
        (0..n).map(|i| (0..l).map(|j| v.estimate(|b| f(b, i, j))).collect()).collect()
    };
    let prev = |i: usize| (i + n - 1) % n;
    Ok(EstimatedReport {
        elapsed: out.state.elapsed,
        batches_used: v.batches.len(),
        density_bullet: grid(&|b, i, j| b.occupancy[i * l + j]),
        density_box: grid(&|b, i, j| b.occupancy[n * l + i * l + j]),
        bullet_edge: grid(&|b, i, j| led(b).bullet(i, j) as f64),
        bullet_total: (0..n).map(|i| v.estimate(|b| (0..l).map(|j| led(b).bullet(i, j) as f64).sum())).collect(),
        box_h_column: (0..l).map(|j| v.estimate(|b| led(b).box_column[j] as f64)).collect(),
        box_v_up: (0..n).map(|i| v.estimate(|b| led(b).box_row_up[i] as f64)).collect(),
        box_v_down: (0..n).map(|i| v.estimate(|b| led(b).box_row_down[i] as f64)).collect(),
        box_v_net: (0..n)
            .map(|i| v.estimate(|b| led(b).box_row_up[i] as f64 - led(b).box_row_down[prev(i)] as f64))
            .collect(),
        box_h_row: grid(&|b, i, j| led(b).box_row(i, j) as f64),
    })
}

/// One estimate against its closed form.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateCheck {
    pub observable: String,
    /// One-based.
    pub row: Option<usize>,
    /// One-based.
    pub column: Option<usize>,
    pub estimate: f64,
    pub se: f64,
    pub closed_form: f64,
    /// `|estimate - closed_form| / se`.
    pub z: f64,
    pub widened: bool,
}

impl EstimateCheck {
    pub fn within(&self, k: f64) -> bool {
        self.z <= k
    }
}

fn to_f64(f: &RationalFunction, rates: &RatePoint) -> Result<f64> {
    f.evaluate(rates)?.to_f64().ok_or_else(|| Error::domain("closed form is not representable as f64"))
}

/// Compares every estimated density and current with its closed form at
/// the run's rates.
pub fn compare_with_closed_forms(
    est: &EstimatedReport,
    l: usize,
    n: usize,
    rates: &RatePoint,
) -> Result<Vec<EstimateCheck>> {
    let c = ClosedForms::new(l, n)?;
    let mut out = Vec::new();
    let mut push = |name: &str, row: Option<usize>, col: Option<usize>, e: &Estimate, closed: f64| {
        let diff = (e.mean - closed).abs();
        let z = if diff == 0.0 { 0.0 } else { diff / e.se };
        out.push(EstimateCheck {
            observable: name.to_string(),
            row: row.map(|i| i + 1),
            column: col.map(|j| j + 1),
            estimate: e.mean,
            se: e.se,
            closed_form: closed,
            z,
            widened: e.widened,
        });
    };
    let tau = to_f64(&c.density_bullet(), rates)?;
    let edge = to_f64(&c.bullet_edge(), rates)?;
    let total = to_f64(&c.bullet_total(), rates)?;
    let column = to_f64(&c.box_h_column(), rates)?;
    let up = to_f64(&c.box_v_up(), rates)?;
    let down = to_f64(&c.box_v_down(), rates)?;
    for i in 0..n {
        let eta = to_f64(&c.density_box(i), rates)?;
        let row = to_f64(&c.box_h_row(i), rates)?;
        for j in 0..l {
            push("density_bullet", Some(i), Some(j), &est.density_bullet[i][j], tau);
            push("density_box", Some(i), Some(j), &est.density_box[i][j], eta);
            push("J_bullet_edge", Some(i), Some(j), &est.bullet_edge[i][j], edge);
            push("J_box_h_row", Some(i), Some(j), &est.box_h_row[i][j], row);
        }
        push("J_bullet_total", Some(i), None, &est.bullet_total[i], total);
        push("J_box_v_up", Some(i), None, &est.box_v_up[i], up);
        push("J_box_v_down", Some(i), None, &est.box_v_down[i], down);
        push("J_box_v_net", Some(i), None, &est.box_v_net[i], total);
    }
    for j in 0..l {
        push("J_box_h_column", None, Some(j), &est.box_h_column[j], column);
    }
    Ok(out)
}
