//! A local model with response `S = sign(cos(φ - a) - r)` at each station,
//! a shared uniform angle `φ`, and thresholds `(r, r')` drawn according to
//! one of three measures.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dataset::DichotomicDataset;
use crate::error::{Error, Result};
use crate::report::TOL;
use crate::rng::sharded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuKind {
    /// `r` and `r'` independent and uniform on `[-1, 1]`.
    Uniform,
    /// `r' = r`.
    DeltaEqual,
    /// `r' = -r`.
    DeltaOpposite,
}

impl MuKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MuKind::Uniform),
            "equal" | "delta_equal" => Ok(MuKind::DeltaEqual),
            "opposite" | "delta_opposite" => Ok(MuKind::DeltaOpposite),
            other => Err(Error::InvalidArgument(format!(
                "unknown measure {other:?}; expected uniform, equal or opposite"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizableModel {
    pub mu: MuKind,
}

impl FactorizableModel {
    pub fn new(mu: MuKind) -> Self {
        FactorizableModel { mu }
    }

    /// One event: `(φ, S, S')`.
    pub fn draw<R: Rng>(&self, rng: &mut R, a: f64, b: f64) -> (f64, i8, i8) {
        let phi = TAU * rng.random::<f64>();
        let r = 2.0 * rng.random::<f64>() - 1.0;
        let r2 = match self.mu {
            MuKind::Uniform => 2.0 * rng.random::<f64>() - 1.0,
            MuKind::DeltaEqual => r,
            MuKind::DeltaOpposite => -r,
        };
        (phi, response(phi, a, r), response(phi, b, r2))
    }
}

pub(crate) fn response(phi: f64, setting: f64, threshold: f64) -> i8 {
    if (phi - setting).cos() - threshold > 0.0 {
        1
    } else {
        -1
    }
}

fn check_angles(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("angles must be finite".into()))
    }
}

/// Events with the hidden angle kept.
pub fn sample_pair_with_phi(
    m: &FactorizableModel,
    a: f64,
    b: f64,
    seed: u64,
    count: usize,
) -> Result<Vec<(f64, i8, i8)>> {
    check_angles(a, b)?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    Ok(sharded(count, seed, |rng, _| m.draw(rng, a, b)))
}

pub fn sample_pair(m: &FactorizableModel, a: f64, b: f64, seed: u64, count: usize) -> Result<DichotomicDataset> {
    let rows = sample_pair_with_phi(m, a, b, seed, count)?
        .into_iter()
        .map(|(_, s, t)| vec![s, t])
        .collect();
    DichotomicDataset::new(2, rows)
}

/// Exact pair correlation. Angles are not reduced modulo 2π.
pub fn analytic_correlation(m: &FactorizableModel, a: f64, b: f64) -> f64 {
    let d = a - b;
    match m.mu {
        MuKind::Uniform => d.cos() / 2.0,
        MuKind::DeltaEqual => 1.0 - 4.0 / PI * (d / 2.0).sin().abs(),
        MuKind::DeltaOpposite => 4.0 / PI * (d / 2.0).cos().abs() - 1.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepWitness {
    pub angles: Vec<f64>,
    pub clause: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub mu: MuKind,
    pub grid_points: usize,
    pub triples_checked: usize,
    pub bell_violations: usize,
    pub worst_bell: Option<SweepWitness>,
    pub quadruples_checked: usize,
    pub chsh_violations: usize,
    pub worst_chsh: Option<SweepWitness>,
    /// Largest `|E(a,b) - E(a,c) + E(d,b) + E(d,c)|` seen.
    pub max_chsh: f64,
}

fn correlation_matrix(m: &FactorizableModel, grid: &[f64]) -> Vec<Vec<f64>> {
    grid.iter()
        .map(|&a| grid.iter().map(|&b| analytic_correlation(m, a, b)).collect())
        .collect()
}

fn bell_sweep(e: &[Vec<f64>], grid: &[f64]) -> (usize, usize, Option<SweepWitness>) {
    let g = grid.len();
    let (mut checked, mut violations) = (0, 0);
    let mut worst: Option<SweepWitness> = None;
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                checked += 1;
                let (ab, ac, bc) = (e[i][j], e[i][k], e[j][k]);
                let clauses = [
                    ("|E(a,b) + E(a,c)| <= 1 + E(b,c)", (ab + ac).abs(), 1.0 + bc),
                    ("|E(a,b) - E(a,c)| <= 1 - E(b,c)", (ab - ac).abs(), 1.0 - bc),
                ];
                let mut violated = false;
                for (text, lhs, rhs) in clauses {
                    let slack = rhs - lhs;
                    if slack < -TOL {
                        violated = true;
                    }
                    if slack < -TOL && worst.as_ref().is_none_or(|w| slack < w.slack) {
                        worst = Some(SweepWitness {
                            angles: vec![grid[i], grid[j], grid[k]],
                            clause: text.into(),
                            lhs,
                            rhs,
                            slack,
                        });
                    }
                }
                violations += usize::from(violated);
            }
        }
    }
    (checked, violations, worst)
}

/// Bell-type clauses over all `(a,b,c)` and the CHSH combination over all
/// `(a,b,c,d)` drawn from `grid`.
pub fn model_inequality_sweep(m: &FactorizableModel, grid: &[f64]) -> Result<SweepSummary> {
    if grid.is_empty() || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("grid must be non-empty and finite".into()));
    }
    let e = correlation_matrix(m, grid);
    let (triples_checked, bell_violations, worst_bell) = bell_sweep(&e, grid);
    let g = grid.len();
    let (mut quads, mut chsh_violations, mut max_chsh) = (0, 0, 0.0f64);
    let mut worst_chsh: Option<SweepWitness> = None;
    for ia in 0..g {
        for ib in 0..g {
            for ic in 0..g {
                let partial = e[ia][ib] - e[ia][ic];
                for id in 0..g {
                    quads += 1;
                    let v = (partial + e[id][ib] + e[id][ic]).abs();
                    max_chsh = max_chsh.max(v);
                    let slack = 2.0 - v;
                    if slack < -TOL {
                        chsh_violations += 1;
                        if worst_chsh.as_ref().is_none_or(|w| slack < w.slack) {
                            worst_chsh = Some(SweepWitness {
                                angles: vec![grid[ia], grid[ib], grid[ic], grid[id]],
                                clause: "|E(a,b) - E(a,c) + E(d,b) + E(d,c)| <= 2".into(),
                                lhs: v,
                                rhs: 2.0,
                                slack,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(SweepSummary {
        mu: m.mu,
        grid_points: g,
        triples_checked,
        bell_violations,
        worst_bell,
        quadruples_checked: quads,
        chsh_violations,
        worst_chsh,
        max_chsh,
    })
}

/// A setting triple whose pair correlations cannot come from a model in
/// which both stations share one hidden variable and one response
/// function. Any such model yields, for every `(a,b,c)`, correlations of
/// a single triple `(A(a,λ), A(b,λ), A(c,λ))` and therefore obeys the
/// Bell-type clauses; a violated clause rules the form out.
pub fn common_lambda_obstruction(m: &FactorizableModel, grid: &[f64]) -> Result<Option<SweepWitness>> {
    if grid.is_empty() || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("grid must be non-empty and finite".into()));
    }
    Ok(bell_sweep(&correlation_matrix(m, grid), grid).2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MalusTest {
    pub bins: usize,
    pub chi2: f64,
    pub dof: usize,
    pub p_value: f64,
    pub critical_value: f64,
    pub passes: bool,
    /// Overall frequency of `S = +1`.
    pub plus_fraction: f64,
}

/// χ² test of the left-station frequency of `+1`, conditioned on `φ` in
/// equal bins, against the bin average of `cos²((a - φ)/2)`.
pub fn malus_chi2(m: &FactorizableModel, a: f64, seed: u64, count: usize, bins: usize) -> Result<MalusTest> {
    if bins == 0 {
        return Err(Error::InvalidArgument("need at least one bin".into()));
    }
    let events = sample_pair_with_phi(m, a, a, seed, count)?;
    let width = TAU / bins as f64;
    let mut n = vec![0u64; bins];
    let mut k = vec![0u64; bins];
    for &(phi, s, _) in &events {
        let bin = ((phi / width) as usize).min(bins - 1);
        n[bin] += 1;
        k[bin] += u64::from(s > 0);
    }
    let mut chi2 = 0.0;
    let mut dof = 0;
    for j in 0..bins {
        if n[j] == 0 {
            continue;
        }
        let (lo, hi) = (j as f64 * width, (j + 1) as f64 * width);
        let p = 0.5 + ((a - lo).sin() - (a - hi).sin()) / (2.0 * width);
        let var = n[j] as f64 * p * (1.0 - p);
        if var <= 0.0 {
            continue;
        }
        chi2 += (k[j] as f64 - n[j] as f64 * p).powi(2) / var;
        dof += 1;
    }
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let p_value = 1.0 - dist.cdf(chi2);
    let plus = k.iter().sum::<u64>() as f64 / count as f64;
    Ok(MalusTest {
        bins,
        chi2,
        dof,
        p_value,
        critical_value: dist.inverse_cdf(0.99),
        passes: p_value > 0.01,
        plus_fraction: plus,
    })
}
