//! A two-level system (SQUID flux) probed by three neutrons at successive
//! times, in the limit of maximal system-neutron correlation.
//!
//! Basis states are ordered `(SQUID, n1, n2, n3)` with the SQUID slowest.
//! The eight populated states and their amplitudes, with
//! `c_k = cos ωΔt_k`, `s_k = sin ωΔt_k`:
//!
//! | state  | amplitude      |
//! |--------|----------------|
//! | `++++` | `c3 c2 c1`     |
//! | `----` | `-c3 c2 s1`    |
//! | `-+--` | `i c3 s2 c1`   |
//! | `+-++` | `-i c3 s2 s1`  |
//! | `-++-` | `s3 c2 c1`     |
//! | `+--+` | `s3 c2 s1`     |
//! | `++-+` | `-i s3 s2 c1`  |
//! | `--+-` | `-i s3 s2 s1`  |

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{check_boole_triple, DichotomicDataset};
use crate::error::{Error, Result};
use crate::nonneg::ebbi_check;
use crate::report::{InequalityReport, TOL};
use crate::rng::{cumulative, inverse_cdf, sharded};
use crate::signs::index_of;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LGParams {
    pub omega: f64,
    /// `Δt_i = t_i - t_{i-1}` for `i = 1, 2, 3`.
    pub dt: [f64; 3],
}

impl LGParams {
    pub fn new(omega: f64, dt: [f64; 3]) -> Result<Self> {
        if !omega.is_finite() || dt.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("parameters must be finite".into()));
        }
        if dt.iter().any(|&t| t < 0.0) {
            return Err(Error::InvalidArgument(format!("time intervals {dt:?} must be non-negative")));
        }
        Ok(LGParams { omega, dt })
    }
}

/// States in the order of the table in the module docs.
pub const BASIS: [[i8; 4]; 8] = [
    [1, 1, 1, 1],
    [-1, -1, -1, -1],
    [-1, 1, -1, -1],
    [1, -1, 1, 1],
    [-1, 1, 1, -1],
    [1, -1, -1, 1],
    [1, 1, -1, 1],
    [-1, -1, 1, -1],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LGAmplitudes {
    pub basis: [[i8; 4]; 8],
    pub amplitudes: [Complex64; 8],
}

impl LGAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Full 16-component state vector.
    pub fn state_vector(&self) -> Vec<Complex64> {
        let mut psi = vec![Complex64::new(0.0, 0.0); 16];
        for (b, &z) in self.basis.iter().zip(&self.amplitudes) {
            psi[index_of(b)] = z;
        }
        psi
    }

    /// `⟨σᶻ_i σᶻ_j⟩` for neutrons `i < j` in `1..=3`.
    pub fn neutron_correlation(&self, i: usize, j: usize) -> f64 {
        self.basis
            .iter()
            .zip(&self.amplitudes)
            .map(|(b, z)| (b[i] * b[j]) as f64 * z.norm_sqr())
            .sum()
    }

    /// Probabilities of the eight neutron patterns, SQUID traced out.
    pub fn neutron_probabilities(&self) -> [f64; 8] {
        let mut p = [0.0; 8];
        for (b, z) in self.basis.iter().zip(&self.amplitudes) {
            p[index_of(&b[1..])] += z.norm_sqr();
        }
        p
    }
}

pub fn evolve_triple(p: &LGParams) -> LGAmplitudes {
    let [(c1, s1), (c2, s2), (c3, s3)] = p.dt.map(|t| ((p.omega * t).cos(), (p.omega * t).sin()));
    let r = |x: f64| Complex64::new(x, 0.0);
    let i = |x: f64| Complex64::new(0.0, x);
    LGAmplitudes {
        basis: BASIS,
        amplitudes: [
            r(c3 * c2 * c1),
            r(-c3 * c2 * s1),
            i(c3 * s2 * c1),
            i(-c3 * s2 * s1),
            r(s3 * c2 * c1),
            r(s3 * c2 * s1),
            i(-s3 * s2 * c1),
            i(-s3 * s2 * s1),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LGCorrelations {
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
}

/// Correlations of one set of three neutrons:
/// `E12 = cos 2ωΔt2`, `E13 = cos 2ωΔt3 cos 2ωΔt2`, `E23 = cos 2ωΔt3`.
pub fn lg_triple_correlations(p: &LGParams) -> LGCorrelations {
    let c2 = (2.0 * p.omega * p.dt[1]).cos();
    let c3 = (2.0 * p.omega * p.dt[2]).cos();
    LGCorrelations {
        e12: c2,
        e13: c3 * c2,
        e23: c3,
    }
}

/// Correlations from separate two-neutron runs:
/// `cos 2ω(t2-t1)`, `cos 2ω(t3-t1)`, `cos 2ω(t3-t2)`.
pub fn lg_pair_correlations(p: &LGParams) -> LGCorrelations {
    let (t21, t32) = (p.dt[1], p.dt[2]);
    LGCorrelations {
        e12: (2.0 * p.omega * t21).cos(),
        e13: (2.0 * p.omega * (t21 + t32)).cos(),
        e23: (2.0 * p.omega * t32).cos(),
    }
}

/// The EBBI with `E0 = 1` applied to temporal correlations.
pub fn lg_inequality_check(k12: f64, k13: f64, k23: f64) -> Result<InequalityReport> {
    for (name, k) in [("K12", k12), ("K13", k13), ("K23", k23)] {
        if !k.is_finite() || k.abs() > 1.0 + TOL {
            return Err(Error::OutOfRange(format!("{name} = {k} is outside [-1, 1]")));
        }
    }
    let mut r = ebbi_check(1.0, k12, k13, k23)?;
    r.family = "leggett_garg".into();
    Ok(r)
}

/// `M` i.i.d. neutron triples, deterministic for a given seed.
pub fn sample_triples(p: &LGParams, m: usize, seed: u64) -> Result<DichotomicDataset> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let cdf = cumulative(&evolve_triple(p).neutron_probabilities());
    let rows = sharded(m, seed, |rng, _| {
        let k = inverse_cdf(&cdf, rng.random::<f64>());
        crate::signs::pattern(3, k)
    });
    DichotomicDataset::new(3, rows)
}

/// Parameters at which pair-run correlations break the inequality while
/// the triple correlations satisfy it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionWitness {
    pub params: LGParams,
    pub triple: LGCorrelations,
    pub pairs: LGCorrelations,
    pub triple_report: InequalityReport,
    pub pair_report: InequalityReport,
}

/// Scans `ωΔt2, ωΔt3` over `steps × steps` points of `[0, π]` and returns
/// the point with the most negative pair-run slack.
pub fn find_substitution_witness(omega: f64, steps: usize) -> Result<Option<SubstitutionWitness>> {
    if omega <= 0.0 || steps < 2 {
        return Err(Error::InvalidArgument("need omega > 0 and steps >= 2".into()));
    }
    let mut best: Option<SubstitutionWitness> = None;
    for i in 0..steps {
        for j in 0..steps {
            let x = std::f64::consts::PI * i as f64 / (steps - 1) as f64;
            let y = std::f64::consts::PI * j as f64 / (steps - 1) as f64;
            let params = LGParams::new(omega, [0.0, x / omega, y / omega])?;
            let triple = lg_triple_correlations(&params);
            let pairs = lg_pair_correlations(&params);
            let tr = lg_inequality_check(triple.e12, triple.e13, triple.e23)?;
            let pr = check_boole_triple(pairs.e12, pairs.e13, pairs.e23)?;
            if tr.all_satisfied
                && !pr.all_satisfied
                && best.as_ref().is_none_or(|b| pr.min_slack() < b.pair_report.min_slack())
            {
                best = Some(SubstitutionWitness {
                    params,
                    triple,
                    pairs,
                    triple_report: tr,
                    pair_report: pr,
                });
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_intervals() {
        let a = evolve_triple(&LGParams::new(1.0, [0.0; 3]).unwrap());
        assert_eq!(a.amplitudes[0], Complex64::new(1.0, 0.0));
        assert!((a.norm_sqr() - 1.0).abs() < 1e-15);
        let c = lg_triple_correlations(&LGParams::new(1.0, [0.0; 3]).unwrap());
        assert_eq!((c.e12, c.e13, c.e23), (1.0, 1.0, 1.0));
        let d = sample_triples(&LGParams::new(1.0, [0.0; 3]).unwrap(), 100, 3).unwrap();
        assert!(d.rows().iter().all(|r| r == &vec![1, 1, 1]));
    }

    #[test]
    fn quarter_period_first_interval() {
        let a = evolve_triple(&LGParams::new(1.0, [PI / 2.0, 0.0, 0.0]).unwrap());
        assert!((a.amplitudes[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(a.basis[1], [-1, -1, -1, -1]);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sixth_period_values() {
        let p = LGParams::new(2.0, [0.3, PI / 12.0, PI / 12.0]).unwrap();
        let c = lg_triple_correlations(&p);
        assert!((c.e12 - 0.5).abs() < 1e-15 && (c.e13 - 0.25).abs() < 1e-15 && (c.e23 - 0.5).abs() < 1e-15);
        assert!(lg_inequality_check(c.e12, c.e13, c.e23).unwrap().all_satisfied);
        let a = evolve_triple(&p);
        assert!((a.neutron_correlation(1, 2) - c.e12).abs() < 1e-15);
        assert!((a.neutron_correlation(1, 3) - c.e13).abs() < 1e-15);
        assert!((a.neutron_correlation(2, 3) - c.e23).abs() < 1e-15);
    }

    #[test]
    fn pair_values_break_the_inequality() {
        let p = LGParams::new(1.0, [0.0, PI / 3.0, PI / 3.0]).unwrap();
        let e = lg_pair_correlations(&p);
        assert!((e.e12 + 0.5).abs() < 1e-15 && (e.e13 + 0.5).abs() < 1e-15 && (e.e23 + 0.5).abs() < 1e-15);
        let r = check_boole_triple(e.e12, e.e13, e.e23).unwrap();
        let c = r.violated().find(|c| c.description == "|F12 + F13| <= 1 + F23").unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-15 && (c.rhs - 0.5).abs() < 1e-15);
        assert!(!lg_inequality_check(-0.5, -0.5, -0.5).unwrap().all_satisfied);
        assert!(lg_inequality_check(1.0, 1.0, 1.0).unwrap().all_satisfied);
        assert!(lg_inequality_check(1.2, 1.0, 1.0).is_err());
    }

    #[test]
    fn equal_spacing_pairs_vs_triples() {
        let p = LGParams::new(1.0, [0.1, 0.4, 0.4]).unwrap();
        let (t, q) = (lg_triple_correlations(&p), lg_pair_correlations(&p));
        assert_eq!(t.e12, q.e12);
        assert_eq!(t.e23, q.e23);
        assert!((t.e13 - q.e13).abs() > 0.1);
    }

    #[test]
    fn witness_search() {
        let w = find_substitution_witness(1.0, 31).unwrap().unwrap();
        assert!(w.triple_report.all_satisfied && !w.pair_report.all_satisfied);
    }

    #[test]
    fn rejects_negative_interval() {
        assert!(LGParams::new(1.0, [0.0, -0.1, 0.0]).is_err());
        assert!(sample_triples(&LGParams::new(1.0, [0.0; 3]).unwrap(), 0, 1).is_err());
    }
}
