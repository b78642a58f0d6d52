//! Time-tagged event generation, coincidence selection and inequality
//! evaluation on the selected pairs.
//!
//! Emissions occur once per time unit. Emission `α` is detected at
//! `t = α + delay` at each station, where `delay = jitter · g · u`,
//! `u ~ U[0,1)` and `g = |sin(ψ - θ)|^exponent` couples a hidden
//! orientation `ψ` of the emission to the local setting `θ`.

use std::io::{Read, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classical::FactorizableModel;
use crate::dataset::{check_boole_triple_under, check_pair_bound, DichotomicDataset, PairHypothesis};
use crate::error::{Error, Result};
use crate::nonneg::FuncTable3;
use crate::quantum::{eprb_pair_table, ProbabilityTable, UnitVector3};
use crate::report::InequalityReport;
use crate::rng::{cumulative, inverse_cdf, sharded};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub s: i8,
    pub t: f64,
    pub setting_id: usize,
    /// Coplanar setting angle in radians.
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventPair {
    pub alpha: u64,
    pub left: EventRecord,
    pub right: EventRecord,
}

/// Pairs as associated at emission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDataset {
    pairs: Vec<EventPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    Finite(f64),
    Infinite,
}

impl Window {
    pub fn finite(w: f64) -> Result<Self> {
        if w > 0.0 && w.is_finite() {
            Ok(Window::Finite(w))
        } else if w == f64::INFINITY {
            Ok(Window::Infinite)
        } else {
            Err(Error::InvalidArgument(format!("window {w} must be positive")))
        }
    }

    fn admits(&self, dt: f64) -> bool {
        match *self {
            Window::Finite(w) => dt.abs() <= w,
            Window::Infinite => true,
        }
    }

    pub fn as_option(&self) -> Option<f64> {
        match *self {
            Window::Finite(w) => Some(w),
            Window::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceConfig {
    pub window: Window,
    /// `(left setting id, right setting id)` to keep.
    pub settings: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Each emission carries a triple drawn from this table; variable `k`
    /// is revealed by setting id `k - 1`.
    Triple(FuncTable3),
    /// The local threshold model.
    Pair(FactorizableModel),
    /// Two spins in the singlet state.
    Singlet,
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Triple(_) => "triple".into(),
            Source::Pair(m) => format!("pair:{}", serde_json::to_value(m.mu).expect("enum").as_str().unwrap_or("")),
            Source::Singlet => "singlet".into(),
        }
    }

    /// Identification of pair data with triple variables that is natural
    /// for this source.
    pub fn default_hypothesis(&self) -> PairHypothesis {
        match self {
            Source::Singlet => PairHypothesis::Anticorrelated,
            _ => PairHypothesis::SameOutcome,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    RoundRobin,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Setting angles indexed by setting id.
    pub angles: Vec<f64>,
    /// `(left id, right id)` pairs to cycle through.
    pub pairs: Vec<(usize, usize)>,
    pub mode: ScheduleMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingModel {
    pub jitter: f64,
    pub exponent: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        TimingModel {
            jitter: 0.0,
            exponent: 0.0,
        }
    }
}

impl TimingModel {
    fn delay(&self, psi: f64, theta: f64, u: f64) -> f64 {
        if self.jitter == 0.0 {
            return 0.0;
        }
        self.jitter * (psi - theta).sin().abs().powf(self.exponent) * u
    }
}

impl RawDataset {
    pub fn new(pairs: Vec<EventPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidDataset("no event pairs".into()));
        }
        for p in &pairs {
            for e in [&p.left, &p.right] {
                if (e.s != 1 && e.s != -1) || !e.t.is_finite() {
                    return Err(Error::InvalidDataset(format!("bad event at alpha {}", p.alpha)));
                }
            }
        }
        Ok(RawDataset { pairs })
    }

    pub fn pairs(&self) -> &[EventPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `alpha,station,s,t,setting_id,angle`, two lines per pair.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["alpha", "station", "s", "t", "setting_id", "angle"])?;
        for p in &self.pairs {
            for (station, e) in [("left", &p.left), ("right", &p.right)] {
                w.write_record([
                    p.alpha.to_string(),
                    station.to_string(),
                    if e.s > 0 { "+1".into() } else { "-1".into() },
                    e.t.to_string(),
                    e.setting_id.to_string(),
                    e.angle.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            alpha: u64,
            station: String,
            s: String,
            t: f64,
            setting_id: usize,
            angle: f64,
        }
        let mut rdr = csv::Reader::from_reader(r);
        let mut left: Option<(u64, EventRecord)> = None;
        let mut pairs = Vec::new();
        for row in rdr.deserialize::<Row>() {
            let row = row?;
            let s = match row.s.as_str() {
                "+1" | "1" => 1,
                "-1" => -1,
                other => return Err(Error::Parse(format!("bad outcome {other:?}"))),
            };
            let e = EventRecord {
                s,
                t: row.t,
                setting_id: row.setting_id,
                angle: row.angle,
            };
            match (row.station.as_str(), left.take()) {
                ("left", None) => left = Some((row.alpha, e)),
                ("right", Some((alpha, l))) if alpha == row.alpha => pairs.push(EventPair {
                    alpha,
                    left: l,
                    right: e,
                }),
                _ => {
                    return Err(Error::Parse(format!(
                        "alpha {}: expected a left line followed by its right line",
                        row.alpha
                    )))
                }
            }
        }
        if left.is_some() {
            return Err(Error::Parse("trailing left event without a partner".into()));
        }
        RawDataset::new(pairs)
    }
}

enum Sampler {
    Triple(Vec<f64>),
    Pair(FactorizableModel),
    /// Cumulative singlet tables per scheduled pair.
    Singlet(Vec<Vec<f64>>),
}

/// Event pairs from `source`, settings chosen by `schedule`.
pub fn generate_events(
    source: &Source,
    schedule: &Schedule,
    m: usize,
    timing: &TimingModel,
    seed: u64,
) -> Result<RawDataset> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    if schedule.pairs.is_empty() {
        return Err(Error::InvalidArgument("schedule has no setting pairs".into()));
    }
    if schedule.angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidArgument("setting angles must be finite".into()));
    }
    for &(l, r) in &schedule.pairs {
        if l >= schedule.angles.len() || r >= schedule.angles.len() {
            return Err(Error::InvalidArgument(format!("setting pair ({l}, {r}) refers to an unknown id")));
        }
    }
    if !(timing.jitter >= 0.0 && timing.jitter.is_finite() && timing.exponent >= 0.0 && timing.exponent.is_finite()) {
        return Err(Error::InvalidArgument("jitter and exponent must be finite and non-negative".into()));
    }
    let cycle = schedule.pairs.len();
    let sampler = match source {
        Source::Triple(f) => {
            let t = ProbabilityTable::new(3, f.values.to_vec())?;
            if schedule.mode != ScheduleMode::RoundRobin {
                return Err(Error::InvalidArgument("triple sources need a round-robin schedule".into()));
            }
            if m % cycle != 0 {
                return Err(Error::InvalidArgument(format!(
                    "triple sources need M to be a multiple of the schedule length {cycle}"
                )));
            }
            if schedule.pairs.iter().any(|&(l, r)| l > 2 || r > 2) {
                return Err(Error::InvalidArgument("triple sources accept setting ids 0, 1, 2".into()));
            }
            Sampler::Triple(cumulative(t.values()))
        }
        Source::Pair(model) => Sampler::Pair(*model),
        Source::Singlet => Sampler::Singlet(
            schedule
                .pairs
                .iter()
                .map(|&(l, r)| {
                    let t = eprb_pair_table(
                        &UnitVector3::coplanar(schedule.angles[l]),
                        &UnitVector3::coplanar(schedule.angles[r]),
                    );
                    cumulative(t.values())
                })
                .collect(),
        ),
    };

    let record = |s: i8, t: f64, id: usize| EventRecord {
        s,
        t,
        setting_id: id,
        angle: schedule.angles[id],
    };

    let pairs: Vec<EventPair> = match &sampler {
        Sampler::Triple(cdf) => {
            // One emission per cycle, recorded under every scheduled pair
            // with shared detection delays.
            let groups = sharded(m / cycle, seed, |rng, g| {
                let triple = crate::signs::pattern(3, inverse_cdf(cdf, rng.random::<f64>()));
                let psi = std::f64::consts::TAU * rng.random::<f64>();
                let dl = timing.delay(psi, 0.0, rng.random::<f64>());
                let dr = timing.delay(psi, 0.0, rng.random::<f64>());
                schedule
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(q, &(l, r))| {
                        let alpha = (g * cycle + q) as u64;
                        EventPair {
                            alpha,
                            left: record(triple[l], alpha as f64 + dl, l),
                            right: record(triple[r], alpha as f64 + dr, r),
                        }
                    })
                    .collect::<Vec<_>>()
            });
            groups.into_iter().flatten().collect()
        }
        _ => sharded(m, seed, |rng, alpha| {
            let q = match schedule.mode {
                ScheduleMode::RoundRobin => alpha % cycle,
                ScheduleMode::Random => rng.random_range(0..cycle),
            };
            let (l, r) = schedule.pairs[q];
            let (tl, tr) = (schedule.angles[l], schedule.angles[r]);
            let (psi, s1, s2) = match &sampler {
                Sampler::Pair(model) => model.draw(rng, tl, tr),
                Sampler::Singlet(cdfs) => {
                    let s = crate::signs::pattern(2, inverse_cdf(&cdfs[q], rng.random::<f64>()));
                    (std::f64::consts::TAU * rng.random::<f64>(), s[0], s[1])
                }
                Sampler::Triple(_) => unreachable!(),
            };
            let dl = timing.delay(psi, tl, rng.random::<f64>());
            let dr = timing.delay(psi, tr, rng.random::<f64>());
            EventPair {
                alpha: alpha as u64,
                left: record(s1, alpha as f64 + dl, l),
                right: record(s2, alpha as f64 + dr, r),
            }
        }),
    };
    RawDataset::new(pairs)
}

/// Whether each pair passes the setting and time-window selection.
pub fn coincidence_mask(raw: &RawDataset, cfg: &CoincidenceConfig) -> Vec<bool> {
    raw.pairs
        .iter()
        .map(|p| {
            (p.left.setting_id, p.right.setting_id) == cfg.settings
                && cfg.window.admits(p.left.t - p.right.t)
        })
        .collect()
}

/// `(S1, S2)` of the pairs with matching settings and `|t1 - t2| <= W`.
pub fn coincidence_filter(raw: &RawDataset, cfg: &CoincidenceConfig) -> Result<DichotomicDataset> {
    let rows: Vec<Vec<i8>> = raw
        .pairs
        .iter()
        .zip(coincidence_mask(raw, cfg))
        .filter(|(_, keep)| *keep)
        .map(|(p, _)| vec![p.left.s, p.right.s])
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptySelection(format!(
            "no pairs with settings {:?} within window {:?}",
            cfg.settings, cfg.window
        )));
    }
    Ok(DichotomicDataset::new(2, rows)?.with_label(format!("{}-{}", cfg.settings.0, cfg.settings.1)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeSettingConfig {
    /// `(a, b, c)` in radians.
    pub angles: [f64; 3],
    pub source: Source,
    pub timing: TimingModel,
    /// Emitted pairs per setting pair.
    pub m: usize,
    pub window: Window,
    pub seed: u64,
    /// Defaults to [`Source::default_hypothesis`].
    pub hypothesis: Option<PairHypothesis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub source: String,
    pub angles: [f64; 3],
    /// `None` for an infinite window.
    pub window: Option<f64>,
    pub emitted_per_setting: usize,
    /// Retained pairs for `(a,b)`, `(a,c)`, `(b,c)`.
    pub retained: [usize; 3],
    /// `E(a,b)`, `E(a,c)`, `E(b,c)`.
    pub correlations: [f64; 3],
    pub hypothesis: PairHypothesis,
    pub boole_triple: InequalityReport,
    pub pair_bound: InequalityReport,
    pub verdict: String,
}

pub const VERDICT_REJECTED: &str = "triples hypothesis rejected";
pub const VERDICT_CONSISTENT: &str = "consistent with a single set of triples";

/// Runs `(a,b)`, `(a,c)` and `(b,c)` round-robin, selects coincidences and
/// evaluates the triple and pair bounds on the selected correlations.
pub fn run_three_settings(cfg: &ThreeSettingConfig) -> Result<PipelineReport> {
    let schedule = Schedule {
        angles: cfg.angles.to_vec(),
        pairs: vec![(0, 1), (0, 2), (1, 2)],
        mode: ScheduleMode::RoundRobin,
    };
    let raw = generate_events(&cfg.source, &schedule, 3 * cfg.m, &cfg.timing, cfg.seed)?;
    let mut retained = [0; 3];
    let mut correlations = [0.0; 3];
    for (k, &settings) in schedule.pairs.iter().enumerate() {
        let ds = coincidence_filter(&raw, &CoincidenceConfig { window: cfg.window, settings })?;
        retained[k] = ds.m();
        correlations[k] = ds.correlation(1, 2)?.value;
    }
    let hypothesis = cfg.hypothesis.unwrap_or_else(|| cfg.source.default_hypothesis());
    let [ab, ac, bc] = correlations;
    let boole_triple = check_boole_triple_under(ab, ac, bc, hypothesis)?;
    let pair_bound = check_pair_bound(ab, ac, bc)?;
    let verdict = if boole_triple.all_satisfied {
        VERDICT_CONSISTENT
    } else {
        VERDICT_REJECTED
    };
    Ok(PipelineReport {
        source: cfg.source.name(),
        angles: cfg.angles,
        window: cfg.window.as_option(),
        emitted_per_setting: cfg.m,
        retained,
        correlations,
        hypothesis,
        boole_triple,
        pair_bound,
        verdict: verdict.into(),
    })
}
