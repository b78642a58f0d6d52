//! `ebbi`: every scenario of the library as a subcommand.
//!
//! Reports are JSON envelopes `{scenario, params, result, reports, findings}`
//! (see `schema/report.schema.json`). A violated inequality is a finding, not
//! an error: the exit status is 0 whenever the scenario ran.

mod render;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ebbi_core::classical::{
    analytic_correlation, common_lambda_obstruction, malus_chi2, model_inequality_sweep, sample_pair,
    AllergyScenario, DaySchedule, FactorizableModel, MuKind,
};
use ebbi_core::dataset::{
    check_boole_triple_under, check_chsh, check_pair_bound, DichotomicDataset, PairHypothesis,
};
use ebbi_core::leggett_garg::{
    evolve_triple, find_substitution_witness, lg_inequality_check, lg_pair_correlations, lg_triple_correlations,
    sample_triples, LGParams,
};
use ebbi_core::nonneg::{
    bell_pair_tables, bell_triple_table, construct_g3, ebbi_check, expand2, expand3, marginals_compatible,
    reconstruct_f3, synth2, theorem1_check, theorem3_check, ExpansionCoeffs2, FuncTable2, FuncTable3, LambdaModel,
};
use ebbi_core::pipeline::{run_three_settings, generate_events, Schedule, ScheduleMode, Source, ThreeSettingConfig, TimingModel, Window};
use ebbi_core::quantum::{
    commutator_diagnostics, eprb_pair_tables, extended_eprb_prob3, extended_eprb_prob4, filter_prob2,
    filter_prob2_closed, filter_prob3, filter_prob3_closed, pair_clauses, schwartz_bound, separable_bound_check,
    singlet, singlet_correlation, DensityMatrix, SeparableComponent, UnitVector3,
};
use ebbi_core::InequalityReport;
use serde::Serialize;
use serde_json::{json, Value};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "ebbi", version, about = "Boole-type inequalities on data, joint functions and models")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized scenarios (required by them).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Read angles as radians instead of degrees.
    #[arg(long, global = true)]
    radians: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hypothesis {
    /// Pair data identified with triple variables directly (F = E).
    Same,
    /// Identification through perfect anticorrelation (F = -E).
    Anti,
}

impl From<Hypothesis> for PairHypothesis {
    fn from(h: Hypothesis) -> Self {
        match h {
            Hypothesis::Same => PairHypothesis::SameOutcome,
            Hypothesis::Anti => PairHypothesis::Anticorrelated,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Correlations of ±1 datasets and the bounds that data from triples or
    /// quadruples must obey.
    #[command(subcommand)]
    Dataset(DatasetCmd),
    /// Inequalities for the pair coefficients of a non-negative function of
    /// three ±1 variables, and a function realizing admissible values.
    #[command(subcommand)]
    Ebbi(EbbiCmd),
    /// Two-variable non-negativity, the pair bound, marginal compatibility,
    /// reconstruction and discrete hidden-variable models.
    #[command(subcommand)]
    Theorem(TheoremCmd),
    /// Spin-1/2 calculations: singlet correlations, filtering chains,
    /// Schwartz bound, separable states, commutators.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Flux qubit probed by three neutrons: triple and pair correlations,
    /// the temporal inequality and sampled neutron triples.
    LeggettGarg(LeggettGargArgs),
    /// Singlet pair with a second filter on one (three settings) or both
    /// (four settings) particles.
    ExtendedEprb(ExtendedArgs),
    /// Patients examined in three cities: averages from triples and from
    /// pairs of patients.
    Allergy(AllergyArgs),
    /// Local threshold model: sampled and exact pair correlations, Malus
    /// law check.
    Factorizable(FactorizableArgs),
    /// Time-tagged events, coincidence selection and the triple bounds on
    /// the selected pairs.
    EprPipeline(PipelineArgs),
    /// Threshold model correlations over an angle grid: Bell-type and CHSH
    /// combinations.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum DatasetCmd {
    /// Check a CSV dataset (columns s1..sn, n = 2, 3 or 4).
    Check {
        #[arg(long)]
        input: PathBuf,
        /// For triples: how the columns relate to a common triple.
        #[arg(long, value_enum)]
        hypothesis: Option<Hypothesis>,
    },
    /// Triple family `|F12 ± F13| <= 1 ± F23` for given correlations.
    Boole {
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["F12", "F13", "F23"])]
        f: Vec<f64>,
        #[arg(long, value_enum, default_value = "same")]
        hypothesis: Hypothesis,
    },
    /// `|F13 - F23 + F14 + F24| <= 2` and its variants.
    Chsh {
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["F13", "F23", "F14", "F24"])]
        f: Vec<f64>,
    },
    /// `|F ± Fhat| <= 3 - |Ftilde|` and permutations.
    PairBound {
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["F", "FHAT", "FTILDE"])]
        f: Vec<f64>,
    },
}

#[derive(Subcommand)]
enum EbbiCmd {
    /// Check pair coefficients.
    Check {
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["E0", "E12", "E13", "E23"])]
        e: Vec<f64>,
    },
    /// Non-negative function with the given pair coefficients.
    Construct {
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["A0", "A12", "A13", "A23"])]
        a: Vec<f64>,
    },
    /// Expand a table of 8 values (order +++, ++-, ..., ---) and check it.
    Expand {
        #[arg(long, num_args = 8, allow_negative_numbers = true)]
        table: Vec<f64>,
    },
}

#[derive(Subcommand)]
enum TheoremCmd {
    /// Non-negativity of a two-variable function from its coefficients.
    One {
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["E0", "E1", "E2", "E12"])]
        c: Vec<f64>,
    },
    /// `|E ± Ehat| <= 3 E0 - |Etilde|` for three two-variable functions.
    Three {
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["E", "EHAT", "ETILDE", "E0"])]
        e: Vec<f64>,
    },
    /// Can three pair tables be marginals of one non-negative function?
    Compatible(PairTables),
    /// Build such a function when it exists.
    Reconstruct(PairTables),
    /// Discrete hidden-variable model: pair tables, joint table, check.
    Bell {
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        weights: Vec<f64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        ea: Vec<f64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        eb: Vec<f64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        ec: Vec<f64>,
    },
}

/// Tables in order `++, +-, -+, --`.
#[derive(Args)]
struct PairTables {
    /// f(S1,S2)
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    f: Vec<f64>,
    /// f(S1,S3)
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    fhat: Vec<f64>,
    /// f(S2,S3)
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    ftilde: Vec<f64>,
}

/// Directions are `x,y,z` or a single angle from the z axis in the xz plane.
#[derive(Subcommand)]
enum QuantumCmd {
    /// Singlet correlation `<σ1·a σ2·b>`.
    Correlation {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Singlet pair tables for (a,b), (a,c), (b,c) and whether one joint
    /// function reproduces them.
    PairTables {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Flip the second variable of every table first.
        #[arg(long)]
        anticorrelated: bool,
    },
    /// Successive filters on one spin with Bloch vector `--state`.
    Filter {
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// `|E ± Ehat|² <= 2(1 ± b·c)` for the singlet.
    Schwartz {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Pair clauses for a mixture of `w:x,y,z` components (same Bloch
    /// vector on both spins), and for the singlet for comparison.
    Separable {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long = "component", num_args = 1.., allow_hyphen_values = true)]
        components: Vec<String>,
    },
    /// Commutators of the three pair observables and uncertainty products
    /// in the singlet.
    Commutators {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
}

#[derive(Args)]
struct LeggettGargArgs {
    #[arg(long)]
    omega: f64,
    /// Intervals Δt1 Δt2 Δt3.
    #[arg(long, num_args = 3, value_names = ["DT1", "DT2", "DT3"])]
    dt: Vec<f64>,
    /// Sample this many neutron triples (needs --seed).
    #[arg(long)]
    samples: Option<usize>,
    /// Scan a STEPS × STEPS grid for parameters where pair runs break the
    /// inequality while triples obey it.
    #[arg(long)]
    scan: Option<usize>,
    /// Write sampled triples as CSV.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendedArgs {
    /// Three (a, b, c) or four (a, b, c, d) coplanar angles.
    #[arg(long, num_args = 3..=4, allow_negative_numbers = true)]
    angles: Vec<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Triples,
    Pairs,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Days {
    Alternating,
    Random,
}

#[derive(Args)]
struct AllergyArgs {
    #[arg(long, value_enum, default_value = "both")]
    variant: Variant,
    #[arg(long, default_value_t = 100)]
    days: usize,
    /// Random day order needs --seed.
    #[arg(long, value_enum, default_value = "alternating")]
    schedule: Days,
}

#[derive(Args)]
struct FactorizableArgs {
    /// uniform, equal or opposite.
    #[arg(long)]
    mu: String,
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["A", "B"])]
    angles: Vec<f64>,
    #[arg(long)]
    samples: usize,
    /// Also run the Malus-law χ² test with this many bins of φ.
    #[arg(long)]
    malus_bins: Option<usize>,
    /// Write the samples as CSV.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// triple, pair:uniform, pair:equal, pair:opposite or singlet.
    #[arg(long)]
    source: String,
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
    angles: Vec<f64>,
    /// Coincidence window, or `inf`.
    #[arg(long, default_value = "inf")]
    window: String,
    /// Emitted pairs per setting pair.
    #[arg(long)]
    samples: usize,
    #[arg(long, default_value_t = 0.0)]
    jitter: f64,
    #[arg(long, default_value_t = 0.0)]
    exponent: f64,
    /// Joint table of the triple source (8 values, +++ first); uniform by default.
    #[arg(long, num_args = 8)]
    triple_table: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    hypothesis: Option<Hypothesis>,
    /// Write the raw event log as CSV.
    #[arg(long)]
    events: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// uniform, equal or opposite.
    #[arg(long)]
    mu: String,
    /// Number of equally spaced angles in [0, 360°).
    #[arg(long, default_value_t = 24)]
    grid: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: Value,
    pub result: Value,
    pub reports: BTreeMap<String, InequalityReport>,
    pub findings: Vec<String>,
}

impl Report {
    fn new(scenario: &str, params: Value, result: Value) -> Self {
        Report {
            scenario: scenario.into(),
            params,
            result,
            reports: BTreeMap::new(),
            findings: Vec::new(),
        }
    }

    fn with(mut self, name: &str, r: InequalityReport) -> Self {
        self.reports.insert(name.into(), r);
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.findings.push(s.into());
        self
    }

    /// Summary lines for each report, placed after scenario notes.
    fn finish(mut self) -> Self {
        for (name, r) in &self.reports {
            if r.all_satisfied {
                self.findings.push(format!("{name}: all {} clauses satisfied", r.clauses.len()));
            } else {
                for c in r.violated() {
                    self.findings.push(format!("{name}: violated {} ({} > {})", c.description, c.lhs, c.rhs));
                }
            }
        }
        self
    }
}

struct Ctx {
    radians: bool,
    seed: Option<u64>,
}

impl Ctx {
    fn angle(&self, x: f64) -> f64 {
        if self.radians {
            x
        } else {
            x.to_radians()
        }
    }

    fn seed(&self, what: &str) -> CliResult<u64> {
        self.seed.ok_or_else(|| format!("{what} is randomized: pass --seed").into())
    }

    fn direction(&self, s: &str) -> CliResult<UnitVector3> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [t] => Ok(UnitVector3::coplanar(self.angle(t.parse()?))),
            [x, y, z] => Ok(UnitVector3::new(x.parse()?, y.parse()?, z.parse()?)?),
            _ => Err(format!("direction {s:?}: expected an angle or x,y,z").into()),
        }
    }
}

fn bloch(s: &str) -> CliResult<[f64; 3]> {
    let v: Vec<f64> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| format!("state {s:?}: expected x,y,z").into())
}

fn arr<const N: usize>(v: &[f64]) -> [f64; N] {
    v.try_into().expect("clap enforces the count")
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn fmt3(e: [f64; 3]) -> String {
    format!("({:.4}, {:.4}, {:.4})", e[0], e[1], e[2])
}

fn run(cmd: Command, ctx: &Ctx) -> CliResult<Report> {
    Ok(match cmd {
        Command::Dataset(c) => dataset(c)?,
        Command::Ebbi(c) => ebbi(c)?,
        Command::Theorem(c) => theorem(c)?,
        Command::Quantum(c) => quantum(c, ctx)?,
        Command::LeggettGarg(a) => leggett_garg(a, ctx)?,
        Command::ExtendedEprb(a) => extended(a, ctx)?,
        Command::Allergy(a) => allergy(a, ctx)?,
        Command::Factorizable(a) => factorizable(a, ctx)?,
        Command::EprPipeline(a) => pipeline(a, ctx)?,
        Command::Sweep(a) => sweep(a, ctx)?,
    }
    .finish())
}

fn dataset(cmd: DatasetCmd) -> CliResult<Report> {
    Ok(match cmd {
        DatasetCmd::Check { input, hypothesis } => {
            let d = DichotomicDataset::read_csv(File::open(&input)?)?;
            let params = json!({ "input": input, "n": d.n(), "m": d.m() });
            let mut corr = serde_json::Map::new();
            for i in 1..=d.n() {
                for j in i + 1..=d.n() {
                    corr.insert(format!("F{i}{j}"), to_value(&d.correlation(i, j)?));
                }
            }
            let means: Vec<f64> = (1..=d.n()).map(|i| d.mean(i)).collect::<Result<_, _>>()?;
            let r = Report::new("dataset check", params, json!({ "correlations": corr, "means": means }));
            match d.n() {
                3 => {
                    let [a, b, c] = d.triple_correlations()?;
                    let h = hypothesis.map_or(PairHypothesis::SameOutcome, Into::into);
                    r.with("boole_triple", check_boole_triple_under(a, b, c, h)?)
                        .with("pair_bound", check_pair_bound(a, b, c)?)
                }
                4 => {
                    let [a, b, c, e] = d.chsh_correlations()?;
                    r.with("chsh", check_chsh(a, b, c, e)?)
                }
                _ => r,
            }
        }
        DatasetCmd::Boole { f, hypothesis } => {
            let [a, b, c] = arr(&f);
            Report::new("dataset boole", json!({ "f": f, "hypothesis": PairHypothesis::from(hypothesis) }), json!({}))
                .with("boole_triple", check_boole_triple_under(a, b, c, hypothesis.into())?)
        }
        DatasetCmd::Chsh { f } => {
            let [a, b, c, e] = arr(&f);
            Report::new("dataset chsh", json!({ "f": f }), json!({})).with("chsh", check_chsh(a, b, c, e)?)
        }
        DatasetCmd::PairBound { f } => {
            let [a, b, c] = arr(&f);
            Report::new("dataset pair-bound", json!({ "f": f }), json!({})).with("pair_bound", check_pair_bound(a, b, c)?)
        }
    })
}

fn ebbi(cmd: EbbiCmd) -> CliResult<Report> {
    Ok(match cmd {
        EbbiCmd::Check { e } => {
            let [e0, e12, e13, e23] = arr(&e);
            Report::new("ebbi check", json!({ "e": e }), json!({})).with("ebbi", ebbi_check(e0, e12, e13, e23)?)
        }
        EbbiCmd::Construct { a } => {
            let [a0, a12, a13, a23] = arr(&a);
            let g = construct_g3(a0, a12, a13, a23)?;
            Report::new("ebbi construct", json!({ "a": a }), json!({ "table": g, "coeffs": expand3(&g) }))
        }
        EbbiCmd::Expand { table } => {
            let f = FuncTable3::new(arr(&table))?;
            let c = expand3(&f);
            Report::new(
                "ebbi expand",
                json!({ "table": f }),
                json!({ "coeffs": c, "nonnegative": f.is_nonnegative() }),
            )
            .with("ebbi", ebbi_check(c.e0, c.e12, c.e13, c.e23)?)
        }
    })
}

fn tables(p: &PairTables) -> CliResult<(FuncTable2, FuncTable2, FuncTable2)> {
    Ok((FuncTable2::new(arr(&p.f))?, FuncTable2::new(arr(&p.fhat))?, FuncTable2::new(arr(&p.ftilde))?))
}

fn compat_report(scenario: &str, f: &FuncTable2, fh: &FuncTable2, ft: &FuncTable2, params: Value) -> Report {
    let c = marginals_compatible(f, fh, ft);
    let mut result = json!({
        "compatible": c.compatible,
        "nonnegative": c.nonnegative,
        "consistent_marginals": c.consistent_marginals,
        "diagnosis": c.diagnosis,
    });
    if scenario.ends_with("reconstruct") {
        match reconstruct_f3(f, fh, ft) {
            Ok(r) => result["reconstruction"] = to_value(&r),
            Err(e) => result["refusal"] = Value::String(e.to_string()),
        }
    }
    let verdict = if c.compatible { "one non-negative joint function exists" } else { "no common non-negative joint function" };
    Report::new(scenario, params, result).with("compatibility", c.report).note(verdict)
}

fn theorem(cmd: TheoremCmd) -> CliResult<Report> {
    Ok(match cmd {
        TheoremCmd::One { c } => {
            let [e0, e1, e2, e12] = arr(&c);
            let coeffs = ExpansionCoeffs2 { e0, e1, e2, e12 };
            let t = synth2(&coeffs);
            Report::new("theorem one", json!({ "c": coeffs }), json!({ "table": t, "nonnegative": t.is_nonnegative() }))
                .with("theorem1", theorem1_check(&coeffs))
        }
        TheoremCmd::Three { e } => {
            let [x, y, z, e0] = arr(&e);
            Report::new("theorem three", json!({ "e": e }), json!({})).with("theorem3", theorem3_check(x, y, z, e0)?)
        }
        TheoremCmd::Compatible(p) => {
            let (f, fh, ft) = tables(&p)?;
            compat_report("theorem compatible", &f, &fh, &ft, json!({ "f": f, "fhat": fh, "ftilde": ft }))
        }
        TheoremCmd::Reconstruct(p) => {
            let (f, fh, ft) = tables(&p)?;
            compat_report("theorem reconstruct", &f, &fh, &ft, json!({ "f": f, "fhat": fh, "ftilde": ft }))
        }
        TheoremCmd::Bell { weights, ea, eb, ec } => {
            let m = LambdaModel::new(weights, ea, eb, ec)?;
            let (f, fh, ft) = bell_pair_tables(&m);
            let joint = bell_triple_table(&m);
            let mut r = compat_report("theorem bell", &f, &fh, &ft, to_value(&m));
            r.result["pair_tables"] = json!({ "f": f, "fhat": fh, "ftilde": ft });
            r.result["joint"] = to_value(&joint);
            r.result["pair_coeffs"] = json!([expand2(&f), expand2(&fh), expand2(&ft)]);
            r
        }
    })
}

fn quantum(cmd: QuantumCmd, ctx: &Ctx) -> CliResult<Report> {
    Ok(match cmd {
        QuantumCmd::Correlation { a, b } => {
            let (u, v) = (ctx.direction(&a)?, ctx.direction(&b)?);
            let e = singlet_correlation(&u, &v);
            Report::new("quantum correlation", json!({ "a": u, "b": v }), json!({ "e": e, "minus_a_dot_b": -u.dot(&v) }))
        }
        QuantumCmd::PairTables { a, b, c, anticorrelated } => {
            let (u, v, w) = (ctx.direction(&a)?, ctx.direction(&b)?, ctx.direction(&c)?);
            let [t1, t2, t3] = eprb_pair_tables(&u, &v, &w);
            let (mut f, mut fh, mut ft) = (t1.to_func2()?, t2.to_func2()?, t3.to_func2()?);
            if anticorrelated {
                (f, fh, ft) = (f.flip_second(), fh.flip_second(), ft.flip_second());
            }
            let e = [t1.correlation(1, 2), t2.correlation(1, 2), t3.correlation(1, 2)];
            let mut r = compat_report(
                "quantum pair-tables reconstruct",
                &f,
                &fh,
                &ft,
                json!({ "a": u, "b": v, "c": w, "anticorrelated": anticorrelated }),
            );
            r.scenario = "quantum pair-tables".into();
            r.result["correlations"] = json!(e);
            r.result["tables"] = json!({ "f": f, "fhat": fh, "ftilde": ft });
            r.note(format!("singlet correlations E(a,b), E(a,c), E(b,c) = {}", fmt3(e)))
                .with(
                    "boole_triple",
                    check_boole_triple_under(
                        e[0],
                        e[1],
                        e[2],
                        if anticorrelated { PairHypothesis::Anticorrelated } else { PairHypothesis::SameOutcome },
                    )?,
                )
        }
        QuantumCmd::Filter { state, a, b, c } => {
            let x = bloch(&state)?;
            let rho = DensityMatrix::qubit(x)?;
            let (u, v) = (ctx.direction(&a)?, ctx.direction(&b)?);
            match c {
                None => {
                    let chain = filter_prob2(&rho, &u, &v)?;
                    let closed = filter_prob2_closed(x, &u, &v)?;
                    Report::new(
                        "quantum filter",
                        json!({ "state": x, "a": u, "b": v }),
                        json!({ "table": chain, "closed_form": closed, "max_deviation": chain.max_abs_diff(&closed) }),
                    )
                }
                Some(c) => {
                    let w = ctx.direction(&c)?;
                    let chain = filter_prob3(&rho, &u, &v, &w)?;
                    let closed = filter_prob3_closed(x, &u, &v, &w)?;
                    let coeffs = expand3(&chain.to_func3()?);
                    Report::new(
                        "quantum filter",
                        json!({ "state": x, "a": u, "b": v, "c": w }),
                        json!({ "table": chain, "closed_form": closed, "coeffs": coeffs, "max_deviation": chain.max_abs_diff(&closed) }),
                    )
                    .with("ebbi", ebbi_check(coeffs.e0, coeffs.e12, coeffs.e13, coeffs.e23)?)
                }
            }
        }
        QuantumCmd::Schwartz { a, b, c } => {
            let (u, v, w) = (ctx.direction(&a)?, ctx.direction(&b)?, ctx.direction(&c)?);
            let mut s = schwartz_bound(&u, &v, &w);
            let rep = std::mem::replace(&mut s.report, InequalityReport::new("schwartz", vec![]));
            let mut result = to_value(&s);
            result.as_object_mut().expect("object").remove("report");
            Report::new("quantum schwartz", json!({ "a": u, "b": v, "c": w }), result).with("schwartz", rep)
        }
        QuantumCmd::Separable { a, b, c, components } => {
            let (u, v, w) = (ctx.direction(&a)?, ctx.direction(&b)?, ctx.direction(&c)?);
            let mut parts = Vec::new();
            for s in &components {
                let (wt, x) = s.split_once(':').ok_or_else(|| format!("component {s:?}: expected w:x,y,z"))?;
                let x = bloch(x)?;
                parts.push(SeparableComponent {
                    weight: wt.trim().parse()?,
                    left: DensityMatrix::qubit(x)?,
                    right: DensityMatrix::qubit(x)?,
                });
            }
            let mut r = Report::new(
                "quantum separable",
                json!({ "a": u, "b": v, "c": w, "components": components }),
                json!({}),
            )
            .with("singlet", pair_clauses(&singlet(), &u, &v, &w)?);
            if !parts.is_empty() {
                r = r.with("separable", separable_bound_check(&parts, &u, &v, &w)?);
            }
            r
        }
        QuantumCmd::Commutators { a, b, c } => {
            let (u, v, w) = (ctx.direction(&a)?, ctx.direction(&b)?, ctx.direction(&c)?);
            let d = commutator_diagnostics(&u, &v, &w, &singlet())?;
            Report::new("quantum commutators", json!({ "a": u, "b": v, "c": w }), to_value(&d))
        }
    })
}

fn leggett_garg(a: LeggettGargArgs, ctx: &Ctx) -> CliResult<Report> {
    let p = LGParams::new(a.omega, arr(&a.dt))?;
    let t = lg_triple_correlations(&p);
    let pairs = lg_pair_correlations(&p);
    let mut result = json!({
        "triple_correlations": t,
        "pair_correlations": pairs,
        "amplitudes": evolve_triple(&p),
    });
    let mut r_notes = Vec::new();
    let mut reports = vec![
        ("triple", lg_inequality_check(t.e12, t.e13, t.e23)?),
        ("pairs", lg_inequality_check(pairs.e12, pairs.e13, pairs.e23)?),
    ];
    if let Some(m) = a.samples {
        let seed = ctx.seed("sampling")?;
        let d = sample_triples(&p, m, seed)?;
        let [e12, e13, e23] = d.triple_correlations()?;
        let sigma = [t.e12, t.e13, t.e23].map(|e| ((1.0 - e * e) / m as f64).sqrt());
        result["empirical_correlations"] = json!({ "e12": e12, "e13": e13, "e23": e23 });
        result["standard_errors"] = json!(sigma);
        r_notes.push(format!("sampled {m} triples: {}", fmt3([e12, e13, e23])));
        reports.push(("empirical", lg_inequality_check(e12, e13, e23)?));
        if let Some(path) = &a.dump {
            d.write_csv(BufWriter::new(File::create(path)?))?;
        }
    } else if a.dump.is_some() {
        return Err("--dump needs --samples".into());
    }
    if let Some(steps) = a.scan {
        result["substitution_witness"] = to_value(&find_substitution_witness(a.omega, steps)?);
    }
    let mut r = Report::new("leggett-garg", json!({ "omega": a.omega, "dt": a.dt, "samples": a.samples, "seed": ctx.seed }), result)
        .note(format!("closed-form triple correlations {}", fmt3([t.e12, t.e13, t.e23])));
    for n in r_notes {
        r = r.note(n);
    }
    for (name, rep) in reports {
        r = r.with(name, rep);
    }
    Ok(r)
}

fn extended(a: ExtendedArgs, ctx: &Ctx) -> CliResult<Report> {
    let th: Vec<f64> = a.angles.iter().map(|&x| ctx.angle(x)).collect();
    if th.len() == 3 {
        let x = extended_eprb_prob3(th[0], th[1], th[2])?;
        let c = x.coeffs;
        Ok(Report::new("extended-eprb", json!({ "angles": a.angles, "radians": th }), to_value(&x))
            .with("ebbi", ebbi_check(c.e0, c.e12, c.e13, c.e23)?))
    } else {
        let [u, v, w, d] = arr::<4>(&th).map(UnitVector3::coplanar);
        let q = extended_eprb_prob4(&u, &v, &w, &d);
        Ok(Report::new("extended-eprb", json!({ "angles": a.angles, "radians": th }), to_value(&q))
            .with("chsh", q.correlations.chsh_report()))
    }
}

fn allergy(a: AllergyArgs, ctx: &Ctx) -> CliResult<Report> {
    let schedule = match a.schedule {
        Days::Alternating => DaySchedule::Alternating,
        Days::Random => DaySchedule::Random { seed: ctx.seed("a random day order")? },
    };
    let s = AllergyScenario::table_one();
    let mut result = serde_json::Map::new();
    let mut notes = Vec::new();
    if matches!(a.variant, Variant::Triples | Variant::Both) {
        let g = s.gamma_triples(a.days, schedule)?;
        result.insert("gamma_triples".into(), json!(g));
        notes.push(format!("gamma from triples = {g} (triples cannot go below -1)"));
    }
    if matches!(a.variant, Variant::Pairs | Variant::Both) {
        let g = s.gamma_pairs(a.days, schedule)?;
        result.insert("gamma_pairs".into(), json!(g));
        notes.push(format!("gamma from pairs = {g}"));
    }
    let mut r = Report::new("allergy", json!({ "days": a.days, "schedule": schedule }), Value::Object(result));
    for n in notes {
        r = r.note(n);
    }
    Ok(r)
}

fn factorizable(a: FactorizableArgs, ctx: &Ctx) -> CliResult<Report> {
    let m = FactorizableModel::new(MuKind::parse(&a.mu)?);
    let seed = ctx.seed("sampling")?;
    let [x, y] = arr::<2>(&a.angles).map(|t| ctx.angle(t));
    let d = sample_pair(&m, x, y, seed, a.samples)?;
    let e = d.correlation(1, 2)?.value;
    let exact = analytic_correlation(&m, x, y);
    let sigma = ((1.0 - exact * exact) / a.samples as f64).sqrt();
    let mut result = json!({
        "empirical": e,
        "analytic": exact,
        "standard_error": sigma,
        "z": if sigma > 0.0 { (e - exact) / sigma } else { 0.0 },
        "means": [d.mean(1)?, d.mean(2)?],
    });
    if let Some(bins) = a.malus_bins {
        result["malus"] = to_value(&malus_chi2(&m, x, seed, a.samples, bins)?);
    }
    if let Some(path) = &a.dump {
        d.write_csv(BufWriter::new(File::create(path)?))?;
    }
    Ok(Report::new(
        "factorizable",
        json!({ "mu": m.mu, "angles": a.angles, "samples": a.samples, "seed": seed }),
        result,
    )
    .note(format!("E = {e:.5} sampled, {exact:.5} exact")))
}

fn pipeline(a: PipelineArgs, ctx: &Ctx) -> CliResult<Report> {
    let seed = ctx.seed("event generation")?;
    let source = match a.source.as_str() {
        "triple" => Source::Triple(match &a.triple_table {
            Some(v) => FuncTable3::new(arr(v))?,
            None => FuncTable3::uniform(),
        }),
        "singlet" => Source::Singlet,
        s => match s.strip_prefix("pair:") {
            Some(mu) => Source::Pair(FactorizableModel::new(MuKind::parse(mu)?)),
            None => return Err(format!("unknown source {s:?}; expected triple, pair:MU or singlet").into()),
        },
    };
    let window = match a.window.as_str() {
        "inf" | "infinity" => Window::Infinite,
        w => Window::finite(w.parse()?)?,
    };
    let cfg = ThreeSettingConfig {
        angles: arr::<3>(&a.angles).map(|t| ctx.angle(t)),
        source,
        timing: TimingModel { jitter: a.jitter, exponent: a.exponent },
        m: a.samples,
        window,
        seed,
        hypothesis: a.hypothesis.map(Into::into),
    };
    let r = run_three_settings(&cfg)?;
    if let Some(path) = &a.events {
        let schedule = Schedule {
            angles: cfg.angles.to_vec(),
            pairs: vec![(0, 1), (0, 2), (1, 2)],
            mode: ScheduleMode::RoundRobin,
        };
        generate_events(&cfg.source, &schedule, 3 * cfg.m, &cfg.timing, seed)?
            .write_csv(BufWriter::new(File::create(path)?))?;
    }
    let mut result = to_value(&r);
    let obj = result.as_object_mut().expect("object");
    let boole = serde_json::from_value(obj.remove("boole_triple").expect("field"))?;
    let pair = serde_json::from_value(obj.remove("pair_bound").expect("field"))?;
    Ok(Report::new(
        "epr-pipeline",
        json!({ "source": a.source, "angles": a.angles, "window": a.window, "samples": a.samples, "seed": seed,
                "jitter": a.jitter, "exponent": a.exponent }),
        result,
    )
    .note(r.verdict.clone())
    .with("boole_triple", boole)
    .with("pair_bound", pair))
}

fn sweep(a: SweepArgs, _ctx: &Ctx) -> CliResult<Report> {
    if a.grid == 0 || a.grid > 64 {
        return Err("--grid must be between 1 and 64".into());
    }
    let m = FactorizableModel::new(MuKind::parse(&a.mu)?);
    let grid: Vec<f64> = (0..a.grid).map(|k| TAU * k as f64 / a.grid as f64).collect();
    let s = model_inequality_sweep(&m, &grid)?;
    let obstruction = common_lambda_obstruction(&m, &grid)?;
    let note = match &obstruction {
        Some(w) => format!(
            "pair correlations violate {} at {:?}: no shared-threshold model gives them",
            w.clause, w.angles
        ),
        None => "Bell-type clauses hold on the whole grid".into(),
    };
    Ok(Report::new(
        "sweep",
        json!({ "mu": m.mu, "grid": a.grid }),
        json!({ "summary": s, "common_lambda_obstruction": obstruction }),
    )
    .note(note)
    .note(format!("{} of {} CHSH combinations exceed 2 (max {:.4})", s.chsh_violations, s.quadruples_checked, s.max_chsh)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { radians: cli.global.radians, seed: cli.global.seed };
    let report = match run(cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let text = render::render(&report, cli.global.format);
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
