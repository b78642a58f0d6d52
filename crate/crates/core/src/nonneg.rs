//! Real functions of two and three dichotomic variables: expansion
//! coefficients, the inequalities that characterise non-negative ones,
//! and reconstruction of a joint function from its pair marginals.

use serde::{Deserialize, Serialize};

use crate::dataset::{pair_bound_clauses, triple_family_clauses};
use crate::error::{Error, Result};
use crate::report::{pm, Clause, InequalityReport, TOL};
use crate::signs::{pattern, sign_keyed_serde};

/// `f(S1, S2)` stored in sign-pattern order `++, +-, -+, --`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuncTable2 {
    pub values: [f64; 4],
}

/// `f(S1, S2, S3)` stored in sign-pattern order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuncTable3 {
    pub values: [f64; 8],
}

sign_keyed_serde!(FuncTable2, 2);
sign_keyed_serde!(FuncTable3, 3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoeffs2 {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e12: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoeffs3 {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
    pub e123: f64,
}

impl FuncTable2 {
    pub fn new(values: [f64; 4]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("non-finite entry".into()));
        }
        Ok(FuncTable2 { values })
    }

    pub fn uniform() -> Self {
        FuncTable2 { values: [0.25; 4] }
    }

    pub fn from_fn(f: impl Fn(i8, i8) -> f64) -> Self {
        let mut values = [0.0; 4];
        for (k, v) in values.iter_mut().enumerate() {
            let s = pattern(2, k);
            *v = f(s[0], s[1]);
        }
        FuncTable2 { values }
    }

    pub fn get(&self, s1: i8, s2: i8) -> f64 {
        self.values[crate::signs::index_of(&[s1, s2])]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= -TOL)
    }

    /// Same function with the roles of `S1` and `S2` exchanged.
    pub fn swapped(&self) -> Self {
        FuncTable2::from_fn(|a, b| self.get(b, a))
    }

    /// Same function with `S2` replaced by `-S2`.
    pub fn flip_second(&self) -> Self {
        FuncTable2::from_fn(|a, b| self.get(a, -b))
    }
}

impl FuncTable3 {
    pub fn new(values: [f64; 8]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("non-finite entry".into()));
        }
        Ok(FuncTable3 { values })
    }

    pub fn uniform() -> Self {
        FuncTable3 { values: [0.125; 8] }
    }

    pub fn from_fn(f: impl Fn(i8, i8, i8) -> f64) -> Self {
        let mut values = [0.0; 8];
        for (k, v) in values.iter_mut().enumerate() {
            let s = pattern(3, k);
            *v = f(s[0], s[1], s[2]);
        }
        FuncTable3 { values }
    }

    pub fn get(&self, s1: i8, s2: i8, s3: i8) -> f64 {
        self.values[crate::signs::index_of(&[s1, s2, s3])]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= -TOL)
    }

    /// Pair marginals `(f(S1,S2), f̂(S1,S3), f̃(S2,S3))`, each obtained by
    /// summing over the remaining variable.
    pub fn marginals(&self) -> (FuncTable2, FuncTable2, FuncTable2) {
        let f = FuncTable2::from_fn(|a, b| self.get(a, b, 1) + self.get(a, b, -1));
        let fhat = FuncTable2::from_fn(|a, c| self.get(a, 1, c) + self.get(a, -1, c));
        let ftilde = FuncTable2::from_fn(|b, c| self.get(1, b, c) + self.get(-1, b, c));
        (f, fhat, ftilde)
    }
}

pub fn expand2(f: &FuncTable2) -> ExpansionCoeffs2 {
    let mut c = ExpansionCoeffs2 {
        e0: 0.0,
        e1: 0.0,
        e2: 0.0,
        e12: 0.0,
    };
    for (k, &v) in f.values.iter().enumerate() {
        let s = pattern(2, k);
        let (s1, s2) = (s[0] as f64, s[1] as f64);
        c.e0 += v;
        c.e1 += s1 * v;
        c.e2 += s2 * v;
        c.e12 += s1 * s2 * v;
    }
    c
}

pub fn synth2(c: &ExpansionCoeffs2) -> FuncTable2 {
    FuncTable2::from_fn(|s1, s2| {
        let (s1, s2) = (s1 as f64, s2 as f64);
        (c.e0 + s1 * c.e1 + s2 * c.e2 + s1 * s2 * c.e12) / 4.0
    })
}

pub fn expand3(f: &FuncTable3) -> ExpansionCoeffs3 {
    let mut c = ExpansionCoeffs3 {
        e0: 0.0,
        e1: 0.0,
        e2: 0.0,
        e3: 0.0,
        e12: 0.0,
        e13: 0.0,
        e23: 0.0,
        e123: 0.0,
    };
    for (k, &v) in f.values.iter().enumerate() {
        let s = pattern(3, k);
        let (s1, s2, s3) = (s[0] as f64, s[1] as f64, s[2] as f64);
        c.e0 += v;
        c.e1 += s1 * v;
        c.e2 += s2 * v;
        c.e3 += s3 * v;
        c.e12 += s1 * s2 * v;
        c.e13 += s1 * s3 * v;
        c.e23 += s2 * s3 * v;
        c.e123 += s1 * s2 * s3 * v;
    }
    c
}

pub fn synth3(c: &ExpansionCoeffs3) -> FuncTable3 {
    FuncTable3::from_fn(|s1, s2, s3| {
        let (s1, s2, s3) = (s1 as f64, s2 as f64, s3 as f64);
        (c.e0
            + s1 * c.e1
            + s2 * c.e2
            + s3 * c.e3
            + s1 * s2 * c.e12
            + s1 * s3 * c.e13
            + s2 * s3 * c.e23
            + s1 * s2 * s3 * c.e123)
            / 8.0
    })
}

/// Necessary and sufficient conditions for `synth2(c)` to be non-negative:
/// `0 <= E0` and `|E1 ± E2| <= E0 ± E12`.
pub fn theorem1_check(c: &ExpansionCoeffs2) -> InequalityReport {
    InequalityReport::new(
        "theorem1",
        vec![
            Clause::le("0 <= E0", 0.0, c.e0),
            Clause::le("|E1 + E2| <= E0 + E12", (c.e1 + c.e2).abs(), c.e0 + c.e12),
            Clause::le("|E1 - E2| <= E0 - E12", (c.e1 - c.e2).abs(), c.e0 - c.e12),
        ],
    )
}

/// Inequalities obeyed by the pair coefficients of any non-negative
/// function of three dichotomic variables.
pub fn ebbi_check(e0: f64, e12: f64, e13: f64, e23: f64) -> Result<InequalityReport> {
    if !(e0.is_finite() && e12.is_finite() && e13.is_finite() && e23.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    if e0 < 0.0 {
        return Err(Error::Precondition(format!("E0 = {e0} is negative")));
    }
    let mut clauses = vec![
        Clause::le("|E12| <= E0", e12.abs(), e0),
        Clause::le("|E13| <= E0", e13.abs(), e0),
        Clause::le("|E23| <= E0", e23.abs(), e0),
    ];
    clauses.extend(triple_family_clauses(e0, e12, e13, e23, ["E12", "E13", "E23"], "E0"));
    for k in 0..8 {
        let s = pattern(3, k);
        let (s1, s2, s3) = (s[0] as f64, s[1] as f64, s[2] as f64);
        let lhs = -3.0 * e0;
        let rhs = -(s1 * s2 * e12 + s1 * s3 * e13 + s2 * s3 * e23);
        clauses.push(Clause::le(
            format!(
                "-3 E0 <= -({}1)({}1) E12 - ({}1)({}1) E13 - ({}1)({}1) E23  [S = {}{}{}]",
                pm(s[0]),
                pm(s[1]),
                pm(s[0]),
                pm(s[2]),
                pm(s[1]),
                pm(s[2]),
                pm(s[0]),
                pm(s[1]),
                pm(s[2])
            ),
            lhs,
            rhs,
        ));
    }
    Ok(InequalityReport::new("ebbi", clauses))
}

/// Non-negative function with prescribed pair coefficients and vanishing
/// odd coefficients: `(a0 + S1S2 a12 + S1S3 a13 + S2S3 a23) / 8`.
pub fn construct_g3(a0: f64, a12: f64, a13: f64, a23: f64) -> Result<FuncTable3> {
    let report = ebbi_check(a0, a12, a13, a23)?;
    if !report.all_satisfied {
        let failed: Vec<_> = report.violated().map(|c| c.description.clone()).collect();
        return Err(Error::Precondition(format!(
            "coefficients violate {}",
            failed.join("; ")
        )));
    }
    Ok(FuncTable3::from_fn(|s1, s2, s3| {
        let (s1, s2, s3) = (s1 as f64, s2 as f64, s3 as f64);
        (a0 + s1 * s2 * a12 + s1 * s3 * a13 + s2 * s3 * a23) / 8.0
    }))
}

/// `|e ± ê| <= 3 e0 - |ẽ|` and its interchanges, valid for any three
/// non-negative functions of two variables sharing `e0`.
pub fn theorem3_check(e: f64, ehat: f64, etilde: f64, e0: f64) -> Result<InequalityReport> {
    for (name, v) in [("E", e), ("Ehat", ehat), ("Etilde", etilde)] {
        if !v.is_finite() || v.abs() > e0 + TOL {
            return Err(Error::Precondition(format!("|{name}| = {} exceeds E0 = {e0}", v.abs())));
        }
    }
    Ok(InequalityReport::new(
        "theorem3",
        pair_bound_clauses(e0, e, ehat, etilde, ["E", "Ehat", "Etilde"], "3 E0"),
    ))
}

/// Outcome of the marginal compatibility test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Compatibility {
    pub compatible: bool,
    /// Failed conditions, empty when compatible.
    pub diagnosis: Vec<String>,
    pub nonnegative: bool,
    pub consistent_marginals: bool,
    /// `|E ± Ê| <= E0 ± Ẽ` and its cyclic variants.
    pub report: InequalityReport,
}

/// Tests whether `f(S1,S2)`, `f̂(S1,S3)` and `f̃(S2,S3)` can be pair
/// marginals of one non-negative function of three variables.
pub fn marginals_compatible(f: &FuncTable2, fhat: &FuncTable2, ftilde: &FuncTable2) -> Compatibility {
    let (c, ch, ct) = (expand2(f), expand2(fhat), expand2(ftilde));
    let mut diagnosis = Vec::new();

    let mut nonnegative = true;
    for (name, t) in [("f", f), ("fhat", fhat), ("ftilde", ftilde)] {
        if !t.is_nonnegative() {
            nonnegative = false;
            diagnosis.push(format!("{name} has negative entries"));
        }
    }

    let eq = |a: f64, b: f64| (a - b).abs() <= TOL;
    let mut consistent = true;
    let checks = [
        ("E0 = Ehat0", c.e0, ch.e0),
        ("E0 = Etilde0", c.e0, ct.e0),
        ("E1 = Ehat1", c.e1, ch.e1),
        ("E2 = Etilde1", c.e2, ct.e1),
        ("Ehat2 = Etilde2", ch.e2, ct.e2),
    ];
    for (name, a, b) in checks {
        if !eq(a, b) {
            consistent = false;
            diagnosis.push(format!("{name} fails: {a} vs {b}"));
        }
    }

    let report = InequalityReport::new(
        "ebbi",
        triple_family_clauses(c.e0, c.e12, ch.e12, ct.e12, ["E", "Ehat", "Etilde"], "E0"),
    );
    for cl in report.violated() {
        diagnosis.push(format!("{} fails: {} > {}", cl.description, cl.lhs, cl.rhs));
    }

    Compatibility {
        compatible: diagnosis.is_empty(),
        diagnosis,
        nonnegative,
        consistent_marginals: consistent,
        report,
    }
}

/// A non-negative joint function together with the range its free
/// triple coefficient could have taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub table: FuncTable3,
    pub coeffs: ExpansionCoeffs3,
    /// Admissible values of the triple coefficient `E123`.
    pub interval: (f64, f64),
}

/// Builds a non-negative `f3` with the given pair marginals. The triple
/// coefficient is set to zero when admissible, otherwise to the midpoint
/// of the admissible interval.
pub fn reconstruct_f3(f: &FuncTable2, fhat: &FuncTable2, ftilde: &FuncTable2) -> Result<Reconstruction> {
    let compat = marginals_compatible(f, fhat, ftilde);
    if !compat.compatible {
        return Err(Error::Incompatible(compat.diagnosis.join("; ")));
    }
    let (c, ch, ct) = (expand2(f), expand2(fhat), expand2(ftilde));
    let mut coeffs = ExpansionCoeffs3 {
        e0: c.e0,
        e1: c.e1,
        e2: c.e2,
        e3: ch.e2,
        e12: c.e12,
        e13: ch.e12,
        e23: ct.e12,
        e123: 0.0,
    };
    let base = synth3(&coeffs);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (k, &b) in base.values.iter().enumerate() {
        let s = pattern(3, k);
        let b8 = 8.0 * b;
        if s[0] * s[1] * s[2] > 0 {
            lo = lo.max(-b8);
        } else {
            hi = hi.min(b8);
        }
    }
    if lo > hi + 8.0 * TOL {
        return Err(Error::Incompatible(format!(
            "no admissible triple coefficient: interval [{lo}, {hi}] is empty"
        )));
    }
    coeffs.e123 = if lo <= 0.0 && 0.0 <= hi { 0.0 } else { 0.5 * (lo + hi) };
    Ok(Reconstruction {
        table: synth3(&coeffs),
        coeffs,
        interval: (lo, hi),
    })
}

/// Discrete hidden-variable model: weights `mu` and per-point single
/// variable expectations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaModel {
    weights: Vec<f64>,
    e_a: Vec<f64>,
    e_b: Vec<f64>,
    e_c: Vec<f64>,
}

impl LambdaModel {
    pub fn new(weights: Vec<f64>, e_a: Vec<f64>, e_b: Vec<f64>, e_c: Vec<f64>) -> Result<Self> {
        let k = weights.len();
        if k == 0 {
            return Err(Error::InvalidArgument("empty support".into()));
        }
        if e_a.len() != k || e_b.len() != k || e_c.len() != k {
            return Err(Error::InvalidArgument("expectation lists must match the weights".into()));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument("weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::InvalidArgument(format!("weights sum to {total}, not 1")));
        }
        for v in e_a.iter().chain(&e_b).chain(&e_c) {
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(Error::OutOfRange(format!("expectation {v} outside [-1, 1]")));
            }
        }
        Ok(LambdaModel { weights, e_a, e_b, e_c })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn pair(&self, x: &[f64], y: &[f64]) -> FuncTable2 {
        FuncTable2::from_fn(|s1, s2| {
            self.weights
                .iter()
                .zip(x.iter().zip(y))
                .map(|(&mu, (&ex, &ey))| {
                    mu * (1.0 + s1 as f64 * ex) / 2.0 * (1.0 + s2 as f64 * ey) / 2.0
                })
                .sum()
        })
    }
}

/// Pair tables `(a,b)`, `(a,c)`, `(b,c)` of a discrete hidden-variable model.
pub fn bell_pair_tables(m: &LambdaModel) -> (FuncTable2, FuncTable2, FuncTable2) {
    (
        m.pair(&m.e_a, &m.e_b),
        m.pair(&m.e_a, &m.e_c),
        m.pair(&m.e_b, &m.e_c),
    )
}

/// Joint table whose pair marginals are [`bell_pair_tables`].
pub fn bell_triple_table(m: &LambdaModel) -> FuncTable3 {
    FuncTable3::from_fn(|s1, s2, s3| {
        (0..m.len())
            .map(|k| {
                m.weights[k]
                    * (1.0 + s1 as f64 * m.e_a[k]) / 2.0
                    * (1.0 + s2 as f64 * m.e_b[k]) / 2.0
                    * (1.0 + s3 as f64 * m.e_c[k]) / 2.0
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn expand2_examples() {
        assert_eq!(
            expand2(&FuncTable2::uniform()),
            ExpansionCoeffs2 { e0: 1.0, e1: 0.0, e2: 0.0, e12: 0.0 }
        );
        let f = FuncTable2::new([0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(expand2(&f), ExpansionCoeffs2 { e0: 1.0, e1: 0.0, e2: 0.0, e12: 1.0 });
        let f = FuncTable2::from_fn(|a, b| if a > 0 && b < 0 { 1.0 } else { 0.0 });
        assert_eq!(expand2(&f), ExpansionCoeffs2 { e0: 1.0, e1: 1.0, e2: -1.0, e12: -1.0 });
    }

    #[test]
    fn theorem1_examples() {
        let ok = |e0, e1, e2, e12| theorem1_check(&ExpansionCoeffs2 { e0, e1, e2, e12 }).all_satisfied;
        assert!(ok(1.0, 0.0, 0.0, 0.0));
        assert!(ok(1.0, 1.0, -1.0, -1.0));
        assert!(!ok(1.0, 0.0, 0.0, -1.5));
        assert!(!synth2(&ExpansionCoeffs2 { e0: 1.0, e1: 0.0, e2: 0.0, e12: -1.5 }).is_nonnegative());
    }

    #[test]
    fn expand3_examples() {
        let c = expand3(&FuncTable3::uniform());
        assert_eq!((c.e0, c.e1, c.e12, c.e123), (1.0, 0.0, 0.0, 0.0));
        let c = expand3(&FuncTable3::from_fn(|a, b, c| if a + b + c == 3 { 1.0 } else { 0.0 }));
        for v in [c.e0, c.e1, c.e2, c.e3, c.e12, c.e13, c.e23, c.e123] {
            assert_eq!(v, 1.0);
        }
        let c = expand3(&FuncTable3::from_fn(|a, b, c| (1.0 + (a * b * c) as f64) / 8.0));
        assert_eq!((c.e0, c.e123, c.e1, c.e23), (1.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn ebbi_examples() {
        assert!(ebbi_check(1.0, 1.0, 1.0, 1.0).unwrap().all_satisfied);
        let r = ebbi_check(1.0, -1.0, -1.0, -1.0).unwrap();
        assert!(!r.all_satisfied);
        let c = r.violated().find(|c| c.description == "|E12 + E13| <= E0 + E23").unwrap();
        assert_eq!((c.lhs, c.rhs), (2.0, 0.0));
        assert!(ebbi_check(-1.0, 0.0, 0.0, 0.0).is_err());
        assert_eq!(r.clauses.len(), 3 + 6 + 8);
    }

    #[test]
    fn construct_g3_examples() {
        let g = construct_g3(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(g.values, [0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
        assert_eq!(construct_g3(1.0, 0.0, 0.0, 0.0).unwrap(), FuncTable3::uniform());
        let g = construct_g3(1.0, -1.0, -1.0, 1.0).unwrap();
        assert!(g.is_nonnegative());
        assert!(close(g.get(1, -1, -1), 0.5));
        let err = construct_g3(1.0, -1.0, -1.0, -1.0).unwrap_err().to_string();
        assert!(err.contains("|E12 + E13| <= E0 + E23"), "{err}");
    }

    #[test]
    fn theorem3_examples() {
        assert!(theorem3_check(-1.0, -1.0, -1.0, 1.0).unwrap().all_satisfied);
        assert!(theorem3_check(0.0, 0.0, 0.0, 1.0).unwrap().all_satisfied);
        assert!(theorem3_check(2.0, 0.0, 0.0, 1.0).is_err());
        for a in -8..=8 {
            for b in -8..=8 {
                for c in -8..=8 {
                    let r = theorem3_check(a as f64 / 4.0, b as f64 / 4.0, c as f64 / 4.0, 2.0).unwrap();
                    assert!(r.all_satisfied);
                }
            }
        }
    }

    fn from_e12(e12: f64) -> FuncTable2 {
        synth2(&ExpansionCoeffs2 { e0: 1.0, e1: 0.0, e2: 0.0, e12 })
    }

    #[test]
    fn compatibility_examples() {
        let u = FuncTable2::uniform();
        assert!(marginals_compatible(&u, &u, &u).compatible);
        let t = from_e12(-1.0);
        let c = marginals_compatible(&t, &t, &t);
        assert!(!c.compatible);
        assert!(c.nonnegative && c.consistent_marginals);
        let m = LambdaModel::new(vec![0.5, 0.5], vec![1.0, -1.0], vec![1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let (f, fh, ft) = bell_pair_tables(&m);
        assert!(marginals_compatible(&f, &fh, &ft).compatible);
        assert_eq!((expand2(&f).e12, expand2(&fh).e12, expand2(&ft).e12), (1.0, 0.0, 0.0));
    }

    #[test]
    fn inconsistent_singles_are_diagnosed() {
        let f = synth2(&ExpansionCoeffs2 { e0: 1.0, e1: 0.5, e2: 0.0, e12: 0.0 });
        let u = FuncTable2::uniform();
        let c = marginals_compatible(&f, &u, &u);
        assert!(!c.compatible);
        assert!(c.diagnosis.iter().any(|d| d.starts_with("E1 = Ehat1")));
        assert!(reconstruct_f3(&f, &u, &u).is_err());
    }

    #[test]
    fn reconstruct_uniform() {
        let u = FuncTable2::uniform();
        let r = reconstruct_f3(&u, &u, &u).unwrap();
        assert_eq!(r.table, FuncTable3::uniform());
        assert_eq!(r.coeffs.e123, 0.0);
    }

    #[test]
    fn reconstruct_uses_midpoint_when_zero_excluded() {
        // All mass at (+,+,+): every pair table is concentrated at (+,+),
        // and the only consistent triple coefficient is 1.
        let f = FuncTable2::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = reconstruct_f3(&f, &f, &f).unwrap();
        assert!((r.interval.0 - 1.0).abs() < 1e-15 && (r.interval.1 - 1.0).abs() < 1e-15);
        assert!(close(r.table.get(1, 1, 1), 1.0));
    }

    #[test]
    fn lambda_examples() {
        let m = LambdaModel::new(vec![1.0], vec![0.0], vec![0.0], vec![0.0]).unwrap();
        let (f, fh, ft) = bell_pair_tables(&m);
        assert_eq!((f, fh, ft), (FuncTable2::uniform(), FuncTable2::uniform(), FuncTable2::uniform()));
        assert_eq!(bell_triple_table(&m), FuncTable3::uniform());
        let m = LambdaModel::new(vec![1.0], vec![1.0], vec![1.0], vec![1.0]).unwrap();
        assert_eq!(bell_triple_table(&m).get(1, 1, 1), 1.0);
        assert!(LambdaModel::new(vec![0.5], vec![0.0], vec![0.0], vec![0.0]).is_err());
        assert!(LambdaModel::new(vec![1.0], vec![1.5], vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn table_json_keys() {
        let f = FuncTable2::new([0.1, 0.2, 0.3, 0.4]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"++":0.1,"+-":0.2,"-+":0.3,"--":0.4}"#);
        assert_eq!(serde_json::from_str::<FuncTable2>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FuncTable2>(r#"{"++":1}"#).is_err());
    }
}
