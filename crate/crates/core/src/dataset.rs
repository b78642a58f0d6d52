//! Finite datasets of dichotomic tuples, pair correlations and the
//! arithmetic inequality families that constrain them.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Clause, InequalityReport};

/// `M` rows of `n` values in `{+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomicDataset {
    n: usize,
    rows: Vec<Vec<i8>>,
    run_label: Option<String>,
}

/// Rows projected onto a subset of the parent's columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedDataset {
    pub parent_arity: usize,
    /// One-based, strictly increasing.
    pub indices: Vec<usize>,
    pub rows: Vec<Vec<i8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelation {
    pub value: f64,
    pub i: usize,
    pub j: usize,
    pub source_arity: usize,
    /// `sum_alpha S_i S_j`, kept so the value stays an exact rational.
    pub sum: i64,
    pub m: usize,
}

impl DichotomicDataset {
    pub fn new(n: usize, rows: Vec<Vec<i8>>) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::InvalidDataset(format!("arity {n} not in 2..=4")));
        }
        if rows.is_empty() {
            return Err(Error::InvalidDataset("dataset has no rows".into()));
        }
        for (alpha, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDataset(format!(
                    "row {alpha} has {} values, expected {n}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v != 1 && v != -1) {
                return Err(Error::InvalidDataset(format!(
                    "row {alpha} contains {v}, expected +1 or -1"
                )));
            }
        }
        Ok(DichotomicDataset {
            n,
            rows,
            run_label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.run_label = Some(label.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn run_label(&self) -> Option<&str> {
        self.run_label.as_deref()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Project every row onto `indices` (one-based, strictly increasing).
    pub fn reduce(&self, indices: &[usize]) -> Result<ReducedDataset> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("empty index list".into()));
        }
        for &i in indices {
            self.check_index(i)?;
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "indices {indices:?} must be strictly increasing without duplicates"
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| indices.iter().map(|&i| r[i - 1]).collect())
            .collect();
        Ok(ReducedDataset {
            parent_arity: self.n,
            indices: indices.to_vec(),
            rows,
        })
    }

    /// `(1/M) sum_alpha S_i S_j` for one-based `i < j`.
    pub fn correlation(&self, i: usize, j: usize) -> Result<PairCorrelation> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i >= j {
            return Err(Error::InvalidArgument(format!("need i < j, got ({i}, {j})")));
        }
        let sum: i64 = self
            .rows
            .iter()
            .map(|r| (r[i - 1] * r[j - 1]) as i64)
            .sum();
        let m = self.rows.len();
        Ok(PairCorrelation {
            value: sum as f64 / m as f64,
            i,
            j,
            source_arity: self.n,
            sum,
            m,
        })
    }

    /// Mean of column `i`.
    pub fn mean(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        let sum: i64 = self.rows.iter().map(|r| r[i - 1] as i64).sum();
        Ok(sum as f64 / self.m() as f64)
    }

    /// Copy with column `k` (one-based) negated.
    pub fn negate_column(&self, k: usize) -> Result<Self> {
        self.check_index(k)?;
        let mut out = self.clone();
        for r in &mut out.rows {
            r[k - 1] = -r[k - 1];
        }
        Ok(out)
    }

    /// Correlations `F12, F13, F23` of a triple dataset.
    pub fn triple_correlations(&self) -> Result<[f64; 3]> {
        if self.n != 3 {
            return Err(Error::InvalidArgument(format!("need n = 3, got {}", self.n)));
        }
        Ok([
            self.correlation(1, 2)?.value,
            self.correlation(1, 3)?.value,
            self.correlation(2, 3)?.value,
        ])
    }

    /// Correlations `F13, F23, F14, F24` of a quadruple dataset.
    pub fn chsh_correlations(&self) -> Result<[f64; 4]> {
        if self.n != 4 {
            return Err(Error::InvalidArgument(format!("need n = 4, got {}", self.n)));
        }
        Ok([
            self.correlation(1, 3)?.value,
            self.correlation(2, 3)?.value,
            self.correlation(1, 4)?.value,
            self.correlation(2, 4)?.value,
        ])
    }

    /// Read the `s1..sn` CSV format. Values are `+1` / `-1` (also `1`).
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let n = headers.len();
        for (k, h) in headers.iter().enumerate() {
            if h != format!("s{}", k + 1) {
                return Err(Error::Parse(format!(
                    "header column {} is {h:?}, expected \"s{}\"",
                    k + 1,
                    k + 1
                )));
            }
        }
        let mut rows = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|v| match v {
                    "+1" | "1" => Ok(1),
                    "-1" => Ok(-1),
                    other => Err(Error::Parse(format!(
                        "data row {}: value {other:?} is not +1 or -1",
                        line + 1
                    ))),
                })
                .collect::<Result<Vec<i8>>>()?;
            rows.push(row);
        }
        DichotomicDataset::new(n, rows)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record((1..=self.n).map(|k| format!("s{k}")))?;
        for r in &self.rows {
            w.write_record(r.iter().map(|&v| if v > 0 { "+1" } else { "-1" }))?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_unit_range(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
        Err(Error::OutOfRange(format!("{name} = {v} is outside [-1, 1]")))
    } else {
        Ok(())
    }
}

/// Six clauses `|x ± y| <= c ± z` for the cyclic assignments of a triple
/// of pair quantities, labelled with `names`.
pub(crate) fn triple_family_clauses(
    c: f64,
    f12: f64,
    f13: f64,
    f23: f64,
    names: [&str; 3],
    c_name: &str,
) -> Vec<Clause> {
    // (F_ij, F_ik, F_jk) for (i,j,k) = (1,2,3), (3,1,2), (2,3,1).
    let cycles = [
        ((f12, names[0]), (f13, names[1]), (f23, names[2])),
        ((f13, names[1]), (f23, names[2]), (f12, names[0])),
        ((f23, names[2]), (f12, names[0]), (f13, names[1])),
    ];
    let mut out = Vec::with_capacity(6);
    for ((x, xn), (y, yn), (z, zn)) in cycles {
        out.push(Clause::le(
            format!("|{xn} + {yn}| <= {c_name} + {zn}"),
            (x + y).abs(),
            c + z,
        ));
        out.push(Clause::le(
            format!("|{xn} - {yn}| <= {c_name} - {zn}"),
            (x - y).abs(),
            c - z,
        ));
    }
    out
}

/// Boole's conditions for correlations extracted from one set of triples.
pub fn check_boole_triple(f12: f64, f13: f64, f23: f64) -> Result<InequalityReport> {
    check_unit_range("F12", f12)?;
    check_unit_range("F13", f13)?;
    check_unit_range("F23", f23)?;
    Ok(InequalityReport::new(
        "boole_triple",
        triple_family_clauses(1.0, f12, f13, f23, ["F12", "F13", "F23"], "1"),
    ))
}

/// How pair data from separate runs are identified with variables of a
/// hypothetical common triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairHypothesis {
    /// The same setting yields the same value in every run, so `F = E`.
    SameOutcome,
    /// The right-hand value is the negative of the left-hand value for
    /// equal settings (perfect anticorrelation), so `F = -E`.
    Anticorrelated,
}

/// Boole triple family for pair correlations `E`, after identifying them
/// with triple correlations under `hyp`. Clause text is written in `E`.
pub fn check_boole_triple_under(
    e_ab: f64,
    e_ac: f64,
    e_bc: f64,
    hyp: PairHypothesis,
) -> Result<InequalityReport> {
    match hyp {
        PairHypothesis::SameOutcome => check_boole_triple(e_ab, e_ac, e_bc),
        PairHypothesis::Anticorrelated => {
            check_unit_range("E", e_ab)?;
            check_unit_range("Ehat", e_ac)?;
            check_unit_range("Etilde", e_bc)?;
            // |F_ij ± F_ik| <= 1 ± F_jk with F = -E reads |E_ij ± E_ik| <= 1 ∓ E_jk.
            let cycles = [
                ((e_ab, "E"), (e_ac, "Ehat"), (e_bc, "Etilde")),
                ((e_ac, "Ehat"), (e_bc, "Etilde"), (e_ab, "E")),
                ((e_bc, "Etilde"), (e_ab, "E"), (e_ac, "Ehat")),
            ];
            let mut clauses = Vec::with_capacity(6);
            for ((x, xn), (y, yn), (z, zn)) in cycles {
                clauses.push(Clause::le(
                    format!("|{xn} + {yn}| <= 1 - {zn}"),
                    (x + y).abs(),
                    1.0 - z,
                ));
                clauses.push(Clause::le(
                    format!("|{xn} - {yn}| <= 1 + {zn}"),
                    (x - y).abs(),
                    1.0 + z,
                ));
            }
            Ok(InequalityReport::new("boole_triple", clauses))
        }
    }
}

/// Pair bound `|F ± F̂| <= 3 - |F̃|` and its two permutations.
pub fn check_pair_bound(f: f64, fhat: f64, ftilde: f64) -> Result<InequalityReport> {
    check_unit_range("F", f)?;
    check_unit_range("Fhat", fhat)?;
    check_unit_range("Ftilde", ftilde)?;
    Ok(InequalityReport::new(
        "pair_bound",
        pair_bound_clauses(1.0, f, fhat, ftilde, ["F", "Fhat", "Ftilde"], "3"),
    ))
}

pub(crate) fn pair_bound_clauses(
    e0: f64,
    x: f64,
    y: f64,
    z: f64,
    names: [&str; 3],
    three: &str,
) -> Vec<Clause> {
    let perms = [
        ((x, names[0]), (y, names[1]), (z, names[2])),
        ((x, names[0]), (z, names[2]), (y, names[1])),
        ((y, names[1]), (z, names[2]), (x, names[0])),
    ];
    let mut out = Vec::with_capacity(6);
    for ((p, pn), (q, qn), (r, rn)) in perms {
        for (sign, sn) in [(1.0, '+'), (-1.0, '-')] {
            out.push(Clause::le(
                format!("|{pn} {sn} {qn}| <= {three} - |{rn}|"),
                (p + sign * q).abs(),
                3.0 * e0 - r.abs(),
            ));
        }
    }
    out
}

/// `|F13 - F23 + F14 + F24| <= 2` and the distinct variants generated by
/// negating columns.
pub fn check_chsh(f13: f64, f23: f64, f14: f64, f24: f64) -> Result<InequalityReport> {
    check_unit_range("F13", f13)?;
    check_unit_range("F23", f23)?;
    check_unit_range("F14", f14)?;
    check_unit_range("F24", f24)?;
    Ok(InequalityReport::new(
        "chsh",
        chsh_clauses(f13, f23, f14, f24, ["F13", "F23", "F14", "F24"]),
    ))
}

pub(crate) fn chsh_clauses(
    f13: f64,
    f23: f64,
    f14: f64,
    f24: f64,
    names: [&str; 4],
) -> Vec<Clause> {
    // Negating S1..S4 multiplies the terms by (s1 s3, s2 s3, s1 s4, s2 s4).
    // Up to an overall sign there are four distinct combinations.
    let mut seen: Vec<[i8; 4]> = Vec::new();
    let mut out = Vec::new();
    for bits in 0..16u8 {
        let s: Vec<i8> = (0..4).map(|k| if bits >> k & 1 == 0 { 1 } else { -1 }).collect();
        let mut t = [s[0] * s[2], -s[1] * s[2], s[0] * s[3], s[1] * s[3]];
        if t[0] < 0 {
            t.iter_mut().for_each(|x| *x = -*x);
        }
        if seen.contains(&t) {
            continue;
        }
        seen.push(t);
        let vals = [f13, f23, f14, f24];
        let lhs = t.iter().zip(vals).map(|(&c, v)| c as f64 * v).sum::<f64>().abs();
        let mut text = String::from("|");
        for (k, (&c, name)) in t.iter().zip(names).enumerate() {
            if k == 0 {
                text.push_str(if c > 0 { "" } else { "-" });
            } else {
                text.push_str(if c > 0 { " + " } else { " - " });
            }
            text.push_str(name);
        }
        text.push_str("| <= 2");
        out.push(Clause::le(text, lhs, 2.0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(rows: &[&[i8]]) -> DichotomicDataset {
        DichotomicDataset::new(rows[0].len(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let d = ds(&[&[1, -1, 1]]);
        assert_eq!(d.reduce(&[1, 3]).unwrap().rows, vec![vec![1, 1]]);
        let d = ds(&[&[1, 1, 1], &[-1, -1, -1]]);
        assert_eq!(d.reduce(&[2, 3]).unwrap().rows, vec![vec![1, 1], vec![-1, -1]]);
        let d = ds(&[&[1, 1, -1, -1]]);
        assert_eq!(d.reduce(&[1, 4]).unwrap().rows, vec![vec![1, -1]]);
    }

    #[test]
    fn reduce_rejects_bad_indices() {
        let d = ds(&[&[1, -1, 1]]);
        assert!(d.reduce(&[0, 1]).is_err());
        assert!(d.reduce(&[1, 4]).is_err());
        assert!(d.reduce(&[2, 2]).is_err());
        assert!(d.reduce(&[3, 1]).is_err());
    }

    #[test]
    fn construction_rejects_bad_data() {
        assert!(DichotomicDataset::new(3, vec![]).is_err());
        assert!(DichotomicDataset::new(3, vec![vec![1, 0, 1]]).is_err());
        assert!(DichotomicDataset::new(3, vec![vec![1, 1]]).is_err());
        assert!(DichotomicDataset::new(5, vec![vec![1; 5]]).is_err());
    }

    #[test]
    fn correlation_examples() {
        assert_eq!(ds(&[&[1, 1, 1]]).correlation(1, 2).unwrap().value, 1.0);
        let d = ds(&[&[1, 1, 1], &[1, -1, -1]]);
        assert_eq!(d.correlation(2, 3).unwrap().value, 1.0);
        assert_eq!(d.correlation(1, 2).unwrap().value, 0.0);
        let d = ds(&[&[1, 1, 1], &[1, -1, 1], &[-1, 1, -1], &[-1, -1, -1]]);
        assert_eq!(d.correlation(1, 3).unwrap().value, 1.0);
        assert!(d.correlation(2, 1).is_err());
        assert!(d.correlation(1, 4).is_err());
    }

    #[test]
    fn boole_triple_examples() {
        assert!(check_boole_triple(1.0, 1.0, 1.0).unwrap().all_satisfied);
        let r = check_boole_triple(-1.0, -1.0, -1.0).unwrap();
        assert!(!r.all_satisfied);
        let v = r.violated().find(|c| c.description == "|F12 + F13| <= 1 + F23").unwrap();
        assert_eq!((v.lhs, v.rhs), (2.0, 0.0));
        assert!(check_boole_triple(1.5, 0.0, 0.0).is_err());
        assert_eq!(r.clauses.len(), 6);
    }

    #[test]
    fn anticorrelated_identification() {
        let r = check_boole_triple_under(-0.5, 0.5, -0.5, PairHypothesis::Anticorrelated).unwrap();
        let c = r.violated().find(|c| c.description == "|E - Ehat| <= 1 + Etilde").unwrap();
        assert_eq!((c.lhs, c.rhs), (1.0, 0.5));
        // Same verdicts as the direct family applied to -E.
        let d = check_boole_triple(0.5, -0.5, 0.5).unwrap();
        assert_eq!(r.all_satisfied, d.all_satisfied);
    }

    #[test]
    fn pair_bound_examples() {
        let r = check_pair_bound(-1.0, -1.0, -1.0).unwrap();
        assert!(r.all_satisfied);
        assert_eq!(r.min_slack(), 0.0);
        assert!(check_pair_bound(0.0, 0.0, 0.0).unwrap().all_satisfied);
        for a in -10..=10 {
            for b in -10..=10 {
                for c in -10..=10 {
                    let r = check_pair_bound(a as f64 / 10.0, b as f64 / 10.0, c as f64 / 10.0);
                    assert!(r.unwrap().all_satisfied);
                }
            }
        }
    }

    #[test]
    fn chsh_examples() {
        let r = check_chsh(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(r.all_satisfied);
        assert_eq!(r.clauses.len(), 4);
        assert_eq!(r.clauses[0].description, "|F13 - F23 + F14 + F24| <= 2");
        let r = check_chsh(-1.0, 1.0, -1.0, -1.0).unwrap();
        assert!(!r.all_satisfied);
        assert_eq!(r.clauses[0].lhs, 4.0);
    }

    #[test]
    fn csv_round_trip() {
        let d = ds(&[&[1, -1, 1], &[-1, -1, 1]]);
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "s1,s2,s3\n+1,-1,+1\n-1,-1,+1\n");
        assert_eq!(DichotomicDataset::read_csv(&buf[..]).unwrap(), d);
        assert!(DichotomicDataset::read_csv("a,b\n1,1\n".as_bytes()).is_err());
        assert!(DichotomicDataset::read_csv("s1,s2\n1,0\n".as_bytes()).is_err());
        assert!(DichotomicDataset::read_csv("s1,s2\n".as_bytes()).is_err());
    }
}
