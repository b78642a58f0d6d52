//! Two spins in the singlet state: pair tables, the Schwartz bound, and
//! the extended experiments in which particle 2 passes two filters.

use serde::{Deserialize, Serialize};

use super::{
    chain_trace, local_op, norm3, pauli_dot, projector, singlet, ProbabilityTable, UnitVector3,
};
use crate::dataset::chsh_clauses;
use crate::error::{Error, Result};
use crate::nonneg::{expand3, ExpansionCoeffs3};
use crate::report::{Clause, InequalityReport, TOL};

/// `⟨σ₁·a σ₂·b⟩` in the singlet state.
pub fn singlet_correlation(a: &UnitVector3, b: &UnitVector3) -> f64 {
    let op = &local_op(&pauli_dot(a), 0, 2) * &local_op(&pauli_dot(b), 1, 2);
    singlet().expectation(&op).re
}

/// `P(S1, S2) = Tr ρ M₁(S1,u) M₂(S2,v)` for the singlet.
pub fn eprb_pair_table(u: &UnitVector3, v: &UnitVector3) -> ProbabilityTable {
    let rho = singlet();
    ProbabilityTable::from_fn(2, |s| {
        let m1 = local_op(&projector(s[0], u), 0, 2);
        let m2 = local_op(&projector(s[1], v), 1, 2);
        chain_trace(&rho, &[&m1, &m2])
    })
    .expect("singlet tables are valid")
}

/// Tables for the setting pairs `(a,b)`, `(a,c)` and `(b,c)`, each from a
/// separate run on fresh singlet pairs.
pub fn eprb_pair_tables(
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> [ProbabilityTable; 3] {
    [eprb_pair_table(a, b), eprb_pair_table(a, c), eprb_pair_table(b, c)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwartzSide {
    /// `|E ± Ê|²`.
    pub lhs: f64,
    /// `2 (1 ± b·c)`.
    pub rhs: f64,
    /// Squared cosine of the angle between `a` and `b ± c`; undefined when
    /// `b ± c = 0`.
    pub cos2_theta: Option<f64>,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwartzReport {
    pub e: f64,
    pub ehat: f64,
    pub plus: SchwartzSide,
    pub minus: SchwartzSide,
    /// Whether `a` lies in the span of `b` and `c`.
    pub a_in_span: bool,
    /// `cos²θ₊ + cos²θ₋`, the squared length of the projection of `a` onto
    /// the span of `b` and `c` (undefined when `b = ±c`).
    pub span_saturation: Option<f64>,
    /// `span_saturation = 1`.
    pub span_equality: bool,
    pub report: InequalityReport,
}

const EQ_TOL: f64 = 1e-10;

/// `|E ± Ê|² <= 2 (1 ± b·c)` with `E = ⟨σ₁·a σ₂·b⟩`, `Ê = ⟨σ₁·a σ₂·c⟩`.
pub fn schwartz_bound(a: &UnitVector3, b: &UnitVector3, c: &UnitVector3) -> SchwartzReport {
    let e = singlet_correlation(a, b);
    let ehat = singlet_correlation(a, c);
    let bc = b.dot(c);
    let side = |sign: f64| {
        let lhs = (e + sign * ehat).powi(2);
        let rhs = 2.0 * (1.0 + sign * bc);
        let w = [b.x + sign * c.x, b.y + sign * c.y, b.z + sign * c.z];
        let wn = norm3(w);
        let cos2_theta = (wn > 1e-12).then(|| {
            let d = (a.x * w[0] + a.y * w[1] + a.z * w[2]) / wn;
            d * d
        });
        SchwartzSide {
            lhs,
            rhs,
            cos2_theta,
            equality: (lhs - rhs).abs() <= EQ_TOL,
        }
    };
    let plus = side(1.0);
    let minus = side(-1.0);
    let bxc = b.cross(c);
    let a_in_span = if norm3(bxc) > 1e-12 {
        let n = norm3(bxc);
        ((a.x * bxc[0] + a.y * bxc[1] + a.z * bxc[2]) / n).abs() <= EQ_TOL
    } else {
        norm3(a.cross(b)) <= EQ_TOL
    };
    let span_saturation = match (plus.cos2_theta, minus.cos2_theta) {
        (Some(p), Some(m)) => Some(p + m),
        _ => None,
    };
    let span_equality = span_saturation.is_some_and(|v| (v - 1.0).abs() <= EQ_TOL);
    let report = InequalityReport::new(
        "schwartz",
        vec![
            Clause::le("|E + Ehat|^2 <= 2 (1 + b.c)", plus.lhs, plus.rhs),
            Clause::le("|E - Ehat|^2 <= 2 (1 - b.c)", minus.lhs, minus.rhs),
        ],
    );
    SchwartzReport {
        e,
        ehat,
        plus,
        minus,
        a_in_span,
        span_saturation,
        span_equality,
        report,
    }
}

/// Triple from one singlet pair: particle 1 meets filter `a`, particle 2
/// meets `b` and then `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedEprb3 {
    pub table: ProbabilityTable,
    pub coeffs: ExpansionCoeffs3,
    /// `Σ|Φ|²` of the amplitudes the table was built from.
    pub amplitude_norm: f64,
}

/// Amplitude `Φ(S1,S2,S3)` for coplanar settings.
fn extended_amplitude(s: &[i8], ta: f64, tb: f64, tc: f64) -> f64 {
    let (s1, s2, s3) = (s[0] as f64, s[1] as f64, s[2] as f64);
    let (s_ba, c_ba) = (((tb - ta) / 2.0).sin(), ((tb - ta) / 2.0).cos());
    let (s_cb, c_cb) = (((tc - tb) / 2.0).sin(), ((tc - tb) / 2.0).cos());
    let first = ((1.0 + s1 * s2) * s_ba + s2 * (1.0 - s1 * s2) * c_ba) / (2.0 * std::f64::consts::SQRT_2);
    let second = ((1.0 + s2 * s3) * c_cb + s2 * (1.0 - s2 * s3) * s_cb) / 2.0;
    first * second
}

/// `(1 - S1S2 cos(θb-θa) - S1S3 cos(θb-θa) cos(θc-θb) + S2S3 cos(θc-θb)) / 8`.
pub fn extended_eprb3_closed(ta: f64, tb: f64, tc: f64) -> ProbabilityTable {
    let ab = (tb - ta).cos();
    let bc = (tc - tb).cos();
    ProbabilityTable::from_fn(3, |s| {
        let (s1, s2, s3) = (s[0] as f64, s[1] as f64, s[2] as f64);
        (1.0 - s1 * s2 * ab - s1 * s3 * ab * bc + s2 * s3 * bc) / 8.0
    })
    .expect("valid table")
}

/// Coplanar extended experiment with settings given as angles (radians).
pub fn extended_eprb_prob3(ta: f64, tb: f64, tc: f64) -> Result<ExtendedEprb3> {
    if !(ta.is_finite() && tb.is_finite() && tc.is_finite()) {
        return Err(Error::InvalidArgument("non-finite angle".into()));
    }
    let amps: Vec<f64> = (0..8)
        .map(|k| extended_amplitude(&crate::signs::pattern(3, k), ta, tb, tc))
        .collect();
    let norm: f64 = amps.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > TOL {
        return Err(Error::InvalidState(format!("amplitudes have squared norm {norm}")));
    }
    let table = ProbabilityTable::new(3, amps.iter().map(|x| x * x).collect())?;
    let closed = extended_eprb3_closed(ta, tb, tc);
    let diff = table.max_abs_diff(&closed);
    if diff > TOL {
        return Err(Error::InvalidState(format!(
            "amplitude and closed-form tables differ by {diff}"
        )));
    }
    let coeffs = expand3(&table.to_func3()?);
    Ok(ExtendedEprb3 {
        table,
        coeffs,
        amplitude_norm: norm,
    })
}

/// `Tr ρ M₁(S1,a) M₂(S2,b) M₂(S3,c) M₂(S2,b)` for arbitrary directions.
pub fn extended_eprb_prob3_chain(
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> ProbabilityTable {
    let rho = singlet();
    ProbabilityTable::from_fn(3, |s| {
        let ma = local_op(&projector(s[0], a), 0, 2);
        let mb = local_op(&projector(s[1], b), 1, 2);
        let mc = local_op(&projector(s[2], c), 1, 2);
        chain_trace(&rho, &[&ma, &mb, &mc, &mb])
    })
    .expect("valid table")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelations4 {
    pub e12: f64,
    pub e13: f64,
    pub e14: f64,
    pub e23: f64,
    pub e24: f64,
    pub e34: f64,
}

impl PairCorrelations4 {
    pub fn max_abs_diff(&self, o: &PairCorrelations4) -> f64 {
        [
            self.e12 - o.e12,
            self.e13 - o.e13,
            self.e14 - o.e14,
            self.e23 - o.e23,
            self.e24 - o.e24,
            self.e34 - o.e34,
        ]
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
    }

    /// `|E12 - E13 + E24 + E34| <= 2` and its sign variants.
    pub fn chsh_report(&self) -> InequalityReport {
        // Left variables {4, 1}, right variables {3, 2}.
        InequalityReport::new(
            "chsh",
            chsh_clauses(self.e34, self.e13, self.e24, self.e12, ["E34", "E13", "E24", "E12"]),
        )
    }
}

/// Quadruple: particle 1 meets `a` then `d`, particle 2 meets `b` then `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedEprb4 {
    pub table: ProbabilityTable,
    pub correlations: PairCorrelations4,
}

/// Table from `Tr ρ M(S1,a) M(S4,d) M(S2,b) M(S3,c) M(S2,b) M(S4,d) M(S1,a)`
/// with `a`, `d` acting on particle 1 and `b`, `c` on particle 2.
pub fn extended_eprb_prob4(
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
    d: &UnitVector3,
) -> ExtendedEprb4 {
    let rho = singlet();
    let table = ProbabilityTable::from_fn(4, |s| {
        let ma = local_op(&projector(s[0], a), 0, 2);
        let mb = local_op(&projector(s[1], b), 1, 2);
        let mc = local_op(&projector(s[2], c), 1, 2);
        let md = local_op(&projector(s[3], d), 0, 2);
        chain_trace(&rho, &[&ma, &md, &mb, &mc, &mb, &md, &ma])
    })
    .expect("valid table");
    let correlations = PairCorrelations4 {
        e12: table.correlation(1, 2),
        e13: table.correlation(1, 3),
        e14: table.correlation(1, 4),
        e23: table.correlation(2, 3),
        e24: table.correlation(2, 4),
        e34: table.correlation(3, 4),
    };
    ExtendedEprb4 { table, correlations }
}

/// Closed-form pair correlations of [`extended_eprb_prob4`].
pub fn extended_eprb4_closed(
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
    d: &UnitVector3,
) -> PairCorrelations4 {
    let (ab, bc, ad) = (a.dot(b), b.dot(c), a.dot(d));
    PairCorrelations4 {
        e12: -ab,
        e13: -ab * bc,
        e14: ad,
        e23: bc,
        e24: -ab * ad,
        e34: -ab * ad * bc,
    }
}
