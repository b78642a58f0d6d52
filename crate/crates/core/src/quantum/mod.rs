//! Exact dense simulation of up to four spin-1/2 objects.
//!
//! Basis states are ordered with particle 1 as the slowest index and spin
//! up (`+`, eigenvalue +1 of σᶻ) first. Coplanar settings are given as
//! angles θ measured from the z axis in the xz plane, `u = (sin θ, 0, cos θ)`.

pub mod commutator;
pub mod eprb;
pub mod filter;
pub mod linalg;
pub mod separable;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use commutator::{commutator_diagnostics, CommutatorReport, UncertaintyProduct};
pub use eprb::{
    eprb_pair_table, eprb_pair_tables, extended_eprb4_closed, extended_eprb_prob3,
    extended_eprb_prob3_chain, extended_eprb_prob4, schwartz_bound, singlet_correlation,
    ExtendedEprb3, ExtendedEprb4, PairCorrelations4, SchwartzReport, SchwartzSide,
};
pub use filter::{filter_prob2, filter_prob2_closed, filter_prob3, filter_prob3_closed};
pub use linalg::CMatrix;
pub use separable::{
    pair_clauses, separable_bound_check, separable_mixture, SeparableComponent,
};

use crate::error::{Error, Result};
use crate::nonneg::{FuncTable2, FuncTable3};
use crate::report::TOL;
use crate::signs::{index_of, pattern};
use linalg::{ONE, ZERO};

/// Tolerance for the smallest eigenvalue of a state.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitVector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitVector3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > TOL {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(UnitVector3 { x, y, z })
    }

    /// Rescales a non-zero vector to unit length.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(UnitVector3 {
            x: v[0] / norm,
            y: v[1] / norm,
            z: v[2] / norm,
        })
    }

    /// `(sin θ, 0, cos θ)`.
    pub fn coplanar(theta: f64) -> Self {
        UnitVector3 {
            x: theta.sin(),
            y: 0.0,
            z: theta.cos(),
        }
    }

    pub fn ex() -> Self {
        UnitVector3 { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn ey() -> Self {
        UnitVector3 { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn ez() -> Self {
        UnitVector3 { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, o: &UnitVector3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &UnitVector3) -> [f64; 3] {
        cross(self.as_array(), o.as_array())
    }
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_fn(2, |r, c| if r != c { ONE } else { ZERO })
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::new(0.0, 1.0),
        _ => ZERO,
    })
}

pub fn pauli_z() -> CMatrix {
    CMatrix::diag(&[ONE, -ONE])
}

/// `σ·v` for an arbitrary real vector.
pub fn sigma_dot(v: [f64; 3]) -> CMatrix {
    let (x, y, z) = (v[0], v[1], v[2]);
    CMatrix::from_rows(vec![
        vec![Complex64::new(z, 0.0), Complex64::new(x, -y)],
        vec![Complex64::new(x, y), Complex64::new(-z, 0.0)],
    ])
    .expect("2x2")
}

/// `σ·a`.
pub fn pauli_dot(a: &UnitVector3) -> CMatrix {
    sigma_dot(a.as_array())
}

/// `M(s, a) = (1 + s σ·a) / 2`.
pub fn projector(s: i8, a: &UnitVector3) -> CMatrix {
    let half = Complex64::new(0.5, 0.0);
    let sd = pauli_dot(a).scale(Complex64::new(s as f64, 0.0));
    (&CMatrix::identity(2) + &sd).scale(half)
}

/// `op` acting on particle `k` (zero-based) of `n`.
pub fn local_op(op: &CMatrix, k: usize, n: usize) -> CMatrix {
    assert!(k < n && op.dim() == 2);
    let mut out = CMatrix::identity(1);
    for j in 0..n {
        out = if j == k {
            out.kron(op)
        } else {
            out.kron(&CMatrix::identity(2))
        };
    }
    out
}

/// Validated state of `n` spin-1/2 objects.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    n: usize,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() || !(2..=linalg::MAX_DIM).contains(&dim) {
            return Err(Error::InvalidState(format!("dimension {dim} is not 2, 4, 8 or 16")));
        }
        if !matrix.is_hermitian(TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, not 1")));
        }
        let min_ev = matrix.hermitian_eigenvalues()[0];
        if min_ev < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_ev}")));
        }
        Ok(DensityMatrix {
            n: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TOL {
            return Err(Error::InvalidState(format!("state has squared norm {norm2}")));
        }
        Self::new(CMatrix::outer(psi))
    }

    /// Single spin with Bloch vector `x`, `(1 + σ·x) / 2`, `|x| <= 1`.
    pub fn qubit(x: [f64; 3]) -> Result<Self> {
        let r = norm3(x);
        if !r.is_finite() || r > 1.0 + TOL {
            return Err(Error::InvalidState(format!("Bloch vector has length {r} > 1")));
        }
        let m = (&CMatrix::identity(2) + &sigma_dot(x)).scale(Complex64::new(0.5, 0.0));
        Self::new(m)
    }

    pub fn up() -> Self {
        Self::qubit([0.0, 0.0, 1.0]).expect("valid")
    }

    pub fn down() -> Self {
        Self::qubit([0.0, 0.0, -1.0]).expect("valid")
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Self::new(CMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    /// Tensor product, first factor slowest.
    pub fn product(parts: &[&DensityMatrix]) -> Result<Self> {
        let mut m = CMatrix::identity(1);
        for p in parts {
            m = m.kron(&p.matrix);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Tr ρ O`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        (&self.matrix * op).trace()
    }

    /// Bloch vector of a single spin.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.n != 1 {
            return Err(Error::InvalidState(format!("expected one spin, got {}", self.n)));
        }
        Ok([
            self.expectation(&pauli_x()).re,
            self.expectation(&pauli_y()).re,
            self.expectation(&pauli_z()).re,
        ])
    }
}

/// `(|↑↓⟩ - |↓↑⟩) / √2`.
pub fn singlet_state() -> Vec<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    vec![ZERO, h, -h, ZERO]
}

pub fn singlet() -> DensityMatrix {
    DensityMatrix::pure(&singlet_state()).expect("singlet is normalized")
}

/// Joint probabilities of `n` dichotomic outcomes in sign-pattern order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    n: usize,
    p: Vec<f64>,
}

impl ProbabilityTable {
    pub fn new(n: usize, p: Vec<f64>) -> Result<Self> {
        if !(1..=4).contains(&n) || p.len() != 1 << n {
            return Err(Error::InvalidTable(format!(
                "{} entries for arity {n}",
                p.len()
            )));
        }
        if let Some(v) = p.iter().find(|&&v| !(v >= -TOL && v <= 1.0 + TOL)) {
            return Err(Error::InvalidTable(format!("entry {v} outside [0, 1]")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidTable(format!("entries sum to {total}")));
        }
        Ok(ProbabilityTable { n, p })
    }

    pub fn from_fn(n: usize, f: impl Fn(&[i8]) -> f64) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(|k| f(&pattern(n, k))).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, signs: &[i8]) -> f64 {
        assert_eq!(signs.len(), self.n);
        self.p[index_of(signs)]
    }

    /// `Σ S_i S_j P` for one-based `i != j`.
    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        self.p
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let s = pattern(self.n, k);
                (s[i - 1] * s[j - 1]) as f64 * v
            })
            .sum()
    }

    /// `Σ S_i P`.
    pub fn mean(&self, i: usize) -> f64 {
        self.p
            .iter()
            .enumerate()
            .map(|(k, &v)| pattern(self.n, k)[i - 1] as f64 * v)
            .sum()
    }

    /// Marginal over the one-based variables in `keep`, in that order.
    pub fn marginal(&self, keep: &[usize]) -> Result<ProbabilityTable> {
        if keep.is_empty() || keep.iter().any(|&i| i == 0 || i > self.n) {
            return Err(Error::InvalidArgument(format!("bad marginal indices {keep:?}")));
        }
        let mut out = vec![0.0; 1 << keep.len()];
        for (k, &v) in self.p.iter().enumerate() {
            let s = pattern(self.n, k);
            let sub: Vec<i8> = keep.iter().map(|&i| s[i - 1]).collect();
            out[index_of(&sub)] += v;
        }
        ProbabilityTable::new(keep.len(), out)
    }

    pub fn to_func2(&self) -> Result<FuncTable2> {
        if self.n != 2 {
            return Err(Error::InvalidTable(format!("arity {} is not 2", self.n)));
        }
        FuncTable2::new(self.p.clone().try_into().expect("4 entries"))
    }

    pub fn to_func3(&self) -> Result<FuncTable3> {
        if self.n != 3 {
            return Err(Error::InvalidTable(format!("arity {} is not 3", self.n)));
        }
        FuncTable3::new(self.p.clone().try_into().expect("8 entries"))
    }

    pub fn max_abs_diff(&self, other: &ProbabilityTable) -> f64 {
        assert_eq!(self.n, other.n);
        self.p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Serialize for ProbabilityTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::signs::to_map(self.n, &self.p).serialize(s)
    }
}

/// Diagonal of `ρ` in the computational basis.
pub fn diag_prob(rho: &DensityMatrix) -> Result<ProbabilityTable> {
    let m = rho.matrix();
    ProbabilityTable::new(rho.n(), (0..m.dim()).map(|k| m.get(k, k).re).collect())
}

/// `Tr ρ ops[0] ops[1] ... ops[k]`, real part.
pub(crate) fn chain_trace(rho: &DensityMatrix, ops: &[&CMatrix]) -> f64 {
    let mut all = vec![rho.matrix()];
    all.extend_from_slice(ops);
    linalg::chain(&all).trace().re
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pauli_dot_examples() {
        assert_eq!(pauli_dot(&UnitVector3::ez()), CMatrix::diag(&[ONE, -ONE]));
        assert_eq!(pauli_dot(&UnitVector3::ex()), pauli_x());
        let a = UnitVector3::normalized([0.3, -0.4, 0.7]).unwrap();
        let s = pauli_dot(&a);
        assert!(s.trace().norm() < 1e-15);
        let det = s.get(0, 0) * s.get(1, 1) - s.get(0, 1) * s.get(1, 0);
        assert!((det - c(-1.0)).norm() < 1e-14);
        assert!((&s * &s).max_abs_diff(&CMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn projector_examples() {
        let z = UnitVector3::ez();
        assert_eq!(projector(1, &z), CMatrix::diag(&[ONE, ZERO]));
        assert_eq!(projector(-1, &z), CMatrix::diag(&[ZERO, ONE]));
        let p = projector(1, &UnitVector3::ex());
        assert!(p.max_abs_diff(&CMatrix::from_fn(2, |_, _| c(0.5))) < 1e-15);
    }

    #[test]
    fn unit_vector_validation() {
        assert!(UnitVector3::new(1.0, 1.0, 0.0).is_err());
        assert!(UnitVector3::normalized([0.0, 0.0, 0.0]).is_err());
        assert!(UnitVector3::new(0.6, 0.8, 0.0).is_ok());
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = CMatrix::identity(2);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let not_psd = CMatrix::diag(&[c(1.5), c(-0.5)]);
        assert!(DensityMatrix::new(not_psd).is_err());
        let not_herm = CMatrix::from_rows(vec![vec![c(0.5), c(0.1)], vec![c(0.0), c(0.5)]]).unwrap();
        assert!(DensityMatrix::new(not_herm).is_err());
        assert!(DensityMatrix::qubit([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn singlet_examples() {
        let rho = singlet();
        assert!((&rho.matrix().clone() * rho.matrix()).max_abs_diff(rho.matrix()) < 1e-15);
        for k in 0..2 {
            for s in [pauli_x(), pauli_y(), pauli_z()] {
                assert!(rho.expectation(&local_op(&s, k, 2)).norm() < 1e-15);
            }
        }
        let p = diag_prob(&rho).unwrap();
        for (v, want) in p.values().iter().zip([0.0, 0.5, 0.5, 0.0]) {
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn diag_prob_examples() {
        let p = diag_prob(&DensityMatrix::maximally_mixed(1).unwrap()).unwrap();
        assert_eq!(p.values(), &[0.5, 0.5][..]);
        let up_up = DensityMatrix::product(&[&DensityMatrix::up(), &DensityMatrix::up()]).unwrap();
        assert_eq!(diag_prob(&up_up).unwrap().get(&[1, 1]), 1.0);
    }

    #[test]
    fn probability_table_marginal() {
        let t = ProbabilityTable::from_fn(3, |s| if s == [1, -1, 1] { 1.0 } else { 0.0 }).unwrap();
        let m = t.marginal(&[3, 1]).unwrap();
        assert_eq!(m.get(&[1, 1]), 1.0);
        assert_eq!(t.correlation(1, 2), -1.0);
        assert!(ProbabilityTable::new(2, vec![0.5, 0.5, 0.5, 0.0]).is_err());
    }
}
