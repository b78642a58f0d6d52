//! Commutators of the three pair observables and the uncertainty
//! relations they imply.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{local_op, pauli_dot, sigma_dot, DensityMatrix, UnitVector3};
use crate::error::{Error, Result};
use crate::report::TOL;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorEntry {
    pub label: String,
    pub max_entry_norm: f64,
    pub operator_norm: f64,
    /// Largest entry of the difference from the closed form.
    pub closed_form_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyProduct {
    pub label: String,
    /// `(1 - ⟨X⟩²)(1 - ⟨Y⟩²)`.
    pub lhs: f64,
    /// `|⟨[X,Y]⟩|² / 4` from the state.
    pub rhs: f64,
    /// Same quantity from the closed-form commutator.
    pub rhs_closed: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub commutators: Vec<CommutatorEntry>,
    pub uncertainty: Vec<UncertaintyProduct>,
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn scale3(k: f64, a: [f64; 3]) -> [f64; 3] {
    [k * a[0], k * a[1], k * a[2]]
}

/// Commutators of `σ₁·a σ₂·b`, `σ₁·a σ₂·c` and `σ₁·b σ₂·c`, their closed
/// forms `2i (v₁·σ₁ + v₂·σ₂)`, and the uncertainty products for `rho`.
pub fn commutator_diagnostics(
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
    rho: &DensityMatrix,
) -> Result<CommutatorReport> {
    if rho.n() != 2 {
        return Err(Error::InvalidState(format!("expected two spins, got {}", rho.n())));
    }
    let pair = |u: &UnitVector3, v: &UnitVector3| &local_op(&pauli_dot(u), 0, 2) * &local_op(&pauli_dot(v), 1, 2);
    let x_ab = pair(a, b);
    let x_ac = pair(a, c);
    let x_bc = pair(b, c);

    let axb = a.cross(b);
    let bxc = b.cross(c);
    let zero = [0.0; 3];
    // (v1, v2) with [X, Y] = 2i (v1·σ₁ + v2·σ₂).
    let cases = [
        ("[AB, AC]", &x_ab, &x_ac, zero, bxc),
        ("[AB, BC]", &x_ab, &x_bc, scale3(b.dot(c), axb), scale3(a.dot(b), bxc)),
        ("[AC, BC]", &x_ac, &x_bc, axb, zero),
    ];

    let s1 = [super::pauli_x(), super::pauli_y(), super::pauli_z()]
        .map(|s| rho.expectation(&local_op(&s, 0, 2)).re);
    let s2 = [super::pauli_x(), super::pauli_y(), super::pauli_z()]
        .map(|s| rho.expectation(&local_op(&s, 1, 2)).re);

    let mut commutators = Vec::with_capacity(3);
    let mut uncertainty = Vec::with_capacity(3);
    for (label, x, y, v1, v2) in cases {
        let comm = x.commutator(y);
        let closed = (&local_op(&sigma_dot(v1), 0, 2) + &local_op(&sigma_dot(v2), 1, 2))
            .scale(Complex64::new(0.0, 2.0));
        commutators.push(CommutatorEntry {
            label: label.to_string(),
            max_entry_norm: comm.max_abs(),
            operator_norm: comm.operator_norm(),
            closed_form_deviation: comm.max_abs_diff(&closed),
        });
        let ex = rho.expectation(x).re;
        let ey = rho.expectation(y).re;
        let lhs = (1.0 - ex * ex) * (1.0 - ey * ey);
        let rhs = rho.expectation(&comm).norm_sqr() / 4.0;
        let rhs_closed = (dot3(v1, s1) + dot3(v2, s2)).powi(2);
        uncertainty.push(UncertaintyProduct {
            label: label.to_string(),
            lhs,
            rhs,
            rhs_closed,
            satisfied: lhs >= rhs - TOL,
        });
    }
    Ok(CommutatorReport {
        commutators,
        uncertainty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::singlet;

    #[test]
    fn parallel_b_c() {
        let a = UnitVector3::normalized([0.3, 0.2, 0.9]).unwrap();
        let b = UnitVector3::normalized([0.5, -0.5, 0.1]).unwrap();
        let r = commutator_diagnostics(&a, &b, &b, &singlet()).unwrap();
        assert!(r.commutators[0].max_entry_norm < 1e-14);
    }

    #[test]
    fn orthonormal_settings() {
        let r = commutator_diagnostics(&UnitVector3::ex(), &UnitVector3::ey(), &UnitVector3::ez(), &singlet()).unwrap();
        assert!((r.commutators[0].max_entry_norm - 2.0).abs() < 1e-14);
        assert!((r.commutators[0].operator_norm - 2.0).abs() < 1e-14);
        for c in &r.commutators {
            assert!(c.closed_form_deviation < 1e-14, "{c:?}");
        }
    }

    #[test]
    fn singlet_uncertainty_collapses() {
        let a = UnitVector3::normalized([0.3, 0.2, 0.9]).unwrap();
        let b = UnitVector3::normalized([0.5, -0.5, 0.1]).unwrap();
        let c = UnitVector3::normalized([-0.1, 0.4, 0.4]).unwrap();
        let r = commutator_diagnostics(&a, &b, &c, &singlet()).unwrap();
        for u in &r.uncertainty {
            assert!(u.rhs.abs() < 1e-15 && u.rhs_closed.abs() < 1e-15);
            assert!(u.lhs >= 0.0 && u.satisfied);
        }
        for cm in &r.commutators {
            assert!(cm.closed_form_deviation < 1e-14);
            assert!(cm.operator_norm > 0.1);
        }
    }

    #[test]
    fn product_state_uncertainty() {
        let up = DensityMatrix::qubit([0.3, 0.4, 0.5]).unwrap();
        let dn = DensityMatrix::qubit([-0.2, 0.1, 0.6]).unwrap();
        let rho = DensityMatrix::product(&[&up, &dn]).unwrap();
        let a = UnitVector3::normalized([0.3, 0.2, 0.9]).unwrap();
        let b = UnitVector3::normalized([0.5, -0.5, 0.1]).unwrap();
        let c = UnitVector3::normalized([-0.1, 0.4, 0.4]).unwrap();
        let r = commutator_diagnostics(&a, &b, &c, &rho).unwrap();
        for u in &r.uncertainty {
            assert!((u.rhs - u.rhs_closed).abs() < 1e-14);
            assert!(u.satisfied);
        }
    }
}
