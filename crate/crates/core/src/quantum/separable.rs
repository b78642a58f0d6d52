//! Mixtures of product states of two spins and the pair inequalities
//! they obey when each component has matching single-spin expectations.

use num_complex::Complex64;
use super::{local_op, pauli_dot, CMatrix, DensityMatrix, UnitVector3};
use crate::error::{Error, Result};
use crate::report::{Clause, InequalityReport, TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableComponent {
    pub weight: f64,
    pub left: DensityMatrix,
    pub right: DensityMatrix,
}

/// `Σ_λ w_λ ρ_left(λ) ⊗ ρ_right(λ)`.
pub fn separable_mixture(components: &[SeparableComponent]) -> Result<DensityMatrix> {
    if components.is_empty() {
        return Err(Error::InvalidArgument("no components".into()));
    }
    let mut total = 0.0;
    let mut m = CMatrix::zeros(4);
    for (k, c) in components.iter().enumerate() {
        if !(c.weight >= 0.0) || !c.weight.is_finite() {
            return Err(Error::InvalidArgument(format!("component {k} has weight {}", c.weight)));
        }
        if c.left.n() != 1 || c.right.n() != 1 {
            return Err(Error::InvalidState(format!("component {k} is not a pair of single spins")));
        }
        total += c.weight;
        let prod = c.left.matrix().kron(c.right.matrix());
        m = &m + &prod.scale(Complex64::new(c.weight, 0.0));
    }
    if (total - 1.0).abs() > TOL {
        return Err(Error::InvalidArgument(format!("weights sum to {total}, not 1")));
    }
    DensityMatrix::new(m)
}

fn corr(rho: &DensityMatrix, u: &UnitVector3, v: &UnitVector3) -> f64 {
    let op = &local_op(&pauli_dot(u), 0, 2) * &local_op(&pauli_dot(v), 1, 2);
    rho.expectation(&op).re
}

/// `|⟨X₁Y₂⟩ ± ⟨X₁Z₂⟩| <= 1 ± ⟨Y₁Z₂⟩` for `(X,Y,Z)` the cyclic orders of
/// `(A,B,C)`, evaluated on any two-spin state.
pub fn pair_clauses(
    rho: &DensityMatrix,
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> Result<InequalityReport> {
    if rho.n() != 2 {
        return Err(Error::InvalidState(format!("expected two spins, got {}", rho.n())));
    }
    let named = [(a, 'A'), (b, 'B'), (c, 'C')];
    let mut clauses = Vec::with_capacity(6);
    for k in 0..3 {
        let (x, xn) = named[k];
        let (y, yn) = named[(k + 1) % 3];
        let (z, zn) = named[(k + 2) % 3];
        let (xy, xz, yz) = (corr(rho, x, y), corr(rho, x, z), corr(rho, y, z));
        clauses.push(Clause::le(
            format!("|<{xn}1 {yn}2> + <{xn}1 {zn}2>| <= 1 + <{yn}1 {zn}2>"),
            (xy + xz).abs(),
            1.0 + yz,
        ));
        clauses.push(Clause::le(
            format!("|<{xn}1 {yn}2> - <{xn}1 {zn}2>| <= 1 - <{yn}1 {zn}2>"),
            (xy - xz).abs(),
            1.0 - yz,
        ));
    }
    Ok(InequalityReport::new("separable", clauses))
}

/// Pair clauses for a separable mixture whose components give equal left
/// and right expectations of every observable involved.
pub fn separable_bound_check(
    components: &[SeparableComponent],
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> Result<InequalityReport> {
    for (k, comp) in components.iter().enumerate() {
        for (u, name) in [(a, 'A'), (b, 'B'), (c, 'C')] {
            let op = pauli_dot(u);
            let l = comp.left.expectation(&op).re;
            let r = comp.right.expectation(&op).re;
            if (l - r).abs() > TOL {
                return Err(Error::Precondition(format!(
                    "component {k}: <{name}1> = {l} differs from <{name}2> = {r}"
                )));
            }
        }
    }
    let rho = separable_mixture(components)?;
    pair_clauses(&rho, a, b, c)
}
