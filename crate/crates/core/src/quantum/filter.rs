//! Sequential filtering of a single spin through Stern-Gerlach stages.

use super::{chain_trace, projector, DensityMatrix, ProbabilityTable, UnitVector3};
use crate::error::{Error, Result};

fn require_single(rho: &DensityMatrix) -> Result<()> {
    if rho.n() != 1 {
        return Err(Error::InvalidState(format!(
            "filtering needs a single spin, got {}",
            rho.n()
        )));
    }
    Ok(())
}

/// `P(S1, S2) = Tr ρ M(S1,a) M(S2,b) M(S1,a)`.
pub fn filter_prob2(rho: &DensityMatrix, a: &UnitVector3, b: &UnitVector3) -> Result<ProbabilityTable> {
    require_single(rho)?;
    ProbabilityTable::from_fn(2, |s| {
        let ma = projector(s[0], a);
        let mb = projector(s[1], b);
        chain_trace(rho, &[&ma, &mb, &ma])
    })
}

/// `(1 + S1 x·a + S2 (x·a)(a·b) + S1 S2 a·b) / 4` for `ρ = (1 + σ·x) / 2`.
pub fn filter_prob2_closed(x: [f64; 3], a: &UnitVector3, b: &UnitVector3) -> Result<ProbabilityTable> {
    let xa = x[0] * a.x + x[1] * a.y + x[2] * a.z;
    let ab = a.dot(b);
    ProbabilityTable::from_fn(2, |s| {
        let (s1, s2) = (s[0] as f64, s[1] as f64);
        (1.0 + s1 * xa + s2 * xa * ab + s1 * s2 * ab) / 4.0
    })
}

/// `P(S1,S2,S3) = Tr ρ M(S1,a) M(S2,b) M(S3,c) M(S2,b) M(S1,a)`.
pub fn filter_prob3(
    rho: &DensityMatrix,
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> Result<ProbabilityTable> {
    require_single(rho)?;
    ProbabilityTable::from_fn(3, |s| {
        let ma = projector(s[0], a);
        let mb = projector(s[1], b);
        let mc = projector(s[2], c);
        chain_trace(rho, &[&ma, &mb, &mc, &mb, &ma])
    })
}

/// Closed form of [`filter_prob3`] for `ρ = (1 + σ·x) / 2`.
pub fn filter_prob3_closed(
    x: [f64; 3],
    a: &UnitVector3,
    b: &UnitVector3,
    c: &UnitVector3,
) -> Result<ProbabilityTable> {
    let xa = x[0] * a.x + x[1] * a.y + x[2] * a.z;
    let ab = a.dot(b);
    let bc = b.dot(c);
    ProbabilityTable::from_fn(3, |s| {
        let (s1, s2, s3) = (s[0] as f64, s[1] as f64, s[2] as f64);
        (1.0 + s1 * xa
            + s2 * xa * ab
            + s3 * xa * ab * bc
            + s1 * s2 * ab
            + s1 * s3 * ab * bc
            + s2 * s3 * bc
            + s1 * s2 * s3 * xa * bc)
            / 8.0
    })
}
