//! Classical models whose pair data break Boole-type bounds without any
//! quantum ingredient.

pub mod allergy;
pub mod factorizable;

pub use allergy::{AllergyScenario, Birthplace, DaySchedule};
pub use factorizable::{
    analytic_correlation, common_lambda_obstruction, malus_chi2, model_inequality_sweep,
    sample_pair, sample_pair_with_phi, FactorizableModel, MalusTest, MuKind, SweepSummary,
    SweepWitness,
};
