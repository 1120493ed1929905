//! Paracontact models, axiom checkers and the structures they induce on
//! the tangent bundle.

mod checks;
mod model;
mod report;
mod tm;

pub use checks::{
    axiom_consistency, check_almost_paracomplex, check_almost_product, check_metric_compat, check_paracontact,
    check_r_paracontact, rank_entry, signature, Consistency, ALMOST_PRODUCT, COMPATIBLE, EQUAL_EIGENBUNDLES, ETA_IS_DUAL,
    ETA_KILLS_F, F_SQUARED, KILLS_XI, PAIRING, RANK, SIGNATURE, TRACE_FREE,
};
pub use model::{block_chart, block_model, lorentzian_model, standard_model, RParacontactModel, Sign};
pub use report::{CheckMode, ReportEntry, StructureReport};
pub use tm::{
    build_tm_structure, fc_square_identity, lift_interaction_report, square_defect, DefectAnalysis, LiftMode, SignProfile,
    TmLift,
};
