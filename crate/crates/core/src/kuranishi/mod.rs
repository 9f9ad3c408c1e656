//! Deformation theory of the complex parallelisable nilmanifold attached to
//! a nilpotent complex Lie algebra: the invariant Dolbeault complex, exact
//! Hodge theory, the Kuranishi power-series recursion, the obstruction map,
//! and the unobstructedness decision.

mod forms;
mod hodge;
mod series;

pub use forms::{schouten, schouten_poly, Form, FormPoly, Monomial, WedgeContext};
pub use hodge::{dolbeault, ConjugatePair, HodgePackage, SparseCols};
pub use series::{
    decide_unobstructed, extend_generator_map, is_homomorphism, kuranishi_series,
    kuranishi_series_with, linear_map_form, mc_defect, mc_defect_constant, obstruction_map,
    reality_check, DecideConfig, Extension, KuranishiData, UnobstructedReport, Verdict, Witness,
    DEFAULT_ANALYTIC_CAP,
};
