//! Characters of Dehn fillings: counts, enumeration, bases and reports.

pub mod characters;
pub mod counts;
pub mod report;
pub mod smooth;
pub mod trace;
pub mod verify;

pub use characters::{enumerate_characters, BallView, Character, CharacterKind, CharacterView};
pub use counts::{
    count_abelian, count_breakdown, fig8_d, nonabelian_formula, nonabelian_oracle, torus_tau,
    zeta_count, CountBreakdown, FormulaValue, Oracle,
};
pub use report::{dimension_report, dimension_report_with, Dimension, DimensionReport};
pub use smooth::{fig8_smoothness_witness, smoothness_witness};
pub use trace::{basis, eval_trace, Basis, BasisResult, Generator, TraceMonomial};
pub use verify::{verify_basis, VerificationReport};
