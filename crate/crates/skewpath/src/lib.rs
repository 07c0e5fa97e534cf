//! Exact enumeration and analysis of skew Dyck paths with two kinds of
//! down-steps.
//!
//! Paths are built from an up-step U = (1,1) and three down-steps
//! (1,-1): green, blue, and red, the red one rendering a left step. A red
//! step may not touch an up-step on either side, and paths never dip
//! below their starting level. Closed paths of semilength n are counted
//! by 1, 2, 10, 58, 370, 2514, ...
//!
//! The crate provides:
//!
//! - [`path`]: the step alphabet, a linear-scan recognizer and the
//!   exhaustive enumerator every identity is tested against;
//! - [`series`]: truncated power series, polynomials and rational
//!   functions over exact big rationals;
//! - [`closed_form`]: the counting series, weighted-trinomial coefficient
//!   extraction and the leading-order coefficient asymptotics;
//! - [`height`]: bounded-height counting, exact height distributions and
//!   the average-height asymptotics;
//! - [`level`]: prefix counts by end level, kernel closed forms,
//!   tridiagonal determinants, bounded-level truncations and their
//!   continued fraction;
//! - [`sampler`]: exact-count uniform random generation;
//! - [`oeis`]: sequence cross-checks against OEIS b-files, with a strict
//!   offline mode;
//! - [`checks`]: the registry of named identity checks.

pub mod checks;
pub mod closed_form;
pub mod height;
pub mod level;
pub mod oeis;
pub mod path;
pub mod sampler;
pub mod series;

pub use checks::{run_all, run_check, CheckReport, CHECK_NAMES};
pub use closed_form::{s_coefficient, s_series, weighted_trinomial};
pub use height::{average_height_exact, height_distribution, sh_ratfn, BoundedHeightGf};
pub use level::{level_closed, level_dp, LevelRow, LevelTable};
pub use path::{
    parse_path, validate_path, Enumerator, HeightDistribution, Path, PathError, PrefixClass, Step,
    DEFAULT_BRUTE_LIMIT,
};
pub use sampler::CountTable;
pub use series::{Polynomial, Rat, RationalFn, Series, SeriesError};
