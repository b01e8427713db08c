//! Finite zero-sum games between a randomized online algorithm and an
//! adversarial input distribution.
//!
//! Rows of a [`RatioMatrix`] are deterministic online algorithms, columns are
//! inputs, and entries are online-to-offline cost ratios. The crate computes
//! optimal mixed strategies ([`solver`]), equalizing strategies
//! ([`equalizer`]), and checks lower-bound and optimality certificates
//! ([`verify`]) for them.

pub mod equalizer;
pub mod error;
pub mod game;
pub mod problems;
pub mod solver;
pub mod verify;

pub use error::{Error, Infeasibility, Result};
pub use game::{ratio_from_costs, CostModel, Diagnostics, MixedStrategy, RatioMatrix};
pub use solver::{best_response_col, best_response_row, fictitious_play, solve, Method, SolveResult, SolverConfig};
pub use verify::{certify_saddle, check_necessary, check_sufficient, gap, yao_lower_bound, Certificate, CertificateKind};
