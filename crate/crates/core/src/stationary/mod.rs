//! Monomial weights, exact stationary distributions, balance checks and the
//! lumping onto the one-dimensional process.

mod balance;
mod lumping;
mod solver;
mod table;
mod weights;

pub use balance::{verify_balance_numeric, verify_balance_on, verify_balance_symbolic, BalanceReport};
pub use lumping::{
    evans_distribution, evans_weight, lump_and_evans, lumped_marginals_match, LumpingReport, OneDimConfig,
};
pub use solver::{null_vector, null_vector_dense, NullVector, MAX_PRIMES};
pub use table::{exact_stationary, proportional, symbolic_table, StationaryTable, TableValues};
pub use weights::{box_weight, config_weight, w_box, weight_identities, IdentityReport};
