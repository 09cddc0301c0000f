//! Partition functions, densities and currents. Every closed form is paired
//! with an oracle computed from expectations over the exact stationary law.

mod oracle;
mod partition;
mod report;

pub use partition::{
    partition_function, partition_function_brute, partition_function_compositions, partition_function_special,
    PartitionTable, SpecialCase, SpecialCertificate, SpecialForm,
};
pub use report::{
    currents_exact, densities, identical_rates_current, observables, scott_russell_check, ClosedForms, Comparison,
    CurrentReport, DensityReport, Exact, ObservableRow, ObservablesReport, ScottRussellCertificate, ScottRussellRow,
};
