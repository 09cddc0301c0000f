//! Transitions with displacement records, generators, irreducibility
//! machinery and the totally asymmetric restriction.

mod excess;
mod generator;
mod moves;
mod reach;
mod ta;

pub use excess::{excess, excess_step, is_basic, reduce_to_basic};
pub use generator::{
    build_generator, build_numeric, build_numeric_on, build_symbolic, build_symbolic_on, Generator, GeneratorMode,
    SparseGenerator,
};
pub(crate) use moves::outgoing_unchecked;
pub use moves::{
    apply_move, move_kind, outgoing_transitions, rate_var, replay, Direction, Displacement, MoveKind, Transition,
};
pub use reach::{
    bfs, reach_on, reachability_tau0, reverse_graph, strongly_connected, transition_graph, ReachDirection, ReachReport,
};
pub use ta::{
    allowed_under, in_omega_i, restrict_ta, right_of_condition, stirling2, ClosureCertificate, TaRestriction,
};
