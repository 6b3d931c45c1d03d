//! The asymptotic iteration: coefficient recurrence, quantization
//! polynomial, root extraction and candidate tracking across iterations.

mod engine;
mod roots;
mod solver;

pub use engine::{aim_step, discriminant, AimIterate, AimIterations, IterationRecord};
pub use roots::{cluster_roots, poly_roots, RootCluster};
pub use solver::{
    solve, solve_spec, EigenvalueCandidate, ExpansionPoint, HistoryPoint, Precision, Solution, SolverConfig,
};
