//! P-time event graphs: the net model, its characteristic matrices, and
//! consistency checks under loose and strict initial conditions.

mod characteristic;
mod consistency;
mod net;
mod validate;
mod witness;

pub use characteristic::{characteristic_matrices, lcr_matrices, CharacteristicMatrices};
pub use consistency::{
    check, check_loose, check_matrices, check_strict, static_graph, strict_verdict, Certificate,
    ConsistencyReport, Semantics, StrictKind, StrictOutcome, StrictVerdict,
};
pub use net::{Interval, Place, Pteg};
pub use validate::{validate_trajectory, Trajectory, Violation, ViolationKind};
pub use witness::{prefix_matrix, witness_prefix};
