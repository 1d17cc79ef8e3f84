//! The deduction of the periodic inverse theorem from the ordinary one: cut
//! `f` into windows with a partition of unity, pick a window with large
//! interval norm, ask an inverse oracle for a correlating phase there, and
//! lift that phase to an N-periodic nilsequence.

mod deduce;
mod oracle;
mod partition;

pub use deduce::{
    deduce, select_window, DeduceConfig, Deduction, DeductionReport, LiftReport, LiftWitness, Mode,
    OracleReport, Status,
};
pub use oracle::{
    window_correlation, ExternalOracle, FourierOracle, InverseOracle, OracleClaim, OracleFactory,
    OracleOutcome, OracleParams, OracleRegistry, QuadraticGridOracle, DECLINE_BELOW,
};
pub use partition::{windowed_pieces, PartitionOfUnity, Window, WindowBump};
