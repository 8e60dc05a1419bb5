//! Proof chains assembled into certificates, and the command-line front end.

mod certificate;
pub mod cli;
mod commands;
mod points;

pub use certificate::{Certificate, Environment, Evidence, FieldChoice, Step, Verdict, SCHEMA};
pub use commands::{
    cmd_betti, cmd_points, cmd_rank14, cmd_rank15, cmd_threshold, cmd_upper_bounds, cmd_verify,
    compare_strand, form_betti_table, form_strand, rank14_certificate, BettiOutput, BettiSource,
    CertifyOptions, LAMBDA_SAMPLES, REFUTED_DEGREE,
};
pub use points::{points_betti_table, random_points, PointsRun, POINT_SPACE_DIM};
