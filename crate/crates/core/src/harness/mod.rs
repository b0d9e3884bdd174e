//! Experiment runner, bound checks, reports and the interactive oracle.

pub mod bounds;
mod config;
mod experiment;
mod interactive;
mod report;

pub use config::{ExperimentConfig, GraphSource, StrategyName, TargetSelection};
pub use experiment::{
    aggregate, check_compatible, record_bound, run_experiment, run_on, run_one, select_targets, success_probability,
    trial_seed, Aggregates, Instance, ReportMetadata, RunRecord, RunReport,
};
pub use interactive::{interactive_session, HumanOracle};
pub use report::{emit_report, render_report, report_csv, report_json, sig6, ReportFormat, CSV_HEADER};
