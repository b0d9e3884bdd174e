//! A full experiment from a TOML config, written as JSON and CSV reports.
//!
//!     cargo run --release --example experiment_report [out-dir]

use graphsearch::harness::{emit_report, run_experiment, ExperimentConfig, ReportFormat};

const CONFIG: &str = r#"
strategy = "deterministic"
correct_policy = "adversarial-max-survivor"
targets = { sample = 64 }
seed = 7

[graph]
family = "grid"
width = 16
height = 16
"#;

fn main() -> graphsearch::Result<()> {
    let out_dir = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let config = ExperimentConfig::from_toml(CONFIG)?;
    let report = run_experiment(&config)?;
    let a = &report.aggregates;
    println!(
        "{} on {}: {} runs, max {} (bound {}), mean {:.2}, p90 {}, passed {}",
        report.strategy,
        report.graph_id,
        a.runs,
        a.max_queries,
        report.records[0].bound,
        a.mean_queries,
        a.p90_queries,
        report.passed()
    );
    let json = out_dir.join("grid16.json");
    let csv = out_dir.join("grid16.csv");
    emit_report(&report, ReportFormat::Json, &json)?;
    emit_report(&report, ReportFormat::Csv, &csv)?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(())
}
