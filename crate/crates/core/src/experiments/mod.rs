//! Corpora, searches, sweeps, random experiments, audits and the CLI.

pub mod audit;
pub mod cli;
pub mod corpus;
pub mod random;
pub mod report;
pub mod search;

pub use audit::full_copy_audit;
pub use cli::run_cli;
pub use corpus::{connected_graphs_on, corpus_connected_graphs, random_graphs};
pub use random::{process_hitting_time, random_regular_experiment, random_regular_graph};
pub use report::{ExperimentReport, Format};
pub use search::{search_question_1prime, sweep_question_2};
