//! File formats, report rendering, the small-order census and the
//! verification suites behind the `geodex` command.

pub mod census;
pub mod formats;
pub mod report;
pub mod verify;

use geodex_core::analyze::AnalyzeError;
use geodex_core::autsearch::{SearchError, SearchOptions, DEFAULT_NODE_BUDGET};
use geodex_core::families::FamilyError;
use geodex_core::graph::GraphError;
use geodex_core::grp::GroupError;
use geodex_core::perm::PermError;

pub use formats::{Format, FormatError};

/// Environment variable overriding the search node budget.
pub const NODE_BUDGET_VAR: &str = "GEODEX_NODE_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Search options with the node budget taken from `value` when it parses.
pub fn search_options(value: Option<&str>) -> Result<SearchOptions, CliError> {
    let node_budget = match value {
        None => DEFAULT_NODE_BUDGET,
        Some(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| CliError::Usage(format!("{NODE_BUDGET_VAR} must be a positive integer, got {v:?}")))?,
    };
    Ok(SearchOptions { node_budget })
}

pub fn search_options_from_env() -> Result<SearchOptions, CliError> {
    search_options(std::env::var(NODE_BUDGET_VAR).ok().as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_parsing() {
        assert_eq!(search_options(None).unwrap().node_budget, DEFAULT_NODE_BUDGET);
        assert_eq!(search_options(Some(" 500 ")).unwrap().node_budget, 500);
        assert!(matches!(search_options(Some("0")), Err(CliError::Usage(_))));
        assert!(matches!(search_options(Some("many")), Err(CliError::Usage(_))));
    }
}
