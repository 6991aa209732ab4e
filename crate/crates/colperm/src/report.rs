//! Serialized forms of counts and verification reports.

use colperm_core::CountReport;
use serde::{Deserialize, Serialize};

/// Output format shared by the subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

/// JSON shape of a [`CountReport`]. Big integers travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReportJson {
    pub n: u32,
    pub r: u32,
    pub tag: String,
    pub count: String,
    pub states_visited: String,
}

impl From<&CountReport> for CountReportJson {
    fn from(rep: &CountReport) -> Self {
        CountReportJson {
            n: rep.n,
            r: rep.r,
            tag: rep.pattern_set_tag.clone(),
            count: rep.count.to_decimal(),
            states_visited: rep.states_visited.to_decimal(),
        }
    }
}

pub fn count_report_json(rep: &CountReport) -> String {
    serde_json::to_string(&CountReportJson::from(rep)).expect("plain struct serializes")
}

/// Quotes a CSV field when it contains a separator or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
