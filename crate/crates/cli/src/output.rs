use serde::Serialize;

use crate::{CliError, Format};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub summary: String,
}

/// Provenance block at the top of every report: the resolved value of every option.
#[derive(Debug, Clone, Serialize)]
pub struct Header<C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub verb: &'static str,
    pub inputs: Vec<String>,
    pub settings: C,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub header: Header<C>,
    pub verdict: Verdict,
    pub result: R,
}

pub(crate) struct Rendered {
    pub text: String,
    pub verdict: Verdict,
}

pub(crate) struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Writes `report` as pretty JSON, or `table` as CSV preceded by `#`-prefixed header lines.
pub(crate) fn render<C: Serialize, R: Serialize>(
    report: &Report<C, R>,
    table: impl FnOnce() -> Table,
    format: Format,
) -> Result<Rendered, CliError> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            let header = serde_json::to_string(&report.header).expect("header serializes");
            s.push_str(&format!("# {header}\n"));
            s.push_str(&format!(
                "# verdict: {} ({})\n",
                if report.verdict.passed {
                    "pass"
                } else {
                    "fail"
                },
                report.verdict.summary
            ));
            let t = table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory csv");
            for row in &t.rows {
                w.write_record(row).expect("in-memory csv");
            }
            s.push_str(&String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8"));
            s
        }
    };
    Ok(Rendered {
        text,
        verdict: report.verdict.clone(),
    })
}
