//! Result records and their JSON/CSV serialization.

use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One output row. Floats are written in shortest round-trip decimal form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub query: String,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub tail_estimate: Option<f64>,
    pub c_max: Option<i64>,
    pub elapsed_ms: Option<f64>,
    /// Exact value as a decimal string, when one exists.
    pub exact: Option<String>,
    pub note: Option<String>,
}

impl Record {
    pub fn new(query: impl Into<String>) -> Record {
        Record {
            query: query.into(),
            ..Record::default()
        }
    }

    pub fn complex(mut self, v: Complex64) -> Record {
        self.value_re = Some(v.re);
        self.value_im = Some(v.im);
        self
    }

    pub fn real(mut self, v: f64) -> Record {
        self.value_re = Some(v);
        self.value_im = Some(0.0);
        self
    }

    pub fn tail(mut self, t: f64) -> Record {
        self.tail_estimate = Some(t);
        self
    }

    pub fn c_max(mut self, c: i64) -> Record {
        self.c_max = Some(c);
        self
    }

    pub fn exact(mut self, e: impl ToString) -> Record {
        self.exact = Some(e.to_string());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Record {
        self.note = Some(n.into());
        self
    }
}

/// Writes records as a JSON array or as CSV with a header row.
pub fn emit(records: &[Record], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *out);
            w.write_record([
                "query",
                "value_re",
                "value_im",
                "tail_estimate",
                "c_max",
                "elapsed_ms",
                "exact",
                "note",
            ])?;
            for r in records {
                w.serialize(r)?;
            }
            w.flush()
        }
    }
}
