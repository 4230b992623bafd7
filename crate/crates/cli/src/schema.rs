//! JSON schemas for input documents and reports.

use schemars::schema_for;

use crate::doc::Document;
use crate::report::Report;

/// File name and pretty-printed schema for each shipped schema.
#[must_use]
pub fn all() -> Vec<(&'static str, String)> {
    let pretty = |s| serde_json::to_string_pretty(&s).expect("schemas serialize") + "\n";
    vec![
        ("gcgeom-input-1.schema.json", pretty(schema_for!(Document))),
        ("gcgeom-report-1.schema.json", pretty(schema_for!(Report))),
    ]
}
