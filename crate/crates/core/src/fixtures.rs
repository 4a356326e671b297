//! The bundled example instances (see `fixtures/` at the workspace root).

use crate::document::{InstanceDocument, ParsedDocument};

pub const FIG1_JSON: &str = include_str!("../../../fixtures/fig1.json");
pub const FIG3_JSON: &str = include_str!("../../../fixtures/fig3.json");
pub const FIG3_CRITERIA_JSON: &str = include_str!("../../../fixtures/fig3_criteria.json");

fn load(text: &str) -> ParsedDocument {
    InstanceDocument::from_json(text)
        .and_then(|doc| Ok(doc.resolve()?))
        .expect("bundled fixture is valid")
}

/// Triangle `1-2-3` with `a=(1,2)`, `b=(2,3)`, `c=(1,3)` and `a ≻ b ≻ c`.
pub fn fig1() -> ParsedDocument {
    load(FIG1_JSON)
}

/// Four vertices, five edges, partial preferences with two indifferences.
pub fn fig3() -> ParsedDocument {
    load(FIG3_JSON)
}

/// The four-vertex graph with bicriteria utilities and no explicit preferences.
pub fn fig3_criteria() -> ParsedDocument {
    load(FIG3_CRITERIA_JSON)
}
