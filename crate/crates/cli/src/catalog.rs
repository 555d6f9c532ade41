//! Built-in model listing.

use isoelastic_core::constitutive::builtins::{catalog, CatalogEntry, ModelKind};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogLine {
    pub name: &'static str,
    pub kind: &'static str,
    pub coordinates: &'static str,
    pub parameters: &'static [&'static str],
    pub formula: &'static str,
    pub decomposable: bool,
}

impl From<&CatalogEntry> for CatalogLine {
    fn from(e: &CatalogEntry) -> Self {
        CatalogLine {
            name: e.name,
            kind: match e.kind {
                ModelKind::Energy => "energy",
                ModelKind::Law => "law",
            },
            coordinates: e.coordinates,
            parameters: e.parameters,
            formula: e.provenance,
            decomposable: e.decomposable,
        }
    }
}

pub fn entries() -> Vec<CatalogLine> {
    catalog().iter().map(CatalogLine::from).collect()
}

/// One aligned line per model.
pub fn render_text() -> String {
    let entries = entries();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let params: Vec<String> = entries
        .iter()
        .map(|e| format!("[{}]", e.parameters.join(", ")))
        .collect();
    let pwidth = params.iter().map(|p| p.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (e, p) in entries.iter().zip(&params) {
        out.push_str(&format!(
            "{:width$}  {:6}  {:4}  {:pwidth$}  {}\n",
            e.name, e.kind, e.coordinates, p, e.formula,
        ));
    }
    out
}

pub fn render_json() -> String {
    let mut out = String::new();
    for e in entries() {
        out.push_str(&serde_json::to_string(&e).expect("catalog entries serialize"));
        out.push('\n');
    }
    out
}
