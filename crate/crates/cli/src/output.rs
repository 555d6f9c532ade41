//! Result records and their JSON-lines / CSV encodings.

use std::io::Write;

use isoelastic_core::tensor3::{Mat3, SymTensor};
use isoelastic_core::verification::CheckReport;
use serde::{Deserialize, Serialize};

pub type Tensor = [f64; 9];

pub fn sym_row_major(t: &SymTensor) -> Tensor {
    t.to_mat().to_row_major()
}

pub fn mat_row_major(m: &Mat3) -> Tensor {
    m.to_row_major()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I3")]
    pub i3: f64,
    pub j: f64,
    pub k: f64,
    pub l: f64,
    pub y: f64,
    pub z: f64,
}

/// Evaluated quantities for one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    #[serde(rename = "V")]
    pub v: Tensor,
    #[serde(rename = "R")]
    pub r: Tensor,
    #[serde(rename = "L")]
    pub l: Tensor,
    pub invariants: Invariants,
    pub sigma: Tensor,
    pub tau: Tensor,
    pub mean_stress: f64,
    pub deviatoric: Tensor,
    /// `(f₁, f₂, f₃)` with `σ = f₁·id + f₂·L + f₃·L²`.
    pub coefficients: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    #[serde(rename = "F")]
    pub f: Tensor,
    #[serde(flatten)]
    pub result: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome {
    Ok(Box<Evaluation>),
    Err { error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub outcome: String,
    pub passed: bool,
    /// `null` when not finite.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub witness: Option<WitnessRecord>,
}

impl From<&CheckReport> for CheckRecord {
    fn from(r: &CheckReport) -> Self {
        CheckRecord {
            name: r.name.clone(),
            outcome: r.outcome.as_str().to_owned(),
            passed: r.passed(),
            residual: r.residual.is_finite().then_some(r.residual),
            tolerance: r.tolerance,
            seed: r.seed,
            witness: r.witness.as_ref().map(|w| WitnessRecord {
                label: w.label.clone(),
                values: w.values.clone(),
            }),
        }
    }
}

/// One line of the JSON-lines stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Line {
    Record(Record),
    Check(CheckRecord),
}

pub fn write_json_lines<W: Write>(
    out: &mut W,
    records: &[Record],
    checks: &[CheckRecord],
) -> std::io::Result<()> {
    let lines = records
        .iter()
        .cloned()
        .map(Line::Record)
        .chain(checks.iter().cloned().map(Line::Check));
    for line in lines {
        serde_json::to_writer(&mut *out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn tensor_header(prefix: &str) -> impl Iterator<Item = String> + '_ {
    (1..=3).flat_map(move |i| (1..=3).map(move |j| format!("{prefix}_{i}{j}")))
}

fn num(x: f64) -> String {
    // Shortest representation that parses back to the same bits.
    format!("{x:?}")
}

/// Two CSV tables separated by a blank line: one row per input, then one row
/// per check. Tensor components get one column each, row-major.
pub fn write_csv<W: Write>(out: W, records: &[Record], checks: &[CheckRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["index".to_owned()];
    for p in ["F", "V", "R", "L"] {
        header.extend(tensor_header(p));
    }
    header.extend(["I1", "I2", "I3", "j", "k", "l", "y", "z"].map(String::from));
    header.extend(tensor_header("sigma"));
    header.extend(tensor_header("tau"));
    header.push("mean_stress".to_owned());
    header.extend(tensor_header("dev"));
    header.extend(["f1", "f2", "f3", "error"].map(String::from));
    w.write_record(&header)?;

    let width = header.len();
    for r in records {
        let mut row = vec![r.index.to_string()];
        row.extend(r.f.iter().copied().map(num));
        match &r.result {
            Outcome::Ok(e) => {
                for t in [&e.v, &e.r, &e.l] {
                    row.extend(t.iter().copied().map(num));
                }
                let i = &e.invariants;
                row.extend([i.i1, i.i2, i.i3, i.j, i.k, i.l, i.y, i.z].map(num));
                row.extend(e.sigma.iter().copied().map(num));
                row.extend(e.tau.iter().copied().map(num));
                row.push(num(e.mean_stress));
                row.extend(e.deviatoric.iter().copied().map(num));
                row.extend(e.coefficients.map(num));
                row.push(String::new());
            }
            Outcome::Err { error } => {
                row.resize(width - 1, String::new());
                row.push(error.clone());
            }
        }
        w.write_record(&row)?;
    }

    let mut out = w.into_inner().map_err(|e| e.into_error())?;
    out.write_all(b"\n")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "check",
        "outcome",
        "passed",
        "residual",
        "tolerance",
        "seed",
        "witness_label",
        "witness_values",
    ])?;
    for c in checks {
        let (label, values) = match &c.witness {
            Some(wr) => (
                wr.label.clone(),
                wr.values
                    .iter()
                    .copied()
                    .map(num)
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            None => (String::new(), String::new()),
        };
        w.write_record([
            c.name.clone(),
            c.outcome.clone(),
            c.passed.to_string(),
            c.residual.map_or_else(|| "inf".to_owned(), num),
            num(c.tolerance),
            c.seed.map(|s| s.to_string()).unwrap_or_default(),
            label,
            values,
        ])?;
    }
    w.flush()?;
    Ok(())
}
