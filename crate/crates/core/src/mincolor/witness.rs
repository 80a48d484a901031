use serde::{Deserialize, Serialize};

use super::Witness;
use crate::coloring::{check_relation, ArcColoring};
use crate::error::{Error, Result};
use crate::pdcode::{parse_json, Diagram, MoveTrace, PdJson};

/// Self-contained certificate: start diagram, moves, end diagram and a
/// coloring of the end diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub p: u64,
    pub start: PdJson,
    pub trace: MoveTrace,
    pub end: PdJson,
    pub coloring: Vec<u64>,
    pub palette: Vec<u64>,
}

impl WitnessBundle {
    pub fn from_witness(w: &Witness) -> Self {
        WitnessBundle {
            p: w.p,
            start: w.start.to_json(),
            trace: w.trace.clone(),
            end: w.end.to_json(),
            coloring: w.coloring.values.clone(),
            palette: w.coloring.palette().0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(Error::from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason")]
pub enum WitnessFailure {
    BadDiagram { which: String, error: String },
    ReplayMismatch { step: usize, detail: String },
    EndMismatch,
    BadColoring { detail: String },
    TrivialColoring,
    PaletteMismatch { claimed: Vec<u64>, actual: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub ok: bool,
    pub steps: usize,
    pub palette_size: Option<usize>,
    pub failure: Option<WitnessFailure>,
}

impl WitnessReport {
    fn fail(steps: usize, f: WitnessFailure) -> Self {
        WitnessReport {
            ok: false,
            steps,
            palette_size: None,
            failure: Some(f),
        }
    }
}

/// Replays `trace` from `start`, requires bit-exact arrival at `end` and
/// checks `c` on `end`.
pub fn verify_witness(start: &Diagram, trace: &MoveTrace, end: &Diagram, c: &ArcColoring) -> WitnessReport {
    let steps = trace.len();
    let mut d = start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        match d.apply_move(&step.spec) {
            Ok((next, got)) => {
                if got.relabel != step.relabel {
                    return WitnessReport::fail(
                        steps,
                        WitnessFailure::ReplayMismatch {
                            step: i,
                            detail: "relabeling differs from the record".into(),
                        },
                    );
                }
                d = next;
            }
            Err(e) => {
                return WitnessReport::fail(
                    steps,
                    WitnessFailure::ReplayMismatch {
                        step: i,
                        detail: e.to_string(),
                    },
                )
            }
        }
    }
    if d != *end {
        return WitnessReport::fail(steps, WitnessFailure::EndMismatch);
    }
    if let Err(e) = check_relation(end, c.p, &c.values) {
        return WitnessReport::fail(steps, WitnessFailure::BadColoring { detail: e.to_string() });
    }
    if c.is_trivial() {
        return WitnessReport::fail(steps, WitnessFailure::TrivialColoring);
    }
    WitnessReport {
        ok: true,
        steps,
        palette_size: Some(c.palette().len()),
        failure: None,
    }
}

pub fn verify_bundle(b: &WitnessBundle) -> WitnessReport {
    let steps = b.trace.len();
    let parse = |which: &str, pd: &PdJson| {
        let text = serde_json::to_string(pd).expect("pd serializes");
        parse_json(&text).map_err(|e| {
            WitnessReport::fail(
                steps,
                WitnessFailure::BadDiagram {
                    which: which.into(),
                    error: e.to_string(),
                },
            )
        })
    };
    let start = match parse("start", &b.start) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let end = match parse("end", &b.end) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let c = ArcColoring {
        p: b.p,
        values: b.coloring.clone(),
    };
    let report = verify_witness(&start, &b.trace, &end, &c);
    if report.ok && c.palette().0 != b.palette {
        return WitnessReport::fail(
            steps,
            WitnessFailure::PaletteMismatch {
                claimed: b.palette.clone(),
                actual: c.palette().0,
            },
        );
    }
    report
}
