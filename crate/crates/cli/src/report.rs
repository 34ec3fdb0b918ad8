//! The machine-readable run report.

use gkverify::{TableEntry, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::ast::Location;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsMeta {
    pub t_max: u32,
    pub window: Option<(i32, i32)>,
    pub max_steps: Option<usize>,
    pub timeout_seconds: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    /// The `--field` override, or `None` when each ring keeps its declared
    /// field.
    pub field: Option<String>,
    pub seed: u64,
    pub bounds: BoundsMeta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Coefficients of the numerator over `(1 - t)^denominator_exponent`.
    pub numerator: Vec<Coefficient>,
    pub denominator_exponent: usize,
    pub dimension: i32,
    /// `dim_k M_d` for `d` from the lowest generator degree on.
    pub values: Vec<Coefficient>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub degree: i32,
    pub value: i64,
}

/// A graded module given by generator degrees and relation columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub generator_degrees: Vec<i32>,
    pub relations: Vec<Vec<String>>,
    pub hilbert: HilbertData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeData {
    pub generators: Vec<String>,
    pub witness: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageData {
    pub t: u32,
    pub length: Option<i64>,
    pub table: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationData {
    pub i: i64,
    pub j: i64,
    /// First stage of the constant tail, `None` when not stabilized.
    pub from_stage: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandOutput {
    Betti {
        module: String,
        table: Vec<TableEntry>,
        totals: Vec<u64>,
        truncated: bool,
    },
    Depth {
        module: String,
        value: usize,
    },
    Dim {
        module: String,
        value: i32,
    },
    Hilbert {
        module: String,
        hilbert: HilbertData,
    },
    Localcoh {
        module: String,
        nvars: usize,
        window: (i32, i32),
        table: Vec<TableEntry>,
    },
    Ext {
        first: String,
        second: String,
        index: usize,
        module: ModuleData,
    },
    Hom {
        first: String,
        second: String,
        module: ModuleData,
    },
    Canonical {
        ring: String,
        module: ModuleData,
    },
    Lyubeznik {
        ring: String,
        i_bound: usize,
        truncated: bool,
        table: Vec<TableEntry>,
    },
    Ass {
        module: String,
        primes: Vec<PrimeData>,
    },
    Formal {
        module: String,
        ideal: String,
        nvars: usize,
        window: (i32, i32),
        stages: Vec<StageData>,
        stabilization: Vec<StabilizationData>,
    },
    Verify {
        report: Box<VerificationReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementResult {
    pub location: Location,
    pub statement: String,
    pub output: CommandOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineFailure {
    pub location: Location,
    pub statement: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub results: Vec<StatementResult>,
    /// Set when execution stopped at a failing statement.
    pub error: Option<EngineFailure>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Whether any embedded verification run has a failing golden check.
    pub fn golden_failure(&self) -> bool {
        self.results.iter().any(|r| match &r.output {
            CommandOutput::Verify { report } => !report.goldens_pass(),
            _ => false,
        })
    }
}
