use apolar_core::ArithmeticMode;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub trials: usize,
    pub arithmetic_mode: ArithmeticMode,
    pub certified: bool,
}

/// JSON form of every command's output. Object keys serialize in sorted
/// order, so identical runs give identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Provenance,
}

/// A finished command: the envelope plus its plain-text rendering.
#[derive(Debug)]
pub struct Report {
    pub envelope: ReportEnvelope,
    pub text: String,
    /// Set when an assertion inside the command failed (exit code 1).
    pub failed: bool,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: Value,
        result: Value,
        provenance: Provenance,
        text: String,
    ) -> Self {
        Self {
            envelope: ReportEnvelope {
                command: command.to_string(),
                inputs,
                result,
                provenance,
            },
            text,
            failed: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.envelope).expect("envelope serializes")
    }
}
