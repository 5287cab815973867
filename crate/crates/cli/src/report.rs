use formalis::Error;
use serde::Serialize;
use serde_json::{json, Value};

/// The JSON document printed by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub caveats: Vec<String>,
    /// Wall time in milliseconds; `null` under `--no-timing`.
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Process exit status for a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Precondition = 3,
    Resource = 4,
}

/// Failure of a subcommand, before it is rendered into a report.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// Unreadable or malformed input outside the polynomial grammar.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit(&self) -> Exit {
        match self {
            Failure::Input(_) => Exit::Parse,
            Failure::Core(Error::Parse(_)) => Exit::Parse,
            Failure::Core(Error::Precondition(_) | Error::RingMismatch(_)) => Exit::Precondition,
            Failure::Core(Error::ResourceCap { .. } | Error::Overflow) => Exit::Resource,
            Failure::Core(Error::Internal(_)) => Exit::Internal,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Failure::Input(msg) => json!({"kind": "input", "message": msg}),
            Failure::Core(Error::Parse(p)) => json!({"kind": "parse", "message": p.message, "position": p.pos}),
            Failure::Core(e @ (Error::Precondition(_) | Error::RingMismatch(_))) => {
                json!({"kind": "precondition", "message": e.to_string()})
            }
            Failure::Core(e @ (Error::ResourceCap { .. } | Error::Overflow)) => {
                json!({"kind": "resource", "message": e.to_string()})
            }
            Failure::Core(e) => json!({"kind": "internal", "message": e.to_string()}),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}
