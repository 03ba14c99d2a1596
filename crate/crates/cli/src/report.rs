use kzcover::cocycle::LyapunovEstimate;
use kzcover::cyclic::{CoverAnalysis, CoverParams};
use kzcover::search::SearchReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    pub params_echo: serde_json::Value,
    /// RFC 3339, UTC. The only field that differs between identical runs.
    pub timestamp: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Analysis(CoverAnalysis),
    Search(SearchReport),
    Flat(FlatReport),
    Lyapunov(LyapunovReport),
    Spectrum(SpectrumReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatReport {
    pub params: CoverParams,
    pub genus: i64,
    pub cells: usize,
    pub connected: bool,
    pub orientable: bool,
    pub quadratic_orders: Vec<i64>,
    pub abelian_orders: Option<Vec<i64>>,
    pub origami: Option<OrigamiSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiSummary {
    pub squares: usize,
    pub genus: usize,
    pub stratum: Vec<usize>,
    pub deck_ok: bool,
    /// The origami in its text format.
    pub text: String,
    pub file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovReport {
    pub source: String,
    pub genus: usize,
    pub squares: usize,
    pub estimate: LyapunovEstimate,
    pub csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kz: Vec<f64>,
    pub sigma: usize,
    pub values: Vec<f64>,
}

impl ReportEnvelope {
    pub fn new(command: &str, params_echo: serde_json::Value, payload: Payload) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params_echo,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            payload,
        }
    }
}
