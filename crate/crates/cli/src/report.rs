//! JSON report envelope shared by all subcommands.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use stgr::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub delta: u32,
    pub radius: u32,
    pub diameter: u32,
}

impl InstanceSummary {
    pub fn of(g: &Graph, delta: u32) -> Self {
        let metrics = g.distance_matrix().metrics();
        Self { n: g.n(), m: g.m(), delta, radius: metrics.radius, diameter: metrics.diameter }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    /// Arguments after the program name.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

impl RunReport {
    pub fn render(&self) -> Result<String, serde_json::Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Named wall-clock phases, recorded only when enabled.
#[derive(Debug, Default)]
pub struct Timings {
    enabled: bool,
    phases: BTreeMap<&'static str, f64>,
}

impl Timings {
    pub fn new(enabled: bool) -> Self {
        Self { enabled, phases: BTreeMap::new() }
    }

    pub fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.phases.entry(phase).or_default() += start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }

    pub fn finish(self) -> Option<BTreeMap<&'static str, f64>> {
        self.enabled.then_some(self.phases)
    }
}
