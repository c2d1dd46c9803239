//! Report types and their JSON / CSV encodings.
//!
//! Field order is the key order on the wire; keep it stable and bump
//! [`SCHEMA`] when the layout changes.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "densekit.report/1";

/// CSV header for convergence rows.
pub const CSV_HEADER: &str = "iter,density,accuracy,dual_bound,ms";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: String,
    pub command: String,
    pub graph: GraphMeta,
    pub config: SolverConfig,
    pub best_density: Option<f64>,
    /// Exact `[numerator, denominator]` of `best_density` when available.
    pub best_ratio: Option<[u64; 2]>,
    /// Vertex labels of the reported subgraph, sorted by internal id.
    pub best_subset: Option<Vec<String>>,
    pub optimum: Option<Optimum>,
    pub certificate: Option<Certificate>,
    pub convergence: Vec<ConvergenceRow>,
    pub solvers: Vec<SolverResult>,
    pub mwu: Option<MwuSummary>,
    pub bench: Option<BenchSummary>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub weighted: bool,
    pub signed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub iters: Option<usize>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub scale: Option<f64>,
    pub seed: u64,
    pub mwu_constant: Option<f64>,
}

/// Optimal density used as the accuracy reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub density: f64,
    pub ratio: Option<[u64; 2]>,
    /// `"exact"` (max-flow) or `"oracle"` (enumeration).
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub iter: usize,
    /// Best density found in iterations `1..=iter`.
    pub density: f64,
    /// `density / optimum`, present when the optimum is known.
    pub accuracy: Option<f64>,
    /// Certificate ratio `density / dual_bound`, a guaranteed lower bound
    /// on the accuracy. Absent on signed graphs.
    pub accuracy_lower_bound: Option<f64>,
    pub dual_bound: f64,
    /// Cumulative solver time; only filled when timing is requested.
    pub ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub solver: String,
    pub density: Option<f64>,
    pub subset_size: Option<usize>,
    pub iterations: Option<usize>,
    pub ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MwuSummary {
    pub eps: f64,
    pub iterations: usize,
    pub eta: f64,
    pub width: f64,
    /// Average of the per-round inner minima.
    pub average_value: f64,
    /// Maximum load of the averaged assignment: an upper bound on the optimum.
    pub dual_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub rho_star: Option<f64>,
    pub charikar_accuracy: Option<f64>,
    pub iterations_to_90: Option<usize>,
    pub iterations_to_99: Option<usize>,
    pub exact_ms: Option<f64>,
    pub greedypp_ms_to_90: Option<f64>,
    pub speedup: Option<f64>,
    pub timing_runs: usize,
    pub timing_note: Option<String>,
    /// Certificate gap `1 - ratio` when the optimum is unavailable.
    pub certificate_gap: Option<f64>,
}

impl ExperimentReport {
    pub fn new(command: &str, graph: GraphMeta, config: SolverConfig) -> ExperimentReport {
        ExperimentReport {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            graph,
            config,
            best_density: None,
            best_ratio: None,
            best_subset: None,
            optimum: None,
            certificate: None,
            convergence: Vec::new(),
            solvers: Vec::new(),
            mwu: None,
            bench: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<ExperimentReport> {
        serde_json::from_str(text)
    }

    /// Convergence rows as CSV. Accuracy falls back to the certified lower
    /// bound, written as `>=value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.convergence {
            let accuracy = match (r.accuracy, r.accuracy_lower_bound) {
                (Some(a), _) => a.to_string(),
                (None, Some(lb)) => format!(">={lb}"),
                (None, None) => String::new(),
            };
            let ms = r.ms.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.iter, r.density, accuracy, r.dual_bound, ms
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new(
            "greedypp",
            GraphMeta {
                source: "k3.txt".into(),
                n: 3,
                m: 3,
                weighted: false,
                signed: false,
            },
            SolverConfig {
                iters: Some(2),
                ..Default::default()
            },
        );
        r.best_density = Some(1.0);
        r.convergence = vec![
            ConvergenceRow {
                iter: 1,
                density: 1.0,
                accuracy: Some(1.0),
                accuracy_lower_bound: Some(0.5),
                dual_bound: 2.0,
                ms: None,
            },
            ConvergenceRow {
                iter: 2,
                density: 1.0,
                accuracy: None,
                accuracy_lower_bound: Some(1.0),
                dual_bound: 1.0,
                ms: Some(0.25),
            },
        ];
        r
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "iter,density,accuracy,dual_bound,ms\n1,1,1,2,\n2,1,>=1,1,0.25\n"
        );
    }

    #[test]
    fn json_key_order_is_fixed() {
        let text = sample().to_json();
        let keys = [
            "\"schema\"",
            "\"command\"",
            "\"graph\"",
            "\"config\"",
            "\"best_density\"",
            "\"best_subset\"",
            "\"certificate\"",
            "\"convergence\"",
            "\"notes\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ExperimentReport::from_json(&text).unwrap(), sample());
    }
}
