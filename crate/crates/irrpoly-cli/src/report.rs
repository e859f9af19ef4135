//! Output structures and their JSON / TSV / human renderings. JSON is the
//! machine format; TSV emits one record per line for external tooling;
//! human is a short plain-text account.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Human,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "human" => Ok(Format::Human),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Serialize)]
pub struct PointsOut {
    pub command: String,
    pub count: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct PieceOut {
    pub index: Vec<u64>,
    pub lo: Vec<String>,
    pub hi: Vec<String>,
    pub irreducible: u64,
}

#[derive(Serialize)]
pub struct PartitionOut {
    pub command: String,
    pub exponents: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub piece_count: usize,
    pub counts: Vec<u64>,
    pub pieces: Vec<PieceOut>,
}

#[derive(Serialize)]
pub struct CellOut {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub lo: Vec<String>,
    pub hi: Vec<String>,
}

#[derive(Serialize)]
pub struct SimplexCoverOut {
    pub vertices: Vec<Vec<String>>,
    pub pieces: Vec<CellOut>,
}

#[derive(Serialize)]
pub struct CoverOut {
    pub command: String,
    pub simplex_count: usize,
    pub piece_total: usize,
    pub covers: Vec<SimplexCoverOut>,
}

#[derive(Serialize)]
pub struct BoundOut {
    pub command: String,
    pub bound_name: String,
    pub n: u64,
    pub m: u64,
    pub alpha: String,
    pub beta: String,
    pub k: Option<u64>,
    pub bound_value: String,
    pub actual_count: Option<u64>,
    pub slack: Option<String>,
}

#[derive(Serialize)]
pub struct TeachOut {
    pub command: String,
    pub t0: Vec<Vec<i64>>,
    pub t1: Vec<Vec<i64>>,
    pub total: usize,
}

#[derive(Serialize)]
pub struct SigmaOut {
    pub command: String,
    pub n: usize,
    pub k: u64,
    pub sigma: u64,
    pub function_count: u64,
}

#[derive(Serialize)]
pub struct RationalizeOut {
    pub command: String,
    pub b: Vec<String>,
    pub b0: String,
}

#[derive(Serialize)]
pub struct FailureOut {
    pub case: Value,
    pub reason: String,
}

#[derive(Serialize)]
pub struct SuiteOut {
    pub command: String,
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub passed: u64,
    pub failed: u64,
    pub failures: Vec<FailureOut>,
}

pub enum Output {
    Points(PointsOut),
    Partition(PartitionOut),
    Cover(CoverOut),
    Bound(BoundOut),
    Teach(TeachOut),
    Sigma(SigmaOut),
    Rationalize(RationalizeOut),
    Suite(SuiteOut),
}

fn json_of<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn tsv_points(points: &[Vec<i64>]) -> String {
    points
        .iter()
        .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn point_list(points: &[Vec<i64>]) -> String {
    points
        .iter()
        .map(|p| {
            format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Output {
    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => self.render_json(),
            Format::Tsv => self.render_tsv(),
            Format::Human => self.render_human(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Output::Points(v) => json_of(v),
            Output::Partition(v) => json_of(v),
            Output::Cover(v) => json_of(v),
            Output::Bound(v) => json_of(v),
            Output::Teach(v) => json_of(v),
            Output::Sigma(v) => json_of(v),
            Output::Rationalize(v) => json_of(v),
            Output::Suite(v) => json_of(v),
        }
    }

    fn render_tsv(&self) -> String {
        match self {
            Output::Points(v) => tsv_points(&v.points),
            Output::Partition(v) => v
                .pieces
                .iter()
                .map(|p| {
                    format!(
                        "{}\t{}\t{}\t{}",
                        p.index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
                        p.irreducible,
                        p.lo.join(","),
                        p.hi.join(",")
                    )
                })
                .collect::<Vec<_>>()
                .join("\n"),
            Output::Cover(v) => v
                .covers
                .iter()
                .enumerate()
                .flat_map(|(i, c)| {
                    c.pieces.iter().map(move |p| {
                        format!("{}\t{}\t{}", i, p.lo.join(","), p.hi.join(","))
                    })
                })
                .collect::<Vec<_>>()
                .join("\n"),
            Output::Bound(v) => [
                format!("bound_name\t{}", v.bound_name),
                format!("n\t{}", v.n),
                format!("m\t{}", v.m),
                format!("alpha\t{}", v.alpha),
                format!("beta\t{}", v.beta),
                format!("bound_value\t{}", v.bound_value),
                format!(
                    "actual_count\t{}",
                    v.actual_count.map_or_else(|| "-".into(), |c| c.to_string())
                ),
            ]
            .join("\n"),
            Output::Teach(v) => {
                let mut lines = Vec::new();
                for p in &v.t0 {
                    lines.push(format!("0\t{}", tsv_points(std::slice::from_ref(p))));
                }
                for p in &v.t1 {
                    lines.push(format!("1\t{}", tsv_points(std::slice::from_ref(p))));
                }
                lines.join("\n")
            }
            Output::Sigma(v) => format!(
                "n\t{}\nk\t{}\nsigma\t{}\nfunction_count\t{}",
                v.n, v.k, v.sigma, v.function_count
            ),
            Output::Rationalize(v) => {
                format!("b\t{}\nb0\t{}", v.b.join(","), v.b0)
            }
            Output::Suite(v) => format!(
                "suite\t{}\ntrials\t{}\nseed\t{}\npassed\t{}\nfailed\t{}",
                v.suite, v.trials, v.seed, v.passed, v.failed
            ),
        }
    }

    fn render_human(&self) -> String {
        match self {
            Output::Points(v) => {
                format!("{}: {} point(s)\n{}", v.command, v.count, point_list(&v.points))
            }
            Output::Partition(v) => {
                let counts =
                    v.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
                format!(
                    "partition: {} piece(s), irreducible counts ({}), slab exponents {:?}",
                    v.piece_count, counts, v.exponents
                )
            }
            Output::Cover(v) => format!(
                "cover: {} simplex(es), {} piece(s) total",
                v.simplex_count, v.piece_total
            ),
            Output::Bound(v) => {
                let actual = v
                    .actual_count
                    .map_or_else(String::new, |c| format!(", actual {c}"));
                format!(
                    "{} bound: {} (n={}, m={}, alpha={}, beta={}{})",
                    v.bound_name, v.bound_value, v.n, v.m, v.alpha, v.beta, actual
                )
            }
            Output::Teach(v) => format!(
                "teaching set: {} point(s)\nclass 0: {}\nclass 1: {}",
                v.total,
                point_list(&v.t0),
                point_list(&v.t1)
            ),
            Output::Sigma(v) => format!(
                "teaching dimension sigma({}, {}) = {} over {} function(s)",
                v.n, v.k, v.sigma, v.function_count
            ),
            Output::Rationalize(v) => {
                format!("integer coefficients b = [{}], b0 = {}", v.b.join(", "), v.b0)
            }
            Output::Suite(v) => {
                let mut s = format!(
                    "suite {}: {} trial(s), {} passed, {} failed (seed {})",
                    v.suite, v.trials, v.passed, v.failed, v.seed
                );
                for f in &v.failures {
                    s.push_str(&format!("\nFAIL {}: {}", f.reason, f.case));
                }
                s
            }
        }
    }
}
