//! Job dispatch: a [`JobSpec`] names one command plus its inputs and knobs,
//! and [`execute`] returns the rendered result or a classified error.

use crate::harness;
use crate::io::{self, Geometry};
use crate::report::{
    BoundOut, CellOut, CoverOut, FailureOut, Format, Output, PartitionOut, PieceOut, PointsOut,
    RationalizeOut, SigmaOut, SimplexCoverOut, SuiteOut, TeachOut,
};
use crate::{malformed, CliError};
use irrpoly_core::bounds::{self, BoundInputs};
use irrpoly_core::covering::cover_polytope;
use irrpoly_core::covering::partition_box;
use irrpoly_core::num::{decimal_trunc, rat};
use irrpoly_core::polytope::{integer_hull_vertices, irreducible_points, HPolytope};
use irrpoly_core::threshold::{rationalize, sigma_details, teaching_set};
use num_bigint::BigInt;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Irr,
    Hull,
    Cover,
    Partition,
    Bounds,
    Teach,
    Sigma,
    Rationalize,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Irr => "irr",
            Command::Hull => "hull",
            Command::Cover => "cover",
            Command::Partition => "partition",
            Command::Bounds => "bounds",
            Command::Teach => "teach",
            Command::Sigma => "sigma",
            Command::Rationalize => "rationalize",
            Command::Verify => "verify",
        }
    }
}

pub enum InputSource {
    Path(PathBuf),
    Inline(String),
}

impl InputSource {
    /// Treats a string that starts with `{` as inline JSON, anything else as
    /// a file path.
    pub fn classify(raw: &str) -> InputSource {
        if raw.trim_start().starts_with('{') {
            InputSource::Inline(raw.to_string())
        } else {
            InputSource::Path(PathBuf::from(raw))
        }
    }

    fn load(&self) -> Result<String, CliError> {
        match self {
            InputSource::Path(p) => std::fs::read_to_string(p)
                .map_err(|e| malformed(format!("cannot read {}: {e}", p.display()))),
            InputSource::Inline(s) => Ok(s.clone()),
        }
    }
}

pub struct JobSpec {
    pub command: Command,
    pub input: Option<InputSource>,
    pub format: Format,
    pub seed: u64,
    pub trials: u64,
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub max_points: usize,
    pub suite: Option<String>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            input: None,
            format: Format::Human,
            seed: 0,
            trials: 20,
            n: None,
            k: None,
            max_points: 1_000_000,
            suite: None,
        }
    }
}

pub fn execute(spec: &JobSpec) -> Result<String, CliError> {
    let out = match spec.command {
        Command::Irr => run_points(spec, false)?,
        Command::Hull => run_points(spec, true)?,
        Command::Cover => run_cover(spec)?,
        Command::Partition => run_partition(spec)?,
        Command::Bounds => run_bounds(spec)?,
        Command::Teach => run_teach(spec)?,
        Command::Sigma => run_sigma(spec)?,
        Command::Rationalize => run_rationalize(spec)?,
        Command::Verify => run_verify(spec)?,
    };
    Ok(out.render(spec.format))
}

fn require_input(spec: &JobSpec) -> Result<String, CliError> {
    match &spec.input {
        Some(src) => src.load(),
        None => Err(malformed(format!("{} needs --input", spec.command.name()))),
    }
}

fn ensure_nonempty(p: &HPolytope) -> Result<(), CliError> {
    if p.is_empty()? {
        return Err(CliError::Domain("input polytope is empty".into()));
    }
    Ok(())
}

fn bigs_to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn rows_to_strings(rows: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| bigs_to_strings(r)).collect()
}

fn run_points(spec: &JobSpec, hull: bool) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let geom = io::parse_geometry(&text)?;
    let p = geom.to_hpolytope();
    ensure_nonempty(&p)?;
    let points = p.enumerate_lattice(spec.max_points)?;
    let (command, points) = if hull {
        ("hull", integer_hull_vertices(&points)?)
    } else {
        ("irr", irreducible_points(&points))
    };
    Ok(Output::Points(PointsOut {
        command: command.into(),
        count: points.len(),
        points,
    }))
}

fn run_partition(spec: &JobSpec) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let bx = match io::parse_geometry(&text)? {
        Geometry::Box(b) => b,
        Geometry::Poly(_) => {
            return Err(malformed("partition expects a skew box with lo/hi bounds"))
        }
    };
    ensure_nonempty(&bx.to_hpolytope())?;
    let points = bx.to_hpolytope().enumerate_lattice(spec.max_points)?;
    let irr = irreducible_points(&points);
    let cover = partition_box(&bx)?;
    let counts: Vec<u64> = cover
        .pieces
        .iter()
        .map(|p| irr.iter().filter(|x| p.body.contains_int(x)).count() as u64)
        .collect();
    let pieces: Vec<PieceOut> = cover
        .pieces
        .iter()
        .zip(&counts)
        .map(|(p, &c)| PieceOut {
            index: p.index.clone(),
            lo: bigs_to_strings(&p.body.lo),
            hi: bigs_to_strings(&p.body.hi),
            irreducible: c,
        })
        .collect();
    Ok(Output::Partition(PartitionOut {
        command: "partition".into(),
        exponents: cover.exponents.clone(),
        a: rows_to_strings(&bx.a),
        piece_count: cover.pieces.len(),
        counts,
        pieces,
    }))
}

fn run_cover(spec: &JobSpec) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let p = io::parse_geometry(&text)?.to_hpolytope();
    ensure_nonempty(&p)?;
    let covers = cover_polytope(&p)?;
    let piece_total = covers.iter().map(|c| c.pieces.len()).sum();
    let covers_out: Vec<SimplexCoverOut> = covers
        .iter()
        .map(|c| SimplexCoverOut {
            vertices: c
                .simplex
                .vertices()
                .iter()
                .map(|v| io::rats_to_strings(v))
                .collect(),
            pieces: c
                .pieces
                .iter()
                .map(|b| CellOut {
                    a: rows_to_strings(&b.a),
                    lo: bigs_to_strings(&b.lo),
                    hi: bigs_to_strings(&b.hi),
                })
                .collect(),
        })
        .collect();
    Ok(Output::Cover(CoverOut {
        command: "cover".into(),
        simplex_count: covers.len(),
        piece_total,
        covers: covers_out,
    }))
}

fn run_bounds(spec: &JobSpec) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let geom = io::parse_geometry(&text)?;
    let p = geom.to_hpolytope();
    ensure_nonempty(&p)?;
    let points = p.enumerate_lattice(spec.max_points)?;
    let irr = irreducible_points(&points);
    let actual = irr.len() as u64;
    let (rows, rhs) = io::system_rows(&p);
    let inp = BoundInputs::for_system(&rows, &rhs)?;
    let (bound_name, bound) = match &geom {
        Geometry::Box(bx) => ("box", bounds::box_bound(&bx.widths())?),
        Geometry::Poly(_) => ("polytope", bounds::polytope_bound(&inp)?),
    };
    let slack = &bound - rat(actual as i64);
    Ok(Output::Bound(BoundOut {
        command: "bounds".into(),
        bound_name: bound_name.into(),
        n: inp.n,
        m: inp.m,
        alpha: decimal_trunc(&inp.alpha, 6),
        beta: decimal_trunc(&inp.beta, 6),
        k: inp.k,
        bound_value: decimal_trunc(&bound, 6),
        actual_count: Some(actual),
        slack: Some(decimal_trunc(&slack, 6)),
    }))
}

fn run_teach(spec: &JobSpec) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let f = io::parse_threshold(&text)?;
    let ts = teaching_set(&f)?;
    Ok(Output::Teach(TeachOut {
        command: "teach".into(),
        total: ts.total(),
        t0: ts.t0,
        t1: ts.t1,
    }))
}

fn run_sigma(spec: &JobSpec) -> Result<Output, CliError> {
    let n = spec.n.ok_or_else(|| malformed("sigma needs --n"))? as usize;
    let k = spec.k.ok_or_else(|| malformed("sigma needs --k"))?;
    let rep = sigma_details(n, k)?;
    Ok(Output::Sigma(SigmaOut {
        command: "sigma".into(),
        n: rep.n,
        k: rep.k,
        sigma: rep.sigma,
        function_count: rep.function_count,
    }))
}

fn run_rationalize(spec: &JobSpec) -> Result<Output, CliError> {
    let text = require_input(spec)?;
    let (a, a0, n, k) = io::parse_rationalize(&text)?;
    let (b, b0) = rationalize(&a, &a0, n, k)?;
    Ok(Output::Rationalize(RationalizeOut {
        command: "rationalize".into(),
        b: bigs_to_strings(&b),
        b0: b0.to_string(),
    }))
}

fn run_verify(spec: &JobSpec) -> Result<Output, CliError> {
    let suite = spec
        .suite
        .as_deref()
        .ok_or_else(|| malformed("verify needs a suite name"))?;
    let k_max = spec.k.unwrap_or(12);
    if k_max < 2 {
        return Err(malformed("verify needs a grid side of at least 2"));
    }
    let outcome = match suite {
        "box-partition" => harness::suite_box_partition(spec.seed, spec.trials),
        "cover" => harness::suite_cover(spec.seed, spec.trials),
        "polytope" => harness::suite_polytope(spec.seed, spec.trials),
        "bounds" => harness::suite_bounds(spec.seed, spec.trials),
        "teaching" => harness::suite_teaching(spec.seed, spec.trials, k_max),
        "rationalize" => harness::suite_rationalize(spec.seed, spec.trials, k_max),
        other => return Err(malformed(format!("unknown verify suite {other:?}"))),
    };
    Ok(Output::Suite(SuiteOut {
        command: "verify".into(),
        suite: outcome.suite.clone(),
        trials: outcome.trials,
        seed: outcome.seed,
        passed: outcome.passed,
        failed: outcome.failed(),
        failures: outcome
            .failures
            .into_iter()
            .map(|f| FailureOut {
                case: f.case,
                reason: f.reason,
            })
            .collect(),
    }))
}
