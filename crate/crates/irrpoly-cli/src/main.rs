use clap::{Parser, Subcommand, ValueEnum};
use irrpoly_cli::report::Format;
use irrpoly_cli::run::{execute, Command as Job, InputSource, JobSpec};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
    Human,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Human => Format::Human,
        }
    }
}

/// Irreducible lattice points, structured covers, size bounds, and teaching
/// sets of threshold functions, with machine-readable output.
#[derive(Parser)]
#[command(name = "irrpoly", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Human, global = true)]
    format: FormatArg,
    /// Seed for the randomized verification suites.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Trial count for the randomized verification suites.
    #[arg(long, default_value_t = 20, global = true)]
    trials: u64,
    /// Upper limit on scanned lattice cells.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    max_points: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Irreducible integer points of a box or polytope.
    Irr {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Vertices of the integer hull of a box or polytope.
    Hull {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Inner cover of a bounded polytope by skew boxes, grouped per simplex.
    Cover {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Logarithmic slab partition of a skew box.
    Partition {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Irreducible-count bound next to the measured count.
    Bounds {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Minimal teaching set of an integer threshold inequality on a grid.
    Teach {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Maximum teaching-set size over all threshold functions on a grid.
    Sigma {
        /// Number of variables.
        #[arg(long)]
        n: u64,
        /// Grid side.
        #[arg(long)]
        k: u64,
    },
    /// Integer threshold inequality equivalent to a rational one on a grid.
    Rationalize {
        /// Input file path or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Randomized property suites with reproducible failure dumps.
    Verify {
        /// One of: box-partition, cover, polytope, bounds, teaching,
        /// rationalize.
        suite: String,
        /// Grid side cap for the teaching and rationalize suites.
        #[arg(long)]
        k: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let (job, input, n, k, suite) = match cli.command {
        Cmd::Irr { input } => (Job::Irr, Some(input), None, None, None),
        Cmd::Hull { input } => (Job::Hull, Some(input), None, None, None),
        Cmd::Cover { input } => (Job::Cover, Some(input), None, None, None),
        Cmd::Partition { input } => (Job::Partition, Some(input), None, None, None),
        Cmd::Bounds { input } => (Job::Bounds, Some(input), None, None, None),
        Cmd::Teach { input } => (Job::Teach, Some(input), None, None, None),
        Cmd::Sigma { n, k } => (Job::Sigma, None, Some(n), Some(k), None),
        Cmd::Rationalize { input } => (Job::Rationalize, Some(input), None, None, None),
        Cmd::Verify { suite, k } => (Job::Verify, None, None, k, Some(suite)),
    };
    let mut spec = JobSpec::new(job);
    spec.input = input.as_deref().map(InputSource::classify);
    spec.format = cli.format.into();
    spec.seed = cli.seed;
    spec.trials = cli.trials;
    spec.max_points = cli.max_points;
    spec.n = n;
    spec.k = k;
    spec.suite = suite;
    match execute(&spec) {
        Ok(text) => println!("{text}"),
        Err(e) => {
            eprintln!("{}", e.record());
            std::process::exit(e.exit_code());
        }
    }
}
