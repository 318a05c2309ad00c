//! The `flagstellar` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::barycentric::{apply_plan, plan_backtrack, verify_plan, Policy};
use crate::complex::{Complex, Face, VertexId};
use crate::connectivity::{connect_stellar, d_measure, flagify_with_history};
use crate::error::{Error, Result};
use crate::explorer::{run_walks, ExplorerConfig, WalkReport};
use crate::generators::{cycle_complex, join_of_cycles, octahedral_sphere, simplex_boundary};
use crate::invariants::{conjecture_bounds, f_vector, gamma_vector, h_vector};
use crate::io::{parse_face_arg, parse_sequence, read_complex, sequence_to_json, serialize_complex};
use crate::moves::{list_moves, Move};
use crate::rng::SeededRng;

/// Exit status when the explorer finds something contrary to a conjecture.
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Parser)]
#[command(name = "flagstellar", version, about = "Edge-subdivision moves on simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a standard complex as a facet file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Barycentric subdivision through a depth-first edge-subdivision plan.
    Bary(BaryArgs),
    /// Apply one move to a complex, or list the available moves.
    Move {
        file: PathBuf,
        #[command(subcommand)]
        action: MoveAction,
    },
    /// f-, h- and γ-vectors, flagness and missing faces as JSON.
    Invariants { file: PathBuf },
    /// Edge-subdivision connection between a complex and its stellar subdivision at a face.
    ConnectStellar {
        file: PathBuf,
        /// Comma-separated labels, e.g. 1,2,3.
        #[arg(long)]
        face: String,
        /// Print the joined sequence from the complex to its stellar subdivision.
        #[arg(long, conflicts_with = "round_trip")]
        path: bool,
        /// Print the joined sequence there and back, a flagify input.
        #[arg(long)]
        round_trip: bool,
    },
    /// Rewrite a move sequence so that every complex in it is flag.
    Flagify {
        file: PathBuf,
        /// Also print the deficit order after each replacement.
        #[arg(long)]
        history: bool,
    },
    /// Random walk over flag spheres checking γ-vector conjectures.
    Explore(ExploreArgs),
}

#[derive(Subcommand)]
enum GenKind {
    /// Boundary of the d-dimensional cross polytope.
    Octahedral {
        #[arg(long)]
        d: u32,
    },
    /// Join of cycles of the given lengths.
    JoinCycles {
        #[arg(required = true)]
        lengths: Vec<u32>,
        /// Permit cycles of length 3.
        #[arg(long)]
        allow_short: bool,
    },
    /// Boundary of the simplex on 1..=N.
    SimplexBoundary { n: u32 },
    /// The N-cycle.
    Cycle { n: u32 },
}

#[derive(Args)]
struct BaryArgs {
    file: PathBuf,
    /// Shuffle the depth-first order with this seed instead of ascending labels.
    #[arg(long)]
    seed: Option<u64>,
    /// Print the plan as JSON instead of the subdivided complex.
    #[arg(long)]
    emit_sequence: bool,
}

#[derive(Subcommand)]
enum MoveAction {
    /// Subdivide an edge.
    Subdivide {
        #[arg(long)]
        edge: String,
        #[arg(long)]
        new: Option<u32>,
    },
    /// Stellar subdivision at a face.
    Stellar {
        #[arg(long)]
        face: String,
        #[arg(long)]
        new: Option<u32>,
    },
    /// Remove a vertex, recreating an edge.
    Inverse {
        #[arg(long)]
        vertex: u32,
        #[arg(long)]
        edge: String,
    },
    /// Contract an edge.
    Contract {
        #[arg(long)]
        edge: String,
        #[arg(long)]
        new: Option<u32>,
    },
    /// List subdividable edges, admissible contractions and inverse subdivisions as JSON.
    List,
}

#[derive(Args)]
struct ExploreArgs {
    /// Sphere dimension; the walk starts at the octahedral sphere of this dimension.
    #[arg(long)]
    dim: u32,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    max_vertices: usize,
    /// Probability of choosing a subdivision, as a fraction.
    #[arg(long, default_value = "1/2")]
    p_subdivide: String,
    /// JSONL file with one record per step.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Independent walks with seeds seed, seed+1, …
    #[arg(long, default_value_t = 1)]
    walks: usize,
    /// File prefix for certificates written when something contrary is found.
    #[arg(long, default_value = "explore-certificate")]
    certificate: PathBuf,
}

/// Runs the command line with `args` (program name first) and returns the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen { kind } => {
            let complex = match kind {
                GenKind::Octahedral { d } => {
                    if d == 0 {
                        return Err(Error::InvalidArgument("d must be at least 1".into()));
                    }
                    octahedral_sphere(d)
                }
                GenKind::JoinCycles { lengths, allow_short } => join_of_cycles(&lengths, allow_short)?,
                GenKind::SimplexBoundary { n } => simplex_boundary(n)?,
                GenKind::Cycle { n } => cycle_complex(n)?,
            };
            write!(out, "{}", serialize_complex(&complex))?;
        }
        Command::Bary(args) => bary(args, out)?,
        Command::Move { file, action } => apply_move(&file, action, out)?,
        Command::Invariants { file } => invariants(&file, out)?,
        Command::ConnectStellar { file, face, path, round_trip } => {
            let complex = read_complex(&file)?;
            let connection = connect_stellar(&complex, &parse_face_arg(&face)?)?;
            if path || round_trip {
                let mut seq = connection.path()?;
                if round_trip {
                    seq = seq.clone().concat(seq.reversed())?;
                }
                writeln!(out, "{}", sequence_to_json(&seq))?;
            } else {
                print_json(out, &connection)?;
            }
        }
        Command::Flagify { file, history } => {
            let seq = parse_sequence(&std::fs::read_to_string(&file)?)?;
            let outcome = flagify_with_history(&seq)?;
            if history {
                let steps: Vec<String> = outcome.history.iter().map(ToString::to_string).collect();
                print_json(out, &json!({ "sequence": outcome.sequence, "history": steps }))?;
            } else {
                writeln!(out, "{}", sequence_to_json(&outcome.sequence))?;
            }
        }
        Command::Explore(args) => return explore(args, out),
    }
    Ok(0)
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn bary(args: BaryArgs, out: &mut dyn Write) -> Result<()> {
    let complex = read_complex(&args.file)?;
    let plan = match args.seed {
        Some(seed) => plan_backtrack(&complex, Policy::Random(&mut SeededRng::new(seed, 0)))?,
        None => plan_backtrack(&complex, Policy::Ascending)?,
    };
    verify_plan(&plan).map_err(|v| Error::InvalidPlan { step: 0, reason: v.to_string() })?;
    if args.emit_sequence {
        print_json(out, &plan.steps)?;
    } else {
        write!(out, "{}", serialize_complex(&apply_plan(&plan)?.complex))?;
    }
    Ok(())
}

fn edge_arg(text: &str) -> Result<Face> {
    let e = parse_face_arg(text)?;
    if e.len() != 2 {
        return Err(Error::InvalidArgument(format!("{text:?} is not an edge")));
    }
    Ok(e)
}

fn apply_move(file: &Path, action: MoveAction, out: &mut dyn Write) -> Result<()> {
    let complex = read_complex(file)?;
    let fresh = |new: Option<u32>| new.map_or_else(|| complex.fresh_vertex(), VertexId);
    let m = match action {
        MoveAction::List => return print_json(out, &list_moves(&complex)),
        MoveAction::Subdivide { edge, new } => Move::EdgeSubdiv { edge: edge_arg(&edge)?, new_vertex: fresh(new) },
        MoveAction::Stellar { face, new } => Move::StellarSubdiv { face: parse_face_arg(&face)?, new_vertex: fresh(new) },
        MoveAction::Inverse { vertex, edge } => {
            Move::InverseEdgeSubdiv { removed_vertex: VertexId(vertex), recreated_edge: edge_arg(&edge)? }
        }
        MoveAction::Contract { edge, new } => Move::Contract { edge: edge_arg(&edge)?, new_vertex: fresh(new) },
    };
    write!(out, "{}", serialize_complex(&m.apply(&complex)?))?;
    Ok(())
}

fn invariants(file: &Path, out: &mut dyn Write) -> Result<()> {
    let complex = read_complex(file)?;
    let f = f_vector(&complex);
    let h = h_vector(&f);
    let gamma = gamma_vector(&h).ok();
    let pure = complex.is_pure() && !complex.is_empty();
    let d = f.d() as i64;
    let f0 = f.get(0) as i64;
    let f1 = f.get(1) as i64;
    let closed = pure.then(|| crate::invariants::closed_forms_from_counts(d, f0, f1));
    let flag = complex.is_flag();
    let bounds = if flag && pure && gamma.is_some() && d >= 4 { conjecture_bounds(&complex).ok() } else { None };
    let report = json!({
        "f": f.entries(),
        "h": h,
        "gamma": gamma,
        "g2": closed.map(|c| c.g2),
        "gamma1": closed.map(|c| c.gamma1),
        "gamma2": closed.map(|c| c.gamma2),
        "flag": flag,
        "d_measure": d_measure(&complex),
        "missing_faces": complex.missing_faces(3),
        "bounds": bounds,
    });
    print_json(out, &report)
}

fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let bad = || Error::InvalidArgument(format!("{text:?} is not a fraction like 1/2"));
    let (n, d) = text.split_once('/').ok_or_else(bad)?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let d: u64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

fn explore(args: ExploreArgs, out: &mut dyn Write) -> Result<i32> {
    if args.walks == 0 {
        return Err(Error::InvalidArgument("need at least one walk".into()));
    }
    let mut config = ExplorerConfig::new(args.dim, args.steps, args.seed);
    config.max_vertices = args.max_vertices;
    config.p_subdivide = parse_ratio(&args.p_subdivide)?;
    config.trace_path = args.trace;
    let reports = run_walks(&config, args.walks)?;
    if reports.len() == 1 {
        print_json(out, &reports[0])?;
    } else {
        let contrary: usize = reports.iter().map(WalkReport::contrary_findings).sum();
        print_json(out, &json!({ "walks": reports, "contrary_findings": contrary }))?;
    }
    let mut written = 0;
    for report in &reports {
        for cert in report.certificates() {
            let stem = format!("{}-{}-{}-{}", args.certificate.display(), report.seed, cert.step, cert.kind);
            let complex = Complex::from_faces(cert.facets.iter().cloned());
            std::fs::write(format!("{stem}.txt"), serialize_complex(&complex))?;
            let mut log = String::new();
            for m in &cert.moves {
                log.push_str(&serde_json::to_string(m).map_err(|e| Error::Io(e.to_string()))?);
                log.push('\n');
            }
            std::fs::write(format!("{stem}.moves.jsonl"), log)?;
            written += 1;
        }
    }
    Ok(if written > 0 { EXIT_COUNTEREXAMPLE } else { 0 })
}
