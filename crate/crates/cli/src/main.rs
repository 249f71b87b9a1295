mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multidir_core::classical::{
    classify_with_jobs, enumerate_solutions_with_jobs, expand_compact_notation,
    octahedral_hexagonal_map, solution_to_state, Classification,
};
use multidir_core::constructions::{
    cartan_dual_unitary, diagonal_gate, fourier_hadamard, graph_state, hadamard_cube,
    hadamard_square, identity_state, kicked_ising_gate, symmetric_incidence, PhaseTable,
};
use multidir_core::io;
use multidir_core::state::state_from_operator;
use multidir_core::{CMatrix, Geometry, GeometryKind, OperatorMatrix, PureState, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "multidir",
    version,
    about = "Multi-directional unitaries and maximally entangled states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Emit {
    State,
    Operator,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Identity,
    Diagonal,
    Cartan,
    KickedIsing,
    HadamardSquare,
    HadamardCube,
    Graph,
}

#[derive(Args)]
struct Lattice {
    /// square, hexagon, polygon:<2k>, cube, octahedron or tetrahedron
    #[arg(long)]
    geometry: GeometryKind,
    /// Local dimension
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a state or operator and write it as JSON
    Construct {
        #[arg(long = "type", value_enum)]
        kind: Construction,
        #[arg(long)]
        geometry: Option<GeometryKind>,
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated numbers: graph labels per pair class, cartan `phi,alpha`,
        /// or diagonal phases in mixed-radix order
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Vec<f64>,
        /// Phase table JSON for `diagonal`
        #[arg(long)]
        phases: Option<PathBuf>,
        /// Incidence graph JSON for `graph`
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Defaults to `operator` for gate constructions and `state` otherwise
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check a state or operator file for multi-directional unitarity
    Verify {
        file: PathBuf,
        /// Required for operator files that do not name a geometry
        #[arg(long)]
        geometry: Option<GeometryKind>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also require absolute maximal entanglement
        #[arg(long)]
        ame: bool,
        /// Report entropies in units of log N instead of nats
        #[arg(long)]
        log_base_n: bool,
    },
    /// List all spatially symmetric classical solutions
    Enumerate {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the state of every solution instead of its notation
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Group classical solutions into strong equivalence classes
    Classify {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        jobs: Option<usize>,
        /// Octahedron only: hexagonal class containing each octahedral class
        #[arg(long)]
        map_hexagonal: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Expand compact notation such as "[1424],[3344]" into a state
    Expand {
        #[command(flatten)]
        lattice: Lattice,
        notation: String,
        /// `json` writes the state, `text` lists the configurations
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Distinguishes "ran fine, check failed" from usage and format errors.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Construct {
            kind,
            geometry,
            n,
            params,
            phases,
            graph,
            emit,
            output,
        } => {
            let text = construct(
                kind,
                geometry,
                n,
                &params,
                phases.as_deref(),
                graph.as_deref(),
                emit,
            )?;
            write_out(output.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Verify {
            file,
            geometry,
            tol,
            format,
            ame,
            log_base_n,
        } => {
            let (g, state) = load_state(&file, geometry)?;
            let r = report::verify(&state, &g, tol, ame, log_base_n)?;
            match format {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
            }
            Ok(if r.pass { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Enumerate {
            lattice,
            classify,
            jobs,
            full,
            format,
            output,
        } => {
            let g = Geometry::new(lattice.geometry)?;
            let text = if classify {
                classes_text(&classify_with_jobs(&g, lattice.n, jobs)?, format)?
            } else {
                let sols = enumerate_solutions_with_jobs(&g, lattice.n, jobs)?;
                if full {
                    let states = sols
                        .iter()
                        .map(|s| {
                            let json = io::state_to_json(&solution_to_state(s)?, &g)?;
                            Ok(serde_json::from_str::<serde_json::Value>(&json)?)
                        })
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    serde_json::to_string_pretty(&states)? + "\n"
                } else if format == Format::Json {
                    let list: Vec<String> = sols.iter().map(|s| s.compact_notation()).collect();
                    serde_json::to_string_pretty(&list)? + "\n"
                } else {
                    io::solutions_to_text(&sols)
                }
            };
            write_out(output.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Classify {
            lattice,
            jobs,
            map_hexagonal,
            format,
            output,
        } => {
            let text = if map_hexagonal {
                if lattice.geometry != GeometryKind::Octahedron {
                    bail!("--map-hexagonal needs --geometry octahedron");
                }
                hexagonal_map_text(lattice.n, jobs, format)?
            } else {
                let g = Geometry::new(lattice.geometry)?;
                classes_text(&classify_with_jobs(&g, lattice.n, jobs)?, format)?
            };
            write_out(output.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Expand {
            lattice,
            notation,
            format,
            output,
        } => {
            let g = Geometry::new(lattice.geometry)?;
            let solution = expand_compact_notation(&notation, &g, lattice.n)?;
            let text = match format {
                Format::Json => io::state_to_json(&solution_to_state(&solution)?, &g)? + "\n",
                Format::Text => solution
                    .support()
                    .iter()
                    .map(|c| c.notation(lattice.n) + "\n")
                    .collect(),
            };
            write_out(output.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_state(
    path: &Path,
    geometry: Option<GeometryKind>,
) -> anyhow::Result<(Geometry, PureState)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (g, state) = if value.get("amplitudes").is_some() {
        io::state_from_json(&text)?
    } else if value.get("entries").is_some() {
        let (named, op) = io::operator_from_json(&text)?;
        let g = match (named, geometry) {
            (Some(g), _) => g,
            (None, Some(kind)) => Geometry::new(kind)?,
            (None, None) => bail!("operator file names no geometry; pass --geometry"),
        };
        let st = state_from_operator(&op, &g)?;
        (g, st)
    } else {
        bail!("{} is neither a state nor an operator file", path.display());
    };
    if let Some(kind) = geometry {
        if kind != g.kind() {
            bail!("file is for {}, not {kind}", g.name());
        }
    }
    Ok((g, state))
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| anyhow!("{what} needs {flag}"))
}

fn integer_params(params: &[f64]) -> anyhow::Result<Vec<usize>> {
    params
        .iter()
        .map(|&p| {
            if p >= 0.0 && p.fract() == 0.0 {
                Ok(p as usize)
            } else {
                Err(anyhow!(
                    "graph labels must be non-negative integers, got {p}"
                ))
            }
        })
        .collect()
}

fn construct(
    kind: Construction,
    geometry: Option<GeometryKind>,
    n: Option<usize>,
    params: &[f64],
    phases: Option<&Path>,
    graph: Option<&Path>,
    emit: Option<Emit>,
) -> anyhow::Result<String> {
    let square = || Geometry::new(GeometryKind::Square);
    let check_qubit_square = |what: &str| -> anyhow::Result<Geometry> {
        if geometry.is_some_and(|g| g != GeometryKind::Square) || n.is_some_and(|n| n != 2) {
            bail!("{what} is a two-qubit gate on the square");
        }
        Ok(square()?)
    };
    let (g, built): (Geometry, Result<OperatorMatrix, PureState>) = match kind {
        Construction::Identity => {
            let g = Geometry::new(need(geometry, "--geometry", "identity")?)?;
            let st = identity_state(&g, need(n, "--n", "identity")?)?;
            (g, Err(st))
        }
        Construction::Graph => {
            let n = need(n, "--n", "graph")?;
            let incidence = match graph {
                Some(p) => io::incidence_from_json(&fs::read_to_string(p)?)?,
                None => {
                    let g = Geometry::new(need(geometry, "--geometry", "graph")?)?;
                    symmetric_incidence(&g, &integer_params(params)?)?
                }
            };
            let g = match geometry {
                Some(kind) => Geometry::new(kind)?,
                None => bail!("graph needs --geometry"),
            };
            if g.sites() != incidence.sites() {
                bail!(
                    "graph has {} sites, {} has {}",
                    incidence.sites(),
                    g.name(),
                    g.sites()
                );
            }
            (g, Err(graph_state(&incidence, n)?))
        }
        Construction::Diagonal => {
            let g = Geometry::new(need(geometry, "--geometry", "diagonal")?)?;
            let table = match phases {
                Some(p) => io::phases_from_json(&fs::read_to_string(p)?)?,
                None if !params.is_empty() => {
                    PhaseTable::new(need(n, "--n", "diagonal")?, g.half(), params.to_vec())?
                }
                None => bail!("diagonal needs --phases FILE or --params"),
            };
            if n.is_some_and(|n| n != table.local_dim()) {
                bail!("phase table is for N = {}", table.local_dim());
            }
            let op = diagonal_gate(&g, &table)?;
            (g, Ok(op))
        }
        Construction::Cartan => {
            let g = check_qubit_square("cartan")?;
            let [phi, alpha] = params else {
                bail!("cartan needs --params phi,alpha");
            };
            let id = CMatrix::identity(2, 2);
            (
                g,
                Ok(cartan_dual_unitary(*phi, *alpha, [&id, &id, &id, &id])?),
            )
        }
        Construction::KickedIsing => (check_qubit_square("kicked-ising")?, Ok(kicked_ising_gate())),
        Construction::HadamardSquare => {
            if geometry.is_some_and(|g| g != GeometryKind::Square) {
                bail!("hadamard-square is built on the square");
            }
            let f = fourier_hadamard(need(n, "--n", "hadamard-square")?);
            (square()?, Ok(hadamard_square(&f, &f, &f, &f)?))
        }
        Construction::HadamardCube => {
            if geometry.is_some_and(|g| g != GeometryKind::Cube) {
                bail!("hadamard-cube is built on the cube");
            }
            let f = fourier_hadamard(need(n, "--n", "hadamard-cube")?);
            (Geometry::new(GeometryKind::Cube)?, Ok(hadamard_cube(&f)?))
        }
    };
    let text = match (built, emit) {
        (Ok(op), None | Some(Emit::Operator)) => io::operator_to_json(&op, Some(&g))?,
        (Ok(op), Some(Emit::State)) => io::state_to_json(&state_from_operator(&op, &g)?, &g)?,
        (Err(st), None | Some(Emit::State)) => io::state_to_json(&st, &g)?,
        (Err(st), Some(Emit::Operator)) => {
            let standard: Vec<usize> = (0..g.half()).collect();
            let op = multidir_core::state::operator_from_state(
                &st,
                &g,
                &standard,
                multidir_core::state::Convention::Diagonal,
            )?;
            io::operator_to_json(&op, Some(&g))?
        }
    };
    Ok(text + "\n")
}

fn classes_text(c: &Classification, format: Format) -> anyhow::Result<String> {
    if format == Format::Json {
        let rows: Vec<serde_json::Value> = c
            .classes
            .iter()
            .enumerate()
            .map(|(i, k)| {
                serde_json::json!({
                    "class": i + 1,
                    "members": k.members.iter().map(|&m| c.solutions[m].compact_notation()).collect::<Vec<_>>(),
                    "representative": c.solutions[k.representative].compact_notation(),
                })
            })
            .collect();
        return Ok(serde_json::to_string_pretty(&rows)? + "\n");
    }
    let mut out = String::new();
    for (i, k) in c.classes.iter().enumerate() {
        out.push_str(&format!(
            "{:>3}  {}  ({} solution{})\n",
            i + 1,
            c.solutions[k.representative].compact_notation(),
            k.members.len(),
            if k.members.len() == 1 { "" } else { "s" }
        ));
    }
    Ok(out)
}

fn hexagonal_map_text(n: usize, jobs: Option<usize>, format: Format) -> anyhow::Result<String> {
    let (oct, hex, map) = octahedral_hexagonal_map(n, jobs)?;
    if format == Format::Json {
        let rows: Vec<serde_json::Value> = map
            .iter()
            .enumerate()
            .map(|(i, &h)| {
                serde_json::json!({
                    "hexagonal": h + 1,
                    "hexagonal_representative": hex.representative(h).compact_notation(),
                    "octahedral": i + 1,
                    "octahedral_representative": oct.representative(i).compact_notation(),
                })
            })
            .collect();
        return Ok(serde_json::to_string_pretty(&rows)? + "\n");
    }
    Ok(map
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            format!(
                "{}:{}  {} -> {}\n",
                i + 1,
                h + 1,
                oct.representative(i).compact_notation(),
                hex.representative(h).compact_notation()
            )
        })
        .collect())
}
