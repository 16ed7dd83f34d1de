use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bergmankit::{GroupTable, Matroid};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use crate::input;
use crate::report::{braces, yes_no, Report};

#[derive(Subcommand)]
pub enum Cmd {
    /// Construct a matroid and write its file.
    Build(Build),
    /// Rank, flats, circuits and connectivity.
    Describe {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Remove loops and collapse parallel classes.
    Simplify {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Delete and contract labelled elements.
    Minor {
        #[arg(long)]
        matroid: PathBuf,
        /// Comma-separated labels.
        #[arg(long, default_value = "")]
        delete: String,
        /// Comma-separated labels.
        #[arg(long, default_value = "")]
        contract: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Uniform,
    Graphic,
    Complete,
    Linear,
    Projective,
    Dowling,
    Bases,
    Circuits,
    Parallel,
    DirectSum,
}

#[derive(Args)]
pub struct Build {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    rank: Option<usize>,
    /// Number of elements, or of vertices for complete graphs.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    vertices: Option<usize>,
    /// Edges `u-v` separated by commas, vertices from 0.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long)]
    prime: Option<u64>,
    /// Columns separated by `;`, entries by `,`.
    #[arg(long)]
    columns: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// Order of the cyclic gain group.
    #[arg(long)]
    cyclic: Option<usize>,
    /// JSON file with a group table, instead of `--cyclic`.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Index sets separated by `;`, entries by `,`.
    #[arg(long)]
    sets: Option<String>,
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    #[arg(long)]
    left_point: Option<String>,
    #[arg(long)]
    right_point: Option<String>,
    /// Summands of a direct sum.
    #[arg(long = "part")]
    parts: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().with_context(|| format!("--{flag} is required for this kind"))
}

fn build(b: &Build) -> Result<Matroid> {
    Ok(match b.kind {
        Kind::Uniform => Matroid::uniform(need(&b.rank, "rank")?, need(&b.size, "size")?)?,
        Kind::Complete => Matroid::complete_graph(need(&b.size, "size")?)?,
        Kind::Graphic => {
            Matroid::graphic(need(&b.vertices, "vertices")?, &input::edges(&need(&b.edges, "edges")?)?)?
        }
        Kind::Linear => {
            let cols = input::index_lists(&need(&b.columns, "columns")?)?
                .into_iter()
                .map(|c| c.into_iter().map(|x| x as u64).collect())
                .collect();
            Matroid::linear(need(&b.prime, "prime")?, cols)?
        }
        Kind::Projective => Matroid::projective_geometry(need(&b.dim, "dim")?, need(&b.prime, "prime")?)?,
        Kind::Dowling => {
            let group = match (&b.cyclic, &b.group) {
                (Some(k), None) => GroupTable::cyclic(*k)?,
                (None, Some(path)) => serde_json::from_str(
                    &std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
                )?,
                _ => bail!("give exactly one of --cyclic and --group"),
            };
            Matroid::dowling(need(&b.dim, "dim")?, group)?
        }
        Kind::Bases => Matroid::from_bases(need(&b.size, "size")?, &input::index_lists(&need(&b.sets, "sets")?)?)?,
        Kind::Circuits => {
            Matroid::from_circuits(need(&b.size, "size")?, &input::index_lists(&need(&b.sets, "sets")?)?)?
        }
        Kind::Parallel => Matroid::parallel_connection(
            &input::matroid(&need(&b.left, "left")?)?,
            &input::matroid(&need(&b.right, "right")?)?,
            &need(&b.left_point, "left-point")?,
            &need(&b.right_point, "right-point")?,
        )?,
        Kind::DirectSum => {
            if b.parts.is_empty() {
                bail!("--part is required for a direct sum");
            }
            let parts = b.parts.iter().map(|p| input::matroid(p)).collect::<Result<Vec<_>>>()?;
            Matroid::direct_sum_of(&parts)?
        }
    })
}

fn summary(m: &Matroid) -> String {
    format!("{} matroid on {} elements of rank {}", m.kind(), m.n(), m.full_rank())
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::Build(b) => {
            let m = build(&b)?;
            m.check_axioms()?;
            Report::artifact(m.to_json(), b.out.as_deref(), summary(&m))
        }
        Cmd::Describe { matroid } => describe(&input::matroid(&matroid)?),
        Cmd::Simplify { matroid, out } => {
            let m = input::matroid(&matroid)?;
            let s = m.simplify()?;
            let classes = s.matroid.n();
            let text = format!("{} ({classes} parallel classes, {} loops removed)", summary(&s.matroid), m.loops().len());
            Report::artifact(s.matroid.to_json(), out.as_deref(), text)
        }
        Cmd::Minor {
            matroid,
            delete,
            contract,
            out,
        } => {
            let m = input::matroid(&matroid)?;
            let del = input::set(&m, &delete)?;
            let con = input::set(&m, &contract)?;
            if !(del & con).is_empty() {
                bail!("deleted and contracted sets overlap");
            }
            let minor = m.minor(m.full() - del - con, con)?;
            Report::artifact(minor.to_json(), out.as_deref(), summary(&minor))
        }
    }
}

fn describe(m: &Matroid) -> Result<Report> {
    let profile = m.flats().profile();
    let components: Vec<Vec<String>> = m.components().iter().map(|c| input::names(m, *c)).collect();
    let loops = input::names(m, m.loops());
    let circuits = m.circuits().len();
    let human = [
        format!("kind: {}", m.kind()),
        format!("elements: {} {}", m.n(), braces(m.labels())),
        format!("rank: {}", m.full_rank()),
        format!("loops: {}", braces(&loops)),
        format!("simple: {}", yes_no(m.is_simple())),
        format!("connected: {}", yes_no(m.is_connected())),
        format!(
            "components: {}",
            components.iter().map(|c| braces(c)).collect::<Vec<_>>().join(" ")
        ),
        format!(
            "flats by rank: {}",
            profile.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        ),
        format!("circuits: {circuits}"),
    ]
    .join("\n");
    let data = json!({
        "kind": m.kind(),
        "labels": m.labels(),
        "rank": m.full_rank(),
        "loops": loops,
        "simple": m.is_simple(),
        "connected": m.is_connected(),
        "components": components,
        "flats_by_rank": profile,
        "circuits": m.circuits().iter().map(|c| input::names(m, *c)).collect::<Vec<_>>(),
    });
    Ok(Report::new(human, data))
}
