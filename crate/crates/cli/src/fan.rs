use std::path::PathBuf;

use anyhow::{bail, Result};
use bergmankit::fan::Fan;
use bergmankit::Matroid;
use clap::{Subcommand, ValueEnum};
use serde_json::json;

use crate::input;
use crate::report::{braces, table, yes_no, Report};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Fine,
    Nested,
    Coarse,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Build a fan structure on the Bergman fan.
    Build {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the rays of a fan file.
    Rays {
        #[arg(long)]
        fan: PathBuf,
    },
    /// List the cones of a fan file, the maximal ones by default.
    Cones {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Is a point in the Bergman fan? Exits with 2 when it is not.
    Member {
        #[arg(long)]
        matroid: PathBuf,
        /// Comma-separated integer coordinates in label order.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also report the cone of this fan containing the point.
        #[arg(long)]
        fan: Option<PathBuf>,
    },
    /// The star of the fan at the cone of a flag of flats.
    Star {
        #[arg(long)]
        matroid: PathBuf,
        /// A flat of the flag, as comma-separated labels; repeat for each flat.
        #[arg(long = "flat", required = true)]
        flats: Vec<String>,
        /// Test this point for membership in the star.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

pub fn build(m: &Matroid, s: StructureArg) -> Result<Fan> {
    Ok(match s {
        StructureArg::Fine => m.fine_fan()?,
        StructureArg::Nested => m.nested_fan()?,
        StructureArg::Coarse => m.coarse_fan()?,
    })
}

pub fn summary(fan: &Fan) -> String {
    format!(
        "{} fan: {} rays, {} maximal cones, dimension {}",
        fan.structure(),
        fan.rays().len(),
        fan.maximal_cones().len(),
        fan.dim()
    )
}

fn ray_flat(fan: &Fan, k: usize) -> Option<Vec<String>> {
    fan.ray(k)
        .flat
        .map(|f| f.iter().map(|i| fan.labels()[i].clone()).collect())
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::Build {
            matroid,
            structure,
            out,
        } => {
            let m = input::matroid(&matroid)?;
            let fan = build(&m, structure)?;
            Report::artifact(fan.to_json(Some(&m)), out.as_deref(), summary(&fan))
        }
        Cmd::Rays { fan } => {
            let fan = input::fan(&fan)?;
            let rows: Vec<Vec<String>> = (0..fan.rays().len())
                .map(|k| {
                    let r = fan.ray(k);
                    vec![
                        k.to_string(),
                        r.rank.map_or("-".into(), |x| x.to_string()),
                        ray_flat(&fan, k).map_or("-".into(), |f| braces(&f)),
                        format!("{:?}", r.vector.coords()),
                    ]
                })
                .collect();
            let data = json!((0..fan.rays().len())
                .map(|k| json!({
                    "index": k,
                    "rank": fan.ray(k).rank,
                    "flat": ray_flat(&fan, k),
                    "coords": fan.ray(k).vector.coords(),
                }))
                .collect::<Vec<_>>());
            Ok(Report::new(table(&["ray", "rank", "flat", "coords"], &rows), data))
        }
        Cmd::Cones { fan, dim } => {
            let fan = input::fan(&fan)?;
            let cones = match dim {
                Some(d) if d > fan.dim() => bail!("the fan has dimension {}", fan.dim()),
                Some(d) => fan.cones_of_dim(d).to_vec(),
                None => fan.maximal_cones(),
            };
            let human = std::iter::once(format!("{} cones", cones.len()))
                .chain(cones.iter().map(|c| format!("{c:?}")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(human, json!(cones)))
        }
        Cmd::Member { matroid, point, fan } => {
            let m = input::matroid(&matroid)?;
            let x = input::point(&m, &point)?;
            let inside = m.bergman_contains(&x);
            let mut human = format!("in the Bergman fan: {}", yes_no(inside));
            let mut data = json!({ "member": inside });
            if let Some(path) = fan {
                let fan = input::fan(&path)?;
                let cone = fan.locate(&x).cloned();
                human += &format!(
                    "\ncone of the {} fan: {}",
                    fan.structure(),
                    cone.as_ref().map_or("none".into(), |c| format!("{c:?}"))
                );
                data["cone"] = json!(cone);
            }
            Ok(Report::verdict(inside, human, data))
        }
        Cmd::Star {
            matroid,
            flats,
            point,
        } => {
            let m = input::matroid(&matroid)?;
            let flag = flats.iter().map(|f| input::flat(&m, f)).collect::<Result<Vec<_>>>()?;
            let star = m.star(&flag)?;
            let parts: Vec<_> = star
                .parts
                .iter()
                .map(|p| json!({ "labels": p.labels(), "rank": p.full_rank(), "kind": p.kind() }))
                .collect();
            let mut lines = vec![format!(
                "star is the Bergman fan of a direct sum of {} minors, lineality {}",
                star.parts.len(),
                star.lineality_dim()
            )];
            for p in &star.parts {
                lines.push(format!("  rank {} on {}", p.full_rank(), braces(p.labels())));
            }
            let mut data = json!({ "parts": parts, "lineality": star.lineality_dim() });
            let mut ok = true;
            if let Some(p) = point {
                let x = input::point(&m, &p)?;
                ok = star.contains(&x);
                lines.push(format!("point in the star: {}", yes_no(ok)));
                data["member"] = json!(ok);
            }
            Ok(Report::verdict(ok, lines.join("\n"), data))
        }
    }
}
