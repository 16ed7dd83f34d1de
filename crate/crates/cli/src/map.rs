use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bergmankit::maps::{group_closure_order, ray_permutation, verify_fan_isomorphism, LatticeMap};
use clap::Subcommand;
use serde_json::json;

use crate::fan::{build, StructureArg};
use crate::input;
use crate::report::{braces, yes_no, Report};

#[derive(Subcommand)]
pub enum Cmd {
    /// The linear map induced by a matroid isomorphism; one is searched for when no
    /// bijection is given. Exits with 2 when the matroids are not isomorphic.
    MatroidIso {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// `a=b` pairs separated by commas.
        #[arg(long)]
        bijection: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Do the lines through pairs of basis elements partition the other elements?
    CremonaCriterion {
        #[arg(long)]
        matroid: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        basis: String,
    },
    /// The Cremona map of a basis. Exits with 2 when the criterion fails, unless
    /// `--unchecked` is given.
    Cremona {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        basis: String,
        #[arg(long)]
        unchecked: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The splitting map of a parallel connection, checked by sampling both ways.
    ParallelSplit {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, default_value_t = 60)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Does a map induce an isomorphism between two fans?
    VerifyIso {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        fan: PathBuf,
        /// Defaults to the source fan.
        #[arg(long)]
        target_fan: Option<PathBuf>,
    },
    /// Order of the group of ray permutations generated by maps of a fan to itself.
    GroupOrder {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, value_enum)]
        structure: StructureArg,
        /// Include all matroid automorphisms as generators.
        #[arg(long)]
        automorphisms: bool,
        /// Include the Cremona map of this basis; repeat for several.
        #[arg(long = "cremona")]
        cremona: Vec<String>,
        /// Include a map file; repeat for several.
        #[arg(long = "map")]
        maps: Vec<PathBuf>,
    },
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::MatroidIso {
            source,
            target,
            bijection,
            out,
        } => {
            let (m1, m2) = (input::matroid(&source)?, input::matroid(&target)?);
            let f = match bijection {
                Some(b) => {
                    let pairs = b
                        .split(',')
                        .map(|p| p.split_once('=').map(|(a, b)| (a.trim(), b.trim())))
                        .collect::<Option<Vec<_>>>()
                        .context("bijection pairs are written a=b")?;
                    let f = m1.bijection_from_labels(&m2, &pairs)?;
                    if let Err(e) = m1.check_isomorphism(&m2, &f) {
                        return Ok(Report::verdict(false, e.to_string(), json!({ "isomorphism": false, "reason": e.to_string() })));
                    }
                    f
                }
                None => match m1.isomorphisms_to(&m2).into_iter().next() {
                    Some(f) => f,
                    None => {
                        return Ok(Report::verdict(false, "not isomorphic".into(), json!({ "isomorphism": false })))
                    }
                },
            };
            let map = LatticeMap::from_matroid_iso(&m1, &m2, &f)?;
            let pairs: Vec<String> = f
                .iter()
                .enumerate()
                .map(|(i, &j)| format!("{}={}", m1.label(i), m2.label(j)))
                .collect();
            Report::artifact(map.to_json(), out.as_deref(), format!("isomorphism {}", pairs.join(",")))
        }
        Cmd::CremonaCriterion { matroid, basis } => {
            let m = input::matroid(&matroid)?;
            let b = input::set(&m, &basis)?;
            let crit = m.cremona_criterion(b)?;
            let mut lines = vec![format!("criterion holds: {}", yes_no(crit.holds))];
            let mut parts = Vec::new();
            for &((i, j), r) in &crit.residues {
                let names = input::names(&m, r);
                lines.push(format!("  line {{{} {}}}: {}", m.label(i), m.label(j), braces(&names)));
                parts.push(json!({ "pair": [m.label(i), m.label(j)], "residue": names }));
            }
            if let Some(why) = &crit.failure {
                lines.push(format!("failure: {why}"));
            }
            let data = json!({ "holds": crit.holds, "residues": parts, "failure": crit.failure });
            Ok(Report::verdict(crit.holds, lines.join("\n"), data))
        }
        Cmd::Cremona {
            matroid,
            basis,
            unchecked,
            out,
        } => {
            let m = input::matroid(&matroid)?;
            let b = input::set(&m, &basis)?;
            if !unchecked {
                let crit = m.cremona_criterion(b)?;
                if let Some(why) = crit.failure {
                    return Ok(Report::verdict(
                        false,
                        format!("criterion fails: {why}"),
                        json!({ "holds": false, "failure": why }),
                    ));
                }
            }
            let map = m.cremona_map_unchecked(b)?;
            let summary = format!(
                "Cremona map of {}, ones multiplier {}",
                braces(&input::names(&m, b)),
                map.ones_multiplier().map_or("undefined".into(), |c| c.to_string())
            );
            Report::artifact(map.to_json(), out.as_deref(), summary)
        }
        Cmd::ParallelSplit {
            matroid,
            samples,
            seed,
            out,
        } => {
            let m = input::matroid(&matroid)?;
            let report = m.verify_parallel_split(samples, seed)?;
            let ok = report.passes(samples);
            if let Some(path) = &out {
                std::fs::write(path, format!("{}\n", m.parallel_split_map()?.to_json()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut human = format!(
                "forward: {} on-support, {} off-support correct\nbackward: {} on-support, {} off-support correct\npasses: {}",
                report.forward_on,
                report.forward_off,
                report.backward_on,
                report.backward_off,
                yes_no(ok)
            );
            for f in &report.failures {
                human += &format!("\n  {f}");
            }
            Ok(Report::verdict(ok, human, json!(report)))
        }
        Cmd::VerifyIso {
            map,
            fan,
            target_fan,
        } => {
            let map = input::map(&map)?;
            let f1 = input::fan(&fan)?;
            let f2 = match target_fan {
                Some(p) => input::fan(&p)?,
                None => f1.clone(),
            };
            let report = verify_fan_isomorphism(&map, &f1, &f2);
            let ok = report.is_isomorphism();
            let mut human = format!("unimodular: {}\nfan isomorphism: {}", yes_no(report.unimodular), yes_no(ok));
            for f in &report.failures {
                human += &format!("\n  {f}");
            }
            Ok(Report::verdict(ok, human, json!(report)))
        }
        Cmd::GroupOrder {
            matroid,
            structure,
            automorphisms,
            cremona,
            maps,
        } => {
            let m = input::matroid(&matroid)?;
            let fan = build(&m, structure)?;
            let mut gens = Vec::new();
            if automorphisms {
                for f in m.automorphisms() {
                    gens.push(ray_permutation(&LatticeMap::from_matroid_iso(&m, &m, &f)?, &fan)?);
                }
            }
            for b in &cremona {
                gens.push(ray_permutation(&m.cremona_map(input::set(&m, b)?)?, &fan)?);
            }
            for p in &maps {
                gens.push(ray_permutation(&input::map(p)?, &fan)?);
            }
            if gens.is_empty() {
                bail!("no generators: give --automorphisms, --cremona or --map");
            }
            let order = group_closure_order(&gens)?;
            Ok(Report::new(
                format!("{} generators, group order {order}", gens.len()),
                json!({ "generators": gens.len(), "order": order }),
            ))
        }
    }
}
