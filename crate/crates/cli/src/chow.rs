use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bergmankit::chow::{Degree, FlagMonomial};
use bergmankit::fan::QuotientVector;
use bergmankit::{ElementSet, Matroid};
use clap::Subcommand;
use serde_json::json;

use crate::input;
use crate::report::{braces, table, yes_no, Report};

#[derive(Subcommand)]
pub enum Cmd {
    /// Degree of a top-degree monomial, from flats of a matroid or rays of a fan file.
    Degree {
        #[arg(long, required_unless_present = "fan")]
        matroid: Option<PathBuf>,
        /// A factor `a,b,c` or `a,b,c^k`; repeat for each flat.
        #[arg(long = "flat", requires = "matroid")]
        flats: Vec<String>,
        /// Also compute the degree from the presentation of the fine fan and compare.
        #[arg(long, requires = "matroid")]
        cross_check: bool,
        #[arg(long, conflicts_with = "matroid", requires = "rays")]
        fan: Option<PathBuf>,
        /// Comma-separated ray indices, repeats allowed.
        #[arg(long)]
        rays: Option<String>,
    },
    /// Check that linear relations annihilate degrees; all chains of the right length by
    /// default.
    Relations {
        #[arg(long)]
        matroid: PathBuf,
        /// Factor of the partial monomial; repeat for each flat.
        #[arg(long = "flat")]
        flats: Vec<String>,
        #[arg(long, requires = "j")]
        i: Option<String>,
        #[arg(long, requires = "i")]
        j: Option<String>,
    },
    /// Generators, minimal non-faces and linear relations of a fan file.
    Presentation {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Closed-form degrees of pairs of coarse rays of a rank-3 matroid, compared with the
    /// presentation of the coarse fan.
    Coarse3 {
        #[arg(long)]
        matroid: PathBuf,
    },
}

fn describe(m: &Matroid, mono: &FlagMonomial) -> String {
    mono.flats
        .iter()
        .zip(&mono.exponents)
        .map(|(&f, &e)| {
            let base = format!("x{}", braces(&input::names(m, f)));
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fine_rays(m: &Matroid, fan: &bergmankit::fan::Fan, mono: &FlagMonomial) -> Result<Vec<usize>> {
    let mut rays = Vec::new();
    for (&f, &e) in mono.flats.iter().zip(&mono.exponents) {
        let k = fan
            .ray_index(&QuotientVector::indicator(m.n(), f))
            .with_context(|| format!("{:?} is not a proper nonempty flat", input::names(m, f)))?;
        rays.extend(std::iter::repeat_n(k, e));
    }
    Ok(rays)
}

/// Squarefree chains of `len` proper nonempty flats.
fn chains(m: &Matroid, len: usize) -> Vec<Vec<ElementSet>> {
    let mut out = BTreeSet::new();
    for chain in m.flats().maximal_chains() {
        let inner: Vec<ElementSet> = chain
            .into_iter()
            .filter(|f| !f.is_empty() && *f != m.full())
            .collect();
        for mask in bergmankit::bitset::subsets_of_size(inner.len(), len) {
            out.insert(mask.iter().map(|i| inner[i]).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::Degree {
            matroid: Some(path),
            flats,
            cross_check,
            ..
        } => {
            let m = input::matroid(&path)?;
            let mono = input::monomial(&m, &flats)?;
            let eur = m.eur_degree(&mono)?;
            let mut human = format!("deg {} = {}", describe(&m, &mono), eur.value());
            if eur == Degree::NonFace {
                human += " (not a chain)";
            }
            let mut data = json!({ "degree": eur.value(), "chain": eur != Degree::NonFace });
            let mut ok = true;
            if cross_check {
                let fan = m.fine_fan()?;
                let presented = fan.chow_degree(&fine_rays(&m, &fan, &mono)?)?;
                ok = presented == eur.value();
                human += &format!("\npresentation: {presented}\nagree: {}", yes_no(ok));
                data["presentation"] = json!(presented);
                data["agree"] = json!(ok);
            }
            Ok(Report::verdict(ok, human, data))
        }
        Cmd::Degree {
            fan: Some(path),
            rays: Some(rays),
            ..
        } => {
            let fan = input::fan(&path)?;
            let rays: Vec<usize> = input::integers(&rays)?
                .into_iter()
                .map(|r| usize::try_from(r).context("negative ray index"))
                .collect::<Result<_>>()?;
            let d = fan.chow_degree(&rays)?;
            Ok(Report::new(format!("deg {rays:?} = {d}"), json!({ "degree": d })))
        }
        Cmd::Degree { .. } => bail!("give --matroid with --flat, or --fan with --rays"),
        Cmd::Relations { matroid, flats, i, j } => {
            let m = input::matroid(&matroid)?;
            let d = m.full_rank().saturating_sub(1);
            let partials = if flats.is_empty() {
                chains(&m, d.saturating_sub(1))
                    .into_iter()
                    .map(|c| FlagMonomial::product(&c))
                    .collect()
            } else {
                vec![input::monomial(&m, &flats)?]
            };
            let pairs: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(m.ground().index_of(&i)?, m.ground().index_of(&j)?)],
                _ => (0..m.n()).flat_map(|i| (i + 1..m.n()).map(move |j| (i, j))).collect(),
            };
            let mut failures = Vec::new();
            let mut checked = 0;
            for partial in &partials {
                for &(i, j) in &pairs {
                    checked += 1;
                    if !m.relation_annihilation_check(partial, i, j)? {
                        failures.push(format!("{} with {}, {}", describe(&m, partial), m.label(i), m.label(j)));
                    }
                }
            }
            let ok = failures.is_empty();
            let mut human = format!("{checked} checks, {} failures", failures.len());
            for f in &failures {
                human += &format!("\n  {f}");
            }
            Ok(Report::verdict(ok, human, json!({ "checked": checked, "failures": failures })))
        }
        Cmd::Presentation { fan } => {
            let fan = input::fan(&fan)?;
            let p = fan.chow_presentation();
            let mut human = format!(
                "{} generators, {} minimal non-faces, {} linear relations, unimodular: {}",
                p.generators.len(),
                p.non_faces.len(),
                p.relations.len(),
                yes_no(p.unimodular)
            );
            human += &format!("\ngenerators: {}", p.generators.join(" "));
            for nf in &p.non_faces {
                let names: Vec<&str> = nf.iter().map(|&k| p.generators[k].as_str()).collect();
                human += &format!("\nnon-face: {}", names.join(" "));
            }
            for rel in &p.relations {
                let terms: Vec<String> = rel
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| format!("{c:+} x{k}"))
                    .collect();
                human += &format!("\nrelation: {} = 0", terms.join(" "));
            }
            Ok(Report::new(human, json!(p)))
        }
        Cmd::Coarse3 { matroid } => {
            let m = input::matroid(&matroid)?;
            let fan = m.coarse_fan()?;
            let flats: Vec<ElementSet> = fan
                .rays()
                .iter()
                .map(|r| r.flat.context("coarse ray without a flat"))
                .collect::<Result<_>>()?;
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            let mut ok = true;
            for a in 0..flats.len() {
                for b in a..flats.len() {
                    let closed = m.coarse_rank3_degree(flats[a], flats[b])?;
                    let presented = fan.chow_degree(&[a, b])?;
                    ok &= closed == presented;
                    let (fa, fb) = (input::names(&m, flats[a]), input::names(&m, flats[b]));
                    rows.push(vec![braces(&fa), braces(&fb), closed.to_string(), presented.to_string()]);
                    entries.push(json!({ "a": fa, "b": fb, "closed_form": closed, "presentation": presented }));
                }
            }
            let human = format!(
                "{}\nagree: {}",
                table(&["x_a", "x_b", "closed form", "presentation"], &rows),
                yes_no(ok)
            );
            Ok(Report::verdict(ok, human, json!({ "degrees": entries, "agree": ok })))
        }
    }
}
