use std::path::PathBuf;

use anyhow::{bail, Result};
use bergmankit::fan::Fan;
use bergmankit::Matroid;
use clap::Subcommand;
use serde_json::json;

use crate::input;
use crate::report::{braces, table, yes_no, Report};

#[derive(Subcommand)]
pub enum Cmd {
    /// Weights of csm_k on the k-cones of the fine fan.
    Weights {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Check the balancing condition, for every k by default.
    Balancing {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compare the flag formula with the weights read off the support.
    CrossCheck {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn degrees(m: &Matroid, k: Option<usize>) -> Result<Vec<usize>> {
    let d = m.full_rank().saturating_sub(1);
    match k {
        Some(k) if k > d => bail!("k = {k} exceeds the fan dimension {d}"),
        Some(k) => Ok(vec![k]),
        None => Ok((0..=d).collect()),
    }
}

fn cone_flags(m: &Matroid, fan: &Fan, cone: &[usize]) -> String {
    let flats: Vec<String> = cone
        .iter()
        .map(|&r| fan.ray(r).flat.map_or("?".into(), |f| braces(&input::names(m, f))))
        .collect();
    if flats.is_empty() {
        "origin".into()
    } else {
        flats.join(" < ")
    }
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::Weights { matroid, k } => {
            let m = input::matroid(&matroid)?;
            let fan = m.fine_fan()?;
            let w = m.csm_weights(&fan, k)?;
            let rows: Vec<Vec<String>> = w
                .cones
                .iter()
                .zip(&w.weights)
                .map(|(c, x)| vec![format!("{c:?}"), cone_flags(&m, &fan, c), x.to_string()])
                .collect();
            Ok(Report::new(table(&["cone", "flag", "weight"], &rows), json!(w)))
        }
        Cmd::Balancing { matroid, k } => {
            let m = input::matroid(&matroid)?;
            let fan = m.fine_fan()?;
            let mut lines = Vec::new();
            let mut data = Vec::new();
            let mut ok = true;
            for k in degrees(&m, k)? {
                let failures = m.csm_weights(&fan, k)?.balancing_failures(&fan);
                ok &= failures.is_empty();
                lines.push(format!("k = {k}: balanced: {}", yes_no(failures.is_empty())));
                for tau in &failures {
                    lines.push(format!("  fails at {tau:?}"));
                }
                data.push(json!({ "k": k, "failures": failures }));
            }
            Ok(Report::verdict(ok, lines.join("\n"), json!({ "balanced": ok, "degrees": data })))
        }
        Cmd::CrossCheck { matroid, k } => {
            let m = input::matroid(&matroid)?;
            let fan = m.fine_fan()?;
            let mut mismatches = Vec::new();
            let mut checked = 0;
            for k in degrees(&m, k)? {
                let w = m.csm_weights(&fan, k)?;
                for (c, &x) in w.cones.iter().zip(&w.weights) {
                    checked += 1;
                    let s = m.csm_weight_from_support(&fan, c)?;
                    if s != x {
                        mismatches.push(json!({ "cone": c, "flag_formula": x, "support": s }));
                    }
                }
            }
            let ok = mismatches.is_empty();
            let human = format!("{checked} cones checked, {} mismatches, agree: {}", mismatches.len(), yes_no(ok));
            Ok(Report::verdict(ok, human, json!({ "checked": checked, "mismatches": mismatches })))
        }
    }
}
