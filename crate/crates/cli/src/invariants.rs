use std::path::PathBuf;

use anyhow::Result;
use clap::{Subcommand, ValueEnum};
use serde_json::json;

use crate::input;
use crate::report::{table, yes_no, Report};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Mobius,
    Deletion,
    Both,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Characteristic and reduced characteristic polynomial.
    Charpoly {
        #[arg(long)]
        matroid: PathBuf,
        /// `both` compares the two routes and exits with 2 if they differ.
        #[arg(long, value_enum, default_value_t = Method::Mobius)]
        method: Method,
    },
    /// The beta invariant.
    Beta {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Unsigned coefficients of the reduced characteristic polynomial.
    Mu {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Dimension of the span of p-fold wedges of cone generators.
    Osdim {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// Compare mu^p with the wedge dimension for every p.
    VerifyOs {
        #[arg(long)]
        matroid: PathBuf,
    },
}

pub fn run(cmd: Cmd) -> Result<Report> {
    match cmd {
        Cmd::Charpoly { matroid, method } => {
            let m = input::matroid(&matroid)?;
            let mobius = (method != Method::Deletion)
                .then(|| m.characteristic_polynomial())
                .transpose()?;
            let deletion = (method != Method::Mobius)
                .then(|| m.characteristic_polynomial_by_deletion())
                .transpose()?;
            let chi = mobius.clone().or(deletion.clone()).expect("one route ran");
            let reduced = m.reduced_characteristic_polynomial()?;
            let ok = match (&mobius, &deletion) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            let mut lines = vec![format!("chi(t) = {chi}"), format!("reduced(t) = {reduced}")];
            if method == Method::Both {
                lines.push(format!(
                    "deletion-contraction: {}\nroutes agree: {}",
                    deletion.as_ref().expect("ran"),
                    yes_no(ok)
                ));
            }
            let data = json!({
                "characteristic": chi,
                "reduced": reduced,
                "mobius": mobius,
                "deletion_contraction": deletion,
                "agree": ok,
            });
            Ok(Report::verdict(ok, lines.join("\n"), data))
        }
        Cmd::Beta { matroid } => {
            let beta = input::matroid(&matroid)?.beta()?;
            Ok(Report::new(format!("beta = {beta}"), json!({ "beta": beta })))
        }
        Cmd::Mu { matroid } => {
            let mu = input::matroid(&matroid)?.mu_vector()?;
            let rows: Vec<Vec<String>> = mu
                .iter()
                .enumerate()
                .map(|(p, x)| vec![p.to_string(), x.to_string()])
                .collect();
            Ok(Report::new(table(&["p", "mu"], &rows), json!({ "mu": mu })))
        }
        Cmd::Osdim { matroid, p } => {
            let r = input::matroid(&matroid)?.os_dimension(p)?;
            Ok(Report::new(
                format!("p = {}: dimension {} in an ambient space of dimension {}", r.p, r.dimension, r.ambient),
                json!(r),
            ))
        }
        Cmd::VerifyOs { matroid } => {
            let report = input::matroid(&matroid)?.verify_os_identity()?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.mu.to_string(),
                        r.wedge_dim.to_string(),
                        yes_no(r.matches).into(),
                    ]
                })
                .collect();
            let ok = report.all_match();
            let human = format!(
                "reduced(t) = {}\n{}\nall match: {}",
                report.reduced,
                table(&["p", "mu", "wedge dim", "match"], &rows),
                yes_no(ok)
            );
            Ok(Report::verdict(ok, human, json!(report)))
        }
    }
}
