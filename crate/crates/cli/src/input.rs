use std::path::Path;

use anyhow::{bail, Context, Result};
use bergmankit::chow::FlagMonomial;
use bergmankit::fan::{Fan, QuotientVector};
use bergmankit::maps::LatticeMap;
use bergmankit::{ElementSet, Matroid};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn matroid(path: &Path) -> Result<Matroid> {
    Matroid::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn fan(path: &Path) -> Result<Fan> {
    Fan::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn map(path: &Path) -> Result<LatticeMap> {
    LatticeMap::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Comma-separated labels; the empty string is the empty set.
pub fn labels(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

pub fn set(m: &Matroid, s: &str) -> Result<ElementSet> {
    Ok(m.ground().set_of(&labels(s))?)
}

pub fn flat(m: &Matroid, s: &str) -> Result<ElementSet> {
    let f = set(m, s)?;
    if !m.is_flat(f) {
        bail!("{{{s}}} is not a flat");
    }
    Ok(f)
}

/// Flats written `a,b,c` or `a,b,c^k`.
pub fn monomial(m: &Matroid, factors: &[String]) -> Result<FlagMonomial> {
    let mut parts = Vec::with_capacity(factors.len());
    for factor in factors {
        let (body, exp) = match factor.rsplit_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().with_context(|| format!("exponent in {factor}"))?),
            None => (factor.as_str(), 1),
        };
        parts.push((flat(m, body)?, exp));
    }
    Ok(FlagMonomial::new(parts))
}

pub fn integers(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("integer {x:?}")))
        .collect()
}

pub fn point(m: &Matroid, s: &str) -> Result<QuotientVector> {
    let coords = integers(s)?;
    if coords.len() != m.n() {
        bail!("point has {} coordinates, the matroid has {} elements", coords.len(), m.n());
    }
    Ok(QuotientVector::new(coords))
}

/// `0-1,1-2,...`
pub fn edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|e| {
            let (a, b) = e
                .trim()
                .split_once('-')
                .with_context(|| format!("edge {e:?} is not of the form u-v"))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect()
}

/// `0,1,2;1,2,3;...`
pub fn index_lists(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().with_context(|| format!("index {x:?}")))
                .collect()
        })
        .collect()
}

pub fn names(m: &Matroid, s: ElementSet) -> Vec<String> {
    m.ground().names(s)
}
