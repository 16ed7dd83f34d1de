use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table, `table[a][b] = a * b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawGroup> for GroupTable {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        GroupTable::new(raw.names, raw.table)
    }
}

impl From<GroupTable> for RawGroup {
    fn from(g: GroupTable) -> Self {
        RawGroup {
            names: g.names,
            table: g.table,
        }
    }
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidGroup(m.to_string()));
        if n == 0 {
            return bad("empty group");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad("table is not square with one row per element");
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range");
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return bad("duplicate element name");
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        else {
            return bad("no identity element");
        };
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => {
                    return Err(Error::InvalidGroup(format!("{} has no inverse", names[a])));
                }
            }
        }
        Ok(GroupTable {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// Z/n with elements named `e`, `g`, `g2`, ...
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(names, table)
    }

    pub fn trivial() -> Self {
        GroupTable::cyclic(1).expect("trivial group is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        let z3 = GroupTable::cyclic(3).unwrap();
        assert_eq!(z3.mul(1, 2), 0);
        assert_eq!(z3.inv(1), 2);
        assert_eq!(z3.names()[2], "g2");
    }

    #[test]
    fn rejects_non_groups() {
        // no inverses: {0,1} under max
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(GroupTable::new(vec!["a".into(), "b".into()], t).is_err());
        // not associative
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(GroupTable::new(vec!["a".into(), "b".into(), "c".into()], t).is_err());
    }

    #[test]
    fn serde_roundtrip_validates() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let s = serde_json::to_string(&z2).unwrap();
        let back: GroupTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z2);
        assert!(serde_json::from_str::<GroupTable>(r#"{"names":["a"],"table":[[1]]}"#).is_err());
    }
}
