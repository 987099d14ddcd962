//! Parameter grids for the suites and their text syntax.
//!
//! A grid is either a named preset (`default`, `default-tiny`) or a list of
//! entries separated by `;`. Each entry is a comma-separated list of
//! `key=value` pairs. Integer values may be ranges `a..b` (inclusive), which
//! expand to the cartesian product. `k=1:1:1` lists the uniformities of a
//! k-ary instance. `max=3` caps family sizes of an exhaustive entry and
//! `random=N` asks for `N` seeded random cases instead.
//!
//! ```text
//! n=2..6,r=1,s=1,t=1; n=3..5,k=1:1:1,t=1
//! n=4,r=2,s=2,t=1..2,max=3; n=8,r=3,s=3,t=2,random=10000
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SuiteKind;
use crate::setcore::Params;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    Exhaustive { max_family_size: Option<usize> },
    Random { cases: usize },
}

/// A pair population `C([n], r) × C([n], s)` at intersection level `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCase {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub sampling: Sampling,
}

/// All `t`-intersecting subfamilies of `C([n], p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCase {
    pub n: usize,
    pub p: usize,
    pub t: usize,
}

/// `cases` random families over `[n]` of mixed set sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MechanicsCase {
    pub n: usize,
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Grid {
    Pairs(Vec<PairCase>),
    Layers(Vec<LayerCase>),
    Instances(Vec<Params>),
    Mechanics(Vec<MechanicsCase>),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Pairs(v) => v.len(),
            Grid::Layers(v) => v.len(),
            Grid::Instances(v) => v.len(),
            Grid::Mechanics(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One line per entry.
    pub fn describe(&self) -> Vec<String> {
        match self {
            Grid::Pairs(v) => v
                .iter()
                .map(|c| {
                    let how = match c.sampling {
                        Sampling::Exhaustive {
                            max_family_size: Some(m),
                        } => format!("max={m}"),
                        Sampling::Exhaustive {
                            max_family_size: None,
                        } => "exhaustive".into(),
                        Sampling::Random { cases } => format!("random={cases}"),
                    };
                    format!("n={},r={},s={},t={},{how}", c.n, c.r, c.s, c.t)
                })
                .collect(),
            Grid::Layers(v) => v
                .iter()
                .map(|c| format!("n={},p={},t={}", c.n, c.p, c.t))
                .collect(),
            Grid::Instances(v) => v.iter().map(|p| p.to_string()).collect(),
            Grid::Mechanics(v) => v
                .iter()
                .map(|c| format!("n={},random={}", c.n, c.cases))
                .collect(),
        }
    }
}

fn pair(n: usize, r: usize, s: usize, t: usize, sampling: Sampling) -> PairCase {
    PairCase {
        n,
        r,
        s,
        t,
        sampling,
    }
}

const fn capped(m: usize) -> Sampling {
    Sampling::Exhaustive {
        max_family_size: Some(m),
    }
}

/// The preset grid `name` for `suite`.
pub fn preset(suite: SuiteKind, name: &str) -> Result<Grid> {
    let tiny = match name {
        "default" => false,
        "default-tiny" => true,
        other => return Err(Error::Grid(format!("unknown preset {other:?}"))),
    };
    let grid = match suite {
        SuiteKind::CrossPreservation | SuiteKind::Window => {
            let mut v = vec![pair(4, 2, 2, 1, capped(3)), pair(4, 2, 2, 2, capped(3))];
            let random = if tiny { 1000 } else { 10_000 };
            v.push(pair(8, 3, 3, 2, Sampling::Random { cases: random }));
            if suite == SuiteKind::Window {
                v.push(pair(6, 2, 2, 1, capped(3)));
                v.push(pair(7, 2, 3, 2, Sampling::Random { cases: random }));
            }
            Grid::Pairs(v)
        }
        SuiteKind::StarStability => Grid::Layers(vec![
            LayerCase { n: 4, p: 2, t: 1 },
            LayerCase { n: 5, p: 2, t: 1 },
        ]),
        SuiteKind::PairStability => {
            let random = if tiny { 200 } else { 2000 };
            Grid::Pairs(vec![
                pair(
                    4,
                    1,
                    2,
                    1,
                    Sampling::Exhaustive {
                        max_family_size: None,
                    },
                ),
                pair(9, 2, 3, 2, Sampling::Random { cases: random }),
            ])
        }
        SuiteKind::Theorem => {
            let mut v = Vec::new();
            for n in 2..=6 {
                v.push(Params::pair(n, 1, 1, 1)?);
            }
            for n in 3..=6 {
                v.push(Params::pair(n, 2, 2, 2)?);
            }
            for n in 4..=6 {
                v.push(Params::pair(n, 1, 2, 1)?);
            }
            for n in 3..=5 {
                v.push(Params::k_ary(n, vec![1, 1, 1], 1)?);
            }
            if !tiny {
                v.push(Params::pair(8, 2, 2, 1)?);
            }
            Grid::Instances(v)
        }
        SuiteKind::Compression => {
            let per_n = if tiny { 100 } else { 1000 };
            Grid::Mechanics(
                (1..=10)
                    .map(|n| MechanicsCase { n, cases: per_n })
                    .collect(),
            )
        }
    };
    Ok(grid)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Range(usize, usize),
    List(Vec<usize>),
}

fn parse_number(key: &str, text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::Grid(format!("{key}: {text:?} is not a nonnegative integer")))
}

fn parse_value(key: &str, text: &str) -> Result<Value> {
    if key == "k" {
        let list = text
            .split(':')
            .map(|x| parse_number(key, x))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Value::List(list));
    }
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_number(key, lo)?, parse_number(key, hi)?);
            if lo > hi {
                return Err(Error::Grid(format!("{key}: empty range {lo}..{hi}")));
            }
            Ok(Value::Range(lo, hi))
        }
        None => {
            let v = parse_number(key, text)?;
            Ok(Value::Range(v, v))
        }
    }
}

/// Expands one entry into assignments of every key to a single value.
fn expand(entry: &str) -> Result<Vec<BTreeMap<String, Value>>> {
    let mut fields: Vec<(String, Value)> = Vec::new();
    for part in entry.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Grid(format!("expected key=value, got {part:?}")))?;
        let key = key.trim().to_string();
        if fields.iter().any(|(k, _)| *k == key) {
            return Err(Error::Grid(format!("key {key:?} given twice")));
        }
        let value = parse_value(&key, value.trim())?;
        fields.push((key, value));
    }
    let mut out = vec![BTreeMap::new()];
    for (key, value) in fields {
        let choices: Vec<Value> = match value {
            Value::Range(lo, hi) => (lo..=hi).map(|v| Value::Range(v, v)).collect(),
            list => vec![list],
        };
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for m in &out {
            for c in &choices {
                let mut m = m.clone();
                m.insert(key.clone(), c.clone());
                next.push(m);
            }
        }
        out = next;
    }
    Ok(out)
}

struct Entry(BTreeMap<String, Value>);

impl Entry {
    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::Grid(format!(
                "unexpected key {k:?}; allowed: {}",
                keys.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn opt(&self, key: &str) -> Option<usize> {
        match self.0.get(key) {
            Some(Value::Range(v, _)) => Some(*v),
            _ => None,
        }
    }

    fn get(&self, key: &str) -> Result<usize> {
        self.opt(key)
            .ok_or_else(|| Error::Grid(format!("missing key {key:?}")))
    }

    fn list(&self, key: &str) -> Option<Vec<usize>> {
        match self.0.get(key) {
            Some(Value::List(v)) => Some(v.clone()),
            _ => None,
        }
    }

    fn sampling(&self) -> Result<Sampling> {
        match (self.opt("max"), self.opt("random")) {
            (Some(_), Some(_)) => Err(Error::Grid("max and random are exclusive".into())),
            (_, Some(cases)) => Ok(Sampling::Random { cases }),
            (max, None) => Ok(Sampling::Exhaustive {
                max_family_size: max,
            }),
        }
    }
}

/// Parses `spec` as a grid for `suite`. Named presets are accepted too.
pub fn parse_grid(suite: SuiteKind, spec: &str) -> Result<Grid> {
    let spec = spec.trim();
    if spec == "default" || spec == "default-tiny" {
        return preset(suite, spec);
    }
    let mut entries = Vec::new();
    for raw in spec.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        entries.extend(expand(raw)?.into_iter().map(Entry));
    }
    if entries.is_empty() {
        return Err(Error::Grid("empty grid".into()));
    }
    let grid = match suite {
        SuiteKind::CrossPreservation | SuiteKind::Window | SuiteKind::PairStability => {
            let mut v = Vec::new();
            for e in &entries {
                e.allow(&["n", "r", "s", "t", "max", "random"])?;
                let c = pair(
                    e.get("n")?,
                    e.get("r")?,
                    e.get("s")?,
                    e.get("t")?,
                    e.sampling()?,
                );
                Params::pair(c.n, c.r, c.s, c.t)?;
                v.push(c);
            }
            Grid::Pairs(v)
        }
        SuiteKind::StarStability => {
            let mut v = Vec::new();
            for e in &entries {
                e.allow(&["n", "p", "t"])?;
                let c = LayerCase {
                    n: e.get("n")?,
                    p: e.get("p")?,
                    t: e.get("t")?,
                };
                Params::pair(c.n, c.p, c.p, c.t)?;
                v.push(c);
            }
            Grid::Layers(v)
        }
        SuiteKind::Theorem => {
            let mut v = Vec::new();
            for e in &entries {
                e.allow(&["n", "r", "s", "t", "k"])?;
                let (n, t) = (e.get("n")?, e.get("t")?);
                let params = match e.list("k") {
                    Some(list) => {
                        if e.opt("r").is_some() || e.opt("s").is_some() {
                            return Err(Error::Grid("k is exclusive with r and s".into()));
                        }
                        Params::k_ary(n, list, t)?
                    }
                    None => Params::pair(n, e.get("r")?, e.get("s")?, t)?,
                };
                v.push(params);
            }
            Grid::Instances(v)
        }
        SuiteKind::Compression => {
            let mut v = Vec::new();
            for e in &entries {
                e.allow(&["n", "random"])?;
                let c = MechanicsCase {
                    n: e.get("n")?,
                    cases: e.get("random")?,
                };
                if c.n == 0 || c.n > crate::setcore::MAX_UNIVERSE {
                    return Err(Error::UniverseSize(c.n));
                }
                v.push(c);
            }
            Grid::Mechanics(v)
        }
    };
    Ok(grid)
}
