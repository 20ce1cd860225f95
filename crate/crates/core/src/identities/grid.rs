use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rational::{parse_rational, Rational};

use super::{IdentityId, Param, ParamAssignment};

/// Upper bound on the number of assignments a single grid may produce.
pub const MAX_GRID_SIZE: usize = 5_000_000;

const DEFAULT_GRIDS_JSON: &str = include_str!("../../data/grids/default.json");

/// Inclusive integer range with optional excluded values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub from: i64,
    pub to: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<i64>,
}

impl IntRange {
    pub fn new(from: i64, to: i64) -> Self {
        IntRange {
            from,
            to,
            exclude: Vec::new(),
        }
    }

    pub fn excluding(mut self, values: &[i64]) -> Self {
        self.exclude.extend_from_slice(values);
        self
    }

    pub fn values(&self) -> Vec<i64> {
        (self.from..=self.to)
            .filter(|v| !self.exclude.contains(v))
            .collect()
    }
}

/// Per-parameter value sets. The sweep is the cartesian product in the
/// identity's signature order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamGrid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<IntRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<IntRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<IntRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<IntRange>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "rational_list"
    )]
    pub x: Option<Vec<Rational>>,
}

impl ParamGrid {
    fn range(&self, p: Param) -> Option<&IntRange> {
        match p {
            Param::M => self.m.as_ref(),
            Param::K => self.k.as_ref(),
            Param::T => self.t.as_ref(),
            Param::R => self.r.as_ref(),
            Param::X => None,
        }
    }

    fn present(&self, p: Param) -> bool {
        match p {
            Param::X => self.x.is_some(),
            other => self.range(other).is_some(),
        }
    }

    /// Checks the grid against the identity's signature and size cap.
    pub fn validate(&self, id: IdentityId) -> Result<()> {
        let signature = id.signature();
        for p in [Param::M, Param::K, Param::T, Param::R, Param::X] {
            let needed = signature.contains(&p);
            match (needed, self.present(p)) {
                (true, false) => {
                    return Err(domain(format!(
                        "grid for {id} lacks parameter {}",
                        p.name()
                    )))
                }
                (false, true) => {
                    return Err(domain(format!("{id} takes no parameter {}", p.name())))
                }
                _ => {}
            }
            if let Some(range) = self.range(p) {
                if range.from > range.to {
                    return Err(domain(format!("empty range for {}", p.name())));
                }
            }
        }
        if let Some(k) = &self.k {
            if k.from < 0 {
                return Err(domain("k range must be non-negative"));
            }
        }
        if self.x.as_ref().is_some_and(Vec::is_empty) {
            return Err(domain("x list is empty"));
        }
        let mut size: usize = 1;
        for &p in signature {
            let n = match p {
                Param::X => self.x.as_ref().map_or(0, Vec::len),
                other => {
                    let r = self.range(other).unwrap();
                    (r.to - r.from + 1) as usize
                }
            };
            size = size.saturating_mul(n);
        }
        if size > MAX_GRID_SIZE {
            return Err(domain(format!(
                "grid has {size} assignments, above the cap of {MAX_GRID_SIZE}"
            )));
        }
        Ok(())
    }

    /// All assignments, in lexicographic order of the signature tuple.
    pub fn assignments(&self, id: IdentityId) -> Result<Vec<ParamAssignment>> {
        self.validate(id)?;
        let mut out = vec![ParamAssignment::new()];
        for &p in id.signature() {
            let mut next = Vec::new();
            if p == Param::X {
                let mut xs = self.x.clone().unwrap_or_default();
                xs.sort();
                xs.dedup();
                for base in &out {
                    for x in &xs {
                        next.push(base.clone().with_x(x.clone()));
                    }
                }
            } else {
                let values = self.range(p).unwrap().values();
                for base in &out {
                    for &v in &values {
                        let a = base.clone();
                        next.push(match p {
                            Param::M => a.with_m(v),
                            Param::K => a.with_k(v),
                            Param::T => a.with_t(v),
                            _ => a.with_r(v),
                        });
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// A grid bound to the identity it sweeps; the grid-file record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub identity: IdentityId,
    #[serde(flatten)]
    pub grid: ParamGrid,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridFile {
    Many(Vec<GridEntry>),
    One(GridEntry),
}

/// Parses a grid file holding one entry or an array of entries.
pub fn parse_grid_file(text: &str) -> Result<Vec<GridEntry>> {
    let parsed: GridFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid file: {e}")))?;
    let entries = match parsed {
        GridFile::Many(v) => v,
        GridFile::One(e) => vec![e],
    };
    for e in &entries {
        e.grid.validate(e.identity)?;
    }
    Ok(entries)
}

/// Reads and parses a grid file. I/O failures surface as `std::io::Error`
/// so callers can tell them apart from malformed content.
pub fn load_grid_file(path: &Path) -> std::io::Result<Result<Vec<GridEntry>>> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_grid_file(&text))
}

/// The built-in grids, one per identity (also shipped as
/// `data/grids/default.json`).
pub fn default_grids() -> &'static [GridEntry] {
    static GRIDS: OnceLock<Vec<GridEntry>> = OnceLock::new();
    GRIDS.get_or_init(|| parse_grid_file(DEFAULT_GRIDS_JSON).expect("built-in grids are valid"))
}

pub fn default_grid(id: IdentityId) -> &'static ParamGrid {
    &default_grids()
        .iter()
        .find(|e| e.identity == id)
        .expect("every identity has a default grid")
        .grid
}

mod rational_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|xs| xs.iter().map(ToString::to_string).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|xs| {
            xs.iter()
                .map(|x| parse_rational(x).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn every_identity_has_exactly_one_default_grid() {
        for id in IdentityId::ALL {
            let n = default_grids().iter().filter(|e| e.identity == id).count();
            assert_eq!(n, 1, "{id}");
        }
        assert_eq!(default_grids().len(), IdentityId::ALL.len());
    }

    #[test]
    fn shipped_file_matches_compiled_grids() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/grids/default.json");
        let shipped = load_grid_file(Path::new(path)).unwrap().unwrap();
        assert_eq!(shipped, default_grids());
    }

    #[test]
    fn lexicographic_assignments() {
        let grid = ParamGrid {
            m: Some(IntRange::new(-1, 0)),
            k: Some(IntRange::new(0, 1)),
            ..Default::default()
        };
        let got: Vec<_> = grid
            .assignments(IdentityId::W1)
            .unwrap()
            .iter()
            .map(|a| (a.m.unwrap(), a.k.unwrap()))
            .collect();
        assert_eq!(got, vec![(-1, 0), (-1, 1), (0, 0), (0, 1)]);
    }

    #[test]
    fn x_values_sorted_and_deduplicated() {
        let text = r#"{"identity": "AP", "t": {"from": 1, "to": 1}, "r": {"from": 0, "to": 0},
                      "k": {"from": 0, "to": 0}, "x": ["1/2", "-1", "2/4"]}"#;
        let entries = parse_grid_file(text).unwrap();
        let xs: Vec<_> = entries[0]
            .grid
            .assignments(IdentityId::AP)
            .unwrap()
            .into_iter()
            .map(|a| a.x.unwrap())
            .collect();
        assert_eq!(xs, vec![int(-1), ratio(1, 2)]);
    }

    #[test]
    fn exclusions_and_validation() {
        let r = IntRange::new(-5, 1).excluding(&[-4, -1, 0]);
        assert_eq!(r.values(), vec![-5, -3, -2, 1]);
        let bad = ParamGrid {
            m: Some(IntRange::new(0, 1)),
            ..Default::default()
        };
        assert!(bad.validate(IdentityId::W1).is_err());
        assert!(bad.validate(IdentityId::NEG).is_ok());
        let extra = ParamGrid {
            m: Some(IntRange::new(0, 1)),
            x: Some(vec![int(1)]),
            ..Default::default()
        };
        assert!(extra.validate(IdentityId::NEG).is_err());
        let negative_k = ParamGrid {
            k: Some(IntRange::new(-1, 3)),
            ..Default::default()
        };
        assert!(negative_k.validate(IdentityId::WP1).is_err());
        let huge = ParamGrid {
            m: Some(IntRange::new(0, 10_000_000)),
            ..Default::default()
        };
        assert!(huge.validate(IdentityId::NEG).is_err());
        assert!(parse_grid_file("{\"identity\": \"NOPE\"}").is_err());
        assert!(parse_grid_file("not json").is_err());
    }
}
