use crate::constructions::{clique_path, friendship};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{from_graph6, to_graph6};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A forbidden pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    CliquePath { k: usize, r: usize },
    Friendship { k: usize, r: usize },
    Clique { r: usize },
    Explicit(Graph),
}

impl PatternSpec {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            PatternSpec::CliquePath { k, r } => clique_path(*k, *r),
            PatternSpec::Friendship { k, r } => friendship(*k, *r),
            PatternSpec::Clique { r } => Ok(Graph::complete(*r)),
            PatternSpec::Explicit(g) => Ok(g.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.graph().map(|_| ())
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::CliquePath { k, r } => write!(f, "clique-path:{k},{r}"),
            PatternSpec::Friendship { k, r } => write!(f, "friendship:{k},{r}"),
            PatternSpec::Clique { r } => write!(f, "clique:{r}"),
            PatternSpec::Explicit(g) => write!(f, "graph6:{}", to_graph6(g)),
        }
    }
}

fn parse_numbers(s: &str, want: usize) -> Result<Vec<usize>> {
    let nums = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Pattern(format!("{s:?}: {e}")))?;
    if nums.len() != want {
        return Err(Error::Pattern(format!("{s:?}: expected {want} comma-separated numbers")));
    }
    Ok(nums)
}

/// Parses `clique-path:k,r`, `friendship:k,r`, `clique:r` or `graph6:<string>`.
impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) =
            s.split_once(':').ok_or_else(|| Error::Pattern(format!("{s:?}: expected <kind>:<parameters>")))?;
        let spec = match kind {
            "clique-path" => {
                let v = parse_numbers(args, 2)?;
                PatternSpec::CliquePath { k: v[0], r: v[1] }
            }
            "friendship" => {
                let v = parse_numbers(args, 2)?;
                PatternSpec::Friendship { k: v[0], r: v[1] }
            }
            "clique" => PatternSpec::Clique { r: parse_numbers(args, 1)?[0] },
            "graph6" => PatternSpec::Explicit(from_graph6(args.as_bytes())?),
            other => return Err(Error::Pattern(format!("unknown pattern kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum PatternRepr {
    CliquePath { k: usize, r: usize },
    Friendship { k: usize, r: usize },
    Clique { r: usize },
    Graph { graph6: String },
}

impl Serialize for PatternSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            PatternSpec::CliquePath { k, r } => PatternRepr::CliquePath { k: *k, r: *r },
            PatternSpec::Friendship { k, r } => PatternRepr::Friendship { k: *k, r: *r },
            PatternSpec::Clique { r } => PatternRepr::Clique { r: *r },
            PatternSpec::Explicit(g) => PatternRepr::Graph { graph6: to_graph6(g) },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PatternSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match PatternRepr::deserialize(d)? {
            PatternRepr::CliquePath { k, r } => PatternSpec::CliquePath { k, r },
            PatternRepr::Friendship { k, r } => PatternSpec::Friendship { k, r },
            PatternRepr::Clique { r } => PatternSpec::Clique { r },
            PatternRepr::Graph { graph6 } => {
                PatternSpec::Explicit(from_graph6(graph6.as_bytes()).map_err(serde::de::Error::custom)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["clique-path:3,4", "friendship:2,3", "clique:5", "graph6:Bw"] {
            assert_eq!(s.parse::<PatternSpec>().unwrap().to_string(), s);
        }
        assert!("clique-path:3".parse::<PatternSpec>().is_err());
        assert!("clique-path:3,2".parse::<PatternSpec>().is_err());
        assert!("cycle:5".parse::<PatternSpec>().is_err());
        assert!("graph6:Bww".parse::<PatternSpec>().is_err());
    }

    #[test]
    fn json_shape() {
        let p = PatternSpec::CliquePath { k: 3, r: 4 };
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"kind":"clique-path","k":3,"r":4}"#);
        assert_eq!(serde_json::from_str::<PatternSpec>(&json).unwrap(), p);
        let e = PatternSpec::Explicit(Graph::complete(3));
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"kind":"graph","graph6":"Bw"}"#);
        assert_eq!(serde_json::from_str::<PatternSpec>(&json).unwrap(), e);
    }
}
