use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BiGraph;
use crate::error::{Error, Result};

/// Named graphs: paths, cycles, the extremal graphs `E_k`, `F_k` of each
/// norm class, and a few small graphs with known norms above the top
/// class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphName {
    SingleEdge,
    /// `Σ(n,n)`: the path with `2n` vertices.
    SigmaSquare(usize),
    /// `Σ(n,n+1)`: the path with `2n+1` vertices.
    SigmaWide(usize),
    /// `Λ(n)`: the cycle with `2n` vertices.
    Lambda(usize),
    E(usize),
    F(usize),
    Trie,
    Gee7,
    Gee6Cycle,
    Obstruction53,
    Obstruction54,
    Obstruction55,
    Obstruction56,
    /// `[𝟏 I_n]`, an `n × (n+1)` matrix.
    BracketOnes(usize),
}

impl GraphName {
    /// The biadjacency matrix.
    pub fn graph(self) -> Result<BiGraph> {
        use GraphName::*;
        let fixed = |rows: &[&str]| BiGraph::from_rows(rows);
        match self {
            SingleEdge => fixed(&["1"]),
            SigmaSquare(n) => Ok(sigma(positive(n)?, n)),
            SigmaWide(n) => Ok(sigma(positive(n)?, n + 1)),
            Lambda(n) => {
                let n = positive(n)?;
                Ok(BiGraph::from_fn(n, n, |i, j| j == i || j == (i + 1) % n))
            }
            BracketOnes(n) => {
                let n = positive(n)?;
                Ok(BiGraph::from_fn(n, n + 1, |i, j| j == 0 || j == i + 1))
            }
            E(k) => match k {
                1 => fixed(&["1"]),
                2 => fixed(&["11", "01"]),
                3 => SigmaSquare(3).graph(),
                4 => fixed(&["100", "111", "001"]),
                5 => fixed(&["1100", "1010", "1001"]),
                6 => SigmaSquare(4).graph(),
                _ => Err(class_range(k)),
            },
            F(k) => match k {
                1 => fixed(&["1"]),
                2 => fixed(&["110", "011"]),
                3 => Lambda(4).graph(),
                4 => fixed(&["10010", "11100", "00101"]),
                5 => E(5).graph(),
                6 => SigmaWide(4).graph(),
                _ => Err(class_range(k)),
            },
            Trie => fixed(&["111", "110", "100"]),
            Gee7 => fixed(&["110", "111", "011"]),
            Gee6Cycle => Lambda(3).graph(),
            Obstruction53 => fixed(&["1111", "0100", "0010", "0001"]),
            Obstruction54 => fixed(&["1100", "0110", "0011", "0010"]),
            Obstruction55 => fixed(&["1100", "1010", "1001", "0001"]),
            Obstruction56 => fixed(&["0001", "0111", "0100", "1100"]),
        }
    }

    /// Every parameter-free name plus the small members of each family.
    pub fn listing() -> Vec<GraphName> {
        use GraphName::*;
        let mut out = vec![SingleEdge];
        out.extend((1..=6).map(E));
        out.extend((1..=6).map(F));
        out.extend([Trie, Gee7, Gee6Cycle, Obstruction53, Obstruction54, Obstruction55, Obstruction56]);
        for n in 2..=4 {
            out.extend([SigmaSquare(n), SigmaWide(n), Lambda(n + 1)]);
        }
        out.extend((2..=4).map(BracketOnes));
        out
    }
}

/// Looks up a named graph.
pub fn catalog(name: GraphName) -> Result<BiGraph> {
    name.graph()
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::InvalidInput("graph parameter must be at least 1".into()))
    } else {
        Ok(n)
    }
}

fn class_range(k: usize) -> Error {
    Error::InvalidInput(format!("class index {k} outside 1..=6"))
}

fn sigma(rows: usize, cols: usize) -> BiGraph {
    BiGraph::from_fn(rows, cols, |i, j| j == i || j == i + 1)
}

impl fmt::Display for GraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphName::*;
        match *self {
            SingleEdge => write!(f, "single-edge"),
            SigmaSquare(n) => write!(f, "sigma:{n},{n}"),
            SigmaWide(n) => write!(f, "sigma:{n},{}", n + 1),
            Lambda(n) => write!(f, "lambda:{n}"),
            E(k) => write!(f, "E{k}"),
            F(k) => write!(f, "F{k}"),
            Trie => write!(f, "trie"),
            Gee7 => write!(f, "gee7"),
            Gee6Cycle => write!(f, "gee6-cycle"),
            Obstruction53 => write!(f, "obstruction:5.3"),
            Obstruction54 => write!(f, "obstruction:5.4"),
            Obstruction55 => write!(f, "obstruction:5.5"),
            Obstruction56 => write!(f, "obstruction:5.6"),
            BracketOnes(n) => write!(f, "bracket-ones:{n}"),
        }
    }
}

impl FromStr for GraphName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use GraphName::*;
        let bad = || Error::InvalidInput(format!("unknown graph name {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let lower = s.trim().to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("sigma:") {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            let (a, b) = (num(a)?, num(b)?);
            return match b.checked_sub(a) {
                Some(0) => Ok(SigmaSquare(a)),
                Some(1) => Ok(SigmaWide(a)),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = lower.strip_prefix("lambda:") {
            return Ok(Lambda(num(rest)?));
        }
        if let Some(rest) = lower.strip_prefix("bracket-ones:") {
            return Ok(BracketOnes(num(rest)?));
        }
        if let Some(rest) = lower.strip_prefix("obstruction:") {
            return match rest {
                "5.3" => Ok(Obstruction53),
                "5.4" => Ok(Obstruction54),
                "5.5" => Ok(Obstruction55),
                "5.6" => Ok(Obstruction56),
                _ => Err(bad()),
            };
        }
        match lower.as_str() {
            "single-edge" => return Ok(SingleEdge),
            "trie" => return Ok(Trie),
            "gee7" => return Ok(Gee7),
            "gee6-cycle" => return Ok(Gee6Cycle),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix('e') {
            return Ok(E(num(rest)?));
        }
        if let Some(rest) = lower.strip_prefix('f') {
            return Ok(F(num(rest)?));
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_entries() {
        let g = |rows: &[&str]| BiGraph::from_rows(rows).unwrap();
        assert_eq!(catalog(GraphName::SigmaSquare(3)).unwrap(), g(&["110", "011", "001"]));
        assert_eq!(catalog(GraphName::Lambda(3)).unwrap(), g(&["110", "011", "101"]));
        assert_eq!(catalog(GraphName::E(4)).unwrap(), g(&["100", "111", "001"]));
        assert_eq!(catalog(GraphName::BracketOnes(3)).unwrap(), catalog(GraphName::E(5)).unwrap());
        assert_eq!(catalog(GraphName::SigmaWide(2)).unwrap(), catalog(GraphName::F(2)).unwrap());
        assert!(catalog(GraphName::Lambda(0)).is_err());
        assert!(catalog(GraphName::E(7)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for name in GraphName::listing() {
            let back: GraphName = name.to_string().parse().unwrap();
            assert_eq!(back, name);
        }
        assert_eq!("sigma:3,4".parse::<GraphName>().unwrap(), GraphName::SigmaWide(3));
        assert!("sigma:3,5".parse::<GraphName>().is_err());
        assert!("nonsense".parse::<GraphName>().is_err());
    }
}
