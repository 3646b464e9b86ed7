//! Exact norm classes `η_0 < … < η_6` and the structural classifier.
//!
//! A connected twin-free graph has norm `η_k` (`k ≤ 6`) exactly when it
//! sits between the extremal graphs `E_k ≤ G ≤ F_k`. The norm of a graph
//! is the largest norm of its components and is unchanged by merging
//! twins, so classification reduces each component and tests it against
//! `F_1, …, F_6`.

mod sweep;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bigraph::{BiGraph, GraphName};
use crate::bounds::{norm_bounds, BoundsOptions, NormBounds};
use crate::error::{Error, Result};
use crate::exact::ETA;

pub use sweep::{enumerate_classes, EnumeratedClass, SweepOptions, SweepReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormClass {
    Eta(usize),
    AtLeastEta6,
}

impl NormClass {
    /// `η_k` for an exact class.
    pub fn eta_value(self) -> Option<f64> {
        match self {
            NormClass::Eta(k) => Some(ETA.get(k)),
            NormClass::AtLeastEta6 => None,
        }
    }

    /// Closed form of `η_k`.
    pub fn closed_form(self) -> Option<&'static str> {
        match self {
            NormClass::Eta(k) => Some(ETA_CLOSED_FORMS[k]),
            NormClass::AtLeastEta6 => None,
        }
    }
}

pub const ETA_CLOSED_FORMS: [&str; 7] =
    ["0", "1", "√(4/3)", "(1+√2)/2", "(1/15)√(169+38√19)", "√(3/2)", "(2/5)√(5+2√5)"];

impl fmt::Display for NormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormClass::Eta(k) => write!(f, "eta{k}"),
            NormClass::AtLeastEta6 => write!(f, "at-least-eta6"),
        }
    }
}

impl Serialize for NormClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One connected component with at least one edge. `rows` and `cols`
/// index into the classified graph.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentClass {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub component: BiGraph,
    pub reduced: BiGraph,
    /// Least `j` with `reduced ≤ F_j`.
    pub matched: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassResult {
    pub label: NormClass,
    pub per_component: Vec<ComponentClass>,
    /// Bounds for the unmatched component with the largest lower bound,
    /// present exactly when `label` is `AtLeastEta6`.
    pub numeric: Option<NormBounds>,
}

impl ClassResult {
    pub fn eta_value(&self) -> Option<f64> {
        self.label.eta_value()
    }
}

fn f_graphs() -> &'static [BiGraph] {
    static CELL: OnceLock<Vec<BiGraph>> = OnceLock::new();
    CELL.get_or_init(|| (1..=6).map(|k| GraphName::F(k).graph().expect("F_k is in the catalog")).collect())
}

pub(crate) fn e_graphs() -> &'static [BiGraph] {
    static CELL: OnceLock<Vec<BiGraph>> = OnceLock::new();
    CELL.get_or_init(|| (1..=6).map(|k| GraphName::E(k).graph().expect("E_k is in the catalog")).collect())
}

/// Least `j ∈ 1..=6` with `d ≤ F_j`.
pub fn least_f_match(d: &BiGraph) -> Option<usize> {
    f_graphs().iter().position(|f| d.is_induced_subgraph(f)).map(|j| j + 1)
}

/// Label and per-component detail, without numeric bounds.
pub fn classify_structure(g: &BiGraph) -> (NormClass, Vec<ComponentClass>) {
    let per_component: Vec<ComponentClass> = g
        .component_indices()
        .into_iter()
        .filter(|(r, c)| !r.is_empty() && !c.is_empty())
        .map(|(rows, cols)| {
            let component = g.select(&rows, &cols);
            let reduced = component.twin_reduce();
            let matched = least_f_match(&reduced);
            ComponentClass { rows, cols, component, reduced, matched }
        })
        .collect();
    let label = per_component.iter().try_fold(0, |acc, c| c.matched.map(|j| acc.max(j)));
    (label.map_or(NormClass::AtLeastEta6, NormClass::Eta), per_component)
}

pub fn classify(g: &BiGraph) -> ClassResult {
    classify_with(g, &BoundsOptions::default())
}

pub fn classify_with(g: &BiGraph, opts: &BoundsOptions) -> ClassResult {
    let (label, per_component) = classify_structure(g);
    let numeric = if label == NormClass::AtLeastEta6 {
        per_component
            .iter()
            .filter(|c| c.matched.is_none())
            .map(|c| norm_bounds(&c.component.to_matrix(), opts))
            .max_by(|a, b| a.lower.total_cmp(&b.lower))
    } else {
        None
    };
    ClassResult { label, per_component, numeric }
}

/// Which of the small obstructions occur in a connected twin-free graph.
#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenReport {
    pub max_degree: usize,
    pub present: Vec<String>,
    pub absent: Vec<String>,
}

impl ForbiddenReport {
    pub fn contains(&self, name: &str) -> bool {
        self.present.iter().any(|p| p == name)
    }
}

fn obstructions() -> &'static [(String, BiGraph)] {
    static CELL: OnceLock<Vec<(String, BiGraph)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let named = |n: GraphName| (n.to_string(), n.graph().expect("catalog graph"));
        vec![
            named(GraphName::E(4)),
            named(GraphName::Trie),
            named(GraphName::Gee7),
            ("twin-pair".to_string(), BiGraph::from_rows(&["110", "111"]).expect("literal")),
            named(GraphName::Obstruction53),
            named(GraphName::Obstruction54),
            named(GraphName::Obstruction55),
            named(GraphName::Obstruction56),
            named(GraphName::Lambda(3)),
        ]
    })
}

/// Induced-subgraph scan for the degree-three triggers (`E4`, trie,
/// gee7), the twin pair `[110; 111]`, the four obstruction graphs and
/// the six-cycle. The input must be connected and twin-free.
pub fn forbidden_structure_report(g: &BiGraph) -> Result<ForbiddenReport> {
    if !g.is_connected() {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    if !g.is_twin_free() {
        return Err(Error::InvalidInput("graph has twin vertices".into()));
    }
    let (mut present, mut absent) = (Vec::new(), Vec::new());
    for (name, h) in obstructions() {
        if h.is_induced_subgraph(g) {
            present.push(name.clone());
        } else {
            absent.push(name.clone());
        }
    }
    Ok(ForbiddenReport { max_degree: g.max_degree(), present, absent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: GraphName) -> BiGraph {
        n.graph().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(classify(&named(GraphName::SingleEdge)).label, NormClass::Eta(1));
        let g = named(GraphName::SigmaSquare(3)).direct_sum(&named(GraphName::SingleEdge));
        assert_eq!(classify(&g).label, NormClass::Eta(3));
        let t = classify(&named(GraphName::Trie));
        assert_eq!(t.label, NormClass::AtLeastEta6);
        assert!(t.numeric.unwrap().lower >= crate::exact::trie_norm() - 1e-6);
        assert_eq!(classify(&BiGraph::empty(3, 2)).label, NormClass::Eta(0));
        assert_eq!(classify(&BiGraph::empty(0, 0)).label, NormClass::Eta(0));
    }

    #[test]
    fn extremal_graphs_land_in_their_class() {
        for k in 1..=6 {
            assert_eq!(classify(&named(GraphName::E(k))).label, NormClass::Eta(k), "E{k}");
            assert_eq!(classify(&named(GraphName::F(k))).label, NormClass::Eta(k), "F{k}");
        }
    }

    #[test]
    fn forbidden_reports() {
        let r = forbidden_structure_report(&named(GraphName::SigmaSquare(5))).unwrap();
        assert!(r.present.is_empty());
        assert_eq!(r.max_degree, 2);
        let r = forbidden_structure_report(&named(GraphName::F(4))).unwrap();
        assert!(r.contains("E4"));
        assert!(!r.contains("twin-pair") && !r.contains("obstruction:5.3"));
        let ones = BiGraph::from_fn(4, 4, |_, _| true);
        assert!(forbidden_structure_report(&ones).is_err());
        let r = forbidden_structure_report(&ones.twin_reduce()).unwrap();
        assert!(r.present.is_empty());
        let two = named(GraphName::SingleEdge).direct_sum(&named(GraphName::SingleEdge));
        assert!(forbidden_structure_report(&two).is_err());
    }
}
