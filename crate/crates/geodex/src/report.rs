//! Text rendering of transitivity reports.
//!
//! Keys, in order: `n`, `valency`, `girth`, `diameter`,
//! `distance_distribution`, `aut_order`, `group_source`,
//! `vertex_transitive`, `arc_transitive`, `two_arc_transitive`,
//! `two_geodesic_transitive`, `distance_transitive`, `primitive`, `arcs`,
//! `two_arcs`, `two_geodesics`, `normal_cayley`, `classification`.
//!
//! The human style writes `key: value`, the machine style `key=value`.
//! Absent values are `irregular` (valency), `infinite` (girth) and `n/a`.

use geodex_core::analyze::{Classification, GroupSource, TransitivityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Human,
    Machine,
}

pub const KEYS: [&str; 18] = [
    "n",
    "valency",
    "girth",
    "diameter",
    "distance_distribution",
    "aut_order",
    "group_source",
    "vertex_transitive",
    "arc_transitive",
    "two_arc_transitive",
    "two_geodesic_transitive",
    "distance_transitive",
    "primitive",
    "arcs",
    "two_arcs",
    "two_geodesics",
    "normal_cayley",
    "classification",
];

fn opt<T: ToString>(v: Option<T>, none: &str) -> String {
    v.map_or_else(|| none.to_string(), |x| x.to_string())
}

/// The report as ordered `(key, value)` pairs.
pub fn fields(r: &TransitivityReport, class: Option<&Classification>) -> Vec<(&'static str, String)> {
    let dist: Vec<String> = r.distance_distribution.iter().map(|x| x.to_string()).collect();
    let values = [
        r.n.to_string(),
        opt(r.valency, "irregular"),
        opt(r.girth, "infinite"),
        r.diameter.to_string(),
        dist.join(","),
        r.aut_order.to_string(),
        match r.group_source {
            GroupSource::Search => "search",
            GroupSource::Supplied => "supplied",
        }
        .to_string(),
        r.vertex_transitive.to_string(),
        r.arc_transitive.to_string(),
        r.two_arc_transitive.to_string(),
        r.two_geodesic_transitive.to_string(),
        r.distance_transitive.to_string(),
        opt(r.primitive, "n/a"),
        r.arcs.to_string(),
        r.two_arcs.to_string(),
        r.two_geodesics.to_string(),
        opt(r.normal_cayley, "n/a"),
        opt(class, "n/a"),
    ];
    KEYS.into_iter().zip(values).collect()
}

pub fn render(r: &TransitivityReport, class: Option<&Classification>, style: Style) -> String {
    let sep = match style {
        Style::Human => ": ",
        Style::Machine => "=",
    };
    fields(r, class)
        .into_iter()
        .map(|(k, v)| format!("{k}{sep}{v}\n"))
        .collect()
}

/// Inverse of the machine style: `key=value` lines to pairs.
pub fn parse_machine(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
