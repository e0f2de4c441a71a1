//! Full analysis of a group's commuting graph or of a shape expression.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError};
use crate::energy::{energies_from_spectra, EnergyError, EnergyReport, Spectra};
use crate::exact::ratio_string;
use crate::genus::{genus_of_shape, GenusReport};
use crate::graph::{recognize, GraphError, ShapeDescriptor, ShapeExpr, SimpleGraph};
use crate::group::{GroupError, DEFAULT_CAP};
use crate::zagreb::{zagreb_indices, ZagrebReport};

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    MalformedExpression(GraphError),
    #[error("graph kind `raw` needs a shape expression, `{0}` is a group")]
    RawGroup(String),
    #[error(transparent)]
    Energy(#[from] EnergyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GraphKind {
    #[serde(rename = "c")]
    Commuting,
    #[serde(rename = "nc")]
    NonCommuting,
    #[serde(rename = "raw")]
    Raw,
}

impl FromStr for GraphKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "c" | "commuting" => Ok(Self::Commuting),
            "nc" | "noncommuting" | "non-commuting" => Ok(Self::NonCommuting),
            "raw" => Ok(Self::Raw),
            _ => Err(format!("unknown graph kind `{s}` (expected c, nc or raw)")),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Commuting => "c",
            Self::NonCommuting => "nc",
            Self::Raw => "raw",
        })
    }
}

/// What an analysis target resolved to.
#[derive(Clone, Debug)]
pub enum Target {
    Group(&'static str),
    Shape(ShapeExpr),
}

impl Target {
    pub fn resolve(text: &str) -> Result<Self, AnalyzeError> {
        if let Ok(e) = catalog::lookup(text) {
            return Ok(Self::Group(e.name));
        }
        match ShapeExpr::parse(text) {
            Ok(expr) => Ok(Self::Shape(expr)),
            Err(err) if looks_like_shape(text) => Err(AnalyzeError::MalformedExpression(err)),
            Err(_) => Err(CatalogError::UnknownGroupName(text.to_string()).into()),
        }
    }
}

fn looks_like_shape(text: &str) -> bool {
    text.chars().all(|c| {
        c.is_ascii_digit() || c.is_whitespace() || "KFDv+*()⊔∨·×".contains(c)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: &'static str,
    pub order: usize,
    pub center_size: usize,
    pub ac_group: bool,
    pub census: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRecord {
    pub target: String,
    pub group: Option<GroupSummary>,
    pub graph: GraphKind,
    pub n: usize,
    pub m: usize,
    pub shape: ShapeDescriptor,
    pub zagreb: ZagrebReport,
    /// Zagreb indices and HV verdict of the complement.
    pub complement_zagreb: ZagrebReport,
    pub genus: GenusReport,
    pub spectra: Spectra,
    pub energies: EnergyReport,
}

/// The graph a target denotes under `kind`.
pub fn target_graph(
    target: &Target,
    kind: GraphKind,
    cap: usize,
) -> Result<SimpleGraph, AnalyzeError> {
    let base = match target {
        Target::Group(name) => {
            if kind == GraphKind::Raw {
                return Err(AnalyzeError::RawGroup(name.to_string()));
            }
            catalog::build_with_cap(name, cap)?.commuting_graph()?
        }
        Target::Shape(expr) => expr.build(),
    };
    Ok(match kind {
        GraphKind::NonCommuting => base.complement(),
        _ => base,
    })
}

pub fn analyze(text: &str, kind: GraphKind) -> Result<AnalysisRecord, AnalyzeError> {
    analyze_with_cap(text, kind, DEFAULT_CAP)
}

pub fn analyze_with_cap(
    text: &str,
    kind: GraphKind,
    cap: usize,
) -> Result<AnalysisRecord, AnalyzeError> {
    let target = Target::resolve(text)?;
    let g = target_graph(&target, kind, cap)?;
    let group = match &target {
        Target::Group(name) => {
            let grp = catalog::build_with_cap(name, cap)?;
            Some(GroupSummary {
                name,
                order: grp.order(),
                center_size: grp.center().len(),
                ac_group: grp.is_ac_group()?,
                census: grp.centralizer_census()?.to_string(),
            })
        }
        Target::Shape(_) => None,
    };
    Ok(analyze_graph(text, group, kind, &g)?)
}

/// Record for an explicit graph.
pub fn analyze_graph(
    target: &str,
    group: Option<GroupSummary>,
    kind: GraphKind,
    g: &SimpleGraph,
) -> Result<AnalysisRecord, EnergyError> {
    let shape = recognize(g);
    let spectra = Spectra::of(g);
    let energies = energies_from_spectra(g.n(), g.edge_count(), &spectra)?;
    Ok(AnalysisRecord {
        target: target.to_string(),
        group,
        graph: kind,
        n: g.n(),
        m: g.edge_count(),
        zagreb: zagreb_indices(g),
        complement_zagreb: zagreb_indices(&g.complement()),
        genus: genus_of_shape(&shape),
        shape,
        spectra,
        energies,
    })
}

pub fn render_json(records: &[AnalysisRecord]) -> String {
    let text = if records.len() == 1 {
        serde_json::to_string_pretty(&records[0])
    } else {
        serde_json::to_string_pretty(records)
    };
    text.expect("records serialize") + "\n"
}

pub const CSV_HEADER: [&str; 25] = [
    "target", "graph", "n", "m", "shape", "M1", "M2", "hv_lhs", "hv_rhs", "hv_holds",
    "hv_equality", "complement_hv_holds", "genus", "genus_class", "E", "LE", "LE+", "ECN",
    "hypoenergetic", "hyperenergetic", "L_hyper", "Q_hyper", "CN_hyper", "ordering",
    "e_le_holds",
];

impl AnalysisRecord {
    pub fn csv_row(&self) -> Vec<String> {
        let hv = self.zagreb.hv.as_ref();
        let e = &self.energies;
        vec![
            self.target.clone(),
            self.graph.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.shape.to_string(),
            self.zagreb.m1.to_string(),
            self.zagreb.m2.to_string(),
            hv.map(|h| ratio_string(&h.lhs)).unwrap_or_default(),
            hv.map(|h| ratio_string(&h.rhs)).unwrap_or_default(),
            hv.map(|h| h.holds.to_string()).unwrap_or_default(),
            hv.map(|h| h.equality.to_string()).unwrap_or_default(),
            self.complement_zagreb.hv.as_ref().map(|h| h.holds.to_string()).unwrap_or_default(),
            self.genus.exact_genus.map(|g| g.to_string()).unwrap_or_default(),
            self.genus.class_label.to_string(),
            e.e.decimal(),
            e.le.decimal(),
            e.le_plus.decimal(),
            e.ecn.decimal(),
            e.flags.hypoenergetic.to_string(),
            e.flags.hyperenergetic.to_string(),
            e.flags.l_hyper.to_string(),
            e.flags.q_hyper.to_string(),
            e.flags.cn_hyper.to_string(),
            e.ordering.to_string(),
            e.e_le_holds.to_string(),
        ]
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## {} ({})\n", self.target, self.graph);
        if let Some(g) = &self.group {
            let _ = writeln!(
                s,
                "Group {}: order {}, |Z| = {}, AC-group: {}, centralizers {}\n",
                g.name, g.order, g.center_size, g.ac_group, g.census
            );
        }
        let hv = |z: &ZagrebReport| match &z.hv {
            Some(h) => format!(
                "{} vs {}: {}",
                ratio_string(&h.lhs),
                ratio_string(&h.rhs),
                if h.equality { "equality" } else if h.holds { "holds" } else { "fails" }
            ),
            None => "undefined".into(),
        };
        let e = &self.energies;
        let rows: Vec<(&str, String)> = vec![
            ("vertices", self.n.to_string()),
            ("edges", self.m.to_string()),
            ("shape", self.shape.to_string()),
            ("M1", self.zagreb.m1.to_string()),
            ("M2", self.zagreb.m2.to_string()),
            ("HV (M2/m vs M1/n)", hv(&self.zagreb)),
            ("HV of complement", hv(&self.complement_zagreb)),
            (
                "genus",
                match self.genus.exact_genus {
                    Some(g) => format!("{g} ({})", self.genus.class_label),
                    None => self.genus.class_label.to_string(),
                },
            ),
            ("E", e.e.to_string()),
            ("LE", e.le.to_string()),
            ("LE+", e.le_plus.to_string()),
            ("ECN", e.ecn.to_string()),
            ("hypoenergetic", e.flags.hypoenergetic.to_string()),
            ("hyperenergetic", e.flags.hyperenergetic.to_string()),
            ("L-hyperenergetic", e.flags.l_hyper.to_string()),
            ("Q-hyperenergetic", e.flags.q_hyper.to_string()),
            ("CN-hyperenergetic", e.flags.cn_hyper.to_string()),
            ("ordering", e.ordering.to_string()),
            ("E ≤ LE", e.e_le_holds.to_string()),
        ];
        s.push_str("| invariant | value |\n|---|---|\n");
        for (k, v) in rows {
            let _ = writeln!(s, "| {k} | {} |", v.replace('|', "\\|"));
        }
        s.push('\n');
        for (label, spec) in [
            ("A", &self.spectra.a),
            ("L", &self.spectra.l),
            ("Q", &self.spectra.q),
            ("CN", &self.spectra.cn),
        ] {
            let _ = writeln!(s, "- {label}-spectrum: {spec}");
        }
        s
    }
}

pub fn render_markdown(records: &[AnalysisRecord]) -> String {
    records.iter().map(AnalysisRecord::to_markdown).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::GenusClass;

    #[test]
    fn group_targets() {
        let r = analyze("GL(2,3)", GraphKind::Commuting).unwrap();
        assert_eq!(r.shape.to_string(), "3K6 ⊔ 4K4 ⊔ 6K2");
        assert_eq!(r.genus.exact_genus, Some(3));
        assert_eq!(r.genus.class_label, GenusClass::TripleToroidal);
        let r = analyze("D18", GraphKind::Commuting).unwrap();
        assert!(r.energies.flags.hypoenergetic);
        assert!(matches!(analyze("D18", GraphKind::Raw), Err(AnalyzeError::RawGroup(_))));
    }

    #[test]
    fn shape_targets() {
        let r = analyze("K8 + 5*K2", GraphKind::Raw).unwrap();
        assert_eq!((r.zagreb.m1.to_string(), r.zagreb.m2.to_string()), ("402".into(), "1377".into()));
        assert!(matches!(
            analyze("K8 + + K2", GraphKind::Raw),
            Err(AnalyzeError::MalformedExpression(_))
        ));
        assert!(matches!(
            analyze("Foo(7)", GraphKind::Raw),
            Err(AnalyzeError::Catalog(CatalogError::UnknownGroupName(_)))
        ));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = analyze("K4 + 3K2", GraphKind::NonCommuting).unwrap();
        let b = analyze("K4 + 3K2", GraphKind::NonCommuting).unwrap();
        assert_eq!(render_json(std::slice::from_ref(&a)), render_json(&[b]));
        assert_eq!(a.csv_row().len(), CSV_HEADER.len());
        assert!(render_markdown(&[a]).contains("| LE+ |"));
    }
}
