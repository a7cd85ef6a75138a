//! Output documents. Every rational is a canonical `p/q` string.

use serde::{Deserialize, Serialize};

/// Bumped whenever a payload changes shape.
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    Decompose(Decompose),
    Eigenvalue(Eigenvalue),
    Critical(Critical),
    Quantize(Quantize),
    Refusal(Refusal),
    Tree(Tree),
    Verify(Verify),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub diagram: String,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decompose {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<DiagramRow>,
    pub total: u64,
    /// `C(d + k - 1, k)`, the dimension of `S^k`.
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficients {
    pub c2: String,
    pub c1: String,
    pub c0: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub diagram: String,
    pub degree: usize,
    /// `None` in symbolic mode.
    pub delta: Option<String>,
    pub value: Option<String>,
    pub coefficients: Option<Coefficients>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub delta: String,
    pub upper: String,
    pub lower: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Critical {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub kmax: usize,
    pub values: Vec<String>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivariance {
    pub checked: usize,
    pub margin_degree: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantize {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub lambda: String,
    pub mu: String,
    pub delta: String,
    #[serde(rename = "K")]
    pub k_max: usize,
    #[serde(rename = "M")]
    pub m_max: usize,
    /// Basis monomials in index order; `p<i>` is the fiber variable dual to `x<i>`.
    pub basis: Vec<String>,
    pub entries: Vec<Entry>,
    pub unipotent: bool,
    /// Absent when `M = 0`, where no test symbols fit.
    pub equivariance: Option<Equivariance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub delta: String,
    #[serde(rename = "K")]
    pub k_max: usize,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub level: usize,
    pub degree: usize,
    pub diagrams: Vec<String>,
    pub strictly_dominated: bool,
    /// Diagrams actually reached by `gamma(g_1)`, when weights were given.
    pub gamma: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub root: String,
    pub k: usize,
    pub levels: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub k: usize,
    pub m: usize,
    pub values: Vec<String>,
    pub multiplicities: Vec<usize>,
    pub traces: Vec<String>,
    pub annihilated: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verify {
    pub version: u32,
    pub family: String,
    pub n: usize,
    pub delta: String,
    #[serde(rename = "K")]
    pub k_max: usize,
    #[serde(rename = "M")]
    pub m_max: usize,
    pub blocks: Vec<BlockReport>,
    pub ok: bool,
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// One flat table per command.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let (header, rows) = self.table();
        w.write_record(&header).expect("in-memory write");
        for r in rows {
            w.write_record(&r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn table(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let s = |x: &dyn ToString| x.to_string();
        match self {
            Document::Decompose(d) => {
                let mut rows: Vec<Vec<String>> = d.rows.iter().map(|r| vec![r.diagram.clone(), s(&r.dimension)]).collect();
                rows.push(vec!["total".into(), s(&d.total)]);
                rows.push(vec!["expected".into(), d.expected.clone()]);
                (vec!["diagram", "dimension"], rows)
            }
            Document::Eigenvalue(e) => match &e.coefficients {
                Some(c) => (
                    vec!["diagram", "c2", "c1", "c0"],
                    vec![vec![e.diagram.clone(), c.c2.clone(), c.c1.clone(), c.c0.clone()]],
                ),
                None => (
                    vec!["diagram", "delta", "value"],
                    vec![vec![
                        e.diagram.clone(),
                        e.delta.clone().unwrap_or_default(),
                        e.value.clone().unwrap_or_default(),
                    ]],
                ),
            },
            Document::Critical(c) => (
                vec!["delta", "upper", "lower"],
                c.witnesses.iter().map(|w| vec![w.delta.clone(), w.upper.clone(), w.lower.clone()]).collect(),
            ),
            Document::Refusal(r) => (
                vec!["delta", "upper", "lower"],
                r.witnesses.iter().map(|w| vec![w.delta.clone(), w.upper.clone(), w.lower.clone()]).collect(),
            ),
            Document::Quantize(q) => {
                let mut rows: Vec<Vec<String>> = q
                    .entries
                    .iter()
                    .map(|e| {
                        vec![s(&e.row), s(&e.col), q.basis[e.row].clone(), q.basis[e.col].clone(), e.value.clone()]
                    })
                    .collect();
                if let Some(eq) = &q.equivariance {
                    rows.push(vec!["violations".into(), s(&eq.violations), String::new(), String::new(), String::new()]);
                }
                (vec!["row", "col", "row_monomial", "col_monomial", "value"], rows)
            }
            Document::Tree(t) => {
                let mut rows = Vec::new();
                for l in &t.levels {
                    for dg in &l.diagrams {
                        let reached = l.gamma.as_ref().map(|g| s(&g.contains(dg))).unwrap_or_default();
                        rows.push(vec![s(&l.level), s(&l.degree), dg.clone(), s(&l.strictly_dominated), reached]);
                    }
                }
                (vec!["level", "degree", "diagram", "strictly_dominated", "gamma_reached"], rows)
            }
            Document::Verify(v) => {
                let mut rows = Vec::new();
                for b in &v.blocks {
                    for ((val, mult), tr) in b.values.iter().zip(&b.multiplicities).zip(&b.traces) {
                        rows.push(vec![s(&b.k), s(&b.m), val.clone(), s(mult), tr.clone(), s(&b.matches)]);
                    }
                }
                (vec!["k", "m", "value", "multiplicity", "trace", "matches"], rows)
            }
        }
    }
}
