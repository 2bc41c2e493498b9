//! Report documents. Field order is fixed and no timing is recorded, so a
//! report is a pure function of its inputs.

use serde::Serialize;
use serde_json::{json, Value};

use crate::center::CenterData;
use crate::iso::{Check, IsoCandidate};

pub const ENGINE: &str = concat!("centrum ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEcho {
    pub name: String,
    pub order: usize,
    pub classes: usize,
}

impl GroupEcho {
    pub fn of(c: &CenterData) -> Self {
        GroupEcho {
            name: c.name.clone(),
            order: c.order(),
            classes: c.class_count(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceEcho {
    /// `σ` allowed by the degree conditions.
    pub degree_pruned: u128,
    /// `σ` that also respect the Galois actions; the ones actually tried.
    pub visited: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub engine: &'static str,
    pub command: String,
    pub groups: Vec<GroupEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_space: Option<SpaceEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub candidates: Vec<IsoCandidate>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            engine: ENGINE,
            command: command.into(),
            groups: Vec::new(),
            conductor: None,
            search_space: None,
            data: None,
            candidates: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Conjugacy classes and structure constants.
pub fn classes_data(c: &CenterData) -> Value {
    let h = c.class_count();
    let classes: Vec<Value> = (0..h)
        .map(|i| {
            json!({
                "index": i,
                "size": c.classes.size(i),
                "order": c.classes.rep_order(i),
                "representative": c.classes.representative(i),
                "inverse": c.classes.inverse_class(i),
                "elements": c.classes.class(i),
            })
        })
        .collect();
    let constants: Vec<Vec<Vec<String>>> = (0..h)
        .map(|i| {
            (0..h)
                .map(|j| (0..h).map(|k| c.algebra.c(i, j, k).to_string()).collect())
                .collect()
        })
        .collect();
    json!({
        "exponent": c.group.exponent(),
        "classes": classes,
        "structure_constants": constants,
    })
}

/// Degrees and exact values of the irreducible characters.
pub fn chartable_data(c: &CenterData) -> Value {
    let t = &c.table;
    let rows: Vec<Vec<String>> = t
        .values()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "conductor": t.conductor(),
        "class_sizes": t.class_sizes(),
        "class_orders": (0..t.dim()).map(|i| c.classes.rep_order(i)).collect::<Vec<_>>(),
        "degrees": t.degrees(),
        "rows": rows,
    })
}
