use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// Stated in the published computation.
    #[serde(rename = "PAPER")]
    Published,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    /// Computed independently of the stated value.
    #[serde(rename = "DERIVED")]
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "MISMATCH",
            Status::Informational => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Source,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportItem {
    /// An item whose status is `match` exactly when the two serializations agree.
    pub fn compare(
        name: impl Into<String>,
        claim: impl Into<String>,
        computed: impl Into<String>,
        expected: impl Into<String>,
        provenance: Source,
    ) -> Self {
        let (computed, expected) = (computed.into(), expected.into());
        let status = if computed == expected { Status::Match } else { Status::Mismatch };
        ReportItem { name: name.into(), claim: claim.into(), computed, expected, provenance, status, detail: None }
    }

    pub fn informational(
        name: impl Into<String>,
        claim: impl Into<String>,
        computed: impl Into<String>,
        expected: impl Into<String>,
        provenance: Source,
    ) -> Self {
        ReportItem {
            name: name.into(),
            claim: claim.into(),
            computed: computed.into(),
            expected: expected.into(),
            provenance,
            status: Status::Informational,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_match(&self) -> bool {
        self.status == Status::Match
    }
}

/// A named, ordered list of report items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn mismatches(&self) -> usize {
        self.items.iter().filter(|i| i.status == Status::Mismatch).count()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.items).expect("report items serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            out.push_str(&format!("[{}] {}: {}\n", it.status, it.name, it.claim));
            out.push_str(&format!("    computed: {}\n", it.computed));
            if it.status != Status::Match || it.computed != it.expected {
                out.push_str(&format!("    expected: {} ({})\n", it.expected, source_tag(it.provenance)));
            }
            if let Some(d) = &it.detail {
                out.push_str(&format!("    note: {d}\n"));
            }
        }
        let (m, n) = (self.items.iter().filter(|i| i.is_match()).count(), self.items.len());
        out.push_str(&format!("{}: {m}/{n} match, {} mismatch\n", self.name, self.mismatches()));
        out
    }
}

fn source_tag(s: Source) -> &'static str {
    match s {
        Source::Published => "PAPER",
        Source::Trivial => "TRIVIAL",
        Source::Derived => "DERIVED",
    }
}
