use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use superspencer_core::grading::CaseLabel;

/// Inclusive range of orders `k`, written `a..b` or `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub lo: i32,
    pub hi: i32,
}

impl KRange {
    pub fn new(lo: i32, hi: i32) -> Self {
        KRange { lo, hi }
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("bad order range `{0}` (expected `a..b` or `a` with 1 <= a <= b)")]
pub struct KRangeError(String);

impl FromStr for KRange {
    type Err = KRangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KRangeError(s.to_string());
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let lo: i32 = a.trim().parse().map_err(|_| bad())?;
        let hi: i32 = b.trim().parse().map_err(|_| bad())?;
        if lo < 1 || hi < lo {
            return Err(bad());
        }
        Ok(KRange { lo, hi })
    }
}

/// A case to run: a pair label, the orders of interest and what to compute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub label: String,
    pub ks: KRange,
    /// Highest prolongation degree to compute; defaults to what the orders need.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    /// Build module reports for nonzero cohomology.
    pub report: bool,
}

impl CaseSpec {
    pub fn new(label: &str, ks: KRange) -> Self {
        CaseSpec { label: label.to_string(), ks, kmax: None, report: true }
    }

    pub fn with_kmax(mut self, kmax: usize) -> Self {
        self.kmax = Some(kmax);
        self
    }

    pub fn validate(&self) -> Result<CaseLabel, crate::RunError> {
        if self.ks.is_empty() {
            return Err(crate::RunError::Usage(format!("{}: empty order range", self.label)));
        }
        Ok(self.label.parse()?)
    }
}

fn case(label: &str, lo: i32, hi: i32) -> CaseSpec {
    CaseSpec::new(label, KRange::new(lo, hi))
}

/// Every case exercised by the shipped tables, with the orders they need.
pub fn registry() -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for l in [format!("pe:{n}"), format!("cpe:{n}"), format!("spe:{n}"), format!("pe-ext:{n}:1:{n}"), format!("pe-ext:{n}:1:1")] {
            out.push(case(&l, 1, 2));
        }
    }
    for l in ["pe:4", "spe:4", "pe-ext:4:1:4", "pe-ext:3:0:1"] {
        out.push(case(l, 1, 2));
    }
    for l in ["cpe:4", "pe-ext:4:1:1"] {
        out.push(case(l, 1, 1));
    }
    for n in 2..=3 {
        out.push(case(&format!("sl-std:1:{n}"), 1, n + 1));
        out.push(case(&format!("reduced:sl-std:1:{n}"), 1, n + 1));
    }
    out.push(case("sl-std:2:2", 1, 4).with_kmax(6));
    out.push(case("reduced:sl-std:2:2", 1, 4));
    for l in ["sl-std:2:3", "reduced:sl-std:2:3", "sl-std:3:2", "sl-std:3:3", "reduced:sl-std:3:3"] {
        out.push(case(l, 1, 3));
    }
    out.push(case("q:3:1:+", 1, 2));
    for l in ["osp:4:2", "reduced:osp:4:2", "osp:5:2", "reduced:osp:5:2"] {
        out.push(case(l, 1, 3));
    }
    for l in ["sl-d1:2:3:0:1", "sl-d1:2:4:0:2", "sl-d1:2:4:0:1", "sl-d1:3:2:1:1", "sl-d1:4:4:2:2"] {
        out.push(case(l, 1, 2));
    }
    out
}

/// The registry entry for `label`.
pub fn lookup(label: &str) -> Option<CaseSpec> {
    registry().into_iter().find(|c| c.label == label)
}
