use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use superspencer_core::grading::GradedPair;
use superspencer_core::repmod::{ModuleReport, Weight};
use superspencer_core::{SparseVec, Subspace};

use crate::expect::{Expectation, ExpectedFactor, Splitness, WeightMode};
use crate::run::RunReport;

/// One mismatch between an expectation and a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diff {
    pub field: String,
    pub expected: Value,
    pub found: Value,
    /// Expected items with no counterpart in the report.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
    /// Reported items no expectation accounts for.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unexpected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    pub source: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diffs: Vec<Diff>,
}

struct Cmp<'a> {
    pair: &'a GradedPair,
    mode: WeightMode,
    modulo: Subspace,
}

fn coords(w: &Weight) -> SparseVec {
    SparseVec::from_dense(&w.eps.iter().chain(&w.delta).cloned().collect::<Vec<_>>())
}

impl<'a> Cmp<'a> {
    fn new(pair: &'a GradedPair, e: &Expectation) -> Self {
        let n = pair.n_eps + pair.n_delta();
        let vs: Vec<SparseVec> = e.modulo.iter().filter_map(|s| Weight::parse(s, pair.n_eps, pair.n_delta()).ok()).map(|w| coords(&w)).collect();
        Cmp { pair, mode: e.weights, modulo: Subspace::span(n, &vs) }
    }

    fn parse(&self, s: &str) -> Option<Weight> {
        Weight::parse(s, self.pair.n_eps, self.pair.n_delta()).ok()
    }

    fn same(&self, want: &str, got: &Weight) -> bool {
        let Some(w) = self.parse(want) else { return false };
        if self.modulo.contains(&coords(&(&w - got))) {
            return true;
        }
        self.mode == WeightMode::G0 && self.pair.same_g0_weight(&w, got)
    }
}

fn factor_label(w: &Weight, parity: impl std::fmt::Debug, dim: usize) -> String {
    format!("{w} ({parity:?}, dim {dim})")
}

fn expected_label(f: &ExpectedFactor) -> String {
    let mut s = f.weight.clone();
    if let Some(p) = f.parity {
        s.push_str(&format!(" ({p:?})"));
    }
    if let Some(d) = f.dim {
        s.push_str(&format!(" dim {d}"));
    }
    s
}

fn check_factors(cmp: &Cmp, want: &[ExpectedFactor], m: &ModuleReport) -> Option<Diff> {
    let mut used = vec![false; m.factors.len()];
    let mut missing = Vec::new();
    for f in want {
        let hit = m.factors.iter().enumerate().position(|(i, g)| {
            !used[i] && cmp.same(&f.weight, &g.weight) && f.parity.is_none_or(|p| p == g.parity) && f.dim.is_none_or(|d| d == g.dim)
        });
        match hit {
            Some(i) => used[i] = true,
            None => missing.push(expected_label(f)),
        }
    }
    let unexpected: Vec<String> =
        m.factors.iter().zip(&used).filter(|(_, u)| !**u).map(|(g, _)| factor_label(&g.weight, g.parity, g.dim)).collect();
    (!missing.is_empty() || !unexpected.is_empty()).then(|| Diff {
        field: "factors".into(),
        expected: json!(want.iter().map(expected_label).collect::<Vec<_>>()),
        found: json!(m.factors.iter().map(|g| factor_label(&g.weight, g.parity, g.dim)).collect::<Vec<_>>()),
        missing,
        unexpected,
    })
}

fn check_highest(cmp: &Cmp, want: &[String], m: &ModuleReport) -> Option<Diff> {
    let mut used = vec![false; m.highest.len()];
    let mut missing = Vec::new();
    for w in want {
        match m.highest.iter().enumerate().position(|(i, h)| !used[i] && cmp.same(w, &h.weight)) {
            Some(i) => used[i] = true,
            None => missing.push(w.clone()),
        }
    }
    let unexpected: Vec<String> = m.highest.iter().zip(&used).filter(|(_, u)| !**u).map(|(h, _)| h.weight.to_string()).collect();
    (!missing.is_empty() || !unexpected.is_empty()).then(|| Diff {
        field: "highest".into(),
        expected: json!(want),
        found: json!(m.highest.iter().map(|h| h.weight.to_string()).collect::<Vec<_>>()),
        missing,
        unexpected,
    })
}

fn check_splitness(cmp: &Cmp, want: &Splitness, m: &ModuleReport) -> Option<Diff> {
    let found: Vec<String> = m
        .splitness
        .iter()
        .map(|s| format!("{} < {}: {}", m.factors[s.lower].weight, m.factors[s.upper].weight, if s.split { "split" } else { "nonsplit" }))
        .collect();
    let missing: Vec<String> = match want {
        Splitness::AllSplit => m.splitness.iter().zip(&found).filter(|(s, _)| !s.split).map(|(_, f)| f.clone()).collect(),
        Splitness::Nonsplit(pairs) => pairs
            .iter()
            .filter(|(lo, hi)| {
                !m.splitness.iter().any(|s| !s.split && cmp.same(lo, &m.factors[s.lower].weight) && cmp.same(hi, &m.factors[s.upper].weight))
            })
            .map(|(lo, hi)| format!("{lo} < {hi}: nonsplit"))
            .collect(),
    };
    (!missing.is_empty()).then(|| Diff { field: "splitness".into(), expected: json!(want), found: json!(found), missing, unexpected: vec![] })
}

fn check_one(report: &RunReport, pair: &GradedPair, e: &Expectation) -> Vec<Diff> {
    let mut diffs = Vec::new();
    let cmp = Cmp::new(pair, e);
    if let Some(t) = &e.tower {
        let dims = &report.tower.dims;
        let stab_ok = t.last() != Some(&0) || report.tower.stabilized;
        if dims.len() < t.len() || &dims[..t.len()] != t.as_slice() || !stab_ok {
            diffs.push(Diff { field: "tower".into(), expected: json!(t), found: json!(dims), missing: vec![], unexpected: vec![] });
        }
    }
    let Some(k) = e.k else { return diffs };
    let Some(o) = report.order(k) else {
        diffs.push(Diff { field: "k".into(), expected: json!(k), found: Value::Null, missing: vec![format!("H^{{{k},2}} was not computed")], unexpected: vec![] });
        return diffs;
    };
    if let Some(d) = e.dim {
        if d != o.dim {
            diffs.push(Diff { field: "dim".into(), expected: json!(d), found: json!(o.dim), missing: vec![], unexpected: vec![] });
        }
    }
    let wants_module = e.factors.is_some() || e.highest.is_some() || e.splitness.is_some();
    match (&o.module, wants_module) {
        (_, false) => {}
        (None, true) if o.dim > 0 => {
            diffs.push(Diff { field: "module".into(), expected: json!("module report"), found: Value::Null, missing: vec![], unexpected: vec![] })
        }
        (None, true) => {
            let empty = ModuleReport { dim: 0, weight_multiplicities: vec![], highest: vec![], factors: vec![], splitness: vec![], notes: vec![] };
            diffs.extend(module_diffs(&cmp, e, &empty));
        }
        (Some(m), true) => diffs.extend(module_diffs(&cmp, e, m)),
    }
    diffs
}

fn module_diffs(cmp: &Cmp, e: &Expectation, m: &ModuleReport) -> Vec<Diff> {
    let mut out = Vec::new();
    out.extend(e.factors.as_ref().and_then(|f| check_factors(cmp, f, m)));
    out.extend(e.highest.as_ref().and_then(|h| check_highest(cmp, h, m)));
    out.extend(e.splitness.as_ref().and_then(|s| check_splitness(cmp, s, m)));
    out
}

/// Compares `report` against each expectation for its case.
pub fn verify(report: &RunReport, pair: &GradedPair, expectations: &[&Expectation]) -> Vec<Outcome> {
    expectations
        .iter()
        .filter(|e| e.case == report.case)
        .map(|e| {
            let diffs = check_one(report, pair, e);
            Outcome { case: e.case.clone(), k: e.k, source: e.source.clone(), passed: diffs.is_empty(), diffs }
        })
        .collect()
}
