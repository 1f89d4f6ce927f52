use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use superspencer_core::grading::GradedPair;
use superspencer_core::prolong::{cartan_prolong, default_kmax, ProlongationTower};
use superspencer_core::repmod::{composition_report, GradedSubspace, ModuleReport};
use superspencer_core::spencer::spencer_cohomology;

use crate::registry::CaseSpec;
use crate::verify::Outcome;
use crate::RunError;

pub const SCHEMA: &str = "superspencer.run/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerReport {
    /// `dim g_k` for `k = -1, 0, 1, ...`.
    pub dims: Vec<usize>,
    pub superdims: Vec<(usize, usize)>,
    /// The last computed term is zero. When false the tower was cut at `kmax`.
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderReport {
    pub k: i32,
    /// `dim H^{k,2}`.
    pub dim: usize,
    pub superdim: (usize, usize),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleReport>,
}

/// Wall-clock timings; kept out of the serialized report so output is reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Timing {
    pub tower: Duration,
    pub orders: Vec<(i32, Duration)>,
}

impl Timing {
    pub fn total(&self) -> Duration {
        self.tower + self.orders.iter().map(|(_, d)| *d).sum::<Duration>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub schema: String,
    pub case: String,
    pub kmax: usize,
    pub tower: TowerReport,
    pub cohomology: Vec<OrderReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verification: Vec<Outcome>,
    #[serde(skip)]
    pub timing: Timing,
}

impl RunReport {
    pub fn order(&self, k: i32) -> Option<&OrderReport> {
        self.cohomology.iter().find(|o| o.k == k)
    }

    pub fn passed(&self) -> bool {
        self.verification.iter().all(|o| o.diffs.is_empty())
    }
}

/// The pair and tower behind a report, for callers that want to inspect them.
pub struct Computed {
    pub pair: GradedPair,
    pub tower: ProlongationTower,
}

/// Prolongation depth used when the spec leaves it open. `H^{k,2}` needs terms
/// up to `g_{k-1}`; one more is computed so the report shows `g_hi`.
fn auto_kmax(pair: &GradedPair, spec: &CaseSpec) -> usize {
    default_kmax(pair).min(spec.ks.hi.max(1) as usize)
}

pub fn build(spec: &CaseSpec, kmax: Option<usize>) -> Result<Computed, RunError> {
    let label = spec.validate()?;
    let pair = label.build()?;
    let kmax = kmax.or(spec.kmax).unwrap_or_else(|| auto_kmax(&pair, spec));
    let tower = cartan_prolong(&pair, kmax);
    Ok(Computed { pair, tower })
}

/// Pair, tower, `H^{k,2}` for each requested order and, when asked, module reports.
pub fn run_case(spec: &CaseSpec, kmax: Option<usize>) -> Result<RunReport, RunError> {
    run_computed(spec, kmax).map(|(r, _)| r)
}

/// [`run_case`], also returning the pair and tower.
pub fn run_computed(spec: &CaseSpec, kmax: Option<usize>) -> Result<(RunReport, Computed), RunError> {
    let t0 = Instant::now();
    let computed = build(spec, kmax)?;
    let tower = &computed.tower;
    let mut timing = Timing { tower: t0.elapsed(), orders: Vec::new() };
    let mut cohomology = Vec::new();
    for k in spec.ks.iter() {
        let t1 = Instant::now();
        let h = spencer_cohomology(tower, k, 2)?;
        if !h.complex.composite_is_zero() {
            return Err(RunError::Invariant(format!("{}: d o d != 0 around C^{{{k},2}}", spec.label)));
        }
        let module = if spec.report && h.dim() > 0 {
            let m = h.module(tower);
            m.check_weights()?;
            let r = composition_report(&m, &GradedSubspace::full(&m))?;
            if r.factors.iter().map(|f| f.dim).sum::<usize>() != h.dim() {
                return Err(RunError::Invariant(format!("{}: factor dimensions do not add up at k={k}", spec.label)));
            }
            Some(r)
        } else {
            None
        };
        cohomology.push(OrderReport { k, dim: h.dim(), superdim: h.superdim(), module });
        timing.orders.push((k, t1.elapsed()));
    }
    let report = RunReport {
        schema: SCHEMA.to_string(),
        case: spec.label.clone(),
        kmax: tower.max_degree().max(0) as usize,
        tower: TowerReport { dims: tower.dims(), superdims: tower.terms.iter().map(|t| t.superdim()).collect(), stabilized: tower.stabilized },
        cohomology,
        verification: Vec::new(),
        timing,
    };
    Ok((report, computed))
}
