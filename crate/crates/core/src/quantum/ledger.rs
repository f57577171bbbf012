use std::collections::BTreeMap;

/// Cost-model bookkeeping.
///
/// `charged_queries` counts oracle units spent inside minimum finding and
/// `classical_steps` counts table entries filled by classical precalculation.
/// Every unit is also booked under a phase label, so the phases always sum to
/// [`CostLedger::total`]. Counters saturate instead of wrapping.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    pub charged_queries: u128,
    pub classical_steps: u128,
    phases: BTreeMap<&'static str, u128>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, phase: &'static str, units: u128) {
        self.charged_queries = self.charged_queries.saturating_add(units);
        self.book(phase, units);
    }

    pub fn classical(&mut self, phase: &'static str, steps: u128) {
        self.classical_steps = self.classical_steps.saturating_add(steps);
        self.book(phase, steps);
    }

    fn book(&mut self, phase: &'static str, units: u128) {
        let slot = self.phases.entry(phase).or_insert(0);
        *slot = slot.saturating_add(units);
    }

    pub fn total(&self) -> u128 {
        self.charged_queries.saturating_add(self.classical_steps)
    }

    pub fn phases(&self) -> &BTreeMap<&'static str, u128> {
        &self.phases
    }

    pub fn phase(&self, name: &str) -> u128 {
        self.phases.get(name).copied().unwrap_or(0)
    }

    /// Adds `other` to `self`; order of merging does not matter.
    pub fn merge(&mut self, other: &CostLedger) {
        self.charged_queries = self.charged_queries.saturating_add(other.charged_queries);
        self.classical_steps = self.classical_steps.saturating_add(other.classical_steps);
        for (&k, &v) in &other.phases {
            self.book(k, v);
        }
    }

    /// Adds `factor` copies of `other`.
    pub fn merge_scaled(&mut self, other: &CostLedger, factor: u128) {
        self.charged_queries = self
            .charged_queries
            .saturating_add(other.charged_queries.saturating_mul(factor));
        self.classical_steps = self
            .classical_steps
            .saturating_add(other.classical_steps.saturating_mul(factor));
        for (&k, &v) in &other.phases {
            self.book(k, v.saturating_mul(factor));
        }
    }

    /// Flat `key → units` view: the two counters, the total and one
    /// `phase.<label>` entry per phase.
    pub fn flat(&self) -> BTreeMap<String, u128> {
        let mut out = BTreeMap::new();
        out.insert("charged_queries".to_string(), self.charged_queries);
        out.insert("classical_steps".to_string(), self.classical_steps);
        out.insert("total".to_string(), self.total());
        for (k, v) in &self.phases {
            out.insert(format!("phase.{k}"), *v);
        }
        out
    }
}
