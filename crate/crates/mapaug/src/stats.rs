//! Run counters shared by every phase of the solver.

use serde::Serialize;

/// How assertion-style failures (credit deficits, missing obstructions,
/// violated bounds) are handled. `Strict` turns them into errors;
/// `Lenient` counts them and continues with a fallback.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Mode {
    Strict,
    #[default]
    Lenient,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub reduce_calls: u64,
    pub max_depth: u64,
    pub exact_calls: u64,
    pub exact_nodes: u64,
    pub alg_calls: u64,
    pub divides: Vec<(String, u64)>,
    pub descent_violations: u64,
    pub bound_violations: u64,
    pub patch_edges: u64,

    pub canonical_exchanges: u64,
    pub canonical_fallback_exchanges: u64,
    pub canonical_failures: u64,

    pub pseudo_ears: u64,
    pub ear_conditions: [u64; 4],
    pub uncertified_witnesses: u64,
    pub z_fallbacks: u64,
    pub credit_deficits: u64,
    pub invariant_violations: u64,
    pub economical_violations: u64,
    pub foreign_small_components: u64,

    pub good_cycles: u64,
    pub small_merges: u64,
    pub open_3aug: u64,
    pub medium_eliminations: u64,
    pub medium_generic: u64,
    pub special_postcondition_failures: u64,

    pub glue_calls: u64,
    pub glue_good_cycles: u64,
    pub glue_open_2aug: u64,
    pub glue_stacked: u64,
    pub glue_small_path_runs: u64,
    pub glue_bound_violations: u64,
    pub glue_fallbacks: u64,
    pub contract_branch: u64,
    pub glue_branch: u64,
    pub contractible_cap_hits: u64,
}

impl Stats {
    pub fn record_divide(&mut self, kind: &str) {
        match self.divides.iter_mut().find(|(k, _)| k == kind) {
            Some((_, c)) => *c += 1,
            None => self.divides.push((kind.to_string(), 1)),
        }
    }

    /// Adds `other`'s counters into `self`.
    pub fn merge(&mut self, other: &Stats) {
        self.reduce_calls += other.reduce_calls;
        self.exact_calls += other.exact_calls;
        self.exact_nodes += other.exact_nodes;
        self.alg_calls += other.alg_calls;
        self.descent_violations += other.descent_violations;
        self.bound_violations += other.bound_violations;
        self.patch_edges += other.patch_edges;
        self.canonical_exchanges += other.canonical_exchanges;
        self.canonical_fallback_exchanges += other.canonical_fallback_exchanges;
        self.canonical_failures += other.canonical_failures;
        self.pseudo_ears += other.pseudo_ears;
        self.uncertified_witnesses += other.uncertified_witnesses;
        self.z_fallbacks += other.z_fallbacks;
        self.credit_deficits += other.credit_deficits;
        self.invariant_violations += other.invariant_violations;
        self.economical_violations += other.economical_violations;
        self.foreign_small_components += other.foreign_small_components;
        self.good_cycles += other.good_cycles;
        self.small_merges += other.small_merges;
        self.open_3aug += other.open_3aug;
        self.medium_eliminations += other.medium_eliminations;
        self.medium_generic += other.medium_generic;
        self.special_postcondition_failures += other.special_postcondition_failures;
        self.glue_calls += other.glue_calls;
        self.glue_good_cycles += other.glue_good_cycles;
        self.glue_open_2aug += other.glue_open_2aug;
        self.glue_stacked += other.glue_stacked;
        self.glue_small_path_runs += other.glue_small_path_runs;
        self.glue_bound_violations += other.glue_bound_violations;
        self.glue_fallbacks += other.glue_fallbacks;
        self.contract_branch += other.contract_branch;
        self.glue_branch += other.glue_branch;
        self.contractible_cap_hits += other.contractible_cap_hits;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (i, c) in other.ear_conditions.iter().enumerate() {
            self.ear_conditions[i] += c;
        }
        for (k, c) in &other.divides {
            match self.divides.iter_mut().find(|(x, _)| x == k) {
                Some((_, n)) => *n += c,
                None => self.divides.push((k.clone(), *c)),
            }
        }
    }

    pub fn divide_count(&self) -> u64 {
        self.divides.iter().map(|(_, c)| c).sum()
    }

    /// Fallback paths taken anywhere in the pipeline.
    pub fn fallbacks(&self) -> u64 {
        self.canonical_fallback_exchanges
            + self.z_fallbacks
            + self.medium_generic
            + self.glue_fallbacks
            + self.patch_edges
    }

    /// Assertion failures that a correct run on a structured input never
    /// produces.
    pub fn violations(&self) -> u64 {
        self.descent_violations
            + self.bound_violations
            + self.canonical_failures
            + self.credit_deficits
            + self.invariant_violations
            + self.economical_violations
            + self.foreign_small_components
            + self.special_postcondition_failures
            + self.glue_bound_violations
    }
}
