use std::io::{self, Write};
use std::time::Duration;

use crate::checker::Engine;

/// Cost breakdown of one mining run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunStats {
    pub engine: Engine,
    pub word_bits: usize,
    pub total: Duration,
    /// Time spent inside the superset-checking engine (propagation,
    /// incrementing and checks).
    pub superset: Duration,
    pub n_mfi: usize,
    pub n_superset_checks: u64,
    pub n_word_ands: u64,
    pub peak_lind_entries: usize,
    pub peak_local_ids: usize,
    pub allocations: usize,
    pub growth_events: usize,
    pub n_nodes: u64,
    pub max_depth: usize,
    pub pep_absorbed: u64,
    pub hutmfi_prunes: u64,
    pub fhut_cutoffs: u64,
    pub index_bound_violations: u64,
    pub containment_violations: u64,
    pub audit_checks: u64,
    pub audit_violations: u64,
    pub cross_checks: u64,
    pub cross_mismatches: u64,
    pub duplicate_heads: u64,
}

impl RunStats {
    pub fn new(engine: Engine, word_bits: usize) -> Self {
        Self {
            engine,
            word_bits,
            total: Duration::ZERO,
            superset: Duration::ZERO,
            n_mfi: 0,
            n_superset_checks: 0,
            n_word_ands: 0,
            peak_lind_entries: 0,
            peak_local_ids: 0,
            allocations: 0,
            growth_events: 0,
            n_nodes: 0,
            max_depth: 0,
            pep_absorbed: 0,
            hutmfi_prunes: 0,
            fhut_cutoffs: 0,
            index_bound_violations: 0,
            containment_violations: 0,
            audit_checks: 0,
            audit_violations: 0,
            cross_checks: 0,
            cross_mismatches: 0,
            duplicate_heads: 0,
        }
    }

    pub fn total_ms(&self) -> f64 {
        self.total.as_secs_f64() * 1e3
    }

    pub fn superset_ms(&self) -> f64 {
        self.superset.as_secs_f64() * 1e3
    }

    /// `ceil(n_mfi / W)`, the largest index a word-granular engine may hold.
    pub fn index_bound(&self) -> usize {
        self.n_mfi.div_ceil(self.word_bits)
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("engine", self.engine.to_string()),
            ("word_bits", self.word_bits.to_string()),
            ("total_ms", format!("{:.3}", self.total_ms())),
            ("superset_ms", format!("{:.3}", self.superset_ms())),
            ("n_mfi", self.n_mfi.to_string()),
            ("n_superset_checks", self.n_superset_checks.to_string()),
            ("n_word_ands", self.n_word_ands.to_string()),
            ("peak_lind_entries", self.peak_lind_entries.to_string()),
            ("peak_local_ids", self.peak_local_ids.to_string()),
            ("allocations", self.allocations.to_string()),
            ("growth_events", self.growth_events.to_string()),
            ("n_nodes", self.n_nodes.to_string()),
            ("max_depth", self.max_depth.to_string()),
            ("pep_absorbed", self.pep_absorbed.to_string()),
            ("hutmfi_prunes", self.hutmfi_prunes.to_string()),
            ("fhut_cutoffs", self.fhut_cutoffs.to_string()),
        ]
    }

    pub fn write_key_values<Wr: Write>(&self, out: &mut Wr) -> io::Result<()> {
        for (k, v) in self.fields() {
            writeln!(out, "{k}={v}")?;
        }
        Ok(())
    }

    pub fn write_csv<Wr: Write>(&self, out: &mut Wr) -> io::Result<()> {
        let fields = self.fields();
        let header: Vec<&str> = fields.iter().map(|f| f.0).collect();
        let row: Vec<&str> = fields.iter().map(|f| f.1.as_str()).collect();
        writeln!(out, "{}", header.join(","))?;
        writeln!(out, "{}", row.join(","))
    }
}
