//! Seeded, reproducible fuzz campaigns over random triangulations.
//!
//! Every instance is derived from (campaign seed, index), so a campaign is
//! replayable regardless of thread scheduling. One `RunRecord` per
//! `four_color` call is appended to `records.jsonl`; instances that trigger
//! a gap event or a verifier failure are persisted into `corpus/` together
//! with their traces.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::colorer::{four_color, Budget, Trace, TraceCounts};
use crate::oracle;
use crate::workbench::format::{canonical_instance_json, emit_rotation_json};
use crate::workbench::gen::{gen_with_mode, GenMode};

#[derive(Debug, Clone)]
pub struct FuzzParams {
    pub n_min: u32,
    pub n_max: u32,
    pub count: u64,
    pub seed: u64,
    pub jobs: usize,
    pub out_dir: PathBuf,
}

/// Append-only record of one coloring run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub index: u64,
    pub instance_digest: String,
    pub campaign_seed: u64,
    pub instance_seed: u64,
    pub generator: String,
    pub n: u32,
    pub algorithm_version: String,
    pub colors_used: u32,
    pub proper: bool,
    pub gap_events: u64,
    pub strategy_counts: TraceCounts,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub records: u64,
    pub verifier_failures: u64,
    pub gap_instances: u64,
    pub five_color_fallbacks: u64,
    pub corpus_entries: u64,
}

struct RunOutput {
    record: RunRecord,
    corpus: Option<(String, String, String)>, // digest, instance json, trace json
}

pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Instance parameters derived from (campaign seed, index): the per-instance
/// seed, the requested size, and the generator mode (modes alternate).
pub fn instance_plan(params: &FuzzParams, index: u64) -> (u64, u32, GenMode) {
    let instance_seed = splitmix64(params.seed ^ splitmix64(index));
    let span = params.n_max.saturating_sub(params.n_min) as u64 + 1;
    let n = params.n_min + (splitmix64(instance_seed) % span) as u32;
    let mode = if index % 2 == 0 {
        GenMode::Stacked
    } else {
        GenMode::Flipped
    };
    (instance_seed, n.max(4), mode)
}

fn run_one(params: &FuzzParams, budget: &Budget, index: u64) -> RunOutput {
    let (instance_seed, n, mode) = instance_plan(params, index);
    let graph = gen_with_mode(n, instance_seed, mode).expect("n >= 4");
    let start = Instant::now();
    let (coloring, trace) = four_color(&graph, budget);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = oracle::verify(&graph, &coloring).expect("total coloring");
    let digest = hex::encode(Sha256::digest(canonical_instance_json(&graph).as_bytes()));
    let record = RunRecord {
        index,
        instance_digest: digest.clone(),
        campaign_seed: params.seed,
        instance_seed,
        generator: mode.to_string(),
        n,
        algorithm_version: env!("CARGO_PKG_VERSION").to_string(),
        colors_used: report.colors_used,
        proper: report.proper,
        gap_events: trace.gap_events(),
        strategy_counts: trace.counts().clone(),
        wall_time_ms,
    };
    let corpus = if trace.gap_events() > 0 || !report.proper {
        let instance = emit_rotation_json(&graph, Some(instance_seed), Some(&mode.to_string()));
        let trace_json = serde_json::to_string_pretty(&TraceArchive {
            instance_digest: digest.clone(),
            budget: budget.clone(),
            trace,
        })
        .expect("trace serializes");
        Some((digest, instance, trace_json))
    } else {
        None
    };
    RunOutput { record, corpus }
}

/// Archived trace alongside the inputs needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceArchive {
    pub instance_digest: String,
    pub budget: Budget,
    pub trace: Trace,
}

/// Runs the campaign. Records land in `<out>/records.jsonl` in index order;
/// corpus entries in `<out>/corpus/`.
pub fn run_campaign(params: &FuzzParams, budget: &Budget) -> std::io::Result<CampaignSummary> {
    fs::create_dir_all(params.out_dir.join("corpus"))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.jobs.max(1))
        .build()
        .expect("thread pool");
    let outputs: Vec<RunOutput> = pool.install(|| {
        (0..params.count)
            .into_par_iter()
            .map(|i| run_one(params, budget, i))
            .collect()
    });

    let records_path = params.out_dir.join("records.jsonl");
    let mut file = fs::File::create(&records_path)?;
    let mut summary = CampaignSummary {
        records: 0,
        verifier_failures: 0,
        gap_instances: 0,
        five_color_fallbacks: 0,
        corpus_entries: 0,
    };
    for out in &outputs {
        let line = serde_json::to_string(&out.record).expect("record serializes");
        writeln!(file, "{line}")?;
        summary.records += 1;
        if !out.record.proper {
            summary.verifier_failures += 1;
        }
        if out.record.gap_events > 0 {
            summary.gap_instances += 1;
        }
        if out.record.strategy_counts.fallback_kempe > 0 {
            summary.five_color_fallbacks += 1;
        }
        if let Some((digest, instance, trace)) = &out.corpus {
            summary.corpus_entries += 1;
            fs::write(
                params.out_dir.join("corpus").join(format!("{digest}.instance.json")),
                instance,
            )?;
            fs::write(
                params.out_dir.join("corpus").join(format!("{digest}.trace.json")),
                trace,
            )?;
        }
    }
    Ok(summary)
}

/// Reads back a records file, for replay checks and reporting.
pub fn read_records(path: &Path) -> std::io::Result<Vec<RunRecord>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .map(|l| {
            serde_json::from_str(l)
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(dir: &Path, count: u64, seed: u64) -> FuzzParams {
        FuzzParams {
            n_min: 5,
            n_max: 40,
            count,
            seed,
            jobs: 4,
            out_dir: dir.to_path_buf(),
        }
    }

    #[test]
    fn campaign_is_reproducible_modulo_timing() {
        let tmp = std::env::temp_dir().join(format!("fourcolor-fuzz-{}", std::process::id()));
        let a_dir = tmp.join("a");
        let b_dir = tmp.join("b");
        let budget = Budget::default();
        let sa = run_campaign(&params(&a_dir, 40, 99), &budget).unwrap();
        let sb = run_campaign(&params(&b_dir, 40, 99), &budget).unwrap();
        assert_eq!(sa, sb);
        let ra = read_records(&a_dir.join("records.jsonl")).unwrap();
        let rb = read_records(&b_dir.join("records.jsonl")).unwrap();
        assert_eq!(ra.len(), 40);
        for (mut x, mut y) in ra.into_iter().zip(rb) {
            x.wall_time_ms = 0.0;
            y.wall_time_ms = 0.0;
            assert_eq!(x, y);
        }
        fs::remove_dir_all(&tmp).ok();
    }

    #[test]
    fn campaign_colorings_all_verify() {
        let tmp = std::env::temp_dir().join(format!("fourcolor-fuzz-v-{}", std::process::id()));
        let budget = Budget::default();
        let summary = run_campaign(&params(&tmp, 60, 7), &budget).unwrap();
        assert_eq!(summary.records, 60);
        assert_eq!(summary.verifier_failures, 0);
        fs::remove_dir_all(&tmp).ok();
    }
}
