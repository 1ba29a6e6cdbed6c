//! Wall-clock table for the coloring paths.

use std::time::Instant;

use crate::colorer::{four_color, Budget};
use crate::oracle;
use crate::workbench::gen::gen_random_triangulation;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: u32,
    pub color_ms: f64,
    pub colors_used: u32,
    pub gap_events: u64,
    pub kempe_ms: f64,
}

pub fn run_bench(sizes: &[u32], budget: &Budget) -> Vec<BenchRow> {
    sizes
        .iter()
        .map(|&n| {
            let g = gen_random_triangulation(n.max(4), 0xF00D ^ n as u64).expect("n >= 4");
            let t0 = Instant::now();
            let (coloring, trace) = four_color(&g, budget);
            let color_ms = t0.elapsed().as_secs_f64() * 1e3;
            let report = oracle::verify(&g, &coloring).expect("total");
            assert!(report.proper);
            let t1 = Instant::now();
            let kempe = oracle::kempe_five_color(&g);
            let kempe_ms = t1.elapsed().as_secs_f64() * 1e3;
            assert!(oracle::verify(&g, &kempe).expect("total").proper);
            BenchRow {
                n: n.max(4),
                color_ms,
                colors_used: report.colors_used,
                gap_events: trace.gap_events(),
                kempe_ms,
            }
        })
        .collect()
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>8}  {:>12}  {:>7}  {:>5}  {:>12}\n",
        "n", "color (ms)", "colors", "gaps", "kempe (ms)"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:>8}  {:>12.2}  {:>7}  {:>5}  {:>12.2}\n",
            r.n, r.color_ms, r.colors_used, r.gap_events, r.kempe_ms
        ));
    }
    out
}
