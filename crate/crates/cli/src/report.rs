//! Tabular renderings of reports, histograms and fitness histories.

use std::fmt::Write;

use anyhow::Result;
use procmix::distance::ReportRow;
use procmix::evolve::FitnessRecord;
use procmix::graph::Graph;

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn report_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("metric,value_target,value_synth,error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.metric.as_str(),
            opt(r.value_target),
            opt(r.value_synth),
            r.error
        );
    }
    out
}

pub fn report_json(rows: &[ReportRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows)?;
    s.push('\n');
    Ok(s)
}

fn degree_counts(g: &Graph, len: usize) -> Vec<usize> {
    let mut counts = vec![0; len];
    for d in g.degrees() {
        counts[d] += 1;
    }
    counts
}

/// `degree,count_a,count_b` for every degree from 0 to the larger maximum.
pub fn degree_histogram_csv(a: &Graph, b: &Graph) -> String {
    let max = a
        .degrees()
        .into_iter()
        .chain(b.degrees())
        .max()
        .unwrap_or(0);
    let (ca, cb) = (degree_counts(a, max + 1), degree_counts(b, max + 1));
    let mut out = String::from("degree,count_a,count_b\n");
    for d in 0..=max {
        let _ = writeln!(out, "{d},{},{}", ca[d], cb[d]);
    }
    out
}

pub fn history_csv(history: &[FitnessRecord]) -> String {
    let mut out = String::from("generation,best,mean\n");
    for r in history {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.generation, r.best_fitness, r.mean_fitness
        );
    }
    out
}
