//! Instance-list benchmark runs, result CSV and the easy/moderate/tough
//! split.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::{Duration, Instant};

use mcs_core::graph::Graph;
use mcs_core::policy::{Heuristic, PolicyVariant, Thresholds};
use mcs_core::search::{solve, SolverConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::load_graph;
use crate::list::InstanceRecord;

/// Outcome of one run. Serialised into the `solved` column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "true")]
    Solved,
    #[serde(rename = "false")]
    Unsolved,
    /// The instance could not be loaded.
    #[serde(rename = "error")]
    Error,
}

/// One CSV row. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub instance: String,
    #[serde(with = "heuristic_name")]
    pub variant: Heuristic,
    pub lum: bool,
    pub connected: bool,
    pub solved: Status,
    pub size: Option<usize>,
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
}

impl RunRow {
    pub fn policy(&self) -> PolicyVariant {
        PolicyVariant::new(self.variant, self.lum)
    }
}

mod heuristic_name {
    use mcs_core::policy::Heuristic;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(h: &Heuristic, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(h.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Heuristic, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub const CSV_HEADER: &str = "instance,variant,lum,connected,solved,size,nodes,seconds";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub variants: Vec<PolicyVariant>,
    pub connected: bool,
    pub timeout: Duration,
    pub node_budget: Option<u64>,
    pub thresholds: Thresholds,
    /// Worker threads; each worker runs one instance at a time.
    pub jobs: usize,
    /// Solve with the pattern and target exchanged.
    pub swap: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            variants: Heuristic::ALL.iter().map(|&h| PolicyVariant::with_default_lum(h)).collect(),
            connected: false,
            timeout: Duration::from_secs(1800),
            node_budget: None,
            thresholds: Thresholds::default(),
            jobs: 1,
            swap: false,
        }
    }
}

impl BenchConfig {
    fn solver(&self, variant: PolicyVariant) -> SolverConfig {
        SolverConfig::new(variant)
            .connected(self.connected)
            .timeout(self.timeout)
            .node_budget(self.node_budget)
            .thresholds(self.thresholds)
    }
}

fn run_loaded(id: &str, g0: &Graph, g1: &Graph, config: &BenchConfig, variant: PolicyVariant) -> RunRow {
    let (g0, g1) = if config.swap { (g1, g0) } else { (g0, g1) };
    let started = Instant::now();
    let result = solve(g0, g1, &config.solver(variant));
    let seconds = started.elapsed().as_secs_f64();
    let mut row = RunRow {
        instance: id.to_string(),
        variant: variant.heuristic,
        lum: variant.lum,
        connected: config.connected,
        solved: Status::Error,
        size: None,
        nodes: None,
        seconds: Some(seconds),
    };
    if let Ok((solution, stats)) = result {
        row.solved = if stats.completed { Status::Solved } else { Status::Unsolved };
        row.size = Some(solution.len());
        row.nodes = Some(stats.nodes_expanded);
    }
    row
}

/// Runs every variant on one instance, in variant order.
pub fn run_instance(record: &InstanceRecord, config: &BenchConfig) -> Vec<RunRow> {
    let load = |p| load_graph(p, record.format, record.directed, record.labelled);
    match (load(&record.pattern), load(&record.target)) {
        (Ok(g0), Ok(g1)) => config.variants.iter().map(|&v| run_loaded(&record.id, &g0, &g1, config, v)).collect(),
        _ => config
            .variants
            .iter()
            .map(|v| RunRow {
                instance: record.id.clone(),
                variant: v.heuristic,
                lum: v.lum,
                connected: config.connected,
                solved: Status::Error,
                size: None,
                nodes: None,
                seconds: None,
            })
            .collect(),
    }
}

/// Runs every instance under every variant. Rows come back in list order,
/// then variant order, whatever the number of jobs.
pub fn run_benchmark(records: &[InstanceRecord], config: &BenchConfig) -> Vec<RunRow> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs.max(1)).build().expect("thread pool");
    pool.install(|| records.par_iter().map(|r| run_instance(r, config)).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

pub fn write_csv<W: Write>(rows: &[RunRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<RunRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    /// Every variant solved it within the easy threshold.
    Easy,
    /// At least one variant solved it, but not all of them quickly.
    Moderate,
    /// No variant solved it.
    Tough,
}

/// Groups rows by instance, keeping first-seen instance order.
fn by_instance(rows: &[RunRow]) -> Vec<(&str, Vec<&RunRow>)> {
    let mut order: Vec<(&str, Vec<&RunRow>)> = Vec::new();
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for row in rows {
        let i = *index.entry(&row.instance).or_insert_with(|| {
            order.push((&row.instance, Vec::new()));
            order.len() - 1
        });
        order[i].1.push(row);
    }
    order
}

pub fn classify(rows: &[RunRow], easy_secs: f64) -> Vec<(String, Class)> {
    by_instance(rows)
        .into_iter()
        .map(|(id, runs)| {
            let solved = |r: &&RunRow| r.solved == Status::Solved;
            let class = if !runs.iter().any(solved) {
                Class::Tough
            } else if runs.iter().all(|r| solved(r) && r.seconds.is_some_and(|s| s <= easy_secs)) {
                Class::Easy
            } else {
                Class::Moderate
            };
            (id.to_string(), class)
        })
        .collect()
}

/// Geometric mean of node counts per variant, over the instances that
/// every listed variant solved. `None` when no instance qualifies.
pub fn geomean_nodes(rows: &[RunRow], variants: &[PolicyVariant]) -> Vec<(PolicyVariant, Option<f64>)> {
    let common: Vec<Vec<&RunRow>> = by_instance(rows)
        .into_iter()
        .filter_map(|(_, runs)| {
            let picked: Vec<&RunRow> = variants
                .iter()
                .filter_map(|v| runs.iter().find(|r| r.policy() == *v && r.solved == Status::Solved).copied())
                .collect();
            (picked.len() == variants.len()).then_some(picked)
        })
        .collect();
    variants
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if common.is_empty() {
                return (v, None);
            }
            let log_sum: f64 = common.iter().map(|runs| (runs[i].nodes.unwrap_or(0).max(1) as f64).ln()).sum();
            (v, Some((log_sum / common.len() as f64).exp()))
        })
        .collect()
}

/// Human-readable summary: per-instance node table, geometric means and
/// the instance classification.
pub fn render_report(rows: &[RunRow], variants: &[PolicyVariant], easy_secs: f64) -> String {
    let mut out = String::new();
    let classes: BTreeMap<String, Class> = classify(rows, easy_secs).into_iter().collect();
    let width = rows.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
    let _ = write!(out, "{:<width$}  {:<8}", "instance", "class");
    for v in variants {
        let _ = write!(out, " {:>14}", v.to_string());
    }
    out.push('\n');
    for (id, runs) in by_instance(rows) {
        let _ = write!(out, "{:<width$}  {:<8}", id, format!("{:?}", classes[id]).to_lowercase());
        for v in variants {
            let cell = match runs.iter().find(|r| r.policy() == *v) {
                Some(r) if r.solved == Status::Solved => r.nodes.map_or("-".into(), |n| n.to_string()),
                Some(r) if r.solved == Status::Error => "error".into(),
                Some(_) => "timeout".into(),
                None => "-".into(),
            };
            let _ = write!(out, " {:>14}", cell);
        }
        out.push('\n');
    }
    out.push_str("geomean nodes (instances solved by all):");
    for (v, g) in geomean_nodes(rows, variants) {
        match g {
            Some(g) => {
                let _ = write!(out, " {v}={g:.1}");
            }
            None => {
                let _ = write!(out, " {v}=n/a");
            }
        }
    }
    out.push('\n');
    let count = |c: Class| classes.values().filter(|&&x| x == c).count();
    let _ = writeln!(
        out,
        "classes (easy <= {easy_secs}s): easy={} moderate={} tough={}",
        count(Class::Easy),
        count(Class::Moderate),
        count(Class::Tough)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(instance: &str, variant: &str, solved: Status, nodes: u64, seconds: f64) -> RunRow {
        let v: PolicyVariant = variant.parse().unwrap();
        RunRow {
            instance: instance.into(),
            variant: v.heuristic,
            lum: v.lum,
            connected: false,
            solved,
            size: Some(3),
            nodes: Some(nodes),
            seconds: Some(seconds),
        }
    }

    #[test]
    fn csv_round_trip_and_header() {
        let rows = vec![row("a:b", "lsm+lum", Status::Solved, 10, 0.25), {
            let mut r = row("c:d", "rl", Status::Error, 0, 0.0);
            r.size = None;
            r.nodes = None;
            r.seconds = None;
            r
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next(), Some(CSV_HEADER));
        assert_eq!(text.lines().nth(1), Some("a:b,lsm,true,false,true,3,10,0.25"));
        assert_eq!(text.lines().nth(2), Some("c:d,rl,false,false,error,,,"));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
        let mut again = Vec::new();
        write_csv(&read_csv(&buf[..]).unwrap(), &mut again).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn classification() {
        let rows = vec![
            row("easy", "rl", Status::Solved, 5, 1.0),
            row("easy", "lsm", Status::Solved, 5, 2.0),
            row("mod", "rl", Status::Solved, 5, 1.0),
            row("mod", "lsm", Status::Solved, 5, 20.0),
            row("mod2", "rl", Status::Unsolved, 5, 30.0),
            row("mod2", "lsm", Status::Solved, 5, 2.0),
            row("tough", "rl", Status::Unsolved, 5, 30.0),
            row("tough", "lsm", Status::Error, 5, 30.0),
        ];
        let classes = classify(&rows, 10.0);
        assert_eq!(
            classes.iter().map(|(_, c)| *c).collect::<Vec<_>>(),
            vec![Class::Easy, Class::Moderate, Class::Moderate, Class::Tough]
        );
    }

    #[test]
    fn geomean_over_commonly_solved() {
        let rows = vec![
            row("x", "rl", Status::Solved, 10, 1.0),
            row("x", "lsm+lum", Status::Solved, 1000, 1.0),
            row("y", "rl", Status::Solved, 1000, 1.0),
            row("y", "lsm+lum", Status::Solved, 10, 1.0),
            row("z", "rl", Status::Unsolved, 1, 1.0),
            row("z", "lsm+lum", Status::Solved, 1, 1.0),
        ];
        let vs: Vec<PolicyVariant> = vec!["rl".parse().unwrap(), "lsm+lum".parse().unwrap()];
        let g = geomean_nodes(&rows, &vs);
        assert!((g[0].1.unwrap() - 100.0).abs() < 1e-9);
        assert!((g[1].1.unwrap() - 100.0).abs() < 1e-9);
        let report = render_report(&rows, &vs, 10.0);
        assert!(report.contains("timeout"));
        assert!(report.contains("geomean nodes"));
    }
}
