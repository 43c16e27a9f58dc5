//! Throughput benchmark over a range of polygon edge counts.
//!
//! For every `n` the runner builds a regular `n`-gon and samples one batch;
//! every `(engine, n)` cell gets a discarded warm-up query and then
//! `repetitions` timed queries. Conversion to generators is timed separately
//! and never included in query records.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::{Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use vpip_core::{
    to_voronoi, EngineKind, InclusionEngine, InclusionMask, Point, RayCrossingEngine,
    SignOfOffsetEngine, VoronoiEngine,
};

use crate::error::{invalid, HarnessError};
use crate::polygons::generate_regular_polygon;
use crate::sampling::{sample_points, SampleBox};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub edge_counts: Vec<usize>,
    pub batch_size: usize,
    pub repetitions: usize,
    pub seed: u64,
    /// `None` samples over twice each polygon's bounding box.
    pub sample_box: Option<SampleBox>,
    pub engines: Vec<EngineKind>,
    /// Worker threads for the batch kernels; 1 runs them on the caller.
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            edge_counts: (3..=15).collect(),
            batch_size: 1_000_000,
            repetitions: 10,
            seed: 42,
            sample_box: None,
            engines: EngineKind::ALL.to_vec(),
            threads: 1,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.edge_counts.is_empty() {
            return Err(invalid("no edge counts given"));
        }
        if let Some(n) = self.edge_counts.iter().find(|&&n| n < 3) {
            return Err(invalid(format!("edge count {n} is below 3")));
        }
        if self.batch_size == 0 {
            return Err(invalid("batch size must be at least 1"));
        }
        if self.repetitions == 0 {
            return Err(invalid("repetitions must be at least 1"));
        }
        if self.engines.is_empty() {
            return Err(invalid("no engines selected"));
        }
        if self.threads == 0 {
            return Err(invalid("threads must be at least 1"));
        }
        if let Some(b) = &self.sample_box {
            SampleBox::new(b.min, b.max)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Convert,
    Query,
}

/// One timed measurement. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub engine: EngineKind,
    pub n_edges: usize,
    pub batch_size: usize,
    pub repetition: usize,
    pub phase: Phase,
    pub wall_time_ns: u64,
    /// `batch_size / (wall_time_ns * 1e-9)`.
    pub throughput_pts_per_s: f64,
}

impl BenchRecord {
    fn new(engine: EngineKind, n_edges: usize, batch_size: usize, repetition: usize, phase: Phase, ns: u64) -> Self {
        let ns = ns.max(1);
        Self {
            engine,
            n_edges,
            batch_size,
            repetition,
            phase,
            wall_time_ns: ns,
            throughput_pts_per_s: batch_size as f64 / (ns as f64 * 1e-9),
        }
    }
}

/// Fingerprint of the mask produced for one `(engine, n)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskDigest {
    pub engine: EngineKind,
    pub n_edges: usize,
    pub inside: usize,
    pub hash: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineFailure {
    pub engine: EngineKind,
    pub n_edges: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct BenchRun {
    pub records: Vec<BenchRecord>,
    pub digests: Vec<MaskDigest>,
    pub failures: Vec<EngineFailure>,
}

impl BenchRun {
    pub fn query_records(&self) -> impl Iterator<Item = &BenchRecord> {
        self.records.iter().filter(|r| r.phase == Phase::Query)
    }
}

fn digest(engine: EngineKind, n_edges: usize, mask: &InclusionMask) -> MaskDigest {
    let mut h = DefaultHasher::new();
    mask.hash(&mut h);
    MaskDigest {
        engine,
        n_edges,
        inside: mask.count_inside(),
        hash: h.finish(),
    }
}

/// One `(engine, n)` cell of the benchmark grid.
struct Cell {
    engine: Box<dyn InclusionEngine<f64>>,
    n_edges: usize,
    batch: usize,
}

pub fn run_benchmark(config: &BenchConfig) -> Result<BenchRun, HarnessError> {
    config.validate()?;
    let pool = if config.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.threads)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut run = BenchRun::default();
    let mut batches = Vec::new();
    let mut cells = Vec::new();
    for &n in &config.edge_counts {
        let polygon = generate_regular_polygon(n, 1.0, Point::new(0.0, 0.0))?;
        let bounds = config.sample_box.unwrap_or_else(|| SampleBox::around(&polygon));
        batches.push(sample_points(config.batch_size, &bounds, config.seed.wrapping_add(n as u64))?);
        let batch = batches.len() - 1;

        for &kind in &config.engines {
            let engine: Result<Box<dyn InclusionEngine<f64>>, _> = match kind {
                EngineKind::Voronoi => {
                    let start = Instant::now();
                    let converted = to_voronoi(&polygon);
                    let ns = start.elapsed().as_nanos() as u64;
                    converted.map(|g| {
                        run.records
                            .push(BenchRecord::new(kind, n, config.batch_size, 0, Phase::Convert, ns));
                        Box::new(VoronoiEngine::new(&g)) as Box<dyn InclusionEngine<f64>>
                    })
                }
                EngineKind::SignOfOffset => Ok(Box::new(SignOfOffsetEngine::new(&polygon)) as _),
                EngineKind::RayCrossing => RayCrossingEngine::new(polygon.vertices()).map(|e| Box::new(e) as _),
            };
            match engine {
                Ok(engine) => cells.push(Cell { engine, n_edges: n, batch }),
                Err(e) => run.failures.push(EngineFailure {
                    engine: kind,
                    n_edges: n,
                    message: e.to_string(),
                }),
            }
        }
    }

    let query = |cell: &Cell| {
        let batch = &batches[cell.batch];
        match &pool {
            Some(pool) => pool.install(|| cell.engine.contains_batch_par(batch)),
            None => cell.engine.contains_batch(batch),
        }
    };
    for cell in &cells {
        let warm = query(cell);
        run.digests.push(digest(cell.engine.kind(), cell.n_edges, &warm));
    }
    // Repetitions sweep the whole grid in turn, so a slow stretch of wall
    // clock time lands on one repetition of many cells rather than on every
    // repetition of one cell. Within a sweep, cells of one engine run in order
    // of n, so neighbouring edge counts see the same machine conditions, and
    // the direction alternates to cancel drift.
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| {
        let kind = cells[i].engine.kind();
        (EngineKind::ALL.iter().position(|&k| k == kind), cells[i].n_edges)
    });
    let mut timed = Vec::with_capacity(cells.len() * config.repetitions);
    for rep in 0..config.repetitions {
        for &i in &order {
            let cell = &cells[i];
            let start = Instant::now();
            let mask = std::hint::black_box(query(cell));
            let ns = start.elapsed().as_nanos() as u64;
            drop(mask);
            let record = BenchRecord::new(cell.engine.kind(), cell.n_edges, config.batch_size, rep, Phase::Query, ns);
            timed.push((i, record));
        }
        order.reverse();
    }
    timed.sort_by_key(|(i, r)| (*i, r.repetition));
    run.records.extend(timed.into_iter().map(|(_, r)| r));
    Ok(run)
}

pub fn write_records<W: Write>(records: &[BenchRecord], w: W) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_writer(w);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(r: R) -> Result<Vec<BenchRecord>, HarnessError> {
    csv::Reader::from_reader(r)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(Into::into)
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}

/// Median query statistics for one `(engine, n)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub engine: EngineKind,
    pub n_edges: usize,
    pub median_wall_time_ns: f64,
    pub median_throughput: f64,
}

/// Per-pair medians over the query records, ordered by engine then `n`.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut keys: Vec<(EngineKind, usize)> = records
        .iter()
        .filter(|r| r.phase == Phase::Query)
        .map(|r| (r.engine, r.n_edges))
        .collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(engine, n_edges)| {
            let sel = || {
                records
                    .iter()
                    .filter(move |r| r.phase == Phase::Query && r.engine == engine && r.n_edges == n_edges)
            };
            let mut times: Vec<f64> = sel().map(|r| r.wall_time_ns as f64).collect();
            let mut tput: Vec<f64> = sel().map(|r| r.throughput_pts_per_s).collect();
            SummaryRow {
                engine,
                n_edges,
                median_wall_time_ns: median(&mut times).unwrap_or(f64::NAN),
                median_throughput: median(&mut tput).unwrap_or(f64::NAN),
            }
        })
        .collect()
}
