//! Cross-validation of the engines on a shared batch.

use std::fmt;

use vpip_core::{
    edge_coefficients, to_voronoi, Batch, EngineKind, Generators, InclusionEngine, InclusionMask,
    Point, Polygon, RayCrossingEngine, SignOfOffsetEngine, Tolerances, VoronoiEngine,
};

use crate::error::HarnessError;

/// Disagreements closer than this to an edge line are attributed to
/// floating-point rounding on the boundary.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// At most this many disagreeing points are listed in a report.
pub const MAX_LISTED: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct PairAgreement {
    pub first: EngineKind,
    pub second: EngineKind,
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub index: usize,
    pub point: Point,
    /// Distance to the nearest edge line.
    pub edge_distance: f64,
    /// Each engine's verdict for this point.
    pub verdicts: Vec<(EngineKind, bool)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub n_edges: usize,
    pub n_points: usize,
    pub inside: Vec<(EngineKind, usize)>,
    pub pairs: Vec<PairAgreement>,
    /// Points where at least two engines disagree.
    pub disagreeing_points: usize,
    /// Disagreeing points farther than [`BOUNDARY_BAND`] from every edge line.
    pub boundary_distant: usize,
    /// First [`MAX_LISTED`] disagreements, in batch order.
    pub listed: Vec<Disagreement>,
    pub passed: bool,
}

/// Distance from `p` to the nearest supporting line of an edge of `polygon`.
pub fn nearest_edge_line_distance(polygon: &Polygon, p: Point) -> f64 {
    let tol = Tolerances::default();
    polygon
        .edges()
        .filter_map(|(a, b)| edge_coefficients(a, b, &tol).ok())
        .map(|e| e.distance(p))
        .fold(f64::INFINITY, f64::min)
}

/// Runs all three engines on `batch` and compares their masks.
pub fn run_validation(polygon: &Polygon, batch: &Batch) -> Result<ValidationReport, HarnessError> {
    let generators = to_voronoi(polygon)?;
    run_validation_with(polygon, &generators, batch, &EngineKind::ALL)
}

/// Like [`run_validation`] but with caller-supplied generators (e.g. a stored
/// or deliberately corrupted conversion) and engine subset. The report does
/// not depend on the order of `engines`.
pub fn run_validation_with(
    polygon: &Polygon,
    generators: &Generators,
    batch: &Batch,
    engines: &[EngineKind],
) -> Result<ValidationReport, HarnessError> {
    let mut kinds = engines.to_vec();
    kinds.sort();
    kinds.dedup();

    let masks: Vec<(EngineKind, InclusionMask)> = kinds
        .iter()
        .map(|&kind| {
            let mask = match kind {
                EngineKind::Voronoi => VoronoiEngine::new(generators).contains_batch(batch),
                EngineKind::SignOfOffset => SignOfOffsetEngine::new(polygon).contains_batch(batch),
                EngineKind::RayCrossing => RayCrossingEngine::new(polygon.vertices())?.contains_batch(batch),
            };
            Ok((kind, mask))
        })
        .collect::<Result<_, HarnessError>>()?;

    let mut pairs = Vec::new();
    for (i, (a, ma)) in masks.iter().enumerate() {
        for (b, mb) in &masks[i + 1..] {
            let disagree = ma.differences(mb).count();
            pairs.push(PairAgreement {
                first: *a,
                second: *b,
                agree: batch.len() - disagree,
                disagree,
            });
        }
    }

    let mut disagreeing_points = 0;
    let mut boundary_distant = 0;
    let mut listed = Vec::new();
    for i in 0..batch.len() {
        let first = masks.first().map(|(_, m)| m.get(i));
        if masks.iter().all(|(_, m)| Some(m.get(i)) == first) {
            continue;
        }
        disagreeing_points += 1;
        let point = batch.get(i);
        let edge_distance = nearest_edge_line_distance(polygon, point);
        if edge_distance > BOUNDARY_BAND {
            boundary_distant += 1;
        }
        if listed.len() < MAX_LISTED {
            listed.push(Disagreement {
                index: i,
                point,
                edge_distance,
                verdicts: masks.iter().map(|(k, m)| (*k, m.get(i))).collect(),
            });
        }
    }

    Ok(ValidationReport {
        n_edges: polygon.len(),
        n_points: batch.len(),
        inside: masks.iter().map(|(k, m)| (*k, m.count_inside())).collect(),
        pairs,
        disagreeing_points,
        boundary_distant,
        listed,
        passed: boundary_distant == 0,
    })
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polygon edges: {}", self.n_edges)?;
        writeln!(f, "points:        {}", self.n_points)?;
        for (kind, inside) in &self.inside {
            writeln!(f, "  {:<15} inside {inside}", kind.name())?;
        }
        for p in &self.pairs {
            writeln!(
                f,
                "  {} vs {}: {} agree, {} disagree",
                p.first, p.second, p.agree, p.disagree
            )?;
        }
        writeln!(
            f,
            "disagreeing points: {} ({} farther than {:e} from every edge line)",
            self.disagreeing_points, self.boundary_distant, BOUNDARY_BAND
        )?;
        for d in &self.listed {
            let verdicts: Vec<String> = d
                .verdicts
                .iter()
                .map(|(k, v)| format!("{}={}", k, if *v { "in" } else { "out" }))
                .collect();
            writeln!(
                f,
                "  #{} ({:?}, {:?}) edge distance {:e}: {}",
                d.index,
                d.point.x,
                d.point.y,
                d.edge_distance,
                verdicts.join(" ")
            )?;
        }
        write!(f, "verdict: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}
