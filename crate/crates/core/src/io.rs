//! File formats: polygons, generator sets, point batches and masks.
//!
//! Binary streams share a 16-byte little-endian header: a 4-byte magic,
//! `u32` version (1) and `u64` element count. Point payloads are interleaved
//! `f64` pairs; mask payloads are bitsets packed LSB-first within each byte.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::convert::GeneratorSet;
use crate::engines::{InclusionMask, PointBatch};
use crate::error::FormatError;
use crate::geometry::Point2;

pub const POINTS_MAGIC: [u8; 4] = *b"PIPB";
pub const MASK_MAGIC: [u8; 4] = *b"PIPM";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 16;

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorFile {
    inner: [f64; 2],
    outer: Vec<[f64; 2]>,
}

/// Reads polygon vertices from JSON (`{"vertices": [[x, y], ...]}`) or from
/// headerless two-column CSV. JSON is detected by a leading `{`.
pub fn parse_polygon(text: &str) -> Result<Vec<Point2<f64>>, FormatError> {
    if text.trim_start().starts_with('{') {
        let file: PolygonFile = serde_json::from_str(text)?;
        Ok(file.vertices.into_iter().map(Point2::from).collect())
    } else {
        parse_xy_csv(text.as_bytes())
    }
}

pub fn polygon_to_json(vertices: &[Point2<f64>]) -> String {
    let file = PolygonFile {
        vertices: vertices.iter().map(|&p| p.into()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("polygon serializes")
}

pub fn generators_to_json(generators: &GeneratorSet<f64>) -> String {
    let file = GeneratorFile {
        inner: generators.inner().into(),
        outer: generators.outer().iter().map(|&p| p.into()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("generators serialize")
}

pub fn parse_generators(text: &str) -> Result<GeneratorSet<f64>, FormatError> {
    let file: GeneratorFile = serde_json::from_str(text)?;
    let outer = file.outer.into_iter().map(Point2::from).collect();
    Ok(GeneratorSet::from_parts(file.inner.into(), outer)?)
}

fn parse_xy_csv(bytes: &[u8]) -> Result<Vec<Point2<f64>>, FormatError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(bytes);
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(FormatError::Parse {
                line,
                message: format!("expected 2 columns, found {}", record.len()),
            });
        }
        let field = |k: usize| {
            record[k].parse::<f64>().map_err(|e| FormatError::Parse {
                line,
                message: format!("{:?}: {e}", &record[k]),
            })
        };
        out.push(Point2::new(field(0)?, field(1)?));
    }
    Ok(out)
}

fn write_header<W: Write>(mut w: W, magic: [u8; 4], count: usize) -> std::io::Result<()> {
    w.write_all(&magic)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(count as u64).to_le_bytes())
}

fn read_header(bytes: &[u8], magic: [u8; 4]) -> Result<(usize, &[u8]), FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let found: [u8; 4] = bytes[..4].try_into().unwrap();
    if found != magic {
        return Err(FormatError::BadMagic {
            expected: magic,
            found,
        });
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(FormatError::BadVersion(version));
    }
    let count = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    Ok((count, &bytes[HEADER_LEN..]))
}

/// Reads a point batch, auto-detecting binary (`PIPB` magic) or CSV input.
pub fn parse_points(bytes: &[u8]) -> Result<PointBatch<f64>, FormatError> {
    if bytes.starts_with(&POINTS_MAGIC) {
        let (count, payload) = read_header(bytes, POINTS_MAGIC)?;
        let expected = count.checked_mul(16).ok_or(FormatError::Truncated {
            expected: usize::MAX,
            found: payload.len(),
        })?;
        if payload.len() != expected {
            return Err(FormatError::Truncated {
                expected,
                found: payload.len(),
            });
        }
        let mut xs = Vec::with_capacity(count);
        let mut ys = Vec::with_capacity(count);
        for pair in payload.chunks_exact(16) {
            xs.push(f64::from_le_bytes(pair[..8].try_into().unwrap()));
            ys.push(f64::from_le_bytes(pair[8..].try_into().unwrap()));
        }
        Ok(PointBatch::new(xs, ys)?)
    } else {
        let points = parse_xy_csv(bytes)?;
        Ok(PointBatch::from_points(&points)?)
    }
}

pub fn write_points_binary<W: Write>(batch: &PointBatch<f64>, mut w: W) -> std::io::Result<()> {
    write_header(&mut w, POINTS_MAGIC, batch.len())?;
    for (x, y) in batch.xs().iter().zip(batch.ys()) {
        w.write_all(&x.to_le_bytes())?;
        w.write_all(&y.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_points_csv<W: Write>(batch: &PointBatch<f64>, mut w: W) -> std::io::Result<()> {
    for (x, y) in batch.xs().iter().zip(batch.ys()) {
        // `{:?}` prints the shortest repr that round-trips exactly
        writeln!(w, "{x:?},{y:?}")?;
    }
    Ok(())
}

/// One `0`/`1` per line.
pub fn write_mask_csv<W: Write>(mask: &InclusionMask, mut w: W) -> std::io::Result<()> {
    for &b in mask.bits() {
        w.write_all(if b { b"1\n" } else { b"0\n" })?;
    }
    Ok(())
}

pub fn pack_mask(mask: &InclusionMask) -> Vec<u8> {
    let mut packed = vec![0u8; mask.len().div_ceil(8)];
    for (i, &b) in mask.bits().iter().enumerate() {
        packed[i / 8] |= (b as u8) << (i % 8);
    }
    packed
}

pub fn write_mask_binary<W: Write>(mask: &InclusionMask, mut w: W) -> std::io::Result<()> {
    write_header(&mut w, MASK_MAGIC, mask.len())?;
    w.write_all(&pack_mask(mask))
}

/// Reads a mask, auto-detecting binary (`PIPM` magic) or 0/1-per-line text.
pub fn parse_mask(bytes: &[u8]) -> Result<InclusionMask, FormatError> {
    if bytes.starts_with(&MASK_MAGIC) {
        let (count, payload) = read_header(bytes, MASK_MAGIC)?;
        let expected = count.div_ceil(8);
        if payload.len() != expected {
            return Err(FormatError::Truncated {
                expected,
                found: payload.len(),
            });
        }
        Ok((0..count).map(|i| payload[i / 8] >> (i % 8) & 1 == 1).collect())
    } else {
        let text = std::str::from_utf8(bytes).map_err(|e| FormatError::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| match l.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(FormatError::Parse {
                    line: i + 1,
                    message: format!("expected 0 or 1, found {other:?}"),
                }),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn polygon_json_and_csv() {
        let json = r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#;
        let csv = "0,0\n1, 0\n1,1\n0,1\n";
        let a = parse_polygon(json).unwrap();
        let b = parse_polygon(csv).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[1], Point2::new(1.0, 0.0));
        assert_eq!(parse_polygon(&polygon_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn csv_errors_report_line() {
        match parse_polygon("0,0\n1,x\n") {
            Err(FormatError::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_polygon("0,0,0\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn generator_json_shape() {
        let g = GeneratorSet::from_parts(
            Point2::new(0.5, 0.5),
            vec![Point2::new(0.5, -0.5), Point2::new(1.5, 0.5), Point2::new(0.5, 1.5)],
        )
        .unwrap();
        let text = generators_to_json(&g);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["inner"], serde_json::json!([0.5, 0.5]));
        assert_eq!(value["outer"][1], serde_json::json!([1.5, 0.5]));
        assert_eq!(parse_generators(&text).unwrap(), g);
    }

    #[test]
    fn binary_header_layout() {
        let batch = PointBatch::new(vec![1.0], vec![-2.0]).unwrap();
        let mut buf = Vec::new();
        write_points_binary(&batch, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"PIPB");
        assert_eq!(&buf[4..8], &[1, 0, 0, 0]);
        assert_eq!(&buf[8..16], &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&buf[16..24], &1.0f64.to_le_bytes());
        assert_eq!(buf.len(), 32);

        let mask = InclusionMask::from(vec![true, false, true, true, false, false, false, false, true]);
        let mut buf = Vec::new();
        write_mask_binary(&mask, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"PIPM");
        assert_eq!(&buf[8..16], &9u64.to_le_bytes());
        assert_eq!(&buf[16..], &[0b0000_1101, 0b0000_0001]);
    }

    #[test]
    fn binary_errors() {
        let mut buf = Vec::new();
        write_points_binary(&PointBatch::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap(), &mut buf).unwrap();
        assert!(matches!(
            parse_points(&buf[..buf.len() - 1]),
            Err(FormatError::Truncated { .. })
        ));
        buf[4] = 2;
        assert!(matches!(parse_points(&buf), Err(FormatError::BadVersion(2))));
        assert!(matches!(
            parse_mask(b"PIPM\x01\0\0\0"),
            Err(FormatError::Truncated { .. })
        ));
        assert!(matches!(parse_mask(b"0\n2\n"), Err(FormatError::Parse { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn points_round_trip(raw in prop::collection::vec((-1e6..1e6f64, -1e6..1e6f64), 0..64)) {
            let (xs, ys): (Vec<_>, Vec<_>) = raw.into_iter().unzip();
            let batch = PointBatch::new(xs, ys).unwrap();
            let mut bin = Vec::new();
            write_points_binary(&batch, &mut bin).unwrap();
            prop_assert_eq!(&parse_points(&bin).unwrap(), &batch);
            let mut text = Vec::new();
            write_points_csv(&batch, &mut text).unwrap();
            prop_assert_eq!(&parse_points(&text).unwrap(), &batch);
        }

        #[test]
        fn mask_round_trip(bits in prop::collection::vec(any::<bool>(), 0..100)) {
            let mask = InclusionMask::from(bits);
            let mut bin = Vec::new();
            write_mask_binary(&mask, &mut bin).unwrap();
            prop_assert_eq!(&parse_mask(&bin).unwrap(), &mask);
            let mut text = Vec::new();
            write_mask_csv(&mask, &mut text).unwrap();
            prop_assert_eq!(&parse_mask(&text).unwrap(), &mask);
        }
    }
}
