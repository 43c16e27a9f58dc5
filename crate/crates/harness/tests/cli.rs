use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vpip::read_records;
use vpip_core::io::{parse_generators, parse_mask, write_points_binary};
use vpip_core::{Batch, Point};

fn vpip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vpip"))
        .args(args)
        .output()
        .expect("run vpip")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SQUARE_JSON: &str = r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#;

#[test]
fn convert_writes_generator_json() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("square.json");
    fs::write(&poly, SQUARE_JSON).unwrap();

    let out = vpip(&["convert", "--polygon", path(&poly)]);
    assert!(out.status.success());
    let g = parse_generators(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(g.inner(), Point::new(0.5, 0.5));
    assert_eq!(g.outer()[1], Point::new(1.5, 0.5));

    let file = dir.path().join("gens.json");
    let out = vpip(&["convert", "--polygon", path(&poly), "--out", path(&file)]);
    assert!(out.status.success());
    assert_eq!(parse_generators(&fs::read_to_string(file).unwrap()).unwrap(), g);
}

#[test]
fn test_subcommand_all_engines_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("square.csv");
    fs::write(&poly, "0,0\n1,0\n1,1\n0,1\n").unwrap();
    let pts = dir.path().join("pts.csv");
    fs::write(&pts, "0.5,0.5\n2,2\n1,0.5\n-0.1,0.3\n").unwrap();
    let bin = dir.path().join("pts.bin");
    let batch = Batch::new(vec![0.5, 2.0, 1.0, -0.1], vec![0.5, 2.0, 0.5, 0.3]).unwrap();
    write_points_binary(&batch, fs::File::create(&bin).unwrap()).unwrap();

    for engine in ["voronoi", "offset", "crossing"] {
        for points in [&pts, &bin] {
            let out = vpip(&["test", "--polygon", path(&poly), "--points", path(points), "--engine", engine]);
            assert!(out.status.success(), "{engine}: {}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n0\n1\n0\n", "{engine}");
        }
        let mask_path = dir.path().join(format!("{engine}.mask"));
        let out = vpip(&[
            "test", "--polygon", path(&poly), "--points", path(&pts), "--engine", engine,
            "--format", "binary", "--out", path(&mask_path),
        ]);
        assert!(out.status.success());
        let bytes = fs::read(&mask_path).unwrap();
        assert_eq!(&bytes[..4], b"PIPM");
        assert_eq!(parse_mask(&bytes).unwrap().bits(), &[true, false, true, false]);
    }
}

#[test]
fn crossing_engine_accepts_concave_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("dart.json");
    fs::write(&poly, r#"{"vertices": [[0,0],[4,0],[4,4],[2,1],[0,4]]}"#).unwrap();
    let pts = dir.path().join("pts.csv");
    fs::write(&pts, "2,2\n0.5,2\n").unwrap();

    let out = vpip(&["test", "--polygon", path(&poly), "--points", path(&pts), "--engine", "crossing"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n1\n");

    let out = vpip(&["test", "--polygon", path(&poly), "--points", path(&pts), "--engine", "voronoi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_passes_on_good_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("hex.json");
    let verts: Vec<String> = (0..6)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 6.0;
            format!("[{:?}, {:?}]", 2.0 * t.cos() + 1.0, 2.0 * t.sin())
        })
        .collect();
    fs::write(&poly, format!(r#"{{"vertices": [{}]}}"#, verts.join(","))).unwrap();
    let out = vpip(&["validate", "--polygon", path(&poly), "--count", "20000", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: PASS"), "{text}");
    assert!(text.contains("points:        20000"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let collinear = dir.path().join("bad.csv");
    fs::write(&collinear, "0,0\n1,0\n2,0\n1,1\n").unwrap();
    assert_eq!(vpip(&["validate", "--polygon", path(&collinear)]).status.code(), Some(2));
    assert_eq!(vpip(&["convert", "--polygon", "/nonexistent/poly.json"]).status.code(), Some(2));
    let out = dir.path().join("r.csv");
    assert_eq!(
        vpip(&["bench", "--edges", "2..4", "--batch", "10", "--out", path(&out)]).status.code(),
        Some(2)
    );
    assert_eq!(vpip(&["bench", "--engines", "winding", "--out", path(&out)]).status.code(), Some(2));
}

#[test]
fn bench_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("results.csv");
    let out = vpip(&[
        "bench", "--edges", "3..5", "--batch", "2000", "--reps", "2", "--engines", "voronoi,offset",
        "--threads", "2", "--out", path(&out_path),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("engine,n_edges,batch_size,repetition,phase,wall_time_ns,throughput_pts_per_s\n"));
    let records = read_records(text.as_bytes()).unwrap();
    // 3 edge counts x 2 engines x 2 reps, plus one conversion per n
    assert_eq!(records.len(), 3 * 2 * 2 + 3);
    assert!(String::from_utf8(out.stdout).unwrap().contains("sign_of_offset"));
}
