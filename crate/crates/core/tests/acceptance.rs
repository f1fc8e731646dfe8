//! Acceptance run: one PASS/FAIL line per criterion, followed by the failing
//! sub-checks. Failures are reported but only abort the process when
//! `SEGCONN_ACCEPTANCE_STRICT=1` is set, so the remaining test targets still
//! run under `cargo test`.

use std::time::Instant;

use segconn::census::{self, ComponentHistogram};
use segconn::mesh::{self, Geometry, MeshView};
use segconn::verify::{self, Check, Report};
use segconn::Segment;

const SEED: u64 = 42;
const SPLIT_SAMPLES: usize = 100_000;
const PHI_SAMPLES: usize = 1000;
const STRUCTURAL_SAMPLES: usize = 5000;

fn cube_sizes() -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (1..=5).map(|l| (2, l)).collect();
    v.extend((1..=3).map(|l| (3, l)));
    v.extend((1..=2).map(|l| (4, l)));
    v
}

fn collect(parts: impl IntoIterator<Item = segconn::Result<Report>>) -> Report {
    let mut out = Report::default();
    for p in parts {
        match p {
            Ok(r) => out.extend(r),
            Err(e) => out.push(Check::new("run", "no error", e.to_string(), false)),
        }
    }
    out
}

fn hist(geometry: Geometry, level: u32) -> ComponentHistogram {
    census::scan_distribution(geometry, level, true).expect("scan")
}

fn max_check(name: &str, geometry: Geometry, level: u32, want: usize) -> Check {
    let view = MeshView::new(geometry, level).expect("mesh");
    let (max, witness) = mesh::max_components(&view, false).expect("scan");
    Check::new(
        name,
        format!("max={want}"),
        format!("max={max} at {witness}"),
        max == want,
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Report, f64)> = Vec::new();
    let mut run = |id: u32, title: &'static str, f: &dyn Fn() -> Report| {
        let t = Instant::now();
        let report = f();
        let secs = t.elapsed().as_secs_f64();
        let tag = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "{tag} [{id:>2}] {title} ({} checks, {secs:.1}s)",
            report.checks.len()
        );
        for c in report.checks.iter().filter(|c| !c.passed) {
            println!("       {c}");
        }
        results.push((id, title, report, secs));
    };

    run(
        1,
        "cube curve: every segment has 1 or 2 components",
        &|| {
            collect(
                cube_sizes()
                    .into_iter()
                    .map(|(d, l)| verify::cube_bound(d, l, false)),
            )
        },
    );
    run(2, "cube curve: one-sided segments are connected", &|| {
        collect(
            cube_sizes()
                .into_iter()
                .map(|(d, l)| verify::cube_one_sided(d, l)),
        )
    });
    run(3, "cube curve: both split halves are connected", &|| {
        collect(
            (2..=4)
                .flat_map(|d| (1..=6).map(move |l| (d, l)))
                .map(|(d, l)| verify::split_property(d, l, SPLIT_SAMPLES, SEED)),
        )
    });
    run(4, "recursive census equals brute force", &|| {
        let mut sizes: Vec<(u32, u32)> = (1..=5).map(|l| (2, l)).collect();
        sizes.extend((1..=3).map(|l| (3, l)));
        collect(
            sizes
                .into_iter()
                .map(|(d, l)| verify::enumerate_oracle(d, l, false)),
        )
    });
    run(5, "connected fraction lower bound 1/(2^d - 1)", &|| {
        collect([
            verify::lower_bound(2, 30, PHI_SAMPLES, SEED),
            verify::lower_bound(3, 21, PHI_SAMPLES, SEED),
        ])
    });

    // The level-8 triangle and level-5 tet scans feed both criteria 6 and 7.
    let tri8 = hist(Geometry::Simplex { dim: 2 }, 8);
    let tet5 = hist(Geometry::Simplex { dim: 3 }, 5);
    run(
        6,
        "connected fractions of all segments within 0.05 pp",
        &|| {
            let mut r = Report::default();
            for (geometry, level, permille) in verify::CONNECTED_REFERENCE {
                let h = match (geometry, level) {
                    (Geometry::Simplex { dim: 2 }, 8) => tri8.clone(),
                    (Geometry::Simplex { dim: 3 }, 5) => tet5.clone(),
                    _ => hist(geometry, level),
                };
                r.push(verify::connected_check(&h, permille));
            }
            r
        },
    );
    run(7, "component count distributions within 0.05 pp", &|| {
        let mut r = Report::default();
        for (geometry, level, permille) in verify::DISTRIBUTION_REFERENCE {
            let h = if geometry.dim() == 2 { &tri8 } else { &tet5 };
            assert_eq!((h.geometry, h.level), (geometry, level));
            r.extend(verify::distribution_checks(h, &permille));
        }
        r
    });
    run(8, "simplicial curve component bounds", &|| {
        let mut r = collect(
            (1..=6)
                .map(|l| verify::tm_bound(2, l, false))
                .chain((1..=3).map(|l| verify::tm_bound(3, l, false))),
        );
        r.push(max_check(
            "triangle L=4 maximum",
            Geometry::Simplex { dim: 2 },
            4,
            6,
        ));
        r.push(max_check(
            "tet L=2 maximum",
            Geometry::Simplex { dim: 3 },
            2,
            4,
        ));
        let view = MeshView::simplex(3, 2).expect("mesh");
        let seg = Segment { start: 22, end: 25 };
        let n = mesh::count_components(&view, &seg).expect("count").count;
        r.push(Check::new("tet L=2 [22, 25]", "4", n.to_string(), n == 4));
        r
    });
    run(
        9,
        "triangle curve order lemmas and reversal symmetry",
        &|| collect((0..=6).map(verify::tm2d_lemmas)),
    );
    run(10, "component counts invariant under refinement", &|| {
        collect([
            verify::refinement(Geometry::Cube { dim: 2 }, 2),
            verify::refinement(Geometry::Simplex { dim: 2 }, 2),
        ])
    });
    run(11, "structural consistency", &|| {
        collect([verify::structural(STRUCTURAL_SAMPLES, SEED)])
    });

    let failed: Vec<u32> = results
        .iter()
        .filter(|r| !r.2.passed())
        .map(|r| r.0)
        .collect();
    println!(
        "acceptance: {} of {} criteria pass{}",
        results.len() - failed.len(),
        results.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failing: {failed:?}")
        }
    );
    let strict = std::env::var("SEGCONN_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
