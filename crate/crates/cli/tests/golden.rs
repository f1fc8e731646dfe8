use std::path::Path;
use std::process::{Command, Output};

fn segconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segconn"))
        .args(args)
        .env_remove("SEGCONN_THREADS")
        .output()
        .expect("run segconn")
}

fn stdout(args: &[&str]) -> String {
    let out = segconn(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn decode_outputs() {
    assert_eq!(
        stdout(&[
            "decode",
            "--geometry",
            "cube:2",
            "--level",
            "2",
            "--rank",
            "14"
        ]),
        golden("decode_cube.txt")
    );
    assert_eq!(
        stdout(&[
            "decode",
            "--geometry",
            "triangle",
            "--level",
            "1",
            "--rank",
            "2"
        ]),
        golden("decode_triangle.txt")
    );
}

#[test]
fn encode_outputs() {
    assert_eq!(
        stdout(&[
            "encode",
            "--geometry",
            "cube:3",
            "--level",
            "1",
            "--coords",
            "0,0,0"
        ]),
        "0\n"
    );
    assert_eq!(
        stdout(&[
            "encode",
            "--geometry",
            "quad",
            "--level",
            "2",
            "--coords",
            "2,3"
        ]),
        "14\n"
    );
    assert_eq!(
        stdout(&[
            "encode",
            "--geometry",
            "triangle",
            "--level",
            "1",
            "--coords",
            "1,0",
            "--type",
            "1"
        ]),
        "2\n"
    );
}

#[test]
fn component_outputs() {
    assert_eq!(
        stdout(&[
            "components",
            "--geometry",
            "tet",
            "--level",
            "2",
            "--start",
            "22",
            "--end",
            "25"
        ]),
        golden("components_tet.txt")
    );
    let full = stdout(&[
        "components",
        "--geometry",
        "cube:2",
        "--level",
        "3",
        "--start",
        "0",
        "--end",
        "63",
    ]);
    assert_eq!(full.lines().next(), Some("1"));
    let pair = stdout(&[
        "components",
        "--geometry",
        "triangle",
        "--level",
        "1",
        "--start",
        "0",
        "--end",
        "1",
    ]);
    assert_eq!(pair.lines().next(), Some("2"));
}

#[test]
fn scan_tables() {
    assert_eq!(
        stdout(&["scan", "--geometry", "quad", "--level", "3"]),
        golden("scan_quad_l3.csv")
    );
    assert_eq!(
        stdout(&[
            "scan",
            "--geometry",
            "triangle",
            "--level",
            "3",
            "--format",
            "json"
        ]),
        golden("scan_triangle_l3.json")
    );
}

#[test]
fn scan_does_not_depend_on_threads() {
    let args = ["scan", "--geometry", "tet", "--level", "3"];
    let one = stdout(&[&args[..], &["--threads", "1"]].concat());
    let three = stdout(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one, three);
}

#[test]
fn cube_scans_have_at_most_two_components() {
    let csv = stdout(&["scan", "--geometry", "cube", "--level", "2"]);
    let ks: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ks, ["1", "2"]);
}

#[test]
fn phi_tables() {
    assert_eq!(
        stdout(&["phi", "--dim", "2", "--level", "1", "--length", "1..4"]),
        golden("phi_d2_l1.csv")
    );
    assert_eq!(
        stdout(&["phi", "--dim", "3", "--level", "2", "--sample", "5", "--seed", "7"]),
        golden("phi_d3_sample.csv")
    );
    let single = stdout(&["phi", "--dim", "2", "--level", "1", "--length", "2"]);
    assert_eq!(single.lines().nth(1), Some("2,1,0,2,0.666667"));
}

#[test]
fn sampled_phi_respects_the_bound() {
    let csv = stdout(&[
        "phi", "--dim", "2", "--level", "30", "--sample", "1000", "--seed", "42",
    ]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 1000);
    for r in rows {
        let f: Vec<u128> = r.split(',').take(4).map(|x| x.parse().unwrap()).collect();
        let connected = f[2] + f[3];
        let total = f[1] + connected;
        assert!(3 * connected >= total, "{r}");
    }
}

#[test]
fn verify_exit_codes() {
    let ok = segconn(&["verify", "cube-bound", "--dim", "2", "--level", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("max=2"));
    assert_eq!(
        segconn(&["verify", "tm2d-bound", "--level", "4"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        segconn(&["verify", "enumerate-oracle", "--dim", "2", "--level", "4"])
            .status
            .code(),
        Some(0)
    );
    // Three components at level 2 exceed the 2(L-1) bound.
    assert_eq!(
        segconn(&["verify", "tm2d-bound", "--level", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        segconn(&[
            "decode",
            "--geometry",
            "blob",
            "--level",
            "1",
            "--rank",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        segconn(&[
            "decode",
            "--geometry",
            "quad",
            "--level",
            "1",
            "--rank",
            "4"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        segconn(&[
            "components",
            "--geometry",
            "quad",
            "--level",
            "1",
            "--start",
            "3",
            "--end",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(segconn(&["verify", "nope"]).status.code(), Some(2));
    let guarded = segconn(&["scan", "--geometry", "quad", "--level", "8"]);
    assert_eq!(guarded.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&guarded.stderr).contains("--force"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("segconn-golden-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    stdout(&["scan", "--geometry", "quad", "--level", "3", "--output", p]);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        golden("scan_quad_l3.csv")
    );
    std::fs::remove_file(&path).unwrap();
}
