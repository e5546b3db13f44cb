//! End-to-end checks of the command-line surface and its exit-code
//! contract: 0 ok, 1 verification failure, 2 inadmissible, 3 unsupported,
//! 4 timeout, 5 other errors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heffter"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR"));
    cmd.env("HEFFTER_FIXTURES", fixtures_dir());
    cmd
}

fn fixtures_dir() -> PathBuf {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")).to_path_buf()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn generate_set_matches_published_example() {
    let out = run(&["generate", "--m", "10", "--n", "7", "--c", "2", "--format", "csv"]);
    assert_code(&out, 0);
    let expected = std::fs::read_to_string(fixtures_dir().join("ihs-10x7-2.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("route:"), "{stderr}");
}

#[test]
fn generate_is_byte_reproducible() {
    let a = run(&["generate", "--m", "6", "--n", "9", "--c", "2", "--seed", "5"]);
    let b = run(&["generate", "--m", "6", "--n", "9", "--c", "2", "--seed", "5"]);
    assert_code(&a, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn inadmissible_exits_2() {
    let out = run(&["generate", "--m", "3", "--n", "3", "--s", "3", "--k", "3"]);
    assert_code(&out, 2);
}

#[test]
fn unsupported_exits_3_and_names_the_case() {
    let out = run(&["generate", "--m", "7", "--n", "9", "--c", "4"]);
    assert_code(&out, 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("literature"), "{stderr}");
}

#[test]
fn verify_fixture_and_corruption() {
    let fixture = fixtures_dir().join("figure1.csv");
    let out = run(&["verify", fixture.to_str().unwrap()]);
    assert_code(&out, 0);

    let text = std::fs::read_to_string(&fixture).unwrap();
    let dir = std::env::temp_dir().join("heffter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let corrupt = dir.join("figure1-corrupt.csv");
    std::fs::write(&corrupt, text.replacen("58,-40", "59,-40", 1)).unwrap();
    let out = run(&["verify", corrupt.to_str().unwrap()]);
    assert_code(&out, 1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("row-sum"), "{stdout}");
}

#[test]
fn generate_array_verify_round_trip() {
    let dir = std::env::temp_dir().join("heffter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h-8x10.json");
    let out = run(&[
        "generate",
        "--m",
        "8",
        "--n",
        "10",
        "--s",
        "5",
        "--k",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_code(&out, 0);
}

#[test]
fn compose_set_document() {
    let dir = std::env::temp_dir().join("heffter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let set = dir.join("set-4x5x2.json");
    assert_code(
        &run(&["generate", "--m", "4", "--n", "5", "--c", "2", "--out", set.to_str().unwrap()]),
        0,
    );
    let composed = dir.join("h-8x10-composed.json");
    assert_code(
        &run(&["compose", set.to_str().unwrap(), "--out", composed.to_str().unwrap()]),
        0,
    );
    let out = run(&["verify", composed.to_str().unwrap()]);
    assert_code(&out, 0);
}

#[test]
fn search_base_finds_and_verifies() {
    let dir = std::env::temp_dir().join("heffter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("base8.json");
    let out = run(&[
        "search",
        "base",
        "--order",
        "8",
        "--budget-ms",
        "600000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--m",
        "8",
        "--n",
        "8",
        "--s",
        "5",
        "--k",
        "5",
    ]);
    assert_code(&out, 0);
}

#[test]
fn catalog_install_then_list() {
    let dir = std::env::temp_dir().join(format!("heffter-catalog-{}", std::process::id()));
    let out = bin()
        .args(["catalog", "install", "--fixtures-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_code(&out, 0);
    let out = bin()
        .args(["catalog", "list", "--fixtures-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_code(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    for key in ["figure1", "ihs-10x7-2", "h5-order8", "h5-order12"] {
        assert!(stdout.contains(key), "{stdout}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_5() {
    let out = run(&["generate", "--m", "10", "--n", "7"]);
    assert_code(&out, 5);
    let out = run(&["verify", "/nonexistent/path.json"]);
    assert_code(&out, 5);
}
