use std::path::PathBuf;
use std::process::{Command, Output};

fn bic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bic")).args(args).output().expect("run bic")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gauss_sum_fig3() {
    let o = bic(&["gauss", "sum", "--P1", "6", "--P2", "3", "--a", "4", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("sum_rate=2.403677\n"), "{s}");
    assert!(s.contains("branch=b>=1\n"), "{s}");
}

#[test]
fn slice_csv_header_and_determinism() {
    let args = ["gauss", "slice", "--P1", "6", "--P2", "3", "--a", "2", "--b", "3", "--beta", "0.5", "--grid", "21"];
    let a = bic(&args);
    let b = bic(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "# units: bits; precision: 6 decimals");
    assert_eq!(lines[2], "alpha,R1,R2_inner,R2_outer");
    assert_eq!(lines.len(), 3 + 21);
    for l in &lines[3..] {
        for field in l.split(',') {
            assert_eq!(field.split('.').nth(1).map(str::len), Some(6), "{l}");
        }
    }
}

#[test]
fn figure3_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = bic(&["gauss", "figure", "3", "--grid", "11", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for beta in ["0.1", "0.4", "0.9"] {
        let text = std::fs::read_to_string(dir.path().join(format!("fig3_beta{beta}.csv"))).unwrap();
        assert!(text.contains("alpha,R1,R2_inner,R2_outer"));
    }
}

#[test]
fn figure4_sweep_header() {
    let o = bic(&["gauss", "figure", "4", "--grid", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a,Rs1,Rs2,Rs,Ro\n"));
}

#[test]
fn strong_check_on_useless_y3() {
    let o = bic(&["dm", "check", "--cond", "strong", "--channel", &data("channel_y3_useless.json"), "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status=not-falsified"));
}

#[test]
fn derive_on_sample_law() {
    let o = bic(&["derive", "--channel", &data("channel_binary.json"), "--input", &data("input_factored.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status=match"));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(bic(&["gauss", "sum", "--P1", "-1", "--P2", "3", "--a", "4", "--b", "1"]).status.code(), Some(2));
    assert_eq!(bic(&["gauss", "bogus"]).status.code(), Some(2));
    assert_eq!(bic(&["dm", "region", "--region", "THM1", "--channel", "/nonexistent", "--input", "x"]).status.code(), Some(2));
    // a simple law where a factored one is needed
    let o = bic(&["dm", "region", "--region", "THM1", "--channel", &data("channel_binary.json"), "--input", &data("input_simple.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = bic(&["gauss", "capacity", "--P1", "6", "--P2", "3", "--a", "4", "--b", "1", "--kind", "A_VSTRONG", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b >= 1 + a*P1"));
}

#[test]
fn falsified_condition_exits_3() {
    // Y1 is pure noise while Y2 reads X1 cleanly.
    let dir = tempfile::tempdir().unwrap();
    let ch = r#"{"x1":2,"x2":2,"y1":2,"y2":2,"y3":2,
        "p1":[[0.5,0.5],[0.5,0.5]],
        "p2":[[[1.0,1.0],[0.0,0.0]],[[0.0,0.0],[1.0,1.0]]],
        "p3":[[0.8,0.3],[0.2,0.7]]}"#;
    let path = dir.path().join("ch.json");
    std::fs::write(&path, ch).unwrap();
    let o = bic(&["dm", "check", "--cond", "cognizant", "--channel", path.to_str().unwrap(), "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("status=violated"));
    assert!(s.contains("--- witness"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gap.txt");
    let o = bic(&["gauss", "gap", "--P1", "6", "--P2", "3", "--a", "4", "--b", "1", "--grid", "41", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("region_certified=true"));
    assert!(o.stdout.is_empty());
}
