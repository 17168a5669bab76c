use std::io::Write;
use std::process::{Command, Output, Stdio};

fn qcm(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcm"))
        .args(args)
        .env("QC_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn qcm");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_exact_opt() {
    let g = qcm(&["gen", "--n", "4", "--seed", "1"], None);
    assert!(g.status.success());
    let text = stdout(&g);
    assert!(text.contains("qc-graph 1") && text.contains("# config "));
    let o = qcm(&["exact", "opt"], Some(&text));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((0.0..=2.0).contains(&v));
    assert_eq!(stdout(&o).trim().split('.').nth(1).unwrap().len(), 12);
}

#[test]
fn exact_sparse_prints_tree() {
    let graph = "qc-graph 1\nnodes 3\nedge 0 1 0.5\nedge 1 2 0.25\n";
    let o = qcm(&["exact", "sparse", "--d", "0", "--tree"], Some(graph));
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "0.625000000000");
    assert!(out.contains("query ") && out.contains("yes:") && out.contains("no:"));
}

#[test]
fn malformed_instance_reports_the_line() {
    let o = qcm(&["exact", "opt"], Some("qc-graph 1\nnodes 2\nedge 0 1 1.5\n"));
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_strategy_lists_names() {
    let graph = "qc-graph 1\nnodes 2\nedge 0 1 1\n";
    let o = qcm(&["estimate", "--strategy", "nope", "--samples", "10"], Some(graph));
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    for name in ["maxP", "minAvgDeg", "SWMp", "bloodDecomp"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn estimate_and_emu_csv() {
    let graph = "qc-graph 1\nnodes 4\nedge 0 1 0.5\nedge 1 2 0.5\nedge 2 3 0.5\n";
    let o = qcm(&["estimate", "--strategy", "maxP", "--samples", "500", "--seed", "3"], Some(graph));
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,strategy,samples,mean,half_width,confidence,seed,bound_family"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[1], "maxP");
    assert_eq!(row[2], "500");
    assert_eq!(row[7], "hoeffding");
    let o = qcm(&["emu", "--target-halfwidth", "0.2", "--delta", "0.1"], Some(graph));
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("bernstein"));
}

#[test]
fn table_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let full = dir.path().join("full.csv");
    let args = |out: &str| {
        vec![
            "table".to_string(),
            "--count".into(),
            "2".into(),
            "--n".into(),
            "16".into(),
            "--samples".into(),
            "200".into(),
            "--seed".into(),
            "5".into(),
            "--out".into(),
            out.to_string(),
        ]
    };
    let mut first = args(a.to_str().unwrap());
    first.extend(["--full-out".into(), full.to_str().unwrap().to_string()]);
    let first: Vec<&str> = first.iter().map(String::as_str).collect();
    assert!(qcm(&first, None).status.success());
    let second = args(b.to_str().unwrap());
    let second: Vec<&str> = second.iter().map(String::as_str).collect();
    assert!(qcm(&second, None).status.success());
    let csv = std::fs::read_to_string(&a).unwrap();
    assert_eq!(csv, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "instance,maxP,minP,minDeg,minAvgDeg,batchSM,batchWSM,SWMq,SWMp,E[mu]");
    assert!(lines[3].starts_with("mean,"));
    assert_eq!(std::fs::read_to_string(&full).unwrap().lines().count(), 1 + 2 * 9);
}
