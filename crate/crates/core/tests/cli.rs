use std::process::Command;

fn acreal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_acreal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("acreal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_reciprocal() {
    let (code, out, _) = acreal(&["classify", "reciprocal"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let verdicts = v["placements"][0]["verdicts"].as_array().unwrap();
    let status = |space: &str| {
        verdicts.iter().find(|x| x["space"] == space).unwrap()["status"].clone()
    };
    assert_eq!(status("L1H"), "in");
    assert_eq!(status("L1loc"), "out");
    let threshold = verdicts.iter().find(|x| x["space"] == "L1H").unwrap();
    assert_eq!(threshold["certificate"]["level"], "1");
}

#[test]
fn reports_are_deterministic() {
    let a = acreal(&["classify", "f2"]).1;
    let b = acreal(&["classify", "f2"]).1;
    assert_eq!(a, b);
}

#[test]
fn classify_reads_files() {
    let path = tmp("f.txt");
    std::fs::write(&path, "scale(2,\n  sqrt_periodic)\n").unwrap();
    let (code, out, _) = acreal(&["classify", &format!("@{}", path.display())]);
    assert_eq!(code, 0);
    assert!(out.contains("scale(2, sqrt_periodic)"));
}

#[test]
fn venn_of_the_three_examples() {
    let path = tmp("venn.json");
    let (code, out, _) = acreal(&["venn", "--funcs", "f1,f2,f3", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].ends_with("L1=out Linf=out L1loc=in L1H=out L1G=out ACloc=in AC=in"));
    assert!(lines[1].ends_with("L1=out Linf=out L1loc=in L1H=in L1G=out ACloc=out AC=out"));
    assert!(lines[2].ends_with("L1=out Linf=out L1loc=out L1H=in L1G=out ACloc=out AC=out"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["placements"].as_array().unwrap().len(), 3);
}

#[test]
fn witness_thm2_partial_sum() {
    let (code, out, _) = acreal(&["witness", "thm2", "--f", "affine(1,0)", "--depth", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness"]["verified"], true);
    assert_eq!(v["witness"]["ledger"]["partial_sums"][4], "137/60");
}

#[test]
fn witness_kinds() {
    for kind in ["ac-failure", "set-A", "thm1"] {
        let (code, _, err) = acreal(&["witness", kind, "--depth", "10"]);
        assert_eq!(code, 0, "{kind}: {err}");
    }
    let (code, _, err) = acreal(&["witness", "thm1", "--f", "affine(2, 0)"]);
    assert_eq!(code, 1);
    assert!(err.contains("budget infeasible"));
}

#[test]
fn exit_statuses() {
    let (code, _, err) = acreal(&["classify", "affine(1,"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 10"));
    let (code, _, _) = acreal(&["classify", "--strict", "sum(reciprocal, sqrt_periodic)"]);
    assert_eq!(code, 3);
    let (code, _, _) = acreal(&["classify", "sum(reciprocal, sqrt_periodic)"]);
    assert_eq!(code, 0);
}

#[test]
fn plot_writes_csv_and_svg() {
    let csv = tmp("p.csv");
    let svg = tmp("p.svg");
    let (code, _, err) = acreal(&[
        "plot", "--f", "reciprocal", "--range", "-1:1", "--samples", "5",
        "--marks", "{[1/4,1/2]}", "--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(
        text,
        "band,x,x_end,y\ncurve,-1,,-1\ncurve,-0.5,,-2\ncurve,0.5,,2\ncurve,1,,1\nmark,0.25,0.5,0\n"
    );
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    let (code, _, _) = acreal(&["plot", "--f", "f1", "--range", "1:0", "--out", "/dev/null"]);
    assert_eq!(code, 1);
}
