use std::path::{Path, PathBuf};

use altproj::cli::{main_with_args, EXIT_CONFIG, EXIT_INAPPLICABLE, EXIT_OK, EXIT_VERIFY};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.toml"))
}

fn run(cmd: &str, configs: &[&Path], out: &Path, extra: &[&str]) -> i32 {
    let mut args: Vec<String> = vec!["altproj".into(), cmd.into()];
    for c in configs {
        args.push("--config".into());
        args.push(c.display().to_string());
    }
    args.push("--out".into());
    args.push(out.display().to_string());
    args.extend(extra.iter().map(|s| s.to_string()));
    main_with_args(args)
}

fn read(path: PathBuf) -> String {
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn write_variant(dir: &Path, base: &str, from: &str, to: &str) -> PathBuf {
    let text = read(scenario(base)).replace(from, to);
    assert!(text.contains(to));
    let path = dir.join(format!("{base}_variant.toml"));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn simulate_writes_a_monotone_trace() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_variant(dir.path(), "basic_3_4", "max_iter = 100000", "max_iter = 2000");
    assert_eq!(run("simulate", &[&cfg], dir.path(), &[]), EXIT_OK);
    let csv = read(dir.path().join("basic_3_4.trace.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,norm_u,u_1,u_2,u_3,active,dist_a_to_B"));
    let norms: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(norms.len() > 10);
    assert!(norms.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn origin_start_gives_one_row() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run("simulate", &[&scenario("origin_start")], dir.path(), &[]), EXIT_OK);
    assert_eq!(read(dir.path().join("origin_start.trace.csv")).lines().count(), 2);
}

#[test]
fn malformed_polynomial_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_variant(dir.path(), "basic_3_4", "x^2 + y^4", "x^2 + * y");
    assert_eq!(run("simulate", &[&cfg], dir.path(), &[]), EXIT_CONFIG);
    let missing = dir.path().join("absent.toml");
    assert_eq!(run("predict", &[&missing], dir.path(), &[]), EXIT_CONFIG);
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run("verify", &[&scenario("basic_3_4")], dir.path(), &[]), EXIT_OK);
    let report = read(dir.path().join("basic_3_4.verify.txt"));
    assert!(report.contains("pass = true"), "{report}");
    assert_eq!(
        run("verify", &[&scenario("negative_control")], dir.path(), &[]),
        EXIT_VERIFY
    );
    // a tight exponent band turns the passing run into a failure
    assert_eq!(
        run("verify", &[&scenario("basic_3_4")], dir.path(), &["--tol-exponent", "1e-6"]),
        EXIT_VERIFY
    );
}

#[test]
fn batch_verify_in_parallel() {
    let dir = tempfile::tempdir().unwrap();
    let cfgs = [scenario("special_x_axis"), scenario("region2_ii"), scenario("b_prime_minus")];
    let refs: Vec<&Path> = cfgs.iter().map(PathBuf::as_path).collect();
    assert_eq!(run("verify", &refs, dir.path(), &["--jobs", "3"]), EXIT_OK);
}

#[test]
fn predict_reports_the_dispatch() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run("predict", &[&scenario("region1")], dir.path(), &[]), EXIT_OK);
    let r = read(dir.path().join("region1.predict.txt"));
    assert!(r.contains("cond2poly = projects_to_curve") && r.contains("lambda = 1/2"), "{r}");

    assert_eq!(run("predict", &[&scenario("region2_ii")], dir.path(), &[]), EXIT_OK);
    let r = read(dir.path().join("region2_ii.predict.txt"));
    assert!(r.contains("cond2poly = leaves_curve") && r.contains("region = surface1"), "{r}");

    assert_eq!(run("predict", &[&scenario("special_diagonal")], dir.path(), &[]), EXIT_OK);
    let r = read(dir.path().join("special_diagonal.predict.txt"));
    assert!(r.contains("kind = upper_bound") && r.contains("lambda = 1/6"), "{r}");
}

#[test]
fn inapplicable_prediction_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_variant(
        dir.path(),
        "region1",
        "span = [[-2.0, 1.0, 0.0]]",
        "span = [[-2.0, 1.0, 0.0], [0.0, 0.0, 1.0]]",
    );
    assert_eq!(run("predict", &[&cfg], dir.path(), &[]), EXIT_INAPPLICABLE);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert_eq!(run("partition", &[&scenario("partition_4_12")], dir.path(), &["--jobs", "2"]), EXIT_OK);
        assert_eq!(run("simulate", &[&scenario("region2_ii")], dir.path(), &[]), EXIT_OK);
    }
    for f in [
        "partition_4_12.boundary1.csv",
        "partition_4_12.boundary2.csv",
        "partition_4_12.labels.csv",
        "region2_ii.trace.csv",
    ] {
        assert_eq!(read(a.path().join(f)), read(b.path().join(f)), "{f}");
    }
}

#[test]
fn classify_single_point_and_oracle_column() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run("classify", &[&scenario("classify_point")], dir.path(), &[]), EXIT_OK);
    let csv = read(dir.path().join("classify_point.labels.csv"));
    assert_eq!(csv.lines().collect::<Vec<_>>()[1..], ["0.0000000000000000e0,5.0000000000000003e-2,surface1"]);

    assert_eq!(run("oracle", &[&scenario("oracle_c1_q1")], dir.path(), &[]), EXIT_OK);
    let csv = read(dir.path().join("oracle_c1_q1.oracle.csv"));
    let last = csv.lines().last().unwrap();
    let scaled: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!((scaled - 1.0).abs() < 1e-3, "{last}");
}

#[test]
fn every_shipped_scenario_parses() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = altproj::cli::Config::load(&path).unwrap();
        let again = altproj::cli::Config::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(again, cfg, "{}", path.display());
        n += 1;
    }
    assert!(n >= 10);
}
