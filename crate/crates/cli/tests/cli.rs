use std::path::Path;
use std::process::{Command, Output};

const EOS: &str = env!("CARGO_BIN_EXE_eos");

fn eos(args: &[&str]) -> Output {
    Command::new(EOS).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn field(line: &str, k: usize) -> f64 {
    line.split(',').nth(k).unwrap().parse().unwrap()
}

#[test]
fn calibrate_na_prints_the_fitted_record() {
    let dir = tempfile::tempdir().unwrap();
    let points = write(dir.path(), "nc13.csv", "rho_kg_m3,pmax_MPa\n100,130.3\n150,214.1\n");
    let o = eos(&["calibrate", "na", "--points", &points, "--tflame", "3275", "--gamma", "1.207"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("material,model,Cv_J_kgK,R_J_kgK,e_s_eff_kJ_kg,b_m3_kg"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("nc13,NA,"));
    assert!((field(row, 3) - 338.9).abs() < 0.1);
    assert!((field(row, 5) - 0.001484).abs() < 1e-6);
}

#[test]
fn calibrate_writes_a_database_that_sweep_reads() {
    let dir = tempfile::tempdir().unwrap();
    let points = write(dir.path(), "p.csv", "rho_kg_m3,pmax_MPa\n100,130.3\n150,214.1\n");
    let db = dir.path().join("mat.db");
    let db = db.to_str().unwrap();
    let o = eos(&[
        "calibrate",
        "vo1",
        "--points",
        &points,
        "--tflame",
        "3275",
        "--gamma",
        "1.207",
        "--name",
        "X",
        "--db",
        db,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = eos(&["sweep", "X", "--model", "vo1", "--rho", "100:150:50", "--db", db]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!((field(rows[0], 2) - 130.3).abs() < 1e-6);
    assert!((field(rows[1], 2) - 214.1).abs() < 1e-6);
    assert_eq!(rows[0].split(',').nth(3), Some("0"));
}

#[test]
fn calibrate_rejects_wrong_point_counts_and_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let three = write(dir.path(), "three.csv", "rho_kg_m3,pmax_MPa\n100,130\n150,214\n200,300\n");
    let o = eos(&["calibrate", "na", "--points", &three, "--tflame", "3275", "--gamma", "1.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exactly two points"));

    let bad = write(dir.path(), "bad.csv", "rho_kg_m3,pmax_MPa\n100,abc\n150,214\n");
    let o = eos(&["calibrate", "na", "--points", &bad, "--tflame", "3275", "--gamma", "1.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[E_PARSE]"), "{}", stderr(&o));

    let same = write(dir.path(), "same.csv", "rho_kg_m3,pmax_MPa\n100,130\n100,140\n");
    let o = eos(&["calibrate", "vo1", "--points", &same, "--tflame", "3275", "--gamma", "1.2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let o = eos(&["calibrate", "na", "--points", "/nonexistent/x.csv", "--tflame", "3275", "--gamma", "1.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn calibrate_cvt_recovers_synthetic_runs() {
    let (cv0, c, q) = (1416.8, 0.0637, -1.5e6);
    let (cv_ar, t0) = (312.2, 298.15);
    let e_s_i = cv0 * 3275.0 + 0.5 * c * 3275.0f64.powi(2) + q;
    let mut csv = String::from("Y,T_flame_K\n");
    for j in 0..35 {
        let y = 0.15 + 0.025 * j as f64;
        let k = (1.0 - y) / y * cv_ar;
        let (qa, qb, qc) = (0.5 * c, cv0 + k, q - e_s_i - k * t0);
        let t = -2.0 * qc / (qb + (qb * qb - 4.0 * qa * qc).sqrt());
        csv.push_str(&format!("{y},{t:.17e}\n"));
    }
    let dir = tempfile::tempdir().unwrap();
    let runs = write(dir.path(), "runs.csv", &csv);
    let es = format!("{}", e_s_i / 1e3);
    let o = eos(&["calibrate-cvt", "--runs", &runs, "--inert", "argon", "--es-i", &es, "--t0", "298.15"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!((field(row, 0) / cv0 - 1.0).abs() < 1e-5, "{row}");
    assert!((field(row, 1) / c - 1.0).abs() < 1e-4, "{row}");
    assert!((field(row, 2) / (q / 1e3) - 1.0).abs() < 1e-5, "{row}");

    let db = dir.path().join("cvt.db");
    let db = db.to_str().unwrap();
    std::fs::write(db, reduced_eos_cli::db::BUILTIN_DB).unwrap();
    let o = eos(&[
        "calibrate-cvt",
        "--runs",
        &runs,
        "--inert",
        "argon",
        "--es-i",
        &es,
        "--t0",
        "298.15",
        "--base",
        "NC-13",
        "--name",
        "NC-13-fit",
        "--db",
        db,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = eos(&["state", "NC-13-fit", "--model", "vo1cvt", "--rho", "100", "--T", "3000", "--db", db]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn calibrate_cvt_flat_temperatures_are_rank_deficient() {
    let dir = tempfile::tempdir().unwrap();
    let runs = write(dir.path(), "flat.csv", "Y,T_flame_K\n0.5,2500\n0.7,2500\n0.9,2500\n");
    let o = eos(&["calibrate-cvt", "--runs", &runs, "--inert", "xenon", "--es-i", "4000", "--t0", "298.15"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn sweep_reports_divergence_rows_and_domain_exit() {
    let o = eos(&["sweep", "NC-13", "--model", "na", "--rho", "100:700:200"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("700") && last.contains(",error,"), "{last}");
    assert!(stderr(&o).starts_with("error[E_DOMAIN]"));
}

#[test]
fn sweep_joins_reference_columns() {
    let dir = tempfile::tempdir().unwrap();
    let reference = write(dir.path(), "ref.csv", "rho_kg_m3,T_K,P_MPa\n100,3270,130.0\n300,3290,560.5\n");
    let o = eos(&["sweep", "RDX", "--model", "vo1", "--rho", "100:300:100", "--reference", &reference]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].ends_with("ref_T_K,ref_P_MPa"), "{}", lines[0]);
    assert!(lines[1].ends_with(",3270,130.0"), "{}", lines[1]);
    assert!(lines[2].ends_with(",,"), "{}", lines[2]);
}

#[test]
fn sweep_vo1cvt_and_unknown_material() {
    let o = eos(&["sweep", "NC-13", "--model", "vo1cvt", "--rho", "100:200:50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let t = field(text.lines().nth(1).unwrap(), 1);
    assert!((t - 3275.0).abs() < 2.0, "{t}");

    let o = eos(&["sweep", "PETN", "--model", "na", "--rho", "100:200:50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[E_NOT_FOUND]"));
}

#[test]
fn bad_ranges_are_usage_errors() {
    for rho in ["100:50:10", "1:2", "a:b:c", "10:20:0"] {
        let o = eos(&["sweep", "NC-13", "--model", "na", "--rho", rho]);
        assert_eq!(o.status.code(), Some(2), "{rho}");
        assert!(stderr(&o).starts_with("error[E_USAGE]"), "{rho}: {}", stderr(&o));
    }
    let o = eos(&["sweep"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn mix_sweep_requires_the_oxygen_balance_flag() {
    let o = eos(&["mix-sweep", "NC-13:0.5,RDX:0.5", "--model", "mvo1", "--rho", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[E_VALIDATION]"));
}

#[test]
fn mix_sweep_identical_components_match_the_pure_gas() {
    let pure = eos(&["sweep", "NC-13", "--model", "vo1", "--rho", "100:200:100"]);
    let mix =
        eos(&["mix-sweep", "NC-13:0.3,NC-13:0.7", "--model", "mvo1", "--rho", "100,200", "--same-oxygen-balance"]);
    assert_eq!(mix.status.code(), Some(0), "{}", stderr(&mix));
    let pure = stdout(&pure);
    let mix = stdout(&mix);
    for (p, m) in pure.lines().skip(1).zip(mix.lines().skip(1)) {
        assert!((field(p, 2) / field(m, 4) - 1.0).abs() < 1e-9, "{p} / {m}");
        assert!((field(p, 4) / field(m, 5) - 1.0).abs() < 1e-9, "{p} / {m}");
    }
}

#[test]
fn mix_sweep_fraction_sweep_and_sign_warning() {
    let o = eos(&[
        "mix-sweep",
        "NC-13,NG",
        "--model",
        "mna",
        "--rho",
        "100",
        "--fraction-sweep",
        "0:1:0.25",
        "--same-oxygen-balance",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    let text = stdout(&o);
    assert!(text.starts_with("Y_NC-13,Y_NG,rho_kg_m3,T_flame_K,P_MPa,c_m_s\n"));
    assert_eq!(text.lines().count(), 6);

    let o = eos(&[
        "mix-sweep",
        "NC-13,RDX",
        "--model",
        "mna",
        "--rho",
        "100",
        "--fraction-sweep",
        "0:1:0.5",
        "--same-oxygen-balance",
    ]);
    assert!(stderr(&o).is_empty());

    let o = eos(&["mix-sweep", "NC-13:0.5,RDX:0.4", "--model", "mna", "--rho", "100", "--same-oxygen-balance"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn audit_passes_builtin_records_and_fails_concave_ones() {
    for model in ["na", "vo1", "vo1cvt"] {
        let o = eos(&["audit", "NC-13", "--model", model, "--rho", "10:600:50", "--T", "1500:4500:500"]);
        assert_eq!(o.status.code(), Some(0), "{model}: {}", stderr(&o));
        assert!(stdout(&o).ends_with("status,pass\n"));
    }
    let dir = tempfile::tempdir().unwrap();
    let db = write(
        dir.path(),
        "neg.db",
        "[material \"NEG\" model VO1]\nR = 300\na = -0.004\nCv = 1500\ne_s_eff_kJ = 4500\nT_flame = 3000\nrho_range = 100 150\n",
    );
    let o = eos(&["audit", "NEG", "--model", "vo1", "--rho", "10:600:10", "--T", "2000:3000:500", "--db", &db]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).ends_with("status,fail\n"));
    assert!(stderr(&o).starts_with("error[E_AUDIT]"));

    let o = eos(&["sweep", "NEG", "--model", "vo1", "--rho", "100:200:50", "--db", &db]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn state_input_pairs_agree() {
    let a = eos(&["state", "RDX", "--model", "vo1", "--rho", "150", "--T", "3500"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let a = stdout(&a);
    let row = a.lines().nth(1).unwrap().to_string();
    let p = row.split(',').next().unwrap().to_string();
    let e = row.split(',').nth(4).unwrap().to_string();
    let b = stdout(&eos(&["state", "RDX", "--model", "vo1", "--P", &p, "--T", "3500"]));
    let c = stdout(&eos(&["state", "RDX", "--model", "vo1", "--rho", "150", "--e", &e]));
    for other in [b, c] {
        let other = other.lines().nth(1).unwrap().to_string();
        for k in [0, 1, 2, 5, 6, 7] {
            assert!((field(&row, k) / field(&other, k) - 1.0).abs() < 1e-8, "column {k}: {row} / {other}");
        }
    }
}

#[test]
fn state_rejects_ambiguous_inputs_and_reports_domain_errors() {
    let o = eos(&["state", "NC-13", "--model", "na", "--rho", "100", "--T", "3000", "--P", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = eos(&["state", "NC-13", "--model", "na", "--rho", "800", "--T", "3000"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error[E_DOMAIN]"));
    let o = eos(&["state", "NC-13", "--model", "vo1cvt", "--rho", "100", "--T", "3000"]);
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(6), Some(""));
}

#[test]
fn help_exits_zero() {
    let o = eos(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("calibrate-cvt"));
}
