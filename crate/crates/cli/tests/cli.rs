use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use phasewave::steamtable::BUNDLED_TABLE_CSV;
use serde_json::Value;

fn phasewave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasewave"))
        .args(args)
        .env_remove("PHASEWAVE_TABLE")
        .output()
        .expect("binary runs")
}

fn phasewave_with_table(table: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasewave"))
        .args(args)
        .env("PHASEWAVE_TABLE", table)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// The bundled table with one column value rewritten at `t`.
fn edited_table(
    dir: &Path,
    t: &str,
    edit: impl Fn(&[&str], &mut Vec<String>),
) -> std::path::PathBuf {
    let mut lines = BUNDLED_TABLE_CSV.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mut out = vec![header.join(",")];
    for line in lines {
        let mut fields: Vec<String> = line.split(',').map(String::from).collect();
        if fields[0] == t {
            edit(&header, &mut fields);
        }
        out.push(fields.join(","));
    }
    let path = dir.join("table.csv");
    fs::write(&path, out.join("\n") + "\n").unwrap();
    path
}

#[test]
fn satcurve_full_window() {
    let o = phasewave(&["satcurve"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "T_K,p_sat_Pa,dTsat_dp_K_per_Pa,rho_V,rho_L,s_V,s_L"
    );
    let p: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(p.len(), 200);
    assert!(p.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn satcurve_two_points_and_json() {
    let o = phasewave(&["satcurve", "--n", "2"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = phasewave(&["satcurve", "--n", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[1]["near_critical"].as_bool().unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&phasewave(&["satcurve", "--params", "water"])), 2);
    assert_eq!(code(&phasewave(&["satcurve", "--tmin", "200"])), 2);
    assert_eq!(
        code(&phasewave(&[
            "riemann", "--left", "1,0", "--right", "1,0,1"
        ])),
        2
    );
    assert_eq!(code(&phasewave(&["frobnicate"])), 2);
}

#[test]
fn params_file_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let pair = phasewave::saturation::PhasePair::table1();
    fs::write(&path, serde_json::to_string(&pair).unwrap()).unwrap();
    let from_file = phasewave(&["satcurve", "--n", "5", "--params", path.to_str().unwrap()]);
    let preset = phasewave(&["satcurve", "--n", "5"]);
    assert_eq!(code(&from_file), 0, "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, preset.stdout);
}

#[test]
fn vapor_hugoniot_never_meets_saturation() {
    let o = phasewave(&[
        "wavecurve",
        "--kind",
        "shock",
        "--p-hat",
        "1e5",
        "--t-hat",
        "400",
        "--p-end",
        "2.2e7",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["intersection"]["found"], Value::Bool(false));
    assert!(v["intersection"]["min_signed_distance"].as_f64().unwrap() > 0.0);
    let samples = v["curve"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 200);
    assert_eq!(samples[0]["T"].as_f64().unwrap(), 400.0);
}

#[test]
fn liquid_rarefaction_near_saturation_is_weak_cavitation() {
    let o = phasewave(&[
        "wavecurve",
        "--kind",
        "rarefaction",
        "--p-hat",
        "6e5",
        "--t-hat",
        "400",
        "--p-end",
        "1e4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["cavitation"]["kind"], "weak");
    let mu = v["cavitation"]["mu_max"].as_f64().unwrap();
    assert!(mu > 0.0 && mu < 1.0);
}

#[test]
fn wavecurve_region_violation_exits_2() {
    let o = phasewave(&[
        "wavecurve",
        "--kind",
        "shock",
        "--p-hat",
        "1e5",
        "--t-hat",
        "300",
        "--p-end",
        "1e6",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("region"));
    let o = phasewave(&[
        "wavecurve",
        "--kind",
        "rarefaction",
        "--p-hat",
        "1e5",
        "--t-hat",
        "400",
        "--p-end",
        "1e4",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_table1_mode() {
    let o = phasewave(&["verify", "--mode", "table1", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["all_strict"], Value::Bool(true));
    assert_eq!(v["table1"]["sweep"].as_array().unwrap().len(), 500);
    assert!(v["fitted"].is_null());
}

#[test]
fn verify_fitted_mode_with_bundled_table() {
    let o = phasewave(&["verify", "--mode", "fitted", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["fitted"]["condensation"]["all_strict"], Value::Bool(true));
    assert!(
        v["fitted"]["mass_fraction_bound"]["mu_max"]
            .as_f64()
            .unwrap()
            <= 0.505
    );
}

#[test]
fn verify_csv_has_mode_column() {
    let o = phasewave(&["verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("mode,T_K,p_Pa,slope_wave,slope_sat,margin,excluded\n"));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("table1,")).count(),
        500
    );
    assert_eq!(
        text.lines().filter(|l| l.starts_with("fitted,")).count(),
        375
    );
    // an explicit window applies to both sweeps
    let text = stdout(&phasewave(&[
        "verify", "--tmin", "300", "--tmax", "600", "--n", "10",
    ]));
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn verify_with_broken_enthalpy_row_exits_1() {
    // saturated vapor enthalpy 1 kJ/kg above the liquid at 400 K
    let dir = tempfile::tempdir().unwrap();
    let table = edited_table(dir.path(), "400.0", |header, fields| {
        let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
        let get = |i: usize| fields[i].parse::<f64>().unwrap();
        let p = get(col("p_sat_Pa"));
        let e_v = get(col("e_L")) + p / get(col("rho_L")) - p / get(col("rho_V")) + 1000.0;
        fields[col("e_V")] = format!("{e_v:?}");
    });
    let o = phasewave_with_table(&table, &["verify", "--mode", "fitted"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("not strictly positive"));
}

#[test]
fn verify_with_corrupted_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let table = edited_table(dir.path(), "400.0", |_, fields| fields[1] = "oops".into());
    let o = phasewave_with_table(&table, &["verify", "--mode", "fitted"]);
    assert_ne!(code(&o), 0);
    assert!(stderr(&o).contains("parse error"));
}

#[test]
fn fit_every_row_and_single_anchor() {
    let o = phasewave(&["fit"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("T_K,phase,gamma,pi_Pa,C,q,q_prime\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 375);

    let o = phasewave(&[
        "fit", "--tmin", "373.15", "--tmax", "373.15", "--n", "1", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 1);
    let gamma_v = v[0]["vapor"]["gamma"].as_f64().unwrap();
    assert!(gamma_v > 1.2 && gamma_v < 1.5);
}

#[test]
fn fit_missing_column_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.csv");
    let text: String = BUNDLED_TABLE_CSV
        .lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n")
        .collect();
    fs::write(&path, text).unwrap();
    let o = phasewave(&["fit", "--table", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cp_L"), "{}", stderr(&o));
}

#[test]
fn table_flag_overrides_environment() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "not a table\n").unwrap();
    assert_eq!(
        code(&phasewave_with_table(
            &bad,
            &["fit", "--n", "1", "--tmin", "300", "--tmax", "300"]
        )),
        2
    );
    let good = dir.path().join("good.csv");
    fs::write(&good, BUNDLED_TABLE_CSV).unwrap();
    let o = phasewave_with_table(&bad, &["fit", "--table", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(o.stdout, phasewave(&["fit"]).stdout);
}

#[test]
fn riemann_sod_json() {
    let o = phasewave(&[
        "riemann",
        "--left",
        "1,0,1",
        "--right",
        "0.125,0,0.1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let p = v["solution"]["p_star"].as_f64().unwrap();
    let u = v["solution"]["u_star"].as_f64().unwrap();
    assert!((p - 0.3031301780506468).abs() < 1e-8);
    assert!((u - 0.9274526200489499).abs() < 1e-8);
    assert_eq!(v["solution"]["left_wave"]["kind"], "rarefaction");
    assert_eq!(v["solution"]["right_wave"]["kind"], "shock");
    assert_eq!(v["profile"].as_array().unwrap().len(), 201);
}

#[test]
fn riemann_equal_states() {
    let o = phasewave(&[
        "riemann", "--left", "1,0.5,1", "--right", "1,0.5,1", "--n", "11",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for line in stdout(&o).lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        for (got, want) in [(f[1], 1.0), (f[2], 0.5), (f[3], 1.0)] {
            assert!((got - want).abs() <= 1e-13 * want, "{got} vs {want}");
        }
    }
}

#[test]
fn riemann_vacuum_exits_3() {
    let o = phasewave(&["riemann", "--left", "1,-20,1", "--right", "1,20,1"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("vacuum"));
    assert!(o.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = phasewave(&["satcurve", "--n", "64", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn csv_numbers_round_trip() {
    let o = phasewave(&["satcurve", "--n", "3", "--format", "json"]);
    let v = json(&o);
    let csv = stdout(&phasewave(&["satcurve", "--n", "3"]));
    let from_csv: f64 = csv
        .lines()
        .nth(2)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(from_csv, v[1]["p_sat"].as_f64().unwrap());
}
