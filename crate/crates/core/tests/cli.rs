use std::process::Command;

use tas_secrecy::cli::{
    self, cmd_verify_with, parse_config, ASC_HEADER, CROSSOVER_HEADER, EXIT_FAILURE,
    EXIT_NO_CROSSOVER, EXIT_OK, EXIT_USAGE, SWEEP_HEADER,
};
use tas_secrecy::secrecy::binomial;
use tas_secrecy::verify::Verifier;
use tas_secrecy::{delta_e, Scenario};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &str) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("tas-secrecy").chain(args.split_whitespace());
    let code = cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fields(line: &str) -> Vec<&str> {
    line.split(',').collect()
}

#[test]
fn asc_prints_header_and_one_row() {
    let o = run("asc --scheme etas --gamma-b-db 10 --gamma-e-db 10 -M 8 --method closed");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines, [ASC_HEADER, lines[1]]);
    let f = fields(lines[1]);
    assert_eq!(f.len(), 8);
    assert_eq!(&f[..2], ["etas", "closed"]);
    assert_eq!(f[4], "8");
    let asc: f64 = f[5].parse().unwrap();
    assert!((asc - 1.983_263_232_721_56).abs() < 1e-12);
    assert_eq!((f[6], f[7]), ("", ""));
}

#[test]
fn single_antenna_btas_and_etas_rows_agree() {
    let b = run("asc --scheme btas -M 1 --gamma-b-db 17 --gamma-e-db 4");
    let e = run("asc --scheme etas -M 1 --gamma-b-db 17 --gamma-e-db 4");
    let asc = |o: &Output| fields(o.stdout.lines().nth(1).unwrap())[5].to_string();
    assert_eq!(asc(&b), asc(&e));
}

#[test]
fn otas_mc_row_carries_sampling_fields() {
    let o = run("asc --scheme otas --method mc --trials 4");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let f = fields(o.stdout.lines().nth(1).unwrap());
    assert_eq!(&f[..2], ["otas", "mc"]);
    assert!(f[6].parse::<f64>().unwrap() >= 0.0);
    assert_eq!(f[7], "4");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "asc --scheme otas --method closed",
        "asc --scheme btas -M 0",
        "asc --scheme btas --gamma-b-db ten",
        "asc --scheme btas --bogus",
        "sweep",
        "sweep --scheme btas --points 1",
        "crossover -M 1",
        "nonsense",
    ] {
        let o = run(args);
        assert_eq!(o.code, EXIT_USAGE, "{args}");
        assert!(!o.stderr.is_empty());
    }
    assert!(run("asc --scheme otas --method closed")
        .stderr
        .contains("closed-form unavailable for otas"));
    assert!(run("asc --scheme btas -M 0").stderr.contains("'0'"));
}

#[test]
fn sweep_csv_schema() {
    let o = run("sweep --scheme btas --scheme etas -M 2 -M 8 --from-db 0 --to-db 20 --points 3");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines.len(), 1 + 3 * 2 * 2);
    assert_eq!(lines.iter().filter(|l| **l == SWEEP_HEADER).count(), 1);
    for line in &lines[1..] {
        let f = fields(line);
        assert_eq!(f.len(), 9);
        // 17 significant digits round-trip exactly.
        let x: f64 = f[6].parse().unwrap();
        assert_eq!(format!("{x:.16e}"), f[6]);
        assert_eq!((f[7], f[8]), ("", ""));
    }
}

#[test]
fn sweep_bytes_do_not_depend_on_thread_count() {
    let base =
        "sweep --scheme otas --scheme btas --scheme random -M 2 -M 8 --method mc --trials 150000 \
                --from-db -10 --to-db 30 --points 5";
    let one = run(&format!("{base} --threads 1"));
    let eight = run(&format!("{base} --threads 8"));
    assert_eq!(one.code, EXIT_OK, "{}", one.stderr);
    assert!(one.stdout.lines().any(|l| l.contains(",mc,")));
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(one.stdout, run(&format!("{base} --threads 1")).stdout);
}

#[test]
fn normalized_sweep_is_a_ratio() {
    let o = run(
        "sweep --scheme otas --scheme btas --scheme etas -M 8 --swept ratio --gamma-b-db 20 \
         --from-db -20 --to-db 20 --points 5 --normalize-otas",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    for line in o.stdout.lines().skip(1) {
        let asc: f64 = fields(line)[6].parse().unwrap();
        assert!((0.0..=1.02).contains(&asc), "{line}");
    }
}

#[test]
fn crossover_row() {
    let o = run("crossover --gamma-b-db 10 -M 8");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], CROSSOVER_HEADER);
    let f = fields(lines[1]);
    assert_eq!(f[1], "8");
    let root: f64 = f[2].parse().unwrap();
    assert!((root + 1.230_661_999_388_758).abs() < 1e-8);
    assert!(f[3].parse::<f64>().unwrap().abs() <= 1e-9);
}

#[test]
fn crossover_outside_bracket_exits_3() {
    let o = run("crossover --gamma-b-db 10 -M 8 --bracket-db 25 30");
    assert_eq!(o.code, EXIT_NO_CROSSOVER);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_passes() {
    let o = run("verify --trials 100000");
    assert_eq!(o.code, EXIT_OK, "{}\n{}", o.stdout, o.stderr);
    assert_eq!(
        o.stdout.lines().filter(|l| l.starts_with("PASS")).count(),
        5
    );
}

#[test]
fn verify_catches_a_corrupted_btas_formula() {
    // Sign of the alternating term flipped.
    let corrupted = |s: &Scenario| -> tas_secrecy::Result<f64> {
        let m = s.num_antennas();
        let mut sum = 0.0;
        for k in 1..=m {
            let a = k as f64 / s.gamma_b0();
            sum += binomial(m, k) * delta_e(a, 1.0 / s.gamma_e0() + a)?;
        }
        Ok(sum / std::f64::consts::LN_2)
    };
    let config = parse_config(["tas-secrecy", "verify", "--trials", "20000"]).unwrap();
    let verifier = Verifier::new(config.trials, config.seed).with_btas_closed(&corrupted);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cmd_verify_with(&config, &verifier, &mut out, &mut err);
    assert_eq!(code, EXIT_FAILURE);
    let out = String::from_utf8(out).unwrap();
    assert!(out
        .lines()
        .any(|l| l.starts_with("FAIL") && l.contains("quadrature")));
    assert!(!err.is_empty());
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# operating point\nscheme = etas\ngamma_b_db = 20\ngamma_e_db = 0   # weak eavesdropper\nM = 4\nseed = 7\n",
    )
    .unwrap();
    let p = path.display();
    let c = parse_config(format!("tas-secrecy asc --config {p} --gamma-e-db 5").split_whitespace())
        .unwrap();
    assert_eq!((c.gamma_b_db, c.gamma_e_db), (20.0, 5.0));
    assert_eq!(
        (c.antennas.clone(), c.seed, c.trials),
        (vec![4], 7, 1_000_000)
    );

    std::fs::write(&path, "gamma_b_db = 20\nfrobnicate = 1\n").unwrap();
    let o = run(&format!("asc --scheme btas --config {p}"));
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("frobnicate"));

    let o = run(&format!(
        "asc --scheme btas --config {}",
        dir.path().join("missing").display()
    ));
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = run(&format!(
        "sweep --scheme etas --points 4 --out {}",
        path.display()
    ));
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(SWEEP_HEADER));
    assert_eq!(text.lines().count(), 5);

    let o = run(&format!(
        "sweep --scheme etas --out {}",
        dir.path().join("no/such/dir.csv").display()
    ));
    assert_eq!(o.code, EXIT_FAILURE);
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_tas-secrecy");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["asc", "--scheme", "btas"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with(ASC_HEADER));
    assert_eq!(
        status(&["asc", "--scheme", "otas"]).status.code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(
        status(&["crossover", "--bracket-db", "25", "30", "-M", "8"])
            .status
            .code(),
        Some(EXIT_NO_CROSSOVER)
    );
    assert_eq!(status(&["--help"]).status.code(), Some(EXIT_OK));
}
