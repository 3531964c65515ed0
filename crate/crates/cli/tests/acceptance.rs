//! One PASS/FAIL line per acceptance criterion. Tolerances live in
//! `hyperon_qi::verify`; criterion 10 also drives the compiled binary.

use std::process::{Command, ExitCode};

use hyperon_qi::verify::{run_criterion, Check, CRITERIA};

fn sweep_stdout(extra: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperon-qi"))
        .arg("sweep")
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn binary_determinism(check: &mut Check) {
    let mut expect = |ok: bool, text: String| {
        check.pass &= ok;
        check
            .lines
            .push(format!("{} {text}", if ok { "ok  " } else { "FAIL" }));
    };
    match (
        sweep_stdout(&[]),
        sweep_stdout(&[]),
        sweep_stdout(&["--serial"]),
    ) {
        (Ok(a), Ok(b), Ok(c)) => {
            expect(
                !a.is_empty() && a == b,
                format!("binary: two runs byte-identical ({} bytes)", a.len()),
            );
            expect(
                a == c,
                "binary: parallel and --serial byte-identical".into(),
            );
        }
        (a, b, c) => {
            let err = [a, b, c]
                .into_iter()
                .filter_map(Result::err)
                .collect::<Vec<_>>()
                .join("; ");
            expect(false, format!("binary sweep failed: {err}"));
        }
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut findings = 0;
    for (id, _) in CRITERIA {
        let mut report = run_criterion(id);
        findings += report.findings.len();
        let check = &mut report.checks[0];
        if id == 10 {
            binary_determinism(check);
        }
        println!(
            "{} C{id} {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.title
        );
        if !check.pass {
            failed += 1;
            for line in check.lines.iter().filter(|l| l.starts_with("FAIL")) {
                println!("        {line}");
            }
        }
    }
    println!(
        "{}/{} criteria passed; {findings} findings (run `hyperon-qi verify` for the full report)",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
