use std::path::Path;
use std::process::ExitCode;

use rigidtrace::checks::{selftest, SELFTEST_LIMIT};

/// Source files of the crate that mention a floating-point type.
fn float_mentions(dir: &Path) -> Vec<String> {
    let mut hits = Vec::new();
    for entry in std::fs::read_dir(dir).expect("source directory") {
        let path = entry.expect("directory entry").path();
        if path.is_dir() {
            hits.extend(float_mentions(&path));
        } else if path.extension().is_some_and(|e| e == "rs") {
            let text = std::fs::read_to_string(&path).expect("readable source");
            for (n, line) in text.lines().enumerate() {
                let floats = line
                    .split(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .any(|tok| tok == "f32" || tok == "f64");
                if floats {
                    hits.push(format!("{}:{}", path.display(), n + 1));
                }
            }
        }
    }
    hits
}

fn main() -> ExitCode {
    let report = selftest();
    let mut all = true;
    for c in report
        .checks
        .iter()
        .filter(|c| c.id.parse::<usize>().is_ok_and(|n| n <= 11))
    {
        all &= c.passed;
        println!(
            "criterion {:>2} {} [{}] {} ms: {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.elapsed.as_millis(),
            c.detail
        );
    }
    for c in report
        .checks
        .iter()
        .filter(|c| c.id.parse::<usize>().is_err())
    {
        all &= c.passed;
        println!(
            "invariant {} {} [{}]: {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("src");
    let floats = float_mentions(&src);
    let fast = report.elapsed < SELFTEST_LIMIT;
    let twelve = fast && floats.is_empty();
    all &= twelve;
    println!(
        "criterion 12 {} [selftest wall-clock and exact arithmetic] {} ms (limit {} s), floating-point mentions: {}",
        if twelve { "PASS" } else { "FAIL" },
        report.elapsed.as_millis(),
        SELFTEST_LIMIT.as_secs(),
        if floats.is_empty() { "none".to_string() } else { floats.join(", ") }
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
