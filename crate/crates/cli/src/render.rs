use std::fmt::Write;

use vosa_core::vertex::CheckReport;

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn checks(report: &CheckReport) -> String {
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.relation.clone(),
                c.depth.to_string(),
                if c.passed() { "pass".into() } else { "FAIL".into() },
                c.detail.clone().unwrap_or_default(),
            ]
        })
        .collect();
    table(&["relation", "depth", "status", "detail"], &rows)
}

pub fn summary(what: &str, report: &CheckReport) -> String {
    let failed = report.failures().count();
    if failed == 0 {
        format!("{what}: all {} checks pass", report.checks.len())
    } else {
        format!("{what}: {failed} of {} checks fail", report.checks.len())
    }
}
