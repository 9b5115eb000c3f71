#![allow(dead_code)]

use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_defectwalk"));
    c.env_remove("DEFECTWALK_TOL");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Data rows of a CSV body: comment lines and the header are dropped.
pub fn data_rows(body: &str) -> Vec<Vec<String>> {
    body.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

pub fn header(body: &str) -> &str {
    body.lines().find(|l| !l.starts_with('#')).unwrap_or("")
}

pub fn comment_value(body: &str, key: &str) -> Option<f64> {
    let prefix = format!("# {key}=");
    body.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .and_then(|v| v.trim().parse().ok())
}

pub fn f(s: &str) -> f64 {
    s.parse().expect("numeric field")
}
