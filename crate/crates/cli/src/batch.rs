use std::fs;
use std::io;
use std::path::Path;

use clap::Parser;
use serde_json::json;

use crate::args::{Cli, Global};
use crate::commands::{Outcome, Status};
use crate::run_limited;

/// One parsed batch line: a command, or the reason it could not be parsed.
fn evaluate(line: &str, outer: Global) -> Outcome {
    let Some(words) = shlex::split(line) else {
        return Outcome {
            status: Status::Domain,
            text: "unbalanced quotes".into(),
            json: json!({"error": "parse", "message": "unbalanced quotes"}),
        };
    };
    let argv = std::iter::once("k3ob".to_string()).chain(words);
    match Cli::try_parse_from(argv) {
        Ok(Cli {
            command: Some(cmd),
            global,
            batch: None,
        }) => {
            let g = Global {
                json: true,
                seed: global.seed.or(outer.seed),
                timeout_ms: global.timeout_ms.or(outer.timeout_ms),
            };
            run_limited(&cmd, g)
        }
        Ok(_) => Outcome {
            status: Status::Domain,
            text: "batch lines need exactly one command".into(),
            json: json!({"error": "usage", "message": "batch lines need exactly one command"}),
        },
        Err(e) => {
            let msg = e.to_string();
            Outcome {
                status: Status::Domain,
                json: json!({"error": "usage", "message": msg.trim_end()}),
                text: msg,
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn evaluate_all(lines: &[&str], g: Global) -> Vec<Outcome> {
    use rayon::prelude::*;
    lines.par_iter().map(|l| evaluate(l, g)).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate_all(lines: &[&str], g: Global) -> Vec<Outcome> {
    lines.iter().map(|l| evaluate(l, g)).collect()
}

/// Runs each nonblank, non-comment line and prints one JSON line per item in
/// input order. Returns the most severe status.
pub fn run_file(path: &Path, g: Global) -> io::Result<Status> {
    let content = fs::read_to_string(path)?;
    let lines: Vec<&str> = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let outcomes = evaluate_all(&lines, g);
    let mut worst = Status::Ok;
    for (line, out) in lines.iter().zip(outcomes) {
        worst = worst.max(out.status);
        println!(
            "{}",
            json!({"input": line, "status": out.status.name(), "result": out.json})
        );
    }
    Ok(worst)
}
