mod args;
mod batch;
mod commands;

use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::Parser;

use args::{Cli, Command, Global};
use commands::{Outcome, Status};

/// Runs one command, abandoning it after the timeout if one is set.
pub(crate) fn run_limited(cmd: &Command, g: Global) -> Outcome {
    let Some(ms) = g.timeout_ms else {
        return commands::run(cmd, g);
    };
    let (tx, rx) = mpsc::channel();
    let owned = cmd.clone();
    thread::spawn(move || {
        let _ = tx.send(commands::run(&owned, g));
    });
    rx.recv_timeout(Duration::from_millis(ms))
        .unwrap_or_else(|_| Outcome::timeout(ms))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let status = if let Some(path) = &cli.batch {
        match batch::run_file(path, cli.global) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                Status::Domain
            }
        }
    } else if let Some(cmd) = &cli.command {
        let out = run_limited(cmd, cli.global);
        if cli.global.json {
            let mut doc = out.json;
            if out.status != Status::Ok && doc.get("status").is_none() {
                doc["status"] = out.status.name().into();
            }
            println!("{doc}");
        } else if out.status == Status::Ok {
            println!("{}", out.text);
        } else {
            eprintln!("{}", out.text);
        }
        out.status
    } else {
        eprintln!("no command given; see --help");
        Status::Domain
    };
    ExitCode::from(status.code() as u8)
}
