use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;

use tropline::cli::{run, Command, JobConfig};
use tropline::CliResult;

fn main() -> ExitCode {
    let job = JobConfig::parse();
    match execute(&job) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(job: &JobConfig) -> CliResult<i32> {
    let needs_input = !matches!(job.command, Command::Optimal { .. } | Command::Repro);
    let input = match (&job.input, needs_input) {
        (_, false) => String::new(),
        (Some(p), true) => std::fs::read_to_string(p)?,
        (None, true) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let out = run(job, &input)?;
    match &job.output {
        Some(p) => std::fs::write(p, &out.output)?,
        None => std::io::stdout().write_all(out.output.as_bytes())?,
    }
    if let (Some(p), Some(svg)) = (&job.svg, &out.svg) {
        std::fs::write(p, svg)?;
    }
    Ok(out.code)
}
