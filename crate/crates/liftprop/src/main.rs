use std::io::Write;

use clap::Parser;

use liftprop::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run(config, &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
