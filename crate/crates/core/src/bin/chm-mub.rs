use clap::Parser;

use chm_mub::cli::{run, CommandConfig};

fn main() {
    let cfg = CommandConfig::parse();
    let code = run(
        &cfg,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
