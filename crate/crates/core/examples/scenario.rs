//! Runs a scenario file through the command-line front end.
//!
//! `cargo run --example scenario -- examples/data/five_node.json`

use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/internet.json")
    });
    let path = path.to_string_lossy().into_owned();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    for command in ["lifetime", "curve"] {
        let code = netrel::cli::run_with_io(&["netrel", command, "--scenario", &path], &mut stdout, &mut stderr);
        if code != 0 {
            std::process::exit(code);
        }
    }
}
