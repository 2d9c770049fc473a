use std::io::Write;

use clap::Parser;
use skeinlab::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    let mut stream: Box<dyn Write> = if out.code == 0 {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    let _ = stream.write_all(out.text.as_bytes());
    std::process::exit(out.code);
}
