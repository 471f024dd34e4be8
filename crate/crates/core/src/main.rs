use clap::Parser;
use rmva::cli::{run, Request};

fn main() {
    let out = run(&Request::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
