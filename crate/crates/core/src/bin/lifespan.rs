use clap::Parser;
use lifespan::cli::{main_with, threads_from_env, Cli, EXIT_VALIDATION};

fn main() {
    let cli = Cli::parse();
    let threads = match threads_from_env(std::env::var("LIFESPAN_THREADS").ok().as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("lifespan: {e}");
            std::process::exit(EXIT_VALIDATION);
        }
    };
    std::process::exit(main_with(cli, threads));
}
