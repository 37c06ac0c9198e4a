//! Runs a CLI subcommand in-process on the bundled single-hop scenario and
//! prints the first rows of the table it would write.

use clap::Parser;
use lifespan::cli::{load_scenario, tables_for, Cli};

fn main() -> lifespan::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/single_hop.json");
    let cli = Cli::parse_from([
        "lifespan",
        "predict",
        "--config",
        path,
        "--set",
        "nodes=2000",
        "--out",
        "unused",
    ]);
    let text = std::fs::read_to_string(path)?;
    let scenario = load_scenario(&text, &cli.command.args().set)?;
    for table in tables_for(&cli.command, &scenario)? {
        let csv = table.render(&scenario);
        for line in csv.lines().take(8) {
            println!("{line}");
        }
    }
    Ok(())
}
