mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crossbi::Field;

/// Build crossed products and check their conditions exactly.
#[derive(Parser, Debug)]
#[command(name = "crossbi", version)]
pub struct Cli {
    /// Coefficient field: `q` or `fp:<p>`. Files carry their own field.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Seed for randomized bundles.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for basis-tuple loops.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall times in reports (output is then not reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a construction on an instance and write the structure maps.
    Build {
        construction: String,
        /// Instance file or catalog entry name.
        instance: String,
        #[arg(short, long)]
        output: Option<String>,
        /// Refuse to build when a prerequisite fails.
        #[arg(long)]
        strict: bool,
    },
    /// Check gates or condition ids on an instance.
    Check {
        /// Gate or condition ids, then the instance (file or catalog name).
        #[arg(required = true, num_args = 2..)]
        args: Vec<String>,
    },
    /// Run a brute-force oracle on a built structure.
    Oracle {
        /// assoc, unit, algebra, coassoc, counit, bialg or antipode.
        oracle: String,
        /// Built-structure file, or a bundle with --construction.
        instance: String,
        #[arg(long)]
        construction: Option<String>,
    },
    /// Built-in instances.
    Catalog(CatalogArgs),
    /// The condition registry with source anchors.
    Concordance,
    /// Registered constructions, oracles and gates.
    List {
        /// constructions, oracles or gates.
        what: String,
    },
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[command(subcommand)]
    pub command: CatalogCommand,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    /// Write an entry as an instance file.
    Dump {
        name: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// A seeded random bundle over F_p.
    Random {
        /// Factor dimensions, e.g. 2,2,2.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 2, 2])]
        dims: Vec<usize>,
        /// Enforce the prerequisites of this gate.
        #[arg(long)]
        gate: Option<String>,
        /// Extra items to enforce.
        #[arg(long, value_delimiter = ',')]
        enforce: Vec<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
