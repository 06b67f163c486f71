use braidvar::braid::MoveKind;
use braidvar::cli::{self, CheckSet, Format};
use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "braidvar",
    about = "Cluster seeds of braid varieties from double braid words, with machine-checked \
             agreement of the weave/tropical and Deodhar/minor constructions"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Seed for all evaluation-point randomness; echoed in report headers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cartan data as JSON, e.g. '{"type":"A","rank":2}'. Defaults to type A
    /// with the rank inferred from the word.
    #[arg(long, global = true)]
    cartan: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cluster seed of a double braid word.
    Seed {
        /// Double braid word as a JSON array, '@file', or '-' for stdin.
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "json")]
        format: String,
        /// Also print the variables in braid-variety coordinates (after phi*).
        #[arg(long)]
        x_side: bool,
    },
    /// Print the Lusztig-data table of the double inductive weave.
    LusztigTable {
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Emit the double inductive weave as DOT, JSON, or SVG.
    Weave {
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Run the seed-coincidence checks on a word and/or random words.
    Verify {
        #[arg(long)]
        word: Option<String>,
        /// Additionally verify this many random words with Demazure product w0.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Comma-separated subset of tori,vars,forms,moves.
        #[arg(long)]
        checks: Option<String>,
        /// Random rational evaluation points per word for the torus check.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Apply a double braid move and compare the seeds.
    Move {
        #[arg(long)]
        word: String,
        /// One of B1..B5.
        #[arg(long)]
        kind: String,
        /// 1-based position of the leftmost letter in the move window.
        #[arg(long)]
        pos: usize,
    },
    /// Compile a 3D plabic graph to a weave and verify the equivalence.
    Plabic {
        /// Graph as JSON {"rank":n,"word":[..]}, '@file', or '-' for stdin.
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "table")]
        format: String,
        /// Emit the opposite quiver, matching the 3D-plabic sign convention.
        #[arg(long)]
        opposite_quiver: bool,
    },
}

fn run(args: Args) -> braidvar::Result<bool> {
    match args.command {
        Command::Seed {
            word,
            format,
            x_side,
        } => {
            let text = cli::resolve_input(&word)?;
            let b = cli::parse_word(&text)?;
            let cartan = cli::resolve_cartan(args.cartan.as_deref(), &b)?;
            print!(
                "{}",
                cli::cmd_seed(&cartan, &b, format.parse::<Format>()?, x_side, args.seed)?
            );
            Ok(true)
        }
        Command::LusztigTable { word, format } => {
            let text = cli::resolve_input(&word)?;
            let b = cli::parse_word(&text)?;
            let cartan = cli::resolve_cartan(args.cartan.as_deref(), &b)?;
            print!(
                "{}",
                cli::cmd_lusztig_table(&cartan, &b, format.parse::<Format>()?, args.seed)?
            );
            Ok(true)
        }
        Command::Weave { word, format } => {
            let text = cli::resolve_input(&word)?;
            let b = cli::parse_word(&text)?;
            let cartan = cli::resolve_cartan(args.cartan.as_deref(), &b)?;
            print!("{}", cli::cmd_weave(&cartan, &b, format.parse::<Format>()?)?);
            Ok(true)
        }
        Command::Verify {
            word,
            random,
            max_len,
            checks,
            points,
        } => {
            let checks = match checks {
                Some(text) => CheckSet::parse(&text)?,
                None => CheckSet::all(),
            };
            let word_text = word.map(|w| cli::resolve_input(&w)).transpose()?;
            let (out, ok) = cli::cmd_verify(
                args.cartan.as_deref(),
                word_text.as_deref(),
                random,
                max_len,
                checks,
                points,
                args.seed,
            )?;
            print!("{out}");
            Ok(ok)
        }
        Command::Move { word, kind, pos } => {
            let text = cli::resolve_input(&word)?;
            let b = cli::parse_word(&text)?;
            let cartan = cli::resolve_cartan(args.cartan.as_deref(), &b)?;
            let kind: MoveKind = kind.parse()?;
            let (out, ok) = cli::cmd_move(&cartan, &b, kind, pos, args.seed)?;
            print!("{out}");
            Ok(ok)
        }
        Command::Plabic {
            input,
            format,
            opposite_quiver,
        } => {
            let text = cli::resolve_input(&input)?;
            let (out, ok) =
                cli::cmd_plabic(&text, format.parse::<Format>()?, opposite_quiver, args.seed)?;
            print!("{out}");
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
