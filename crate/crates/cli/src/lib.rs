//! `tmc` command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (unsolvable or malformed input),
//! 2 search refused by the memory budget, 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;
use tmc_core::{
    bfs_diameter, group_order, is_solvable, lower_bound, lower_bound_table, omega_series, scramble,
    solve, verify, BfsLimits, BoardDims, BoardState, Error, MoveSequence, OmegaStop,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable capping the worker threads of `diameter`.
pub const THREADS_ENV: &str = "TMC_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "tmc",
    version,
    about = "Torus-sliding puzzle group: order, solving, diameters, bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Board {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
}

impl Board {
    fn dims(self) -> Result<BoardDims, Error> {
        BoardDims::new(self.rows, self.cols)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of reachable states.
    Order {
        #[command(flatten)]
        board: Board,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check whether a state can be solved.
    Solvable {
        #[command(flatten)]
        board: Board,
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Random walk from the solved board.
    Scramble {
        #[command(flatten)]
        board: Board,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        moves: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a move sequence that solves a state.
    Solve {
        #[command(flatten)]
        board: Board,
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check that a move sequence solves a state.
    Verify {
        #[command(flatten)]
        board: Board,
        #[arg(long)]
        state: String,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact diameter and per-depth state counts by breadth-first search.
    Diameter {
        #[command(flatten)]
        board: Board,
        #[arg(long, default_value_t = 4.0)]
        memory_gib: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Diameter lower bound from counting canonical move sequences.
    LowerBound {
        #[command(flatten)]
        board: Board,
        /// Also print the per-level counts.
        #[arg(long)]
        omega: bool,
        /// Last level of the printed counts (default: the bound).
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Grid of lower bounds for all boards from 2x2 up to rows x cols.
    Table {
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut text = e.render().to_string();
            if e.use_stderr() {
                text.push('\n');
                text.push_str(&Cli::command().render_help().to_string());
            }
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Right-aligned columns separated by two spaces.
fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn execute(command: Command) -> Result<String, Error> {
    Ok(match command {
        Command::Order { board, format } => {
            let dims = board.dims()?;
            let order = group_order(dims);
            match format {
                Format::Table => format!("{}\n", order.count),
                Format::Csv => format!(
                    "rows,cols,group,order\n{},{},{},{}\n",
                    dims.rows(),
                    dims.cols(),
                    order.kind,
                    order.count
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "rows": dims.rows(),
                        "cols": dims.cols(),
                        "group": order.kind.to_string(),
                        "order": order.count.to_string(),
                    })
                ),
            }
        }
        Command::Solvable {
            board,
            state,
            format,
        } => {
            let dims = board.dims()?;
            let state = BoardState::parse(&state, dims)?;
            let ok = is_solvable(&state, dims);
            let parity = tmc_core::perm::number_to_position(&state).parity();
            let yes = if ok { "yes" } else { "no" };
            match format {
                Format::Table => format!("{yes}\n"),
                Format::Csv => format!("solvable,parity\n{yes},{parity}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({ "solvable": ok, "parity": parity.to_string() })
                ),
            }
        }
        Command::Scramble {
            board,
            seed,
            moves,
            format,
        } => {
            let dims = board.dims()?;
            let (state, seq) = scramble(dims, seed, moves);
            match format {
                Format::Table => format!("state: {state}\nmoves: {seq}\n"),
                Format::Csv => format!(
                    "state,moves\n{},{}\n",
                    csv_quote(&state.to_string()),
                    csv_quote(&seq.to_string())
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({ "state": state.to_string(), "moves": seq.to_string(), "seed": seed })
                ),
            }
        }
        Command::Solve {
            board,
            state,
            format,
        } => {
            let dims = board.dims()?;
            let state = BoardState::parse(&state, dims)?;
            let sol = solve(&state, dims)?;
            match format {
                Format::Table => format!("{}\nsteps: {}\n", sol.moves, sol.length()),
                Format::Csv => format!(
                    "moves,steps\n{},{}\n",
                    csv_quote(&sol.moves.to_string()),
                    sol.length()
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({ "moves": sol.moves.to_string(), "steps": sol.length() })
                ),
            }
        }
        Command::Verify {
            board,
            state,
            seq,
            format,
        } => {
            let dims = board.dims()?;
            let state = BoardState::parse(&state, dims)?;
            let seq = MoveSequence::parse(&seq, true)?;
            for mv in &seq {
                mv.check_line(dims)?;
            }
            let ok = verify(&state, &seq, dims);
            let yes = if ok { "yes" } else { "no" };
            match format {
                Format::Table => format!("{yes}\n"),
                Format::Csv => format!("solved\n{yes}\n"),
                Format::Json => format!("{}\n", json!({ "solved": ok })),
            }
        }
        Command::Diameter {
            board,
            memory_gib,
            format,
        } => {
            let dims = board.dims()?;
            let limits = BfsLimits {
                memory_bytes: (memory_gib.max(0.0) * (1u64 << 30) as f64) as u64,
                threads: threads_from_env(),
                ..Default::default()
            };
            let h = bfs_diameter(dims, &limits)?;
            match format {
                Format::Table => {
                    let mut rows = vec![vec![
                        "depth".to_string(),
                        "count".into(),
                        "cumulative".into(),
                    ]];
                    for (i, (c, s)) in h.layers.iter().zip(h.cumulative()).enumerate() {
                        rows.push(vec![i.to_string(), c.to_string(), s.to_string()]);
                    }
                    format!("{}diameter: {}\n", render_table(&rows), h.diameter())
                }
                Format::Csv => h.to_csv(),
                Format::Json => format!("{}\n", h.to_json()),
            }
        }
        Command::LowerBound {
            board,
            omega,
            max_level,
            format,
        } => {
            let dims = board.dims()?;
            let bound = lower_bound(dims);
            if !omega {
                return Ok(match format {
                    Format::Table => format!("{bound}\n"),
                    Format::Csv => format!(
                        "rows,cols,lower_bound\n{},{},{bound}\n",
                        dims.rows(),
                        dims.cols()
                    ),
                    Format::Json => format!(
                        "{}\n",
                        json!({ "rows": dims.rows(), "cols": dims.cols(), "lower_bound": bound })
                    ),
                });
            }
            let table = omega_series(dims, OmegaStop::Levels(max_level.unwrap_or(bound)));
            match format {
                Format::Table => {
                    let csv = table.to_csv(true);
                    let rows: Vec<Vec<String>> = csv
                        .lines()
                        .map(|l| l.split(',').map(str::to_string).collect())
                        .collect();
                    format!("{}lower bound: {bound}\n", render_table(&rows))
                }
                Format::Csv => table.to_csv(true),
                Format::Json => {
                    let levels: Vec<_> = table
                        .levels
                        .iter()
                        .map(|l| {
                            json!({
                                "i": l.level,
                                "v": l.v.iter().map(ToString::to_string).collect::<Vec<_>>(),
                                "h": l.h.iter().map(ToString::to_string).collect::<Vec<_>>(),
                                "omega": l.omega.to_string(),
                                "cumulative": l.cumulative.to_string(),
                            })
                        })
                        .collect();
                    format!(
                        "{}\n",
                        json!({
                            "rows": dims.rows(),
                            "cols": dims.cols(),
                            "lower_bound": bound,
                            "levels": levels,
                        })
                    )
                }
            }
        }
        Command::Table { rows, cols, format } => {
            let grid = lower_bound_table(rows, cols)?;
            match format {
                Format::Table => {
                    let csv = grid.to_csv();
                    let cells: Vec<Vec<String>> = csv
                        .lines()
                        .map(|l| l.split(',').map(str::to_string).collect())
                        .collect();
                    render_table(&cells)
                }
                Format::Csv => grid.to_csv(),
                Format::Json => format!(
                    "{}\n",
                    json!({ "max_rows": rows, "max_cols": cols, "bounds": grid.rows() })
                ),
            }
        }
    })
}
