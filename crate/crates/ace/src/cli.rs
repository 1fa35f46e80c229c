// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use ace_core::{
    check_acceptability, evaluate_discussion, find_discussion, AcceptabilityError, ArtifactTriple,
    EvaluationOptions, VertexId,
};
use clap::{Parser, Subcommand};

use crate::dot::to_dot;
use crate::report::{exit_code, render_evaluation, render_verdict, EvaluationView};
use crate::store::{self, StoreError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ace",
    version,
    about = "Evaluate acceptability in argumentation graphs"
)]
struct Cli {
    /// Directory searched for graph files given by name.
    #[arg(long, env = "ACE_STORE_DIR", global = true)]
    store_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph file for structural problems.
    Validate { file: PathBuf },
    /// Print the discussion of a vertex.
    Discussion {
        file: PathBuf,
        #[arg(long)]
        root: String,
        /// Print Graphviz DOT instead of a listing.
        #[arg(long)]
        dot: bool,
    },
    /// Label the discussion of a vertex.
    Evaluate {
        file: PathBuf,
        #[arg(long)]
        root: String,
        /// Rerun every cyclic component from each of its vertices.
        #[arg(long)]
        check_unique: bool,
        /// Print the walker steps of cyclic components.
        #[arg(long)]
        trace: bool,
        /// Print the result as JSON.
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Print Graphviz DOT colored by label.
        #[arg(long)]
        dot: bool,
    },
    /// Check whether an artifact's inputs, methods and outputs are all accepted.
    Accept {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        inputs: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        method: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        outputs: Vec<String>,
    },
}

/// Finds a graph file: the path as given, then with `.json` appended, then
/// both again inside `store_dir` for relative paths.
pub fn resolve_path(file: &Path, store_dir: Option<&Path>) -> PathBuf {
    let with_ext = |p: &Path| {
        let mut s = p.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    };
    let mut candidates = vec![file.to_owned(), with_ext(file)];
    if let Some(dir) = store_dir.filter(|_| file.is_relative()) {
        candidates.push(dir.join(file));
        candidates.push(with_ext(&dir.join(file)));
    }
    candidates
        .into_iter()
        .find(|p| p.is_file())
        .unwrap_or_else(|| file.to_owned())
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<StoreError> for Failure {
    fn from(e: StoreError) -> Self {
        let code = match e {
            StoreError::InvalidGraph(_) => EXIT_STRUCTURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let store_dir = cli.store_dir.as_deref();
    let load = |file: &Path| store::load(&resolve_path(file, store_dir));
    let mut emit = |text: &str| out.write_all(text.as_bytes()).map_err(usage);

    match cli.command {
        Command::Validate { file } => {
            let bytes = std::fs::read(resolve_path(&file, store_dir))
                .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let problems = match store::from_bytes(&bytes) {
                Ok(stored) => {
                    emit(&format!(
                        "ok: {} vertices, {} lines, {} rules\n",
                        stored.graph.len(),
                        stored.graph.line_count(),
                        stored.rules.len()
                    ))?;
                    return Ok(EXIT_OK);
                }
                Err(StoreError::InvalidGraph(p)) => p,
                Err(e) => return Err(e.into()),
            };
            for p in &problems {
                emit(&format!("violation: {p}\n"))?;
            }
            Ok(EXIT_STRUCTURE)
        }
        Command::Discussion { file, root, dot } => {
            let stored = load(&file)?;
            let d =
                find_discussion(&stored.graph, &VertexId::from(root.as_str())).map_err(usage)?;
            if dot {
                emit(&to_dot(&d.graph, None))?;
                return Ok(EXIT_OK);
            }
            let mut text = format!(
                "discussion of {}: {} vertices, {} lines\nvertices:\n",
                d.root,
                d.graph.len(),
                d.graph.line_count()
            );
            for v in d.graph.vertices() {
                let mut row = format!("  {}  {}", v.id, v.kind.symbol());
                if let Some(rule) = &v.rule_id {
                    let ants: Vec<&str> = v.antecedents.iter().map(|a| a.as_str()).collect();
                    let cons: Vec<&str> = v.consequents.iter().map(|c| c.as_str()).collect();
                    row.push_str(&format!(
                        "  {rule}({} -> {})",
                        ants.join(", "),
                        cons.join(", ")
                    ));
                }
                if !v.statement.is_empty() {
                    row.push_str(&format!("  {:?}", v.statement));
                }
                text.push_str(&row);
                text.push('\n');
            }
            text.push_str("lines:\n");
            let mut lines: Vec<_> = d.graph.lines().collect();
            lines.sort();
            for l in lines {
                text.push_str(&format!("  {} -> {}\n", l.from, l.to));
            }
            emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Evaluate {
            file,
            root,
            check_unique,
            trace,
            json,
            dot,
        } => {
            let stored = load(&file)?;
            let d =
                find_discussion(&stored.graph, &VertexId::from(root.as_str())).map_err(usage)?;
            let result = evaluate_discussion(
                &d,
                &stored.rules,
                EvaluationOptions {
                    check_unique,
                    trace,
                },
            )
            .map_err(|e| Failure {
                code: EXIT_STRUCTURE,
                message: e.to_string(),
            })?;
            if json {
                let view = EvaluationView::from(&result);
                let mut text = serde_json::to_string_pretty(&view).map_err(usage)?;
                text.push('\n');
                emit(&text)?;
            } else if dot {
                emit(&to_dot(&d.graph, Some(&result.lambda)))?;
            } else {
                emit(&render_evaluation(&result, trace))?;
            }
            Ok(exit_code(&result.status))
        }
        Command::Accept {
            file,
            inputs,
            method,
            outputs,
        } => {
            let stored = load(&file)?;
            let set = |ids: Vec<String>| -> BTreeSet<VertexId> {
                ids.into_iter()
                    .filter(|s| !s.is_empty())
                    .map(VertexId::from)
                    .collect()
            };
            let triple = ArtifactTriple {
                inputs: set(inputs),
                methods: set(method),
                outputs: set(outputs),
            };
            match check_acceptability(&stored.graph, &triple, &stored.rules) {
                Ok(v) => {
                    emit(&render_verdict(&v))?;
                    Ok(if v.holds { EXIT_OK } else { EXIT_USAGE })
                }
                Err(AcceptabilityError::Unstable { root, result }) => {
                    emit(&render_evaluation(&result, false))?;
                    Err(Failure {
                        code: EXIT_UNSTABLE,
                        message: format!("discussion of {root} has no stable labeling"),
                    })
                }
                Err(e @ AcceptabilityError::StructureError { .. }) => Err(Failure {
                    code: EXIT_STRUCTURE,
                    message: e.to_string(),
                }),
                Err(e) => Err(usage(e)),
            }
        }
    }
}
