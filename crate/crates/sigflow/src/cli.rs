//! Command-line front end: evaluate, compare, normalize and render terms
//! from `.sfd` modules, run the full law suite, and reproduce the
//! inverted-pendulum comparison.
//!
//! Exit codes: 0 success (and `equiv` equal), 1 `equiv` different or any
//! law failure, 2 usage/parse/type/IO errors (one-line diagnostic on
//! stderr).

use crate::axioms::{
    check_law, law_catalog, pendulum, report_lines, standard_samples, PendulumParams,
};
use crate::diagram::{render, Diagram, RenderFormat};
use crate::dsl::{parse_module, print_diagram, ModuleSource};
use crate::exactfield::{parse_scalar, FieldElem, FieldTag};
use crate::linrel::{as_map, format_matrix, format_rel, rel_equal};
use crate::normalize::normalize;
use crate::semantics::eval_rel;
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;

#[derive(Parser)]
#[command(
    name = "sigflow",
    about = "Exact semantics and canonical forms for signal-flow diagrams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Dot,
    Tikz,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term to its canonical linear relation (and matrix, if
    /// it denotes a map)
    Eval { file: String, name: String },
    /// Decide semantic equality of two terms
    Equiv { file: String, name1: String, name2: String },
    /// Print the canonical diagram of a term in DSL syntax
    Normalize { file: String, name: String },
    /// Emit a Graphviz or TikZ drawing of a term
    Render {
        file: String,
        name: String,
        #[arg(long, value_enum)]
        format: OutputFormat,
    },
    /// Check the full law catalog on the standard sample set
    CheckRelations {
        /// Field to check over: Q, Qs, or GF:p
        #[arg(long, default_value = "Qs")]
        field: String,
    },
    /// Compare the composite and flattened inverted-pendulum diagrams
    Pendulum {
        /// Cart mass
        #[arg(long = "M", allow_hyphen_values = true)]
        cart_mass: String,
        /// Bob mass
        #[arg(long = "m", allow_hyphen_values = true)]
        bob_mass: String,
        /// Gravitational acceleration
        #[arg(long = "g", allow_hyphen_values = true)]
        gravity: String,
        /// Rod length
        #[arg(long = "l", allow_hyphen_values = true)]
        rod_length: String,
    },
}

fn parse_field_tag(text: &str) -> Result<FieldTag, String> {
    match text {
        "Q" => Ok(FieldTag::Q),
        "Qs" => Ok(FieldTag::Qs),
        _ => match text.strip_prefix("GF:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| format!("bad modulus in `{text}`"))?;
                FieldTag::gfp(p).map_err(|e| e.to_string())
            }
            None => Err(format!("unknown field `{text}` (expected Q, Qs, or GF:p)")),
        },
    }
}

fn load_term<'m>(module: &'m ModuleSource, name: &str) -> Result<&'m Diagram, String> {
    module.get(name).ok_or_else(|| format!("no definition named `{name}`"))
}

fn load_module(path: &str) -> Result<ModuleSource, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_module(&text).map_err(|e| format!("{path}:{e}"))
}

fn pendulum_constant(text: &str, what: &str) -> Result<FieldElem, String> {
    let v = parse_scalar(text, FieldTag::Qs).map_err(|e| format!("--{what} {text}: {e}"))?;
    Ok(v)
}

/// Run one invocation against explicit output streams; returns the exit
/// code. `main` passes the real stdout/stderr, tests capture buffers.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match try_run(argv, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn try_run(argv: &[String], out: &mut dyn Write) -> Result<i32, String> {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // collapse clap's multi-line usage error to one diagnostic line
            let line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            return Err(line);
        }
        Err(e) => {
            // --help / --version go to stdout and succeed
            let _ = write!(out, "{e}");
            return Ok(0);
        }
    };
    let w = |r: std::io::Result<()>| r.map_err(|e| e.to_string());

    match cli.command {
        Command::Eval { file, name } => {
            let module = load_module(&file)?;
            let d = load_term(&module, &name)?;
            let rel = eval_rel(d, module.tag());
            w(write!(out, "{}", format_rel(&rel)))?;
            if let Ok(matrix) = as_map(&rel) {
                w(write!(out, "{}", format_matrix(&matrix)))?;
            }
            Ok(0)
        }
        Command::Equiv { file, name1, name2 } => {
            let module = load_module(&file)?;
            let d1 = load_term(&module, &name1)?;
            let d2 = load_term(&module, &name2)?;
            let equal = rel_equal(&eval_rel(d1, module.tag()), &eval_rel(d2, module.tag()));
            w(writeln!(out, "{}", if equal { "equal" } else { "different" }))?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::Normalize { file, name } => {
            let module = load_module(&file)?;
            let d = load_term(&module, &name)?;
            w(writeln!(out, "{}", print_diagram(&normalize(d, module.tag()))))?;
            Ok(0)
        }
        Command::Render { file, name, format } => {
            let module = load_module(&file)?;
            let d = load_term(&module, &name)?;
            let format = match format {
                OutputFormat::Dot => RenderFormat::Dot,
                OutputFormat::Tikz => RenderFormat::Tikz,
            };
            w(write!(out, "{}", render(d, format)))?;
            Ok(0)
        }
        Command::CheckRelations { field } => {
            let tag = parse_field_tag(&field)?;
            let mut all_pass = true;
            for law in law_catalog() {
                let samples = standard_samples(&law, tag);
                let report = check_law(&law, &samples, tag);
                all_pass &= report.all_pass();
                for line in report_lines(&report, law.params.len() == 2) {
                    w(writeln!(out, "{line}"))?;
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Pendulum { cart_mass, bob_mass, gravity, rod_length } => {
            let params = PendulumParams {
                cart_mass: pendulum_constant(&cart_mass, "M")?,
                bob_mass: pendulum_constant(&bob_mass, "m")?,
                gravity: pendulum_constant(&gravity, "g")?,
                rod_length: pendulum_constant(&rod_length, "l")?,
            };
            let (composite, flattened) = pendulum(&params).map_err(|e| e.to_string())?;
            let lc = eval_rel(&composite, FieldTag::Qs);
            let lf = eval_rel(&flattened, FieldTag::Qs);
            let equal = rel_equal(&lc, &lf);
            w(writeln!(out, "{}", if equal { "equal" } else { "different" }))?;
            if let Ok(transfer) = as_map(&lc) {
                w(write!(out, "{}", format_matrix(&transfer)))?;
            }
            Ok(if equal { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> =
            std::iter::once("sigflow".to_string()).chain(args.iter().map(|s| s.to_string())).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write_module(dir: &std::path::Path, text: &str) -> String {
        let path = dir.join("mod.sfd");
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn tempdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "sigflow-cli-test-{}-{:p}",
            std::process::id(),
            &()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn equiv_zigzag_sides() {
        let dir = tempdir();
        let path = write_module(
            &dir,
            "field Q\nlet lhs = (cap * id) ; (id * cup)\nlet rhs = (id * cap) ; (cup * id)",
        );
        let (code, out, _) = invoke(&["equiv", &path, "lhs", "rhs"]);
        assert_eq!((code, out.as_str()), (0, "equal\n"));
        let path = write_module(&dir, "field Q\nlet a = id\nlet b = scale(2)");
        let (code, out, _) = invoke(&["equiv", &path, "a", "b"]);
        assert_eq!((code, out.as_str()), (1, "different\n"));
    }

    #[test]
    fn eval_prints_relation_and_matrix() {
        let dir = tempdir();
        let path = write_module(&dir, "field Q\nlet t = dup ; (scale(3) * id)");
        let (code, out, _) = invoke(&["eval", &path, "t"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("rel 1 2 1\n"), "unexpected output: {out}");
        assert!(out.contains("matrix 2 1\n"), "unexpected output: {out}");
        // cup is not a map: no matrix block
        let path = write_module(&dir, "field Q\nlet c = cup");
        let (_, out, _) = invoke(&["eval", &path, "c"]);
        assert!(!out.contains("matrix"), "unexpected output: {out}");
    }

    #[test]
    fn errors_exit_2_with_one_line() {
        let (code, _, err) = invoke(&["eval", "/nonexistent/mod.sfd", "t"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);

        let dir = tempdir();
        let path = write_module(&dir, "field Q\nlet bad = add ; add");
        let (code, _, err) = invoke(&["eval", &path, "bad"]);
        assert_eq!(code, 2);
        assert!(err.contains("type mismatch"), "diagnostic was: {err}");

        let path = write_module(&dir, "field Q\nlet t = id");
        let (code, _, err) = invoke(&["eval", &path, "missing"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing"), "diagnostic was: {err}");
    }

    #[test]
    fn check_relations_passes_everywhere() {
        for field in ["Q", "Qs", "GF:7"] {
            let (code, out, _) = invoke(&["check-relations", "--field", field]);
            assert_eq!(code, 0, "field {field}");
            assert!(out.lines().all(|l| l.ends_with("verdict=pass")
                || l.ends_with("verdict=skipped-side-condition")));
            assert!(out.contains("law=R29 c=- verdict=pass"));
        }
    }

    #[test]
    fn pendulum_subcommand() {
        let (code, out, _) = invoke(&["pendulum", "--M", "2", "--m", "1", "--g", "10", "--l", "1"]);
        assert_eq!(code, 0, "stdout: {out}");
        assert!(out.starts_with("equal\n"));
        assert!(out.contains("matrix 2 1\n"));
        let (code, _, err) = invoke(&["pendulum", "--M", "0", "--m", "1", "--g", "10", "--l", "1"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn normalize_and_render_produce_parsable_output() {
        let dir = tempdir();
        let path = write_module(&dir, "field Q\nlet zz = (cap * id) ; (id * cup)");
        let (code, out, _) = invoke(&["normalize", &path, "zz"]);
        assert_eq!(code, 0);
        let reparsed = format!("field Q\nlet t = {}", out.trim_end());
        assert!(parse_module(&reparsed).is_ok(), "normalize output failed to parse: {out}");

        let (code, out, _) = invoke(&["render", &path, "zz", "--format", "dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph"));
        let (code, out, _) = invoke(&["render", &path, "zz", "--format", "tikz"]);
        assert_eq!(code, 0);
        assert!(out.contains("tikzpicture"));
    }
}
