//! The `poloid` command-line front end.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict with its
//! witness, 2 parse, usage or I/O failure, 3 failed precondition or bound.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use poloid::classify::{classify, Class};
use poloid::enumerate::{all_tables, canonical_form, for_each_in_class, raw_count, RAW_BOUND};
use poloid::morphisms::{find_isomorphism, image_poloid, is_homomorphism, is_isomorphism, reflects_definedness};
use poloid::represent::{cayley, embed_right_poloid, parse_embedding};
use poloid::{Error, MapMagma, Morphism, PartialMagma, Verdict, Witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "poloid", version, about = "Classify and represent finite partial magmas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a magma or closed map-magma file.
    Classify {
        path: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Embed a poloid in a transformation poloid, or with --pre a normal
    /// right poloid in a domain pretransformation magma.
    Embed {
        path: PathBuf,
        #[arg(long)]
        pre: bool,
        /// Write the embedding here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Count (and optionally write out) all tables on N elements.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        /// Only tables in this class.
        #[arg(long)]
        filter: Option<String>,
        /// Count isomorphism classes instead of tables.
        #[arg(long)]
        up_to_iso: bool,
        /// Write each counted table into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Compose two members `f ∘ g` of a map-magma file.
    Compose { path: PathBuf, f: String, g: String },
    /// Check a morphism file between two magma files.
    CheckHom { src: PathBuf, dst: PathBuf, map: PathBuf },
    /// Search for an isomorphism between two magma files.
    Iso { a: PathBuf, b: PathBuf },
}

/// A failure with its exit code and message.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

/// Maps a library error to an exit code, naming witness elements when known.
fn fail(err: Error, names: Option<&[String]>) -> Failure {
    match err {
        Error::Precondition { class, witness } => Failure {
            code: EXIT_PRECONDITION,
            message: format!("not a {class}: {}", describe(&witness, names)),
        },
        Error::BoundExceeded { .. } => Failure {
            code: EXIT_PRECONDITION,
            message: err.to_string(),
        },
        other => Failure::parse(other.to_string()),
    }
}

fn describe(w: &Witness, names: Option<&[String]>) -> String {
    match names {
        Some(names) if w.elements.iter().all(|&i| i < names.len()) => w.describe(names),
        _ => w.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split(':').next())
        .map(str::trim)
}

/// Reads a map-magma file, also accepting an embedding file.
fn load_map_magma(path: &Path) -> Result<MapMagma, Failure> {
    let text = read(path)?;
    let has_iso = text.lines().any(|l| l.split('#').next().unwrap_or("").trim() == "iso:");
    let parsed = if has_iso {
        parse_embedding(&text).map(|(image, _)| image)
    } else {
        MapMagma::parse(&text)
    };
    parsed.map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Reads a magma file, or a map-magma or embedding file rendered through its
/// Cayley table when closed.
fn load_magma(path: &Path) -> Result<PartialMagma, Failure> {
    let text = read(path)?;
    if first_keyword(&text) == Some("set") {
        let a = load_map_magma(path)?;
        if let Verdict::Fails(w) = a.is_closed() {
            let (f, g) = (w.elements[0], w.elements[1]);
            let composite = a.compose_at(f, g).expect("witness composite is defined");
            return Err(Failure::parse(format!(
                "{}: map magma is not closed: {} ∘ {} = {} is not a member",
                path.display(),
                a.name(f),
                a.name(g),
                a.render_map(&composite)
            )));
        }
        return a.as_partial_magma().map_err(|e| fail(e, None));
    }
    PartialMagma::parse(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn verdict_line(label: &str, v: &Verdict, names: &[String]) -> String {
    match v {
        Verdict::Holds => format!("{label}: yes\n"),
        Verdict::Fails(w) => format!("{label}: no ({})\n", w.describe(names)),
    }
}

type Outcome = Result<(String, i32), Failure>;

fn cmd_classify(path: &Path, json: bool) -> Outcome {
    let m = load_magma(path)?;
    let report = classify(&m);
    let text = if json {
        let mut s = serde_json::to_string_pretty(&report).map_err(|e| Failure::parse(e.to_string()))?;
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    Ok((text, EXIT_OK))
}

fn cmd_embed(path: &Path, pre: bool, output: Option<&Path>) -> Outcome {
    let m = load_magma(path)?;
    let embedding = if pre { embed_right_poloid(&m) } else { cayley(&m) };
    let text = embedding.map_err(|e| fail(e, Some(m.names())))?.to_text();
    match output {
        Some(out) => {
            fs::write(out, &text).map_err(|e| Failure::parse(format!("{}: {e}", out.display())))?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}

fn cmd_enumerate(n: usize, filter: Option<&str>, up_to_iso: bool, emit: Option<&Path>) -> Outcome {
    let class = filter
        .map(|f| f.parse::<Class>().map_err(|e| Failure::parse(e.to_string())))
        .transpose()?;
    if n == 0 {
        return Err(Failure::parse("n must be at least 1"));
    }
    if class.is_none() && n > RAW_BOUND {
        return Err(fail(
            Error::BoundExceeded {
                what: "raw enumeration carrier",
                size: n,
                bound: RAW_BOUND,
            },
            None,
        ));
    }
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(|e| Failure::parse(format!("{}: {e}", dir.display())))?;
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0usize;
    let mut io_error = None;
    let mut visit = |m: &PartialMagma| {
        if up_to_iso && !seen.insert(canonical_form(m)) {
            return;
        }
        count += 1;
        if let (Some(dir), None) = (emit, &io_error) {
            let file = dir.join(format!("n{n}_{count:06}.magma"));
            if let Err(e) = fs::write(&file, m.to_text()) {
                io_error = Some(format!("{}: {e}", file.display()));
            }
        }
    };
    match class {
        Some(c) => for_each_in_class(n, c, &mut visit).map_err(|e| fail(e, None))?,
        None => all_tables(n).map_err(|e| fail(e, None))?.for_each(|m| visit(&m)),
    }
    if let Some(e) = io_error {
        return Err(Failure::parse(e));
    }

    let what = if up_to_iso { "isomorphism classes" } else { "tables" };
    let mut out = format!("n: {n}\n");
    match class {
        Some(c) => out.push_str(&format!("{c}: {count} {what}\n")),
        None => {
            debug_assert!(up_to_iso || count as u128 == raw_count(n));
            out.push_str(&format!("partial magmas: {count} {what}\n"));
            for c in Class::ALL {
                let mut k = 0usize;
                let mut seen = std::collections::BTreeSet::new();
                for_each_in_class(n, c, |m| {
                    if !up_to_iso || seen.insert(canonical_form(m)) {
                        k += 1;
                    }
                })
                .map_err(|e| fail(e, None))?;
                out.push_str(&format!("{c}: {k}\n"));
            }
        }
    }
    Ok((out, EXIT_OK))
}

fn cmd_compose(path: &Path, f: &str, g: &str) -> Outcome {
    let a = load_map_magma(path)?;
    let member = |name: &str| {
        a.index_of_name(name)
            .ok_or_else(|| Failure::parse(format!("no member named `{name}`")))
    };
    let (fi, gi) = (member(f)?, member(g)?);
    let mut out = String::new();
    match a.compose_at(fi, gi) {
        None => out.push_str("undefined\n"),
        Some(c) => {
            out.push_str(&a.render_map(&c));
            out.push('\n');
            if let Some(i) = a.index_of(&c) {
                out.push_str(&format!("member: {}\n", a.labels(i).join(" ")));
            }
        }
    }
    Ok((out, EXIT_OK))
}

fn cmd_check_hom(src: &Path, dst: &Path, map: &Path) -> Outcome {
    let (s, t) = (load_magma(src)?, load_magma(dst)?);
    let text = read(map)?;
    let m = Morphism::parse(&text, &s, &t).map_err(|e| Failure::parse(format!("{}: {e}", map.display())))?;
    let names = s.names();
    let hom = is_homomorphism(&m).map_err(|e| fail(e, Some(names)))?;
    let reflects = reflects_definedness(&m);
    let mut out = verdict_line("homomorphism", &hom, names);
    out.push_str(&verdict_line("reflects definedness", &reflects, names));
    let iso = is_isomorphism(&m).map_err(|e| fail(e, Some(names)))?;
    out.push_str(&format!("isomorphism: {}\n", yes_no(iso)));
    if hom.holds() && reflects.holds() {
        let image = image_poloid(&m).map_err(|e| fail(e, Some(names)))?;
        out.push_str(&format!("image: {}\n", image.names().join(" ")));
    }
    Ok((out, if hom.holds() { EXIT_OK } else { EXIT_FALSE }))
}

fn cmd_iso(a: &Path, b: &Path) -> Outcome {
    let (p, q) = (load_magma(a)?, load_magma(b)?);
    match find_isomorphism(&p, &q).map_err(|e| fail(e, None))? {
        Some(m) => Ok((format!("isomorphic: yes\n{}", m.to_text()), EXIT_OK)),
        None => Ok(("isomorphic: no\n".to_string(), EXIT_FALSE)),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Classify { path, json } => cmd_classify(path, *json),
        Command::Embed { path, pre, output } => cmd_embed(path, *pre, output.as_deref()),
        Command::Enumerate {
            n,
            filter,
            up_to_iso,
            emit,
        } => cmd_enumerate(*n, filter.as_deref(), *up_to_iso, emit.as_deref()),
        Command::Compose { path, f, g } => cmd_compose(path, f, g),
        Command::CheckHom { src, dst, map } => cmd_check_hom(src, dst, map),
        Command::Iso { a, b } => cmd_iso(a, b),
    };
    match outcome {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_PARSE;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
