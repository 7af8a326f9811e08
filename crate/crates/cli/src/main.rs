use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sforms::characters::character_table;
use sforms::groups::{group_from_selector, FiniteGroup, GroupDocument, SubgroupHandle};
use sforms::induction::{induce_cyclic, induction_table};
use sforms::mckay::{class_correspondence, compactified_diagram, mckay_graph};
use sforms::spectra::{degeneracy_series, lens_torsion, spectral_sum, SpectralWeight, TwistSpec};
use sforms::theorems::{run_suite, Suite};
use sforms::Error;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "sforms", version, about = "Spectra of twisted spherical space forms S³/Γ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupQuery {
    Order,
    Classes,
    Chartab,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, conjugacy classes or character table.
    Group {
        /// 2T, 2O, 2I (or T', O', Y'/I') or Z<q>.
        group: String,
        what: GroupQuery,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Load the group from this file if present, otherwise build it and save it there.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Decompose r↑⟨gen⟩; without --r, the whole induction table.
    Induce {
        group: String,
        #[arg(long)]
        gen: String,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Twisted degeneracies d_n and eigenvalues n(n+2) up to --nmax.
    ///
    /// With --gen the space is the lens space S³/⟨gen⟩ twisted by ω^r; otherwise the twist is
    /// the irrep --irrep of the group (trivial by default), or ω^r for Z<q>.
    Spectrum {
        group: String,
        #[arg(long)]
        gen: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long, conflicts_with = "r")]
        irrep: Option<String>,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// raw, heat:<t>, zeta:<s> or counting:<lambda>.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Analytic torsion 4 sin²(πr/q) of the lens space S³/Z_q twisted by ω^r.
    Torsion {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exits with 1 if any item fails.
    Verify {
        /// all, groups, tables, induction, matrices, isospectral, relations, dimension, oracle,
        /// torsion, sunada, artin, conjugation, induced-matrices or mckay.
        suite: String,
        #[arg(long, default_value_t = 60)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// McKay graph, or with --classes the class-version diagram.
    Mckay {
        group: String,
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_)
            | Error::Parse(_)
            | Error::NotFound(_)
            | Error::Conductor(_)
            | Error::UnsupportedTwist(_)
            | Error::Divergent(_)
            | Error::Singular(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Output plus whether the run counts as a verification failure.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<&str> = allowed
            .iter()
            .map(|f| match f {
                Format::Text => "text",
                Format::Json => "json",
                Format::Dot => "dot",
                Format::Csv => "csv",
            })
            .collect();
        Err(usage(format!("{command} supports --format {}", names.join(", "))))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn load_group(selector: &str, cache: Option<&Path>) -> Result<Arc<FiniteGroup>, Failure> {
    let Some(path) = cache else {
        return Ok(group_from_selector(selector)?);
    };
    if path.exists() {
        let g = GroupDocument::load(path)?.into_group()?;
        let wanted = group_from_selector_name(selector)?;
        if g.name() != wanted {
            return Err(usage(format!(
                "cache {} holds {}, not {wanted}",
                path.display(),
                g.name()
            )));
        }
        return Ok(Arc::new(g));
    }
    let g = group_from_selector(selector)?;
    g.to_document().save(path)?;
    Ok(g)
}

/// Canonical name for a selector without building the group.
fn group_from_selector_name(selector: &str) -> Result<String, Failure> {
    let s = selector.trim().replace(['′', '’'], "'").to_ascii_uppercase();
    Ok(match s.as_str() {
        "2T" | "T'" => "2T".into(),
        "2O" | "O'" => "2O".into(),
        "2I" | "I'" | "Y'" => "2I".into(),
        other if other.starts_with('Z') && other[1..].parse::<u32>().is_ok() => other.into(),
        _ => return Err(usage(format!("unknown group {selector:?}; expected 2T, 2O, 2I or Z<q>"))),
    })
}

fn parse_weight(arg: &str) -> Result<SpectralWeight, Failure> {
    let (kind, param) = match arg.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (arg, None),
    };
    let value = |name: &str| -> Result<f64, Failure> {
        param
            .ok_or_else(|| usage(format!("weight {name} needs a parameter, e.g. {name}:0.1")))?
            .parse::<f64>()
            .map_err(|e| usage(format!("bad weight parameter: {e}")))
    };
    match kind.to_ascii_lowercase().as_str() {
        "raw" => Ok(SpectralWeight::Raw),
        "heat" => {
            let t = value("heat")?;
            if !(t > 0.0) {
                return Err(usage("heat weight needs t > 0"));
            }
            Ok(SpectralWeight::Heat { t })
        }
        "zeta" => Ok(SpectralWeight::Zeta { s: value("zeta")? }),
        "counting" => Ok(SpectralWeight::Counting { lambda: value("counting")? }),
        other => Err(usage(format!("unknown weight {other:?}; expected raw, heat, zeta or counting"))),
    }
}

fn cmd_group(selector: &str, what: GroupQuery, format: Format, cache: Option<&Path>) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json], "group")?;
    let g = load_group(selector, cache)?;
    let text = match (what, format) {
        (GroupQuery::Order, Format::Json) => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "group": g.name(),
            "order": g.order(),
        })),
        (GroupQuery::Order, _) => format!("{}\n", g.order()),
        (GroupQuery::Classes, Format::Json) => {
            let classes: Vec<Value> = g
                .classes()
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "aliases": c.aliases,
                        "size": c.size(),
                        "element_order": c.element_order,
                    })
                })
                .collect();
            pretty(&json!({"schema_version": SCHEMA_VERSION, "group": g.name(), "classes": classes}))
        }
        (GroupQuery::Classes, _) => {
            let mut out = format!("{}: {} classes\n", g.name(), g.num_classes());
            for c in g.classes() {
                let aliases = if c.aliases.is_empty() {
                    String::new()
                } else {
                    format!("  (= {})", c.aliases.join(", "))
                };
                out.push_str(&format!(
                    "{:>6}  size {:>2}  order {:>2}{aliases}\n",
                    c.label,
                    c.size(),
                    c.element_order
                ));
            }
            out
        }
        (GroupQuery::Chartab, Format::Json) => {
            pretty(&serde_json::to_value(character_table(&g)?.to_document()).map_err(Error::from)?)
        }
        (GroupQuery::Chartab, _) => character_table(&g)?.render_text(),
    };
    Ok(Output::ok(text))
}

fn cmd_induce(selector: &str, gen: &str, r: Option<i64>, format: Format, cache: Option<&Path>) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json], "induce")?;
    let g = load_group(selector, cache)?;
    let q = g.element_order(g.generator(gen)?);
    let Some(r) = r else {
        let table = induction_table(&g, gen)?;
        return Ok(Output::ok(match format {
            Format::Json => pretty(&serde_json::to_value(&table).map_err(Error::from)?),
            _ => table.render_text(),
        }));
    };
    if !(0..q as i64).contains(&r) {
        return Err(usage(format!("--r must lie in 0..{q} for <{gen}> in {}", g.name())));
    }
    let d = induce_cyclic(&g, gen, r)?;
    Ok(Output::ok(match format {
        Format::Json => {
            let constituents: Vec<Value> = d
                .constituents
                .named()
                .into_iter()
                .map(|(irrep, multiplicity)| json!({"irrep": irrep, "multiplicity": multiplicity}))
                .collect();
            pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "group": d.group,
                "generator": d.generator,
                "q": d.q,
                "r": d.r,
                "constituents": constituents,
                "text": d.text,
            }))
        }
        _ => format!("{}\n", d.text),
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    selector: &str,
    gen: Option<&str>,
    r: Option<i64>,
    irrep: Option<&str>,
    nmax: usize,
    weight: Option<&str>,
    format: Format,
    cache: Option<&Path>,
) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json, Format::Csv], "spectrum")?;
    let weight = weight.map(parse_weight).transpose()?;
    let g = load_group(selector, cache)?;
    let twist = match (gen, r, irrep) {
        (Some(_), _, Some(_)) | (None, Some(_), Some(_)) => {
            return Err(usage("--irrep cannot be combined with --gen or --r"))
        }
        (Some(gen), r, None) => TwistSpec::cyclic(&SubgroupHandle::cyclic(&g, gen)?, r.unwrap_or(0))?,
        (None, Some(r), None) => {
            if g.generators().len() != 1 {
                return Err(usage("--r without --gen needs a cyclic group Z<q>"));
            }
            let h = SubgroupHandle::cyclic_of(&g, g.generators()[0].index, &g.generators()[0].name)?;
            TwistSpec::cyclic(&h, r)?
        }
        (None, None, Some(name)) => TwistSpec::irrep(&g, name)?,
        (None, None, None) => TwistSpec::trivial(&g),
    };
    let series = degeneracy_series(&twist, nmax)?;
    let sum = weight.map(|w| spectral_sum(&series, w).map(|s| (w, s))).transpose()?;
    let text = match format {
        Format::Csv => series.to_csv(),
        Format::Json => {
            let mut doc = series.to_json();
            if let Some((w, s)) = sum {
                doc["spectral_sum"] = json!({"weight": w, "value": s.value, "tail_bound": s.tail_bound});
            }
            pretty(&doc)
        }
        _ => {
            let mut out = format!("{} twisted by {}\n", series.group, series.twist);
            out.push_str(&format!("{:>5} {:>8} {:>8}\n", "n", "lambda", "d_n"));
            for (n, d) in series.entries.iter().enumerate() {
                out.push_str(&format!("{n:>5} {:>8} {d:>8}\n", n * (n + 2)));
            }
            if let Some((w, s)) = sum {
                match s.tail_bound {
                    Some(b) => out.push_str(&format!("{w}: {:.15e} (tail <= {b:.3e})\n", s.value)),
                    None => out.push_str(&format!("{w}: {}\n", s.value)),
                }
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn cmd_torsion(q: u32, r: i64, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json], "torsion")?;
    let t = lens_torsion(q, r)?;
    Ok(Output::ok(match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "q": t.q,
            "r": t.r,
            "torsion": t.value,
            "log_torsion": t.log,
        })),
        _ => {
            // print exact-looking values without float noise
            let rounded = (t.value * 1e12).round() / 1e12;
            format!("{rounded}\n")
        }
    }))
}

fn cmd_verify(suite: &str, nmax: usize, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json], "verify")?;
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, nmax)?;
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&report).map_err(Error::from)?),
        _ => report.render_text(),
    };
    Ok(Output {
        text,
        failed: !report.passed(),
    })
}

fn cmd_mckay(selector: &str, classes: bool, format: Format, cache: Option<&Path>) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json, Format::Dot], "mckay")?;
    let g = load_group(selector, cache)?;
    if classes {
        let d = compactified_diagram(&g)?;
        let text = match format {
            Format::Dot => d.export_dot(),
            Format::Json => {
                let mut doc = d.to_json();
                doc["correspondence"] = serde_json::to_value(class_correspondence(&g)?).map_err(Error::from)?;
                pretty(&doc)
            }
            _ => {
                let mut out = format!("{} class diagram, poles {} and {}\n", d.group, d.poles[0], d.poles[1]);
                for a in &d.arcs {
                    let fold = if a.folded { "folded" } else { "full circle" };
                    out.push_str(&format!("  arc {} (q = {}, {fold}): {}\n", a.generator, a.order, a.internal.join(" - ")));
                }
                for gl in &d.gluings {
                    out.push_str(&format!(
                        "  glued: {}^{} = [{}] on arc {} ({}^{})\n",
                        gl.generator, gl.power, gl.class, gl.onto_generator, gl.onto_generator, gl.onto_power
                    ));
                }
                match (&d.relinked_arc, d.relinked_type) {
                    (Some(a), Some(t)) => out.push_str(&format!("  re-linked at 1 through arc {a}: {t}\n")),
                    _ => out.push_str("  no re-linking reproduces the McKay graph\n"),
                }
                out
            }
        };
        return Ok(Output::ok(text));
    }
    let m = mckay_graph(&g)?;
    let text = match format {
        Format::Dot => m.export_dot(),
        Format::Json => pretty(&m.to_json()),
        _ => {
            let ty = m.ade_type().map_or("unclassified".to_string(), |t| t.to_string());
            let mut out = format!("{} McKay graph: {ty}\n", m.group);
            for (i, name) in m.nodes.iter().enumerate() {
                let nbrs: Vec<String> = (0..m.nodes.len())
                    .filter(|&j| m.adjacency[i][j] > 0)
                    .map(|j| match m.adjacency[i][j] {
                        1 => m.nodes[j].clone(),
                        k => format!("{k}x{}", m.nodes[j]),
                    })
                    .collect();
                out.push_str(&format!("  {name} [{}]: {}\n", m.marks[i], nbrs.join(", ")));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Group {
            group,
            what,
            format,
            cache,
        } => cmd_group(&group, what, format, cache.as_deref()),
        Command::Induce {
            group,
            gen,
            r,
            format,
            cache,
        } => cmd_induce(&group, &gen, r, format, cache.as_deref()),
        Command::Spectrum {
            group,
            gen,
            r,
            irrep,
            nmax,
            weight,
            format,
            cache,
        } => cmd_spectrum(
            &group,
            gen.as_deref(),
            r,
            irrep.as_deref(),
            nmax,
            weight.as_deref(),
            format,
            cache.as_deref(),
        ),
        Command::Torsion { q, r, format } => cmd_torsion(q, r, format),
        Command::Verify { suite, nmax, format } => cmd_verify(&suite, nmax, format),
        Command::Mckay {
            group,
            classes,
            format,
            cache,
        } => cmd_mckay(&group, classes, format, cache.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
