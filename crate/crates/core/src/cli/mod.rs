//! Command line front end: parser, commands and reports.
//!
//! Every command builds a JSON document with the keys `input`, `field`, `foliation`,
//! `discriminant`, `flatness` and `probe` (plus command-specific keys) and renders it
//! as JSON or text.

pub mod parser;
pub mod report;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::flatness::{classify, flat_locus, is_flat, symbolic_condition};
use crate::prefoliation::corpus::{self, CorpusParams};
use crate::prefoliation::{
    discriminant, homogenize, legendre_web, Foliation, PreFoliation, ProjLine,
};
use crate::webnum::{flatness_probe, foliation_web, ProbeConfig};

use parser::{format_foliation, format_line, parse_form, parse_line, parse_scalar};
pub use report::Format;

/// Flatness of dual webs of pre-foliations of the projective plane.
#[derive(Parser, Debug)]
#[command(name = "webfolio", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for sampling and classification; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

/// Foliation and line selection shared by most commands.
#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// 1-form `A dx + B dy`, e.g. "y^2 dx - x^2 dy".
    #[arg(long, conflicts_with = "corpus")]
    pub form: Option<String>,
    /// Named example: fermat, hesse4, hilbert5, hesse7, H0, H1, H2, H3, H4.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Degree d of the pre-foliation (corpus families).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Degree of the Fermat foliation.
    #[arg(long)]
    pub fdeg: Option<usize>,
    /// First family parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Second family parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Line "a,b,c" meaning a x + b y + c z = 0.
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,
    /// Field override "cyclo:N"; must contain every coefficient.
    #[arg(long)]
    pub field: Option<String>,
    /// Value substituted for the parameter t.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

/// Sampling options of the numeric probe.
#[derive(Args, Debug, Clone)]
pub struct ProbeArgs {
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_accept: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tol_reject: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Foliation analysis, discriminant and, with a line, flatness.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Also run the numeric probe.
        #[arg(long)]
        probe: bool,
        #[command(flatten)]
        probe_args: ProbeArgs,
    },
    /// Exact flatness decision of `line ⊠ foliation`.
    Flat {
        #[command(flatten)]
        input: InputArgs,
        /// Invariant line "a,b,c" along which a general pre-foliation is degenerated first.
        #[arg(long, allow_hyphen_values = true)]
        homogenize: Option<String>,
    },
    /// Components of the discriminant of the Legendre web.
    Discriminant {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Numeric curvature probe of the Legendre web.
    Probe {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        probe_args: ProbeArgs,
    },
    /// Flat models of degree d and their perturbations.
    Classify {
        #[arg(long)]
        degree: usize,
    },
    /// Lists corpus members, or shows one with --name.
    Corpus {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        fdeg: usize,
    },
    /// Global index identities of a foliation.
    Identities {
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Loaded input: foliation, optional line and its echo.
struct Loaded {
    fol: Foliation,
    line: Option<ProjLine>,
    echo: Value,
    field: String,
}

fn parse_param(s: &Option<String>) -> Result<crate::algebra::Scalar> {
    match s {
        Some(s) => parse_scalar(s),
        None => Ok(crate::algebra::Scalar::zero()),
    }
}

fn fol_parametric(f: &Foliation) -> bool {
    match f {
        Foliation::Hom(h) => h.is_parametric(),
        Foliation::General(g) => !g.is_const_coeffs(),
    }
}

fn check_field(text: &str, order: u32) -> Result<String> {
    let n: u32 = text
        .strip_prefix("cyclo:")
        .and_then(|n| n.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Usage(format!("field must be cyclo:N, got '{text}'")))?;
    if !n.is_multiple_of(order) {
        return Err(Error::Usage(format!(
            "coefficients need Q(zeta_{order}), not contained in Q(zeta_{n})"
        )));
    }
    Ok(report::field_name(n, false))
}

fn load(input: &InputArgs) -> Result<Loaded> {
    let mut fol = match (&input.form, &input.corpus) {
        (Some(f), None) => parse_form(f)?.to_foliation()?,
        (None, Some(name)) => {
            let p = CorpusParams {
                degree: input.degree,
                fdeg: input.fdeg,
                lambda: parse_param(&input.lambda)?,
                mu: parse_param(&input.mu)?,
            };
            corpus::by_name(name, &p)?
        }
        (None, None) => return Err(Error::Usage("either --form or --corpus is required".into())),
        (Some(_), Some(_)) => return Err(Error::Usage("--form and --corpus are exclusive".into())),
    };
    let mut line = input.line.as_deref().map(parse_line).transpose()?;
    if let Some(t) = &input.t {
        let v = parse_scalar(t)?;
        fol = match fol {
            Foliation::Hom(h) => Foliation::Hom(h.eval_t(&v)?),
            Foliation::General(g) => Foliation::General(g.eval_t(&v)?),
        };
        line = line.map(|l| l.eval_t(&v)).transpose()?;
    }
    let parametric = fol_parametric(&fol) || line.as_ref().is_some_and(|l| !l.is_const());
    let order = line.as_ref().map_or(fol.order(), |l| {
        use num_integer::Integer;
        fol.order().lcm(&l.order())
    });
    let field = match &input.field {
        Some(text) => {
            let base = check_field(text, order)?;
            if parametric {
                format!("{base}(t)")
            } else {
                base
            }
        }
        None => report::field_name(order, parametric),
    };
    let mut echo = Map::new();
    echo.insert("form".into(), Value::String(format_foliation(&fol)));
    echo.insert(
        "line".into(),
        line.as_ref()
            .map(format_line)
            .map_or(Value::Null, Value::String),
    );
    if let Some(c) = &input.corpus {
        echo.insert("corpus".into(), Value::String(c.clone()));
    }
    for (k, v) in [("degree", input.degree), ("fdeg", input.fdeg)] {
        if let Some(v) = v {
            echo.insert(k.into(), json!(v));
        }
    }
    for (k, v) in [
        ("lambda", &input.lambda),
        ("mu", &input.mu),
        ("t", &input.t),
    ] {
        if let Some(v) = v {
            echo.insert(k.into(), Value::String(v.clone()));
        }
    }
    Ok(Loaded {
        fol,
        line,
        echo: Value::Object(echo),
        field,
    })
}

fn require_line(l: &Loaded) -> Result<ProjLine> {
    l.line
        .clone()
        .ok_or_else(|| Error::Usage("this command needs --line".into()))
}

fn foliation_section(fol: &Foliation) -> Result<Value> {
    match fol {
        Foliation::Hom(h) => report::hom_foliation(h),
        Foliation::General(g) => Ok(report::gen_foliation(
            g.degree(),
            format_foliation(fol),
            &g.singularities()?,
        )),
    }
}

fn probe_config(a: &ProbeArgs, jobs: usize) -> Result<ProbeConfig> {
    if a.samples < 5 {
        return Err(Error::Usage(format!(
            "--samples must be at least 5, got {}",
            a.samples
        )));
    }
    if !(a.tol_accept > 0.0 && a.tol_accept <= a.tol_reject) {
        return Err(Error::Usage("need 0 < tol-accept <= tol-reject".into()));
    }
    Ok(ProbeConfig {
        samples: a.samples,
        tol_accept: a.tol_accept,
        tol_reject: a.tol_reject,
        seed: a.seed,
        jobs,
        ..ProbeConfig::default()
    })
}

fn run_probe(l: &Loaded, a: &ProbeArgs, jobs: usize) -> Result<Value> {
    let cfg = probe_config(a, jobs)?;
    let web = match &l.line {
        Some(line) => legendre_web(&PreFoliation::new(line.clone(), l.fol.clone())),
        None => foliation_web(&l.fol),
    };
    let r = flatness_probe(&web, &cfg)?;
    Ok(report::probe(&r, cfg.seed, cfg.tol_accept, cfg.tol_reject))
}

fn parametric_flat(pref: &PreFoliation) -> Result<Value> {
    let h = pref.hom().ok_or_else(|| {
        Error::Unsupported("parametric conditions need a homogeneous foliation".into())
    })?;
    let cond = symbolic_condition(h, pref.line())?;
    let locus = flat_locus(h, pref.line())?;
    Ok(json!({
        "overall": Value::Null,
        "components": [],
        "condition": cond.fmt_var("t"),
        "flat_locus": locus.fmt_var("t"),
    }))
}

fn flat_section(pref: &PreFoliation) -> Result<Value> {
    let parametric = fol_parametric(pref.foliation()) || !pref.line().is_const();
    if parametric {
        parametric_flat(pref)
    } else {
        Ok(report::flatness(&is_flat(pref)?))
    }
}

/// Runs a parsed command line; returns the rendered report.
pub fn run(cli: &Cli) -> Result<String> {
    let doc = match &cli.command {
        Command::Analyze {
            input,
            probe,
            probe_args,
        } => {
            let l = load(input)?;
            let mut doc = report::document(l.echo.clone(), l.field.clone());
            doc.insert("foliation".into(), foliation_section(&l.fol)?);
            if let Some(line) = &l.line {
                let pref = PreFoliation::new(line.clone(), l.fol.clone());
                if pref.hom().is_some() && !fol_parametric(&l.fol) && line.is_const() {
                    doc.insert(
                        "discriminant".into(),
                        report::discriminant(&discriminant(&pref)?),
                    );
                    doc.insert("flatness".into(), flat_section(&pref)?);
                }
            }
            if *probe {
                doc.insert("probe".into(), run_probe(&l, probe_args, cli.jobs)?);
            }
            doc
        }
        Command::Flat {
            input,
            homogenize: along,
        } => {
            let l = load(input)?;
            let mut doc = report::document(l.echo.clone(), l.field.clone());
            let mut pref = PreFoliation::new(require_line(&l)?, l.fol.clone());
            if let Some(d) = along {
                let d = parse_line(d)?;
                pref = homogenize(&pref, &d)?;
                doc.insert(
                    "homogenized".into(),
                    json!({
                        "along": format_line(&d),
                        "form": format_foliation(pref.foliation()),
                        "line": format_line(pref.line()),
                    }),
                );
            }
            if pref.hom().is_none() {
                return Err(Error::Unsupported(
                    "exact criteria need a homogeneous pre-foliation; use --homogenize or probe"
                        .into(),
                ));
            }
            doc.insert("flatness".into(), flat_section(&pref)?);
            doc
        }
        Command::Discriminant { input } => {
            let l = load(input)?;
            let mut doc = report::document(l.echo.clone(), l.field.clone());
            let line = l.line.clone().unwrap_or_else(ProjLine::infinity);
            let pref = PreFoliation::new(line, l.fol.clone());
            if pref.hom().is_none() {
                return Err(Error::Unsupported(
                    "discriminant decomposition needs a homogeneous pre-foliation".into(),
                ));
            }
            doc.insert(
                "discriminant".into(),
                report::discriminant(&discriminant(&pref)?),
            );
            doc
        }
        Command::Probe { input, probe_args } => {
            let l = load(input)?;
            let mut doc = report::document(l.echo.clone(), l.field.clone());
            doc.insert("probe".into(), run_probe(&l, probe_args, cli.jobs)?);
            doc
        }
        Command::Classify { degree } => {
            let models = if cli.jobs > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cli.jobs)
                    .build()
                    .map_err(|e| Error::Usage(e.to_string()))?
                    .install(|| classify(*degree))?
            } else {
                classify(*degree)?
            };
            let order = models.iter().map(|m| m.pref.order()).fold(1, |a: u32, b| {
                use num_integer::Integer;
                a.lcm(&b)
            });
            let mut doc =
                report::document(json!({"degree": degree}), report::field_name(order, false));
            doc.insert(
                "classification".into(),
                report::classification(*degree, &models),
            );
            doc
        }
        Command::Corpus { name, degree, fdeg } => corpus_doc(name.as_deref(), *degree, *fdeg)?,
        Command::Identities { input } => {
            let l = load(input)?;
            let mut doc = report::document(l.echo.clone(), l.field.clone());
            doc.insert("identities".into(), identities_section(&l.fol)?);
            doc
        }
    };
    Ok(report::render(&Value::Object(doc), cli.format))
}

fn identities_section(fol: &Foliation) -> Result<Value> {
    match fol {
        Foliation::Hom(h) => Ok(report::identities(&h.check_global_identities()?)),
        Foliation::General(g) => {
            let n = g.degree();
            let sings = g.singularities()?;
            let mu: Option<usize> = sings.iter().map(|s| s.milnor).sum();
            let bb: Option<Vec<String>> = sings
                .iter()
                .map(|s| s.bb.as_ref().map(|b| b.to_string()))
                .collect();
            let bb_sum = sings
                .iter()
                .try_fold(crate::algebra::Num::int(0), |acc, s| {
                    s.bb.as_ref().map(|b| acc.add(b))
                });
            let status = |ok: Option<bool>| match ok {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skipped",
            };
            let bb_want = crate::algebra::Num::int(((n + 2) * (n + 2)) as i64);
            let bb_ok = bb_sum
                .as_ref()
                .map(|s| (s.embed() - bb_want.embed()).abs() < 1e-20);
            Ok(json!([
                {
                    "name": "milnor-sum",
                    "status": status(mu.map(|m| m == n * n + n + 1)),
                    "detail": mu.map(|m| format!("sum mu = {m}")),
                },
                {
                    "name": "baum-bott-sum",
                    "status": status(bb_ok),
                    "detail": bb_sum.map(|s| format!("sum BB = {s}")),
                    "values": bb,
                },
            ]))
        }
    }
}

fn corpus_doc(name: Option<&str>, degree: usize, fdeg: usize) -> Result<Map<String, Value>> {
    let p = CorpusParams {
        degree: Some(degree),
        fdeg: Some(fdeg),
        ..CorpusParams::default()
    };
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => corpus::NAMES.to_vec(),
    };
    let mut entries = Vec::new();
    for n in names {
        let f = match corpus::by_name(n, &p) {
            Ok(f) => f,
            Err(e) if name.is_none() => {
                entries.push(json!({"name": n, "error": e.to_string()}));
                continue;
            }
            Err(e) => return Err(e),
        };
        let lines =
            corpus::known_lines(n, &p).map(|ls| ls.iter().map(format_line).collect::<Vec<_>>());
        entries.push(json!({
            "name": n,
            "degree": f.degree(),
            "form": format_foliation(&f),
            "invariant_lines": lines,
        }));
    }
    let mut doc = report::document(
        json!({"degree": degree, "fdeg": fdeg, "name": name}),
        "Q".into(),
    );
    doc.insert("corpus".into(), Value::Array(entries));
    Ok(doc)
}

/// Parses arguments and runs; returns the exit code and the text for stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    if let Ok(v) = std::env::var("WEBFOLIO_PRECISION_BITS") {
        if let Err(e) = crate::algebra::dd::parse_precision_bits(&v) {
            return (
                1,
                String::new(),
                format!("error: WEBFOLIO_PRECISION_BITS: {e}\n"),
            );
        }
    }
    match run(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
