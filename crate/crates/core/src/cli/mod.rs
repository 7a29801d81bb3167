//! The `pcmcat` command line: argument parsing, file loading and report
//! printing over the library.
//!
//! Exit codes: 0 success, 1 a law check failed, 2 parse or validation
//! error, 3 not summable.

mod parse;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational};
use thiserror::Error;

use crate::cauchy::{cauchy_product, series_convolve, CauchyArrow, CauchyCategory, CoeffStream, SeriesError};
use crate::family::IndexedFamily;
use crate::fincat::FinCategory;
use crate::laws::{classify, pcmcat_suite};
use crate::pcm::{format_complex, Element, SumResult};
use crate::pcmcat::{check_pcm_functor, parse_base, pcm_product, Object, PcmCatError, PcmCategory};
use crate::report::{CheckConfig, Report};
use crate::universal::{dft_substitute, UniversalError};

pub use parse::{format_arrow, parse_arrow, parse_element, parse_fincat, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LAW_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_SUMMABLE: i32 = 3;

/// Largest `n` accepted by the `cyclic:<n>` index shorthand.
const MAX_CYCLIC: usize = crate::universal::MAX_DFT_PRIME as usize;

#[derive(Debug, Parser)]
#[command(name = "pcmcat", version, about = "PCM-categories and their Cauchy products")]
struct Cli {
    #[command(flatten)]
    bounds: Bounds,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Bounds {
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, default_value_t = 4)]
    family_size: usize,
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
}

/// Where a command finds its Cauchy product.
#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct Product {
    /// Base descriptor, e.g. `int`, `mod:5`, `rel:2`.
    #[arg(long)]
    pub base: String,
    /// A `.fincat` file, or `cyclic:<n>` / `trivial`.
    #[arg(long)]
    pub index: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Embedding {
    Sigma,
    Eta,
    Gamma,
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Validate an index category and/or a base descriptor.
    Validate {
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        index: Option<String>,
    },
    /// Run the law suite on a base, or on its Cauchy product with an index.
    Laws {
        #[arg(long)]
        base: String,
        #[arg(long)]
        index: Option<String>,
    },
    /// Inspect a Cauchy product.
    Cauchy {
        #[command(subcommand)]
        action: CauchyAction,
    },
    /// Print `g ∘ f` for two `.arrow` files.
    Convolve {
        #[command(flatten)]
        product: Product,
        g: PathBuf,
        f: PathBuf,
    },
    /// Sum a family of parallel `.arrow` files.
    Sum {
        #[command(flatten)]
        product: Product,
        #[arg(required = true)]
        arrows: Vec<PathBuf>,
    },
    /// Evaluate `Σ_m α(m) e^{2πi ms/p}` for an `.arrow` over `int` and `cyclic:<p>`.
    Substitute {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u64,
        arrow: PathBuf,
    },
    /// Apply `σ`, `η_U`, `γ_X` or `⋆`.
    Embed {
        #[arg(long, value_enum)]
        which: Embedding,
        #[command(flatten)]
        product: Product,
        /// Base source object, default the first.
        #[arg(long)]
        x: Option<String>,
        /// Base target object, default `x`.
        #[arg(long)]
        y: Option<String>,
        /// Index object for `eta`, default the first.
        #[arg(long)]
        object: Option<String>,
        /// Index arrow for `gamma` and `star`.
        #[arg(long)]
        arrow: Option<String>,
        /// Base arrow for `eta` and `star`.
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        /// `.arrow` file for `sigma`.
        file: Option<PathBuf>,
    },
    /// Check the product of two bases and its projections.
    Product {
        #[arg(long = "base", num_args = 1, required = true)]
        bases: Vec<String>,
    },
    /// Truncated product of two power series.
    Series {
        /// `1,2,1` or `geom:<scale>:<ratio>`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CauchyAction {
    /// Objects, hom-set sizes and identities.
    Describe {
        #[command(flatten)]
        product: Product,
    },
}

/// A parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub tolerance: f64,
    pub family_size: usize,
    pub trials: usize,
}

impl RunConfig {
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Ok(RunConfig {
            command: cli.command,
            seed: cli.bounds.seed,
            tolerance: cli.bounds.tolerance,
            family_size: cli.bounds.family_size,
            trials: cli.bounds.trials,
        })
    }

    pub fn check_config(&self) -> CheckConfig {
        CheckConfig {
            seed: self.seed,
            tolerance: self.tolerance,
            family_size: self.family_size,
            trials: self.trials,
            ..CheckConfig::default()
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Invalid(format!("tolerance {} must be positive", self.tolerance)));
        }
        if self.family_size == 0 || self.trials == 0 {
            return Err(CliError::Invalid("--family-size and --trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    NotSummable(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::NotSummable(_) => EXIT_NOT_SUMMABLE,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::NotSummable(m) => CliError::NotSummable(m),
            ParseError::PcmCat(e) => e.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<PcmCatError> for CliError {
    fn from(e: PcmCatError) -> Self {
        match e {
            PcmCatError::NotSummable(m) => CliError::NotSummable(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<UniversalError> for CliError {
    fn from(e: UniversalError) -> Self {
        match e {
            UniversalError::NotSummable(m) => CliError::NotSummable(m),
            UniversalError::PcmCat(e) => e.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

/// `cyclic:<n>`, `trivial`, or a `.fincat` path.
pub fn load_index(spec: &str) -> Result<FinCategory, String> {
    if spec == "trivial" {
        return Ok(FinCategory::trivial());
    }
    if let Some(n) = spec.strip_prefix("cyclic:") {
        return match n.parse::<usize>() {
            Ok(n) if (1..=MAX_CYCLIC).contains(&n) => Ok(FinCategory::cyclic(n)),
            _ => Err(format!("`{spec}`: order must lie in 1..={MAX_CYCLIC}")),
        };
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    parse_fincat(&text).map_err(|e| format!("{spec}: {e}"))
}

fn build(p: &Product) -> Result<Arc<CauchyCategory>, CliError> {
    let base = parse_base(&p.base)?;
    let index = load_index(&p.index).map_err(CliError::Invalid)?;
    Ok(cauchy_product(base, Arc::new(index))?)
}

fn load_arrow(path: &Path, cc: &CauchyCategory) -> Result<(String, CauchyArrow), CliError> {
    parse_arrow(&read(path)?, cc).map_err(|e| match CliError::from(e) {
        CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    parse_element(s, &crate::pcm::Carrier::Rational)
        .and_then(|e| match e {
            Element::Rational(q) => Some(q),
            _ => None,
        })
        .ok_or_else(|| CliError::Invalid(format!("cannot read `{s}` as a rational")))
}

/// `1,2,1` or `geom:<scale>:<ratio>`.
pub fn parse_stream(s: &str) -> Result<CoeffStream, String> {
    if let Some(rest) = s.strip_prefix("geom:") {
        let (c, r) = rest.split_once(':').ok_or_else(|| format!("expected geom:<scale>:<ratio>, got `{s}`"))?;
        let (c, r) = (rational(c).map_err(|e| e.to_string())?, rational(r).map_err(|e| e.to_string())?);
        return CoeffStream::geometric(c, r).map_err(|e| e.to_string());
    }
    s.split(',').map(|t| rational(t).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>().map(CoeffStream::Finite)
}

/// Reports, then exit 0 or 1.
fn print_reports(out: &mut String, reports: &[Report]) -> i32 {
    for r in reports {
        let _ = writeln!(out, "{r}");
    }
    if reports.iter().all(Report::passed) {
        EXIT_OK
    } else {
        EXIT_LAW_VIOLATION
    }
}

fn base_object(cc: &CauchyCategory, name: Option<&str>) -> Result<Object, CliError> {
    let objects = cc.base().objects();
    match name {
        None => objects.into_iter().next().ok_or_else(|| CliError::Invalid("base has no objects".into())),
        Some(n) => {
            let o = Object::named(n);
            if objects.contains(&o) {
                Ok(o)
            } else {
                Err(CliError::Invalid(format!("unknown base object `{n}`")))
            }
        }
    }
}

fn base_value(cc: &CauchyCategory, x: &Object, y: &Object, text: Option<&str>) -> Result<Element, CliError> {
    let text = text.ok_or_else(|| CliError::Invalid("--value is required".into()))?;
    let carrier = cc.base().hom(x, y)?.carrier().clone();
    parse_element(text, &carrier).ok_or_else(|| CliError::Invalid(format!("cannot read `{text}` as {carrier}")))
}

fn index_arrow(cc: &CauchyCategory, name: Option<&str>) -> Result<crate::fincat::ArrowId, CliError> {
    let name = name.ok_or_else(|| CliError::Invalid("--arrow is required".into()))?;
    cc.index().find_arrow(name).ok_or_else(|| CliError::Invalid(format!("unknown index arrow `{name}`")))
}

fn execute(cfg: &RunConfig, out: &mut String) -> Result<i32, CliError> {
    cfg.validate()?;
    let check = cfg.check_config();
    match &cfg.command {
        Command::Validate { base, index } => {
            if base.is_none() && index.is_none() {
                return Err(CliError::Invalid("nothing to validate: give --base and/or --index".into()));
            }
            if let Some(b) = base {
                let c = parse_base(b)?;
                let _ = writeln!(out, "base {} objects={}", c.name(), c.objects().len());
            }
            if let Some(i) = index {
                let c = load_index(i).map_err(CliError::Invalid)?;
                let _ = writeln!(out, "index {c}");
            }
            let _ = writeln!(out, "CHECK validate PASS");
            Ok(EXIT_OK)
        }
        Command::Laws { base, index } => {
            let c: Arc<dyn PcmCategory> = match index {
                None => parse_base(base)?,
                Some(_) => build(&Product { base: base.clone(), index: index.clone().unwrap_or_default() })?,
            };
            let reports = pcmcat_suite(c.as_ref(), &check);
            let code = print_reports(out, &reports);
            let objects = c.objects();
            for x in &objects {
                for y in &objects {
                    let h = c.hom(x, y)?.renamed(format!("{}({x},{y})", c.name()));
                    let _ = writeln!(out, "{}", classify(&h, &check));
                }
            }
            Ok(code)
        }
        Command::Cauchy { action: CauchyAction::Describe { product } } => {
            let cc = build(product)?;
            let objects = cc.objects();
            let _ = writeln!(out, "category {}", cc.name());
            let _ = writeln!(out, "objects {}", objects.len());
            for x in &objects {
                for y in &objects {
                    let ((_, u), (_, v)) = (cc.split(x)?, cc.split(y)?);
                    let names: Vec<&str> = cc.index().hom(u, v).iter().map(|&a| cc.index().arrow_name(a)).collect();
                    let _ = writeln!(out, "hom {x} -> {y} coeffs=[{}]", names.join(","));
                }
            }
            for x in &objects {
                let id = cc.identity_arrow(x)?;
                out.push_str(&format_arrow(&format!("id{x}"), &id, &cc)?);
            }
            Ok(EXIT_OK)
        }
        Command::Convolve { product, g, f } => {
            let cc = build(product)?;
            let ((gn, g), (fn_, f)) = (load_arrow(g, &cc)?, load_arrow(f, &cc)?);
            if g.src != f.tgt {
                return Err(CliError::Invalid(format!("cannot compose {gn}: {} -> {} after {fn_}: {} -> {}", g.src, g.tgt, f.src, f.tgt)));
            }
            let h = cc.convolve(&g, &f)?;
            out.push_str(&format_arrow(&format!("{gn}.{fn_}"), &h, &cc)?);
            Ok(EXIT_OK)
        }
        Command::Sum { product, arrows } => {
            let cc = build(product)?;
            let loaded = arrows.iter().map(|p| load_arrow(p, &cc)).collect::<Result<Vec<_>, _>>()?;
            let (src, tgt) = (loaded[0].1.src.clone(), loaded[0].1.tgt.clone());
            if let Some((n, a)) = loaded.iter().find(|(_, a)| a.src != src || a.tgt != tgt) {
                return Err(CliError::Invalid(format!("{n}: {} -> {} is not parallel to {src} -> {tgt}", a.src, a.tgt)));
            }
            let names: Vec<&str> = loaded.iter().map(|(n, _)| n.as_str()).collect();
            let fam = IndexedFamily::from_values(loaded.iter().map(|(_, a)| a.clone()));
            match cc.sum_arrows(&src, &tgt, &fam)? {
                SumResult::Summable(Element::Coeffs(cs)) => {
                    let sum = CauchyArrow { src, tgt, coeffs: cs };
                    out.push_str(&format_arrow(&format!("sum({})", names.join(",")), &sum, &cc)?);
                    Ok(EXIT_OK)
                }
                SumResult::Summable(other) => Err(CliError::Invalid(format!("unexpected sum {other}"))),
                SumResult::NotSummable => Err(CliError::NotSummable(format!("family ({}) is not summable", names.join(",")))),
            }
        }
        Command::Substitute { p, s, arrow } => {
            let index = format!("cyclic:{p}");
            // reject bad p and s before reading the file
            crate::universal::dft_data(*p, *s)?;
            let cc = build(&Product { base: "int".into(), index })?;
            let (_, a) = load_arrow(arrow, &cc)?;
            let alpha: Vec<BigInt> = a
                .coeffs
                .iter()
                .map(|c| match c {
                    Element::Int(n) => n.clone(),
                    _ => unreachable!("int base"),
                })
                .collect();
            let z = dft_substitute(*p, *s, &alpha)?;
            let _ = writeln!(out, "{}", format_complex(z));
            Ok(EXIT_OK)
        }
        Command::Embed { which, product, x, y, object, arrow, value, file } => {
            let cc = build(product)?;
            let x = base_object(&cc, x.as_deref())?;
            let y = match y {
                Some(_) => base_object(&cc, y.as_deref())?,
                None => x.clone(),
            };
            match which {
                Embedding::Sigma => {
                    let path = file.as_ref().ok_or_else(|| CliError::Invalid("sigma needs an .arrow file".into()))?;
                    let (_, a) = load_arrow(path, &cc)?;
                    let _ = writeln!(out, "{}", cc.sigma(&a)?);
                }
                Embedding::Eta => {
                    let u = match object {
                        Some(n) => cc.index().find_object(n).ok_or_else(|| CliError::Invalid(format!("unknown index object `{n}`")))?,
                        None => cc.index().objects().next().ok_or_else(|| CliError::Invalid("index has no objects".into()))?,
                    };
                    let h = base_value(&cc, &x, &y, value.as_deref())?;
                    out.push_str(&format_arrow("eta", &cc.eta(&x, &y, &h, u)?, &cc)?);
                }
                Embedding::Gamma => {
                    let a = index_arrow(&cc, arrow.as_deref())?;
                    out.push_str(&format_arrow("gamma", &cc.gamma(&x, a)?, &cc)?);
                }
                Embedding::Star => {
                    let a = index_arrow(&cc, arrow.as_deref())?;
                    let h = base_value(&cc, &x, &y, value.as_deref())?;
                    out.push_str(&format_arrow("star", &cc.star(&x, &y, &h, a)?, &cc)?);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Product { bases } => {
            let [a, b] = bases.as_slice() else {
                return Err(CliError::Invalid(format!("product takes exactly two --base flags, got {}", bases.len())));
            };
            let prod = Arc::new(pcm_product(parse_base(a)?, parse_base(b)?));
            let mut reports = pcmcat_suite(prod.as_ref(), &check);
            let (p1, p2) = prod.projections();
            reports.push(check_pcm_functor(&p1, check.family_size, &check));
            reports.push(check_pcm_functor(&p2, check.family_size, &check));
            let pairing = prod.pairing(&p1, &p2);
            reports.push(check_pcm_functor(&pairing, check.family_size, &check));
            Ok(print_reports(out, &reports))
        }
        Command::Series { p, q, order } => {
            let p = parse_stream(p).map_err(CliError::Invalid)?;
            let q = parse_stream(q).map_err(CliError::Invalid)?;
            let r = series_convolve(&p, &q, *order)?;
            for (n, c) in r.coeffs.iter().enumerate() {
                let _ = writeln!(out, "c{n} = {c}");
            }
            let _ = writeln!(out, "tail_bound = {}", r.tail_bound);
            Ok(EXIT_OK)
        }
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut text = String::new();
    let code = match execute(cfg, &mut text) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::NotSummable(_)) {
                text.push_str("NOT_SUMMABLE\n");
            }
            e.code()
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

/// Parses `args` (program name first) and runs them.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::from_args(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            code
        }
    }
}

#[cfg(test)]
mod tests;
