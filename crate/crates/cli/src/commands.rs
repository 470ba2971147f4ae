//! Subcommand implementations and the error-to-exit-code mapping.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use wendroff_core::roots::RootSetDto;
use wendroff_core::{
    build, compare, parse_rational, to_decimal_significant, ultra_root_set, verify_sequence,
    Error, RadiusMode, Rational, RootSet, SequenceData, SequenceFile, WendroffConfig,
    WendroffSequence,
};

use crate::figure::{render_svg, FigureSpec};

/// Environment variable holding a default refinement tolerance (a fraction
/// like `1/100000`); a `--tol` flag overrides it.
pub const TOL_ENV: &str = "WENDROFF_TOL";

/// Command-level failure: either a domain error from the library or an I/O
/// failure, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for bad parameters or malformed input, 3 for an aborted
    /// construction, 1 for everything else (I/O, internal failures).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(err) if err.is_domain() => 2,
            CliError::Core(Error::Construction { .. }) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(err) => err.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Output format; each subcommand accepts the subset that makes sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Construction parameters shared by every subcommand.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Seed degree n ≥ 5: the sequence embeds the reference members of
    /// degrees n−1 and n−2.
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of members built above the seed (total degrees 0..n+k).
    #[arg(long)]
    pub k: Option<usize>,

    /// Family parameter λ as an exact fraction, e.g. -5/4.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    /// Upward-scheme parameter σ > 1 as an exact fraction, e.g. 2.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,

    /// Containment-radius rule: auto, a1, a2, value:P/Q, or theorem:P/Q.
    #[arg(long = "a-mode", default_value = "auto")]
    pub a_mode: String,

    /// Root-refinement tolerance as an exact fraction (default 1/1000000;
    /// overrides WENDROFF_TOL).
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<String>,
}

impl ParamArgs {
    fn is_empty(&self) -> bool {
        self.n.is_none() && self.k.is_none() && self.lambda.is_none() && self.sigma.is_none()
    }

    /// Resolve into a validated configuration. `--tol` wins over
    /// `WENDROFF_TOL`, which wins over the library default.
    fn to_config(&self) -> CliResult<WendroffConfig> {
        let (Some(n), Some(k), Some(lambda), Some(sigma)) =
            (self.n, self.k, self.lambda.as_deref(), self.sigma.as_deref())
        else {
            return Err(Error::Parse(
                "missing construction parameters: --n, --k, --lambda, and --sigma are all required"
                    .into(),
            )
            .into());
        };
        let lambda = parse_rational(lambda)?;
        let sigma = parse_rational(sigma)?;
        let a_mode: RadiusMode = self.a_mode.parse()?;
        let config = WendroffConfig::new(n, k, lambda, sigma, a_mode, resolve_tol(&self.tol)?)?;
        Ok(config)
    }
}

/// `--tol` flag if present, else `WENDROFF_TOL`, else `None` (library
/// default). The tolerance must be a positive exact fraction.
fn resolve_tol(flag: &Option<String>) -> CliResult<Option<Rational>> {
    let text = match flag {
        Some(t) => Some(t.clone()),
        None => std::env::var(TOL_ENV).ok(),
    };
    let Some(text) = text else { return Ok(None) };
    let tol = parse_rational(&text)
        .map_err(|e| Error::Parse(format!("tolerance: {e} (from --tol or {TOL_ENV})")))?;
    Ok(Some(tol))
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Build the sequence and write it as JSON (stdout or --out).
    Build {
        #[command(flatten)]
        params: ParamArgs,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Tabulate certified zeros of selected members (CSV or JSON).
    Zeros {
        #[command(flatten)]
        params: ParamArgs,
        /// A previously built sequence file (alternative to parameters).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Degrees to report: comma list with ranges, e.g. 3,5-8,10.
        /// All degrees when omitted.
        #[arg(long)]
        m: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Verify every structural property; print a one-line summary.
    /// Exit 0 exactly when all properties hold.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// A previously built sequence file (alternative to parameters).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Where to write the full JSON report; omitted = summary only.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Compare the zeros of one member against the reference family member
    /// of the same degree (CSV or JSON).
    Compare {
        #[command(flatten)]
        params: ParamArgs,
        /// The single degree to compare, e.g. --m 10.
        #[arg(long)]
        m: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Render an SVG scatter of member zeros (diamonds) against the
    /// reference family zeros (circles), indexed ascending.
    Figure {
        #[command(flatten)]
        params: ParamArgs,
        /// The single degree to plot, e.g. --m 10.
        #[arg(long)]
        m: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cmd: Cmd) -> CliResult<i32> {
    match cmd {
        Cmd::Build { params, out } => cmd_build(&params, out.as_deref()),
        Cmd::Zeros {
            params,
            input,
            m,
            format,
            out,
        } => cmd_zeros(&params, input.as_deref(), m.as_deref(), format, out.as_deref()),
        Cmd::Verify { params, input, out } => cmd_verify(&params, input.as_deref(), out.as_deref()),
        Cmd::Compare {
            params,
            m,
            format,
            out,
        } => cmd_compare(&params, &m, format, out.as_deref()),
        Cmd::Figure { params, m, out } => cmd_figure(&params, &m, out.as_deref()),
    }
}

/// Write to the path, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Load a sequence either from a file or by building from parameters.
/// Returns the sequence together with the refinement tolerance to use
/// downstream (`--tol`/env override > stored or derived config).
fn load_sequence(
    params: &ParamArgs,
    input: Option<&Path>,
) -> CliResult<(WendroffSequence, Rational)> {
    match input {
        Some(path) => {
            if !params.is_empty() {
                return Err(Error::Parse(
                    "--input replaces the construction parameters; drop --n/--k/--lambda/--sigma"
                        .into(),
                )
                .into());
            }
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let file = SequenceFile::from_json(&text)?;
            let seq = WendroffSequence::from_file(&file)?;
            let tol = match resolve_tol(&params.tol)? {
                Some(t) => t,
                None => seq.config().tol().clone(),
            };
            Ok((seq, tol))
        }
        None => {
            let config = params.to_config()?;
            let seq = build(&config)?;
            let tol = config.tol().clone();
            Ok((seq, tol))
        }
    }
}

/// Parse a degree list: comma-separated entries, each `N` or `A-B`.
fn parse_degree_list(text: &str) -> Result<Vec<usize>, Error> {
    let mut degrees = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::Parse(format!("empty entry in degree list `{text}`")));
        }
        match item.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| {
                    Error::Parse(format!("`{item}` is not a degree range (expected A-B)"))
                })?;
                let hi: usize = hi.trim().parse().map_err(|_| {
                    Error::Parse(format!("`{item}` is not a degree range (expected A-B)"))
                })?;
                if lo > hi {
                    return Err(Error::Parse(format!("degree range `{item}` is descending")));
                }
                degrees.extend(lo..=hi);
            }
            None => degrees.push(item.parse().map_err(|_| {
                Error::Parse(format!("`{item}` is not a degree (expected an integer)"))
            })?),
        }
    }
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees)
}

/// Parse `--m` for the commands that require exactly one degree.
fn parse_single_degree(text: &str) -> Result<usize, Error> {
    let degrees = parse_degree_list(text)?;
    match degrees.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Parse(format!(
            "exactly one degree is required here, got `{text}`"
        ))),
    }
}

fn require_degree_in_range(m: usize, seq: &WendroffSequence) -> Result<(), Error> {
    if m > seq.max_degree() {
        return Err(Error::ParameterDomain(format!(
            "degree {m} is not part of this sequence (degrees 0..={})",
            seq.max_degree()
        )));
    }
    Ok(())
}

fn reject_format(format: Format, allowed: &[Format], what: &str) -> Result<(), Error> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "format {format:?} is not available for {what}"
        )))
    }
}

fn cmd_build(params: &ParamArgs, out: Option<&Path>) -> CliResult<i32> {
    let config = params.to_config()?;
    let seq = build(&config)?;
    emit(out, &seq.to_json())?;
    if let Some(path) = out {
        eprintln!(
            "wrote {} ({} polynomials, a = {})",
            path.display(),
            seq.polys().len(),
            wendroff_core::format_rational(seq.a()),
        );
    }
    Ok(0)
}

fn cmd_zeros(
    params: &ParamArgs,
    input: Option<&Path>,
    m: Option<&str>,
    format: Format,
    out: Option<&Path>,
) -> CliResult<i32> {
    reject_format(format, &[Format::Csv, Format::Json], "zero tables")?;
    let (seq, tol) = load_sequence(params, input)?;
    let degrees = match m {
        Some(list) => parse_degree_list(list)?,
        None => (0..=seq.max_degree()).collect(),
    };
    for &m in &degrees {
        require_degree_in_range(m, &seq)?;
    }
    let data = SequenceData::certify(seq, &tol)?;

    let text = match format {
        Format::Csv => {
            let mut out = String::from("degree,index,value,exact\n");
            for &m in &degrees {
                let set = data.root_set(m).expect("degree validated above");
                for (i, root) in set.roots.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        m,
                        i + 1,
                        to_decimal_significant(&root.value, 6),
                        root.exact
                    ));
                }
            }
            out
        }
        Format::Json => {
            let sets: Vec<RootSetDto> = degrees
                .iter()
                .map(|&m| RootSetDto::from_root_set(data.root_set(m).expect("validated")))
                .collect();
            let mut text =
                serde_json::to_string_pretty(&sets).expect("root-set serialization cannot fail");
            text.push('\n');
            text
        }
        Format::Svg => unreachable!("rejected above"),
    };
    emit(out, &text)?;
    Ok(0)
}

fn cmd_verify(params: &ParamArgs, input: Option<&Path>, out: Option<&Path>) -> CliResult<i32> {
    let (seq, tol) = load_sequence(params, input)?;
    let report = verify_sequence(&seq, &tol)?;
    if let Some(path) = out {
        emit(Some(path), &report.to_json())?;
    }
    for failure in &report.failures {
        eprintln!("{failure}");
    }
    println!("{}", report.summary_line());
    Ok(if report.overall { 0 } else { 1 })
}

/// Certified zeros of the sequence member of the given degree.
fn member_root_set(data: &SequenceData, m: usize) -> RootSet {
    data.root_set(m).expect("degree validated").clone()
}

fn cmd_compare(params: &ParamArgs, m: &str, format: Format, out: Option<&Path>) -> CliResult<i32> {
    reject_format(format, &[Format::Csv, Format::Json], "comparison tables")?;
    let m = parse_single_degree(m)?;
    let config = params.to_config()?;
    let seq = build(&config)?;
    require_degree_in_range(m, &seq)?;
    let tol = config.tol().clone();
    let data = SequenceData::certify(seq, &tol)?;
    let d_set = member_root_set(&data, m);
    let c_set = ultra_root_set(m, config.params(), &tol)?;
    let report = compare(m, &d_set, &c_set);
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
        Format::Svg => unreachable!("rejected above"),
    };
    emit(out, &text)?;
    Ok(0)
}

fn cmd_figure(params: &ParamArgs, m: &str, out: Option<&Path>) -> CliResult<i32> {
    let m = parse_single_degree(m)?;
    let config = params.to_config()?;
    let seq = build(&config)?;
    require_degree_in_range(m, &seq)?;
    let tol = config.tol().clone();
    let data = SequenceData::certify(seq, &tol)?;
    let d_set = member_root_set(&data, m);
    let c_set = ultra_root_set(m, config.params(), &tol)?;

    let spec = FigureSpec {
        title: format!(
            "n={}, m={}, lambda={}, sigma={}, a={}",
            config.n(),
            m,
            wendroff_core::format_rational(config.lambda()),
            wendroff_core::format_rational(config.sigma()),
            wendroff_core::format_rational(config.a()),
        ),
        d_label: format!("D{m}"),
        c_label: format!("C{m}"),
        d_zeros: d_set.roots.iter().map(|r| r.value.clone()).collect(),
        c_zeros: c_set.roots.iter().map(|r| r.value.clone()).collect(),
        radius: config.a().clone(),
    };
    emit(out, &render_svg(&spec))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_lists_parse_commas_and_ranges() {
        assert_eq!(parse_degree_list("3,4,5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_degree_list("3-6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_degree_list("8,2-4,3").unwrap(), vec![2, 3, 4, 8]);
        assert_eq!(parse_degree_list(" 1 , 7-7 ").unwrap(), vec![1, 7]);
        assert!(parse_degree_list("5-2").is_err());
        assert!(parse_degree_list("").is_err());
        assert!(parse_degree_list("3,,5").is_err());
        assert!(parse_degree_list("x").is_err());
        assert_eq!(parse_single_degree("10").unwrap(), 10);
        assert!(parse_single_degree("3,4").is_err());
        assert!(parse_single_degree("3-5").is_err());
    }
}
