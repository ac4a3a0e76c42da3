use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qcss_core::analysis::{self, SweepOptions, SweepRecord};
use qcss_core::diffset::{self, exp_sum_profile, CosetPattern, DsKind};
use qcss_core::export::{self, AdsDocument, FamilyDocument, ReportDocument, TheoremComparison};
use qcss_core::qcss::{self, report_discrepancy, SweepMethod};
use qcss_core::z4;
use qcss_core::Error;

use crate::{cache, AdsArgs, FamilyArgs, Format, QcssArgs, SweepArgs, TablesArgs};

/// Agreement required between the naive and fast sweeps.
const METHOD_AGREEMENT: f64 = 1e-9;
/// Slack on the lower-bound check.
const BOUND_SLACK: f64 = 1e-6;
/// Default cap on `n` for `qcss`.
const QCSS_MAX_N: u32 = 8;
/// Family sizes up to this degree get the all-pairs alpha_max sweep.
const BRUTE_ALPHA_MAX_N: u32 = 8;

pub struct Context {
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
    Config(String),
    /// A property that must hold did not.
    Falsified(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::ConstructionFailure { .. } | Error::SearchExhausted(_) => 3,
                Error::ResourceCap(_) => 4,
                _ => 2,
            },
            CliError::Io { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Falsified(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(Error::ConstructionFailure { reason, witness, measured }) => {
                write!(f, "construction failure: {reason}")?;
                if let Some((a, b)) = witness {
                    write!(f, " (witness pair {a}, {b})")?;
                }
                if let Some(c) = measured {
                    write!(f, " (measured {:?} {c})", c.kind)?;
                }
                Ok(())
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Falsified(msg) => write!(f, "check failed: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Writes the document to `out` and the summary to stdout, or the document
/// to stdout and the summary to stderr.
fn emit(out: Option<&Path>, document: &str, summary: &[String]) -> Result<(), CliError> {
    match out {
        Some(path) => {
            cache::write(path, document)?;
            summary.iter().for_each(|line| println!("{line}"));
        }
        None => {
            print!("{document}");
            summary.iter().for_each(|line| eprintln!("{line}"));
        }
    }
    Ok(())
}

fn json_only(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Config(format!("{what} documents are JSON only")));
    }
    Ok(())
}

pub fn family(ctx: &Context, args: FamilyArgs) -> Result<(), CliError> {
    json_only(args.format, "family")?;
    let family = match &args.poly {
        Some(text) => {
            let h: qcss_core::binary::BinaryPolynomial = text.parse()?;
            if h.degree() != args.n {
                return Err(CliError::Config(format!(
                    "polynomial {h} has degree {}, expected {}",
                    h.degree(),
                    args.n
                )));
            }
            z4::build_family_a_from(&h)?
        }
        None => cache::load_family(ctx.cache_dir.as_deref(), args.n)?,
    };
    let alpha = if family.n() <= BRUTE_ALPHA_MAX_N {
        z4::alpha_max_brute(&family)
    } else {
        z4::alpha_max(&family)
    };
    let summary = format!(
        "familyA n={} size={} alpha_max={alpha:.6}",
        family.n(),
        family.members().len()
    );
    emit(args.out.as_deref(), &FamilyDocument::from_family(&family).to_json(), &[summary])
}

fn resolve_f(f: Option<u32>, n: Option<u32>) -> Result<u32, CliError> {
    match (f, n) {
        (Some(f), _) => Ok(f),
        (None, Some(n)) => Ok(analysis::theorem1_params(n)?.f as u32),
        (None, None) => Err(CliError::Config("one of --f or --n is required".into())),
    }
}

pub fn ads(ctx: &Context, args: AdsArgs) -> Result<(), CliError> {
    json_only(args.format, "ADS")?;
    let f = resolve_f(args.f, args.n)?;
    let ds: DsKind = args.ds.into();
    let w = ds.difference_set(f)?;
    let pattern = if args.search {
        diffset::find_canonical_pattern(&w)?
    } else {
        CosetPattern::CANONICAL
    };
    let u = diffset::lift_ads_to_z4f(&w, &pattern)?;
    let doc = AdsDocument::new(f, ds, &u, pattern);
    cache::store_ads(ctx.cache_dir.as_deref(), &doc)?;
    let profile = exp_sum_profile(&u);
    let c = doc.classification;
    let mut summary = vec![format!(
        "ads f={f} ds={} q={} kind={:?} params={c} max_delta={:.6} bound={:.6}",
        ds.as_str(),
        u.modulus(),
        c.kind,
        profile.max_nontrivial(),
        profile.bound.unwrap_or(f64::NAN),
    )];
    if args.search {
        summary.push(format!("pattern {}", export::json(&pattern).trim().replace(['\n', ' '], "")));
    }
    emit(args.out.as_deref(), &doc.to_json(), &summary)
}

pub fn qcss(ctx: &Context, args: QcssArgs) -> Result<(), CliError> {
    let params = analysis::theorem1_params(args.n)?;
    if args.n > QCSS_MAX_N && !args.force {
        return Err(Error::ResourceCap(format!(
            "n = {} exceeds the default cap {QCSS_MAX_N}; pass --force",
            args.n
        ))
        .into());
    }
    let f = args.f.unwrap_or(params.f as u32);
    let ds: DsKind = args.ds.into();
    let cache_dir = ctx.cache_dir.as_deref();

    let family = cache::load_family(cache_dir, args.n)?;
    let l = z4::subset_l(&family)?;
    let u = cache::load_ads(cache_dir, f, ds)?;
    let mut set = qcss::build_qcss(&l, &u)?;
    set.provenance.n = Some(args.n);
    set.provenance.f = Some(f);
    set.provenance.ads = Some(format!("{} {}", ds.as_str(), u.classify()));
    set.provenance.family = Some(format!("familyA n={} generator={}", args.n, family.generator()));

    let mut failures = Vec::new();
    if let Err(e) = set.check_shape() {
        failures.push(e.to_string());
    }

    let method = args
        .method
        .map(SweepMethod::from)
        .unwrap_or(if args.n <= 6 { SweepMethod::Naive } else { SweepMethod::Fast });
    let report = qcss::tolerances_with(&set, method);
    if args.verify {
        let other = match method {
            SweepMethod::Naive => SweepMethod::Fast,
            SweepMethod::Fast => SweepMethod::Naive,
        };
        let gap = report_discrepancy(&report, &qcss::tolerances_with(&set, other));
        if gap.is_nan() || gap > METHOD_AGREEMENT {
            failures.push(format!("naive and fast sweeps differ by {gap:e}"));
        }
    }
    if report.delta_max < report.lower_bound - BOUND_SLACK {
        failures.push(format!(
            "deltaMax {} is below the lower bound {}",
            report.delta_max, report.lower_bound
        ));
    }

    let mut doc = ReportDocument::new(&set, report);
    doc.alpha_max = Some(z4::alpha_max(&family));
    if f as u64 == params.f {
        doc.theorem = Some(TheoremComparison::new(&params, &doc.correlation));
    }

    let r = &doc.correlation;
    let mut summary = vec![format!(
        "qcss n={} K={} M={} N={} q={} deltaMax={:.6} lowerBound={:.3} rho={}",
        args.n,
        set.k(),
        set.m(),
        set.n(),
        set.q(),
        r.delta_max,
        r.lower_bound,
        r.rho.map_or("undefined".to_string(), |v| format!("{v:.3}")),
    )];
    if let Some(t) = &doc.theorem {
        summary.push(format!(
            "theorem (informational) claimedDelta={:.2} measuredDelta={:.2} claimedRho=({}, {}) measuredRho={}",
            t.claimed_delta,
            t.measured_delta,
            t.claimed_rho_range.0,
            t.claimed_rho_range.1,
            t.measured_rho.map_or("undefined".to_string(), |v| format!("{v:.3}")),
        ));
    }
    let document = match args.format {
        Format::Json => doc.to_json(),
        Format::Csv => export::profile_csv(r, set.q()),
    };
    emit(args.out.as_deref(), &document, &summary)?;
    if !failures.is_empty() {
        return Err(CliError::Falsified(failures.join("; ")));
    }
    Ok(())
}

pub fn tables(args: TablesArgs) -> Result<(), CliError> {
    let x_max = args.x_max.unwrap_or_else(|| analysis::default_x_max(args.table));
    let records = analysis::table_records(args.table, x_max)?;
    let document = match args.format {
        Format::Csv => export::table_csv(&records, args.digits),
        Format::Json => export::json(&records),
    };
    emit(args.out.as_deref(), &document, &[])
}

fn sweep_csv(records: &[SweepRecord], digits: usize) -> String {
    let mut out = String::from(
        "tableId,n,x,f,q,K,M,N,K_over_M,alphaMax,lemma5Bound,lowerBound,boundRho,tableRho,measuredDeltaMax,measuredRho\n",
    );
    let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.digits$}"));
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.d$},{:.d$},{:.d$},{:.d$},{:.d$},{:.d$},{},{}",
            r.table_id,
            r.n,
            r.x,
            r.f,
            r.q,
            r.k,
            r.m,
            r.len,
            r.k_over_m,
            r.alpha_max,
            r.lemma5_bound,
            r.lower_bound,
            r.bound_rho,
            r.table_rho,
            opt(r.measured_delta_max),
            opt(r.measured_rho),
            d = digits,
        );
    }
    out
}

pub fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let mut options = SweepOptions { empirical: args.empirical, ..SweepOptions::default() };
    if args.force {
        options.empirical_max_n = z4::MAX_FAMILY_DEGREE;
    }
    let records = analysis::sweep(args.n_min..=args.n_max, args.x_min..=args.x_max, options)?;
    let document = match args.format {
        Format::Json => export::json(&records),
        Format::Csv => sweep_csv(&records, args.digits),
    };
    emit(args.out.as_deref(), &document, &[])
}
