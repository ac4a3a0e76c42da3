//! Theorem-level parameter sets, the asymptotic tightness tables and
//! parameter sweeps comparing bound-based and measured tightness.

use serde::{Deserialize, Serialize};

use crate::diffset::{classify_set, DsKind};
use crate::qcss::{build_qcss, tolerances_with, welch_lower_bound_real, QcssSet, SweepMethod};
use crate::z4::{build_family_a, subset_l};
use crate::{Error, Result};

/// Largest `n` for which [`sweep`] builds and measures a full QCSS.
pub const EMPIRICAL_MAX_N: u32 = 8;

/// Largest exponent handled in closed form (values stay exact in `f64`).
pub const MAX_EXPONENT: u32 = 52;

/// Parameters of the `(2^n, 2^(n-1) - 3, 2^n - 1)` construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub n: u32,
    pub f: u64,
    pub q: u64,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub len: u64,
    #[serde(rename = "claimedDelta")]
    pub claimed_delta: f64,
    #[serde(rename = "claimedRhoRange")]
    pub claimed_rho_range: (f64, f64),
}

pub fn theorem1_params(n: u32) -> Result<TheoremParams> {
    if n <= 3 {
        return Err(Error::invalid(format!(
            "n = {n}: f = 2^(n-2) - 1 must be at least 3 and congruent to 3 mod 4, so n >= 4"
        )));
    }
    if n > MAX_EXPONENT {
        return Err(Error::invalid(format!("n = {n} exceeds {MAX_EXPONENT}")));
    }
    let f = (1u64 << (n - 2)) - 1;
    Ok(TheoremParams {
        n,
        f,
        q: 4 * f,
        k: 1 << n,
        m: 2 * f - 1,
        len: (1 << n) - 1,
        claimed_delta: claimed_delta(n),
        claimed_rho_range: (1.0, 2.0),
    })
}

/// `(1 + 2^(n/2)) sqrt(2^n - 3)`.
pub fn claimed_delta(n: u32) -> f64 {
    (1.0 + 2f64.powf(n as f64 / 2.0)) * (2f64.powi(n as i32) - 3.0).sqrt()
}

fn check_table(table: u8, x: u32) -> Result<()> {
    let min = match table {
        1 => 1,
        2 | 3 => 2,
        _ => return Err(Error::invalid(format!("table {table} does not exist"))),
    };
    if x < min || x > MAX_EXPONENT {
        return Err(Error::invalid(format!(
            "table {table} rows need {min} <= x <= {MAX_EXPONENT}, got {x}"
        )));
    }
    Ok(())
}

/// Limit of the tightness factor as `n -> infinity` for row `x` of a table.
///
/// * table 1 (Singer set, `q = 2^(n-x+1) - 1`): `2^(x-1) / sqrt(2^x - 1)`
/// * table 2 (ADS, even `n`): `sqrt(2^x / (2^(x-1) - 1))`
/// * table 3 (ADS, odd `n`): `sqrt(2^(x-1) / (2^(x-1) - 1))`
pub fn table_rho(table: u8, x: u32) -> Result<f64> {
    check_table(table, x)?;
    let p = |e: u32| 2f64.powi(e as i32);
    Ok(match table {
        1 => p(x - 1) / (p(x) - 1.0).sqrt(),
        2 => (p(x) / (p(x - 1) - 1.0)).sqrt(),
        _ => (p(x - 1) / (p(x - 1) - 1.0)).sqrt(),
    })
}

/// Printed rows `(x, rho)` of the three tables.
pub fn golden_rows(table: u8) -> &'static [(u32, &'static str)] {
    match table {
        1 => &[(1, "1.000"), (2, "1.155"), (3, "1.512"), (4, "2.066"), (5, "2.874")],
        2 => &[
            (2, "2.000"),
            (3, "1.633"),
            (4, "1.512"),
            (5, "1.461"),
            (6, "1.437"),
            (7, "1.425"),
            (10, "1.416"),
            (20, "1.414"),
            (40, "1.414"),
        ],
        3 => &[
            (2, "1.414"),
            (3, "1.155"),
            (4, "1.069"),
            (5, "1.033"),
            (6, "1.016"),
            (7, "1.008"),
            (10, "1.001"),
            (20, "1.000"),
            (40, "1.000"),
        ],
        _ => &[],
    }
}

/// Default last row of each table, as printed.
pub fn default_x_max(table: u8) -> u32 {
    match table {
        1 => 5,
        _ => 40,
    }
}

fn pow2_expr(offset: u32) -> String {
    if offset == 0 {
        "2^{n}".to_string()
    } else {
        format!("2^{{n-{offset}}}")
    }
}

fn pow2_guarantee(e: u32) -> String {
    if e == 1 {
        ">=2".to_string()
    } else {
        format!(">=2^{{{e}}}")
    }
}

/// One row of a reproduced table; the symbolic columns follow the printed
/// layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    #[serde(rename = "tableId")]
    pub table_id: u8,
    pub x: u32,
    pub f_or_q: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "K_over_M")]
    pub k_over_m: String,
    pub rho: f64,
}

pub fn table_record(table: u8, x: u32) -> Result<TableRecord> {
    let rho = table_rho(table, x)?;
    let (f_or_q, m, guarantee) = match table {
        1 => (
            format!("{}-1", pow2_expr(x - 1)),
            format!("{}-1", pow2_expr(x)),
            pow2_guarantee(x),
        ),
        _ => (
            format!("{}-1", pow2_expr(x)),
            format!("{}-3", pow2_expr(x - 1)),
            pow2_guarantee(x - 1),
        ),
    };
    Ok(TableRecord {
        table_id: table,
        x,
        f_or_q,
        k: pow2_expr(0),
        m,
        k_over_m: guarantee,
        rho,
    })
}

/// Rows `x_min..=x_max` of a table.
pub fn table_records(table: u8, x_max: u32) -> Result<Vec<TableRecord>> {
    let x_min = if table == 1 { 1 } else { 2 };
    check_table(table, x_max.max(x_min))?;
    if x_max < x_min {
        return Err(Error::invalid(format!("x_max must be at least {x_min}")));
    }
    (x_min..=x_max).map(|x| table_record(table, x)).collect()
}

/// Finite-`n` tightness with `R_1` replaced by its bound
/// `(1 + 2^(n/2)) sqrt(4f + 1)` (the ADS exponential-sum bound for
/// `(4f, 2f-1, f-2, f-1)` is `sqrt(4f + 1)`), for `f = 2^(n-x) - 1`.
pub fn bound_rho(n: u32, x: u32) -> Result<f64> {
    let cell = SweepCell::new(n, x)?;
    Ok(cell.bound_rho())
}

#[derive(Debug, Clone, Copy)]
struct SweepCell {
    n: u32,
    f: f64,
    q: f64,
    k: f64,
    m: f64,
    len: f64,
}

impl SweepCell {
    fn new(n: u32, x: u32) -> Result<Self> {
        if x < 2 || n > MAX_EXPONENT || n < x + 2 {
            return Err(Error::invalid(format!(
                "(n, x) = ({n}, {x}) needs x >= 2 and n - x >= 2"
            )));
        }
        let f = 2f64.powi((n - x) as i32) - 1.0;
        Ok(SweepCell {
            n,
            f,
            q: 4.0 * f,
            k: 2f64.powi(n as i32),
            m: 2.0 * f - 1.0,
            len: 2f64.powi(n as i32) - 1.0,
        })
    }

    fn alpha(&self) -> f64 {
        1.0 + 2f64.powf(self.n as f64 / 2.0)
    }

    fn lemma5(&self) -> f64 {
        (4.0 * self.f + 1.0).sqrt()
    }

    fn lower_bound(&self) -> f64 {
        welch_lower_bound_real(self.k, self.m, self.len)
    }

    fn bound_rho(&self) -> f64 {
        self.alpha() * self.lemma5() / self.lower_bound()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRecord {
    pub table_id: u8,
    pub n: u32,
    pub x: u32,
    pub f: f64,
    pub q: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub len: f64,
    pub k_over_m: f64,
    pub alpha_max: f64,
    pub lemma5_bound: f64,
    pub lower_bound: f64,
    pub bound_rho: f64,
    pub table_rho: f64,
    pub measured_delta_max: Option<f64>,
    pub measured_rho: Option<f64>,
}

/// Builds the QCSS from subset `L` of Family A (degree `n`) and the
/// canonical ADS lifted from the `ds` difference set of order `f`.
pub fn build_construction(n: u32, f: u32, ds: DsKind) -> Result<QcssSet> {
    let family = build_family_a(n)?;
    let l = subset_l(&family)?;
    let u = ds.almost_difference_set(f)?;
    let mut set = build_qcss(&l, &u)?;
    set.provenance.n = Some(n);
    set.provenance.f = Some(f);
    set.provenance.ads = Some(format!("{} {}", ds.as_str(), classify_set(&u)));
    set.provenance.family = Some(format!("familyA n={n} generator={}", family.generator()));
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Build and measure each cell's QCSS.
    pub empirical: bool,
    /// Largest `n` measured in empirical mode.
    pub empirical_max_n: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { empirical: false, empirical_max_n: EMPIRICAL_MAX_N }
    }
}

/// Evaluates every valid `(n, x)` cell; cells with `n - x < 2` are skipped.
/// In empirical mode each cell also builds its QCSS (Singer base set) and
/// measures `delta_max` with the fast sweep. Records are ordered by
/// `(tableId, x, n)`.
pub fn sweep(
    n_range: std::ops::RangeInclusive<u32>,
    x_range: std::ops::RangeInclusive<u32>,
    options: SweepOptions,
) -> Result<Vec<SweepRecord>> {
    if n_range.is_empty() || x_range.is_empty() {
        return Err(Error::invalid("sweep ranges must be nonempty"));
    }
    let empirical = options.empirical;
    if empirical && *n_range.end() > options.empirical_max_n {
        let n = *n_range.end();
        let pairs = (1u128 << n) * ((1u128 << n) + 1) / 2;
        let work = pairs * ((1u128 << n) - 1).pow(2);
        return Err(Error::ResourceCap(format!(
            "empirical sweep at n = {n} needs about {work:.3e} chip operations; cap is n <= {cap}",
            cap = options.empirical_max_n,
            work = work as f64
        )));
    }
    let mut records = Vec::new();
    for n in n_range.clone() {
        for x in x_range.clone() {
            let Ok(cell) = SweepCell::new(n, x) else { continue };
            let table_id = if n % 2 == 0 { 2 } else { 3 };
            let (measured_delta_max, measured_rho) = if empirical {
                let set = build_construction(n, cell.f as u32, DsKind::Singer)?;
                let report = tolerances_with(&set, SweepMethod::Fast);
                (Some(report.delta_max), report.rho)
            } else {
                (None, None)
            };
            records.push(SweepRecord {
                table_id,
                n,
                x,
                f: cell.f,
                q: cell.q,
                k: cell.k,
                m: cell.m,
                len: cell.len,
                k_over_m: cell.k / cell.m,
                alpha_max: cell.alpha(),
                lemma5_bound: cell.lemma5(),
                lower_bound: cell.lower_bound(),
                bound_rho: cell.bound_rho(),
                table_rho: table_rho(table_id, x)?,
                measured_delta_max,
                measured_rho,
            });
        }
    }
    if records.is_empty() {
        return Err(Error::invalid("no (n, x) cell in range has n - x >= 2"));
    }
    records.sort_by_key(|r| (r.table_id, r.x, r.n));
    Ok(records)
}
