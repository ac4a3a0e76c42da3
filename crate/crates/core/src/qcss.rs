//! QCSS assembly from a sequence set and a cyclic subset, and the periodic
//! correlation sweep that measures its tolerances.

use std::f64::consts::TAU;

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffset::CyclicSubset;
use crate::gaussian::Gaussian;
use crate::phase::{phase_transform, PhaseSequence, RootTable};
use crate::z4::{self, Z4Sequence};
use crate::{Error, Result};

/// Tolerance for `rho == 1` in [`tightness`].
pub const OPTIMAL_TOLERANCE: f64 = 1e-9;

/// One QCSS element `C_k`: `M` rows of common length `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcssMatrix {
    pub user: usize,
    rows: Vec<PhaseSequence>,
}

impl QcssMatrix {
    pub fn new(user: usize, rows: Vec<PhaseSequence>) -> Result<Self> {
        let first = rows.first().ok_or_else(|| Error::invalid("matrix needs at least one row"))?;
        if rows
            .iter()
            .any(|r| r.len() != first.len() || r.root_order() != first.root_order())
        {
            return Err(Error::invalid("rows must share length and root order"));
        }
        Ok(QcssMatrix { user, rows })
    }

    pub fn rows(&self) -> &[PhaseSequence] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn root_order(&self) -> u32 {
        self.rows[0].root_order()
    }
}

/// Where a set came from; carried into reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub n: Option<u32>,
    pub f: Option<u32>,
    pub ads: Option<String>,
    pub family: Option<String>,
}

#[derive(Debug, Clone)]
pub struct QcssSet {
    matrices: Vec<QcssMatrix>,
    sequences: Vec<Z4Sequence>,
    shifts: CyclicSubset,
    pub provenance: Provenance,
}

impl QcssSet {
    pub fn matrices(&self) -> &[QcssMatrix] {
        &self.matrices
    }

    /// The base sequences `v_k`.
    pub fn sequences(&self) -> &[Z4Sequence] {
        &self.sequences
    }

    /// The ramp exponents `D`.
    pub fn shifts(&self) -> &CyclicSubset {
        &self.shifts
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn m(&self) -> usize {
        self.shifts.len()
    }

    pub fn n(&self) -> usize {
        self.sequences[0].period()
    }

    pub fn q(&self) -> u32 {
        self.shifts.modulus()
    }

    /// Every matrix has `M` rows of length `N` over one root order, and every
    /// phase lies below that order (so every entry is on the unit circle).
    pub fn check_shape(&self) -> Result<()> {
        let (m, n) = (self.m(), self.n());
        let l = self.matrices[0].root_order();
        for c in &self.matrices {
            if c.row_count() != m || c.row_len() != n || c.root_order() != l {
                return Err(Error::failure(format!("matrix {} has the wrong shape", c.user)));
            }
            if c.rows.iter().any(|r| r.phases().iter().any(|&p| p >= l)) {
                return Err(Error::failure(format!("matrix {} has a phase out of range", c.user)));
            }
        }
        Ok(())
    }
}

/// `C_k` has rows `phi_q(v_k, d_m)` for `d_m` in `D`, ascending.
pub fn build_qcss(sequences: &[Z4Sequence], d: &CyclicSubset) -> Result<QcssSet> {
    if sequences.is_empty() {
        return Err(Error::invalid("sequence set is empty"));
    }
    if d.is_empty() {
        return Err(Error::invalid("shift set is empty"));
    }
    let n = sequences[0].period();
    if sequences.iter().any(|s| s.period() != n) {
        return Err(Error::invalid("sequences must share one period"));
    }
    let q = d.modulus();
    let matrices = sequences
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let rows = d
                .elements()
                .iter()
                .map(|&dm| phase_transform(v, dm as i64, q))
                .collect::<Result<Vec<_>>>()?;
            QcssMatrix::new(k, rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QcssSet {
        matrices,
        sequences: sequences.to_vec(),
        shifts: d.clone(),
        provenance: Provenance::default(),
    })
}

fn check_matrix_pair(a: &QcssMatrix, b: &QcssMatrix) -> Result<()> {
    if a.row_count() != b.row_count() || a.row_len() != b.row_len() || a.root_order() != b.root_order() {
        return Err(Error::invalid("matrix shapes differ"));
    }
    Ok(())
}

fn matrix_histogram(a: &QcssMatrix, b: &QcssMatrix, tau: usize, hist: &mut [u32]) {
    hist.iter_mut().for_each(|h| *h = 0);
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        ra.accumulate_correlation(rb, tau, hist);
    }
}

/// `R(C1, C2; tau) = sum_m R(C1_m, C2_m; tau)`.
pub fn matrix_correlation(a: &QcssMatrix, b: &QcssMatrix, tau: usize) -> Result<Complex64> {
    check_matrix_pair(a, b)?;
    if tau >= a.row_len() {
        return Err(Error::invalid(format!("shift {tau} not below N = {}", a.row_len())));
    }
    let mut hist = vec![0u32; a.root_order() as usize];
    matrix_histogram(a, b, tau, &mut hist);
    Ok(RootTable::new(a.root_order()).evaluate(&hist))
}

/// Partition of shifts used in the tolerance report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShiftClass {
    #[serde(rename = "zero")]
    Zero,
    R1,
    R2,
}

impl ShiftClass {
    pub fn of(tau: usize, q: u32) -> ShiftClass {
        if tau == 0 {
            ShiftClass::Zero
        } else if tau.is_multiple_of(q as usize) {
            ShiftClass::R2
        } else {
            ShiftClass::R1
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ShiftClass::Zero => "zero",
            ShiftClass::R1 => "R1",
            ShiftClass::R2 => "R2",
        }
    }
}

/// How the correlation sweep evaluates `R(C_k1, C_k2; tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMethod {
    /// Histogram of phase differences over every row and chip. `O(K^2 N^2 M)`.
    Naive,
    /// Splits each base-sequence correlation at the wrap point and multiplies
    /// the two partial sums by the matching exponential sums over `D`.
    /// `O(K^2 N^2 + qM)`.
    Fast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorrelationReport {
    pub delta_a: f64,
    pub delta_c: f64,
    pub delta_max: f64,
    pub lower_bound: f64,
    /// `None` when the lower bound is vacuous (`K <= M`).
    pub rho: Option<f64>,
    pub bound_vacuous: bool,
    /// Max magnitude over every ordered pair at each shift; at `tau = 0`
    /// only distinct pairs count.
    pub per_shift_max: Vec<f64>,
    pub r1_observed: f64,
    /// Nontrivial shifts `tau ≡ 0 (mod q)`, `tau != 0`.
    pub r2_observed: f64,
    /// Cross-correlations at `tau = 0`.
    pub zero_shift_cross_max: f64,
    pub factorization_gap_max: f64,
    pub method: SweepMethod,
}

#[derive(Clone)]
struct Accumulator {
    delta_a: f64,
    delta_c: f64,
    r1: f64,
    r2: f64,
    zero_cross: f64,
    gap: f64,
    per_shift: Vec<f64>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator {
            delta_a: 0.0,
            delta_c: 0.0,
            r1: 0.0,
            r2: 0.0,
            zero_cross: 0.0,
            gap: 0.0,
            per_shift: vec![0.0; n],
        }
    }

    fn merge(mut self, other: Accumulator) -> Self {
        self.delta_a = self.delta_a.max(other.delta_a);
        self.delta_c = self.delta_c.max(other.delta_c);
        self.r1 = self.r1.max(other.r1);
        self.r2 = self.r2.max(other.r2);
        self.zero_cross = self.zero_cross.max(other.zero_cross);
        self.gap = self.gap.max(other.gap);
        for (a, b) in self.per_shift.iter_mut().zip(other.per_shift) {
            *a = a.max(b);
        }
        self
    }

    /// Records `|R(C_k1, C_k2; tau)|` for the ordered pair, whose transpose
    /// `(k2, k1)` sits at shift `N - tau` with the same magnitude.
    fn record(&mut self, q: u32, same: bool, tau: usize, magnitude: f64) {
        let n = self.per_shift.len();
        let orientations = if same { 1 } else { 2 };
        for o in 0..orientations {
            let shift = if o == 0 { tau } else { (n - tau) % n };
            if same && shift == 0 {
                continue;
            }
            let slot = &mut self.per_shift[shift];
            *slot = slot.max(magnitude);
            if same {
                self.delta_a = self.delta_a.max(magnitude);
            } else {
                self.delta_c = self.delta_c.max(magnitude);
            }
            let target = match ShiftClass::of(shift, q) {
                ShiftClass::Zero => &mut self.zero_cross,
                ShiftClass::R1 => &mut self.r1,
                ShiftClass::R2 => &mut self.r2,
            };
            *target = target.max(magnitude);
        }
    }
}

/// `S(u) = sum_{d in D} xi_q^(u d)` for `u` in `0..q`.
fn exp_sums(d: &CyclicSubset) -> Vec<Complex64> {
    let q = d.modulus() as u64;
    let roots = RootTable::new(q as u32);
    (0..q)
        .map(|u| d.elements().iter().map(|&x| roots.root(u * x as u64)).sum())
        .collect()
}

/// `(A, B)`: the correlation of `a` against `b` shifted by `tau`, split into
/// chips that do not wrap (`t < N - tau`) and chips that do.
fn split_correlation(a: &[u8], b: &[u8], tau: usize) -> (Gaussian, Gaussian) {
    let n = a.len();
    let cut = n - tau;
    let mut lo = [0u32; 4];
    let mut hi = [0u32; 4];
    for (x, y) in a[..cut].iter().zip(&b[tau..]) {
        lo[(x.wrapping_sub(*y) & 3) as usize] += 1;
    }
    for (x, y) in a[cut..].iter().zip(&b[..tau]) {
        hi[(x.wrapping_sub(*y) & 3) as usize] += 1;
    }
    (Gaussian::from_counts(lo), Gaussian::from_counts(hi))
}

/// Reference sweep: [`SweepMethod::Naive`].
pub fn tolerances(set: &QcssSet) -> CorrelationReport {
    tolerances_with(set, SweepMethod::Naive)
}

/// Full correlation sweep over every pair of matrices and every shift.
///
/// The factorization gap compares each exact value against
/// `|R(v_k1, v_k2; tau)| * |sum_m xi_q^(-tau d_m)|`, the value the phase
/// ramp would give if it commuted with cyclic wrapping.
pub fn tolerances_with(set: &QcssSet, method: SweepMethod) -> CorrelationReport {
    let (k, m, n, q) = (set.k(), set.m(), set.n(), set.q());
    let sums = exp_sums(&set.shifts);
    let sum_at = |u: i64| sums[u.rem_euclid(q as i64) as usize];
    let table = RootTable::new(set.matrices[0].root_order());

    let per_row = |k1: usize| -> Accumulator {
        let mut acc = Accumulator::new(n);
        let mut hist = vec![0u32; table.order() as usize];
        let v1 = set.sequences[k1].symbols();
        for k2 in k1..k {
            let v2 = set.sequences[k2].symbols();
            for tau in 0..n {
                let same = k1 == k2;
                if same && tau == 0 {
                    continue;
                }
                let (lo, hi) = split_correlation(v1, v2, tau);
                let value = match method {
                    SweepMethod::Naive => {
                        matrix_histogram(&set.matrices[k1], &set.matrices[k2], tau, &mut hist);
                        table.evaluate(&hist)
                    }
                    SweepMethod::Fast => {
                        lo.to_complex() * sum_at(-(tau as i64))
                            + hi.to_complex() * sum_at(n as i64 - tau as i64)
                    }
                };
                let magnitude = value.norm();
                acc.record(q, same, tau, magnitude);
                let base = (lo + hi).abs();
                let forward = (magnitude - base * sum_at(-(tau as i64)).norm()).abs();
                let reverse_shift = (n - tau) % n;
                let reverse = (magnitude - base * sum_at(-(reverse_shift as i64)).norm()).abs();
                acc.gap = acc.gap.max(forward).max(if same { 0.0 } else { reverse });
            }
        }
        acc
    };

    #[cfg(feature = "parallel")]
    let acc = (0..k)
        .into_par_iter()
        .map(per_row)
        .reduce(|| Accumulator::new(n), Accumulator::merge);
    #[cfg(not(feature = "parallel"))]
    let acc = (0..k).map(per_row).fold(Accumulator::new(n), Accumulator::merge);

    let delta_max = acc.delta_a.max(acc.delta_c);
    let lower_bound = welch_lower_bound(k, m, n);
    let bound_vacuous = lower_bound <= 0.0;
    CorrelationReport {
        delta_a: acc.delta_a,
        delta_c: acc.delta_c,
        delta_max,
        lower_bound,
        rho: (!bound_vacuous).then(|| delta_max / lower_bound),
        bound_vacuous,
        per_shift_max: acc.per_shift,
        r1_observed: acc.r1,
        r2_observed: acc.r2,
        zero_shift_cross_max: acc.zero_cross,
        factorization_gap_max: acc.gap,
        method,
    }
}

/// Largest difference between two reports over every reported maximum.
pub fn report_discrepancy(a: &CorrelationReport, b: &CorrelationReport) -> f64 {
    let scalars = [
        (a.delta_a, b.delta_a),
        (a.delta_c, b.delta_c),
        (a.delta_max, b.delta_max),
        (a.r1_observed, b.r1_observed),
        (a.r2_observed, b.r2_observed),
        (a.zero_shift_cross_max, b.zero_shift_cross_max),
        (a.factorization_gap_max, b.factorization_gap_max),
    ];
    let shifts = a.per_shift_max.iter().zip(&b.per_shift_max).map(|(x, y)| (*x, *y));
    let len_mismatch = if a.per_shift_max.len() == b.per_shift_max.len() { 0.0 } else { f64::INFINITY };
    scalars
        .into_iter()
        .chain(shifts)
        .map(|(x, y)| (x - y).abs())
        .fold(len_mismatch, f64::max)
}

/// `M N sqrt((K/M - 1) / (K N - 1))`; zero when `K <= M`.
pub fn welch_lower_bound(k: usize, m: usize, n: usize) -> f64 {
    welch_lower_bound_real(k as f64, m as f64, n as f64)
}

/// [`welch_lower_bound`] over reals, for parameters too large for `usize`
/// products.
pub fn welch_lower_bound_real(k: f64, m: f64, n: f64) -> f64 {
    if m <= 0.0 || k <= m || k * n <= 1.0 {
        return 0.0;
    }
    m * n * ((k / m - 1.0) / (k * n - 1.0)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Optimality {
    #[serde(rename = "optimal")]
    Optimal,
    #[serde(rename = "near-optimal")]
    NearOptimal,
    #[serde(rename = "loose")]
    Loose,
}

impl Optimality {
    pub fn from_rho(rho: f64) -> Self {
        if (rho - 1.0).abs() <= OPTIMAL_TOLERANCE {
            Optimality::Optimal
        } else if rho > 1.0 && rho <= 2.0 {
            Optimality::NearOptimal
        } else {
            Optimality::Loose
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Optimality::Optimal => "optimal",
            Optimality::NearOptimal => "near-optimal",
            Optimality::Loose => "loose",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tightness {
    pub rho: f64,
    pub optimality: Optimality,
}

/// `rho = delta_max / welch_lower_bound(K, M, N)`.
pub fn tightness(delta_max: f64, k: usize, m: usize, n: usize) -> Result<Tightness> {
    let bound = welch_lower_bound(k, m, n);
    if bound <= 0.0 {
        return Err(Error::UndefinedTightness { k, m });
    }
    let rho = delta_max / bound;
    Ok(Tightness { rho, optimality: Optimality::from_rho(rho) })
}

/// `|sum_m xi_q^(-tau d_m)|`, the ramp factor of the product form.
pub fn ramp_factor(d: &CyclicSubset, tau: i64) -> f64 {
    let q = d.modulus() as f64;
    d.elements()
        .iter()
        .map(|&x| Complex64::from_polar(1.0, -TAU * (tau as f64) * x as f64 / q))
        .sum::<Complex64>()
        .norm()
}

/// Correlation of the base sequences, for diagnostics.
pub fn base_correlation(set: &QcssSet, k1: usize, k2: usize, tau: usize) -> Result<Gaussian> {
    z4::correlation(&set.sequences[k1], &set.sequences[k2], tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffset::{lift_ads_to_z4f, singer_ds, CosetPattern};
    use crate::z4::{build_family_a, subset_l};

    #[test]
    fn welch_examples() {
        // 169 * 961 * (19 / 13) / 991 = 239.52...
        let oracle = (169.0 * 961.0 * (19.0 / 13.0) / 991.0f64).sqrt();
        assert!((welch_lower_bound(32, 13, 31) - oracle).abs() < 1e-12);
        assert!((welch_lower_bound(32, 13, 31) - 15.477).abs() < 1e-3);
        for (k, n) in [(9usize, 7usize), (17, 15)] {
            let remark = n as f64 * ((k as f64 - 1.0) / (k as f64 * n as f64 - 1.0)).sqrt();
            assert!((welch_lower_bound(k, 1, n) - remark).abs() < 1e-12);
        }
        assert_eq!(welch_lower_bound(13, 13, 31), 0.0);
        assert_eq!(welch_lower_bound(5, 13, 31), 0.0);
    }

    #[test]
    fn tightness_examples() {
        let b = welch_lower_bound(32, 13, 31);
        let t = tightness(b, 32, 13, 31).unwrap();
        assert!((t.rho - 1.0).abs() < 1e-12);
        assert_eq!(t.optimality, Optimality::Optimal);
        assert_eq!(tightness(1.5 * b, 32, 13, 31).unwrap().optimality, Optimality::NearOptimal);
        assert_eq!(tightness(2.0 * b, 32, 13, 31).unwrap().optimality, Optimality::NearOptimal);
        assert_eq!(tightness(2.5 * b, 32, 13, 31).unwrap().optimality, Optimality::Loose);
        let claimed = (1.0 + 2f64.powf(2.5)) * 29f64.sqrt();
        assert!((tightness(claimed, 32, 13, 31).unwrap().rho - 2.316).abs() < 1e-3);
        assert!(matches!(tightness(1.0, 4, 4, 7), Err(Error::UndefinedTightness { .. })));
    }

    fn theorem_set(n: u32, k: u32) -> QcssSet {
        let family = build_family_a(n).unwrap();
        let l = subset_l(&family).unwrap();
        let u = lift_ads_to_z4f(&singer_ds(k).unwrap(), &CosetPattern::CANONICAL).unwrap();
        build_qcss(&l, &u).unwrap()
    }

    #[test]
    fn build_shapes() {
        let set = theorem_set(5, 3);
        assert_eq!((set.k(), set.m(), set.n(), set.q()), (32, 13, 31, 28));
        set.check_shape().unwrap();
        for c in set.matrices() {
            for r in c.rows() {
                assert!(r.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            }
        }
        assert!(build_qcss(&[], set.shifts()).is_err());
        let empty = CyclicSubset::new(28, vec![]).unwrap();
        assert!(build_qcss(set.sequences(), &empty).is_err());
    }

    #[test]
    fn matrix_correlation_examples() {
        let set = theorem_set(5, 3);
        let c = set.matrices();
        let r = matrix_correlation(&c[4], &c[4], 0).unwrap();
        assert!((r - Complex64::new(13.0 * 31.0, 0.0)).norm() < 1e-9);
        for k2 in 1..32 {
            let r = matrix_correlation(&c[0], &c[k2], 0).unwrap();
            assert!((r - Complex64::new(-13.0, 0.0)).norm() < 1e-9);
        }
        assert!(matrix_correlation(&c[0], &c[1], 31).is_err());
    }

    #[test]
    fn fast_matches_naive() {
        let set = theorem_set(4, 2);
        let a = tolerances_with(&set, SweepMethod::Naive);
        let b = tolerances_with(&set, SweepMethod::Fast);
        assert!(report_discrepancy(&a, &b) < 1e-9);
        assert!(a.delta_max >= a.lower_bound - 1e-6);
        assert_eq!(a.delta_max, a.delta_a.max(a.delta_c));
    }

    #[test]
    fn single_matrix_toy() {
        let family = build_family_a(3).unwrap();
        let one = vec![family.members()[0].clone()];
        let d = CyclicSubset::new(1, vec![0]).unwrap();
        let set = build_qcss(&one, &d).unwrap();
        let rep = tolerances(&set);
        assert!((rep.delta_a - 1.0).abs() < 1e-9);
        assert_eq!(rep.delta_c, 0.0);
        assert!(rep.bound_vacuous);
        assert!(rep.rho.is_none());
        assert_eq!(rep.per_shift_max[0], 0.0);
    }

    #[test]
    fn shift_classes() {
        assert_eq!(ShiftClass::of(0, 28), ShiftClass::Zero);
        assert_eq!(ShiftClass::of(28, 28), ShiftClass::R2);
        assert_eq!(ShiftClass::of(5, 28), ShiftClass::R1);
    }
}
