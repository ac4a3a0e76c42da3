//! Cyclic difference sets, almost difference sets and their exponential sums.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binary;
use crate::phase::RootTable;
use crate::{Error, Result};

/// Largest `f` accepted by [`find_canonical_pattern`].
pub const MAX_PATTERN_SEARCH_F: u32 = 31;

/// A subset of `Z_q`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSubset {
    modulus: u32,
    elements: Vec<u32>,
}

impl CyclicSubset {
    pub fn new(modulus: u32, mut elements: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if let Some(&e) = elements.iter().find(|&&e| e >= modulus) {
            return Err(Error::invalid(format!("element {e} not in Z_{modulus}")));
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("elements must be distinct"));
        }
        Ok(CyclicSubset { modulus, elements })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn indicator(&self) -> Vec<bool> {
        let mut ind = vec![false; self.modulus as usize];
        for &e in &self.elements {
            ind[e as usize] = true;
        }
        ind
    }

    pub fn complement(&self) -> CyclicSubset {
        let ind = self.indicator();
        CyclicSubset {
            modulus: self.modulus,
            elements: (0..self.modulus).filter(|&x| !ind[x as usize]).collect(),
        }
    }

    /// `{d - delta mod q : d in D}`.
    pub fn translate_down(&self, delta: u32) -> CyclicSubset {
        let q = self.modulus;
        let mut elements: Vec<u32> = self
            .elements
            .iter()
            .map(|&d| (d + q - delta % q) % q)
            .collect();
        elements.sort_unstable();
        CyclicSubset { modulus: q, elements }
    }

    /// `d_D(x) = |(D + x) ∩ D|`.
    pub fn difference_function(&self, x: u32) -> Result<u32> {
        if x >= self.modulus {
            return Err(Error::invalid(format!("shift {x} not in Z_{}", self.modulus)));
        }
        Ok(self.difference_counts_with(&self.indicator(), x))
    }

    fn difference_counts_with(&self, ind: &[bool], x: u32) -> u32 {
        let q = self.modulus;
        self.elements
            .iter()
            .filter(|&&d| ind[((d + x) % q) as usize])
            .count() as u32
    }

    /// `d_D(x)` for every `x` in `Z_q`.
    pub fn difference_profile(&self) -> Vec<u32> {
        let ind = self.indicator();
        (0..self.modulus)
            .map(|x| self.difference_counts_with(&ind, x))
            .collect()
    }

    pub fn classify(&self) -> SetClassification {
        classify_set(self)
    }
}

impl fmt::Display for CyclicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        write!(f, "{{{}}} mod {}", items.join(","), self.modulus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetKind {
    DifferenceSet,
    AlmostDifferenceSet,
    Neither,
}

/// Parameters `(P, M, lambda, t)` of a classified subset.
///
/// For `Neither`, `lambda` is the smallest nonzero-shift level and `t` the
/// number of shifts attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetClassification {
    pub kind: SetKind,
    #[serde(rename = "P")]
    pub p: u32,
    #[serde(rename = "M")]
    pub m: u32,
    pub lambda: u32,
    pub t: u32,
}

impl SetClassification {
    pub fn params(&self) -> (u32, u32, u32, u32) {
        (self.p, self.m, self.lambda, self.t)
    }
}

impl fmt::Display for SetClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.m, self.lambda, self.t)
    }
}

pub fn difference_function(d: &CyclicSubset, x: u32) -> Result<u32> {
    d.difference_function(x)
}

/// Classifies `D` by the level set of `d_D(x)` over `x != 0`.
pub fn classify_set(d: &CyclicSubset) -> SetClassification {
    let profile = d.difference_profile();
    let nonzero = &profile[1..];
    let (p, m) = (d.modulus(), d.len() as u32);
    let Some(&lambda) = nonzero.iter().min() else {
        return SetClassification { kind: SetKind::DifferenceSet, p, m, lambda: 0, t: 0 };
    };
    let max = *nonzero.iter().max().expect("nonempty");
    let t = nonzero.iter().filter(|&&v| v == lambda).count() as u32;
    let kind = match max - lambda {
        0 => SetKind::DifferenceSet,
        1 => SetKind::AlmostDifferenceSet,
        _ => SetKind::Neither,
    };
    SetClassification { kind, p, m, lambda, t }
}

/// Zero positions of the m-sequence of period `2^k - 1` from the built-in
/// primitive polynomial of degree `k` started in the all-ones state.
pub fn singer_ds(k: u32) -> Result<CyclicSubset> {
    if k < 2 {
        return Err(Error::invalid(format!("Singer difference set needs k >= 2, got {k}")));
    }
    let h = binary::primitive_polynomial(k).ok_or_else(|| {
        Error::Configuration(format!("no built-in primitive polynomial of degree {k}"))
    })?;
    let seq = binary::generate_m_sequence(&h, &vec![1; k as usize])?;
    let zeros = seq
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 0)
        .map(|(i, _)| i as u32)
        .collect();
    CyclicSubset::new((1 << k) - 1, zeros)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Quadratic residues modulo a prime `f ≡ 3 (mod 4)`.
pub fn legendre_ds(f: u32) -> Result<CyclicSubset> {
    if !is_prime(f) {
        return Err(Error::invalid(format!("{f} is not prime")));
    }
    if f % 4 != 3 {
        return Err(Error::invalid(format!("{f} is not congruent to 3 mod 4")));
    }
    let mut residues: Vec<u32> = (1..f).map(|x| ((x as u64 * x as u64) % f as u64) as u32).collect();
    residues.sort_unstable();
    residues.dedup();
    CyclicSubset::new(f, residues)
}

/// Which base difference set feeds the `Z_{4f}` lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DsKind {
    /// Requires `f = 2^k - 1`.
    Singer,
    /// Requires `f` prime, `f ≡ 3 (mod 4)`.
    Legendre,
}

impl DsKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DsKind::Singer => "singer",
            DsKind::Legendre => "legendre",
        }
    }

    /// The `(f, (f-1)/2, (f-3)/4)` difference set of this kind.
    pub fn difference_set(self, f: u32) -> Result<CyclicSubset> {
        match self {
            DsKind::Singer => {
                let k = (f + 1).trailing_zeros();
                if f < 3 || (f + 1) != 1 << k {
                    return Err(Error::invalid(format!("Singer sets need f = 2^k - 1, got {f}")));
                }
                singer_ds(k)
            }
            DsKind::Legendre => legendre_ds(f),
        }
    }

    /// Difference set followed by the canonical lift.
    pub fn almost_difference_set(self, f: u32) -> Result<CyclicSubset> {
        lift_ads_to_z4f(&self.difference_set(f)?, &CosetPattern::CANONICAL)
    }
}

impl std::str::FromStr for DsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singer" => Ok(DsKind::Singer),
            "legendre" => Ok(DsKind::Legendre),
            _ => Err(Error::invalid(format!("unknown difference set kind {s:?}"))),
        }
    }
}

/// One of the four translates of `W` a coset piece may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PieceSet {
    #[serde(rename = "W")]
    Base,
    #[serde(rename = "W*")]
    Complement,
    #[serde(rename = "W-delta")]
    Shifted,
    #[serde(rename = "(W-delta)*")]
    ShiftedComplement,
}

impl PieceSet {
    pub const ALL: [PieceSet; 4] = [
        PieceSet::Base,
        PieceSet::Complement,
        PieceSet::Shifted,
        PieceSet::ShiftedComplement,
    ];

    fn is_complement(self) -> bool {
        matches!(self, PieceSet::Complement | PieceSet::ShiftedComplement)
    }
}

/// Piece `{(f + 1) s + offset * f mod 4f : s in set}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub set: PieceSet,
    /// Offset as a multiple of `f`, in `0..4`.
    pub offset: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetPattern {
    pub pieces: [Piece; 4],
    pub delta: u32,
}

impl CosetPattern {
    /// `W` on offsets `0, f, 2f` and `W*` on `3f`; the least pattern found
    /// by [`find_canonical_pattern`] for `f = 7, 11, 15`.
    pub const CANONICAL: CosetPattern = CosetPattern {
        pieces: [
            Piece { set: PieceSet::Base, offset: 0 },
            Piece { set: PieceSet::Base, offset: 1 },
            Piece { set: PieceSet::Base, offset: 2 },
            Piece { set: PieceSet::Complement, offset: 3 },
        ],
        delta: 0,
    };

    fn validate(&self) -> Result<()> {
        let mut seen = [false; 4];
        for p in &self.pieces {
            if p.offset > 3 {
                return Err(Error::PatternInvalid(format!("offset {} not in 0..4", p.offset)));
            }
            if std::mem::replace(&mut seen[p.offset as usize], true) {
                return Err(Error::PatternInvalid(format!("offset {} used twice", p.offset)));
            }
        }
        Ok(())
    }
}

/// Union of the four coset pieces, without any size or classification check.
pub fn assemble_pattern(w: &CyclicSubset, pattern: &CosetPattern) -> Result<CyclicSubset> {
    pattern.validate()?;
    let f = w.modulus();
    let q = 4 * f;
    let shifted = w.translate_down(pattern.delta);
    let mut elements = Vec::with_capacity(2 * f as usize);
    for piece in &pattern.pieces {
        let source = match piece.set {
            PieceSet::Base => w.clone(),
            PieceSet::Complement => w.complement(),
            PieceSet::Shifted => shifted.clone(),
            PieceSet::ShiftedComplement => shifted.complement(),
        };
        let o = piece.offset as u64 * f as u64;
        elements.extend(
            source
                .elements()
                .iter()
                .map(|&s| ((f as u64 + 1) * s as u64 + o) % q as u64)
                .map(|v| v as u32),
        );
    }
    elements.sort_unstable();
    elements.dedup();
    CyclicSubset::new(q, elements)
}

fn check_lift_input(w: &CyclicSubset) -> Result<u32> {
    let f = w.modulus();
    if f % 4 != 3 {
        return Err(Error::invalid(format!("f = {f} is not congruent to 3 mod 4")));
    }
    let c = classify_set(w);
    let expected = (f, (f - 1) / 2, (f - 3) / 4, f - 1);
    if c.kind != SetKind::DifferenceSet || c.params() != expected {
        return Err(Error::invalid(format!(
            "W must be an ({f},{},{}) difference set, measured {c:?}",
            (f - 1) / 2,
            (f - 3) / 4
        )));
    }
    Ok(f)
}

fn expected_ads(f: u32) -> (u32, u32, u32, u32) {
    (4 * f, 2 * f - 1, f - 2, f - 1)
}

/// Lifts an `(f, (f-1)/2, (f-3)/4)` difference set to a
/// `(4f, 2f-1, f-2, f-1)` almost difference set of `Z_{4f}`.
pub fn lift_ads_to_z4f(w: &CyclicSubset, pattern: &CosetPattern) -> Result<CyclicSubset> {
    let f = check_lift_input(w)?;
    let u = assemble_pattern(w, pattern)?;
    if u.len() != (2 * f - 1) as usize {
        return Err(Error::PatternInvalid(format!(
            "union has {} elements, expected {}",
            u.len(),
            2 * f - 1
        )));
    }
    let c = classify_set(&u);
    if c.kind != SetKind::AlmostDifferenceSet || c.params() != expected_ads(f) {
        return Err(Error::ConstructionFailure {
            reason: format!("lift classified as {c}, expected {:?}", expected_ads(f)),
            witness: None,
            measured: Some(c),
        });
    }
    Ok(u)
}

/// Exhaustive search for the least pattern (by piece sets in offset order,
/// then `delta`) whose lift is a `(4f, 2f-1, f-2, f-1)` ADS.
pub fn find_canonical_pattern(w: &CyclicSubset) -> Result<CosetPattern> {
    let f = check_lift_input(w)?;
    if f > MAX_PATTERN_SEARCH_F {
        return Err(Error::invalid(format!(
            "pattern search limited to f <= {MAX_PATTERN_SEARCH_F}"
        )));
    }
    let sets = PieceSet::ALL;
    for a in sets {
        for b in sets {
            for c in sets {
                for d in sets {
                    let choice = [a, b, c, d];
                    // three (f-1)/2 pieces and one (f+1)/2 piece
                    if choice.iter().filter(|s| s.is_complement()).count() != 1 {
                        continue;
                    }
                    let uses_delta = choice
                        .iter()
                        .any(|s| matches!(s, PieceSet::Shifted | PieceSet::ShiftedComplement));
                    let deltas = if uses_delta { 0..f } else { 0..1 };
                    for delta in deltas {
                        let pattern = CosetPattern {
                            pieces: std::array::from_fn(|i| Piece { set: choice[i], offset: i as u8 }),
                            delta,
                        };
                        let u = assemble_pattern(w, &pattern)?;
                        if u.len() != (2 * f - 1) as usize {
                            continue;
                        }
                        let cl = classify_set(&u);
                        if cl.kind == SetKind::AlmostDifferenceSet && cl.params() == expected_ads(f) {
                            return Ok(pattern);
                        }
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(f))
}

/// Magnitudes `Delta(tau) = |sum_{d in D} xi_q^(tau d)|` for every `tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpSumProfile {
    pub q: u32,
    pub values: Vec<f64>,
    /// `lemma5_bound` of the set's classification, when it is an ADS.
    pub bound: Option<f64>,
}

impl ExpSumProfile {
    /// Largest `Delta(tau)` over `tau != 0 mod q`.
    pub fn max_nontrivial(&self) -> f64 {
        self.values[1..].iter().copied().fold(0.0, f64::max)
    }
}

/// Computes the exponential-sum profile. Each sum is evaluated from the
/// histogram of exponents `tau * d mod q`, so it is an exact sum of `q`-th
/// roots of unity up to the final floating-point evaluation.
pub fn exp_sum_profile(d: &CyclicSubset) -> ExpSumProfile {
    let q = d.modulus();
    let roots = RootTable::new(q);
    let mut hist = vec![0u32; q as usize];
    let values = (0..q as u64)
        .map(|tau| {
            hist.iter_mut().for_each(|h| *h = 0);
            for &e in d.elements() {
                hist[((tau * e as u64) % q as u64) as usize] += 1;
            }
            roots.evaluate(&hist).norm()
        })
        .collect();
    let c = classify_set(d);
    ExpSumProfile {
        q,
        values,
        bound: lemma5_bound(&c).ok(),
    }
}

/// `sqrt(P + M - lambda - t - 1)` for an almost difference set.
pub fn lemma5_bound(c: &SetClassification) -> Result<f64> {
    if c.kind != SetKind::AlmostDifferenceSet {
        return Err(Error::invalid(format!("{c} is not an almost difference set")));
    }
    let radicand = c.p as f64 + c.m as f64 - c.lambda as f64 - c.t as f64 - 1.0;
    Ok(radicand.sqrt())
}
