//! Sequences over `Z4`: the Graeffe lift of a primitive binary polynomial,
//! the `Z4` linear recurrence it defines, and the quaternary Family A.

use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::binary::{self, BinaryPolynomial};
use crate::gaussian::Gaussian;
use crate::{Error, Result};

/// Largest degree for which [`build_family_a_from`] will enumerate the
/// `4^n - 1` nonzero recurrence states.
pub const MAX_FAMILY_DEGREE: u32 = 14;

/// Monic polynomial over `Z4`, coefficients low-to-high.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z4Polynomial {
    coeffs: Vec<u8>,
}

impl Z4Polynomial {
    pub fn new(coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::invalid("Z4 polynomial must have degree >= 1"));
        }
        if coeffs.iter().any(|&c| c > 3) {
            return Err(Error::invalid("Z4 coefficients must lie in 0..4"));
        }
        if coeffs.last() != Some(&1) {
            return Err(Error::invalid("Z4 polynomial must be monic"));
        }
        Ok(Z4Polynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn reduce_mod2(&self) -> BinaryPolynomial {
        let bits = self
            .coeffs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i));
        // monic, so the mod-2 image keeps its degree
        BinaryPolynomial::from_bits(bits).expect("monic lift reduces to a nonzero polynomial")
    }

    /// Remainder of `dividend` (low-to-high, residues mod 4) by `self`.
    pub fn remainder(&self, dividend: &[u8]) -> Vec<u8> {
        let n = self.degree();
        let mut r: Vec<u8> = dividend.iter().map(|&c| c & 3).collect();
        if r.len() <= n {
            r.resize(n, 0);
            return r;
        }
        for top in (n..r.len()).rev() {
            let lead = r[top];
            if lead == 0 {
                continue;
            }
            let shift = top - n;
            for (j, &c) in self.coeffs.iter().enumerate() {
                r[shift + j] = (r[shift + j] + 4 - (lead * c) % 4) % 4;
            }
        }
        r.truncate(n);
        r
    }

    /// Whether `self` divides `x^e - 1` over `Z4`.
    pub fn divides_x_pow_minus_one(&self, e: usize) -> bool {
        let mut dividend = vec![0u8; e + 1];
        dividend[0] = 3;
        dividend[e] = 1;
        self.remainder(&dividend).iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Z4Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn poly_square(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; 2 * p.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in p.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Lifts a primitive binary polynomial `h` to the basic primitive polynomial
/// `f` over `Z4` with `f mod 2 = h` and `f | x^(2^n - 1) - 1`.
///
/// Writes `h = e + o` (even and odd powers) and sets
/// `f(x^2) = ±(e(x)^2 - o(x)^2) mod 4`, with the sign that makes `f` monic.
pub fn graeffe_lift(h: &BinaryPolynomial) -> Result<Z4Polynomial> {
    if !h.has_maximal_order() {
        return Err(Error::invalid(format!("{h} is not primitive")));
    }
    let n = h.degree() as usize;
    let c = h.coefficients();
    let even: Vec<i64> = (0..=n).map(|i| if i % 2 == 0 { c[i] as i64 } else { 0 }).collect();
    let odd: Vec<i64> = (0..=n).map(|i| if i % 2 == 1 { c[i] as i64 } else { 0 }).collect();
    let e2 = poly_square(&even);
    let o2 = poly_square(&odd);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let coeffs: Vec<u8> = (0..=n)
        .map(|j| (sign * (e2[2 * j] - o2[2 * j])).rem_euclid(4) as u8)
        .collect();
    let f = Z4Polynomial::new(coeffs)?;
    let period = (1usize << n) - 1;
    if f.reduce_mod2() != *h || !f.divides_x_pow_minus_one(period) {
        return Err(Error::failure(format!(
            "lift {f} of {h} does not divide x^{period} - 1"
        )));
    }
    Ok(f)
}

/// A periodic sequence over `Z4`, stored as one period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z4Sequence {
    symbols: Vec<u8>,
}

impl Z4Sequence {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("sequence must be nonempty"));
        }
        if symbols.iter().any(|&s| s > 3) {
            return Err(Error::invalid("Z4 symbols must lie in 0..4"));
        }
        Ok(Z4Sequence { symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    /// The sequence `t -> s(t + k)`.
    pub fn rotated(&self, k: usize) -> Z4Sequence {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(k % self.period());
        Z4Sequence { symbols }
    }

    /// All symbols lie in `{0, 2}`.
    pub fn is_doubled_binary(&self) -> bool {
        self.symbols.iter().all(|&s| s & 1 == 0)
    }

    pub fn reduce_mod2(&self) -> Vec<u8> {
        self.symbols.iter().map(|&s| s & 1).collect()
    }

    /// Smallest `p` with `s(t + p) = s(t)` for all `t`.
    pub fn minimal_period(&self) -> usize {
        let n = self.period();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (0..n).all(|t| self.symbols[t] == self.symbols[(t + p) % n]))
            .unwrap_or(n)
    }
}

/// Periodic correlation `sum_t i^(a_t - b_(t + tau))` of two `Z4` sequences.
pub fn correlation(a: &Z4Sequence, b: &Z4Sequence, tau: usize) -> Result<Gaussian> {
    if a.period() != b.period() {
        return Err(Error::invalid(format!(
            "period mismatch: {} vs {}",
            a.period(),
            b.period()
        )));
    }
    Ok(correlation_unchecked(&a.symbols, &b.symbols, tau))
}

pub(crate) fn correlation_unchecked(a: &[u8], b: &[u8], tau: usize) -> Gaussian {
    let n = a.len();
    let tau = tau % n;
    let mut counts = [0u32; 4];
    let (head, tail) = b.split_at(tau);
    for (x, y) in a.iter().zip(tail.iter().chain(head.iter())) {
        counts[(x.wrapping_sub(*y) & 3) as usize] += 1;
    }
    Gaussian::from_counts(counts)
}

/// Runs `s(t+n) = -(c_{n-1} s(t+n-1) + ... + c_0 s(t)) mod 4` for `2^n - 1`
/// steps, where `f = x^n + sum c_j x^j`.
pub fn run_z4_recurrence(f: &Z4Polynomial, init: &[u8]) -> Result<Z4Sequence> {
    let n = f.degree();
    if init.len() != n {
        return Err(Error::invalid(format!(
            "initial state has {} symbols, expected {n}",
            init.len()
        )));
    }
    if init.iter().any(|&s| s > 3) {
        return Err(Error::invalid("initial symbols must lie in 0..4"));
    }
    if init.iter().all(|&s| s == 0) {
        return Err(Error::invalid("all-zero initial state gives the zero solution"));
    }
    if n as u32 > binary::MAX_DEGREE {
        return Err(Error::invalid("degree too large"));
    }
    let len = (1usize << n) - 1;
    Ok(Z4Sequence {
        symbols: recurrence_symbols(f.coefficients(), init, len.max(n)),
    })
}

fn recurrence_symbols(coeffs: &[u8], init: &[u8], len: usize) -> Vec<u8> {
    let n = init.len();
    let mut s = Vec::with_capacity(len);
    s.extend_from_slice(init);
    while s.len() < len {
        let t = s.len() - n;
        let acc: u32 = (0..n).map(|j| coeffs[j] as u32 * s[t + j] as u32).sum();
        s.push(((4 - acc % 4) % 4) as u8);
    }
    s.truncate(len);
    s
}

/// The quaternary Family A: `2^n + 1` cyclically inequivalent nonzero
/// solutions of the `Z4` recurrence, with `members[0] = l_0` (the doubled
/// binary m-sequence) and `members[1..]` forming the subset `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyA {
    n: u32,
    generator: Z4Polynomial,
    members: Vec<Z4Sequence>,
}

impl FamilyA {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generator(&self) -> &Z4Polynomial {
        &self.generator
    }

    pub fn members(&self) -> &[Z4Sequence] {
        &self.members
    }

    pub fn period(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// Reassembles a family from stored parts and re-validates it: member
    /// count, periods, recurrence, cyclic inequivalence, `l_0` shape and the
    /// zero-shift property of `L`.
    pub fn from_parts(n: u32, generator: Z4Polynomial, members: Vec<Z4Sequence>) -> Result<Self> {
        if generator.degree() != n as usize {
            return Err(Error::invalid("generator degree does not match n"));
        }
        check_family_degree(n)?;
        let period = (1usize << n) - 1;
        if members.len() != (1 << n) + 1 {
            return Err(Error::invalid(format!(
                "expected {} members, found {}",
                (1 << n) + 1,
                members.len()
            )));
        }
        let c = generator.coefficients();
        let mut visited = StateSet::new(n);
        for (k, m) in members.iter().enumerate() {
            if m.period() != period {
                return Err(Error::invalid(format!("member {k} has wrong period")));
            }
            let s = m.symbols();
            let nn = n as usize;
            for t in 0..period {
                let acc: u32 = (0..nn).map(|j| c[j] as u32 * s[(t + j) % period] as u32).sum();
                if !(s[(t + nn) % period] as u32 + acc).is_multiple_of(4) {
                    return Err(Error::invalid(format!("member {k} violates the recurrence")));
                }
            }
            if visited.mark_orbit(s) != period {
                return Err(Error::invalid(format!(
                    "member {k} repeats a cyclic shift of another member"
                )));
            }
        }
        if !members[0].is_doubled_binary() {
            return Err(Error::invalid("members[0] is not l_0"));
        }
        let family = FamilyA { n, generator, members };
        subset_l(&family)?;
        Ok(family)
    }
}

fn check_family_degree(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("Family A needs n >= 2, got {n}")));
    }
    if n > MAX_FAMILY_DEGREE {
        return Err(Error::ResourceCap(format!(
            "n = {n} exceeds the enumeration bound {MAX_FAMILY_DEGREE}"
        )));
    }
    Ok(())
}

/// Bitmap over recurrence states, each state the base-4 word of an
/// `n`-symbol window.
struct StateSet {
    n: usize,
    bits: Vec<u64>,
}

impl StateSet {
    fn new(n: u32) -> Self {
        let states = 1usize << (2 * n);
        StateSet {
            n: n as usize,
            bits: vec![0; states.div_ceil(64)],
        }
    }

    fn contains(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Marks every window of the periodic sequence, returning how many
    /// were not already marked.
    fn mark_orbit(&mut self, s: &[u8]) -> usize {
        let len = s.len();
        let mut fresh = 0;
        for t in 0..len {
            let idx = (0..self.n).fold(0usize, |acc, i| acc | (s[(t + i) % len] as usize) << (2 * i));
            let (w, b) = (idx / 64, idx % 64);
            if self.bits[w] >> b & 1 == 0 {
                self.bits[w] |= 1 << b;
                fresh += 1;
            }
        }
        fresh
    }
}

/// Builds Family A of degree `n` from the built-in primitive polynomial.
pub fn build_family_a(n: u32) -> Result<FamilyA> {
    check_family_degree(n)?;
    let h = binary::primitive_polynomial(n).ok_or_else(|| {
        Error::Configuration(format!(
            "no built-in primitive polynomial of degree {n}; supply one explicitly"
        ))
    })?;
    build_family_a_from(&h)
}

/// Builds Family A from a supplied primitive binary polynomial.
///
/// Enumerates every nonzero recurrence state, keeping one representative per
/// cyclic class in discovery order (`l_0` moved to the front). Each class
/// other than `members[1]` is then rotated so that its correlation with
/// `members[1]` at shift 0 is `-1`; among such rotations the one with the
/// same mod-2 image as `members[1]` is preferred.
pub fn build_family_a_from(h: &BinaryPolynomial) -> Result<FamilyA> {
    let n = h.degree();
    check_family_degree(n)?;
    let generator = graeffe_lift(h)?;
    let period = (1usize << n) - 1;
    let nn = n as usize;

    let mut visited = StateSet::new(n);
    let mut classes: Vec<Z4Sequence> = Vec::new();
    for idx in 1..(1usize << (2 * n)) {
        if visited.contains(idx) {
            continue;
        }
        let init: Vec<u8> = (0..nn).map(|i| ((idx >> (2 * i)) & 3) as u8).collect();
        let symbols = recurrence_symbols(generator.coefficients(), &init, period);
        let fresh = visited.mark_orbit(&symbols);
        if fresh != period {
            return Err(Error::failure(format!(
                "cyclic class of state {idx} has {fresh} shifts, expected {period}"
            )));
        }
        classes.push(Z4Sequence { symbols });
    }
    if classes.len() != (1 << n) + 1 {
        return Err(Error::failure(format!(
            "found {} cyclic classes, expected {}",
            classes.len(),
            (1 << n) + 1
        )));
    }
    let l0_pos = classes
        .iter()
        .position(Z4Sequence::is_doubled_binary)
        .ok_or_else(|| Error::failure("no class with symbols in {0, 2}"))?;
    let l0 = classes.remove(l0_pos);

    let reference = classes[0].clone();
    let ref_bits = reference.reduce_mod2();
    let mut window_pos = vec![usize::MAX; 1 << nn];
    for p in 0..period {
        let w = (0..nn).fold(0usize, |acc, i| acc | (ref_bits[(p + i) % period] as usize) << i);
        window_pos[w] = p;
    }

    let mut members = Vec::with_capacity(classes.len() + 1);
    members.push(l0);
    members.push(reference.clone());
    for (j, class) in classes.iter().enumerate().skip(1) {
        let bits = class.reduce_mod2();
        let w = (0..nn).fold(0usize, |acc, i| acc | (bits[i] as usize) << i);
        let preferred = window_pos
            .get(w)
            .filter(|&&p| p != usize::MAX)
            .map(|&p| (period - p) % period);
        let is_minus_one = |tau: usize| {
            correlation_unchecked(reference.symbols(), class.symbols(), tau) == Gaussian::new(-1, 0)
        };
        let shift = preferred
            .filter(|&tau| is_minus_one(tau))
            .or_else(|| (0..period).find(|&tau| is_minus_one(tau)))
            .ok_or(Error::ConstructionFailure {
                reason: "no rotation of this class correlates to -1 with members[1]".into(),
                witness: Some((1, j + 1)),
                measured: None,
            })?;
        members.push(class.rotated(shift));
    }

    let family = FamilyA { n, generator, members };
    subset_l(&family)?;
    Ok(family)
}

/// The subset `L = members[1..]`, after checking that every pair in it has
/// correlation exactly `-1` at shift 0.
pub fn subset_l(family: &FamilyA) -> Result<Vec<Z4Sequence>> {
    let l = &family.members[1..];
    let pairs: Vec<(usize, usize)> = (0..l.len())
        .flat_map(|a| ((a + 1)..l.len()).map(move |b| (a, b)))
        .collect();
    let bad = |&(a, b): &(usize, usize)| {
        correlation_unchecked(l[a].symbols(), l[b].symbols(), 0) != Gaussian::new(-1, 0)
    };
    #[cfg(feature = "parallel")]
    let witness = pairs.par_iter().find_first(|p| bad(p));
    #[cfg(not(feature = "parallel"))]
    let witness = pairs.iter().find(|p| bad(p));
    if let Some(&(a, b)) = witness {
        return Err(Error::ConstructionFailure {
            reason: format!(
                "R(l_{}, l_{}; 0) = {:?}, expected -1",
                a + 1,
                b + 1,
                correlation_unchecked(l[a].symbols(), l[b].symbols(), 0)
            ),
            witness: Some((a + 1, b + 1)),
            measured: None,
        });
    }
    Ok(l.to_vec())
}

/// Maximum periodic correlation magnitude over all member pairs and shifts,
/// excluding in-phase autocorrelations. Direct sweep, `O(|A|^2 N^2)`.
pub fn alpha_max_brute(family: &FamilyA) -> f64 {
    let m = &family.members;
    let pair_max = |a: usize| -> i64 {
        let mut best = 0;
        for b in a..m.len() {
            for tau in 0..family.period() {
                if a == b && tau == 0 {
                    continue;
                }
                let r = correlation_unchecked(m[a].symbols(), m[b].symbols(), tau);
                best = best.max(r.norm_sqr());
            }
        }
        best
    };
    #[cfg(feature = "parallel")]
    let best = (0..m.len()).into_par_iter().map(pair_max).max();
    #[cfg(not(feature = "parallel"))]
    let best = (0..m.len()).map(pair_max).max();
    (best.unwrap_or(0) as f64).sqrt()
}

/// Same quantity as [`alpha_max_brute`] in `O(4^n)`.
///
/// The recurrence is linear, so `a(t) - b(t + tau)` is again a solution and
/// every nontrivial correlation equals `sum_t i^u(t)` for a nonzero solution
/// `u`. Those sums are shift invariant, so one representative per cyclic
/// class suffices, and every nonzero `u` arises as such a difference.
pub fn alpha_max(family: &FamilyA) -> f64 {
    let best = family
        .members
        .iter()
        .map(|u| correlation_unchecked(u.symbols(), &vec![0; u.period()], 0).norm_sqr())
        .max()
        .unwrap_or(0);
    (best as f64).sqrt()
}
