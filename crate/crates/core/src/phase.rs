//! Sequences of roots of unity stored as integer phases, and their
//! periodic correlation.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::z4::Z4Sequence;
use crate::{Error, Result};

/// Precomputed `xi_L^k = exp(2 pi i k / L)` for `k` in `0..L`.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(order: u32) -> Self {
        let l = order as f64;
        RootTable {
            roots: (0..order)
                .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / l))
                .collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.roots.len() as u32
    }

    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.roots.len() as u64) as usize]
    }

    /// `sum_k hist[k] xi_L^k`.
    pub fn evaluate(&self, hist: &[u32]) -> Complex64 {
        hist.iter()
            .zip(&self.roots)
            .filter(|(&h, _)| h != 0)
            .map(|(&h, r)| r * h as f64)
            .sum()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Entry `t` is `xi_L^phases[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseSequence {
    root_order: u32,
    phases: Vec<u32>,
}

impl PhaseSequence {
    pub fn new(root_order: u32, phases: Vec<u32>) -> Result<Self> {
        if root_order == 0 {
            return Err(Error::invalid("root order must be positive"));
        }
        if phases.is_empty() {
            return Err(Error::invalid("phase sequence must be nonempty"));
        }
        if let Some(p) = phases.iter().find(|&&p| p >= root_order) {
            return Err(Error::invalid(format!("phase {p} not below root order {root_order}")));
        }
        Ok(PhaseSequence { root_order, phases })
    }

    /// Embeds a `Z4` sequence as powers of `i = xi_4`.
    pub fn from_z4(a: &Z4Sequence) -> Self {
        PhaseSequence {
            root_order: 4,
            phases: a.symbols().iter().map(|&s| s as u32).collect(),
        }
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        let table = RootTable::new(self.root_order);
        self.phases.iter().map(|&p| table.root(p as u64)).collect()
    }

    fn check_compatible(&self, other: &PhaseSequence) -> Result<()> {
        if self.len() != other.len() || self.root_order != other.root_order {
            return Err(Error::invalid(format!(
                "sequence shapes differ: (N={}, L={}) vs (N={}, L={})",
                self.len(),
                self.root_order,
                other.len(),
                other.root_order
            )));
        }
        Ok(())
    }

    /// Adds the histogram of `a_t - b_(t+tau) mod L` into `hist`.
    pub(crate) fn accumulate_correlation(&self, other: &PhaseSequence, tau: usize, hist: &mut [u32]) {
        let l = self.root_order;
        let n = self.len();
        let tau = tau % n;
        let (head, tail) = other.phases.split_at(tau);
        for (&a, &b) in self.phases.iter().zip(tail.iter().chain(head)) {
            hist[((a + l - b) % l) as usize] += 1;
        }
    }
}

/// The linear phase transform `t -> a_t * xi_q^(t d)`, embedded over the
/// common root order `L = lcm(4, q)`.
pub fn phase_transform(a: &Z4Sequence, d: i64, q: u32) -> Result<PhaseSequence> {
    if q == 0 {
        return Err(Error::invalid("q must be positive"));
    }
    let l = lcm(4, q as u64);
    let sym_step = l / 4;
    let ramp_step = l / q as u64;
    let d = d.rem_euclid(q as i64) as u64;
    let phases = a
        .symbols()
        .iter()
        .enumerate()
        .map(|(t, &s)| ((s as u64 * sym_step + (t as u64 * d % q as u64) * ramp_step) % l) as u32)
        .collect();
    Ok(PhaseSequence { root_order: l as u32, phases })
}

/// `R(a, b; tau) = sum_t a_t conj(b_(t+tau mod N))`.
pub fn periodic_correlation(a: &PhaseSequence, b: &PhaseSequence, tau: usize) -> Result<Complex64> {
    a.check_compatible(b)?;
    if tau >= a.len() {
        return Err(Error::invalid(format!("shift {tau} not below N = {}", a.len())));
    }
    let mut hist = vec![0u32; a.root_order as usize];
    a.accumulate_correlation(b, tau, &mut hist);
    Ok(RootTable::new(a.root_order).evaluate(&hist))
}
