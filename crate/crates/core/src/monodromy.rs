//! Monodromy data for cyclic admissible covers of a rational curve.
//!
//! Marked points are labelled `1..=n` in every public API.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{ratio, Scalar};
use crate::tautring::BoundaryCurve;

/// Degree `d` and monodromies `m_1, ..., m_n` with `0 <= m_i < d` and
/// `sum m_i = 0 mod d`.
///
/// Connectedness (`gcd(m_1, ..., m_n, d) = 1`) is a predicate, not an
/// invariant: boundary curves induce data that can violate it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct MonodromyDatum {
    d: u64,
    m: Vec<u64>,
}

#[derive(Deserialize)]
struct RawDatum {
    d: u64,
    m: Vec<u64>,
}

impl TryFrom<RawDatum> for MonodromyDatum {
    type Error = Error;

    fn try_from(raw: RawDatum) -> Result<Self> {
        MonodromyDatum::from_residues(raw.d, raw.m)
    }
}

/// Discrete invariants of the cover curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInvariants {
    /// Riemann-Hurwitz genus `1 + ((n-2)d - sum q_i)/2`. Negative values only
    /// occur for disconnected data, where this is an arithmetic genus.
    pub genus: i64,
    /// `q_i = gcd(m_i, d)`: number of points over the i-th branch point.
    pub q: Vec<u64>,
    /// `r_i = d / q_i`: ramification order over the i-th branch point.
    pub r: Vec<u64>,
}

impl MonodromyDatum {
    /// Reduces every entry into `[0, d)` and validates.
    pub fn new(d: u64, m: &[i64]) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let reduced = m
            .iter()
            .map(|&x| i128::from(x).rem_euclid(i128::from(d)) as u64)
            .collect();
        Self::from_residues(d, reduced)
    }

    /// Like [`MonodromyDatum::new`] for nonnegative input.
    pub fn from_residues(d: u64, mut m: Vec<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        if m.len() < 3 {
            return Err(Error::TooFewPoints { n: m.len() });
        }
        for x in &mut m {
            *x %= d;
        }
        let residue = (m.iter().map(|&x| u128::from(x)).sum::<u128>() % u128::from(d)) as u64;
        if residue != 0 {
            return Err(Error::SumNotZero { d, residue });
        }
        Ok(Self { d, m })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// `gcd(m_1, ..., m_n, d)`.
    pub fn gcd(&self) -> u64 {
        self.m.iter().fold(self.d, |g, &x| g.gcd(&x))
    }

    pub fn is_connected(&self) -> bool {
        self.gcd() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.gcd() {
            1 => Ok(()),
            gcd => Err(Error::Disconnected { gcd }),
        }
    }

    /// Dimension `n - 3` of the moduli space.
    pub fn dimension(&self) -> usize {
        self.n() - 3
    }

    fn check_character(&self, e: u64) -> Result<()> {
        if e >= self.d {
            return Err(Error::CharacterOutOfRange { e, d: self.d });
        }
        Ok(())
    }

    fn residue(&self, e: u64, i: usize) -> u64 {
        ((u128::from(e) * u128::from(self.m[i])) % u128::from(self.d)) as u64
    }

    /// The age `<e m_i / d>` at point `i` (1-based).
    pub fn age<S: Scalar>(&self, e: u64, i: usize) -> Result<S> {
        self.check_character(e)?;
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, n: self.n() });
        }
        Ok(ratio(self.residue(e, i - 1), self.d))
    }

    /// All ages in point order.
    pub fn ages<S: Scalar>(&self, e: u64) -> Result<Vec<S>> {
        self.check_character(e)?;
        Ok((0..self.n()).map(|i| ratio(self.residue(e, i), self.d)).collect())
    }

    /// `sum_i <e m_i / d>`, which is always an integer.
    pub fn age_sum(&self, e: u64) -> Result<u64> {
        self.check_character(e)?;
        let total: u128 = (0..self.n()).map(|i| u128::from(self.residue(e, i))).sum();
        if !total.is_multiple_of(u128::from(self.d)) {
            return Err(Error::Integrality(format!(
                "age sum {total}/{} for e = {e} on {self} is not an integer",
                self.d
            )));
        }
        Ok((total / u128::from(self.d)) as u64)
    }

    /// Rank of the eigenbundle `E_e`: `-1 + sum of ages`, and 0 at `e = 0`
    /// or when every age vanishes.
    pub fn rank_eigenbundle(&self, e: u64) -> Result<u64> {
        let sum = self.age_sum(e)?;
        Ok(if e == 0 || sum == 0 { 0 } else { sum - 1 })
    }

    pub fn cover_invariants(&self) -> CoverInvariants {
        let q: Vec<u64> = self.m.iter().map(|&x| x.gcd(&self.d)).collect();
        let r = q.iter().map(|&qi| self.d / qi).collect();
        let twice = (self.n() as i128 - 2) * i128::from(self.d) - q.iter().map(|&x| i128::from(x)).sum::<i128>();
        debug_assert!(twice % 2 == 0, "Riemann-Hurwitz parity on {self}");
        CoverInvariants { genus: (1 + twice / 2) as i64, q, r }
    }

    /// The 4-pointed datum carried by a boundary curve: block sums mod `d`.
    pub fn induced_datum(&self, curve: &BoundaryCurve) -> Result<MonodromyDatum> {
        if curve.n() != self.n() {
            return Err(Error::Mismatch(format!(
                "boundary curve on {} points, datum on {}",
                curve.n(),
                self.n()
            )));
        }
        let sums = curve
            .blocks()
            .iter()
            .map(|block| {
                let s: u128 = block.iter().map(|&j| u128::from(self.m[j - 1])).sum();
                (s % u128::from(self.d)) as u64
            })
            .collect();
        Self::from_residues(self.d, sums)
    }

    /// Relabels points: entry `k` of the result is `m_{perm[k]}` (1-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n() {
            return Err(Error::Mismatch(format!("permutation of length {} on {} points", perm.len(), self.n())));
        }
        for &p in perm {
            if p == 0 || p > self.n() || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation of 1..={}", self.n())));
            }
        }
        Ok(Self { d: self.d, m: perm.iter().map(|&p| self.m[p - 1]).collect() })
    }

    /// The nondecreasing representative of this datum's permutation orbit.
    pub fn sorted(&self) -> Self {
        let mut m = self.m.clone();
        m.sort_unstable();
        Self { d: self.d, m }
    }
}

impl std::fmt::Display for MonodromyDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(d={}; ", self.d)?;
        for (k, x) in self.m.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Which data [`enumerate_data`] yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DataOptions {
    pub n: usize,
    pub connected_only: bool,
    pub allow_zero: bool,
    /// Yield only nondecreasing tuples, one per permutation orbit.
    pub sorted: bool,
}

impl Default for DataOptions {
    fn default() -> Self {
        Self { n: 4, connected_only: true, allow_zero: true, sorted: true }
    }
}

impl DataOptions {
    pub fn with_n(n: usize) -> Self {
        Self { n, ..Self::default() }
    }
}

/// Lexicographic stream of all valid data of degree `d` matching `options`.
pub fn enumerate_data(d: u64, options: DataOptions) -> DataIter {
    let lo = u64::from(!options.allow_zero);
    let current = (d >= 1 && lo < d && options.n >= 3).then(|| vec![lo; options.n]);
    DataIter { d, lo, options, current }
}

#[derive(Debug, Clone)]
pub struct DataIter {
    d: u64,
    lo: u64,
    options: DataOptions,
    current: Option<Vec<u64>>,
}

impl DataIter {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        let top = self.d - 1;
        match cur.iter().rposition(|&x| x < top) {
            None => self.current = None,
            Some(i) => {
                cur[i] += 1;
                let fill = if self.options.sorted { cur[i] } else { self.lo };
                for x in &mut cur[i + 1..] {
                    *x = fill;
                }
            }
        }
    }
}

impl Iterator for DataIter {
    type Item = MonodromyDatum;

    fn next(&mut self) -> Option<MonodromyDatum> {
        loop {
            let tuple = self.current.clone()?;
            self.advance();
            let Ok(datum) = MonodromyDatum::from_residues(self.d, tuple) else { continue };
            if self.options.connected_only && !datum.is_connected() {
                continue;
            }
            return Some(datum);
        }
    }
}

/// Connected sorted 4-pointed data for every `d` in `1..=dmax`.
pub fn connected_four_pointed(dmax: u64) -> Vec<MonodromyDatum> {
    (1..=dmax).flat_map(|d| enumerate_data(d, DataOptions::default())).collect()
}
