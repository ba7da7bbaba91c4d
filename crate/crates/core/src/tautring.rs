//! Divisor classes on `n`-pointed spaces of cyclic admissible covers.
//!
//! A class is a finite rational combination of boundary divisors `Delta_J`
//! (`2 <= |J| <= n-2`), psi classes and `kappa_1`. Graph formulas are written
//! as sums over the full power set `P([n])` with the conventions
//! `Delta_{j} = Delta_{[n]\{j}} = -psi_j` and `Delta_{} = Delta_{[n]} = kappa_1`.
//! `Delta_J` and `Delta_{J^c}` are separate symbols; [`canonicalize`] merges them.
//!
//! Classes are tested against boundary curves `C_(X,Y,Z,W)`, the one-dimensional
//! strata indexed by partitions of `[n]` into four blocks, via [`pair`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::degrees::lambda1_degree;
use crate::error::{Error, Result};
use crate::monodromy::MonodromyDatum;
use crate::numeric::{format_exact, gcd_with, int, parse_exact, ratio, Scalar};

/// Largest `n` for which power-set builders are attempted.
pub const MAX_POINTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorSymbol {
    /// `Delta_J`, `J` sorted ascending.
    Boundary(Vec<usize>),
    Psi(usize),
    Kappa1,
}

impl fmt::Display for DivisorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorSymbol::Boundary(j) => {
                let parts: Vec<String> = j.iter().map(usize::to_string).collect();
                write!(f, "Delta_{{{}}}", parts.join(","))
            }
            DivisorSymbol::Psi(j) => write!(f, "psi_{j}"),
            DivisorSymbol::Kappa1 => f.write_str("kappa_1"),
        }
    }
}

/// A rational divisor class on the space with `n` points and group order `d`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass<S> {
    n: usize,
    d: u64,
    terms: BTreeMap<DivisorSymbol, S>,
}

impl<S: Scalar> DivisorClass<S> {
    pub fn zero(n: usize, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        if n < 3 {
            return Err(Error::TooFewPoints { n });
        }
        Ok(Self { n, d, terms: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `(kind, indices)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&DivisorSymbol, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, symbol: &DivisorSymbol) -> S {
        self.terms.get(symbol).cloned().unwrap_or_else(S::zero)
    }

    fn check_symbol(&self, symbol: &DivisorSymbol) -> Result<()> {
        let n = self.n;
        match symbol {
            DivisorSymbol::Boundary(j) => {
                if j.len() < 2 || j.len() + 2 > n {
                    return Err(Error::Domain(format!("boundary set {j:?} needs 2 <= |J| <= {}", n.saturating_sub(2))));
                }
                if !j.windows(2).all(|w| w[0] < w[1]) || j[0] == 0 || j[j.len() - 1] > n {
                    return Err(Error::Domain(format!("boundary set {j:?} is not a sorted subset of 1..={n}")));
                }
            }
            DivisorSymbol::Psi(j) => {
                if *j == 0 || *j > n {
                    return Err(Error::IndexOutOfRange { index: *j, n });
                }
            }
            DivisorSymbol::Kappa1 => {}
        }
        Ok(())
    }

    /// Adds `coefficient * symbol`, dropping the term if it cancels.
    pub fn add_term(&mut self, symbol: DivisorSymbol, coefficient: S) -> Result<()> {
        self.check_symbol(&symbol)?;
        if coefficient.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(symbol).or_insert_with(S::zero);
        *slot = slot.clone() + coefficient;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    /// Adds `coefficient * Delta_J` for any `J`, applying the psi/kappa
    /// conventions for `|J| <= 1` and `|J| >= n-1`.
    pub fn add_delta(&mut self, subset: &[usize], coefficient: S) -> Result<()> {
        let n = self.n;
        let mut j = subset.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.len() != subset.len() || j.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Domain(format!("{subset:?} is not a subset of 1..={n}")));
        }
        match j.len() {
            0 => self.add_term(DivisorSymbol::Kappa1, coefficient),
            len if len == n => self.add_term(DivisorSymbol::Kappa1, coefficient),
            1 => self.add_term(DivisorSymbol::Psi(j[0]), -coefficient),
            len if len + 1 == n => {
                let missing = (1..=n).find(|x| !j.contains(x)).expect("complement of size one");
                self.add_term(DivisorSymbol::Psi(missing), -coefficient)
            }
            _ => self.add_term(DivisorSymbol::Boundary(j), coefficient),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::Mismatch(format!(
                "classes on (n={}, d={}) and (n={}, d={})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (sym, c) in &other.terms {
            out.add_term(sym.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &S) -> Self {
        let terms = if factor.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(s, c)| (s.clone(), c.clone() * factor.clone())).collect()
        };
        Self { n: self.n, d: self.d, terms }
    }

    /// Renames points: old point `j` becomes `sigma[j-1]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.n)?;
        let mut out = Self { n: self.n, d: self.d, terms: BTreeMap::new() };
        for (sym, c) in &self.terms {
            let moved = match sym {
                DivisorSymbol::Boundary(j) => {
                    let mut k: Vec<usize> = j.iter().map(|&x| sigma[x - 1]).collect();
                    k.sort_unstable();
                    DivisorSymbol::Boundary(k)
                }
                DivisorSymbol::Psi(j) => DivisorSymbol::Psi(sigma[j - 1]),
                DivisorSymbol::Kappa1 => DivisorSymbol::Kappa1,
            };
            out.add_term(moved, c.clone())?;
        }
        Ok(out)
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::Mismatch(format!("relabeling of length {} on {n} points", sigma.len())));
    }
    for &x in sigma {
        if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
            return Err(Error::Domain(format!("{sigma:?} is not a permutation of 1..={n}")));
        }
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for DivisorClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (sym, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}) {sym}", format_exact(c))?;
        }
        Ok(())
    }
}

/// A partition of `[n]` into four nonempty blocks `(X, Y, Z, W)`.
///
/// Blocks keep the order they were given in (it fixes the labelling of the
/// induced 4-pointed datum); equality ignores that order.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl BoundaryCurve {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() != 4 {
            return Err(Error::MalformedCurve(format!("expected 4 blocks, got {}", blocks.len())));
        }
        let mut seen = vec![false; n];
        let mut sorted_blocks = Vec::with_capacity(4);
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::MalformedCurve("empty block".into()));
            }
            for &j in &block {
                if j == 0 || j > n {
                    return Err(Error::MalformedCurve(format!("point {j} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[j - 1], true) {
                    return Err(Error::MalformedCurve(format!("point {j} appears twice")));
                }
            }
            block.sort_unstable();
            sorted_blocks.push(block);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedCurve(format!("point {} is in no block", missing + 1)));
        }
        Ok(Self { n, blocks: sorted_blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Blocks ordered by least element.
    pub fn canonical(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { n: self.n, blocks }
    }

    /// Renames points: old point `j` becomes `sigma[j-1]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.n)?;
        Self::new(self.n, self.blocks.iter().map(|b| b.iter().map(|&j| sigma[j - 1]).collect()).collect())
    }

    #[cfg(test)]
    fn block_index(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (k, block) in self.blocks.iter().enumerate() {
            for &j in block {
                owner[j - 1] = k;
            }
        }
        owner
    }
}

impl PartialEq for BoundaryCurve {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical().blocks == other.canonical().blocks
    }
}

impl Eq for BoundaryCurve {}

impl std::hash::Hash for BoundaryCurve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.canonical().blocks.hash(state);
    }
}

impl fmt::Display for BoundaryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "C({})", parts.join(", "))
    }
}

/// Every partition of `[n]` into exactly four blocks, once each, in
/// restricted-growth-string order.
pub fn enumerate_boundary_curves(n: usize) -> Result<BoundaryCurves> {
    if n < 4 {
        return Err(Error::Dimension(format!("boundary curves need n >= 4, got {n}")));
    }
    Ok(BoundaryCurves { n, rgs: Some(vec![0; n]) })
}

/// Iterator returned by [`enumerate_boundary_curves`].
#[derive(Debug, Clone)]
pub struct BoundaryCurves {
    n: usize,
    rgs: Option<Vec<usize>>,
}

impl BoundaryCurves {
    // Next restricted growth string with all values <= 3.
    fn advance(&mut self) {
        let Some(a) = self.rgs.as_mut() else { return };
        for i in (1..a.len()).rev() {
            let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] < 3 && a[i] <= prefix_max {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
                return;
            }
        }
        self.rgs = None;
    }
}

impl Iterator for BoundaryCurves {
    type Item = BoundaryCurve;

    fn next(&mut self) -> Option<BoundaryCurve> {
        loop {
            let a = self.rgs.clone()?;
            self.advance();
            if a.iter().copied().max() != Some(3) {
                continue;
            }
            let mut blocks = vec![Vec::new(); 4];
            for (j, &b) in a.iter().enumerate() {
                blocks[b].push(j + 1);
            }
            return Some(BoundaryCurve { n: self.n, blocks });
        }
    }
}

fn check_power_set_size(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Dimension(format!("graph formulas need n >= 4, got {n}")));
    }
    if n > MAX_POINTS {
        return Err(Error::Unsupported(format!("power-set formulas limited to n <= {MAX_POINTS}")));
    }
    Ok(())
}

/// `sum_{J in P([n])} coefficient(J) Delta_J` with the psi/kappa conventions.
///
/// This is also the entry point for experimenting with candidate graph
/// formulas: build a class from a coefficient function and compare it with
/// [`boundary_defects`].
pub fn class_from_delta_coefficients<S: Scalar>(
    n: usize,
    d: u64,
    mut coefficient: impl FnMut(&[usize]) -> Result<S>,
) -> Result<DivisorClass<S>> {
    check_power_set_size(n)?;
    let mut class = DivisorClass::zero(n, d)?;
    let mut subset = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << n) {
        subset.clear();
        subset.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1));
        let c = coefficient(&subset)?;
        class.add_delta(&subset, c)?;
    }
    Ok(class)
}

/// `lambda_1 = 1/(24 d) sum_{J in P([n])} gcd^2(sum_J m_j, d) Delta_J`.
pub fn graph_formula_lambda1<S: Scalar>(datum: &MonodromyDatum) -> Result<DivisorClass<S>> {
    let d = BigInt::from(datum.d());
    let m = datum.m();
    class_from_delta_coefficients(datum.n(), datum.d(), |j| {
        let s: u128 = j.iter().map(|&x| u128::from(m[x - 1])).sum();
        let g = gcd_with(s, d.clone());
        Ok(ratio(&g * &g, &d * 24))
    })
}

/// The 4-pointed candidate for `lambda_1^e`:
/// `(1/2) sum_{I in P([4])} min{0, 1 - sum_{i in I} <e m_i / d>} Delta_I`.
pub fn graph_formula_lambda1e_question<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<DivisorClass<S>> {
    if datum.n() != 4 {
        return Err(Error::Dimension(format!("the lambda_1^e graph formula is 4-pointed, got n = {}", datum.n())));
    }
    let ages = datum.ages::<S>(e)?;
    let half = ratio::<S>(1, 2);
    class_from_delta_coefficients(4, datum.d(), |i| {
        let s: S = i.iter().map(|&x| ages[x - 1].clone()).sum();
        Ok(half.clone() * (S::one() - s).min(S::zero()))
    })
}

/// Intersection number `C . class`.
///
/// `C . Delta_J = (-1)^|I| / d` when `J` is the union of the blocks indexed
/// by `I`, and 0 otherwise; `C . psi_j = 1/d` when `{j}` is a block; and
/// `C . kappa_1 = 1/d`.
pub fn pair<S: Scalar>(curve: &BoundaryCurve, class: &DivisorClass<S>) -> Result<S> {
    if curve.n() != class.n() {
        return Err(Error::Mismatch(format!(
            "boundary curve on {} points, class on {}",
            curve.n(),
            class.n()
        )));
    }
    let n = class.n();
    let blocks = curve.blocks();
    // Only the 16 block unions can pair nontrivially with a boundary divisor.
    let mut total = S::zero();
    for mask in 0u32..16 {
        let mut j: Vec<usize> = (0..4).filter(|k| mask >> k & 1 == 1).flat_map(|k| blocks[k].iter().copied()).collect();
        if j.len() < 2 || j.len() + 2 > n {
            continue;
        }
        j.sort_unstable();
        if let Some(c) = class.terms.get(&DivisorSymbol::Boundary(j)) {
            if mask.count_ones() % 2 == 0 {
                total = total + c.clone();
            } else {
                total = total - c.clone();
            }
        }
    }
    for block in blocks {
        if let [j] = block.as_slice() {
            if let Some(c) = class.terms.get(&DivisorSymbol::Psi(*j)) {
                total = total + c.clone();
            }
        }
    }
    if let Some(c) = class.terms.get(&DivisorSymbol::Kappa1) {
        total = total + c.clone();
    }
    Ok(total / int::<S>(class.d()))
}

/// Pairing of one class against many boundary curves, with coefficients
/// indexed densely by the bitmask of `J`.
#[derive(Debug, Clone)]
pub struct CurvePairing<S> {
    n: usize,
    d: S,
    boundary: Vec<S>,
    psi: Vec<S>,
    kappa: S,
}

impl<S: Scalar> CurvePairing<S> {
    pub fn new(class: &DivisorClass<S>) -> Result<Self> {
        let n = class.n();
        if n > 20 {
            return Err(Error::Unsupported(format!("dense pairing tables stop at 20 points, got {n}")));
        }
        let mut boundary = vec![S::zero(); 1 << n];
        let mut psi = vec![S::zero(); n];
        let mut kappa = S::zero();
        for (sym, c) in class.terms() {
            match sym {
                DivisorSymbol::Boundary(j) => boundary[j.iter().fold(0, |acc, &x| acc | 1 << (x - 1))] = c.clone(),
                DivisorSymbol::Psi(j) => psi[j - 1] = c.clone(),
                DivisorSymbol::Kappa1 => kappa = c.clone(),
            }
        }
        Ok(Self { n, d: int(class.d()), boundary, psi, kappa })
    }

    /// Same value as [`pair`].
    pub fn pair(&self, curve: &BoundaryCurve) -> Result<S> {
        if curve.n() != self.n {
            return Err(Error::Mismatch(format!("boundary curve on {} points, class on {}", curve.n(), self.n)));
        }
        let masks: Vec<usize> =
            curve.blocks().iter().map(|b| b.iter().fold(0, |acc, &x| acc | 1 << (x - 1))).collect();
        let mut total = self.kappa.clone();
        for pick in 0u32..16 {
            let union = (0..4).filter(|k| pick >> k & 1 == 1).fold(0, |acc, k| acc | masks[k]);
            let size = union.count_ones() as usize;
            if size < 2 || size + 2 > self.n {
                continue;
            }
            let c = &self.boundary[union];
            if pick.count_ones() % 2 == 0 {
                total = total + c.clone();
            } else {
                total = total - c.clone();
            }
        }
        for block in curve.blocks() {
            if let [j] = block.as_slice() {
                total = total + self.psi[j - 1].clone();
            }
        }
        Ok(total / self.d.clone())
    }
}

/// Merges `Delta_J` into `Delta_{J^c}` so the representative contains point 1.
pub fn canonicalize<S: Scalar>(class: &DivisorClass<S>) -> DivisorClass<S> {
    let n = class.n();
    let mut out = DivisorClass { n, d: class.d(), terms: BTreeMap::new() };
    for (sym, c) in class.terms() {
        let sym = match sym {
            DivisorSymbol::Boundary(j) if j[0] != 1 => {
                DivisorSymbol::Boundary((1..=n).filter(|x| j.binary_search(x).is_err()).collect())
            }
            other => other.clone(),
        };
        out.add_term(sym, c.clone()).expect("complement of a valid boundary set is valid");
    }
    debug_assert!(
        n > 7 || enumerate_boundary_curves(n).map_or(true, |mut curves| curves
            .all(|c| pair(&c, class).ok() == pair(&c, &out).ok())),
        "canonicalize changed a boundary-curve pairing"
    );
    out
}

/// Degree of a divisor class on a one-dimensional (4-pointed) space; every
/// symbol has degree `1/d`.
pub fn evaluate_degree_4pt<S: Scalar>(class: &DivisorClass<S>) -> Result<S> {
    if class.n() != 4 {
        return Err(Error::Dimension(format!("degree evaluation needs n = 4, got {}", class.n())));
    }
    let total: S = class.terms().map(|(_, c)| c.clone()).sum();
    Ok(total / int::<S>(class.d()))
}

/// A boundary curve where a class disagrees with the expected degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDefect<S> {
    pub curve: BoundaryCurve,
    pub induced: MonodromyDatum,
    pub paired: S,
    pub expected: S,
    /// The induced datum is disconnected; the expected value is the closed
    /// form applied as plain arithmetic.
    pub geometric_caveat: bool,
}

/// Pairs `class` with every boundary curve and compares against `expected`
/// evaluated on the induced 4-pointed datum. Empty output means the class
/// passes every test.
pub fn boundary_defects<S: Scalar>(
    datum: &MonodromyDatum,
    class: &DivisorClass<S>,
    mut expected: impl FnMut(&MonodromyDatum) -> Result<S>,
) -> Result<Vec<BoundaryDefect<S>>> {
    let mut defects = Vec::new();
    for curve in enumerate_boundary_curves(datum.n())? {
        let induced = datum.induced_datum(&curve)?;
        let paired = pair(&curve, class)?;
        let want = expected(&induced)?;
        if paired != want {
            let geometric_caveat = !induced.is_connected();
            defects.push(BoundaryDefect { curve, induced, paired, expected: want, geometric_caveat });
        }
    }
    Ok(defects)
}

/// [`boundary_defects`] for the `lambda_1` graph formula.
pub fn lambda1_boundary_defects<S: Scalar>(datum: &MonodromyDatum) -> Result<Vec<BoundaryDefect<S>>> {
    let class = graph_formula_lambda1::<S>(datum)?;
    boundary_defects(datum, &class, lambda1_degree::<S>)
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    n: usize,
    d: u64,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "sym")]
enum TermRepr {
    #[serde(rename = "B")]
    Boundary {
        #[serde(rename = "J")]
        subset: Vec<usize>,
        c: String,
    },
    #[serde(rename = "P")]
    Psi { j: usize, c: String },
    #[serde(rename = "K")]
    Kappa { c: String },
}

impl<S: Scalar> Serialize for DivisorClass<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms()
            .map(|(sym, c)| {
                let c = format_exact(c);
                match sym {
                    DivisorSymbol::Boundary(j) => TermRepr::Boundary { subset: j.clone(), c },
                    DivisorSymbol::Psi(j) => TermRepr::Psi { j: *j, c },
                    DivisorSymbol::Kappa1 => TermRepr::Kappa { c },
                }
            })
            .collect();
        ClassRepr { n: self.n, d: self.d, terms }.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for DivisorClass<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ClassRepr::deserialize(deserializer)?;
        let build = || -> Result<Self> {
            let mut class = DivisorClass::zero(repr.n, repr.d)?;
            for term in repr.terms {
                let (sym, c) = match term {
                    TermRepr::Boundary { subset, c } => (DivisorSymbol::Boundary(subset), c),
                    TermRepr::Psi { j, c } => (DivisorSymbol::Psi(j), c),
                    TermRepr::Kappa { c } => (DivisorSymbol::Kappa1, c),
                };
                if class.terms.contains_key(&sym) {
                    return Err(Error::Parse(format!("duplicate term {sym}")));
                }
                class.add_term(sym, parse_exact(&c)?)?;
            }
            Ok(class)
        };
        build().map_err(D::Error::custom)
    }
}

impl<S: Scalar> DivisorClass<S> {
    /// The stable JSON shape: exact `num/den` coefficients, sorted terms.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
