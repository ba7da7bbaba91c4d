//! Independent derivation of the one-dimensional degrees by torus localization.
//!
//! An auxiliary integral on the space of covers of a parameterized `P^1`
//! vanishes for dimension reasons. Its fixed loci `Gamma_I` are indexed by
//! the set `I` of marked points lying over infinity; loci containing the
//! designated point (the one whose evaluation class cuts out `0`) do not
//! contribute. Each remaining locus contributes `alpha_I * L + beta_I`, where
//! `L` is the unknown degree, and the sum of contributions is zero. The
//! global `1/t` factor is dropped throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::degrees::{classify, lambda1_degree, lambda1e_degree, AgeCase};
use crate::error::{Error, Result};
use crate::monodromy::MonodromyDatum;
use crate::numeric::{format_exact, int, ratio, Scalar};

/// One fixed locus's share of the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusContribution<S> {
    /// Marked points over infinity, original labels, ascending.
    pub label: Vec<usize>,
    pub alpha: S,
    pub beta: S,
}

/// `alpha * L + beta = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationRelation<S> {
    pub alpha: S,
    pub beta: S,
    pub contributions: Vec<LocusContribution<S>>,
}

impl<S: Scalar> LocalizationRelation<S> {
    fn from_contributions(contributions: Vec<LocusContribution<S>>) -> Self {
        let alpha = contributions.iter().map(|c| c.alpha.clone()).sum();
        let beta = contributions.iter().map(|c| c.beta.clone()).sum();
        Self { alpha, beta, contributions }
    }

    /// Human-readable per-locus breakdown.
    pub fn breakdown(&self) -> String {
        self.contributions
            .iter()
            .map(|c| {
                format!(
                    "Gamma_{}: ({}, {})",
                    format_label(&c.label),
                    format_exact(&c.alpha),
                    format_exact(&c.beta)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn format_label(label: &[usize]) -> String {
    let parts: Vec<String> = label.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Discrete invariants of a fixed locus used by its contribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedLocusData {
    /// No marked point over infinity.
    Empty,
    /// Point `j` alone over infinity; `q = gcd(m_j, d)`.
    Single { j: usize, q: u64 },
    /// The designated point alone over zero.
    Triple { genus: i64, q_designated: u64 },
    /// Points `i, j` over infinity: `q_ij = gcd(m_i + m_j, d)` and
    /// `genus = 1 - (q_i + q_j + q_ij - d)/2`, the arithmetic genus of the
    /// (possibly disconnected) curve over infinity, which has
    /// `gcd(m_i, m_j, d)` components. The genus is negative when that curve
    /// is a disjoint union of rational components.
    Pair { i: usize, j: usize, q_ij: u64, genus: i64, components: u64 },
}

fn check_designated(datum: &MonodromyDatum, designated: usize) -> Result<()> {
    if datum.n() != 4 {
        return Err(Error::Dimension(format!("localization runs on 4-pointed spaces, got n = {}", datum.n())));
    }
    if designated == 0 || designated > 4 {
        return Err(Error::IndexOutOfRange { index: designated, n: 4 });
    }
    Ok(())
}

/// The eight contributing fixed loci when `designated` is the point mapped to zero.
pub fn fixed_loci(datum: &MonodromyDatum, designated: usize) -> Result<Vec<(Vec<usize>, FixedLocusData)>> {
    check_designated(datum, designated)?;
    datum.require_connected()?;
    let d = datum.d();
    let m = datum.m();
    let inv = datum.cover_invariants();
    if inv.genus < 0 {
        return Err(Error::Integrality(format!("negative cover genus on {datum}")));
    }
    let others: Vec<usize> = (1..=4).filter(|&p| p != designated).collect();
    let mut loci = vec![(Vec::new(), FixedLocusData::Empty)];
    for &j in &others {
        loci.push((vec![j], FixedLocusData::Single { j, q: inv.q[j - 1] }));
    }
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            let q_ij = (m[i - 1] + m[j - 1]).gcd(&d);
            let twice = i128::from(inv.q[i - 1]) + i128::from(inv.q[j - 1]) + i128::from(q_ij) - i128::from(d);
            if twice % 2 != 0 {
                return Err(Error::Integrality(format!("genus over infinity for Gamma_{{{i},{j}}} on {datum} is not an integer")));
            }
            let components = m[i - 1].gcd(&m[j - 1]).gcd(&d);
            loci.push((vec![i, j], FixedLocusData::Pair { i, j, q_ij, genus: (1 - twice / 2) as i64, components }));
        }
    }
    loci.push((others.clone(), FixedLocusData::Triple { genus: inv.genus, q_designated: inv.q[designated - 1] }));
    Ok(loci)
}

/// The constant of the three-point locus, `24 d` times the `t^2` coefficient:
/// `3d^3 + 12gd^2 + 6d^2q - 16d^2 + 12g^2d + 12gdq + 3q^2d - 36gd - 18dq + 24d - 2q^2`.
fn triple_constant(d: u64, genus: i64, q: u64) -> BigInt {
    let d = BigInt::from(d);
    let g = BigInt::from(genus);
    let q = BigInt::from(q);
    let d2 = &d * &d;
    3 * &d2 * &d + 12 * &g * &d2 + 6 * &d2 * &q - 16 * &d2 + 12 * &g * &g * &d + 12 * &g * &d * &q
        + 3 * &q * &q * &d
        - 36 * &g * &d
        - 18 * &d * &q
        + 24 * &d
        - 2 * &q * &q
}

/// Relation for `deg lambda_1` with point 4 mapped to zero.
pub fn nonorbifold_relation<S: Scalar>(datum: &MonodromyDatum) -> Result<LocalizationRelation<S>> {
    nonorbifold_relation_at(datum, 4)
}

/// Relation for `deg lambda_1` with `designated` mapped to zero.
pub fn nonorbifold_relation_at<S: Scalar>(datum: &MonodromyDatum, designated: usize) -> Result<LocalizationRelation<S>> {
    let d = datum.d();
    let big_d = BigInt::from(d);
    let denom: BigInt = &big_d * &big_d * 24u32;
    let contributions = fixed_loci(datum, designated)?
        .into_iter()
        .map(|(label, data)| {
            let (alpha, beta) = match data {
                // lambda_2 is pulled back along the forgetful map.
                FixedLocusData::Empty => (S::zero(), S::zero()),
                FixedLocusData::Single { q, .. } => {
                    let q = BigInt::from(q);
                    let gap = &big_d - &q;
                    let poly = 3 * &big_d * &big_d - 3 * &big_d * &q - 4 * &big_d + 2 * &q;
                    (ratio::<S>(gap.clone(), 2), -ratio::<S>(gap * poly, denom.clone()))
                }
                FixedLocusData::Triple { genus, q_designated } => {
                    let alpha = ratio::<S>(4 - BigInt::from(d) - BigInt::from(q_designated) - 2 * BigInt::from(genus), 2);
                    (alpha, -ratio::<S>(triple_constant(d, genus, q_designated), denom.clone()))
                }
                FixedLocusData::Pair { q_ij, genus, .. } => {
                    (S::zero(), ratio::<S>(triple_constant(d, genus, q_ij), denom.clone()))
                }
            };
            LocusContribution { label, alpha, beta }
        })
        .collect();
    Ok(LocalizationRelation::from_contributions(contributions))
}

/// Relation for `deg lambda_1^e`, valid when the sorted ages sum to 2 and
/// the smallest and largest add to more than 1. The point of largest age is
/// the one mapped to zero.
pub fn orbifold_relation<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<LocalizationRelation<S>> {
    if datum.n() != 4 {
        return Err(Error::Dimension(format!("localization runs on 4-pointed spaces, got n = {}", datum.n())));
    }
    datum.require_connected()?;
    let case = classify::<S>(datum, e)?.case;
    if case != AgeCase::AgeSumTwoHigh {
        return Err(Error::Unsupported(format!(
            "orbifold localization needs age sum 2 with a_1 + a_4 > 1; {datum} at e = {e} is {case:?}"
        )));
    }
    let ages = datum.ages::<S>(e)?;
    let designated = 1 + (0..4).rev().max_by_key(|&i| ages[i].clone()).expect("four ages");
    let d: S = int(datum.d());
    let top = ages[designated - 1].clone();
    let others: Vec<usize> = (1..=4).filter(|&p| p != designated).collect();

    let mut contributions = vec![LocusContribution { label: Vec::new(), alpha: S::zero(), beta: S::zero() }];
    for &j in &others {
        contributions.push(LocusContribution { label: vec![j], alpha: ages[j - 1].clone(), beta: S::zero() });
    }
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            contributions.push(LocusContribution { label: vec![i, j], alpha: S::zero(), beta: S::zero() });
        }
    }
    // (a_top - 1)(L + deg psi), with deg psi = 1/d.
    let shift = top - S::one();
    contributions.push(LocusContribution { label: others, alpha: shift.clone(), beta: shift / d });

    let relation = LocalizationRelation::from_contributions(contributions);
    if !relation.alpha.is_one() {
        return Err(Error::CrossCheck(format!(
            "orbifold relation on {datum} at e = {e} has alpha = {}, expected 1",
            relation.alpha
        )));
    }
    Ok(relation)
}

/// `L = -beta / alpha`.
pub fn solve<S: Scalar>(relation: &LocalizationRelation<S>) -> Result<S> {
    if relation.alpha.is_zero() {
        return Err(Error::Degenerate { breakdown: relation.breakdown() });
    }
    Ok(-relation.beta.clone() / relation.alpha.clone())
}

/// Serializable diagnostic: the per-locus breakdown, the solved degree and
/// the closed-form value it is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub datum: MonodromyDatum,
    pub e: Option<u64>,
    pub designated: usize,
    pub contributions: Vec<ContributionRecord>,
    pub alpha: String,
    pub beta: String,
    pub solved: String,
    pub closed_form: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionRecord {
    pub label: Vec<usize>,
    pub alpha: String,
    pub beta: String,
}

fn report<S: Scalar>(
    datum: &MonodromyDatum,
    e: Option<u64>,
    designated: usize,
    relation: &LocalizationRelation<S>,
    closed_form: S,
) -> Result<LocalizationReport> {
    let solved = solve(relation)?;
    Ok(LocalizationReport {
        datum: datum.clone(),
        e,
        designated,
        contributions: relation
            .contributions
            .iter()
            .map(|c| ContributionRecord {
                label: c.label.clone(),
                alpha: format_exact(&c.alpha),
                beta: format_exact(&c.beta),
            })
            .collect(),
        alpha: format_exact(&relation.alpha),
        beta: format_exact(&relation.beta),
        agrees: solved == closed_form,
        solved: format_exact(&solved),
        closed_form: format_exact(&closed_form),
    })
}

/// Diagnostic report for the `lambda_1` relation.
pub fn nonorbifold_report<S: Scalar>(datum: &MonodromyDatum, designated: usize) -> Result<LocalizationReport> {
    let relation = nonorbifold_relation_at::<S>(datum, designated)?;
    report(datum, None, designated, &relation, lambda1_degree::<S>(datum)?)
}

/// Diagnostic report for the `lambda_1^e` relation.
pub fn orbifold_report<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<LocalizationReport> {
    let relation = orbifold_relation::<S>(datum, e)?;
    let designated = relation.contributions.last().map_or(0, |c| {
        (1..=4).find(|p| !c.label.contains(p)).unwrap_or(0)
    });
    report(datum, Some(e), designated, &relation, lambda1e_degree::<S>(datum, e)?)
}
