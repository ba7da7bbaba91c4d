//! Closed-form degrees on one-dimensional spaces of cyclic admissible covers.
//!
//! The eigenbundle degree `deg lambda_1^e` has two equivalent statements, a
//! compact min-form and a five-case table keyed on the sorted ages; both are
//! evaluated on every call and must agree. The full Hodge class `lambda_1`
//! has a power-set gcd formula, a half-size form that pairs `I` with its
//! complement, and a rational function of `p` when `d = p` is an odd prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monodromy::MonodromyDatum;
use crate::numeric::{int, multinomial, ratio, Scalar};

/// The row of the five-case table selected by the sorted ages `a_1 <= ... <= a_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AgeCase {
    AgeSumZero,
    AgeSumOne,
    /// Age sum 2 with `a_1 + a_4 <= 1`.
    AgeSumTwoLow,
    /// Age sum 2 with `a_1 + a_4 > 1`.
    AgeSumTwoHigh,
    AgeSumThree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda1eCase<S> {
    pub case: AgeCase,
    pub sorted_ages: [S; 4],
}

fn require_four_points(datum: &MonodromyDatum) -> Result<()> {
    if datum.n() != 4 {
        return Err(Error::Dimension(format!(
            "one-dimensional formulas need 4 points, got {}",
            datum.n()
        )));
    }
    Ok(())
}

// Sorted residues `e m_i mod d` (ages times `d`) and the table row.
fn sorted_residues(datum: &MonodromyDatum, e: u64) -> Result<([u64; 4], AgeCase)> {
    require_four_points(datum)?;
    let sum = datum.age_sum(e)?;
    let d = u128::from(datum.d());
    let mut r: [u64; 4] = std::array::from_fn(|i| (u128::from(e) * u128::from(datum.m()[i]) % d) as u64);
    r.sort_unstable();
    let case = match sum {
        0 => AgeCase::AgeSumZero,
        1 => AgeCase::AgeSumOne,
        2 if u128::from(r[0]) + u128::from(r[3]) <= d => AgeCase::AgeSumTwoLow,
        2 => AgeCase::AgeSumTwoHigh,
        3 => AgeCase::AgeSumThree,
        s => {
            return Err(Error::Integrality(format!(
                "age sum {s} outside 0..=3 for {datum}, e = {e}"
            )))
        }
    };
    Ok((r, case))
}

/// Sorts the ages of `datum` at character `e` and picks the table row.
pub fn classify<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<Lambda1eCase<S>> {
    let (r, case) = sorted_residues(datum, e)?;
    let sorted_ages = r.map(|x| ratio(x, datum.d()));
    Ok(Lambda1eCase { case, sorted_ages })
}

/// Five-case form of `deg lambda_1^e`.
pub fn lambda1e_degree_five_case<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<S> {
    let (r, case) = sorted_residues(datum, e)?;
    let d = u128::from(datum.d());
    Ok(match case {
        AgeCase::AgeSumZero | AgeCase::AgeSumOne | AgeCase::AgeSumThree => S::zero(),
        AgeCase::AgeSumTwoLow => ratio(r[0], d * d),
        AgeCase::AgeSumTwoHigh => ratio(d - u128::from(r[3]), d * d),
    })
}

/// Compact min-form of `deg lambda_1^e`. An age sum of 0 returns 0 directly,
/// since the bare minimum would evaluate to -1 there.
pub fn lambda1e_degree_min_form<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<S> {
    let c = classify::<S>(datum, e)?;
    if c.case == AgeCase::AgeSumZero {
        return Ok(S::zero());
    }
    let d: S = int(datum.d());
    let sum: S = c.sorted_ages.iter().cloned().sum();
    let [a1, _, _, a4] = c.sorted_ages;
    Ok(if a1.clone() + a4.clone() <= S::one() {
        (a1 / d).min(sum - S::one())
    } else {
        ((S::one() - a4) / d).min(int::<S>(3) - sum)
    })
}

/// Degree of the Hurwitz-Hodge class `lambda_1^e` on a connected 4-pointed
/// space. Both statements of the formula are evaluated and compared.
pub fn lambda1e_degree<S: Scalar>(datum: &MonodromyDatum, e: u64) -> Result<S> {
    require_four_points(datum)?;
    datum.require_connected()?;
    let table = lambda1e_degree_five_case::<S>(datum, e)?;
    let compact = lambda1e_degree_min_form::<S>(datum, e)?;
    if table != compact {
        return Err(Error::CrossCheck(format!(
            "lambda_1^{e} on {datum}: five-case form {table} != min-form {compact}"
        )));
    }
    Ok(table)
}

/// `sum_{e=1}^{d-1} deg lambda_1^e`.
pub fn eigen_sum<S: Scalar>(datum: &MonodromyDatum) -> Result<S> {
    (1..datum.d()).try_fold(S::zero(), |acc, e| Ok(acc + lambda1e_degree::<S>(datum, e)?))
}

/// Degree of `lambda_1`:
/// `1/(24 d^2) * sum_{I in P([4])} (-1)^|I| gcd^2(sum_I m_i, d)`.
///
/// Disconnected data and zero monodromies are accepted; the value is then
/// the plain arithmetic of the formula.
pub fn lambda1_degree<S: Scalar>(datum: &MonodromyDatum) -> Result<S> {
    require_four_points(datum)?;
    let d = u128::from(datum.d());
    let m = datum.m();
    let mut total = 0i128;
    for mask in 0u32..16 {
        let subset_sum: u128 = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| u128::from(m[i])).sum();
        let g = subset_sum.gcd(&d) as i128;
        if mask.count_ones() % 2 == 0 {
            total += g * g;
        } else {
            total -= g * g;
        }
    }
    Ok(ratio(total, BigInt::from(d * d * 24)))
}

/// Half-size form of [`lambda1_degree`], one representative per `{I, I^c}`:
/// `(d^2 - sum_i gcd^2(m_i, d) + sum_{i<4} gcd^2(m_i + m_4, d)) / (12 d^2)`.
pub fn lambda1_degree_compact<S: Scalar>(datum: &MonodromyDatum) -> Result<S> {
    require_four_points(datum)?;
    let d = u128::from(datum.d());
    let m = datum.m();
    let sq = |x: u128| {
        let g = x.gcd(&d) as i128;
        g * g
    };
    let mut total = (d * d) as i128;
    for &mi in m {
        total -= sq(u128::from(mi));
    }
    for &mi in &m[..3] {
        total += sq(u128::from(mi) + u128::from(m[3]));
    }
    Ok(ratio(total, BigInt::from(d * d * 12)))
}

/// Which line of the prime-degree table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeCase {
    /// Some `m_i = 0`: degree 0.
    ContainsZero,
    /// No `m_i + m_j = 0 mod p`: `(p^2-1)/(12p^2)`.
    NoInversePair,
    /// `{i, p-i, j, p-j}`, all distinct: `(p^2-1)/(6p^2)`.
    TwoInversePairs,
    /// `{i, i, p-i, p-i}`: `(p^2-1)/(4p^2)`.
    RepeatedInversePair,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Classifies the multiset of monodromies mod an odd prime.
pub fn classify_prime(datum: &MonodromyDatum) -> Result<PrimeCase> {
    require_four_points(datum)?;
    let p = datum.d();
    if p == 2 {
        // The repeated-pair line presupposes i != p - i; at p = 2 it would
        // give 3/16 where the power-set formula gives 1/4.
        return Err(Error::Unsupported("the prime-degree table needs an odd prime, got 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::Unsupported(format!("the prime-degree table needs an odd prime, got {p}")));
    }
    let m = datum.m();
    if m.contains(&0) {
        return Ok(PrimeCase::ContainsZero);
    }
    let inverse = |a: u64, b: u64| (a + b).is_multiple_of(p);
    let has_pair = (0..4).any(|i| (i + 1..4).any(|j| inverse(m[i], m[j])));
    if !has_pair {
        return Ok(PrimeCase::NoInversePair);
    }
    let mut sorted = m.to_vec();
    sorted.sort_unstable();
    let mut distinct = sorted.clone();
    distinct.dedup();
    match distinct.as_slice() {
        [i, j] if inverse(*i, *j) && sorted[1] == sorted[0] => Ok(PrimeCase::RepeatedInversePair),
        [a, b, c, e] if inverse(*a, *e) && inverse(*b, *c) => Ok(PrimeCase::TwoInversePairs),
        _ => Err(Error::CrossCheck(format!("ambiguous prime-degree classification of {datum}"))),
    }
}

/// `deg lambda_1` read off the prime-degree table.
pub fn lambda1_degree_prime<S: Scalar>(datum: &MonodromyDatum) -> Result<(S, PrimeCase)> {
    let case = classify_prime(datum)?;
    let p = BigInt::from(datum.d());
    let numer = &p * &p - BigInt::one();
    let p2 = &p * &p;
    let value = match case {
        PrimeCase::ContainsZero => S::zero(),
        PrimeCase::NoInversePair => ratio(numer, p2 * 12),
        PrimeCase::TwoInversePairs => ratio(numer, p2 * 6),
        PrimeCase::RepeatedInversePair => ratio(numer, p2 * 4),
    };
    Ok((value, case))
}

/// `int prod psi_i^{k_i} = (1/d) * multinomial(n-3; k_1, ..., k_n)`.
pub fn psi_integral<S: Scalar>(datum: &MonodromyDatum, k: &[u64]) -> Result<S> {
    if k.len() != datum.n() {
        return Err(Error::Mismatch(format!(
            "{} psi exponents for {} points",
            k.len(),
            datum.n()
        )));
    }
    let total: u64 = k.iter().sum();
    if total != datum.dimension() as u64 {
        return Err(Error::Dimension(format!(
            "psi exponents sum to {total}, the space has dimension {}",
            datum.dimension()
        )));
    }
    Ok(ratio(BigInt::from(multinomial(k)), datum.d()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn datum(d: u64, m: &[i64]) -> MonodromyDatum {
        MonodromyDatum::new(d, m).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn lambda1e_examples() {
        assert_eq!(lambda1e_degree::<Rational>(&datum(5, &[1, 4, 2, 3]), 1).unwrap(), q(1, 25));
        assert_eq!(lambda1e_degree::<Rational>(&datum(5, &[3, 4, 4, 4]), 3).unwrap(), q(1, 25));
        assert_eq!(lambda1e_degree::<Rational>(&datum(5, &[3, 4, 4, 4]), 1).unwrap(), q(0, 1));
        assert_eq!(lambda1e_degree::<Rational>(&datum(2, &[1, 1, 1, 1]), 1).unwrap(), q(1, 4));
        assert_eq!(lambda1e_degree::<Rational>(&datum(7, &[1, 2, 4, 0]), 0).unwrap(), q(0, 1));
    }

    #[test]
    fn lambda1e_cases() {
        let c = classify::<Rational>(&datum(5, &[3, 4, 4, 4]), 3).unwrap();
        assert_eq!(c.case, AgeCase::AgeSumTwoHigh);
        assert_eq!(c.sorted_ages, [q(2, 5), q(2, 5), q(2, 5), q(4, 5)]);
        assert_eq!(classify::<Rational>(&datum(5, &[3, 4, 4, 4]), 1).unwrap().case, AgeCase::AgeSumThree);
        assert_eq!(classify::<Rational>(&datum(5, &[1, 4, 2, 3]), 1).unwrap().case, AgeCase::AgeSumTwoLow);
        assert_eq!(classify::<Rational>(&datum(5, &[1, 4, 2, 3]), 0).unwrap().case, AgeCase::AgeSumZero);
        assert_eq!(classify::<Rational>(&datum(5, &[1, 1, 1, 2]), 1).unwrap().case, AgeCase::AgeSumOne);
    }

    #[test]
    fn lambda1e_errors() {
        let five = datum(5, &[1, 1, 1, 1, 1]);
        assert!(matches!(lambda1e_degree::<Rational>(&five, 1), Err(Error::Dimension(_))));
        let a = datum(5, &[1, 4, 2, 3]);
        assert_eq!(lambda1e_degree::<Rational>(&a, 5), Err(Error::CharacterOutOfRange { e: 5, d: 5 }));
        let b = datum(4, &[2, 2, 2, 2]);
        assert_eq!(lambda1e_degree::<Rational>(&b, 1), Err(Error::Disconnected { gcd: 2 }));
    }

    #[test]
    fn lambda1_examples() {
        assert_eq!(lambda1_degree::<Rational>(&datum(5, &[1, 4, 2, 3])).unwrap(), q(4, 25));
        assert_eq!(lambda1_degree::<Rational>(&datum(3, &[1, 1, 2, 2])).unwrap(), q(2, 9));
        assert_eq!(lambda1_degree::<Rational>(&datum(5, &[3, 4, 4, 4])).unwrap(), q(2, 25));
        assert_eq!(lambda1_degree::<Rational>(&datum(5, &[0, 1, 2, 2])).unwrap(), q(0, 1));
        assert_eq!(lambda1_degree::<Rational>(&datum(1, &[0, 0, 0, 0])).unwrap(), q(0, 1));
        assert!(lambda1_degree::<Rational>(&datum(3, &[1, 1, 1])).is_err());
    }

    #[test]
    fn compact_examples() {
        assert_eq!(lambda1_degree_compact::<Rational>(&datum(2, &[1, 1, 1, 1])).unwrap(), q(1, 4));
        assert_eq!(lambda1_degree_compact::<Rational>(&datum(3, &[1, 1, 2, 2])).unwrap(), q(2, 9));
        assert_eq!(lambda1_degree_compact::<Rational>(&datum(5, &[1, 4, 2, 3])).unwrap(), q(4, 25));
    }

    #[test]
    fn prime_examples() {
        let (v, c) = lambda1_degree_prime::<Rational>(&datum(5, &[1, 4, 2, 3])).unwrap();
        assert_eq!((v, c), (q(4, 25), PrimeCase::TwoInversePairs));
        let (v, c) = lambda1_degree_prime::<Rational>(&datum(3, &[1, 1, 2, 2])).unwrap();
        assert_eq!((v, c), (q(2, 9), PrimeCase::RepeatedInversePair));
        let (v, c) = lambda1_degree_prime::<Rational>(&datum(7, &[1, 1, 2, 3])).unwrap();
        assert_eq!((v, c), (q(4, 49), PrimeCase::NoInversePair));
        let (v, c) = lambda1_degree_prime::<Rational>(&datum(7, &[0, 1, 2, 4])).unwrap();
        assert_eq!((v, c), (q(0, 1), PrimeCase::ContainsZero));
    }

    #[test]
    fn prime_table_refuses_two_and_composites() {
        // At p = 2 the repeated-pair line would read 3/16; the power-set formula gives 1/4.
        let two = datum(2, &[1, 1, 1, 1]);
        assert!(matches!(lambda1_degree_prime::<Rational>(&two), Err(Error::Unsupported(_))));
        assert_eq!(lambda1_degree::<Rational>(&two).unwrap(), q(1, 4));
        assert!(matches!(lambda1_degree_prime::<Rational>(&datum(9, &[1, 2, 3, 3])), Err(Error::Unsupported(_))));
        assert!(matches!(lambda1_degree_prime::<Rational>(&datum(1, &[0, 0, 0, 0])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_integral::<Rational>(&datum(5, &[1, 4, 2, 3]), &[1, 0, 0, 0]).unwrap(), q(1, 5));
        assert_eq!(psi_integral::<Rational>(&datum(3, &[1, 1, 1, 1, 2]), &[1, 1, 0, 0, 0]).unwrap(), q(2, 3));
        assert_eq!(psi_integral::<Rational>(&datum(1, &[0, 0, 0, 0]), &[0, 0, 0, 1]).unwrap(), q(1, 1));
        assert!(matches!(
            psi_integral::<Rational>(&datum(1, &[0, 0, 0, 0]), &[1, 1, 0, 0]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(psi_integral::<Rational>(&datum(1, &[0, 0, 0, 0]), &[1]), Err(Error::Mismatch(_))));
    }

    #[test]
    fn eigen_sum_examples() {
        assert_eq!(eigen_sum::<Rational>(&datum(5, &[1, 4, 2, 3])).unwrap(), q(4, 25));
        assert_eq!(eigen_sum::<Rational>(&datum(5, &[3, 4, 4, 4])).unwrap(), q(2, 25));
    }

    #[test]
    fn fixed_width_scalar_matches_big() {
        for x in crate::monodromy::connected_four_pointed(12) {
            let big: Rational = lambda1_degree(&x).unwrap();
            let small: Ratio<i64> = lambda1_degree(&x).unwrap();
            assert_eq!(small.to_parts(), big.to_parts());
            for e in 0..x.d() {
                let big: Rational = lambda1e_degree(&x, e).unwrap();
                let small: Ratio<i128> = lambda1e_degree(&x, e).unwrap();
                assert_eq!(small.to_parts(), big.to_parts());
            }
        }
    }

    fn arb_four_pointed() -> impl Strategy<Value = MonodromyDatum> {
        (1u64..25, 0u64..25, 0u64..25, 0u64..25).prop_map(|(d, a, b, c)| {
            let (a, b, c) = (a % d, b % d, c % d);
            MonodromyDatum::from_residues(d, vec![a, b, c, (3 * d - a - b - c) % d]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn eigenbundle_symmetry(x in arb_four_pointed()) {
            prop_assume!(x.is_connected());
            for e in 1..x.d() {
                prop_assert_eq!(
                    lambda1e_degree::<Rational>(&x, e).unwrap(),
                    lambda1e_degree::<Rational>(&x, x.d() - e).unwrap()
                );
            }
        }

        #[test]
        fn vanishing_rows(x in arb_four_pointed()) {
            prop_assume!(x.is_connected());
            for e in 0..x.d() {
                let s = x.age_sum(e).unwrap();
                let v = lambda1e_degree::<Rational>(&x, e).unwrap();
                if s != 2 {
                    prop_assert_eq!(v.clone(), q(0, 1));
                }
                prop_assert!(v >= q(0, 1));
            }
        }

        #[test]
        fn power_set_and_compact_agree(x in arb_four_pointed()) {
            let full = lambda1_degree::<Rational>(&x).unwrap();
            prop_assert_eq!(full.clone(), lambda1_degree_compact::<Rational>(&x).unwrap());
            if x.is_connected() {
                prop_assert!(full >= q(0, 1));
            }
        }

        #[test]
        fn degrees_are_permutation_invariant(x in arb_four_pointed(), k in 0usize..24) {
            let mut perm = vec![1usize, 2, 3, 4];
            // Decode k as a Lehmer code.
            let mut code = k;
            let mut out = Vec::new();
            for base in (1..=4).rev() {
                out.push(perm.remove(code % base));
                code /= base;
            }
            let y = x.permuted(&out).unwrap();
            prop_assert_eq!(lambda1_degree::<Rational>(&x).unwrap(), lambda1_degree::<Rational>(&y).unwrap());
            if x.is_connected() {
                for e in 0..x.d() {
                    prop_assert_eq!(
                        lambda1e_degree::<Rational>(&x, e).unwrap(),
                        lambda1e_degree::<Rational>(&y, e).unwrap()
                    );
                }
            }
        }

        #[test]
        fn zero_monodromy_vanishes(x in arb_four_pointed()) {
            prop_assume!(x.m().contains(&0));
            prop_assert_eq!(lambda1_degree::<Rational>(&x).unwrap(), q(0, 1));
        }
    }
}
