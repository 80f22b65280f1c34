//! Exact combinatorics: binomials, Stirling numbers, and closed-form
//! component counts.
//!
//! Everything here is integer or rational arithmetic on arbitrary-precision
//! values; no floating point is used. Rationals are always returned in
//! lowest terms.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::term::EquationClass;

/// Binomial coefficient `C(a, b)` as an exact integer.
///
/// Out-of-range lower arguments (`b < 0` or `b > a`) give 0; a negative
/// upper argument is an error.
pub fn binomial(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::InvalidArgument("binomial: negative upper argument"));
    }
    if b < 0 || b > a {
        return Ok(BigInt::zero());
    }
    let b = b.min(a - b);
    let mut result = BigInt::one();
    for i in 0..b {
        result = result * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    Ok(result)
}

/// `m!` as an exact integer.
pub fn factorial(m: u32) -> BigInt {
    (1..=i64::from(m))
        .map(BigInt::from)
        .fold(BigInt::one(), |acc, k| acc * k)
}

fn ipow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Stirling number of the second kind `S(n, m)`: partitions of an
/// `n`-element set into `m` unlabelled nonempty blocks.
///
/// Computed by the recurrence `S(n+1, m) = m*S(n, m) + S(n, m-1)` with
/// `S(0, 0) = 1`. Rows are memoized behind a mutex, so concurrent callers
/// are safe.
pub fn stirling2(n: u32, m: u32) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    static TABLE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![vec![BigInt::one()]]));
    let mut rows = table.lock().unwrap();
    while rows.len() <= n as usize {
        let prev = rows.last().unwrap();
        let width = rows.len();
        let mut row = Vec::with_capacity(width + 1);
        row.push(BigInt::zero());
        for m in 1..=width {
            let same = if m < width {
                prev[m].clone()
            } else {
                BigInt::zero()
            };
            row.push(same * BigInt::from(m) + &prev[m - 1]);
        }
        rows.push(row);
    }
    rows[n as usize][m as usize].clone()
}

/// `S(n, m)` by the explicit alternating sum
/// `(1/m!) * sum_{j=0..m} (-1)^(m-j) C(m, j) j^n`, with `0^0 = 1`.
///
/// Independent of the recurrence in [`stirling2`]; the two must agree.
pub fn stirling2_explicit(n: u32, m: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for j in 0..=m {
        let power = if j == 0 && n == 0 {
            BigInt::one()
        } else {
            ipow(j, n)
        };
        let term = binomial(i64::from(m), i64::from(j)).unwrap() * power;
        if (m - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / factorial(m)
}

/// Partitions of an `n`-element set into `m` linearly ordered nonempty
/// blocks: `m! * S(n, m)`.
pub fn labelled_stirling(n: u32, m: u32) -> BigInt {
    factorial(m) * stirling2(n, m)
}

/// Number of irreducible components of the solution set of an equation of
/// the given class over the chain of order `l`.
///
/// Only the regime with more variables than chain elements is supported.
/// The unrealizable boundary classes `(0, n)` and `(n, 0)` are accepted and
/// give 0.
pub fn irreducible_component_count(class: EquationClass, l: u32) -> Result<BigInt> {
    let n = class.n();
    if l == 0 || n <= l {
        return Err(Error::UnsupportedRegime { n, l });
    }
    let mut count = labelled_stirling(n, l);
    for k in [class.k1(), class.k2()] {
        for i in 1..=k {
            count -= binomial(i64::from(k), i64::from(i))? * labelled_stirling(n - i, l - 1);
        }
    }
    Ok(count)
}

/// The auxiliary sum `sum_{i=1..n-1} C(n, i) * i! ... ` shaped as
/// `sum C(n, i) * labelled_stirling(n - i, l - 1) * 3^(n - i)`; it is the
/// total, over all equations on `n` variables, of the component deficit
/// that the averaging formula subtracts.
pub fn aux_sum(n: u32, l: u32) -> Result<BigInt> {
    if n == 0 || l == 0 {
        return Err(Error::InvalidArgument(
            "aux_sum: n and l must be at least 1",
        ));
    }
    let mut sum = BigInt::zero();
    for i in 1..n {
        sum += binomial(i64::from(n), i64::from(i))?
            * labelled_stirling(n - i, l - 1)
            * ipow(3, n - i);
    }
    Ok(sum)
}

/// Average number of irreducible components over all `3^n - 2` equations
/// mentioning every variable, as an exact rational in lowest terms.
pub fn average_component_count(n: u32, l: u32) -> Result<BigRational> {
    if l == 0 || n <= l {
        return Err(Error::UnsupportedRegime { n, l });
    }
    if l == 1 {
        // The collapsed numerator below relies on S(0, l-1) vanishing,
        // which fails for l = 1. Over a one-element chain every equation
        // has exactly one component, so the average is 1.
        return Ok(BigRational::one());
    }
    let numerator = ipow(3, n) * labelled_stirling(n, l) - BigInt::from(2) * aux_sum(n, l)?;
    Ok(BigRational::new(numerator, ipow(3, n) - BigInt::from(2)))
}

/// Closed form of [`average_component_count`] for the two-element chain:
/// `(6^n - 2*4^n + 2) / (3^n - 2)`.
pub fn average_component_count_order2(n: u32) -> Result<BigRational> {
    if n <= 2 {
        return Err(Error::UnsupportedRegime { n, l: 2 });
    }
    let numerator = ipow(6, n) - BigInt::from(2) * ipow(4, n) + BigInt::from(2);
    Ok(BigRational::new(numerator, ipow(3, n) - BigInt::from(2)))
}

/// Lower and upper bounds for the average component count:
/// one third of `l! * S(n, l)` and `l! * S(n, l)` itself.
pub fn average_component_bounds(n: u32, l: u32) -> Result<(BigRational, BigRational)> {
    if l == 0 || n <= l {
        return Err(Error::UnsupportedRegime { n, l });
    }
    let upper = BigRational::from(labelled_stirling(n, l));
    let lower = &upper / BigRational::from(BigInt::from(3));
    Ok((lower, upper))
}

/// The average component count divided by `l^n`; approaches 1 as the
/// variable count grows.
pub fn asymptotic_ratio(n: u32, l: u32) -> Result<BigRational> {
    Ok(average_component_count(n, l)? / BigRational::from(ipow(l, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(k1: u32, k2: u32, n: u32) -> EquationClass {
        EquationClass::new(k1, k2, n).unwrap()
    }

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn binomial_matches_a_pascal_triangle() {
        let mut row = vec![BigInt::one()];
        for a in 0..=24i64 {
            for (b, expected) in row.iter().enumerate() {
                assert_eq!(binomial(a, b as i64).unwrap(), *expected, "C({a}, {b})");
            }
            let mut next = vec![BigInt::one()];
            for b in 1..row.len() {
                next.push(&row[b - 1] + &row[b]);
            }
            next.push(BigInt::one());
            row = next;
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(5, 3).unwrap(), BigInt::from(10));
        assert_eq!(binomial(5, -1).unwrap(), BigInt::zero());
        assert_eq!(binomial(3, 4).unwrap(), BigInt::zero());
        assert!(binomial(-1, 0).is_err());
    }

    #[test]
    fn stirling_small_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(4, 0), BigInt::zero());
        assert_eq!(stirling2(2, 3), BigInt::zero());
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(labelled_stirling(3, 2), BigInt::from(6));
        assert_eq!(labelled_stirling(0, 0), BigInt::one());
    }

    #[test]
    fn recurrence_and_explicit_sum_agree() {
        for n in 0..=12 {
            for m in 0..=12 {
                assert_eq!(stirling2(n, m), stirling2_explicit(n, m), "S({n}, {m})");
            }
        }
    }

    #[test]
    fn stirling_absorbs_binomial_convolution() {
        // S(a+1, b+1) = sum_{i=0..a} C(a, i) * S(i, b)
        for a in 0..=10u32 {
            for b in 0..=10u32 {
                let mut sum = BigInt::zero();
                for i in 0..=a {
                    sum += binomial(i64::from(a), i64::from(i)).unwrap() * stirling2(i, b);
                }
                assert_eq!(stirling2(a + 1, b + 1), sum, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn memo_table_is_safe_under_concurrent_use() {
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for n in 0..=40 {
                        assert_eq!(
                            stirling2(n + 1, 2),
                            stirling2(n, 1) + stirling2(n, 2) * 2u32
                        );
                    }
                });
            }
        });
    }

    #[test]
    fn component_counts_for_three_variables_order_two() {
        assert_eq!(
            irreducible_component_count(class(0, 0, 3), 2).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            irreducible_component_count(class(0, 1, 3), 2).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            irreducible_component_count(class(1, 1, 3), 2).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            irreducible_component_count(class(0, 2, 3), 2).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            irreducible_component_count(class(1, 2, 3), 2).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn boundary_classes_have_no_components() {
        for n in 3..=10 {
            for l in 1..n {
                assert_eq!(
                    irreducible_component_count(class(0, n, n), l).unwrap(),
                    BigInt::zero()
                );
                assert_eq!(
                    irreducible_component_count(class(n, 0, n), l).unwrap(),
                    BigInt::zero()
                );
            }
        }
    }

    #[test]
    fn component_count_requires_more_variables_than_chain_elements() {
        assert!(matches!(
            irreducible_component_count(class(0, 0, 3), 3),
            Err(Error::UnsupportedRegime { n: 3, l: 3 })
        ));
        assert!(average_component_count(3, 4).is_err());
    }

    #[test]
    fn aux_sum_values() {
        assert_eq!(aux_sum(1, 2).unwrap(), BigInt::zero());
        assert_eq!(aux_sum(3, 2).unwrap(), BigInt::from(36));
        for n in 1..=14u32 {
            let closed = ipow(4, n) - ipow(3, n) - BigInt::one();
            assert_eq!(aux_sum(n, 2).unwrap(), closed, "n={n}");
        }
    }

    #[test]
    fn average_for_three_variables_order_two_is_18_over_5() {
        let avg = average_component_count(3, 2).unwrap();
        assert_eq!(avg, rational(18, 5));
        assert_eq!(avg.numer(), &BigInt::from(18));
        assert_eq!(avg.denom(), &BigInt::from(5));
        assert_eq!(average_component_count_order2(3).unwrap(), avg);
    }

    #[test]
    fn average_over_the_trivial_chain_is_one() {
        for n in 2..=8 {
            assert_eq!(average_component_count(n, 1).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn bounds_bracket_the_average() {
        let (lower, upper) = average_component_bounds(3, 2).unwrap();
        assert_eq!(lower, rational(2, 1));
        assert_eq!(upper, rational(6, 1));
        let avg = average_component_count(3, 2).unwrap();
        assert!(lower <= avg && avg <= upper);
    }

    #[test]
    fn asymptotic_ratio_is_average_scaled_by_chain_power() {
        assert_eq!(asymptotic_ratio(3, 2).unwrap(), rational(9, 20));
    }
}
