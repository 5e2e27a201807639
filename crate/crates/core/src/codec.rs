//! Exact injective encodings of multisets over the rationals.
//!
//! * [`CodecContext::encode_multiset`]: `h(X) = sum N^-x` over a multiset of
//!   naturals, inverted by [`decode_multiset`] through iterated divmod
//!   against `N^0, N^-1, ...`.
//! * [`CodecContext::encode_pairwise`]: `h(X, W) = sum f1(x) + sum f2(f1(w1) + f1(w2))`
//!   where `f1 = N^-Z1` with odd `Z1` and `f2 = N^-Z2` with even `Z2`.
//! * [`CodecContext::encode_centered`]: adds `(1 + eps) f1(c)` with `eps`
//!   kept as a formal irrational, so values live in `Q + eps Q`.
//!
//! All three are injective whenever `N` exceeds the total number of summed
//! terms, since no base-`N` digit can overflow into its neighbor.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type ExactRational = BigRational;
pub type Element = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("base N = {0} must exceed 2")]
    BaseTooSmall(u64),
    #[error("{cardinality} summed terms need N > {cardinality}, but N = {base}")]
    CardinalityBound { cardinality: usize, base: u64 },
    #[error("value is not decodable under base {base}: {reason}")]
    NotDecodable { base: u64, reason: String },
}

/// `a + eps * b` for a formal irrational `eps`. Equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsilonValue {
    pub a: ExactRational,
    pub b: ExactRational,
}

impl fmt::Display for EpsilonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + eps*{}", self.a, self.b)
    }
}

/// `N^-exponent` as an exact rational.
pub fn inverse_power(base: u64, exponent: u64) -> ExactRational {
    let denom = num_traits::pow(BigInt::from(base), exponent as usize);
    BigRational::new(BigInt::one(), denom)
}

/// Shared state of one encoding session: the base `N` and the interned
/// injections `Z1` (elements to odd naturals) and `Z2` (pair values to even
/// naturals), both assigned in first-seen order.
#[derive(Debug, Clone)]
pub struct CodecContext {
    base: u64,
    z1: HashMap<Element, u64>,
    z2: HashMap<ExactRational, u64>,
}

impl CodecContext {
    pub fn new(base: u64) -> Result<Self, CodecError> {
        if base <= 2 {
            return Err(CodecError::BaseTooSmall(base));
        }
        Ok(CodecContext {
            base,
            z1: HashMap::new(),
            z2: HashMap::new(),
        })
    }

    /// Context whose base is `2 * max_cardinality + 3`, where
    /// `max_cardinality` bounds `|X| + |W|` for every input of the session.
    pub fn for_max_cardinality(max_cardinality: usize) -> Self {
        Self::new(2 * max_cardinality as u64 + 3).expect("base >= 3")
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    fn check_cardinality(&self, cardinality: usize) -> Result<(), CodecError> {
        if cardinality as u64 >= self.base {
            return Err(CodecError::CardinalityBound {
                cardinality,
                base: self.base,
            });
        }
        Ok(())
    }

    /// Single-injection encoding with the identity map: `sum_{x in X} N^-x`.
    pub fn encode_multiset(&self, xs: &[Element]) -> Result<ExactRational, CodecError> {
        self.check_cardinality(xs.len())?;
        Ok(xs
            .iter()
            .fold(BigRational::zero(), |acc, &x| acc + inverse_power(self.base, x)))
    }

    /// `Z1(x)`: next unused odd natural on first sight.
    pub fn z1(&mut self, x: Element) -> u64 {
        let next = 2 * self.z1.len() as u64 + 1;
        *self.z1.entry(x).or_insert(next)
    }

    /// `Z2(y)`: next unused even natural on first sight.
    pub fn z2(&mut self, y: &ExactRational) -> u64 {
        if let Some(&z) = self.z2.get(y) {
            return z;
        }
        let next = 2 * self.z2.len() as u64;
        self.z2.insert(y.clone(), next);
        next
    }

    pub fn f1(&mut self, x: Element) -> ExactRational {
        let z = self.z1(x);
        inverse_power(self.base, z)
    }

    /// `f1(w1) + f1(w2)`; symmetric in its arguments.
    pub fn pair_value(&mut self, w1: Element, w2: Element) -> ExactRational {
        self.f1(w1) + self.f1(w2)
    }

    pub fn f2(&mut self, y: &ExactRational) -> ExactRational {
        let z = self.z2(y);
        inverse_power(self.base, z)
    }

    /// Fixes `Z1` for the given elements, in order, before any encoding.
    pub fn seed_elements(&mut self, xs: impl IntoIterator<Item = Element>) {
        for x in xs {
            self.z1(x);
        }
    }

    /// Fixes `Z2` for the given pairs, in order.
    pub fn seed_pairs(&mut self, ws: impl IntoIterator<Item = (Element, Element)>) {
        for (w1, w2) in ws {
            let y = self.pair_value(w1, w2);
            self.z2(&y);
        }
    }

    /// `h(X, W) = sum_{x in X} f1(x) + sum_{{w1, w2} in W} f2(f1(w1) + f1(w2))`.
    pub fn encode_pairwise(
        &mut self,
        xs: &[Element],
        ws: &[(Element, Element)],
    ) -> Result<ExactRational, CodecError> {
        self.check_cardinality(xs.len() + ws.len())?;
        let mut total = BigRational::zero();
        for &x in xs {
            total += self.f1(x);
        }
        for &(w1, w2) in ws {
            let y = self.pair_value(w1, w2);
            total += self.f2(&y);
        }
        Ok(total)
    }

    /// `h(c, X, W) = (1 + eps) f1(c) + h(X, W)`, returned as
    /// `a = f1(c) + h(X, W)`, `b = f1(c)`.
    pub fn encode_centered(
        &mut self,
        c: Element,
        xs: &[Element],
        ws: &[(Element, Element)],
    ) -> Result<EpsilonValue, CodecError> {
        let rest = self.encode_pairwise(xs, ws)?;
        let center = self.f1(c);
        Ok(EpsilonValue {
            a: &center + rest,
            b: center,
        })
    }
}

/// Inverts [`CodecContext::encode_multiset`]: returns the exponents, sorted,
/// with multiplicity. Digit `q` at exponent `e` comes from
/// `(q, r) = r divmod N^-e`.
pub fn decode_multiset(value: &ExactRational, base: u64) -> Result<Vec<Element>, CodecError> {
    let fail = |reason: String| CodecError::NotDecodable { base, reason };
    if base < 2 {
        return Err(fail("base must be at least 2".into()));
    }
    if value.is_negative() {
        return Err(fail("negative value".into()));
    }
    // a terminating base-N expansion has at most bits(denominator) digits
    // after the point
    let max_exponent = value.denom().bits() + 1;
    let big_base = BigInt::from(base);
    let mut remainder = value.clone();
    let mut out = Vec::new();
    let mut exponent: u64 = 0;
    let mut scale = BigInt::one();
    while !remainder.is_zero() {
        if exponent > max_exponent {
            return Err(fail(format!("expansion does not terminate by exponent {max_exponent}")));
        }
        // q = floor(remainder / N^-exponent)
        let scaled = &remainder * BigRational::from_integer(scale.clone());
        let (q, _) = scaled.numer().div_mod_floor(scaled.denom());
        let digit = q.to_u64().filter(|&d| d < base).ok_or_else(|| {
            fail(format!("multiplicity {q} at exponent {exponent} is not below N"))
        })?;
        out.extend(std::iter::repeat_n(exponent, digit as usize));
        remainder -= BigRational::new(q, scale.clone());
        exponent += 1;
        scale *= &big_base;
    }
    Ok(out)
}

/// Every multiset of size `0..=max_card` over `alphabet`, each as a sorted
/// list (by alphabet position).
pub fn multisets<T: Clone>(alphabet: &[T], max_card: usize) -> Vec<Vec<T>> {
    fn grow<T: Clone>(
        alphabet: &[T],
        start: usize,
        left: usize,
        current: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for i in start..alphabet.len() {
            current.push(alphabet[i].clone());
            grow(alphabet, i, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    grow(alphabet, 0, max_card, &mut Vec::new(), &mut out);
    out
}

/// Counts from [`exhaustive_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub base: u64,
    pub pairwise_inputs: usize,
    pub pairwise_distinct: usize,
    pub centered_inputs: usize,
    pub centered_distinct: usize,
}

impl InjectivityReport {
    pub fn is_injective(&self) -> bool {
        self.pairwise_inputs == self.pairwise_distinct && self.centered_inputs == self.centered_distinct
    }
}

/// Encodes every `(X, W)` and `(c, X, W)` with elements drawn from
/// `0..alphabet`, `|X| <= max_card`, `|W| <= max_card`, and counts distinct
/// values. `base` defaults to `2 * (2 * max_card) + 3`.
pub fn exhaustive_check(
    alphabet: u64,
    max_card: usize,
    base: Option<u64>,
) -> Result<InjectivityReport, CodecError> {
    let mut ctx = match base {
        Some(b) => CodecContext::new(b)?,
        None => CodecContext::for_max_cardinality(2 * max_card),
    };
    ctx.check_cardinality(2 * max_card)?;
    let symbols: Vec<Element> = (0..alphabet).collect();
    let mut pairs = Vec::new();
    for i in 0..alphabet {
        for j in i..alphabet {
            pairs.push((i, j));
        }
    }
    let xs_all = multisets(&symbols, max_card);
    let ws_all = multisets(&pairs, max_card);

    let mut pairwise = std::collections::HashSet::new();
    let mut centered = std::collections::HashSet::new();
    let mut pairwise_inputs = 0;
    let mut centered_inputs = 0;
    for xs in &xs_all {
        for ws in &ws_all {
            pairwise.insert(ctx.encode_pairwise(xs, ws)?);
            pairwise_inputs += 1;
            for &c in &symbols {
                centered.insert(ctx.encode_centered(c, xs, ws)?);
                centered_inputs += 1;
            }
        }
    }
    Ok(InjectivityReport {
        base: ctx.base(),
        pairwise_inputs,
        pairwise_distinct: pairwise.len(),
        centered_inputs,
        centered_distinct: centered.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_example_nine_eighths() {
        // x1 -> 0, x3 -> 2, N = 4
        let ctx = CodecContext::new(4).unwrap();
        let h = ctx.encode_multiset(&[0, 2, 2]).unwrap();
        assert_eq!(h, q(9, 8));
        assert_eq!(decode_multiset(&h, 4).unwrap(), vec![0, 2, 2]);
    }

    #[test]
    fn trivial_multisets() {
        let ctx = CodecContext::new(7).unwrap();
        assert_eq!(ctx.encode_multiset(&[]).unwrap(), q(0, 1));
        assert_eq!(ctx.encode_multiset(&[0]).unwrap(), q(1, 1));
        assert!(decode_multiset(&q(0, 1), 5).unwrap().is_empty());
    }

    #[test]
    fn cardinality_bound() {
        let ctx = CodecContext::new(3).unwrap();
        assert_eq!(
            ctx.encode_multiset(&[1, 1, 1]).unwrap_err(),
            CodecError::CardinalityBound { cardinality: 3, base: 3 }
        );
        assert_eq!(CodecContext::new(2).unwrap_err(), CodecError::BaseTooSmall(2));
        let mut ctx = CodecContext::new(4).unwrap();
        assert!(ctx.encode_pairwise(&[0, 1], &[(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn undecodable_values() {
        // 1/3 has no terminating base-4 expansion
        assert!(matches!(
            decode_multiset(&q(1, 3), 4),
            Err(CodecError::NotDecodable { .. })
        ));
        // digit 4 at exponent 0 cannot come from |X| < 4
        assert!(decode_multiset(&q(4, 1), 4).is_err());
        assert!(decode_multiset(&q(-1, 4), 4).is_err());
    }

    #[test]
    fn pairwise_single_term() {
        let mut ctx = CodecContext::new(4).unwrap();
        assert_eq!(ctx.encode_pairwise(&[], &[]).unwrap(), q(0, 1));
        assert_eq!(ctx.encode_pairwise(&[9], &[]).unwrap(), q(1, 4));
        assert_eq!(ctx.z1(9), 1);
        assert_eq!(ctx.z1(5), 3);
    }

    #[test]
    fn centered_components() {
        let mut ctx = CodecContext::new(5).unwrap();
        let v = ctx.encode_centered(0, &[], &[]).unwrap();
        assert_eq!(v.a, q(1, 5));
        assert_eq!(v.b, q(1, 5));
        let w = ctx.encode_centered(1, &[], &[]).unwrap();
        assert_ne!(v.b, w.b);
    }

    #[test]
    fn pair_value_is_symmetric() {
        let mut ctx = CodecContext::new(9).unwrap();
        assert_eq!(ctx.pair_value(1, 2), ctx.pair_value(2, 1));
        assert_eq!(
            ctx.encode_pairwise(&[], &[(0, 2)]).unwrap(),
            ctx.encode_pairwise(&[], &[(2, 0)]).unwrap()
        );
    }

    #[test]
    fn multiset_enumeration_counts() {
        assert_eq!(multisets(&[0, 1, 2], 2).len(), 10);
        assert_eq!(multisets(&[(); 6], 2).len(), 28);
        assert_eq!(multisets::<u8>(&[], 3).len(), 1);
    }

    #[test]
    fn exhaustive_small_alphabet() {
        let r = exhaustive_check(3, 2, None).unwrap();
        assert_eq!(r.base, 11);
        assert_eq!(r.pairwise_inputs, 280);
        assert_eq!(r.centered_inputs, 840);
        assert!(r.is_injective());
        assert!(exhaustive_check(3, 2, Some(4)).is_err());
    }
}
