//! Exact accumulation of many small rationals.
//!
//! Summing thousands of fractions with distinct denominators directly in
//! `BigRational` normalises at every step. Most sums here only involve a few
//! hundred distinct denominators, so numerators are bucketed per denominator
//! in `i128` and folded into a single `BigRational` at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ExactScalar;

#[derive(Debug, Clone, Default)]
pub struct RationalAccumulator {
    buckets: BTreeMap<u64, i128>,
}

impl RationalAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `num / den`. `den` must be positive.
    #[inline]
    pub fn add(&mut self, num: i128, den: u64) {
        debug_assert!(den > 0);
        if num != 0 {
            *self.buckets.entry(den).or_insert(0) += num;
        }
    }

    pub fn merge(&mut self, other: RationalAccumulator) {
        for (den, num) in other.buckets {
            self.add(num, den);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.values().all(|n| *n == 0)
    }

    pub fn to_exact(&self) -> ExactScalar {
        self.buckets
            .iter()
            .filter(|(_, num)| **num != 0)
            .fold(ExactScalar::zero(), |acc, (den, num)| {
                acc + ExactScalar::new(BigInt::from(*num), BigInt::from(*den))
            })
    }

    pub fn to_f64(&self) -> f64 {
        self.buckets
            .iter()
            .map(|(den, num)| *num as f64 / *den as f64)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_exactly() {
        let mut acc = RationalAccumulator::new();
        acc.add(1, 2);
        acc.add(1, 3);
        acc.add(1, 6);
        acc.add(-1, 2);
        assert_eq!(acc.to_exact(), ExactScalar::new(1.into(), 2.into()));
        let mut other = RationalAccumulator::new();
        other.add(1, 2);
        acc.merge(other);
        assert_eq!(acc.to_exact(), ExactScalar::from_integer(1.into()));
    }
}
