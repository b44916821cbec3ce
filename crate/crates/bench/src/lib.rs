//! Fixed benchmark inputs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mindenom::checks::random_endpoints;
use mindenom::{Interval, Variant};

/// `count` half-open intervals with endpoint denominators up to `max_den`.
pub fn sample_intervals(count: usize, max_den: i64, seed: u64) -> Vec<Interval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_endpoints(&mut rng, max_den, i))
        .map(|(lo, hi)| {
            Interval::with_variant(lo, hi, Variant::HalfOpenRight).unwrap_or_else(|_| Interval::point(lo))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(sample_intervals(50, 1000, 7), sample_intervals(50, 1000, 7));
        assert_eq!(sample_intervals(50, 1000, 7).len(), 50);
    }
}
