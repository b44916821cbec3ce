//! Small integer helpers shared by the other modules.

use num_integer::Integer;

#[inline]
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Euler's totient for `0..=limit` (entry 0 is 0).
pub fn phi_sieve(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// Number of divisors for `0..=limit` (entry 0 is 0).
pub fn tau_sieve(limit: usize) -> Vec<u64> {
    let mut tau = vec![0u64; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            tau[m] += 1;
        }
    }
    tau
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn tau(n: u64) -> u64 {
    divisors(n).len() as u64
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|&m| gcd(m, n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieves_match_direct() {
        let phis = phi_sieve(200);
        let taus = tau_sieve(200);
        for n in 1..=200u64 {
            assert_eq!(phis[n as usize], phi(n), "phi({n})");
            assert_eq!(taus[n as usize], tau(n), "tau({n})");
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
