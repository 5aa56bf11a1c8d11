//! Deterministic trial-division factorization and divisor enumeration.
//!
//! Everything downstream (partition counting, leg representations, truncation
//! coefficients) reduces to the prime factorization of numbers well inside the
//! u64 range, so plain trial division up to √n is all that is needed.

/// Prime factorization of a positive integer.
///
/// Primes are strictly increasing and every exponent is ≥ 1, so the product
/// of `prime^exponent` reconstructs `value` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor `value` by trial division. Panics if `value` is zero.
    pub fn of(value: u64) -> Self {
        assert!(value > 0, "cannot factor zero");
        let mut factors = Vec::new();
        let mut n = value;
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0u32;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            factors.push((n, 1));
        }
        Factorization { value, factors }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes (ω).
    pub fn distinct_primes(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of distinct odd primes (r in the 2^r partition-counting law).
    pub fn distinct_odd_primes(&self) -> u32 {
        self.factors.iter().filter(|(p, _)| *p != 2).count() as u32
    }

    /// All divisors of the value, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1u64;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk = pk.saturating_mul(p);
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// Splits the value into `2^a · odd`: returns (a, the odd prime powers).
    pub fn two_power_and_odd_parts(&self) -> (u32, Vec<u64>) {
        let mut two = 0;
        let mut odd = Vec::new();
        for &(p, e) in &self.factors {
            if p == 2 {
                two = e;
            } else {
                odd.push(p.pow(e));
            }
        }
        (two, odd)
    }
}

/// Narrows a u128 intermediate back to u64, panicking loudly on overflow.
///
/// All contracts are over unbounded integers; inputs large enough to overflow
/// u64 are outside the supported range and must not fail silently.
pub(crate) fn narrow(v: u128, what: &str) -> u64 {
    u64::try_from(v).unwrap_or_else(|_| panic!("arithmetic overflow computing {what}: {v} exceeds u64"))
}

pub(crate) fn sq(v: u64) -> u128 {
    (v as u128) * (v as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_values() {
        assert_eq!(Factorization::of(1).factors(), &[]);
        assert_eq!(Factorization::of(2).factors(), &[(2, 1)]);
        assert_eq!(Factorization::of(360).factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(Factorization::of(97).factors(), &[(97, 1)]);
    }

    #[test]
    fn product_reconstructs_value() {
        for v in 1..2000u64 {
            let f = Factorization::of(v);
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, v);
            let mut primes: Vec<u64> = f.factors().iter().map(|&(p, _)| p).collect();
            let mut sorted = primes.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(primes.len(), sorted.len());
            primes.sort_unstable();
            assert_eq!(primes, sorted);
        }
    }

    #[test]
    fn divisors_are_complete_and_sorted() {
        let divs = Factorization::of(30).divisors();
        assert_eq!(divs, vec![1, 2, 3, 5, 6, 10, 15, 30]);
        let divs = Factorization::of(64).divisors();
        assert_eq!(divs, vec![1, 2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn odd_prime_counts() {
        assert_eq!(Factorization::of(2).distinct_odd_primes(), 0);
        assert_eq!(Factorization::of(30).distinct_odd_primes(), 2);
        assert_eq!(Factorization::of(210).distinct_odd_primes(), 3);
    }
}
