use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::floor_nth_root;
use crate::{Error, Result};

/// Strict upper bound for deterministic primality testing with the witness
/// set {2, 3, 5, ..., 41}: every integer below this is classified correctly.
/// Inputs at or above it are refused rather than answered probabilistically.
pub const FACTORIZATION_BOUND: &str = "3317044064679887385961981";

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const SIEVE_LIMIT: usize = 1_000_000;

fn bound() -> &'static BigInt {
    static BOUND: OnceLock<BigInt> = OnceLock::new();
    BOUND.get_or_init(|| FACTORIZATION_BOUND.parse().expect("bound literal parses"))
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut primes = Vec::new();
        for p in 2..=SIEVE_LIMIT {
            if !composite[p] {
                primes.push(p as u32);
                let mut m = p * p;
                while m <= SIEVE_LIMIT {
                    composite[m] = true;
                    m += p;
                }
            }
        }
        primes
    })
}

/// Deterministic primality test, valid below [`FACTORIZATION_BOUND`].
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n >= bound() {
        return Err(Error::domain(format!(
            "{n} is at or above the certified primality bound {FACTORIZATION_BOUND}"
        )));
    }
    Ok(is_prime_checked(n))
}

fn is_prime_checked(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    // Write n - 1 = d * 2^s with d odd, then run each witness.
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1 so n - 1 > 0");
    let d = &n_minus_1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Full prime factorization of `n >= 1`, as (prime, exponent) pairs in
/// increasing prime order. `factorize(1)` is the empty product.
///
/// Strategy: trial division by all primes below one million, then perfect
/// power extraction, a deterministic Miller-Rabin certificate, and Pollard
/// rho for anything composite that survives. Inputs at or above
/// [`FACTORIZATION_BOUND`] are a domain error because primality could no
/// longer be certified.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if !n.is_positive() {
        return Err(Error::domain(format!("factorization needs a positive integer, got {n}")));
    }
    if n >= bound() {
        return Err(Error::domain(format!(
            "{n} is at or above the certified factorization bound {FACTORIZATION_BOUND}"
        )));
    }
    let mut rest = n.clone();
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let p = BigInt::from(p);
        if &p * &p > rest {
            break;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
            *found.entry(p.clone()).or_insert(0) += 1;
        }
    }
    if !rest.is_one() {
        split(&rest, 1, &mut found);
    }
    Ok(found.into_iter().collect())
}

/// Splits a number with no prime factor below the sieve limit, recording
/// `multiplicity` copies of each prime found.
fn split(n: &BigInt, multiplicity: u32, found: &mut BTreeMap<BigInt, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime_checked(n) {
        *found.entry(n.clone()).or_insert(0) += multiplicity;
        return;
    }
    // Perfect powers first; rho converges poorly on them.
    let max_exp = n.bits() as u32;
    for d in 2..=max_exp {
        let r = floor_nth_root(n, d);
        if r > BigInt::one() && r.pow(d) == *n {
            split(&r, multiplicity * d, found);
            return;
        }
    }
    let divisor = pollard_rho(n);
    split(&divisor, multiplicity, found);
    split(&(n / &divisor), multiplicity, found);
}

/// Finds a nontrivial divisor of an odd composite `n` that is not a perfect
/// power, by Floyd cycle detection on x -> x^2 + c, marching c upward until a
/// split appears. Deterministic by construction.
fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    for c in 1u32.. {
        let c = BigInt::from(c);
        let step = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        loop {
            x = step(&x);
            y = step(&step(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break; // cycle without a split; retry with the next c
            }
            let d = diff.gcd(n);
            if !d.is_one() {
                if &d == n {
                    break;
                }
                return d;
            }
        }
    }
    unreachable!("the c loop only exits by returning a divisor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> Vec<(BigInt, u32)> {
        factorize(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn factors_the_degree_six_evaluation() {
        let want: Vec<(BigInt, u32)> = [(2u32, 2u32), (3, 2), (5, 5), (7, 1), (826571, 1)]
            .iter()
            .map(|&(p, e)| (BigInt::from(p), e))
            .collect();
        assert_eq!(fac(650924662500), want);
    }

    #[test]
    fn one_is_the_empty_product() {
        assert!(fac(1).is_empty());
    }

    #[test]
    fn nonpositive_inputs_are_domain_errors() {
        assert!(factorize(&BigInt::from(0)).is_err());
        assert!(factorize(&BigInt::from(-12)).is_err());
    }

    #[test]
    fn primality_handles_carmichael_numbers() {
        assert!(!is_prime(&BigInt::from(561u32)).unwrap(), "561 = 3*11*17 fools Fermat, not this");
        assert!(is_prime(&BigInt::from(826571u32)).unwrap());
        assert!(is_prime(&BigInt::from(2u32)).unwrap());
        assert!(!is_prime(&BigInt::from(1u32)).unwrap());
    }

    #[test]
    fn rho_splits_a_semiprime_past_the_sieve() {
        // Both primes exceed the trial division limit.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(
            f,
            vec![(BigInt::from(1_000_003u64), 1), (BigInt::from(1_000_033u64), 1)]
        );
    }

    #[test]
    fn perfect_powers_come_back_with_exponents() {
        let n = BigInt::from(1_000_003u64).pow(2);
        assert_eq!(factorize(&n).unwrap(), vec![(BigInt::from(1_000_003u64), 2)]);
    }

    #[test]
    fn oversized_inputs_are_refused_not_guessed() {
        let big: BigInt = "10000000000000000000000000".parse().unwrap();
        assert!(factorize(&big).is_err(), "past the certification bound");
        assert!(is_prime(&big).is_err());
    }

    #[test]
    fn factorization_multiplies_back(){
        for n in [2u64, 97, 1440, 650924662500, 999983 * 2] {
            let n = BigInt::from(n);
            let product: BigInt = factorize(&n)
                .unwrap()
                .iter()
                .map(|(p, e)| p.pow(*e))
                .product();
            assert_eq!(product, n, "factorization of {n} does not multiply back");
        }
    }
}
