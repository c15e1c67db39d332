//! Primality and factorization at desk scale: a sieve of small primes,
//! deterministic Miller-Rabin below a published bound, fixed-base
//! Miller-Rabin above it, Brent's cycle variant of Pollard rho, and a
//! parity-only factorization that never needs to split perfect squares.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::bigint::BigUint;
use num::{Integer, One, Zero};

use super::ArithError;

/// Budget knobs for factorization. Trial division runs up to `trial_bound`,
/// then Brent-rho gets `rho_iterations` total iterations before giving up.
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 100_000,
            rho_iterations: 4_000_000,
        }
    }
}

/// All primes below 100_000, sieved once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = 100_000usize;
        let mut is_comp = vec![false; n];
        let mut out = Vec::with_capacity(9_600);
        for i in 2..n {
            if !is_comp[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j < n {
                    is_comp[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

// Largest n for which the 12-witness Miller-Rabin test below is a proof
// of primality (Sorenson-Webster bound).
fn deterministic_bound() -> &'static BigUint {
    static B: OnceLock<BigUint> = OnceLock::new();
    B.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

fn miller_rabin_witness(n: &BigUint, a: &BigUint) -> bool {
    // Returns true when `a` witnesses that n is composite.
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return false;
        }
    }
    true
}

fn miller_rabin(n: &BigUint, bases: &[u64]) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    for &b in bases {
        let a = BigUint::from(b) % n;
        if a.is_zero() || a.is_one() {
            continue;
        }
        if miller_rabin_witness(n, &a) {
            return false;
        }
    }
    true
}

const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// Extra fixed bases for inputs beyond the deterministic bound. 40 strong
// pseudoprime tests bound the error by 4^-40 per call; the bases are fixed
// so results are reproducible.
const EXTRA_BASES: [u64; 28] = [
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173,
];

/// Primality test. Deterministic (a proof) for n below ~3.3e24; for larger n
/// it is a 40-round strong pseudoprime test with error probability < 4^-40.
pub fn is_prime(n: &BigUint) -> bool {
    if n <= deterministic_bound() {
        miller_rabin(n, &DETERMINISTIC_BASES)
    } else {
        miller_rabin(n, &DETERMINISTIC_BASES) && miller_rabin(n, &EXTRA_BASES)
    }
}

/// Primality test that refuses to answer probabilistically: errors when the
/// input exceeds the deterministic Miller-Rabin range.
pub fn is_prime_strict(n: &BigUint) -> Result<bool, ArithError> {
    if n <= deterministic_bound() {
        Ok(miller_rabin(n, &DETERMINISTIC_BASES))
    } else {
        Err(ArithError::PrimalityRange)
    }
}

/// Floor square root test.
pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// If `n = b^k` for some k >= 2, returns `(b, k)` with k maximal prime-free
/// raising... more precisely the smallest base: tries every exponent from
/// high to low and returns the first exact root found.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::from(3u32) {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r <= BigUint::one() {
            continue;
        }
        if num::pow::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor of `n`
/// (n must be odd, composite, not a perfect power) or None on budget end.
fn brent_rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let mut c = BigUint::one();
    let mut spent: u64 = 0;
    while spent < budget {
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        let mut count: u64 = 0;
        // Batched gcd (product of |x - y| accumulations) every 64 steps.
        'outer: while d == one {
            let mut prod = one.clone();
            let xs = x.clone();
            for _ in 0..64 {
                x = (&x * &x + &c) % n;
                y = (&y * &y + &c) % n;
                y = (&y * &y + &c) % n;
                let diff = if x > y { &x - &y } else { &y - &x };
                if diff.is_zero() {
                    // Cycle collapsed; restart with a new constant.
                    d = n.clone();
                    break;
                }
                prod = (prod * diff) % n;
                count += 1;
                spent += 1;
                if spent >= budget {
                    break 'outer;
                }
            }
            let g = prod.gcd(n);
            if g > one {
                d = g;
            }
            if count > (1 << 24) {
                break;
            }
            let _ = xs;
        }
        if d > one && d < *n {
            return Some(d);
        }
        c += 1u32;
    }
    None
}

/// Full factorization `n = prod p_i^{e_i}`. Errors if the budget runs out on
/// a hard cofactor.
pub fn factor(n: &BigUint, budget: &FactorBudget) -> Result<Vec<(BigUint, u32)>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        factor_hard(&m, budget, 1, &mut out)?;
    }
    out.sort();
    // Merge duplicates that can arise from recursive splits.
    let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(out.len());
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(merged)
}

fn factor_hard(
    m: &BigUint,
    budget: &FactorBudget,
    mult: u32,
    out: &mut Vec<(BigUint, u32)>,
) -> Result<(), ArithError> {
    if m.is_one() {
        return Ok(());
    }
    if is_prime(m) {
        out.push((m.clone(), mult));
        return Ok(());
    }
    if let Some((b, k)) = perfect_power(m) {
        return factor_hard(&b, budget, mult * k, out);
    }
    let d = brent_rho(m, budget.rho_iterations)
        .ok_or_else(|| ArithError::FactorizationBudget(m.to_string()))?;
    let e = m / &d;
    factor_hard(&d, budget, mult, out)?;
    factor_hard(&e, budget, mult, out)
}

/// The set of primes dividing `n` to an odd power. Unlike `factor`, this
/// never has to split a perfect-square cofactor (even exponents contribute
/// nothing), so it stays fast on the huge square-padded discriminants that
/// trace forms produce.
pub fn odd_exponent_primes(
    n: &BigUint,
    budget: &FactorBudget,
) -> Result<BTreeSet<BigUint>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut set = BTreeSet::new();
    let mut m = n.clone();
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            set.insert(pb);
        }
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        odd_exponent_hard(&m, budget, false, &mut set)?;
    }
    Ok(set)
}

// `flip` tracks an odd multiplicity factor pulled out of a perfect power.
fn odd_exponent_hard(
    m: &BigUint,
    budget: &FactorBudget,
    _flip: bool,
    set: &mut BTreeSet<BigUint>,
) -> Result<(), ArithError> {
    if m.is_one() {
        return Ok(());
    }
    if is_perfect_square(m) {
        // Contributes only even exponents: parity untouched.
        return Ok(());
    }
    if is_prime(m) {
        toggle(set, m.clone());
        return Ok(());
    }
    if let Some((b, k)) = perfect_power(m) {
        if k % 2 == 0 {
            return Ok(());
        }
        return odd_exponent_hard(&b, budget, false, set);
    }
    let d = brent_rho(m, budget.rho_iterations)
        .ok_or_else(|| ArithError::FactorizationBudget(m.to_string()))?;
    let e = m / &d;
    // Shared primes between the two halves are handled by the XOR toggle.
    odd_exponent_hard(&d, budget, false, set)?;
    odd_exponent_hard(&e, budget, false, set)
}

fn toggle(set: &mut BTreeSet<BigUint>, p: BigUint) {
    if !set.remove(&p) {
        set.insert(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primality() {
        assert!(is_prime(&BigUint::from(2u32)));
        assert!(is_prime(&BigUint::from(97u32)));
        assert!(!is_prime(&BigUint::from(1u32)));
        assert!(!is_prime(&BigUint::from(561u32))); // Carmichael
        assert!(is_prime(&"170141183460469231731687303715884105727".parse().unwrap())); // 2^127-1
        assert!(is_prime_strict(&BigUint::from(101u32)).unwrap());
        assert!(is_prime_strict(&"170141183460469231731687303715884105727".parse::<BigUint>().unwrap()).is_err());
    }

    #[test]
    fn factor_basics() {
        let b = FactorBudget::default();
        let f = factor(&BigUint::from(5040u32), &b).unwrap();
        assert_eq!(
            f,
            vec![
                (BigUint::from(2u32), 4),
                (BigUint::from(3u32), 2),
                (BigUint::from(5u32), 1),
                (BigUint::from(7u32), 1)
            ]
        );
        // Semiprime beyond the trial bound.
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factor(&n, &b).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(&f[0].0 * &f[1].0, n);
    }

    #[test]
    fn parity_primes_skip_square_cofactors() {
        let b = FactorBudget::default();
        // 3 * (product of two 25+ digit primes)^2 would be hopeless to factor,
        // so emulate with two large Mersenne-size primes squared.
        let p: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        let q: BigUint = "43143988327398957279342419750374600193".parse().unwrap();
        let n = BigUint::from(3u32) * (&p * &q) * (&p * &q);
        let set = odd_exponent_primes(&n, &b).unwrap();
        assert_eq!(set, [BigUint::from(3u32)].into_iter().collect());
        // Odd power of a large prime is still reported.
        let n2 = &p * &p * &p;
        let set2 = odd_exponent_primes(&n2, &b).unwrap();
        assert_eq!(set2, [p.clone()].into_iter().collect());
    }

    #[test]
    fn perfect_square_detection() {
        assert!(is_perfect_square(&BigUint::from(144u32)));
        assert!(!is_perfect_square(&BigUint::from(145u32)));
    }
}
