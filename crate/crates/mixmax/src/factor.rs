//! Integer factorizations of the period q, either computed (trial division
//! plus Brent's variant of Pollard rho, capped at 10^18) or supplied from a
//! text file of `prime multiplicity` lines. Supplied factorizations are
//! verified to multiply back to q before use.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::is_prime_u64;

/// Where a factorization came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    Computed,
    Supplied,
}

/// Prime factorization of a period candidate q.
#[derive(Clone, Debug)]
pub struct FactorizationOfQ {
    factors: Vec<(BigUint, u32)>,
    provenance: Provenance,
}

/// Built-in factorization bound.
pub const FACTOR_CAP: u64 = 1_000_000_000_000_000_000;

impl FactorizationOfQ {
    /// Distinct prime factors with multiplicities.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Checks that the product of prime powers equals `q`.
    pub fn verify(&self, q: &BigUint) -> Result<()> {
        let mut prod = BigUint::one();
        for (p, mult) in &self.factors {
            prod *= p.pow(*mult);
        }
        if &prod == q {
            Ok(())
        } else {
            Err(Error::BadFactorization)
        }
    }

    /// Factors q with the built-in machinery; q must fit under [`FACTOR_CAP`].
    pub fn compute(q: &BigUint) -> Result<Self> {
        let digits = q.to_string().len() as u64;
        let Some(small) = to_u64(q) else {
            return Err(Error::FactorizationUnavailable { digits, cap: FACTOR_CAP });
        };
        if small > FACTOR_CAP {
            return Err(Error::FactorizationUnavailable { digits, cap: FACTOR_CAP });
        }
        let factors = factorize_u64(small)
            .into_iter()
            .map(|(p, m)| (BigUint::from(p), m))
            .collect();
        Ok(FactorizationOfQ { factors, provenance: Provenance::Computed })
    }

    /// Parses `prime multiplicity` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let prime: BigUint = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: bad prime: {e}", lineno + 1)))?;
            let mult: u32 = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing multiplicity", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: bad multiplicity: {e}", lineno + 1)))?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("line {}: trailing fields", lineno + 1)));
            }
            if mult == 0 {
                return Err(Error::Parse(format!("line {}: zero multiplicity", lineno + 1)));
            }
            factors.push((prime, mult));
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty factorization".into()));
        }
        Ok(FactorizationOfQ { factors, provenance: Provenance::Supplied })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Builds directly from known (prime, multiplicity) pairs.
    pub fn from_parts(factors: Vec<(BigUint, u32)>, provenance: Provenance) -> Self {
        FactorizationOfQ { factors, provenance }
    }
}

fn to_u64(x: &BigUint) -> Option<u64> {
    let digits = x.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

/// Factors a u64 into ascending (prime, multiplicity) pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, m)) => *m += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while d <= 100_000 && d.saturating_mul(d) <= n {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }
    // whatever survives trial division is handled by rho
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    out
}

/// Brent's cycle-finding variant of Pollard rho; returns a proper factor
/// of composite odd `n`.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let mut c = 1u64;
    loop {
        let f = |x: u64| {
            let y = mul(x, x) + c;
            if y >= n { y - n } else { y }
        };
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1; // retry with a different polynomial
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
