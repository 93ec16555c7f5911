//! Exact modular arithmetic over GF(p) for word-sized primes.
//!
//! Residues are canonical `u64` values in `[0, p-1]`. Every operation takes
//! canonical inputs and returns a canonical output. The Mersenne prime
//! p = 2^61 - 1 has a dedicated reduction path: because 2^61 ≡ 1 (mod p),
//! a 122-bit product `hi·2^61 + lo` folds to `hi + lo`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical element of GF(p), always in `[0, p-1]`.
pub type Residue = u64;

/// The Mersenne prime 2^61 - 1, the largest prime this crate supports.
pub const MERSENNE61: u64 = (1u64 << 61) - 1;

/// A prime modulus in `[2, 2^61-1]` together with its reduction strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    is_mersenne61: bool,
}

impl Modulus {
    /// Builds a modulus, rejecting composites and values above 2^61 - 1.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MERSENNE61).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus { p, is_mersenne61: p == MERSENNE61 })
    }

    /// The default production modulus p = 2^61 - 1.
    pub fn mersenne61() -> Self {
        Modulus { p: MERSENNE61, is_mersenne61: true }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn is_mersenne61(&self) -> bool {
        self.is_mersenne61
    }

    /// Reduces an arbitrary `u64` to canonical form.
    #[inline]
    pub fn reduce_u64(&self, x: u64) -> Residue {
        if self.is_mersenne61 {
            let folded = (x & MERSENNE61) + (x >> 61);
            if folded >= MERSENNE61 { folded - MERSENNE61 } else { folded }
        } else {
            x % self.p
        }
    }

    /// Reduces a full 128-bit value to canonical form.
    #[inline]
    pub fn reduce_u128(&self, x: u128) -> Residue {
        if self.is_mersenne61 {
            // x = lo + mid·2^61 + hi·2^122 ≡ lo + mid + hi  (mod 2^61 - 1)
            let lo = (x as u64) & MERSENNE61;
            let mid = ((x >> 61) as u64) & MERSENNE61;
            let hi = (x >> 122) as u64;
            self.reduce_u64(lo + mid + hi)
        } else {
            (x % self.p as u128) as u64
        }
    }

    /// Reduces a signed value, mapping negatives to `p - (|x| mod p)`.
    #[inline]
    pub fn reduce_i128(&self, x: i128) -> Residue {
        let p = self.p as i128;
        let r = x.rem_euclid(p);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b; // < 2^62, no overflow
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a < self.p && b < self.p);
        if a >= b { a - b } else { self.p - (b - a) }
    }

    #[inline]
    pub fn neg(&self, a: Residue) -> Residue {
        debug_assert!(a < self.p);
        if a == 0 { 0 } else { self.p - a }
    }

    /// `(a·b) mod p` through a 128-bit intermediate.
    #[inline]
    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a < self.p && b < self.p);
        let wide = a as u128 * b as u128;
        if self.is_mersenne61 {
            // product < 2^122: one fold to hi + lo, then a conditional subtract
            let lo = (wide as u64) & MERSENNE61;
            let hi = (wide >> 61) as u64;
            let s = hi + lo;
            if s >= MERSENNE61 { s - MERSENNE61 } else { s }
        } else {
            (wide % self.p as u128) as u64
        }
    }

    /// `x·(2^k + 1) mod p` by shift-add, bit-identical to `mul(x, 2^k+1)`.
    ///
    /// Rejects `k` for which 2^k + 1 is not a valid residue.
    #[inline]
    pub fn mul_special(&self, x: Residue, k: u32) -> Result<Residue> {
        if k >= 61 || (1u64 << k) + 1 >= self.p {
            return Err(Error::SpecialMultiplierTooLarge { k, p: self.p });
        }
        debug_assert!(x < self.p);
        Ok(self.reduce_u128(((x as u128) << k) + x as u128))
    }

    /// `a^e mod p` by square-and-multiply on a word-sized exponent.
    pub fn pow(&self, a: Residue, mut e: u64) -> Residue {
        let mut base = a;
        let mut acc: u64 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `a^e mod p` for an exponent of arbitrary size.
    pub fn pow_big(&self, a: Residue, e: &num_bigint::BigUint) -> Residue {
        let bits = e.bits();
        let mut acc: u64 = 1;
        // most-significant-bit first
        for i in (0..bits).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse via Fermat: a^(p-2). Zero has no inverse.
    pub fn inv(&self, a: Residue) -> Option<Residue> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
}

/// Deterministic Miller–Rabin for the full 64-bit range.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact for all n < 3.3·10^24.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
