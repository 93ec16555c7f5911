//! Dense N×N matrices over GF(p) with square-and-multiply exponentiation.
//!
//! Multiplication is the hot path behind jump-ahead and period
//! certification. Row products accumulate raw 128-bit products and fold
//! every 32 terms, which keeps the accumulator below 2^127 for any
//! modulus up to 2^61 - 1. A rayon row-parallel variant is available as
//! `par_mul` when the `parallel` feature is enabled.

use num_bigint::BigUint;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::field::{Modulus, Residue};

/// Row-major square matrix of canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    n: usize,
    modulus: Modulus,
    data: Vec<u64>,
}

// fold the accumulator before it can reach 2^127
const ACC_CHUNK: usize = 32;

impl ResidueMatrix {
    pub fn zero(n: usize, modulus: Modulus) -> Self {
        ResidueMatrix { n, modulus, data: vec![0; n * n] }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        let mut m = Self::zero(n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, modulus: Modulus) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            for v in row {
                data.push(modulus.reduce_u64(v));
            }
        }
        ResidueMatrix { n, modulus, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Residue {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Residue) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(k, &v)| v == u64::from(k / self.n == k % self.n))
    }

    /// One output row of `self · rhs`.
    fn mul_row_into(&self, rhs: &Self, i: usize, out: &mut [u64]) {
        let n = self.n;
        let m = &self.modulus;
        let lhs_row = &self.data[i * n..(i + 1) * n];
        for (j, out_j) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for k0 in (0..n).step_by(ACC_CHUNK) {
                let hi = (k0 + ACC_CHUNK).min(n);
                for k in k0..hi {
                    acc += lhs_row[k] as u128 * rhs.data[k * n + j] as u128;
                }
                acc = m.reduce_u128(acc) as u128;
            }
            *out_j = acc as u64;
        }
    }

    /// `self · rhs` single-threaded.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n, self.modulus);
        let n = self.n;
        for (i, out_row) in out.data.chunks_mut(n).enumerate() {
            self.mul_row_into(rhs, i, out_row);
        }
        out
    }

    /// `self · rhs` with rows distributed across the rayon pool.
    #[cfg(feature = "parallel")]
    pub fn par_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n, self.modulus);
        let n = self.n;
        out.data
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, out_row)| self.mul_row_into(rhs, i, out_row));
        out
    }

    /// Dispatches to `par_mul` when compiled with the `parallel` feature.
    #[inline]
    pub fn mul_auto(&self, rhs: &Self) -> Self {
        #[cfg(feature = "parallel")]
        {
            self.par_mul(rhs)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.mul(rhs)
        }
    }

    /// Matrix–vector product mod p.
    pub fn matvec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let n = self.n;
        let m = &self.modulus;
        (0..n)
            .map(|i| {
                let row = &self.data[i * n..(i + 1) * n];
                let mut acc: u128 = 0;
                for k0 in (0..n).step_by(ACC_CHUNK) {
                    let hi = (k0 + ACC_CHUNK).min(n);
                    for k in k0..hi {
                        acc += row[k] as u128 * v[k] as u128;
                    }
                    acc = m.reduce_u128(acc) as u128;
                }
                acc as u64
            })
            .collect()
    }

    /// `self^e` by square-and-multiply, O(log e) multiplications.
    pub fn pow_big(&self, e: &BigUint) -> Self {
        self.pow_impl(e, Self::mul)
    }

    /// `self^e` using the row-parallel multiply.
    #[cfg(feature = "parallel")]
    pub fn par_pow_big(&self, e: &BigUint) -> Self {
        self.pow_impl(e, Self::par_mul)
    }

    /// Dispatches on the `parallel` feature.
    pub fn pow_big_auto(&self, e: &BigUint) -> Self {
        #[cfg(feature = "parallel")]
        {
            self.par_pow_big(e)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.pow_big(e)
        }
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow_big(&BigUint::from(e))
    }

    fn pow_impl(&self, e: &BigUint, mul: impl Fn(&Self, &Self) -> Self) -> Self {
        let mut acc = Self::identity(self.n, self.modulus);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = mul(&acc, &acc);
            if e.bit(i) {
                acc = mul(&acc, self);
            }
        }
        acc
    }
}
