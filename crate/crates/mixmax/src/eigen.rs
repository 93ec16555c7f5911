//! Dense nonsymmetric eigenvalue solver: balancing, Hessenberg reduction
//! by stabilized elementary similarities, and the Francis double-shift QR
//! iteration, generic over the working precision.
//!
//! The solver follows the classic EISPACK balanc/elmhes/hqr sequence.
//! Balancing uses exact radix-2 scaling, so it is error-free in any binary
//! floating type. The scalar abstraction lets the same code run in plain
//! `f64` or in double-double when the input matrix needs more than 53
//! mantissa bits.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dd::Dd;

/// Floating scalar usable by the QR iteration.
pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_i128(x: i128) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    /// Machine epsilon of the representation.
    fn epsilon() -> Self;
    /// Exact multiplication by 2^k.
    fn scale_pow2(self, k: i32) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i128(x: i128) -> Self {
        x as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn scale_pow2(self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
}

impl Scalar for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn from_i128(x: i128) -> Self {
        Dd::from_i128(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn epsilon() -> Self {
        // 2^-104: conservative for the ~106-bit significand
        Dd::from_f64(4.930380657631324e-32)
    }
    fn scale_pow2(self, k: i32) -> Self {
        Dd::scale_pow2(self, k)
    }
}

/// Dense row-major square matrix over a scalar type.
#[derive(Clone, Debug)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues as (re, im) pairs; conjugates appear together.
pub fn eigenvalues<T: Scalar>(mut a: Mat<T>) -> Result<Vec<(T, T)>, usize> {
    let n = a.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![(a.at(0, 0), T::zero())]);
    }
    balance(&mut a);
    hessenberg(&mut a);
    hqr(&mut a)
}

/// Parlett–Reinsch balancing with exact radix-2 scaling.
fn balance<T: Scalar>(a: &mut Mat<T>) {
    let n = a.n();
    let radix = T::from_f64(2.0);
    let sqrdx = T::from_f64(4.0);
    let done_threshold = T::from_f64(0.95);
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + a.at(j, i).abs();
                    r = r + a.at(i, j).abs();
                }
            }
            if c > T::zero() && r > T::zero() {
                let mut f = T::one();
                let mut c = c;
                let s = c + r;
                let mut g = r / radix;
                while c < g {
                    f = f * radix;
                    c = c * sqrdx;
                }
                g = r * radix;
                while c > g {
                    f = f / radix;
                    c = c / sqrdx;
                }
                if (c + r) / f < done_threshold * s {
                    done = false;
                    let ginv = T::one() / f;
                    for j in 0..n {
                        *a.at_mut(i, j) = a.at(i, j) * ginv;
                    }
                    for j in 0..n {
                        *a.at_mut(j, i) = a.at(j, i) * f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Reduction to upper Hessenberg form by pivoted elementary similarities.
fn hessenberg<T: Scalar>(a: &mut Mat<T>) {
    let n = a.n();
    for m in 1..n.saturating_sub(1) {
        let mut x = T::zero();
        let mut pivot = m;
        for j in m..n {
            if a.at(j, m - 1).abs() > x.abs() {
                x = a.at(j, m - 1);
                pivot = j;
            }
        }
        if pivot != m {
            for j in m - 1..n {
                let (u, v) = (a.at(pivot, j), a.at(m, j));
                *a.at_mut(pivot, j) = v;
                *a.at_mut(m, j) = u;
            }
            for j in 0..n {
                let (u, v) = (a.at(j, pivot), a.at(j, m));
                *a.at_mut(j, pivot) = v;
                *a.at_mut(j, m) = u;
            }
        }
        if x != T::zero() {
            for i in m + 1..n {
                let mut y = a.at(i, m - 1);
                if y != T::zero() {
                    y = y / x;
                    *a.at_mut(i, m - 1) = T::zero();
                    for j in m..n {
                        let v = a.at(i, j) - y * a.at(m, j);
                        *a.at_mut(i, j) = v;
                    }
                    for j in 0..n {
                        let v = a.at(j, m) + y * a.at(j, i);
                        *a.at_mut(j, m) = v;
                    }
                }
            }
        }
    }
    // clear whatever survived below the first subdiagonal
    for i in 2..n {
        for j in 0..i - 1 {
            *a.at_mut(i, j) = T::zero();
        }
    }
}

#[inline]
fn sign_of<T: Scalar>(magnitude: T, sign_source: T) -> T {
    if sign_source >= T::zero() {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix.
///
/// Returns eigenvalues, or `Err(index)` if an eigenvalue failed to converge
/// within 30 iterations.
fn hqr<T: Scalar>(a: &mut Mat<T>) -> Result<Vec<(T, T)>, usize> {
    let n = a.n();
    let eps = T::epsilon();
    let mut wr = vec![T::zero(); n];
    let mut wi = vec![T::zero(); n];

    let mut anorm = T::zero();
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm = anorm + a.at(i, j).abs();
        }
    }

    let mut nn: isize = n as isize - 1;
    let mut t = T::zero();
    while nn >= 0 {
        let mut its = 0;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn as usize;
            while l >= 1 {
                let mut s = a.at(l - 1, l - 1).abs() + a.at(l, l).abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a.at(l, l - 1).abs() <= eps * s {
                    *a.at_mut(l, l - 1) = T::zero();
                    break;
                }
                l -= 1;
            }
            let nnu = nn as usize;
            let mut x = a.at(nnu, nnu);
            if l == nnu {
                // one root found
                wr[nnu] = x + t;
                wi[nnu] = T::zero();
                nn -= 1;
                break;
            }
            let mut y = a.at(nnu - 1, nnu - 1);
            let mut w = a.at(nnu, nnu - 1) * a.at(nnu - 1, nnu);
            if l == nnu - 1 {
                // two roots found
                let p = (y - x).scale_pow2(-1);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x = x + t;
                if q >= T::zero() {
                    let z = p + sign_of(z, p);
                    wr[nnu - 1] = x + z;
                    wr[nnu] = wr[nnu - 1];
                    if z != T::zero() {
                        wr[nnu] = x - w / z;
                    }
                    wi[nnu - 1] = T::zero();
                    wi[nnu] = T::zero();
                } else {
                    wr[nnu - 1] = x + p;
                    wr[nnu] = x + p;
                    wi[nnu - 1] = -z;
                    wi[nnu] = z;
                }
                nn -= 2;
                break;
            }
            if its == 30 {
                return Err(nnu);
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t = t + x;
                for i in 0..=nnu {
                    let v = a.at(i, i) - x;
                    *a.at_mut(i, i) = v;
                }
                let s = a.at(nnu, nnu - 1).abs() + a.at(nnu - 1, nnu - 2).abs();
                y = T::from_f64(0.75) * s;
                x = y;
                w = T::from_f64(-0.4375) * s * s;
            }
            its += 1;

            // form the shift and find two consecutive small subdiagonals
            let mut m = nnu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a.at(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a.at(m + 1, m) + a.at(m, m + 1);
                q = a.at(m + 1, m + 1) - z - rr - ss;
                r = a.at(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let u = a.at(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (a.at(m - 1, m - 1).abs() + z.abs() + a.at(m + 1, m + 1).abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nnu {
                *a.at_mut(i, i - 2) = T::zero();
                if i != m + 2 {
                    *a.at_mut(i, i - 3) = T::zero();
                }
            }

            // double QR sweep over rows l..nn
            for k in m..nnu {
                if k != m {
                    p = a.at(k, k - 1);
                    q = a.at(k + 1, k - 1);
                    r = T::zero();
                    if k != nnu - 1 {
                        r = a.at(k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p = p / x;
                        q = q / x;
                        r = r / x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s == T::zero() {
                    continue;
                }
                if k == m {
                    if l != m {
                        let v = -a.at(k, k - 1);
                        *a.at_mut(k, k - 1) = v;
                    }
                } else {
                    *a.at_mut(k, k - 1) = -s * x;
                }
                p = p + s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q = q / p;
                r = r / p;
                for j in k..=nnu {
                    let mut pp = a.at(k, j) + q * a.at(k + 1, j);
                    if k != nnu - 1 {
                        pp = pp + r * a.at(k + 2, j);
                    }
                    let v2 = a.at(k + 1, j) - pp * y;
                    let v1 = a.at(k, j) - pp * x;
                    *a.at_mut(k, j) = v1;
                    *a.at_mut(k + 1, j) = v2;
                    if k != nnu - 1 {
                        let v3 = a.at(k + 2, j) - pp * z;
                        *a.at_mut(k + 2, j) = v3;
                    }
                }
                let mmin = nnu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a.at(i, k) + y * a.at(i, k + 1);
                    if k != nnu - 1 {
                        pp = pp + z * a.at(i, k + 2);
                    }
                    let v1 = a.at(i, k) - pp;
                    let v2 = a.at(i, k + 1) - pp * q;
                    *a.at_mut(i, k) = v1;
                    *a.at_mut(i, k + 1) = v2;
                    if k != nnu - 1 {
                        let v3 = a.at(i, k + 2) - pp * r;
                        *a.at_mut(i, k + 2) = v3;
                    }
                }
            }
        }
    }
    Ok(wr.into_iter().zip(wi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_eigs_f64(m: Mat<f64>) -> Vec<(f64, f64)> {
        let mut e = eigenvalues(m).unwrap();
        e.sort_by(|a, b| {
            (a.0, a.1)
                .partial_cmp(&(b.0, b.1))
                .unwrap()
        });
        e
    }

    #[test]
    fn diagonal_matrix() {
        let d = [3.0, -1.0, 0.5, 7.0];
        let m = Mat::from_fn(4, |i, j| if i == j { d[i] } else { 0.0 });
        let e = sorted_eigs_f64(m);
        let mut want: Vec<f64> = d.to_vec();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in e.iter().zip(want) {
            assert!((got.0 - want).abs() < 1e-12 && got.1 == 0.0);
        }
    }

    #[test]
    fn rotation_has_unit_imaginary_pair() {
        // [[0,-1],[1,0]] has eigenvalues ±i
        let m = Mat::from_fn(2, |i, j| match (i, j) {
            (0, 1) => -1.0,
            (1, 0) => 1.0,
            _ => 0.0,
        });
        let e = eigenvalues(m).unwrap();
        let mut ims: Vec<f64> = e.iter().map(|&(_, im)| im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-14);
        assert!((ims[1] - 1.0).abs() < 1e-14);
        for &(re, _) in &e {
            assert!(re.abs() < 1e-14);
        }
    }

    #[test]
    fn known_quadratic_spectrum() {
        // [[1,1],[1,2]]: λ = (3 ± √5)/2
        let m = Mat::from_fn(2, |i, j| [[1.0, 1.0], [1.0, 2.0]][i][j]);
        let e = sorted_eigs_f64(m);
        assert!((e[0].0 - 0.3819660112501051).abs() < 1e-14);
        assert!((e[1].0 - 2.618033988749895).abs() < 1e-14);
    }

    #[test]
    fn matches_nalgebra_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        for n in [2usize, 3, 5, 8, 13, 21, 40] {
            for _ in 0..4 {
                let vals: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let m = Mat::from_fn(n, |i, j| vals[i * n + j]);
                let na = nalgebra::DMatrix::from_row_slice(n, n, &vals);
                let mut ours: Vec<(f64, f64)> = eigenvalues(m).unwrap();
                let mut theirs: Vec<(f64, f64)> =
                    na.complex_eigenvalues().iter().map(|c| (c.re, c.im)).collect();
                let key = |x: &(f64, f64)| (x.0, x.1);
                ours.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
                theirs.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
                for (o, t) in ours.iter().zip(&theirs) {
                    let scale = (t.0.hypot(t.1)).max(1.0);
                    assert!(
                        ((o.0 - t.0).hypot(o.1 - t.1)) / scale < 1e-7,
                        "n={n} ours={o:?} nalgebra={t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn dd_agrees_with_f64_on_small_matrix() {
        let vals = [[4.0, 1.0, 0.0], [2.0, -3.0, 1.5], [0.5, 0.25, 2.0]];
        let mf = Mat::from_fn(3, |i, j| vals[i][j]);
        let md = Mat::from_fn(3, |i, j| Dd::from_f64(vals[i][j]));
        let mut ef = eigenvalues(mf).unwrap();
        let mut ed: Vec<(f64, f64)> = eigenvalues(md)
            .unwrap()
            .into_iter()
            .map(|(re, im)| (re.to_f64(), im.to_f64()))
            .collect();
        ef.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (f, d) in ef.iter().zip(&ed) {
            assert!((f.0 - d.0).abs() < 1e-10 && (f.1 - d.1).abs() < 1e-10);
        }
    }
}
