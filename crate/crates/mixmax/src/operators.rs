//! The three generator matrix families and their closed-form entries.
//!
//! Every family shares the same skeleton: row 1 and column 1 are all ones,
//! everything above the diagonal is one, and the band at or below the
//! diagonal follows a per-family arithmetic progression. A tuning integer
//! `s` is added at position (3, 2). Entries are exposed through the closed
//! form so the generator never has to materialize the matrix.
//!
//! For row index `i ≥ 2` and column `2 ≤ j ≤ i`:
//!
//! * two-parameter:   `i - j + 2`
//! * three-parameter: `(i - j)·m + 2`
//! * four-parameter:  `2` on the diagonal, else `(i - j + 2)·m + b`
//!
//! Three-parameter with `m = 1` reproduces the two-parameter matrix, and
//! four-parameter with `b = 2 - 2m` reproduces the three-parameter one.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Modulus, Residue};
use crate::matrix::ResidueMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    TwoParam,
    ThreeParam,
    FourParam,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::TwoParam => "two",
            Family::ThreeParam => "three",
            Family::FourParam => "four",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "two" => Ok(Family::TwoParam),
            "three" => Ok(Family::ThreeParam),
            "four" => Ok(Family::FourParam),
            other => Err(Error::Parse(format!("unknown family tag {other:?}"))),
        }
    }
}

/// Symbolic description of one operator instance.
///
/// `m` is fixed to 1 for the two-parameter family and `b` is only
/// meaningful for the four-parameter one (it is stored as `2 - 2m`
/// otherwise, the value at which the four-parameter matrix degenerates).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    family: Family,
    n: u32,
    s: i64,
    m: u64,
    b: i64,
}

impl OperatorSpec {
    pub fn two_param(n: u32, s: i64) -> Result<Self> {
        Self::build(Family::TwoParam, n, s, 1, 0)
    }

    pub fn three_param(n: u32, s: i64, m: u64) -> Result<Self> {
        Self::build(Family::ThreeParam, n, s, m, 0)
    }

    pub fn four_param(n: u32, s: i64, m: u64, b: i64) -> Result<Self> {
        Self::build(Family::FourParam, n, s, m, b)
    }

    pub fn new(family: Family, n: u32, s: i64, m: u64, b: i64) -> Result<Self> {
        match family {
            Family::TwoParam => {
                if m != 1 {
                    return Err(Error::InvalidSpec(format!(
                        "two-parameter family fixes m = 1, got {m}"
                    )));
                }
                Self::two_param(n, s)
            }
            Family::ThreeParam => Self::three_param(n, s, m),
            Family::FourParam => Self::four_param(n, s, m, b),
        }
    }

    fn build(family: Family, n: u32, s: i64, m: u64, b: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("N must be at least 2, got {n}")));
        }
        if n < 3 && s != 0 {
            // the perturbation site (3,2) does not exist below N = 3
            return Err(Error::InvalidSpec(format!(
                "s must be 0 for N = {n} (no (3,2) entry)"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidSpec("m must be positive".into()));
        }
        let b = match family {
            Family::FourParam => b,
            _ => 0,
        };
        Ok(OperatorSpec { family, n, s, m, b })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Matrix entry at 1-based (i, j). Panics if out of range.
    pub fn entry(&self, i: u32, j: u32) -> i128 {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i}, {j}) out of range for N = {}",
            self.n
        );
        let mut e: i128 = if i == 1 || j == 1 || j > i {
            1
        } else {
            match self.family {
                Family::TwoParam => (i - j + 2) as i128,
                Family::ThreeParam => (i - j) as i128 * self.m as i128 + 2,
                Family::FourParam => {
                    if j == i {
                        2
                    } else {
                        (i - j + 2) as i128 * self.m as i128 + self.b as i128
                    }
                }
            }
        };
        if i == 3 && j == 2 {
            e += self.s as i128;
        }
        e
    }

    /// Largest |entry| over the whole matrix, for precision selection.
    pub fn max_abs_entry(&self) -> i128 {
        let mut best: i128 = 1;
        // the extremes live in column 2 (including the s site at i = 3)
        for i in 1..=self.n {
            best = best.max(self.entry(i, 2.min(self.n)).abs());
        }
        best
    }

    /// Full matrix of exact integer entries.
    pub fn materialize(&self) -> DenseMatrix {
        let n = self.n as usize;
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                entries.push(self.entry(i, j));
            }
        }
        DenseMatrix { n, entries }
    }

    /// The matrix reduced mod p.
    pub fn to_residue_matrix(&self, modulus: Modulus) -> ResidueMatrix {
        let n = self.n as usize;
        let mut out = ResidueMatrix::zero(n, modulus);
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.set(i as usize - 1, j as usize - 1, modulus.reduce_i128(self.entry(i, j)));
            }
        }
        out
    }

    /// Determinant mod p by Gaussian elimination. The families are built
    /// so that this is 1 for every valid spec.
    pub fn det_mod(&self, modulus: Modulus) -> Residue {
        det_mod_matrix(&self.to_residue_matrix(modulus))
    }

    /// Diagnostic checks that do not reject the spec.
    pub fn validate(&self, modulus: Modulus) -> Vec<ValidationWarning> {
        let mut warnings = Vec::new();
        let nm = self.n as u128 * self.m as u128;
        if nm >= modulus.p() as u128 {
            warnings.push(ValidationWarning::NmExceedsModulus {
                n: self.n,
                m: self.m,
                p: modulus.p(),
            });
        }
        warnings
    }

    /// Detects multipliers of the form 2^k + 1 eligible for the shift-add path.
    pub fn special_m_exponent(&self, modulus: Modulus) -> Option<u32> {
        let m = self.m;
        if m < 3 || !(m - 1).is_power_of_two() {
            return None;
        }
        let k = (m - 1).trailing_zeros();
        if k < 61 && m < modulus.p() {
            Some(k)
        } else {
            None
        }
    }
}

/// Exact integer materialization of an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<i128>,
}

impl DenseMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.n + j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ValidationWarning {
    /// N·m ≥ p breaks the unambiguous correspondence between the continuous
    /// system and the rational sublattice.
    NmExceedsModulus { n: u32, m: u64, p: u64 },
}

impl std::fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationWarning::NmExceedsModulus { n, m, p } => {
                write!(f, "N·m = {n}·{m} is not below p = {p}; lattice correspondence is ambiguous")
            }
        }
    }
}

/// Determinant of an arbitrary residue matrix by elimination over GF(p).
pub fn det_mod_matrix(a: &ResidueMatrix) -> Residue {
    let n = a.n();
    let modulus = a.modulus();
    let mut w = a.clone();
    let mut det: u64 = 1;
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| w.get(r, col) != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (w.get(col, j), w.get(pivot_row, j));
                w.set(col, j, y);
                w.set(pivot_row, j, x);
            }
            det = modulus.neg(det);
        }
        let pivot = w.get(col, col);
        det = modulus.mul(det, pivot);
        let inv = modulus.inv(pivot).expect("pivot is non-zero");
        for r in col + 1..n {
            let factor = modulus.mul(w.get(r, col), inv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let sub = modulus.mul(factor, w.get(col, j));
                let v = modulus.sub(w.get(r, j), sub);
                w.set(r, j, v);
            }
        }
    }
    det
}

// JSON form: {"family": "two", "n": 256, "s": "-1", "m": "1", "b": "0"}
// s, m, b travel as decimal strings because s can exceed 2^53 and the
// format must survive readers that parse numbers as doubles.
#[derive(Serialize, Deserialize)]
struct SpecWire {
    family: String,
    #[serde(rename = "N")]
    n: u32,
    s: String,
    m: String,
    b: String,
}

impl Serialize for OperatorSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SpecWire {
            family: self.family.tag().to_string(),
            n: self.n,
            s: self.s.to_string(),
            m: self.m.to_string(),
            b: self.b.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for OperatorSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = SpecWire::deserialize(de)?;
        let family = Family::from_tag(&wire.family).map_err(D::Error::custom)?;
        let s: i64 = wire.s.parse().map_err(D::Error::custom)?;
        let m: u64 = wire.m.parse().map_err(D::Error::custom)?;
        let b: i64 = wire.b.parse().map_err(D::Error::custom)?;
        let (m, b) = match family {
            Family::TwoParam => (1, 0),
            Family::ThreeParam => (m, 0),
            Family::FourParam => (m, b),
        };
        OperatorSpec::new(family, wire.n, s, m, b).map_err(D::Error::custom)
    }
}
