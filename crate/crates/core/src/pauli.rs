//! The n-qubit Pauli group in binary symplectic form.
//!
//! An operator is stored as `i^phase · ⊗_j X^{x_j} Z^{z_j}`, with qubit `j`
//! at bit `j` of the `x` and `z` words. `Y` is not a separate letter in this
//! normal form: since `Y = i·X·Z`, a `Y` on some qubit is `x_j = z_j = 1`
//! together with one unit of `phase`. Multiplication is then an XOR of the
//! bit words plus a phase update from a single dot product.
//!
//! The i-tracking convention for `Y` is an implementation choice. Everything
//! downstream only ever looks at the real sign of Hermitian operators, which
//! [`PauliOperator::sign`] reports in the familiar `I/X/Y/Z` letter form.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};

/// Largest supported qubit count (one machine word per bit vector).
pub const MAX_QUBITS: usize = 64;

/// One single-qubit letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn dot(a: u64, b: u64) -> u32 {
    (a & b).count_ones() & 1
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

impl PauliOperator {
    /// Builds `i^phase · X^x Z^z`; bits above `n` must be clear.
    pub fn new(n: usize, x: u64, z: u64, phase: u8) -> Result<Self> {
        check_n(n)?;
        if (x | z) & !mask(n) != 0 {
            return Err(Error::Domain(format!("bit vectors exceed {n} qubits")));
        }
        Ok(PauliOperator {
            n,
            x,
            z,
            phase: phase & 3,
        })
    }

    pub(crate) fn from_raw(n: usize, x: u64, z: u64, phase: u8) -> Self {
        PauliOperator {
            n,
            x,
            z,
            phase: phase & 3,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    /// Builds the Hermitian operator with real `sign` and the given letters.
    pub fn from_letters(letters: &[Pauli], negative: bool) -> Result<Self> {
        let n = letters.len();
        check_n(n)?;
        let (mut x, mut z, mut ys) = (0u64, 0u64, 0u8);
        for (j, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u64) << j;
            z |= (bz as u64) << j;
            ys += (bx && bz) as u8;
        }
        let sign = if negative { 2 } else { 0 };
        Ok(Self::from_raw(n, x, z, sign + ys))
    }

    /// A single letter on qubit `q`, identity elsewhere, sign `+`.
    pub fn single(n: usize, q: usize, letter: Pauli) -> Result<Self> {
        if q >= n {
            return Err(Error::Domain(format!("qubit {q} out of range for n={n}")));
        }
        let mut letters = vec![Pauli::I; n];
        letters[q] = letter;
        Self::from_letters(&letters, false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    /// Exponent of `i` in the `X`-then-`Z` normal form.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Packs `(x, z)` into one key; used for sign-insensitive comparisons.
    pub fn symplectic_key(&self) -> u128 {
        self.x as u128 | ((self.z as u128) << 64)
    }

    pub fn letter(&self, q: usize) -> Pauli {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (1, 1) => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Phase in the letter representation, where each `Y` carries no `i`.
    fn letter_phase(&self) -> u8 {
        (self.phase + 4 - ((self.x & self.z).count_ones() % 4) as u8) & 3
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_phase().is_multiple_of(2)
    }

    /// `+1` or `-1` for Hermitian operators, `None` for `±i` multiples.
    pub fn sign(&self) -> Option<i8> {
        match self.letter_phase() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Phase exponent of `self²`, either 0 or 2: the square is
    /// `i^{2·phase}·(-1)^{x·z}` times the identity.
    pub fn square_phase(&self) -> u8 {
        (2 * self.phase + 2 * dot(self.x, self.z) as u8) & 3
    }

    pub fn negated(&self) -> Self {
        Self::from_raw(self.n, self.x, self.z, self.phase + 2)
    }

    pub fn same_up_to_sign(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let phase = self.phase + other.phase + 2 * dot(self.z, other.x) as u8;
        Self::from_raw(self.n, self.x ^ other.x, self.z ^ other.z, phase)
    }

    /// The operator product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        (dot(self.x, other.z) ^ dot(self.z, other.x)) == 0
    }

    /// True iff the operators commute; otherwise they anticommute.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(self.commutes_unchecked(other))
    }

    /// `tr(self · other)`: `i^k · 2^n` when the symplectic parts match, else 0.
    pub fn trace_inner(&self, other: &Self) -> Result<Complex<i128>> {
        self.check_same_n(other)?;
        if !self.same_up_to_sign(other) {
            return Ok(Complex::new(0, 0));
        }
        let d = 1i128 << self.n;
        let unit = match self.mul_unchecked(other).phase {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        };
        Ok(unit * d)
    }

    /// Parses a signed Pauli string such as `+XZIZ`, `-YXII` or `-iZ`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let offset = text.len() - text.trim_start().len();
        let (sign, body_start) = if let Some(rest) = trimmed.strip_prefix("+i") {
            (1u8, trimmed.len() - rest.len())
        } else if let Some(rest) = trimmed.strip_prefix("-i") {
            (3, trimmed.len() - rest.len())
        } else if let Some(rest) = trimmed.strip_prefix('+') {
            (0, trimmed.len() - rest.len())
        } else if let Some(rest) = trimmed.strip_prefix('-') {
            (2, trimmed.len() - rest.len())
        } else {
            (0, 0)
        };
        let body = &trimmed[body_start..];
        if body.is_empty() {
            return Err(Error::Parse {
                pos: offset + body_start,
                msg: "empty operator body".into(),
            });
        }
        let mut letters = Vec::with_capacity(body.len());
        for (i, ch) in body.char_indices() {
            let l = match ch {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::Parse {
                        pos: offset + body_start + i,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            };
            letters.push(l);
        }
        if letters.len() > MAX_QUBITS {
            return Err(Error::QubitCount {
                n: letters.len(),
                max: MAX_QUBITS,
            });
        }
        let p = Self::from_letters(&letters, false)?;
        Ok(Self::from_raw(p.n, p.x, p.z, p.phase + sign))
    }
}

impl FromStr for PauliOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.letter_phase() as usize];
        f.write_str(prefix)?;
        for q in 0..self.n {
            let c = match self.letter(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
