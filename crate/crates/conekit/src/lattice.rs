//! Integral symmetric pairing lattices and rational class vectors.
//!
//! A [`Lattice`] is a finite-rank free module with a fixed basis and an
//! integral symmetric Gram matrix. Classes are held with rational
//! coefficients: several of the distinguished classes that appear in practice
//! (half-classes on non-spin lattices, for instance) are honest rational
//! combinations of the working basis, so integrality is a queryable property
//! of a [`ClassVector`], not a structural guarantee.
//!
//! All arithmetic is exact. Signatures are computed by simultaneous
//! row/column reduction over the rationals (Lagrange diagonalization), which
//! is well defined by Sylvester's law of inertia.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_rational, is_integer, Rational};

/// A class with rational coefficients over some lattice basis.
///
/// The vector does not carry a back-reference to its lattice; every lattice
/// operation checks that the coefficient count matches the lattice rank and
/// reports a dimension error otherwise. Ordering is lexicographic on the
/// coefficients, which is what all deterministic output orders use.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector {
    coeffs: Vec<Rational>,
}

impl ClassVector {
    /// Wraps raw rational coefficients.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ClassVector { coeffs }
    }

    /// Builds a class with integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        ClassVector {
            coeffs: coeffs.iter().map(|&c| crate::ratio::rat(c)).collect(),
        }
    }

    /// The zero class in a rank-`rank` lattice.
    pub fn zero(rank: usize) -> Self {
        ClassVector {
            coeffs: vec![Rational::zero(); rank],
        }
    }

    /// Number of coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True for the empty coefficient list (a rank-0 vector, never produced
    /// by this crate's lattices).
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient slice.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Single coefficient.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// The class scaled by an exact rational factor.
    pub fn scaled(&self, factor: &Rational) -> Self {
        ClassVector {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

fn assert_same_len(a: &ClassVector, b: &ClassVector) {
    assert_eq!(
        a.len(),
        b.len(),
        "class arithmetic requires equal coefficient counts"
    );
}

impl Add for &ClassVector {
    type Output = ClassVector;
    fn add(self, rhs: &ClassVector) -> ClassVector {
        assert_same_len(self, rhs);
        ClassVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ClassVector {
    type Output = ClassVector;
    fn sub(self, rhs: &ClassVector) -> ClassVector {
        assert_same_len(self, rhs);
        ClassVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ClassVector {
    type Output = ClassVector;
    fn neg(self) -> ClassVector {
        ClassVector {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Counts of positive, negative, and zero squares in any rational
/// diagonalization of the pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignatureReport {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SignatureReport {
    /// Exactly one positive square and a nondegenerate pairing: the shape
    /// every cone operation in this crate assumes.
    pub fn is_lorentzian(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

impl fmt::Display for SignatureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Parity of the integral pairing: even iff every square is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A based integral lattice: named basis vectors and a symmetric integer
/// Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis_names: Vec<String>,
    gram: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Builds a lattice from basis names and integer Gram rows, validating
    /// shape, symmetry, and name hygiene.
    pub fn new(basis_names: Vec<String>, gram_rows: Vec<Vec<i64>>) -> Result<Self> {
        let rank = basis_names.len();
        if rank == 0 {
            return Err(Error::EmptyBasis);
        }
        for (i, name) in basis_names.iter().enumerate() {
            if name.is_empty() || basis_names[..i].contains(name) {
                return Err(Error::BadBasisName { name: name.clone() });
            }
        }
        if gram_rows.len() != rank {
            return Err(Error::BadGramShape {
                row: rank.min(gram_rows.len()),
                expected: rank,
                found: gram_rows.len(),
            });
        }
        for (i, row) in gram_rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::BadGramShape {
                    row: i,
                    expected: rank,
                    found: row.len(),
                });
            }
        }
        for (i, row) in gram_rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().skip(i + 1) {
                if *entry != gram_rows[j][i] {
                    return Err(Error::AsymmetricGram { row: i, col: j });
                }
            }
        }
        let gram = gram_rows
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        Ok(Lattice { basis_names, gram })
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    /// Names of the basis vectors, in order.
    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// One Gram entry.
    pub fn gram_entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    /// The `i`-th basis vector as a class.
    pub fn basis_vector(&self, i: usize) -> ClassVector {
        let mut coeffs = vec![Rational::zero(); self.rank()];
        coeffs[i] = Rational::from_integer(BigInt::from(1));
        ClassVector::new(coeffs)
    }

    fn check_dims(&self, a: &ClassVector) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: a.len(),
            });
        }
        Ok(())
    }

    /// The coefficient vector of the linear functional `pair(-, a)`,
    /// i.e. the matrix-vector product `G a`.
    pub fn gram_times(&self, a: &ClassVector) -> Result<Vec<Rational>> {
        self.check_dims(a)?;
        Ok((0..self.rank())
            .map(|i| {
                self.gram[i]
                    .iter()
                    .zip(a.coeffs())
                    .map(|(g, c)| c * Rational::from_integer(g.clone()))
                    .sum()
            })
            .collect())
    }

    /// Exact intersection pairing of two classes.
    pub fn pair(&self, a: &ClassVector, b: &ClassVector) -> Result<Rational> {
        self.check_dims(a)?;
        let gb = self.gram_times(b)?;
        Ok(a.coeffs().iter().zip(&gb).map(|(x, y)| x * y).sum())
    }

    /// Exact self-intersection of a class.
    pub fn self_int(&self, a: &ClassVector) -> Result<Rational> {
        self.pair(a, a)
    }

    /// Signature by exact simultaneous row/column reduction.
    ///
    /// Pivots are taken in first-nonzero order; a zero diagonal pivot is
    /// repaired first by swapping in a later basis vector with a nonzero
    /// square, and otherwise (all remaining squares zero) by adding a basis
    /// vector it pairs with, which makes the new square `2 * pairing != 0`.
    pub fn signature(&self) -> SignatureReport {
        let a: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| Rational::from_integer(g.clone()))
                    .collect()
            })
            .collect();
        rational_signature(a)
    }

    /// Parity of the pairing: odd iff some basis vector has odd square.
    pub fn parity(&self) -> Parity {
        if (0..self.rank()).any(|i| self.gram[i][i].is_odd()) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// True when the signature is `(1, rank-1, 0)`.
    pub fn is_lorentzian(&self) -> bool {
        self.signature().is_lorentzian()
    }

    /// Strict positive-square test (the open positive cone).
    pub fn in_positive_cone(&self, a: &ClassVector) -> Result<bool> {
        Ok(self.self_int(a)?.is_positive())
    }

    /// Whether two positive-square classes lie in the same component of the
    /// positive cone.
    ///
    /// Requires signature `(1, rank-1, 0)`; in that case the positive cone
    /// has exactly two components and two positive-square classes share one
    /// iff they pair positively (they can never pair to zero).
    pub fn same_component(&self, a: &ClassVector, b: &ClassVector) -> Result<bool> {
        let sig = self.signature();
        if !sig.is_lorentzian() {
            return Err(Error::SignatureNotLorentzian {
                positive: sig.positive,
                negative: sig.negative,
                zero: sig.zero,
            });
        }
        for class in [a, b] {
            let square = self.self_int(class)?;
            if !square.is_positive() {
                return Err(Error::NotPositiveSquare {
                    class: self.render_class(class),
                    square: format_rational(&square),
                });
            }
        }
        let p = self.pair(a, b)?;
        debug_assert!(
            !p.is_zero(),
            "positive-square classes in a (1, n) pairing never pair to zero"
        );
        Ok(p.is_positive())
    }

    /// Reconstructs the unique class with prescribed pairings against the
    /// given probe classes.
    ///
    /// Each `(probe, target)` entry imposes the linear condition
    /// `pair(x, probe) = target`. Returns the unique solution, an
    /// inconsistency error if no class realizes the targets, or an
    /// underdetermination error (with the solution-kernel dimension) if the
    /// probes do not pin the class down.
    // Indexed loops: the elimination reads one matrix row while writing another.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_from_pairings(&self, targets: &[(ClassVector, Rational)]) -> Result<ClassVector> {
        let n = self.rank();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(targets.len());
        let mut rhs: Vec<Rational> = Vec::with_capacity(targets.len());
        for (probe, target) in targets {
            rows.push(self.gram_times(probe)?);
            rhs.push(target.clone());
        }
        // Gauss-Jordan elimination with exact arithmetic; pivots are the
        // first nonzero entry in each column.
        let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut next_row = 0usize;
        for col in 0..n {
            if next_row == rows.len() {
                break;
            }
            let Some(sel) = (next_row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(next_row, sel);
            rhs.swap(next_row, sel);
            let pivot = rows[next_row][col].clone();
            for entry in rows[next_row].iter_mut() {
                *entry /= &pivot;
            }
            rhs[next_row] /= &pivot;
            for i in 0..rows.len() {
                if i == next_row || rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col].clone();
                for c in 0..n {
                    let t = &rows[next_row][c] * &f;
                    rows[i][c] -= t;
                }
                let t = &rhs[next_row] * &f;
                rhs[i] -= t;
            }
            pivot_rows.push((next_row, col));
            next_row += 1;
        }
        for i in next_row..rows.len() {
            debug_assert!(rows[i].iter().all(Rational::is_zero));
            if !rhs[i].is_zero() {
                return Err(Error::InconsistentPairings);
            }
        }
        if next_row < n {
            return Err(Error::UnderdeterminedPairings {
                kernel_dim: n - next_row,
            });
        }
        let mut coeffs = vec![Rational::zero(); n];
        for (row, col) in pivot_rows {
            coeffs[col] = rhs[row].clone();
        }
        Ok(ClassVector::new(coeffs))
    }

    /// Renders a class as a combination of named basis vectors,
    /// e.g. `2e - 2k` or `(1/2)e - (1/2)f`.
    pub fn render_class(&self, a: &ClassVector) -> String {
        if a.len() != self.rank() {
            return a.to_string();
        }
        let mut out = String::new();
        for (coeff, name) in a.coeffs().iter().zip(&self.basis_names) {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                let text = format_rational(&magnitude);
                if text.contains('/') {
                    out.push_str(&format!("({text})"));
                } else {
                    out.push_str(&text);
                }
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Lagrange diagonalization of an arbitrary rational symmetric matrix;
/// shared by [`Lattice::signature`] and the enumeration engine's
/// definiteness tests. Consumes its working copy.
// Indexed loops: each step pairs a row operation with its mirrored column
// operation on the same matrix, so iterators cannot hold the borrows.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rational_signature(mut a: Vec<Vec<Rational>>) -> SignatureReport {
    let n = a.len();
    let (mut positive, mut negative, mut zero) = (0usize, 0usize, 0usize);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = ((i + 1)..n).find(|&j| !a[i][j].is_zero()) {
                for col in 0..n {
                    let t = a[j][col].clone();
                    a[i][col] += t;
                }
                for row in 0..n {
                    let t = a[row][j].clone();
                    a[row][i] += t;
                }
            } else {
                // The basis vector pairs to zero with everything left:
                // it contributes one zero square.
                zero += 1;
                continue;
            }
        }
        let pivot = a[i][i].clone();
        if pivot.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for j in (i + 1)..n {
            if a[i][j].is_zero() {
                continue;
            }
            let f = &a[i][j] / &pivot;
            for col in 0..n {
                let t = &a[i][col] * &f;
                a[j][col] -= t;
            }
            for row in 0..n {
                let t = &a[row][i] * &f;
                a[row][j] -= t;
            }
        }
    }
    SignatureReport {
        positive,
        negative,
        zero,
    }
}
