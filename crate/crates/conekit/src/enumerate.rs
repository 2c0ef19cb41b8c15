//! Exhaustive search for exceptional classes in a bounded coefficient box.
//!
//! An *exceptional class* for a canonical class `K` is an integral class `x`
//! with `x^2 = -1` and `x . K = -1`. [`enumerate_exceptional`] returns every
//! solution whose coefficients lie in `[-bound, bound]` — coefficients with
//! respect to the ambient basis, or with respect to an explicit sublattice
//! basis when the query carries one (in which case "integral" means an
//! integer combination of the sublattice members).
//!
//! Two exact routes are used internally:
//!
//! * When the pairing restricted to the integer kernel of the linear
//!   functional `x -> x . K` is negative definite (true whenever `K^2 > 0`,
//!   e.g. on blow-ups of the plane at up to eight points), the linear
//!   condition is solved over the integers first. On that affine sublattice
//!   the quadratic condition becomes a positive-definite equation with
//!   finitely many solutions, enumerated by a bounded depth-first search with
//!   exact rational interval bounds, then filtered to the coefficient box.
//!   This is what keeps large boxes (rank 9, bound 27) tractable.
//! * Otherwise the solution set need not be finite and the coefficient box
//!   itself is searched depth-first, pruning on exact bounds for both
//!   conditions.
//!
//! Both routes merge to the same deterministic output order: ascending
//! lexicographic on the ambient coefficient tuples. With the `parallel`
//! feature enabled (the default), the top search coordinate is sharded
//! across a rayon pool; [`enumerate_exceptional_seq`] always runs the
//! sequential code path and is exported so the two can be cross-checked and
//! benchmarked against each other.
//!
//! Searches have no error outcomes (an empty list is a valid result), so the
//! documented preconditions — a lattice of signature `(1, n, 0)`, matching
//! dimensions, and a linearly independent sublattice basis — are enforced
//! with panics: violating them is a programming error, and the model layer
//! validates all user-supplied data before it can reach this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{rational_signature, ClassVector, Lattice};
use crate::ratio::{floor_int, Rational};

/// What to search for: the canonical class, an optional sublattice basis to
/// search inside, and the coefficient box half-width.
///
/// `bound = 0` restricts the search to the zero class alone, which is never
/// a solution, so it always yields the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalQuery {
    /// The canonical class, in ambient coordinates.
    pub k: ClassVector,
    /// Optional sublattice to search in; members are ambient classes and
    /// must be linearly independent.
    pub sublattice_basis: Option<Vec<ClassVector>>,
    /// Half-width of the coefficient box.
    pub bound: u32,
}

impl ExceptionalQuery {
    /// A search over the whole ambient basis.
    pub fn ambient(k: ClassVector, bound: u32) -> Self {
        ExceptionalQuery {
            k,
            sublattice_basis: None,
            bound,
        }
    }

    /// A search over integer combinations of the given sublattice members.
    pub fn in_sublattice(k: ClassVector, basis: Vec<ClassVector>, bound: u32) -> Self {
        ExceptionalQuery {
            k,
            sublattice_basis: Some(basis),
            bound,
        }
    }
}

/// Every class in the query's search region with square `-1` and pairing
/// `-1` against `K`, in ascending lexicographic order of ambient
/// coefficients. Uses the rayon pool when the `parallel` feature is on.
///
/// # Panics
///
/// If the lattice signature is not `(1, n, 0)`, if dimensions disagree, or
/// if a provided sublattice basis is linearly dependent.
pub fn enumerate_exceptional(lat: &Lattice, query: &ExceptionalQuery) -> Vec<ClassVector> {
    enumerate_impl(lat, query, cfg!(feature = "parallel"))
}

/// Identical contract to [`enumerate_exceptional`], but always runs the
/// sequential code path. This is the reference implementation the parallel
/// route is checked and benchmarked against.
pub fn enumerate_exceptional_seq(lat: &Lattice, query: &ExceptionalQuery) -> Vec<ClassVector> {
    enumerate_impl(lat, query, false)
}

fn enumerate_impl(lat: &Lattice, query: &ExceptionalQuery, parallel: bool) -> Vec<ClassVector> {
    assert!(
        lat.is_lorentzian(),
        "exceptional-class search requires signature (1, n, 0), got {}",
        lat.signature()
    );
    let space = SearchSpace::build(lat, query);
    let raw = space.solutions(parallel);
    let mut out: Vec<ClassVector> = raw
        .into_iter()
        .map(|coords| space.to_ambient(&coords))
        .collect();
    out.sort();
    if cfg!(debug_assertions) {
        let minus_one = crate::ratio::rat(-1);
        for x in &out {
            debug_assert_eq!(lat.self_int(x).unwrap(), minus_one);
            debug_assert_eq!(lat.pair(x, &query.k).unwrap(), minus_one);
        }
    }
    out
}

/// The search problem in working coordinates: an integer vector `x` in the
/// box `[-bound, bound]^r` with `x^T gram x = -1` and `lf . x = -1`.
struct SearchSpace {
    r: usize,
    /// Pairing matrix of the search basis (rational: sublattice members may
    /// have rational ambient coefficients).
    gram: Vec<Vec<Rational>>,
    /// Coefficients of the linear functional `x -> pair(x, K)`.
    lf: Vec<Rational>,
    bound: BigInt,
    /// Columns expressing search basis vectors in ambient coordinates;
    /// `None` means the search basis is the ambient basis.
    basis_columns: Option<Vec<ClassVector>>,
}

impl SearchSpace {
    fn build(lat: &Lattice, query: &ExceptionalQuery) -> Self {
        let gk = lat
            .gram_times(&query.k)
            .expect("canonical class must match the lattice rank");
        match &query.sublattice_basis {
            None => {
                let n = lat.rank();
                let gram = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| Rational::from_integer(lat.gram_entry(i, j).clone()))
                            .collect()
                    })
                    .collect();
                SearchSpace {
                    r: n,
                    gram,
                    lf: gk,
                    bound: BigInt::from(query.bound),
                    basis_columns: None,
                }
            }
            Some(basis) => {
                let r = basis.len();
                assert!(r > 0, "sublattice basis must not be empty");
                let gram: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|a| {
                        basis
                            .iter()
                            .map(|b| {
                                lat.pair(a, b)
                                    .expect("sublattice members must match the lattice rank")
                            })
                            .collect()
                    })
                    .collect();
                let lf = basis
                    .iter()
                    .map(|a| a.coeffs().iter().zip(&gk).map(|(c, g)| c * g).sum())
                    .collect();
                assert_eq!(
                    rational_rank(basis),
                    r,
                    "sublattice basis members must be linearly independent"
                );
                SearchSpace {
                    r,
                    gram,
                    lf,
                    bound: BigInt::from(query.bound),
                    basis_columns: Some(basis.clone()),
                }
            }
        }
    }

    fn to_ambient(&self, coords: &[BigInt]) -> ClassVector {
        match &self.basis_columns {
            None => ClassVector::new(
                coords
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect(),
            ),
            Some(basis) => {
                let n = basis[0].len();
                let mut out = vec![Rational::zero(); n];
                for (c, member) in coords.iter().zip(basis) {
                    let factor = Rational::from_integer(c.clone());
                    for (slot, coeff) in out.iter_mut().zip(member.coeffs()) {
                        *slot += coeff * &factor;
                    }
                }
                ClassVector::new(out)
            }
        }
    }

    /// All integer solutions in the box, in working coordinates and
    /// unspecified order.
    fn solutions(&self, parallel: bool) -> Vec<Vec<BigInt>> {
        if self.bound.is_zero() {
            // Only the zero class is in the region, and its square is 0.
            return Vec::new();
        }
        // Clear denominators: lf . x = -1 becomes a . x = c over Z.
        let denom_lcm = self
            .lf
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let a: Vec<BigInt> = self
            .lf
            .iter()
            .map(|v| {
                let scaled = v * Rational::from_integer(denom_lcm.clone());
                debug_assert!(scaled.denom().is_one());
                scaled.to_integer()
            })
            .collect();
        let c = -denom_lcm;
        if a.iter().all(Zero::is_zero) {
            // K pairs to zero with the whole search lattice; the pairing
            // condition is unsatisfiable.
            return Vec::new();
        }
        let (particular, kernel) = match solve_linear_diophantine(&a, &c) {
            Some(pk) => pk,
            None => return Vec::new(),
        };
        // The pairing restricted to the kernel decides the route.
        let q_kernel = conjugate(&self.gram, &kernel);
        let definite = kernel.is_empty()
            || rational_signature(q_kernel.clone()) == crate::lattice::SignatureReport {
                positive: 0,
                negative: kernel.len(),
                zero: 0,
            };
        if definite {
            self.sphere_solutions(&particular, &kernel, &q_kernel, parallel)
        } else {
            self.box_solutions(parallel)
        }
    }

    /// Negative-definite route: enumerate the finitely many solutions of the
    /// quadratic condition on the affine solution lattice of the pairing
    /// condition, then keep the ones inside the box.
    fn sphere_solutions(
        &self,
        x0: &[BigInt],
        kernel: &[Vec<BigInt>],
        q_kernel: &[Vec<Rational>],
        parallel: bool,
    ) -> Vec<Vec<BigInt>> {
        let minus_one = crate::ratio::rat(-1);
        let c0 = self.eval_quadratic(x0);
        let s = kernel.len();
        if s == 0 {
            return if c0 == minus_one && self.in_box(x0) {
                vec![x0.to_vec()]
            } else {
                Vec::new()
            };
        }
        // With x = x0 + W t the condition x^2 = -1 becomes
        //   t^T P t - 2 b^T t = c0 + 1,  P = -W^T gram W positive definite,
        // i.e. (t - t*)^T P (t - t*) = R with P t* = b and
        // R = c0 + 1 + b . t*.
        let p: Vec<Vec<Rational>> = q_kernel
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        let b: Vec<Rational> = kernel
            .iter()
            .map(|w| {
                (0..self.r)
                    .map(|i| {
                        let gram_row_dot: Rational = (0..self.r)
                            .map(|j| {
                                &self.gram[i][j] * Rational::from_integer(x0[j].clone())
                            })
                            .sum();
                        Rational::from_integer(w[i].clone()) * gram_row_dot
                    })
                    .sum()
            })
            .collect();
        let center =
            solve_unique_linear(p.clone(), b.clone()).expect("definite matrix is invertible");
        let b_dot_center: Rational = b.iter().zip(&center).map(|(x, y)| x * y).sum();
        let big_r = c0 + Rational::one() + b_dot_center;
        if big_r.is_negative() {
            return Vec::new();
        }
        // Unit-triangular factorization P = U^T D U for the search bounds.
        let (dvec, u) = ldl(&p);
        let sphere = SphereSearch {
            s,
            dvec,
            u,
            center,
            big_r,
        };
        let top_range = sphere.level_range(s - 1, &sphere.big_r.clone(), &[]);
        let tops = int_range(top_range);
        let explore = |t_top: &BigInt| {
            let mut out = Vec::new();
            let mut suffix = vec![t_top.clone()];
            sphere.dfs(&mut suffix, &mut out);
            out
        };
        let t_solutions = shard(tops, parallel, &explore);
        t_solutions
            .into_iter()
            .filter_map(|t| {
                // t is stored from the top level down; undo that.
                let mut x = x0.to_vec();
                for (level, value) in t.iter().rev().enumerate() {
                    for (xi, wi) in x.iter_mut().zip(&kernel[level]) {
                        *xi += wi * value;
                    }
                }
                if self.in_box(&x) {
                    debug_assert_eq!(self.eval_quadratic(&x), minus_one);
                    Some(x)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Indefinite route: depth-first search over the coefficient box with
    /// exact interval pruning on both conditions.
    fn box_solutions(&self, parallel: bool) -> Vec<Vec<BigInt>> {
        let bound_rat = Rational::from_integer(self.bound.clone());
        // lin_suffix[l] = bound * sum_{j >= l} |lf_j|
        let mut lin_suffix = vec![Rational::zero(); self.r + 1];
        for l in (0..self.r).rev() {
            lin_suffix[l] = &lin_suffix[l + 1] + self.lf[l].abs() * &bound_rat;
        }
        // tail_abs[l] = bound^2 * sum_{i,j >= l} |gram_ij|
        let bound_sq = &bound_rat * &bound_rat;
        let mut tail_abs = vec![Rational::zero(); self.r + 1];
        for l in (0..self.r).rev() {
            let mut row_sum = self.gram[l][l].abs();
            for j in (l + 1)..self.r {
                // Off-diagonal entries appear twice in the symmetric sum.
                row_sum += crate::ratio::rat(2) * self.gram[l][j].abs();
            }
            tail_abs[l] = &tail_abs[l + 1] + row_sum * &bound_sq;
        }
        let search = BoxSearch {
            space: self,
            lin_suffix,
            tail_abs,
        };
        let tops = int_range(Some((-self.bound.clone(), self.bound.clone())));
        let explore = |v: &BigInt| {
            let mut out = Vec::new();
            let vr = Rational::from_integer(v.clone());
            let qpart = &self.gram[0][0] * &vr * &vr;
            let lpart = &self.lf[0] * &vr;
            let cross: Vec<Rational> = (0..self.r).map(|j| &self.gram[0][j] * &vr).collect();
            let mut prefix = vec![v.clone()];
            search.dfs(&mut prefix, &qpart, &lpart, &cross, &mut out);
            out
        };
        shard(tops, parallel, &explore)
    }

    fn eval_quadratic(&self, x: &[BigInt]) -> Rational {
        let xr: Vec<Rational> = x
            .iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect();
        (0..self.r)
            .map(|i| {
                let row: Rational = (0..self.r).map(|j| &self.gram[i][j] * &xr[j]).sum();
                &xr[i] * row
            })
            .sum()
    }

    fn in_box(&self, x: &[BigInt]) -> bool {
        x.iter().all(|v| v.abs() <= self.bound)
    }
}

/// Bounded positive-definite search state; levels run from `s - 1` down to 0
/// and `suffix` stores the fixed coordinates top-first.
struct SphereSearch {
    s: usize,
    dvec: Vec<Rational>,
    u: Vec<Vec<Rational>>,
    center: Vec<Rational>,
    big_r: Rational,
}

impl SphereSearch {
    /// Integer range of the level-`i` coordinate given the remaining budget
    /// and the already-fixed coordinates above it (top-first).
    fn level_range(&self, i: usize, remaining: &Rational, suffix: &[BigInt]) -> Option<(BigInt, BigInt)> {
        if remaining.is_negative() {
            return None;
        }
        // y_i = (t_i - c_i) + sum_{j > i} u[i][j] (t_j - c_j); the fixed part
        // is the offset, and D_i y_i^2 <= remaining bounds t_i.
        let mut offset = -&self.center[i];
        for (idx, value) in suffix.iter().enumerate() {
            let j = self.s - 1 - idx;
            debug_assert!(j > i);
            offset += &self.u[i][j]
                * (Rational::from_integer(value.clone()) - &self.center[j]);
        }
        let rho = remaining / &self.dvec[i];
        let alpha = -offset;
        let lo = min_int_ge_minus_root(&alpha, &rho);
        let hi = max_int_le_plus_root(&alpha, &rho);
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Contribution of level `i` to the quadratic form for coordinate value
    /// `t_i`, i.e. `D_i y_i^2`.
    fn level_term(&self, i: usize, t_i: &BigInt, suffix: &[BigInt]) -> Rational {
        let mut y = Rational::from_integer(t_i.clone()) - &self.center[i];
        for (idx, value) in suffix.iter().enumerate() {
            let j = self.s - 1 - idx;
            y += &self.u[i][j] * (Rational::from_integer(value.clone()) - &self.center[j]);
        }
        &self.dvec[i] * &y * &y
    }

    /// Explores levels below the already-fixed suffix; pushes complete
    /// top-first coordinate vectors whose form value is exactly `R`.
    fn dfs(&self, suffix: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        let mut used = Rational::zero();
        for (idx, value) in suffix.iter().enumerate() {
            let i = self.s - 1 - idx;
            used += self.level_term(i, value, &suffix[..idx]);
        }
        let remaining = &self.big_r - &used;
        if remaining.is_negative() {
            return;
        }
        if suffix.len() == self.s {
            if remaining.is_zero() {
                out.push(suffix.clone());
            }
            return;
        }
        let i = self.s - 1 - suffix.len();
        let Some((lo, hi)) = self.level_range(i, &remaining, suffix) else {
            return;
        };
        let mut t_i = lo;
        while t_i <= hi {
            suffix.push(t_i.clone());
            self.dfs(suffix, out);
            suffix.pop();
            t_i += 1;
        }
    }
}

/// Box-search state: pruning tables plus a borrow of the search space.
struct BoxSearch<'a> {
    space: &'a SearchSpace,
    lin_suffix: Vec<Rational>,
    tail_abs: Vec<Rational>,
}

impl BoxSearch<'_> {
    /// `prefix` holds the fixed leading coordinates; `qpart`/`lpart` are the
    /// exact form values on the prefix and `cross[j]` is
    /// `sum_{i fixed} gram[i][j] x_i` for every j.
    fn dfs(
        &self,
        prefix: &mut Vec<BigInt>,
        qpart: &Rational,
        lpart: &Rational,
        cross: &[Rational],
        out: &mut Vec<Vec<BigInt>>,
    ) {
        let space = self.space;
        let minus_one = crate::ratio::rat(-1);
        let level = prefix.len();
        if level == space.r {
            if *qpart == minus_one && *lpart == minus_one {
                out.push(prefix.clone());
            }
            return;
        }
        // Pairing condition: the remaining coordinates can move the linear
        // form by at most lin_suffix[level] in either direction.
        let lin_gap = (&minus_one - lpart).abs();
        if lin_gap > self.lin_suffix[level] {
            return;
        }
        // Square condition: cross terms and the trailing block bound the
        // remaining movement of the quadratic form.
        let bound_rat = Rational::from_integer(space.bound.clone());
        let cross_slack: Rational = cross[level..]
            .iter()
            .map(|c| c.abs())
            .sum::<Rational>()
            * crate::ratio::rat(2)
            * &bound_rat;
        let slack = cross_slack + &self.tail_abs[level];
        let quad_gap = (&minus_one - qpart).abs();
        if quad_gap > slack {
            return;
        }
        let mut v = -space.bound.clone();
        while v <= space.bound {
            let vr = Rational::from_integer(v.clone());
            let new_qpart =
                qpart + crate::ratio::rat(2) * &cross[level] * &vr
                    + &space.gram[level][level] * &vr * &vr;
            let new_lpart = lpart + &space.lf[level] * &vr;
            let mut new_cross = cross.to_vec();
            for (j, slot) in new_cross.iter_mut().enumerate() {
                *slot += &space.gram[level][j] * &vr;
            }
            prefix.push(v.clone());
            self.dfs(prefix, &new_qpart, &new_lpart, &new_cross, out);
            prefix.pop();
            v += 1;
        }
    }
}

/// Runs `explore` over the top-level values, on the rayon pool when asked
/// (and compiled in), otherwise sequentially. Order of the concatenated
/// result is the order of `tops`, but callers sort the final list anyway.
fn shard<F>(tops: Vec<BigInt>, parallel: bool, explore: &F) -> Vec<Vec<BigInt>>
where
    F: Fn(&BigInt) -> Vec<Vec<BigInt>> + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return tops
            .par_iter()
            .map(explore)
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    let _ = parallel;
    tops.iter().flat_map(explore).collect()
}

fn int_range(range: Option<(BigInt, BigInt)>) -> Vec<BigInt> {
    let Some((lo, hi)) = range else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        out.push(v.clone());
        v += 1;
    }
    out
}

/// Rank of a list of rational vectors, by Gaussian elimination.
// Indexed loops: the elimination reads one matrix row while writing another.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rational_rank(vectors: &[ClassVector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(sel) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, sel);
        let pivot = rows[rank][col].clone();
        for i in (rank + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for c in col..cols {
                let t = &rows[rank][c] * &f;
                rows[i][c] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Integer solutions of `a . x = c`: a particular solution and a basis of
/// the solution kernel, or `None` when the gcd of `a` does not divide `c`.
/// Built from a unimodular column reduction `a U = (g, 0, .., 0)`.
fn solve_linear_diophantine(a: &[BigInt], c: &BigInt) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let r = a.len();
    let mut v = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // u is stored as columns: u[j] is the j-th column.
    for i in 1..r {
        if v[i].is_zero() {
            continue;
        }
        let gcd = v[0].extended_gcd(&v[i]);
        let (g, s, t) = (gcd.gcd, gcd.x, gcd.y);
        debug_assert!(!g.is_zero());
        let v0_over_g = &v[0] / &g;
        let vi_over_g = &v[i] / &g;
        let (col0, coli): (Vec<BigInt>, Vec<BigInt>) = u[0]
            .iter()
            .zip(&u[i])
            .map(|(x0, xi)| (&s * x0 + &t * xi, -&vi_over_g * x0 + &v0_over_g * xi))
            .unzip();
        u[0] = col0;
        u[i] = coli;
        v[i] = BigInt::zero();
        v[0] = g;
    }
    let g = v[0].clone();
    debug_assert!(!g.is_zero(), "caller filters the all-zero functional");
    let (g, flip) = if g.is_negative() {
        (-g, true)
    } else {
        (g, false)
    };
    if !(c % &g).is_zero() {
        return None;
    }
    let scale = if flip { -(c / &g) } else { c / &g };
    let particular: Vec<BigInt> = u[0].iter().map(|x| x * &scale).collect();
    let kernel: Vec<Vec<BigInt>> = (1..r).map(|j| u[j].clone()).collect();
    Some((particular, kernel))
}

/// `W^T M W` for rational symmetric `M` and integer columns `W`.
fn conjugate(m: &[Vec<Rational>], w: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let s = w.len();
    let r = m.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for row in 0..r {
                        let mut inner = Rational::zero();
                        for col in 0..r {
                            inner += &m[row][col] * Rational::from_integer(w[j][col].clone());
                        }
                        acc += Rational::from_integer(w[i][row].clone()) * inner;
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Unique solution of a square nonsingular rational system.
// Indexed loops: the elimination reads one matrix row while writing another.
#[allow(clippy::needless_range_loop)]
fn solve_unique_linear(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let sel = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, sel);
        rhs.swap(col, sel);
        let pivot = m[col][col].clone();
        for entry in m[col].iter_mut() {
            *entry /= &pivot;
        }
        rhs[col] /= &pivot;
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in 0..n {
                let t = &m[col][c] * &f;
                m[i][c] -= t;
            }
            let t = &rhs[col] * &f;
            rhs[i] -= t;
        }
    }
    Some(rhs)
}

/// Unit-triangular factorization `P = U^T D U` of a positive-definite
/// rational matrix.
fn ldl(p: &[Vec<Rational>]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let s = p.len();
    let mut dvec = vec![Rational::zero(); s];
    let mut u = vec![vec![Rational::zero(); s]; s];
    for i in 0..s {
        let mut di = p[i][i].clone();
        for k in 0..i {
            di -= &dvec[k] * &u[k][i] * &u[k][i];
        }
        debug_assert!(di.is_positive(), "matrix must be positive definite");
        dvec[i] = di;
        u[i][i] = Rational::one();
        for j in (i + 1)..s {
            let mut value = p[i][j].clone();
            for k in 0..i {
                value -= &dvec[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = value / &dvec[i];
        }
    }
    (dvec, u)
}

/// Largest integer `z` with `z <= alpha + sqrt(rho)`; `rho >= 0`.
fn max_int_le_plus_root(alpha: &Rational, rho: &Rational) -> BigInt {
    debug_assert!(!rho.is_negative());
    // sqrt(rho) = sqrt(rn * rd) / rd, bracketed by integer square roots.
    let t = rho.numer() * rho.denom();
    let s = t.sqrt();
    let hi = alpha + Rational::new(&s + 1, rho.denom().clone());
    let mut z = floor_int(&hi);
    while !le_plus_root(&z, alpha, rho) {
        z -= 1;
    }
    z
}

/// Smallest integer `z` with `z >= alpha - sqrt(rho)`; `rho >= 0`.
fn min_int_ge_minus_root(alpha: &Rational, rho: &Rational) -> BigInt {
    -max_int_le_plus_root(&-alpha, rho)
}

/// Exact test `z <= alpha + sqrt(rho)`.
fn le_plus_root(z: &BigInt, alpha: &Rational, rho: &Rational) -> bool {
    let diff = Rational::from_integer(z.clone()) - alpha;
    if !diff.is_positive() {
        return true;
    }
    &diff * &diff <= *rho
}
