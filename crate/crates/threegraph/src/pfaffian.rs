//! The Λ matrix, exact and finite-field Pfaffians, the signed-count identity,
//! its perfect-matching expansion, the variance identity and the randomized
//! spanning-tree existence test.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::model::{ThreeGraph, Vertex};
use crate::ring::{is_prime, next_prime, Gfp, Scalar};
use crate::signs::TripleOrientation;

/// `+1` if `(i j k)` is a cyclic rotation of the sorted order, `-1` if it is
/// the opposite cyclic order, `0` on a repeated index.
pub fn epsilon(i: Vertex, j: Vertex, k: Vertex) -> i8 {
    if i == j || j == k || i == k {
        return 0;
    }
    // parity of the word (i, j, k) relative to sorted order
    let mut inv = 0;
    if i > j {
        inv += 1;
    }
    if i > k {
        inv += 1;
    }
    if j > k {
        inv += 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A square antisymmetric matrix over an exact scalar ring.
#[derive(Clone, PartialEq, Debug)]
pub struct SkewMatrix<R> {
    dim: usize,
    entries: Vec<R>, // row-major
}

impl<R: Scalar> SkewMatrix<R> {
    /// Builds from an upper-triangle generator; antisymmetry holds by
    /// construction.
    pub fn from_upper<F: FnMut(usize, usize) -> R>(dim: usize, mut f: F) -> Self {
        let mut entries = vec![R::zero(); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                entries[i * dim + j] = v.clone();
                entries[j * dim + i] = -v;
            }
        }
        SkewMatrix { dim, entries }
    }

    /// Validates an explicit row-major entry list.
    pub fn from_entries(dim: usize, entries: Vec<R>) -> Result<Self> {
        assert_eq!(entries.len(), dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let a = entries[i * dim + j].clone();
                let b = entries[j * dim + i].clone();
                if !(a + b).is_zero() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(SkewMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.dim + j]
    }

    /// The matrix with (0-based) row and column `k` removed.
    pub fn deleted(&self, k: usize) -> SkewMatrix<R> {
        assert!(k < self.dim);
        let dim = self.dim - 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..self.dim {
            if i == k {
                continue;
            }
            for j in 0..self.dim {
                if j == k {
                    continue;
                }
                entries.push(self.get(i, j).clone());
            }
        }
        SkewMatrix { dim, entries }
    }

    pub fn map<S: Scalar, F: Fn(&R) -> S>(&self, f: F) -> SkewMatrix<S> {
        SkewMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// `Λ_{i,j} = Σ_{k≠i,j} ε_{i,j,k} ŷ_{ijk}` where `ŷ` carries the orientation
/// sign (the value is negated on triples oriented opposite to canonical).
/// `values` is aligned with `h.triples()`; triples absent from `h` contribute 0.
pub fn lambda_matrix<R: Scalar>(
    h: &ThreeGraph,
    omega: &TripleOrientation,
    values: &[R],
) -> SkewMatrix<R> {
    assert_eq!(values.len(), h.triple_count());
    let n = h.n_vertices();
    let mut cell: BTreeMap<(Vertex, Vertex), R> = BTreeMap::new();
    for (idx, t) in h.triples().iter().enumerate() {
        let s = omega.sign(t).expect("orientation covers the host");
        let y = if s == 1 {
            values[idx].clone()
        } else {
            -values[idx].clone()
        };
        let [a, b, c] = t.vertices();
        for (i, j, k) in [(a, b, c), (a, c, b), (b, c, a)] {
            let contrib = if epsilon(i, j, k) == 1 {
                y.clone()
            } else {
                -y.clone()
            };
            let e = cell.entry((i, j)).or_insert_with(R::zero);
            *e = e.clone() + contrib;
        }
    }
    SkewMatrix::from_upper(n, |i, j| {
        cell.get(&((i + 1) as Vertex, (j + 1) as Vertex))
            .cloned()
            .unwrap_or_else(R::zero)
    })
}

/// Pfaffian over `BigRational` by the fold recursion
/// `Pf(A) = A01 * Pf(A')`, `A'[i][j] = A[i+2][j+2] - (A0i' A1j' - A0j' A1i')/A01`.
fn pfaffian_rational(mut a: Vec<BigRational>, mut dim: usize) -> BigRational {
    let mut result = BigRational::one();
    let mut negate = false;
    while dim > 0 {
        let at = |store: &Vec<BigRational>, i: usize, j: usize| store[i * dim + j].clone();
        // pivot: first nonzero entry of row 0
        let pivot = (1..dim).find(|&j| !a[j].is_zero());
        let j = match pivot {
            None => return BigRational::zero(),
            Some(j) => j,
        };
        if j != 1 {
            // symmetric swap of index 1 and j flips the Pfaffian sign
            for r in 0..dim {
                a.swap(r * dim + 1, r * dim + j);
            }
            for c in 0..dim {
                a.swap(dim + c, j * dim + c);
            }
            negate = !negate;
        }
        let p = at(&a, 0, 1);
        result *= p.clone();
        if dim == 2 {
            break;
        }
        let nd = dim - 2;
        let mut next = vec![BigRational::zero(); nd * nd];
        for i in 0..nd {
            for jj in (i + 1)..nd {
                let v = at(&a, i + 2, jj + 2)
                    - (at(&a, 0, i + 2) * at(&a, 1, jj + 2)
                        - at(&a, 0, jj + 2) * at(&a, 1, i + 2))
                        / p.clone();
                next[i * nd + jj] = v.clone();
                next[jj * nd + i] = -v;
            }
        }
        a = next;
        dim = nd;
    }
    if negate {
        -result
    } else {
        result
    }
}

/// Exact Pfaffian of an integer skew matrix, by elimination with exact
/// rational bookkeeping.
pub fn pfaffian_exact(m: &SkewMatrix<BigInt>) -> Result<BigInt> {
    if m.dim() % 2 != 0 {
        return Err(Error::OddDimension(m.dim()));
    }
    if m.dim() == 0 {
        return Ok(BigInt::one());
    }
    let rational: Vec<BigRational> = m
        .entries
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let pf = pfaffian_rational(rational, m.dim());
    debug_assert!(pf.denom().is_one() || pf.is_zero());
    Ok(pf.to_integer())
}

/// Pfaffian over a prime field by the same elimination with field inverses.
pub fn pfaffian_mod(m: &SkewMatrix<Gfp>, q: u64) -> Result<Gfp> {
    if !is_prime(q) {
        return Err(Error::NonPrimeModulus(q));
    }
    if m.dim() % 2 != 0 {
        return Err(Error::OddDimension(m.dim()));
    }
    if m.dim() == 0 {
        return Ok(Gfp::new(1, q));
    }
    let mut a: Vec<Gfp> = m.entries.iter().map(|v| *v + Gfp::new(0, q)).collect();
    let mut dim = m.dim();
    let mut result = Gfp::new(1, q);
    let mut negate = false;
    while dim > 0 {
        let pivot = (1..dim).find(|&j| !a[j].is_zero());
        let j = match pivot {
            None => return Ok(Gfp::new(0, q)),
            Some(j) => j,
        };
        if j != 1 {
            for r in 0..dim {
                a.swap(r * dim + 1, r * dim + j);
            }
            for c in 0..dim {
                a.swap(dim + c, j * dim + c);
            }
            negate = !negate;
        }
        let p = a[1];
        result = result * p;
        if dim == 2 {
            break;
        }
        let pinv = p.inverse();
        let nd = dim - 2;
        let mut next = vec![Gfp::new(0, q); nd * nd];
        for i in 0..nd {
            for jj in (i + 1)..nd {
                let v = a[(i + 2) * dim + jj + 2]
                    - (a[i + 2] * a[dim + jj + 2] - a[jj + 2] * a[dim + i + 2]) * pinv;
                next[i * nd + jj] = v;
                next[jj * nd + i] = -v;
            }
        }
        a = next;
        dim = nd;
    }
    Ok(if negate { -result } else { result })
}

/// Crossing number of a perfect matching of an ordered vertex set:
/// `#{i<j<k<l : {i,k},{j,l} both matched}`.
pub fn cross_number(matching: &[(Vertex, Vertex)]) -> usize {
    let mut cross = 0;
    for (a, &(i, k)) in matching.iter().enumerate() {
        for &(j, l) in matching.iter().skip(a + 1) {
            let (i, k) = (i.min(k), i.max(k));
            let (j, l) = (j.min(l), j.max(l));
            if (i < j && j < k && k < l) || (j < i && i < l && l < k) {
                cross += 1;
            }
        }
    }
    cross
}

/// `(-1)^{cross(M)}`.
pub fn matching_sign(matching: &[(Vertex, Vertex)]) -> i8 {
    if cross_number(matching) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Combinatorial Pfaffian: the sum over perfect matchings of the (0-based)
/// index set with crossing-parity signs. Independent of the elimination
/// route; intended for cross-checks and the matching expansion.
pub fn pfaffian_matching_sum<R: Scalar>(m: &SkewMatrix<R>) -> Result<R> {
    if m.dim() % 2 != 0 {
        return Err(Error::OddDimension(m.dim()));
    }
    let mut acc = R::zero();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut free: Vec<usize> = (0..m.dim()).collect();
    sum_matchings(m, &mut pairs, &mut free, &mut acc);
    Ok(acc)
}

fn sum_matchings<R: Scalar>(
    m: &SkewMatrix<R>,
    pairs: &mut Vec<(usize, usize)>,
    free: &mut Vec<usize>,
    acc: &mut R,
) {
    if free.is_empty() {
        let as_vertices: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .map(|&(a, b)| ((a + 1) as Vertex, (b + 1) as Vertex))
            .collect();
        let mut term = R::one();
        for &(a, b) in pairs.iter() {
            term = term * m.get(a, b).clone();
        }
        if matching_sign(&as_vertices) == -1 {
            term = -term;
        }
        *acc = acc.clone() + term;
        return;
    }
    let a = free[0];
    for idx in 1..free.len() {
        let b = free[idx];
        if m.get(a, b).is_zero() {
            continue;
        }
        let mut rest: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&x| x != a && x != b)
            .collect();
        pairs.push((a, b));
        sum_matchings(m, pairs, &mut rest, acc);
        pairs.pop();
    }
}

/// Exact determinant by rational Gaussian elimination (independent of the
/// Pfaffian routines; used for the `Pf² = det` cross-check).
pub fn determinant_exact(m: &SkewMatrix<BigInt>) -> BigInt {
    let dim = m.dim();
    let mut a: Vec<BigRational> = m
        .entries
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let mut det = BigRational::one();
    for col in 0..dim {
        let pivot_row = (col..dim).find(|&r| !a[r * dim + col].is_zero());
        let r = match pivot_row {
            None => return BigInt::zero(),
            Some(r) => r,
        };
        if r != col {
            for c in 0..dim {
                a.swap(r * dim + c, col * dim + c);
            }
            det = -det;
        }
        let p = a[col * dim + col].clone();
        det *= p.clone();
        for rr in col + 1..dim {
            let factor = a[rr * dim + col].clone() / p.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..dim {
                let delta = factor.clone() * a[col * dim + c].clone();
                a[rr * dim + c] -= delta;
            }
        }
    }
    debug_assert!(det.denom().is_one());
    det.to_integer()
}

/// `(-1)^{k-1} Pf(Λ^{(k)})` at unit weights: the signed spanning-tree count
/// `|T⁺| - |T⁻|` under `omega`. `k` is 1-based.
pub fn signed_count_via_pfaffian(
    h: &ThreeGraph,
    omega: &TripleOrientation,
    k: usize,
) -> Result<BigInt> {
    if h.n_vertices() % 2 == 0 {
        return Err(Error::EvenVertexCount);
    }
    if k == 0 || k > h.n_vertices() {
        return Err(Error::OutOfRange(k as Vertex, h.n_vertices()));
    }
    let ones = vec![BigInt::one(); h.triple_count()];
    let lambda = lambda_matrix(h, omega, &ones);
    let pf = pfaffian_exact(&lambda.deleted(k - 1))?;
    Ok(if k % 2 == 1 { pf } else { -pf })
}

/// The perfect-matching expansion of the signed count: sums
/// `sgn(M) Π_{ij in M} Λ_{i,j}` over perfect matchings `M` of `[2n]` with
/// crossing-parity signs. Independent oracle for
/// [`signed_count_via_pfaffian`].
pub fn hr_expansion(h: &ThreeGraph, omega: &TripleOrientation) -> Result<BigInt> {
    if h.n_vertices() % 2 == 0 {
        return Err(Error::EvenVertexCount);
    }
    let ones = vec![BigInt::one(); h.triple_count()];
    let lambda = lambda_matrix(h, omega, &ones);
    // matchings of [2n] = the index set without the last vertex
    pfaffian_matching_sum(&lambda.deleted(h.n_vertices() - 1))
}

/// Exact mean and second moment of the signed tree polynomial over uniform
/// `±1` weight assignments. Equals `(0, |T(H)|)`.
pub fn variance_identity_check(
    h: &ThreeGraph,
    omega: &TripleOrientation,
) -> Result<(BigRational, BigRational)> {
    let m = h.triple_count();
    if m > 20 {
        return Err(Error::TooManyTriples(m, 20));
    }
    // per-tree: bitmask over triples and sign under omega
    let mut trees: Vec<(u32, i64)> = Vec::new();
    for tree in crate::trees::spanning_trees(h) {
        let mut mask = 0u32;
        for t in tree.triples() {
            mask |= 1 << h.triple_index(t).unwrap();
        }
        trees.push((mask, crate::signs::tree_sign(&tree, omega)? as i64));
    }
    let mut sum = BigInt::zero();
    let mut sum_sq = BigInt::zero();
    for assignment in 0u32..(1 << m) {
        let mut value = 0i64;
        for &(mask, sign) in &trees {
            let negs = (assignment & mask).count_ones();
            value += if negs % 2 == 0 { sign } else { -sign };
        }
        sum += value;
        sum_sq += value * value;
    }
    let denom = BigInt::from(1u64) << m;
    Ok((
        BigRational::new(sum, denom.clone()),
        BigRational::new(sum_sq, denom),
    ))
}

/// Outcome of the randomized existence test.
#[derive(Clone, Debug, PartialEq)]
pub enum ExistenceVerdict {
    /// Some trial evaluated the signed tree polynomial to a nonzero field
    /// element; a spanning tree certainly exists.
    TreeExists {
        trial: usize,
        modulus: u64,
        value: u64,
    },
    /// All trials evaluated to zero; no spanning tree exists except with
    /// probability at most `failure_bound`.
    ProbablyNone { failure_bound: BigRational },
}

/// Evaluates `Pf(Λ^{(1)})` at uniformly random weights over `F_q` with `q`
/// the smallest prime at least `4·deg`, `deg = (n-1)/2`. Each trial fails to
/// witness an existing tree with probability at most `deg/q <= 1/4`.
pub fn randomized_existence_test(h: &ThreeGraph, trials: usize, seed: u64) -> ExistenceVerdict {
    let n = h.n_vertices();
    let deg = if n % 2 == 1 { (n - 1) / 2 } else { 0 };
    let q = next_prime((4 * deg as u64).max(2));
    if n % 2 == 0 {
        // even order: no spanning tree, with certainty
        return ExistenceVerdict::ProbablyNone {
            failure_bound: BigRational::zero(),
        };
    }
    if n == 1 {
        // the empty tree spans the single vertex
        return ExistenceVerdict::TreeExists {
            trial: 0,
            modulus: q,
            value: 1,
        };
    }
    let w0 = TripleOrientation::canonical(h);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let values: Vec<Gfp> = (0..h.triple_count())
            .map(|_| Gfp::new(rng.gen_range(0..q) as i64, q))
            .collect();
        let lambda = lambda_matrix(h, &w0, &values);
        let pf = pfaffian_mod(&lambda.deleted(0), q).expect("q prime, even dimension");
        if !pf.is_zero() {
            return ExistenceVerdict::TreeExists {
                trial,
                modulus: q,
                value: pf.value(),
            };
        }
    }
    let bound = BigRational::new(BigInt::from(deg as u64), BigInt::from(q));
    let failure_bound = num_traits::pow::pow(bound, trials);
    ExistenceVerdict::ProbablyNone { failure_bound }
}

/// Per-trial generator derived deterministically from the master seed, so
/// trials could run concurrently without changing results.
fn trial_rng(seed: u64, trial: usize) -> ChaCha20Rng {
    let mixed = seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    ChaCha20Rng::seed_from_u64(mixed)
}

/// Asserts the unit-assignment entry bound `|Λ_{ij}| <= n-2` (at most `2n-1`
/// for hosts on `2n+1` vertices); used as a sanity check in tests.
pub fn lambda_entry_bound_holds(h: &ThreeGraph, omega: &TripleOrientation) -> bool {
    let ones = vec![BigInt::one(); h.triple_count()];
    let lambda = lambda_matrix(h, omega, &ones);
    let n = h.n_vertices();
    let bound = BigInt::from(n as i64 - 2);
    (0..n).all(|i| (0..n).all(|j| lambda.get(i, j).abs() <= bound))
}
