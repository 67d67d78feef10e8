//! Deterministic random generators shared by the test suites: alternating
//! integer matrices, small unimodular matrices and parameter matrices
//! with entries that are signed powers of two or of a formal symbol.
//!
//! These live in the library (not under `#[cfg(test)]`) so integration
//! and acceptance tests can reuse them with fixed seeds.

use crate::exactnum::{GeneratorBasis, GroupElement, Sign};
use crate::intmat::IntMat;
use crate::skewalg::{ParameterMatrix, Permutation};
use rand::Rng;

/// Random alternating matrix of the given size with entries in
/// `[-max_abs, max_abs]`.
pub fn random_alternating<R: Rng>(rng: &mut R, max_size: usize, max_abs: i64) -> IntMat {
    let n = rng.gen_range(1..=max_size);
    let mut m = IntMat::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(-max_abs..=max_abs);
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    m
}

/// Random unimodular matrix built from elementary operations, rejected
/// and rebuilt until all entries fit in `[-max_abs, max_abs]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_abs: i64) -> IntMat {
    loop {
        let mut m = IntMat::identity(n);
        let ops = rng.gen_range(0..=2 * n + 2);
        for _ in 0..ops {
            match rng.gen_range(0..3) {
                0 => {
                    let (a, b) = distinct_pair(rng, n);
                    let mut rows = m.to_rows();
                    rows.swap(a, b);
                    m = IntMat::from_rows(&rows).unwrap();
                }
                1 => {
                    let r = rng.gen_range(0..n);
                    let mut rows = m.to_rows();
                    for v in &mut rows[r] {
                        *v = -*v;
                    }
                    m = IntMat::from_rows(&rows).unwrap();
                }
                _ => {
                    let (dst, src) = distinct_pair(rng, n);
                    let q: i64 = rng.gen_range(-2..=2);
                    let mut rows = m.to_rows();
                    for c in 0..n {
                        rows[dst][c] += q * rows[src][c];
                    }
                    m = IntMat::from_rows(&rows).unwrap();
                }
            }
        }
        let bounded = m.to_rows().iter().flatten().all(|v| v.abs() <= max_abs);
        if bounded && m.is_unimodular() {
            return m;
        }
    }
}

fn distinct_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    if n < 2 {
        return (0, 0);
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n);
    while b == a {
        b = rng.gen_range(0..n);
    }
    (a, b)
}

/// Random parameter matrix with entries `(+-) 2^e`, `e` in
/// `[-max_exp, max_exp]`. With `signs` false all entries are positive.
pub fn random_power_of_two_matrix<R: Rng>(
    rng: &mut R,
    n: usize,
    max_exp: i64,
    signs: bool,
) -> ParameterMatrix {
    let mut basis = GeneratorBasis::new();
    let two = basis.intern_prime(2);
    let mut entries = vec![vec![GroupElement::one(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let e = rng.gen_range(-max_exp..=max_exp);
            let sign = if signs && rng.gen_bool(0.25) {
                Sign::Minus
            } else {
                Sign::Plus
            };
            let mut exps = vec![0i64; two + 1];
            exps[two] = e;
            let entry = GroupElement::from_parts(sign, exps);
            entries[j][i] = entry.inv();
            entries[i][j] = entry;
        }
    }
    ParameterMatrix::new(entries, basis).expect("construction satisfies the invariants")
}

/// Random scale vector of signed powers of two over the matrix basis,
/// with first entry 1.
pub fn random_scale_vector<R: Rng>(
    rng: &mut R,
    omega: &ParameterMatrix,
    max_exp: i64,
) -> Vec<GroupElement> {
    let mut basis = omega.basis().clone();
    let two = basis.intern_prime(2);
    let mut out = vec![GroupElement::one()];
    for _ in 1..omega.size() {
        let e = rng.gen_range(-max_exp..=max_exp);
        let sign = if rng.gen_bool(0.2) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let mut exps = vec![0i64; two + 1];
        exps[two] = e;
        out.push(GroupElement::from_parts(sign, exps));
    }
    out
}

/// Random permutation of `{0..n-1}`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    Permutation::new(images).expect("shuffled identity is a permutation")
}
