//! Point varieties of `S_omega`: the union of coordinate subspaces cut
//! out by the triples with nontrivial q-cyclic number. A point lies on
//! the variety iff every such triple has a vanishing coordinate, so the
//! irreducible components are exactly the minimal hitting sets of the
//! nontrivial-triple family. The module also classifies the four `n = 4`
//! cases, compares varieties up to coordinate permutation, and carries an
//! independent probabilistic oracle based on the rank of the relation
//! matrix `A_x`.

use crate::exactnum::{Assignment, EvalError};
use crate::skewalg::{AlgebraError, ParameterMatrix, Permutation, MAX_SEARCH_N};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Subset enumeration cap for the combinatorial formula.
pub const MAX_POINTVAR_N: usize = 12;
/// Subset enumeration cap for the probabilistic oracle.
pub const MAX_ORACLE_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("point variety computation supports n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("coordinate vector must have length {expected} and not be all zero")]
    BadPoint { expected: usize },
    #[error("trials must be at least 1")]
    BadTrials,
}

/// The set of index triples `{i < j < k}` whose q-cyclic number is not 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSet {
    n: usize,
    triples: BTreeSet<(usize, usize, usize)>,
}

impl TripleSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.triples.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

/// Triples with `q != 1`. Reversal inverts a q-cyclic number, so the
/// property is orientation-independent and the canonical orientation
/// `(i, j, k)` decides it.
pub fn nontrivial_triples(omega: &ParameterMatrix) -> Result<TripleSet, AlgebraError> {
    let q = omega.all_triple_qnumbers()?;
    Ok(TripleSet {
        n: omega.size(),
        triples: q
            .into_iter()
            .filter(|(_, v)| !v.is_one())
            .map(|(t, _)| t)
            .collect(),
    })
}

/// A finite union of coordinate subspaces of `P^{n-1}`. Each component
/// is the set of vanishing coordinates (0-based, sorted); the empty set
/// as sole component is the whole space. Components are pairwise
/// incomparable under inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVariety {
    n: usize,
    components: BTreeSet<Vec<usize>>,
}

impl PointVariety {
    pub fn whole_space(n: usize) -> Self {
        let mut components = BTreeSet::new();
        components.insert(Vec::new());
        PointVariety { n, components }
    }

    pub fn from_components(n: usize, components: BTreeSet<Vec<usize>>) -> Self {
        PointVariety { n, components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeSet<Vec<usize>> {
        &self.components
    }

    pub fn is_whole_space(&self) -> bool {
        self.components.len() == 1 && self.components.iter().next().unwrap().is_empty()
    }

    /// Components ordered for display: by dimension (largest first),
    /// then lexicographically.
    pub fn sorted_components(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.components.iter().cloned().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Projective dimensions of the components, largest first.
    pub fn dimension_multiset(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self
            .components
            .iter()
            .map(|c| self.n - 1 - c.len())
            .collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        dims
    }
}

impl fmt::Display for PointVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_whole_space() {
            return write!(f, "P^{}", self.n - 1);
        }
        let parts: Vec<String> = self
            .sorted_components()
            .iter()
            .map(|c| {
                let vars: Vec<String> = c.iter().map(|i| format!("X{}", i + 1)).collect();
                format!("V({})", vars.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" \u{222a} "))
    }
}

/// The point variety of `S_omega`: minimal hitting sets of the
/// nontrivial triples.
pub fn point_variety(omega: &ParameterMatrix) -> Result<PointVariety, PointError> {
    let n = omega.size();
    if n > MAX_POINTVAR_N {
        return Err(PointError::TooLarge {
            n,
            max: MAX_POINTVAR_N,
        });
    }
    let triples = nontrivial_triples(omega)?;
    Ok(minimal_hitting_sets(&triples))
}

fn minimal_hitting_sets(triples: &TripleSet) -> PointVariety {
    let n = triples.n();
    if triples.is_empty() {
        return PointVariety::whole_space(n);
    }
    let masks: Vec<u32> = triples
        .triples()
        .map(|(i, j, k)| (1 << i) | (1 << j) | (1 << k))
        .collect();
    let hits = |mask: u32| masks.iter().all(|t| t & mask != 0);
    let mut components = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if !hits(mask) {
            continue;
        }
        // Minimal iff removing any single coordinate breaks the cover;
        // the hitting family is upward closed so this test is exact.
        let minimal = (0..n).all(|b| mask & (1 << b) == 0 || !hits(mask & !(1 << b)));
        if minimal {
            components.insert((0..n).filter(|b| mask & (1 << b) != 0).collect());
        }
    }
    PointVariety::from_components(n, components)
}

/// The four possible point varieties of `P^3_omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P3Case {
    pub case_id: u8,
    pub description: &'static str,
}

const P3_CASES: [P3Case; 4] = [
    P3Case {
        case_id: 1,
        description: "all of P^3",
    },
    P3Case {
        case_id: 2,
        description: "two hyperplanes and one line",
    },
    P3Case {
        case_id: 3,
        description: "one hyperplane and three lines",
    },
    P3Case {
        case_id: 4,
        description: "six lines",
    },
];

/// Classify the point variety of a 4-variable algebra by the equality
/// pattern of its triple q-numbers. With `q_(234) = q_(123) q_(134)
/// q_(124)^{-1}`, exactly 0, 2, 3 or 4 of the four triple q-numbers can
/// differ from 1, and that count determines the case.
pub fn classify_p3(omega: &ParameterMatrix) -> Result<P3Case, AlgebraError> {
    if omega.size() != 4 {
        return Err(AlgebraError::WrongSize {
            n: omega.size(),
            expected: 4,
        });
    }
    let q123 = omega.q_cycle(&[0, 1, 2])?;
    let q124 = omega.q_cycle(&[0, 1, 3])?;
    let q134 = omega.q_cycle(&[0, 2, 3])?;
    let q234 = q123.mul(&q134).mul(&q124.inv());
    debug_assert_eq!(q234, omega.q_cycle(&[1, 2, 3])?);
    let nontrivial = [q123, q124, q134, q234]
        .iter()
        .filter(|q| !q.is_one())
        .count();
    let case = match nontrivial {
        0 => P3_CASES[0],
        2 => P3_CASES[1],
        3 => P3_CASES[2],
        4 => P3_CASES[3],
        // One nontrivial triple is impossible: if exactly one of q123,
        // q124, q134 differs from 1 then q234 does too, and if only q234
        // did, the relation above would force q234 = 1.
        other => unreachable!("impossible nontrivial-triple count {other}"),
    };
    Ok(case)
}

/// Lexicographically smallest coordinate permutation carrying the
/// component family of `v` onto that of `v_p`, if one exists.
pub fn compare_point_varieties(
    v: &PointVariety,
    v_p: &PointVariety,
) -> Result<Option<Permutation>, AlgebraError> {
    if v.n() != v_p.n() {
        return Err(AlgebraError::SizeMismatch {
            left: v.n(),
            right: v_p.n(),
        });
    }
    let n = v.n();
    if n > MAX_SEARCH_N {
        return Err(AlgebraError::SearchTooLarge { n });
    }
    for pi in Permutation::all(n) {
        let mapped: BTreeSet<Vec<usize>> = v
            .components()
            .iter()
            .map(|c| {
                let mut moved: Vec<usize> = c.iter().map(|&i| pi.apply(i)).collect();
                moved.sort_unstable();
                moved
            })
            .collect();
        if &mapped == v_p.components() {
            return Ok(Some(pi));
        }
    }
    Ok(None)
}

/// The `C(n,2) x n` relation matrix `A_x` evaluated at a point: row
/// `(i, j)` (for `i < j`) has `x_j` in column `i` and `-omega_ij x_i` in
/// column `j`. The normalization `theta_ji = 1`, `theta_ij = omega_ij`
/// fixes the ratio `theta_ij / theta_ji = omega_ij` the relations need.
#[derive(Debug, Clone)]
pub struct PointMatrix {
    n: usize,
    rows: Vec<Vec<BigRational>>,
}

impl PointMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    /// Exact rank. Row scaling preserves rank, so each row is cleared of
    /// denominators first and the elimination is fraction-free over the
    /// integers.
    pub fn rank(&self) -> usize {
        let rows = self.rows.len();
        let cols = self.n;
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .map(|v| v.denom().clone())
                    .fold(BigInt::from(1), num_integer::lcm);
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
            let Some(pivot) = pivot else { continue };
            m.swap(rank, pivot);
            for r in rank + 1..rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let (a, b) = (m[rank][col].clone(), m[r][col].clone());
                for c in col..cols {
                    let v = &a * &m[r][c] - &b * &m[rank][c];
                    m[r][c] = v;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Evaluate `A_x` for a concrete point; the assignment must cover every
/// formal generator appearing in `omega`.
pub fn build_point_matrix(
    omega: &ParameterMatrix,
    x: &[BigRational],
    assignment: &Assignment,
) -> Result<PointMatrix, PointError> {
    let n = omega.size();
    if x.len() != n || x.iter().all(|v| v.is_zero()) {
        return Err(PointError::BadPoint { expected: n });
    }
    let mut rows = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row = vec![BigRational::zero(); n];
            row[i] = x[j].clone();
            let w = omega
                .entry(i, j)
                .embed_rational(omega.basis(), assignment)?;
            row[j] = -(w * &x[i]);
            rows.push(row);
        }
    }
    Ok(PointMatrix { n, rows })
}

/// Probabilistic reconstruction of the point variety from the rank
/// criterion: `x` lies on the variety iff `rank(A_x) <= n - 1`. For
/// every proper subset `S` of coordinates, sample points vanishing
/// exactly on `S`; accept `S` when every sample stays rank-deficient,
/// and return the minimal accepted subsets. Formal generators receive
/// distinct fresh primes.
pub fn oracle_point_variety(
    omega: &ParameterMatrix,
    seed: u64,
    trials: u32,
) -> Result<PointVariety, PointError> {
    let n = omega.size();
    if n > MAX_ORACLE_N {
        return Err(PointError::TooLarge {
            n,
            max: MAX_ORACLE_N,
        });
    }
    if trials < 1 {
        return Err(PointError::BadTrials);
    }
    let assignment = Assignment::fresh_primes_for(omega.basis());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<u32> = Vec::new();
    for mask in 0u32..((1 << n) - 1) {
        let mut ok = true;
        for _ in 0..trials {
            let x: Vec<BigRational> = (0..n)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        BigRational::zero()
                    } else {
                        let mut v: i64 = rng.gen_range(-1_000_000..=1_000_000);
                        if v == 0 {
                            v = 1;
                        }
                        BigRational::from_integer(BigInt::from(v))
                    }
                })
                .collect();
            let a_x = build_point_matrix(omega, &x, &assignment)?;
            if a_x.rank() > n - 1 {
                ok = false;
                break;
            }
        }
        if ok {
            accepted.push(mask);
        }
    }
    // Exact minimality over the accepted family (robust even if sampling
    // noise produced a non-upward-closed family).
    let mut components = BTreeSet::new();
    for &mask in &accepted {
        let minimal = accepted
            .iter()
            .all(|&other| other == mask || (other & mask) != other);
        if minimal {
            components.insert((0..n).filter(|b| mask & (1 << b) != 0).collect());
        }
    }
    Ok(PointVariety::from_components(n, components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewalg::tests::{example1_x, example1_xprime, example2_x, example2_xprime, matrix};
    use crate::testsupport::{random_permutation, random_power_of_two_matrix};
    use num_traits::One;

    fn comps(list: &[&[usize]]) -> BTreeSet<Vec<usize>> {
        list.iter().map(|c| c.to_vec()).collect()
    }

    #[test]
    fn nontrivial_triples_examples() {
        let t = nontrivial_triples(&example1_x()).unwrap();
        let expect: BTreeSet<(usize, usize, usize)> = [(0, 1, 3), (0, 2, 3)].into_iter().collect();
        assert_eq!(t.triples().collect::<BTreeSet<_>>(), expect);

        let ones = ParameterMatrix::all_ones(5).unwrap();
        assert!(nontrivial_triples(&ones).unwrap().is_empty());

        let tp = nontrivial_triples(&example1_xprime()).unwrap();
        assert_eq!(tp.len(), 4);
    }

    #[test]
    fn point_variety_examples() {
        let v = point_variety(&example1_x()).unwrap();
        assert_eq!(v.components(), &comps(&[&[0], &[3], &[1, 2]]));
        assert_eq!(v.dimension_multiset(), vec![2, 2, 1]);

        let vp = point_variety(&example1_xprime()).unwrap();
        assert_eq!(vp.components().len(), 6);
        assert!(vp.components().iter().all(|c| c.len() == 2));
        assert_eq!(vp.dimension_multiset(), vec![1; 6]);

        for n in 3..=5 {
            let ones = ParameterMatrix::all_ones(n).unwrap();
            let v = point_variety(&ones).unwrap();
            assert!(v.is_whole_space());
            assert_eq!(v.dimension_multiset(), vec![n - 1]);
        }
    }

    #[test]
    fn variety_display_format() {
        let v = point_variety(&example1_x()).unwrap();
        assert_eq!(v.to_string(), "V(X1) \u{222a} V(X4) \u{222a} V(X2,X3)");
        let whole = PointVariety::whole_space(4);
        assert_eq!(whole.to_string(), "P^3");
    }

    #[test]
    fn classify_p3_on_the_examples() {
        assert_eq!(classify_p3(&example1_x()).unwrap().case_id, 2);
        assert_eq!(classify_p3(&example1_xprime()).unwrap().case_id, 4);
        assert_eq!(classify_p3(&example2_x()).unwrap().case_id, 3);
        assert_eq!(classify_p3(&example2_xprime()).unwrap().case_id, 3);
        let ones = ParameterMatrix::all_ones(4).unwrap();
        assert_eq!(classify_p3(&ones).unwrap().case_id, 1);
        let five = ParameterMatrix::all_ones(5).unwrap();
        assert!(classify_p3(&five).is_err());
    }

    /// Exhaustive sweep over q-number patterns realizable with powers of
    /// two: the component-dimension multiset implied by the case id must
    /// match the computed point variety.
    #[test]
    fn classify_p3_matches_point_variety_on_sweep() {
        // (value, inverse) pairs; with all other entries 1 the table
        // below realizes q_(123) = t1, q_(124) = t2, q_(134) = t3.
        let values = [
            ("1", "1"),
            ("2", "1/2"),
            ("4", "1/4"),
            ("8", "1/8"),
            ("1/2", "2"),
        ];
        for (t1, t1i) in values {
            for (t2, t2i) in values {
                for (t3, t3i) in values {
                    let omega = matrix(&[
                        &["1", "1", "1", "1"],
                        &["1", "1", t1, t2],
                        &["1", t1i, "1", t3],
                        &["1", t2i, t3i, "1"],
                    ]);
                    assert_eq!(omega.q_cycle(&[0, 1, 2]).unwrap().render(omega.basis()), t1);
                    let case = classify_p3(&omega).unwrap();
                    let expected_dims: Vec<usize> = match case.case_id {
                        1 => vec![3],
                        2 => vec![2, 2, 1],
                        3 => vec![2, 1, 1, 1],
                        4 => vec![1; 6],
                        _ => unreachable!(),
                    };
                    let v = point_variety(&omega).unwrap();
                    assert_eq!(
                        v.dimension_multiset(),
                        expected_dims,
                        "case {} vs variety {} for q = ({t1}, {t2}, {t3})",
                        case.case_id,
                        v
                    );
                }
            }
        }
    }

    #[test]
    fn compare_examples() {
        let v1 = point_variety(&example1_x()).unwrap();
        let v1p = point_variety(&example1_xprime()).unwrap();
        assert_eq!(compare_point_varieties(&v1, &v1p).unwrap(), None);

        let v2 = point_variety(&example2_x()).unwrap();
        let v2p = point_variety(&example2_xprime()).unwrap();
        let pi = compare_point_varieties(&v2, &v2p).unwrap();
        assert!(pi.is_some());

        assert_eq!(
            compare_point_varieties(&v1, &v1).unwrap(),
            Some(Permutation::identity(4))
        );
    }

    #[test]
    fn point_matrix_ranks() {
        let ones = ParameterMatrix::all_ones(3).unwrap();
        let x: Vec<BigRational> = (0..3).map(|_| BigRational::one()).collect();
        let a = build_point_matrix(&ones, &x, &Assignment::new()).unwrap();
        let expected_rows = [[1i64, -1, 0], [1, 0, -1], [0, 1, -1]];
        for (r, row) in expected_rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(a.entry(r, c), &BigRational::from_integer(BigInt::from(*v)));
            }
        }
        assert_eq!(a.rank(), 2);

        let ex = example1_x();
        let on_variety: Vec<BigRational> = [0, 0, 1, 1]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        let a = build_point_matrix(&ex, &on_variety, &Assignment::new()).unwrap();
        assert!(a.rank() <= 3);

        let generic: Vec<BigRational> = [1, 1, 1, 1]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        let a = build_point_matrix(&ex, &generic, &Assignment::new()).unwrap();
        assert_eq!(a.rank(), 4);
    }

    #[test]
    fn point_matrix_rejects_bad_points() {
        let ones = ParameterMatrix::all_ones(3).unwrap();
        let zero: Vec<BigRational> = (0..3).map(|_| BigRational::zero()).collect();
        assert!(matches!(
            build_point_matrix(&ones, &zero, &Assignment::new()),
            Err(PointError::BadPoint { .. })
        ));
        let short: Vec<BigRational> = vec![BigRational::one()];
        assert!(matches!(
            build_point_matrix(&ones, &short, &Assignment::new()),
            Err(PointError::BadPoint { .. })
        ));
    }

    #[test]
    fn oracle_matches_formula_on_examples() {
        for omega in [
            example1_x(),
            example1_xprime(),
            example2_x(),
            example2_xprime(),
            ParameterMatrix::all_ones(4).unwrap(),
        ] {
            let by_formula = point_variety(&omega).unwrap();
            let by_oracle = oracle_point_variety(&omega, 0xC0FFEE, 3).unwrap();
            assert_eq!(by_formula, by_oracle);
        }
    }

    #[test]
    fn oracle_agrees_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        for _ in 0..25 {
            let n = rng.gen_range(3..=5);
            let omega = random_power_of_two_matrix(&mut rng, n, 3, true);
            let seed: u64 = rng.gen();
            assert_eq!(
                point_variety(&omega).unwrap(),
                oracle_point_variety(&omega, seed, 3).unwrap(),
            );
        }
    }

    /// Larger sweep at the oracle's size limit; slow, run on demand with
    /// `cargo test -- --ignored`.
    #[test]
    #[ignore]
    fn oracle_stress_n6() {
        let mut rng = ChaCha8Rng::seed_from_u64(606);
        for _ in 0..50 {
            let omega = random_power_of_two_matrix(&mut rng, 6, 3, true);
            let seed: u64 = rng.gen();
            assert_eq!(
                point_variety(&omega).unwrap(),
                oracle_point_variety(&omega, seed, 5).unwrap(),
            );
        }
    }

    #[test]
    fn oracle_covers_formal_generators() {
        let omega = matrix(&[
            &["1", "q", "1", "1"],
            &["q^-1", "1", "1", "1"],
            &["1", "1", "1", "q^2"],
            &["1", "1", "q^-2", "1"],
        ]);
        assert_eq!(
            point_variety(&omega).unwrap(),
            oracle_point_variety(&omega, 7, 3).unwrap()
        );
    }

    #[test]
    fn minimality_and_coverage_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(3..=6);
            let omega = random_power_of_two_matrix(&mut rng, n, 2, true);
            let triples = nontrivial_triples(&omega).unwrap();
            let v = point_variety(&omega).unwrap();
            for c in v.components() {
                for other in v.components() {
                    if c != other {
                        assert!(!c.iter().all(|x| other.contains(x)), "nested components");
                    }
                }
                for (i, j, k) in triples.triples() {
                    assert!(
                        c.contains(&i) || c.contains(&j) || c.contains(&k),
                        "component misses a triple"
                    );
                }
            }
        }
    }

    #[test]
    fn equivariance_under_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(3..=5);
            let omega = random_power_of_two_matrix(&mut rng, n, 2, true);
            let sigma = random_permutation(&mut rng, n);
            let moved = omega.permuted_by(&sigma).unwrap();
            let v = point_variety(&omega).unwrap();
            let vm = point_variety(&moved).unwrap();
            let mapped: BTreeSet<Vec<usize>> = v
                .components()
                .iter()
                .map(|c| {
                    let mut m: Vec<usize> = c.iter().map(|&i| sigma.apply(i)).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            assert_eq!(&mapped, vm.components());
        }
    }

    #[test]
    fn variety_depends_only_on_nontriviality_pattern() {
        // Same "q != 1" pattern, different q values: identical varieties.
        let a = matrix(&[
            &["1", "1", "1", "1"],
            &["1", "1", "2", "4"],
            &["1", "1/2", "1", "1"],
            &["1", "1/4", "1", "1"],
        ]);
        let b = matrix(&[
            &["1", "1", "1", "1"],
            &["1", "1", "8", "-2"],
            &["1", "1/8", "1", "1"],
            &["1", "-1/2", "1", "1"],
        ]);
        let ta: BTreeSet<_> = nontrivial_triples(&a).unwrap().triples().collect();
        let tb: BTreeSet<_> = nontrivial_triples(&b).unwrap().triples().collect();
        assert_eq!(ta, tb);
        assert_eq!(point_variety(&a).unwrap(), point_variety(&b).unwrap());
    }

    #[test]
    fn n3_dichotomy() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let omega = random_power_of_two_matrix(&mut rng, 3, 3, true);
            let v = point_variety(&omega).unwrap();
            if omega.q_cycle(&[0, 1, 2]).unwrap().is_one() {
                assert!(v.is_whole_space());
            } else {
                assert_eq!(v.components(), &comps(&[&[0], &[1], &[2]]));
            }
        }
    }
}
