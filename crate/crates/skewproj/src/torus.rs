//! Quantum-torus computations. The torus of `S_omega` is encoded by the
//! exponents of its parameters: one alternating integer matrix per
//! generator plus a symmetric mod-2 sign component. Simplicity is the
//! triviality of the joint integer kernel of those matrices, and
//! birational equivalence of the projective spaces reduces to unimodular
//! congruence of the exponent forms of the q-matrices `q_ij = q_{(1ij)}`.

use crate::exactnum::Sign;
use crate::intmat::{alternating_normal_form, rank, AlternatingForm, IntMat, IntMatError};
use crate::skewalg::{AlgebraError, ParameterMatrix, Permutation};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matrix(#[from] IntMatError),
    #[error("witness has dimensions {got}, expected {expected}x{expected}")]
    WitnessDimension { got: String, expected: usize },
    #[error("search bound must be at least 1")]
    BadSearchBound,
}

/// Node budget for the bounded unimodular search.
const SEARCH_BUDGET: u64 = 50_000_000;

/// Exponent data of a parameter table: for each generator an alternating
/// integer matrix of exponents, and the mod-2 sign component (symmetric,
/// since inversion preserves the sign).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentForm {
    size: usize,
    per_generator: BTreeMap<usize, IntMat>,
    sign: IntMat,
}

impl ExponentForm {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Indices of generators with a nonzero exponent matrix.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.per_generator.keys().copied().collect()
    }

    pub fn matrix_for(&self, generator: usize) -> IntMat {
        self.per_generator
            .get(&generator)
            .cloned()
            .unwrap_or_else(|| IntMat::zeros(self.size, self.size))
    }

    pub fn sign_component(&self) -> &IntMat {
        &self.sign
    }

    pub fn has_torsion(&self) -> bool {
        !self.sign.is_zero()
    }

    /// Rows `i`, columns `(g, j)`: the stacked exponent matrix whose left
    /// kernel is the obstruction to simplicity.
    fn stacked(&self) -> IntMat {
        let n = self.size;
        let gens = self.generator_indices();
        let mut m = IntMat::zeros(n, gens.len() * n);
        for (block, g) in gens.iter().enumerate() {
            let mg = &self.per_generator[g];
            for i in 0..n {
                for j in 0..n {
                    m.set(i, block * n + j, mg.get(i, j));
                }
            }
        }
        m
    }
}

/// Full-size exponent form of `omega` itself.
pub fn omega_exponent_form(omega: &ParameterMatrix) -> ExponentForm {
    let n = omega.size();
    let mut per_generator: BTreeMap<usize, IntMat> = BTreeMap::new();
    let mut sign = IntMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let entry = omega.entry(i, j);
            if entry.sign() == Sign::Minus {
                sign.set(i, j, 1);
            }
            for (g, e) in entry.support() {
                per_generator
                    .entry(g)
                    .or_insert_with(|| IntMat::zeros(n, n))
                    .set(i, j, e);
            }
        }
    }
    per_generator.retain(|_, m| !m.is_zero());
    debug_assert!(per_generator.values().all(|m| m.is_alternating()));
    debug_assert!(sign.is_symmetric());
    ExponentForm {
        size: n,
        per_generator,
        sign,
    }
}

/// Exponent form of the q-matrix `q_ij = q_{(1ij)}`, size `n - 1`,
/// indexed by `2..=n`.
pub fn q_exponent_form(omega: &ParameterMatrix) -> Result<ExponentForm, AlgebraError> {
    Ok(omega_exponent_form(&omega.q_matrix()?))
}

/// Alternating-form normal form over the integers; classifies alternating
/// matrices up to unimodular congruence by their divisor chain.
pub fn skew_normal_form(m: &IntMat) -> Result<AlternatingForm, IntMatError> {
    alternating_normal_form(m)
}

/// Simplicity of the quantum torus `T_omega`: true iff no nonzero integer
/// vector `a` has `prod_i omega_ij^(a_i) = 1` for every column `j`.
///
/// Only the exponent lattice matters: if the stacked exponent matrix has
/// a nonzero kernel vector, its double also kills the sign component, so
/// the mod-2 condition can always be met. Simplicity is therefore
/// exactly full row rank of the stacked matrix.
pub fn is_torus_simple(omega: &ParameterMatrix) -> Result<bool, IntMatError> {
    let form = omega_exponent_form(omega);
    if form.per_generator.is_empty() {
        return Ok(false);
    }
    Ok(rank(&form.stacked())? == omega.size())
}

/// Genericity of the q-torus: simplicity applied to the q-matrix.
pub fn is_q_generic(omega: &ParameterMatrix) -> Result<bool, TorusError> {
    let q = omega.q_matrix()?;
    Ok(is_torus_simple(&q)?)
}

/// Exact check of `q'_ij = prod_{k,l} q_kl^(a_ki a_lj)`: true iff
/// `det(A) = +-1`, `Q'_g = A^T Q_g A` for every generator `g`, and the
/// sign components satisfy the same congruence mod 2.
pub fn verify_birational_witness(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
    a: &IntMat,
) -> Result<bool, TorusError> {
    omega.common_checks(omega_p)?;
    let expected = omega.size() - 1;
    if a.rows() != expected || a.cols() != expected {
        return Err(TorusError::WitnessDimension {
            got: format!("{}x{}", a.rows(), a.cols()),
            expected,
        });
    }
    let qf = q_exponent_form(omega)?;
    let qf_p = q_exponent_form(omega_p)?;
    Ok(witness_matches(&qf, &qf_p, a)?)
}

fn witness_matches(
    qf: &ExponentForm,
    qf_p: &ExponentForm,
    a: &IntMat,
) -> Result<bool, IntMatError> {
    if !a.is_unimodular() {
        return Ok(false);
    }
    let mut gens = qf.generator_indices();
    for g in qf_p.generator_indices() {
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    for g in gens {
        if qf.matrix_for(g).congruence(a)? != qf_p.matrix_for(g) {
            return Ok(false);
        }
    }
    if qf.sign_component().congruence(a)?.mod2() != qf_p.sign_component().mod2() {
        return Ok(false);
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirationalStatus {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl BirationalStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BirationalStatus::Equivalent => "EQUIVALENT",
            BirationalStatus::NotEquivalent => "NOT_EQUIVALENT",
            BirationalStatus::Unknown => "UNKNOWN",
        }
    }
}

/// Outcome of the birational decider. `NotEquivalent` is only ever
/// emitted when the q-torus of the left input is generic, because only
/// then does non-congruence imply birational inequivalence.
#[derive(Debug, Clone)]
pub struct BirationalVerdict {
    pub status: BirationalStatus,
    pub witness: Option<IntMat>,
    pub generic: bool,
    pub note: String,
}

/// Decide birational equivalence of the two projective spaces.
///
/// Single-generator, torsion-free exponent forms are decided exactly by
/// comparing alternating normal forms (and the witness is composed from
/// the reducing transforms). Everything else falls back to a bounded
/// exhaustive search over unimodular matrices with entries in
/// `[-search_bound, search_bound]`.
pub fn check_birational(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
    search_bound: i64,
) -> Result<BirationalVerdict, TorusError> {
    omega.common_checks(omega_p)?;
    if search_bound < 1 {
        return Err(TorusError::BadSearchBound);
    }
    let qf = q_exponent_form(omega)?;
    let qf_p = q_exponent_form(omega_p)?;
    let generic = is_q_generic(omega)?;
    let mut gens = qf.generator_indices();
    for g in qf_p.generator_indices() {
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let torsion = qf.has_torsion() || qf_p.has_torsion();

    if !torsion && gens.len() <= 1 {
        if gens.is_empty() {
            let witness = IntMat::identity(qf.size());
            return Ok(BirationalVerdict {
                status: BirationalStatus::Equivalent,
                witness: Some(witness),
                generic,
                note: "both q-matrices are trivial".into(),
            });
        }
        let g = gens[0];
        let nf = alternating_normal_form(&qf.matrix_for(g))?;
        let nf_p = alternating_normal_form(&qf_p.matrix_for(g))?;
        if nf.divisors == nf_p.divisors {
            let witness = nf.transform.mul(&nf_p.transform.inverse_unimodular()?)?;
            debug_assert!(witness_matches(&qf, &qf_p, &witness)?);
            return Ok(BirationalVerdict {
                status: BirationalStatus::Equivalent,
                witness: Some(witness),
                generic,
                note: format!(
                    "single-generator forms share normal-form divisors {:?} (rank {}); witness composed from the reducing transforms",
                    nf.divisors, nf.rank
                ),
            });
        }
        return Ok(non_congruent_verdict(generic, &nf, &nf_p));
    }

    // Multi-generator or sign torsion. A cheap exact invariant first:
    // congruence preserves each generator's divisor chain.
    for &g in &gens {
        let nf = alternating_normal_form(&qf.matrix_for(g))?;
        let nf_p = alternating_normal_form(&qf_p.matrix_for(g))?;
        if nf.divisors != nf_p.divisors {
            return Ok(non_congruent_verdict(generic, &nf, &nf_p));
        }
    }
    match bounded_witness_search(&qf, &qf_p, search_bound)? {
        SearchOutcome::Found(witness) => Ok(BirationalVerdict {
            status: BirationalStatus::Equivalent,
            witness: Some(witness),
            generic,
            note: format!("found by bounded search at bound {search_bound}"),
        }),
        SearchOutcome::Exhausted => Ok(BirationalVerdict {
            status: BirationalStatus::Unknown,
            witness: None,
            generic,
            note: format!(
                "bounded search at bound {search_bound} found no witness; congruence not ruled out"
            ),
        }),
        SearchOutcome::BudgetExceeded => Ok(BirationalVerdict {
            status: BirationalStatus::Unknown,
            witness: None,
            generic,
            note: "search budget exceeded before exhausting the bound".into(),
        }),
    }
}

fn non_congruent_verdict(
    generic: bool,
    nf: &AlternatingForm,
    nf_p: &AlternatingForm,
) -> BirationalVerdict {
    let note = format!(
        "normal-form divisors differ: {:?} vs {:?}",
        nf.divisors, nf_p.divisors
    );
    if generic {
        BirationalVerdict {
            status: BirationalStatus::NotEquivalent,
            witness: None,
            generic,
            note,
        }
    } else {
        BirationalVerdict {
            status: BirationalStatus::Unknown,
            witness: None,
            generic,
            note: format!("{note}; q-torus is not generic, so inequivalence does not follow"),
        }
    }
}

enum SearchOutcome {
    Found(IntMat),
    Exhausted,
    BudgetExceeded,
}

/// Depth-first search over candidate matrices column by column. The
/// congruence condition only couples pairs of columns, so each new column
/// is checked against all earlier ones before descending; the completed
/// matrix must additionally have determinant +-1.
fn bounded_witness_search(
    qf: &ExponentForm,
    qf_p: &ExponentForm,
    bound: i64,
) -> Result<SearchOutcome, IntMatError> {
    let m = qf.size();
    let mut gens = qf.generator_indices();
    for g in qf_p.generator_indices() {
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let mats: Vec<(IntMat, IntMat)> = gens
        .iter()
        .map(|&g| (qf.matrix_for(g), qf_p.matrix_for(g)))
        .collect();
    let signs = (qf.sign_component().clone(), qf_p.sign_component().clone());

    // Small magnitudes first so near-identity witnesses surface early.
    let mut values: Vec<i64> = vec![0];
    for v in 1..=bound {
        values.push(v);
        values.push(-v);
    }

    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(m);
    let mut budget = SEARCH_BUDGET;
    search_columns(m, &values, &mats, &signs, &mut columns, &mut budget)
}

fn search_columns(
    m: usize,
    values: &[i64],
    mats: &[(IntMat, IntMat)],
    signs: &(IntMat, IntMat),
    columns: &mut Vec<Vec<i64>>,
    budget: &mut u64,
) -> Result<SearchOutcome, IntMatError> {
    if columns.len() == m {
        let mut a = IntMat::zeros(m, m);
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                a.set(r, c, v);
            }
        }
        if a.is_unimodular() {
            return Ok(SearchOutcome::Found(a));
        }
        return Ok(SearchOutcome::Exhausted);
    }
    let t = columns.len();
    let mut counters = vec![0usize; m];
    let mut candidate = vec![0i64; m];
    loop {
        if *budget == 0 {
            return Ok(SearchOutcome::BudgetExceeded);
        }
        *budget -= 1;
        for (i, &ci) in counters.iter().enumerate() {
            candidate[i] = values[ci];
        }
        // A unimodular matrix has no zero column.
        let nonzero = candidate.iter().any(|&v| v != 0);
        if nonzero && column_compatible(&candidate, columns, t, mats, signs) {
            columns.push(candidate.clone());
            match search_columns(m, values, mats, signs, columns, budget)? {
                SearchOutcome::Exhausted => {
                    columns.pop();
                }
                done => {
                    columns.pop();
                    return Ok(done);
                }
            }
        }
        // Odometer increment over the value list.
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(SearchOutcome::Exhausted);
            }
            counters[pos] += 1;
            if counters[pos] < values.len() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

fn bilinear(q: &IntMat, a: &[i64], b: &[i64]) -> i128 {
    let mut acc: i128 = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                acc += ai as i128 * q.get(i, j) as i128 * bj as i128;
            }
        }
    }
    acc
}

/// Check a candidate column `t` against every placed column `s < t`:
/// `col_s^T Q col_t = Q'[s][t]` for every generator, and the sign
/// pairing must agree mod 2. The self-pairing carries no information
/// (`Q` alternating, `S` symmetric with zero diagonal).
fn column_compatible(
    candidate: &[i64],
    earlier: &[Vec<i64>],
    t: usize,
    mats: &[(IntMat, IntMat)],
    signs: &(IntMat, IntMat),
) -> bool {
    for (s, col_s) in earlier.iter().enumerate() {
        for (q, q_p) in mats {
            if bilinear(q, col_s, candidate) != q_p.get(s, t) as i128 {
                return false;
            }
        }
        let pairing = bilinear(&signs.0, col_s, candidate) - signs.1.get(s, t) as i128;
        if pairing.rem_euclid(2) != 0 {
            return false;
        }
    }
    true
}

/// The integer matrix induced on the q-torus exponent lattice by a graded
/// witness permutation: column `i` (for the variable `i + 2`) is
/// `e(inv(i+2) - 1) - e(inv(1) - 1)` where `inv = sigma^{-1}` and `e(0)`
/// is read as zero. This is the computational shadow of the fraction
/// division ring isomorphism induced by a graded equivalence.
pub fn induced_birational_matrix(sigma: &Permutation) -> IntMat {
    let n = sigma.size();
    let m = n - 1;
    let inv = sigma.inverse();
    let mut a = IntMat::zeros(m, m);
    let anchor = inv.apply(0);
    for c in 0..m {
        let v = inv.apply(c + 1);
        if v >= 1 {
            a.set(v - 1, c, a.get(v - 1, c) + 1);
        }
        if anchor >= 1 {
            a.set(anchor - 1, c, a.get(anchor - 1, c) - 1);
        }
    }
    a
}
