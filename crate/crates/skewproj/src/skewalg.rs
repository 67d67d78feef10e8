//! Parameter matrices of the algebras `S_omega`, their q-cyclic numbers,
//! and the algebra-level deciders: graded isomorphism (permutation
//! matching of the parameter table), graded Morita equivalence (witness
//! search for `omega'_{s(i)s(j)} = m_i m_j^{-1} omega_ij`, and the
//! equivalent matching of all length-3 q-cyclic numbers), plus the
//! Beilinson-quiver presentation of the endomorphism algebra `B_omega`.

use crate::exactnum::{GeneratorBasis, GroupElement};
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exhaustive permutation searches refuse sizes beyond this.
pub const MAX_SEARCH_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("size mismatch: {left} vs {right} (algebras of different size are never equivalent)")]
    SizeMismatch { left: usize, right: usize },
    #[error("inputs were parsed over incompatible generator bases")]
    BasisMismatch,
    #[error("operation requires n >= {required}, got n = {n}")]
    TooSmall { n: usize, required: usize },
    #[error("operation requires n = {expected}, got n = {n}")]
    WrongSize { n: usize, expected: usize },
    #[error("permutation search over n = {n} exceeds the supported maximum {MAX_SEARCH_N}")]
    SearchTooLarge { n: usize },
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid parameter matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// A permutation of `{0, .., n-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(AlgebraError::InvalidWitness(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// 1-based image vector, the on-disk convention.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self, AlgebraError> {
        let shifted: Vec<usize> = images
            .iter()
            .map(|&v| {
                v.checked_sub(1).ok_or_else(|| {
                    AlgebraError::InvalidWitness("1-based permutation contains 0".into())
                })
            })
            .collect::<Result<_, _>>()?;
        Permutation::new(shifted)
    }

    /// All permutations of `{0..n-1}` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(|images| Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.to_one_based().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", imgs.join(", "))
    }
}

/// The table `omega = (omega_ij)` defining `S_omega`, together with the
/// generator basis its entries live over. Invariants: `omega_ii = 1` and
/// `omega_ij * omega_ji = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterMatrix {
    n: usize,
    entries: Vec<GroupElement>,
    basis: GeneratorBasis,
}

impl ParameterMatrix {
    pub fn new(
        entries: Vec<Vec<GroupElement>>,
        basis: GeneratorBasis,
    ) -> Result<Self, AlgebraError> {
        let n = entries.len();
        if n < 2 {
            return Err(AlgebraError::TooSmall { n, required: 2 });
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::InvalidMatrix("table is not square".into()));
        }
        let flat: Vec<GroupElement> = entries.concat();
        for (idx, e) in flat.iter().enumerate() {
            if e.support().any(|(g, _)| g >= basis.len()) {
                return Err(AlgebraError::InvalidMatrix(format!(
                    "entry {} references a generator outside the basis",
                    idx
                )));
            }
        }
        let m = ParameterMatrix {
            n,
            entries: flat,
            basis,
        };
        for i in 0..n {
            if !m.entry(i, i).is_one() {
                return Err(AlgebraError::InvalidMatrix(format!(
                    "diagonal entry ({},{}) is not 1",
                    i + 1,
                    i + 1
                )));
            }
            for j in 0..n {
                if !m.entry(i, j).mul(m.entry(j, i)).is_one() {
                    return Err(AlgebraError::InvalidMatrix(format!(
                        "reciprocity fails at ({},{}): omega_ij * omega_ji != 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Parse a table of scalar strings, extending `basis` as needed.
    pub fn parse_rows(
        rows: &[Vec<&str>],
        basis: &mut GeneratorBasis,
    ) -> Result<Self, AlgebraError> {
        let mut entries = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for text in row {
                let e = crate::exactnum::parse_scalar(text, basis)
                    .map_err(|e| AlgebraError::InvalidMatrix(format!("entry {text:?}: {e}")))?;
                out.push(e);
            }
            entries.push(out);
        }
        ParameterMatrix::new(entries, basis.clone())
    }

    /// The commutative table: every entry 1.
    pub fn all_ones(n: usize) -> Result<Self, AlgebraError> {
        let entries = vec![vec![GroupElement::one(); n]; n];
        ParameterMatrix::new(entries, GeneratorBasis::new())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupElement {
        &self.entries[i * self.n + j]
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    /// `omega'_{ij} = m_i m_j^{-1} omega_ij`; `basis` must extend the
    /// matrix basis far enough to cover the scale entries.
    pub fn scaled_by(
        &self,
        scale: &[GroupElement],
        basis: &GeneratorBasis,
    ) -> Result<Self, AlgebraError> {
        if scale.len() != self.n {
            return Err(AlgebraError::InvalidWitness(format!(
                "scale vector has length {}, expected {}",
                scale.len(),
                self.n
            )));
        }
        if !basis.compatible_with(&self.basis) || basis.len() < self.basis.len() {
            return Err(AlgebraError::BasisMismatch);
        }
        let mut entries = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                row.push(scale[i].mul(&scale[j].inv()).mul(self.entry(i, j)));
            }
            entries.push(row);
        }
        ParameterMatrix::new(entries, basis.clone())
    }

    /// `omega'_{s(i) s(j)} = omega_ij`.
    pub fn permuted_by(&self, sigma: &Permutation) -> Result<Self, AlgebraError> {
        if sigma.size() != self.n {
            return Err(AlgebraError::SizeMismatch {
                left: self.n,
                right: sigma.size(),
            });
        }
        let mut entries = vec![vec![GroupElement::one(); self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[sigma.apply(i)][sigma.apply(j)] = self.entry(i, j).clone();
            }
        }
        ParameterMatrix::new(entries, self.basis.clone())
    }

    /// The q-cyclic number along `cycle`: the product of `omega` over
    /// consecutive cycle pairs, closing back to the first index. It is
    /// invariant under rotation of the cycle and inverts under reversal.
    pub fn q_cycle(&self, cycle: &[usize]) -> Result<GroupElement, AlgebraError> {
        let k = cycle.len();
        if k < 2 || k > self.n {
            return Err(AlgebraError::InvalidCycle(format!(
                "cycle length {k} outside 2..={}",
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &v in cycle {
            if v >= self.n {
                return Err(AlgebraError::InvalidCycle(format!(
                    "index {} out of range 1..={}",
                    v + 1,
                    self.n
                )));
            }
            if seen[v] {
                return Err(AlgebraError::InvalidCycle(format!(
                    "repeated index {}",
                    v + 1
                )));
            }
            seen[v] = true;
        }
        let mut q = GroupElement::one();
        for i in 0..k {
            q = q.mul(self.entry(cycle[i], cycle[(i + 1) % k]));
        }
        Ok(q)
    }

    /// q-cyclic numbers of every canonical triple `(i, j, k)`, `i<j<k`.
    pub fn all_triple_qnumbers(
        &self,
    ) -> Result<BTreeMap<(usize, usize, usize), GroupElement>, AlgebraError> {
        if self.n < 3 {
            return Err(AlgebraError::TooSmall {
                n: self.n,
                required: 3,
            });
        }
        let mut out = BTreeMap::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    out.insert((i, j, k), self.q_cycle(&[i, j, k])?);
                }
            }
        }
        Ok(out)
    }

    /// The parameter table of the degree-zero fraction algebra at base
    /// index 1: entry `(i, j)` (for `i, j` in `2..=n`) is `q_{(1 i j)}`.
    /// Size `n - 1`.
    pub fn q_matrix(&self) -> Result<ParameterMatrix, AlgebraError> {
        if self.n < 3 {
            return Err(AlgebraError::TooSmall {
                n: self.n,
                required: 3,
            });
        }
        let m = self.n - 1;
        let mut entries = vec![vec![GroupElement::one(); m]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    entries[i][j] = self.q_cycle(&[0, i + 1, j + 1])?;
                }
            }
        }
        ParameterMatrix::new(entries, self.basis.clone())
    }

    pub(crate) fn common_checks(&self, other: &ParameterMatrix) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if !self.basis.compatible_with(&other.basis) {
            return Err(AlgebraError::BasisMismatch);
        }
        Ok(())
    }

    fn search_guard(&self) -> Result<(), AlgebraError> {
        if self.n > MAX_SEARCH_N {
            return Err(AlgebraError::SearchTooLarge { n: self.n });
        }
        Ok(())
    }
}

/// A certificate for graded Morita equivalence: a permutation `sigma`
/// and scalars `m` with `omega'_{sigma(i) sigma(j)} = m_i m_j^{-1}
/// omega_ij` for all pairs. The scale is normalized to `m_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedWitness {
    pub sigma: Permutation,
    pub scale: Vec<GroupElement>,
}

/// Lexicographically smallest `sigma` with
/// `omega'_{sigma(i) sigma(j)} = omega_ij` for all pairs, if any.
pub fn check_isomorphism(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
) -> Result<Option<Permutation>, AlgebraError> {
    omega.common_checks(omega_p)?;
    omega.search_guard()?;
    let n = omega.size();
    for sigma in Permutation::all(n) {
        let matches = (0..n).all(|i| {
            (0..n).all(|j| omega_p.entry(sigma.apply(i), sigma.apply(j)) == omega.entry(i, j))
        });
        if matches {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// Witness search for graded Morita equivalence. For each `sigma` in
/// lexicographic order the scale is forced: `m_1 = 1` and
/// `m_j = omega_1j * omega'_{sigma(1) sigma(j)}^{-1}`; the candidate is
/// then verified on all pairs. Returns the first verifying witness.
pub fn check_graded_equivalence(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
) -> Result<Option<GradedWitness>, AlgebraError> {
    omega.common_checks(omega_p)?;
    omega.search_guard()?;
    let n = omega.size();
    for sigma in Permutation::all(n) {
        let mut scale = Vec::with_capacity(n);
        scale.push(GroupElement::one());
        for j in 1..n {
            scale.push(
                omega
                    .entry(0, j)
                    .mul(&omega_p.entry(sigma.apply(0), sigma.apply(j)).inv()),
            );
        }
        let witness = GradedWitness { sigma, scale };
        if witness_matches(omega, omega_p, &witness) {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

fn witness_matches(omega: &ParameterMatrix, omega_p: &ParameterMatrix, w: &GradedWitness) -> bool {
    let n = omega.size();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = w.scale[i].mul(&w.scale[j].inv()).mul(omega.entry(i, j));
            *omega_p.entry(w.sigma.apply(i), w.sigma.apply(j)) == expected
        })
    })
}

/// Exact check of a claimed isomorphism permutation.
pub fn verify_iso_witness(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
    sigma: &Permutation,
) -> bool {
    let n = omega.size();
    if omega_p.size() != n || sigma.size() != n {
        return false;
    }
    (0..n)
        .all(|i| (0..n).all(|j| omega_p.entry(sigma.apply(i), sigma.apply(j)) == omega.entry(i, j)))
}

/// Exact check of a claimed graded witness. A malformed witness (wrong
/// sizes, non-permutation) is simply not a certificate: returns false.
pub fn verify_graded_witness(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
    w: &GradedWitness,
) -> bool {
    if omega.size() != omega_p.size()
        || w.sigma.size() != omega.size()
        || w.scale.len() != omega.size()
    {
        return false;
    }
    witness_matches(omega, omega_p, w)
}

/// Decide graded Morita equivalence through length-3 q-cyclic numbers
/// with fixed first element: true iff some `sigma` satisfies
/// `q_{(1 x y)}(omega') = q_{(s(1) s(x) s(y))}(omega)` with
/// `s = sigma^{-1}`, for all pairs `x < y`. Longer cycles factor into
/// these, so the restriction loses nothing. For `n = 2` the condition is
/// vacuous and the answer is always true.
pub fn check_graded_via_qnumbers(
    omega: &ParameterMatrix,
    omega_p: &ParameterMatrix,
) -> Result<bool, AlgebraError> {
    omega.common_checks(omega_p)?;
    let n = omega.size();
    if n == 2 {
        return Ok(true);
    }
    omega.search_guard()?;
    for sigma in Permutation::all(n) {
        let inv = sigma.inverse();
        let mut all_match = true;
        'pairs: for x in 1..n {
            for y in (x + 1)..n {
                let lhs = omega_p.q_cycle(&[0, x, y])?;
                let rhs = omega.q_cycle(&[inv.apply(0), inv.apply(x), inv.apply(y)])?;
                if lhs != rhs {
                    all_match = false;
                    break 'pairs;
                }
            }
        }
        if all_match {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One arrow `a{k}_{l}` of the Beilinson quiver, from vertex `k` to
/// vertex `k+1`, representing multiplication by the variable `l`.
/// All numbers here are 1-based, matching the printed presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub variable: usize,
}

/// A commutation relation `a{k}_{j} a{k-1}_{i} = scalar * a{k}_{i} a{k-1}_{j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRelation {
    pub vertex: usize,
    pub i: usize,
    pub j: usize,
    pub scalar: GroupElement,
    pub scalar_text: String,
}

/// Presentation of `B_omega` as a path algebra with relations: `n`
/// ordered vertices, `n` arrows between consecutive vertices and one
/// relation per variable pair and inner vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertex_count: usize,
    pub arrows: Vec<QuiverArrow>,
    pub relations: Vec<QuiverRelation>,
}

pub fn quiver_presentation(omega: &ParameterMatrix) -> QuiverPresentation {
    let n = omega.size();
    let mut arrows = Vec::with_capacity(n * (n - 1));
    for k in 1..n {
        for l in 1..=n {
            arrows.push(QuiverArrow {
                source: k,
                target: k + 1,
                variable: l,
            });
        }
    }
    let mut relations = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 2..n {
                let scalar = omega.entry(i - 1, j - 1).clone();
                relations.push(QuiverRelation {
                    vertex: k,
                    i,
                    j,
                    scalar_text: scalar.render(omega.basis()),
                    scalar,
                });
            }
        }
    }
    QuiverPresentation {
        vertex_count: n,
        arrows,
        relations,
    }
}

impl fmt::Display for QuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vertices: Vec<String> = (1..=self.vertex_count).map(|v| format!("v{v}")).collect();
        writeln!(f, "vertices: {}", vertices.join(" "))?;
        writeln!(f, "arrows:")?;
        for a in &self.arrows {
            writeln!(
                f,
                "a{}_{}: v{} -> v{}",
                a.source, a.variable, a.source, a.target
            )?;
        }
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(
                f,
                "a{}_{} a{}_{} = {} a{}_{} a{}_{}",
                r.vertex,
                r.j,
                r.vertex - 1,
                r.i,
                r.scalar_text,
                r.vertex,
                r.i,
                r.vertex - 1,
                r.j
            )?;
        }
        Ok(())
    }
}
