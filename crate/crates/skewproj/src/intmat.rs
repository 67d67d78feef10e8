//! Dense integer matrices with the two normal forms the deciders need:
//! Smith normal form (for integer kernels and ranks) and the alternating
//! normal form `U^T M U = diag([[0,e],[-e,0]], ...) + 0` with
//! `e_1 | e_2 | ...`, which classifies alternating forms up to unimodular
//! congruence.
//!
//! Entries are `i64`; every product is accumulated in `i128` and checked
//! back into range, so overflow surfaces as an error instead of wrapping.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntMatError {
    #[error("integer overflow during matrix computation")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, IntMatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(IntMatError::Dimension("ragged rows".into()));
        }
        Ok(IntMat {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if self.get(i, i) != 0 {
                return false;
            }
            for j in (i + 1)..self.cols {
                if self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat, IntMatError> {
        if self.cols != other.rows {
            return Err(IntMatError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let term = (self.get(r, k) as i128)
                        .checked_mul(other.get(k, c) as i128)
                        .ok_or(IntMatError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(IntMatError::Overflow)?;
                }
                out.set(r, c, i64::try_from(acc).map_err(|_| IntMatError::Overflow)?);
            }
        }
        Ok(out)
    }

    /// `A^T * self * A`, the congruence transform.
    pub fn congruence(&self, a: &IntMat) -> Result<IntMat, IntMatError> {
        a.transpose().mul(self)?.mul(a)
    }

    /// Entrywise reduction mod 2.
    pub fn mod2(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.rem_euclid(2)).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128, IntMatError> {
        if !self.is_square() {
            return Err(IntMatError::Dimension("determinant of non-square".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let at = |m: &Vec<i128>, r: usize, c: usize| m[r * n + c];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&m, k, k) == 0 {
                let swap = (k + 1..n).find(|&r| at(&m, r, k) != 0);
                match swap {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let num = at(&m, r, c)
                        .checked_mul(at(&m, k, k))
                        .and_then(|x| {
                            at(&m, r, k)
                                .checked_mul(at(&m, k, c))
                                .and_then(|y| x.checked_sub(y))
                        })
                        .ok_or(IntMatError::Overflow)?;
                    m[r * n + c] = num / prev;
                }
                m[r * n + k] = 0;
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(1) | Ok(-1))
    }

    /// Inverse of a unimodular matrix (always integral) via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMat, IntMatError> {
        let n = self.rows;
        let det = self.det()?;
        if det != 1 && det != -1 {
            return Err(IntMatError::NotUnimodular);
        }
        let mut inv = IntMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = self.minor(r, c);
                let cof = minor.det()?;
                let signed = if (r + c) % 2 == 0 { cof } else { -cof };
                // adj(A)[c][r] = cofactor(r, c); inv = adj / det.
                let v = signed * det; // det is +-1, so division is multiplication
                inv.set(c, r, i64::try_from(v).map_err(|_| IntMatError::Overflow)?);
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntMat {
        let mut m = IntMat::zeros(self.rows - 1, self.cols - 1);
        let mut ri = 0;
        for r in 0..self.rows {
            if r == skip_r {
                continue;
            }
            let mut ci = 0;
            for c in 0..self.cols {
                if c == skip_c {
                    continue;
                }
                m.set(ri, ci, self.get(r, c));
                ci += 1;
            }
            ri += 1;
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    fn checked_set(&mut self, r: usize, c: usize, v: i128) -> Result<(), IntMatError> {
        self.set(r, c, i64::try_from(v).map_err(|_| IntMatError::Overflow)?);
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self.set(r, c, -self.get(r, c));
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self.set(r, c, -self.get(r, c));
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<(), IntMatError> {
        for c in 0..self.cols {
            let v = (self.get(dst, c) as i128)
                .checked_add((q as i128) * (self.get(src, c) as i128))
                .ok_or(IntMatError::Overflow)?;
            self.checked_set(dst, c, v)?;
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<(), IntMatError> {
        for r in 0..self.rows {
            let v = (self.get(r, dst) as i128)
                .checked_add((q as i128) * (self.get(r, src) as i128))
                .ok_or(IntMatError::Overflow)?;
            self.checked_set(r, dst, v)?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form `left * M * right = diag(d_1, ..., d_r, 0, ...)`
/// with `d_1 | d_2 | ...` and both transforms unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diag: Vec<i64>,
    pub rank: usize,
    pub left: IntMat,
    pub right: IntMat,
}

pub fn smith_normal_form(m: &IntMat) -> Result<SmithForm, IntMatError> {
    let mut d = m.clone();
    let mut left = IntMat::identity(m.rows());
    let mut right = IntMat::identity(m.cols());
    let bound = m.rows().min(m.cols());
    let mut t = 0;
    while t < bound {
        // Smallest-magnitude nonzero pivot in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..d.rows() {
            for c in t..d.cols() {
                let v = d.get(r, c).unsigned_abs();
                if v != 0 && pivot.is_none_or(|(pr, pc)| v < d.get(pr, pc).unsigned_abs()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        d.swap_rows(t, pr);
        left.swap_rows(t, pr);
        d.swap_cols(t, pc);
        right.swap_cols(t, pc);
        if d.get(t, t) < 0 {
            d.negate_row(t);
            left.negate_row(t);
        }
        let p = d.get(t, t);
        let mut dirty = false;
        for r in t + 1..d.rows() {
            let q = d.get(r, t).div_euclid(p);
            if q != 0 {
                d.add_row(r, t, -q)?;
                left.add_row(r, t, -q)?;
            }
            if d.get(r, t) != 0 {
                dirty = true;
            }
        }
        for c in t + 1..d.cols() {
            let q = d.get(t, c).div_euclid(p);
            if q != 0 {
                d.add_col(c, t, -q)?;
                right.add_col(c, t, -q)?;
            }
            if d.get(t, c) != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue; // a smaller pivot now exists in the block
        }
        // Enforce divisibility of the trailing block by the pivot.
        let mut fixed = true;
        'scan: for r in t + 1..d.rows() {
            for c in t + 1..d.cols() {
                if d.get(r, c) % p != 0 {
                    d.add_row(t, r, 1)?;
                    left.add_row(t, r, 1)?;
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    let mut diag: Vec<i64> = (0..bound).map(|i| d.get(i, i)).collect();
    let rank = diag.iter().filter(|&&v| v != 0).count();
    diag.truncate(rank);
    Ok(SmithForm {
        diag,
        rank,
        left,
        right,
    })
}

/// Basis for the right kernel `{x : M x = 0}` as columns.
pub fn right_kernel_basis(m: &IntMat) -> Result<Vec<Vec<i64>>, IntMatError> {
    let snf = smith_normal_form(m)?;
    let mut basis = Vec::new();
    for c in snf.rank..m.cols() {
        basis.push((0..m.cols()).map(|r| snf.right.get(r, c)).collect());
    }
    Ok(basis)
}

/// Rank over the rationals (equal to the Smith rank).
pub fn rank(m: &IntMat) -> Result<usize, IntMatError> {
    Ok(smith_normal_form(m)?.rank)
}

/// Alternating normal form: divisors `e_1 | ... | e_s`, the rank `2s`,
/// and a unimodular `transform` with
/// `transform^T * M * transform = blockdiag([[0,e_i],[-e_i,0]], .., 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    pub divisors: Vec<i64>,
    pub rank: usize,
    pub transform: IntMat,
}

impl AlternatingForm {
    /// The canonical block matrix this form describes.
    pub fn canonical_matrix(&self, size: usize) -> IntMat {
        let mut m = IntMat::zeros(size, size);
        for (i, &e) in self.divisors.iter().enumerate() {
            m.set(2 * i, 2 * i + 1, e);
            m.set(2 * i + 1, 2 * i, -e);
        }
        m
    }
}

/// Compute the alternating normal form by simultaneous row/column
/// reduction; all operations are congruences, so the transform tracks
/// exactly the accumulated column operations.
pub fn alternating_normal_form(m: &IntMat) -> Result<AlternatingForm, IntMatError> {
    if !m.is_alternating() {
        return Err(IntMatError::NotAlternating);
    }
    let n = m.rows();
    let mut d = m.clone();
    let mut u = IntMat::identity(n);
    let mut t = 0;

    // Congruence helpers: every column operation is mirrored by the same
    // row operation, and the transform collects the column side.
    macro_rules! cswap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            d.swap_rows($a, $b);
            u.swap_cols($a, $b);
        }};
    }
    macro_rules! cneg {
        ($i:expr) => {{
            d.negate_col($i);
            d.negate_row($i);
            u.negate_col($i);
        }};
    }
    macro_rules! cadd {
        ($dst:expr, $src:expr, $q:expr) => {{
            d.add_col($dst, $src, $q)?;
            d.add_row($dst, $src, $q)?;
            u.add_col($dst, $src, $q)?;
        }};
    }

    while t + 1 < n {
        // Smallest-magnitude nonzero entry of the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..n {
            for c in t..n {
                let v = d.get(r, c).unsigned_abs();
                if v != 0 && pivot.is_none_or(|(pr, pc)| v < d.get(pr, pc).unsigned_abs()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        // Move the pivot to (t, t+1). The two indices are distinct since
        // the diagonal of an alternating matrix is zero.
        if pr != t {
            cswap!(t, pr);
        }
        let pc = if pc == t { pr } else { pc };
        if pc != t + 1 {
            cswap!(t + 1, pc);
        }
        if d.get(t, t + 1) < 0 {
            cneg!(t + 1);
        }
        let e = d.get(t, t + 1);
        debug_assert!(e > 0);
        // Clear rows t and t+1 beyond the pivot pair.
        let mut dirty = false;
        for c in t + 2..n {
            let q = d.get(t, c).div_euclid(e);
            if q != 0 {
                // Entry (t, c) sits against pivot (t, t+1): subtract
                // multiples of column t+1... the pairing is (t+1, c).
                cadd!(c, t + 1, -q);
            }
            if d.get(t, c) != 0 {
                dirty = true;
            }
        }
        for c in t + 2..n {
            let q = d.get(t + 1, c).div_euclid(-e); // d[t+1][t] = -e
            if q != 0 {
                cadd!(c, t, -q);
            }
            if d.get(t + 1, c) != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue; // remainders strictly smaller than |e| appeared
        }
        // Divisibility: e must divide the whole trailing block.
        let mut fixed = true;
        'scan: for r in t + 2..n {
            for c in t + 2..n {
                if d.get(r, c) % e != 0 {
                    cadd!(t, r, 1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 2;
        }
    }

    let mut divisors = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        let e = d.get(i, i + 1);
        if e == 0 {
            break;
        }
        divisors.push(e);
        i += 2;
    }
    let rank = 2 * divisors.len();
    Ok(AlternatingForm {
        divisors,
        rank,
        transform: u,
    })
}
