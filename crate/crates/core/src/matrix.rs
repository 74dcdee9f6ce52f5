//! Dense arbitrary-precision integer matrices, Smith normal form, and
//! cokernel decomposition into free rank plus invariant factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("cannot parse integer {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}x{1} times {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("determinant needs a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("minor enumeration is limited to {limit}x{limit}, got {rows}x{cols}")]
    OracleTooLarge {
        rows: usize,
        cols: usize,
        limit: usize,
    },
    #[error("invariant factors must be >= 2 and form a divisibility chain: {0:?}")]
    BadInvariantFactors(Vec<BigInt>),
    #[error("malformed matrix document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// Row-major construction.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        let expected = rows * cols;
        if entries.len() != expected {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                expected,
                got: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in diag.iter().enumerate() {
            m.entries[i * n + i] = x.clone().into();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed only when `rows` is empty.
    pub fn from_rows<R, T>(rows: R, cols: usize) -> Result<Self, MatrixError>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        let mut nrows = 0;
        for (r, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let got = entries.len() - before;
            if got != cols {
                return Err(MatrixError::RaggedRow {
                    row: r,
                    expected: cols,
                    got,
                });
            }
            nrows += 1;
        }
        Self::new(nrows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Appends a row; its length must equal `cols`.
    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<(), MatrixError> {
        if row.len() != self.cols {
            return Err(MatrixError::RaggedRow {
                row: self.rows,
                expected: self.cols,
                got: row.len(),
            });
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Leading diagonal `m[0][0], m[1][1], ...` up to `min(rows, cols)`.
    pub fn main_diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(if n == 0 { sign } else { sign * prev })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            self.entries[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * self.get(i, source);
            self.entries[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Text form of a matrix: dimensions plus rows of exact decimal strings.
///
/// ```json
/// {"rows": 2, "cols": 2, "entries": [["2", "0"], ["0", "3"]]}
/// ```
///
/// Plain JSON integers are also accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<IntText>>,
}

/// An integer carried as a decimal string (or, on input, a JSON number).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Text(String),
    Number(i64),
}

impl IntText {
    pub fn to_bigint(&self) -> Result<BigInt, MatrixError> {
        match self {
            IntText::Text(s) => s.trim().parse().map_err(|_| MatrixError::Parse(s.clone())),
            IntText::Number(n) => Ok((*n).into()),
        }
    }
}

impl From<&BigInt> for IntText {
    fn from(b: &BigInt) -> Self {
        IntText::Text(b.to_string())
    }
}

impl From<&IntegerMatrix> for MatrixDocument {
    fn from(m: &IntegerMatrix) -> Self {
        MatrixDocument {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(IntText::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixDocument> for IntegerMatrix {
    type Error = MatrixError;

    fn try_from(doc: &MatrixDocument) -> Result<Self, Self::Error> {
        if doc.entries.len() != doc.rows {
            return Err(MatrixError::Document(format!(
                "declared {} rows, found {}",
                doc.rows,
                doc.entries.len()
            )));
        }
        let rows = doc
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(IntText::to_bigint)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntegerMatrix::from_rows(rows, doc.cols)
    }
}

impl IntegerMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixDocument::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixError> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| MatrixError::Document(e.to_string()))?;
        IntegerMatrix::try_from(&doc)
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with
/// `2 <= d1 | d2 | ... | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, MatrixError> {
        let two = BigInt::from(2);
        let ok = invariant_factors.iter().all(|d| *d >= two)
            && invariant_factors
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]));
        if !ok {
            return Err(MatrixError::BadInvariantFactors(invariant_factors));
        }
        Ok(AbelianGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Product of the invariant factors (1 for a torsion-free group).
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }
}

/// `Z^2 + Z/3 + Z/6`, `Z`, `Z/5`, or `0` for the trivial group.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("AbelianGroup", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let factors: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// diagonal entries non-negative and forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d
            .main_diagonal()
            .iter()
            .take_while(|x| !x.is_zero())
            .count()
    }
}

/// Smith normal form by repeated smallest-pivot elimination, accumulating
/// the row transform in `u` and the column transform in `v`.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&d, t..rows, t..cols) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let f = -d.get(i, t).div_floor(&pivot);
                d.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let f = -d.get(t, j).div_floor(&pivot);
                d.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                clean &= d.get(t, j).is_zero();
            }

            if !clean {
                // a remainder smaller than the pivot survived in row or column t
                let in_col = smallest_nonzero(&d, t..rows, t..t + 1);
                let in_row = smallest_nonzero(&d, t..t + 1, t..cols);
                let (i, j) = [in_col, in_row]
                    .into_iter()
                    .flatten()
                    .min_by(|a, b| d.get(a.0, a.1).abs().cmp(&d.get(b.0, b.1).abs()))
                    .expect("pivot itself is nonzero");
                d.swap_rows(t, i);
                u.swap_rows(t, i);
                d.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }

            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { u, d, v }
}

fn smallest_nonzero(
    m: &IntegerMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let a = m.get(i, j);
            if a.is_zero() {
                continue;
            }
            let a = a.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(ij, _)| ij)
}

/// Group presented by `m`: one generator per column, one relation per row.
pub fn cokernel(m: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let diag = snf.d.main_diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let factors: Vec<BigInt> = diag
        .into_iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    AbelianGroup::new(m.cols - rank, factors).expect("SNF diagonal is a divisibility chain")
}

pub const ORACLE_LIMIT: usize = 7;

/// Independent cokernel computation from determinantal divisors: the
/// product of the first `k` invariant factors is the gcd of all `k × k`
/// minors. Exponential in the dimensions, so capped at
/// [`ORACLE_LIMIT`] in each direction.
pub fn minors_gcd_oracle(m: &IntegerMatrix) -> Result<AbelianGroup, MatrixError> {
    if m.rows > ORACLE_LIMIT || m.cols > ORACLE_LIMIT {
        return Err(MatrixError::OracleTooLarge {
            rows: m.rows,
            cols: m.cols,
            limit: ORACLE_LIMIT,
        });
    }
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows.min(m.cols) {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows, k) {
            for cs in combinations(m.cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let factors: Vec<BigInt> = divisors
        .windows(2)
        .map(|w| &w[1] / &w[0])
        .filter(|d| !d.is_one())
        .collect();
    AbelianGroup::new(m.cols - rank, factors)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Cofactor expansion along the first row.
fn laplace_det(a: &[Vec<BigInt>]) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        2 => &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0],
        n => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][j] * laplace_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}
