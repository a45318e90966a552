//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything the fan and Picard computations need: contents of vectors,
//! Smith normal form with unimodular transforms, cokernel presentations and
//! the test for "extends to a basis of the lattice".

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer vector in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in vector sum");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = content(self);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|a| a / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        content(self).is_one()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "row {i} has wrong length");
            for j in 0..cols {
                m[(i, j)] = r[j].clone();
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "dimension mismatch in matrix-vector product");
        IntVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
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

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        for j in 0..self.cols {
            let s = &self[(source, j)] * c;
            self[(target, j)] += s;
        }
    }

    /// col[target] += c * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        for i in 0..self.rows {
            let s = &self[(i, source)] * c;
            self[(i, target)] += s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self)
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `left * M * right` is diagonal with the
/// invariant factors on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `min(rows, cols)` non-negative factors, each dividing the next; zeros last.
    pub invariant_factors: Vec<BigInt>,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// gcd of the absolute values of the entries; 0 for the zero vector.
pub fn content(v: &IntVector) -> BigInt {
    v.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Smallest nonzero |entry| in the block `a[t.., t..]`.
fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms, by pivoting on the entry of
/// smallest absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // A remainder survived: move the smallest entry of the pivot
                // row/column into the pivot position and repeat.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
                continue;
            }
            // Pivot must divide the whole remaining block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        invariant_factors,
        left_transform: left,
        right_transform: right,
    }
}

/// True iff the vectors extend to a basis of `Z^ambient_dim`: they are
/// linearly independent and every Smith invariant factor equals 1.
pub fn spans_unimodular_subspace(vectors: &[IntVector], ambient_dim: usize) -> bool {
    if vectors.is_empty() || vectors.len() > ambient_dim {
        return false;
    }
    let m = IntMatrix::from_rows(vectors, ambient_dim);
    smith_normal_form(&m).invariant_factors.iter().all(One::is_one)
}

/// Cokernel of `M : Z^cols -> Z^rows` as `(free rank, torsion factors > 1)`.
pub fn cokernel(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(m);
    let free_rank = m.rows - snf.rank();
    let torsion = snf
        .invariant_factors
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    (free_rank, torsion)
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// echelon rows with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows are dropped.
pub fn row_hermite_form(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let mut rows: Vec<IntVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut out: Vec<IntVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].0[col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&x, &&y| rows[x].0[col].abs().cmp(&rows[y].0[col].abs()))
                .unwrap();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = -(&rows[i].0[col] / &rows[p].0[col]);
                rows[i] = rows[i].add(&rows[p].scale(&q));
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| !rows[i].0[col].is_zero()) {
            let mut r = rows.swap_remove(p);
            if r.0[col].is_negative() {
                r = r.neg();
            }
            out.push(r);
            pivots.push(col);
        }
        rows.retain(|r| !r.is_zero());
    }
    // Reduce above pivots.
    for k in 0..out.len() {
        let col = pivots[k];
        for i in 0..k {
            let q = out[i].0[col].div_floor(&out[k].0[col]);
            if !q.is_zero() {
                out[i] = out[i].add(&out[k].scale(&-q));
            }
        }
    }
    out
}

/// Reduces `v` modulo the lattice spanned by a row Hermite basis, so that
/// entries in pivot columns land in `[0, pivot)`.
pub fn reduce_mod_hermite(v: &IntVector, hermite: &[IntVector]) -> IntVector {
    let mut v = v.clone();
    for h in hermite {
        let col = h.0.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
        let q = v.0[col].div_floor(&h.0[col]);
        if !q.is_zero() {
            v = v.add(&h.scale(&-q));
        }
    }
    v
}
