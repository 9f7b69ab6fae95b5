//! Dense linear algebra over prime fields and p-linear endomorphisms.
//!
//! Entries are stored as reduced residues `0 <= v < p` in `u32`; products go
//! through `u64` so any prime below 2^32 works (the tool only promises p < 2^31).

use std::fmt;

use crate::error::{Error, Result};

/// Arithmetic in the prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// The Frobenius x -> x^p. On a prime field this is the identity map.
    #[inline]
    pub fn frobenius(self, a: u32) -> u32 {
        a
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p carrying its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    p: u32,
}

impl Scalar {
    pub fn new(value: i64, field: Fp) -> Self {
        Scalar {
            value: field.reduce_i64(value),
            p: field.p(),
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn p(self) -> u32 {
        self.p
    }

    fn field(self) -> Fp {
        Fp { p: self.p }
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.p, rhs.p);
        Scalar {
            value: self.field().add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.p, rhs.p);
        Scalar {
            value: self.field().mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

/// Row-major dense matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over F_{} [", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl DenseMatrix {
    pub fn new(field: Fp, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|&v| v >= field.p()) {
            return Err(Error::Invalid("matrix entry not reduced mod p".into()));
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.reduce_i64(v)))
            .collect();
        DenseMatrix::new(field, r, c, entries)
    }

    /// Build from column vectors, all of length `rows`.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = DenseMatrix::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &v) in col.iter().enumerate() {
                m.entries[r * cols + c] = v;
            }
        }
        m
    }

    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1 % field.p();
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = DenseMatrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b != 0 {
                        let idx = r * rhs.cols + c;
                        out.entries[idx] = f.add(out.entries[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Ordinary matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Result<DenseMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = DenseMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Entrywise Frobenius a -> a^p (identity over F_p).
    pub fn frobenius(&self) -> DenseMatrix {
        let f = self.field;
        DenseMatrix {
            entries: self.entries.iter().map(|&v| f.frobenius(v)).collect(),
            ..self.clone()
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    ///
    /// Pivots are chosen as the first nonzero entry of each column scanning
    /// columns left to right and rows top to bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if r != prow {
                for k in 0..self.cols {
                    self.entries.swap(r * self.cols + k, prow * self.cols + k);
                }
            }
            let inv = f.inv(self.get(prow, c));
            for k in c..self.cols {
                let v = self.get(prow, k);
                self.set(prow, k, f.mul(v, inv));
            }
            for r2 in 0..self.rows {
                if r2 == prow {
                    continue;
                }
                let factor = self.get(r2, c);
                if factor == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = f.sub(self.get(r2, k), f.mul(factor, self.get(prow, k)));
                    self.set(r2, k, v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % f.p();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * c = target` for some coefficient column `c`.
    pub fn solve_in_span(&self, target: &[u32]) -> Result<Vec<u32>> {
        if target.len() != self.rows {
            return Err(Error::Shape(format!(
                "target of length {} against {} rows",
                target.len(),
                self.rows
            )));
        }
        let mut solver = SpanSolver::new(self.field, self.rows);
        for c in 0..self.cols {
            solver.push(&self.column(c));
        }
        solver.solve(target)
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = DenseMatrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1 % self.field.p());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = DenseMatrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }
}

/// Rank of a matrix over F_p.
pub fn rank(m: &DenseMatrix) -> usize {
    m.rank()
}

/// Incremental column span with coordinate recovery.
///
/// Every pushed vector becomes a column; `solve` expresses a target as a
/// combination of all pushed columns (dependent ones get coefficient zero).
#[derive(Debug, Clone)]
pub struct SpanSolver {
    field: Fp,
    dim: usize,
    ncols: usize,
    // (pivot, normalized echelon vector, combination of pushed columns)
    echelon: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl SpanSolver {
    pub fn new(field: Fp, dim: usize) -> Self {
        SpanSolver {
            field,
            dim,
            ncols: 0,
            echelon: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn len(&self) -> usize {
        self.ncols
    }

    pub fn is_empty(&self) -> bool {
        self.ncols == 0
    }

    fn reduce(&self, v: &mut [u32], mut combo: Option<&mut Vec<u32>>) {
        let f = self.field;
        for (pivot, vec, comb) in &self.echelon {
            let factor = v[*pivot];
            if factor == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(vec) {
                if b != 0 {
                    *a = f.sub(*a, f.mul(factor, b));
                }
            }
            if let Some(combo) = combo.as_deref_mut() {
                if combo.len() < comb.len() {
                    combo.resize(comb.len(), 0);
                }
                for (a, &b) in combo.iter_mut().zip(comb) {
                    if b != 0 {
                        *a = f.sub(*a, f.mul(factor, b));
                    }
                }
            }
        }
    }

    /// Append a column; returns true when it enlarges the span.
    pub fn push(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let f = self.field;
        let idx = self.ncols;
        self.ncols += 1;
        let mut w = v.to_vec();
        let mut combo = vec![0u32; idx + 1];
        combo[idx] = 1 % f.p();
        self.reduce(&mut w, Some(&mut combo));
        match w.iter().position(|&x| x != 0) {
            Some(pivot) => {
                // w = sum combo_k col_k
                let inv = f.inv(w[pivot]);
                for x in w.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for x in combo.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                self.echelon.push((pivot, w, combo));
                true
            }
            None => false,
        }
    }

    /// Append `v` only if it enlarges the span; dependent vectors are not recorded.
    pub fn try_push(&mut self, v: &[u32]) -> bool {
        if self.contains(v) {
            false
        } else {
            self.push(v)
        }
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, None);
        w.iter().all(|&x| x == 0)
    }

    /// Coefficients `c` with `sum_k c_k col_k = target`.
    pub fn solve(&self, target: &[u32]) -> Result<Vec<u32>> {
        if target.len() != self.dim {
            return Err(Error::Shape("target length mismatch".into()));
        }
        let f = self.field;
        let mut w = target.to_vec();
        let mut combo = vec![0u32; self.ncols];
        self.reduce(&mut w, Some(&mut combo));
        if w.iter().any(|&x| x != 0) {
            return Err(Error::NotInSpan);
        }
        // w_final = target - sum(factor * echelon) and echelon = sum comb * col,
        // so target = sum(factor * comb * col) = -combo.
        combo.resize(self.ncols, 0);
        Ok(combo.into_iter().map(|x| f.neg(x)).collect())
    }
}

/// A p-linear endomorphism v -> M * v^[p] of a finite-dimensional F_p-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLinearEndo {
    matrix: DenseMatrix,
}

impl PLinearEndo {
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Shape(format!(
                "p-linear endomorphism needs a square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(PLinearEndo { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn p(&self) -> u32 {
        self.matrix.field().p()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.matrix.field();
        let vp: Vec<u32> = v.iter().map(|&x| f.frobenius(x)).collect();
        self.matrix.mul_vec(&vp)
    }

    /// Matrix of the e-th iterate: M * M^[p] * ... * M^[p^(e-1)].
    pub fn semilinear_power(&self, e: u64) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.matrix.field(), self.dim());
        let mut twisted = self.matrix.clone();
        for _ in 0..e {
            acc = acc.mul(&twisted).expect("square");
            twisted = twisted.frobenius();
        }
        acc
    }

    /// Dimension of the stable part, the intersection of all iterated images.
    pub fn stable_rank(&self) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        self.semilinear_power(self.dim() as u64).rank()
    }
}
