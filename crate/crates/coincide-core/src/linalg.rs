//! Exact rational linear algebra: reduced row echelon form, solving,
//! kernel/image/quotient bases, traces.
//!
//! Everything is deterministic: elimination always picks the leftmost pivot
//! column and the topmost nonzero row, so downstream homology bases are
//! reproducible bit for bit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// Dense column vector of rationals.
pub type Vector = Vec<Rational>;

/// A rows x cols rational matrix. Entries are stored sparsely; absent
/// entries read as zero. Elimination densifies internally, which is an
/// efficiency detail invisible in results.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = MatrixQ::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        MatrixQ::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| crate::rational::rat(n)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, cols: &[Vector]) -> Self {
        let mut m = MatrixQ::zeros(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            t.set(*c, *r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        // group other's entries by row for sparse accumulation
        for ((i, k), a) in &self.entries {
            for j in 0..other.cols {
                if let Some(b) = other.entries.get(&(*k, j)) {
                    let cur = out.get(*i, j) + a * b;
                    out.set(*i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let mut out = vec![Rational::zero(); self.rows];
        for ((i, j), a) in &self.entries {
            if !v[*j].is_zero() {
                out[*i] += a * &v[*j];
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            let cur = out.get(*r, *c) + v;
            out.set(*r, *c, cur);
        }
        out
    }

    pub fn neg(&self) -> MatrixQ {
        let mut out = MatrixQ::zeros(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            out.set(*r, *c, -v.clone());
        }
        out
    }

    fn to_dense(&self) -> Vec<Vector> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    /// Reduced row echelon form together with the ascending list of pivot
    /// columns. Pivoting is leftmost-column, topmost-row.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut a = self.to_dense();
        let pivots = rref_in_place(&mut a, self.cols);
        (MatrixQ::from_rows_trim(a, self.rows, self.cols), pivots)
    }

    fn from_rows_trim(rows: Vec<Vector>, r: usize, c: usize) -> Self {
        let mut m = MatrixQ::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact solution of `self * x = b`, if one exists. Free variables are
    /// set to zero, making the choice deterministic.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = self.to_dense();
        for (i, row) in aug.iter_mut().enumerate() {
            row.push(b[i].clone());
        }
        let pivots = rref_in_place(&mut aug, self.cols + 1);
        if pivots.contains(&self.cols) {
            return Ok(None); // b outside the column span
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug[row][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Basis of the kernel. Vectors come from the free columns of the
    /// reduced form, normalized so their first nonzero entry is positive.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let dense = r.to_dense();
        let pivot_of_row: Vec<usize> = pivots.clone();
        let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
        let mut vectors = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivot_of_row.iter().enumerate() {
                v[pc] = -dense[row][free].clone();
            }
            normalize_leading(&mut v);
            vectors.push(v);
        }
        SubspaceBasis {
            ambient_dim: self.cols,
            vectors,
        }
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image_basis(&self) -> SubspaceBasis {
        let (_, pivots) = self.rref();
        SubspaceBasis {
            ambient_dim: self.rows,
            vectors: pivots.into_iter().map(|c| self.column(c)).collect(),
        }
    }

    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Exact inverse, if the matrix is square and nonsingular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.to_dense();
        for (i, row) in aug.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
        }
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = MatrixQ::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug[i][n + j].clone());
            }
        }
        Some(inv)
    }

    pub fn pow(&self, mut e: usize) -> MatrixQ {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = MatrixQ::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Flip the sign of a vector so its first nonzero entry is positive.
fn normalize_leading(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|q| !q.is_zero()) {
        if crate::rational::sign(first) < 0 {
            for q in v.iter_mut() {
                *q = -q.clone();
            }
        }
    }
}

fn rref_in_place(a: &mut [Vector], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, src);
        let p = a[pivot_row][col].clone();
        for v in a[pivot_row].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols {
                    let sub = &a[pivot_row][c] * &factor;
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// A list of linearly independent vectors in a fixed ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vector>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn as_matrix(&self) -> MatrixQ {
        MatrixQ::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        matches!(self.as_matrix().solve(v), Ok(Some(_)))
    }
}

/// Representatives completing `small` to a basis of `span(big)`, chosen
/// greedily from `big`'s vectors in order. This realizes cycles modulo
/// boundaries downstream.
pub fn quotient_representatives(big: &SubspaceBasis, small: &SubspaceBasis) -> Result<SubspaceBasis> {
    if big.ambient_dim != small.ambient_dim {
        return Err(Error::DimensionMismatch(
            "quotient_representatives: ambient dimensions differ".into(),
        ));
    }
    let big_matrix = big.as_matrix();
    for v in &small.vectors {
        if big_matrix.solve(v)?.is_none() {
            return Err(Error::input(
                "quotient_representatives: small subspace is not contained in the big one",
            ));
        }
    }
    let mut kept = Vec::new();
    let mut current: Vec<Vector> = small.vectors.clone();
    let mut rank = MatrixQ::from_columns(big.ambient_dim, &current).rank();
    for v in &big.vectors {
        current.push(v.clone());
        let r = MatrixQ::from_columns(big.ambient_dim, &current).rank();
        if r > rank {
            rank = r;
            kept.push(v.clone());
        } else {
            current.pop();
        }
    }
    Ok(SubspaceBasis {
        ambient_dim: big.ambient_dim,
        vectors: kept,
    })
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> Vector {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = MatrixQ::identity(3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);

        let z = MatrixQ::zeros(2, 2);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_deficient() {
        // hand Gaussian elimination: [[2,4],[1,2]] -> [[1,2],[0,0]], pivot 0
        let m = MatrixQ::from_int_rows(&[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, MatrixQ::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn solve_identity_underdetermined_inconsistent() {
        let id = MatrixQ::identity(3);
        let b = vec![rat(3), rat(-1), ratio(1, 2)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        // free variable pinned to zero: x = (5, 0)
        let m = MatrixQ::from_int_rows(&[&[1, 1]]);
        assert_eq!(m.solve(&[rat(5)]).unwrap(), Some(vec![rat(5), rat(0)]));

        let m = MatrixQ::from_int_rows(&[&[1], &[0]]);
        assert_eq!(m.solve(&[rat(0), rat(1)]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = MatrixQ::identity(2);
        assert!(m.solve(&[rat(1)]).is_err());
    }

    #[test]
    fn kernel_basis_examples() {
        assert_eq!(MatrixQ::identity(4).kernel_basis().dim(), 0);

        let z = MatrixQ::zeros(1, 3);
        let k = z.kernel_basis();
        assert_eq!(k.vectors, vec![e(3, 0), e(3, 1), e(3, 2)]);

        // free-variable back-substitution: single kernel vector (1, -1, 0)
        let m = MatrixQ::from_int_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.vectors, vec![vec![rat(1), rat(-1), rat(0)]]);
    }

    #[test]
    fn image_basis_examples() {
        let id = MatrixQ::identity(2);
        assert_eq!(id.image_basis().vectors, vec![e(2, 0), e(2, 1)]);
        assert_eq!(MatrixQ::zeros(3, 2).image_basis().dim(), 0);

        // rank-1 check
        let m = MatrixQ::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.image_basis().vectors, vec![vec![rat(1), rat(2)]]);
    }

    #[test]
    fn quotient_representative_examples() {
        let big = SubspaceBasis {
            ambient_dim: 3,
            vectors: vec![e(3, 0), e(3, 1)],
        };
        let small = SubspaceBasis {
            ambient_dim: 3,
            vectors: vec![e(3, 0)],
        };
        let q = quotient_representatives(&big, &small).unwrap();
        assert_eq!(q.vectors, vec![e(3, 1)]);

        let q = quotient_representatives(&big, &big).unwrap();
        assert_eq!(q.dim(), 0);

        let big = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]],
        };
        let small = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![vec![rat(1), rat(1)]],
        };
        let q = quotient_representatives(&big, &small).unwrap();
        assert_eq!(q.vectors, vec![vec![rat(1), rat(-1)]]);

        // containment violated
        let bad_small = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![vec![rat(1), rat(0)]],
        };
        let narrow = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![vec![rat(0), rat(1)]],
        };
        assert!(quotient_representatives(&narrow, &bad_small).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(MatrixQ::identity(4).trace().unwrap(), rat(4));
        assert_eq!(MatrixQ::zeros(3, 3).trace().unwrap(), rat(0));
        let mut m = MatrixQ::zeros(2, 2);
        m.set(0, 0, ratio(1, 2));
        m.set(0, 1, rat(7));
        m.set(1, 1, ratio(1, 3));
        assert_eq!(m.trace().unwrap(), ratio(5, 6));
        assert!(MatrixQ::zeros(2, 3).trace().is_err());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatrixQ {
        let mut m = MatrixQ::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.6) {
                    m.set(r, c, rat(rng.gen_range(-4..=4)));
                }
            }
        }
        m
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, rng.gen_range(1..6), rng.gen_range(1..6));
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, rng.gen_range(1..6), rng.gen_range(1..6));
            assert_eq!(m.kernel_basis().dim() + m.image_basis().dim(), m.cols());
            for v in &m.kernel_basis().vectors {
                assert!(m.mul_vec(v).iter().all(|q| q.is_zero()));
            }
        }
    }

    #[test]
    fn solve_substitutes_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, rng.gen_range(1..6), rng.gen_range(1..6));
            let x: Vector = (0..m.cols()).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            assert_eq!(m.mul_vec(&sol), b);
        }
    }

    #[test]
    fn trace_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let n = rng.gen_range(1..5);
            let k = rng.gen_range(1..5);
            let a = random_matrix(&mut rng, n, k);
            let b = random_matrix(&mut rng, k, n);
            assert_eq!(
                a.mul(&b).trace().unwrap(),
                b.mul(&a).trace().unwrap()
            );
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatrixQ::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatrixQ::identity(2));
        assert!(MatrixQ::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
