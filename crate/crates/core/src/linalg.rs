//! Dense exact matrices over a [`Ring`] and the canonical column echelon
//! form that the rest of the crate leans on.
//!
//! The central routine is [`reduced_echelon`]: column operations only, so the
//! column span never changes, and the output is the unique reduced column
//! echelon form over a field. Over `Z/p^k` pivots are chosen with minimal
//! `p`-valuation; a pivot of valuation `v` is normalized to `p^v` and only
//! valuation-0 pivots count toward [`Echelon::rank`]. Operations that need a
//! free module (subspace bases, idempotent images) demand that every pivot be
//! a unit and fail with [`Error::NotFreeOverLocalRing`] otherwise.
//!
//! Shape mismatches are programming errors and panic; semantic failures
//! (non-invertibility, non-idempotency) are returned as [`Error`] values.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// Row-major dense matrix. Entries belong to a ring supplied per operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from column vectors, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        assert!(cols.iter().all(|col| col.len() == rows), "ragged columns");
        let mut entries = Vec::with_capacity(rows * cols.len());
        for r in 0..rows {
            for col in cols {
                entries.push(col[r].clone());
            }
        }
        Matrix {
            rows,
            cols: cols.len(),
            entries,
        }
    }

    /// Square matrix from a row-major flat vector of length `n*n`.
    pub fn from_vec_row_major(n: usize, entries: Vec<Elem>) -> Matrix {
        assert_eq!(entries.len(), n * n, "flat vector has wrong length");
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Row-major flattening; inverse of [`Matrix::from_vec_row_major`].
    pub fn to_vec_row_major(&self) -> Vec<Elem> {
        self.entries.clone()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: Vec::with_capacity(self.entries.len()),
        };
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.entries.push(self[(i, j)].clone());
            }
        }
        out
    }

    pub fn add(&self, ring: &Ring, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &Ring, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &Ring, c: &Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| ring.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, ring: &Ring, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = ring.mul(a, &rhs[(k, j)]);
                    out[(i, j)] = ring.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn matvec(&self, ring: &Ring, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = vec![ring.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = ring.mul(&self[(i, j)], &v[j]);
                out[i] = ring.add(&out[i], &t);
            }
        }
        out
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.entries.iter().all(|e| ring.is_zero(e))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_col(&mut self, ring: &Ring, j: usize, c: &Elem) {
        for i in 0..self.rows {
            self[(i, j)] = ring.mul(c, &self[(i, j)]);
        }
    }

    /// `col(dst) += c * col(src)`.
    fn add_scaled_col(&mut self, ring: &Ring, dst: usize, src: usize, c: &Elem) {
        for i in 0..self.rows {
            let t = ring.mul(c, &self[(i, src)]);
            self[(i, dst)] = ring.add(&self[(i, dst)], &t);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elem {
        &mut self.entries[r * self.cols + c]
    }
}

// ---------------------------------------------------------------------------
// reduced column echelon form
// ---------------------------------------------------------------------------

/// Result of [`reduced_echelon`]: `e = m * t` with `t` invertible.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub e: Matrix,
    pub t: Matrix,
    /// `(row, column, valuation)` per pivot, in elimination order. Over a
    /// field every valuation is 0 and rows come out strictly increasing.
    pub pivots: Vec<(usize, usize, u32)>,
}

impl Echelon {
    /// Rows of the unit (valuation-0) pivots, sorted.
    pub fn unit_pivot_rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .pivots
            .iter()
            .filter(|p| p.2 == 0)
            .map(|p| p.0)
            .collect();
        rows.sort_unstable();
        rows
    }

    /// Number of unit pivots; over a field this is the usual rank.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.2 == 0).count()
    }

    pub fn has_nonunit_pivot(&self) -> bool {
        self.pivots.iter().any(|p| p.2 > 0)
    }
}

/// Reduced column echelon form by invertible column operations.
///
/// Pivot selection: the candidate entry of minimal `(valuation, row, column)`
/// among unpivoted rows and unfinalized columns. The pivot column is scaled so
/// the pivot entry becomes `p^v` (so `1` when the pivot is a unit) and the
/// pivot row is cleared in every other column that the pivot divides. Pivot
/// columns are compacted to the left; trailing columns end up zero.
pub fn reduced_echelon(ring: &Ring, m: &Matrix) -> Echelon {
    let mut e = m.clone();
    let mut t = Matrix::identity(ring, m.cols);
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();
    let mut row_used = vec![false; m.rows];
    let mut next_col = 0;

    while next_col < m.cols {
        let mut best: Option<(u32, usize, usize)> = None;
        for r in 0..m.rows {
            if row_used[r] {
                continue;
            }
            for c in next_col..m.cols {
                if let Some(v) = ring.valuation(&e[(r, c)]) {
                    let key = (v, r, c);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };

        e.swap_cols(c, next_col);
        t.swap_cols(c, next_col);
        let (unit, _) = ring.split_unit(&e[(r, next_col)]).unwrap();
        let unit_inv = ring.unit_inverse(&unit).unwrap();
        e.scale_col(ring, next_col, &unit_inv);
        t.scale_col(ring, next_col, &unit_inv);
        debug_assert_eq!(e[(r, next_col)], ring.p_pow(v));

        for c2 in 0..m.cols {
            if c2 == next_col {
                continue;
            }
            // Entries of valuation >= v are cleared; a smaller valuation can
            // only occur in an earlier column under a non-unit pivot.
            if let Some(q) = ring.div_by_p_pow(&e[(r, c2)], v) {
                let coeff = ring.neg(&q);
                e.add_scaled_col(ring, c2, next_col, &coeff);
                t.add_scaled_col(ring, c2, next_col, &coeff);
            }
        }

        pivots.push((r, next_col, v));
        row_used[r] = true;
        next_col += 1;
    }

    Echelon { e, t, pivots }
}

/// Unit-pivot count of the echelon form; the rank over a field.
pub fn rank(ring: &Ring, m: &Matrix) -> usize {
    reduced_echelon(ring, m).rank()
}

/// One solution of `a * x = b` with non-pivot coordinates forced to zero,
/// or `None` when the echelon form exhibits no solution. Exact over fields
/// and over `Z/p^k` whenever the pivots meeting `b`'s support are units.
pub fn solve_linear(ring: &Ring, a: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let ech = reduced_echelon(ring, a);
    let mut y = vec![ring.zero(); a.cols];
    for &(r, c, v) in &ech.pivots {
        y[c] = ring.div_by_p_pow(&b[r], v)?;
    }
    if ech.e.matvec(ring, &y) != b {
        return None;
    }
    Some(ech.t.matvec(ring, &y))
}

/// Inverse via Gauss-Jordan row reduction with unit pivoting.
pub fn invert(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = Matrix::identity(ring, n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| ring.is_unit(&a[(r, col)]));
        let Some(pr) = pivot else {
            return Err(Error::NotInvertible);
        };
        for j in 0..n {
            a.entries.swap(col * n + j, pr * n + j);
            inv.entries.swap(col * n + j, pr * n + j);
        }
        let scale = ring.unit_inverse(&a[(col, col)]).unwrap();
        for j in 0..n {
            a[(col, j)] = ring.mul(&scale, &a[(col, j)]);
            inv[(col, j)] = ring.mul(&scale, &inv[(col, j)]);
        }
        for r in 0..n {
            if r == col || ring.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in 0..n {
                let t = ring.mul(&factor, &a[(col, j)]);
                a[(r, j)] = ring.sub(&a[(r, j)], &t);
                let t = ring.mul(&factor, &inv[(col, j)]);
                inv[(r, j)] = ring.sub(&inv[(r, j)], &t);
            }
        }
    }
    Ok(inv)
}

/// Determinant: fraction-free only in the sense of exact ring arithmetic.
/// Over a field this is Gaussian elimination; over `Z/p^k` (where division
/// by non-units is unavailable) a cofactor expansion is used, so keep those
/// matrices small.
pub fn determinant(ring: &Ring, m: &Matrix) -> Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    if ring.is_field() {
        determinant_elimination(ring, m)
    } else {
        determinant_cofactor(ring, m)
    }
}

fn determinant_elimination(ring: &Ring, m: &Matrix) -> Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = ring.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !ring.is_zero(&a[(r, col)]));
        let Some(pr) = pivot else {
            return ring.zero();
        };
        if pr != col {
            for j in 0..n {
                a.entries.swap(col * n + j, pr * n + j);
            }
            det = ring.neg(&det);
        }
        let p = a[(col, col)].clone();
        det = ring.mul(&det, &p);
        let p_inv = ring.unit_inverse(&p).unwrap();
        for r in col + 1..n {
            if ring.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = ring.mul(&a[(r, col)], &p_inv);
            for j in col..n {
                let t = ring.mul(&factor, &a[(col, j)]);
                a[(r, j)] = ring.sub(&a[(r, j)], &t);
            }
        }
    }
    det
}

fn determinant_cofactor(ring: &Ring, m: &Matrix) -> Elem {
    let n = m.rows;
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut det = ring.zero();
    for j in 0..n {
        if ring.is_zero(&m[(0, j)]) {
            continue;
        }
        let mut minor = Matrix::zeros(ring, n - 1, n - 1);
        for r in 1..n {
            let mut cc = 0;
            for c in 0..n {
                if c == j {
                    continue;
                }
                minor[(r - 1, cc)] = m[(r, c)].clone();
                cc += 1;
            }
        }
        let term = ring.mul(&m[(0, j)], &determinant_cofactor(ring, &minor));
        det = if j % 2 == 0 {
            ring.add(&det, &term)
        } else {
            ring.sub(&det, &term)
        };
    }
    det
}

/// Canonical basis of the image of an idempotent matrix `e`, as columns.
///
/// Requires `e * e == e`. The image of an idempotent over a local ring is
/// free, so the echelon form of `e` must come out with unit pivots; the
/// pivot columns are the basis, in pivot-row order.
pub fn idempotent_image_basis(ring: &Ring, e: &Matrix) -> Result<Matrix> {
    assert_eq!(e.rows, e.cols, "idempotent must be square");
    if e.mul(ring, e) != *e {
        return Err(Error::NotIdempotent);
    }
    let ech = reduced_echelon(ring, e);
    if ech.has_nonunit_pivot() {
        return Err(Error::NotFreeOverLocalRing);
    }
    let k = ech.pivots.len();
    let basis = Matrix::from_cols(e.rows, &(0..k).map(|j| ech.e.col(j)).collect::<Vec<_>>());
    Ok(basis)
}

/// `a == lambda * b` for a unit scalar `lambda`? Returns the scalar, taken
/// from the first unit entry of `b`.
pub fn unit_scalar_ratio(ring: &Ring, a: &Matrix, b: &Matrix) -> Option<Elem> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return None;
    }
    let entries = || (0..a.rows).flat_map(|i| (0..a.cols).map(move |j| (i, j)));
    let (i0, j0) = entries().find(|&(i, j)| ring.is_unit(&b[(i, j)]))?;
    let lambda = ring.mul(&a[(i0, j0)], &ring.unit_inverse(&b[(i0, j0)]).unwrap());
    if !ring.is_unit(&lambda) {
        return None;
    }
    for (i, j) in entries() {
        if a[(i, j)] != ring.mul(&lambda, &b[(i, j)]) {
            return None;
        }
    }
    Some(lambda)
}

/// Uniform random matrix with entries drawn from the finite ring.
pub fn random_matrix<R: Rng>(ring: &Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let pool = ring.elements().expect("random matrices need a finite ring");
    let mut m = Matrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = pool[rng.gen_range(0..pool.len())].clone();
        }
    }
    m
}

/// Rejection-sample an invertible matrix over a finite ring.
pub fn random_invertible<R: Rng>(ring: &Ring, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(ring, n, n, rng);
        if invert(ring, &m).is_ok() {
            return m;
        }
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn mat(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn echelon_of_rank_one_matrix_over_gf5() {
        let f5 = gf(5);
        let m = mat(&f5, &[&[2, 4], &[0, 0]]);
        let ech = reduced_echelon(&f5, &m);
        assert_eq!(ech.e, mat(&f5, &[&[1, 0], &[0, 0]]));
        assert_eq!(ech.unit_pivot_rows(), vec![0]);
        assert_eq!(ech.rank(), 1);
        assert_eq!(m.mul(&f5, &ech.t), ech.e);
        assert!(invert(&f5, &ech.t).is_ok());
    }

    #[test]
    fn echelon_identity_is_fixed() {
        let f3 = gf(3);
        let id = Matrix::identity(&f3, 3);
        let ech = reduced_echelon(&f3, &id);
        assert_eq!(ech.e, id);
        assert_eq!(ech.unit_pivot_rows(), vec![0, 1, 2]);
    }

    #[test]
    fn echelon_over_z9_pivots_on_the_unit_entry() {
        let z9 = Ring::parse("Z/9").unwrap();
        let m = mat(&z9, &[&[3], &[1]]);
        let ech = reduced_echelon(&z9, &m);
        assert_eq!(ech.e, mat(&z9, &[&[3], &[1]]));
        assert_eq!(ech.pivots, vec![(1, 0, 0)]);
        assert_eq!(ech.unit_pivot_rows(), vec![1]);
        assert_eq!(m.mul(&z9, &ech.t), ech.e);
    }

    #[test]
    fn echelon_over_z9_reports_nonunit_pivots() {
        let z9 = Ring::parse("Z/9").unwrap();
        let m = mat(&z9, &[&[3, 0], &[0, 6]]);
        let ech = reduced_echelon(&z9, &m);
        assert!(ech.has_nonunit_pivot());
        assert_eq!(ech.rank(), 0);
        // Non-unit pivots are normalized to p^v.
        assert_eq!(ech.e, mat(&z9, &[&[3, 0], &[0, 3]]));
    }

    /// The echelon form depends only on the column span: multiplying by a
    /// random invertible matrix on the right must not change it.
    #[test]
    fn echelon_is_canonical_for_the_column_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for p in [2, 3, 5] {
            let ring = gf(p);
            for _ in 0..25 {
                let m = random_matrix(&ring, 4, 3, &mut rng);
                let t = random_invertible(&ring, 3, &mut rng);
                let a = reduced_echelon(&ring, &m).e;
                let b = reduced_echelon(&ring, &m.mul(&ring, &t)).e;
                assert_eq!(a, b);
                // Idempotence: reducing a reduced form is a no-op.
                assert_eq!(reduced_echelon(&ring, &a).e, a);
            }
        }
    }

    #[test]
    fn invert_round_trips() {
        let f5 = gf(5);
        let m = mat(&f5, &[&[1, 2], &[3, 4]]);
        let inv = invert(&f5, &m).unwrap();
        assert_eq!(m.mul(&f5, &inv), Matrix::identity(&f5, 2));
        assert_eq!(inv.mul(&f5, &m), Matrix::identity(&f5, 2));
        assert_eq!(invert(&f5, &inv).unwrap(), m);

        assert_eq!(
            invert(&f5, &mat(&f5, &[&[1, 2], &[2, 4]])).unwrap_err(),
            Error::NotInvertible
        );

        let z9 = Ring::parse("Z/9").unwrap();
        let m = mat(&z9, &[&[3, 1], &[1, 3]]);
        let inv = invert(&z9, &m).unwrap();
        assert_eq!(m.mul(&z9, &inv), Matrix::identity(&z9, 2));
        assert_eq!(
            invert(&z9, &mat(&z9, &[&[3, 3], &[3, 3]])).unwrap_err(),
            Error::NotInvertible
        );
    }

    #[test]
    fn solve_picks_zero_free_variables() {
        let f5 = gf(5);
        let a = mat(&f5, &[&[1, 1], &[0, 0]]);
        let b = vec![f5.from_i64(2), f5.zero()];
        let x = solve_linear(&f5, &a, &b).unwrap();
        assert_eq!(a.matvec(&f5, &x), b);
        assert_eq!(x, vec![f5.from_i64(2), f5.zero()]);

        let unsolvable = vec![f5.zero(), f5.one()];
        assert_eq!(solve_linear(&f5, &a, &unsolvable), None);
    }

    #[test]
    fn solve_over_the_rationals() {
        let qq = Ring::rationals();
        let a = mat(&qq, &[&[2, 1], &[1, 3]]);
        let b = vec![qq.parse_elem("1/2").unwrap(), qq.from_i64(4)];
        let x = solve_linear(&qq, &a, &b).unwrap();
        assert_eq!(a.matvec(&qq, &x), b);
    }

    #[test]
    fn determinants_match_between_methods() {
        let qq = Ring::rationals();
        let m = mat(&qq, &[&[1, 2], &[3, 4]]);
        assert_eq!(determinant(&qq, &m), qq.from_i64(-2));

        let z9 = Ring::parse("Z/9").unwrap();
        let m = mat(&z9, &[&[3, 1], &[1, 3]]);
        assert_eq!(determinant(&z9, &m), z9.from_i64(8));

        let f7 = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = random_matrix(&f7, 3, 3, &mut rng);
            assert_eq!(
                determinant_elimination(&f7, &m),
                determinant_cofactor(&f7, &m)
            );
        }
    }

    #[test]
    fn determinant_unit_iff_invertible_over_z27() {
        let z27 = Ring::parse("Z/27").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let m = random_matrix(&z27, 3, 3, &mut rng);
            let det_unit = z27.is_unit(&determinant(&z27, &m));
            assert_eq!(det_unit, invert(&z27, &m).is_ok());
        }
    }

    #[test]
    fn idempotent_image_basis_of_rank_one_projector() {
        let f5 = gf(5);
        let e = mat(&f5, &[&[3, 3], &[3, 3]]);
        assert_eq!(e.mul(&f5, &e), e);
        let basis = idempotent_image_basis(&f5, &e).unwrap();
        assert_eq!(basis, mat(&f5, &[&[1], &[1]]));

        let id = Matrix::identity(&f5, 3);
        assert_eq!(idempotent_image_basis(&f5, &id).unwrap(), id);

        let not_idem = mat(&f5, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            idempotent_image_basis(&f5, &not_idem).unwrap_err(),
            Error::NotIdempotent
        );
    }

    /// Exhaustive oracle over GF(3): for every 2x2 idempotent, the basis and
    /// the image generate each other.
    #[test]
    fn idempotent_image_basis_spans_the_image_exhaustively() {
        let f3 = gf(3);
        let elems = f3.elements().unwrap();
        let mut count = 0;
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        let e = Matrix::from_rows(vec![
                            vec![a.clone(), b.clone()],
                            vec![c.clone(), d.clone()],
                        ]);
                        if e.mul(&f3, &e) != e {
                            continue;
                        }
                        count += 1;
                        let basis = idempotent_image_basis(&f3, &e).unwrap();
                        // Each basis column is in im(e): solve e x = col.
                        for j in 0..basis.cols {
                            assert!(solve_linear(&f3, &e, &basis.col(j)).is_some());
                        }
                        // Each column of e is spanned by the basis.
                        for j in 0..e.cols {
                            assert!(solve_linear(&f3, &basis, &e.col(j)).is_some());
                        }
                    }
                }
            }
        }
        // 2x2 idempotents over GF(3): 0, 1, and the rank-one projectors.
        assert_eq!(count, 14);
    }

    #[test]
    fn unit_scalar_ratio_detects_scaling() {
        let f5 = gf(5);
        let m = mat(&f5, &[&[1, 2], &[3, 4]]);
        let scaled = m.scale(&f5, &f5.from_i64(3));
        assert_eq!(unit_scalar_ratio(&f5, &scaled, &m), Some(f5.from_i64(3)));
        assert_eq!(unit_scalar_ratio(&f5, &m, &m), Some(f5.one()));
        let other = mat(&f5, &[&[1, 2], &[3, 0]]);
        assert_eq!(unit_scalar_ratio(&f5, &other, &m), None);
        // Zero is not a unit multiple.
        let zero = Matrix::zeros(&f5, 2, 2);
        assert_eq!(unit_scalar_ratio(&f5, &zero, &m), None);
    }
}
