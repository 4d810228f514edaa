//! Finite-rank associative unital algebras presented by structure constants.
//!
//! An algebra of rank `m` over a base ring stores, for every basis pair
//! `(i, j)`, the coordinate vector of `b_i * b_j`, plus the coordinates of
//! the unit. Elements are plain coordinate vectors of length `m`.
//! Construction verifies associativity on all basis triples and both unit
//! laws, so a value of type [`StructureAlgebra`] is always an actual algebra;
//! nothing downstream re-checks this.
//!
//! Basis conventions fixed here and relied on everywhere else:
//!
//! * `matrix_algebra(ring, k)` uses the elementary matrices `E_{i,j}` in
//!   row-major order (`E_{i,j}` at index `i*k + j`), with
//!   `E_{i,j} E_{k,l} = delta_{j,k} E_{i,l}`;
//! * `quaternion_algebra(ring, a, b)` uses `(1, i, j, ij)` with `i^2 = a`,
//!   `j^2 = b`, `ji = -ij`;
//! * `tensor` orders the product basis lexicographically, `(i, j)` at index
//!   `i * rank_b + j`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rings::{Elem, Ring};

/// An associative unital algebra of finite rank, free over its base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    ring: Ring,
    rank: usize,
    /// `sc[i][j]` = coordinates of `b_i * b_j`, each of length `rank`.
    sc: Vec<Vec<Vec<Elem>>>,
    unit: Vec<Elem>,
}

impl StructureAlgebra {
    /// Validate and build. Errors: [`Error::NotAssociative`] with the first
    /// violating basis triple, [`Error::BadUnit`] with the first basis index
    /// where a unit law fails, [`Error::DimensionMismatch`] on ragged input.
    pub fn new(ring: Ring, sc: Vec<Vec<Vec<Elem>>>, unit: Vec<Elem>) -> Result<StructureAlgebra> {
        let rank = sc.len();
        if rank == 0 {
            return Err(Error::DimensionMismatch("rank must be positive".into()));
        }
        let shape_ok = unit.len() == rank
            && sc.len() == rank
            && sc
                .iter()
                .all(|row| row.len() == rank && row.iter().all(|v| v.len() == rank));
        if !shape_ok {
            return Err(Error::DimensionMismatch(
                "structure constants must form a rank x rank table of rank-vectors".into(),
            ));
        }
        let alg = StructureAlgebra {
            ring,
            rank,
            sc,
            unit,
        };
        for i in 0..rank {
            if alg.mul_vec(&alg.unit, &alg.basis_vec(i)) != alg.basis_vec(i)
                || alg.mul_vec(&alg.basis_vec(i), &alg.unit) != alg.basis_vec(i)
            {
                return Err(Error::BadUnit(i));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let left = alg.mul_vec(&alg.sc[i][j], &alg.basis_vec(k));
                    let right = alg.mul_vec(&alg.basis_vec(i), &alg.sc[j][k]);
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sc(&self, i: usize, j: usize) -> &[Elem] {
        &self.sc[i][j]
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn zero_vec(&self) -> Vec<Elem> {
        vec![self.ring.zero(); self.rank]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_vec();
        v[i] = self.ring.one();
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul_vec(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rank, "left factor has wrong length");
        assert_eq!(y.len(), self.rank, "right factor has wrong length");
        let ring = &self.ring;
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if ring.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if ring.is_zero(yj) {
                    continue;
                }
                let c = ring.mul(xi, yj);
                for (o, s) in out.iter_mut().zip(&self.sc[i][j]) {
                    let t = ring.mul(&c, s);
                    *o = ring.add(o, &t);
                }
            }
        }
        out
    }

    /// Matrices of left and right multiplication by `x`: column `j` of `L`
    /// is `x * b_j`, column `j` of `R` is `b_j * x`.
    pub fn mult_matrices(&self, x: &[Elem]) -> (Matrix, Matrix) {
        let l_cols: Vec<Vec<Elem>> = (0..self.rank)
            .map(|j| self.mul_vec(x, &self.basis_vec(j)))
            .collect();
        let r_cols: Vec<Vec<Elem>> = (0..self.rank)
            .map(|j| self.mul_vec(&self.basis_vec(j), x))
            .collect();
        (
            Matrix::from_cols(self.rank, &l_cols),
            Matrix::from_cols(self.rank, &r_cols),
        )
    }
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

/// The full matrix algebra `M_k` in the elementary-matrix basis.
pub fn matrix_algebra(ring: &Ring, k: usize) -> StructureAlgebra {
    assert!(k >= 1, "matrix algebra needs k >= 1");
    let rank = k * k;
    let zero = vec![ring.zero(); rank];
    let mut sc = vec![vec![zero.clone(); rank]; rank];
    for i in 0..k {
        for j in 0..k {
            for kk in 0..k {
                for l in 0..k {
                    if j == kk {
                        sc[i * k + j][kk * k + l][i * k + l] = ring.one();
                    }
                }
            }
        }
    }
    let mut unit = zero;
    for i in 0..k {
        unit[i * k + i] = ring.one();
    }
    StructureAlgebra::new(ring.clone(), sc, unit).expect("matrix algebra is associative")
}

/// The quaternion algebra `Q(a, b)` on basis `(1, i, j, ij)`.
///
/// Requires `a`, `b`, and `2` to be units ([`Error::NotUnit`]).
pub fn quaternion_algebra(ring: &Ring, a: &Elem, b: &Elem) -> Result<StructureAlgebra> {
    for x in [a, b] {
        if !ring.is_unit(x) {
            return Err(Error::NotUnit(ring.format_elem(x)));
        }
    }
    if !ring.is_unit(&ring.from_i64(2)) {
        return Err(Error::NotUnit("2".into()));
    }
    let zero = || vec![ring.zero(); 4];
    let coord = |idx: usize, val: &Elem| {
        let mut v = zero();
        v[idx] = val.clone();
        v
    };
    let one = ring.one();
    let ab = ring.mul(a, b);
    let mut sc = vec![vec![zero(); 4]; 4];
    for (t, row) in sc.iter_mut().enumerate() {
        row[0] = coord(t, &one); // b_t * 1
    }
    sc[0] = (0..4).map(|t| coord(t, &one)).collect(); // 1 * b_t
    sc[1][1] = coord(0, a); // i i = a
    sc[1][2] = coord(3, &one); // i j = ij
    sc[1][3] = coord(2, a); // i (ij) = a j
    sc[2][1] = coord(3, &ring.neg(&one)); // j i = -ij
    sc[2][2] = coord(0, b); // j j = b
    sc[2][3] = coord(1, &ring.neg(b)); // j (ij) = -b i
    sc[3][1] = coord(2, &ring.neg(a)); // (ij) i = -a j
    sc[3][2] = coord(1, b); // (ij) j = b i
    sc[3][3] = coord(0, &ring.neg(&ab)); // (ij)(ij) = -ab
    StructureAlgebra::new(ring.clone(), sc, coord(0, &one))
}

/// The split algebra `R^m` with componentwise product (useful as a
/// non-Azumaya control: its enveloping map is far from invertible).
pub fn diagonal_algebra(ring: &Ring, m: usize) -> StructureAlgebra {
    let zero = vec![ring.zero(); m];
    let mut sc = vec![vec![zero.clone(); m]; m];
    for (i, plane) in sc.iter_mut().enumerate() {
        plane[i][i] = ring.one();
    }
    StructureAlgebra::new(ring.clone(), sc, vec![ring.one(); m])
        .expect("componentwise product is associative")
}

/// Opposite algebra: same module, reversed multiplication.
pub fn opposite(a: &StructureAlgebra) -> StructureAlgebra {
    let rank = a.rank();
    let sc = (0..rank)
        .map(|i| (0..rank).map(|j| a.sc[j][i].clone()).collect())
        .collect();
    StructureAlgebra::new(a.ring.clone(), sc, a.unit.clone())
        .expect("opposite of an algebra is an algebra")
}

/// Tensor product over the base ring, basis ordered lexicographically.
pub fn tensor(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    if a.ring != b.ring {
        return Err(Error::AlgebraMismatch(format!(
            "tensor factors live over {} and {}",
            a.ring, b.ring
        )));
    }
    let (ma, mb) = (a.rank(), b.rank());
    let rank = ma * mb;
    let ring = &a.ring;
    let outer = |va: &[Elem], vb: &[Elem]| {
        let mut v = vec![ring.zero(); rank];
        for (s, xs) in va.iter().enumerate() {
            if ring.is_zero(xs) {
                continue;
            }
            for (t, yt) in vb.iter().enumerate() {
                v[s * mb + t] = ring.mul(xs, yt);
            }
        }
        v
    };
    let mut sc = vec![vec![Vec::new(); rank]; rank];
    for i in 0..ma {
        for j in 0..mb {
            for k in 0..ma {
                for l in 0..mb {
                    sc[i * mb + j][k * mb + l] = outer(&a.sc[i][k], &b.sc[j][l]);
                }
            }
        }
    }
    StructureAlgebra::new(ring.clone(), sc, outer(&a.unit, &b.unit))
}

// ---------------------------------------------------------------------------
// algebra maps
// ---------------------------------------------------------------------------

/// A linear map between algebras, given by its matrix on coordinates
/// (`target.rank` x `source.rank`). The homomorphism property is checked at
/// construction and recorded in [`AlgebraMap::hom_verified`]; non-maps are
/// still representable, with the flag false.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    source: Arc<StructureAlgebra>,
    target: Arc<StructureAlgebra>,
    matrix: Matrix,
    hom_verified: bool,
}

impl AlgebraMap {
    pub fn new(
        source: Arc<StructureAlgebra>,
        target: Arc<StructureAlgebra>,
        matrix: Matrix,
    ) -> Result<AlgebraMap> {
        if source.ring != target.ring {
            return Err(Error::AlgebraMismatch(format!(
                "map between algebras over {} and {}",
                source.ring, target.ring
            )));
        }
        if matrix.rows != target.rank() || matrix.cols != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, need {}x{}",
                matrix.rows,
                matrix.cols,
                target.rank(),
                source.rank()
            )));
        }
        let mut map = AlgebraMap {
            source,
            target,
            matrix,
            hom_verified: false,
        };
        map.hom_verified = map.check_hom();
        Ok(map)
    }

    /// `f(1) = 1` and `f(b_i b_j) = f(b_i) f(b_j)` on all basis pairs.
    fn check_hom(&self) -> bool {
        if self.apply(&self.source.unit) != self.target.unit {
            return false;
        }
        let images: Vec<Vec<Elem>> = (0..self.source.rank())
            .map(|i| self.matrix.col(i))
            .collect();
        for i in 0..self.source.rank() {
            for j in 0..self.source.rank() {
                let lhs = self.apply(&self.source.sc[i][j]);
                let rhs = self.target.mul_vec(&images[i], &images[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn source(&self) -> &Arc<StructureAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StructureAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn hom_verified(&self) -> bool {
        self.hom_verified
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.matrix.matvec(self.source.ring(), x)
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.rows == self.matrix.cols
            && linalg::invert(self.source.ring(), &self.matrix).is_ok()
    }

    /// Inverse map; the hom property of the inverse is re-verified.
    pub fn inverse(&self) -> Result<AlgebraMap> {
        let inv = linalg::invert(self.source.ring(), &self.matrix)?;
        AlgebraMap::new(self.target.clone(), self.source.clone(), inv)
    }
}

/// Re-coordinatize `a` along an invertible matrix `p` whose columns are the
/// coordinates of the new basis. Returns the isomorphism from the new
/// algebra to `a`, whose matrix is `p` itself.
pub fn change_basis(a: &Arc<StructureAlgebra>, p: &Matrix) -> Result<AlgebraMap> {
    let ring = a.ring();
    if p.rows != a.rank() || p.cols != a.rank() {
        return Err(Error::DimensionMismatch(format!(
            "basis matrix is {}x{}, need {}x{}",
            p.rows,
            p.cols,
            a.rank(),
            a.rank()
        )));
    }
    let p_inv = linalg::invert(ring, p)?;
    let rank = a.rank();
    let new_basis: Vec<Vec<Elem>> = (0..rank).map(|i| p.col(i)).collect();
    let sc = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let prod = a.mul_vec(&new_basis[i], &new_basis[j]);
                    p_inv.matvec(ring, &prod)
                })
                .collect()
        })
        .collect();
    let unit = p_inv.matvec(ring, &a.unit);
    let fresh = StructureAlgebra::new(ring.clone(), sc, unit)?;
    let map = AlgebraMap::new(Arc::new(fresh), a.clone(), p.clone())?;
    debug_assert!(map.hom_verified());
    Ok(map)
}

// ---------------------------------------------------------------------------
// the enveloping map and the Azumaya test
// ---------------------------------------------------------------------------

/// Matrix of `A (x) A^op -> End(A)`, `a (x) b |-> (c |-> a c b)`, in the
/// lexicographic basis `b_i (x) b_j` (column `i*rank + j`) and the
/// elementary-endomorphism basis of `End(A)` (row-major flattening).
pub fn enveloping_matrix(a: &StructureAlgebra) -> Matrix {
    let m = a.rank();
    let ring = a.ring();
    let mults: Vec<(Matrix, Matrix)> = (0..m).map(|i| a.mult_matrices(&a.basis_vec(i))).collect();
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(m * m);
    for (li, _) in &mults {
        for (_, rj) in &mults {
            cols.push(li.mul(ring, rj).to_vec_row_major());
        }
    }
    Matrix::from_cols(m * m, &cols)
}

/// Outcome of [`azumaya_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AzumayaReport {
    pub is_azumaya: bool,
    /// With `rank = (n+1)^2`, the degree `n` of the associated projective
    /// space; present exactly when the check passes.
    pub n: Option<usize>,
    pub reason: Option<String>,
}

/// An algebra is Azumaya of degree `n` here iff its rank is `(n+1)^2` and
/// the enveloping matrix is invertible.
pub fn azumaya_check(a: &StructureAlgebra) -> AzumayaReport {
    let m = a.rank();
    let root = (m as f64).sqrt().round() as usize;
    if root * root != m || root == 0 {
        return AzumayaReport {
            is_azumaya: false,
            n: None,
            reason: Some(format!("rank {m} is not a perfect square")),
        };
    }
    match linalg::invert(a.ring(), &enveloping_matrix(a)) {
        Ok(_) => AzumayaReport {
            is_azumaya: true,
            n: Some(root - 1),
            reason: None,
        },
        Err(_) => AzumayaReport {
            is_azumaya: false,
            n: None,
            reason: Some("enveloping matrix is not invertible".into()),
        },
    }
}

// ---------------------------------------------------------------------------
// quaternion isomorphisms
// ---------------------------------------------------------------------------

/// The splitting isomorphism `Q(1, b) -> M_2` determined by
/// `i |-> [[1,0],[0,-1]]`, `j |-> [[0,b],[1,0]]`, `ij |-> [[0,b],[-1,0]]`.
pub fn quaternion_split_iso(ring: &Ring, b: &Elem) -> Result<AlgebraMap> {
    let source = Arc::new(quaternion_algebra(ring, &ring.one(), b)?);
    let target = Arc::new(matrix_algebra(ring, 2));
    let one = ring.one();
    let neg = |x: &Elem| ring.neg(x);
    let cols: Vec<Vec<Elem>> = vec![
        vec![one.clone(), ring.zero(), ring.zero(), one.clone()],
        vec![one.clone(), ring.zero(), ring.zero(), neg(&one)],
        vec![ring.zero(), b.clone(), one.clone(), ring.zero()],
        vec![ring.zero(), b.clone(), neg(&one), ring.zero()],
    ];
    let map = AlgebraMap::new(source, target, Matrix::from_cols(4, &cols))?;
    if !map.hom_verified() {
        return Err(Error::NotFaithful("split images fail the hom check".into()));
    }
    if !map.is_bijective() {
        return Err(Error::NotInvertible);
    }
    Ok(map)
}

/// The rescaling isomorphism `Q(u^2 a, v^2 b) -> Q(a, b)`:
/// `i |-> u i`, `j |-> v j`, `ij |-> uv ij`. Requires units `u`, `v`.
pub fn quaternion_rescale_iso(
    ring: &Ring,
    a: &Elem,
    b: &Elem,
    u: &Elem,
    v: &Elem,
) -> Result<AlgebraMap> {
    for x in [u, v] {
        if !ring.is_unit(x) {
            return Err(Error::NotUnit(ring.format_elem(x)));
        }
    }
    let u2a = ring.mul(&ring.mul(u, u), a);
    let v2b = ring.mul(&ring.mul(v, v), b);
    let source = Arc::new(quaternion_algebra(ring, &u2a, &v2b)?);
    let target = Arc::new(quaternion_algebra(ring, a, b)?);
    let mut matrix = Matrix::zeros(ring, 4, 4);
    matrix[(0, 0)] = ring.one();
    matrix[(1, 1)] = u.clone();
    matrix[(2, 2)] = v.clone();
    matrix[(3, 3)] = ring.mul(u, v);
    let map = AlgebraMap::new(source, target, matrix)?;
    debug_assert!(map.hom_verified());
    Ok(map)
}

/// The swap isomorphism `Q(a, b) -> Q(b, a)`: `i <-> j`, `ij |-> -ij`.
pub fn quaternion_swap_iso(ring: &Ring, a: &Elem, b: &Elem) -> Result<AlgebraMap> {
    let source = Arc::new(quaternion_algebra(ring, a, b)?);
    let target = Arc::new(quaternion_algebra(ring, b, a)?);
    let mut matrix = Matrix::zeros(ring, 4, 4);
    matrix[(0, 0)] = ring.one();
    matrix[(2, 1)] = ring.one(); // i |-> j
    matrix[(1, 2)] = ring.one(); // j |-> i
    matrix[(3, 3)] = ring.from_i64(-1); // ij |-> -ij
    let map = AlgebraMap::new(source, target, matrix)?;
    debug_assert!(map.hom_verified());
    Ok(map)
}

// ---------------------------------------------------------------------------
