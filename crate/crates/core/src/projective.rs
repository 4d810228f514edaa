//! Projective points, echelon-normalized subspaces, and right ideals.
//!
//! A [`ProjPoint`] stores the unique representative whose first unit
//! coordinate is 1, so `==` is projective equality. A [`Subspace`] stores
//! the canonical reduced column echelon basis of a free direct summand
//! (unit pivots mandatory), so `==` is equality of spans. Enumerations
//! follow fixed orders (documented on each function) to keep every "first
//! witness" downstream reproducible.

use std::sync::Arc;

use crate::algebras::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rings::{Elem, Ring, ENUMERATION_CAP};

/// A point of `P^n`, with coordinates scaled so the first unit entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    /// Normalize a coordinate vector. Errors with
    /// [`Error::NoUnitCoordinate`] when no entry is a unit (for fields:
    /// when all entries are zero).
    pub fn normalize(ring: &Ring, coords: Vec<Elem>) -> Result<ProjPoint> {
        assert!(!coords.is_empty(), "projective point needs coordinates");
        let pivot = coords.iter().position(|c| ring.is_unit(c)).ok_or_else(|| {
            let shown: Vec<String> = coords.iter().map(|c| ring.format_elem(c)).collect();
            Error::NoUnitCoordinate(format!("({})", shown.join(":")))
        })?;
        let scale = ring.unit_inverse(&coords[pivot]).unwrap();
        Ok(ProjPoint {
            coords: coords.iter().map(|c| ring.mul(&scale, c)).collect(),
        })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Dimension `n` of the ambient `P^n`.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the leading unit coordinate (which equals 1).
    pub fn pivot_index(&self, ring: &Ring) -> usize {
        self.coords.iter().position(|c| ring.is_unit(c)).unwrap()
    }
}

/// Every point of `P^n` over a finite local ring, exactly once.
///
/// Order: points with leading unit at coordinate `k` come in ascending `k`;
/// within a block the non-pivot coordinates run through the ring's canonical
/// element order as an odometer with the last coordinate fastest.
pub fn enumerate_points(ring: &Ring, n: usize) -> Result<Vec<ProjPoint>> {
    let elems = ring.elements()?;
    let nonunits: Vec<Elem> = elems.iter().filter(|x| !ring.is_unit(x)).cloned().collect();
    let (q, nu) = (elems.len() as u128, nonunits.len() as u128);
    let mut count: u128 = 0;
    for k in 0..=n {
        let block = nu
            .checked_pow(k as u32)
            .and_then(|h| h.checked_mul(q.pow((n - k) as u32)))
            .ok_or_else(|| Error::TooLarge("projective point count overflows".into()))?;
        count += block;
    }
    if count > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("P^{n} has {count} points")));
    }

    let mut out = Vec::with_capacity(count as usize);
    for k in 0..=n {
        // coords[0..k] non-units, coords[k] = 1, coords[k+1..] arbitrary.
        let pools: Vec<&[Elem]> = (0..=n)
            .map(|i| {
                if i < k {
                    &nonunits[..]
                } else if i == k {
                    std::slice::from_ref(&elems[0]) // placeholder, overwritten
                } else {
                    &elems[..]
                }
            })
            .collect();
        let mut idx = vec![0usize; n + 1];
        loop {
            let mut coords: Vec<Elem> = (0..=n).map(|i| pools[i][idx[i]].clone()).collect();
            coords[k] = ring.one();
            out.push(ProjPoint { coords });
            // Odometer, last coordinate fastest; position k is pinned.
            let mut i = n + 1;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if i == k {
                    continue;
                }
                idx[i] += 1;
                if idx[i] < pools[i].len() {
                    break;
                }
                idx[i] = 0;
            }
            if idx.iter().enumerate().all(|(i, &x)| i == k || x == 0) {
                break;
            }
        }
    }
    debug_assert_eq!(out.len(), count as usize);
    Ok(out)
}

/// Apply an invertible matrix to a point. Errors: [`Error::NotInvertible`].
pub fn pgl_apply(ring: &Ring, p: &Matrix, x: &ProjPoint) -> Result<ProjPoint> {
    assert_eq!(p.cols, x.coords.len(), "matrix size does not match point");
    linalg::invert(ring, p)?;
    ProjPoint::normalize(ring, p.matvec(ring, x.coords()))
}

/// Scale a matrix so its first unit entry (row-major) becomes 1: the
/// canonical representative of its class in PGL.
pub fn pgl_normalize(ring: &Ring, p: &Matrix) -> Result<Matrix> {
    for i in 0..p.rows {
        for j in 0..p.cols {
            if ring.is_unit(&p[(i, j)]) {
                let scale = ring.unit_inverse(&p[(i, j)]).unwrap();
                return Ok(p.scale(ring, &scale));
            }
        }
    }
    Err(Error::NoUnitCoordinate("matrix has no unit entry".into()))
}

// ---------------------------------------------------------------------------
// subspaces
// ---------------------------------------------------------------------------

/// A free direct summand of `R^ambient` in canonical echelon coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    /// `ambient x dim`, reduced column echelon, every pivot 1.
    basis: Matrix,
    /// Pivot rows of the basis columns, strictly increasing.
    pivot_rows: Vec<usize>,
}

impl Subspace {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The chart of the canonical basis: its pivot row set.
    pub fn chart(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn contains(&self, ring: &Ring, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        linalg::solve_linear(ring, &self.basis, v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, if it lies in the span.
    pub fn coordinates(&self, ring: &Ring, v: &[Elem]) -> Option<Vec<Elem>> {
        linalg::solve_linear(ring, &self.basis, v)
    }
}

/// Canonicalize the span of the given vectors inside `R^ambient`.
///
/// Errors: [`Error::NotFreeOverLocalRing`] when the echelon form needs a
/// non-unit pivot (possible only over `Z/p^k`).
pub fn subspace_from_span(ring: &Ring, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
    assert!(
        vectors.iter().all(|v| v.len() == ambient),
        "vector length mismatch"
    );
    if vectors.is_empty() {
        return Ok(Subspace {
            ambient,
            dim: 0,
            basis: Matrix::zeros(ring, ambient, 0),
            pivot_rows: Vec::new(),
        });
    }
    let ech = linalg::reduced_echelon(ring, &Matrix::from_cols(ambient, vectors));
    if ech.has_nonunit_pivot() {
        return Err(Error::NotFreeOverLocalRing);
    }
    let dim = ech.pivots.len();
    let basis = Matrix::from_cols(ambient, &(0..dim).map(|j| ech.e.col(j)).collect::<Vec<_>>());
    Ok(Subspace {
        ambient,
        dim,
        basis,
        pivot_rows: ech.unit_pivot_rows(),
    })
}

/// Number of `k`-dimensional subspaces of `F_q^n` (Gaussian binomial),
/// summed chart by chart; `None` on overflow.
fn subspace_count(q: u128, n: usize, k: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut combo: Vec<usize> = (0..k).collect();
    if k > n {
        return Some(0);
    }
    loop {
        let free = free_positions(n, &combo).len() as u32;
        total = total.checked_add(q.checked_pow(free)?)?;
        if !next_combination(&mut combo, n) {
            return Some(total);
        }
    }
}

/// Free entry positions `(row, col)` of the echelon chart with the given
/// pivot rows: in column `j`, the rows after `pivot[j]` that are not pivots.
fn free_positions(ambient: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, &rj) in pivots.iter().enumerate() {
        for r in rj + 1..ambient {
            if !pivots.contains(&r) {
                out.push((r, j));
            }
        }
    }
    out
}

/// Advance a sorted `k`-combination of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `k`-dimensional subspace of `F_q^ambient`, exactly once, as
/// canonical echelon bases.
///
/// Order: charts (pivot-row sets) in lexicographic order; within a chart the
/// free entries run through the element order as an odometer, last free
/// position fastest. Errors: [`Error::InfiniteRing`] over `QQ`,
/// [`Error::Unsupported`] over `Z/p^k` with `k > 1`, [`Error::TooLarge`]
/// past the cap.
pub fn enumerate_subspaces(ring: &Ring, ambient: usize, k: usize) -> Result<Vec<Subspace>> {
    if !ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    if !ring.is_field() {
        return Err(Error::Unsupported(
            "subspace enumeration needs a finite field".into(),
        ));
    }
    let elems = ring.elements()?;
    let q = elems.len() as u128;
    let count = subspace_count(q, ambient, k)
        .filter(|&c| c <= ENUMERATION_CAP)
        .ok_or_else(|| Error::TooLarge(format!("too many {k}-subspaces of R^{ambient}")))?;
    if count > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!(
            "{count} subspaces exceed the cap of {ENUMERATION_CAP}"
        )));
    }

    let mut out = Vec::with_capacity(count as usize);
    if k > ambient {
        return Ok(out);
    }
    if k == 0 {
        out.push(subspace_from_span(ring, ambient, &[])?);
        return Ok(out);
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let free = free_positions(ambient, &combo);
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut basis = Matrix::zeros(ring, ambient, k);
            for (j, &rj) in combo.iter().enumerate() {
                basis[(rj, j)] = ring.one();
            }
            for (pos, &(r, c)) in free.iter().enumerate() {
                basis[(r, c)] = elems[idx[pos]].clone();
            }
            out.push(Subspace {
                ambient,
                dim: k,
                basis,
                pivot_rows: combo.clone(),
            });
            let mut i = free.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < elems.len() {
                    break;
                }
                idx[i] = 0;
            }
            if idx.iter().all(|&x| x == 0) {
                break;
            }
        }
        if !next_combination(&mut combo, ambient) {
            break;
        }
    }
    debug_assert_eq!(out.len(), count as usize);
    Ok(out)
}

// ---------------------------------------------------------------------------
// right ideals
// ---------------------------------------------------------------------------

/// A subspace of an algebra's underlying module, together with the record
/// that closure under right multiplication has been verified.
#[derive(Debug, Clone)]
pub struct RightIdealRep {
    algebra: Arc<StructureAlgebra>,
    space: Subspace,
    verified: bool,
}

impl RightIdealRep {
    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn verified(&self) -> bool {
        self.verified
    }
}

/// Verify that `space` is closed under right multiplication by every basis
/// element of `algebra`. On failure the error names the violating pair
/// (basis column index of the space, basis index of the algebra).
pub fn right_ideal_check(
    algebra: &Arc<StructureAlgebra>,
    space: Subspace,
) -> Result<RightIdealRep> {
    let ring = algebra.ring();
    if space.ambient() != algebra.rank() {
        return Err(Error::DimensionMismatch(format!(
            "subspace of R^{} inside an algebra of rank {}",
            space.ambient(),
            algebra.rank()
        )));
    }
    for s in 0..space.dim() {
        let iota = space.basis().col(s);
        for t in 0..algebra.rank() {
            let prod = algebra.mul_vec(&iota, &algebra.basis_vec(t));
            if !space.contains(ring, &prod) {
                return Err(Error::NotRightIdeal(format!(
                    "basis column {s} times algebra basis element {t} leaves the span"
                )));
            }
        }
    }
    Ok(RightIdealRep {
        algebra: algebra.clone(),
        space,
        verified: true,
    })
}

/// Canonicalize a span and run [`right_ideal_check`] in one step.
pub fn right_ideal_from_span(
    algebra: &Arc<StructureAlgebra>,
    vectors: &[Vec<Elem>],
) -> Result<RightIdealRep> {
    let space = subspace_from_span(algebra.ring(), algebra.rank(), vectors)?;
    right_ideal_check(algebra, space)
}

// ---------------------------------------------------------------------------
