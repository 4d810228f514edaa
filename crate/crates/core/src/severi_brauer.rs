//! The correspondence between points of `P^n` and rank-`(n+1)` right ideals
//! of `M_{n+1}`, its conjugation equivariance, and the machinery that
//! transports it along a splitting: recovering a conjugator from matrix
//! units, presenting automorphisms as PGL classes, splitting an Azumaya
//! algebra along a right ideal, and reading a projective point off an ideal.

use std::sync::Arc;

use crate::algebras::{azumaya_check, matrix_algebra, AlgebraMap, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::projective::{
    enumerate_points, pgl_normalize, right_ideal_check, right_ideal_from_span, subspace_from_span,
    ProjPoint, RightIdealRep, Subspace,
};
use crate::rings::{Elem, Ring};

fn exact_sqrt(m: usize) -> Option<usize> {
    let r = (m as f64).sqrt().round() as usize;
    (r * r == m && r > 0).then_some(r)
}

/// The rank-`(n+1)` right ideal of `M_{n+1}` attached to a point of `P^n`:
/// the matrices whose columns are multiples of the point. Basis vector `t`
/// is the outer product of the point with the `t`-th standard unit vector.
pub fn delta(ring: &Ring, x: &ProjPoint) -> Result<RightIdealRep> {
    let m = x.n() + 1;
    let alg = Arc::new(matrix_algebra(ring, m));
    let mut vectors = Vec::with_capacity(m);
    for t in 0..m {
        let mut v = vec![ring.zero(); m * m];
        for (i, xi) in x.coords().iter().enumerate() {
            v[i * m + t] = xi.clone();
        }
        vectors.push(v);
    }
    right_ideal_from_span(&alg, &vectors)
}

/// Inverse of [`delta`] on subspaces of `M_{n+1}`. The candidate point is
/// the first column with a unit entry of the first basis matrix; the result
/// is accepted only if its ideal reproduces the input span exactly.
///
/// Errors: [`Error::DimensionMismatch`] when the ambient is not a square,
/// [`Error::NotInDeltaImage`] otherwise.
pub fn delta_inv(ring: &Ring, space: &Subspace) -> Result<ProjPoint> {
    let m = exact_sqrt(space.ambient()).ok_or_else(|| {
        Error::DimensionMismatch(format!(
            "ambient dimension {} is not a square",
            space.ambient()
        ))
    })?;
    if space.dim() != m {
        return Err(Error::NotInDeltaImage(format!(
            "subspace has rank {}, point ideals have rank {m}",
            space.dim()
        )));
    }
    let b0 = Matrix::from_vec_row_major(m, space.basis().col(0));
    let col = (0..m)
        .find(|&c| (0..m).any(|r| ring.is_unit(&b0[(r, c)])))
        .ok_or_else(|| {
            Error::NotInDeltaImage("first basis matrix has no unimodular column".into())
        })?;
    let x = ProjPoint::normalize(ring, b0.col(col))?;
    if delta(ring, &x)?.space() != space {
        return Err(Error::NotInDeltaImage(
            "subspace is not the ideal of any point".into(),
        ));
    }
    Ok(x)
}

/// Conjugate a right ideal of a matrix algebra by an invertible matrix:
/// each basis matrix `M` becomes `P M P^-1`. Errors:
/// [`Error::NotInvertible`].
pub fn conjugate_ideal(p: &Matrix, ideal: &RightIdealRep) -> Result<RightIdealRep> {
    let alg = ideal.algebra().clone();
    let ring = alg.ring();
    assert_eq!(p.rows, p.cols, "conjugator must be square");
    let m = p.rows;
    if m * m != alg.rank() {
        return Err(Error::DimensionMismatch(format!(
            "{m}x{m} conjugator against an algebra of rank {}",
            alg.rank()
        )));
    }
    let pinv = linalg::invert(ring, p)?;
    let vectors: Vec<Vec<Elem>> = (0..ideal.space().dim())
        .map(|t| {
            let mt = Matrix::from_vec_row_major(m, ideal.space().basis().col(t));
            p.mul(ring, &mt).mul(ring, &pinv).to_vec_row_major()
        })
        .collect();
    right_ideal_from_span(&alg, &vectors)
}

/// Recover `P` with `P E_ij P^-1 = units[i*m + j]` from a complete family
/// of matrix units, unique up to a unit scalar.
///
/// The family must satisfy `e_ij e_kl = [j=k] e_il` and have diagonal sum 1
/// ([`Error::BadRelations`] otherwise). The first column of `P` spans the
/// image of `e_00`; column `i` is `e_i0` applied to it.
pub fn matrix_units_conjugator(ring: &Ring, units: &[Matrix]) -> Result<Matrix> {
    let m = exact_sqrt(units.len()).ok_or_else(|| {
        Error::DimensionMismatch(format!(
            "{} matrices do not form a square family",
            units.len()
        ))
    })?;
    for u in units {
        assert_eq!((u.rows, u.cols), (m, m), "matrix units must be {m}x{m}");
    }
    let at = |i: usize, j: usize| &units[i * m + j];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let prod = at(i, j).mul(ring, at(k, l));
                    let want = if j == k {
                        at(i, l).clone()
                    } else {
                        Matrix::zeros(ring, m, m)
                    };
                    if prod != want {
                        return Err(Error::BadRelations(format!(
                            "e[{i}{j}] e[{k}{l}] breaks the unit relations"
                        )));
                    }
                }
            }
        }
    }
    let mut diag_sum = Matrix::zeros(ring, m, m);
    for i in 0..m {
        diag_sum = diag_sum.add(ring, at(i, i));
    }
    if diag_sum != Matrix::identity(ring, m) {
        return Err(Error::BadRelations(
            "diagonal units do not sum to the identity".into(),
        ));
    }

    let image = linalg::idempotent_image_basis(ring, at(0, 0))?;
    if image.cols != 1 {
        return Err(Error::BadRelations(format!(
            "e[00] has image of rank {}, want 1",
            image.cols
        )));
    }
    let v0 = image.col(0);
    let cols: Vec<Vec<Elem>> = (0..m).map(|i| at(i, 0).matvec(ring, &v0)).collect();
    let p = Matrix::from_cols(m, &cols);
    let pinv = linalg::invert(ring, &p)?;
    for i in 0..m {
        for j in 0..m {
            let mut e = Matrix::zeros(ring, m, m);
            e[(i, j)] = ring.one();
            if &p.mul(ring, &e).mul(ring, &pinv) != at(i, j) {
                return Err(Error::BadRelations(format!(
                    "recovered conjugator fails on e[{i}{j}]"
                )));
            }
        }
    }
    Ok(p)
}

/// The conjugation automorphism `a -> P a P^-1` of a matrix algebra in its
/// standard coordinates. Errors: [`Error::NotInvertible`],
/// [`Error::NotAutomorphism`] when conjugation is not multiplicative on the
/// given algebra (it is not the standard matrix algebra).
pub fn inner_automorphism(algebra: &Arc<StructureAlgebra>, p: &Matrix) -> Result<AlgebraMap> {
    let ring = algebra.ring().clone();
    assert_eq!(p.rows, p.cols, "conjugator must be square");
    let m = p.rows;
    if m * m != algebra.rank() {
        return Err(Error::DimensionMismatch(format!(
            "{m}x{m} conjugator against an algebra of rank {}",
            algebra.rank()
        )));
    }
    let pinv = linalg::invert(&ring, p)?;
    let cols: Vec<Vec<Elem>> = (0..algebra.rank())
        .map(|s| {
            let e = Matrix::from_vec_row_major(m, algebra.basis_vec(s));
            p.mul(&ring, &e).mul(&ring, &pinv).to_vec_row_major()
        })
        .collect();
    let map = AlgebraMap::new(
        algebra.clone(),
        algebra.clone(),
        Matrix::from_cols(m * m, &cols),
    )?;
    if !map.hom_verified() {
        return Err(Error::NotAutomorphism(
            "conjugation is not multiplicative in these coordinates".into(),
        ));
    }
    Ok(map)
}

/// The PGL class of an automorphism of the standard matrix algebra: the
/// conjugator recovered from the images of the elementary matrices, scaled
/// so its first unit entry (row-major) is 1.
///
/// Errors: [`Error::NotAutomorphism`] unless the map is a verified
/// bijective endomorphism, [`Error::BadRelations`] when the images fail the
/// matrix-unit relations (the source is not the standard matrix algebra).
pub fn automorphism_to_pgl(map: &AlgebraMap) -> Result<Matrix> {
    if map.source() != map.target() {
        return Err(Error::NotAutomorphism("source and target differ".into()));
    }
    if !map.hom_verified() {
        return Err(Error::NotAutomorphism(
            "the map is not a verified homomorphism".into(),
        ));
    }
    if !map.is_bijective() {
        return Err(Error::NotAutomorphism("the map is not bijective".into()));
    }
    let ring = map.source().ring();
    let m = exact_sqrt(map.source().rank()).ok_or_else(|| {
        Error::DimensionMismatch(format!(
            "algebra rank {} is not a square",
            map.source().rank()
        ))
    })?;
    let units: Vec<Matrix> = (0..m * m)
        .map(|s| Matrix::from_vec_row_major(m, map.apply(&map.source().basis_vec(s))))
        .collect();
    let p = matrix_units_conjugator(ring, &units)?;
    pgl_normalize(ring, &p)
}

/// Split an Azumaya algebra of rank `(n+1)^2` along a verified rank-`(n+1)`
/// right ideal: the isomorphism to `M_{n+1}` sending `a` to the transpose
/// of the matrix of `c -> c a` on the ideal's canonical basis.
///
/// Errors: [`Error::NotAzumaya`], [`Error::WrongIdealRank`],
/// [`Error::NotFaithful`] when the representation is not bijective.
pub fn split_by_ideal(ideal: &RightIdealRep) -> Result<AlgebraMap> {
    let alg = ideal.algebra().clone();
    let ring = alg.ring();
    let report = azumaya_check(&alg);
    let n = report
        .n
        .ok_or_else(|| Error::NotAzumaya(report.reason.clone().unwrap_or_default()))?;
    let m = n + 1;
    if ideal.space().dim() != m {
        return Err(Error::WrongIdealRank {
            got: ideal.space().dim(),
            want: m,
        });
    }
    let mut cols = Vec::with_capacity(alg.rank());
    for s in 0..alg.rank() {
        // phi(b_s)[t][u] = coefficient of iota_u in iota_t * b_s, which is
        // the transpose of the right-multiplication matrix on the ideal.
        let mut phi = Matrix::zeros(ring, m, m);
        for t in 0..m {
            let prod = alg.mul_vec(&ideal.space().basis().col(t), &alg.basis_vec(s));
            let coords = ideal.space().coordinates(ring, &prod).ok_or_else(|| {
                Error::NotRightIdeal(format!(
                    "ideal basis column {t} times algebra basis element {s} leaves the span"
                ))
            })?;
            for (u, c) in coords.into_iter().enumerate() {
                phi[(t, u)] = c;
            }
        }
        cols.push(phi.to_vec_row_major());
    }
    let matrix = Matrix::from_cols(m * m, &cols);
    if linalg::invert(ring, &matrix).is_err() {
        return Err(Error::NotFaithful(
            "the ideal representation is not bijective".into(),
        ));
    }
    let target = Arc::new(matrix_algebra(ring, m));
    let map = AlgebraMap::new(alg, target, matrix)?;
    if !map.hom_verified() {
        return Err(Error::NotFaithful(
            "the ideal representation fails the hom check".into(),
        ));
    }
    Ok(map)
}

/// The point of `P^n` attached to a rank-`(n+1)` right ideal through a
/// splitting isomorphism: push the ideal forward, re-check closure, and
/// invert [`delta`].
///
/// Errors: [`Error::AlgebraMismatch`] when the ideal does not live in the
/// split map's source, [`Error::NotInDeltaImage`] when the image span is
/// not a point ideal.
pub fn chatelet_point_map(split: &AlgebraMap, ideal: &RightIdealRep) -> Result<ProjPoint> {
    if split.source() != ideal.algebra() {
        return Err(Error::AlgebraMismatch(
            "the ideal does not live in the split map's source".into(),
        ));
    }
    let ring = split.source().ring();
    let ambient = split.target().rank();
    let vectors: Vec<Vec<Elem>> = (0..ideal.space().dim())
        .map(|t| split.apply(&ideal.space().basis().col(t)))
        .collect();
    let space = subspace_from_span(ring, ambient, &vectors)?;
    let rep = right_ideal_check(split.target(), space).map_err(|e| match e {
        Error::NotRightIdeal(d) => {
            Error::NotInDeltaImage(format!("pushforward is not a right ideal: {d}"))
        }
        other => other,
    })?;
    delta_inv(ring, rep.space())
}

/// Search for a rank-`(n+1)` right ideal generated by a single element,
/// where the algebra has rank `(n+1)^2`. Returns the first generator hit,
/// or `None` when the search space is exhausted (which over `QQ` means
/// "none within the bound", not "none exists").
///
/// Over a finite ring the candidates are the points of `P(A)` in
/// enumeration order. Over `QQ` they are the primitive integer coordinate
/// vectors (gcd 1, first nonzero entry positive) with all entries of
/// absolute value at most `bound`, ordered by height and then
/// lexicographically.
pub fn find_right_ideal(
    algebra: &Arc<StructureAlgebra>,
    bound: u64,
) -> Result<Option<RightIdealRep>> {
    let ring = algebra.ring().clone();
    let rank = algebra.rank();
    let m = exact_sqrt(rank)
        .ok_or_else(|| Error::DimensionMismatch(format!("algebra rank {rank} is not a square")))?;
    let try_generator = |a: &[Elem]| -> Result<Option<RightIdealRep>> {
        let prods: Vec<Vec<Elem>> = (0..rank)
            .map(|t| algebra.mul_vec(a, &algebra.basis_vec(t)))
            .collect();
        let space = match subspace_from_span(&ring, rank, &prods) {
            Ok(s) => s,
            Err(Error::NotFreeOverLocalRing) => return Ok(None),
            Err(e) => return Err(e),
        };
        if space.dim() != m {
            return Ok(None);
        }
        Ok(Some(right_ideal_check(algebra, space)?))
    };

    if ring.is_finite() {
        for x in enumerate_points(&ring, rank - 1)? {
            if let Some(rep) = try_generator(x.coords())? {
                return Ok(Some(rep));
            }
        }
        return Ok(None);
    }

    // QQ: primitive integer vectors by height, lexicographic within height.
    // Almost all candidates are rejected on rank alone, so a fraction-free
    // integer rank check screens them before any big-rational work; it
    // falls back to the exact path whenever i128 arithmetic would overflow.
    let fast = integer_sc_table(algebra);
    for h in 1..=bound as i64 {
        let mut c = vec![-h; rank];
        loop {
            let admissible = c.iter().any(|&x| x.abs() == h)
                && c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
                && c.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1;
            let plausible = admissible
                && fast
                    .as_ref()
                    .and_then(|tbl| integer_span_rank(tbl, &c))
                    .is_none_or(|r| r == m);
            if plausible {
                let a: Vec<Elem> = c.iter().map(|&x| ring.from_i64(x)).collect();
                if let Some(rep) = try_generator(&a)? {
                    return Ok(Some(rep));
                }
            }
            let mut i = rank;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                c[i] += 1;
                if c[i] <= h {
                    break;
                }
                c[i] = -h;
            }
            if c.iter().all(|&x| x == -h) {
                break;
            }
        }
    }
    Ok(None)
}

/// Structure constants over `QQ`, scaled by the global denominator lcm into
/// `i128`. Scaling the whole table scales every product uniformly, so the
/// span ranks computed from it are the true ones. `None` when anything
/// overflows.
fn integer_sc_table(algebra: &StructureAlgebra) -> Option<Vec<Vec<Vec<i128>>>> {
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive};
    let rank = algebra.rank();
    let as_rat = |e: &Elem| match e {
        Elem::Rat(r) => Some(r.clone()),
        _ => None,
    };
    let mut lcm = BigInt::one();
    for i in 0..rank {
        for j in 0..rank {
            for e in algebra.sc(i, j) {
                lcm = num_integer::lcm(lcm, as_rat(e)?.denom().clone());
            }
        }
    }
    let mut table = vec![vec![vec![0i128; rank]; rank]; rank];
    for (i, plane) in table.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (u, e) in algebra.sc(i, j).iter().enumerate() {
                let r = as_rat(e)?;
                row[u] = (r.numer() * (&lcm / r.denom())).to_i128()?;
            }
        }
    }
    Some(table)
}

/// Rank of the span of `c * b_t` for all `t`, over the integers, by
/// one-step fraction-free elimination. `None` on i128 overflow.
fn integer_span_rank(sc: &[Vec<Vec<i128>>], c: &[i64]) -> Option<usize> {
    let rank = sc.len();
    let mut rows = vec![vec![0i128; rank]; rank];
    for (t, row) in rows.iter_mut().enumerate() {
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (u, cell) in row.iter_mut().enumerate() {
                *cell = cell.checked_add((ci as i128).checked_mul(sc[i][t][u])?)?;
            }
        }
    }
    let mut found = 0usize;
    let mut prev = 1i128;
    for col in 0..rank {
        let Some(p) = (found..rank).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(found, p);
        for r in found + 1..rank {
            for c2 in col + 1..rank {
                let a = rows[found][col].checked_mul(rows[r][c2])?;
                let b = rows[r][col].checked_mul(rows[found][c2])?;
                rows[r][c2] = a.checked_sub(b)? / prev;
            }
            rows[r][col] = 0;
        }
        prev = rows[found][col];
        found += 1;
        if found == rank {
            break;
        }
    }
    Some(found)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{diagonal_algebra, quaternion_algebra};
    use crate::projective::enumerate_subspaces;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn point(ring: &Ring, coords: &[i64]) -> ProjPoint {
        ProjPoint::normalize(ring, coords.iter().map(|&c| ring.from_i64(c)).collect()).unwrap()
    }

    fn mat(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn delta_of_a_point_is_the_column_ideal() {
        let f5 = gf(5);
        let rep = delta(&f5, &point(&f5, &[1, 2])).unwrap();
        assert!(rep.verified());
        assert_eq!(rep.space().dim(), 2);
        assert_eq!(rep.space().chart(), &[0, 1]);
        assert_eq!(
            rep.space().basis(),
            &mat(&f5, &[&[1, 0], &[0, 1], &[2, 0], &[0, 2]])
        );
        assert_eq!(delta_inv(&f5, rep.space()).unwrap(), point(&f5, &[1, 2]));
    }

    #[test]
    fn delta_is_a_bijection_onto_rank_two_right_ideals() {
        // Over GF(2): 35 2-subspaces of M_2, exactly 3 are right ideals,
        // and they are the delta images of the 3 points of P^1.
        let f2 = gf(2);
        let m2 = Arc::new(matrix_algebra(&f2, 2));
        let ideals: Vec<Subspace> = enumerate_subspaces(&f2, 4, 2)
            .unwrap()
            .into_iter()
            .filter(|s| right_ideal_check(&m2, s.clone()).is_ok())
            .collect();
        assert_eq!(ideals.len(), 3);
        let points = enumerate_points(&f2, 1).unwrap();
        for x in &points {
            let image = delta(&f2, x).unwrap();
            assert!(ideals.contains(image.space()));
            assert_eq!(&delta_inv(&f2, image.space()).unwrap(), x);
        }
        let images: Vec<Subspace> = points
            .iter()
            .map(|x| delta(&f2, x).unwrap().space().clone())
            .collect();
        for ideal in &ideals {
            assert!(images.contains(ideal));
        }
    }

    #[test]
    fn delta_inv_rejects_non_image_subspaces() {
        let f3 = gf(3);
        let diag = subspace_from_span(
            &f3,
            4,
            &[
                mat(&f3, &[&[1, 0, 0, 0]]).to_vec_row_major(),
                mat(&f3, &[&[0, 0, 0, 1]]).to_vec_row_major(),
            ],
        )
        .unwrap();
        assert!(matches!(
            delta_inv(&f3, &diag).unwrap_err(),
            Error::NotInDeltaImage(_)
        ));
        let thin =
            subspace_from_span(&f3, 4, &[mat(&f3, &[&[1, 0, 0, 0]]).to_vec_row_major()]).unwrap();
        assert!(matches!(
            delta_inv(&f3, &thin).unwrap_err(),
            Error::NotInDeltaImage(_)
        ));
    }

    #[test]
    fn delta_round_trips_over_nonfield_local_rings() {
        let z9 = Ring::parse("Z/9").unwrap();
        for x in enumerate_points(&z9, 1).unwrap() {
            let rep = delta(&z9, &x).unwrap();
            assert!(rep.verified());
            assert_eq!(delta_inv(&z9, rep.space()).unwrap(), x);
        }
    }

    #[test]
    fn conjugation_equivariance() {
        let f3 = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=2usize {
            let points = enumerate_points(&f3, n).unwrap();
            for _ in 0..5 {
                let p = linalg::random_invertible(&f3, n + 1, &mut rng);
                for x in &points {
                    let lhs =
                        delta(&f3, &crate::projective::pgl_apply(&f3, &p, x).unwrap()).unwrap();
                    let rhs = conjugate_ideal(&p, &delta(&f3, x).unwrap()).unwrap();
                    assert_eq!(lhs.space(), rhs.space());
                }
            }
        }
    }

    #[test]
    fn conjugator_recovery_up_to_scalar() {
        let f5 = gf(5);
        let p = mat(&f5, &[&[1, 2], &[3, 4]]);
        let pinv = linalg::invert(&f5, &p).unwrap();
        let mut units = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut e = Matrix::zeros(&f5, 2, 2);
                e[(i, j)] = f5.one();
                units.push(p.mul(&f5, &e).mul(&f5, &pinv));
            }
        }
        let q = matrix_units_conjugator(&f5, &units).unwrap();
        let lambda = linalg::unit_scalar_ratio(&f5, &q, &p).expect("q = lambda p");
        assert!(f5.is_unit(&lambda));

        units.swap(1, 2);
        assert!(matches!(
            matrix_units_conjugator(&f5, &units).unwrap_err(),
            Error::BadRelations(_)
        ));
        let zero = Matrix::zeros(&f5, 1, 1);
        assert!(matches!(
            matrix_units_conjugator(&f5, &[zero]).unwrap_err(),
            Error::BadRelations(_)
        ));
    }

    #[test]
    fn skolem_noether_round_trip() {
        let f7 = gf(7);
        let m3 = Arc::new(matrix_algebra(&f7, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let p = linalg::random_invertible(&f7, 3, &mut rng);
            let sigma = inner_automorphism(&m3, &p).unwrap();
            assert!(sigma.hom_verified());
            let recovered = automorphism_to_pgl(&sigma).unwrap();
            assert_eq!(recovered, pgl_normalize(&f7, &p).unwrap());
            // A scalar multiple of p induces the same automorphism.
            let scaled = p.scale(&f7, &f7.from_i64(3));
            let tau = inner_automorphism(&m3, &scaled).unwrap();
            assert_eq!(automorphism_to_pgl(&tau).unwrap(), recovered);
        }
    }

    #[test]
    fn transpose_is_rejected_as_an_automorphism() {
        let f5 = gf(5);
        let m2 = Arc::new(matrix_algebra(&f5, 2));
        let mut t = Matrix::zeros(&f5, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                t[(j * 2 + i, i * 2 + j)] = f5.one();
            }
        }
        let transpose = AlgebraMap::new(m2.clone(), m2, t).unwrap();
        assert!(!transpose.hom_verified());
        assert!(matches!(
            automorphism_to_pgl(&transpose).unwrap_err(),
            Error::NotAutomorphism(_)
        ));
    }

    #[test]
    fn splitting_a_matrix_algebra_by_a_point_ideal() {
        let f5 = gf(5);
        let ideal = delta(&f5, &point(&f5, &[1, 0])).unwrap();
        let split = split_by_ideal(&ideal).unwrap();
        assert!(split.hom_verified());
        assert!(split.is_bijective());
        // The pushforward of each point ideal lands on a distinct point.
        let points = enumerate_points(&f5, 1).unwrap();
        let mut images = Vec::new();
        for x in &points {
            let y = chatelet_point_map(&split, &delta(&f5, x).unwrap()).unwrap();
            images.push(y);
        }
        images.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        images.dedup();
        assert_eq!(images.len(), points.len());
    }

    #[test]
    fn split_by_ideal_preconditions() {
        let f5 = gf(5);
        let m2 = Arc::new(matrix_algebra(&f5, 2));
        // The whole algebra is a right ideal of the wrong rank.
        let whole =
            right_ideal_from_span(&m2, &(0..4).map(|i| m2.basis_vec(i)).collect::<Vec<_>>())
                .unwrap();
        assert_eq!(
            split_by_ideal(&whole).unwrap_err(),
            Error::WrongIdealRank { got: 4, want: 2 }
        );
        // R^4 componentwise is not Azumaya; span{e0, e1} is an ideal of it.
        let diag = Arc::new(diagonal_algebra(&f5, 4));
        let ideal = right_ideal_from_span(&diag, &[diag.basis_vec(0), diag.basis_vec(1)]).unwrap();
        assert!(matches!(
            split_by_ideal(&ideal).unwrap_err(),
            Error::NotAzumaya(_)
        ));
    }

    #[test]
    fn splitting_a_quaternion_algebra_via_a_found_ideal() {
        let f3 = gf(3);
        let q = Arc::new(quaternion_algebra(&f3, &f3.one(), &f3.one()).unwrap());
        let ideal = find_right_ideal(&q, 0)
            .unwrap()
            .expect("Q(1,1)/GF(3) splits");
        assert_eq!(ideal.space().dim(), 2);
        let split = split_by_ideal(&ideal).unwrap();
        assert!(split.hom_verified());
        assert!(split.is_bijective());
    }

    #[test]
    fn find_right_ideal_first_hits() {
        let f5 = gf(5);
        let m2 = Arc::new(matrix_algebra(&f5, 2));
        let found = find_right_ideal(&m2, 0).unwrap().unwrap();
        // The first generator in enumeration order is E00, whose ideal is
        // the first-row span, which is also delta of the first point.
        let first = delta(&f5, &point(&f5, &[1, 0])).unwrap();
        assert_eq!(found.space(), first.space());

        let q = Ring::rationals();
        let q11 = Arc::new(quaternion_algebra(&q, &q.one(), &q.one()).unwrap());
        let hit = find_right_ideal(&q11, 2)
            .unwrap()
            .expect("Q(1,1)/QQ splits");
        assert!(hit.verified());
        assert_eq!(hit.space().dim(), 2);

        let m2q = Arc::new(matrix_algebra(&q, 2));
        let hit = find_right_ideal(&m2q, 1).unwrap().unwrap();
        // The first admissible generator is E11, giving the second-row span.
        assert_eq!(hit.space().chart(), &[2, 3]);

        let neg = q.from_i64(-1);
        let hamilton = Arc::new(quaternion_algebra(&q, &neg, &neg).unwrap());
        assert!(find_right_ideal(&hamilton, 3).unwrap().is_none());
    }

    /// The i128 screen must agree with exact rank, including when the
    /// structure constants need denominator clearing.
    #[test]
    fn integer_rank_screen_matches_generic_rank() {
        let q = Ring::rationals();
        let half = q.parse_elem("1/2").unwrap();
        let alg = Arc::new(quaternion_algebra(&q, &half, &q.from_i64(3)).unwrap());
        let tbl = integer_sc_table(&alg).unwrap();
        for c0 in -2..=2i64 {
            for c1 in -2..=2i64 {
                for c2 in -2..=2i64 {
                    for c3 in -2..=2i64 {
                        let c = [c0, c1, c2, c3];
                        let fast = integer_span_rank(&tbl, &c).unwrap();
                        let a: Vec<Elem> = c.iter().map(|&x| q.from_i64(x)).collect();
                        let prods: Vec<Vec<Elem>> =
                            (0..4).map(|t| alg.mul_vec(&a, &alg.basis_vec(t))).collect();
                        let generic = linalg::rank(&q, &Matrix::from_cols(4, &prods));
                        assert_eq!(fast, generic, "generator {c:?}");
                    }
                }
            }
        }
    }
}
