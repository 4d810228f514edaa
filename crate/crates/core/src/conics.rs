//! The plane conic `x^2 = a y^2 + b z^2` and its rational parametrization
//! from a base point.
//!
//! The parametrization formulas assume a base point with unit `x`
//! coordinate, scaled so `x = 1`; [`normalize_base_point`] reduces the
//! general case to that one by swapping coordinates and adjusting `(a, b)`.
//! All identities are exact, and [`Parametrization::verify`] checks the
//! inverse property pointwise.

use crate::error::{Error, Result};
use crate::projective::{enumerate_points, ProjPoint};
use crate::rings::{Elem, Ring};

fn require_unit(ring: &Ring, x: &Elem, label: &str) -> Result<()> {
    if ring.is_unit(x) {
        Ok(())
    } else if label.is_empty() {
        Err(Error::NotUnit(ring.format_elem(x)))
    } else {
        Err(Error::NotUnit(label.into()))
    }
}

/// `x^2 - a y^2 - b z^2 = 0`, exactly.
pub fn on_conic(ring: &Ring, a: &Elem, b: &Elem, p: &ProjPoint) -> bool {
    assert_eq!(p.coords().len(), 3, "conic points live in P^2");
    let (x, y, z) = (&p.coords()[0], &p.coords()[1], &p.coords()[2]);
    let lhs = ring.mul(x, x);
    let rhs = ring.add(&ring.mul(a, &ring.mul(y, y)), &ring.mul(b, &ring.mul(z, z)));
    lhs == rhs
}

/// First point on `C(a, b)`, or `None` when the search is exhausted.
///
/// Over a finite ring the candidates are the points of `P^2` in enumeration
/// order and `None` means no point exists. Over `QQ` the candidates are the
/// integer triples with entries of absolute value at most `bound`, ordered
/// by height and then lexicographically (negatives first); the first triple
/// on the conic is normalized, and `None` only means "none within the
/// bound". Requires unit `a`, `b`.
pub fn find_point(ring: &Ring, a: &Elem, b: &Elem, bound: u64) -> Result<Option<ProjPoint>> {
    require_unit(ring, a, "")?;
    require_unit(ring, b, "")?;
    if ring.is_finite() {
        for p in enumerate_points(ring, 2)? {
            if on_conic(ring, a, b, &p) {
                return Ok(Some(p));
            }
        }
        return Ok(None);
    }
    for h in 1..=bound as i64 {
        let mut c = [-h; 3];
        loop {
            if c.iter().any(|&x| x.abs() == h) {
                let coords: Vec<Elem> = c.iter().map(|&x| ring.from_i64(x)).collect();
                if let Ok(p) = ProjPoint::normalize(ring, coords) {
                    if on_conic(ring, a, b, &p) {
                        return Ok(Some(p));
                    }
                }
            }
            let mut i = 3;
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

/// All points on `C(a, b)` over a finite ring, in enumeration order.
pub fn conic_points(ring: &Ring, a: &Elem, b: &Elem) -> Result<Vec<ProjPoint>> {
    require_unit(ring, a, "")?;
    require_unit(ring, b, "")?;
    Ok(enumerate_points(ring, 2)?
        .into_iter()
        .filter(|p| on_conic(ring, a, b, p))
        .collect())
}

/// A coordinate swap taking `C(a, b)` to another conic in the same form.
/// Each variant is an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicTransform {
    Identity,
    /// `[x:y:z] -> [y:x:z]`, taking `C(a, b)` to `C(1/a, -b/a)`.
    SwapXY,
    /// `[x:y:z] -> [z:y:x]`, taking `C(a, b)` to `C(-a/b, 1/b)`.
    SwapXZ,
}

impl ConicTransform {
    pub fn apply(&self, ring: &Ring, p: &ProjPoint) -> ProjPoint {
        let c = p.coords();
        let swapped = match self {
            ConicTransform::Identity => c.to_vec(),
            ConicTransform::SwapXY => vec![c[1].clone(), c[0].clone(), c[2].clone()],
            ConicTransform::SwapXZ => vec![c[2].clone(), c[1].clone(), c[0].clone()],
        };
        ProjPoint::normalize(ring, swapped).expect("permutation keeps a unit coordinate")
    }

    /// The parameters of the image conic: `p` is on `C(a, b)` exactly when
    /// `apply(p)` is on `C(a', b')`.
    pub fn conic_params(&self, ring: &Ring, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
        require_unit(ring, a, "")?;
        require_unit(ring, b, "")?;
        Ok(match self {
            ConicTransform::Identity => (a.clone(), b.clone()),
            ConicTransform::SwapXY => {
                let ainv = ring.unit_inverse(a).unwrap();
                (ainv.clone(), ring.neg(&ring.mul(b, &ainv)))
            }
            ConicTransform::SwapXZ => {
                let binv = ring.unit_inverse(b).unwrap();
                (ring.neg(&ring.mul(a, &binv)), binv.clone())
            }
        })
    }
}

/// `C(a, b)` with a base point `[1 : y0 : z0]`, so `a y0^2 + b z0^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedConic {
    ring: Ring,
    a: Elem,
    b: Elem,
    y0: Elem,
    z0: Elem,
}

impl PointedConic {
    /// Errors: [`Error::NotUnit`] for non-unit `a`, `b`, or 2,
    /// [`Error::NotOnConic`] unless `a y0^2 + b z0^2 = 1`.
    pub fn new(ring: &Ring, a: Elem, b: Elem, y0: Elem, z0: Elem) -> Result<PointedConic> {
        require_unit(ring, &a, "")?;
        require_unit(ring, &b, "")?;
        require_unit(ring, &ring.from_i64(2), "2")?;
        let val = ring.add(
            &ring.mul(&a, &ring.mul(&y0, &y0)),
            &ring.mul(&b, &ring.mul(&z0, &z0)),
        );
        if !ring.is_one(&val) {
            return Err(Error::NotOnConic(format!(
                "a y0^2 + b z0^2 = {}, want 1",
                ring.format_elem(&val)
            )));
        }
        Ok(PointedConic {
            ring: ring.clone(),
            a,
            b,
            y0,
            z0,
        })
    }

    pub fn a(&self) -> &Elem {
        &self.a
    }

    pub fn b(&self) -> &Elem {
        &self.b
    }

    pub fn base_point(&self) -> ProjPoint {
        ProjPoint::normalize(
            &self.ring,
            vec![self.ring.one(), self.y0.clone(), self.z0.clone()],
        )
        .expect("the base point starts with 1")
    }

    /// The parametrization `P^1 -> C(a, b)`:
    /// `[u:v] -> [au^2+bv^2 : y0(au^2-bv^2)+2buvz0 : z0(au^2-bv^2)-2auvy0]`.
    /// Sends `[1:0]` to the base point.
    pub fn psi(&self, t: &ProjPoint) -> Result<ProjPoint> {
        assert_eq!(t.coords().len(), 2, "parameters live in P^1");
        let ring = &self.ring;
        let (u, v) = (&t.coords()[0], &t.coords()[1]);
        let au2 = ring.mul(&self.a, &ring.mul(u, u));
        let bv2 = ring.mul(&self.b, &ring.mul(v, v));
        let two_uv = ring.mul(&ring.from_i64(2), &ring.mul(u, v));
        let sum = ring.add(&au2, &bv2);
        let diff = ring.sub(&au2, &bv2);
        let y = ring.add(
            &ring.mul(&self.y0, &diff),
            &ring.mul(&self.b, &ring.mul(&two_uv, &self.z0)),
        );
        let z = ring.sub(
            &ring.mul(&self.z0, &diff),
            &ring.mul(&self.a, &ring.mul(&two_uv, &self.y0)),
        );
        let point = ProjPoint::normalize(ring, vec![sum, y, z]).map_err(|_| {
            Error::DegenerateOutput(format!(
                "psi output has no unit coordinate at {:?}",
                t.coords()
            ))
        })?;
        debug_assert!(on_conic(ring, &self.a, &self.b, &point));
        Ok(point)
    }

    /// The inverse chart `C(a, b) -> P^1`. With `w = a y0 y + b z0 z` and
    /// `r = z0 y - y0 z`: if `x + w` is a unit the parameter is
    /// `[1 : ar/(x+w)]`, else if `x - w` is a unit it is `[br/(x-w) : 1]`.
    ///
    /// The two charts agree where both apply, by the exact identity
    /// `x^2 - w^2 = ab r^2` on the conic. Errors: [`Error::NotOnConic`],
    /// [`Error::DichotomyFailure`] when neither denominator is a unit
    /// (impossible over a field of odd characteristic).
    pub fn phi(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let ring = &self.ring;
        if !on_conic(ring, &self.a, &self.b, p) {
            return Err(Error::NotOnConic(format!("{:?}", p.coords())));
        }
        let (x, y, z) = (&p.coords()[0], &p.coords()[1], &p.coords()[2]);
        let w = ring.add(
            &ring.mul(&self.a, &ring.mul(&self.y0, y)),
            &ring.mul(&self.b, &ring.mul(&self.z0, z)),
        );
        let r = ring.sub(&ring.mul(&self.z0, y), &ring.mul(&self.y0, z));
        let d_plus = ring.add(x, &w);
        let d_minus = ring.sub(x, &w);
        debug_assert_eq!(
            ring.mul(&d_plus, &d_minus),
            ring.mul(&ring.mul(&self.a, &self.b), &ring.mul(&r, &r))
        );
        if ring.is_unit(&d_plus) {
            let inv = ring.unit_inverse(&d_plus).unwrap();
            let t = ring.mul(&ring.mul(&self.a, &r), &inv);
            return ProjPoint::normalize(ring, vec![ring.one(), t]);
        }
        if ring.is_unit(&d_minus) {
            let inv = ring.unit_inverse(&d_minus).unwrap();
            let t = ring.mul(&ring.mul(&self.b, &r), &inv);
            return ProjPoint::normalize(ring, vec![t, ring.one()]);
        }
        Err(Error::DichotomyFailure(format!(
            "both denominators {} and {} are non-units",
            ring.format_elem(&d_plus),
            ring.format_elem(&d_minus)
        )))
    }
}

/// Move a base point into the unit-`x` chart. Returns the transform and the
/// pointed conic it lands on: a point `p` on `C(a, b)` corresponds to
/// `transform.apply(p)` on the pointed conic.
pub fn normalize_base_point(
    ring: &Ring,
    a: &Elem,
    b: &Elem,
    base: &ProjPoint,
) -> Result<(ConicTransform, PointedConic)> {
    if !on_conic(ring, a, b, base) {
        return Err(Error::NotOnConic(format!("{:?}", base.coords())));
    }
    let transform = match base.pivot_index(ring) {
        0 => ConicTransform::Identity,
        1 => ConicTransform::SwapXY,
        _ => ConicTransform::SwapXZ,
    };
    let (a2, b2) = transform.conic_params(ring, a, b)?;
    let moved = transform.apply(ring, base);
    debug_assert!(ring.is_one(&moved.coords()[0]));
    let pc = PointedConic::new(
        ring,
        a2,
        b2,
        moved.coords()[1].clone(),
        moved.coords()[2].clone(),
    )?;
    Ok((transform, pc))
}

/// Rescale `[x:y:z]` on `C(u^2 a, v^2 b)` to `[x:uy:vz]` on `C(a, b)`.
/// Requires units `u`, `v`; errors with [`Error::NotOnConic`] when the
/// input misses the source conic.
pub fn conic_rescale(
    ring: &Ring,
    a: &Elem,
    b: &Elem,
    u: &Elem,
    v: &Elem,
    p: &ProjPoint,
) -> Result<ProjPoint> {
    require_unit(ring, u, "")?;
    require_unit(ring, v, "")?;
    let u2a = ring.mul(&ring.mul(u, u), a);
    let v2b = ring.mul(&ring.mul(v, v), b);
    if !on_conic(ring, &u2a, &v2b, p) {
        return Err(Error::NotOnConic(format!("{:?}", p.coords())));
    }
    let c = p.coords();
    let out = ProjPoint::normalize(
        ring,
        vec![c[0].clone(), ring.mul(u, &c[1]), ring.mul(v, &c[2])],
    )?;
    debug_assert!(on_conic(ring, a, b, &out));
    Ok(out)
}

/// A two-way parametrization of `C(a, b)` from a base point in any chart.
#[derive(Debug, Clone)]
pub struct Parametrization {
    ring: Ring,
    a: Elem,
    b: Elem,
    transform: ConicTransform,
    pc: PointedConic,
}

/// Build the parametrization of `C(a, b)` through `base`.
pub fn parametrize(ring: &Ring, a: &Elem, b: &Elem, base: &ProjPoint) -> Result<Parametrization> {
    let (transform, pc) = normalize_base_point(ring, a, b, base)?;
    Ok(Parametrization {
        ring: ring.clone(),
        a: a.clone(),
        b: b.clone(),
        transform,
        pc,
    })
}

impl Parametrization {
    pub fn transform(&self) -> ConicTransform {
        self.transform
    }

    pub fn pointed_conic(&self) -> &PointedConic {
        &self.pc
    }

    /// The base point, back on `C(a, b)`.
    pub fn base_point(&self) -> ProjPoint {
        self.transform.apply(&self.ring, &self.pc.base_point())
    }

    /// `P^1 -> C(a, b)`.
    pub fn from_line(&self, t: &ProjPoint) -> Result<ProjPoint> {
        let on_moved = self.pc.psi(t)?;
        let p = self.transform.apply(&self.ring, &on_moved);
        debug_assert!(on_conic(&self.ring, &self.a, &self.b, &p));
        Ok(p)
    }

    /// `C(a, b) -> P^1`.
    pub fn to_line(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if !on_conic(&self.ring, &self.a, &self.b, p) {
            return Err(Error::NotOnConic(format!("{:?}", p.coords())));
        }
        self.pc.phi(&self.transform.apply(&self.ring, p))
    }

    /// Check the inverse property pointwise. Over a finite ring this is
    /// exhaustive in both directions and also checks that `from_line` is a
    /// bijection onto the conic's points. Over `QQ` it runs the round trip
    /// through the parameters `[1:k]` for `|k| <= 10` and `[0:1]`.
    pub fn verify(&self) -> Result<()> {
        let ring = &self.ring;
        let fail = |msg: String| Err(Error::DegenerateOutput(msg));
        if ring.is_finite() {
            let line = enumerate_points(ring, 1)?;
            let conic = conic_points(ring, &self.a, &self.b)?;
            let mut hit: Vec<ProjPoint> = Vec::with_capacity(line.len());
            for t in &line {
                let p = self.from_line(t)?;
                if !on_conic(ring, &self.a, &self.b, &p) {
                    return fail(format!("from_line leaves the conic at {:?}", t.coords()));
                }
                if &self.to_line(&p)? != t {
                    return fail(format!("round trip breaks at parameter {:?}", t.coords()));
                }
                if hit.contains(&p) {
                    return fail(format!("from_line repeats the point {:?}", p.coords()));
                }
                hit.push(p);
            }
            if hit.len() != conic.len() || conic.iter().any(|p| !hit.contains(p)) {
                return fail(format!(
                    "from_line covers {} of {} conic points",
                    hit.len(),
                    conic.len()
                ));
            }
            for p in &conic {
                if &self.from_line(&self.to_line(p)?)? != p {
                    return fail(format!("round trip breaks at point {:?}", p.coords()));
                }
            }
            return Ok(());
        }
        let mut params = vec![ProjPoint::normalize(ring, vec![ring.zero(), ring.one()])?];
        for k in -10..=10i64 {
            params.push(ProjPoint::normalize(
                ring,
                vec![ring.one(), ring.from_i64(k)],
            )?);
        }
        for t in &params {
            let p = self.from_line(t)?;
            if &self.to_line(&p)? != t {
                return fail(format!("round trip breaks at parameter {:?}", t.coords()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn point(ring: &Ring, coords: &[i64]) -> ProjPoint {
        ProjPoint::normalize(ring, coords.iter().map(|&c| ring.from_i64(c)).collect()).unwrap()
    }

    #[test]
    fn membership_and_degenerate_parameters() {
        let f5 = gf(5);
        let (a, b) = (f5.one(), f5.one());
        assert!(on_conic(&f5, &a, &b, &point(&f5, &[1, 1, 0])));
        assert!(!on_conic(&f5, &a, &b, &point(&f5, &[1, 1, 1])));
        assert_eq!(
            find_point(&f5, &f5.zero(), &b, 0).unwrap_err(),
            Error::NotUnit("0".into())
        );
    }

    #[test]
    fn first_point_over_the_rationals_is_frozen() {
        let q = Ring::rationals();
        let hit = find_point(&q, &q.one(), &q.one(), 5).unwrap().unwrap();
        assert_eq!(hit, point(&q, &[1, 1, 0]));
        // x^2 = -y^2 - z^2 has no rational point at all.
        let neg = q.from_i64(-1);
        assert_eq!(find_point(&q, &neg, &neg, 8).unwrap(), None);
    }

    #[test]
    fn first_point_over_a_finite_field_is_frozen() {
        let f3 = gf(3);
        let hit = find_point(&f3, &f3.one(), &f3.one(), 0).unwrap().unwrap();
        assert_eq!(hit, point(&f3, &[1, 0, 1]));
    }

    /// A smooth conic with unit coefficients over GF(q), q odd, has exactly
    /// q + 1 points.
    #[test]
    fn conic_point_counts() {
        for q in [3u64, 5, 7] {
            let f = gf(q);
            let units: Vec<Elem> = (1..q as i64).map(|x| f.from_i64(x)).collect();
            for a in &units {
                for b in &units {
                    assert_eq!(
                        conic_points(&f, a, b).unwrap().len(),
                        q as usize + 1,
                        "C({}, {}) over GF({q})",
                        f.format_elem(a),
                        f.format_elem(b)
                    );
                }
            }
        }
    }

    #[test]
    fn transforms_are_involutions_and_preserve_membership() {
        let f7 = gf(7);
        let (a, b) = (f7.from_i64(3), f7.from_i64(5));
        for transform in [
            ConicTransform::Identity,
            ConicTransform::SwapXY,
            ConicTransform::SwapXZ,
        ] {
            let (a2, b2) = transform.conic_params(&f7, &a, &b).unwrap();
            let (a3, b3) = transform.conic_params(&f7, &a2, &b2).unwrap();
            assert_eq!((a3, b3), (a.clone(), b.clone()));
            for p in conic_points(&f7, &a, &b).unwrap() {
                let moved = transform.apply(&f7, &p);
                assert!(on_conic(&f7, &a2, &b2, &moved));
                assert_eq!(transform.apply(&f7, &moved), p);
            }
        }
    }

    #[test]
    fn pointed_conic_worked_example() {
        let q = Ring::rationals();
        let pc = PointedConic::new(&q, q.one(), q.one(), q.one(), q.zero()).unwrap();
        assert_eq!(pc.base_point(), point(&q, &[1, 1, 0]));
        // psi([u:v]) = [u^2+v^2 : u^2-v^2 : -2uv].
        assert_eq!(pc.psi(&point(&q, &[1, 0])).unwrap(), point(&q, &[1, 1, 0]));
        assert_eq!(pc.psi(&point(&q, &[1, 1])).unwrap(), point(&q, &[1, 0, -1]));
        assert_eq!(pc.psi(&point(&q, &[0, 1])).unwrap(), point(&q, &[1, -1, 0]));
        assert_eq!(
            pc.psi(&point(&q, &[1, 2])).unwrap(),
            point(&q, &[5, -3, -4])
        );
        // phi inverts each of them, covering both charts.
        for t in [[1, 0], [1, 1], [0, 1], [1, 2], [2, 3]] {
            let t = point(&q, &t);
            assert_eq!(pc.phi(&pc.psi(&t).unwrap()).unwrap(), t);
        }
        assert!(matches!(
            pc.phi(&point(&q, &[1, 1, 1])).unwrap_err(),
            Error::NotOnConic(_)
        ));
    }

    #[test]
    fn pointed_conic_rejects_bad_data() {
        let f5 = gf(5);
        assert!(matches!(
            PointedConic::new(&f5, f5.one(), f5.one(), f5.one(), f5.one()).unwrap_err(),
            Error::NotOnConic(_)
        ));
        let f2 = gf(2);
        assert_eq!(
            PointedConic::new(&f2, f2.one(), f2.one(), f2.one(), f2.zero()).unwrap_err(),
            Error::NotUnit("2".into())
        );
    }

    #[test]
    fn base_point_normalization_picks_the_right_chart() {
        let f3 = gf(3);
        // x unit: stay put.
        let (t, pc) =
            normalize_base_point(&f3, &f3.one(), &f3.one(), &point(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(t, ConicTransform::Identity);
        assert_eq!(pc.base_point(), point(&f3, &[1, 0, 1]));
        // x = 0 on C(1, 2): swap x and y, landing on C(1, -2) = C(1, 1).
        let base = point(&f3, &[0, 1, 1]);
        let (t, pc) = normalize_base_point(&f3, &f3.one(), &f3.from_i64(2), &base).unwrap();
        assert_eq!(t, ConicTransform::SwapXY);
        assert_eq!(pc.a(), &f3.one());
        assert_eq!(pc.b(), &f3.one());
        assert_eq!(pc.base_point(), point(&f3, &[1, 0, 1]));
        assert!(matches!(
            normalize_base_point(&f3, &f3.one(), &f3.one(), &point(&f3, &[1, 1, 1])).unwrap_err(),
            Error::NotOnConic(_)
        ));
    }

    #[test]
    fn parametrizations_verify_exhaustively() {
        let f5 = gf(5);
        for (a, b) in [(1i64, 1), (2, 3), (4, 2)] {
            let (a, b) = (f5.from_i64(a), f5.from_i64(b));
            for base in conic_points(&f5, &a, &b).unwrap() {
                let par = parametrize(&f5, &a, &b, &base).unwrap();
                assert_eq!(par.base_point(), base);
                assert_eq!(par.to_line(&base).unwrap(), point(&f5, &[1, 0]));
                par.verify().unwrap();
            }
        }
        // A base point in the swapped chart still verifies.
        let f3 = gf(3);
        let par = parametrize(&f3, &f3.one(), &f3.from_i64(2), &point(&f3, &[0, 1, 1])).unwrap();
        par.verify().unwrap();

        let q = Ring::rationals();
        let par = parametrize(&q, &q.one(), &q.one(), &point(&q, &[1, 1, 0])).unwrap();
        par.verify().unwrap();
    }

    #[test]
    fn rescaling_moves_points_between_scaled_conics() {
        let f5 = gf(5);
        let (a, b) = (f5.one(), f5.one());
        let (u, v) = (f5.from_i64(2), f5.one());
        // C(4, 1): x^2 = 4y^2 + z^2 has the point [0:1:1].
        let p = point(&f5, &[0, 1, 1]);
        let moved = conic_rescale(&f5, &a, &b, &u, &v, &p).unwrap();
        assert_eq!(moved, point(&f5, &[0, 2, 1]));
        assert!(on_conic(&f5, &a, &b, &moved));
        assert!(matches!(
            conic_rescale(&f5, &a, &b, &u, &v, &point(&f5, &[1, 1, 0])).unwrap_err(),
            Error::NotOnConic(_)
        ));
    }
}
