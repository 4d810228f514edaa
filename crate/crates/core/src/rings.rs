//! Concrete base rings and their exact element arithmetic.
//!
//! Four ring families are supported: the rationals `QQ`, prime fields
//! `GF(p)`, extension fields `GF(p^e;c0,...,1)` presented by a monic
//! irreducible modulus (coefficients listed from degree 0 up), and the
//! non-field local rings `Z/p^k`. Every element has exactly one stored
//! representative, so `==` on elements is ring equality:
//!
//! * rationals are reduced fractions with positive denominator,
//! * residues live in `[0, p^k)`,
//! * extension-field elements are coefficient vectors of length `e` with
//!   entries in `[0, p)`.
//!
//! All operations take the ring as explicit context; elements do not know
//! which ring they belong to.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hard cap on exhaustive element enumerations.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Largest prime accepted for finite-ring constructors.
const PRIME_CAP: u64 = 1 << 31;

/// Largest prime for which degree-4 modulus irreducibility is searched.
const QUARTIC_SEARCH_CAP: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Repr {
    Rationals,
    /// `GF(p)`.
    PrimeField {
        p: u64,
    },
    /// `GF(p^e)` as `F_p[x]/(modulus)`; modulus monic, irreducible, degree 2..=4.
    ExtField {
        p: u64,
        modulus: Vec<u64>,
    },
    /// `Z/p^k` with `k >= 1`; `pk = p^k`.
    LocalIntegers {
        p: u64,
        k: u32,
        pk: u64,
    },
}

/// A validated base ring. Construct via [`Ring::parse`] or the named
/// constructors; invalid parameters are rejected eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub(crate) repr: Repr,
}

/// An element of some [`Ring`], stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    /// Reduced fraction, positive denominator.
    Rat(BigRational),
    /// Residue in `[0, p^k)`.
    Res(u64),
    /// Coefficients `[c0, ..., c_{e-1}]`, each in `[0, p)`.
    Poly(Vec<u64>),
}

// ---------------------------------------------------------------------------
// construction and parsing
// ---------------------------------------------------------------------------

impl Ring {
    pub fn rationals() -> Ring {
        Ring {
            repr: Repr::Rationals,
        }
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        check_prime(p)?;
        Ok(Ring {
            repr: Repr::PrimeField { p },
        })
    }

    /// `F_p[x]/(modulus)`; `modulus` lists coefficients from degree 0 up and
    /// must be monic of degree 2..=4 and irreducible over `F_p`.
    pub fn ext_field(p: u64, modulus: Vec<u64>) -> Result<Ring> {
        check_prime(p)?;
        let deg = modulus.len().saturating_sub(1);
        if !(2..=4).contains(&deg) {
            return Err(Error::Unsupported(format!(
                "extension degree {deg} (supported: 2..=4)"
            )));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Parse("extension modulus must be monic".into()));
        }
        if deg == 4 && p > QUARTIC_SEARCH_CAP {
            return Err(Error::Unsupported(format!(
                "degree-4 irreducibility search requires p <= {QUARTIC_SEARCH_CAP}"
            )));
        }
        if let Some(factor) = find_monic_factor(p, &modulus) {
            return Err(Error::NotIrreducible(format_poly_raw(&factor)));
        }
        Ok(Ring {
            repr: Repr::ExtField { p, modulus },
        })
    }

    /// `Z/p^k` for prime `p` and `k >= 1`.
    pub fn local_integers(p: u64, k: u32) -> Result<Ring> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::Parse("exponent k must be >= 1".into()));
        }
        let pk = p
            .checked_pow(k)
            .filter(|&pk| pk <= PRIME_CAP)
            .ok_or_else(|| Error::Unsupported(format!("p^k = {p}^{k} out of range")))?;
        Ok(Ring {
            repr: Repr::LocalIntegers { p, k, pk },
        })
    }

    /// Parse a ring spec: `QQ`, `GF(p)`, `GF(p^e;c0,...,1)`, `Z/p^k`, `Z/N`.
    pub fn parse(text: &str) -> Result<Ring> {
        let s = text.trim();
        if s == "QQ" {
            return Ok(Ring::rationals());
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
            return parse_gf(inner);
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            return parse_local(rest);
        }
        Err(Error::Parse(format!("unrecognized ring spec `{s}`")))
    }

    /// Residue characteristic: `p` for the finite rings, 0 for `QQ`.
    pub fn characteristic_p(&self) -> u64 {
        match &self.repr {
            Repr::Rationals => 0,
            Repr::PrimeField { p } | Repr::ExtField { p, .. } | Repr::LocalIntegers { p, .. } => *p,
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u128> {
        match &self.repr {
            Repr::Rationals => None,
            Repr::PrimeField { p } => Some(*p as u128),
            Repr::ExtField { p, modulus } => Some((*p as u128).pow((modulus.len() - 1) as u32)),
            Repr::LocalIntegers { pk, .. } => Some(*pk as u128),
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.repr {
            Repr::Rationals | Repr::PrimeField { .. } | Repr::ExtField { .. } => true,
            Repr::LocalIntegers { k, .. } => *k == 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.repr, Repr::Rationals)
    }
}

fn parse_gf(inner: &str) -> Result<Ring> {
    match inner.split_once(';') {
        None => {
            if inner.contains('^') {
                return Err(Error::Parse(
                    "GF(p^e) needs a modulus: GF(p^e;c0,...,1)".into(),
                ));
            }
            Ring::prime_field(parse_u64(inner)?)
        }
        Some((head, coeffs)) => {
            let (p_txt, e_txt) = head
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected p^e before `;` in `{inner}`")))?;
            let p = parse_u64(p_txt)?;
            let e: usize = e_txt
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e_txt}`")))?;
            let modulus: Vec<u64> = coeffs
                .split(',')
                .map(parse_u64)
                .collect::<Result<Vec<_>>>()?;
            if modulus.len() != e + 1 {
                return Err(Error::Parse(format!(
                    "modulus for GF({p}^{e}) needs {} coefficients, got {}",
                    e + 1,
                    modulus.len()
                )));
            }
            Ring::ext_field(p, modulus)
        }
    }
}

fn parse_local(rest: &str) -> Result<Ring> {
    if let Some((p_txt, k_txt)) = rest.split_once('^') {
        let p = parse_u64(p_txt)?;
        let k: u32 = k_txt
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{k_txt}`")))?;
        return Ring::local_integers(p, k);
    }
    let n = parse_u64(rest)?;
    if n < 2 {
        return Err(Error::Parse(format!("Z/{n} is not a local ring")));
    }
    // N must be a prime power; recover p as the smallest prime factor.
    let mut p = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::NotPrime(n));
    }
    Ring::local_integers(p, k)
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn check_prime(p: u64) -> Result<()> {
    if p > PRIME_CAP {
        return Err(Error::Unsupported(format!("prime {p} exceeds {PRIME_CAP}")));
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rationals => write!(f, "QQ"),
            Repr::PrimeField { p } => write!(f, "GF({p})"),
            Repr::ExtField { p, modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "GF({}^{};{})", p, modulus.len() - 1, coeffs.join(","))
            }
            Repr::LocalIntegers { p, k, .. } if *k == 1 => write!(f, "Z/{p}"),
            Repr::LocalIntegers { p, k, .. } => write!(f, "Z/{p}^{k}"),
        }
    }
}

// ---------------------------------------------------------------------------
// element construction
// ---------------------------------------------------------------------------

impl Ring {
    pub fn zero(&self) -> Elem {
        match &self.repr {
            Repr::Rationals => Elem::Rat(BigRational::zero()),
            Repr::PrimeField { .. } | Repr::LocalIntegers { .. } => Elem::Res(0),
            Repr::ExtField { modulus, .. } => Elem::Poly(vec![0; modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &self.repr {
            Repr::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            Repr::PrimeField { p } => Elem::Res((n as i128).rem_euclid(*p as i128) as u64),
            Repr::LocalIntegers { pk, .. } => Elem::Res((n as i128).rem_euclid(*pk as i128) as u64),
            Repr::ExtField { p, modulus } => {
                let mut coeffs = vec![0; modulus.len() - 1];
                coeffs[0] = (n as i128).rem_euclid(*p as i128) as u64;
                Elem::Poly(coeffs)
            }
        }
    }

    /// Parse one element literal for this ring.
    ///
    /// `QQ` accepts `n` or `n/d`; residue rings accept integers (reduced
    /// into range); extension fields accept `[c0,...,c_{e-1}]` or a bare
    /// integer meaning a constant.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s = text.trim();
        match &self.repr {
            Repr::Rationals => {
                let (num_txt, den_txt) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num_txt.trim())
                    .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
                let den = BigInt::from_str(den_txt.trim())
                    .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(Elem::Rat(BigRational::new(num, den)))
            }
            Repr::PrimeField { .. } | Repr::LocalIntegers { .. } => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue `{s}`")))?;
                let m = self.order().unwrap() as i128;
                Ok(Elem::Res(n.rem_euclid(m) as u64))
            }
            Repr::ExtField { p, modulus } => {
                let e = modulus.len() - 1;
                if let Some(list) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    let raw: Vec<i128> = list
                        .split(',')
                        .map(|c| {
                            c.trim()
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if raw.len() > e {
                        return Err(Error::Parse(format!(
                            "too many coefficients for degree-{e} extension"
                        )));
                    }
                    let mut coeffs = vec![0u64; e];
                    for (i, c) in raw.iter().enumerate() {
                        coeffs[i] = c.rem_euclid(*p as i128) as u64;
                    }
                    Ok(Elem::Poly(coeffs))
                } else {
                    let n: i128 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad element `{s}`")))?;
                    let mut coeffs = vec![0u64; e];
                    coeffs[0] = n.rem_euclid(*p as i128) as u64;
                    Ok(Elem::Poly(coeffs))
                }
            }
        }
    }

    /// Canonical text form of an element; inverse of [`Ring::parse_elem`].
    pub fn format_elem(&self, x: &Elem) -> String {
        match (&self.repr, x) {
            (Repr::Rationals, Elem::Rat(r)) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Repr::PrimeField { .. } | Repr::LocalIntegers { .. }, Elem::Res(n)) => n.to_string(),
            (Repr::ExtField { .. }, Elem::Poly(coeffs)) => format_poly_raw(coeffs),
            _ => panic!("element does not belong to ring {self}"),
        }
    }
}

fn format_poly_raw(coeffs: &[u64]) -> String {
    let inner: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", inner.join(","))
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

macro_rules! expect_rat {
    ($x:expr) => {
        match $x {
            Elem::Rat(r) => r,
            other => panic!("expected rational element, got {other:?}"),
        }
    };
}

macro_rules! expect_res {
    ($x:expr) => {
        match $x {
            Elem::Res(n) => *n,
            other => panic!("expected residue element, got {other:?}"),
        }
    };
}

macro_rules! expect_poly {
    ($x:expr) => {
        match $x {
            Elem::Poly(c) => c,
            other => panic!("expected polynomial element, got {other:?}"),
        }
    };
}

impl Ring {
    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.repr {
            Repr::Rationals => Elem::Rat(expect_rat!(a) + expect_rat!(b)),
            Repr::PrimeField { p } => Elem::Res(add_mod(expect_res!(a), expect_res!(b), *p)),
            Repr::LocalIntegers { pk, .. } => {
                Elem::Res(add_mod(expect_res!(a), expect_res!(b), *pk))
            }
            Repr::ExtField { p, .. } => {
                let (ca, cb) = (expect_poly!(a), expect_poly!(b));
                Elem::Poly(
                    ca.iter()
                        .zip(cb)
                        .map(|(x, y)| add_mod(*x, *y, *p))
                        .collect(),
                )
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match &self.repr {
            Repr::Rationals => Elem::Rat(-expect_rat!(a).clone()),
            Repr::PrimeField { p } => Elem::Res(neg_mod(expect_res!(a), *p)),
            Repr::LocalIntegers { pk, .. } => Elem::Res(neg_mod(expect_res!(a), *pk)),
            Repr::ExtField { p, .. } => {
                Elem::Poly(expect_poly!(a).iter().map(|x| neg_mod(*x, *p)).collect())
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.repr {
            Repr::Rationals => Elem::Rat(expect_rat!(a) * expect_rat!(b)),
            Repr::PrimeField { p } => Elem::Res(mul_mod(expect_res!(a), expect_res!(b), *p)),
            Repr::LocalIntegers { pk, .. } => {
                Elem::Res(mul_mod(expect_res!(a), expect_res!(b), *pk))
            }
            Repr::ExtField { p, modulus } => {
                Elem::Poly(poly_mul_mod(expect_poly!(a), expect_poly!(b), *p, modulus))
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Res(n) => *n == 0,
            Elem::Poly(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match &self.repr {
            Repr::Rationals | Repr::PrimeField { .. } | Repr::ExtField { .. } => !self.is_zero(a),
            Repr::LocalIntegers { p, .. } => expect_res!(a) % p != 0,
        }
    }

    /// Multiplicative inverse, or `None` when `a` is not a unit.
    pub fn unit_inverse(&self, a: &Elem) -> Option<Elem> {
        match &self.repr {
            Repr::Rationals => {
                let r = expect_rat!(a);
                if r.is_zero() {
                    None
                } else {
                    Some(Elem::Rat(r.recip()))
                }
            }
            Repr::PrimeField { p } => inv_mod(expect_res!(a), *p).map(Elem::Res),
            Repr::LocalIntegers { pk, .. } => inv_mod(expect_res!(a), *pk).map(Elem::Res),
            Repr::ExtField { p, modulus } => {
                poly_inv_mod(expect_poly!(a), *p, modulus).map(Elem::Poly)
            }
        }
    }

    /// `p`-adic valuation of `a`; `None` for zero. Fields and `QQ` give 0 on
    /// every nonzero element (denominators prime to `p` are not tracked).
    pub fn valuation(&self, a: &Elem) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        match &self.repr {
            Repr::LocalIntegers { p, .. } => {
                let mut n = expect_res!(a);
                let mut v = 0;
                while n % p == 0 {
                    n /= p;
                    v += 1;
                }
                Some(v)
            }
            _ => Some(0),
        }
    }

    /// Write nonzero `a` as `u * p^v` with `u` a unit; returns `(u, v)`.
    pub(crate) fn split_unit(&self, a: &Elem) -> Option<(Elem, u32)> {
        let v = self.valuation(a)?;
        match &self.repr {
            Repr::LocalIntegers { p, .. } => {
                let u = expect_res!(a) / p.pow(v);
                Some((Elem::Res(u), v))
            }
            _ => Some((a.clone(), 0)),
        }
    }

    /// `p^v` as an element (the normalized pivot value for valuation `v`).
    pub(crate) fn p_pow(&self, v: u32) -> Elem {
        match &self.repr {
            Repr::LocalIntegers { p, pk, .. } => Elem::Res(p.pow(v) % pk),
            _ => {
                debug_assert_eq!(v, 0);
                self.one()
            }
        }
    }

    /// Exact division of `a` by the normalized pivot `p^v`; `None` when `a`
    /// has smaller valuation. Over fields this is plain division.
    pub(crate) fn div_by_p_pow(&self, a: &Elem, v: u32) -> Option<Elem> {
        if v == 0 {
            return Some(a.clone());
        }
        match &self.repr {
            Repr::LocalIntegers { p, .. } => {
                let n = expect_res!(a);
                let d = p.pow(v);
                if n % d == 0 {
                    Some(Elem::Res(n / d))
                } else {
                    None
                }
            }
            _ => unreachable!("positive valuation outside Z/p^k"),
        }
    }

    /// Canonical total order on elements: residue order for finite prime and
    /// local rings, coefficient order (degree-0 digit least significant) for
    /// extension fields, and `(denominator, numerator)` for rationals.
    pub fn cmp_elems(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Res(x), Elem::Res(y)) => x.cmp(y),
            (Elem::Poly(x), Elem::Poly(y)) => x.iter().rev().cmp(y.iter().rev()),
            (Elem::Rat(x), Elem::Rat(y)) => x
                .denom()
                .cmp(y.denom())
                .then_with(|| x.numer().cmp(y.numer())),
            _ => panic!("cannot compare elements from different ring families"),
        }
    }

    /// All elements in canonical order. Errors: [`Error::InfiniteRing`] for
    /// `QQ`, [`Error::TooLarge`] past the enumeration cap.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let order = self.order().ok_or(Error::InfiniteRing)?;
        if order > ENUMERATION_CAP {
            return Err(Error::TooLarge(format!("ring has {order} elements")));
        }
        match &self.repr {
            Repr::Rationals => unreachable!(),
            Repr::PrimeField { p } => Ok((0..*p).map(Elem::Res).collect()),
            Repr::LocalIntegers { pk, .. } => Ok((0..*pk).map(Elem::Res).collect()),
            Repr::ExtField { p, modulus } => {
                let e = modulus.len() - 1;
                let mut out = Vec::with_capacity(order as usize);
                let mut digits = vec![0u64; e];
                loop {
                    out.push(Elem::Poly(digits.clone()));
                    let mut i = 0;
                    loop {
                        if i == e {
                            return Ok(out);
                        }
                        digits[i] += 1;
                        if digits[i] < *p {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
        }
    }

    /// The non-units, in canonical order (finite rings only).
    pub fn nonunits(&self) -> Result<Vec<Elem>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| !self.is_unit(x))
            .collect())
    }
}

// residue helpers -----------------------------------------------------------

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` via extended Euclid; `None` when not coprime.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

// polynomial helpers over F_p ------------------------------------------------

fn poly_mul_mod(a: &[u64], b: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    // Reduce by the monic modulus from the top down.
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &mj) in modulus.iter().enumerate().take(e) {
            let t = mul_mod(c, mj, p);
            prod[i - e + j] = add_mod(prod[i - e + j], neg_mod(t, p), p);
        }
    }
    prod.truncate(e);
    prod
}

fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic-after-normalization `b` (both dense, over F_p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient must be a unit");
    let mut r = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        for j in 0..=db {
            let t = mul_mod(c, b[j], p);
            r[dr - db + j] = add_mod(r[dr - db + j], neg_mod(t, p), p);
        }
    }
    r
}

/// Inverse of `a` in `F_p[x]/(modulus)` via extended Euclid.
fn poly_inv_mod(a: &[u64], p: u64, modulus: &[u64]) -> Option<Vec<u64>> {
    let e = modulus.len() - 1;
    poly_degree(a)?;
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
    while poly_degree(&r1).is_some() {
        // r0 = q*r1 + r2; track s alongside.
        let d1 = poly_degree(&r1).unwrap();
        let lead_inv = inv_mod(r1[d1], p).unwrap();
        let mut q = vec![0u64; r0.len().max(1)];
        let mut rem = r0.clone();
        while let Some(dr) = poly_degree(&rem) {
            if dr < d1 {
                break;
            }
            let c = mul_mod(rem[dr], lead_inv, p);
            q[dr - d1] = add_mod(q[dr - d1], c, p);
            for j in 0..=d1 {
                let t = mul_mod(c, r1[j], p);
                rem[dr - d1 + j] = add_mod(rem[dr - d1 + j], neg_mod(t, p), p);
            }
        }
        let s2 = poly_sub_scaled(&s0, &q, &s1, p);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s2);
    }
    // gcd is the constant r0; it must be nonzero of degree 0.
    let d0 = poly_degree(&r0)?;
    if d0 != 0 {
        return None;
    }
    let scale = inv_mod(r0[0], p)?;
    let mut out = vec![0u64; e];
    let reduced = poly_rem(&s0, modulus, p);
    for (i, &c) in reduced.iter().enumerate().take(e) {
        out[i] = mul_mod(c, scale, p);
    }
    Some(out)
}

/// `s0 - q * s1` over `F_p[x]`.
fn poly_sub_scaled(s0: &[u64], q: &[u64], s1: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; s0.len().max(q.len() + s1.len())];
    out[..s0.len()].copy_from_slice(s0);
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        for (j, &sj) in s1.iter().enumerate() {
            let t = mul_mod(qi, sj, p);
            out[i + j] = add_mod(out[i + j], neg_mod(t, p), p);
        }
    }
    out
}

/// Search for a monic factor of degree 1..=deg/2; `None` means irreducible.
fn find_monic_factor(p: u64, modulus: &[u64]) -> Option<Vec<u64>> {
    let deg = modulus.len() - 1;
    // Linear factors: roots in F_p.
    for r in 0..p {
        let mut acc = 0u64;
        for &c in modulus.iter().rev() {
            acc = add_mod(mul_mod(acc, r, p), c, p);
        }
        if acc == 0 {
            return Some(vec![neg_mod(r, p), 1]);
        }
    }
    // Quadratic factors only matter for degree 4.
    if deg >= 4 {
        for c0 in 0..p {
            for c1 in 0..p {
                let cand = vec![c0, c1, 1];
                let rem = poly_rem(modulus, &cand, p);
                if poly_degree(&rem).is_none() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
