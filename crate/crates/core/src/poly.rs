//! Sparse two-variable Laurent polynomials in `v` and `z` over ℤ or GF(2).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Coefficient ring of a [`LaurentPoly2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integer,
    Gf2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {0:?} vs {1:?}")]
    RingMismatch(Ring, Ring),
    #[error("the zero polynomial has no breadth")]
    ZeroPolynomial,
    #[error("division by z is not exact: term v^{v}*z^{z} has the wrong z-parity for a link polynomial")]
    InexactDivision { v: i32, z: i32 },
    #[error("cannot parse polynomial near `{token}`")]
    Parse { token: String },
}

/// Exponent pair `(v, z)`.
pub type Exponent = (i32, i32);

/// Exact sparse Laurent polynomial. No zero coefficient is ever stored, and
/// GF(2) polynomials store every surviving coefficient as `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    ring: Ring,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly2 {
    pub fn zero(ring: Ring) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::monomial(ring, 1, 0, 0)
    }

    pub fn monomial(ring: Ring, coeff: i64, v: i32, z: i32) -> Self {
        let mut p = Self::zero(ring);
        p.add_term((v, z), BigInt::from(coeff));
        p
    }

    /// Builds a polynomial from `(coeff, v-exponent, z-exponent)` triples,
    /// merging repeated exponents.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i32, i32)>,
    {
        let mut p = Self::zero(ring);
        for (c, i, j) in terms {
            p.add_term((i, j), BigInt::from(c));
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, v: i32, z: i32) -> BigInt {
        self.terms.get(&(v, z)).cloned().unwrap_or_default()
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        match self.ring {
            Ring::Integer => c,
            Ring::Gf2 => {
                if (&c % 2u32).is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        let merged = std::mem::take(slot);
        let merged = self.normalize(merged);
        if merged.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, merged);
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ring);
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &other.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        Ok(out)
    }

    /// `self += coeff * v^dv * z^dz * other`, the inner step of the skein
    /// recursions.
    pub fn add_scaled(&mut self, other: &Self, coeff: i64, dv: i32, dz: i32) {
        assert_eq!(self.ring, other.ring, "ring mismatch in add_scaled");
        for (&(a, b), c) in &other.terms {
            self.add_term((a + dv, b + dz), c * coeff);
        }
    }

    /// Multiplies by the monomial `coeff * v^dv * z^dz`.
    pub fn mul_monomial(&self, coeff: i64, dv: i32, dz: i32) -> Self {
        let mut out = Self::zero(self.ring);
        out.add_scaled(self, coeff, dv, dz);
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.ring);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Reduces integer coefficients mod 2; a term survives iff its
    /// coefficient is odd.
    pub fn reduce_mod2(&self) -> Self {
        let mut out = Self::zero(Ring::Gf2);
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn min_v(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.0).min()
    }

    pub fn max_v(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn min_z(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.1).min()
    }

    pub fn max_z(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Span of the `v`-exponents.
    pub fn breadth_v(&self) -> Result<i32, PolyError> {
        match (self.min_v(), self.max_v()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(PolyError::ZeroPolynomial),
        }
    }

    fn map_exponents(&self, f: impl Fn(i32, i32) -> (i32, i32), sign: impl Fn(i32, i32) -> bool) -> Self {
        let mut out = Self::zero(self.ring);
        for (&(i, j), c) in &self.terms {
            let c = if sign(i, j) { -c.clone() } else { c.clone() };
            out.add_term(f(i, j), c);
        }
        out
    }

    /// `v ↦ v^{-2}`, `z ↦ z²`.
    pub fn substitute_sq(&self) -> Self {
        self.map_exponents(|i, j| (-2 * i, 2 * j), |_, _| false)
    }

    /// `v ↦ v^{-1}`.
    pub fn invert_v(&self) -> Self {
        self.map_exponents(|i, j| (-i, j), |_, _| false)
    }

    /// `v ↦ -v^{-1}`; the HOMFLY-PT polynomial of a mirror image.
    pub fn mirror_homfly(&self) -> Self {
        self.map_exponents(|i, j| (-i, j), |i, _| i.rem_euclid(2) == 1)
    }

    /// Multiplies by `(v^{-1} - v)/z`.
    ///
    /// A HOMFLY-PT polynomial of an `n`-component link only has `z`-exponents
    /// congruent to `n - 1` mod 2; input mixing both parities cannot come from
    /// a link and is rejected as an inexact division.
    pub fn mul_delta_prefactor(&self) -> Result<Self, PolyError> {
        if let Some(&(_, z0)) = self.terms.keys().next() {
            if let Some(&(v, z)) = self.terms.keys().find(|e| (e.1 - z0).rem_euclid(2) != 0) {
                return Err(PolyError::InexactDivision { v, z });
            }
        }
        let numerator = self.try_mul(&Self::from_terms(self.ring, [(1, -1, 0), (-1, 1, 0)]))?;
        Ok(numerator.mul_monomial(1, 0, -1))
    }

    /// Multiplies by `1 + (v^{-2} + v^2)/z^2`.
    pub fn mul_annulus_factor(&self) -> Self {
        let factor = Self::from_terms(self.ring, [(1, 0, 0), (1, -2, -2), (1, 2, -2)]);
        self * &factor
    }

    /// Parses the text form produced by `Display` into the given ring.
    pub fn parse_in(ring: Ring, text: &str) -> Result<Self, PolyError> {
        parse_poly(ring, text)
    }

    /// Evaluates at complex `(v, z)`, given as `(re, im)` pairs. Used for
    /// numeric cross-checks only.
    pub fn eval_complex(&self, v: (f64, f64), z: (f64, f64)) -> (f64, f64) {
        fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
            (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
        }
        fn cpow(a: (f64, f64), n: i32) -> (f64, f64) {
            let base = if n < 0 {
                let d = a.0 * a.0 + a.1 * a.1;
                (a.0 / d, -a.1 / d)
            } else {
                a
            };
            let mut out = (1.0, 0.0);
            for _ in 0..n.unsigned_abs() {
                out = cmul(out, base);
            }
            out
        }
        let mut acc = (0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            let t = cmul(cpow(v, i), cpow(z, j));
            acc.0 += c * t.0;
            acc.1 += c * t.1;
        }
        acc
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: Self) -> LaurentPoly2 {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: Self) -> LaurentPoly2 {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: Self) -> LaurentPoly2 {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero(self.ring);
        for (e, c) in &self.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $f(self, rhs: Self) -> LaurentPoly2 {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_monomial(i: i32, j: i32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("v", i), ("z", j)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(i, j);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.ring, self)
    }
}

fn parse_poly(ring: Ring, text: &str) -> Result<LaurentPoly2, PolyError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |t: &str| PolyError::Parse { token: t.to_string() };
    if compact.is_empty() {
        return Err(err(text));
    }
    let mut out = LaurentPoly2::zero(ring);
    // Split into signed terms; a '-' right after '^' belongs to an exponent.
    let bytes = compact.as_bytes();
    let mut start = 0;
    let mut pieces = Vec::new();
    for k in 1..bytes.len() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^' {
            pieces.push(&compact[start..k]);
            start = k;
        }
    }
    pieces.push(&compact[start..]);
    for piece in pieces {
        let (neg, body) = match piece.as_bytes().first() {
            Some(b'-') => (true, &piece[1..]),
            Some(b'+') => (false, &piece[1..]),
            _ => (false, piece),
        };
        if body.is_empty() {
            return Err(err(piece));
        }
        let mut coeff = BigInt::one();
        let (mut i, mut j) = (0, 0);
        for factor in body.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<i32>().map_err(|_| err(factor))?),
                None => (factor, 1),
            };
            match name {
                "v" => i += exp,
                "z" => j += exp,
                _ => {
                    if factor.contains('^') {
                        return Err(err(factor));
                    }
                    coeff *= BigInt::from_str(factor).map_err(|_| err(factor))?;
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term((i, j), coeff);
    }
    Ok(out)
}

impl FromStr for LaurentPoly2 {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(Ring::Integer, s)
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
