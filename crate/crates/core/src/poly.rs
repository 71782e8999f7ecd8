//! Dense univariate polynomials over a [`Ring`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial with ascending coefficients; trailing zeros are never stored.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    coeffs: Vec<RingElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs == other.coeffs && *self.ring == *other.ring
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring, self)
    }
}

impl Poly {
    pub fn new(ring: &Arc<Ring>, mut coeffs: Vec<RingElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            ring: Arc::clone(ring),
            coeffs,
        }
    }

    pub fn from_ints(ring: &Arc<Ring>, coeffs: &[i64]) -> Poly {
        Poly::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly::new(ring, Vec::new())
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, ring.one())
    }

    pub fn constant(ring: &Arc<Ring>, c: RingElem) -> Poly {
        Poly::new(ring, vec![c])
    }

    pub fn x(ring: &Arc<Ring>) -> Poly {
        Poly::monomial(ring, ring.one(), 1)
    }

    pub fn monomial(ring: &Arc<Ring>, c: RingElem, degree: usize) -> Poly {
        let mut coeffs = vec![ring.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(ring, coeffs)
    }

    /// `x^n - c`.
    pub fn binomial(ring: &Arc<Ring>, n: usize, c: RingElem) -> Poly {
        let mut coeffs = vec![ring.zero(); n + 1];
        coeffs[n] = ring.one();
        coeffs[0] = ring.sub(coeffs[0], c);
        Poly::new(ring, coeffs)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// The first `n` coefficients, zero-padded.
    pub fn to_vector(&self, n: usize) -> Vec<RingElem> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<RingElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.ring.one())
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(r, (0..n).map(|i| r.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(r, (0..n).map(|i| r.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        Poly::new(r, out)
    }

    pub fn neg(&self) -> Poly {
        let r = &self.ring;
        Poly::new(r, self.coeffs.iter().map(|&c| r.neg(c)).collect())
    }

    pub fn scale(&self, c: RingElem) -> Poly {
        let r = &self.ring;
        Poly::new(r, self.coeffs.iter().map(|&a| r.mul(a, c)).collect())
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Division by a monic polynomial: `(q, r)` with `self = q b + r`,
    /// `deg r < deg b`.
    pub fn divmod_monic(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_ring(b)?;
        if !b.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(self.divmod_by_unit_lead(b, self.ring.one()))
    }

    /// Division by a polynomial whose leading coefficient is a unit.
    pub fn div_rem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_ring(b)?;
        let lead = b
            .leading()
            .ok_or_else(|| Error::InvalidParameter("division by the zero polynomial".into()))?;
        let inv = self.ring.inverse(lead)?;
        Ok(self.divmod_by_unit_lead(b, inv))
    }

    fn divmod_by_unit_lead(&self, b: &Poly, lead_inv: RingElem) -> (Poly, Poly) {
        let r = &self.ring;
        let db = b.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(r), self.clone());
        }
        let mut quot = vec![r.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = r.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - db] = c;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = r.sub(rem[idx], r.mul(c, bi));
            }
        }
        rem.truncate(db);
        (Poly::new(r, quot), Poly::new(r, rem))
    }

    /// Remainder modulo `x^n - lambda`: the representative of degree `< n`.
    pub fn reduce_constacyclic(&self, n: usize, lambda: RingElem) -> Poly {
        let r = &self.ring;
        let mut out = vec![r.zero(); n.min(self.coeffs.len())];
        let mut factor = r.one();
        for (block, chunk) in self.coeffs.chunks(n).enumerate() {
            if block > 0 {
                factor = r.mul(factor, lambda);
            }
            for (i, &c) in chunk.iter().enumerate() {
                out[i] = r.add(out[i], r.mul(c, factor));
            }
        }
        Poly::new(r, out)
    }

    /// Product in `R[x]/<x^n - lambda>`.
    pub fn mul_mod(&self, other: &Poly, n: usize, lambda: RingElem) -> Result<Poly> {
        self.same_ring(other)?;
        if !self.ring.is_unit(lambda) {
            return Err(Error::NotUnit(self.ring.format_elem(lambda)));
        }
        Ok(self.mul_unchecked(other).reduce_constacyclic(n, lambda))
    }

    /// Coefficientwise reduction into the residue field.
    pub fn project(&self) -> Poly {
        let field = self.ring.residue_field();
        let coeffs = self.coeffs.iter().map(|&c| self.ring.project(c)).collect();
        Poly::new(&field, coeffs)
    }

    /// Coefficientwise [`Ring::lift_residue`] of a residue-field polynomial.
    pub fn lift_residue(field_poly: &Poly, ring: &Arc<Ring>) -> Poly {
        let coeffs = field_poly
            .coeffs
            .iter()
            .map(|&c| ring.lift_residue(c))
            .collect();
        Poly::new(ring, coeffs)
    }

    /// Scales by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lead) => Ok(self.scale(self.ring.inverse(lead)?)),
        }
    }

    /// Canonical ordering key of a field polynomial: degree first, then
    /// coefficients compared from the leading term down.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Human-readable form, highest degree first, e.g. `x^3 + 2x^2 + x + 3`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Polynomial algorithms that need the coefficient ring to be a field.
impl Poly {
    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{} is not a field",
                self.ring.spec()
            )))
        }
    }

    /// Monic greatest common divisor over a field.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        self.require_field()?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended Euclid over a field: `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_ring(other)?;
        self.require_field()?;
        let ring = &self.ring;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ring), Poly::zero(ring));
        let (mut t0, mut t1) = (Poly::zero(ring), Poly::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub_unchecked(&q.mul_unchecked(&s1));
            let t = t0.sub_unchecked(&q.mul_unchecked(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(lead) => {
                let inv = ring.inverse(lead)?;
                Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
            }
        }
    }

    /// `self^exp mod modulus` (modulus with unit leading coefficient).
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.ring).div_rem(modulus)?.1;
        let mut base = self.div_rem(modulus)?.1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base).div_rem(modulus)?.1;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base).div_rem(modulus)?.1;
            }
        }
        Ok(acc)
    }

    /// Rabin irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> Result<bool> {
        self.require_field()?;
        let d = match self.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Ok(false),
        };
        if d == 1 {
            return Ok(true);
        }
        let q = self.ring.residue_order();
        let x = Poly::x(&self.ring);
        let mut frob = x.clone();
        for i in 1..=d {
            frob = frob.pow_mod(q, self)?;
            if i <= d / 2 && !self.gcd(&frob.sub_unchecked(&x))?.degree().eq(&Degree::Finite(0)) {
                return Ok(false);
            }
        }
        Ok(frob == x.div_rem(self)?.1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let r = &self.ring;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if c == r.one() && i > 0 {
                String::new()
            } else {
                r.format_elem(c)
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_mod_negacyclic_example() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let one_minus_x = Poly::from_ints(&z4, &[1, -1]);
        let c = Poly::from_ints(&z4, &[0, 1, 2, 3]);
        let prod = one_minus_x.mul_mod(&c, 4, z4.from_int(-1)).unwrap();
        assert_eq!(prod, Poly::from_ints(&z4, &[3, 1, 1, 1]));
        let one = Poly::one(&z4);
        assert_eq!(one.mul_mod(&c, 4, z4.from_int(3)).unwrap(), c);
    }

    #[test]
    fn divmod_monic_examples() {
        let z9 = Ring::parse("GR(9,1)").unwrap();
        let f = Poly::from_ints(&z9, &[-8, 0, 1]);
        let (q, r) = f.divmod_monic(&f).unwrap();
        assert_eq!(q, Poly::one(&z9));
        assert!(r.is_zero());
        let not_monic = Poly::from_ints(&z9, &[1, 3]);
        assert_eq!(f.divmod_monic(&not_monic), Err(Error::NotMonic));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let z9 = Ring::parse("GR(9,1)").unwrap();
        let a = Poly::one(&z4);
        let b = Poly::one(&z9);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(_, _))));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn zero_degree_marker() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let zero = Poly::zero(&z4);
        assert_eq!(zero.degree(), Degree::NegInfinity);
        assert!(zero.degree() < Poly::one(&z4).degree());
        assert_eq!(Poly::from_ints(&z4, &[0, 0, 4]).degree(), Degree::NegInfinity);
    }

    #[test]
    fn display() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let p = Poly::from_ints(&z4, &[3, 1, 2, 1]);
        assert_eq!(p.to_string(), "x^3 + 2x^2 + x + 3");
    }

    #[test]
    fn irreducibility_over_extension_field() {
        let f4 = Ring::parse("F(4)").unwrap();
        // x^2 + x + 1 splits over F_4
        assert!(!Poly::from_ints(&f4, &[1, 1, 1]).is_irreducible().unwrap());
        let w = f4.zeta();
        // x^2 + x + w has no root in F_4
        let p = Poly::new(&f4, vec![w, f4.one(), f4.one()]);
        let has_root = f4.elements().any(|a| {
            let v = f4.add(f4.add(f4.mul(a, a), a), w);
            v.is_zero()
        });
        assert_eq!(p.is_irreducible().unwrap(), !has_root);
    }

    #[test]
    fn ext_gcd_identity() {
        let f3 = Ring::parse("F(3)").unwrap();
        let a = Poly::from_ints(&f3, &[1, 0, 1]);
        let b = Poly::from_ints(&f3, &[1, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, Poly::one(&f3));
        assert_eq!(s.mul(&a).unwrap().add(&t.mul(&b).unwrap()).unwrap(), g);
    }
}
