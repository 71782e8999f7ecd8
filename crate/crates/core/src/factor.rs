//! Factorization of `x^n - alpha_0` over a chain ring, `gcd(n, p) = 1`.
//!
//! The binomial is factored over the residue field by distinct-degree
//! splitting followed by trial division, and the residue factors are lifted
//! one `gamma`-adic digit at a time.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::ring::{Ring, RingElem};

/// Monic, basic irreducible, pairwise coprime factors of `x^n - alpha_0`,
/// in canonical order (`x - 1` first when present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub base: Poly,
    pub factors: Vec<Poly>,
}

impl Factorization {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|f| f.degree().finite().unwrap_or(0))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of all factors; equals `base`.
    pub fn product(&self) -> Poly {
        let ring = self.base.ring();
        self.factors
            .iter()
            .fold(Poly::one(ring), |acc, f| acc.mul_unchecked(f))
    }
}

fn is_x_minus_one(f: &Poly) -> bool {
    let ring = f.ring();
    f.degree() == Degree::Finite(1) && f.is_monic() && f.coeff(0) == ring.neg(ring.one())
}

/// Canonical factor order: `x - 1` first, then by degree, then by the
/// residue coefficients from the leading term down.
pub fn canonical_order(a: &Poly, b: &Poly) -> Ordering {
    let (pa, pb) = (a.project(), b.project());
    is_x_minus_one(&pb)
        .cmp(&is_x_minus_one(&pa))
        .then_with(|| pa.cmp_canonical(&pb))
}

/// Irreducible monic factors of `x^n - abar` over the field `field`.
pub fn factor_residue(field: &Arc<Ring>, n: usize, abar: RingElem) -> Result<Vec<Poly>> {
    if !field.is_field() {
        return Err(Error::InvalidParameter(format!("{} is not a field", field.spec())));
    }
    if n == 0 || n as u64 % field.p() == 0 {
        return Err(Error::InvalidParameter(format!(
            "x^n - a needs gcd(n, p) = 1, got n = {n}, p = {}",
            field.p()
        )));
    }
    if abar.is_zero() {
        return Err(Error::InvalidParameter("x^n - 0 is not square-free".into()));
    }
    let q = field.residue_order();
    let x = Poly::x(field);
    let mut rest = Poly::binomial(field, n, abar);
    let mut factors = Vec::new();
    let mut frob = x.clone();
    let mut d = 0;
    loop {
        d += 1;
        let deg = rest.degree().finite().unwrap_or(0);
        if deg == 0 {
            break;
        }
        if deg < 2 * d {
            factors.push(rest.clone());
            break;
        }
        // product of the degree-d irreducible factors of `rest`
        frob = frob.pow_mod(q, &rest)?;
        let part = rest.gcd(&frob.sub_unchecked(&x))?;
        let part_deg = part.degree().finite().unwrap_or(0);
        if part_deg == 0 {
            continue;
        }
        rest = rest.divmod_monic(&part)?.0;
        frob = frob.div_rem(&rest)?.1;
        split_equal_degree(part, d, &mut factors)?;
    }
    factors.sort_by(canonical_order);
    Ok(factors)
}

/// Splits a product of distinct degree-`d` irreducibles by trial division
/// over monic degree-`d` candidates in index order.
fn split_equal_degree(mut part: Poly, d: usize, out: &mut Vec<Poly>) -> Result<()> {
    let field = Arc::clone(part.ring());
    let q = field.residue_order();
    let mut counter = vec![0u64; d];
    while part.degree().finite().unwrap_or(0) > d {
        let mut coeffs: Vec<RingElem> = counter
            .iter()
            .map(|&c| field.elem(c as u32))
            .collect::<Result<_>>()?;
        coeffs.push(field.one());
        let cand = Poly::new(&field, coeffs);
        let (quot, rem) = part.divmod_monic(&cand)?;
        if rem.is_zero() {
            out.push(cand);
            part = quot;
        }
        // advance the candidate; c_0 varies fastest
        let mut pos = 0;
        loop {
            if pos == d {
                return Err(Error::InvalidParameter(
                    "equal-degree split ran out of candidates".into(),
                ));
            }
            counter[pos] += 1;
            if counter[pos] < q {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
    if part.degree() == Degree::Finite(d) {
        out.push(part);
    }
    Ok(())
}

/// Lifts a factorization of `target mod gamma` into monic factors of
/// `target` itself. `target` must be monic and the residue factors monic and
/// pairwise coprime with product `target mod gamma`.
pub fn hensel_lift(target: &Poly, residue_factors: &[Poly]) -> Result<Vec<Poly>> {
    let ring = Arc::clone(target.ring());
    if !target.is_monic() {
        return Err(Error::NotMonic);
    }
    for (i, a) in residue_factors.iter().enumerate() {
        if !a.is_monic() {
            return Err(Error::NotMonic);
        }
        for b in &residue_factors[i + 1..] {
            if a.gcd(b)?.degree() != Degree::Finite(0) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let field = ring.residue_field();
    let product = residue_factors
        .iter()
        .fold(Poly::one(&field), |acc, f| acc.mul_unchecked(f));
    if product != target.project() {
        return Err(Error::InvalidParameter(
            "residue factors do not multiply to the target modulo gamma".into(),
        ));
    }

    let mut lifted = Vec::with_capacity(residue_factors.len());
    let mut current = target.clone();
    for (i, g) in residue_factors.iter().enumerate() {
        if i + 1 == residue_factors.len() {
            lifted.push(current.clone());
            break;
        }
        let h = residue_factors[i + 1..]
            .iter()
            .fold(Poly::one(&field), |acc, f| acc.mul_unchecked(f));
        let (big_g, big_h) = lift_pair(&current, g, &h)?;
        lifted.push(big_g);
        current = big_h;
    }
    Ok(lifted)
}

/// Linear lifting of `target = g h (mod gamma)` to `target = G H` exactly.
fn lift_pair(target: &Poly, g: &Poly, h: &Poly) -> Result<(Poly, Poly)> {
    let ring = Arc::clone(target.ring());
    let (one, _, t) = g.ext_gcd(h)?;
    if one.degree() != Degree::Finite(0) {
        return Err(Error::NotCoprime);
    }
    let mut big_g = Poly::lift_residue(g, &ring);
    let mut big_h = Poly::lift_residue(h, &ring);
    for k in 1..ring.e() {
        let err = target.sub_unchecked(&big_g.mul_unchecked(&big_h));
        if err.is_zero() {
            break;
        }
        let scaled: Vec<RingElem> = err
            .coeffs()
            .iter()
            .map(|&c| ring.div_gamma_pow(c, k))
            .collect::<Result<_>>()?;
        let ebar = Poly::new(&ring, scaled).project();
        // b h + a g = ebar with deg b < deg g
        let b = t.mul_unchecked(&ebar).divmod_monic(g)?.1;
        let (a, rem) = ebar.sub_unchecked(&b.mul_unchecked(h)).divmod_monic(g)?;
        debug_assert!(rem.is_zero());
        let gk = ring.gamma_pow(k);
        big_g = big_g.add_unchecked(&Poly::lift_residue(&b, &ring).scale(gk));
        big_h = big_h.add_unchecked(&Poly::lift_residue(&a, &ring).scale(gk));
    }
    if big_g.mul_unchecked(&big_h) != *target {
        return Err(Error::InvalidParameter("Hensel lifting did not converge".into()));
    }
    Ok((big_g, big_h))
}

/// Factors `x^n - alpha_0` over `ring` (`alpha_0` a nonzero Teichmuller
/// element, `gcd(n, p) = 1`).
pub fn factor_binomial(ring: &Arc<Ring>, n: usize, alpha0: RingElem) -> Result<Factorization> {
    if alpha0.is_zero() || !ring.is_teichmuller(alpha0) {
        return Err(Error::NotTeichmuller(ring.format_elem(alpha0)));
    }
    let field = ring.residue_field();
    let residue = factor_residue(&field, n, ring.project(alpha0))?;
    let base = Poly::binomial(ring, n, alpha0);
    let mut factors = hensel_lift(&base, &residue)?;
    factors.sort_by(canonical_order);
    Ok(Factorization { base, factors })
}

/// How `beta` in `lambda = alpha + gamma beta` behaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BetaKind {
    Unit,
    Zero,
    NonUnit,
}

impl fmt::Display for BetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaKind::Unit => "unit",
            BetaKind::Zero => "zero",
            BetaKind::NonUnit => "non-unit",
        })
    }
}

/// `lambda = alpha + gamma beta` together with `N = n p^s` and the
/// Teichmuller root `alpha_0^(p^s) = alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSplit {
    pub lambda: RingElem,
    pub alpha: RingElem,
    pub beta: RingElem,
    pub beta_kind: BetaKind,
    pub alpha0: RingElem,
    pub n: usize,
    pub s: u32,
}

impl LambdaSplit {
    /// `p^s`.
    pub fn p_pow_s(&self, ring: &Ring) -> usize {
        ring.p().pow(self.s) as usize
    }
}

pub fn teichmuller_base_root(ring: &Ring, lambda: RingElem, length: usize) -> Result<LambdaSplit> {
    if !ring.is_unit(lambda) {
        return Err(Error::NotUnit(ring.format_elem(lambda)));
    }
    if length == 0 {
        return Err(Error::InvalidParameter("code length must be at least 1".into()));
    }
    let p = ring.p() as usize;
    let (mut n, mut s) = (length, 0u32);
    while n % p == 0 {
        n /= p;
        s += 1;
    }
    let alpha = ring.teichmuller_decompose(lambda)[0];
    let rest = ring.sub(lambda, alpha);
    let beta = ring.div_gamma_pow(rest, 1)?;
    let beta_kind = match ring.valuation(rest) {
        v if v >= ring.e() => BetaKind::Zero,
        1 => BetaKind::Unit,
        _ => BetaKind::NonUnit,
    };
    let beta = if beta_kind == BetaKind::Zero { ring.zero() } else { beta };
    let alpha0 = ring.teichmuller_root(alpha, s)?;
    Ok(LambdaSplit {
        lambda,
        alpha,
        beta,
        beta_kind,
        alpha0,
        n,
        s,
    })
}
