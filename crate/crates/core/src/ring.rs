//! Finite commutative chain rings of three supported shapes and their
//! residue fields.
//!
//! * Galois rings `GR(p^e, m) = Z_{p^e}[x]/(h(x))`, maximal ideal `<p>`.
//! * Truncated rings `F_q[u]/(u^e)`, maximal ideal `<u>`.
//! * Finite fields `F_{p^m}`, the `e = 1` case of both.
//!
//! Elements are [`RingElem`] handles: a canonical coordinate vector packed
//! into a mixed-radix index. A handle only means something together with the
//! [`Ring`] that produced it. Small rings carry precomputed addition and
//! multiplication tables; the tables are built once in [`Ring::new`] and are
//! read-only afterwards.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp;

/// Largest ring order accepted. Keeps element indices in `u32`.
pub const MAX_RING_ORDER: u64 = 1 << 31;

const TABLE_LIMIT: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GaloisRing,
    TruncatedFieldRing,
    FiniteField,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GaloisRing => "GALOIS_RING",
            Family::TruncatedFieldRing => "TRUNCATED_FIELD_RING",
            Family::FiniteField => "FINITE_FIELD",
        })
    }
}

/// Validated description of a supported chain ring.
///
/// `modulus` is the monic degree-`m` polynomial (ascending coefficients)
/// defining the extension: over `Z_{p^e}` for Galois rings, over `F_p` for
/// truncated rings and fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub family: Family,
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl RingSpec {
    /// Parses `GR(q,m)`, `FU(q,e)` or `F(q)` with an optional
    /// `;mod=[c0,c1,...,1]` suffix.
    pub fn parse(text: &str) -> Result<RingSpec> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, modulus) = match compact.split_once(';') {
            Some((head, tail)) => {
                let list = tail
                    .strip_prefix("mod=")
                    .ok_or_else(|| Error::Parse(format!("unknown ring option `{tail}`")))?;
                (head.to_string(), Some(parse_int_list(list)?))
            }
            None => (compact, None),
        };
        let open = head
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected NAME(args) in `{head}`")))?;
        let name = &head[..open];
        let args = head[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing `)` in `{head}`")))?;
        let args: Vec<u64> = args
            .split(',')
            .map(|a| {
                a.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad integer `{a}` in `{head}`")))
            })
            .collect::<Result<_>>()?;

        let (family, p, e, m) = match (name, args.as_slice()) {
            ("GR", [q, m]) => {
                let (p, e) = prime_power(*q)?;
                (Family::GaloisRing, p, e, as_u32(*m, "m")?)
            }
            ("FU", [q, e]) => {
                let (p, m) = prime_power(*q)?;
                (Family::TruncatedFieldRing, p, as_u32(*e, "e")?, m)
            }
            ("F", [q]) => {
                let (p, m) = prime_power(*q)?;
                (Family::FiniteField, p, 1, m)
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unsupported ring `{head}`; expected GR(q,m), FU(q,e) or F(q)"
                )))
            }
        };
        if e < 1 || m < 1 {
            return Err(Error::InvalidParameter(format!(
                "need e >= 1 and m >= 1, got e = {e}, m = {m}"
            )));
        }
        let family = if e == 1 { Family::FiniteField } else { family };
        RingSpec::with_modulus(family, p, e, m, modulus)
    }

    /// Builds a spec from parts, validating the modulus or choosing the
    /// default one when `modulus` is `None`.
    pub fn with_modulus(
        family: Family,
        p: u64,
        e: u32,
        m: u32,
        modulus: Option<Vec<i64>>,
    ) -> Result<RingSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrimePower(p));
        }
        if e < 1 || m < 1 {
            return Err(Error::InvalidParameter(format!(
                "need e >= 1 and m >= 1, got e = {e}, m = {m}"
            )));
        }
        let order = (p as u128).checked_pow(m * e);
        if order.map_or(true, |o| o > MAX_RING_ORDER as u128) {
            return Err(Error::InvalidParameter(format!(
                "ring order p^(m e) = {p}^{} exceeds {MAX_RING_ORDER}",
                m * e
            )));
        }
        let family = if e == 1 { Family::FiniteField } else { family };
        let coeff_modulus = match family {
            Family::GaloisRing => p.pow(e),
            _ => p,
        };
        let modulus = match modulus {
            None => fp::default_modulus(p, m),
            Some(raw) => {
                if raw.len() != m as usize + 1 {
                    return Err(Error::InvalidParameter(format!(
                        "modulus must have degree {m} ({} coefficients), got {}",
                        m + 1,
                        raw.len()
                    )));
                }
                let reduced: Vec<u64> = raw
                    .iter()
                    .map(|&c| c.rem_euclid(coeff_modulus as i64) as u64)
                    .collect();
                if reduced[m as usize] != 1 {
                    return Err(Error::InvalidParameter("modulus must be monic".into()));
                }
                let projected: Vec<u64> = reduced.iter().map(|c| c % p).collect();
                if !fp::is_irreducible(&projected, p) {
                    return Err(Error::ReducibleModulus(format!("{raw:?}")));
                }
                reduced
            }
        };
        Ok(RingSpec {
            family,
            p,
            e,
            m,
            modulus,
        })
    }

    /// `p^m`, the order of the residue field.
    pub fn residue_order(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `p^(m e)`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.m * self.e)
    }

    fn has_default_modulus(&self) -> bool {
        self.modulus == fp::default_modulus(self.p, self.m)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::GaloisRing => write!(f, "GR({},{})", self.p.pow(self.e), self.m)?,
            Family::TruncatedFieldRing => write!(f, "FU({},{})", self.residue_order(), self.e)?,
            Family::FiniteField => write!(f, "F({})", self.residue_order())?,
        }
        if !self.has_default_modulus() {
            let parts: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, ";mod=[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

fn as_u32(v: u64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{what} = {v} too large")))
}

fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [c0,c1,...] but got `{text}`")))?;
    inner
        .split(',')
        .map(|c| {
            c.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))
        })
        .collect()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, k))
}

/// Handle to an element of a [`Ring`]: the canonical coordinates packed
/// into one mixed-radix index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RingElem(pub(crate) u32);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

enum Arith {
    /// `Z_{pe}[x]/(modulus)`; coordinates are `m` residues mod `pe`.
    Galois {
        pe: u64,
        m: usize,
        modulus: Vec<u64>,
    },
    /// `F_q[u]/(u^e)`; coordinates are `e` residue-field indices.
    Truncated { field: Arc<Ring>, q: u64, e: usize },
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A constructed chain ring. Always used behind an [`Arc`].
pub struct Ring {
    spec: RingSpec,
    size: u64,
    arith: Arith,
    tables: Option<Tables>,
    residue: Option<Arc<Ring>>,
    valuations: Option<Vec<u8>>,
    gamma: RingElem,
    zeta: RingElem,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Ring {}

impl Ring {
    /// Parses a ring string and builds the ring.
    pub fn parse(text: &str) -> Result<Arc<Ring>> {
        Ring::new(RingSpec::parse(text)?)
    }

    pub fn new(spec: RingSpec) -> Result<Arc<Ring>> {
        let size = spec.order();
        let residue = if spec.e == 1 {
            None
        } else {
            let projected: Vec<i64> = spec.modulus.iter().map(|c| (c % spec.p) as i64).collect();
            let field = RingSpec::with_modulus(Family::FiniteField, spec.p, 1, spec.m, Some(projected))?;
            Some(Ring::new(field)?)
        };
        let arith = match (&spec.family, &residue) {
            (Family::TruncatedFieldRing, Some(field)) => Arith::Truncated {
                field: Arc::clone(field),
                q: spec.residue_order(),
                e: spec.e as usize,
            },
            _ => Arith::Galois {
                pe: spec.p.pow(spec.e),
                m: spec.m as usize,
                modulus: spec.modulus.clone(),
            },
        };
        let mut ring = Ring {
            spec,
            size,
            arith,
            tables: None,
            residue,
            valuations: None,
            gamma: RingElem::ZERO,
            zeta: RingElem::ZERO,
        };
        if size <= TABLE_LIMIT {
            let n = size as u32;
            let mut add = Vec::with_capacity((size * size) as usize);
            let mut mul = Vec::with_capacity((size * size) as usize);
            for a in 0..n {
                for b in 0..n {
                    add.push(ring.raw_add(RingElem(a), RingElem(b)).0);
                    mul.push(ring.raw_mul(RingElem(a), RingElem(b)).0);
                }
            }
            let neg = (0..n).map(|a| ring.raw_neg(RingElem(a)).0).collect();
            ring.tables = Some(Tables { add, mul, neg });
            ring.valuations = Some((0..n).map(|a| ring.raw_valuation(RingElem(a)) as u8).collect());
        }
        ring.gamma = ring.compute_gamma();
        ring.zeta = ring.compute_zeta();
        Ok(Arc::new(ring))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    /// Nilpotency index of `gamma`.
    pub fn e(&self) -> u32 {
        self.spec.e
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Number of elements, `p^(m e)`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Order of the residue field, `p^m`.
    pub fn residue_order(&self) -> u64 {
        self.spec.residue_order()
    }

    pub fn is_field(&self) -> bool {
        self.spec.e == 1
    }

    /// The residue field `R / <gamma>`; a field is its own residue field.
    pub fn residue_field(self: &Arc<Self>) -> Arc<Ring> {
        match &self.residue {
            Some(f) => Arc::clone(f),
            None => Arc::clone(self),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.size as u32).map(RingElem)
    }

    pub fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    pub fn one(&self) -> RingElem {
        RingElem(1)
    }

    /// Generator of the maximal ideal (`p` or `u`; zero in a field).
    pub fn gamma(&self) -> RingElem {
        self.gamma
    }

    /// Canonical image of an integer.
    pub fn from_int(&self, value: i64) -> RingElem {
        match &self.arith {
            Arith::Galois { pe, .. } => RingElem(value.rem_euclid(*pe as i64) as u32),
            Arith::Truncated { field, .. } => RingElem(field.from_int(value).0),
        }
    }

    /// Checks that an index denotes an element of this ring.
    pub fn elem(&self, index: u32) -> Result<RingElem> {
        if (index as u64) < self.size {
            Ok(RingElem(index))
        } else {
            Err(Error::OutOfRange {
                index: index as i64,
                range: format!("[0, {})", self.size),
            })
        }
    }

    /// Canonical coordinates: `m` residues mod `p^e` (Galois rings, fields)
    /// or `e` residue-field indices (truncated rings).
    pub fn coords(&self, a: RingElem) -> Vec<u64> {
        let (radix, len) = self.radix();
        let mut idx = a.0 as u64;
        (0..len)
            .map(|_| {
                let c = idx % radix;
                idx /= radix;
                c
            })
            .collect()
    }

    /// Builds an element from coordinates, reducing each one canonically.
    pub fn from_coords(&self, coords: &[i64]) -> Result<RingElem> {
        let (radix, len) = self.radix();
        if coords.len() != len {
            return Err(Error::InvalidParameter(format!(
                "{} expects {len} coordinates, got {}",
                self.spec,
                coords.len()
            )));
        }
        Ok(self.pack(coords.iter().map(|&c| c.rem_euclid(radix as i64) as u64)))
    }

    fn radix(&self) -> (u64, usize) {
        match &self.arith {
            Arith::Galois { pe, m, .. } => (*pe, *m),
            Arith::Truncated { q, e, .. } => (*q, *e),
        }
    }

    fn pack(&self, coords: impl DoubleEndedIterator<Item = u64>) -> RingElem {
        let (radix, _) = self.radix();
        RingElem(coords.rev().fold(0u64, |acc, c| acc * radix + c) as u32)
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.add[(a.0 as u64 * self.size + b.0 as u64) as usize]),
            None => self.raw_add(a, b),
        }
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.neg[a.0 as usize]),
            None => self.raw_neg(a),
        }
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.mul[(a.0 as u64 * self.size + b.0 as u64) as usize]),
            None => self.raw_mul(a, b),
        }
    }

    pub fn pow(&self, a: RingElem, mut exp: u64) -> RingElem {
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `gamma^k`; zero once `k >= e`.
    pub fn gamma_pow(&self, k: u32) -> RingElem {
        if k >= self.e() {
            self.zero()
        } else {
            self.pow(self.gamma, k as u64)
        }
    }

    /// Largest `t` with `a` in `<gamma^t>`; `e` for zero.
    pub fn valuation(&self, a: RingElem) -> u32 {
        match &self.valuations {
            Some(v) => v[a.0 as usize] as u32,
            None => self.raw_valuation(a),
        }
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.valuation(a) == 0
    }

    pub fn inverse(&self, a: RingElem) -> Result<RingElem> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit(self.format_elem(a)));
        }
        if self.is_field() {
            return Ok(self.pow(a, self.residue_order() - 2));
        }
        let field = self.residue.as_ref().expect("non-field ring has a residue field");
        let approx = field.inverse(self.project(a))?;
        let mut x = self.lift_residue(approx);
        // Newton: the error 1 - a x lies in <gamma^k> and squares each round.
        let two = self.from_int(2);
        let mut precision = 1;
        while precision < self.e() {
            x = self.mul(x, self.sub(two, self.mul(a, x)));
            precision *= 2;
        }
        debug_assert_eq!(self.mul(a, x), self.one());
        Ok(x)
    }

    /// Some `b` with `gamma^k b = a`. Requires `valuation(a) >= k`; the
    /// result is determined modulo `<gamma^(e-k)>`.
    pub fn div_gamma_pow(&self, a: RingElem, k: u32) -> Result<RingElem> {
        if k == 0 {
            return Ok(a);
        }
        if self.valuation(a) < k {
            return Err(Error::InvalidParameter(format!(
                "{} is not divisible by gamma^{k}",
                self.format_elem(a)
            )));
        }
        let coords = self.coords(a);
        Ok(match &self.arith {
            Arith::Galois { .. } => {
                let div = self.p().pow(k);
                self.pack(coords.into_iter().map(|c| c / div))
            }
            Arith::Truncated { .. } => {
                let k = k as usize;
                let shifted: Vec<u64> = (0..coords.len())
                    .map(|i| coords.get(i + k).copied().unwrap_or(0))
                    .collect();
                self.pack(shifted.into_iter())
            }
        })
    }

    /// Reduction modulo `gamma` into the residue field.
    pub fn project(&self, a: RingElem) -> RingElem {
        match &self.arith {
            _ if self.is_field() => a,
            Arith::Galois { .. } => {
                let p = self.p();
                let coords = self.coords(a);
                let radix = p;
                RingElem(coords.iter().rev().fold(0u64, |acc, c| acc * radix + c % p) as u32)
            }
            Arith::Truncated { q, .. } => RingElem((a.0 as u64 % q) as u32),
        }
    }

    /// Section of [`Ring::project`]: the element whose coordinates are the
    /// residue-field coordinates taken as small integers (resp. the constant
    /// `u`-coordinate). Not multiplicative in general.
    pub fn lift_residue(&self, f: RingElem) -> RingElem {
        match &self.arith {
            _ if self.is_field() => f,
            Arith::Galois { .. } => {
                let p = self.p();
                let mut idx = f.0 as u64;
                let coords: Vec<u64> = (0..self.m())
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        c
                    })
                    .collect();
                self.pack(coords.into_iter())
            }
            Arith::Truncated { .. } => f,
        }
    }

    /// Representatives of `R / <gamma^k>`: exactly `p^(m k)` elements,
    /// starting with zero.
    pub fn transversal(&self, k: u32) -> Vec<RingElem> {
        let k = k.min(self.e());
        match &self.arith {
            Arith::Galois { pe, m, .. } => {
                let digit = self.p().pow(k);
                let count = digit.pow(*m as u32);
                (0..count)
                    .map(|mut i| {
                        let mut idx = 0u64;
                        let mut scale = 1u64;
                        for _ in 0..*m {
                            idx += (i % digit) * scale;
                            i /= digit;
                            scale *= pe;
                        }
                        RingElem(idx as u32)
                    })
                    .collect()
            }
            Arith::Truncated { q, .. } => (0..q.pow(k)).map(|i| RingElem(i as u32)).collect(),
        }
    }

    /// Multiplicative generator of the Teichmuller set, order `p^m - 1`.
    pub fn zeta(&self) -> RingElem {
        self.zeta
    }

    /// `{0, 1, zeta, ..., zeta^(p^m - 2)}`.
    pub fn teichmuller_set(&self) -> Vec<RingElem> {
        let mut out = vec![self.zero()];
        let mut x = self.one();
        for _ in 0..self.residue_order() - 1 {
            out.push(x);
            x = self.mul(x, self.zeta);
        }
        out
    }

    pub fn is_teichmuller(&self, a: RingElem) -> bool {
        self.pow(a, self.residue_order()) == a
    }

    /// The Teichmuller representative congruent to `a` modulo `gamma`,
    /// found as the fixed point of `a -> a^(p^m)`.
    pub fn teichmuller_lift(&self, a: RingElem) -> RingElem {
        let q = self.residue_order();
        let mut t = a;
        for _ in 0..=self.e() {
            let next = self.pow(t, q);
            if next == t {
                return t;
            }
            t = next;
        }
        debug_assert!(self.is_teichmuller(t));
        t
    }

    /// The unique `(r_0, ..., r_{e-1})` over the Teichmuller set with
    /// `a = r_0 + r_1 gamma + ... + r_{e-1} gamma^(e-1)`.
    pub fn teichmuller_decompose(&self, a: RingElem) -> Vec<RingElem> {
        let mut digits = Vec::with_capacity(self.e() as usize);
        let mut rest = a;
        for _ in 0..self.e() {
            let r = self.teichmuller_lift(rest);
            digits.push(r);
            let diff = self.sub(rest, r);
            rest = self
                .div_gamma_pow(diff, 1)
                .expect("a minus its Teichmuller lift lies in <gamma>");
        }
        digits
    }

    pub fn teichmuller_recompose(&self, digits: &[RingElem]) -> RingElem {
        digits
            .iter()
            .rev()
            .fold(self.zero(), |acc, &d| self.add(self.mul(acc, self.gamma), d))
    }

    /// The Teichmuller element `theta_0` with `theta_0^(p^s) = theta`.
    pub fn teichmuller_root(&self, theta: RingElem, s: u32) -> Result<RingElem> {
        if theta.is_zero() || !self.is_teichmuller(theta) {
            return Err(Error::NotTeichmuller(self.format_elem(theta)));
        }
        // x -> x^p permutes the nonzero Teichmuller elements with order m,
        // so the inverse of x -> x^(p^s) is x -> x^(p^((m - s) mod m)).
        let m = self.m();
        let back = (m - s % m) % m;
        let root = self.pow(theta, self.p().pow(back));
        debug_assert_eq!(self.pow(root, self.p().pow(s)), theta);
        Ok(root)
    }

    /// Human-readable element: an integer when there is one coordinate,
    /// otherwise the coordinate list.
    pub fn format_elem(&self, a: RingElem) -> String {
        match &self.arith {
            Arith::Galois { m: 1, .. } => a.0.to_string(),
            Arith::Galois { .. } => {
                let coords = self.coords(a);
                if coords[1..].iter().all(|&c| c == 0) {
                    return coords[0].to_string();
                }
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            }
            Arith::Truncated { field, .. } => {
                let parts: Vec<String> = self
                    .coords(a)
                    .iter()
                    .map(|&c| field.format_elem(RingElem(c as u32)))
                    .collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    fn compute_gamma(&self) -> RingElem {
        match &self.arith {
            _ if self.is_field() => self.zero(),
            Arith::Galois { .. } => self.from_int(self.p() as i64),
            Arith::Truncated { q, .. } => RingElem(*q as u32),
        }
    }

    fn compute_zeta(&self) -> RingElem {
        let q = self.residue_order();
        if !self.is_field() {
            let field = self.residue.as_ref().expect("residue field");
            return self.teichmuller_lift(self.lift_residue(field.zeta));
        }
        if q == 2 {
            return self.one();
        }
        let order = q - 1;
        let primes = prime_factors(order);
        (1..q as u32)
            .map(RingElem)
            .find(|&g| primes.iter().all(|&r| self.pow(g, order / r) != self.one()))
            .expect("finite field has a primitive element")
    }

    fn raw_add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.arith {
            Arith::Galois { pe, .. } => {
                let (x, y) = (self.coords(a), self.coords(b));
                self.pack(x.iter().zip(&y).map(|(u, v)| (u + v) % pe))
            }
            Arith::Truncated { field, .. } => {
                let (x, y) = (self.coords(a), self.coords(b));
                let sum: Vec<u64> = x
                    .iter()
                    .zip(&y)
                    .map(|(&u, &v)| field.add(RingElem(u as u32), RingElem(v as u32)).0 as u64)
                    .collect();
                self.pack(sum.into_iter())
            }
        }
    }

    fn raw_neg(&self, a: RingElem) -> RingElem {
        match &self.arith {
            Arith::Galois { pe, .. } => self.pack(self.coords(a).into_iter().map(|c| (pe - c) % pe)),
            Arith::Truncated { field, .. } => {
                let neg: Vec<u64> = self
                    .coords(a)
                    .into_iter()
                    .map(|c| field.neg(RingElem(c as u32)).0 as u64)
                    .collect();
                self.pack(neg.into_iter())
            }
        }
    }

    fn raw_mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.arith {
            Arith::Galois { pe, m, modulus } => {
                let (x, y) = (self.coords(a), self.coords(b));
                let mut prod = vec![0u64; 2 * m - 1];
                for (i, &u) in x.iter().enumerate() {
                    if u == 0 {
                        continue;
                    }
                    for (j, &v) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v % pe) % pe;
                    }
                }
                for k in (*m..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &h) in modulus.iter().take(*m).enumerate() {
                        let t = c * h % pe;
                        prod[k - m + i] = (prod[k - m + i] + pe - t) % pe;
                    }
                }
                prod.truncate(*m);
                self.pack(prod.into_iter())
            }
            Arith::Truncated { field, e, .. } => {
                let (x, y) = (self.coords(a), self.coords(b));
                let mut prod = vec![field.zero(); *e];
                for (i, &u) in x.iter().enumerate() {
                    for (j, &v) in y.iter().enumerate().take(e - i) {
                        let t = field.mul(RingElem(u as u32), RingElem(v as u32));
                        prod[i + j] = field.add(prod[i + j], t);
                    }
                }
                self.pack(prod.into_iter().map(|c| c.0 as u64))
            }
        }
    }

    fn raw_valuation(&self, a: RingElem) -> u32 {
        if a.is_zero() {
            return self.e();
        }
        let coords = self.coords(a);
        match &self.arith {
            Arith::Galois { .. } => coords
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| {
                    let mut v = 0;
                    let mut c = c;
                    while c % self.p() == 0 {
                        c /= self.p();
                        v += 1;
                    }
                    v
                })
                .min()
                .unwrap_or(self.e()),
            Arith::Truncated { .. } => coords.iter().position(|&c| c != 0).unwrap_or(0) as u32,
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
