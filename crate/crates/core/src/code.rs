//! Constacyclic codes `<prod f_l(x)^{k_l}>` in `R[x]/<x^N - lambda>`, their
//! torsion codes and cardinalities, and exhaustive codeword enumeration.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::{factor_binomial, teichmuller_base_root, BetaKind, Factorization, LambdaSplit};
use crate::poly::{Degree, Poly};
use crate::ring::{Ring, RingElem};

/// `|C|`, always a power of the residue characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cardinality {
    pub p: u64,
    pub exponent: u64,
}

impl Cardinality {
    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.exponent as u32)
    }

    pub fn exceeds(&self, cap: u64) -> bool {
        self.value() > BigUint::from(cap)
    }

    /// Exact decimal expansion.
    pub fn decimal(&self) -> String {
        self.value().to_string()
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => f.write_str("1"),
            1 => write!(f, "{}", self.p),
            e => write!(f, "{}^{}", self.p, e),
        }
    }
}

/// A torsion code `Tor_i(C)`, given by its monic generator over the residue
/// field. The zero ideal has generator `x^N - lambda_bar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCode {
    pub index: u32,
    pub generator: Poly,
    pub length: usize,
}

impl TorsionCode {
    /// Dimension over the residue field, `N - deg g`.
    pub fn dimension(&self) -> usize {
        self.length - self.generator.degree().finite().unwrap_or(0)
    }
}

#[derive(Clone)]
pub struct Code {
    ring: Arc<Ring>,
    length: usize,
    split: LambdaSplit,
    factorization: Factorization,
    exponents: Vec<usize>,
    generator_product: Poly,
    generator: Poly,
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Code({}, lambda = {}, N = {}, k = {:?})",
            self.ring,
            self.ring.format_elem(self.split.lambda),
            self.length,
            self.exponents
        )
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Code) -> bool {
        *self.ring == *other.ring
            && self.length == other.length
            && self.split.lambda == other.split.lambda
            && self.exponents == other.exponents
    }
}

impl Eq for Code {}

impl Code {
    /// Builds the code `<prod f_l^{k_l}>` with exponents in canonical factor
    /// order of `x^n - alpha_0`.
    pub fn new(
        ring: &Arc<Ring>,
        lambda: RingElem,
        length: usize,
        exponents: &[usize],
    ) -> Result<Code> {
        let split = teichmuller_base_root(ring, lambda, length)?;
        let factorization = factor_binomial(ring, split.n, split.alpha0)?;
        Code::with_factorization(ring, split, factorization, length, exponents)
    }

    /// As [`Code::new`] but reuses a factorization of `x^n - alpha_0`.
    pub fn with_factorization(
        ring: &Arc<Ring>,
        split: LambdaSplit,
        factorization: Factorization,
        length: usize,
        exponents: &[usize],
    ) -> Result<Code> {
        if exponents.len() != factorization.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} exponents (one per factor of x^{} - {}), got {}",
                factorization.len(),
                split.n,
                ring.format_elem(split.alpha0),
                exponents.len()
            )));
        }
        let bound = ring.e() as usize * split.p_pow_s(ring);
        if let Some(&k) = exponents.iter().find(|&&k| k > bound) {
            return Err(Error::InvalidParameter(format!(
                "exponent {k} exceeds the bound e p^s = {bound}"
            )));
        }
        let generator_product = factorization
            .factors
            .iter()
            .zip(exponents)
            .fold(Poly::one(ring), |acc, (f, &k)| acc.mul_unchecked(&f.pow(k as u64)));
        let generator = generator_product.reduce_constacyclic(length, split.lambda);
        Ok(Code {
            ring: Arc::clone(ring),
            length,
            split,
            factorization,
            exponents: exponents.to_vec(),
            generator_product,
            generator,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn lambda(&self) -> RingElem {
        self.split.lambda
    }

    pub fn split(&self) -> &LambdaSplit {
        &self.split
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// Generator reduced modulo `x^N - lambda`.
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// `prod f_l^{k_l}` in `R[x]`, before reduction.
    pub fn generator_product(&self) -> &Poly {
        &self.generator_product
    }

    pub fn p_pow_s(&self) -> usize {
        self.split.p_pow_s(&self.ring)
    }

    pub fn is_zero_code(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn is_full_code(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Whether the structure theorem (and with it every closed form here)
    /// covers this code: fields, or `beta` a unit.
    pub fn formulas_apply(&self) -> bool {
        self.ring.is_field() || self.split.beta_kind == BetaKind::Unit
    }

    pub fn lambda_bar_is_one(&self) -> bool {
        self.ring.project(self.split.lambda) == self.ring.residue_field().one()
    }

    /// `tau_l(i) = min{(i+1) p^s, k_l} - min{i p^s, k_l}`, with `l`
    /// counted from zero.
    pub fn tau(&self, l: usize, i: u32) -> Result<usize> {
        let k = *self.exponents.get(l).ok_or_else(|| Error::OutOfRange {
            index: l as i64,
            range: format!("[0, {})", self.exponents.len()),
        })?;
        if i >= self.ring.e() {
            return Err(Error::OutOfRange {
                index: i as i64,
                range: format!("[0, {})", self.ring.e()),
            });
        }
        let ps = self.p_pow_s();
        let i = i as usize;
        Ok(((i + 1) * ps).min(k) - (i * ps).min(k))
    }

    /// `Tor_i(C) = < prod fbar_l^{tau_l(i)} >`.
    pub fn torsion_formula(&self, i: u32) -> Result<TorsionCode> {
        if !self.formulas_apply() {
            return Err(Error::NotApplicable(
                "torsion formula needs beta to be a unit".into(),
            ));
        }
        let field = self.ring.residue_field();
        let mut generator = Poly::one(&field);
        for (l, f) in self.factorization.factors.iter().enumerate() {
            let t = self.tau(l, i)?;
            generator = generator.mul_unchecked(&f.project().pow(t as u64));
        }
        Ok(TorsionCode {
            index: i,
            generator,
            length: self.length,
        })
    }

    /// `|C|` from the torsion formula, `prod_i q^(N - deg Tor_i)`.
    pub fn cardinality_formula(&self) -> Result<Cardinality> {
        let mut exponent = 0u64;
        for i in 0..self.ring.e() {
            let tor = self.torsion_formula(i)?;
            exponent += tor.dimension() as u64;
        }
        Ok(Cardinality {
            p: self.ring.p(),
            exponent: exponent * self.ring.m() as u64,
        })
    }

    /// `|C|` by the torsion formula where it applies, otherwise from the
    /// echelon basis.
    pub fn cardinality(&self) -> Cardinality {
        self.cardinality_formula()
            .unwrap_or_else(|_| self.echelon_basis().cardinality())
    }

    /// Rows `x^i g(x) mod (x^N - lambda)` for `i < N`.
    pub fn generator_rows(&self) -> Vec<Vec<RingElem>> {
        let mut rows = Vec::with_capacity(self.length);
        let mut cur = self.generator.to_vector(self.length);
        for _ in 0..self.length {
            rows.push(cur.clone());
            cur = self.shift(&cur);
        }
        rows
    }

    pub fn echelon_basis(&self) -> EchelonBasis {
        EchelonBasis::from_generators(&self.ring, self.length, self.generator_rows())
    }

    /// `Tor_i(C)` computed from the echelon basis.
    pub fn torsion_oracle(&self, basis: &EchelonBasis, i: u32) -> Result<TorsionCode> {
        if i >= self.ring.e() {
            return Err(Error::OutOfRange {
                index: i as i64,
                range: format!("[0, {})", self.ring.e()),
            });
        }
        let field = self.ring.residue_field();
        let lambda_bar = self.ring.project(self.split.lambda);
        let mut generator = Poly::binomial(&field, self.length, lambda_bar);
        for v in basis.torsion_span(i) {
            generator = generator.gcd(&Poly::new(&field, v))?;
        }
        Ok(TorsionCode {
            index: i,
            generator,
            length: self.length,
        })
    }

    /// The constacyclic shift `(lambda a_{N-1}, a_0, ..., a_{N-2})`.
    pub fn shift(&self, v: &[RingElem]) -> Vec<RingElem> {
        let n = v.len();
        let mut out = Vec::with_capacity(n);
        out.push(self.ring.mul(self.split.lambda, v[n - 1]));
        out.extend_from_slice(&v[..n - 1]);
        out
    }

    /// Visits every codeword once; returns the number visited.
    pub fn enumerate<F: FnMut(&[RingElem])>(&self, cap: u64, visit: F) -> Result<u64> {
        self.echelon_basis().for_each_codeword(cap, visit)
    }
}

/// One row `gamma^v u` of an [`EchelonBasis`]; `u` has a 1 at `pivot` and
/// the row is zero at every earlier row's pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonRow {
    pub pivot: usize,
    pub valuation: u32,
    pub entries: Vec<RingElem>,
}

/// Normal form of a submodule of `R^N`, built by elimination that always
/// pivots on an entry of globally minimal valuation. Every codeword is
/// uniquely `sum_j a_j row_j` with `a_j` from a transversal of
/// `R / <gamma^(e - v_j)>`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ring: Arc<Ring>,
    length: usize,
    rows: Vec<EchelonRow>,
}

impl EchelonBasis {
    pub fn from_generators(ring: &Arc<Ring>, length: usize, generators: Vec<Vec<RingElem>>) -> EchelonBasis {
        let e = ring.e();
        let mut active: Vec<Vec<RingElem>> = generators
            .into_iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let mut used = vec![false; length];
        let mut rows = Vec::new();
        loop {
            // (valuation, column, row)
            let mut best: Option<(u32, usize, usize)> = None;
            for (ri, row) in active.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    if used[c] || x.is_zero() {
                        continue;
                    }
                    let cand = (ring.valuation(x), c, ri);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
            let Some((v, col, ri)) = best else { break };
            debug_assert!(v < e);
            let mut pivot_row = active.swap_remove(ri);
            let unit = ring
                .div_gamma_pow(pivot_row[col], v)
                .expect("pivot has valuation v");
            let scale = ring.inverse(unit).expect("pivot cofactor is a unit");
            for x in pivot_row.iter_mut() {
                *x = ring.mul(*x, scale);
            }
            for row in active.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let a = ring
                    .div_gamma_pow(row[col], v)
                    .expect("pivot valuation is minimal");
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ring.sub(*x, ring.mul(a, y));
                }
            }
            active.retain(|r| r.iter().any(|c| !c.is_zero()));
            used[col] = true;
            rows.push(EchelonRow {
                pivot: col,
                valuation: v,
                entries: pivot_row,
            });
        }
        EchelonBasis {
            ring: Arc::clone(ring),
            length,
            rows,
        }
    }

    pub fn rows(&self) -> &[EchelonRow] {
        &self.rows
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `prod_j q^(e - v_j)`.
    pub fn cardinality(&self) -> Cardinality {
        let e = self.ring.e() as u64;
        let sum: u64 = self.rows.iter().map(|r| e - r.valuation as u64).sum();
        Cardinality {
            p: self.ring.p(),
            exponent: sum * self.ring.m() as u64,
        }
    }

    /// Membership by reduction against the rows in elimination order.
    pub fn contains(&self, v: &[RingElem]) -> bool {
        if v.len() != self.length {
            return false;
        }
        let ring = &self.ring;
        let mut w = v.to_vec();
        for row in &self.rows {
            let x = w[row.pivot];
            if x.is_zero() {
                continue;
            }
            let Ok(a) = ring.div_gamma_pow(x, row.valuation) else {
                return false;
            };
            for (wi, &ri) in w.iter_mut().zip(&row.entries) {
                *wi = ring.sub(*wi, ring.mul(a, ri));
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    /// Residue-field vectors `mu(row_j / gamma^(v_j))` for rows with
    /// `v_j <= i`; they span `Tor_i`.
    pub fn torsion_span(&self, i: u32) -> Vec<Vec<RingElem>> {
        let ring = &self.ring;
        self.rows
            .iter()
            .filter(|r| r.valuation <= i)
            .map(|r| {
                r.entries
                    .iter()
                    .map(|&x| {
                        let u = ring
                            .div_gamma_pow(x, r.valuation)
                            .expect("row entries are divisible by gamma^v");
                        ring.project(u)
                    })
                    .collect()
            })
            .collect()
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let card = self.cardinality();
        if card.exceeds(cap) {
            Err(Error::CapExceeded {
                p: card.p,
                exponent: card.exponent,
                cap,
            })
        } else {
            Ok(())
        }
    }

    fn transversals(&self) -> Vec<Vec<RingElem>> {
        let e = self.ring.e();
        self.rows
            .iter()
            .map(|r| self.ring.transversal(e - r.valuation))
            .collect()
    }

    /// Visits every codeword exactly once.
    pub fn for_each_codeword<F: FnMut(&[RingElem])>(&self, cap: u64, mut visit: F) -> Result<u64> {
        self.check_cap(cap)?;
        let trans = self.transversals();
        if self.rows.is_empty() {
            visit(&vec![self.ring.zero(); self.length]);
            return Ok(1);
        }
        let mut count = 0u64;
        for first in 0..trans[0].len() {
            count += self.walk(&trans, first, &mut visit);
        }
        Ok(count)
    }

    /// Parallel fold over all codewords: each worker folds into its own
    /// accumulator and the accumulators are merged with `merge`, which
    /// must be commutative.
    pub fn fold_codewords<T, Id, F, M>(
        &self,
        cap: u64,
        jobs: usize,
        identity: Id,
        fold: F,
        merge: M,
    ) -> Result<T>
    where
        T: Send,
        Id: Fn() -> T + Sync + Send,
        F: Fn(&mut T, &[RingElem]) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        self.check_cap(cap)?;
        if self.rows.is_empty() {
            let mut acc = identity();
            fold(&mut acc, &vec![self.ring.zero(); self.length]);
            return Ok(acc);
        }
        let trans = self.transversals();
        let run = || {
            (0..trans[0].len())
                .into_par_iter()
                .map(|first| {
                    let mut acc = identity();
                    self.walk(&trans, first, &mut |cw: &[RingElem]| fold(&mut acc, cw));
                    acc
                })
                .reduce(&identity, &merge)
        };
        if jobs == 0 {
            return Ok(run());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        Ok(pool.install(run))
    }

    /// All codewords whose first coefficient is `trans[0][first]`, updated
    /// incrementally one row at a time.
    fn walk<F: FnMut(&[RingElem])>(&self, trans: &[Vec<RingElem>], first: usize, visit: &mut F) -> u64 {
        let ring = &self.ring;
        let r = self.rows.len();
        let a0 = trans[0][first];
        let mut cw: Vec<RingElem> = self.rows[0].entries.iter().map(|&x| ring.mul(a0, x)).collect();
        let mut digits = vec![0usize; r];
        let mut count = 0u64;
        loop {
            visit(&cw);
            count += 1;
            let mut j = 1;
            loop {
                if j == r {
                    return count;
                }
                let t = &trans[j];
                let cur = digits[j];
                let (next, carry) = if cur + 1 < t.len() { (cur + 1, false) } else { (0, true) };
                let delta = ring.sub(t[next], t[cur]);
                for (c, &x) in cw.iter_mut().zip(&self.rows[j].entries) {
                    *c = ring.add(*c, ring.mul(delta, x));
                }
                digits[j] = next;
                if !carry {
                    break;
                }
                j += 1;
            }
        }
    }
}

/// Degree of a field polynomial, `N` for the zero polynomial.
pub(crate) fn degree_or(p: &Poly, n: usize) -> usize {
    match p.degree() {
        Degree::NegInfinity => n,
        Degree::Finite(d) => d,
    }
}
