//! Depth spectra: closed forms for field and chain-ring codes, the case
//! dispatch between them, and the exhaustive depth distribution.

use std::collections::BTreeSet;
use std::fmt;

use crate::code::{degree_or, Code};
use crate::depth::depth_in_place;
use crate::error::{Error, Result};
use crate::factor::BetaKind;
use crate::poly::Poly;
use crate::ring::RingElem;

/// Set of nonzero depths attained by a code of length `length`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DepthSpectrum {
    pub length: usize,
    pub attained: BTreeSet<usize>,
}

impl DepthSpectrum {
    pub fn empty(length: usize) -> DepthSpectrum {
        DepthSpectrum {
            length,
            attained: BTreeSet::new(),
        }
    }

    /// Union of inclusive ranges; ranges with `hi < lo` contribute nothing.
    pub fn from_ranges(length: usize, ranges: &[(i64, i64)]) -> DepthSpectrum {
        let mut attained = BTreeSet::new();
        for &(lo, hi) in ranges {
            let lo = lo.max(1);
            let hi = hi.min(length as i64);
            if lo <= hi {
                attained.extend(lo as usize..=hi as usize);
            }
        }
        DepthSpectrum { length, attained }
    }

    pub fn full(length: usize) -> DepthSpectrum {
        DepthSpectrum::from_ranges(length, &[(1, length as i64)])
    }

    pub fn len(&self) -> usize {
        self.attained.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attained.is_empty()
    }

    pub fn contains(&self, depth: usize) -> bool {
        self.attained.contains(&depth)
    }

    /// Maximal runs of consecutive depths, as inclusive `(lo, hi)` pairs.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &d in &self.attained {
            match out.last_mut() {
                Some((_, hi)) if *hi + 1 == d => *hi = d,
                _ => out.push((d, d)),
            }
        }
        out
    }
}

impl fmt::Display for DepthSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .ranges()
            .into_iter()
            .map(|(lo, hi)| match hi - lo {
                0 => format!("{{{lo}}}"),
                1 => format!("{{{lo},{hi}}}"),
                _ => format!("{{{lo}..{hi}}}"),
            })
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// `counts[rho]` is the number of codewords of depth `rho`, `0 <= rho <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthDistribution {
    pub counts: Vec<u64>,
}

impl DepthDistribution {
    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Support restricted to `[1, N]`.
    pub fn spectrum(&self) -> DepthSpectrum {
        DepthSpectrum {
            length: self.length(),
            attained: (1..self.counts.len()).filter(|&d| self.counts[d] > 0).collect(),
        }
    }
}

/// Which branch of the chain-ring `lambda_bar = 1` formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainSubcase {
    /// `k_1 < max{0, (e - n) p^s}`
    I,
    /// `max{0, (e - n) p^s} <= k_1 < (e - 1) p^s`
    II,
    /// `(e - 1) p^s <= k_1`
    III,
}

impl fmt::Display for ChainSubcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainSubcase::I => "i",
            ChainSubcase::II => "ii",
            ChainSubcase::III => "iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumCase {
    FieldCyclic { t: usize },
    FieldConstaNontrivial,
    ChainLambdaBarNe1,
    ChainLambdaBarEq1 { k1: usize, subcase: ChainSubcase },
    OracleOnly,
}

impl SpectrumCase {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumCase::FieldCyclic { .. } => "FIELD_CYCLIC",
            SpectrumCase::FieldConstaNontrivial => "FIELD_CONSTA_NONTRIVIAL",
            SpectrumCase::ChainLambdaBarNe1 => "CHAIN_LAMBDABAR_NE_1",
            SpectrumCase::ChainLambdaBarEq1 { .. } => "CHAIN_LAMBDABAR_EQ_1",
            SpectrumCase::OracleOnly => "ORACLE_ONLY",
        }
    }
}

impl fmt::Display for SpectrumCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumCase::FieldCyclic { t } => write!(f, "{} (t = {t})", self.name()),
            SpectrumCase::ChainLambdaBarEq1 { k1, subcase } => {
                write!(f, "{} (k1 = {k1}, case {subcase})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

/// `(S_1, S_2)`: `sum_l d_l tau_l(e-1)` over all factors, and over the
/// factors after the first.
pub fn s_stats(code: &Code) -> Result<(usize, usize)> {
    let e = code.ring().e();
    let degrees = code.factorization().degrees();
    let mut s1 = 0;
    let mut s2 = 0;
    for (l, d) in degrees.into_iter().enumerate() {
        let term = d * code.tau(l, e - 1)?;
        s1 += term;
        if l > 0 {
            s2 += term;
        }
    }
    Ok((s1, s2))
}

/// Cyclic field codes: with `(x-1)^t || (x^N - 1)/g`, the spectrum is
/// `{1..t} ∪ {deg g + t + 1..N}`. Returns `t` with the spectrum.
pub fn spectrum_field_cyclic(gbar: &Poly, length: usize) -> Result<(usize, DepthSpectrum)> {
    let field = gbar.ring();
    if !field.is_field() {
        return Err(Error::InvalidParameter(format!("{field} is not a field")));
    }
    let xn1 = Poly::binomial(field, length, field.one());
    let (mut h, r) = xn1.div_rem(gbar)?;
    if !r.is_zero() {
        return Err(Error::InvalidParameter(format!("{gbar} does not divide x^{length} - 1")));
    }
    let x_minus_1 = Poly::binomial(field, 1, field.one());
    let mut t = 0;
    loop {
        let (q, r) = h.divmod_monic(&x_minus_1)?;
        if !r.is_zero() || h.is_zero() {
            break;
        }
        h = q;
        t += 1;
    }
    let deg_g = degree_or(gbar, length) as i64;
    let (t_i, n) = (t as i64, length as i64);
    let spectrum = DepthSpectrum::from_ranges(length, &[(1, t_i), (deg_g + t_i + 1, n)]);
    Ok((t, spectrum))
}

/// Non-trivial `eta`-constacyclic field codes, `eta != 1`: `{deg g + 1..N}`.
pub fn spectrum_field_consta(gbar: &Poly, length: usize, eta: RingElem) -> Result<DepthSpectrum> {
    let field = gbar.ring();
    if !field.is_field() {
        return Err(Error::InvalidParameter(format!("{field} is not a field")));
    }
    if eta == field.one() || eta.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "eta = {} must be a unit other than 1",
            field.format_elem(eta)
        )));
    }
    let (_, r) = Poly::binomial(field, length, eta).div_rem(gbar)?;
    if !r.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "{gbar} does not divide x^{length} - {}",
            field.format_elem(eta)
        )));
    }
    let deg_g = degree_or(gbar, length);
    if deg_g == 0 || deg_g >= length {
        return Err(Error::InvalidParameter("code is trivial".into()));
    }
    Ok(consta_formula(deg_g, length))
}

fn consta_formula(deg_g: usize, length: usize) -> DepthSpectrum {
    DepthSpectrum::from_ranges(length, &[(deg_g as i64 + 1, length as i64)])
}

/// Chain-ring codes with `e >= 2` and `beta` a unit.
pub fn spectrum_chain(code: &Code) -> Result<(SpectrumCase, DepthSpectrum)> {
    let ring = code.ring();
    if ring.e() < 2 {
        return Err(Error::NotApplicable("chain formula needs e >= 2".into()));
    }
    if code.split().beta_kind != BetaKind::Unit {
        return Err(Error::NotApplicable(format!(
            "beta is {}, not a unit",
            code.split().beta_kind
        )));
    }
    let length = code.length();
    let (s1, s2) = s_stats(code)?;
    if !code.lambda_bar_is_one() {
        let spectrum = if code.is_zero_code() {
            DepthSpectrum::empty(length)
        } else {
            DepthSpectrum::from_ranges(length, &[(s1 as i64 + 1, length as i64)])
        };
        return Ok((SpectrumCase::ChainLambdaBarNe1, spectrum));
    }
    let e = ring.e() as i64;
    let n = code.split().n as i64;
    let ps = code.p_pow_s() as i64;
    let k1 = code.exponents()[0];
    let k1_i = k1 as i64;
    let subcase = if k1_i < ((e - n) * ps).max(0) {
        ChainSubcase::I
    } else if k1_i < (e - 1) * ps {
        ChainSubcase::II
    } else {
        ChainSubcase::III
    };
    let case = SpectrumCase::ChainLambdaBarEq1 { k1, subcase };
    let spectrum = if code.is_zero_code() {
        DepthSpectrum::empty(length)
    } else if subcase == ChainSubcase::I {
        DepthSpectrum::full(length)
    } else {
        DepthSpectrum::from_ranges(
            length,
            &[(1, e * ps - k1_i), (ps + s2 as i64 + 1, n * ps)],
        )
    };
    Ok((case, spectrum))
}

/// Routes a code to the applicable closed form, or to enumeration when
/// `beta` is not a unit.
pub fn spectrum_dispatch(code: &Code, cap: u64, jobs: usize) -> Result<(SpectrumCase, DepthSpectrum)> {
    let ring = code.ring();
    let length = code.length();
    if ring.is_field() {
        let gbar = code.generator_product();
        if code.lambda() == ring.one() {
            let (t, spectrum) = spectrum_field_cyclic(gbar, length)?;
            return Ok((SpectrumCase::FieldCyclic { t }, spectrum));
        }
        let deg_g = degree_or(gbar, length);
        let spectrum = if code.is_zero_code() {
            DepthSpectrum::empty(length)
        } else {
            consta_formula(deg_g, length)
        };
        return Ok((SpectrumCase::FieldConstaNontrivial, spectrum));
    }
    if code.split().beta_kind == BetaKind::Unit {
        return spectrum_chain(code);
    }
    let dist = distribution_oracle(code, cap, jobs)?;
    Ok((SpectrumCase::OracleOnly, dist.spectrum()))
}

/// Exact depth distribution by enumerating every codeword. `jobs = 0`
/// uses the global thread pool.
pub fn distribution_oracle(code: &Code, cap: u64, jobs: usize) -> Result<DepthDistribution> {
    let ring = code.ring();
    let length = code.length();
    let basis = code.echelon_basis();
    let (counts, _) = basis.fold_codewords(
        cap,
        jobs,
        || (vec![0u64; length + 1], Vec::with_capacity(length)),
        |(counts, buf), cw| {
            buf.clear();
            buf.extend_from_slice(cw);
            let (d, _) = depth_in_place(ring, buf);
            counts[d] += 1;
        },
        |(mut a, buf), (b, _)| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            (a, buf)
        },
    )?;
    Ok(DepthDistribution { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn code(ring: &Arc<Ring>, lambda: i64, n: usize, k: &[usize]) -> Code {
        Code::new(ring, ring.from_int(lambda), n, k).unwrap()
    }

    #[test]
    fn ranges_merge_and_render() {
        let s = DepthSpectrum::from_ranges(56, &[(1, 12), (18, 56)]);
        assert_eq!(s.ranges(), vec![(1, 12), (18, 56)]);
        assert_eq!(s.to_string(), "{1..12} ∪ {18..56}");
        let merged = DepthSpectrum::from_ranges(10, &[(1, 6), (5, 10)]);
        assert_eq!(merged.ranges(), vec![(1, 10)]);
        let empty_first = DepthSpectrum::from_ranges(10, &[(1, 0), (4, 10)]);
        assert_eq!(empty_first.ranges(), vec![(4, 10)]);
        assert_eq!(DepthSpectrum::empty(3).to_string(), "∅");
        assert_eq!(DepthSpectrum::from_ranges(18, &[(17, 18)]).to_string(), "{17,18}");
    }

    #[test]
    fn s_stats_examples() {
        let z9 = Ring::parse("GR(9,1)").unwrap();
        assert_eq!(s_stats(&code(&z9, 2, 18, &[10])).unwrap().0, 2);
        assert_eq!(s_stats(&code(&z9, 2, 18, &[0])).unwrap(), (0, 0));
        let gr = Ring::parse("GR(4,4)").unwrap();
        assert_eq!(s_stats(&code(&gr, -1, 56, &[14, 12, 13])).unwrap().1, 27);
    }

    #[test]
    fn field_cyclic_examples() {
        let f2 = Ring::parse("F(2)").unwrap();
        let (t, s) = spectrum_field_cyclic(&Poly::one(&f2), 4).unwrap();
        assert_eq!((t, s), (4, DepthSpectrum::full(4)));
        let g = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        let (t, s) = spectrum_field_cyclic(&g, 7).unwrap();
        assert_eq!(t, 1);
        assert_eq!(s, DepthSpectrum::from_ranges(7, &[(1, 1), (5, 7)]));
        let (t, s) = spectrum_field_cyclic(&Poly::binomial(&f2, 7, f2.one()), 7).unwrap();
        assert_eq!(t, 0);
        assert!(s.is_empty());
        assert!(spectrum_field_cyclic(&Poly::from_ints(&f2, &[1, 1, 1]), 7).is_err());
    }

    #[test]
    fn field_consta_examples() {
        let f3 = Ring::parse("F(3)").unwrap();
        let two = f3.from_int(2);
        let g = Poly::from_ints(&f3, &[2, 1, 1]);
        assert_eq!(
            spectrum_field_consta(&g, 4, two).unwrap(),
            DepthSpectrum::from_ranges(4, &[(3, 4)])
        );
        assert!(spectrum_field_consta(&g, 4, f3.one()).is_err());
        assert!(spectrum_field_consta(&Poly::one(&f3), 4, two).is_err());
    }

    #[test]
    fn chain_examples() {
        let z9 = Ring::parse("GR(9,1)").unwrap();
        let (case, s) = spectrum_chain(&code(&z9, 2, 18, &[13])).unwrap();
        assert_eq!(case, SpectrumCase::ChainLambdaBarNe1);
        assert_eq!(s, DepthSpectrum::from_ranges(18, &[(9, 18)]));
        let gr = Ring::parse("GR(4,4)").unwrap();
        let (case, s) = spectrum_chain(&code(&gr, -1, 56, &[4, 9, 10])).unwrap();
        assert_eq!(case.name(), "CHAIN_LAMBDABAR_EQ_1");
        assert_eq!(s, DepthSpectrum::from_ranges(56, &[(1, 12), (18, 56)]));
        let (_, s) = spectrum_chain(&code(&gr, -1, 56, &[7, 6, 5])).unwrap();
        assert_eq!(s, DepthSpectrum::full(56));
    }

    #[test]
    fn dispatch_routes() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let (case, _) = spectrum_dispatch(&code(&z4, 1, 4, &[2]), 1_000_000, 1).unwrap();
        assert_eq!(case, SpectrumCase::OracleOnly);
        let z9 = Ring::parse("GR(9,1)").unwrap();
        let (case, _) = spectrum_dispatch(&code(&z9, 2, 18, &[3]), 1_000_000, 1).unwrap();
        assert_eq!(case, SpectrumCase::ChainLambdaBarNe1);
    }

    #[test]
    fn oracle_small_codes() {
        let z9 = Ring::parse("GR(9,1)").unwrap();
        let zero = distribution_oracle(&code(&z9, 2, 18, &[18]), 10, 1).unwrap();
        assert_eq!(zero.counts[0], 1);
        assert_eq!(zero.total(), 1);
        let c17 = distribution_oracle(&code(&z9, 2, 18, &[17]), 100, 2).unwrap();
        assert_eq!(c17.spectrum(), DepthSpectrum::from_ranges(18, &[(17, 18)]));
        assert_eq!(c17.total(), 9);

        let z4 = Ring::parse("GR(4,1)").unwrap();
        let c = code(&z4, -1, 4, &[1]);
        let dist = distribution_oracle(&c, 1000, 1).unwrap();
        assert_eq!(dist.spectrum(), spectrum_dispatch(&c, 1000, 1).unwrap().1);
    }
}
