//! The derivative operator on `R^N` and the depth of a vector.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Ring, RingElem};

/// Depth of a vector, with the constant `b` such that
/// `D^(depth-1)(a) = (b, ..., b)` whenever `depth >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepthResult {
    pub depth: usize,
    pub witness: Option<RingElem>,
}

/// `(a_1 - a_0, a_2 - a_1, ..., a_{N-1} - a_{N-2})`.
pub fn derivative(ring: &Ring, a: &[RingElem]) -> Result<Vec<RingElem>> {
    if a.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "derivative needs length >= 2, got {}",
            a.len()
        )));
    }
    Ok(a.windows(2).map(|w| ring.sub(w[1], w[0])).collect())
}

/// `D^i(a)`, of length `N - i`.
pub fn iterated_derivative(ring: &Ring, a: &[RingElem], i: usize) -> Result<Vec<RingElem>> {
    if i >= a.len().max(1) {
        return Err(Error::OutOfRange {
            index: i as i64,
            range: format!("[0, {})", a.len()),
        });
    }
    let mut cur = a.to_vec();
    for _ in 0..i {
        cur = derivative(ring, &cur)?;
    }
    Ok(cur)
}

/// Least `i` with `D^i(a) = 0`, or `N` when `D^(N-1)(a) != 0`.
pub fn depth(ring: &Ring, a: &[RingElem]) -> DepthResult {
    let mut buf = a.to_vec();
    let (depth, witness) = depth_in_place(ring, &mut buf);
    DepthResult { depth, witness }
}

/// Depth computed destructively in `buf`, for the enumeration hot loop.
pub fn depth_in_place(ring: &Ring, buf: &mut [RingElem]) -> (usize, Option<RingElem>) {
    let n = buf.len();
    let mut len = n;
    if buf.iter().all(|c| c.is_zero()) {
        return (0, None);
    }
    // invariant: buf[..len] = D^(n-len)(a), nonzero
    loop {
        let first = buf[0];
        if buf[1..len].iter().all(|&c| c == first) {
            return (n - len + 1, Some(first));
        }
        for k in 0..len - 1 {
            buf[k] = ring.sub(buf[k + 1], buf[k]);
        }
        len -= 1;
    }
}

/// The last `N - i` coefficients of `(1 - x)^i c(x) mod (x^N - lambda)`,
/// which equal `D^i` of the coefficient vector of `c`.
pub fn depth_via_shift(c: &Poly, n: usize, lambda: RingElem, i: usize) -> Result<Vec<RingElem>> {
    if i >= n {
        return Err(Error::OutOfRange {
            index: i as i64,
            range: format!("[0, {n})"),
        });
    }
    let ring = c.ring();
    let one_minus_x = Poly::from_ints(ring, &[1, -1]);
    let mut acc = c.reduce_constacyclic(n, lambda);
    for _ in 0..i {
        acc = one_minus_x.mul_mod(&acc, n, lambda)?;
    }
    Ok((i..n).map(|j| acc.coeff(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecz(ring: &Ring, v: &[i64]) -> Vec<RingElem> {
        v.iter().map(|&x| ring.from_int(x)).collect()
    }

    #[test]
    fn derivative_examples() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        assert_eq!(derivative(&z4, &vecz(&z4, &[1, 1, 1, 1])).unwrap(), vecz(&z4, &[0, 0, 0]));
        assert_eq!(derivative(&z4, &vecz(&z4, &[0, 1, 2, 3])).unwrap(), vecz(&z4, &[1, 1, 1]));
        assert_eq!(derivative(&z4, &vecz(&z4, &[3, 1, 1, 1])).unwrap(), vecz(&z4, &[2, 0, 0]));
        assert!(derivative(&z4, &vecz(&z4, &[3])).is_err());
    }

    #[test]
    fn depth_examples() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        // D(0,1,2,3) = (1,1,1) and D^2 = 0, so the depth is 2
        let c = depth(&z4, &vecz(&z4, &[0, 1, 2, 3]));
        assert_eq!(c, DepthResult { depth: 2, witness: Some(z4.one()) });
        let c1 = depth(&z4, &vecz(&z4, &[3, 1, 1, 1]));
        assert_eq!(c1.depth, 4);
        assert_eq!(c1.witness, Some(z4.from_int(2)));
        assert_eq!(depth(&z4, &vecz(&z4, &[0, 0, 0])), DepthResult { depth: 0, witness: None });
    }

    #[test]
    fn length_one_vectors() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        assert_eq!(depth(&z4, &vecz(&z4, &[0])).depth, 0);
        assert_eq!(depth(&z4, &vecz(&z4, &[2])).depth, 1);
    }

    #[test]
    fn shift_matches_example() {
        let z4 = Ring::parse("GR(4,1)").unwrap();
        let c = Poly::from_ints(&z4, &[0, 1, 2, 3]);
        let minus_one = z4.from_int(-1);
        assert_eq!(depth_via_shift(&c, 4, minus_one, 0).unwrap(), vecz(&z4, &[0, 1, 2, 3]));
        assert_eq!(depth_via_shift(&c, 4, minus_one, 1).unwrap(), vecz(&z4, &[1, 1, 1]));
        assert!(depth_via_shift(&c, 4, minus_one, 4).is_err());
    }
}
