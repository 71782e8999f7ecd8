//! Depth spectra of repeated-root constacyclic codes over finite chain rings.
//!
//! Codes are ideals `<prod f_l(x)^{k_l}>` of `R[x]/<x^N - lambda>` where
//! `R` is a Galois ring, a truncated ring `F_q[u]/(u^e)` or a finite field,
//! `N = n p^s` and `lambda = alpha + gamma beta`. Spectra are available in
//! closed form ([`spectra::spectrum_dispatch`]) and by exhaustive
//! enumeration ([`spectra::distribution_oracle`]).

pub mod code;
pub mod depth;
pub mod error;
pub mod factor;
mod fp;
pub mod io;
pub mod poly;
pub mod ring;
pub mod spectra;

pub use code::{Cardinality, Code, EchelonBasis, TorsionCode};
pub use depth::{depth, derivative, DepthResult};
pub use error::{Error, Result};
pub use factor::{BetaKind, Factorization, LambdaSplit};
pub use poly::{Degree, Poly};
pub use ring::{Family, Ring, RingElem, RingSpec};
pub use spectra::{DepthDistribution, DepthSpectrum, SpectrumCase};

/// Default upper bound on the number of codewords the oracle will visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
