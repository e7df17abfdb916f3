//! Successive-cancellation ordered search (SCOS) and companion decoders for
//! modified G_N-coset codes: polar, Reed-Muller, PAC and dRM-polar codes.
//!
//! The crate is organized bottom-up:
//!
//! - [`code`]: code specifications and constructions.
//! - [`polar`]: the polar transform and encoder.
//! - [`channel`]: BPSK over AWGN, LLRs.
//! - [`sc`]: the SC kernel with path metrics, scores and rollback.
//! - [`scos`]: the ordered-search ML decoder.
//! - [`decoders`]: SC, SCL, SCF, DSCF, SC-Fano behind [`decoders::DecoderKind`].
//! - [`oracle`]: brute-force ML decoding and node-visit lower bounds.
//! - [`harness`]: Monte Carlo sweeps and CSV output.
//!
//! ```
//! use scos::code::CodeSpec;
//! use scos::code::ReliabilityProfile;
//! use scos::sc::MetricMode;
//! use scos::scos::{scos_decode, ScosParams};
//!
//! let spec = CodeSpec::with_static_frozen(2, vec![2, 4]).unwrap();
//! let profile = ReliabilityProfile::new(vec![0.4512, 0.1813, 0.1813, 0.0952]).unwrap();
//! let llr = [-1.2, 3.4, -2.2, 0.9];
//! let out = scos_decode(&spec, &llr, &profile, MetricMode::Hardened, ScosParams::unbounded()).unwrap();
//! assert_eq!(out.u, vec![0, 1, 0, 1]);
//! assert!(out.ml_certified);
//! assert_eq!(out.visits, 7);
//! ```

pub mod channel;
pub mod code;
pub mod decoders;
mod error;
pub mod harness;
pub mod oracle;
pub mod polar;
pub mod sc;
pub mod scos;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/sc.md")]
    mod sc {}
    #[doc = include_str!("../../../book/src/scos.md")]
    mod scos {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
