//! Exact-arithmetic engine for linear data varying over finite groupoids.
//!
//! The crate implements, with zero-tolerance exact arithmetic over the
//! rationals and the Gaussian rationals:
//!
//! * [`scalars`] — canonical-form field elements for ℚ and ℚ(i);
//! * [`finvect`] — finite-dimensional vector spaces with labeled bases,
//!   exact Gaussian elimination, tensor/sum/hom constructions;
//! * [`fingrpd`] — finite groupoids presented by full composition tables,
//!   functors, natural transformations, and the canonical model-structure
//!   predicates;
//! * [`locsys`] — vector bundles (local systems) over finite groupoids:
//!   base change along functors, external tensor product, Kan extensions by
//!   explicit (co)ends, and the isomorphism witnesses the calculus provides;
//! * [`chaincx`] — bounded chain complexes, tensor and hom complexes,
//!   homology, generating (acyclic) cofibrations, lifting problems,
//!   truncated simplicial objects and their totalization;
//! * [`dglocsys`] — chain-complex bundles over finite groupoids and the
//!   classification of their morphisms into weak equivalences, fibrations
//!   and cofibrations;
//! * [`quantum`] — measurement comonads and state preparation over finite
//!   branch sets, with an exactly-computed qubit demonstration;
//! * [`laws`] — seeded, deterministic law suites that re-check every
//!   identity the other modules promise, reporting serialized
//!   counterexamples on failure;
//! * [`json`] — serde-backed interchange forms for all of the above.
//!
//! Isomorphism claims are always established by constructing an explicit
//! witness morphism and checking exact invertibility, never by comparing
//! dimensions.

pub mod chaincx;
pub mod dglocsys;
pub mod fingrpd;
pub mod finvect;
pub mod json;
pub mod laws;
pub mod locsys;
pub mod quantum;
pub mod scalars;
