//! Exact-arithmetic invariants of quasitoric manifolds whose quotient
//! polytope is a product of two simplices (second Betti number 2).
//!
//! Such a manifold is determined by a pair of integer vectors `a` (length m)
//! and `b` (length n) subject to the condition `a[j] * b[i] ∈ {0, 2}` for all
//! i, j. This crate computes their integral cohomology rings, classifies
//! graded ring isomorphisms and automorphisms, derives homeomorphism and
//! diffeomorphism normal forms, builds the associated fans for the toric
//! cases, and produces sphere-level witness maps realizing cohomology
//! automorphisms.

pub mod charmat;
pub mod classify;
pub mod error;
pub mod fan;
pub mod intmat;
pub mod realize;
pub mod ring;
pub mod ring_iso;
pub mod verify;

pub use classify::{DiffeoWitness, NormalForm, NormalFormKind};
pub use error::{QtError, Result};
pub use fan::{Fan, SmoothReport, SumOrientation};
pub use realize::{InducedWitness, RealizationPlan, SphereMap, StandardMapKind};
pub use ring::{QuasitoricPair, RingElement, RingPresentation};
pub use ring_iso::{AutGroup, RingMap};
pub use verify::{run_all, CriterionReport};
