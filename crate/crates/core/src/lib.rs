//! Exact multiple-prior decision criteria.
//!
//! All arithmetic is over arbitrary-precision rationals. Credal sets are
//! finitely generated and every set operation reduces to an exact linear
//! program.

pub mod act;
pub mod aggregation;
pub mod credal;
pub mod criteria;
pub mod error;
pub mod lp;
pub mod mechanism;
pub mod mixture;
pub mod rational;
pub mod sampling;
pub mod comparative;
pub mod completion;
pub mod axioms;

pub use axioms::{check_axiom, Axiom, AxiomReport};
pub use act::{Act, AffineUtility, Outcome, StateSpace, UtilityProfile};
pub use credal::{CredalSet, ProbabilityVector};
pub use criteria::{
    AlphaMeu, Bewley, Comparison, EuRange, HopeAndPrepare, NascimentoRiella, PreferenceSpec,
    Relation, Twofold,
};
pub use error::{Error, Result};
pub use rational::Rational;
