//! Number fields `Q[x]/(f)`: exact element arithmetic, trace and norm,
//! trace-form Gram matrices, certified real-root isolation and embedding
//! signs via Sturm sequences, and a complete irreducibility test.

mod field;
mod intpoly;
mod irreducible;
mod modp;
mod ratpoly;
mod sturm;

use thiserror::Error;

use crate::arith::ArithError;

pub use field::{FieldElement, Involution, NumberField};
pub use intpoly::IntPolynomial;
pub use irreducible::irreducible_over_q;
pub use modp::{factor_mod_p, is_squarefree_mod_p, ModPoly, PrimeCtx};
pub use ratpoly::{monic_model, RatPoly};
pub use sturm::{
    bisect_once, cauchy_root_bound, count_real_roots_in, eval_interval, isolate_real_roots,
    refine_to_width, sturm_chain, Endpoint, RatInterval,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumfieldError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("interval endpoint is a root; perturb and retry")]
    EndpointRoot,
    #[error("division by zero element")]
    DivisionByZero,
    #[error("polynomial is not irreducible over Q")]
    Reducible,
    #[error("involution {0} is not an automorphism of this field")]
    InvalidInvolution(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
