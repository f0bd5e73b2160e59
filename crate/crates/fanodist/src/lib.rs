//! Exact computations with polynomial differential forms on projective and
//! weighted projective spaces: Pfaffian classes of 1-forms with values in a
//! line bundle, Bott and weighted-complete-intersection cohomology, and the
//! degree-one distributions of the Grassmannian of lines in `P⁴`.

pub mod cli;
pub mod cohomology;
pub mod distribution;
pub mod error;
pub mod form;
pub mod grassmann;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod report;
pub mod skew;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use form::{Form, MultiIndex};
pub use poly::{Monomial, Polynomial};
pub use rational::Rational;
pub use text::{parse_form, parse_form_with_vars, parse_polynomial};
