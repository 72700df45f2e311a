//! Exact construction, certification and classification of hyperbolic
//! homogeneous polynomials in two variables.
//!
//! A binary form `f(x, y)` of degree `D` is *hyperbolic* when its Hessian
//! `f_xx f_yy - f_xy^2` is strictly negative away from the origin. The
//! connected components of the space of such forms are labelled by the
//! winding index of the curve of second fundamental forms along the unit
//! circle, which equals `2 - m` with `m` the number of real linear factors.
//!
//! Everything that decides a verdict runs in exact rational arithmetic;
//! floating point only appears in the numeric cross-checks ([`winding`]) and
//! in curve rendering ([`asymptotics`]).

pub mod asymptotics;
pub mod certify;
pub mod error;
pub mod families;
pub mod forms;
pub mod index;
pub mod inequalities;
pub mod parse;
pub mod rat;
pub mod sturm;
pub mod unipoly;
pub mod verify;
pub mod winding;

pub use certify::{Certificate, Method, Verdict};
pub use error::{Error, Result};
pub use forms::{BinaryForm, Chart, LinearForm};
pub use rat::Rat;
pub use unipoly::UniPoly;
