//! Gröbner bases, Macaulay matrices, Hilbert series and solving-degree
//! bounds for polynomial systems over prime fields.
//!
//! The crate is organised bottom-up: [`field`], [`monomial`] and [`poly`]
//! provide the arithmetic; [`series`] and [`bounds`] evaluate the closed-form
//! degree bounds; [`groebner`] and [`macaulay`] compute bases and the three
//! solving degrees; [`hilbert`] and [`regularity`] analyse the resulting
//! ideals; [`harness`] ties it together into tables, fixtures and surveys.

pub mod bounds;
pub mod field;
pub mod groebner;
pub mod harness;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod macaulay;
pub mod monomial;
pub mod poly;
pub mod random;
pub mod regularity;
pub mod series;

mod degree;

pub use degree::Degree;
pub use field::{FieldElement, PrimeField};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{PolySystem, Polynomial, Ring};
