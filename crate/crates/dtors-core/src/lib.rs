//! Computational core for torsion of Drinfeld-type module families over
//! function fields: finite-field towers, polynomial arithmetic over F_q[t]
//! and F_q[t][z], the module action and torsion orders, and specialization
//! certificates that bound common-zero counts under t -> tau.

pub mod drinfeld;
pub mod error;
pub mod ffield;
mod linalg;
pub mod polyring;
pub mod specialize;

pub use error::{Error, Result};
