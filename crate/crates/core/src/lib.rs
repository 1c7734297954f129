//! Exact enumeration of finite Coxeter groups and the two class counts
//! `T(R)` (classes without eigenvalue +1) and `S(R)` (classes without
//! eigenvalue −1), with closed forms for every irreducible type.
//!
//! ```
//! use coxeter_traces::classes::{count, Strategy};
//! use coxeter_traces::group::GroupBudget;
//!
//! let c = count(&"F4 + A2".parse()?, Strategy::Brute, &GroupBudget::default())?;
//! assert_eq!(c.pair(), (9, 18));
//! # Ok::<(), coxeter_traces::Error>(())
//! ```

pub mod arith;
pub mod cache;
pub mod classes;
pub mod combinatorics;
pub mod error;
pub mod group;
pub mod linalg;
pub mod models;
pub mod roots;

pub use error::{Error, Result};
