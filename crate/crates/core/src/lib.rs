//! Exact graded linear algebra for quotients of free algebras over
//! cyclotomic fields.

pub mod cyclotomic;
pub mod engine;
pub mod freealg;
pub mod linalg;
pub mod parallel;
pub mod oracle;
pub mod group;
pub mod constructions;
pub mod points;
pub mod series;
pub mod io;
pub mod cache;
pub mod verify;
