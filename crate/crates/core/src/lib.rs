//! Exact bisectors of plane quadrilaterals over Q and GF(p): the bisector
//! formula and locus, partners, pencil degenerations, and brute-force
//! oracles that check them.

pub mod field;
pub mod plane;
pub mod quad;
pub mod form;
pub mod bisect;
pub mod linalg;
pub mod pencil;
pub mod oracle;
