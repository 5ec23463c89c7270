//! Graded Lie algebras of right-angled Coxeter groups over GF(2).
//!
//! The crate is organised bottom-up:
//!
//! * [`complexes`]: flag complexes, full subcomplexes, GPTW generator indices;
//! * [`series`]: the Poincaré-series identity determining `dim (N_K)_α`;
//! * [`pcalg`]: partially commutative algebras `A = U(L_K)`, `B` and their
//!   normal forms;
//! * [`nk`]: Lie polynomials, the subalgebra `N_K ⊂ L_K` and its dimensions;
//! * [`coxeter`]: words in `RC_K`, Magnus-type maps and lower bounds for
//!   `dim L_k(RC_K)`;
//! * [`lcs`]: the squaring operation `h`, repeat removal and the bracket
//!   calculator on `span(ḡ_i) ⊕ N_K[t]`;
//! * [`catalog`], [`expr`], [`worked`]: built-in complexes, the expression
//!   grammar and the worked-example reproductions.

pub mod catalog;
pub mod complexes;
pub mod coxeter;
pub mod error;
pub mod exec;
pub mod expr;
pub mod gf2;
pub mod lcs;
pub mod nk;
pub mod pcalg;
pub mod series;
pub mod worked;

pub use complexes::{CommIndex, FlagComplex, GptwIndex, VertexSet};
pub use error::{Error, Result};
pub use exec::Exec;
