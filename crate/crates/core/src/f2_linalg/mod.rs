//! Dense bit-packed linear algebra over GF(2).

mod bitvec;
mod echelon;
pub mod io;
mod matrix;

pub use bitvec::BitVec;
pub use echelon::{
    column_space_lift, inverse, kernel_basis, quotient_reps, rank, rref, solve_in_span, RowReducer, Rref,
};
pub use matrix::BitMatrix;
