//! Dense matrices, the differentiation tape, Adam, and gradient checking.

mod adam;
mod array;
pub mod gradcheck;
pub mod init;
mod tape;

pub use adam::{AdamConfig, AdamState};
pub use array::Array2;
pub use gradcheck::{grad_check, GradCheckReport};
pub use tape::{sigmoid, softmax_rows, Gradients, NodeId, OpKind, Tape};
