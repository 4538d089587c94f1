pub mod cli;
pub mod error;
pub mod io;
pub mod kleene;
pub mod matrix;
pub mod periodic;
pub mod precedence;
pub mod pteg;
pub mod rational;
pub mod scalar;
pub mod ultimate;

pub use error::{Error, Result};
pub use kleene::{Circuit, NonegsetVerdict};
pub use matrix::MaxPlusMatrix;
pub use rational::Rational;
pub use scalar::ExtendedReal;
