//! Exact kneading theory for unimodal and Lorenz maps.

pub mod error;
pub mod exec;
mod fixed;
pub mod kneading;
pub mod maps;
pub mod outside;
pub mod periodic;
pub mod rotation;
pub mod scalar;
pub mod sturmian;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
