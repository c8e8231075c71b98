//! Exact computer algebra for polynomials with small Hessian rank.

pub mod apex;
pub mod batch;
pub mod classify;
pub mod diffcalc;
pub mod error;
pub mod normform;
pub mod polyring;
pub mod qlinalg;
pub mod relations;
pub mod sample;
pub mod symlinalg;

pub use error::{Error, Result};
pub use polyring::{Polynomial, Rational, RationalFunction};
