//! Exact coefficient rings: residue polynomials, the boundary Laurent ring
//! and Laurent polynomials in the curve parameter.

mod laurent;
mod mpoly;
mod series;

pub use laurent::{BoundaryDecomposition, BoundaryLaurent};
pub use mpoly::MPoly;
pub use series::SeriesW;

/// Owned-operand forwarding for types that implement the by-reference ops.
macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

pub(crate) use forward_owned_ops;
