//! Small-dimension complex linear algebra shared by the simulators.

mod eigen;
mod matrix;
mod ode;

pub use eigen::{eig4, eigenvalues, hermitian_eigen, singular_values};
pub use matrix::ComplexMatrix;
pub use ode::{rk4_step, Rk4Workspace};
