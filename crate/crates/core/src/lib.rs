//! Flux reconstruction with Jacobi-weighted energy-stable correction
//! functions, a 1D solver, von Neumann analysis and Burgers turbulence
//! diagnostics.

pub mod corrections;
pub mod error;
pub mod fr1d;
pub mod jacobi;
pub mod specfun;
pub mod timeint;
pub mod turbulence;
pub mod vonneumann;

pub use corrections::{CorrectionPair, NamedScheme, SchemeParams};
pub use error::{Error, Result};
pub use fr1d::{FluxModel, FrOperators, Mesh1D, PointRule, SolutionField};
pub use jacobi::{JacobiBasis, ModalSeries, QuadratureRule};
pub use timeint::RkScheme;
pub use turbulence::{EnergySpectrum, EnsembleResult, Resonance, TurbulenceConfig};
pub use vonneumann::{DispersionPoint, ModeTag, OperatorSpectrum};
