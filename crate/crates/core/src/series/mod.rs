//! Truncated Taylor-jet arithmetic over complex scalars and over polynomials
//! in the energy.

mod epoly;
mod jet;
mod scalar_jet;

pub use epoly::EnergyPoly;
pub use jet::Jet;
pub use scalar_jet::ScalarJet;
