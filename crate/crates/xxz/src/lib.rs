//! Spin-chain side of the Raise and Peel model: the Temperley–Lieb
//! generators in the spin-1/2 representation, the twisted XXZ Hamiltonian in
//! the `S_z = 0` sector and its ground energy.

pub mod bridge;
pub mod error;
pub mod hamiltonian;
pub mod lanczos;
pub mod spin;

pub use bridge::{lambda_bridge, BridgeResult};
pub use error::{Result, XxzError};
pub use hamiltonian::{build_xxz, XXZParams};
pub use lanczos::{ground_energy, ground_state, GroundState, LanczosOptions};
pub use spin::{check_tl, tl_generator_matrix, SpinOperator, TlReport};
