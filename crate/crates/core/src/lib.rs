pub mod cli;
pub mod degree;
pub mod error;
pub mod harmonics;
pub mod io;
pub mod majorana;
pub mod multipole;
pub mod polyderiv;
pub mod special;
pub mod sphere;
pub mod verify;
pub mod wigner;
