//! Singularities, GIT stability and moduli of del Pezzo surfaces.

pub mod analysis;
pub mod catalog;
pub mod config;
pub mod deform;
pub mod enumer;
pub mod germ;
pub mod gitstab;
pub mod input;
pub mod moduli;
pub mod par;
pub mod singular;
pub mod polyalg;
