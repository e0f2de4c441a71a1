//! Finite groups, their commuting graphs, and exact spectral invariants.

pub mod catalog;
pub mod charpoly;
pub mod energy;
pub mod exact;
pub mod genus;
pub mod graph;
pub mod group;
pub mod poly;
pub mod report;
pub mod spectrum;
pub mod verify;
pub mod zagreb;
