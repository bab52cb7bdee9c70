//! Exact symbolic engine for the even symplectic fermion algebra: Fock space
//! combinatorics, vertex operator mode actions, Zhu algebra quotients and the
//! fusion rule verifications built on them.

pub mod fock;
pub mod fusion;
pub mod cache;
pub mod commands;
pub mod config;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod report;
pub mod series;
pub mod vertex;
pub mod zhu;
