//! Combinatorics of extended affine Weyl groups and the module tables they
//! control: exact root-system data, canonical forms and length/descent/Bruhat
//! arithmetic in W_ext, the shifted dot action on affine weights,
//! Kazhdan-Lusztig polynomials with the mu-recursion, fully commutative
//! elements and heaps, nilpotent-orbit partition calculus, fusion rings of
//! centralizer groups, and a verification engine for the result tables.

pub mod affine_weyl;
pub mod cli;
pub mod fusion;
pub mod kl;
pub mod orbits;
pub mod rootdata;
pub mod tables;
pub mod weights;

mod mat;
