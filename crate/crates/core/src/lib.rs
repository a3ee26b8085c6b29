//! Exact character theory for small finite groups.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod character;
pub mod construction;
pub mod cyclotomic;
pub mod gf2;
pub mod group;
