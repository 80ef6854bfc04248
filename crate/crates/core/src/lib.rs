#![allow(clippy::type_complexity, clippy::wrong_self_convention)]

pub mod cli;
pub mod dga;
pub mod exactla;
pub mod graded;
pub mod hochschild;
pub mod specseq;
