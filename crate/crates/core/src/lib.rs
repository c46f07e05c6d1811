#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chevalley;
pub mod coxeter;
pub mod gf;
pub mod kl;
pub mod linalg;
pub mod modules;
pub mod report;
pub mod rootsys;
pub mod suites;
