#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ambiguity;
pub mod gadgets;
mod graph;
pub mod linalg;
pub mod oracle;
pub mod pfa;
pub mod unary;
