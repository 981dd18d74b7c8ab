//! Text formats, the randomized verifier and the command-line front end
//! over `covertorus-core`.

pub mod env;
pub mod syntax;
pub mod verify;
pub mod cli;
