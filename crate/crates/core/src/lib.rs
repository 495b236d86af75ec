pub mod formula;
pub mod model;
pub mod systems;
pub mod game;
pub mod solver;
pub mod fast;
pub mod corpus;
pub mod oracle;
pub mod reductions;
pub mod io;
pub mod verify;
pub mod cli;
