pub mod numerics;
pub mod sets;
pub mod functions;
pub mod classifier;
pub mod witnesses;
pub mod dsl;
pub mod plot;
pub mod report;
pub mod acceptance;
pub mod cli;
