pub mod config;
pub mod corpus;
pub mod diagram;
pub mod lattice;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod skein;
