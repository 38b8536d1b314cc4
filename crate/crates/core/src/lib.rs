pub mod bipartite;
pub mod cli;
pub mod decompose;
pub mod family;
pub mod generators;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod matching;
pub mod oracle;
