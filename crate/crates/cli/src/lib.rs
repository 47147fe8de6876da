pub mod experiment;
pub mod replay;
