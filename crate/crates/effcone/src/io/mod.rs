pub mod normaliz;
pub mod report;
pub mod tables;
