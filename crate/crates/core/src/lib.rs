pub mod bhmat;
pub mod chaincx;
pub mod cli;
pub mod clifford;
pub mod corpus;
pub mod dwork;
pub mod cohoring;
pub mod homolab;
pub mod linalg;
pub mod rational;
pub mod suites;
