pub mod character;
pub mod closed_forms;
pub mod error;
pub mod moments;
pub mod partition;
pub mod perm;
pub mod poly_lab;
pub mod report;
pub mod verify;
pub mod rational;
