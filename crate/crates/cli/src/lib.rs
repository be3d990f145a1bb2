pub mod claims;
pub mod io;
pub mod suites;
