pub mod acceptance;
pub mod cli;
pub mod cobordism;
pub mod fincat;
pub mod freerigid;
pub mod grothendieck;
pub mod io;
pub mod moncat;
pub mod report;
