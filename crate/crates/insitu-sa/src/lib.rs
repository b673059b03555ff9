pub mod audit;
pub mod error;
pub mod io;
pub mod ip_general;
pub mod ip_int;
pub mod ip_ro_int;
pub mod merge;
pub mod sais_ref;
pub mod select;
pub mod text;

pub use error::{Error, Result};
pub use text::{Symbol, Text};
