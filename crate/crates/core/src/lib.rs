pub mod crosschar;
pub mod defchar;
pub mod error;
pub mod exactnum;
pub mod lie;
pub mod oracle;
pub mod regclasses;
pub mod symspin;
pub mod weights;

pub use error::{Error, Result};
