pub mod category;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod grothendieck;
pub mod homology;
pub mod metrics;
pub mod module;
pub mod stability;

pub use error::{Error, Result};
