//! Concrete Painter strategies and Builder constructions.

pub mod painters;

pub use painters::*;
pub mod builders;
pub use builders::*;
pub mod forcing;
pub use forcing::*;
pub mod cycle;
pub use cycle::*;
