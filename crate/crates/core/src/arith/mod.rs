pub mod ball;
pub mod integer;
pub mod logcomb;

pub use ball::{Ball, CBall, Q};
pub use logcomb::LogCombination;
