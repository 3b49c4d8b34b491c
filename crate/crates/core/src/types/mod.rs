//! Domain types shared by every module.

mod ext;
mod instance;
mod seed;
mod seq;
mod solution;

pub use ext::{Ext, Fin, NegInf, PosInf};
pub use instance::{normalize, Item, KnapsackInstance, Normalized};
pub use seed::SeedCtx;
pub use seq::{negate_shift, prefix_maxima, restrict, Direction, IntInterval, MonotoneSeq, Sentinel};
pub use solution::Solution;
