//! Tropical convolution engine.

mod monotone;
pub mod naive;
pub mod ntt;
mod oneside;
mod poly;
pub mod prime;
mod refine;
mod residue;
mod segtree;

pub use monotone::{
    maxplus_monotone_raw, minplus_monotone_raw, monotone_maxplus_rect, monotone_maxplus_rect_with,
    monotone_minplus_rect, monotone_minplus_rect_with, Strategy, MIN_SQRT_M,
};
pub use naive::{maxplus_naive, minplus_naive};
pub use oneside::{one_monotone_maxplus, one_monotone_raw};
pub use poly::{poly_mult_3var, Packing, Poly3};
pub use refine::{refine_pair, runs, ConvLevelState, Run, Segment};
pub use residue::{class_of, class_shift, class_slice, infinity_runs, residue_split, ResidueClassPair};
pub use segtree::ChminTree;

use crate::types::{Ext, Fin, PosInf};

/// Min-plus product of step sequences, evaluated over their constant runs.
pub fn tilde_convolution(a: &[Ext], b: &[Ext]) -> Vec<Ext> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let raw = |v: &[Ext]| -> Vec<u64> {
        let lo = v.iter().filter_map(|x| x.finite()).min().unwrap_or(0);
        v.iter().map(|x| x.finite().map_or(naive::INF, |f| (f - lo) as u64)).collect()
    };
    let lo = |v: &[Ext]| v.iter().filter_map(|x| x.finite()).min().unwrap_or(0);
    let (ra, rb) = (runs(&raw(a)), runs(&raw(b)));
    refine::tilde_from_runs(&ra, &rb, a.len() + b.len() - 1)
        .into_iter()
        .map(|v| if v == naive::INF { PosInf } else { Fin(v as i64 + lo(a) + lo(b)) })
        .collect()
}
