//! Base-case solvers: exact DPs, greedy bound, color coding, banded DPs.

mod bc;
mod bellman;
mod curve;
mod greedy;
mod hexu;

pub use bc::{bc_profit_bounded, bc_weight_bounded, GroupKey};
pub use bellman::{bellman_opt, bellman_profit_dp, bellman_weight_dp, BellmanTable};
pub use curve::{combine, merge_all, Curve, Node, Pick, Sense, Trace};
pub use greedy::{greedy_upper_bound, ratio_order};
pub use hexu::{hexu_profit_window, hexu_weight_window, HexuTable};

pub(crate) use bc::{profit_bounded_node, weight_bounded_node};
pub(crate) use bellman::{picks_of, profit_node as bellman_profit_node, weight_node as bellman_weight_node};
pub(crate) use greedy::ratio_cmp;
pub(crate) use hexu::{profit_window_node as hexu_profit_node, weight_window_node as hexu_weight_node};
