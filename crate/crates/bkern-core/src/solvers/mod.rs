//! Exact exponential-time oracles for the supported graph problems and the
//! polynomial subroutines the kernels build on.

mod blossom;
mod expansion;
mod flower;
mod forest;
mod matching;
pub mod naive;
mod opt;
mod scc;
mod small;
mod treedepth;

pub use blossom::{general_max_matching, matching_size};
pub use expansion::{check_two_expansion, expansion_sets};
pub use flower::{flower_dual_value, flower_order, max_flower, FlowerCertificate};
pub use forest::vc_forest_dp;
pub(crate) use matching::hopcroft_karp;
pub use matching::{hall_violator, max_matching, Bipartite, HallViolator, Matching, Side};
pub use naive::{naive_opt, naive_opt_small};
pub use opt::{
    ham_cycle_trivial, ham_path_trivial, opt_exact, opt_exact_small, Goal, OptValue, OracleLimits,
    Problem,
};
pub use scc::{tail_sccs, tarjan_scc, Digraph};
pub use small::{subsets_of_size, SmallGraph};
pub use treedepth::{treedepth_decompose, vc_bounded_td_dp, TreedepthDecomposition};
