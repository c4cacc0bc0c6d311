//! Instance generation: closed-form parameter math and the concrete families.

mod families;
mod params;

pub use families::{
    lower_bound_graph, permute_ids, random_inputs, random_tree, weighted_construction, GenError,
    Instance, InstanceMeta, LbGraph,
};
pub use params::{
    alpha_logstar, alpha_poly, alpha_seq_poly, iterated_log, lengths_from_exponents,
    params_from_rational, round_half_up, x_factor, x_prime, ParamsError, Regime,
};
