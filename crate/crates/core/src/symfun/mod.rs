//! Truncated symmetric functions in the power-sum basis.

pub mod ops;
pub mod partition;
pub mod schur;
pub mod series;

pub use ops::{
    legendre_residual, ss_exp, ss_exp_classical, ss_geom, ss_legendre, ss_log, ss_log1m,
    ss_log_classical, ss_pleth_inverse, ss_plethysm, ss_psi, ss_psi_inv, ss_recip,
};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use schur::{character, powersum_to_schur, schur_to_powersum};
pub use series::{
    coeff, fixed_count, rk, ss_adams, ss_arith, ss_derivative, z_of, SeriesOp, SymSeries,
};
