//! Exact-computation laboratory for code smoothing.
//!
//! The crate enumerates binary code ensembles (all linear codes, doubly-even
//! self-dual codes, quasi-cyclic codes), materializes smoothed distributions
//! `U_F + N` exactly, measures Renyi/KL divergences against the uniform law,
//! verifies the ensemble averaging identities, analyzes the dominant exponent
//! of the smoothing bound, and runs the LPN-to-decoding reduction with exact
//! divergence measurement.
//!
//! Everything is deterministic: exact modes iterate ensembles in a fixed
//! order, and sampled modes are driven by a seeded counter-based RNG.

pub mod codes;
pub mod dist;
pub mod error;
pub mod exponent;
pub mod gf2;
pub mod lpn;
pub mod smoothing;

pub use codes::{
    enumerate_linear_codes, enumerate_quasi_cyclic, enumerate_self_dual_doubly_even,
    gaussian_binomial, membership_count, qc_balance_condition, EnsembleSpec, LinearCode,
    QuasiCyclicCode,
};
pub use dist::{
    bernoulli_product, binary_entropy, convolve, kl_divergence, parity_conditioned,
    parity_forced, renyi_divergence, renyi_entropy, shannon_entropy, statistical_distance,
    walsh_hadamard, DivergenceValue, LogBase, NoiseModel, Pmf, DEFAULT_DENSE_LIMIT,
};
pub use codes::{code_from_text, code_to_text, sample_full_rank_code};
pub use error::{Error, Result};
pub use exponent::{
    concavity_report, dominant_exponent_bruteforce, dominant_exponent_closed, exponent_f,
    exponent_f_prime, ConcavityReport, PartitionResult, SymbolDistribution,
};
pub use gf2::{rank_of_set, PackedMatrix, PackedVector};
pub use lpn::{
    binary_entropy_inverse, conditional_decomposition_check, entropy_rate_check,
    exact_reduction_divergence, flip_probability, reduction_param_calculator,
    reduction_statistical_distance, sample_adp_instance, AdpInstance, DecompositionReport,
    EntropyRateReport, LpnSample, ReductionParams,
};
pub use smoothing::{
    code_uniform_pmf, ensemble_expected_exp_divergence, per_code_divergence, NoiseSpectrum,
    PerCodeDivergence,
    rate_condition_holds, self_dual_cross_entropy, smoothed_pmf,
    smoothing_scan, theorem31_bound, verify_averaging_linear, verify_averaging_qc,
    verify_averaging_self_dual, verify_extended_averaging, AveragingCheck, CrossEntropyReport,
    EnsembleMode, ScanRow, SmoothingReport,
};
