//! Attenuation functions, shot-noise interference fields, SINR graphs and
//! the Laplace transform of Poisson shot noise.

mod attenuation;
mod gamma_scan;
mod interference;
mod laplace;
mod params;
pub mod quadrature;
mod sinr;

pub use attenuation::Attenuation;
pub use gamma_scan::{
    estimate_gamma_c, estimate_gamma_c_with, interferer_seed, sinr_instances, sinr_step, Criterion,
    Interferers,
};
pub use interference::{
    interference_at, interference_grid, write_interference_grid_csv, InterferenceField, TruncatedSum,
};
pub use laplace::{
    empirical_joint_laplace, interference_samples, laplace_exponent_integral,
    poisson_laplace_closed_form,
};
pub use params::{snr_range, SinrParams, SinrParamsRecord};
pub use sinr::{build_sinr_graph, sinr_value, SinrInstance};
