//! Band operators on modules indexed by odd integers, with beta-weights
//! normalized away so all linear algebra is over `Q`; image stability, the
//! rho and tau bases, and the maps into `Q[v, v^-1]`.

mod bases;
mod operator;
mod phi;

pub use bases::{
    rho_basis, stable_operation_tower, structure_map, tau_basis, BasisCertificate, BasisKind, StableTowerReport,
};
pub use operator::{
    a_coeff, c_coeff, c_prime, image_stability, s_q_image_report, BandOperator, Direction, ImageStability,
    OperatorKind, Tower,
};
pub use phi::{
    c_prime_product, denominator_identity, phi_compatibility, phi_map, phi_value, DenominatorRow, PhiConvention,
    PhiReport,
};
