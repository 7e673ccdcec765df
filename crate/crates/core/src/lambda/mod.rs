//! Exterior powers on the representation ring of `Sp_2^k`, invariant
//! rewriting in the `e_i = chi_i + chi_i^-1`, and the Borel-class pipeline for
//! rank-8 and triple-product bundles.

mod borel;
mod character;

pub use borel::{
    borel_from_lambda, expected_a, expected_c, odd_power_sum_series, printed_total_class, rank_eight_lambda_identities,
    series_ring, triple_borel_reference, triple_character, triple_lambda_reference, triple_product_borel, BorelCombos,
    BorelData, SeriesCoefficient, SeriesReport, TripleProduct,
};
pub use character::{
    beta_dictionary, borel_ring, character_ring, expand_fundamentals, invariantize, lambda_op, trivial, Character,
    LambdaTable,
};
