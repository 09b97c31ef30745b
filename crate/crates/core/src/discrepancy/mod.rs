//! Long, short and lexicographic partial sums, growth classification of modified
//! characters, the rotation construction, and the bounded-discrepancy constructor.

pub mod lexicographic;
pub mod long;
pub mod polymath;
pub mod rotation;
pub mod short;
pub mod spectrum;

pub use long::{
    long_sum_brute, long_sum_closed, long_sum_literal, long_sum_max, long_sums_brute, long_sums_closed, running_max_slope,
    DivisorSumSeq, LPolynomial, LongMax, ModulusHistogram, SlopeFit,
};
pub use spectrum::{
    classify_growth, classify_pm1, classify_pm1_as_printed, effective_spectrum, partial_fractions, root_spectrum, GrowthReport,
    RootSpectrum, SpectrumRoot, Verdict,
};
pub use short::{
    mean_square_lower_bound, mean_square_t, prime_power_short_formula, short_scan, short_sum, LowerBound, PrimePowerChar,
    PrimePowerSum, ShortScan, ShortScanner,
};
pub use lexicographic::{
    digit_recursion_check, lex_growth_witness, lex_prefix_sums, lex_sum, DigitRecursionReport, ExactLexPrefix, LexDomain, LexWitness,
};
pub use polymath::{enumerate_alpha_beta, polymath_construct, PolymathRecord, PolymathState};
pub use rotation::{rotated_sum, rotation_exponents};
