//! Exact abelianization and perfectness classification for cyclically
//! presented groups, with emphasis on the Prishchepov family `P(r,n,k,s,q)`.
//!
//! The abelianization of `G_n(w)` is presented by the circulant matrix of
//! exponent sums of `w`; its determinant is the product of the representer
//! polynomial over the `n`-th roots of unity, which factors into resultants
//! against cyclotomic polynomials. Every quantity here is computed exactly.

pub mod arith;
pub mod classify;
pub mod cyclic_words;
pub mod exact_linear;
pub mod poly;
pub mod prishchepov;

pub use classify::{
    abelianization, abelianize_word, corollary_b_classify, determinant, is_perfect, is_unit_at,
    main_lemma_instance, newton_girard_check, theorem_a_instance, type_flags, unit_symmetry_search,
    AbelianReport, ClassifyError, PowerSumCheck, TypeFlags, UnitSymmetry, Verdict,
};
pub use cyclic_words::{parse_word, CyclicWord, Letter, WordError};
pub use exact_linear::{IntMatrix, LinearError, SmithForm};
pub use poly::{circulant_resultant, cyclotomic, resultant, IntPoly, PolyError};
pub use prishchepov::{
    flip, involution, poly_f, poly_g, poly_general, reduce, word_of, ParamError, PrishParams,
    Reduction, ReductionError,
};

pub use num_bigint::BigInt;
