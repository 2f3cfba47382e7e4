//! Reference data shipped with the crate, embedded at compile time.

/// Flagship `M_p`, `M_xi` as published, `row col a b value`, 1-based.
pub const FLAGSHIP_MP: &str = include_str!("../fixtures/flagship_mp.triplets");
pub const FLAGSHIP_MXI: &str = include_str!("../fixtures/flagship_mxi.triplets");
/// `name: expr` relations in `p, xi, q1, q2`.
pub const RELATIONS: &str = include_str!("../fixtures/relations.txt");
/// `name: expr` operators in `D1, D2, q1, q2, z`.
pub const DELTA_OPS: &str = include_str!("../fixtures/delta.ops");
/// The first operator with its non-homogeneous term as printed.
pub const DELTA1_PRINTED: &str = include_str!("../fixtures/delta1_printed.ops");
pub const RELATIONS_PRINTED: &str = include_str!("../fixtures/relations_printed.txt");
/// Normalized coefficients `i!^2 j!^6 c_ij`, rows `i`, columns `j`.
pub const APERY_MATRIX: &str = include_str!("../fixtures/apery_matrix.csv");
/// Leading terms of the regularized period sequence of the flagship cut.
pub const PERIOD_TERMS: &str = include_str!("../fixtures/period_terms.txt");
/// Picard–Fuchs operator for the flagship cut, one `c*t^m*D^e` term per line.
pub const FLAGSHIP_PF: &str = include_str!("../fixtures/flagship_pf.op");
pub const FLAGSHIP_TOML: &str = include_str!("../fixtures/flagship.toml");
pub const P1_TRIVIAL_TOML: &str = include_str!("../fixtures/p1_trivial.toml");
pub const FLAGSHIP_BLOWUP_SEEDS: &str = include_str!("../fixtures/flagship_blowup.seeds");
