//! Exact integer computations around chirally cosmetic fillings of the
//! twist family `M_n`: slope arithmetic, Conway/Schubert forms of two-bridge
//! links, Smith normal form, and first homology of Dehn-surgery
//! descriptions.

pub mod family;
pub mod matrix;
pub mod report;
pub mod slope;
pub mod surgery;
pub mod two_bridge;

pub use family::{family_schubert, DegenerateMember};
pub use matrix::{
    cokernel, minors_gcd_oracle, smith_normal_form, AbelianGroup, IntegerMatrix, SnfResult,
};
pub use report::{certify_family, verify_range, Chirality, FamilyReport, NullHomology, Sweep};
pub use slope::{Slope, SlopeInvolution};
pub use surgery::{build_presentation, fill_remaining, mn_framed_link, FillingSpec, FramedLink};
pub use two_bridge::{ConwayWord, SchubertForm};

pub use num_bigint::BigInt;
