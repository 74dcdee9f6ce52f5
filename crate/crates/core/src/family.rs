//! Closed-form invariants of the twist family `K_n = C(n, n, -1, n, n)`.
//!
//! For `n ∉ {0, 1}`:
//!
//! * `K_n` has Schubert form `S(p(n), q(n))` with
//!   `p(n) = n⁴ - 2n³ + 2n² - 2n + 1 = (n - 1)²(n² + 1)` and
//!   `q(n) = n³ - 2n² + n - 1`;
//! * the exterior `M_n` of the drilled surgery component has
//!   `H_1 = Z ⊕ Z/t(n)` with `t(n) = |(n - 1)(n² + 1)|`.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::two_bridge::SchubertForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("n = {0} is a degenerate family member (n must not be 0 or 1)")]
pub struct DegenerateMember(pub i64);

pub fn check_member(n: i64) -> Result<(), DegenerateMember> {
    if n == 0 || n == 1 {
        Err(DegenerateMember(n))
    } else {
        Ok(())
    }
}

/// `n⁴ - 2n³ + 2n² - 2n + 1`.
pub fn lens_order_poly(n: i64) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n3 * &n;
    n4 - 2 * n3 + 2 * n2 - 2 * n + 1
}

/// `n³ - 2n² + n - 1`.
pub fn schubert_q_poly(n: i64) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    n3 - 2 * n2 + n - 1
}

/// `|(n - 1)(n² + 1)| = |n³ - n² + n - 1|`.
pub fn torsion_order(n: i64) -> BigInt {
    let n = BigInt::from(n);
    let t: BigInt = (&n - 1) * (&n * &n + 1);
    t.abs()
}

/// Schubert form of `K_n`. Panics if `p(n) ≠ (n - 1)²(n² + 1)`, which
/// would mean the polynomial arithmetic is broken.
pub fn family_schubert(n: i64) -> Result<SchubertForm, DegenerateMember> {
    check_member(n)?;
    let p = lens_order_poly(n);
    let nb = BigInt::from(n);
    let factored = (&nb - 1) * (&nb - 1) * (&nb * &nb + 1);
    assert_eq!(p, factored, "p(n) factorization failed at n = {n}");
    Ok(SchubertForm::new(p, schubert_q_poly(n)).expect("q(n)² ≡ 1 mod p(n) so gcd is 1"))
}
