//! Per-member certification of the `M_n` family and range sweeps.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::family::{self, check_member, DegenerateMember};
use crate::matrix::{cokernel, minors_gcd_oracle, AbelianGroup};
use crate::slope::{Slope, SlopeInvolution};
use crate::surgery::{build_presentation, fill_remaining, mn_framed_link, FillingSpec, MN_DRILLED};
use crate::two_bridge::{ConwayWord, SchubertForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Chiral,
    Achiral,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Chiral => "chiral",
            Chirality::Achiral => "achiral",
        })
    }
}

/// Whether homology alone rules out the core of the filling being
/// null-homologous. A null-homologous knot exterior has `H_1 = Z ⊕ H_1(Y)`,
/// so a torsion order different from `|H_1(Y)|` is a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NullHomology {
    #[serde(rename = "CERTIFIED-NON-NULL-HOMOLOGOUS")]
    CertifiedNonNullHomologous,
    #[serde(rename = "INCONCLUSIVE-BY-HOMOLOGY")]
    InconclusiveByHomology,
}

impl fmt::Display for NullHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NullHomology::CertifiedNonNullHomologous => "CERTIFIED-NON-NULL-HOMOLOGOUS",
            NullHomology::InconclusiveByHomology => "INCONCLUSIVE-BY-HOMOLOGY",
        })
    }
}

fn decimal<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Everything mechanically checkable about one member `M_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub n: i64,
    pub schubert: SchubertForm,
    pub components: u8,
    /// `t(n)`, read off the Smith normal form.
    #[serde(serialize_with = "decimal")]
    pub torsion: BigInt,
    /// `p(n) = |H_1(Σ_n)|`, agreed on by the trivial and the 0-filling.
    #[serde(serialize_with = "decimal")]
    pub lens_order: BigInt,
    pub h1_exterior: AbelianGroup,
    pub h1_trivial_filling: AbelianGroup,
    pub h1_zero_filling: AbelianGroup,
    pub h1_plus_one_filling: AbelianGroup,
    pub h1_minus_one_filling: AbelianGroup,
    pub chirality: Chirality,
    pub null_homology: NullHomology,
    pub filling_slopes: [Slope; 2],
    #[serde(serialize_with = "decimal")]
    pub filling_distance: BigInt,
    pub swap_exchanges_fillings: bool,
    pub swap_fixed_slopes: Vec<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("n = {n}: check {check} failed: {detail}")]
pub struct CheckFailure {
    pub n: i64,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Degenerate(#[from] DegenerateMember),
    #[error(transparent)]
    Check(#[from] CheckFailure),
}

fn ensure(
    n: i64,
    check: &'static str,
    ok: bool,
    detail: impl FnOnce() -> String,
) -> Result<(), CheckFailure> {
    if ok {
        Ok(())
    } else {
        Err(CheckFailure {
            n,
            check,
            detail: detail(),
        })
    }
}

/// Recomputes every invariant of `M_n` and its fillings from scratch and
/// checks them against the closed forms in [`family`].
pub fn certify_family(n: i64) -> Result<FamilyReport, CertifyError> {
    check_member(n)?;
    let p = family::lens_order_poly(n);
    let q = family::schubert_q_poly(n);
    let t = family::torsion_order(n);
    let nb = BigInt::from(n);

    let factored = (&nb - 1) * (&nb - 1) * (&nb * &nb + 1);
    ensure(n, "lens-order-factorization", p == factored, || {
        format!("p(n) = {p} but (n-1)²(n²+1) = {factored}")
    })?;

    let cf = ConwayWord::family(n).evaluate();
    let expected = Slope::new(q.clone(), p.clone()).expect("p(n) > 0");
    ensure(
        n,
        "continued-fraction",
        cf.as_ref() == Ok(&expected),
        || format!("C(n,n,-1,n,n) evaluates to {cf:?}, expected {expected}"),
    )?;

    ensure(
        n,
        "q-squared-congruence",
        (&q * &q - BigInt::one()).mod_floor(&p).is_zero(),
        || format!("q(n)² = {} is not 1 mod {p}", &q * &q),
    )?;

    let schubert = family::family_schubert(n)?;
    let components = schubert.component_count();
    ensure(
        n,
        "component-parity",
        (components == 1) == (n % 2 == 0),
        || format!("{schubert} has {components} components"),
    )?;

    let chirality = if schubert.is_achiral_lens() {
        Chirality::Achiral
    } else {
        Chirality::Chiral
    };
    let brute = schubert.equivalent(&schubert.mirror());
    ensure(
        n,
        "chirality-brute-force",
        brute == schubert.is_achiral_lens(),
        || format!("congruence test and mirror comparison disagree on {schubert}"),
    )?;
    ensure(n, "chirality", chirality == Chirality::Chiral, || {
        format!("{schubert} is achiral")
    })?;

    let (link, fill) = mn_framed_link(n).expect("member already checked");
    let presentation = build_presentation(&link, &fill).expect("template is well formed");
    let h1_exterior = cokernel(&presentation);
    let lemma = AbelianGroup::new(1, vec![t.clone()]).expect("t(n) >= 4");
    ensure(n, "exterior-homology", h1_exterior == lemma, || {
        format!("H_1(M_n) = {h1_exterior}, expected {lemma}")
    })?;
    let oracle = minors_gcd_oracle(&presentation).expect("6 columns is within the oracle limit");
    ensure(n, "minors-oracle", oracle == h1_exterior, || {
        format!("Smith form gives {h1_exterior}, minors give {oracle}")
    })?;
    let torsion = h1_exterior.torsion_order();

    let filled = |slope: Slope| {
        let m = fill_remaining(&link, &fill, &FillingSpec::single(MN_DRILLED, slope))
            .expect("x is unfilled in the template");
        cokernel(&m)
    };
    let h1_trivial_filling = filled(Slope::meridian());
    let h1_zero_filling = filled(Slope::longitude());
    for (check, g) in [
        ("trivial-filling-order", &h1_trivial_filling),
        ("zero-filling-order", &h1_zero_filling),
    ] {
        ensure(
            n,
            check,
            g.is_cyclic() && g.order().as_ref() == Some(&p),
            || format!("filling gives {g}, expected Z/{p}"),
        )?;
    }
    ensure(
        n,
        "filling-orders-equal",
        h1_trivial_filling == h1_zero_filling,
        || format!("{h1_trivial_filling} vs {h1_zero_filling}"),
    )?;
    let lens_order = h1_trivial_filling.torsion_order();

    let ratio: BigInt = (&nb - 1i32).abs();
    ensure(
        n,
        "lens-order-ratio",
        lens_order == &ratio * &torsion,
        || format!("p(n) = {lens_order} but |n-1|·t(n) = {}", &ratio * &torsion),
    )?;

    let null_homology = if torsion == lens_order {
        NullHomology::InconclusiveByHomology
    } else {
        NullHomology::CertifiedNonNullHomologous
    };

    let swap = SlopeInvolution::swap();
    let filling_slopes = [Slope::meridian(), Slope::longitude()];
    let filling_distance: BigInt = filling_slopes[0].distance(&filling_slopes[1]).into();
    let swap_exchanges_fillings = swap.apply(&filling_slopes[0]) == filling_slopes[1]
        && swap.apply(&filling_slopes[1]) == filling_slopes[0];
    ensure(
        n,
        "distance-one-swap",
        filling_distance.is_one() && swap_exchanges_fillings,
        || format!("distance {filling_distance}, swap exchanges: {swap_exchanges_fillings}"),
    )?;

    Ok(FamilyReport {
        n,
        schubert,
        components,
        torsion,
        lens_order,
        h1_exterior,
        h1_trivial_filling,
        h1_zero_filling,
        h1_plus_one_filling: filled(Slope::integral(1)),
        h1_minus_one_filling: filled(Slope::integral(-1)),
        chirality,
        null_homology,
        filling_slopes,
        filling_distance,
        swap_exchanges_fillings,
        swap_fixed_slopes: swap.fixed_slopes(1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("empty range: {0} > {1}")]
pub struct BadRange(pub i64, pub i64);

/// Reports for every non-degenerate `n` in a range, plus the first failed
/// check (by `n`, then the range-wide distinctness check).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub n_min: i64,
    pub n_max: i64,
    pub rows: Vec<FamilyReport>,
    pub failure: Option<CheckFailure>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub const DEFAULT_RANGE: (i64, i64) = (-10, 10);

/// Certifies each member in parallel; output order is ascending `n`.
pub fn verify_range(n_min: i64, n_max: i64) -> Result<Sweep, BadRange> {
    if n_min > n_max {
        return Err(BadRange(n_min, n_max));
    }
    let results: Vec<Result<FamilyReport, CertifyError>> = (n_min..=n_max)
        .into_par_iter()
        .filter(|&n| check_member(n).is_ok())
        .map(certify_family)
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut failure = None;
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(CertifyError::Check(f)) => {
                failure.get_or_insert(f);
            }
            Err(CertifyError::Degenerate(_)) => unreachable!("degenerate members are filtered"),
        }
    }

    if failure.is_none() {
        let mut seen: HashMap<&BigInt, i64> = HashMap::new();
        for row in &rows {
            if let Some(prev) = seen.insert(&row.torsion, row.n) {
                failure = Some(CheckFailure {
                    n: row.n,
                    check: "torsion-distinctness",
                    detail: format!("t({}) = t({prev}) = {}", row.n, row.torsion),
                });
                break;
            }
        }
    }

    Ok(Sweep {
        n_min,
        n_max,
        rows,
        failure,
    })
}
