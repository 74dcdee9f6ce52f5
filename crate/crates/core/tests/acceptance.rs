//! Exit criteria for the library. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use chiralfill::family::{check_member, lens_order_poly, schubert_q_poly, torsion_order};
use chiralfill::matrix::{
    cokernel, minors_gcd_oracle, smith_normal_form, AbelianGroup, IntegerMatrix,
};
use chiralfill::report::{certify_family, NullHomology};
use chiralfill::surgery::{
    build_presentation, fill_remaining, mn_framed_link, FillingSpec, MN_DRILLED,
};
use chiralfill::{family_schubert, BigInt, ConwayWord, SchubertForm, Slope, SlopeInvolution};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn members(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|n| check_member(*n).is_ok())
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn continued_fraction_identity() -> Outcome {
    let start = Instant::now();
    for n in members(-25, 25) {
        let got = ConwayWord::family(n)
            .evaluate()
            .map_err(|e| e.to_string())?;
        let (p, q) = (lens_order_poly(n), schubert_q_poly(n));
        // q/p is already reduced, so the canonical slope carries p and q verbatim
        if got.p() != &q || got.q() != &p {
            return Err(format!("n = {n}: got {got}, expected {q}/{p}"));
        }
    }
    within(Duration::from_secs(1), start)
}

fn exterior_homology() -> Outcome {
    let start = Instant::now();
    for n in members(-10, 10) {
        let (link, fill) = mn_framed_link(n).map_err(|e| e.to_string())?;
        let g = cokernel(&build_presentation(&link, &fill).map_err(|e| e.to_string())?);
        let expected = AbelianGroup::new(1, vec![torsion_order(n)]).unwrap();
        if g != expected {
            return Err(format!("n = {n}: H_1 = {g}, expected {expected}"));
        }
        if n == 2 && g.to_string() != "Z + Z/5" {
            return Err(format!("n = 2: H_1 = {g}"));
        }
    }
    within(Duration::from_secs(1), start)
}

fn lens_orders() -> Outcome {
    for n in members(-10, 10) {
        let (link, fill) = mn_framed_link(n).map_err(|e| e.to_string())?;
        let n = n as i128;
        let expected = BigInt::from(((n - 1) * (n - 1) * (n * n + 1)).abs());
        for slope in [Slope::meridian(), Slope::longitude()] {
            let m = fill_remaining(
                &link,
                &fill,
                &FillingSpec::single(MN_DRILLED, slope.clone()),
            )
            .map_err(|e| e.to_string())?;
            let g = cokernel(&m);
            if !g.is_cyclic() || g.order() != Some(expected.clone()) {
                return Err(format!("n = {n}, x ↦ {slope}: {g}, expected Z/{expected}"));
            }
        }
    }
    Ok(())
}

fn chirality() -> Outcome {
    for n in members(-25, 25) {
        let (p, q) = (lens_order_poly(n), schubert_q_poly(n));
        if p > BigInt::from(2) {
            let sq = &q * &q;
            if !(&sq - BigInt::from(1)).mod_floor(&p).is_zero() {
                return Err(format!("n = {n}: q² ≢ 1 mod p"));
            }
            if (&sq + BigInt::from(1)).mod_floor(&p).is_zero() {
                return Err(format!("n = {n}: q² ≡ -1 mod p"));
            }
        }
        if family_schubert(n).unwrap().is_achiral_lens() {
            return Err(format!("n = {n}: family member reported achiral"));
        }
    }
    let s52 = SchubertForm::new(5, 2).unwrap();
    if !s52.is_achiral_lens() {
        return Err("S(5,2) reported chiral".into());
    }
    // brute force: is 2 or its inverse the negative of 2 mod 5?
    let inv = (1..5).find(|x| (2 * x) % 5 == 1).unwrap();
    if !((5 - 2) == 2 || (5 - 2) == inv) {
        return Err("brute force disagrees on S(5,2)".into());
    }
    Ok(())
}

fn null_homology_certificates() -> Outcome {
    for n in members(-10, 10) {
        let r = certify_family(n).map_err(|e| e.to_string())?;
        let equal = r.torsion == r.lens_order;
        if equal != (n == 2) {
            return Err(format!("n = {n}: t = {}, p = {}", r.torsion, r.lens_order));
        }
        let expected = if n == 2 {
            NullHomology::InconclusiveByHomology
        } else {
            NullHomology::CertifiedNonNullHomologous
        };
        if r.null_homology != expected {
            return Err(format!("n = {n}: verdict {}", r.null_homology));
        }
    }
    Ok(())
}

fn distinctness() -> Outcome {
    let mut seen = HashSet::new();
    for n in members(-25, 25) {
        if !seen.insert(torsion_order(n)) {
            return Err(format!("t({n}) = {} repeats", torsion_order(n)));
        }
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let rows = rng.gen_range(0..=6);
    let cols = rng.gen_range(0..=6);
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
        .collect();
    IntegerMatrix::new(rows, cols, entries).unwrap()
}

fn snf_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for k in 0..1200 {
        let m = random_matrix(&mut rng);
        let r = smith_normal_form(&m);
        let tag = || format!("matrix #{k} ({}x{})", m.rows(), m.cols());
        if r.u.mul(&m).unwrap().mul(&r.v).unwrap() != r.d {
            return Err(format!("{}: U·M·V ≠ D", tag()));
        }
        if !r.u.determinant().unwrap().abs().is_one() || !r.v.determinant().unwrap().abs().is_one()
        {
            return Err(format!("{}: transform not unimodular", tag()));
        }
        if !r.d.is_diagonal() {
            return Err(format!("{}: D not diagonal", tag()));
        }
        let diag = r.d.main_diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return Err(format!("{}: negative diagonal", tag()));
        }
        let nonzero: Vec<&BigInt> = diag.iter().take_while(|x| !x.is_zero()).collect();
        if diag[nonzero.len()..].iter().any(|x| !x.is_zero()) {
            return Err(format!("{}: zeros not trailing", tag()));
        }
        if nonzero.windows(2).any(|w| !w[1].is_multiple_of(w[0])) {
            return Err(format!("{}: divisibility chain broken", tag()));
        }
        if m.rows() == m.cols() {
            let prod: BigInt = diag.iter().product();
            if m.determinant().unwrap().abs() != prod {
                return Err(format!("{}: |det| not preserved", tag()));
            }
        }
        if cokernel(&m) != minors_gcd_oracle(&m).unwrap() {
            return Err(format!("{}: disagrees with minors oracle", tag()));
        }
    }
    Ok(())
}

fn slope_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checked = 0;
    while checked < 1500 {
        let p: i64 = rng.gen_range(-100_000..=100_000);
        let q: i64 = rng.gen_range(0..=100_000);
        if p.gcd(&q) != 1 {
            continue;
        }
        let s = Slope::new(p, q).unwrap();
        let d = s.distance(&s.negate());
        let expected = BigInt::from(2 * p.abs() * q);
        if BigInt::from(d) != expected {
            return Err(format!("d({s}, -{s}) ≠ {expected}"));
        }
        checked += 1;
    }
    if !Slope::meridian().distance(&Slope::longitude()).is_one() {
        return Err("d(1/0, 0/1) ≠ 1".into());
    }
    let fixed = SlopeInvolution::swap().fixed_slopes(100);
    let expected = vec![Slope::new(-1, 1).unwrap(), Slope::new(1, 1).unwrap()];
    if fixed != expected {
        return Err(format!("swap fixes {fixed:?}"));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            "1 continued fraction of C(n,n,-1,n,n) = q(n)/p(n), n in [-25,25]",
            continued_fraction_identity,
        ),
        (
            "2 H_1(M_n) = Z + Z/|(n-1)(n^2+1)|, n in [-10,10]",
            exterior_homology,
        ),
        (
            "3 trivial and 0-filling orders = |(n-1)^2(n^2+1)|",
            lens_orders,
        ),
        (
            "4 q^2 = 1, q^2 != -1 mod p; family chiral; S(5,2) achiral",
            chirality,
        ),
        (
            "5 null-homology verdicts (inconclusive only at n = 2)",
            null_homology_certificates,
        ),
        ("6 t(n) pairwise distinct, n in [-25,25]", distinctness),
        ("7 Smith normal form suite, 1200 random matrices", snf_suite),
        ("8 slope distance and swap fixed slopes", slope_suite),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
