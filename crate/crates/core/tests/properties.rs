use chiralfill::family::{check_member, lens_order_poly, schubert_q_poly, torsion_order};
use chiralfill::matrix::{cokernel, minors_gcd_oracle, IntegerMatrix};
use chiralfill::slope::enumerate_slopes;
use chiralfill::surgery::{build_presentation, FillingSpec, FramedLink};
use chiralfill::{BigInt, ConwayWord, SchubertForm, Slope, SlopeInvolution};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn slope() -> impl Strategy<Value = Slope> {
    (-500i64..=500, -500i64..=500)
        .prop_filter("nonzero", |(p, q)| *p != 0 || *q != 0)
        .prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn unimodular() -> impl Strategy<Value = SlopeInvolution> {
    // products of elementary generators
    prop::collection::vec(0u8..4, 0..8).prop_map(|ops| {
        let gens = [
            SlopeInvolution::new(1, 1, 0, 1).unwrap(),
            SlopeInvolution::new(1, 0, 1, 1).unwrap(),
            SlopeInvolution::swap(),
            SlopeInvolution::new(1, 0, 0, -1).unwrap(),
        ];
        ops.into_iter().fold(SlopeInvolution::identity(), |acc, g| {
            acc.compose(&gens[g as usize])
        })
    })
}

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn distance_is_symmetric_and_separating(a in slope(), b in slope()) {
        prop_assert_eq!(a.distance(&b), b.distance(&a));
        prop_assert_eq!(a.distance(&b).is_zero(), a == b);
    }

    #[test]
    fn distance_to_negation_is_even(a in slope()) {
        let d = BigInt::from(a.distance(&a.negate()));
        prop_assert!(d.is_even());
    }

    #[test]
    fn unimodular_actions_preserve_distance(h in unimodular(), a in slope(), b in slope()) {
        prop_assert_eq!(a.distance(&b), h.apply(&a).distance(&h.apply(&b)));
    }

    #[test]
    fn involutions_square_to_identity_on_slopes(h in unimodular(), a in slope()) {
        if h.is_involution() {
            prop_assert_eq!(h.apply(&h.apply(&a)), a);
        }
    }

    #[test]
    fn normalization_ignores_sign(p in -1000i64..1000, q in -1000i64..1000) {
        prop_assume!(p != 0 || q != 0);
        prop_assert_eq!(Slope::new(p, q).unwrap(), Slope::new(-p, -q).unwrap());
        let s = Slope::new(p, q).unwrap();
        prop_assert_eq!(s.to_string().parse::<Slope>().unwrap(), s);
    }

    #[test]
    fn conway_mirror_negates_fraction(v in prop::collection::vec(-6i64..=6, 1..7)) {
        let w = ConwayWord::new(v).unwrap();
        match (w.evaluate(), w.mirror().evaluate()) {
            (Ok(a), Ok(b)) => prop_assert_eq!(b, a.negate()),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn cokernel_invariant_under_elementary_moves(
        m in small_matrix(),
        seed in any::<u64>(),
        k in -4i64..=4,
    ) {
        let base = cokernel(&m);
        let rows = m.row_vecs();
        let r = m.rows();
        if r >= 2 {
            let (i, j) = ((seed % r as u64) as usize, ((seed / 7) % r as u64) as usize);
            // row permutation
            let mut perm = rows.clone();
            perm.swap(i, j);
            prop_assert_eq!(cokernel(&IntegerMatrix::from_rows(perm, m.cols()).unwrap()), base.clone());
            // row[i] += k·row[j]
            if i != j {
                let mut added = rows.clone();
                let src = added[j].clone();
                for (x, y) in added[i].iter_mut().zip(src) {
                    *x += y * k;
                }
                prop_assert_eq!(cokernel(&IntegerMatrix::from_rows(added, m.cols()).unwrap()), base.clone());
            }
        }
        if r >= 1 {
            let mut neg = rows.clone();
            let i = (seed % r as u64) as usize;
            for x in neg[i].iter_mut() {
                *x = -x.clone();
            }
            prop_assert_eq!(cokernel(&IntegerMatrix::from_rows(neg, m.cols()).unwrap()), base.clone());
        }
        if m.cols() >= 2 {
            let t = m.transpose();
            let mut cols = t.row_vecs();
            let c = cols.len();
            cols.swap((seed % c as u64) as usize, ((seed / 3) % c as u64) as usize);
            let permuted = IntegerMatrix::from_rows(cols, m.rows()).unwrap().transpose();
            prop_assert_eq!(cokernel(&permuted), base.clone());
        }
        prop_assert_eq!(minors_gcd_oracle(&m).unwrap(), base);
    }

    #[test]
    fn integral_fillings_give_framed_linking_matrix(
        m in 1usize..=5,
        upper in prop::collection::vec(-3i64..=3, 10),
        framings in prop::collection::vec(-6i64..=6, 5),
    ) {
        let mut lk = IntegerMatrix::zeros(m, m);
        let mut it = upper.into_iter();
        for i in 0..m {
            for j in i + 1..m {
                let v = it.next().unwrap();
                lk.set(i, j, v);
                lk.set(j, i, v);
            }
        }
        let link = FramedLink::new(lk.clone(), None).unwrap();
        let mut fill = FillingSpec::new();
        let mut framed = lk;
        for (i, &k) in framings.iter().take(m).enumerate() {
            fill.fill(i, Slope::integral(k)).unwrap();
            framed.set(i, i, k);
        }
        prop_assert_eq!(build_presentation(&link, &fill).unwrap(), framed);
    }
}

fn brute_inverse(q: u64, p: u64) -> u64 {
    (0..p).find(|x| (q * x) % p == 1).unwrap()
}

#[test]
fn achirality_matches_brute_force_up_to_200() {
    for p in 1u64..=200 {
        for q in 0..p {
            if p > 1 && q.gcd(&p) != 1 {
                continue;
            }
            let s = SchubertForm::new(p, q).unwrap();
            let brute = if p <= 2 {
                true
            } else {
                let neg = p - q;
                neg == q || neg == brute_inverse(q, p)
            };
            assert_eq!(s.is_achiral_lens(), brute, "S({p},{q})");
            assert_eq!(s.equivalent(&s.mirror()), brute, "S({p},{q})");
        }
    }
}

#[test]
fn schubert_equivalence_is_an_equivalence_relation() {
    for p in 1u64..=60 {
        let forms: Vec<SchubertForm> = (0..p)
            .filter(|q| p == 1 || q.gcd(&p) == 1)
            .map(|q| SchubertForm::new(p, q).unwrap())
            .collect();
        for a in &forms {
            assert!(a.equivalent(a));
            for b in &forms {
                assert_eq!(a.equivalent(b), b.equivalent(a));
                if !a.equivalent(b) {
                    continue;
                }
                for c in &forms {
                    if b.equivalent(c) {
                        assert!(a.equivalent(c), "{a} ~ {b} ~ {c}");
                    }
                }
            }
        }
    }
    // different p never equivalent
    assert!(!SchubertForm::new(5, 1)
        .unwrap()
        .equivalent(&SchubertForm::new(7, 1).unwrap()));
}

#[test]
fn family_identities_over_wide_range() {
    for n in (-25i64..=25).filter(|n| check_member(*n).is_ok()) {
        let (p, q, t) = (lens_order_poly(n), schubert_q_poly(n), torsion_order(n));
        let nb = BigInt::from(n);
        assert_eq!(p, (&nb - 1) * (&nb - 1) * (&nb * &nb + 1));
        assert!((&q * &q - BigInt::from(1)).mod_floor(&p).is_zero());
        let abs_n1 = BigInt::from((n - 1).abs());
        assert_eq!(p, abs_n1 * &t);
        assert_eq!(p == t, n == 2);
    }
}

#[test]
fn swap_fixed_slopes_brute_force() {
    // (q, p) = ±(p, q) exactly when p = ±q
    for bound in [1, 5, 30] {
        let fixed: Vec<Slope> = enumerate_slopes(bound)
            .filter(|s| s.p() == s.q() || *s.p() == -s.q())
            .collect();
        assert_eq!(fixed, SlopeInvolution::swap().fixed_slopes(bound));
    }
}
