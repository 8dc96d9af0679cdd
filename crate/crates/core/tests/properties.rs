use proptest::prelude::*;

use scottlab_core::corpus::jinf::{jinf_leq, JInfElem, JVal};
use scottlab_core::corpus::{corpus_list, truncate, Caps};
use scottlab_core::poset::{poset_iso, random_permutation, random_poset, PosetDoc};
use scottlab_core::scott::{gamma, gamma_iso, is_sober};
use scottlab_core::subset::Subset;
use scottlab_core::zed::{witness_holds, z_leq, z_lt, z_rel, ZElem};
use scottlab_core::{FinitePoset, OrdString, Ordinal};

use rand::SeedableRng;

/// Ordinals below ω^4, as CNF.
fn ordinal() -> impl Strategy<Value = Ordinal> {
    proptest::collection::vec(0u64..4, 4).prop_map(|cs| {
        let terms: Vec<(u32, u64)> = cs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(i, c)| (3 - i as u32, *c))
            .collect();
        Ordinal::from_terms(terms).unwrap()
    })
}

/// Coefficient vector (ω³, ω², ω, 1): compares lexicographically exactly as
/// the ordinal does.
fn coeffs(o: &Ordinal) -> [u64; 4] {
    let mut out = [0; 4];
    for t in o.terms() {
        out[3 - t.exponent as usize] = t.coefficient;
    }
    out
}

fn small_ordinal() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        (0u64..4).prop_map(Ordinal::nat),
        Just(Ordinal::omega()),
        Just(Ordinal::omega().succ()),
        Just(Ordinal::omega_pow(2)),
    ]
}

fn zelem() -> impl Strategy<Value = ZElem> {
    (small_ordinal(), proptest::collection::vec(small_ordinal(), 0..3))
        .prop_map(|(m, s)| ZElem::new(m, OrdString::new(s)))
}

fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=8, 0.0f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| random_poset(n, p, seed).unwrap())
}

fn jinf() -> impl Strategy<Value = JInfElem> {
    (1u64..4, 1u64..4, 0u64..4).prop_map(|(k, n, j)| JInfElem {
        k,
        n,
        j: if j == 0 { JVal::Omega } else { JVal::Nat(j) },
    })
}

/// Lower sets by brute force over all subsets.
fn count_lower_sets(p: &FinitePoset) -> usize {
    let n = p.len();
    (0u64..1 << n)
        .filter(|&bits| {
            (0..n).all(|x| bits >> x & 1 == 0 || (0..n).all(|y| !p.leq(y, x) || bits >> y & 1 == 1))
        })
        .count()
}

proptest! {
    #[test]
    fn ordinal_order_matches_coefficients(a in ordinal(), b in ordinal()) {
        prop_assert_eq!(a.cmp(&b), coeffs(&a).cmp(&coeffs(&b)));
    }

    #[test]
    fn ordinal_display_parses_back(a in ordinal()) {
        prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
    }

    #[test]
    fn succ_is_the_next_ordinal(a in ordinal(), b in ordinal()) {
        prop_assert!(a < a.succ());
        if a < b {
            prop_assert!(a.succ() <= b);
        }
    }

    #[test]
    fn ord_string_display_parses_back(s in proptest::collection::vec(ordinal(), 0..4)) {
        let s = OrdString::new(s);
        prop_assert_eq!(s.to_string().parse::<OrdString>().unwrap(), s);
    }

    #[test]
    fn z_order_is_a_partial_order(a in zelem(), b in zelem(), c in zelem()) {
        prop_assert!(z_leq(&a, &a));
        if z_leq(&a, &b) && z_leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if z_leq(&a, &b) && z_leq(&b, &c) {
            prop_assert!(z_leq(&a, &c));
        }
        prop_assert_eq!(z_lt(&a, &b), z_leq(&a, &b) && a != b);
    }

    #[test]
    fn z_witnesses_recheck(a in zelem(), b in zelem()) {
        if let Some(w) = z_rel(&a, &b) {
            prop_assert!(witness_holds(&a, &b, &w));
        }
    }

    #[test]
    fn z_elem_display_parses_back(a in zelem()) {
        prop_assert_eq!(a.to_string().parse::<ZElem>().unwrap(), a);
    }

    #[test]
    fn jinf_order_is_a_partial_order(a in jinf(), b in jinf(), c in jinf()) {
        prop_assert!(jinf_leq(&a, &a));
        if jinf_leq(&a, &b) && jinf_leq(&b, &a) {
            prop_assert_eq!(a, b);
        }
        if jinf_leq(&a, &b) && jinf_leq(&b, &c) {
            prop_assert!(jinf_leq(&a, &c));
        }
    }

    #[test]
    fn gamma_counts_every_lower_set(p in poset()) {
        prop_assert_eq!(gamma(&p).unwrap().len(), count_lower_sets(&p));
    }

    #[test]
    fn relabelled_posets_have_isomorphic_gamma(p in poset(), seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = p.permuted(&random_permutation(p.len(), &mut rng));
        prop_assert!(poset_iso(&p, &q).is_some());
        prop_assert!(gamma_iso(&p, &q).unwrap().is_some());
    }

    #[test]
    fn finite_posets_are_sober(p in poset()) {
        prop_assert!(is_sober(&p).unwrap());
    }

    #[test]
    fn principal_ideals_are_lower(p in poset()) {
        for x in 0..p.len() {
            let d: Subset = p.down(x);
            prop_assert!(p.is_lower(d));
            prop_assert!(d.contains(x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn json_round_trip_preserves_the_order(p in poset()) {
        let text = serde_json::to_string(&p.to_doc()).unwrap();
        let doc: PosetDoc = serde_json::from_str(&text).unwrap();
        let q = FinitePoset::from_doc(&doc).unwrap();
        prop_assert!(q.order_equal(&p));
    }
}

#[test]
fn every_corpus_entry_truncates_with_default_caps() {
    for e in corpus_list() {
        let p = truncate(e.id, &Caps::new()).unwrap();
        assert!(!p.is_empty(), "{}", e.id);
        let q = FinitePoset::from_doc(&p.to_doc()).unwrap();
        assert!(q.order_equal(&p), "{}", e.id);
    }
}

#[test]
fn oversized_truncation_is_a_cap_error() {
    let caps = scottlab_core::corpus::parse_caps("k=9,n=9,j=9").unwrap();
    assert!(truncate("jinf", &caps).unwrap_err().is_cap());
    assert!(truncate("no-such-thing", &Caps::new()).is_err());
}
