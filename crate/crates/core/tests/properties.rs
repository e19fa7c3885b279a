use bs_core::affine::to_affine;
use bs_core::britton::{Britton, BsParams};
use bs_core::finquot::{build_semidirect, build_wreath};
use bs_core::freeprod::split_central;
use bs_core::words::{free_reduce, parse_word, Gen, Syllable, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word_strategy(max_len: usize, max_exp: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), -max_exp..=max_exp), 0..=max_len).prop_map(|raw| {
        free_reduce(raw.into_iter().map(|(is_a, e)| {
            let gen = if is_a { Gen::A } else { Gen::T };
            (gen, BigInt::from(e))
        }))
    })
}

fn params_strategy() -> impl Strategy<Value = BsParams> {
    (1i64..=4, prop_oneof![-4i64..=-1, 1i64..=4]).prop_map(|(m, n)| BsParams::new(m, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_parses_back(w in word_strategy(12, 9)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn free_reduce_is_idempotent(w in word_strategy(12, 3)) {
        let again = free_reduce(w.syllables().iter().map(|s: &Syllable| (s.gen, s.exp.clone())));
        prop_assert_eq!(again, w);
    }

    #[test]
    fn relator_insertion(p in params_strategy(), u in word_strategy(8, 4), v in word_strategy(8, 4)) {
        let e = Britton::new(p);
        let rel = parse_word(&format!("t^-1 a^{} t a^{}", p.m(), -p.n())).unwrap();
        let with = u.clone() * rel * v.clone();
        prop_assert!(e.equal(&with, &(u * v)).unwrap());
    }

    #[test]
    fn multiply_is_associative(p in params_strategy(), x in word_strategy(6, 4), y in word_strategy(6, 4), z in word_strategy(6, 4)) {
        let e = Britton::new(p);
        let (x, y, z) = (e.normalize(&x).unwrap(), e.normalize(&y).unwrap(), e.normalize(&z).unwrap());
        let l = e.multiply(&e.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = e.multiply(&x, &e.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn normal_form_is_stable(p in params_strategy(), w in word_strategy(10, 5)) {
        let e = Britton::new(p);
        let nf = e.normalize(&w).unwrap();
        prop_assert!(nf.is_valid(&p));
        prop_assert_eq!(e.normalize(&nf.to_word()).unwrap(), nf);
    }

    #[test]
    fn affine_is_a_homomorphism(n in prop_oneof![-3i64..=-1, 2i64..=5], u in word_strategy(8, 4), v in word_strategy(8, 4)) {
        let uv = to_affine(n, &(u.clone() * v.clone())).unwrap();
        let composed = to_affine(n, &u).unwrap().compose(&to_affine(n, &v).unwrap()).unwrap();
        prop_assert_eq!(uv, composed);
    }

    #[test]
    fn abelianization_is_a_homomorphism(p in params_strategy(), u in word_strategy(8, 4), v in word_strategy(8, 4)) {
        let e = Britton::new(p);
        let uv = e.abelianize(&(u.clone() * v.clone()));
        prop_assert_eq!(uv, e.abelianize(&u).add(&e.abelianize(&v)));
    }

    #[test]
    fn quotient_images_are_homomorphic(u in word_strategy(8, 6), v in word_strategy(8, 6)) {
        let p = BsParams::new(1, 3).unwrap();
        let q = build_semidirect(2, 4, 2, &p).unwrap();
        prop_assert_eq!(q.image(&(u.clone() * v.clone())), q.mul(q.image(&u), q.image(&v)));
        let w = build_wreath(2, 1, 2).unwrap();
        prop_assert_eq!(w.image(&(u.clone() * v.clone())), w.mul(w.image(&u), w.image(&v)));
    }

    #[test]
    fn central_split_reassembles(m in 2i64..=3, neg in any::<bool>(), u in word_strategy(6, 4), v in word_strategy(6, 4)) {
        let n = if neg { -m } else { m };
        let e = Britton::new(BsParams::new(m, n).unwrap());
        let g = u.inverse() * v.inverse() * u * v;
        let s = split_central(&e, &g).unwrap();
        if !neg {
            prop_assert_eq!(s.c.clone(), BigInt::from(0));
        }
        let back = Word::a(s.c * 2 * m) * s.basis.lift();
        prop_assert!(e.equal(&back, &g).unwrap());
    }
}
