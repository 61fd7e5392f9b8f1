use std::sync::Arc;

use proptest::prelude::*;

use skorokhod_core::delta::{compose, MonotoneMap};
use skorokhod_core::filters::{
    closed_form_member, subdivision_member_representable, theta_skorokhod_member, u_neighborhood_member,
};
use skorokhod_core::metrics::{d_mu, v1_dist, v2_dist, v3_dist};
use skorokhod_core::oracle::{d_mu_enumerate, Gen};
use skorokhod_core::rational::{q, Q};
use skorokhod_core::{std_simplex, FinSSet, PLHomeo};

fn monotone(dom: usize, cod: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(1..=cod, dom).prop_map(move |mut v| {
        v.sort();
        MonotoneMap::new(v, cod).unwrap()
    })
}

/// Three composable maps `a -> b -> c -> d`.
fn chain3() -> impl Strategy<Value = (MonotoneMap, MonotoneMap, MonotoneMap)> {
    (1..5usize, 1..5usize, 1..5usize, 1..5usize)
        .prop_flat_map(|(a, b, c, d)| (monotone(a, b), monotone(b, c), monotone(c, d)))
}

fn small_q() -> impl Strategy<Value = Q> {
    (1..8i64).prop_map(|k| q(k, 8))
}

fn random_sset(g: &mut Gen) -> Arc<FinSSet> {
    if g.coin(0.5) {
        Arc::new(std_simplex(g.range(1, 4)).unwrap())
    } else {
        Arc::new(g.sset(10))
    }
}

/// Whether some `e` over `1..=k` with `anchor` as a face has `s` at positions
/// `t_1 <= .. <= t_n` with `t_n - t_1 <= m`, searching all `e` up to `len`.
fn subdivision_brute(k: usize, s: &[usize], anchor: &[usize], m: usize, len: usize) -> bool {
    fn sequences(k: usize, len: usize, from: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(acc.clone());
        if acc.len() == len {
            return;
        }
        for v in from..=k {
            acc.push(v);
            sequences(k, len, v, acc, out);
            acc.pop();
        }
    }
    fn is_face(sub: &[usize], e: &[usize]) -> bool {
        let mut it = e.iter();
        sub.iter().all(|a| it.any(|x| x == a))
    }
    fn window(s: &[usize], e: &[usize], m: usize) -> bool {
        // s_1 at some position t_1, then greedily the rest within t_1 + m
        (0..e.len()).any(|t1| {
            let mut t = t1;
            s.iter().enumerate().all(|(i, &v)| {
                if i > 0 {
                    while t < e.len() && e[t] != v {
                        t += 1;
                    }
                }
                t < e.len() && e[t] == v && t <= t1 + m
            })
        })
    }
    let mut all = Vec::new();
    sequences(k, len, 1, &mut Vec::new(), &mut all);
    all.iter()
        .any(|e| !e.is_empty() && is_face(anchor, e) && window(s, e, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative_and_unital((f, g, h) in chain3()) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&f.after(&MonotoneMap::identity(f.dom())).unwrap(), &f);
        prop_assert_eq!(&MonotoneMap::identity(f.cod()).after(&f).unwrap(), &f);
    }

    #[test]
    fn edgewise_and_shift_are_functors((f, g, _) in chain3()) {
        let gf = g.after(&f).unwrap();
        prop_assert_eq!(gf.edgewise(), g.edgewise().after(&f.edgewise()).unwrap());
        prop_assert_eq!(gf.shift(), g.shift().after(&f.shift()).unwrap());
        prop_assert!(MonotoneMap::identity(f.dom()).edgewise().is_identity());
    }

    #[test]
    fn epi_mono_factorization((f, _, _) in chain3()) {
        let (epi, mono) = f.epi_mono_factorize();
        prop_assert!(epi.is_surjective());
        prop_assert!(mono.is_injective());
        prop_assert_eq!(mono.after(&epi).unwrap(), f.clone());
        prop_assert!(epi.after(&epi.min_section()).unwrap().is_identity());
    }

    #[test]
    fn normalize_and_refine_cohere(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 8);
        let x = random_sset(&mut g);
        let p = g.point(&x, 3);
        let n = p.normalize().unwrap();
        prop_assert!(n.is_normal());
        prop_assert_eq!(&n.normalize().unwrap(), &n);
        let mut finer: Vec<Q> = p.cuts().iter().cloned().chain(g.cuts(3)).collect();
        finer.sort();
        finer.dedup();
        prop_assert_eq!(p.refine(&finer).unwrap().normalize().unwrap(), n);
    }

    #[test]
    fn eval_is_natural(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 8);
        let x = random_sset(&mut g);
        let p = g.point(&x, 3);
        let k = g.range(1, 4);
        let ts = g.tuple(k);
        let j = g.range(1, 4);
        let theta = g.monotone_map(j, k);
        let sub: Vec<Q> = theta.values().iter().map(|&i| ts[i - 1].clone()).collect();
        let whole = p.eval(&ts).unwrap();
        prop_assert_eq!(x.apply_operator(&whole, &theta).unwrap(), p.eval(&sub).unwrap());
    }

    #[test]
    fn homeomorphisms_form_a_group(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 8);
        let (a, b, c) = (g.homeo(3), g.homeo(3), g.homeo(3));
        let id = PLHomeo::identity();
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(&a.compose(&a.inverse()), &id);
        prop_assert_eq!(&a.inverse().compose(&a), &id);
        prop_assert_eq!(&a.compose(&id), &a);
        let t = g.unit();
        prop_assert_eq!(a.compose(&b).apply(&t).unwrap(), a.apply(&b.apply(&t).unwrap()).unwrap());
    }

    #[test]
    fn metrics_symmetric_and_v1_triangle(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 8);
        let n = g.range(2, 5);
        let (a, b, c) = (g.step(n, 4), g.step(n, 4), g.step(n, 4));
        for d in [v1_dist, v2_dist, v3_dist] {
            prop_assert_eq!(d(&a, &b).unwrap(), d(&b, &a).unwrap());
        }
        prop_assert!(v1_dist(&a, &c).unwrap() <= v1_dist(&a, &b).unwrap() + v1_dist(&b, &c).unwrap());
    }

    #[test]
    fn theta_is_monotone(seed in any::<u64>(), d1 in small_q(), d2 in small_q()) {
        let mut g = Gen::new(seed, 8);
        let m = g.range(1, 3);
        let cod = g.range(2, 4);
        let p = g.path(m, cod, 4);
        let n = g.range(1, 3);
        let theta = g.monotone_map(n, m);
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        for big_n in 2 * n..2 * n + 3 {
            let at = |d: &Q, big: usize| theta_skorokhod_member(&p, &theta, n, big, d).unwrap();
            if at(&lo, big_n) {
                prop_assert!(at(&hi, big_n));
                prop_assert!(at(&lo, big_n + 1));
            }
        }
        if closed_form_member(&p, &lo).unwrap() {
            prop_assert!(closed_form_member(&p, &hi).unwrap());
        }
    }

    #[test]
    fn u_membership_is_symmetric(seed in any::<u64>(), d in small_q()) {
        let mut g = Gen::new(seed, 8);
        let n = g.range(2, 5);
        let (a, b) = (g.step(n, 4), g.step(n, 4));
        prop_assert_eq!(u_neighborhood_member(&a, &b, &d).unwrap(), u_neighborhood_member(&b, &a, &d).unwrap());
    }

    #[test]
    fn d_mu_matches_enumeration(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 8);
        let x = random_sset(&mut g);
        let (u, v) = (g.point(&x, 3), g.point(&x, 3));
        prop_assert_eq!(d_mu(&u, &v).unwrap(), d_mu_enumerate(&u, &v).unwrap());
    }

    #[test]
    fn subdivision_matches_search(
        s in prop::collection::vec(1..=3usize, 1..4),
        anchor in prop::collection::vec(1..=3usize, 1..4),
        m in 1..4usize,
    ) {
        let (mut s, mut anchor) = (s, anchor);
        s.sort();
        anchor.sort();
        let x = std_simplex(3).unwrap();
        let fast = subdivision_member_representable(
            &x,
            &x.std_instance(&s).unwrap(),
            &x.std_instance(&anchor).unwrap(),
            m,
        )
        .unwrap();
        prop_assert_eq!(fast, subdivision_brute(3, &s, &anchor, m, s.len() + anchor.len()));
    }
}
