//! Randomized property suites over the small fixture pairs.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use korbit::kgb_clans::{project_to_p, saturate, weak_order, Clan, Kgb, ParabolicType, PosetEdge};
use korbit::moment_geom::{
    conormal_space, dim_g_mod_p, is_p_regular, orbit_dim_from_tableau, orbit_dim_partial, phi_b_table, Correspondence,
};
use korbit::partition::{partitions, transpose};
use korbit::springer_data::SymmetricPair;
use korbit::tableau::{all_valid, SignedTableau};
use korbit::weyl_char::{character_value, class_size, ConjClass, WIrrep, WeylType};
use num_bigint::BigInt;
use proptest::prelude::*;

const PAIRS: [&str; 8] = ["spr:1", "spr:2", "sppq:1,1", "sppq:2,1", "upq:1,1", "upq:2,1", "upq:2,2", "cgl:3"];
const SEED: u64 = 0x5EED;

struct Data {
    kgb: Kgb,
    table: Vec<SignedTableau>,
}

fn data() -> &'static Vec<Data> {
    static DATA: OnceLock<Vec<Data>> = OnceLock::new();
    DATA.get_or_init(|| {
        PAIRS
            .iter()
            .map(|p| {
                let kgb = Kgb::build(p.parse().unwrap()).unwrap();
                let table = phi_b_table(&kgb, SEED, 8).unwrap();
                Data { kgb, table }
            })
            .collect()
    })
}

fn cgl(n: usize) -> &'static Data {
    static DATA: OnceLock<Vec<Data>> = OnceLock::new();
    &DATA.get_or_init(|| {
        (1..=5)
            .map(|n| {
                let kgb = Kgb::build(SymmetricPair::ComplexGL(n)).unwrap();
                let table = phi_b_table(&kgb, SEED, 8).unwrap();
                Data { kgb, table }
            })
            .collect()
    })[n - 1]
}

/// A fixture pair and one of its parabolics, chosen by two random indices.
fn pick(i: usize, mask: usize) -> (&'static Data, ParabolicType) {
    let d = &data()[i % PAIRS.len()];
    let r = d.kgb.rank();
    let levi: Vec<usize> = (1..=r).filter(|k| mask >> (k - 1) & 1 == 1).collect();
    (d, ParabolicType::new(d.kgb.pair, levi).unwrap())
}

fn correspondence(d: &Data, par: &ParabolicType) -> Correspondence {
    Correspondence::new(&d.kgb, par, &d.table, SEED, 8).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weak_edges_reverse_under_phi(i in 0usize..8, mask in 0usize..64) {
        let (d, par) = pick(i, mask);
        let corr = correspondence(d, &par);
        for e in &corr.weak.edges {
            prop_assert!(corr.records[e.to].phi.closure_leq(&corr.records[e.from].phi));
        }
    }

    #[test]
    fn regular_classes_are_weak_minimal(i in 0usize..8, mask in 0usize..64) {
        let (d, par) = pick(i, mask);
        let corr = correspondence(d, &par);
        let minimal = corr.weak.minimal();
        for (k, r) in corr.records.iter().enumerate() {
            prop_assert_eq!(r.regular, is_p_regular(&d.kgb.pair, &par.levi, &r.phi).unwrap());
            prop_assert!(!r.regular || minimal.contains(&k));
        }
    }

    #[test]
    fn conormal_bundles_are_lagrangian(i in 0usize..8, mask in 0usize..64) {
        let (d, par) = pick(i, mask);
        let corr = correspondence(d, &par);
        let dim_p = dim_g_mod_p(&d.kgb.pair, &par.levi);
        for (r, c) in corr.records.iter().zip(&corr.classes) {
            let frame = &d.kgb.orbits[c.top].frame;
            let orbit = orbit_dim_partial(&d.kgb.model, frame, &par.levi);
            prop_assert_eq!(orbit + conormal_space(&d.kgb.model, frame, &par.levi).len(), dim_p);
            prop_assert!(orbit_dim_from_tableau(&d.kgb.pair, &r.phi).unwrap() <= dim_p);
        }
    }

    #[test]
    fn dense_member_is_dense_for_every_levi_root(i in 0usize..8, mask in 0usize..64) {
        let (d, par) = pick(i, mask);
        let classes = project_to_p(&d.kgb, &par).unwrap();
        let singles: Vec<(usize, Vec<usize>)> = par.levi.iter().map(|&a| {
            let mut top = vec![0; d.kgb.len()];
            for c in project_to_p(&d.kgb, &ParabolicType::new(d.kgb.pair, [a]).unwrap()).unwrap() {
                for &m in &c.members { top[m] = c.top; }
            }
            (a, top)
        }).collect();
        for c in &classes {
            let max = c.members.iter().map(|&m| d.kgb.orbits[m].dim).max().unwrap();
            prop_assert_eq!(d.kgb.orbits[c.top].dim, max);
            for &m in &c.members {
                let dense = singles.iter().all(|(_, top)| top[m] == m);
                prop_assert_eq!(dense, m == c.top);
            }
        }
    }

    #[test]
    fn saturation_is_idempotent(i in 0usize..8, mask in 0usize..64) {
        let (d, par) = pick(i, mask);
        let set = |e: &[PosetEdge]| e.iter().cloned().collect::<BTreeSet<_>>();
        let once = saturate(&weak_order(&d.kgb));
        prop_assert_eq!(set(&saturate(&once).edges), set(&once.edges));
        let corr = correspondence(d, &par);
        let once = saturate(&corr.weak);
        prop_assert_eq!(set(&saturate(&once).edges), set(&once.edges));
    }

    #[test]
    fn tableau_strings_round_trip(i in 0usize..8, k in 0usize..1000) {
        let pair = data()[i % PAIRS.len()].kgb.pair;
        let all = all_valid(&pair);
        let t = &all[k % all.len()];
        prop_assert_eq!(&t.to_string().parse::<SignedTableau>().unwrap(), t);
    }

    #[test]
    fn phi_b_shape_is_robinson_schensted(n in 1usize..=5, k in 0usize..120) {
        let d = cgl(n);
        let i = k % d.kgb.len();
        let Clan::Perm(w) = &d.kgb.orbits[i].clan else { panic!("permutation clan") };
        prop_assert_eq!(d.table[i].partition(), common::rs_shape(w));
    }

    #[test]
    fn weyl_characters_are_orthonormal(bc in any::<bool>(), n in 1usize..=4, a in 0usize..100, b in 0usize..100) {
        let w = if bc { WeylType::bc(n) } else { WeylType::a(n) };
        let irreps = w.irreps();
        let (s, t) = (&irreps[a % irreps.len()], &irreps[b % irreps.len()]);
        let inner: BigInt = w.classes().iter()
            .map(|c| class_size(&w, c).unwrap() * character_value(&w, s, c).unwrap() * character_value(&w, t, c).unwrap())
            .sum();
        prop_assert_eq!(inner, if s == t { w.order() } else { BigInt::from(0) });
    }

    #[test]
    fn hyperoctahedral_characters_match_brute_force(n in 1usize..=3, g in 0usize..48, s in 0usize..20) {
        let w = WeylType::bc(n);
        let group = common::signed_permutations(n);
        let g = &group[g % group.len()];
        let irreps = w.irreps();
        let sigma = &irreps[s % irreps.len()];
        let WIrrep::BC(alpha, beta) = sigma else { unreachable!() };
        let (pos, neg) = g.class();
        prop_assert_eq!(
            character_value(&w, sigma, &ConjClass::BC(pos, neg)).unwrap(),
            BigInt::from(common::bn_character(alpha, beta, g))
        );
    }

    #[test]
    fn transpose_is_an_involution(n in 0usize..=12, k in 0usize..100) {
        let ps = partitions(n);
        let p = &ps[k % ps.len()];
        prop_assert_eq!(&transpose(&transpose(p)), p);
    }
}
