//! The library checked against independent brute-force oracles.

mod common;

use korbit::kgb_clans::{full_closure_order, Clan, Kgb};
use korbit::moment_geom::phi_b_table;
use korbit::springer_data::SymmetricPair;
use korbit::weyl_char::{character_value, ConjClass, WIrrep, WeylType};
use num_bigint::BigInt;

use common::*;

fn perm_of(kgb: &Kgb, i: usize) -> Vec<usize> {
    match &kgb.orbits[i].clan {
        Clan::Perm(w) => w.clone(),
        other => panic!("not a permutation: {other:?}"),
    }
}

#[test]
fn rs_oracle_sanity() {
    assert_eq!(rs_shape(&[1, 2, 3]), vec![3]);
    assert_eq!(rs_shape(&[3, 2, 1]), vec![1, 1, 1]);
    assert_eq!(rs_shape(&[2, 1, 3]), vec![2, 1]);
    assert_eq!(rs_shape(&[2, 4, 1, 3]), vec![2, 2]);
    assert_eq!(all_permutations(5).len(), 120);
}

#[test]
fn phi_b_shape_is_the_robinson_schensted_shape_up_to_five() {
    for n in 1..=5 {
        let kgb = Kgb::build(SymmetricPair::ComplexGL(n)).unwrap();
        let table = phi_b_table(&kgb, 3, 8).unwrap();
        assert_eq!(kgb.len(), all_permutations(n).len());
        for (i, t) in table.iter().enumerate() {
            let w = perm_of(&kgb, i);
            assert_eq!(t.partition(), rs_shape(&w), "cgl:{n}, w = {w:?}");
        }
    }
}

#[test]
fn bruhat_oracle_sanity() {
    assert_eq!(bruhat_below(&[1, 2, 3]).len(), 1);
    assert_eq!(bruhat_below(&[3, 2, 1]).len(), 6);
    assert_eq!(bruhat_below(&[2, 3, 1]).len(), 4);
    assert_eq!(bruhat_below(&[4, 3, 2, 1]).len(), 24);
}

#[test]
fn complex_full_closure_order_is_bruhat_order() {
    for n in 1..=5 {
        let kgb = Kgb::build(SymmetricPair::ComplexGL(n)).unwrap();
        let reach = full_closure_order(&kgb).reachability();
        for j in 0..kgb.len() {
            let below = bruhat_below(&perm_of(&kgb, j));
            for i in 0..kgb.len() {
                let leq = i == j || reach[i][j];
                assert_eq!(leq, below.contains(&perm_of(&kgb, i)), "cgl:{n}: {} vs {}", kgb.orbits[i].id, kgb.orbits[j].id);
            }
        }
    }
}

#[test]
fn symmetric_group_characters_match_jacobi_trudi() {
    for n in 1..=5 {
        let w = WeylType::a(n);
        for p in all_permutations(n) {
            let p: Vec<usize> = p.into_iter().map(|x| x - 1).collect();
            let class = ConjClass::A(cycle_type(&p));
            for sigma in w.irreps() {
                let WIrrep::A(lambda) = &sigma else { unreachable!() };
                assert_eq!(character_value(&w, &sigma, &class).unwrap(), BigInt::from(specht_character(lambda, &p)));
            }
        }
    }
}

#[test]
fn hyperoctahedral_characters_match_brute_force_induction() {
    for n in 1..=3 {
        let w = WeylType::bc(n);
        let group = signed_permutations(n);
        for sigma in w.irreps() {
            let WIrrep::BC(alpha, beta) = &sigma else { unreachable!() };
            for g in &group {
                let (pos, neg) = g.class();
                let lib = character_value(&w, &sigma, &ConjClass::BC(pos, neg)).unwrap();
                assert_eq!(lib, BigInt::from(bn_character(alpha, beta, g)), "{sigma} at {g:?}");
            }
        }
    }
}
