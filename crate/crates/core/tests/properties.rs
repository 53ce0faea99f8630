use alia_core::bipoly::Mat;
use alia_core::exactnum::{rat, CycNum};
use alia_core::intertwiner::sym_power;
use alia_core::polyhedral::{GroupKind, GroupModel};
use proptest::prelude::*;

fn cyc(n: u32, coeffs: &[(i64, i64)]) -> CycNum {
    let c: Vec<_> = coeffs.iter().map(|&(a, b)| rat(a, b)).collect();
    CycNum::from_coeffs(n, &c)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (cyc(20, &a), cyc(20, &b), cyc(20, &c));
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b * &a) / &a, b.clone());
        }
    }

    #[test]
    fn subfield_elements_embed(a in prop::collection::vec((-9i64..=9, 1i64..=4), 2), b in coeffs()) {
        let small = cyc(4, &a);
        let big = small.embed(20).unwrap();
        let b = cyc(20, &b);
        prop_assert_eq!(&small * &b, &big * &b);
        prop_assert_eq!(&small + &b, &big + &b);
        prop_assert_eq!(small, big);
    }

    #[test]
    fn cyclotomic_json_round_trip(a in coeffs()) {
        let a = cyc(20, &a);
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycNum>(&s).unwrap(), a);
    }

    #[test]
    fn symmetric_powers_are_multiplicative(g in prop::array::uniform4(-5i64..=5), h in prop::array::uniform4(-5i64..=5), m in 1u32..=4) {
        let g = Mat::from_ints(1, &[&g[..2], &g[2..]]);
        let h = Mat::from_ints(1, &[&h[..2], &h[2..]]);
        prop_assert_eq!(sym_power(&g.mul(&h), m), sym_power(&g, m).mul(&sym_power(&h, m)));
    }

    #[test]
    fn n_map_is_periodic(k in -200i64..=200, idx in 0usize..5) {
        let kind = [GroupKind::Cyclic(7), GroupKind::Dihedral(6), GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral][idx];
        let m = GroupModel::build(kind).unwrap();
        let k = 2 * k;
        let period = 2 * m.lcm_nu as i64;
        prop_assert_eq!(m.n_map(k).unwrap(), m.n_map(k + period).unwrap());
        let nv = m.n_map(k).unwrap();
        for (r, nu) in nv.residues.iter().zip(&m.nu) {
            prop_assert!(*r >= 0 && *r < *nu as i64);
        }
    }
}
