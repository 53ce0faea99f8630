use alia_core::alia::*;
use alia_core::par::Exec;
use alia_core::polyhedral::{group_grid, GroupKind, GroupModel, OrbitSel};
use alia_core::rootsystem::{even_rank2_gradings, type_a_gradings, DynkinGrading, LieType};

fn lt(s: &str) -> LieType {
    s.parse().unwrap()
}

fn alg(g: GroupKind, sel: OrbitSel, t: &str) -> Alia {
    Alia::new(AliaSpec::principal(g, sel, lt(t)).unwrap()).unwrap()
}

#[test]
fn a2_icosahedral_entries() {
    let a = alg(GroupKind::Icosahedral, OrbitSel::Smallest, "A2");
    let t = a.bracket_table();
    let x = t.root_position(&[1, 0]).unwrap();
    let y = t.root_position(&[-1, 0]).unwrap();
    let e = t.entry(x, y);
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].1.monomial_text(t.pole), "JK");
    let (s, ns) = (t.root_position(&[1, 1]).unwrap(), t.root_position(&[-1, -1]).unwrap());
    assert_eq!(t.entry(s, ns).len(), 2);
    assert_eq!(e[0].1.monomial_text(None), "IJK");
    let z = t.root_position(&[0, 1]).unwrap();
    assert_eq!(t.entry(x, z)[0].1.monomial_text(t.pole), "K");
    // α + β not a root
    let w = t.root_position(&[1, 1]).unwrap();
    assert!(t.entry(x, w).is_empty());
    // antisymmetry
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let (p, q) = (t.entry(i, j), t.entry(j, i));
            assert_eq!(p.len(), q.len());
            for (u, v) in p.iter().zip(q) {
                assert_eq!(u.0, v.0);
                assert_eq!(u.1.scalar, -v.1.scalar);
            }
        }
    }
}

#[test]
fn exponents_are_cocycle_values() {
    let a = alg(GroupKind::Octahedral, OrbitSel::Largest, "B2");
    let t = a.bracket_table();
    let mut from_cocycle = Vec::new();
    for x in 0..a.sys.num_roots() {
        for y in 0..a.sys.num_roots() {
            if let Some(w) = a.omega.get(x, y) {
                from_cocycle.push(w.to_vec());
            }
        }
    }
    from_cocycle.push(vec![0.into(); 3]);
    from_cocycle.sort();
    from_cocycle.dedup();
    assert_eq!(t.exponent_vectors(), from_cocycle);
}

#[test]
fn jacobi_small_grid() {
    for g in [GroupKind::Cyclic(2), GroupKind::Cyclic(3), GroupKind::Dihedral(3), GroupKind::Tetrahedral, GroupKind::Icosahedral] {
        for t in ["A1", "A2", "B2", "G2"] {
            let a = alg(g, OrbitSel::Smallest, t);
            let r = jacobi_check(&a.bracket_table(), Exec::default());
            assert!(r.ok(), "{g} {t}: {:?}", r.examples);
        }
    }
}

#[test]
fn jacobi_detects_a_broken_table() {
    // the same cocycle with the signs of one extraspecial pair ignored
    let a = alg(GroupKind::Tetrahedral, OrbitSel::Smallest, "G2");
    let mut signs = vec![1i8; a.sys.num_roots()];
    signs[0] = -1; // s_α without s_{−α}
    let mut broken = a.clone();
    broken.eps = a.eps.gauged(&a.sys, &signs);
    assert!(!jacobi_check(&broken.bracket_table(), Exec::Sequential).ok());
}

#[test]
fn jacobi_half_exponents() {
    let spec = AliaSpec::principal(GroupKind::Cyclic(4), OrbitSel::Smallest, lt("A2"))
        .unwrap()
        .with_convention(alia_core::rootsystem::NConvention::Tabulated);
    let a = Alia::new(spec).unwrap();
    assert!(a.omega.halved);
    assert!(jacobi_check(&a.bracket_table(), Exec::default()).ok());
}

#[test]
fn abelianisation_two_ways() {
    for g in group_grid(4) {
        let model = GroupModel::build(g).unwrap();
        for t in ["A1", "A2", "B2", "G2"] {
            let lie = lt(t);
            let mut gradings = even_rank2_gradings(lie);
            if gradings.is_empty() {
                gradings.push(DynkinGrading::principal(lie.rank));
            }
            let mut poles: Vec<PoleChoice> = (0..model.num_orbits()).map(PoleChoice::Orbit).collect();
            poles.push(PoleChoice::Generic);
            for gr in gradings {
                for &p in &poles {
                    let spec = AliaSpec::new(g, OrbitSel::Smallest, lie, gr.clone()).unwrap().with_pole(p);
                    let a = Alia::new(spec).unwrap();
                    let f = abelianisation_dim(&a).unwrap();
                    let b = abelianisation_dim_brute_force(&a.bracket_table()).unwrap();
                    assert_eq!(f, b, "{}", a.spec);
                }
            }
        }
    }
}

#[test]
fn abelianisation_trivial_group() {
    let a = alg(GroupKind::Cyclic(1), OrbitSel::Smallest, "A2");
    assert_eq!(abelianisation_dim(&a).unwrap(), 0);
    assert_eq!(abelianisation_dim_brute_force(&a.bracket_table()).unwrap(), 0);
}

#[test]
fn isomorphism_keys_for_t_o_y() {
    let tables: Vec<(Vec<u64>, BracketTable)> = [GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral]
        .into_iter()
        .map(|g| {
            let a = alg(g, OrbitSel::Largest, "A2");
            (isomorphism_key(&a), a.bracket_table())
        })
        .collect();
    for (k, _) in &tables {
        assert_eq!(k, &vec![3, 3]);
    }
    assert!(tables_equal_up_to_relabel(&tables[0].1, &tables[1].1).is_some());
    assert!(tables_equal_up_to_relabel(&tables[1].1, &tables[2].1).is_some());
    // the smallest-orbit pole gives a different algebra
    let y = alg(GroupKind::Icosahedral, OrbitSel::Smallest, "A2");
    assert_eq!(isomorphism_key(&y), vec![2, 3]);
    assert!(tables_equal_up_to_relabel(&y.bracket_table(), &tables[2].1).is_none());
}

#[test]
fn isomorphism_key_edge_cases() {
    assert!(isomorphism_key(&alg(GroupKind::Cyclic(1), OrbitSel::Smallest, "A1")).len() == 1);
    let a1 = alg(GroupKind::Octahedral, OrbitSel::Smallest, "A1");
    assert_eq!(isomorphism_key(&a1), vec![2, 2]);
}

#[test]
fn fixed_point_dims_reference_values() {
    let y = GroupModel::build(GroupKind::Icosahedral).unwrap();
    for (labels, want, total) in [
        ("2,2,0,2,2", vec![7, 11, 19], 37),
        ("2,0,2,0,2", vec![9, 11, 17], 37),
        ("0,2,0,2,0", vec![11, 11, 19], 41),
    ] {
        let g: DynkinGrading = labels.parse().unwrap();
        let d = fixed_point_dims(&y, lt("A5"), &g).unwrap();
        assert_eq!(d.per_orbit, want, "{labels}");
        assert_eq!(d.sum(), total);
        assert_eq!(fixed_point_dims_oracle(&y, lt("A5"), &g).unwrap(), d);
    }
}

#[test]
fn fixed_point_dims_match_oracle() {
    for g in [GroupKind::Cyclic(3), GroupKind::Dihedral(4), GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral] {
        let m = GroupModel::build(g).unwrap();
        for gr in type_a_gradings() {
            let t = LieType::new(alia_core::rootsystem::Family::A, gr.labels.len()).unwrap();
            let sys = alia_core::rootsystem::RootSystem::new(t);
            if !gr.sl2_compatible(&sys) {
                continue;
            }
            assert_eq!(fixed_point_dims(&m, t, &gr).unwrap(), fixed_point_dims_oracle(&m, t, &gr).unwrap(), "{g} {gr}");
        }
        let a3: DynkinGrading = "2,0,2".parse().unwrap();
        assert!(fixed_point_dims(&m, lt("A3"), &a3).unwrap().sum() > 15 || matches!(g, GroupKind::Cyclic(_)), "{g}");
    }
}

#[test]
fn trivial_grading_fixes_everything() {
    let m = GroupModel::build(GroupKind::Octahedral).unwrap();
    let d = fixed_point_dims(&m, lt("B3"), &"0,0,0".parse().unwrap()).unwrap();
    assert_eq!(d.per_orbit, vec![21, 21, 21]);
    assert_eq!(d.invariant, 21);
}

#[test]
fn graphs() {
    let a = alg(GroupKind::Icosahedral, OrbitSel::Smallest, "A2");
    let s = &a.sys;
    let (a1, a2) = (s.index_of(&[1, 0]).unwrap(), s.index_of(&[0, 1]).unwrap());
    let g0 = rank2_graph(&a, 0).unwrap();
    assert!(g0.edges.contains(&(a1, s.neg(a1))));
    let g2 = rank2_graph(&a, 2).unwrap();
    assert!(g2.edges.contains(&(a1, a2)));
    let c1 = alg(GroupKind::Cyclic(1), OrbitSel::Smallest, "A2");
    assert!(rank2_graph(&c1, 0).unwrap().edges.is_empty());
    assert!(rank2_graph(&alg(GroupKind::Tetrahedral, OrbitSel::Smallest, "A3"), 0).unwrap().too_large);
}

fn reference(name: &str) -> Vec<RefEntry> {
    let path = format!("{}/tests/data/table_{name}.txt", env!("CARGO_MANIFEST_DIR"));
    parse_reference_table(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reference_tables_g2_f4() {
    for (t, name) in [("G2", "g2"), ("F4", "f4")] {
        let a = alg(GroupKind::Icosahedral, OrbitSel::Smallest, t);
        let table = a.bracket_table();
        let cmp = compare_with_reference(&a, &table, &reference(name));
        assert!(cmp.monomials_ok(), "{t}: {:?} {:?}", cmp.monomial_mismatches, cmp.coverage_mismatches);
        assert!(cmp.magnitudes_ok(), "{t}: {:?}", cmp.magnitude_mismatches);
        assert!(cmp.signs_ok(), "{t}");
    }
}

#[test]
fn normal_form_matrices_icosahedral() {
    use alia_core::rootsystem::{normal_form_integral, Cocycle2, NConvention, RootSystem};
    let y = GroupModel::build(GroupKind::Icosahedral).unwrap();
    let expected = [
        "*,1/IJK,*",
        "*,1,1/IJK,*,K/IJ,IJ,*",
        "*,1,1,1/IJK,*,K,J/IJ,IJ,*,J/IK,I,IK,*",
        "*,1,1,1,1/IJK,*,K,J,K/IJ,IJ,*,J,J/IK,I,IK,*,K/IJ,I,I,IJ,*",
        "*,1,1,1,1,1/IJK,*,K,J,K,I/IJ,IJ,*,J,J,I/IK,I,IK,*,K,I/IJ,I,I,IJ,*,I/JK,J,K,J,JK,*",
    ];
    for (n, want) in (1..=5).zip(expected) {
        let sys = RootSystem::new(LieType::new(alia_core::rootsystem::Family::A, n).unwrap());
        let w = Cocycle2::new(&sys, &DynkinGrading::principal(n), &y, NConvention::Canonical).unwrap();
        let nf = normal_form_integral(&sys, &w).unwrap();
        let m = normal_form_matrix(&sys, &nf).unwrap();
        let text: Vec<String> = m.iter().map(|r| r.join(",")).collect();
        assert_eq!(text.join("/"), want, "A{n}");
    }
}
