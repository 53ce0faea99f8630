//! One PASS/FAIL line per acceptance criterion. Criteria listed in `KNOWN_UNATTAINABLE`
//! are expected to fail; the test fails if any other criterion does, or if one of
//! those starts passing.

use alia_core::alia::*;
use alia_core::bipoly::LocElem;
use alia_core::exactnum::CycNum;
use alia_core::intertwiner::*;
use alia_core::par::Exec;
use alia_core::polyhedral::*;
use alia_core::rootsystem::*;
use std::io::Write as _;
use std::time::Instant;

mod common;
use common::*;

/// The printed degree-20 and degree-30 icosahedral forms are not relatively
/// invariant under the printed generator `b`.
const KNOWN_UNATTAINABLE: &[usize] = &[3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn lt(s: &str) -> LieType {
    s.parse().unwrap()
}

/// Bypasses the test harness's output capture so the lines show in every run.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn run(n: usize, name: &str, bound_secs: Option<f64>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let mut o = f();
    let secs = t.elapsed().as_secs_f64();
    let timing = match bound_secs {
        Some(b) if cfg!(debug_assertions) => format!("{secs:.2}s, bound {b}s not enforced in debug builds"),
        Some(b) => {
            if secs > b {
                o.pass = false;
                o.detail = format!("{} over time bound", o.detail);
            }
            format!("{secs:.2}s, bound {b}s")
        }
        None => format!("{secs:.2}s"),
    };
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    let known = if !o.pass && KNOWN_UNATTAINABLE.contains(&n) { " (known unattainable)" } else { "" };
    emit(&format!("criterion {n:>2}: {verdict} {name} [{timing}]{known} {}", o.detail));
    o.pass
}

fn group_data() -> Outcome {
    // |Ω|, ν_i, ν, d_i, d, |Γ|, (order, exponent) of Γ^ab and of BΓ^ab
    type Row = (usize, Vec<u32>, u32, Vec<u32>, u32, u32, (usize, usize), (usize, usize));
    let expected = |k: GroupKind| -> Row {
        match k {
            GroupKind::Cyclic(n) => (2, vec![n, n], n, vec![1, 1], 1, n, (n as usize, n as usize), (2 * n as usize, 2 * n as usize)),
            GroupKind::Dihedral(n) if n % 2 == 1 => (3, vec![n, 2, 2], 2 * n, vec![2, n, n], 1, 2 * n, (2, 2), (4, 4)),
            GroupKind::Dihedral(n) => (3, vec![n, 2, 2], n, vec![2, n, n], 2, 2 * n, (4, 2), (4, 2)),
            GroupKind::Tetrahedral => (3, vec![3, 3, 2], 6, vec![4, 4, 6], 2, 12, (3, 3), (3, 3)),
            GroupKind::Octahedral => (3, vec![4, 3, 2], 12, vec![6, 8, 12], 2, 24, (2, 2), (2, 2)),
            GroupKind::Icosahedral => (3, vec![5, 3, 2], 30, vec![12, 20, 30], 2, 60, (1, 1), (1, 1)),
        }
    };
    let mut bad = Vec::new();
    for kind in group_grid(12) {
        let m = GroupModel::build(kind).unwrap();
        let (ga, ba) = m.abelianizations();
        let got: Row = (m.num_orbits(), m.nu.clone(), m.lcm_nu, m.d.clone(), m.gcd_d, m.order_gamma, (ga.order, ga.exponent), (ba.order, ba.exponent));
        let sum_d: u32 = m.d.iter().sum();
        let counting = sum_d == (m.num_orbits() as u32 - 2) * m.order_gamma + 2;
        if got != expected(kind) || !counting || m.elements.len() != 2 * m.order_gamma as usize {
            bad.push(kind.to_string());
        }
    }
    outcome(bad.is_empty(), format!("{} groups; mismatches {bad:?}", group_grid(12).len()))
}

fn n_table() -> Outcome {
    let y: &[(i64, [i64; 3])] = &[
        (30, [0, 0, 1]), (28, [4, 2, 0]), (26, [3, 1, 1]), (24, [2, 0, 0]), (22, [1, 2, 1]), (20, [0, 1, 0]),
        (18, [4, 0, 1]), (16, [3, 2, 0]), (14, [2, 1, 1]), (12, [1, 0, 0]), (10, [0, 2, 1]), (8, [4, 1, 0]),
        (6, [3, 0, 1]), (4, [2, 2, 0]), (2, [1, 1, 1]), (0, [0, 0, 0]), (-2, [4, 2, 1]), (-4, [3, 1, 0]),
        (-6, [2, 0, 1]), (-8, [1, 2, 0]), (-10, [0, 1, 1]), (-12, [4, 0, 0]), (-14, [3, 2, 1]), (-16, [2, 1, 0]),
        (-18, [1, 0, 1]), (-20, [0, 2, 0]), (-22, [4, 1, 1]), (-24, [3, 0, 0]), (-26, [2, 2, 1]), (-28, [1, 1, 0]),
        (-30, [0, 0, 1]),
    ];
    let o: &[(i64, [i64; 3])] = &[
        (12, [2, 0, 0]), (10, [1, 2, 1]), (8, [0, 1, 0]), (6, [3, 0, 1]), (4, [2, 2, 0]), (2, [1, 1, 1]), (0, [0, 0, 0]),
        (-2, [3, 2, 1]), (-4, [2, 1, 0]), (-6, [1, 0, 1]), (-8, [0, 2, 0]), (-10, [3, 1, 1]), (-12, [2, 0, 0]),
    ];
    let t: &[(i64, [i64; 3])] = &[
        (6, [0, 0, 1]), (4, [2, 2, 0]), (2, [1, 1, 1]), (0, [0, 0, 0]), (-2, [2, 2, 1]), (-4, [1, 1, 0]), (-6, [0, 0, 1]),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |kind: GroupKind, k: i64, want: Vec<i64>, tabulated: bool| {
        let m = GroupModel::build(kind).unwrap();
        let got = if tabulated { m.n_map_tabulated(k) } else { m.n_map(k) }.unwrap().residues;
        checked += 1;
        if got != want {
            bad.push(format!("{kind} k={k}: {got:?} vs {want:?}"));
        }
    };
    for (kind, rows) in [(GroupKind::Icosahedral, y), (GroupKind::Octahedral, o), (GroupKind::Tetrahedral, t)] {
        for (k, r) in rows {
            check(kind, *k, r.to_vec(), false);
        }
    }
    // symbolic columns, for n where every printed residue is in range
    for n in 3..=12i64 {
        let ks = [4, 2, 0, -2, -4];
        let kind = GroupKind::Dihedral(n as u32);
        for (k, r) in ks.iter().zip([[2, 0, 0], [1, 1, 1], [0, 0, 0], [n - 1, 1, 1], [n - 2, 0, 0]]) {
            check(kind, *k, r.to_vec(), false);
        }
        if n % 2 == 1 {
            for (k, r) in ks.iter().zip([[2, 2], [1, 1], [0, 0], [n - 1, n - 1], [n - 2, n - 2]]) {
                check(GroupKind::Cyclic(n as u32), *k, r.to_vec(), false);
            }
        } else if n >= 6 {
            let m = n / 2;
            for (k, r) in ks.iter().zip([[2, 2], [1, 1], [0, 0], [m - 1, m - 1], [m - 2, m - 2]]) {
                check(GroupKind::Cyclic(n as u32), *k, r.to_vec(), true);
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} entries; mismatches {bad:?}"))
}

fn ground_forms() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for kind in group_grid(12) {
        let m = GroupModel::build(kind).unwrap();
        for (i, form) in printed_ground_forms(kind).iter().enumerate() {
            for (g, chi) in m.generators.iter().zip(m.character(i)) {
                checked += 1;
                let embedded = form.embed(kind.working_order()).unwrap();
                if embedded.substitute(g) != embedded.scale(chi) {
                    bad.push(format!("{kind} form {} of degree {}", i + 1, form.degree().unwrap_or(0)));
                }
            }
        }
    }
    bad.dedup();
    outcome(bad.is_empty(), format!("{checked} checks; not relatively invariant: {bad:?}"))
}

fn invariant_generators() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for kind in group_grid(12) {
        let m = GroupModel::build(kind).unwrap();
        let span = 2 * m.order_gamma as i64;
        let sub_span = 2 * *m.nu.iter().max().unwrap() as i64;
        let n = kind.working_order();
        for j in 0..m.num_orbits() {
            for k in (-span..=span).step_by(2) {
                count += 1;
                let p = m.p_k(j, k).unwrap();
                let chi = m.p_k_character(j, k).unwrap();
                let trivial = chi.iter().all(|c| c == &CycNum::one(n));
                let homogeneous = p.numerator().is_homogeneous() && p.degree() == Some(k);
                let by_subst = k.abs() > sub_span || kind == GroupKind::Icosahedral && k.abs() > 12 || m.p_k_invariant_by_substitution(j, k).unwrap();
                if !(trivial && homogeneous && by_subst) {
                    bad.push(format!("{kind} j={j} k={k}"));
                }
            }
        }
        let dims = m.molien_dims(120, Exec::default()).unwrap();
        let kostant = kostant_series(kind, 120);
        if dims.iter().zip(&kostant).any(|(a, b)| *a as i64 != *b) {
            bad.push(format!("{kind}: Molien vs Kostant"));
        }
        if let Some(num) = tabulated_numerator(kind) {
            if numerator_series(&num, m.order_gamma, 120) != kostant {
                bad.push(format!("{kind}: tabulated numerator"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} generators, Molien to degree 120; failures {bad:?}"))
}

fn icosa_model() -> (GroupModel, usize) {
    let m = GroupModel::build(GroupKind::Icosahedral).unwrap();
    let j = m.orbit_index(OrbitSel::Smallest).unwrap();
    (m, j)
}

fn intertwiner() -> Outcome {
    let (model, j) = icosa_model();
    let it = build_modaut(model.ground_form(j), &model.generators).unwrap();
    let ic = icosa();
    let p = f(&[(1, 11, 1), (-11, 6, 6), (-1, 1, 11)]);
    let entries = it.matrix.get(0, 0).equals_fraction(&ic.a, &c(12).mul(&p.div_exact(&x()).unwrap()))
        && it.matrix.get(1, 0).equals_fraction(&ic.b.neg(), &c(12).mul(&p.div_exact(&y()).unwrap()))
        && it.matrix.get(0, 1) == &LocElem::from_form(x(), &it.pole)
        && it.matrix.get(1, 1) == &LocElem::from_form(y(), &it.pole);
    outcome(entries && it.report.all_ok() && it.report.equivariant.len() == 2, format!("entries {entries}, {:?}", it.report))
}

fn explicit_generators() -> Outcome {
    let (model, j) = icosa_model();
    let g = ExplicitGenerators::new(&model, j, 2, Exec::default()).unwrap();
    let e0 = g.modaut_of(&unit3(2, 0));
    let (col0, row0) = e0_factors();
    let e0_ok = (0..3).all(|i| (0..3).all(|k| e0.get(i, k) == &LocElem::from_form(col0[i].mul(&row0[k]), &g.modaut.pole)));
    let (c1, r1) = e1_factors();
    let (c2, r2) = e2_factors();
    let e1_ok = rank_one_matches(&g.modaut_of(&unit3(0, 1)), &c1, &r1);
    let e2_ok = rank_one_matches(&g.modaut_of(&unit3(1, 2)), &c2, &r2);
    let r = cross_validate(&model, j, 2, Exec::default()).unwrap();
    let pass = e0_ok && e1_ok && e2_ok && r.ok();
    outcome(pass, format!("e0 {e0_ok}, e1 {e1_ok}, e2 {e2_ok}, closure {}, table brackets {}/{} agree, equivariant {}, degrees {}", r.closes, r.pairs - r.mismatches.len(), r.pairs, r.equivariant, r.degrees))
}

fn orbit_example() -> Outcome {
    let s = RootSystem::new(lt("A2"));
    let e = ChevalleyConstants::new(&s);
    let (y, _) = icosa_model();
    let w = Cocycle2::new(&s, &DynkinGrading::principal(2), &y, NConvention::Canonical).unwrap();
    let rows = orbit_table(&s, &e, &w, 0, 1).unwrap();
    let eps: Vec<i64> = rows.iter().map(|r| r.eps_direct).collect();
    let omegas: Vec<Vec<i64>> = rows.iter().map(|r| r.omega_direct.iter().map(|q| q.to_integer()).collect()).collect();
    let want_omega = vec![vec![0, 0, 1], vec![1, 1, 0], vec![0, 0, 0], vec![1, 1, 1], vec![0, 0, 0], vec![1, 1, 0]];
    let pass = eps == [1, -1, 1, -1, 1, -1] && omegas == want_omega && rows.iter().all(OrbitRow::consistent);
    outcome(pass, format!("eps {eps:?}, omega {omegas:?}"))
}

fn reference(name: &str) -> Vec<RefEntry> {
    let path = format!("{}/tests/data/table_{name}.txt", env!("CARGO_MANIFEST_DIR"));
    parse_reference_table(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn structure_tables() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (t, name, bound) in [("G2", "g2", 1.0), ("F4", "f4", 30.0), ("E6", "e6", 120.0), ("E7", "e7", 600.0), ("E8", "e8", f64::INFINITY)] {
        let start = Instant::now();
        let a = Alia::new(AliaSpec::principal(GroupKind::Icosahedral, OrbitSel::Smallest, lt(t)).unwrap()).unwrap();
        let table = a.bracket_table();
        let cmp = compare_with_reference(&a, &table, &reference(name));
        let secs = start.elapsed().as_secs_f64();
        let in_time = cfg!(debug_assertions) || secs <= bound;
        pass &= cmp.all_ok() && in_time;
        parts.push(format!(
            "{t}: {} entries, monomials {}, magnitudes {}, signs {} ({} gauge), {secs:.2}s",
            cmp.entries,
            cmp.monomials_ok(),
            cmp.magnitudes_ok(),
            cmp.signs_ok(),
            if cmp.identity_gauge { "identity" } else { "nontrivial" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn jacobi() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let groups = [GroupKind::Cyclic(4), GroupKind::Dihedral(3), GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral];
    for g in groups {
        for t in ["A1", "A2", "B2", "G2", "F4", "E6"] {
            let lie = lt(t);
            let mut gradings = vec![DynkinGrading::principal(lie.rank)];
            if lie.rank == 2 {
                gradings.extend(even_rank2_gradings(lie));
            }
            gradings.dedup();
            for gr in gradings {
                let a = Alia::new(AliaSpec::new(g, OrbitSel::Smallest, lie, gr).unwrap()).unwrap();
                count += 1;
                if !jacobi_check(&a.bracket_table(), Exec::default()).ok() {
                    bad.push(a.spec.to_string());
                }
            }
        }
        for gr in even_rank2_gradings(lt("C2")) {
            let a = Alia::new(AliaSpec::new(g, OrbitSel::Smallest, lt("C2"), gr).unwrap()).unwrap();
            count += 1;
            if !jacobi_check(&a.bracket_table(), Exec::default()).ok() {
                bad.push(a.spec.to_string());
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} algebras; failures {bad:?}"))
}

fn normal_forms() -> Outcome {
    let (y, _) = icosa_model();
    let s = RootSystem::new(lt("A2"));
    let w = Cocycle2::new(&s, &DynkinGrading::principal(2), &y, NConvention::Canonical).unwrap();
    let nf = normal_form_integral(&s, &w).unwrap();
    let want = [
        ([1, 0], [0, 0, 0]),
        ([0, 1], [0, 0, 1]),
        ([1, 1], [0, 0, 0]),
        ([-1, 0], [1, 1, 1]),
        ([0, -1], [1, 1, 0]),
        ([-1, -1], [1, 1, 0]),
    ];
    let example = want.iter().all(|(r, v)| {
        let got: Vec<i64> = nf.values[s.index_of(r).unwrap()].iter().map(|q| q.to_integer()).collect();
        got == v
    });
    let matrices = [
        "*,1/IJK,*",
        "*,1,1/IJK,*,K/IJ,IJ,*",
        "*,1,1,1/IJK,*,K,J/IJ,IJ,*,J/IK,I,IK,*",
        "*,1,1,1,1/IJK,*,K,J,K/IJ,IJ,*,J,J/IK,I,IK,*,K/IJ,I,I,IJ,*",
        "*,1,1,1,1,1/IJK,*,K,J,K,I/IJ,IJ,*,J,J,I/IK,I,IK,*,K,I/IJ,I,I,IJ,*,I/JK,J,K,J,JK,*",
    ];
    let mut displays = true;
    for (n, m) in (1..=5).zip(matrices) {
        let sys = RootSystem::new(LieType::new(Family::A, n).unwrap());
        let w = Cocycle2::new(&sys, &DynkinGrading::principal(n), &y, NConvention::Canonical).unwrap();
        let rows = normal_form_matrix(&sys, &normal_form_integral(&sys, &w).unwrap()).unwrap();
        displays &= rows.iter().map(|r| r.join(",")).collect::<Vec<_>>().join("/") == m;
    }
    // exhaustive enumeration: at least one admissible integral per component
    let mut cases = 0;
    let mut missing = Vec::new();
    let mut systems: Vec<(LieType, Vec<DynkinGrading>)> = ["A1", "A2", "B2", "C2", "G2"]
        .iter()
        .map(|t| {
            let lie = lt(t);
            let mut g = even_rank2_gradings(lie);
            if g.is_empty() {
                g.push(DynkinGrading::principal(lie.rank));
            }
            (lie, g)
        })
        .collect();
    for n in 3..=5 {
        let lie = LieType::new(Family::A, n).unwrap();
        let sys = RootSystem::new(lie);
        systems.push((lie, type_a_gradings().into_iter().filter(|g| g.labels.len() == n && g.is_even_on(&sys)).collect()));
    }
    for kind in group_grid(6) {
        let m = GroupModel::build(kind).unwrap();
        for (lie, gradings) in &systems {
            let sys = RootSystem::new(*lie);
            for gr in gradings {
                let w = Cocycle2::new(&sys, gr, &m, NConvention::Canonical).unwrap();
                cases += 1;
                match normal_form_integral(&sys, &w) {
                    Ok(nf) if nf.candidates.iter().all(|&c| c >= 1) => {}
                    _ => missing.push(format!("{kind} {lie} {gr}")),
                }
            }
        }
    }
    let pass = example && displays && missing.is_empty();
    outcome(pass, format!("example {example}, A1..A5 displays {displays}, {cases} enumerated cases, without normal form {missing:?}"))
}

fn fixed_points() -> Outcome {
    let (y, _) = icosa_model();
    let mut got = Vec::new();
    let mut pass = true;
    for (labels, want, total) in [
        ("2,2,0,2,2", vec![7, 11, 19], 37),
        ("2,0,2,0,2", vec![9, 11, 17], 37),
        ("0,2,0,2,0", vec![11, 11, 19], 41),
    ] {
        let g: DynkinGrading = labels.parse().unwrap();
        let d = fixed_point_dims(&y, lt("A5"), &g).unwrap();
        pass &= d.per_orbit == want && d.sum() == total && fixed_point_dims_oracle(&y, lt("A5"), &g).unwrap() == d;
        got.push(format!("({labels}) {:?} = {}", d.per_orbit, d.sum()));
    }
    outcome(pass, got.join(", "))
}

fn isomorphism() -> Outcome {
    let algs: Vec<Alia> = [GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral]
        .into_iter()
        .map(|g| Alia::new(AliaSpec::principal(g, OrbitSel::Largest, lt("A2")).unwrap()).unwrap())
        .collect();
    let keys: Vec<Vec<u64>> = algs.iter().map(isomorphism_key).collect();
    let tables: Vec<BracketTable> = algs.iter().map(Alia::bracket_table).collect();
    let same_keys = keys.windows(2).all(|w| w[0] == w[1]);
    let same_tables = tables_equal_up_to_relabel(&tables[0], &tables[1]).is_some() && tables_equal_up_to_relabel(&tables[1], &tables[2]).is_some();
    outcome(same_keys && same_tables, format!("keys {keys:?}, tables equal up to relabelling {same_tables}"))
}

fn abelianisation() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for g in group_grid(5) {
        let model = GroupModel::build(g).unwrap();
        for t in ["A1", "A2", "B2", "C2", "G2"] {
            let lie = lt(t);
            let mut gradings = even_rank2_gradings(lie);
            if gradings.is_empty() {
                gradings.push(DynkinGrading::principal(lie.rank));
            }
            let mut poles: Vec<PoleChoice> = (0..model.num_orbits()).map(PoleChoice::Orbit).collect();
            poles.push(PoleChoice::Generic);
            for gr in gradings {
                for &p in &poles {
                    let a = Alia::new(AliaSpec::new(g, OrbitSel::Smallest, lie, gr.clone()).unwrap().with_pole(p)).unwrap();
                    cases += 1;
                    let formula = abelianisation_dim(&a).unwrap();
                    let brute = abelianisation_dim_brute_force(&a.bracket_table()).unwrap();
                    if formula != brute {
                        bad.push(format!("{}: {formula} vs {brute}", a.spec));
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} algebras; disagreements {bad:?}"))
}

#[test]
fn acceptance() {
    let results = [
        (1, run(1, "group data", Some(5.0), group_data)),
        (2, run(2, "n-table", None, n_table)),
        (3, run(3, "ground forms", None, ground_forms)),
        (4, run(4, "invariant generators and Molien series", Some(60.0), invariant_generators)),
        (5, run(5, "intertwiner", None, intertwiner)),
        (6, run(6, "explicit generators", Some(120.0), explicit_generators)),
        (7, run(7, "cocycle orbit example", None, orbit_example)),
        (8, run(8, "structure tables G2 F4 E6 E7 E8", None, structure_tables)),
        (9, run(9, "Jacobi grid", None, jacobi)),
        (10, run(10, "normal forms", None, normal_forms)),
        (11, run(11, "fixed-point dimensions", None, fixed_points)),
        (12, run(12, "isomorphism keys", None, isomorphism)),
        (13, run(13, "abelianisation two ways", None, abelianisation)),
    ];
    let unexpected: Vec<usize> = results.iter().filter(|(n, ok)| *ok == KNOWN_UNATTAINABLE.contains(n)).map(|(n, _)| *n).collect();
    emit(&format!("passed {}/{}; known unattainable {KNOWN_UNATTAINABLE:?}", results.iter().filter(|r| r.1).count(), results.len()));
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
