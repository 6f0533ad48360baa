use gcurve_core::group::{named_group, CharacterTable, FiniteGroup};
use gcurve_core::linalg::Cyclotomic;

fn table(name: &str) -> (FiniteGroup, CharacterTable) {
    let g = named_group(name).unwrap();
    let t = CharacterTable::new(&g).unwrap();
    (g, t)
}

fn degrees(t: &CharacterTable) -> Vec<u64> {
    let mut d: Vec<u64> = t.rows().iter().map(|c| c.degree).collect();
    d.sort_unstable();
    d
}

fn indicators(t: &CharacterTable) -> Vec<(u64, i8)> {
    let mut v: Vec<(u64, i8)> = t.rows().iter().map(|c| (c.degree, c.fs)).collect();
    v.sort_unstable();
    v
}

#[test]
fn degree_multisets() {
    let cases: &[(&str, &[u64])] = &[
        ("C2", &[1, 1]),
        ("C3", &[1, 1, 1]),
        ("C4", &[1, 1, 1, 1]),
        ("C5", &[1, 1, 1, 1, 1]),
        ("C6", &[1, 1, 1, 1, 1, 1]),
        ("S3", &[1, 1, 2]),
        ("D4", &[1, 1, 1, 1, 2]),
        ("Q8", &[1, 1, 1, 1, 2]),
        ("A4", &[1, 1, 1, 3]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("A5", &[1, 3, 3, 4, 5]),
        ("Dic3", &[1, 1, 1, 1, 2, 2]),
        ("D5", &[1, 1, 2, 2]),
    ];
    for (name, expected) in cases {
        let (g, t) = table(name);
        assert_eq!(degrees(&t), expected.to_vec(), "{}", name);
        assert_eq!(t.len(), g.num_classes(), "{}", name);
        let sum: u64 = t.rows().iter().map(|c| c.degree * c.degree).sum();
        assert_eq!(sum as usize, g.order(), "{}", name);
        t.verify().unwrap();
        t.verify_class_algebra(&g).unwrap();
    }
}

#[test]
fn frobenius_schur_indicators() {
    assert_eq!(indicators(&table("Q8").1), vec![(1, 1), (1, 1), (1, 1), (1, 1), (2, -1)]);
    assert_eq!(indicators(&table("D4").1), vec![(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)]);
    for name in ["S3", "S4", "A5"] {
        assert!(table(name).1.rows().iter().all(|c| c.fs == 1), "{}", name);
    }
    let (_, c3) = table("C3");
    assert_eq!(c3.rows().iter().map(|c| c.fs).collect::<Vec<_>>(), vec![1, 0, 0]);
    assert_eq!(indicators(&table("A4").1), vec![(1, 0), (1, 0), (1, 1), (3, 1)]);
    // the faithful degree-2 characters of the dicyclic group are quaternionic
    assert_eq!(indicators(&table("Dic3").1), vec![(1, 0), (1, 0), (1, 1), (1, 1), (2, -1), (2, 1)]);
}

#[test]
fn alternating_five_has_golden_values() {
    let (g, t) = table("A5");
    let field = t.field();
    // (1 + sqrt 5)/2 = -z5^2 - z5^3 in Q(z5) embedded in Q(z30)
    let z = |k: i64| Cyclotomic::zeta_power(field, k * 6);
    let golden = -(z(2) + z(3));
    let five_cycle = g.class_of(g.generators()[0]);
    let threes: Vec<&Cyclotomic> = t.rows().iter().filter(|c| c.degree == 3).map(|c| &c.values[five_cycle]).collect();
    assert!(threes.contains(&&golden));
    assert_eq!(t.galois_orbits().iter().filter(|o| o.rows.len() == 2).count(), 1);
}

#[test]
fn cyclic_rows_are_powers_of_a_root_of_unity() {
    for n in 2..=8 {
        let g = FiniteGroup::cyclic(n);
        let t = CharacterTable::new(&g).unwrap();
        let gen_class = g.class_of(g.generators()[0]);
        let mut seen: Vec<Cyclotomic> = t.rows().iter().map(|c| c.values[gen_class].clone()).collect();
        let mut expected: Vec<Cyclotomic> = (0..n as i64).map(|k| Cyclotomic::zeta_power(t.field(), k * (t.exponent() / n) as i64)).collect();
        seen.sort_by(|a, b| a.canonical_cmp(b));
        expected.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(seen, expected, "C{}", n);
    }
}

#[test]
fn trivial_row_first_and_duals_are_involutive() {
    for (name, _, _) in gcurve_core::group::CATALOG.iter().filter(|c| c.1 <= 24) {
        let (_, t) = table(name);
        assert!(t.is_trivial(0));
        for r in 0..t.len() {
            assert_eq!(t.dual(t.dual(r)), r);
            assert_eq!(t.fs_indicator(r) == 0, t.dual(r) != r, "{} row {}", name, r);
        }
    }
}
