use multibanana::geometry::*;
use multibanana::Error;

fn two() -> BananaShape {
    BananaShape::two_by_two()
}

#[test]
fn shape_parsing() {
    assert_eq!(BananaShape::parse("2x2", None).unwrap(), two());
    assert_eq!(BananaShape::parse("1xW", Some(3)).unwrap(), BananaShape::one_by(3).unwrap());
    assert_eq!(BananaShape::parse("1x4", None).unwrap(), BananaShape::one_by(4).unwrap());
    assert!(BananaShape::parse("1xW", None).is_err());
    assert!(matches!(
        BananaShape::parse("3x3", None),
        Err(Error::UnsupportedShape { v: 3, w: 3 })
    ));
    assert!(BananaShape::parse("banana", None).is_err());
    assert!(!BananaShape::new(2, 3).unwrap().supported());
}

#[test]
fn basis_sizes() {
    let names = |s| -> Vec<String> { basis_classes(s).unwrap().into_iter().map(|b| b.name).collect() };
    assert_eq!(names(two()), ["A0", "A1", "B0", "B1", "C0", "C1"]);
    assert_eq!(names(BananaShape::one_by(1).unwrap()), ["A0", "B", "C"]);
    for w in 1..6 {
        assert_eq!(basis_classes(BananaShape::one_by(w).unwrap()).unwrap().len(), w as usize + 2);
    }
    assert!(basis_classes(BananaShape::new(3, 2).unwrap()).is_err());
}

#[test]
fn edge_reduction_examples() {
    let reduce = |label: &str| reduce_edge_class(two(), edge_22(label).unwrap()).unwrap();
    assert_eq!(reduce("C3"), reduce("C0"));
    assert_eq!(reduce("C2"), reduce("C1"));
    assert_eq!(reduce("A2"), reduce("A0"));
    assert_eq!(reduce("A3"), reduce("A1"));
    assert_eq!(reduce("B2"), reduce("B0"));
    assert_eq!(reduce("B3"), reduce("B1"));
    assert_ne!(reduce("C0"), reduce("C1"));
    assert_eq!(reduce("C0").to_string(), "C0");

    let w3 = BananaShape::one_by(3).unwrap();
    for n in 0..3 {
        let c = reduce_edge_class(w3, LatticeEdge::new(Family::C, 0, n)).unwrap();
        assert_eq!(c.to_string(), "C");
        let a = reduce_edge_class(w3, LatticeEdge::new(Family::A, 0, n)).unwrap();
        assert_eq!(a.to_string(), format!("A{n}"));
    }
    assert!(matches!(
        reduce_edge_class(w3, LatticeEdge::new(Family::A, 0, 3)),
        Err(Error::EdgeOutsideDomain(_))
    ));
}

#[test]
fn hexagon_relations_hold_after_reduction() {
    let mut shapes = vec![two()];
    shapes.extend((1..5).map(|w| BananaShape::one_by(w).unwrap()));
    for shape in shapes {
        for m in 0..shape.v as i64 {
            for n in 0..shape.w as i64 {
                for (lhs, rhs) in hexagon_relations(shape, m, n) {
                    let sum = |pair: [LatticeEdge; 2]| {
                        &reduce_edge_class(shape, pair[0]).unwrap()
                            + &reduce_edge_class(shape, pair[1]).unwrap()
                    };
                    assert_eq!(sum(lhs), sum(rhs), "{shape} cell ({m}, {n})");
                }
            }
        }
    }
}

#[test]
fn edges_span_the_basis() {
    for shape in [two(), BananaShape::one_by(3).unwrap()] {
        let edges = fundamental_edges(shape);
        assert_eq!(edges.len(), 3 * (shape.v * shape.w) as usize);
        let mut classes: Vec<String> = edges
            .iter()
            .map(|e| reduce_edge_class(shape, *e).unwrap().to_string())
            .collect();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), basis_classes(shape).unwrap().len());
    }
}

#[test]
fn known_two_by_two_relations() {
    // A0 + C1 = A2 + C2 and A0 + C0 = A2 + C3 are among the lattice relations
    let shape = two();
    let label = |e: LatticeEdge| label_22(e).unwrap();
    let mut found = Vec::new();
    for m in 0..2 {
        for n in 0..2 {
            for (lhs, rhs) in hexagon_relations(shape, m, n) {
                let mut l: Vec<_> = lhs.iter().map(|e| label(*e)).collect();
                let mut r: Vec<_> = rhs.iter().map(|e| label(*e)).collect();
                l.sort();
                r.sort();
                found.push((l, r));
            }
        }
    }
    let has = |a: [&str; 2], b: [&str; 2]| {
        found.iter().any(|(l, r)| (l == &a && r == &b) || (l == &b && r == &a))
    };
    assert!(has(["A0", "C1"], ["A2", "C2"]));
    assert!(has(["A0", "C0"], ["A2", "C3"]));
}

#[test]
fn b_location_counts() {
    assert_eq!(b_locations(two()).unwrap().len(), 2);
    assert_eq!(b_locations(BananaShape::one_by(3).unwrap()).unwrap().len(), 3);
    assert_eq!(b_locations(BananaShape::one_by(1).unwrap()).unwrap().len(), 1);
    for loc in b_locations(two()).unwrap() {
        let class = reduce_edge_class(two(), loc.edge).unwrap();
        assert_eq!(class.to_string(), "B0");
    }
}

#[test]
fn northeast_branch_matches_figure() {
    let specs = branch_specs(two(), 0).unwrap();
    let ne = specs.iter().find(|b| b.direction == Compass::NE).unwrap();
    assert_eq!(ne.labels, ["s1", "r0", "s0", "r1"]);
    assert_eq!(ne.label(5), "r0");
}

#[test]
fn branch_specs_are_well_formed() {
    let mut shapes = vec![two()];
    shapes.extend((1..5).map(|w| BananaShape::one_by(w).unwrap()));
    for shape in shapes {
        for loc in b_locations(shape).unwrap() {
            let specs = branch_specs(shape, loc.index).unwrap();
            assert_eq!(specs.len(), 4);
            for spec in &specs {
                spec.validate(shape).unwrap();
                if !shape.is_two_by_two() {
                    // the first edge along each 1xW branch towards the east is C
                    if matches!(spec.direction, Compass::NE | Compass::SW) {
                        assert_eq!(spec.labels[0], "s");
                    }
                }
            }
        }
        let count = b_locations(shape).unwrap().len();
        assert!(matches!(
            branch_specs(shape, count),
            Err(Error::InvalidLocation { .. })
        ));
    }
}

#[test]
fn two_by_two_locations_share_sequences() {
    let seqs = |loc| {
        let mut v: Vec<Vec<String>> = branch_specs(two(), loc)
            .unwrap()
            .into_iter()
            .map(|b| b.labels)
            .collect();
        v.sort();
        v
    };
    assert_eq!(seqs(0), seqs(1));
}

#[test]
fn one_by_w_locations_are_cyclic_shifts() {
    let shape = BananaShape::one_by(4).unwrap();
    let base = branch_specs(shape, 0).unwrap();
    for i in 1..4 {
        let map: Vec<(String, String)> = (0..4)
            .map(|k| (format!("r{k}"), format!("r{}", (k + i) % 4)))
            .collect();
        let map_ref: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let expected: Vec<BranchSpec> = base.iter().map(|b| b.renamed(&map_ref)).collect();
        assert_eq!(branch_specs(shape, i).unwrap(), expected);
    }
}

#[test]
fn invalid_branch_specs_rejected() {
    let shape = two();
    assert!(BranchSpec::new(Compass::NE, &["s1", "s0", "r0", "r1"]).validate(shape).is_err());
    assert!(BranchSpec::new(Compass::NE, &["s1", "r0"]).validate(shape).is_err());
    assert!(BranchSpec::new(Compass::NE, &["s1", "r0", "s0", "x"]).validate(shape).is_err());
}

#[test]
fn curve_class_from_monomial() {
    let c = CurveClass::from_exponents(two(), &[1, 0, 2, 0]).unwrap();
    assert_eq!(c.to_string(), "A0 + B0 + 2C0");
    assert!(c.is_effective());
    let b = CurveClass::from_exponents(BananaShape::one_by(1).unwrap(), &[0, 0]).unwrap();
    assert_eq!(b.to_string(), "B");
}
