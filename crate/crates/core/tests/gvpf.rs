use multibanana::geometry::BananaShape;
use multibanana::gvpf::*;
use multibanana::qseries::jacobi_phi_at;
use multibanana::series::Substitution;
use multibanana::Order;
use num_bigint::BigInt;
use num_traits::Zero;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn two_by_two_spot_values() {
    let pf = pf_22(4).unwrap();
    assert_eq!(pf.order(), Order::Upto(4));
    assert_eq!(pf.coeff_of(&[]).unwrap(), big(2));
    assert_eq!(pf.coeff_of(&[("r0", 1)]).unwrap(), big(-2));
    assert_eq!(pf.coeff_of(&[("s1", 1)]).unwrap(), big(-2));
    assert_eq!(pf.coeff_of(&[("r0", 1), ("s1", 1)]).unwrap(), big(2));
    // three configurations at each of the two B locations; the enumeration agrees
    assert_eq!(pf.coeff_of(&[("r0", 1), ("s0", 1)]).unwrap(), big(6));
}

#[test]
fn one_by_one_spot_values() {
    let pf = pf_1w(1, 4).unwrap();
    let c = |r: i32, s: i32| pf.coeff_of(&[("r0", r), ("s", s)]).unwrap();
    assert_eq!(c(0, 0), big(1));
    assert_eq!(c(0, 1), big(-2));
    assert_eq!(c(0, 2), big(1));
    assert_eq!(c(1, 0), big(-2));
    assert_eq!(c(1, 1), big(8));
}

#[test]
fn one_by_one_reduces_to_phi() {
    let pf = pf_1w(1, 10).unwrap();
    let reg = pf.registry().clone();
    let q = reg.exps(&[("r0", 1), ("s", 1)]).unwrap();
    let s = reg.exps(&[("s", 1)]).unwrap();
    let expected = jacobi_phi_at(&reg, &q, &s, 12).unwrap().mul_monomial(&s, 1).unwrap();
    let cmp = pf.compare(&expected).unwrap();
    assert!(cmp.agrees(), "{:?}", cmp.first_discrepancy);
    assert_eq!(cmp.order, Order::Upto(10));
}

#[test]
fn constant_term_counts_locations() {
    for w in 1..=3 {
        assert_eq!(pf_1w(w, 3).unwrap().coeff_of(&[]).unwrap(), big(w as i64));
    }
    assert!(pf_1w(0, 3).is_err());
}

#[test]
fn supported_in_nonnegative_orthant() {
    let mut all = vec![pf_22(6).unwrap()];
    all.extend((1..=3).map(|w| pf_1w(w, 6).unwrap()));
    for pf in all {
        assert!(pf.terms().all(|(e, _)| e.iter().all(|&x| x >= 0)));
    }
}

#[test]
fn two_by_two_symmetries() {
    let pf = pf_22(7).unwrap();
    let reg = pf.registry().clone();
    let swap = |pairs: &[(&str, &str)]| {
        let mut sub = Substitution::new(&reg, &reg);
        for &(a, b) in pairs {
            sub = sub.map(a, 1, &[(b, 1)]).unwrap().map(b, 1, &[(a, 1)]).unwrap();
        }
        pf.substitute_monomials(&sub).unwrap()
    };
    assert_eq!(swap(&[("r0", "s0"), ("r1", "s1")]), pf);
    assert_eq!(swap(&[("r0", "r1"), ("s0", "s1")]), pf);
}

#[test]
fn one_by_w_cyclic_symmetry() {
    for w in 2..=3u32 {
        let pf = pf_1w(w, 6).unwrap();
        let reg = pf.registry().clone();
        let mut sub = Substitution::new(&reg, &reg);
        for i in 0..w {
            let to = format!("r{}", (i + 1) % w);
            sub = sub.map(&format!("r{i}"), 1, &[(to.as_str(), 1)]).unwrap();
        }
        assert_eq!(pf.substitute_monomials(&sub).unwrap(), pf);
    }
}

#[test]
fn theta_route_agrees() {
    let route = pf_22_theta(8).unwrap();
    assert!(route.ledger.is_trivial());
    assert_eq!(route.series.coeff_of(&[]).unwrap(), big(2));
    let cmp = pf_22(8).unwrap().compare(&route.series).unwrap();
    assert!(cmp.agrees(), "{:?}", cmp.first_discrepancy);
}

#[test]
fn cross_checks_pass() {
    for (shape, order) in [
        (BananaShape::two_by_two(), 8),
        (BananaShape::one_by(2).unwrap(), 8),
        (BananaShape::one_by(1).unwrap(), 10),
    ] {
        let report = cross_check(shape, order).unwrap();
        assert!(report.passed(), "{shape}: {:?}", report.comparison.first_discrepancy);
        assert!(report.comparison.terms_compared > 0);
    }
}

#[test]
fn gv_table_rows() {
    let t = gv_table(BananaShape::two_by_two(), 3).unwrap();
    assert_eq!(t.variables, ["r0", "r1", "s0", "s1"]);
    assert_eq!(t.entries[0].class.to_string(), "B0");
    assert_eq!(t.entries[0].value, big(2));
    assert_eq!(t.entries.len(), pf_22(3).unwrap().len());
    assert!(t.entries.iter().all(|e| e.class.is_effective() && !e.value.is_zero()));

    let t = gv_table(BananaShape::one_by(1).unwrap(), 4).unwrap();
    assert_eq!(t.entries[0].class.to_string(), "B");
    assert_eq!(t.entries[0].exponents, [0, 0]);
    assert_eq!(t.entries[0].value, big(1));
    // graded-lex: degrees never decrease
    let degs: Vec<i32> = t.entries.iter().map(|e| e.exponents.iter().sum()).collect();
    assert!(degs.windows(2).all(|w| w[0] <= w[1]));
}
