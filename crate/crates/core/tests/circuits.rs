use relcirc::affine::{zeros, AffineRelation};
use relcirc::analysis::{measure, one_port_relation, thevenin, Classification, TheveninForm};
use relcirc::diagram::build;
use relcirc::{
    denote, netlist_to_relation_direct, netlist_to_term, parse_netlist, parse_term, RatFunc, Term,
};

/// `E^l → E^r`: one potential, total current in equals total current out.
fn node(l: usize, r: usize) -> AffineRelation {
    let w = 2 * (l + r);
    let mut e = Vec::new();
    for k in 1..l + r {
        let mut row = zeros(w);
        row[0] = RatFunc::one();
        row[2 * k] = RatFunc::from_int(-1);
        e.push(row);
    }
    let mut kcl = zeros(w);
    for k in 0..l + r {
        kcl[2 * k + 1] = RatFunc::from_int(if k < l { 1 } else { -1 });
    }
    e.push(kcl);
    let f = vec![RatFunc::zero(); e.len()];
    AffineRelation::from_constraints(&e, &f, 2 * l, 2 * r).unwrap()
}

#[test]
fn spiders_of_any_shape_are_nodes() {
    for l in 0..5 {
        for r in 0..5 {
            if l + r == 0 {
                continue;
            }
            assert_eq!(
                denote(&build::spider(l, r)).unwrap(),
                node(l, r),
                "{l} -> {r}"
            );
        }
    }
    // A differently bracketed three-way merge.
    let other = parse_term("(id:e | cojunc) ; cojunc").unwrap();
    assert_eq!(denote(&other).unwrap(), node(3, 1));
}

#[test]
fn voltage_divider() {
    let nl = parse_netlist("V s 1 0 12\nR a 1 2 1\nR b 2 0 2\nVM v 2 0\n").unwrap();
    let m = measure(&netlist_to_term(&nl)).unwrap();
    assert_eq!(
        m.classification,
        Classification::UniquePoint(vec![RatFunc::from_int(8)])
    );
    assert_eq!(
        denote(&netlist_to_term(&nl)).unwrap(),
        netlist_to_relation_direct(&nl)
    );
}

#[test]
fn rc_one_port_has_frequency_dependent_impedance() {
    let nl = parse_netlist("PORT p 1 0\nR r 1 2 2\nC c 2 0 1/2\n").unwrap();
    let z = one_port_relation(&netlist_to_term(&nl)).unwrap();
    // v = (2 + 2/x)·i
    let k: RatFunc = "2 + 2/x".parse().unwrap();
    assert_eq!(z, denote(&Term::scalar(k)).unwrap());
    assert!(thevenin(&netlist_to_term(&nl)).is_err());
}

#[test]
fn norton_network_is_series_vr() {
    let nl = parse_netlist("PORT p 1 0\nI s 1 0 2\nR r 1 0 3\nR q 1 0 6\n").unwrap();
    let t = netlist_to_term(&nl);
    match thevenin(&t).unwrap() {
        TheveninForm::SeriesVR { r, .. } => assert_eq!(r, RatFunc::from_int(2)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn controlled_feedback_loop_agrees_with_oracle() {
    // A voltage amplifier whose output feeds back into its own input.
    let src = "V s 1 0 1\nR a 1 2 1\nVM m 2 0\nCV g 3 0 m 10\nR f 3 2 5\nAM o 3 4\nR l 4 0 1\n";
    let nl = parse_netlist(src).unwrap();
    let term = netlist_to_term(&nl);
    assert_eq!(denote(&term).unwrap(), netlist_to_relation_direct(&nl));
    assert!(matches!(
        measure(&term).unwrap().classification,
        Classification::UniquePoint(_)
    ));
}
