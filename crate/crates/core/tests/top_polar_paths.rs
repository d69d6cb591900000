use idsing::algebra::{parse_polynomial, PolyMatrix, Rational, Ring};
use idsing::germ::build_germ;
use idsing::invariants::{top_polar_multiplicity_for, top_polar_via_smoothing};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn both_paths(vars: &[&str], gens: &[&str]) -> (u64, u64) {
    let ring = Ring::new(vars);
    let row = gens
        .iter()
        .map(|e| parse_polynomial::<Rational>(e, &ring).unwrap())
        .collect();
    let g = build_germ(ring.clone(), PolyMatrix::new(vec![row]).unwrap(), 1).unwrap();
    let a0 = vec![(0..gens.len()).map(|j| q(2 * j as i64 + 3, 5)).collect()];
    let p: Vec<Rational> = [q(1, 1), q(-3, 7), q(5, 2), q(7, 11)][..vars.len()].to_vec();
    (
        top_polar_multiplicity_for(&g, &a0, &p).unwrap(),
        top_polar_via_smoothing(&g, &a0, &p).unwrap(),
    )
}

#[test]
fn smoothing_path_agrees_on_hypersurfaces() {
    for (vars, f, md) in [
        (&["x", "y", "z"][..], "x^2 + y^2 + z^2", 2),
        (&["x", "y", "z"][..], "x^3 + y^2 + z^2", 3),
        (&["x", "y"][..], "x^4 + y^2", 4),
        (&["x", "y"][..], "x^3 + y^4", 8),
    ] {
        assert_eq!(both_paths(vars, &[f]), (md, md), "{f}");
    }
}

#[test]
fn smoothing_path_agrees_on_complete_intersection() {
    assert_eq!(
        both_paths(&["x", "y", "z"], &["z - x*y", "x^3 + y^2 + z^2"]),
        (3, 3)
    );
}
