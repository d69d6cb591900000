//! Fixtures shared by the benchmarks.

use idsing::algebra::{parse_polynomial, PolyMatrix, Polynomial, Rational, Ring};
use idsing::basis::Ideal;
use idsing::family::DeterminantalFamily;
use idsing::germ::{build_germ, DeterminantalGerm};

pub fn ideal(vars: &[&str], gens: &[&str]) -> Ideal<Rational> {
    let ring = Ring::new(vars);
    let gens: Vec<Polynomial<Rational>> = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
    Ideal::new(vars.len(), gens)
}

pub fn germ(vars: &[&str], rows: &[&[&str]], s: usize) -> DeterminantalGerm<Rational> {
    let ring = Ring::new(vars);
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_polynomial(e, &ring).unwrap()).collect())
        .collect();
    build_germ(ring.clone(), PolyMatrix::new(rows).unwrap(), s).unwrap()
}

pub fn family(vars: &[&str], rows: &[&[&str]], s: usize) -> DeterminantalFamily {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect();
    DeterminantalFamily::parse(vars, "t", &rows, s).unwrap()
}

pub fn surface() -> DeterminantalGerm<Rational> {
    germ(&["x", "y", "z", "w"], &[&["x", "y", "z"], &["y", "z", "w"]], 2)
}

pub fn space_curve() -> DeterminantalGerm<Rational> {
    germ(&["x", "y", "z"], &[&["x", "y", "z"], &["y", "z", "x^2"]], 2)
}

pub fn briancon_speder_member() -> DeterminantalGerm<Rational> {
    germ(&["x", "y", "z"], &[&["z^5 + y^6*z + y^7*x + x^15"]], 1)
}

pub fn coordinate_change() -> DeterminantalFamily {
    family(
        &["x", "y", "z", "w"],
        &[&["x", "y", "z"], &["y", "z", "w + t*x"]],
        2,
    )
}
