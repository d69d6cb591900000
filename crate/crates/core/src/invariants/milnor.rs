//! Milnor numbers used as independent cross-checks.

use num_integer::Integer;

use crate::algebra::matrix::{jacobian, minors};
use crate::algebra::{Field, Polynomial};
use crate::basis::{Ideal, QuotientDimension};

use super::InvariantError;

fn finite_length<F: Field>(ideal: &Ideal<F>) -> Result<u64, InvariantError> {
    match ideal.local_quotient_dimension()? {
        QuotientDimension::Finite(n) => Ok(n),
        QuotientDimension::Infinite => Err(InvariantError::NonIsolated),
    }
}

/// `dim O_0 / <dg/dx_1, ..., dg/dx_N>`.
pub fn milnor_hypersurface<F: Field>(g: &Polynomial<F>, nvars: usize) -> Result<u64, InvariantError> {
    let vars: Vec<usize> = (0..nvars).collect();
    let partials = vars.iter().map(|&v| g.derivative(v));
    finite_length(&Ideal::new(nvars, partials))
}

/// Milnor number of the complete intersection `g_1 = ... = g_c = 0` by the
/// Lê–Greuel recursion
/// `mu(g_1..g_c) + mu(g_1..g_{c-1}) = dim O / (<g_1..g_{c-1}> + maximal minors of D(g_1..g_c))`.
pub fn milnor_icis_le_greuel<F: Field>(gens: &[Polynomial<F>], nvars: usize) -> Result<u64, InvariantError> {
    let vars: Vec<usize> = (0..nvars).collect();
    let mut prev: i64 = 0;
    for c in 1..=gens.len() {
        let jac = jacobian(&gens[..c], &vars);
        let ideal = Ideal::new(nvars, gens[..c - 1].iter().cloned().chain(minors(&jac, c)));
        let len = finite_length(&ideal)? as i64;
        prev = len - prev;
    }
    u64::try_from(prev).map_err(|_| InvariantError::NonIsolated)
}

/// Milnor number `2 delta` of the monomial curve `t -> (t^a_1, ..., t^a_k)`,
/// with `delta` the number of gaps of the semigroup `<a_1, ..., a_k>`.
pub fn milnor_monomial_curve(exponents: &[u64]) -> Result<u64, InvariantError> {
    let g = exponents.iter().fold(0u64, |g, &a| g.gcd(&a));
    if g != 1 {
        return Err(InvariantError::NonCoprimeExponents { gcd: g });
    }
    let min = *exponents.iter().min().expect("nonempty");
    // once `min` consecutive integers are reached, everything after is reached
    let mut reach = vec![true];
    let mut run = 1u64;
    let mut n = 0usize;
    while run < min {
        n += 1;
        let hit = exponents
            .iter()
            .any(|&a| a as usize <= n && reach[n - a as usize]);
        reach.push(hit);
        run = if hit { run + 1 } else { 0 };
    }
    let gaps = reach.iter().filter(|&&r| !r).count() as u64;
    Ok(2 * gaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rational, Ring};

    fn polys(vars: &[&str], s: &[&str]) -> Vec<Polynomial<Rational>> {
        let r = Ring::new(vars);
        s.iter().map(|e| parse_polynomial(e, &r).unwrap()).collect()
    }

    #[test]
    fn hypersurface_values() {
        let v = ["x", "y", "z"];
        let g = polys(&v, &["x^2 + y^2 + z^2", "x^3 + y^2 + z^2"]);
        assert_eq!(milnor_hypersurface(&g[0], 3).unwrap(), 1);
        assert_eq!(milnor_hypersurface(&g[1], 3).unwrap(), 2);
        for k in 1..8u32 {
            let a = polys(&["x", "y"], &[&format!("x^{} + y^2", k + 1)]);
            assert_eq!(milnor_hypersurface(&a[0], 2).unwrap(), k as u64);
        }
        let bad = polys(&v, &["x^2"]);
        assert!(matches!(
            milnor_hypersurface(&bad[0], 3),
            Err(InvariantError::NonIsolated)
        ));
    }

    #[test]
    fn le_greuel_pairs() {
        let v = ["x", "y", "z"];
        assert_eq!(
            milnor_icis_le_greuel(&polys(&v, &["x^2 + y^2 + z^2", "x"]), 3).unwrap(),
            1
        );
        assert_eq!(
            milnor_icis_le_greuel(&polys(&v, &["x^2 + y^3 + z^2", "z"]), 3).unwrap(),
            2
        );
        let single = polys(&v, &["x^3 + y^2 + z^2"]);
        assert_eq!(
            milnor_icis_le_greuel(&single, 3).unwrap(),
            milnor_hypersurface(&single[0], 3).unwrap()
        );
    }

    #[test]
    fn semigroup_gaps() {
        assert_eq!(milnor_monomial_curve(&[3, 4, 5]).unwrap(), 4);
        assert_eq!(milnor_monomial_curve(&[1]).unwrap(), 0);
        assert_eq!(milnor_monomial_curve(&[1, 7]).unwrap(), 0);
        assert_eq!(milnor_monomial_curve(&[2, 3]).unwrap(), 2);
        assert_eq!(milnor_monomial_curve(&[3, 5]).unwrap(), 8);
        assert!(milnor_monomial_curve(&[2, 4]).is_err());
        let cusp = polys(&["x", "y"], &["y^2 - x^3"]);
        assert_eq!(milnor_hypersurface(&cusp[0], 2).unwrap(), 2);
    }
}
