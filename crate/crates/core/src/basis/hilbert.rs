//! Hilbert series of monomial quotients `K[x_1..x_n] / L`.
//!
//! The numerator `N(u)` of `HS(u) = N(u) / (1 - u)^n` is computed by
//! pivot splitting `N(L) = N(L + p) + u^deg(p) N(L : p)` with a pure-power
//! pivot `p`, until the generators are pairwise coprime.

use crate::algebra::monomial::Monomial;

/// Remove generators divisible by another generator; sort the rest.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|k| k.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(crate::algebra::monomial::cmp_canonical);
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn trim(mut a: Vec<i128>) -> Vec<i128> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

/// `1 - u^d`
fn one_minus_power(d: u32) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

/// Numerator of the Hilbert series of `K[x] / <gens>`; `[0]` for the unit ideal.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i128> {
    let gens = minimalize(gens.to_vec());
    trim(numerator_rec(gens))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // mixed generators (two or more variables) force a split
    let mixed: Vec<&Monomial> = gens.iter().filter(|g| g.support().count_ones() > 1).collect();
    if mixed.is_empty() {
        // pure powers of distinct variables are pairwise coprime
        return gens
            .iter()
            .fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_power(g.degree())));
    }
    // pairwise coprime generators also factor
    let mut coprime = true;
    'outer: for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.is_coprime(b) {
                coprime = false;
                break 'outer;
            }
        }
    }
    if coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_power(g.degree())));
    }
    // pivot variable: most frequent among mixed generators
    let mut counts = [0usize; crate::algebra::monomial::MAX_VARS];
    for g in &mixed {
        let s = g.support();
        for (v, c) in counts.iter_mut().enumerate() {
            if s >> v & 1 == 1 {
                *c += 1;
            }
        }
    }
    let var = (0..counts.len())
        .max_by_key(|&v| (counts[v], std::cmp::Reverse(v)))
        .unwrap();
    let mut exps: Vec<u16> = mixed.iter().map(|g| g.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let p = Monomial::var_pow(var, e);

    let mut with_p = gens.clone();
    with_p.push(p);
    let sum = minimalize(with_p);
    let quot = minimalize(
        gens.iter()
            .map(|g| g.gcd(&p).quotient_of(g).expect("gcd divides"))
            .collect(),
    );
    let mut out = numerator_rec(sum);
    let q = numerator_rec(quot);
    poly_add_shifted(&mut out, &q, e as usize);
    out
}

/// Dimension and degree read off a Hilbert numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Krull dimension; `-1` for the zero ring.
    pub dim: i64,
    /// Leading coefficient of the Hilbert polynomial times `dim!`.
    pub multiplicity: u64,
}

/// Dimension and multiplicity of `K[x_1..x_n] / <gens>`.
pub fn hilbert_data(gens: &[Monomial], nvars: usize) -> HilbertData {
    let mut num = hilbert_numerator(gens);
    if num.iter().all(|&c| c == 0) {
        return HilbertData {
            dim: -1,
            multiplicity: 0,
        };
    }
    // divide out (1 - u) while it divides
    let mut k = 0usize;
    while num.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - u): q_i = sum_{j<=i} a_j
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut acc = 0i128;
        for c in &num[..num.len() - 1] {
            acc += c;
            q.push(acc);
        }
        num = trim(q);
        k += 1;
    }
    let e: i128 = num.iter().sum();
    HilbertData {
        dim: nvars as i64 - k as i64,
        multiplicity: u64::try_from(e).expect("multiplicity is positive"),
    }
}

/// Number of monomials outside `<gens>`, or `None` if infinite.
pub fn standard_monomial_count(gens: &[Monomial], nvars: usize) -> Option<u64> {
    let h = hilbert_data(gens, nvars);
    match h.dim {
        -1 => Some(0),
        0 => Some(h.multiplicity),
        _ => None,
    }
}

/// Number and largest degree of the monomials outside `<gens>`, or `None`
/// if there are infinitely many.
pub fn staircase_extent(gens: &[Monomial], nvars: usize) -> Option<(u64, u32)> {
    for v in 0..nvars {
        if !gens.iter().any(|g| g.support() == 1 << v || g.is_one()) {
            return None;
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut stack = Vec::new();
    if !gens.iter().any(|g| g.is_one()) {
        seen.insert(Monomial::one());
        stack.push(Monomial::one());
    }
    let mut top = 0;
    while let Some(m) = stack.pop() {
        top = top.max(m.degree());
        for v in 0..nvars {
            let next = m.mul(&Monomial::var(v));
            if !seen.contains(&next) && !gens.iter().any(|g| g.divides(&next)) {
                seen.insert(next);
                stack.push(next);
            }
        }
    }
    Some((seen.len() as u64, top))
}

/// Maximal size of a variable subset containing no generator's support.
/// Equals the Krull dimension of `K[x] / <gens>`.
pub fn independent_set_dimension(gens: &[Monomial], nvars: usize) -> i64 {
    if gens.iter().any(|g| g.is_one()) {
        return -1;
    }
    let supports: Vec<u32> = gens.iter().map(|g| g.support()).collect();
    (0u32..(1 << nvars))
        .filter(|s| supports.iter().all(|g| g & !s != 0))
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn polynomial_ring() {
        assert_eq!(hilbert_numerator(&[]), vec![1]);
        let h = hilbert_data(&[], 3);
        assert_eq!(
            h,
            HilbertData {
                dim: 3,
                multiplicity: 1
            }
        );
    }

    #[test]
    fn unit_ideal_is_empty() {
        assert_eq!(hilbert_data(&[Monomial::one()], 2).dim, -1);
    }

    #[test]
    fn hypersurface_degree() {
        // x^2 y^3 in three variables: dimension 2, degree 5
        let h = hilbert_data(&[m(&[2, 3, 0])], 3);
        assert_eq!(
            h,
            HilbertData {
                dim: 2,
                multiplicity: 5
            }
        );
    }

    #[test]
    fn artinian_length() {
        // <x^2, xy, y^3>: standard monomials 1, x, y, y^2
        assert_eq!(
            standard_monomial_count(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2),
            Some(4)
        );
        assert_eq!(standard_monomial_count(&[m(&[1, 1])], 2), None);
    }

    #[test]
    fn square_of_maximal_ideal_in_two_of_four_variables() {
        // <y^2, yz, z^2> in x,y,z,w: dimension 2, degree 3
        let gens = [m(&[0, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 0])];
        assert_eq!(
            hilbert_data(&gens, 4),
            HilbertData {
                dim: 2,
                multiplicity: 3
            }
        );
    }

    proptest! {
        #[test]
        fn dimension_matches_independent_sets(
            raw in proptest::collection::vec(proptest::collection::vec(0u16..4, 4), 1..6)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| m(e)).collect();
            let h = hilbert_data(&gens, 4);
            prop_assert_eq!(h.dim, independent_set_dimension(&gens, 4));
        }

        #[test]
        fn artinian_count_matches_enumeration(
            raw in proptest::collection::vec(proptest::collection::vec(0u16..4, 3), 0..5)
        ) {
            // adding pure powers makes the quotient finite
            let mut gens: Vec<Monomial> = raw.iter().map(|e| m(e)).collect();
            gens.extend([m(&[4, 0, 0]), m(&[0, 4, 0]), m(&[0, 0, 4])]);
            let mut brute = 0u64;
            for a in 0..4u16 {
                for b in 0..4u16 {
                    for c in 0..4u16 {
                        let x = m(&[a, b, c]);
                        if !gens.iter().any(|g| g.divides(&x)) {
                            brute += 1;
                        }
                    }
                }
            }
            prop_assert_eq!(standard_monomial_count(&gens, 3), Some(brute));
        }
    }
}
