//! Ideals of a polynomial ring and their localisations at the origin.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::monomial::{Monomial, MAX_VARS};
use crate::algebra::{Field, Polynomial, Ring};

use super::engine::{leading_monomial, local_standard_basis_mod_power, normal_form, standard_basis};
use super::hilbert::{hilbert_data, staircase_extent, HilbertData};
use super::order::MonomialOrder;
use super::EngineError;

/// Where an operation is carried out: in `K[x]` or in the local ring at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Locality {
    Global,
    Local,
}

impl Locality {
    fn base(self) -> MonomialOrder {
        match self {
            Self::Global => MonomialOrder::GlobalDegRevLex,
            Self::Local => MonomialOrder::LocalNegDegRevLex,
        }
    }
}

/// Length of a quotient ring as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Self::Finite(n) => Some(n),
            Self::Infinite => None,
        }
    }
}

/// Truncation degrees tried before a full local standard basis computation.
const LOCAL_PROBE_DEGREES: [u32; 4] = [12, 24, 48, 96];

/// Upper bound on the steps of an iterated saturation.
pub const SATURATION_STEP_LIMIT: usize = 64;

/// An ideal given by generators, with cached standard bases.
pub struct Ideal<F: Field> {
    nvars: usize,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial<F>>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Self {
            nvars: self.nvars,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("nvars", &self.nvars)
            .field("gens", &self.gens)
            .finish()
    }
}

impl<F: Field> Ideal<F> {
    /// The ideal generated by `gens` in a ring with `nvars` variables.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Polynomial<F>>) -> Self {
        assert!(nvars <= MAX_VARS);
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(gens.iter().all(|g| g.support() >> nvars == 0));
        Self {
            nvars,
            gens,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, [])
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, [Polynomial::one()])
    }

    /// The maximal ideal of the origin.
    pub fn maximal(nvars: usize) -> Self {
        Self::new(nvars, (0..nvars).map(Polynomial::var))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.display(ring).to_string()).collect();
        format!("<{}>", parts.join(", "))
    }

    /// Standard basis for `ord`, computed once.
    pub fn standard_basis(&self, ord: &MonomialOrder) -> Result<Arc<Vec<Polynomial<F>>>, EngineError> {
        if let Some(b) = self.cache.lock().unwrap().get(ord) {
            return Ok(b.clone());
        }
        let b = Arc::new(standard_basis(&self.gens, ord, self.nvars)?);
        self.cache.lock().unwrap().insert(ord.clone(), b.clone());
        Ok(b)
    }

    /// Reduced Gröbner basis for degree reverse lexicographic order.
    pub fn groebner_basis(&self) -> Result<Arc<Vec<Polynomial<F>>>, EngineError> {
        self.standard_basis(&MonomialOrder::GlobalDegRevLex)
    }

    /// Minimal standard basis for the local degree ordering.
    pub fn local_standard_basis(&self) -> Result<Arc<Vec<Polynomial<F>>>, EngineError> {
        self.standard_basis(&MonomialOrder::LocalNegDegRevLex)
    }

    fn leading_monomials(&self, ord: &MonomialOrder) -> Result<Vec<Monomial>, EngineError> {
        Ok(self
            .standard_basis(ord)?
            .iter()
            .filter_map(|p| leading_monomial(p, ord))
            .collect())
    }

    pub fn is_unit(&self) -> Result<bool, EngineError> {
        Ok(self
            .groebner_basis()?
            .iter()
            .any(|p| p.is_constant() && !p.is_zero()))
    }

    /// Whether the ideal generates the unit ideal of the local ring at the origin.
    pub fn is_locally_unit(&self) -> bool {
        self.gens.iter().any(|g| !g.vanishes_at_origin())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, EngineError> {
        let gb = self.groebner_basis()?;
        Ok(normal_form(f, &gb, &MonomialOrder::GlobalDegRevLex))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, EngineError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool, EngineError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals in `K[x]`.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool, EngineError> {
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    /// Hilbert data of `K[x]/I` (affine dimension and degree).
    pub fn global_hilbert(&self) -> Result<HilbertData, EngineError> {
        let lms = self.leading_monomials(&MonomialOrder::GlobalDegRevLex)?;
        Ok(hilbert_data(&lms, self.nvars))
    }

    /// Krull dimension of `K[x]/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64, EngineError> {
        Ok(self.global_hilbert()?.dim)
    }

    /// Hilbert–Samuel data of the local ring `O_0 / I`: its dimension and
    /// multiplicity. The zero ring has dimension `-1`.
    pub fn local_hilbert(&self) -> Result<HilbertData, EngineError> {
        if self.is_locally_unit() {
            return Ok(HilbertData {
                dim: -1,
                multiplicity: 0,
            });
        }
        let lms = self.leading_monomials(&MonomialOrder::LocalNegDegRevLex)?;
        Ok(hilbert_data(&lms, self.nvars))
    }

    pub fn local_dimension(&self) -> Result<i64, EngineError> {
        Ok(self.local_hilbert()?.dim)
    }

    /// Hilbert–Samuel multiplicity of `O_0 / I`; `0` if the germ is empty.
    pub fn hilbert_samuel_multiplicity(&self) -> Result<u64, EngineError> {
        Ok(self.local_hilbert()?.multiplicity)
    }

    /// `dim_K O_0 / I`.
    ///
    /// Standard bases of `I + m^k` are tried first for growing `k`: if their
    /// leading ideal contains every monomial of some degree `j < k`, then
    /// `m^j` lies in `I` and the truncated basis is a standard basis of `I`.
    pub fn local_quotient_dimension(&self) -> Result<QuotientDimension, EngineError> {
        let ord = MonomialOrder::LocalNegDegRevLex;
        let cached = self.cache.lock().unwrap().contains_key(&ord);
        if !cached && !self.is_locally_unit() {
            for k in LOCAL_PROBE_DEGREES {
                let sb = local_standard_basis_mod_power(&self.gens, self.nvars, k)?;
                let lms: Vec<Monomial> = sb.iter().filter_map(|p| leading_monomial(p, &ord)).collect();
                if let Some((count, top)) = staircase_extent(&lms, self.nvars) {
                    if top + 2 <= k {
                        self.cache.lock().unwrap().insert(ord, Arc::new(sb));
                        return Ok(QuotientDimension::Finite(count));
                    }
                }
            }
        }
        let h = self.local_hilbert()?;
        Ok(match h.dim {
            -1 => QuotientDimension::Finite(0),
            0 => QuotientDimension::Finite(h.multiplicity),
            _ => QuotientDimension::Infinite,
        })
    }

    /// `dim_K K[x] / I`.
    pub fn global_quotient_dimension(&self) -> Result<QuotientDimension, EngineError> {
        let h = self.global_hilbert()?;
        Ok(match h.dim {
            -1 => QuotientDimension::Finite(0),
            0 => QuotientDimension::Finite(h.multiplicity),
            _ => QuotientDimension::Infinite,
        })
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        assert_eq!(self.nvars, other.nvars);
        Ideal::new(self.nvars, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Ideal<F> {
        Ideal::new(self.nvars, self.gens.iter().cloned().chain(extra))
    }

    /// Intersection with the subring in the variables outside `mask`. In the
    /// local case the eliminated variables stay global, so the result is the
    /// contraction to the local ring in the remaining variables.
    pub fn eliminate(&self, mask: u32, loc: Locality) -> Result<Ideal<F>, EngineError> {
        let ord = MonomialOrder::eliminating(mask, loc.base());
        let sb = self.standard_basis(&ord)?;
        Ok(Ideal::new(
            self.nvars,
            sb.iter().filter(|p| p.support() & mask == 0).cloned(),
        ))
    }

    fn fresh_variable(&self) -> Result<usize, EngineError> {
        if self.nvars >= MAX_VARS {
            return Err(EngineError::TooManyVariables {
                needed: self.nvars + 1,
            });
        }
        Ok(self.nvars)
    }

    fn drop_last_variable(&self, ideal: Ideal<F>) -> Ideal<F> {
        Ideal::new(self.nvars, ideal.gens)
    }

    /// `I ∩ J`, via elimination of `v` from `v I + (1 - v) J`.
    pub fn intersect(&self, other: &Ideal<F>, loc: Locality) -> Result<Ideal<F>, EngineError> {
        assert_eq!(self.nvars, other.nvars);
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(self.nvars));
        }
        let v = self.fresh_variable()?;
        let pv = Polynomial::var(v);
        let qv = &Polynomial::one() - &pv;
        let gens = self
            .gens
            .iter()
            .map(|g| g * &pv)
            .chain(other.gens.iter().map(|g| g * &qv));
        let big = Ideal::new(self.nvars + 1, gens);
        let e = big.eliminate(1 << v, loc)?;
        Ok(self.drop_last_variable(e))
    }

    /// `I : g`.
    pub fn quotient_by(&self, g: &Polynomial<F>, loc: Locality) -> Result<Ideal<F>, EngineError> {
        if g.is_zero() {
            return Ok(Ideal::unit(self.nvars));
        }
        let inter = self.intersect(&Ideal::new(self.nvars, [g.clone()]), loc)?;
        let gens = inter
            .gens
            .iter()
            .map(|h| h.exact_div(g).expect("elements of <g> are divisible by g"));
        Ok(Ideal::new(self.nvars, gens))
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal<F>, loc: Locality) -> Result<Ideal<F>, EngineError> {
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient_by(g, loc)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, loc)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.nvars)))
    }

    /// `I : J^∞` by iterated quotients until the ideal stops growing.
    pub fn saturation(&self, other: &Ideal<F>) -> Result<Ideal<F>, EngineError> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_STEP_LIMIT {
            let next = cur.quotient(other, Locality::Global)?;
            if cur.contains_ideal(&next)? {
                return Ok(next);
            }
            cur = next;
        }
        Err(EngineError::SaturationDidNotStabilise {
            steps: SATURATION_STEP_LIMIT,
        })
    }

    /// `I : g^∞` via `(I + <1 - v g>) ∩ K[x]`.
    pub fn saturate_by(&self, g: &Polynomial<F>, loc: Locality) -> Result<Ideal<F>, EngineError> {
        if g.is_zero() {
            return Ok(Ideal::unit(self.nvars));
        }
        let v = self.fresh_variable()?;
        let rab = &Polynomial::one() - &(g * &Polynomial::var(v));
        let big = Ideal::new(self.nvars + 1, self.gens.iter().cloned().chain([rab]));
        let e = big.eliminate(1 << v, loc)?;
        Ok(self.drop_last_variable(e))
    }

    /// `I : J^∞` as the intersection of the saturations by each generator.
    pub fn saturate_by_ideal(&self, other: &Ideal<F>, loc: Locality) -> Result<Ideal<F>, EngineError> {
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let s = self.saturate_by(g, loc)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, loc)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rational};

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal<Rational> {
        let r = Ring::new(vars);
        Ideal::new(vars.len(), gens.iter().map(|g| parse_polynomial(g, &r).unwrap()))
    }

    #[test]
    fn saturation_of_xy_by_x() {
        let i = ideal(&["x", "y"], &["x*y"]);
        let j = ideal(&["x", "y"], &["x"]);
        let s = i.saturation(&j).unwrap();
        assert!(s.equals(&ideal(&["x", "y"], &["y"])).unwrap());
        let r = i.saturate_by_ideal(&j, Locality::Global).unwrap();
        assert!(r.equals(&s).unwrap());
    }

    #[test]
    fn quotient_example() {
        let i = ideal(&["x", "y"], &["x^2", "x*y"]);
        let j = ideal(&["x", "y"], &["x"]);
        let q = i.quotient(&j, Locality::Global).unwrap();
        assert!(q.equals(&ideal(&["x", "y"], &["x", "y"])).unwrap());
    }

    #[test]
    fn elimination_to_unit() {
        let i = ideal(&["x", "u"], &["u*x - 1", "x^2"]);
        let e = i.eliminate(0b10, Locality::Global).unwrap();
        assert!(e.is_unit().unwrap());
    }

    #[test]
    fn twisted_cubic_cone() {
        let i = ideal(&["x", "y", "z", "w"], &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
        assert_eq!(i.krull_dimension().unwrap(), 2);
        assert_eq!(i.hilbert_samuel_multiplicity().unwrap(), 3);
        assert_eq!(i.local_dimension().unwrap(), 2);
    }

    #[test]
    fn cusp_multiplicity() {
        let i = ideal(&["x", "y"], &["y^2 - x^3"]);
        assert_eq!(i.hilbert_samuel_multiplicity().unwrap(), 2);
    }

    #[test]
    fn local_versus_global_length() {
        // y - x^2 - y^2 has a second zero away from the origin
        let i = ideal(&["x", "y"], &["x^2 - y + y^2", "x*y"]);
        let local = i.local_quotient_dimension().unwrap();
        let global = i.global_quotient_dimension().unwrap();
        assert_eq!(local, QuotientDimension::Finite(3));
        assert_eq!(global, QuotientDimension::Finite(4));
    }

    #[test]
    fn local_saturation_ignores_far_components() {
        // x*(x - 1) : x^∞ is the unit ideal locally, <x - 1> globally
        let i = ideal(&["x", "y"], &["x^2 - x"]);
        let x = Polynomial::var(0);
        let g = i.saturate_by(&x, Locality::Global).unwrap();
        assert!(g.equals(&ideal(&["x", "y"], &["x - 1"])).unwrap());
        let l = i.saturate_by(&x, Locality::Local).unwrap();
        assert!(l.is_locally_unit());
    }

    #[test]
    fn local_intersection() {
        let i = ideal(&["x", "y"], &["x"]);
        let j = ideal(&["x", "y"], &["y"]);
        let k = i.intersect(&j, Locality::Local).unwrap();
        assert_eq!(k.hilbert_samuel_multiplicity().unwrap(), 2);
        assert_eq!(k.local_dimension().unwrap(), 1);
    }
}
