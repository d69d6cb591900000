//! Sparse multivariate polynomials in canonical form.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rational};
use super::monomial::{cmp_canonical, Monomial, MAX_VARS};

/// Variable names of a polynomial ring, plus the name of the transcendental
/// parameter when coefficients are rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    param: Option<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            param: None,
        })
    }

    pub fn with_param<S: AsRef<str>>(vars: &[S], param: &str) -> Arc<Self> {
        let mut r = Self::new(vars).as_ref().clone();
        r.param = Some(param.to_string());
        Arc::new(r)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A ring with the extra variables appended after the existing ones.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<Self> {
        let mut r = self.clone();
        for e in extra {
            let mut name = e.as_ref().to_string();
            while r.vars.contains(&name) {
                name.push('_');
            }
            r.vars.push(name);
        }
        assert!(r.vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(r)
    }

    /// Same variables, parameter dropped or set.
    pub fn with_param_name(&self, param: Option<&str>) -> Arc<Self> {
        let mut r = self.clone();
        r.param = param.map(str::to_string);
        Arc::new(r)
    }

    /// Bitmask of all variables of the ring.
    pub fn mask(&self) -> u32 {
        (1u32 << self.vars.len()) - 1
    }
}

/// A polynomial with coefficients in `F`, stored as a list of terms sorted by
/// decreasing graded reverse lexicographic order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| cmp_canonical(&b.0, &a.0));
        Self { terms }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> F {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => F::zero(),
        }
    }

    /// Whether the polynomial vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c)).collect(),
        }
    }

    /// Multiplication by a monomial preserves the canonical order.
    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(i);
            if e == 0 {
                return None;
            }
            let mut exps = *m.exps();
            exps[i] -= 1;
            Some((Monomial::from_exps(&exps), c.clone() * &F::from_i64(e as i64)))
        }))
    }

    /// Replace variable `i` by `value`.
    pub fn substitute(&self, i: usize, value: &Self) -> Self {
        let mut powers: Vec<Self> = vec![Self::one()];
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.without_var(i);
            for (pm, pc) in powers[e].terms() {
                out.push((rest.mul(pm), c.clone() * pc));
            }
        }
        Self::from_terms(out)
    }

    /// Re-index variables: old variable `i` becomes variable `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())))
    }

    /// Apply a coefficient map into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Make the leading coefficient one (no-op for zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inverse()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = lc.inverse();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q = lm.quotient_of(m)?;
            let qc = c.clone() * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&q).scale(&qc);
            quot.push((q, qc));
        }
        Some(Self::from_terms(quot))
    }

    /// Evaluate at a point with coordinates in `F`.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = v * x;
                }
            }
            acc = acc + &v;
        }
        acc
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, ring }
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &F| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match cmp_canonical(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, take_b(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.clone() - &b[j].1
                    } else {
                        a[i].1.clone() + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, take_b(c))));
        Self { terms: out }
    }
}

impl Polynomial<Rational> {
    /// Polynomial with integer coefficients from `(exponents, coefficient)` pairs.
    pub fn from_int_terms(terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial::from_exps(e), Rational::from_integer((*c).into()))),
        )
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.add_impl(rhs, false)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.add_impl(rhs, true)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(m).scale(c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| cmp_canonical(&b.0, &a.0));
        Polynomial { terms }
    }
}

/// Formatter produced by [`Polynomial::display`].
pub struct PolyDisplay<'a, F> {
    poly: &'a Polynomial<F>,
    ring: &'a Ring,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let param = self.ring.param().unwrap_or(super::field::PARAMETER_NAME);
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let (neg, mag) = c.split_sign();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(m, self.ring);
            if mono.is_empty() {
                let s = mag.render(param);
                if mag.needs_parens() {
                    write!(f, "({s})")?;
                } else {
                    write!(f, "{s}")?;
                }
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.needs_parens() {
                write!(f, "({})*{mono}", mag.render(param))?;
            } else {
                write!(f, "{}*{mono}", mag.render(param))?;
            }
        }
        Ok(())
    }
}

/// `x^2*y` style rendering; empty string for the unit monomial.
pub fn format_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.vars().iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<Rational>;

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn arithmetic_basics() {
        let s = &x() + &y();
        let sq = &s * &s;
        let two_xy = &(&x() * &y()).scale(&Rational::from_integer(2.into())) + &P::zero();
        let rest = &(&sq - &(&x() * &x())) - &two_xy;
        assert_eq!(rest, &y() * &y());
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn derivative_and_substitute() {
        let f = &(&x() * &x()) * &y(); // x^2 y
        assert_eq!(
            f.derivative(0),
            (&x() * &y()).scale(&Rational::from_integer(2.into()))
        );
        let g = f.substitute(1, &(&x() + &P::one())); // x^2 (x + 1)
        assert_eq!(g, &(&(&x() * &x()) * &x()) + &(&x() * &x()));
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &x() - &y();
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!((&p + &P::one()).exact_div(&a), None);
    }

    #[test]
    fn display_form() {
        let ring = Ring::new(&["x", "y"]);
        let p = &(&x() * &x()) - &y().scale(&Rational::new(3.into(), 2.into()));
        assert_eq!(p.display(&ring).to_string(), "x^2 - 3/2*y");
        assert_eq!(P::zero().display(&ring).to_string(), "0");
        assert_eq!((-&P::one()).display(&ring).to_string(), "-1");
    }
}
