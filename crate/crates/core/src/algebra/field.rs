//! Exact coefficient fields.
//!
//! Two fields are provided: the rationals (arbitrary precision) and the field
//! of rational functions in a single parameter over the rationals. Both are
//! exact; every operation returns a canonical representative.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational numbers.
pub type Rational = BigRational;

/// Exact field of characteristic zero used as coefficient domain.
pub trait Field:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;

    /// Image of a rational number.
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// The transcendental parameter of the field, when the field has one.
    fn parameter() -> Option<Self> {
        None
    }

    /// Whether the element is a rational constant (no parameter dependence).
    fn as_rational(&self) -> Option<Rational>;

    /// Split into a sign and a magnitude used for printing `a - b` instead of `a + -b`.
    fn split_sign(&self) -> (bool, Self);

    /// Whether printing this value as a factor in a product needs parentheses.
    fn needs_parens(&self) -> bool;

    /// Human readable name of the field.
    fn describe() -> String;

    /// Text form with the parameter (if any) printed as `param`.
    fn render(&self, _param: &str) -> String {
        self.to_string()
    }
}

impl Field for Rational {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn split_sign(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }

    fn needs_parens(&self) -> bool {
        false
    }

    fn describe() -> String {
        "QQ".to_string()
    }
}

/// Dense univariate polynomial over the rationals, coefficients from degree 0 upward.
///
/// The representation never stores trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::default(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Primitive remainder sequence over the integers.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() || coprime_mod_prime(self, other) {
            return Self::constant(Rational::one());
        }
        let (mut a, mut b) = (primitive_integer(self), primitive_integer(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = pseudo_remainder(&a, &b);
            a = b;
            if r.is_empty() {
                return from_integer_coeffs(&a).monic();
            }
            b = primitive(r);
        }
        Self::constant(Rational::one())
    }

    fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_image(p: &UniPoly) -> Option<Vec<u64>> {
    let m = BigInt::from(PRIME);
    let mut out = Vec::with_capacity(p.coeffs.len());
    for c in &p.coeffs {
        let n = c.numer().mod_floor(&m);
        let d = c.denom().mod_floor(&m);
        let (n, d) = (u64::try_from(n).ok()?, u64::try_from(d).ok()?);
        if d == 0 {
            return None;
        }
        out.push(mul_mod(n, inv_mod(d)));
    }
    (*out.last()? != 0).then_some(out)
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Whether the images modulo a prime not dividing either leading coefficient
/// are coprime; then so are the polynomials.
fn coprime_mod_prime(a: &UniPoly, b: &UniPoly) -> bool {
    let (Some(mut x), Some(mut y)) = (mod_image(a), mod_image(b)) else {
        return false;
    };
    loop {
        while y.last() == Some(&0) {
            y.pop();
        }
        match y.len() {
            0 => return x.len() == 1,
            1 => return true,
            _ => {}
        }
        let inv = inv_mod(*y.last().unwrap());
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().unwrap(), inv);
            let shift = x.len() - y.len();
            for (j, v) in y.iter().enumerate() {
                let t = mul_mod(c, *v);
                x[shift + j] = (x[shift + j] + PRIME - t) % PRIME;
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
}

/// Integer coefficients of `p` scaled to a primitive polynomial.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let l = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(p.coeffs.iter().map(|c| (c * &l).to_integer()).collect())
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// `lc(b)^k a mod b` with trailing zeros removed.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn from_integer_coeffs(v: &[BigInt]) -> UniPoly {
    UniPoly::new(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Name used when printing rational-function coefficients.
pub const PARAMETER_NAME: &str = "t";

/// Element of the rational function field `Q(t)`.
///
/// Stored as `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lc = d.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Self { num: n, den: d }
    }

    /// `num / den` for coprime `num` and `den`; only normalises `den` to be monic.
    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading().expect("zero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::constant(Rational::one()),
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    /// Value at `t = at`, or `None` when `at` is a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self {
            num: UniPoly::default(),
            den: UniPoly::constant(Rational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(UniPoly::constant(Rational::one()))
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a> Add<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self;
        }
        if self.is_poly() && rhs.is_poly() {
            return Self::from_poly(self.num.add(&rhs.num));
        }
        if rhs.is_poly() {
            // gcd(a + b d, d) = gcd(a, d) = 1
            return Self::reduced(self.num.add(&rhs.num.mul(&self.den)), self.den);
        }
        if self.is_poly() {
            return Self::reduced(rhs.num.add(&self.num.mul(&rhs.den)), rhs.den.clone());
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den);
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            return Self::reduced(
                self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
                self.den.mul(&rhs.den),
            );
        }
        let (da, _) = self.den.div_rem(&g);
        let (db, _) = rhs.den.div_rem(&g);
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        let g2 = num.gcd(&g);
        let (num, _) = num.div_rem(&g2);
        let (gg, _) = g.div_rem(&g2);
        Self::reduced(num, da.mul(&db).mul(&gg))
    }
}

impl<'a> Sub<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self + &(-rhs.clone())
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a> Mul<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // cross cancellation keeps the result reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (na, _) = self.num.div_rem(&g1);
        let (db, _) = rhs.den.div_rem(&g1);
        let (nb, _) = rhs.num.div_rem(&g2);
        let (da, _) = self.den.div_rem(&g2);
        Self::reduced(na.mul(&nb), da.mul(&db))
    }
}

impl<'a> Div<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Self) -> Self {
        self * &rhs.inverse()
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Field for RationalFunction {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::reduced(self.den.clone(), self.num.clone())
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(q.clone()))
    }

    fn parameter() -> Option<Self> {
        Some(Self::from_poly(UniPoly::t()))
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeffs().first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    fn split_sign(&self) -> (bool, Self) {
        match self.num.leading() {
            Some(lc) if lc.is_negative() => (true, -self.clone()),
            _ => (false, self.clone()),
        }
    }

    fn needs_parens(&self) -> bool {
        // fractions already print fully parenthesised
        self.is_poly() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
    }

    fn describe() -> String {
        format!("QQ({PARAMETER_NAME})")
    }

    fn render(&self, param: &str) -> String {
        struct Shown<'a>(&'a RationalFunction, &'a str);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let Shown(r, var) = *self;
                if r.is_poly() {
                    r.num.fmt_with(var, f)
                } else {
                    write!(f, "(")?;
                    r.num.fmt_with(var, f)?;
                    write!(f, ")/(")?;
                    r.den.fmt_with(var, f)?;
                    write!(f, ")")
                }
            }
        }
        Shown(self, param).to_string()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(PARAMETER_NAME))
    }
}

/// Parses a decimal integer or `a/b` fraction.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
