//! Multiplicity, polar multiplicities and the vanishing Euler characteristic.

pub mod genericity;
pub mod milnor;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::matrix::{jacobian, minors};
use crate::algebra::{Field, Polynomial};
use crate::basis::{
    current_task_timeout, with_task_timeout, EngineError, Ideal, Locality, QuotientDimension,
};
use crate::germ::{clean_generators, verify_ids, DeterminantalGerm, IdsCertificate};

pub use genericity::{DrawStream, GenericityContext, Purpose};
pub use milnor::{milnor_hypersurface, milnor_icis_le_greuel, milnor_monomial_curve};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("germ is not an isolated determinantal singularity ({0:?})")]
    NotIds(IdsCertificate),
    #[error("{invariant} is not stable under independent random draws (values {values:?})")]
    GenericityUnstable { invariant: String, values: Vec<u64> },
    #[error("polar variety for m_{i} does not have the expected dimension at the origin")]
    WrongPolarDimension { i: usize },
    #[error("critical scheme of the smoothing is not finite at the origin")]
    NonFiniteCriticalScheme,
    #[error("singularity is not isolated (infinite Milnor algebra)")]
    NonIsolated,
    #[error("exponents have common factor {gcd}")]
    NonCoprimeExponents { gcd: u64 },
    #[error("polar index {i} out of range 1..{d}")]
    InvalidPolarIndex { i: usize, d: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl InvariantError {
    /// Failures that a fresh random draw may avoid.
    fn is_draw_dependent(&self) -> bool {
        matches!(
            self,
            Self::WrongPolarDimension { .. } | Self::NonFiniteCriticalScheme
        )
    }
}

/// Which connectivity statement is available for the smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectivityClass {
    Curve,
    Hypersurface,
    #[serde(rename = "ICIS")]
    Icis,
    #[serde(rename = "GeneralIDS")]
    GeneralIds,
}

impl ConnectivityClass {
    /// Classes whose smoothings are known to be `(d - 1)`-connected.
    pub fn is_connectivity_known(self) -> bool {
        !matches!(self, Self::GeneralIds)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Curve => "Curve",
            Self::Hypersurface => "Hypersurface",
            Self::Icis => "ICIS",
            Self::GeneralIds => "GeneralIDS",
        }
    }
}

pub fn connectivity_class<F: Field>(germ: &DeterminantalGerm<F>) -> ConnectivityClass {
    if germ.dimension() == 1 {
        ConnectivityClass::Curve
    } else if germ.ambient_dimension() - germ.dimension() == 1 {
        ConnectivityClass::Hypersurface
    } else if germ.s() == 1 {
        ConnectivityClass::Icis
    } else {
        ConnectivityClass::GeneralIds
    }
}

/// Random draws behind one invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawRecord {
    pub invariant: String,
    pub purpose: Purpose,
    /// Stream indices of the agreeing draws.
    pub streams: Vec<u64>,
    /// Rounds needed before the draws agreed.
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dimension: usize,
    /// `m_0, ..., m_d`.
    pub m: Vec<u64>,
    pub nu: i64,
    pub chi_smoothing: i64,
    pub connectivity_class: ConnectivityClass,
    pub smoothing_connected: bool,
    /// Number of cells of each dimension in the CW structure of the smoothing.
    /// Equal to `m`, so left out of serialized reports.
    #[serde(skip)]
    pub cw_cell_profile: Vec<u64>,
    /// Serialized next to the report instead of inside it.
    #[serde(skip)]
    pub ids_certificate: IdsCertificate,
    pub genericity: GenericityContext,
    pub draws: Vec<DrawRecord>,
}

impl InvariantReport {
    /// The invariants alone, without provenance of the random draws.
    pub fn values(&self) -> (&[u64], i64, i64) {
        (&self.m, self.nu, self.chi_smoothing)
    }
}

/// `(-1)^d (sum_i (-1)^i m_i - 1)`.
pub fn nu_from_polar(m: &[u64]) -> i64 {
    let d = m.len() - 1;
    let alt: i64 = m
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum();
    sign(d) * (alt - 1)
}

pub(crate) fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Run `compute` on independent draws until `ctx.draws` of them agree.
pub fn stable_value(
    ctx: &GenericityContext,
    purpose: Purpose,
    name: &str,
    compute: impl Fn(DrawStream) -> Result<u64, InvariantError> + Sync,
) -> Result<(u64, DrawRecord), InvariantError> {
    let draws = ctx.draws.max(1);
    let mut seen = Vec::new();
    let mut last_err = None;
    let limit = current_task_timeout();
    for round in 0..ctx.retries.max(1) {
        let idx: Vec<u64> = (0..draws).map(|j| (round * draws + j) as u64).collect();
        let results: Vec<Result<u64, InvariantError>> = std::thread::scope(|sc| {
            let handles: Vec<_> = idx
                .iter()
                .map(|&k| {
                    let compute = &compute;
                    sc.spawn(move || with_task_timeout(limit, || compute(ctx.stream(purpose, k))))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("invariant task panicked"))
                .collect()
        });
        let mut values = Vec::with_capacity(draws);
        for r in results {
            match r {
                Ok(v) => values.push(v),
                Err(e) if e.is_draw_dependent() => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        seen.extend(values.iter().copied());
        if values.len() == draws && values.iter().all(|&v| v == values[0]) {
            return Ok((
                values[0],
                DrawRecord {
                    invariant: name.to_string(),
                    purpose,
                    streams: idx,
                    rounds: round + 1,
                },
            ));
        }
    }
    match last_err {
        Some(e) if seen.is_empty() => Err(e),
        _ => Err(InvariantError::GenericityUnstable {
            invariant: name.to_string(),
            values: seen,
        }),
    }
}

pub(crate) fn constant_rows<F: Field>(rows: &[Vec<crate::algebra::Rational>]) -> Vec<Vec<Polynomial<F>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|c| Polynomial::constant(F::from_rational(c)))
                .collect()
        })
        .collect()
}

/// Hilbert–Samuel multiplicity of the germ.
pub fn multiplicity_m0<F: Field>(germ: &DeterminantalGerm<F>) -> Result<u64, InvariantError> {
    Ok(germ.ideal().hilbert_samuel_multiplicity()?)
}

/// `m_i` for one projection matrix `l` (rows `d - i + 1`, columns `N`) and
/// section forms `h` (rows `d - i`, columns `N`).
///
/// The critical ideal `C` defines the polar variety `P` of dimension `d - i`,
/// plus possibly an embedded component at the origin. Cutting with
/// `h_2 .. h_{d-i}` leaves a curve of the same multiplicity; saturating by
/// `h_1` removes the origin and the multiplicity of what is left is the
/// length of its intersection with `h_1 = 0`.
///
/// For `s = 1` the critical ideal is generated by maximal minors over a
/// complete intersection, hence Cohen–Macaulay when it has the expected
/// dimension, and the saturation is skipped.
pub fn polar_multiplicity_for<F: Field>(
    germ: &DeterminantalGerm<F>,
    i: usize,
    l: &[Vec<crate::algebra::Rational>],
    h: &[Vec<crate::algebra::Rational>],
) -> Result<u64, InvariantError> {
    let n = germ.ambient_dimension();
    let vars: Vec<usize> = (0..n).collect();
    let mut rows = jacobian(germ.ideal().generators(), &vars);
    rows.extend(constant_rows::<F>(l));
    let forms: Vec<Polynomial<F>> = h.iter().map(|r| linear_form(r)).collect();
    let curve = Ideal::new(
        n,
        clean_generators(
            germ.ideal()
                .generators()
                .iter()
                .cloned()
                .chain(minors(&rows, n - i + 1))
                .chain(forms[1..].iter().cloned()),
        ),
    );
    let cut = if germ.s() == 1 {
        curve
    } else {
        // localisation commutes with saturation, and a generic `h_1` misses
        // every component away from the origin
        curve.saturate_by(&forms[0], Locality::Global)?
    };
    match cut
        .with_generators([forms[0].clone()])
        .local_quotient_dimension()?
    {
        QuotientDimension::Finite(k) => Ok(k),
        QuotientDimension::Infinite => Err(InvariantError::WrongPolarDimension { i }),
    }
}

pub(crate) fn linear_form<F: Field>(coeffs: &[crate::algebra::Rational]) -> Polynomial<F> {
    Polynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(v, c)| (crate::algebra::monomial::Monomial::var(v), F::from_rational(c))),
    )
}

/// Polar multiplicity `m_i`, `1 <= i <= d - 1`.
pub fn polar_multiplicity<F: Field>(
    germ: &DeterminantalGerm<F>,
    i: usize,
    ctx: &GenericityContext,
) -> Result<(u64, DrawRecord), InvariantError> {
    let (n, d) = (germ.ambient_dimension(), germ.dimension());
    if i == 0 || i >= d {
        return Err(InvariantError::InvalidPolarIndex { i, d });
    }
    stable_value(ctx, Purpose::Polar(i as u32), &format!("m_{i}"), |mut s| {
        let l = s.matrix(d - i + 1, n);
        let h = s.matrix(d - i, n);
        polar_multiplicity_for(germ, i, &l, &h)
    })
}

/// `m_d` for one smoothing direction `a0` (`m x n`) and linear form `p`.
///
/// For `s = 1` the critical scheme of `p` on the smoothing is a Cohen–Macaulay
/// curve in `(x, eps)`-space, so its `eps = 0` fibre is the polar scheme
/// `I + maximal minors of [Jac; p]` of the germ itself and `a0` plays no role.
pub fn top_polar_multiplicity_for<F: Field>(
    germ: &DeterminantalGerm<F>,
    a0: &[Vec<crate::algebra::Rational>],
    p: &[crate::algebra::Rational],
) -> Result<u64, InvariantError> {
    if germ.s() > 1 {
        return top_polar_via_smoothing(germ, a0, p);
    }
    let (n, d) = (germ.ambient_dimension(), germ.dimension());
    let vars: Vec<usize> = (0..n).collect();
    let mut rows = jacobian(germ.ideal().generators(), &vars);
    rows.extend(constant_rows::<F>(&[p.to_vec()]));
    let polar = Ideal::new(
        n,
        clean_generators(
            germ.ideal()
                .generators()
                .iter()
                .cloned()
                .chain(minors(&rows, n - d + 1)),
        ),
    );
    match polar.local_quotient_dimension()? {
        QuotientDimension::Finite(k) => Ok(k),
        QuotientDimension::Infinite => Err(InvariantError::NonFiniteCriticalScheme),
    }
}

/// `m_d` through the critical scheme of `p` on `f + eps a0`, saturated by `eps`.
pub fn top_polar_via_smoothing<F: Field>(
    germ: &DeterminantalGerm<F>,
    a0: &[Vec<crate::algebra::Rational>],
    p: &[crate::algebra::Rational],
) -> Result<u64, InvariantError> {
    let (n, d) = (germ.ambient_dimension(), germ.dimension());
    let eps = n;
    let ev = Polynomial::<F>::var(eps);
    let mat = germ.matrix();
    let perturbed: Vec<Vec<Polynomial<F>>> = (0..mat.rows())
        .map(|r| {
            (0..mat.cols())
                .map(|c| mat.get(r, c) + &ev.scale(&F::from_rational(&a0[r][c])))
                .collect()
        })
        .collect();
    let ie = clean_generators(minors(&perturbed, germ.s()));
    let vars: Vec<usize> = (0..n).collect();
    let mut rows = jacobian(&ie, &vars);
    let mut grad: Vec<Polynomial<F>> = p
        .iter()
        .map(|c| Polynomial::constant(F::from_rational(c)))
        .collect();
    grad.push(Polynomial::zero());
    for r in rows.iter_mut() {
        r.push(Polynomial::zero());
    }
    rows.push(grad);
    let crit = Ideal::new(
        n + 1,
        clean_generators(ie.iter().cloned().chain(minors(&rows, n - d + 1))),
    );
    let sat = crit.saturate_by(&ev, Locality::Local)?;
    let fibre = sat.with_generators([ev]);
    match fibre.local_quotient_dimension()? {
        QuotientDimension::Finite(k) => Ok(k),
        QuotientDimension::Infinite => Err(InvariantError::NonFiniteCriticalScheme),
    }
}

/// Top polar multiplicity `m_d`: critical points of a generic linear form on
/// the smoothing `f + eps A_0`, counted at the origin of `(x, eps)`-space.
pub fn top_polar_multiplicity<F: Field>(
    germ: &DeterminantalGerm<F>,
    ctx: &GenericityContext,
) -> Result<(u64, DrawRecord), InvariantError> {
    let n = germ.ambient_dimension();
    let d = germ.dimension();
    let (rows, cols) = (germ.matrix().rows(), germ.matrix().cols());
    stable_value(ctx, Purpose::TopPolar, &format!("m_{d}"), |mut s| {
        let a0 = s.matrix(rows, cols);
        let p = s.vector(n);
        top_polar_multiplicity_for(germ, &a0, &p)
    })
}

/// Certify the germ and compute `m_0..m_d`, `nu` and `chi` of the smoothing.
pub fn vanishing_euler<F: Field>(
    germ: &DeterminantalGerm<F>,
    ctx: &GenericityContext,
) -> Result<InvariantReport, InvariantError> {
    let cert = verify_ids(germ)?;
    vanishing_euler_certified(germ, cert, ctx)
}

/// As [`vanishing_euler`], for a germ whose certificate is already known.
pub fn vanishing_euler_certified<F: Field>(
    germ: &DeterminantalGerm<F>,
    cert: IdsCertificate,
    ctx: &GenericityContext,
) -> Result<InvariantReport, InvariantError> {
    if !cert.is_ids() {
        return Err(InvariantError::NotIds(cert));
    }
    let d = germ.dimension();
    let limit = current_task_timeout();
    type Slot = Result<(u64, Option<DrawRecord>), InvariantError>;
    let results: Vec<Slot> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..=d)
            .map(|i| {
                sc.spawn(move || {
                    with_task_timeout(limit, || -> Slot {
                        if i == 0 {
                            Ok((multiplicity_m0(germ)?, None))
                        } else if i < d {
                            polar_multiplicity(germ, i, ctx).map(|(v, r)| (v, Some(r)))
                        } else {
                            top_polar_multiplicity(germ, ctx).map(|(v, r)| (v, Some(r)))
                        }
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("invariant task panicked"))
            .collect()
    });
    let mut m = Vec::with_capacity(d + 1);
    let mut draws = Vec::new();
    for r in results {
        let (v, rec) = r?;
        m.push(v);
        draws.extend(rec);
    }
    let nu = nu_from_polar(&m);
    Ok(InvariantReport {
        dimension: d,
        nu,
        chi_smoothing: 1 + sign(d) * nu,
        connectivity_class: connectivity_class(germ),
        smoothing_connected: d >= 1,
        cw_cell_profile: m.clone(),
        m,
        ids_certificate: cert,
        genericity: *ctx,
        draws,
    })
}
