//! One-parameter determinantal deformations `F(x, t)` and their verdicts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::matrix::{jacobian, minors};
use crate::algebra::{
    parse_polynomial, ParseError, PolyMatrix, Polynomial, Rational, RationalFunction, Ring, UniPoly,
};
use crate::basis::{
    current_task_timeout, with_task_timeout, EngineError, Ideal, Locality, QuotientDimension,
};
use crate::germ::{build_germ, clean_generators, verify_ids, DeterminantalGerm, GermError, IdsCertificate};
use crate::invariants::{
    connectivity_class, linear_form, sign, stable_value, top_polar_multiplicity_for,
    vanishing_euler_certified, ConnectivityClass, DrawRecord, GenericityContext, InvariantError,
    InvariantReport, Purpose,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("entry ({row}, {col}) does not lie in the ideal of the space variables")]
    NotOriginPreserving { row: usize, col: usize },
    #[error("family needs a parameter")]
    MissingParameter,
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("member {member}: {source}")]
    Member { member: String, source: GermError },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// How members other than `t = 0` are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalysisMode {
    /// Coefficients in `Q(t)`.
    #[default]
    Generic,
    /// Rational parameter values only.
    Sampled,
}

impl AnalysisMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Generic => "generic",
            Self::Sampled => "sampled",
        }
    }
}

pub fn default_samples() -> Vec<Rational> {
    [2, 3, 5]
        .iter()
        .map(|&d| Rational::new(1.into(), d.into()))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyOptions {
    pub mode: AnalysisMode,
    pub samples: Vec<Rational>,
    pub ctx: GenericityContext,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        Self {
            mode: AnalysisMode::Generic,
            samples: default_samples(),
            ctx: GenericityContext::default(),
        }
    }
}

/// `F(x, t)`, stored in the ring of the space variables followed by `t`.
#[derive(Clone, Debug)]
pub struct DeterminantalFamily {
    ring: Arc<Ring>,
    rows: Vec<Vec<Polynomial<Rational>>>,
    s: usize,
    d: usize,
}

/// Parameter value of a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParameterValue {
    Value(Rational),
    Generic,
}

impl DeterminantalFamily {
    /// Parse the entries over `vars` and `param`.
    pub fn parse<S: AsRef<str>>(
        vars: &[S],
        param: &str,
        rows: &[Vec<String>],
        s: usize,
    ) -> Result<Self, FamilyError> {
        let mut all: Vec<&str> = vars.iter().map(AsRef::as_ref).collect();
        all.push(param);
        let total = Ring::new(&all);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_polynomial(e, &total)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Self::new(Ring::with_param(vars, param), parsed, s)
    }

    /// `ring` holds the space variables and the parameter name; entries use
    /// variable index `ring.nvars()` for the parameter.
    pub fn new(ring: Arc<Ring>, rows: Vec<Vec<Polynomial<Rational>>>, s: usize) -> Result<Self, FamilyError> {
        if ring.param().is_none() {
            return Err(FamilyError::MissingParameter);
        }
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(FamilyError::Ragged);
        }
        let space = ring.mask();
        for (i, r) in rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                if e.terms().iter().any(|(m, _)| m.degree_in(space) == 0) {
                    return Err(FamilyError::NotOriginPreserving { row: i, col: j });
                }
            }
        }
        let mut fam = Self { ring, rows, s, d: 0 };
        let special = fam.at(&Rational::from_integer(0.into()))?;
        fam.d = special.dimension();
        Ok(fam)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn param(&self) -> &str {
        self.ring.param().expect("families carry a parameter")
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ring.nvars()
    }

    /// Dimension of the members.
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<Polynomial<Rational>>] {
        &self.rows
    }

    fn label(&self, v: &ParameterValue) -> String {
        match v {
            ParameterValue::Value(q) => format!("{}={}", self.param(), q),
            ParameterValue::Generic => "generic".to_string(),
        }
    }

    /// Member at a rational parameter value.
    pub fn at(&self, value: &Rational) -> Result<DeterminantalGerm<Rational>, GermError> {
        let n = self.ambient_dimension();
        let c = Polynomial::constant(value.clone());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.substitute(n, &c)).collect())
            .collect();
        build_germ(Ring::new(self.ring.vars()), PolyMatrix::new(rows)?, self.s)
    }

    /// Member over `Q(t)`.
    pub fn generic(&self) -> Result<DeterminantalGerm<RationalFunction>, GermError> {
        let n = self.ambient_dimension();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| to_generic(e, n)).collect())
            .collect();
        build_germ(self.ring.clone(), PolyMatrix::new(rows)?, self.s)
    }

    /// `I_s(F)` in the ring of `(x, t)`.
    pub fn total_space_ideal(&self) -> Ideal<Rational> {
        let m = PolyMatrix::new(self.rows.clone()).expect("rows checked at construction");
        let gens = m
            .minors_ideal_generators(self.s)
            .expect("minor size checked at construction");
        Ideal::new(self.ambient_dimension() + 1, clean_generators(gens))
    }
}

/// Move the parameter variable `n` into the coefficients.
fn to_generic(p: &Polynomial<Rational>, n: usize) -> Polynomial<RationalFunction> {
    Polynomial::from_terms(p.terms().iter().map(|(m, c)| {
        let e = m.exp(n) as usize;
        let mut coeffs = vec![Rational::from_integer(0.into()); e + 1];
        coeffs[e] = c.clone();
        (
            m.without_var(n),
            RationalFunction::from_poly(UniPoly::new(coeffs)),
        )
    }))
}

/// Certificate and invariants of one member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    pub label: String,
    pub certificate: IdsCertificate,
    pub invariants: Option<InvariantReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockingHypothesis {
    #[serde(rename = "d=2")]
    DimensionTwo,
    #[serde(rename = "connectivity")]
    Connectivity,
}

impl BlockingHypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Self::DimensionTwo => "d=2",
            Self::Connectivity => "connectivity",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologicalVerdict {
    ConstantTopType,
    HypothesisUnverified(BlockingHypothesis),
    NotConcluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WhitneyVerdict {
    WhitneyEquisingular,
    NotWhitney,
    NotConcluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConservationStatus {
    Holds,
    Fails,
    Inconclusive,
}

/// `m_d(X_0) = m_d(X_t)` when `p` has no critical points on `X_t^0` near 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConservationRecord {
    pub lhs: u64,
    pub rhs: u64,
    pub status: ConservationStatus,
    pub diagnostics: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semicontinuity {
    Holds,
    Violated,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub mode: AnalysisMode,
    pub dimension: usize,
    pub connectivity_class: ConnectivityClass,
    /// `t = 0` first, then the generic member or the samples.
    pub members: Vec<MemberReport>,
    pub good: bool,
    pub nu_constant: bool,
    pub mi_constant: bool,
    pub topological_verdict: TopologicalVerdict,
    pub whitney_verdict: WhitneyVerdict,
    /// Multiplicity of the relative polar curve; absent for families that are not good.
    pub relative_md: Option<u64>,
    pub relative_md_draws: Option<DrawRecord>,
    /// `chi(X_t)` for good families.
    pub chi_fiber: Option<i64>,
    pub conservation: Option<ConservationRecord>,
    pub semicontinuity: Semicontinuity,
}

enum Member {
    Special(DeterminantalGerm<Rational>),
    Generic(DeterminantalGerm<RationalFunction>),
}

fn analyse_member(
    label: String,
    member: &Member,
    ctx: &GenericityContext,
    want_invariants: bool,
) -> Result<MemberReport, FamilyError> {
    let cert = match member {
        Member::Special(g) => verify_ids(g)?,
        Member::Generic(g) => verify_ids(g)?,
    };
    let invariants = if want_invariants && cert.is_ids() {
        Some(match member {
            Member::Special(g) => vanishing_euler_certified(g, cert, ctx)?,
            Member::Generic(g) => vanishing_euler_certified(g, cert, ctx)?,
        })
    } else {
        None
    };
    Ok(MemberReport {
        label,
        certificate: cert,
        invariants,
    })
}

/// Members analysed by [`invariant_table`]: `t = 0`, then generic or samples.
fn member_values(opts: &FamilyOptions) -> Vec<ParameterValue> {
    let mut out = vec![ParameterValue::Value(Rational::from_integer(0.into()))];
    match opts.mode {
        AnalysisMode::Generic => out.push(ParameterValue::Generic),
        AnalysisMode::Sampled => out.extend(opts.samples.iter().cloned().map(ParameterValue::Value)),
    }
    out
}

fn build_member(fam: &DeterminantalFamily, v: &ParameterValue) -> Result<Member, FamilyError> {
    let wrap = |source| FamilyError::Member {
        member: fam.label(v),
        source,
    };
    Ok(match v {
        ParameterValue::Value(q) => Member::Special(fam.at(q).map_err(wrap)?),
        ParameterValue::Generic => Member::Generic(fam.generic().map_err(wrap)?),
    })
}

/// Certificates (and, when requested, invariants) of the given members, in parallel.
fn analyse_members(
    fam: &DeterminantalFamily,
    values: &[ParameterValue],
    ctx: &GenericityContext,
    want_invariants: bool,
) -> Result<Vec<MemberReport>, FamilyError> {
    let limit = current_task_timeout();
    let results: Vec<Result<MemberReport, FamilyError>> = std::thread::scope(|sc| {
        let handles: Vec<_> = values
            .iter()
            .map(|v| {
                sc.spawn(move || {
                    with_task_timeout(limit, || {
                        let m = build_member(fam, v)?;
                        analyse_member(fam.label(v), &m, ctx, want_invariants)
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("member task panicked"))
            .collect()
    });
    results.into_iter().collect()
}

/// Every member singular only at the origin: `t = 0`, the samples and,
/// in generic mode, the generic member.
pub fn goodness_check(fam: &DeterminantalFamily, opts: &FamilyOptions) -> Result<bool, FamilyError> {
    let mut values = member_values(&FamilyOptions {
        mode: AnalysisMode::Sampled,
        ..opts.clone()
    });
    if opts.mode == AnalysisMode::Generic {
        values.push(ParameterValue::Generic);
    }
    let reports = analyse_members(fam, &values, &opts.ctx, false)?;
    Ok(reports.iter().all(|r| r.certificate.smooth_off_origin))
}

/// Relative polar curve of `(p, t)` on the total space for one draw.
///
/// `h` (space variables only) removes the parameter axis, and the
/// hyperplane `h2 = 0` (all variables) cuts the remaining curve. For `s = 1`
/// the cut is the graph `t = h2[..N] . x`.
pub fn relative_top_polar_for(
    fam: &DeterminantalFamily,
    p: &[Rational],
    h: &[Rational],
    h2: &[Rational],
) -> Result<u64, InvariantError> {
    let n = fam.ambient_dimension();
    let d = fam.dimension();
    let total = fam.total_space_ideal();
    let vars: Vec<usize> = (0..=n).collect();
    let mut rows = jacobian(total.generators(), &vars);
    let zero = || Polynomial::<Rational>::zero();
    let mut dp: Vec<Polynomial<Rational>> = p.iter().map(|c| Polynomial::constant(c.clone())).collect();
    dp.push(zero());
    let mut dt: Vec<Polynomial<Rational>> = (0..n).map(|_| zero()).collect();
    dt.push(Polynomial::one());
    rows.push(dp);
    rows.push(dt);
    let crit = total.with_generators(clean_generators(minors(&rows, n - d + 2)));
    if fam.s() == 1 {
        // `crit` is a Cohen–Macaulay curve: the polar curve plus the parameter
        // axis, which carries the length of the generic member's polar scheme
        // cut with the hyperplane `t = h2 . x`
        let tx: Polynomial<Rational> = linear_form(&h2[..n]);
        let cut = Ideal::new(
            n,
            clean_generators(crit.generators().iter().map(|g| g.substitute(n, &tx))),
        );
        let whole = match cut.local_quotient_dimension()? {
            QuotientDimension::Finite(k) => k,
            QuotientDimension::Infinite => return Err(InvariantError::NonFiniteCriticalScheme),
        };
        let generic = fam
            .generic()
            .map_err(|_| InvariantError::NonFiniteCriticalScheme)?;
        let axis = top_polar_multiplicity_for(&generic, &[], p)?;
        return whole
            .checked_sub(axis)
            .ok_or(InvariantError::NonFiniteCriticalScheme);
    }
    let mut hx = h.to_vec();
    hx.push(Rational::from_integer(0.into()));
    let sat = crit.saturate_by(&linear_form(&hx), Locality::Global)?;
    match sat
        .with_generators([linear_form(h2)])
        .local_quotient_dimension()?
    {
        QuotientDimension::Finite(k) => Ok(k),
        QuotientDimension::Infinite => Err(InvariantError::NonFiniteCriticalScheme),
    }
}

/// Multiplicity at the origin of the closure of the critical set of `(p, t)`
/// on the total space minus the parameter axis.
pub fn relative_top_polar(
    fam: &DeterminantalFamily,
    ctx: &GenericityContext,
) -> Result<(u64, DrawRecord), InvariantError> {
    let n = fam.ambient_dimension();
    stable_value(ctx, Purpose::RelativePolar, "relative m_d", |mut s| {
        let p = s.vector(n);
        let h = s.vector(n);
        let h2 = s.vector(n + 1);
        relative_top_polar_for(fam, &p, &h, &h2)
    })
}

pub fn topological_verdict(
    good: bool,
    nu_constant: bool,
    d: usize,
    class: ConnectivityClass,
) -> TopologicalVerdict {
    if !good || !nu_constant {
        TopologicalVerdict::NotConcluded
    } else if d == 2 {
        TopologicalVerdict::HypothesisUnverified(BlockingHypothesis::DimensionTwo)
    } else if !class.is_connectivity_known() {
        TopologicalVerdict::HypothesisUnverified(BlockingHypothesis::Connectivity)
    } else {
        TopologicalVerdict::ConstantTopType
    }
}

/// `m_d` constancy makes an ICIS family good, so `s = 1` may skip the goodness test.
pub fn whitney_verdict(good: bool, s: usize, md_constant: bool, mi_constant: bool) -> WhitneyVerdict {
    if !(good || (s == 1 && md_constant)) {
        WhitneyVerdict::NotConcluded
    } else if mi_constant {
        WhitneyVerdict::WhitneyEquisingular
    } else {
        WhitneyVerdict::NotWhitney
    }
}

/// `chi(X_t) = 1 + (-1)^d (nu(X_0) - nu(X_t))` for a good family.
pub fn chi_fiber(d: usize, nu0: i64, nut: i64) -> i64 {
    1 + sign(d) * (nu0 - nut)
}

pub fn conservation_check(md0: u64, mdt: u64, relative_md: u64) -> ConservationRecord {
    if relative_md > 0 {
        return ConservationRecord {
            lhs: md0,
            rhs: mdt,
            status: ConservationStatus::Inconclusive,
            diagnostics: Some(format!(
                "critical points of p on the smooth part of X_t approach the origin \
                 (relative polar multiplicity {relative_md})"
            )),
        };
    }
    ConservationRecord {
        lhs: md0,
        rhs: mdt,
        status: if md0 == mdt {
            ConservationStatus::Holds
        } else {
            ConservationStatus::Fails
        },
        diagnostics: None,
    }
}

/// `nu(X_t) <= nu(X_0)` for every analysed member of a surface family.
pub fn semicontinuity_check(d: usize, members: &[MemberReport]) -> Semicontinuity {
    if d != 2 {
        return Semicontinuity::NotApplicable(format!("members have dimension {d}, not 2"));
    }
    let nus: Option<Vec<i64>> = members
        .iter()
        .map(|m| m.invariants.as_ref().map(|r| r.nu))
        .collect();
    match nus {
        None => Semicontinuity::NotApplicable("a member is not an IDS".to_string()),
        Some(v) if v[1..].iter().all(|&nu| nu <= v[0]) => Semicontinuity::Holds,
        Some(_) => Semicontinuity::Violated,
    }
}

/// Member invariants, goodness and both verdicts.
pub fn analyze_family(fam: &DeterminantalFamily, opts: &FamilyOptions) -> Result<FamilyReport, FamilyError> {
    let good = goodness_check(fam, opts)?;
    let values = member_values(opts);
    let members = analyse_members(fam, &values, &opts.ctx, true)?;
    let d = fam.dimension();
    let class = {
        let special = fam.at(&Rational::from_integer(0.into()))?;
        connectivity_class(&special)
    };
    let reports: Option<Vec<&InvariantReport>> = members.iter().map(|m| m.invariants.as_ref()).collect();
    let (nu_constant, mi_constant, md_constant) = match &reports {
        Some(r) => (
            r.iter().all(|x| x.nu == r[0].nu),
            r.iter().all(|x| x.m == r[0].m),
            r.iter().all(|x| x.m[d] == r[0].m[d]),
        ),
        None => (false, false, false),
    };
    let (relative_md, relative_md_draws) = if good {
        let (v, rec) = relative_top_polar(fam, &opts.ctx)?;
        (Some(v), Some(rec))
    } else {
        (None, None)
    };
    let chi = match (&reports, good) {
        (Some(r), true) => Some(chi_fiber(d, r[0].nu, r[1].nu)),
        _ => None,
    };
    let conservation = match (&reports, relative_md) {
        (Some(r), Some(rel)) => Some(conservation_check(r[0].m[d], r[1].m[d], rel)),
        _ => None,
    };
    Ok(FamilyReport {
        mode: opts.mode,
        dimension: d,
        connectivity_class: class,
        topological_verdict: topological_verdict(good, nu_constant, d, class),
        whitney_verdict: if reports.is_some() {
            whitney_verdict(good, fam.s(), md_constant, mi_constant)
        } else {
            WhitneyVerdict::NotConcluded
        },
        semicontinuity: semicontinuity_check(d, &members),
        members,
        good,
        nu_constant,
        mi_constant,
        relative_md,
        relative_md_draws,
        chi_fiber: chi,
        conservation,
    })
}
