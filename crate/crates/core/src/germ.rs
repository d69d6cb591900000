//! Determinantal germs `X = f^{-1}(M^s)` and their isolatedness certificate.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::matrix::{jacobian, minors};
use crate::algebra::{Field, MatrixError, PolyMatrix, Polynomial, Ring};
use crate::basis::{EngineError, Ideal, QuotientDimension};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GermError {
    #[error("minor size s = {s} must satisfy 1 <= s <= {rows}")]
    InvalidMinorSize { s: usize, rows: usize },
    #[error("matrix entry ({row}, {col}) does not vanish at the origin")]
    EntryNotVanishing { row: usize, col: usize },
    #[error("expected dimension {value} is negative")]
    NegativeExpectedDimension { value: i64 },
    #[error("not determinantal: expected dimension {expected}, actual dimension {actual}")]
    NotDeterminantal { expected: i64, actual: i64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `N - (m - s + 1)(n - s + 1)`.
pub fn expected_dimension(n_ambient: usize, m: usize, n: usize, s: usize) -> Result<i64, GermError> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if s == 0 || s > m {
        return Err(GermError::InvalidMinorSize { s, rows: m });
    }
    Ok(n_ambient as i64 - ((m - s + 1) * (n - s + 1)) as i64)
}

/// Drop zeros and scalar duplicates, keeping first occurrences.
pub fn clean_generators<F: Field>(gens: impl IntoIterator<Item = Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut out: Vec<Polynomial<F>> = Vec::new();
    let mut seen: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let key = g.monic();
        if !seen.contains(&key) {
            seen.push(key);
            out.push(g);
        }
    }
    out
}

/// A determinantal germ of type `(m, n; s)` at the origin of `K^N`.
#[derive(Clone, Debug)]
pub struct DeterminantalGerm<F: Field> {
    ring: Arc<Ring>,
    matrix: PolyMatrix<F>,
    s: usize,
    d: usize,
    ideal: Ideal<F>,
}

impl<F: Field> DeterminantalGerm<F> {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Ambient dimension `N`.
    pub fn ambient_dimension(&self) -> usize {
        self.ring.nvars()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// The ideal of `s x s` minors.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// `s = 1`: the germ is cut out by the matrix entries.
    pub fn is_complete_intersection(&self) -> bool {
        self.s == 1
    }
}

/// Build the germ, checking that it has the expected dimension.
pub fn build_germ<F: Field>(
    ring: Arc<Ring>,
    matrix: PolyMatrix<F>,
    s: usize,
) -> Result<DeterminantalGerm<F>, GermError> {
    let (m, n) = (matrix.rows(), matrix.cols());
    if s == 0 || s > m {
        return Err(GermError::InvalidMinorSize { s, rows: m });
    }
    for i in 0..m {
        for j in 0..n {
            if !matrix.get(i, j).vanishes_at_origin() {
                let (row, col) = if matrix.was_transposed() { (j, i) } else { (i, j) };
                return Err(GermError::EntryNotVanishing { row, col });
            }
        }
    }
    let d = expected_dimension(ring.nvars(), m, n, s)?;
    if d < 0 {
        return Err(GermError::NegativeExpectedDimension { value: d });
    }
    let gens = clean_generators(matrix.minors_ideal_generators(s)?);
    let ideal = Ideal::new(ring.nvars(), gens);
    let actual = ideal.krull_dimension()?;
    if actual != d {
        return Err(GermError::NotDeterminantal { expected: d, actual });
    }
    Ok(DeterminantalGerm {
        ring,
        matrix,
        s,
        d: d as usize,
        ideal,
    })
}

/// `I + (N - d)`-minors of the Jacobian matrix of the generators of `I`.
pub fn singular_locus_ideal<F: Field>(germ: &DeterminantalGerm<F>) -> Ideal<F> {
    jacobian_locus(germ.ideal(), germ.ambient_dimension() - germ.dimension())
}

/// `I + c`-minors of the Jacobian of `I`'s generators in all variables.
pub(crate) fn jacobian_locus<F: Field>(ideal: &Ideal<F>, c: usize) -> Ideal<F> {
    let vars: Vec<usize> = (0..ideal.nvars()).collect();
    let jac = jacobian(ideal.generators(), &vars);
    let extra = if c == 0 {
        vec![Polynomial::one()]
    } else if c > ideal.generators().len() {
        Vec::new()
    } else {
        minors(&jac, c)
    };
    Ideal::new(
        ideal.nvars(),
        clean_generators(ideal.generators().iter().cloned().chain(extra)),
    )
}

/// Outcome of the isolated-determinantal-singularity test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdsCertificate {
    /// `s = 1` or `N < (m - s + 2)(n - s + 2)`.
    pub codim_bound_ok: bool,
    /// The matrix has rank `s - 1` away from the origin.
    pub rank_drop_isolated: bool,
    /// The germ is smooth away from the origin (Jacobian criterion).
    pub smooth_off_origin: bool,
    /// The Jacobian criterion treats the minors ideal as reduced without checking.
    pub reducedness_assumed: bool,
}

impl IdsCertificate {
    pub fn is_ids(&self) -> bool {
        self.codim_bound_ok && self.rank_drop_isolated && self.smooth_off_origin
    }
}

/// Whether `V(J)` is contained in the origin.
///
/// `dim O_0/J` finite and equal to `dim K[x]/J` means no other point of
/// `V(J)` carries any length.
pub fn vanishes_only_at_origin<F: Field>(j: &Ideal<F>) -> Result<bool, EngineError> {
    let local = j.local_quotient_dimension()?;
    let QuotientDimension::Finite(l) = local else {
        return Ok(false);
    };
    Ok(j.global_quotient_dimension()? == QuotientDimension::Finite(l))
}

pub fn verify_ids<F: Field>(germ: &DeterminantalGerm<F>) -> Result<IdsCertificate, EngineError> {
    let (m, n, s) = (germ.matrix.rows(), germ.matrix.cols(), germ.s);
    let codim_bound_ok = s == 1 || germ.ambient_dimension() < (m - s + 2) * (n - s + 2);
    let rank_drop_isolated = if s == 1 {
        true
    } else {
        let lower = clean_generators(
            germ.matrix
                .minors_ideal_generators(s - 1)
                .expect("s - 1 is a valid minor size"),
        );
        vanishes_only_at_origin(&Ideal::new(germ.ambient_dimension(), lower))?
    };
    let smooth_off_origin = vanishes_only_at_origin(&singular_locus_ideal(germ))?;
    Ok(IdsCertificate {
        codim_bound_ok,
        rank_drop_isolated,
        smooth_off_origin,
        reducedness_assumed: true,
    })
}
