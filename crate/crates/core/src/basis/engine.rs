//! Standard basis computation.
//!
//! One pair-driven loop serves every ordering. For global orderings the normal
//! form is ordinary top reduction and the result is interreduced into the
//! reduced Gröbner basis. For local and mixed orderings the normal form is
//! Mora's ecart-driven reduction, which may enlarge the reducer set with
//! intermediate remainders; the result is a minimal standard basis of the
//! ideal in the localisation determined by the ordering.
//!
//! Pair bookkeeping uses the Gebauer–Möller update (product and chain
//! criteria) and the sugar selection strategy.

use std::time::{Duration, Instant};

use crate::algebra::monomial::Monomial;
use crate::algebra::{Field, Polynomial};

use super::order::MonomialOrder;
use super::EngineError;

/// Per-computation time budget.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub fn new(limit: Option<Duration>) -> Self {
        Self {
            start: Instant::now(),
            limit,
        }
    }

    #[inline]
    pub fn check(&self) -> Result<(), EngineError> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(EngineError::Timeout {
                seconds: l.as_secs_f64(),
            }),
            _ => Ok(()),
        }
    }
}

thread_local! {
    static TASK_LIMIT: std::cell::Cell<Option<Duration>> = const { std::cell::Cell::new(None) };
}

/// Run `f` with a time limit applied to every basis computation it starts on
/// this thread. Nested calls override and then restore the outer limit.
pub fn with_task_timeout<R>(limit: Option<Duration>, f: impl FnOnce() -> R) -> R {
    let prev = TASK_LIMIT.with(|c| c.replace(limit));
    struct Restore(Option<Duration>);
    impl Drop for Restore {
        fn drop(&mut self) {
            TASK_LIMIT.with(|c| c.set(self.0));
        }
    }
    let _guard = Restore(prev);
    f()
}

/// The limit installed by [`with_task_timeout`] on this thread.
pub fn current_task_timeout() -> Option<Duration> {
    TASK_LIMIT.with(|c| c.get())
}

type Terms<F> = Vec<(Monomial, F)>;

/// Polynomial sorted by a working ordering, with its sugar degree.
#[derive(Clone, Debug)]
struct WPoly<F> {
    terms: Terms<F>,
    sugar: u32,
}

impl<F: Field> WPoly<F> {
    fn new(p: &Polynomial<F>, ord: &MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        Self { terms, sugar }
    }

    #[inline]
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn ecart(&self) -> u32 {
        self.max_degree() - self.lm().degree()
    }

    fn make_monic(&mut self) {
        let lc = &self.terms[0].1;
        if !lc.is_one() {
            let inv = lc.inverse();
            for (_, c) in self.terms.iter_mut() {
                *c = c.clone() * &inv;
            }
        }
    }

    fn to_poly(&self) -> Polynomial<F> {
        Polynomial::from_terms(self.terms.iter().cloned())
    }
}

/// Drop the terms of degree `>= k`; under a local degree ordering they form a suffix.
fn truncate<F>(h: &mut WPoly<F>, k: u32) {
    if let Some(p) = h.terms.iter().position(|(m, _)| m.degree() >= k) {
        h.terms.truncate(p);
    }
}

/// `head ++ (tail - c * m * g_tail)`, merged in order. `g_tail` excludes the
/// leading term of the reducer, which cancels the term that was removed.
fn sub_multiple<F: Field>(
    tail: &[(Monomial, F)],
    c: &F,
    m: &Monomial,
    g_tail: &[(Monomial, F)],
    ord: &MonomialOrder,
    out: &mut Terms<F>,
) {
    let (mut i, mut j) = (0, 0);
    while i < tail.len() && j < g_tail.len() {
        let gm = m.mul(&g_tail[j].0);
        match ord.cmp(&tail[i].0, &gm) {
            std::cmp::Ordering::Greater => {
                out.push(tail[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((gm, -(c.clone() * &g_tail[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = tail[i].1.clone() - &(c.clone() * &g_tail[j].1);
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&tail[i..]);
    for (gm, gc) in &g_tail[j..] {
        out.push((m.mul(gm), -(c.clone() * gc)));
    }
}

/// Cancel the term at `pos` of `h` using reducer `g` (whose leading monomial divides it).
fn reduce_at<F: Field>(h: &mut WPoly<F>, pos: usize, g: &WPoly<F>, ord: &MonomialOrder) {
    let (hm, hc) = &h.terms[pos];
    let m = g.lm().quotient_of(hm).expect("reducer must divide");
    let c = hc.clone() / &g.terms[0].1;
    let mut out = Vec::with_capacity(h.terms.len() + g.terms.len());
    out.extend_from_slice(&h.terms[..pos]);
    sub_multiple(&h.terms[pos + 1..], &c, &m, &g.terms[1..], ord, &mut out);
    h.sugar = h.sugar.max(g.sugar + m.degree());
    h.terms = out;
}

fn spoly<F: Field>(f: &WPoly<F>, g: &WPoly<F>, ord: &MonomialOrder) -> WPoly<F> {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).unwrap();
    let mg = g.lm().quotient_of(&l).unwrap();
    // f and g are monic
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let shifted: Terms<F> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&mf), c.clone()))
        .collect();
    sub_multiple(&shifted, &F::one(), &mg, &g.terms[1..], ord, &mut out);
    WPoly {
        terms: out,
        sugar: (f.sugar + mf.degree()).max(g.sugar + mg.degree()),
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'a, F> {
    ord: &'a MonomialOrder,
    global: bool,
    basis: Vec<WPoly<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    deadline: Deadline,
    nvars: usize,
    corner: Option<u32>,
}

impl<F: Field> Engine<'_, F> {
    /// Top-reduce (global) or Mora-reduce (otherwise) until the leading term is irreducible.
    fn normal_form(&self, mut h: WPoly<F>) -> Result<WPoly<F>, EngineError> {
        if self.global {
            while !h.is_zero() {
                let lm = *h.lm();
                // shortest reducer keeps intermediate expressions small
                let best = self
                    .basis
                    .iter()
                    .filter(|g| g.lm().divides(&lm))
                    .min_by_key(|g| g.terms.len());
                match best {
                    Some(g) => reduce_at(&mut h, 0, g, self.ord),
                    None => break,
                }
            }
            return Ok(h);
        }
        if let Some(k) = self.corner {
            // modulo m^k plain reduction terminates and stays a standard representation
            truncate(&mut h, k);
            while !h.is_zero() {
                let lm = *h.lm();
                let best = self
                    .basis
                    .iter()
                    .filter(|g| g.lm().divides(&lm))
                    .min_by_key(|g| g.terms.len());
                match best {
                    Some(g) => reduce_at(&mut h, 0, g, self.ord),
                    None => break,
                }
                truncate(&mut h, k);
            }
            return Ok(h);
        }
        let mut extra: Vec<WPoly<F>> = Vec::new();
        let mut steps = 0usize;
        while !h.is_zero() {
            steps += 1;
            if steps.is_multiple_of(64) {
                self.deadline.check()?;
            }
            let lm = *h.lm();
            let mut best: Option<(u32, bool, usize)> = None;
            for (k, g) in self.basis.iter().enumerate() {
                if g.lm().divides(&lm) {
                    let e = g.ecart();
                    if best.is_none_or(|b| e < b.0) {
                        best = Some((e, false, k));
                        if e == 0 {
                            break;
                        }
                    }
                }
            }
            if best.is_none_or(|b| b.0 > 0) {
                for (k, g) in extra.iter().enumerate() {
                    if g.lm().divides(&lm) {
                        let e = g.ecart();
                        if best.is_none_or(|b| e < b.0) {
                            best = Some((e, true, k));
                        }
                    }
                }
            }
            let Some((e, from_extra, k)) = best else {
                break;
            };
            if e > h.ecart() {
                extra.push(h.clone());
            }
            let g = if from_extra { &extra[k] } else { &self.basis[k] };
            let g = g.clone();
            reduce_at(&mut h, 0, &g, self.ord);
        }
        Ok(h)
    }

    /// Once the leading monomials contain a power of every variable, the
    /// ideal contains `m^k` for `k` one more than the largest degree of a
    /// standard monomial (local degree orderings only).
    fn update_corner(&mut self) {
        if !self.ord.is_local() || self.nvars == 0 {
            return;
        }
        let lms: Vec<Monomial> = self.basis.iter().map(|g| *g.lm()).collect();
        for v in 0..self.nvars {
            if !lms.iter().any(|m| m.support() == 1 << v) {
                return;
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![Monomial::one()];
        seen.insert(Monomial::one());
        let mut top = 0u32;
        while let Some(m) = stack.pop() {
            top = top.max(m.degree());
            for v in 0..self.nvars {
                let next = m.mul(&Monomial::var(v));
                if !seen.contains(&next) && !lms.iter().any(|l| l.divides(&next)) {
                    seen.insert(next);
                    stack.push(next);
                }
            }
        }
        let k = top + 1;
        if self.corner.is_some_and(|c| c <= k) {
            return;
        }
        self.corner = Some(k);
        for g in self.basis.iter_mut() {
            let lead = g.terms[0].clone();
            truncate(g, k);
            if g.is_zero() {
                g.terms.push(lead);
            }
        }
    }

    /// Monomials of degree `k` outside the current leading ideal.
    fn corner_monomials(&self, k: u32) -> Vec<Monomial> {
        let mut level = vec![Monomial::one()];
        for _ in 0..k {
            let mut next = std::collections::HashSet::new();
            for m in &level {
                for v in 0..self.nvars {
                    next.insert(m.mul(&Monomial::var(v)));
                }
            }
            level = next.into_iter().collect();
        }
        let mut out: Vec<Monomial> = level
            .into_iter()
            .filter(|m| !self.basis.iter().any(|g| g.lm().divides(m)))
            .collect();
        out.sort_by(|a, b| self.ord.cmp(a, b));
        out
    }

    /// Reduce every term (global orderings only).
    fn full_reduce(&self, mut h: WPoly<F>, skip: usize) -> WPoly<F> {
        let mut pos = 0;
        while pos < h.terms.len() {
            let m = h.terms[pos].0;
            let red = self
                .basis
                .iter()
                .enumerate()
                .filter(|(k, g)| *k != skip && g.lm().divides(&m))
                .min_by_key(|(_, g)| g.terms.len());
            match red {
                Some((_, g)) => reduce_at(&mut h, pos, g, self.ord),
                None => pos += 1,
            }
        }
        h
    }

    fn insert(&mut self, h: WPoly<F>) {
        let hn = self.basis.len();
        let hlm = *h.lm();
        let hsugar = h.sugar;
        // Gebauer–Möller: candidate pairs with h
        let mut cands: Vec<(Pair, bool)> = Vec::new();
        for (k, g) in self.basis.iter().enumerate() {
            if !self.active[k] {
                continue;
            }
            let glm = g.lm();
            let lcm = glm.lcm(&hlm);
            let sugar = (g.sugar + glm.quotient_of(&lcm).unwrap().degree())
                .max(hsugar + hlm.quotient_of(&lcm).unwrap().degree());
            cands.push((
                Pair {
                    i: k,
                    j: hn,
                    lcm,
                    sugar,
                },
                glm.is_coprime(&hlm),
            ));
        }
        // criterion M: drop pairs whose lcm is properly divisible by another new lcm
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in &cands {
            let dominated = cands.iter().any(|(q, _)| q.lcm != p.lcm && q.lcm.divides(&p.lcm));
            if !dominated {
                kept.push((p.clone(), *coprime));
            }
        }
        // criterion F: one pair per lcm, none at all if the class has a coprime pair
        let mut chosen: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in kept {
            match chosen.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
                Some(slot) => slot.1 |= coprime,
                None => chosen.push((p, coprime)),
            }
        }
        let kept = chosen;
        // old pairs made redundant by h
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = self.basis[p.i].lm().lcm(&hlm);
            let lj = self.basis[p.j].lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs
            .extend(kept.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));
        for k in 0..self.basis.len() {
            if self.active[k] && hlm.divides(self.basis[k].lm()) {
                self.active[k] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then(p.lcm.degree().cmp(&q.lcm.degree()))
                .then_with(|| ord.cmp(&p.lcm, &q.lcm))
        })?;
        Some(self.pairs.swap_remove(idx))
    }
}

/// Standard basis of the ideal generated by `gens` for ordering `ord`.
///
/// Global orderings return the reduced Gröbner basis (monic, sorted by
/// increasing leading monomial). Other orderings return a minimal standard
/// basis sorted the same way. The unit ideal is returned as `[1]`.
pub fn standard_basis<F: Field>(
    gens: &[Polynomial<F>],
    ord: &MonomialOrder,
    nvars: usize,
) -> Result<Vec<Polynomial<F>>, EngineError> {
    compute(gens, ord, nvars, None)
}

/// Standard basis of `<gens> + m^k` for the local degree ordering, computed
/// modulo `m^k` throughout.
pub fn local_standard_basis_mod_power<F: Field>(
    gens: &[Polynomial<F>],
    nvars: usize,
    k: u32,
) -> Result<Vec<Polynomial<F>>, EngineError> {
    compute(gens, &MonomialOrder::LocalNegDegRevLex, nvars, Some(k))
}

fn compute<F: Field>(
    gens: &[Polynomial<F>],
    ord: &MonomialOrder,
    nvars: usize,
    corner: Option<u32>,
) -> Result<Vec<Polynomial<F>>, EngineError> {
    let mut eng = Engine {
        ord,
        global: ord.is_global(),
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        deadline: Deadline::new(current_task_timeout()),
        nvars,
        corner,
    };
    let mut inputs: Vec<WPoly<F>> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| WPoly::new(p, ord))
        .collect();
    if let Some(k) = corner {
        for p in inputs.iter_mut() {
            truncate(p, k);
        }
        inputs.retain(|p| !p.is_zero());
    }
    inputs.sort_by(|a, b| a.sugar.cmp(&b.sugar).then_with(|| ord.cmp(a.lm(), b.lm())));
    let unit = || Ok(vec![Polynomial::one()]);
    for f in inputs {
        eng.deadline.check()?;
        let mut h = eng.normal_form(f)?;
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return unit();
        }
        h.make_monic();
        eng.insert(h);
        eng.update_corner();
    }
    while let Some(pair) = eng.pop_pair() {
        eng.deadline.check()?;
        let s = spoly(&eng.basis[pair.i], &eng.basis[pair.j], ord);
        let mut h = eng.normal_form(s)?;
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return unit();
        }
        h.make_monic();
        eng.insert(h);
        eng.update_corner();
    }
    if let Some(k) = eng.corner {
        for m in eng.corner_monomials(k) {
            eng.basis.push(WPoly {
                terms: vec![(m, F::one())],
                sugar: k,
            });
        }
    }
    // minimal subset by leading monomials; divisors have smaller degree
    let mut order: Vec<usize> = (0..eng.basis.len()).collect();
    order.sort_by(|&a, &b| {
        let (la, lb) = (eng.basis[a].lm(), eng.basis[b].lm());
        la.degree()
            .cmp(&lb.degree())
            .then(eng.basis[a].terms.len().cmp(&eng.basis[b].terms.len()))
    });
    let mut keep: Vec<usize> = Vec::new();
    for &k in &order {
        let lm = eng.basis[k].lm();
        if !keep.iter().any(|&q| eng.basis[q].lm().divides(lm)) {
            keep.push(k);
        }
    }
    keep.sort_by(|&a, &b| ord.cmp(eng.basis[a].lm(), eng.basis[b].lm()));
    if !eng.global {
        return Ok(keep.iter().map(|&k| eng.basis[k].to_poly()).collect());
    }
    let minimal: Vec<WPoly<F>> = keep.iter().map(|&k| eng.basis[k].clone()).collect();
    eng.basis = minimal;
    let mut reduced = Vec::with_capacity(eng.basis.len());
    for k in 0..eng.basis.len() {
        eng.deadline.check()?;
        let mut r = eng.full_reduce(eng.basis[k].clone(), k);
        r.make_monic();
        reduced.push(r);
    }
    Ok(reduced.iter().map(WPoly::to_poly).collect())
}

/// Fully reduced normal form of `f` with respect to a Gröbner basis for a global ordering.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    ord: &MonomialOrder,
) -> Polynomial<F> {
    assert!(ord.is_global(), "full normal forms need a global ordering");
    let eng = Engine {
        ord,
        global: true,
        basis: basis.iter().map(|p| WPoly::new(p, ord)).collect(),
        active: Vec::new(),
        pairs: Vec::new(),
        deadline: Deadline::new(None),
        nvars: 0,
        corner: None,
    };
    eng.full_reduce(WPoly::new(f, ord), usize::MAX).to_poly()
}

/// Leading monomial with respect to `ord`.
pub fn leading_monomial<F: Field>(p: &Polynomial<F>, ord: &MonomialOrder) -> Option<Monomial> {
    p.terms().iter().map(|(m, _)| *m).max_by(|a, b| ord.cmp(a, b))
}
