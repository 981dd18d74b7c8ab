//! Specializations between explicit tuples of the cover.
//!
//! `a -> b` holds when every closed set over the constants containing `a`
//! contains `b`, which in this fragment is `b ∈ locus(a)`. Subtuple
//! conditions follow since `C × V^rest` is closed.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::cover::{CoverPoint, FreshIndices};
use crate::error::{Error, Result};
use crate::lattice::{linear_solve, RatMatrix};
use crate::linear::LinearSet;
use crate::pqf::{locus, rank};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecCheck {
    pub source: Vec<CoverPoint>,
    pub target: Vec<CoverPoint>,
    pub verdict: bool,
    /// `rank(source) - rank(target)`, present iff the verdict is true.
    pub rank_drop: Option<usize>,
}

fn check_lengths(a: &[CoverPoint], b: &[CoverPoint]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

pub fn is_specialization(a: &[CoverPoint], b: &[CoverPoint]) -> Result<SpecCheck> {
    check_lengths(a, b)?;
    let verdict = locus(a).contains(b);
    let rank_drop = verdict.then(|| rank(a, &[]) - rank(b, &[]));
    Ok(SpecCheck { source: a.to_vec(), target: b.to_vec(), verdict, rank_drop })
}

fn specializes(a: &[CoverPoint], b: &[CoverPoint]) -> bool {
    a.len() == b.len() && locus(a).contains(b)
}

/// `rank(a / A ∪ b) = rank(a / A)`
pub fn independent(a: &[CoverPoint], b: &[CoverPoint], over: &[CoverPoint]) -> bool {
    let with_b: Vec<CoverPoint> = over.iter().chain(b).cloned().collect();
    rank(a, &with_b) == rank(a, over)
}

/// Equal quantifier-free types: identical loci. Every tuple is generic in
/// its own locus, so this is equality of the constant-valued relations.
pub fn same_qf_type(a: &[CoverPoint], b: &[CoverPoint]) -> Result<bool> {
    check_lengths(a, b)?;
    Ok(locus(a) == locus(b))
}

/// A specialization that is invertible: `a -> b` with the same type.
pub fn is_isomorphism(a: &[CoverPoint], b: &[CoverPoint]) -> bool {
    a.len() == b.len() && locus(a) == locus(b)
}

fn concat(parts: &[&[CoverPoint]]) -> Vec<CoverPoint> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn pick(v: &[CoverPoint], idx: &[usize]) -> Vec<CoverPoint> {
    idx.iter().map(|&i| v[i].clone()).collect()
}

/// Given `a -> a''` with `a_1 != a_2` and `a''_1 = a''_2`, a tuple `a'` on
/// the diagonal with `a -> a' -> a''` and rank exactly one lower than `a`:
/// a generic point of `locus(a) ∩ {v_1 = v_2}`.
pub fn diagonal_step(a: &[CoverPoint], target: &[CoverPoint], fresh: &FreshIndices) -> Result<Vec<CoverPoint>> {
    check_lengths(a, target)?;
    if a.len() < 2 {
        return Err(Error::PreconditionViolated("tuples need at least two coordinates".into()));
    }
    if a[0] == a[1] {
        return Err(Error::PreconditionViolated("first two source coordinates coincide".into()));
    }
    if target[0] != target[1] {
        return Err(Error::PreconditionViolated("first two target coordinates differ".into()));
    }
    if !specializes(a, target) {
        return Err(Error::PreconditionViolated("target is not a specialization of the source".into()));
    }
    let slice = locus(a).linear().intersect(&LinearSet::diagonal(a.len(), 0, 1))?;
    let mid = slice.generic_point(fresh).ok_or(Error::EmptySet)?;

    if mid[0] != mid[1] {
        return Err(Error::WitnessVerificationFailed("intermediate tuple is off the diagonal".into()));
    }
    if !specializes(a, &mid) {
        return Err(Error::WitnessVerificationFailed("source does not specialize to the intermediate tuple".into()));
    }
    if !specializes(&mid, target) {
        return Err(Error::WitnessVerificationFailed("intermediate tuple does not specialize to the target".into()));
    }
    let drop = rank(a, &[]) as i64 - rank(&mid, &[]) as i64;
    if drop != 1 {
        return Err(Error::WitnessVerificationFailed(format!("rank drop is {}, expected 1", drop)));
    }
    Ok(mid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

/// Bounded search over the recursive clauses: isomorphism, singleton generic
/// source, and a split into two independent parts that are both strongly
/// regular. `Unknown` when the depth bound cuts the split search short.
pub fn strongly_regular(a: &[CoverPoint], target: &[CoverPoint], depth: usize) -> Result<Verdict> {
    check_lengths(a, target)?;
    if !specializes(a, target) {
        return Err(Error::NotSpecialization);
    }
    Ok(regular_search(a, target, depth))
}

fn regular_search(a: &[CoverPoint], target: &[CoverPoint], depth: usize) -> Verdict {
    if is_isomorphism(a, target) {
        return Verdict::True;
    }
    if a.len() == 1 {
        return if rank(a, &[]) == 1 { Verdict::True } else { Verdict::False };
    }
    if depth == 0 {
        return Verdict::Unknown;
    }
    let n = a.len();
    let mut unknown = false;
    // Index 0 always goes to the first part; the mask picks the rest.
    for mask in 0u64..(1u64 << (n - 1)) - 1 {
        let (mut left, mut right) = (alloc::vec![0usize], Vec::new());
        for i in 1..n {
            if mask >> (i - 1) & 1 == 1 {
                left.push(i);
            } else {
                right.push(i);
            }
        }
        let (al, ar) = (pick(a, &left), pick(a, &right));
        if !independent(&al, &ar, &[]) {
            continue;
        }
        let vl = regular_search(&al, &pick(target, &left), depth - 1);
        if vl == Verdict::False {
            continue;
        }
        let vr = regular_search(&ar, &pick(target, &right), depth - 1);
        match (vl, vr) {
            (Verdict::True, Verdict::True) => return Verdict::True,
            (_, Verdict::False) => {}
            _ => unknown = true,
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::False
    }
}

/// Evidence that a specialization is strongly good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goodness {
    /// Strongly regular, found by bounded search.
    Regular { depth: usize },
    /// `a = (a_1, a_2, a_3)` split by index lists, with `(a_1, a_2)` strongly
    /// good by `inner`, `a_1 -> a_1'` an isomorphism, and `a_3 ∈ cl(a_1)`.
    Extension { first: Vec<usize>, second: Vec<usize>, third: Vec<usize>, inner: Box<Goodness> },
}

pub fn strongly_good(a: &[CoverPoint], target: &[CoverPoint], evidence: &Goodness) -> Result<Verdict> {
    check_lengths(a, target)?;
    if !specializes(a, target) {
        return Err(Error::NotSpecialization);
    }
    Ok(match evidence {
        Goodness::Regular { depth } => regular_search(a, target, *depth),
        Goodness::Extension { first, second, third, inner } => {
            let mut all: Vec<usize> = first.iter().chain(second).chain(third).copied().collect();
            all.sort_unstable();
            if all != (0..a.len()).collect::<Vec<_>>() {
                return Err(Error::InvalidArgument("decomposition must partition the coordinates".into()));
            }
            let head: Vec<usize> = first.iter().chain(second).copied().collect();
            let a1 = pick(a, first);
            let iso = is_isomorphism(&a1, &pick(target, first));
            let closed = rank(&pick(a, third), &a1) == 0;
            if !iso || !closed {
                Verdict::False
            } else {
                strongly_good(&pick(a, &head), &pick(target, &head), inner)?
            }
        }
    })
}

/// Tuples for an amalgamation problem: `a -> a'`, `ab -> a'b'`, `ac -> a'c'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgamation<'a> {
    pub a: &'a [CoverPoint],
    pub a_target: &'a [CoverPoint],
    pub b: &'a [CoverPoint],
    pub b_target: &'a [CoverPoint],
    pub c: &'a [CoverPoint],
    pub c_target: &'a [CoverPoint],
}

/// Finds `b*` with the type of `b` over `a`, independent from `c` over `a`,
/// and `ab*c -> a'b'c'`. The witness is a generic point of the fiber of
/// `locus(ab)` over `a` in fresh directions; all three properties are
/// checked before it is returned.
pub fn amalgamate(p: &Amalgamation<'_>, evidence: &Goodness, fresh: &FreshIndices) -> Result<Vec<CoverPoint>> {
    check_lengths(p.a, p.a_target)?;
    check_lengths(p.b, p.b_target)?;
    check_lengths(p.c, p.c_target)?;
    let base = is_specialization(p.a, p.a_target)?;
    match base.rank_drop {
        None => return Err(Error::PreconditionViolated("a does not specialize to a'".into())),
        Some(d) if d > 1 => return Err(Error::PreconditionViolated(format!("rank drop of a -> a' is {}", d))),
        _ => {}
    }
    if strongly_good(p.a, p.a_target, evidence)? != Verdict::True {
        return Err(Error::PreconditionViolated("a -> a' is not known to be strongly good".into()));
    }
    let ab = concat(&[p.a, p.b]);
    let ac = concat(&[p.a, p.c]);
    if !specializes(&ab, &concat(&[p.a_target, p.b_target])) {
        return Err(Error::PreconditionViolated("ab does not specialize to a'b'".into()));
    }
    if !specializes(&ac, &concat(&[p.a_target, p.c_target])) {
        return Err(Error::PreconditionViolated("ac does not specialize to a'c'".into()));
    }

    let witness = fiber_generic_point(&ab, p.a.len(), fresh)?;

    let abw = concat(&[p.a, &witness]);
    if !same_qf_type(&abw, &ab)? {
        return Err(Error::WitnessVerificationFailed("type of ab* differs from type of ab".into()));
    }
    if !independent(&witness, p.c, p.a) {
        return Err(Error::WitnessVerificationFailed("b* is not independent from c over a".into()));
    }
    let abwc = concat(&[p.a, &witness, p.c]);
    if !specializes(&abwc, &concat(&[p.a_target, p.b_target, p.c_target])) {
        return Err(Error::WitnessVerificationFailed("ab*c does not specialize to a'b'c'".into()));
    }
    Ok(witness)
}

/// Generic point of `{y : (x_head, y) ∈ locus(x)}` where `x_head` is the
/// first `split` coordinates of `x`.
fn fiber_generic_point(x: &[CoverPoint], split: usize, fresh: &FreshIndices) -> Result<Vec<CoverPoint>> {
    let loc = locus(x);
    let head = &x[..split];
    let width = x.len() - split;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (q, r) in loc.linear().constraints() {
        rows.push(q[split..].to_vec());
        rhs.push(r - &CoverPoint::rational_combination(&q[..split], head));
    }
    let a = RatMatrix::from_rows(width, rows);
    let sol = linear_solve(&a, &rhs).ok_or(Error::EmptySet)?;
    let mut y = sol.particular;
    for k in 0..sol.kernel.rows() {
        let e = fresh.next_generic();
        for (yi, z) in y.iter_mut().zip(sol.kernel.row(k)) {
            *yi += &e.scaled_int(z);
        }
    }
    Ok(y)
}
