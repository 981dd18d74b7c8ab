//! Closed sets of the torus fragment: finite unions of cells
//! `m * (L ∩ log T)`, their irreducible components, loci and ranks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::cover::{CoverPoint, FreshIndices};
use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, Rat, RatMatrix};
use crate::linear::{check_permutation, permute_tuple, LinearSet};
use crate::torus::{linear_of_torus, torus_of_linear, TorusPresentation};

/// An irreducible closed set: a single nonempty affine subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrreducibleSet {
    linear: LinearSet,
}

impl IrreducibleSet {
    pub fn new(linear: LinearSet) -> Result<Self> {
        if linear.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(IrreducibleSet { linear })
    }

    pub fn linear(&self) -> &LinearSet {
        &self.linear
    }

    pub fn into_linear(self) -> LinearSet {
        self.linear
    }

    pub fn arity(&self) -> usize {
        self.linear.arity()
    }

    pub fn dim(&self) -> usize {
        self.linear.dim().expect("irreducible sets are nonempty")
    }

    pub fn contains(&self, v: &[CoverPoint]) -> bool {
        self.linear.contains(v)
    }

    pub fn is_subset_of(&self, other: &IrreducibleSet) -> bool {
        self.linear.is_subset_of(&other.linear)
    }

    pub fn generic_point(&self, fresh: &FreshIndices) -> Vec<CoverPoint> {
        self.linear.generic_point(fresh).expect("irreducible sets are nonempty")
    }

    /// `exp(C)`, always an irreducible torus.
    pub fn exp_image(&self) -> TorusPresentation {
        torus_of_linear(&self.linear).expect("irreducible sets are nonempty")
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<IrreducibleSet> {
        Ok(IrreducibleSet { linear: self.linear.permuted(perm)? })
    }

    /// Intersection with another irreducible set, `None` when disjoint.
    pub fn intersect(&self, other: &IrreducibleSet) -> Result<Option<IrreducibleSet>> {
        let l = self.linear.intersect(&other.linear)?;
        Ok((!l.is_empty()).then_some(IrreducibleSet { linear: l }))
    }
}

/// `m * (L ∩ log T)`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub scale: u32,
    pub linear: LinearSet,
    pub torus: TorusPresentation,
}

impl Cell {
    pub fn new(scale: u32, linear: LinearSet, torus: TorusPresentation) -> Result<Self> {
        if scale == 0 {
            return Err(Error::InvalidArgument("cell scale must be positive".into()));
        }
        if linear.arity() != torus.arity() {
            return Err(Error::ArityMismatch { expected: linear.arity(), found: torus.arity() });
        }
        Ok(Cell { scale, linear, torus })
    }

    /// `1 * (L ∩ log (F*)^n)`
    pub fn linear_only(linear: LinearSet) -> Self {
        let n = linear.arity();
        Cell { scale: 1, linear, torus: TorusPresentation::full(n.max(1)) }
    }

    pub fn arity(&self) -> usize {
        self.linear.arity()
    }

    pub fn contains(&self, x: &[CoverPoint]) -> bool {
        if x.len() != self.arity() {
            return false;
        }
        let inv = Rat::new(BigInt::one(), BigInt::from(self.scale));
        let v: Vec<CoverPoint> = x.iter().map(|p| p.scaled(&inv)).collect();
        self.linear.contains(&v) && self.torus.contains_log(&v)
    }

    /// Irreducible components whose kernel offsets lie within `bound`.
    pub fn components(&self, bound: u32) -> Result<Vec<IrreducibleSet>> {
        let mut out = Vec::new();
        if self.linear.is_empty() || !self.torus.is_consistent() {
            return Ok(out);
        }
        let m = Rat::from_integer(self.scale.into());
        for t in self.torus.components()? {
            for piece in log_components(&t, bound)? {
                let inter = self.linear.intersect(piece.linear())?;
                if !inter.is_empty() {
                    out.push(IrreducibleSet { linear: inter.scaled(&m) });
                }
            }
        }
        Ok(out)
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<Cell> {
        Ok(Cell { scale: self.scale, linear: self.linear.permuted(perm)?, torus: self.torus.permuted(perm)? })
    }
}

/// Finite union of cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PqfSet {
    arity: usize,
    cells: Vec<Cell>,
}

impl PqfSet {
    pub fn new(arity: usize, cells: Vec<Cell>) -> Result<Self> {
        for c in &cells {
            if c.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: c.arity() });
            }
        }
        Ok(PqfSet { arity, cells })
    }

    pub fn from_irreducible(c: &IrreducibleSet) -> Self {
        PqfSet { arity: c.arity(), cells: alloc::vec![Cell::linear_only(c.linear.clone())] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn member(&self, x: &[CoverPoint]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: x.len() });
        }
        Ok(self.cells.iter().any(|c| c.contains(x)))
    }

    /// Irreducible components within `bound`, dropping any contained in
    /// another listed component.
    pub fn components(&self, bound: u32) -> Result<Vec<IrreducibleSet>> {
        let mut all = Vec::new();
        for c in &self.cells {
            all.extend(c.components(bound)?);
        }
        let mut keep: Vec<IrreducibleSet> = Vec::new();
        for (i, c) in all.iter().enumerate() {
            let absorbed = all.iter().enumerate().any(|(j, d)| {
                j != i && c.is_subset_of(d) && (!d.is_subset_of(c) || j < i)
            });
            if !absorbed {
                keep.push(c.clone());
            }
        }
        Ok(keep)
    }

    pub fn permute(&self, perm: &[usize]) -> Result<PqfSet> {
        check_permutation(perm, self.arity)?;
        let cells = self.cells.iter().map(|c| c.permuted(perm)).collect::<Result<_>>()?;
        Ok(PqfSet { arity: self.arity, cells })
    }
}

/// Sets with a dimension, computed within a kernel-offset bound where the
/// set has countably many components.
pub trait Dimension {
    fn dimension(&self, bound: u32) -> Result<usize>;
}

impl Dimension for IrreducibleSet {
    fn dimension(&self, _bound: u32) -> Result<usize> {
        Ok(self.dim())
    }
}

impl Dimension for PqfSet {
    fn dimension(&self, bound: u32) -> Result<usize> {
        self.components(bound)?.iter().map(IrreducibleSet::dim).max().ok_or(Error::EmptyWithinBound)
    }
}

impl Dimension for TorusPresentation {
    fn dimension(&self, _bound: u32) -> Result<usize> {
        self.dim().map_err(|_| Error::EmptyWithinBound)
    }
}

/// Components of `log T` for irreducible `T`: the translates
/// `{H v = c + s κ}` of the linear set of `T`, one per offset vector
/// `s ∈ [-bound, bound]^k` relative to the Hermite rows `H`, in
/// lexicographic order of `s`. Distinct offsets give disjoint translates.
pub fn log_components(t: &TorusPresentation, bound: u32) -> Result<Vec<IrreducibleSet>> {
    let base = linear_of_torus(t)?;
    let nf = t.normal_form();
    let k = nf.lattice.rows();
    let width = 2 * bound + 1;
    let mut out = Vec::new();
    for offsets in crate::torus::offsets_lex(k, width) {
        let rhs: Vec<CoverPoint> = nf
            .values
            .iter()
            .zip(&offsets)
            .map(|(c, &j)| c.rep() + &CoverPoint::kappa_multiple(Rat::from_integer(BigInt::from(j as i64 - bound as i64))))
            .collect();
        let l = LinearSet::from_integer_rows(t.arity(), &nf.lattice, rhs);
        debug_assert_eq!(l.dim(), base.dim());
        out.push(IrreducibleSet { linear: l });
    }
    Ok(out)
}

/// Matrix of generic coordinates: one row per point.
fn generic_matrix(points: &[&CoverPoint]) -> (RatMatrix, Vec<crate::cover::Basis>) {
    let mut basis: Vec<_> = points.iter().flat_map(|p| p.support()).filter(|b| !b.is_constant()).collect();
    basis.sort();
    basis.dedup();
    let rows = points.iter().map(|p| basis.iter().map(|b| p.coeff(*b)).collect()).collect();
    (RatMatrix::from_rows(basis.len(), rows), basis)
}

fn generic_rank(points: &[&CoverPoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    generic_matrix(points).0.rank()
}

/// `dim(span(a ∪ A ∪ constants) / span(A ∪ constants))`
pub fn rank(a: &[CoverPoint], over: &[CoverPoint]) -> usize {
    let all: Vec<&CoverPoint> = a.iter().chain(over).collect();
    let base: Vec<&CoverPoint> = over.iter().collect();
    generic_rank(&all) - generic_rank(&base)
}

/// Smallest closed set over the constants containing `a`: all rational
/// relations `Σ q_i a_i` with constant value, with those values as
/// right-hand sides.
pub fn locus(a: &[CoverPoint]) -> IrreducibleSet {
    let n = a.len();
    let refs: Vec<&CoverPoint> = a.iter().collect();
    let (g, _) = generic_matrix(&refs);
    // Relations q with q * G = 0, i.e. the kernel of G^T.
    let gt = RatMatrix::from_rows(n, (0..g.cols()).map(|j| (0..n).map(|i| g[(i, j)].clone()).collect()).collect());
    let rel = integer_kernel(&gt);
    let rhs = (0..rel.rows()).map(|i| CoverPoint::integer_combination(rel.row(i), a)).collect();
    let l = LinearSet::from_integer_rows(n, &rel, rhs);
    debug_assert!(l.contains(a));
    IrreducibleSet { linear: l }
}

/// `a` has rank equal to `dim(S)` over the parameters of `S`.
pub fn is_generic(a: &[CoverPoint], s: &IrreducibleSet) -> Result<bool> {
    if a.len() != s.arity() {
        return Err(Error::ArityMismatch { expected: s.arity(), found: a.len() });
    }
    if !s.contains(a) {
        return Err(Error::NotMember);
    }
    Ok(rank(a, s.linear.parameters()) == s.dim())
}

pub fn permute_point(a: &[CoverPoint], perm: &[usize]) -> Result<Vec<CoverPoint>> {
    check_permutation(perm, a.len())?;
    Ok(permute_tuple(a, perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::FieldPoint;
    use alloc::vec;

    fn e(i: u32) -> CoverPoint {
        CoverPoint::generic(i)
    }

    fn k() -> CoverPoint {
        CoverPoint::kappa()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn third_line() -> LinearSet {
        // y - x = κ/3
        LinearSet::new(2, vec![(vec![q(-1, 1), q(1, 1)], CoverPoint::kappa_multiple(q(1, 3)))])
    }

    #[test]
    fn membership() {
        let diag = PqfSet::new(2, vec![Cell::linear_only(LinearSet::diagonal(2, 0, 1))]).unwrap();
        assert!(diag.member(&[k(), k()]).unwrap());
        assert!(!diag.member(&[CoverPoint::zero(), k()]).unwrap());
        assert_eq!(diag.member(&[k()]), Err(Error::ArityMismatch { expected: 2, found: 1 }));

        let t = TorusPresentation::from_i64(1, &[(&[1], crate::cover::exp_point(&e(1)))]).unwrap();
        let s = PqfSet::new(1, vec![Cell::new(2, LinearSet::full(1), t).unwrap()]).unwrap();
        assert!(s.member(&[e(1).scaled(&q(2, 1))]).unwrap());
        assert!(!s.member(&[e(1)]).unwrap());
    }

    #[test]
    fn log_component_counts() {
        let x1 = TorusPresentation::from_i64(1, &[(&[1], FieldPoint::one())]).unwrap();
        let comps = log_components(&x1, 2).unwrap();
        assert_eq!(comps.len(), 5);
        for (c, j) in comps.iter().zip(-2i64..=2) {
            assert!(c.contains(&[CoverPoint::kappa_multiple(q(j, 1))]));
            assert_eq!(c.dim(), 0);
        }

        let diag = TorusPresentation::from_i64(2, &[(&[1, -1], FieldPoint::one())]).unwrap();
        let comps = log_components(&diag, 1).unwrap();
        assert_eq!(comps.len(), 3);
        for (i, c) in comps.iter().enumerate() {
            for (j, d) in comps.iter().enumerate() {
                assert_eq!(i == j, c.intersect(d).unwrap().is_some());
            }
            assert_eq!(c.exp_image().normal_form(), diag.normal_form());
        }
        // The (k, k) translates fix the diagonal.
        assert!(comps[1].contains(&[k(), k()]));

        let full = TorusPresentation::full(3);
        let comps = log_components(&full, 4).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim(), 3);

        let reducible = TorusPresentation::from_i64(1, &[(&[2], FieldPoint::one())]).unwrap();
        assert_eq!(log_components(&reducible, 1), Err(Error::Reducible));
    }

    #[test]
    fn loci() {
        assert_eq!(locus(&[e(1)]).linear(), &LinearSet::full(1));
        let half = CoverPoint::kappa_multiple(q(1, 2));
        assert_eq!(locus(core::slice::from_ref(&half)).linear(), &LinearSet::point(&[half]));
        assert_eq!(locus(&[e(1), e(1) + CoverPoint::kappa_multiple(q(1, 3))]).linear(), &third_line());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[e(1), e(2)], &[]), 2);
        assert_eq!(rank(&[e(1), e(1).scaled(&q(2, 1)) + k()], &[]), 1);
        assert_eq!(rank(&[e(1)], &[e(1)]), 0);
    }

    #[test]
    fn dimensions() {
        let diag = IrreducibleSet::new(LinearSet::diagonal(2, 0, 1)).unwrap();
        assert_eq!(diag.dimension(3).unwrap(), 1);

        let t = TorusPresentation::from_i64(2, &[(&[2, 3], FieldPoint::unit_root(q(1, 5)))]).unwrap();
        assert_eq!(t.dimension(3).unwrap(), 1);

        let point = LinearSet::point(&[k(), CoverPoint::zero()]);
        let s = PqfSet::new(2, vec![Cell::linear_only(LinearSet::diagonal(2, 0, 1)), Cell::linear_only(point)]).unwrap();
        assert_eq!(s.dimension(1).unwrap(), 1);

        let empty = PqfSet::new(2, vec![Cell::linear_only(LinearSet::empty(2))]).unwrap();
        assert_eq!(empty.dimension(1), Err(Error::EmptyWithinBound));
    }

    #[test]
    fn genericity() {
        let diag = IrreducibleSet::new(LinearSet::diagonal(2, 0, 1)).unwrap();
        assert!(is_generic(&[e(1), e(1)], &diag).unwrap());
        assert!(!is_generic(&[k(), k()], &diag).unwrap());
        assert_eq!(is_generic(&[e(1), e(2)], &diag), Err(Error::NotMember));
        let line = IrreducibleSet::new(third_line()).unwrap();
        assert!(is_generic(&[e(1), e(1) + CoverPoint::kappa_multiple(q(1, 3))], &line).unwrap());
    }

    #[test]
    fn permutations() {
        let s = PqfSet::from_irreducible(&IrreducibleSet::new(third_line()).unwrap());
        assert_eq!(s.permute(&[0, 1]).unwrap(), s);
        let diag = PqfSet::from_irreducible(&IrreducibleSet::new(LinearSet::diagonal(2, 0, 1)).unwrap());
        assert_eq!(diag.permute(&[1, 0]).unwrap(), diag);
        let swapped = s.permute(&[1, 0]).unwrap();
        let expected = LinearSet::new(2, vec![(vec![q(1, 1), q(-1, 1)], CoverPoint::kappa_multiple(q(1, 3)))]);
        assert_eq!(swapped.cells()[0].linear, expected);
        let a = [e(1), e(1) + CoverPoint::kappa_multiple(q(1, 3))];
        let sa = permute_point(&a, &[1, 0]).unwrap();
        assert!(swapped.member(&sa).unwrap());
        assert_eq!(locus(&sa).linear(), &expected);
    }

    #[test]
    fn cell_components_scale_back() {
        // 2 * log{x = 1}: components {2jκ}.
        let t = TorusPresentation::from_i64(1, &[(&[1], FieldPoint::one())]).unwrap();
        let cell = Cell::new(2, LinearSet::full(1), t).unwrap();
        let comps = cell.components(1).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps[2].contains(&[CoverPoint::kappa_multiple(q(2, 1))]));
    }
}
