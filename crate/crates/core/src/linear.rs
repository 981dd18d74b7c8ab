//! Affine subspaces of `V^n` cut out by rational equations.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cover::{CoverPoint, FreshIndices};
use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, rref, to_rat_vec, IntMatrix, Rat, RatMatrix};

/// `{v in V^n : Σ q_i v_i = rhs}` for each constraint row, kept in reduced
/// row echelon form so that equal sets have equal presentations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSet {
    arity: usize,
    rows: RatMatrix,
    rhs: Vec<CoverPoint>,
    empty: bool,
}

impl LinearSet {
    pub fn new(arity: usize, constraints: Vec<(Vec<Rat>, CoverPoint)>) -> Self {
        let (rows, rhs): (Vec<_>, Vec<_>) = constraints.into_iter().unzip();
        let a = RatMatrix::from_rows(arity, rows);
        let ech = rref(&a, &rhs);
        if !ech.consistent {
            return Self::empty(arity);
        }
        LinearSet { arity, rows: ech.rows, rhs: ech.rhs, empty: false }
    }

    pub fn from_integer_rows(arity: usize, rows: &IntMatrix, rhs: Vec<CoverPoint>) -> Self {
        assert_eq!(rows.rows(), rhs.len());
        Self::new(arity, (0..rows.rows()).map(|i| to_rat_vec(rows.row(i))).zip(rhs).collect())
    }

    pub fn full(arity: usize) -> Self {
        LinearSet { arity, rows: RatMatrix::zeros(0, arity), rhs: Vec::new(), empty: false }
    }

    pub fn empty(arity: usize) -> Self {
        LinearSet { arity, rows: RatMatrix::zeros(0, arity), rhs: Vec::new(), empty: true }
    }

    /// The single point `p`.
    pub fn point(p: &[CoverPoint]) -> Self {
        let n = p.len();
        Self::new(
            n,
            p.iter()
                .enumerate()
                .map(|(i, x)| {
                    let mut row = alloc::vec![Rat::zero(); n];
                    row[i] = Rat::one();
                    (row, x.clone())
                })
                .collect(),
        )
    }

    /// `{v : v_i = v_j}`
    pub fn diagonal(arity: usize, i: usize, j: usize) -> Self {
        let mut row = alloc::vec![Rat::zero(); arity];
        row[i] = Rat::one();
        row[j] = -Rat::one();
        Self::new(arity, alloc::vec![(row, CoverPoint::zero())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Normalized constraint rows with their right-hand sides.
    pub fn constraints(&self) -> impl Iterator<Item = (&[Rat], &CoverPoint)> + '_ {
        (0..self.rhs.len()).map(move |i| (self.rows.row(i), &self.rhs[i]))
    }

    pub fn constraint_matrix(&self) -> &RatMatrix {
        &self.rows
    }

    /// Right-hand sides: the parameters the set is defined over.
    pub fn parameters(&self) -> &[CoverPoint] {
        &self.rhs
    }

    /// Defined with constant parameters only (κ and declared constants).
    pub fn is_constant_definable(&self) -> bool {
        self.rhs.iter().all(CoverPoint::is_constant)
    }

    pub fn rank(&self) -> usize {
        self.rows.rows()
    }

    /// `n - rank`, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        (!self.empty).then(|| self.arity - self.rank())
    }

    pub fn contains(&self, v: &[CoverPoint]) -> bool {
        if self.empty || v.len() != self.arity {
            return false;
        }
        self.constraints().all(|(q, b)| &CoverPoint::rational_combination(q, v) == b)
    }

    /// Solution with every free coordinate zero.
    pub fn base_point(&self) -> Option<Vec<CoverPoint>> {
        if self.empty {
            return None;
        }
        let mut v = alloc::vec![CoverPoint::zero(); self.arity];
        for (i, b) in self.rhs.iter().enumerate() {
            let pivot = (0..self.arity).find(|&j| !self.rows[(i, j)].is_zero()).expect("echelon row is nonzero");
            v[pivot] = b.clone();
        }
        Some(v)
    }

    /// Saturated integer basis of the direction space.
    pub fn direction(&self) -> IntMatrix {
        integer_kernel(&self.rows)
    }

    /// Base point plus a fresh generic multiple of each direction vector.
    pub fn generic_point(&self, fresh: &FreshIndices) -> Option<Vec<CoverPoint>> {
        let mut v = self.base_point()?;
        let dir = self.direction();
        for k in 0..dir.rows() {
            let e = fresh.next_generic();
            for (vi, z) in v.iter_mut().zip(dir.row(k)) {
                *vi += &e.scaled_int(z);
            }
        }
        Some(v)
    }

    pub fn intersect(&self, other: &LinearSet) -> Result<LinearSet> {
        self.check_arity(other.arity)?;
        if self.empty || other.empty {
            return Ok(Self::empty(self.arity));
        }
        let cons = self.owned_constraints().into_iter().chain(other.owned_constraints()).collect();
        Ok(Self::new(self.arity, cons))
    }

    /// `q * L`
    pub fn scaled(&self, q: &Rat) -> LinearSet {
        assert!(!q.is_zero(), "scale must be nonzero");
        if self.empty {
            return self.clone();
        }
        let cons = self.constraints().map(|(row, b)| (row.to_vec(), b.scaled(q))).collect();
        Self::new(self.arity, cons)
    }

    /// `L + t`
    pub fn translated(&self, t: &[CoverPoint]) -> Result<LinearSet> {
        self.check_arity(t.len())?;
        if self.empty {
            return Ok(self.clone());
        }
        let cons = self
            .constraints()
            .map(|(row, b)| (row.to_vec(), b + &CoverPoint::rational_combination(row, t)))
            .collect();
        Ok(Self::new(self.arity, cons))
    }

    /// Image under the coordinate map sending position `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LinearSet> {
        check_permutation(perm, self.arity)?;
        if self.empty {
            return Ok(self.clone());
        }
        let cons = self
            .constraints()
            .map(|(row, b)| {
                let mut out = alloc::vec![Rat::zero(); self.arity];
                for (i, q) in row.iter().enumerate() {
                    out[perm[i]] = q.clone();
                }
                (out, b.clone())
            })
            .collect();
        Ok(Self::new(self.arity, cons))
    }

    pub fn is_subset_of(&self, other: &LinearSet) -> bool {
        if self.empty {
            return true;
        }
        if other.empty || self.arity != other.arity {
            return false;
        }
        let base = self.base_point().expect("nonempty");
        if !other.contains(&base) {
            return false;
        }
        let dir = self.direction();
        (0..dir.rows()).all(|k| {
            let d = to_rat_vec(dir.row(k));
            other.constraints().all(|(q, _)| q.iter().zip(&d).map(|(a, b)| a * b).sum::<Rat>().is_zero())
        })
    }

    pub fn owned_constraints(&self) -> Vec<(Vec<Rat>, CoverPoint)> {
        self.constraints().map(|(q, b)| (q.to_vec(), b.clone())).collect()
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found });
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(perm: &[usize], arity: usize) -> Result<()> {
    let mut seen = alloc::vec![false; arity];
    if perm.len() != arity {
        return Err(Error::ArityMismatch { expected: arity, found: perm.len() });
    }
    for &p in perm {
        if p >= arity || seen[p] {
            return Err(Error::InvalidArgument(alloc::format!("{:?} is not a permutation", perm)));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Applies the coordinate map sending position `i` to `perm[i]`.
pub fn permute_tuple<T: Clone>(v: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = v.to_vec();
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}
