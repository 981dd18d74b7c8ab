//! Tori `∏ x_i^{z_i} = c` in `(F*)^n`, presented by integer exponent rows.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cover::{exp_point, field_roots, monomial, CoverPoint, FieldPoint};
use crate::error::{Error, Result};
use crate::lattice::{complete_unimodular, content, hnf, left_kernel, lattice_basis, primitive_integer, saturate, snf, IntMatrix, Rat};
use crate::linear::LinearSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusRow {
    pub exponents: Vec<BigInt>,
    pub value: FieldPoint,
}

impl TorusRow {
    pub fn new(exponents: Vec<BigInt>, value: FieldPoint) -> Self {
        TorusRow { exponents, value }
    }

    pub fn holds_at(&self, x: &[FieldPoint]) -> bool {
        monomial(&self.exponents, x) == self.value
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPresentation {
    arity: usize,
    rows: Vec<TorusRow>,
}

/// Canonical data of a torus: equal solution sets have equal normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusNormalForm {
    pub arity: usize,
    /// Hermite basis of the exponent lattice (empty when inconsistent).
    pub lattice: IntMatrix,
    /// Value of the character on each lattice basis row.
    pub values: Vec<FieldPoint>,
    pub consistent: bool,
}

/// One branch of the coordinate change: with `y = x^U` (that is
/// `log y = U log x`) the branch is `{y_i = c_i, i < k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBranch {
    pub transform: IntMatrix,
    pub constants: Vec<FieldPoint>,
}

impl CanonicalBranch {
    pub fn fixed(&self) -> usize {
        self.constants.len()
    }

    /// The branch as a torus in the original coordinates.
    pub fn to_torus(&self) -> TorusPresentation {
        let n = self.transform.cols();
        let rows = self
            .constants
            .iter()
            .enumerate()
            .map(|(i, c)| TorusRow::new(self.transform.row(i).to_vec(), c.clone()))
            .collect();
        TorusPresentation { arity: n, rows }
    }

    pub fn contains(&self, x: &[FieldPoint]) -> bool {
        self.constants.iter().enumerate().all(|(i, c)| &monomial(self.transform.row(i), x) == c)
    }
}

/// Explicit parametrization of a consistent torus in log coordinates:
/// `v = V w` with `d_i w_i = offset_i + s_i κ` for `i < k`, `s_i` any
/// integer, and `w_i` free for `i >= k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionChart {
    pub transform: IntMatrix,
    pub divisors: Vec<BigInt>,
    pub offsets: Vec<CoverPoint>,
}

impl SolutionChart {
    pub fn arity(&self) -> usize {
        self.transform.rows()
    }

    pub fn free_dim(&self) -> usize {
        self.arity() - self.divisors.len()
    }

    /// Number of irreducible components.
    pub fn component_count(&self) -> BigInt {
        self.divisors.iter().product()
    }

    /// Log point for torsion choices `s` (length `k`) and free coordinates
    /// (length `n - k`).
    pub fn log_point(&self, torsion: &[BigInt], free: &[CoverPoint]) -> Vec<CoverPoint> {
        assert_eq!(torsion.len(), self.divisors.len());
        assert_eq!(free.len(), self.free_dim());
        let mut w: Vec<CoverPoint> = Vec::with_capacity(self.arity());
        for ((d, off), s) in self.divisors.iter().zip(&self.offsets).zip(torsion) {
            let lifted = off + &CoverPoint::kappa_multiple(Rat::from_integer(s.clone()));
            w.push(lifted.scaled(&Rat::new(BigInt::one(), d.clone())));
        }
        w.extend(free.iter().cloned());
        (0..self.arity())
            .map(|i| CoverPoint::integer_combination(self.transform.row(i), &w))
            .collect()
    }

    pub fn point(&self, torsion: &[BigInt], free: &[CoverPoint]) -> Vec<FieldPoint> {
        self.log_point(torsion, free).iter().map(exp_point).collect()
    }
}

impl TorusPresentation {
    pub fn new(arity: usize, rows: Vec<TorusRow>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArgument("torus arity must be positive".into()));
        }
        for r in &rows {
            if r.exponents.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: r.exponents.len() });
            }
        }
        Ok(TorusPresentation { arity, rows })
    }

    /// `(F*)^n`
    pub fn full(arity: usize) -> Self {
        assert!(arity > 0);
        TorusPresentation { arity, rows: Vec::new() }
    }

    /// The empty torus, presented as `1 = -1`.
    pub fn empty(arity: usize) -> Self {
        assert!(arity > 0);
        TorusPresentation {
            arity,
            rows: alloc::vec![TorusRow::new(alloc::vec![BigInt::zero(); arity], FieldPoint::unit_root(Rat::new(1.into(), 2.into())))],
        }
    }

    pub fn from_i64(arity: usize, rows: &[(&[i64], FieldPoint)]) -> Result<Self> {
        Self::new(arity, rows.iter().map(|(z, c)| TorusRow::new(z.iter().map(|&x| BigInt::from(x)).collect(), c.clone())).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> &[TorusRow] {
        &self.rows
    }

    pub fn exponent_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.arity, self.rows.iter().map(|r| r.exponents.clone()).collect())
    }

    pub fn contains(&self, x: &[FieldPoint]) -> bool {
        x.len() == self.arity && self.rows.iter().all(|r| r.holds_at(x))
    }

    /// Membership of `exp(v)` for a log point `v`.
    pub fn contains_log(&self, v: &[CoverPoint]) -> bool {
        let x: Vec<FieldPoint> = v.iter().map(exp_point).collect();
        self.contains(&x)
    }

    pub fn normal_form(&self) -> TorusNormalForm {
        let z = self.exponent_matrix();
        let res = hnf(&z);
        let reps: Vec<CoverPoint> = self.rows.iter().map(|r| r.value.rep().clone()).collect();
        let value_of = |i: usize| CoverPoint::integer_combination(res.u.row(i), &reps);
        // Rows of U past the rank span the integer relations among the rows.
        let consistent = (res.rank..z.rows()).all(|i| value_of(i).in_kernel());
        if !consistent {
            return TorusNormalForm { arity: self.arity, lattice: IntMatrix::zeros(0, self.arity), values: Vec::new(), consistent };
        }
        TorusNormalForm {
            arity: self.arity,
            lattice: res.h.select_rows(0..res.rank),
            values: (0..res.rank).map(|i| exp_point(&value_of(i))).collect(),
            consistent,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.normal_form().consistent
    }

    /// Same solution set.
    pub fn same_set(&self, other: &TorusPresentation) -> bool {
        self.normal_form() == other.normal_form()
    }

    /// Presentation by the normal form rows.
    pub fn normalized(&self) -> TorusPresentation {
        self.normal_form().to_presentation()
    }

    fn consistent_form(&self) -> Result<TorusNormalForm> {
        let nf = self.normal_form();
        if !nf.consistent {
            return Err(Error::EmptyTorus);
        }
        Ok(nf)
    }

    /// Rank of the exponent lattice.
    pub fn codim(&self) -> usize {
        self.exponent_matrix().rank()
    }

    /// `n - rank` of the exponent rows.
    pub fn dim(&self) -> Result<usize> {
        let nf = self.consistent_form()?;
        Ok(self.arity - nf.lattice.rows())
    }

    pub fn solution_chart(&self) -> Result<SolutionChart> {
        let nf = self.consistent_form()?;
        let s = snf(&nf.lattice);
        let k = nf.lattice.rows();
        let reps: Vec<CoverPoint> = nf.values.iter().map(|c| c.rep().clone()).collect();
        let offsets = (0..k).map(|i| CoverPoint::integer_combination(s.u.row(i), &reps)).collect();
        let divisors = s.divisors();
        debug_assert_eq!(divisors.len(), k);
        Ok(SolutionChart { transform: s.v, divisors, offsets })
    }

    /// Number of irreducible components: the index of the exponent lattice
    /// in its saturation.
    pub fn saturation_index(&self) -> Result<BigInt> {
        let nf = self.consistent_form()?;
        Ok(saturate(&nf.lattice).1)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.saturation_index()?.is_one())
    }

    /// Triangularizing coordinate change, one equation at a time. Each
    /// equation becomes `y_p^d = c'` after a unimodular change completing
    /// its primitive part; its `d` roots split the current branches.
    /// Branches are listed by torsion offset, ascending at every step.
    pub fn canonical_form(&self) -> Result<Vec<CanonicalBranch>> {
        self.consistent_form()?;
        let n = self.arity;
        let mut transform = IntMatrix::identity(n);
        let mut inverse = IntMatrix::identity(n);
        let mut fixed = 0usize;
        let mut branches: Vec<Vec<CoverPoint>> = alloc::vec![Vec::new()];
        for row in &self.rows {
            let z = inverse.left_apply(&row.exponents);
            let residuals: Vec<CoverPoint> = branches
                .iter()
                .map(|consts| row.value.rep() - &CoverPoint::integer_combination(&z[..fixed], consts))
                .collect();
            let tail = &z[fixed..];
            if tail.iter().all(Zero::is_zero) {
                branches = branches.into_iter().zip(residuals).filter(|(_, r)| r.in_kernel()).map(|(b, _)| b).collect();
                continue;
            }
            let d = content(tail);
            let primitive: Vec<BigInt> = tail.iter().map(|x| x / &d).collect();
            let step = complete_unimodular(&primitive)?.embed_lower_right(fixed);
            let step_inv = step.unimodular_inverse().expect("completion is unimodular");
            transform = step.mul(&transform);
            inverse = inverse.mul(&step_inv);
            let d_small = d.to_u32().ok_or_else(|| Error::InvalidArgument("exponent gcd too large".into()))?;
            let mut next = Vec::with_capacity(branches.len() * d_small as usize);
            for (consts, residual) in branches.into_iter().zip(residuals) {
                for root in field_roots(&exp_point(&residual), d_small) {
                    let mut c = consts.clone();
                    c.push(root.rep().clone());
                    next.push(c);
                }
            }
            branches = next;
            fixed += 1;
        }
        Ok(branches
            .into_iter()
            .map(|consts| CanonicalBranch { transform: transform.clone(), constants: consts.iter().map(exp_point).collect() })
            .collect())
    }

    /// Irreducible components, one per canonical branch.
    pub fn components(&self) -> Result<Vec<TorusPresentation>> {
        Ok(self.canonical_form()?.iter().map(|b| b.to_torus().normalized()).collect())
    }

    pub fn intersect(&self, other: &TorusPresentation) -> Result<TorusPresentation> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(TorusPresentation { arity: self.arity, rows }.normalized())
    }

    fn require_irreducible(&self) -> Result<()> {
        if !self.is_irreducible()? {
            return Err(Error::Reducible);
        }
        Ok(())
    }

    /// All `m`-th roots: irreducible tori `X` with `X^m = T`, ordered by the
    /// torsion offsets of their constants in canonical coordinates.
    pub fn mth_roots(&self, m: u32) -> Result<Vec<TorusPresentation>> {
        if m == 0 {
            return Err(Error::InvalidArgument("root order must be positive".into()));
        }
        self.require_irreducible()?;
        let branch = self.canonical_form()?.pop().expect("irreducible torus has one branch");
        let per_row: Vec<Vec<FieldPoint>> = branch.constants.iter().map(|c| field_roots(c, m)).collect();
        let mut out = Vec::new();
        for choice in offsets_lex(per_row.len(), m) {
            let constants = choice.iter().zip(&per_row).map(|(&j, roots)| roots[j as usize].clone()).collect();
            out.push(CanonicalBranch { transform: branch.transform.clone(), constants }.to_torus().normalized());
        }
        Ok(out)
    }

    /// `{x^m : x in T}`, computed as `exp(m L)` for `T = exp(L)`.
    pub fn power(&self, m: u32) -> Result<TorusPresentation> {
        if m == 0 {
            return Err(Error::InvalidArgument("power must be positive".into()));
        }
        let lin = self.linear_set()?;
        torus_of_linear(&lin.scaled(&Rat::from_integer(m.into())))
    }

    /// Affine subspace `L` with `exp(L) = T`, base point at torsion offset 0.
    pub fn linear_set(&self) -> Result<LinearSet> {
        linear_of_torus(self)
    }

    /// Image under the coordinate map sending position `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<TorusPresentation> {
        crate::linear::check_permutation(perm, self.arity)?;
        let rows = self.rows.iter().map(|r| TorusRow::new(crate::linear::permute_tuple(&r.exponents, perm), r.value.clone())).collect();
        Ok(TorusPresentation { arity: self.arity, rows })
    }
}

impl TorusNormalForm {
    pub fn to_presentation(&self) -> TorusPresentation {
        if !self.consistent {
            return TorusPresentation::empty(self.arity);
        }
        let rows = (0..self.lattice.rows()).map(|i| TorusRow::new(self.lattice.row(i).to_vec(), self.values[i].clone())).collect();
        TorusPresentation { arity: self.arity, rows }
    }
}

/// All tuples in `[0, m)^k` in lexicographic order.
pub(crate) fn offsets_lex(k: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..m).map(move |j| {
                    let mut p = prefix.clone();
                    p.push(j);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn linear_of_torus(t: &TorusPresentation) -> Result<LinearSet> {
    let nf = t.consistent_form()?;
    if !saturate(&nf.lattice).1.is_one() {
        return Err(Error::Reducible);
    }
    let rhs = nf.values.iter().map(|c| c.rep().clone()).collect();
    Ok(LinearSet::from_integer_rows(t.arity, &nf.lattice, rhs))
}

/// `exp(L)`: rows generate the integer annihilator of the direction space,
/// constants are the rows evaluated at the base point.
pub fn torus_of_linear(l: &LinearSet) -> Result<TorusPresentation> {
    let base = l.base_point().ok_or(Error::EmptySet)?;
    let n = l.arity();
    let ints: Vec<Vec<BigInt>> = l.constraints().map(|(q, _)| primitive_integer(q)).collect();
    let (ann, _) = saturate(&IntMatrix::from_rows(n, ints));
    let rows = (0..ann.rows())
        .map(|i| TorusRow::new(ann.row(i).to_vec(), exp_point(&CoverPoint::integer_combination(ann.row(i), &base))))
        .collect();
    TorusPresentation::new(n, rows)
}

/// Smallest torus with constants in the constant subspace containing every
/// point. Rows are the integer relations whose value is the same constant at
/// every point.
pub fn minimal_torus(points: &[Vec<FieldPoint>]) -> Result<TorusPresentation> {
    let first = points.first().ok_or_else(|| Error::InvalidArgument("no points".into()))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::InvalidArgument("points must have positive arity".into()));
    }
    for p in points {
        if p.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: p.len() });
        }
    }
    let base: Vec<CoverPoint> = first.iter().map(|x| x.rep().clone()).collect();
    // Conditions on z: generic part of Σ z_i base_i vanishes, and for every
    // other point Σ z_i (p_i - base_i) lies in Zκ.
    let mut conditions: Vec<Vec<CoverPoint>> = alloc::vec![base.iter().map(CoverPoint::generic_part).collect()];
    for p in &points[1..] {
        conditions.push(p.iter().zip(&base).map(|(x, b)| x.rep() - b).collect());
    }
    let lattice = relation_lattice(n, &conditions);
    let rows = (0..lattice.rows())
        .map(|i| TorusRow::new(lattice.row(i).to_vec(), exp_point(&CoverPoint::integer_combination(lattice.row(i), &base))))
        .collect();
    TorusPresentation::new(n, rows)
}

/// Hermite basis of `{z in Z^n : Σ_i z_i w_i in Zκ for every w in conditions}`.
pub(crate) fn relation_lattice(n: usize, conditions: &[Vec<CoverPoint>]) -> IntMatrix {
    // Unknowns z_1..z_n plus one auxiliary t per κ-congruence; each basis
    // coordinate contributes a column.
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    let mut congruences: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for w in conditions {
        let mut basis: Vec<_> = w.iter().flat_map(|p| p.support()).collect();
        basis.sort();
        basis.dedup();
        for b in basis {
            let coeffs: Vec<Rat> = w.iter().map(|p| p.coeff(b)).collect();
            let den = coeffs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let ints: Vec<BigInt> = coeffs.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect();
            if b == crate::cover::Basis::Kappa {
                // Σ z_i q_i ∈ Z  <=>  Σ z_i (den q_i) ≡ 0 mod den
                congruences.push((ints, den));
            } else {
                columns.push(ints);
            }
        }
    }
    let aux = congruences.len();
    let width = n + aux;
    let mut mat = IntMatrix::zeros(width, columns.len() + aux);
    for (c, col) in columns.iter().enumerate() {
        for i in 0..n {
            mat[(i, c)] = col[i].clone();
        }
    }
    for (a, (col, modulus)) in congruences.iter().enumerate() {
        let c = columns.len() + a;
        for i in 0..n {
            mat[(i, c)] = col[i].clone();
        }
        mat[(n + a, c)] = -modulus.clone();
    }
    let kernel = left_kernel(&mat);
    let projected = IntMatrix::from_rows(n, (0..kernel.rows()).map(|i| kernel.row(i)[..n].to_vec()).collect());
    lattice_basis(&projected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn u(n: i64, d: i64) -> FieldPoint {
        FieldPoint::unit_root(q(n, d))
    }

    fn g(i: u32) -> FieldPoint {
        exp_point(&CoverPoint::constant(i))
    }

    fn torus(n: usize, rows: &[(&[i64], FieldPoint)]) -> TorusPresentation {
        TorusPresentation::from_i64(n, rows).unwrap()
    }

    #[test]
    fn normal_form_detects_empty() {
        let t = torus(1, &[(&[1], u(0, 1)), (&[1], u(1, 2))]);
        assert!(!t.normal_form().consistent);
        assert_eq!(t.canonical_form(), Err(Error::EmptyTorus));
    }

    #[test]
    fn normal_form_ignores_redundant_rows() {
        let c = g(1);
        let a = torus(2, &[(&[1, 1], c.clone())]);
        let b = torus(2, &[(&[2, 2], c.pow(&2.into())), (&[1, 1], c)]);
        assert_eq!(a.normal_form(), b.normal_form());
        let full = TorusPresentation::full(3).normal_form();
        assert!(full.consistent && full.lattice.is_empty());
    }

    #[test]
    fn canonical_form_examples() {
        let t = torus(2, &[(&[2, 3], g(1))]);
        let branches = t.canonical_form().unwrap();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].transform, IntMatrix::from_i64(&[&[2, 3], &[1, 2]]));
        assert_eq!(branches[0].constants, vec![g(1)]);

        let t = torus(1, &[(&[1], g(1))]);
        let branches = t.canonical_form().unwrap();
        assert_eq!(branches[0].transform, IntMatrix::identity(1));
        assert_eq!(branches[0].constants, vec![g(1)]);

        let t = torus(1, &[(&[2], u(0, 1))]);
        let consts: Vec<_> = t.canonical_form().unwrap().into_iter().map(|b| b.constants[0].clone()).collect();
        assert_eq!(consts, vec![u(0, 1), u(1, 2)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(torus(2, &[(&[1, 1], g(1))]).is_irreducible().unwrap());
        assert!(!torus(1, &[(&[2], u(0, 1))]).is_irreducible().unwrap());
        assert!(!torus(2, &[(&[2, 2], u(0, 1))]).is_irreducible().unwrap());
        assert_eq!(TorusPresentation::empty(2).is_irreducible(), Err(Error::EmptyTorus));
    }

    #[test]
    fn component_examples() {
        let comps = torus(1, &[(&[6], u(0, 1))]).components().unwrap();
        let expect: Vec<_> = (0..6).map(|j| torus(1, &[(&[1], u(j, 6))])).collect();
        assert_eq!(comps, expect);

        let comps = torus(2, &[(&[2, 2], u(0, 1))]).components().unwrap();
        assert_eq!(comps, vec![torus(2, &[(&[1, 1], u(0, 1))]), torus(2, &[(&[1, 1], u(1, 2))])]);

        let t = torus(2, &[(&[1, -1], g(2))]);
        assert_eq!(t.components().unwrap(), vec![t.normalized()]);
    }

    #[test]
    fn intersection_examples() {
        let a = torus(2, &[(&[1, 0], g(1))]);
        let b = torus(2, &[(&[0, 1], g(2))]);
        let both = a.intersect(&b).unwrap();
        assert_eq!(both, torus(2, &[(&[1, 0], g(1)), (&[0, 1], g(2))]));
        assert_eq!(both.dim().unwrap(), 0);

        let e = torus(1, &[(&[1], u(0, 1))]).intersect(&torus(1, &[(&[1], u(1, 2))])).unwrap();
        assert!(!e.is_consistent());

        assert!(a.intersect(&TorusPresentation::full(2)).unwrap().same_set(&a));
        assert_eq!(a.intersect(&TorusPresentation::full(3)), Err(Error::ArityMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn root_examples() {
        let c = g(1);
        let roots = torus(1, &[(&[1], c.clone())]).mth_roots(3).unwrap();
        let expect: Vec<_> = field_roots(&c, 3).into_iter().map(|r| torus(1, &[(&[1], r)])).collect();
        assert_eq!(roots, expect);

        let full = TorusPresentation::full(2);
        assert_eq!(full.mth_roots(5).unwrap(), vec![full.clone()]);

        let t = torus(2, &[(&[1, -1], u(0, 1))]);
        let roots = t.mth_roots(2).unwrap();
        assert_eq!(roots, vec![torus(2, &[(&[1, -1], u(0, 1))]), torus(2, &[(&[1, -1], u(1, 2))])]);
        for r in &roots {
            assert!(r.power(2).unwrap().same_set(&t));
        }
        assert_eq!(torus(1, &[(&[2], u(0, 1))]).mth_roots(2), Err(Error::Reducible));
    }

    #[test]
    fn power_examples() {
        let c = g(1);
        let sq = c.pow(&2.into());
        assert!(torus(1, &[(&[1], c.clone())]).power(2).unwrap().same_set(&torus(1, &[(&[1], sq.clone())])));
        assert!(TorusPresentation::full(2).power(3).unwrap().same_set(&TorusPresentation::full(2)));
        assert!(torus(2, &[(&[2, 3], c)]).power(2).unwrap().same_set(&torus(2, &[(&[2, 3], sq)])));
        assert_eq!(torus(1, &[(&[2], u(0, 1))]).power(2), Err(Error::Reducible));
    }

    #[test]
    fn bridge_examples() {
        let diag = torus(2, &[(&[1, -1], u(0, 1))]);
        let l = linear_of_torus(&diag).unwrap();
        assert_eq!(l, LinearSet::diagonal(2, 0, 1));
        assert_eq!(linear_of_torus(&TorusPresentation::full(1)).unwrap(), LinearSet::full(1));

        let t = torus(2, &[(&[2, 3], g(1))]);
        let l = linear_of_torus(&t).unwrap();
        let expect = LinearSet::new(2, vec![(vec![q(2, 1), q(3, 1)], CoverPoint::constant(1))]);
        assert_eq!(l, expect);

        assert!(torus_of_linear(&LinearSet::diagonal(2, 0, 1)).unwrap().same_set(&diag));
        assert!(torus_of_linear(&LinearSet::full(3)).unwrap().same_set(&TorusPresentation::full(3)));
        let half = LinearSet::new(2, vec![(vec![q(1, 1), q(1, 1)], CoverPoint::kappa_multiple(q(1, 2)))]);
        assert!(torus_of_linear(&half).unwrap().same_set(&torus(2, &[(&[1, 1], u(1, 2))])));
        assert_eq!(torus_of_linear(&LinearSet::empty(2)), Err(Error::EmptySet));
    }

    #[test]
    fn minimal_torus_examples() {
        let e1 = exp_point(&CoverPoint::generic(1));
        let e2 = exp_point(&CoverPoint::generic(2));
        let t = minimal_torus(&[vec![e1.clone(), e1.clone()]]).unwrap();
        assert!(t.same_set(&torus(2, &[(&[1, -1], u(0, 1))])));
        let t = minimal_torus(&[vec![e1, e2]]).unwrap();
        assert!(t.same_set(&TorusPresentation::full(2)));
        let t = minimal_torus(&[vec![u(1, 2)]]).unwrap();
        assert!(t.same_set(&torus(1, &[(&[1], u(1, 2))])));
        // ±1 together need x^2 = 1.
        let t = minimal_torus(&[vec![u(0, 1)], vec![u(1, 2)]]).unwrap();
        assert!(t.same_set(&torus(1, &[(&[2], u(0, 1))])));
    }

    #[test]
    fn chart_parametrizes_components() {
        let t = torus(2, &[(&[2, 2], u(0, 1))]);
        let chart = t.solution_chart().unwrap();
        assert_eq!(chart.component_count(), BigInt::from(2));
        assert_eq!(chart.free_dim(), 1);
        for s in 0..4 {
            let x = chart.point(&[BigInt::from(s)], &[CoverPoint::generic(1)]);
            assert!(t.contains(&x));
        }
    }
}
