//! The cover `0 -> Zκ -> V -> F* -> 1` over a formal rational basis.
//!
//! `V` is modelled as finitely supported rational vectors. The basis has one
//! kernel generator κ, declared constants `g_i` (logarithms of
//! multiplicatively independent algebraic numbers) and generic directions
//! `e_i` (logarithms of algebraically independent transcendentals). Under
//! this reading the pregeometry dimension of a tuple is its rational rank
//! modulo the constant subspace spanned by κ and the `g_i`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};
use core::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{Rat, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// The kernel generator κ.
    Kappa,
    Constant(u32),
    Generic(u32),
}

impl Basis {
    /// κ and declared constants span the constant subspace.
    pub fn is_constant(self) -> bool {
        !matches!(self, Basis::Generic(_))
    }
}

/// An element of `V`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverPoint {
    coords: BTreeMap<Basis, Rat>,
}

impl CoverPoint {
    pub fn zero() -> Self {
        CoverPoint::default()
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(Rat::one(), b)
    }

    pub fn term(coef: Rat, b: Basis) -> Self {
        let mut p = CoverPoint::zero();
        p.add_term(b, coef);
        p
    }

    pub fn kappa() -> Self {
        Self::basis(Basis::Kappa)
    }

    pub fn generic(i: u32) -> Self {
        Self::basis(Basis::Generic(i))
    }

    pub fn constant(i: u32) -> Self {
        Self::basis(Basis::Constant(i))
    }

    /// `q κ`
    pub fn kappa_multiple(q: Rat) -> Self {
        Self::term(q, Basis::Kappa)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Basis, Rat)>) -> Self {
        let mut p = CoverPoint::zero();
        for (b, q) in terms {
            p.add_term(b, q);
        }
        p
    }

    pub fn add_term(&mut self, b: Basis, q: Rat) {
        if q.is_zero() {
            return;
        }
        let slot = self.coords.entry(b).or_insert_with(Rat::zero);
        *slot += q;
        if slot.is_zero() {
            self.coords.remove(&b);
        }
    }

    pub fn coeff(&self, b: Basis) -> Rat {
        self.coords.get(&b).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn kappa_coeff(&self) -> Rat {
        self.coeff(Basis::Kappa)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Rat)> + '_ {
        self.coords.iter().map(|(b, q)| (*b, q))
    }

    pub fn support(&self) -> impl Iterator<Item = Basis> + '_ {
        self.coords.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Lies in the span of κ and the declared constants.
    pub fn is_constant(&self) -> bool {
        self.support().all(Basis::is_constant)
    }

    /// Projection onto the generic directions.
    pub fn generic_part(&self) -> CoverPoint {
        CoverPoint { coords: self.coords.iter().filter(|(b, _)| !b.is_constant()).map(|(b, q)| (*b, q.clone())).collect() }
    }

    /// Largest generic index in the support.
    pub fn max_generic(&self) -> Option<u32> {
        self.support()
            .filter_map(|b| match b {
                Basis::Generic(i) => Some(i),
                _ => None,
            })
            .max()
    }

    pub fn scaled(&self, q: &Rat) -> CoverPoint {
        if q.is_zero() {
            return CoverPoint::zero();
        }
        CoverPoint { coords: self.coords.iter().map(|(b, c)| (*b, c * q)).collect() }
    }

    pub fn scaled_int(&self, z: &BigInt) -> CoverPoint {
        self.scaled(&Rat::from_integer(z.clone()))
    }

    /// Belongs to the kernel `Zκ`.
    pub fn in_kernel(&self) -> bool {
        self.coords.keys().all(|b| *b == Basis::Kappa) && self.kappa_coeff().is_integer()
    }

    /// Copy with the κ-coordinate reduced into `[0, 1)`.
    pub fn reduce_mod_kernel(&self) -> CoverPoint {
        let mut out = self.clone();
        let k = self.kappa_coeff();
        let frac = &k - k.floor();
        out.coords.remove(&Basis::Kappa);
        out.add_term(Basis::Kappa, frac);
        out
    }

    /// `Σ z_i p_i`
    pub fn integer_combination(coeffs: &[BigInt], points: &[CoverPoint]) -> CoverPoint {
        assert_eq!(coeffs.len(), points.len());
        let mut acc = CoverPoint::zero();
        for (z, p) in coeffs.iter().zip(points) {
            if !z.is_zero() {
                acc += &p.scaled_int(z);
            }
        }
        acc
    }

    /// `Σ q_i p_i`
    pub fn rational_combination(coeffs: &[Rat], points: &[CoverPoint]) -> CoverPoint {
        assert_eq!(coeffs.len(), points.len());
        let mut acc = CoverPoint::zero();
        for (q, p) in coeffs.iter().zip(points) {
            if !q.is_zero() {
                acc += &p.scaled(q);
            }
        }
        acc
    }
}

impl AddAssign<&CoverPoint> for CoverPoint {
    fn add_assign(&mut self, rhs: &CoverPoint) {
        for (b, q) in &rhs.coords {
            self.add_term(*b, q.clone());
        }
    }
}

impl Add<&CoverPoint> for &CoverPoint {
    type Output = CoverPoint;
    fn add(self, rhs: &CoverPoint) -> CoverPoint {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoverPoint {
    type Output = CoverPoint;
    fn add(mut self, rhs: CoverPoint) -> CoverPoint {
        self += &rhs;
        self
    }
}

impl Neg for &CoverPoint {
    type Output = CoverPoint;
    fn neg(self) -> CoverPoint {
        CoverPoint { coords: self.coords.iter().map(|(b, q)| (*b, -q)).collect() }
    }
}

impl Neg for CoverPoint {
    type Output = CoverPoint;
    fn neg(self) -> CoverPoint {
        -&self
    }
}

impl Sub<&CoverPoint> for &CoverPoint {
    type Output = CoverPoint;
    fn sub(self, rhs: &CoverPoint) -> CoverPoint {
        self + &(-rhs)
    }
}

impl Sub for CoverPoint {
    type Output = CoverPoint;
    fn sub(self, rhs: CoverPoint) -> CoverPoint {
        &self - &rhs
    }
}

impl RatVector for CoverPoint {
    fn zero_vector() -> Self {
        CoverPoint::zero()
    }
    fn is_zero_vector(&self) -> bool {
        self.coords.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, factor: &Rat) {
        *self += &other.scaled(factor);
    }
    fn scale(&mut self, factor: &Rat) {
        *self = self.scaled(factor);
    }
}

/// Writes `q*atom` terms joined by ` + ` / ` - `, naming constants through
/// `name_constant`.
pub fn write_point(
    f: &mut dyn fmt::Write,
    p: &CoverPoint,
    name_constant: &dyn Fn(u32) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (b, q)) in p.terms().enumerate() {
        let neg = q.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let mag = q.abs();
        if !mag.is_one() {
            write!(f, "{}*", mag)?;
        }
        match b {
            Basis::Kappa => f.write_str("k")?,
            Basis::Generic(i) => write!(f, "e{}", i)?,
            Basis::Constant(i) => f.write_str(&name_constant(i))?,
        }
    }
    Ok(())
}

pub fn default_constant_name(i: u32) -> String {
    alloc::format!("g{}", i)
}

impl fmt::Display for CoverPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_point(f, self, &default_constant_name)
    }
}

impl fmt::Debug for CoverPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `F* = V / Zκ`, held by its representative with κ-coordinate
/// in `[0, 1)`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldPoint {
    rep: CoverPoint,
}

impl FieldPoint {
    /// The unit `1 = exp(0)`.
    pub fn one() -> Self {
        FieldPoint::default()
    }

    /// `exp(q κ)`, a root of unity.
    pub fn unit_root(q: Rat) -> Self {
        exp_point(&CoverPoint::kappa_multiple(q))
    }

    pub fn rep(&self) -> &CoverPoint {
        &self.rep
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn inv(&self) -> FieldPoint {
        exp_point(&-&self.rep)
    }

    pub fn pow(&self, z: &BigInt) -> FieldPoint {
        exp_point(&self.rep.scaled_int(z))
    }

    pub fn div(&self, other: &FieldPoint) -> FieldPoint {
        exp_point(&(&self.rep - &other.rep))
    }
}

impl fmt::Debug for FieldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.rep)
    }
}

pub fn exp_point(v: &CoverPoint) -> FieldPoint {
    FieldPoint { rep: v.reduce_mod_kernel() }
}

pub fn mul_field(c: &FieldPoint, d: &FieldPoint) -> FieldPoint {
    exp_point(&(&c.rep + &d.rep))
}

/// `∏ x_i^{z_i}`
pub fn monomial(exponents: &[BigInt], xs: &[FieldPoint]) -> FieldPoint {
    let reps: Vec<CoverPoint> = xs.iter().map(|x| x.rep.clone()).collect();
    exp_point(&CoverPoint::integer_combination(exponents, &reps))
}

/// The `m` distinct `m`-th roots `exp((rep c + jκ)/m)`, `j = 0..m`.
pub fn field_roots(c: &FieldPoint, m: u32) -> Vec<FieldPoint> {
    assert!(m >= 1, "root order must be positive");
    let inv = Rat::new(BigInt::one(), BigInt::from(m));
    (0..m)
        .map(|j| {
            let shifted = &c.rep + &CoverPoint::kappa_multiple(Rat::from_integer(BigInt::from(j)));
            exp_point(&shifted.scaled(&inv))
        })
        .collect()
}

/// Multiplicative order when `c` is torsion.
pub fn is_root_of_unity(c: &FieldPoint) -> Option<BigInt> {
    if c.rep.support().any(|b| b != Basis::Kappa) {
        return None;
    }
    Some(c.rep.kappa_coeff().denom().clone())
}

/// Monotone allocator of generic basis indices. Safe to share; concurrent
/// callers always receive distinct indices.
#[derive(Debug)]
pub struct FreshIndices {
    next: AtomicU32,
}

impl FreshIndices {
    pub fn starting_at(first: u32) -> Self {
        FreshIndices { next: AtomicU32::new(first) }
    }

    /// Starts after every generic index used by `points`.
    pub fn after<'a>(points: impl IntoIterator<Item = &'a CoverPoint>) -> Self {
        let max = points.into_iter().filter_map(CoverPoint::max_generic).max();
        Self::starting_at(max.map_or(1, |m| m + 1))
    }

    pub fn next_index(&self) -> u32 {
        self.next.fetch_add(1, Ordering::Relaxed)
    }

    pub fn next_generic(&self) -> CoverPoint {
        CoverPoint::generic(self.next_index())
    }

    pub fn peek(&self) -> u32 {
        self.next.load(Ordering::Relaxed)
    }
}

/// Names of declared constants. κ is implicit; generic directions are
/// always anonymous `e_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisRegistry {
    names: BTreeMap<u32, String>,
    by_name: BTreeMap<String, u32>,
}

impl BasisRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `name` as the constant with index `index`. Returns `false`
    /// if the name or index is already taken by a different declaration.
    pub fn declare(&mut self, name: &str, index: u32) -> bool {
        match (self.by_name.get(name), self.names.get(&index)) {
            (None, None) => {
                self.by_name.insert(name.into(), index);
                self.names.insert(index, name.into());
                true
            }
            (Some(&i), Some(n)) => i == index && n == name,
            _ => false,
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Basis> {
        self.by_name.get(name).map(|&i| Basis::Constant(i))
    }

    pub fn name_of(&self, index: u32) -> String {
        self.names.get(&index).cloned().unwrap_or_else(|| default_constant_name(index))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.names.keys().next_back().copied()
    }
}

/// The largest denominator-free multiple: lcm of the denominators of `p`.
pub fn denominator_lcm(p: &CoverPoint) -> BigInt {
    p.terms().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn exp_normalizes_kappa() {
        assert!(exp_point(&CoverPoint::zero()).is_one());
        assert!(exp_point(&CoverPoint::kappa()).is_one());
        let v = CoverPoint::kappa_multiple(r(3, 2)) + CoverPoint::generic(1);
        let expect = CoverPoint::kappa_multiple(r(1, 2)) + CoverPoint::generic(1);
        assert_eq!(exp_point(&v).rep(), &expect);
        let neg = CoverPoint::kappa_multiple(r(-1, 3));
        assert_eq!(exp_point(&neg).rep(), &CoverPoint::kappa_multiple(r(2, 3)));
    }

    #[test]
    fn field_multiplication() {
        let minus_one = FieldPoint::unit_root(r(1, 2));
        assert!(mul_field(&minus_one, &minus_one).is_one());
        let c = exp_point(&CoverPoint::generic(1));
        assert_eq!(mul_field(&c, &FieldPoint::one()), c);
        let d = exp_point(&CoverPoint::generic(2));
        assert_eq!(mul_field(&c, &d), exp_point(&(CoverPoint::generic(1) + CoverPoint::generic(2))));
    }

    #[test]
    fn roots_of_points() {
        let sq = field_roots(&FieldPoint::one(), 2);
        assert_eq!(sq, alloc::vec![FieldPoint::one(), FieldPoint::unit_root(r(1, 2))]);
        assert_eq!(field_roots(&FieldPoint::one(), 1), alloc::vec![FieldPoint::one()]);

        let c = exp_point(&CoverPoint::generic(1));
        let roots = field_roots(&c, 3);
        assert_eq!(roots.len(), 3);
        let third = CoverPoint::generic(1).scaled(&r(1, 3));
        assert_eq!(roots[1], exp_point(&(&third + &CoverPoint::kappa_multiple(r(1, 3)))));
        for x in &roots {
            assert_eq!(x.pow(&BigInt::from(3)), c);
        }
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(is_root_of_unity(&FieldPoint::unit_root(r(1, 2))), Some(BigInt::from(2)));
        assert_eq!(is_root_of_unity(&FieldPoint::unit_root(r(2, 3))), Some(BigInt::from(3)));
        assert_eq!(is_root_of_unity(&FieldPoint::one()), Some(BigInt::from(1)));
        assert_eq!(is_root_of_unity(&exp_point(&CoverPoint::generic(1))), None);
    }

    #[test]
    fn display_matches_point_syntax() {
        let p = CoverPoint::kappa_multiple(r(1, 2)) + CoverPoint::generic(1) - CoverPoint::constant(1).scaled(&r(2, 3));
        assert_eq!(alloc::format!("{}", p), "1/2*k - 2/3*g1 + e1");
        assert_eq!(alloc::format!("{}", -CoverPoint::generic(2)), "-e2");
        assert_eq!(alloc::format!("{}", CoverPoint::zero()), "0");
    }

    #[test]
    fn fresh_indices_are_monotone() {
        let pts = [CoverPoint::generic(4), CoverPoint::kappa()];
        let fresh = FreshIndices::after(pts.iter());
        assert_eq!(fresh.next_index(), 5);
        assert_eq!(fresh.next_index(), 6);
        assert_eq!(FreshIndices::after(core::iter::empty()).next_index(), 1);
    }

    #[test]
    fn registry_names() {
        let mut reg = BasisRegistry::new();
        assert!(reg.declare("alpha", 3));
        assert!(!reg.declare("beta", 3));
        assert!(reg.declare("alpha", 3));
        assert_eq!(reg.lookup("alpha"), Some(Basis::Constant(3)));
        assert_eq!(reg.name_of(3), "alpha");
        assert_eq!(reg.name_of(1), "g1");
    }
}
