//! Seeded instance generators. Every draw comes from the trial's own
//! generator, in the order the code below makes them.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use covertorus_core::cover::{exp_point, monomial, Basis, CoverPoint, FieldPoint};
use covertorus_core::lattice::{IntMatrix, Rat};
use covertorus_core::linear::LinearSet;
use covertorus_core::torus::{TorusPresentation, TorusRow};

use super::VerifierConfig;

/// Generated tori with more components than this lose trailing rows.
pub const MAX_COMPONENTS: u32 = 36;

pub fn small_rat<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rat {
    Rat::new(rng.random_range(-span..=span).into(), rng.random_range(1..=max_den).into())
}

/// `q κ + c g_1`, occasionally with a second constant.
pub fn constant_point<R: Rng>(rng: &mut R) -> CoverPoint {
    let mut p = CoverPoint::kappa_multiple(small_rat(rng, 3, 4));
    p += &CoverPoint::constant(1).scaled(&Rat::from_integer(rng.random_range(-1..=1).into()));
    if rng.random_bool(0.2) {
        p += &CoverPoint::constant(2).scaled(&small_rat(rng, 2, 2));
    }
    p
}

/// A constant plus a small combination of `e_1 .. e_generics`.
pub fn point<R: Rng>(rng: &mut R, generics: u32) -> CoverPoint {
    let mut p = constant_point(rng);
    for i in 1..=generics {
        if rng.random_bool(0.6) {
            p += &CoverPoint::generic(i).scaled(&small_rat(rng, 2, 2));
        }
    }
    p
}

pub fn tuple<R: Rng>(rng: &mut R, len: usize, generics: u32) -> Vec<CoverPoint> {
    (0..len).map(|_| point(rng, generics)).collect()
}

/// Tuples drawn mostly from independent generic coordinates, so that
/// specializations have room to drop rank.
pub fn generic_tuple<R: Rng>(rng: &mut R, len: usize, generics: u32) -> Vec<CoverPoint> {
    (0..len)
        .map(|i| {
            if rng.random_bool(0.7) {
                let mut p = CoverPoint::generic((i as u32 % generics) + 1);
                if rng.random_bool(0.3) {
                    p += &constant_point(rng);
                }
                p
            } else {
                point(rng, generics)
            }
        })
        .collect()
}

fn int_row<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect()
}

/// A consistent presentation: values are monomials of one point of
/// `(F*)^n`. Some rows are scaled up to produce reducible tori.
pub fn generate_torus<R: Rng>(cfg: &VerifierConfig, rng: &mut R) -> TorusPresentation {
    let n = rng.random_range(1..=cfg.max_arity.max(1));
    generate_torus_of_arity(cfg, rng, n)
}

pub fn generate_torus_of_arity<R: Rng>(cfg: &VerifierConfig, rng: &mut R, n: usize) -> TorusPresentation {
    let e = cfg.max_exponent.max(1) as i64;
    let x: Vec<FieldPoint> = (0..n).map(|_| exp_point(&constant_point(rng))).collect();
    let rows = rng.random_range(0..=n);
    let mut out = Vec::new();
    for _ in 0..rows {
        let mut z = int_row(rng, n, e);
        let f = rng.random_range(1..=3i64);
        if f > 1 && rng.random_bool(0.3) && z.iter().all(|v| (v * f).abs() <= BigInt::from(e)) {
            z.iter_mut().for_each(|v| *v *= f);
        }
        let value = monomial(&z, &x);
        out.push(TorusRow::new(z, value));
    }
    // Keep component counts small enough to enumerate.
    loop {
        let t = TorusPresentation::new(n, out.clone()).expect("rows have the drawn arity");
        if t.saturation_index().expect("consistent by construction") <= BigInt::from(MAX_COMPONENTS) {
            return t;
        }
        out.pop();
    }
}

/// A nonempty linear set through a constant point, so definable over the
/// constants alone.
pub fn irreducible_set<R: Rng>(rng: &mut R, n: usize) -> LinearSet {
    let base: Vec<CoverPoint> = (0..n).map(|_| constant_point(rng)).collect();
    let r = rng.random_range(0..=n);
    linear_through(rng, n, &base, r)
}

/// `r` random integer constraints through `base`.
pub fn linear_through<R: Rng>(rng: &mut R, n: usize, base: &[CoverPoint], r: usize) -> LinearSet {
    let rows: Vec<Vec<BigInt>> = (0..r).map(|_| int_row(rng, n, 3)).collect();
    let m = IntMatrix::from_rows(n, rows);
    let rhs = (0..m.rows()).map(|i| CoverPoint::integer_combination(m.row(i), base)).collect();
    LinearSet::from_integer_rows(n, &m, rhs)
}

/// A `Q`-linear map on `V` fixing the constants, given by the images of
/// `e_1 .. e_generics`.
#[derive(Clone, Debug)]
pub struct Substitution {
    images: Vec<CoverPoint>,
}

impl Substitution {
    pub fn random<R: Rng>(rng: &mut R, generics: u32) -> Self {
        let images = (1..=generics)
            .map(|i| {
                if rng.random_bool(0.5) {
                    CoverPoint::generic(i)
                } else {
                    point(rng, generics)
                }
            })
            .collect();
        Substitution { images }
    }

    pub fn identity(generics: u32) -> Self {
        Substitution { images: (1..=generics).map(CoverPoint::generic).collect() }
    }

    /// Sends `e_j` to `image`.
    pub fn with(mut self, j: u32, image: CoverPoint) -> Self {
        self.images[j as usize - 1] = image;
        self
    }

    pub fn apply(&self, p: &CoverPoint) -> CoverPoint {
        let mut out = CoverPoint::zero();
        for (b, q) in p.terms() {
            match b {
                Basis::Generic(i) if (i as usize) >= 1 && (i as usize) <= self.images.len() => {
                    out += &self.images[i as usize - 1].scaled(q)
                }
                _ => out += &CoverPoint::term(q.clone(), b),
            }
        }
        out
    }

    pub fn apply_all(&self, v: &[CoverPoint]) -> Vec<CoverPoint> {
        v.iter().map(|p| self.apply(p)).collect()
    }

    pub fn then(&self, other: &Substitution) -> Substitution {
        Substitution { images: self.images.iter().map(|p| other.apply(p)).collect() }
    }
}
