//! The individual checks. Each pairs a generator, which records its
//! instance as named objects, with a runner that reads only that record.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use covertorus_core::cover::{exp_point, monomial, CoverPoint, FieldPoint, FreshIndices};
use covertorus_core::lattice::Rat;
use covertorus_core::linear::{permute_tuple, LinearSet};
use covertorus_core::pqf::{is_generic, locus, log_components, rank, Cell, IrreducibleSet};
use covertorus_core::specialization::{
    amalgamate, diagonal_step, independent, is_specialization, same_qf_type, strongly_regular, Amalgamation,
    Goodness, Verdict,
};
use covertorus_core::torus::{torus_of_linear, TorusPresentation, TorusRow};

use super::gen::{self, Substitution};
use super::{Check, Hooks, VerifierConfig};
use crate::env::{Env, Object};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Ctx<T> for covertorus_core::Result<T> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{}: {}", what, e))
    }
}

fn torus<'a>(env: &'a Env, name: &str) -> Result<&'a TorusPresentation, String> {
    match env.get(name) {
        Some(Object::Torus(t)) => Ok(t),
        _ => Err(format!("instance lacks torus `{}`", name)),
    }
}

fn linear<'a>(env: &'a Env, name: &str) -> Result<&'a LinearSet, String> {
    match env.get(name) {
        Some(Object::Linear(l)) => Ok(l),
        _ => Err(format!("instance lacks linear set `{}`", name)),
    }
}

fn irreducible(env: &Env, name: &str) -> Result<IrreducibleSet, String> {
    IrreducibleSet::new(linear(env, name)?.clone()).ctx(name)
}

fn tuple<'a>(env: &'a Env, name: &str) -> Result<&'a [CoverPoint], String> {
    match env.get(name) {
        Some(Object::Tuple(v)) => Ok(v),
        _ => Err(format!("instance lacks tuple `{}`", name)),
    }
}

fn param(env: &Env, name: &str) -> Result<u32, String> {
    match env.get(name) {
        Some(Object::Param(v)) => v.to_u32().ok_or_else(|| format!("parameter `{}` out of range", name)),
        _ => Err(format!("instance lacks parameter `{}`", name)),
    }
}

fn env_of(objects: Vec<(&str, Object)>) -> Env {
    let mut env = Env::new();
    for (name, obj) in objects {
        env.insert(name, obj);
    }
    env
}

/// Torsion offset vectors in lexicographic order, at most `limit` of them.
fn torsion_classes(divisors: &[BigInt], limit: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut cur = vec![BigInt::zero(); divisors.len()];
    'outer: while out.len() < limit {
        out.push(cur.clone());
        for i in (0..cur.len()).rev() {
            cur[i] += 1;
            if cur[i] < divisors[i] {
                continue 'outer;
            }
            cur[i] = BigInt::zero();
        }
        break;
    }
    out
}

/// Up to `limit` points of `t`: every torsion class first, with the free
/// coordinates generic, constant or zero in turn.
fn sample(t: &TorusPresentation, limit: usize) -> Vec<Vec<FieldPoint>> {
    let Ok(chart) = t.solution_chart() else { return Vec::new() };
    let f = chart.free_dim();
    let choices: [Vec<CoverPoint>; 3] = [
        (0..f).map(|i| CoverPoint::generic(101 + i as u32)).collect(),
        (0..f)
            .map(|i| {
                CoverPoint::kappa_multiple(Rat::new(BigInt::from(i as i64 + 1), BigInt::from(5)))
                    + CoverPoint::constant(1).scaled(&Rat::from_integer(BigInt::from(i as i64 % 2)))
            })
            .collect(),
        vec![CoverPoint::zero(); f],
    ];
    let classes = torsion_classes(&chart.divisors, limit);
    let mut out = Vec::new();
    for free in &choices {
        for s in &classes {
            if out.len() == limit {
                return out;
            }
            out.push(chart.point(s, free));
        }
    }
    out
}

/// Generic point plus the base point shifted along each direction by a
/// constant: a sample spanning the affine hull.
fn spanning_sample(c: &IrreducibleSet) -> Vec<Vec<CoverPoint>> {
    let l = c.linear();
    let base = l.base_point().expect("irreducible sets are nonempty");
    let dirs = l.direction();
    let mut out = vec![base.clone(), c.generic_point(&FreshIndices::starting_at(200))];
    for i in 0..dirs.rows() {
        let shift = CoverPoint::kappa_multiple(Rat::new(BigInt::one(), BigInt::from(3))) + CoverPoint::constant(1);
        out.push(base.iter().zip(dirs.row(i)).map(|(b, z)| b + &shift.scaled_int(z)).collect());
    }
    out
}

/// `T` multiplied pointwise by `z`.
fn translate(t: &TorusPresentation, z: &[FieldPoint]) -> TorusPresentation {
    let rows = t
        .rows()
        .iter()
        .map(|r| {
            let shift = monomial(&r.exponents, z);
            TorusRow::new(r.exponents.clone(), exp_point(&(r.value.rep() + shift.rep())))
        })
        .collect();
    TorusPresentation::new(t.arity(), rows).expect("same arity")
}

fn pick_component(rng: &mut ChaCha8Rng, t: TorusPresentation) -> TorusPresentation {
    let mut comps = t.components().expect("generated tori are consistent");
    let j = rng.random_range(0..comps.len());
    comps.swap_remove(j)
}

fn small_arity(cfg: &VerifierConfig, rng: &mut ChaCha8Rng, cap: usize) -> usize {
    rng.random_range(1..=cfg.max_arity.min(cap).max(1))
}

// ---- tori ----

fn gen_torus_pair(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let t1 = gen::generate_torus(cfg, rng);
    let t2 = gen::generate_torus_of_arity(cfg, rng, t1.arity());
    env_of(vec![("T1", Object::Torus(t1)), ("T2", Object::Torus(t2))])
}

fn run_intersection(env: &Env, _: &Hooks) -> Outcome {
    let (t1, t2) = (torus(env, "T1")?, torus(env, "T2")?);
    let i = t1.intersect(t2).ctx("intersect")?;
    ensure!(i.same_set(&t2.intersect(t1).ctx("intersect")?), "intersection depends on argument order");
    for x in sample(&i, 20) {
        ensure!(t1.contains(&x) && t2.contains(&x), "point {:?} of the intersection misses an operand", x);
    }
    for x in sample(t1, 20).into_iter().chain(sample(t2, 20)) {
        ensure!(i.contains(&x) == (t1.contains(&x) && t2.contains(&x)), "membership of {:?} disagrees", x);
    }
    Ok(())
}

fn gen_torus(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    env_of(vec![("T", Object::Torus(gen::generate_torus(cfg, rng)))])
}

fn run_components(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let comps = t.components().ctx("components")?;
    let index = t.saturation_index().ctx("saturation index")?;
    ensure!(BigInt::from(comps.len()) == index, "{} components but saturation index {}", comps.len(), index);
    let dim = t.dim().ctx("dim")?;
    for (i, c) in comps.iter().enumerate() {
        ensure!(c.is_irreducible().ctx("irreducible")?, "component {} is reducible", i);
        ensure!(c.dim().ctx("dim")? == dim, "component {} has the wrong dimension", i);
        for d in &comps[..i] {
            ensure!(!c.intersect(d).ctx("intersect")?.is_consistent(), "components overlap");
        }
        for x in sample(c, 8) {
            ensure!(t.contains(&x), "component {} leaves the torus at {:?}", i, x);
        }
    }
    for x in sample(t, 20) {
        let hits = comps.iter().filter(|c| c.contains(&x)).count();
        ensure!(hits == 1, "{:?} lies in {} components", x, hits);
    }
    Ok(())
}

fn gen_root_instance(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 3);
    let t = gen::generate_torus_of_arity(cfg, rng, n);
    let t = pick_component(rng, t);
    let m = rng.random_range(1..=4u32);
    env_of(vec![("T", Object::Torus(t)), ("m", Object::Param(m.into()))])
}

/// The `m`-th roots built straight from the Hermite rows: one torus per
/// lift `exp((c_j + t_j κ) / m)` of the row values, `t ∈ [0, m)^k`.
fn brute_force_roots(t: &TorusPresentation, m: u32) -> Vec<TorusPresentation> {
    let nf = t.normal_form();
    let k = nf.lattice.rows();
    let divisors = vec![BigInt::from(m); k];
    let inv = Rat::new(BigInt::one(), BigInt::from(m));
    torsion_classes(&divisors, usize::MAX)
        .into_iter()
        .map(|lift| {
            let rows = (0..k)
                .map(|j| {
                    let v = nf.values[j].rep() + &CoverPoint::kappa_multiple(Rat::from_integer(lift[j].clone()));
                    TorusRow::new(nf.lattice.row(j).to_vec(), exp_point(&v.scaled(&inv)))
                })
                .collect();
            TorusPresentation::new(t.arity(), rows).expect("same arity")
        })
        .collect()
}

pub fn run_roots(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let m = param(env, "m")?;
    ensure!(t.is_irreducible().ctx("irreducible")?, "instance torus is reducible");
    let roots = t.mth_roots(m).ctx("mth_roots")?;
    let k = t.normal_form().lattice.rows() as u32;
    ensure!(roots.len() as u64 == (m as u64).pow(k), "{} roots, expected {}^{}", roots.len(), m, k);
    let forms: Vec<_> = roots.iter().map(TorusPresentation::normal_form).collect();
    for (i, r) in roots.iter().enumerate() {
        ensure!(r.is_irreducible().ctx("irreducible")?, "root {} is reducible", i);
        ensure!(r.power(m).ctx("power")?.same_set(t), "root {} does not power back to T", i);
        ensure!(!forms[..i].contains(&forms[i]), "root {} repeats an earlier root", i);
    }
    let oracle: Vec<_> = brute_force_roots(t, m).iter().map(TorusPresentation::normal_form).collect();
    ensure!(oracle.len() == forms.len(), "oracle has {} roots", oracle.len());
    for f in &oracle {
        ensure!(forms.contains(f), "oracle root {:?} is missing", f.to_presentation());
    }
    // Multiplying by an m-th root of unity permutes the roots.
    let zeta: Vec<FieldPoint> = (0..t.arity())
        .map(|i| FieldPoint::unit_root(Rat::new(BigInt::from(i as i64 + 1), BigInt::from(m))))
        .collect();
    for (i, r) in roots.iter().enumerate() {
        ensure!(forms.contains(&translate(r, &zeta).normal_form()), "translate of root {} left the list", i);
    }
    Ok(())
}

fn run_power(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let m = param(env, "m")?;
    let p = t.power(m).ctx("power")?;
    ensure!(p.is_irreducible().ctx("irreducible")?, "T^m is reducible");
    ensure!(p.dim().ctx("dim")? == t.dim().ctx("dim")?, "T^m changed dimension");
    // For saturated rows H, T^m is cut out by H with the values raised to m.
    let nf = t.normal_form();
    let mz = BigInt::from(m);
    let rows = (0..nf.lattice.rows()).map(|j| TorusRow::new(nf.lattice.row(j).to_vec(), nf.values[j].pow(&mz))).collect();
    let expect = TorusPresentation::new(t.arity(), rows).ctx("presentation")?;
    ensure!(p.same_set(&expect), "T^m differs from the row-power oracle");
    for x in sample(t, 20) {
        let y: Vec<FieldPoint> = x.iter().map(|c| c.pow(&mz)).collect();
        ensure!(p.contains(&y), "m-th power of {:?} misses T^m", x);
    }
    Ok(())
}

fn run_canonical(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let branches = t.canonical_form().ctx("canonical form")?;
    let index = t.saturation_index().ctx("saturation index")?;
    ensure!(BigInt::from(branches.len()) == index, "{} branches but saturation index {}", branches.len(), index);
    for (i, b) in branches.iter().enumerate() {
        ensure!(b.transform.determinant().abs().is_one(), "branch {} transform is not unimodular", i);
        for x in sample(&b.to_torus(), 4) {
            ensure!(t.contains(&x), "branch {} point {:?} misses T", i, x);
        }
    }
    for x in sample(t, 20) {
        let hits = branches.iter().filter(|b| b.contains(&x)).count();
        ensure!(hits == 1, "{:?} lies in {} branches", x, hits);
    }
    Ok(())
}

fn gen_single_root(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let mut env = gen_root_instance(cfg, rng);
    let j = rng.random_range(-(cfg.kernel_bound as i64)..=cfg.kernel_bound as i64);
    let t = torus(&env, "T").expect("just built").clone();
    let comps = log_components(&t, cfg.kernel_bound).expect("irreducible");
    let l = comps[(j + cfg.kernel_bound as i64) as usize % comps.len()].clone();
    env.insert("L", Object::Linear(l.into_linear()));
    env
}

fn run_single_root(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let m = param(env, "m")?;
    let l = linear(env, "L")?;
    ensure!(torus_of_linear(l).ctx("exp")?.same_set(t), "exp(L) is not T");
    let root = torus_of_linear(&l.scaled(&Rat::new(BigInt::one(), BigInt::from(m)))).ctx("exp")?;
    let hits = t.mth_roots(m).ctx("mth_roots")?.iter().filter(|r| r.same_set(&root)).count();
    ensure!(hits == 1, "exp(L/m) matches {} roots", hits);
    Ok(())
}

fn gen_linear_irreducible(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    let t = gen::generate_torus_of_arity(cfg, rng, n);
    let t = pick_component(rng, t);
    let b = rng.random_range(0..=cfg.kernel_bound.min(2));
    let comps = log_components(&t, b).expect("irreducible");
    let host = &comps[rng.random_range(0..comps.len())];
    let base = host.linear().base_point().expect("nonempty");
    let r = rng.random_range(0..=n);
    let extra = gen::linear_through(rng, n, &base, r);
    let c = host.linear().intersect(&extra).expect("same arity");
    env_of(vec![("T", Object::Torus(t)), ("C", Object::Linear(c)), ("B", Object::Param(b.into()))])
}

fn run_linear_irreducible(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let c = irreducible(env, "C")?;
    let b = param(env, "B")?;
    let comps = log_components(t, b).ctx("log components")?;
    let hosts = comps.iter().filter(|l| c.is_subset_of(l)).count();
    ensure!(hosts == 1, "C lies in {} translates", hosts);
    Ok(())
}

fn gen_torus_bound(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 3);
    let t = gen::generate_torus_of_arity(cfg, rng, n);
    let b = rng.random_range(0..=cfg.kernel_bound.min(1));
    env_of(vec![("T", Object::Torus(t)), ("B", Object::Param(b.into()))])
}

fn run_components_of_log(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let b = param(env, "B")?;
    let n = t.arity();
    let found = Cell::new(1, LinearSet::full(n), t.clone()).ctx("cell")?.components(b).ctx("components")?;
    let images: Vec<_> = found.iter().map(|c| c.exp_image().normal_form()).collect();
    let comps = t.components().ctx("components")?;
    for (i, y) in comps.iter().enumerate() {
        ensure!(images.contains(&y.normal_form()), "torus component {} is not exp of a listed component", i);
    }
    let fresh = FreshIndices::starting_at(300);
    for (i, c) in found.iter().enumerate() {
        let x = c.generic_point(&fresh);
        ensure!(t.contains_log(&x), "listed component {} leaves log T", i);
        for d in &found[..i] {
            ensure!(c.intersect(d).ctx("intersect")?.is_none(), "listed components overlap");
        }
    }
    Ok(())
}

fn run_essential(env: &Env, _: &Hooks) -> Outcome {
    let t = torus(env, "T")?;
    let b = param(env, "B")?;
    let comps: Vec<_> = t.components().ctx("components")?;
    let forms: Vec<_> = comps.iter().map(TorusPresentation::normal_form).collect();
    for y in &comps {
        for c in log_components(y, b).ctx("log components")? {
            let image = c.exp_image();
            ensure!(image.is_irreducible().ctx("irreducible")?, "exp of a log component is reducible");
            ensure!(forms.contains(&image.normal_form()), "exp of a log component is not a component of T");
        }
    }
    Ok(())
}

// ---- dimension ----

fn gen_irreducible(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 5);
    let mut l = gen::irreducible_set(rng, n);
    if rng.random_bool(0.3) {
        // Parameters outside the constants exercise the general case.
        let shift: Vec<CoverPoint> = (0..n).map(|_| gen::point(rng, 2)).collect();
        l = l.translated(&shift).expect("same arity");
    }
    env_of(vec![("C", Object::Linear(l))])
}

fn run_dimension(env: &Env, _: &Hooks) -> Outcome {
    let c = irreducible(env, "C")?;
    let affine = c.dim();
    let image = c.exp_image();
    let lattice = image.arity() - image.normal_form().lattice.rows();
    ensure!(affine == lattice, "affine dimension {} but exp-image dimension {}", affine, lattice);
    Ok(())
}

fn gen_chain(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 5);
    let base: Vec<CoverPoint> = (0..n).map(|_| gen::constant_point(rng)).collect();
    let mut objects = Vec::new();
    for i in 0..n + 2 {
        let step = if rng.random_bool(0.2) {
            // A step that may miss the chain entirely.
            gen::irreducible_set(rng, n)
        } else {
            gen::linear_through(rng, n, &base, 1)
        };
        objects.push((format!("S{}", i + 1), Object::Linear(step)));
    }
    let mut env = Env::new();
    for (name, obj) in objects {
        env.insert(name, obj);
    }
    env
}

fn run_chain(env: &Env, _: &Hooks) -> Outcome {
    let steps: Vec<&LinearSet> = env
        .objects()
        .filter_map(|(_, o)| match o {
            Object::Linear(l) => Some(l),
            _ => None,
        })
        .collect();
    let n = steps.first().map_or(0, |l| l.arity());
    let mut cur = LinearSet::full(n);
    let mut chain = vec![cur.clone()];
    for s in steps {
        let next = cur.intersect(s).ctx("intersect")?;
        if next.is_empty() || next == cur {
            continue;
        }
        ensure!(next.is_subset_of(&cur), "intersection is not contained in the chain");
        ensure!(next.dim() < cur.dim(), "proper inclusion kept dimension {:?}", cur.dim());
        chain.push(next.clone());
        cur = next;
    }
    ensure!(chain.len() <= n + 1, "descending chain of length {} in arity {}", chain.len(), n);
    Ok(())
}

fn gen_dimension_bound(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    let c1 = gen::irreducible_set(rng, n);
    let c2 = if rng.random_bool(0.75) {
        let base = c1.base_point().expect("nonempty");
        let r = rng.random_range(0..=n);
        gen::linear_through(rng, n, &base, r)
    } else {
        gen::irreducible_set(rng, n)
    };
    env_of(vec![
        ("C1", Object::Linear(c1)),
        ("C2", Object::Linear(c2)),
        ("B", Object::Param(cfg.kernel_bound.into())),
    ])
}

fn run_dimension_bound(env: &Env, hooks: &Hooks) -> Outcome {
    let c1 = irreducible(env, "C1")?;
    let c2 = irreducible(env, "C2")?;
    let b = param(env, "B")?;
    let n = c1.arity() as i64;
    let floor = c1.dim() as i64 + c2.dim() as i64 - n;
    for x in (hooks.intersect)(&c1, &c2).ctx("intersect")? {
        ensure!(x.dim() as i64 >= floor, "component of dimension {} below {}", x.dim(), floor);
        ensure!(x.is_subset_of(&c1) && x.is_subset_of(&c2), "component escapes an operand");
    }
    // The same bound on the exp side, through components of log(T1 ∩ T2).
    let (t1, t2) = (c1.exp_image(), c2.exp_image());
    let i = t1.intersect(&t2).ctx("intersect")?;
    if i.is_consistent() {
        let tfloor = t1.dim().ctx("dim")? as i64 + t2.dim().ctx("dim")? as i64 - n;
        let cell = Cell::new(1, LinearSet::full(c1.arity()), i).ctx("cell")?;
        for x in cell.components(b.min(1)).ctx("components")? {
            ensure!(x.dim() as i64 >= tfloor, "log component of dimension {} below {}", x.dim(), tfloor);
        }
    }
    Ok(())
}

// ---- axioms ----

fn gen_tuple(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    env_of(vec![("a", Object::Tuple(gen::tuple(rng, n, 3)))])
}

fn run_axiom1(env: &Env, _: &Hooks) -> Outcome {
    let a = tuple(env, "a")?;
    let c = locus(a);
    ensure!(c.linear().is_constant_definable(), "locus has non-constant parameters");
    ensure!(c.contains(a), "locus misses its tuple");
    // Renaming the generic directions fixes the locus.
    let shift = Substitution::identity(3)
        .with(1, CoverPoint::generic(51))
        .with(2, CoverPoint::generic(52))
        .with(3, CoverPoint::generic(53));
    let moved = shift.apply_all(a);
    ensure!(c.contains(&moved), "automorphic image leaves the locus");
    ensure!(locus(&moved) == c, "automorphic image has another locus");
    Ok(())
}

fn run_axiom2(env: &Env, _: &Hooks) -> Outcome {
    let a = tuple(env, "a")?;
    let c = locus(a);
    ensure!(is_generic(a, &c).ctx("generic")?, "tuple is not generic in its locus");
    ensure!(c.dim() == rank(a, &[]), "locus dimension {} differs from rank {}", c.dim(), rank(a, &[]));
    Ok(())
}

fn run_axiom3(env: &Env, _: &Hooks) -> Outcome {
    let c = irreducible(env, "C")?;
    ensure!(c.linear().is_constant_definable(), "instance set is not definable over the constants");
    let p = c.generic_point(&FreshIndices::starting_at(100));
    let q = c.generic_point(&FreshIndices::starting_at(150));
    ensure!(is_generic(&p, &c).ctx("generic")? && is_generic(&q, &c).ctx("generic")?, "generic point is not generic");
    ensure!(same_qf_type(&p, &q).ctx("type")?, "generic points have different types");
    Ok(())
}

fn gen_constant_irreducible(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    env_of(vec![("C", Object::Linear(gen::irreducible_set(rng, n)))])
}

fn gen_axiom4(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    let a = gen::tuple(rng, n, 3);
    let d = if rng.random_bool(0.7) {
        // Combinations of the locus equations, so D contains a.
        let l = locus(&a);
        let cons: Vec<_> = l.linear().constraints().map(|(q, b)| (q.to_vec(), b.clone())).collect();
        let rows = (0..rng.random_range(0..=cons.len()))
            .map(|_| {
                let mut row = vec![Rat::zero(); n];
                let mut rhs = CoverPoint::zero();
                for (q, b) in &cons {
                    let f = Rat::from_integer(rng.random_range(-2..=2i64).into());
                    for (r, x) in row.iter_mut().zip(q) {
                        *r += &f * x;
                    }
                    rhs += &b.scaled(&f);
                }
                (row, rhs)
            })
            .collect();
        LinearSet::new(n, rows)
    } else {
        gen::irreducible_set(rng, n)
    };
    env_of(vec![("a", Object::Tuple(a)), ("D", Object::Linear(d))])
}

fn run_axiom4(env: &Env, _: &Hooks) -> Outcome {
    let a = tuple(env, "a")?;
    let d = linear(env, "D")?;
    if d.is_empty() || !d.contains(a) {
        return Ok(());
    }
    let c = locus(a);
    for x in spanning_sample(&c) {
        ensure!(d.contains(&x), "sample {:?} of the locus misses D", x);
    }
    ensure!(c.linear().is_subset_of(d), "locus is not contained in D");
    Ok(())
}

fn gen_axiom5(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let la = small_arity(cfg, rng, 2);
    let lb = small_arity(cfg, rng, 2);
    env_of(vec![("a", Object::Tuple(gen::tuple(rng, la, 3))), ("b", Object::Tuple(gen::tuple(rng, lb, 3)))])
}

fn run_axiom5(env: &Env, _: &Hooks) -> Outcome {
    let a = tuple(env, "a")?;
    let b = tuple(env, "b")?;
    let ab: Vec<CoverPoint> = a.iter().chain(b).cloned().collect();
    let c1 = locus(&ab);
    let c2 = locus(a);
    ensure!(is_generic(&ab, &c1).ctx("generic")? && is_generic(a, &c2).ctx("generic")?, "tuple is not generic");
    for x in spanning_sample(&c1) {
        ensure!(c2.contains(&x[..a.len()]), "projection {:?} leaves C2", &x[..a.len()]);
    }
    Ok(())
}

fn gen_axiom6(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = small_arity(cfg, rng, 4);
    let c = gen::irreducible_set(rng, n);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let sigma = perm.iter().map(|&p| CoverPoint::kappa_multiple(Rat::from_integer(BigInt::from(p)))).collect();
    env_of(vec![("C", Object::Linear(c)), ("sigma", Object::Tuple(sigma))])
}

fn run_axiom6(env: &Env, _: &Hooks) -> Outcome {
    let c = irreducible(env, "C")?;
    let perm: Vec<usize> = tuple(env, "sigma")?
        .iter()
        .map(|p| p.kappa_coeff().to_integer().to_usize().unwrap_or(usize::MAX))
        .collect();
    let image = c.permuted(&perm).ctx("permute")?;
    ensure!(image.linear().is_constant_definable(), "permuted set needs non-constant parameters");
    let fresh = FreshIndices::starting_at(100);
    let x = c.generic_point(&fresh);
    let px = permute_tuple(&x, &perm);
    ensure!(image.contains(&px), "permuted generic point misses the permuted set");
    ensure!(is_generic(&px, &image).ctx("generic")?, "permuted generic point is not generic");
    ensure!(locus(&px) == locus(&x).permuted(&perm).ctx("permute")?, "locus does not commute with the permutation");
    let y = image.generic_point(&fresh);
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    ensure!(c.contains(&permute_tuple(&y, &inverse)), "permuted set has points outside the image");
    Ok(())
}

const REGULAR_DEPTH: usize = 3;

fn gen_axiom7(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let (la, lb, lc) = (small_arity(cfg, rng, 2), small_arity(cfg, rng, 2), small_arity(cfg, rng, 2));
    let generics = 4;
    let a = gen::generic_tuple(rng, la, generics);
    let b = gen::tuple(rng, lb, generics);
    let c = gen::tuple(rng, lc, generics);
    let mut phi = Substitution::identity(generics);
    for _ in 0..16 {
        let cand = Substitution::random(rng, generics);
        let a2 = cand.apply_all(&a);
        let drop = is_specialization(&a, &a2).ok().and_then(|s| s.rank_drop);
        if drop.is_some_and(|d| d <= 1)
            && strongly_regular(&a, &a2, REGULAR_DEPTH).ok() == Some(Verdict::True)
        {
            phi = cand;
            break;
        }
    }
    env_of(vec![
        ("a", Object::Tuple(a.clone())),
        ("a'", Object::Tuple(phi.apply_all(&a))),
        ("b", Object::Tuple(b.clone())),
        ("b'", Object::Tuple(phi.apply_all(&b))),
        ("c", Object::Tuple(c.clone())),
        ("c'", Object::Tuple(phi.apply_all(&c))),
    ])
}

fn run_axiom7(env: &Env, _: &Hooks) -> Outcome {
    let p = Amalgamation {
        a: tuple(env, "a")?,
        a_target: tuple(env, "a'")?,
        b: tuple(env, "b")?,
        b_target: tuple(env, "b'")?,
        c: tuple(env, "c")?,
        c_target: tuple(env, "c'")?,
    };
    let drop = is_specialization(p.a, p.a_target).ctx("specialization")?.rank_drop;
    ensure!(drop.is_some_and(|d| d <= 1), "instance violates the rank-drop precondition");
    let v = strongly_regular(p.a, p.a_target, REGULAR_DEPTH).ctx("strongly regular")?;
    ensure!(v == Verdict::True, "instance is not strongly regular ({:?})", v);
    let fresh = FreshIndices::after(p.a.iter().chain(p.b).chain(p.c).chain(p.a_target).chain(p.b_target).chain(p.c_target));
    let w = amalgamate(&p, &Goodness::Regular { depth: REGULAR_DEPTH }, &fresh).ctx("amalgamate")?;
    let ab: Vec<CoverPoint> = p.a.iter().chain(p.b).cloned().collect();
    let aw: Vec<CoverPoint> = p.a.iter().chain(&w).cloned().collect();
    ensure!(same_qf_type(&aw, &ab).ctx("type")?, "ab* and ab have different types");
    ensure!(independent(&w, p.c, p.a), "b* depends on c over a");
    let awc: Vec<CoverPoint> = aw.iter().chain(p.c).cloned().collect();
    let target: Vec<CoverPoint> = p.a_target.iter().chain(p.b_target).chain(p.c_target).cloned().collect();
    ensure!(is_specialization(&awc, &target).ctx("specialization")?.verdict, "ab*c does not specialize to a'b'c'");
    Ok(())
}

fn gen_axiom9(cfg: &VerifierConfig, rng: &mut ChaCha8Rng) -> Env {
    let n = rng.random_range(2..=cfg.max_arity.max(2));
    let generics = 4;
    loop {
        let a = gen::generic_tuple(rng, n, generics);
        let d = &a[1] - &a[0];
        let Some(j) = d.max_generic() else { continue };
        let c = d.coeff(covertorus_core::cover::Basis::Generic(j));
        // e_j -> e_j - d / c sends a_1 - a_0 to zero.
        let image = CoverPoint::generic(j) - d.scaled(&(Rat::one() / c));
        let merge = Substitution::identity(generics).with(j, image);
        let phi = merge.then(&Substitution::random(rng, generics));
        let b = phi.apply_all(&a);
        return env_of(vec![("a", Object::Tuple(a)), ("b", Object::Tuple(b))]);
    }
}

fn run_axiom9(env: &Env, _: &Hooks) -> Outcome {
    let a = tuple(env, "a")?;
    let b = tuple(env, "b")?;
    ensure!(a[0] != a[1] && b[0] == b[1], "instance violates the diagonal preconditions");
    ensure!(is_specialization(a, b).ctx("specialization")?.verdict, "a does not specialize to b");
    let fresh = FreshIndices::after(a.iter().chain(b));
    let mid = diagonal_step(a, b, &fresh).ctx("diagonal step")?;
    ensure!(mid[0] == mid[1], "intermediate tuple is off the diagonal");
    let first = is_specialization(a, &mid).ctx("specialization")?;
    let second = is_specialization(&mid, b).ctx("specialization")?;
    ensure!(first.verdict && second.verdict, "composed specializations fail");
    ensure!(first.rank_drop == Some(1), "rank drop {:?}", first.rank_drop);
    Ok(())
}

pub static CHECKS: &[Check] = &[
    Check { name: "torus-intersection", generate: gen_torus_pair, run: run_intersection },
    Check { name: "torus-components", generate: gen_torus, run: run_components },
    Check { name: "torus-roots", generate: gen_root_instance, run: run_roots },
    Check { name: "torus-power", generate: gen_root_instance, run: run_power },
    Check { name: "canonical-form", generate: gen_torus, run: run_canonical },
    Check { name: "single-root", generate: gen_single_root, run: run_single_root },
    Check { name: "linear-irreducible", generate: gen_linear_irreducible, run: run_linear_irreducible },
    Check { name: "log-components", generate: gen_torus_bound, run: run_components_of_log },
    Check { name: "essential-components", generate: gen_torus_bound, run: run_essential },
    Check { name: "exp-dimension", generate: gen_irreducible, run: run_dimension },
    Check { name: "descending-chains", generate: gen_chain, run: run_chain },
    Check { name: "dimension-bound", generate: gen_dimension_bound, run: run_dimension_bound },
    Check { name: "axiom1", generate: gen_tuple, run: run_axiom1 },
    Check { name: "axiom2", generate: gen_tuple, run: run_axiom2 },
    Check { name: "axiom3", generate: gen_constant_irreducible, run: run_axiom3 },
    Check { name: "axiom4", generate: gen_axiom4, run: run_axiom4 },
    Check { name: "axiom5", generate: gen_axiom5, run: run_axiom5 },
    Check { name: "axiom6", generate: gen_axiom6, run: run_axiom6 },
    Check { name: "axiom7", generate: gen_axiom7, run: run_axiom7 },
    Check { name: "axiom9", generate: gen_axiom9, run: run_axiom9 },
];
