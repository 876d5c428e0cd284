//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use mvalg::composed::ComponentFamily;
use mvalg::graded::{Element, GradedBasis};
use mvalg::mvcat::MVAlgebra;
use mvalg::scalars::{rat, Ring, Scalar};
use mvalg::symalg::SymAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generators(prefix: &str, degrees: &[i32]) -> Arc<GradedBasis> {
    Arc::new(
        GradedBasis::new(
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("{prefix}{}", i + 1), d)),
        )
        .unwrap(),
    )
}

pub fn random_degrees(rng: &mut ChaCha8Rng, max_dim: usize, lo: i32, hi: i32) -> Vec<i32> {
    let dim = rng.gen_range(1..=max_dim);
    (0..dim).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// `S^{≤d}` on the given generators with `Δ = 0`.
pub fn free(gens: &Arc<GradedBasis>, d: usize, ring: Ring) -> Arc<MVAlgebra> {
    Arc::new(MVAlgebra::symmetric_trivial(SymAlgebra::new(gens.clone(), d, ring).unwrap()).unwrap())
}

/// A small nonzero rational.
pub fn small_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    loop {
        let p = rng.gen_range(-3i64..=3);
        if p != 0 {
            return rat(p, rng.gen_range(1i64..=2));
        }
    }
}

/// A random scalar whose terms all have `h`-exponent at least `min_hbar`
/// (and, with an auxiliary parameter, arbitrary `l`-exponents).
pub fn random_scalar(rng: &mut ChaCha8Rng, ring: Ring, min_hbar: i32) -> Scalar {
    let mut s = Scalar::zero(ring);
    let max_h = if ring.has_hbar() {
        ring.hbar_order() as i32 - 1
    } else {
        0
    };
    let max_l = ring.aux_order().saturating_sub(1);
    for _ in 0..rng.gen_range(1..=2) {
        if min_hbar > max_h {
            break;
        }
        let i = rng.gen_range(min_hbar..=max_h);
        let j = if max_l > 0 {
            rng.gen_range(0..=max_l)
        } else {
            0
        };
        if let Ok(t) = Scalar::monomial(ring, i, j, small_rational(rng)) {
            s = s.add(&t).unwrap();
        }
    }
    s
}

/// Which `h`-divisibility a random family satisfies.
#[derive(Clone, Copy, Debug)]
pub enum Shape {
    /// `h^{max(0, m−n)}`, and `h` on `f(1)`: word length grows only with `h`.
    Graded,
    /// `h^{n−1}` on inputs of length `n ≥ 1`, and `h` on `f(1)`.
    Ibl,
    /// `h^{m−1}` on outputs of length `m`, and `h` on `f(1)`.
    MunsterSachs,
}

fn min_exponent(shape: Shape, n: usize, m: usize) -> i32 {
    let base = match shape {
        Shape::Graded => m.saturating_sub(n) as i32,
        Shape::Ibl => n.saturating_sub(1) as i32,
        Shape::MunsterSachs => m.saturating_sub(1) as i32,
    };
    if n == 0 {
        base.max(1)
    } else {
        base
    }
}

/// A random degree-0 family `S(U) → S(U′)` with the given shape; each
/// monomial pair carries a term with probability `density`.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    source: &Arc<MVAlgebra>,
    target: &Arc<MVAlgebra>,
    shape: Shape,
    density: f64,
) -> ComponentFamily {
    let ring = source.ring();
    let (s, t) = (source.sym().unwrap(), target.sym().unwrap());
    let mut images = vec![Element::zero(ring); s.dim()];
    for (x, image) in images.iter_mut().enumerate() {
        for y in 0..t.dim() {
            if source.degree(x) != target.degree(y) || !rng.gen_bool(density) {
                continue;
            }
            let c = random_scalar(
                rng,
                ring,
                min_exponent(shape, s.word_length(x), t.word_length(y)),
            );
            image.add_term(y, &c);
        }
    }
    let f = mvalg::mvcat::ConvMap::from_images(source.clone(), target.clone(), images).unwrap();
    ComponentFamily::components(&f).unwrap()
}

/// Three generator sets drawn from a common pool of degrees, so that
/// degree-0 maps between their symmetric algebras are plentiful.
pub fn related_generators(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    lo: i32,
    hi: i32,
) -> [Arc<GradedBasis>; 3] {
    let pool: Vec<i32> = (0..max_dim).map(|_| rng.gen_range(lo..=hi)).collect();
    let mut pick = |prefix: &str| {
        let dim = rng.gen_range(1..=max_dim);
        let degs: Vec<i32> = (0..dim)
            .map(|_| pool[rng.gen_range(0..pool.len())])
            .collect();
        generators(prefix, &degs)
    };
    [pick("a"), pick("b"), pick("c")]
}

/// `S^{≤d}(x, ξ, p)` with `|x| = 0`, `|ξ| = −1`, `|p| = 1` and
/// `Δ = p ∂_x + c ∂_x ∂_ξ`, where `c` is `h` or, if `hbar_on_second` is
/// false, `1`.
pub fn bv_example(ring: Ring, d: usize, hbar_on_second: bool) -> Arc<MVAlgebra> {
    let sym =
        SymAlgebra::new(generators_named(&[("x", 0), ("xi", -1), ("p", 1)]), d, ring).unwrap();
    let (dx, dxi) = (sym.derivative(0), sym.derivative(1));
    let second = dx.compose(&dxi).unwrap();
    let p = Element::basis(ring, sym.generator_monomial(2));
    let c = if hbar_on_second {
        Scalar::hbar(ring)
    } else {
        Scalar::one(ring)
    };
    let images = (0..sym.dim())
        .map(|m| {
            sym.sym_product(&p, dx.image(m))
                .unwrap()
                .add(&second.image(m).scale(&c).unwrap())
                .unwrap()
        })
        .collect();
    let delta =
        mvalg::graded::LinMap::new(sym.basis().clone(), sym.basis().clone(), ring, images).unwrap();
    Arc::new(MVAlgebra::symmetric(sym, delta).unwrap())
}

pub fn generators_named(named: &[(&str, i32)]) -> Arc<GradedBasis> {
    Arc::new(GradedBasis::new(named.iter().map(|&(n, d)| (n.to_string(), d))).unwrap())
}

/// The word `names` as an element of a symmetric algebra.
pub fn word(a: &MVAlgebra, names: &[&str]) -> Element {
    let sym = a.sym().unwrap();
    let letters: Vec<usize> = names
        .iter()
        .map(|n| sym.generators().index(n).unwrap())
        .collect();
    let (sign, m) = sym.word(&letters).unwrap().unwrap();
    Element::basis(a.ring(), m)
        .scale(&Scalar::int(a.ring(), sign as i64))
        .unwrap()
}

/// Unit plus up to `max_dim − 1` atoms of degree 0 or 1, trivial product
/// and coproduct, and a random `Δ` from degree 0 to degree 1.
pub fn random_supertrivial(rng: &mut ChaCha8Rng, max_dim: usize, ring: Ring) -> Arc<MVAlgebra> {
    let extra = rng.gen_range(1..max_dim);
    let mut degs = vec![0];
    degs.extend((0..extra).map(|_| rng.gen_range(0..=1)));
    let names: Vec<(String, i32)> = degs
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            (
                if i == 0 {
                    "1".to_string()
                } else {
                    format!("v{i}")
                },
                d,
            )
        })
        .collect();
    let basis = Arc::new(GradedBasis::new(names).unwrap());
    let mut delta = mvalg::graded::LinMap::zero(basis.clone(), basis.clone(), ring);
    for a in (1..degs.len()).filter(|&a| degs[a] == 0) {
        let mut img = Element::zero(ring);
        for b in (1..degs.len()).filter(|&b| degs[b] == 1) {
            if rng.gen_bool(0.6) {
                img.add_term(b, &random_scalar(rng, ring, 0));
            }
        }
        delta.set_image(a, img);
    }
    let eps = mvalg::mvcat::standard_counit(degs.len(), ring);
    Arc::new(mvalg::mvcat::make_supertrivial(basis, ring, eps, delta).unwrap())
}

/// A random element of the maximal ideal supported on degree-0 atoms.
pub fn random_ideal_element(rng: &mut ChaCha8Rng, a: &MVAlgebra) -> Element {
    let ring = a.ring();
    let monomials = ring.ideal_monomials();
    let mut x = Element::zero(ring);
    for b in (0..a.dim()).filter(|&b| a.degree(b) == 0) {
        if rng.gen_bool(0.7) {
            let (i, j) = monomials[rng.gen_range(0..monomials.len())];
            x.add_term(
                b,
                &Scalar::monomial(ring, i, j, small_rational(rng)).unwrap(),
            );
        }
    }
    x
}

/// A random combination of the given directions with small coefficients.
pub fn small_coefficients(rng: &mut ChaCha8Rng, n: usize) -> Vec<num_rational::BigRational> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.3) {
                rat(0, 1)
            } else {
                small_rational(rng)
            }
        })
        .collect()
}
