mod common;

use std::sync::Arc;

use common::{free, generators, random_scalar, rng, small_rational};
use mvalg::composed::{psi, psi_by_connectivity};
use mvalg::graded::{koszul_sign, Element, GradedBasis, LinMap, Tensor};
use mvalg::mvcat::{conv_unit, convolution, exp_map, log_map, ConvMap, MVAlgebra};
use mvalg::scalars::{rat, Ring, Scalar};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn rings() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::rationals()),
        (1u32..=4).prop_map(Ring::hbar),
        (1u32..=3, 1u32..=3).prop_map(|(h, l)| Ring::hbar_aux(h, l))
    ]
}

fn scalar(ring: Ring) -> impl Strategy<Value = Scalar> {
    let (h, l) = (ring.hbar_order() as i32, ring.aux_order());
    prop::collection::vec((0..h, 0..l, -5i64..=5, 1i64..=3), 0..4).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(Scalar::zero(ring), |acc, (i, j, p, q)| {
                acc.add(&Scalar::monomial(ring, i, j, rat(p, q)).unwrap())
                    .unwrap()
            })
    })
}

fn three_scalars() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    rings().prop_flat_map(|r| (scalar(r), scalar(r), scalar(r)))
}

proptest! {
    #[test]
    fn scalars_form_a_commutative_ring((a, b, c) in three_scalars()) {
        let one = Scalar::one(a.ring());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exponential_turns_sums_into_products((a, b, _) in three_scalars()) {
        let (a, b) = (a.sub(&a.mod_maximal_ideal()).unwrap(), b.sub(&b.mod_maximal_ideal()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().exp().unwrap(), a.exp().unwrap().mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn products_of_poles_are_associative(terms in prop::collection::vec((-1i32..=0, 0u32..3, -4i64..=4), 3..=3)) {
        let ring = Ring::laurent_aux(2, 3, 3);
        let s: Vec<Scalar> = terms.iter().map(|&(i, j, p)| Scalar::monomial(ring, i, j, rat(p, 1)).unwrap().add(&Scalar::one(ring)).unwrap()).collect();
        prop_assert_eq!(s[0].mul(&s[1]).unwrap().mul(&s[2]).unwrap(), s[0].mul(&s[1].mul(&s[2]).unwrap()).unwrap());
    }

    #[test]
    fn koszul_sign_matches_adjacent_transpositions(
        (perm, degrees) in (1usize..=7).prop_flat_map(|n| (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(-3i32..=3, n)))
    ) {
        // Sort the arrangement by adjacent swaps, flipping for each odd pair passed.
        let mut arrangement = perm.clone();
        let mut sign = 1;
        for end in (1..arrangement.len()).rev() {
            for p in 0..end {
                if arrangement[p] > arrangement[p + 1] {
                    if degrees[arrangement[p]] % 2 != 0 && degrees[arrangement[p + 1]] % 2 != 0 {
                        sign = -sign;
                    }
                    arrangement.swap(p, p + 1);
                }
            }
        }
        prop_assert_eq!(koszul_sign(&perm, &degrees), sign);
    }
}

fn random_algebra(r: &mut ChaCha8Rng, d: usize, ring: Ring) -> Arc<MVAlgebra> {
    let degs = common::random_degrees(r, 3, -2, 2);
    free(&generators("u", &degs), d, ring)
}

fn random_monomial(r: &mut ChaCha8Rng, a: &MVAlgebra, len: usize) -> Option<usize> {
    let sym = a.sym().unwrap();
    let choices: Vec<usize> = (0..a.dim())
        .filter(|&m| sym.word_length(m) == len)
        .collect();
    (!choices.is_empty()).then(|| choices[r.gen_range(0..choices.len())])
}

fn positive_composition(r: &mut ChaCha8Rng, total: usize) -> Vec<usize> {
    let mut parts = vec![1];
    for _ in 1..total {
        if r.gen_bool(0.5) {
            parts.push(1);
        } else {
            *parts.last_mut().unwrap() += 1;
        }
    }
    parts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_product_is_associative_and_graded_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_algebra(&mut r, 6, Ring::rationals());
        let picks: Vec<Option<usize>> = (0..3).map(|_| { let len = r.gen_range(0..=2); random_monomial(&mut r, &a, len) }).collect();
        let [Some(x), Some(y), Some(z)] = picks[..] else { return Ok(()) };
        let (x, y, z) = (Element::basis(a.ring(), x), Element::basis(a.ring(), y), Element::basis(a.ring(), z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap(), a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap());
        let (dx, dy) = (a.degree(*x.keys().next().unwrap()), a.degree(*y.keys().next().unwrap()));
        let swapped = a.mul(&y, &x).unwrap();
        prop_assert_eq!(a.mul(&x, &y).unwrap(), if dx * dy % 2 != 0 { swapped.neg() } else { swapped });
    }

    #[test]
    fn symmetric_algebras_are_bialgebras(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_algebra(&mut r, 3, Ring::rationals());
        prop_assert!(a.is_bialgebra().unwrap());
        let sym = a.sym().unwrap();
        for m in 0..a.dim() {
            let x = Element::basis(a.ring(), m);
            prop_assert_eq!(sym.iterated_diagonal(&x, 3).unwrap(), sym.iterated_diagonal_oracle(&x, 3).unwrap());
        }
    }

    #[test]
    fn psi_is_the_diagonal_of_the_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let total = r.gen_range(1..=5);
        let a = random_algebra(&mut r, total, Ring::rationals());
        let sym = a.sym().unwrap();
        let (lower, upper) = (positive_composition(&mut r, total), positive_composition(&mut r, total));
        let mut input = Tensor::zero(a.ring());
        for _ in 0..3 {
            let key: Option<Vec<usize>> = lower.iter().map(|&j| random_monomial(&mut r, &a, j)).collect();
            if let Some(key) = key {
                input.add_term(key, &Scalar::rational(a.ring(), small_rational(&mut r)));
            }
        }
        let expected = sym
            .iterated_diagonal(&sym.multiply_out(&input).unwrap(), upper.len())
            .unwrap()
            .filtered(|key| key.iter().zip(&upper).all(|(&m, &s)| sym.word_length(m) == s));
        let full = psi(sym, &lower, &upper, &input).unwrap();
        prop_assert_eq!(&full, &expected);
        let mut by_components = Tensor::zero(a.ring());
        for c in 1..=lower.len() + upper.len() {
            by_components.add_assign(&psi_by_connectivity(sym, &lower, &upper, c, &input).unwrap()).unwrap();
        }
        prop_assert_eq!(by_components, full);
    }

    #[test]
    fn tensor_products_satisfy_the_interchange_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = Ring::hbar(2);
        let bases: Vec<Arc<GradedBasis>> = (0..3).map(|i| {
            let degs = common::random_degrees(&mut r, 3, -1, 1);
            generators(&format!("b{i}_"), &degs)
        }).collect();
        let mut map = |src: &Arc<GradedBasis>, tgt: &Arc<GradedBasis>| {
            let shift = r.gen_range(-1..=1);
            let images = (0..src.len()).map(|x| {
                let mut img = Element::zero(ring);
                for y in (0..tgt.len()).filter(|&y| tgt.degree(y) == src.degree(x) + shift) {
                    img.add_term(y, &random_scalar(&mut r, ring, 0));
                }
                img
            }).collect();
            (LinMap::new(src.clone(), tgt.clone(), ring, images).unwrap(), shift)
        };
        let (h, _) = map(&bases[0], &bases[1]);
        let (k, _) = map(&bases[0], &bases[1]);
        let (f, _) = map(&bases[1], &bases[2]);
        let (g, dg) = map(&bases[1], &bases[2]);
        let dh = h.degree().unwrap_or(0);
        let lhs = f.tensor(&g).unwrap().compose(&h.tensor(&k).unwrap()).unwrap();
        let rhs = f.compose(&h).unwrap().tensor(&g.compose(&k).unwrap()).unwrap();
        let rhs = if (dg * dh) % 2 != 0 && !g.is_zero() && !h.is_zero() { rhs.scale_rational(&rat(-1, 1)) } else { rhs };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_is_a_graded_commutative_algebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = Ring::hbar(2);
        let src = random_algebra(&mut r, 3, ring);
        let tgt = random_algebra(&mut r, 3, ring);
        let map = |r: &mut ChaCha8Rng, shift: i32| {
            let images = (0..src.dim()).map(|x| {
                let mut img = Element::zero(ring);
                for y in (0..tgt.dim()).filter(|&y| tgt.degree(y) == src.degree(x) + shift) {
                    if r.gen_bool(0.4) {
                        img.add_term(y, &random_scalar(r, ring, if x == 0 { 1 } else { 0 }));
                    }
                }
                img
            }).collect();
            ConvMap::from_images(src.clone(), tgt.clone(), images).unwrap()
        };
        let (df, dg) = (r.gen_range(-1..=1), r.gen_range(-1..=1));
        let (f, g, h) = (map(&mut r, df), map(&mut r, dg), map(&mut r, 0));
        let fit = |x: mvalg::Result<ConvMap>| x.map(Some).or_else(|e| match e { mvalg::Error::TruncationOverflow { .. } => Ok(None), e => Err(e) }).unwrap();
        let (Some(fg), Some(gh)) = (fit(convolution(&f, &g)), fit(convolution(&g, &h))) else { return Ok(()) };
        if let (Some(left), Some(right)) = (fit(convolution(&fg, &h)), fit(convolution(&f, &gh))) {
            prop_assert_eq!(left, right);
        }
        let gf = convolution(&g, &f).unwrap();
        prop_assert_eq!(&fg, &if df * dg % 2 != 0 { gf.scale_rational(&rat(-1, 1)) } else { gf });
        let e = conv_unit(src.clone(), tgt.clone());
        prop_assert_eq!(convolution(&e, &f).unwrap(), f.clone());
        prop_assert!(fg.is_lin0());
        // Degree-0 maps commute, so exp is a homomorphism; exp and log are inverse.
        if let (Some(eh), Some(e2h)) = (fit(exp_map(&h)), fit(exp_map(&h.add(&h).unwrap()))) {
            prop_assert_eq!(log_map(&eh).unwrap(), h.clone());
            prop_assert_eq!(convolution(&eh, &eh).unwrap(), e2h);
        }
    }
}
