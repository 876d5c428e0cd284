//! The truncated symmetric bialgebra `S^{≤D}(U)`.
//!
//! Monomials are sorted multisets of generator indices. A word of length
//! above `D` is never dropped silently: producing one is a
//! [`Error::TruncationOverflow`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{
    all_permutations, compositions, koszul_sign, unshuffles, Element, GradedBasis, LinMap, Tensor,
};
use crate::scalars::{factorial, Ring, Scalar};

/// Sort a word of generators, returning the Koszul sign and the sorted word,
/// or `None` when an odd generator repeats.
pub fn normalize(word: &[usize], degrees: &[i32]) -> Option<(i32, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if degrees[w[j - 1]] % 2 != 0 && degrees[w[j]] % 2 != 0 {
                sign = -sign;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && degrees[p[0]] % 2 != 0) {
        return None;
    }
    Some((sign, w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymAlgebra {
    generators: Arc<GradedBasis>,
    max_len: usize,
    ring: Ring,
    monomials: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    basis: Arc<GradedBasis>,
}

impl SymAlgebra {
    pub fn new(generators: Arc<GradedBasis>, max_len: usize, ring: Ring) -> Result<SymAlgebra> {
        if max_len == 0 {
            return Err(Error::InvalidArgument(
                "truncation D must be at least 1".into(),
            ));
        }
        for i in 0..generators.len() {
            let name = generators.name(i);
            if name.is_empty() || name == "1" || name.contains('*') {
                return Err(Error::InvalidArgument(format!(
                    "generator name `{name}` is reserved or malformed"
                )));
            }
        }
        let degrees = generators.degrees().to_vec();
        let mut monomials = vec![Vec::new()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.last().copied().unwrap_or(0);
                for (g, degree) in degrees.iter().enumerate().skip(start) {
                    if w.last() == Some(&g) && degree % 2 != 0 {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw.push(g);
                    next.push(nw);
                }
            }
            monomials.extend(next.iter().cloned());
            layer = next;
        }
        let lookup = monomials
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let basis = GradedBasis::new(monomials.iter().map(|w| {
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&g| generators.name(g))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            (name, w.iter().map(|&g| degrees[g]).sum::<i32>())
        }))?;
        Ok(SymAlgebra {
            generators,
            max_len,
            ring,
            monomials,
            lookup,
            basis: Arc::new(basis),
        })
    }

    pub fn generators(&self) -> &Arc<GradedBasis> {
        &self.generators
    }
    pub fn max_len(&self) -> usize {
        self.max_len
    }
    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
    pub fn monomial(&self, i: usize) -> &[usize] {
        &self.monomials[i]
    }
    pub fn word_length(&self, i: usize) -> usize {
        self.monomials[i].len()
    }

    /// Same generators and ring, different truncation.
    pub fn with_max_len(&self, max_len: usize) -> Result<SymAlgebra> {
        SymAlgebra::new(self.generators.clone(), max_len, self.ring)
    }

    pub fn with_ring(&self, ring: Ring) -> Result<SymAlgebra> {
        SymAlgebra::new(self.generators.clone(), self.max_len, ring)
    }

    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        self.lookup.get(sorted).copied()
    }

    /// Index of the generator `g` as a length-one monomial.
    pub fn generator_monomial(&self, g: usize) -> usize {
        self.lookup[&vec![g]]
    }

    /// Normal form of an arbitrary word: `(sign, index)`, `None` for zero.
    pub fn word(&self, word: &[usize]) -> Result<Option<(i32, usize)>> {
        if word.len() > self.max_len {
            let zero = normalize(word, self.generators.degrees()).is_none();
            if zero {
                return Ok(None);
            }
            return Err(Error::TruncationOverflow {
                length: word.len(),
                bound: self.max_len,
            });
        }
        Ok(normalize(word, self.generators.degrees()).map(|(s, w)| (s, self.lookup[&w])))
    }

    pub fn unit(&self) -> Element {
        Element::basis(self.ring, 0)
    }

    pub fn mul_monomials(&self, a: usize, b: usize) -> Result<Option<(i32, usize)>> {
        let mut w = self.monomials[a].clone();
        w.extend_from_slice(&self.monomials[b]);
        self.word(&w)
    }

    pub fn sym_product(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero(self.ring);
        for (&a, ca) in x.terms() {
            for (&b, cb) in y.terms() {
                let c = ca.mul(cb)?;
                if c.is_zero() {
                    continue;
                }
                if let Some((sign, m)) = self.mul_monomials(a, b)? {
                    out.add_term(m, &if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Product of all tensor factors, left to right.
    pub fn multiply_out(&self, t: &Tensor) -> Result<Element> {
        let mut out = Element::zero(self.ring);
        for (key, c) in t.terms() {
            let word: Vec<usize> = key
                .iter()
                .flat_map(|&m| self.monomials[m].iter().copied())
                .collect();
            if let Some((sign, m)) = self.word(&word)? {
                out.add_term(m, &if sign < 0 { c.neg() } else { c.clone() });
            }
        }
        Ok(out)
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        x.coefficient(&0)
    }

    fn word_degrees(&self, word: &[usize]) -> Vec<i32> {
        word.iter().map(|&g| self.generators.degree(g)).collect()
    }

    /// Unshuffle form of the `k`-fold iterated diagonal on one monomial:
    /// a sum over `(a_1..a_k)`-unshuffles with Koszul signs, no coefficients.
    pub fn diagonal_monomial(&self, m: usize, k: usize) -> Tensor {
        let word = &self.monomials[m];
        let degs = self.word_degrees(word);
        let n = word.len();
        let mut out = Tensor::zero(self.ring);
        for blocks in compositions(n, k, n) {
            for sigma in unshuffles(&blocks) {
                let sign = koszul_sign(&sigma, &degs);
                let mut key = Vec::with_capacity(k);
                let mut start = 0;
                for &b in &blocks {
                    // Subwords of a sorted word are sorted and odd-repetition free.
                    let sub: Vec<usize> =
                        sigma[start..start + b].iter().map(|&p| word[p]).collect();
                    key.push(self.lookup[&sub]);
                    start += b;
                }
                out.add_term(key, &Scalar::int(self.ring, sign as i64));
            }
        }
        out
    }

    /// `δ^{[k-1]}`: the `k`-fold iterated diagonal into `S^{⊗k}`.
    pub fn iterated_diagonal(&self, x: &Element, k: usize) -> Result<Tensor> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "iterated diagonal needs k ≥ 1".into(),
            ));
        }
        let mut out = Tensor::zero(self.ring);
        for (&m, c) in x.terms() {
            out.add_scaled(&self.diagonal_monomial(m, k), c)?;
        }
        Ok(out)
    }

    /// Reference form: a sum over all permutations with weight
    /// `e(σ) / (a_1! ⋯ a_k!)`, normalizing each block.
    pub fn iterated_diagonal_oracle(&self, x: &Element, k: usize) -> Result<Tensor> {
        let mut out = Tensor::zero(self.ring);
        for (&m, c) in x.terms() {
            let word = &self.monomials[m];
            let degs = self.word_degrees(word);
            let n = word.len();
            let perms = all_permutations(n);
            for blocks in compositions(n, k, n) {
                let denom: BigInt = blocks.iter().map(|&b| factorial(b)).product();
                let weight = BigRational::new(BigInt::one(), denom);
                for sigma in &perms {
                    let mut sign = koszul_sign(sigma, &degs);
                    let mut key = Vec::with_capacity(k);
                    let mut start = 0;
                    let mut vanished = false;
                    for &b in &blocks {
                        let sub: Vec<usize> =
                            sigma[start..start + b].iter().map(|&p| word[p]).collect();
                        start += b;
                        match normalize(&sub, self.generators.degrees()) {
                            Some((s, w)) => {
                                sign *= s;
                                key.push(self.lookup[&w]);
                            }
                            None => {
                                vanished = true;
                                break;
                            }
                        }
                    }
                    if !vanished {
                        out.add_term(key, &c.scale(&(weight.clone() * BigInt::from(sign))));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced diagonal on the augmentation ideal; `δ̄(1) = 0`.
    pub fn reduced_diagonal_monomial(&self, m: usize) -> Tensor {
        let mut t = self.diagonal_monomial(m, 2);
        t.retain(|key| key[0] != 0 && key[1] != 0);
        t
    }

    /// `δ̄^{[k]}(x) = (δ̄ ⊗ id^{⊗k-1}) δ̄^{[k-1]}(x)`, with `δ̄^{[0]}` the
    /// projection onto the augmentation ideal.
    pub fn reduced_diagonal_power(&self, x: &Element, k: usize) -> Result<Tensor> {
        let mut current = Tensor::zero(self.ring);
        for (&m, c) in x.terms() {
            if m != 0 {
                current.add_term(vec![m], c);
            }
        }
        for _ in 0..k {
            let mut next = Tensor::zero(self.ring);
            for (key, c) in current.terms() {
                for (split, s) in self.reduced_diagonal_monomial(key[0]).terms() {
                    let mut nk = split.clone();
                    nk.extend_from_slice(&key[1..]);
                    next.add_term(nk, &s.mul(c)?);
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Left derivative `∂/∂u_g`, with the Koszul sign for moving `u_g` to
    /// the front.
    pub fn derivative(&self, g: usize) -> LinMap {
        let degrees = self.generators.degrees();
        let images = (0..self.dim())
            .map(|m| {
                let word = self.monomial(m);
                let mut out = Element::zero(self.ring);
                let mut passed = 0;
                for (p, &u) in word.iter().enumerate() {
                    if u == g {
                        let rest: Vec<usize> = word
                            .iter()
                            .enumerate()
                            .filter(|&(q, _)| q != p)
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = if (degrees[g] * passed) % 2 != 0 {
                            -1
                        } else {
                            1
                        };
                        let idx = self
                            .index_of(&rest)
                            .expect("shorter words are representable");
                        out.add_term(idx, &Scalar::int(self.ring, sign));
                    }
                    passed += degrees[u];
                }
                out
            })
            .collect();
        LinMap::new(self.basis.clone(), self.basis.clone(), self.ring, images)
            .expect("images stay in the basis")
    }

    /// Projection onto the generators `S^1(U)`.
    pub fn pi1(&self) -> LinMap {
        let mut f = LinMap::zero(self.basis.clone(), self.basis.clone(), self.ring);
        for m in 0..self.dim() {
            if self.monomials[m].len() == 1 {
                f.set_image(m, Element::basis(self.ring, m));
            }
        }
        f
    }

    /// Projection onto the word-length-`n` part.
    pub fn length_part(&self, x: &Element, n: usize) -> Element {
        x.filtered(|&m| self.monomials[m].len() == n)
    }

    /// Koszul-signed flip of a two-factor tensor.
    pub fn flip(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.ring);
        for (key, c) in t.terms() {
            let odd = self.basis.degree(key[0]) % 2 != 0 && self.basis.degree(key[1]) % 2 != 0;
            out.add_term(vec![key[1], key[0]], &if odd { c.neg() } else { c.clone() });
        }
        out
    }
}

/// Apply `f_1 ⊗ ⋯ ⊗ f_k` to a tensor with the Koszul rule: `f_j` passes the
/// inputs `x_1, …, x_{j-1}`.
pub fn tensor_apply(maps: &[&LinMap], t: &Tensor) -> Result<Tensor> {
    let ring = t.ring();
    let mut out = Tensor::zero(ring);
    for (key, c) in t.terms() {
        if key.len() != maps.len() {
            return Err(Error::BasisMismatch(format!(
                "tensor of arity {} for {} maps",
                key.len(),
                maps.len()
            )));
        }
        let mut partial: Vec<(Vec<usize>, Scalar)> =
            vec![(Vec::with_capacity(key.len()), c.clone())];
        let mut passed = 0i32;
        for (f, &x) in maps.iter().zip(key) {
            let img = f.image(x);
            let mut next = Vec::with_capacity(partial.len() * img.len());
            for (pk, pc) in &partial {
                for (&y, cy) in img.terms() {
                    let part = f.target().degree(y) - f.source().degree(x);
                    let mut cc = pc.mul(cy)?;
                    // Products die quickly in a nilpotent ring.
                    if cc.is_zero() {
                        continue;
                    }
                    if (part * passed) % 2 != 0 {
                        cc = cc.neg();
                    }
                    let mut nk = pk.clone();
                    nk.push(y);
                    next.push((nk, cc));
                }
            }
            partial = next;
            passed += f.source().degree(x);
        }
        for (k, v) in partial {
            out.add_term(k, &v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra(degs: &[i32], d: usize) -> SymAlgebra {
        let gens = GradedBasis::new(
            degs.iter()
                .enumerate()
                .map(|(i, &g)| (format!("u{}", i + 1), g)),
        )
        .unwrap();
        SymAlgebra::new(Arc::new(gens), d, Ring::rationals()).unwrap()
    }

    fn mono(a: &SymAlgebra, w: &[usize]) -> Element {
        let (s, m) = a.word(w).unwrap().unwrap();
        Element::basis(a.ring(), m).scale_rational(&BigRational::from_integer(s.into()))
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1, 0], &[1, 1]), Some((-1, vec![0, 1])));
        assert_eq!(normalize(&[0, 0], &[1]), None);
        assert_eq!(normalize(&[0, 0], &[0]), Some((1, vec![0, 0])));
        let (s, w) = normalize(&[2, 0, 1, 0], &[0, 1, 1]).unwrap();
        assert_eq!(normalize(&w, &[0, 1, 1]), Some((1, w.clone())));
        assert_eq!(s, -1);
    }

    #[test]
    fn product_examples() {
        let a = algebra(&[1, 1, 0], 2);
        let x = mono(&a, &[2]);
        assert_eq!(a.sym_product(&a.unit(), &x).unwrap(), x);
        let u1 = mono(&a, &[0]);
        let u2 = mono(&a, &[1]);
        assert_eq!(
            a.sym_product(&u1, &u2).unwrap(),
            a.sym_product(&u2, &u1).unwrap().neg()
        );
        let u12 = a.sym_product(&u1, &u2).unwrap();
        assert!(matches!(
            a.sym_product(&u12, &x),
            Err(Error::TruncationOverflow {
                length: 3,
                bound: 2
            })
        ));
    }

    #[test]
    fn diagonal_examples() {
        let a = algebra(&[0, 0], 2);
        let u = mono(&a, &[0]);
        let d = a.iterated_diagonal(&u, 2).unwrap();
        assert_eq!(d, a.iterated_diagonal_oracle(&u, 2).unwrap());
        assert_eq!(d.len(), 2);
        let u12 = mono(&a, &[0, 1]);
        let d = a.iterated_diagonal(&u12, 2).unwrap();
        assert_eq!(d, a.iterated_diagonal_oracle(&u12, 2).unwrap());
        let i = |w: &[usize]| a.index_of(w).unwrap();
        let mut expected = Tensor::zero(a.ring());
        for key in [
            vec![i(&[0, 1]), 0],
            vec![i(&[0]), i(&[1])],
            vec![i(&[1]), i(&[0])],
            vec![0, i(&[0, 1])],
        ] {
            expected.add_term(key, &Scalar::one(a.ring()));
        }
        assert_eq!(d, expected);
        let id = a.iterated_diagonal(&u12, 1).unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id.keys().next().unwrap(), &vec![i(&[0, 1])]);
    }

    #[test]
    fn reduced_diagonal_vanishes_by_length() {
        let a = algebra(&[0, 1], 3);
        let u12 = mono(&a, &[0, 1]);
        assert!(!a.reduced_diagonal_power(&u12, 1).unwrap().is_zero());
        assert!(a.reduced_diagonal_power(&u12, 2).unwrap().is_zero());
        assert!(a.reduced_diagonal_power(&a.unit(), 1).unwrap().is_zero());
    }

    #[test]
    fn pi1_projection() {
        let a = algebra(&[0, 1], 3);
        let p = a.pi1();
        let u = mono(&a, &[0]);
        assert_eq!(p.apply(&u).unwrap(), u);
        assert!(p.apply(&a.unit()).unwrap().is_zero());
        assert!(p.apply(&mono(&a, &[0, 1])).unwrap().is_zero());
    }
}
