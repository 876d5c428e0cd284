//! Graded bases, sparse vectors over a [`Ring`], Koszul signs, unshuffles and
//! linear maps with the Koszul tensor rule.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar, ScalarError};

/// Ordered atoms with integer degrees. The order is the canonical sort order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<i32>,
    lookup: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = (S, i32)>) -> Result<GradedBasis> {
        let mut basis = GradedBasis {
            names: Vec::new(),
            degrees: Vec::new(),
            lookup: HashMap::new(),
        };
        for (name, degree) in atoms {
            let name = name.into();
            if basis
                .lookup
                .insert(name.clone(), basis.names.len())
                .is_some()
            {
                return Err(Error::DuplicateName(name));
            }
            basis.names.push(name);
            basis.degrees.push(degree);
        }
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Basis of `self ⊗ other`, indexed `i * other.len() + j`.
    pub fn tensor(&self, other: &GradedBasis) -> GradedBasis {
        let mut atoms = Vec::with_capacity(self.len() * other.len());
        for i in 0..self.len() {
            for j in 0..other.len() {
                atoms.push((
                    format!("{}⊗{}", self.names[i], other.names[j]),
                    self.degrees[i] + other.degrees[j],
                ));
            }
        }
        GradedBasis::new(atoms).expect("product names are unique")
    }
}

/// Sparse linear combination of keys with [`Scalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector<K: Ord> {
    ring: Ring,
    terms: BTreeMap<K, Scalar>,
}

/// Vector in a single graded space.
pub type Element = Vector<usize>;
/// Vector in a tensor power; keys list one basis index per factor.
pub type Tensor = Vector<Vec<usize>>;

impl<K: Ord + Clone> Vector<K> {
    pub fn zero(ring: Ring) -> Self {
        Vector {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ring: Ring, key: K) -> Self {
        let mut v = Vector::zero(ring);
        v.terms.insert(key, Scalar::one(ring));
        v
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &K) -> Scalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                existing.add_assign_same(c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_rational_term(&mut self, key: K, q: &BigRational) {
        self.add_term(key, &Scalar::rational(self.ring, q.clone()));
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(ScalarError::ModeMismatch {
                left: self.ring,
                right: other.ring,
            }
            .into());
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) -> Result<()> {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &v.mul(c)?);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(&other.neg())?;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-BigRational::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let mut out = Vector::zero(self.ring);
        out.add_scaled(self, c)?;
        Ok(out)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let mut out = Vector::zero(self.ring);
        for (k, v) in &self.terms {
            let s = v.scale(q);
            if !s.is_zero() {
                out.terms.insert(k.clone(), s);
            }
        }
        out
    }

    /// Apply a coefficient-wise map, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Vector::zero(self.ring);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v));
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|k, _| keep(k));
        out
    }

    /// Every coefficient passes [`Scalar::in_maximal_ideal`].
    pub fn in_maximal_ideal(&self) -> bool {
        self.terms.values().all(Scalar::in_maximal_ideal)
    }

    pub fn mod_maximal_ideal(&self) -> Self {
        self.map_coefficients(Scalar::mod_maximal_ideal)
    }
}

/// Degree of a tensor key under a degree table.
pub fn key_degree(key: &[usize], degrees: &[i32]) -> i32 {
    key.iter().map(|&i| degrees[i]).sum()
}

/// Koszul sign `e(perm)` defined by `u_1 ⋯ u_n = e(perm) u_{perm(1)} ⋯ u_{perm(n)}`
/// in the free graded commutative algebra. `perm[p]` is the original (0-based)
/// index placed at position `p`; `degrees` is indexed by original position.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> i32 {
    let mut odd = false;
    for p in 0..perm.len() {
        for q in p + 1..perm.len() {
            if perm[p] > perm[q] && degrees[perm[p]] % 2 != 0 && degrees[perm[q]] % 2 != 0 {
                odd = !odd;
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}

/// All `(a_1, …, a_k)`-unshuffles: permutations increasing inside each of the
/// consecutive blocks, in lexicographic order. Generated by choosing block
/// membership directly.
pub fn unshuffles(blocks: &[usize]) -> Vec<Vec<usize>> {
    fn rec(
        blocks: &[usize],
        remaining: &[usize],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some((&size, rest)) = blocks.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for chosen in combinations(remaining, size) {
            let left: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|x| !chosen.contains(x))
                .collect();
            let mark = prefix.len();
            prefix.extend_from_slice(&chosen);
            rec(rest, &left, prefix, out);
            prefix.truncate(mark);
        }
    }
    let n: usize = blocks.iter().sum();
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(blocks, &all, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Size-`k` subsets of `items` (kept in order), in lexicographic order.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Reference enumeration: every permutation of `n`, kept if monotone on blocks.
pub fn unshuffles_by_filter(blocks: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = blocks.iter().sum();
    all_permutations(n)
        .into_iter()
        .filter(|p| is_unshuffle(p, blocks))
        .collect()
}

pub fn is_unshuffle(perm: &[usize], blocks: &[usize]) -> bool {
    if perm.len() != blocks.iter().sum::<usize>() {
        return false;
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    let mut start = 0;
    for &b in blocks {
        if perm[start..start + b].windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        start += b;
    }
    true
}

/// Permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Compositions of `total` into `parts` non-negative parts, each at most `cap`.
pub fn compositions(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(
        total: usize,
        parts: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total > cap * parts {
            return;
        }
        for first in 0..=total.min(cap) {
            cur.push(first);
            rec(total - first, parts - 1, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, cap, &mut Vec::new(), &mut out);
    out
}

/// A linear map given by the images of the source basis atoms. Images need
/// not be homogeneous; [`LinMap::homogeneous_parts`] splits them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    ring: Ring,
    images: Vec<Element>,
}

impl LinMap {
    pub fn new(
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        ring: Ring,
        images: Vec<Element>,
    ) -> Result<LinMap> {
        if images.len() != source.len() {
            return Err(Error::BasisMismatch(format!(
                "{} images for a source of dimension {}",
                images.len(),
                source.len()
            )));
        }
        for img in &images {
            if img.ring() != ring {
                return Err(ScalarError::ModeMismatch {
                    left: ring,
                    right: img.ring(),
                }
                .into());
            }
            if let Some(&k) = img.keys().find(|&&k| k >= target.len()) {
                return Err(Error::BasisMismatch(format!(
                    "image index {k} outside target of dimension {}",
                    target.len()
                )));
            }
        }
        Ok(LinMap {
            source,
            target,
            ring,
            images,
        })
    }

    pub fn zero(source: Arc<GradedBasis>, target: Arc<GradedBasis>, ring: Ring) -> LinMap {
        let images = vec![Element::zero(ring); source.len()];
        LinMap {
            source,
            target,
            ring,
            images,
        }
    }

    pub fn identity(basis: Arc<GradedBasis>, ring: Ring) -> LinMap {
        let images = (0..basis.len()).map(|i| Element::basis(ring, i)).collect();
        LinMap {
            source: basis.clone(),
            target: basis,
            ring,
            images,
        }
    }

    pub fn source(&self) -> &Arc<GradedBasis> {
        &self.source
    }
    pub fn target(&self) -> &Arc<GradedBasis> {
        &self.target
    }
    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }
    pub fn images(&self) -> &[Element] {
        &self.images
    }
    pub fn set_image(&mut self, i: usize, value: Element) {
        self.images[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    /// Degrees `|f(b)| - |b|` occurring in the stored images.
    pub fn degree_set(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self
            .images
            .iter()
            .enumerate()
            .flat_map(|(b, img)| {
                img.keys()
                    .map(move |&t| self.target.degree(t) - self.source.degree(b))
            })
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The degree if the map is homogeneous (the zero map counts as degree 0).
    pub fn degree(&self) -> Option<i32> {
        match self.degree_set().as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_homogeneous_of(&self, degree: i32) -> bool {
        self.degree_set().iter().all(|&d| d == degree)
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<i32, LinMap> {
        let mut parts = BTreeMap::new();
        for d in self.degree_set() {
            let mut part = LinMap::zero(self.source.clone(), self.target.clone(), self.ring);
            for (b, img) in self.images.iter().enumerate() {
                let sb = self.source.degree(b);
                part.images[b] = img.filtered(|&t| self.target.degree(t) - sb == d);
            }
            parts.insert(d, part);
        }
        parts
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero(self.ring);
        for (&b, c) in x.terms() {
            out.add_scaled(&self.images[b], c)?;
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &LinMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BasisMismatch(
                "maps have different source or target".into(),
            ));
        }
        if self.ring != other.ring {
            return Err(ScalarError::ModeMismatch {
                left: self.ring,
                right: other.ring,
            }
            .into());
        }
        Ok(())
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_shape(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(LinMap {
            images,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_shape(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(LinMap {
            images,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<LinMap> {
        let images = self
            .images
            .iter()
            .map(|a| a.scale(c))
            .collect::<Result<_>>()?;
        Ok(LinMap {
            images,
            ..self.clone()
        })
    }

    pub fn scale_rational(&self, q: &BigRational) -> LinMap {
        let images = self.images.iter().map(|a| a.scale_rational(q)).collect();
        LinMap {
            images,
            ..self.clone()
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> LinMap {
        let images = self.images.iter().map(|a| a.map_coefficients(&f)).collect();
        LinMap {
            images,
            ..self.clone()
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if *inner.target != *self.source {
            return Err(Error::BasisMismatch(
                "target of the inner map differs from the source of the outer map".into(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<_>>()?;
        Ok(LinMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            ring: self.ring,
            images,
        })
    }

    /// `self ⊗ other` on product bases, with `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`
    /// applied to each homogeneous part of `g`.
    pub fn tensor(&self, other: &LinMap) -> Result<LinMap> {
        if self.ring != other.ring {
            return Err(ScalarError::ModeMismatch {
                left: self.ring,
                right: other.ring,
            }
            .into());
        }
        let source = Arc::new(self.source.tensor(&other.source));
        let target = Arc::new(self.target.tensor(&other.target));
        let width = other.target.len();
        let mut images = Vec::with_capacity(source.len());
        for x in 0..self.source.len() {
            for y in 0..other.source.len() {
                let mut img = Element::zero(self.ring);
                for (&a, ca) in self.images[x].terms() {
                    for (&b, cb) in other.images[y].terms() {
                        let part = other.target.degree(b) - other.source.degree(y);
                        let mut c = ca.mul(cb)?;
                        if (part * self.source.degree(x)) % 2 != 0 {
                            c = c.neg();
                        }
                        img.add_term(a * width + b, &c);
                    }
                }
                images.push(img);
            }
        }
        Ok(LinMap {
            source,
            target,
            ring: self.ring,
            images,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 1, 1]), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[0, 1]), 1);
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(unshuffles(&[3]), vec![vec![0, 1, 2]]);
        assert_eq!(unshuffles(&[1, 1]).len(), 2);
        let filtered = unshuffles_by_filter(&[2, 1]);
        assert_eq!(filtered.len(), 3);
        assert_eq!(unshuffles(&[2, 1]), filtered);
        assert_eq!(filtered, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]);
        assert_eq!(unshuffles(&[0, 2, 0]), vec![vec![0, 1]]);
    }

    #[test]
    fn unshuffle_counts_are_multinomial() {
        for n in 0..=7usize {
            for k in 1..=3usize {
                for blocks in compositions(n, k, n) {
                    let expected =
                        factorial(n) / blocks.iter().map(|&b| factorial(b)).product::<usize>();
                    let got = unshuffles(&blocks);
                    assert_eq!(got.len(), expected, "{blocks:?}");
                    if n <= 5 {
                        assert_eq!(got, unshuffles_by_filter(&blocks));
                    }
                }
            }
        }
    }

    fn basis(degs: &[i32]) -> Arc<GradedBasis> {
        Arc::new(
            GradedBasis::new(degs.iter().enumerate().map(|(i, &d)| (format!("b{i}"), d))).unwrap(),
        )
    }

    #[test]
    fn tensor_rule_sign() {
        let r = Ring::rationals();
        // f: degree 0 identity on an odd line, g: degree 1 map from an even atom to an odd atom.
        let x = basis(&[1]);
        let f = LinMap::identity(x.clone(), r);
        let ys = basis(&[0, 1]);
        let mut g = LinMap::zero(ys.clone(), ys.clone(), r);
        g.set_image(0, Element::basis(r, 1));
        let fg = f.tensor(&g).unwrap();
        // x⊗y0 -> -(x⊗y1)
        assert_eq!(fg.image(0), &Element::basis(r, 1).neg());
    }

    #[test]
    fn compose_with_identity_and_degrees() {
        let r = Ring::rationals();
        let b = basis(&[0, 1, 2]);
        let mut f = LinMap::zero(b.clone(), b.clone(), r);
        f.set_image(0, Element::basis(r, 1).scale_rational(&rat(3, 2)));
        f.set_image(1, Element::basis(r, 2));
        assert_eq!(f.compose(&LinMap::identity(b.clone(), r)).unwrap(), f);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(f.compose(&f).unwrap().degree(), Some(2));
        let parts = f.add(&LinMap::identity(b, r)).unwrap().homogeneous_parts();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    }
}
