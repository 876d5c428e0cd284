//! Finite presentations of MV-algebras and their axiom checks.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{Element, GradedBasis, LinMap, Tensor};
use crate::json::scalar_to_json;
use crate::report::{Check, Report};
use crate::scalars::{Ring, Scalar};
use crate::symalg::SymAlgebra;

#[derive(Debug, Clone, PartialEq)]
pub enum Flavor {
    /// Products given by a full `dim × dim` table.
    Explicit { products: Vec<Element> },
    /// The truncated symmetric bialgebra on a set of generators.
    Symmetric(SymAlgebra),
    /// The graded tensor product of two algebras (the `⊘` construction).
    Product(Arc<MVAlgebra>, Arc<MVAlgebra>),
}

/// `(V, μ, δ, Δ, η, ε)` on a finite basis whose atom 0 is the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct MVAlgebra {
    basis: Arc<GradedBasis>,
    ring: Ring,
    flavor: Flavor,
    coproducts: Vec<Tensor>,
    counit: Vec<Scalar>,
    delta_op: LinMap,
    conilpotency: Option<usize>,
}

fn witness(input: Vec<String>, lhs: Value, rhs: Value) -> Value {
    json!({ "input": input, "lhs": lhs, "rhs": rhs })
}

/// One axiom: `None` when it holds, otherwise a witness.
type AxiomCheck = fn(&MVAlgebra) -> Result<Option<Value>>;

impl MVAlgebra {
    fn assemble(
        basis: Arc<GradedBasis>,
        ring: Ring,
        flavor: Flavor,
        coproducts: Vec<Tensor>,
        counit: Vec<Scalar>,
        delta_op: LinMap,
    ) -> Result<MVAlgebra> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "an MV-algebra needs at least the unit atom".into(),
            ));
        }
        if coproducts.len() != n || counit.len() != n {
            return Err(Error::BasisMismatch(
                "structure tables do not match the basis".into(),
            ));
        }
        if delta_op.source().as_ref() != basis.as_ref()
            || delta_op.target().as_ref() != basis.as_ref()
        {
            return Err(Error::BasisMismatch(
                "Δ must be an endomorphism of the basis".into(),
            ));
        }
        if delta_op.ring() != ring {
            return Err(crate::scalars::ScalarError::ModeMismatch {
                left: ring,
                right: delta_op.ring(),
            }
            .into());
        }
        let mut a = MVAlgebra {
            basis,
            ring,
            flavor,
            coproducts,
            counit,
            delta_op,
            conilpotency: None,
        };
        a.conilpotency = a.compute_conilpotency().ok();
        Ok(a)
    }

    /// `S^{≤D}(U)` with its standard product, diagonal and counit.
    pub fn symmetric(sym: SymAlgebra, delta_op: LinMap) -> Result<MVAlgebra> {
        let basis = sym.basis().clone();
        let ring = sym.ring();
        let coproducts = (0..sym.dim())
            .map(|m| sym.diagonal_monomial(m, 2))
            .collect();
        let counit = (0..sym.dim())
            .map(|m| {
                if m == 0 {
                    Scalar::one(ring)
                } else {
                    Scalar::zero(ring)
                }
            })
            .collect();
        MVAlgebra::assemble(
            basis,
            ring,
            Flavor::Symmetric(sym),
            coproducts,
            counit,
            delta_op,
        )
    }

    /// `S^{≤D}(U)` with `Δ = 0`.
    pub fn symmetric_trivial(sym: SymAlgebra) -> Result<MVAlgebra> {
        let delta = LinMap::zero(sym.basis().clone(), sym.basis().clone(), sym.ring());
        MVAlgebra::symmetric(sym, delta)
    }

    /// Fully explicit presentation; `products[a * dim + b]` is `a·b`.
    pub fn explicit(
        basis: Arc<GradedBasis>,
        ring: Ring,
        products: Vec<Element>,
        coproducts: Vec<Tensor>,
        counit: Vec<Scalar>,
        delta_op: LinMap,
    ) -> Result<MVAlgebra> {
        if products.len() != basis.len() * basis.len() {
            return Err(Error::BasisMismatch(
                "product table must have dim² entries".into(),
            ));
        }
        MVAlgebra::assemble(
            basis,
            ring,
            Flavor::Explicit { products },
            coproducts,
            counit,
            delta_op,
        )
    }

    pub(crate) fn product_of(
        left: Arc<MVAlgebra>,
        right: Arc<MVAlgebra>,
        coproducts: Vec<Tensor>,
        counit: Vec<Scalar>,
        delta_op: LinMap,
    ) -> Result<MVAlgebra> {
        let basis = Arc::new(left.basis.tensor(&right.basis));
        let ring = left.ring;
        MVAlgebra::assemble(
            basis,
            ring,
            Flavor::Product(left, right),
            coproducts,
            counit,
            delta_op,
        )
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }
    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.basis.degree(i)
    }
    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }
    pub fn sym(&self) -> Option<&SymAlgebra> {
        match &self.flavor {
            Flavor::Symmetric(s) => Some(s),
            _ => None,
        }
    }
    pub fn delta_op(&self) -> &LinMap {
        &self.delta_op
    }
    pub fn coproduct(&self, i: usize) -> &Tensor {
        &self.coproducts[i]
    }
    pub fn counit_value(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }
    pub fn unit(&self) -> Element {
        Element::basis(self.ring, 0)
    }
    /// Smallest `k` with `δ̄^{[k]} = 0` on the augmentation ideal, if any.
    pub fn conilpotency(&self) -> Option<usize> {
        self.conilpotency
    }

    /// Same structure with `Δ` replaced.
    pub fn with_delta(&self, delta_op: LinMap) -> Result<MVAlgebra> {
        MVAlgebra::assemble(
            self.basis.clone(),
            self.ring,
            self.flavor.clone(),
            self.coproducts.clone(),
            self.counit.clone(),
            delta_op,
        )
    }

    /// `out += c · (a·b)` for basis atoms `a`, `b`.
    pub fn mul_into(&self, a: usize, b: usize, c: &Scalar, out: &mut Element) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match &self.flavor {
            Flavor::Explicit { products } => out.add_scaled(&products[a * self.dim() + b], c),
            Flavor::Symmetric(sym) => {
                if let Some((sign, m)) = sym.mul_monomials(a, b)? {
                    out.add_term(m, &if sign < 0 { c.neg() } else { c.clone() });
                }
                Ok(())
            }
            Flavor::Product(l, r) => {
                let w = r.dim();
                let (a1, a2) = (a / w, a % w);
                let (b1, b2) = (b / w, b % w);
                let mut c = c.clone();
                if (r.degree(a2) * l.degree(b1)) % 2 != 0 {
                    c = c.neg();
                }
                let mut left = Element::zero(self.ring);
                l.mul_into(a1, b1, &Scalar::one(self.ring), &mut left)?;
                let mut right = Element::zero(self.ring);
                r.mul_into(a2, b2, &Scalar::one(self.ring), &mut right)?;
                for (&x, cx) in left.terms() {
                    for (&y, cy) in right.terms() {
                        out.add_term(x * w + y, &cx.mul(cy)?.mul(&c)?);
                    }
                }
                Ok(())
            }
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero(self.ring);
        for (&a, ca) in x.terms() {
            for (&b, cb) in y.terms() {
                self.mul_into(a, b, &ca.mul(cb)?, &mut out)?;
            }
        }
        Ok(out)
    }

    pub fn coproduct_of(&self, x: &Element) -> Result<Tensor> {
        let mut out = Tensor::zero(self.ring);
        for (&a, c) in x.terms() {
            out.add_scaled(&self.coproducts[a], c)?;
        }
        Ok(out)
    }

    pub fn counit_of(&self, x: &Element) -> Result<Scalar> {
        let mut out = Scalar::zero(self.ring);
        for (&a, c) in x.terms() {
            out = out.add(&self.counit[a].mul(c)?)?;
        }
        Ok(out)
    }

    pub fn apply_delta(&self, x: &Element) -> Result<Element> {
        self.delta_op.apply(x)
    }

    /// `v - ε(v)·1`: the projection onto the augmentation ideal.
    pub fn augmentation_part(&self, x: &Element) -> Result<Element> {
        let mut out = x.clone();
        out.add_term(0, &self.counit_of(x)?.neg());
        Ok(out)
    }

    /// `δ̄(w) = δ(w) − w⊗1 − 1⊗w`, extended linearly to all of `V`.
    pub fn reduced_coproduct(&self, x: &Element) -> Result<Tensor> {
        let mut out = self.coproduct_of(x)?;
        for (&a, c) in x.terms() {
            out.add_term(vec![a, 0], &c.neg());
            out.add_term(vec![0, a], &c.neg());
        }
        Ok(out)
    }

    /// Apply `δ̄` to the first factor of every tensor term.
    fn reduce_first_factor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(self.ring);
        for (key, c) in t.terms() {
            let split = self.reduced_coproduct(&Element::basis(self.ring, key[0]))?;
            for (sk, sc) in split.terms() {
                let mut nk = sk.clone();
                nk.extend_from_slice(&key[1..]);
                out.add_term(nk, &sc.mul(c)?);
            }
        }
        Ok(out)
    }

    /// `δ̄^{[k]}` applied to the augmentation-ideal part of `x`.
    pub fn reduced_coproduct_power(&self, x: &Element, k: usize) -> Result<Tensor> {
        let mut t = Tensor::zero(self.ring);
        for (&a, c) in self.augmentation_part(x)?.terms() {
            t.add_term(vec![a], c);
        }
        for _ in 0..k {
            t = self.reduce_first_factor(&t)?;
        }
        Ok(t)
    }

    fn compute_conilpotency(&self) -> Result<usize> {
        let bound = self.dim() + 1;
        let mut layer = Tensor::zero(self.ring);
        for a in 1..self.dim() {
            let part = self.augmentation_part(&Element::basis(self.ring, a))?;
            for (&b, c) in part.terms() {
                // Tag each ideal generator in a trailing coordinate so that
                // cancellations between different generators cannot hide anything.
                layer.add_term(vec![b, a], c);
            }
        }
        for k in 0..=bound {
            if layer.is_zero() {
                return Ok(k);
            }
            layer = self.reduce_first_factor(&layer)?;
        }
        Err(Error::NotConilpotent { bound })
    }

    pub fn atom_json(&self, i: usize) -> Value {
        match &self.flavor {
            Flavor::Symmetric(sym) => Value::Array(
                sym.monomial(i)
                    .iter()
                    .map(|&g| json!(sym.generators().name(g)))
                    .collect(),
            ),
            _ => json!(self.basis.name(i)),
        }
    }

    /// Parse an atom: a list of generator names in the symmetric flavor
    /// (with its reordering sign) or a basis name.
    pub fn atom_from_json(&self, v: &Value) -> Result<Option<(i32, usize)>> {
        match (&self.flavor, v) {
            (Flavor::Symmetric(sym), Value::Array(names)) => {
                let word = names
                    .iter()
                    .map(|n| sym.generators().index(crate::json::as_str(n, "generator")?))
                    .collect::<Result<Vec<_>>>()?;
                sym.word(&word)
            }
            (_, Value::String(name)) => Ok(Some((1, self.basis.index(name)?))),
            (_, other) => Err(Error::Schema(format!(
                "cannot read a basis element from {other}"
            ))),
        }
    }

    /// Inverse of [`MVAlgebra::element_json`]; accepts `monomial` or `atom` keys.
    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        let mut out = Element::zero(self.ring);
        for term in crate::json::as_array(v, "element")? {
            let atom = term
                .get("monomial")
                .or_else(|| term.get("atom"))
                .ok_or_else(|| Error::Schema("element term needs `monomial` or `atom`".into()))?;
            let coeff = match term.get("coeff") {
                Some(c) => crate::json::scalar_from_json(self.ring, c)?,
                None => Scalar::one(self.ring),
            };
            if let Some((sign, a)) = self.atom_from_json(atom)? {
                out.add_term(a, &if sign < 0 { coeff.neg() } else { coeff });
            }
        }
        Ok(out)
    }

    pub fn element_json(&self, x: &Element) -> Value {
        let key = if self.sym().is_some() {
            "monomial"
        } else {
            "atom"
        };
        Value::Array(
            x.terms()
                .map(|(&a, c)| json!({ key: self.atom_json(a), "coeff": scalar_to_json(c) }))
                .collect(),
        )
    }

    pub fn tensor_json(&self, t: &Tensor) -> Value {
        Value::Array(
            t.terms()
                .map(|(key, c)| json!({ "factors": key.iter().map(|&a| self.atom_json(a)).collect::<Vec<_>>(), "coeff": scalar_to_json(c) }))
                .collect(),
        )
    }

    fn flip(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.ring);
        for (key, c) in t.terms() {
            let odd = self.degree(key[0]) % 2 != 0 && self.degree(key[1]) % 2 != 0;
            out.add_term(vec![key[1], key[0]], &if odd { c.neg() } else { c.clone() });
        }
        out
    }

    fn basis_el(&self, i: usize) -> Element {
        Element::basis(self.ring, i)
    }

    fn name(&self, i: usize) -> String {
        self.basis.name(i).to_string()
    }

    /// Every axiom of an MV-algebra, each reported on its own.
    pub fn validate_mv(&self) -> Report {
        let mut report = Report::default();
        let checks: [(&str, AxiomCheck); 14] = [
            ("structure_degrees", MVAlgebra::check_structure_degrees),
            ("mu_associative", MVAlgebra::check_associative),
            ("mu_commutative", MVAlgebra::check_commutative),
            ("mu_unital", MVAlgebra::check_unital),
            ("delta_coassociative", MVAlgebra::check_coassociative),
            ("delta_cocommutative", MVAlgebra::check_cocommutative),
            ("delta_counital", MVAlgebra::check_counital),
            ("eps_eta", MVAlgebra::check_eps_eta),
            ("eps_multiplicative", MVAlgebra::check_eps_multiplicative),
            ("coaugmentation", MVAlgebra::check_coaugmentation),
            ("conilpotent", MVAlgebra::check_conilpotent),
            ("Delta_square_zero", MVAlgebra::check_delta_square),
            ("Delta_unit", MVAlgebra::check_delta_unit),
            ("Delta_degree", MVAlgebra::check_delta_degree),
        ];
        for (name, check) in checks {
            let outcome = match check(self) {
                Ok(w) => Check::from_witness(name, w),
                Err(e) => Check::fail(name, json!({ "error": e.to_string() })),
            };
            report.push(outcome);
        }
        report
    }

    /// Products of basis atoms that fit the truncation, else `None`.
    fn try_mul(&self, x: &Element, y: &Element) -> Result<Option<Element>> {
        match self.mul(x, y) {
            Ok(p) => Ok(Some(p)),
            Err(Error::TruncationOverflow { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn check_structure_degrees(&self) -> Result<Option<Value>> {
        let n = self.dim();
        for a in 0..n {
            for (key, c) in self.coproducts[a].terms() {
                if self.degree(key[0]) + self.degree(key[1]) != self.degree(a) {
                    return Ok(Some(witness(
                        vec![self.name(a)],
                        json!("δ term"),
                        self.tensor_json(&Tensor::basis(self.ring, key.clone()).scale(c)?),
                    )));
                }
            }
            if !self.counit[a].is_zero() && self.degree(a) != 0 {
                return Ok(Some(witness(
                    vec![self.name(a)],
                    json!("ε nonzero"),
                    json!(self.degree(a)),
                )));
            }
            if let Flavor::Explicit { products } = &self.flavor {
                for b in 0..n {
                    for &t in products[a * n + b].keys() {
                        if self.degree(t) != self.degree(a) + self.degree(b) {
                            return Ok(Some(witness(
                                vec![self.name(a), self.name(b)],
                                json!("μ term"),
                                json!(self.name(t)),
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_associative(&self) -> Result<Option<Value>> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.try_mul(&self.basis_el(a), &self.basis_el(b))? else {
                    continue;
                };
                for c in 0..n {
                    let Some(lhs) = self.try_mul(&ab, &self.basis_el(c))? else {
                        continue;
                    };
                    let Some(bc) = self.try_mul(&self.basis_el(b), &self.basis_el(c))? else {
                        continue;
                    };
                    let Some(rhs) = self.try_mul(&self.basis_el(a), &bc)? else {
                        continue;
                    };
                    if lhs != rhs {
                        return Ok(Some(witness(
                            vec![self.name(a), self.name(b), self.name(c)],
                            self.element_json(&lhs),
                            self.element_json(&rhs),
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_commutative(&self) -> Result<Option<Value>> {
        let n = self.dim();
        for a in 0..n {
            for b in a..n {
                let Some(ab) = self.try_mul(&self.basis_el(a), &self.basis_el(b))? else {
                    continue;
                };
                let ba = self.mul(&self.basis_el(b), &self.basis_el(a))?;
                let ba = if self.degree(a) * self.degree(b) % 2 != 0 {
                    ba.neg()
                } else {
                    ba
                };
                if ab != ba {
                    return Ok(Some(witness(
                        vec![self.name(a), self.name(b)],
                        self.element_json(&ab),
                        self.element_json(&ba),
                    )));
                }
            }
        }
        Ok(None)
    }

    fn check_unital(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            let x = self.basis_el(a);
            for (lhs, rhs) in [
                (self.mul(&self.unit(), &x)?, x.clone()),
                (self.mul(&x, &self.unit())?, x.clone()),
            ] {
                if lhs != rhs {
                    return Ok(Some(witness(
                        vec![self.name(a)],
                        self.element_json(&lhs),
                        self.element_json(&rhs),
                    )));
                }
            }
        }
        Ok(None)
    }

    fn check_coassociative(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            let mut left = Tensor::zero(self.ring);
            let mut right = Tensor::zero(self.ring);
            for (key, c) in self.coproducts[a].terms() {
                for (k2, c2) in self.coproducts[key[0]].terms() {
                    left.add_term(vec![k2[0], k2[1], key[1]], &c.mul(c2)?);
                }
                for (k2, c2) in self.coproducts[key[1]].terms() {
                    right.add_term(vec![key[0], k2[0], k2[1]], &c.mul(c2)?);
                }
            }
            if left != right {
                return Ok(Some(witness(
                    vec![self.name(a)],
                    self.tensor_json(&left),
                    self.tensor_json(&right),
                )));
            }
        }
        Ok(None)
    }

    fn check_cocommutative(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            let flipped = self.flip(&self.coproducts[a]);
            if flipped != self.coproducts[a] {
                return Ok(Some(witness(
                    vec![self.name(a)],
                    self.tensor_json(&flipped),
                    self.tensor_json(&self.coproducts[a]),
                )));
            }
        }
        Ok(None)
    }

    fn check_counital(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            let mut left = Element::zero(self.ring);
            let mut right = Element::zero(self.ring);
            for (key, c) in self.coproducts[a].terms() {
                left.add_term(key[1], &self.counit[key[0]].mul(c)?);
                right.add_term(key[0], &self.counit[key[1]].mul(c)?);
            }
            let x = self.basis_el(a);
            for side in [left, right] {
                if side != x {
                    return Ok(Some(witness(
                        vec![self.name(a)],
                        self.element_json(&side),
                        self.element_json(&x),
                    )));
                }
            }
        }
        Ok(None)
    }

    fn check_eps_eta(&self) -> Result<Option<Value>> {
        if self.counit[0].is_one() {
            return Ok(None);
        }
        Ok(Some(witness(
            vec!["1".into()],
            scalar_to_json(&self.counit[0]),
            json!([{"h": 0, "l": 0, "q": "1/1"}]),
        )))
    }

    fn check_eps_multiplicative(&self) -> Result<Option<Value>> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.try_mul(&self.basis_el(a), &self.basis_el(b))? else {
                    continue;
                };
                let lhs = self.counit_of(&ab)?;
                let rhs = self.counit[a].mul(&self.counit[b])?;
                if lhs != rhs {
                    return Ok(Some(witness(
                        vec![self.name(a), self.name(b)],
                        scalar_to_json(&lhs),
                        scalar_to_json(&rhs),
                    )));
                }
            }
        }
        Ok(None)
    }

    fn check_coaugmentation(&self) -> Result<Option<Value>> {
        let expected = Tensor::basis(self.ring, vec![0, 0]);
        if self.coproducts[0] == expected {
            return Ok(None);
        }
        Ok(Some(witness(
            vec!["1".into()],
            self.tensor_json(&self.coproducts[0]),
            self.tensor_json(&expected),
        )))
    }

    fn check_conilpotent(&self) -> Result<Option<Value>> {
        match self.compute_conilpotency() {
            Ok(_) => Ok(None),
            Err(Error::NotConilpotent { bound }) => Ok(Some(json!({ "bound": bound }))),
            Err(e) => Err(e),
        }
    }

    fn check_delta_square(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            let sq = self.apply_delta(&self.apply_delta(&self.basis_el(a))?)?;
            if !sq.is_zero() {
                return Ok(Some(witness(
                    vec![self.name(a)],
                    self.element_json(&sq),
                    json!([]),
                )));
            }
        }
        Ok(None)
    }

    fn check_delta_unit(&self) -> Result<Option<Value>> {
        let d1 = self.apply_delta(&self.unit())?;
        if d1.is_zero() {
            return Ok(None);
        }
        Ok(Some(witness(
            vec!["1".into()],
            self.element_json(&d1),
            json!([]),
        )))
    }

    fn check_delta_degree(&self) -> Result<Option<Value>> {
        for a in 0..self.dim() {
            for &t in self.delta_op.image(a).keys() {
                if self.degree(t) != self.degree(a) + 1 {
                    return Ok(Some(
                        json!({ "input": [self.name(a)], "output_atom": self.atom_json(t), "degree_shift": self.degree(t) - self.degree(a) }),
                    ));
                }
            }
        }
        Ok(None)
    }

    /// Whether `δ(xy) = δ(x)δ(y)` on all representable basis pairs.
    pub fn bialgebra_witness(&self) -> Result<Option<Value>> {
        let n = self.dim();
        for a in 0..n {
            'pairs: for b in 0..n {
                let Some(ab) = self.try_mul(&self.basis_el(a), &self.basis_el(b))? else {
                    continue;
                };
                let lhs = self.coproduct_of(&ab)?;
                let mut rhs = Tensor::zero(self.ring);
                for (ka, ca) in self.coproducts[a].terms() {
                    for (kb, cb) in self.coproducts[b].terms() {
                        // (x1⊗x2)(y1⊗y2) = (-1)^{|x2||y1|} x1y1 ⊗ x2y2
                        let mut c = ca.mul(cb)?;
                        if self.degree(ka[1]) * self.degree(kb[0]) % 2 != 0 {
                            c = c.neg();
                        }
                        let Some(p1) =
                            self.try_mul(&self.basis_el(ka[0]), &self.basis_el(kb[0]))?
                        else {
                            continue 'pairs;
                        };
                        let Some(p2) =
                            self.try_mul(&self.basis_el(ka[1]), &self.basis_el(kb[1]))?
                        else {
                            continue 'pairs;
                        };
                        for (&x, cx) in p1.terms() {
                            for (&y, cy) in p2.terms() {
                                rhs.add_term(vec![x, y], &c.mul(cx)?.mul(cy)?);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Ok(Some(witness(
                        vec![self.name(a), self.name(b)],
                        self.tensor_json(&lhs),
                        self.tensor_json(&rhs),
                    )));
                }
            }
        }
        Ok(None)
    }

    pub fn is_bialgebra(&self) -> Result<bool> {
        Ok(self.bialgebra_witness()?.is_none())
    }

    /// Commutative-flavored: symmetric, product, or explicit with a
    /// graded-commutative product.
    pub fn is_commutative(&self) -> Result<bool> {
        Ok(self.check_commutative()?.is_none())
    }
}
