//! Maps between symmetric algebras split into word-length components.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{Element, LinMap};
use crate::json::{as_array, as_usize, field};
use crate::mvcat::{ConvMap, MVAlgebra};
use crate::symalg::SymAlgebra;

pub(crate) fn sym_of(a: &MVAlgebra) -> Result<&SymAlgebra> {
    a.sym().ok_or(Error::NotSymmetricFlavor)
}

/// The table `(n, m) ↦ f^m_n` of a map `S(U′) → S(U″)`.
///
/// Each cell is stored as a map on the full truncated bases, supported on
/// words of length `n` and landing in words of length `m`. Zero cells are
/// not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentFamily {
    source: Arc<MVAlgebra>,
    target: Arc<MVAlgebra>,
    cells: BTreeMap<(usize, usize), LinMap>,
}

impl ComponentFamily {
    pub fn zero(source: Arc<MVAlgebra>, target: Arc<MVAlgebra>) -> Result<ComponentFamily> {
        sym_of(&source)?;
        sym_of(&target)?;
        Ok(ComponentFamily {
            source,
            target,
            cells: BTreeMap::new(),
        })
    }

    pub fn source(&self) -> &Arc<MVAlgebra> {
        &self.source
    }
    pub fn target(&self) -> &Arc<MVAlgebra> {
        &self.target
    }
    pub fn source_len(&self) -> usize {
        sym_of(&self.source)
            .expect("checked at construction")
            .max_len()
    }
    pub fn target_len(&self) -> usize {
        sym_of(&self.target)
            .expect("checked at construction")
            .max_len()
    }

    /// Nonzero cells in `(n, m)` order.
    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &LinMap)> {
        self.cells.iter()
    }

    pub fn cell(&self, n: usize, m: usize) -> LinMap {
        self.cells.get(&(n, m)).cloned().unwrap_or_else(|| {
            LinMap::zero(
                self.source.basis().clone(),
                self.target.basis().clone(),
                self.source.ring(),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Add `value` (which must have target length `m`) to the image of the
    /// source monomial `x` in its cell.
    pub(crate) fn add_to_cell(&mut self, x: usize, m: usize, value: &Element) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        let n = sym_of(&self.source)?.word_length(x);
        let (src, tgt, ring) = (
            self.source.basis().clone(),
            self.target.basis().clone(),
            self.source.ring(),
        );
        let cell = self
            .cells
            .entry((n, m))
            .or_insert_with(|| LinMap::zero(src, tgt, ring));
        let updated = cell.image(x).add(value)?;
        cell.set_image(x, updated);
        if cell.is_zero() {
            self.cells.remove(&(n, m));
        }
        Ok(())
    }

    /// Insert a whole image, splitting it by word length.
    pub(crate) fn add_image(&mut self, x: usize, image: &Element) -> Result<()> {
        let tgt = sym_of(&self.target)?.clone();
        let mut by_len: BTreeMap<usize, Element> = BTreeMap::new();
        for (&y, c) in image.terms() {
            by_len
                .entry(tgt.word_length(y))
                .or_insert_with(|| Element::zero(image.ring()))
                .add_term(y, c);
        }
        by_len
            .iter()
            .try_for_each(|(&m, part)| self.add_to_cell(x, m, part))
    }

    /// Split a map between symmetric algebras into its components.
    pub fn components(f: &ConvMap) -> Result<ComponentFamily> {
        let mut fam = ComponentFamily::zero(f.source().clone(), f.target().clone())?;
        for x in 0..f.source().dim() {
            fam.add_image(x, f.image(x))?;
        }
        Ok(fam)
    }

    /// Sum of all components as one map.
    pub fn assemble(&self) -> Result<ConvMap> {
        let mut map = LinMap::zero(
            self.source.basis().clone(),
            self.target.basis().clone(),
            self.source.ring(),
        );
        for cell in self.cells.values() {
            map = map.add(cell)?;
        }
        ConvMap::new(self.source.clone(), self.target.clone(), map)
    }

    /// The same components between algebras on the same generators but
    /// other truncations; cells that do not fit are dropped.
    pub fn transport(
        &self,
        source: Arc<MVAlgebra>,
        target: Arc<MVAlgebra>,
    ) -> Result<ComponentFamily> {
        let (old_src, old_tgt) = (sym_of(&self.source)?, sym_of(&self.target)?);
        let (new_src, new_tgt) = (sym_of(&source)?.clone(), sym_of(&target)?.clone());
        if old_src.generators() != new_src.generators()
            || old_tgt.generators() != new_tgt.generators()
        {
            return Err(Error::BasisMismatch(
                "transport needs the same generators".into(),
            ));
        }
        let mut out = ComponentFamily::zero(source.clone(), target.clone())?;
        for (&(n, m), cell) in &self.cells {
            if n > new_src.max_len() || m > new_tgt.max_len() {
                continue;
            }
            for x in 0..self.source.dim() {
                let img = cell.image(x);
                if img.is_zero() {
                    continue;
                }
                let nx = new_src.index_of(old_src.monomial(x)).expect("length fits");
                let mut moved = Element::zero(img.ring());
                for (&y, c) in img.terms() {
                    moved.add_term(
                        new_tgt.index_of(old_tgt.monomial(y)).expect("length fits"),
                        c,
                    );
                }
                out.add_to_cell(nx, m, &moved)?;
            }
        }
        Ok(out)
    }

    /// Whether `f(1)` lies in the maximal ideal.
    pub fn is_lin0(&self) -> bool {
        self.cells
            .iter()
            .filter(|((n, _), _)| *n == 0)
            .all(|(_, cell)| cell.image(0).in_maximal_ideal())
    }

    /// `[{"n", "m", "map": [{"in", "out"}]}]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.cells
                .iter()
                .map(|(&(n, m), cell)| {
                    let map: Vec<Value> = (0..self.source.dim())
                        .filter(|&x| !cell.image(x).is_zero())
                        .map(|x| json!({ "in": self.source.atom_json(x), "out": self.target.element_json(cell.image(x)) }))
                        .collect();
                    json!({ "n": n, "m": m, "map": map })
                })
                .collect(),
        )
    }

    /// Inverse of [`ComponentFamily::to_json`]; every entry must respect its
    /// declared `(n, m)`.
    pub fn from_json(
        source: Arc<MVAlgebra>,
        target: Arc<MVAlgebra>,
        v: &Value,
    ) -> Result<ComponentFamily> {
        let mut fam = ComponentFamily::zero(source.clone(), target.clone())?;
        let (s, t) = (sym_of(&source)?.clone(), sym_of(&target)?.clone());
        for entry in as_array(v, "family")? {
            let n = as_usize(field(entry, "n")?, "n")?;
            let m = as_usize(field(entry, "m")?, "m")?;
            if n > s.max_len() || m > t.max_len() {
                return Err(Error::TruncationOverflow {
                    length: n.max(m),
                    bound: s.max_len().min(t.max_len()),
                });
            }
            for item in as_array(field(entry, "map")?, "map")? {
                let Some((sign, x)) = source.atom_from_json(field(item, "in")?)? else {
                    continue;
                };
                let mut out = target.element_from_json(field(item, "out")?)?;
                if sign < 0 {
                    out = out.neg();
                }
                if s.word_length(x) != n || out.keys().any(|&y| t.word_length(y) != m) {
                    return Err(Error::Schema(format!(
                        "family entry ({n},{m}) has a term of another word length"
                    )));
                }
                fam.add_to_cell(x, m, &out)?;
            }
        }
        Ok(fam)
    }
}
