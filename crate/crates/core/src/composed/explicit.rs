//! `f ◇ g` between symmetric algebras by summing connected diagrams, and
//! the definitional reference computation it is checked against.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::connectivity::{classified_unshuffles, psi_apply};
use super::family::{sym_of, ComponentFamily};
use crate::error::{Error, Result};
use crate::graded::{compositions, Element, Tensor};
use crate::mvcat::{diamond, same_algebra, MVAlgebra};
use crate::scalars::factorial;
use crate::symalg::{tensor_apply, SymAlgebra};

/// Largest diagram sizes that contributed a nonzero term.
///
/// `empty_inputs` counts lower vertices fed the unit (insertions of `g(1)`),
/// `empty_outputs` counts upper vertices landing in the ground ring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComposeStats {
    pub max_lower: usize,
    pub max_upper: usize,
    pub max_empty_inputs: usize,
    pub max_empty_outputs: usize,
}

type PatternKey = (Vec<usize>, Vec<usize>);

/// Connected unshuffles for each pair of block patterns, computed once.
#[derive(Default)]
struct ConnectedCache {
    table: HashMap<PatternKey, Vec<Vec<usize>>>,
}

impl ConnectedCache {
    fn get(&mut self, lower: &[usize], upper: &[usize]) -> Result<&Vec<Vec<usize>>> {
        let key = (lower.to_vec(), upper.to_vec());
        if !self.table.contains_key(&key) {
            let connected = classified_unshuffles(lower, upper)?
                .into_iter()
                .filter(|(_, c)| *c == 1)
                .map(|(k, _)| k)
                .collect();
            self.table.insert(key.clone(), connected);
        }
        Ok(&self.table[&key])
    }
}

fn weight(k: usize, l: usize) -> BigRational {
    BigRational::new(BigInt::from(1), factorial(k) * factorial(l))
}

/// Multiply out the factors of every term whose total length fits in the
/// target, counting ground-ring factors.
fn multiply_fitting(
    tgt: &SymAlgebra,
    t: &Tensor,
    stats: &mut ComposeStats,
    out: &mut BTreeMap<usize, Element>,
) -> Result<()> {
    for (key, c) in t.terms() {
        let word: Vec<usize> = key
            .iter()
            .flat_map(|&w| tgt.monomial(w).iter().copied())
            .collect();
        if word.len() > tgt.max_len() {
            continue;
        }
        if let Some((sign, w)) = tgt.word(&word)? {
            stats.max_empty_outputs = stats
                .max_empty_outputs
                .max(key.iter().filter(|&&w| w == 0).count());
            stats.max_upper = stats.max_upper.max(key.len());
            out.entry(word.len())
                .or_insert_with(|| Element::zero(c.ring()))
                .add_term(w, &if sign < 0 { c.neg() } else { c.clone() });
        }
    }
    Ok(())
}

/// How the upper blocks of a diagram are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Enumeration {
    /// Every ordered unshuffle, weighted by `1/l!`.
    Naive,
    /// One ordering per set partition of the middle letters, pruned by the
    /// valuation and output length that `f` can still reach.
    #[default]
    Reduced,
}

/// Per input length `s`: the least valuation and least output length over
/// the cells of `f` with input length at least `s`.
struct UpperBounds {
    valuation: Vec<Option<u32>>,
    output: Vec<Option<usize>>,
    max_output: usize,
}

impl UpperBounds {
    fn new(f: &ComponentFamily, max_input: usize, max_output: usize) -> UpperBounds {
        let mut valuation = vec![None; max_input + 2];
        let mut output = vec![None; max_input + 2];
        for (&(s, t), cell) in f.cells() {
            let v = cell
                .images()
                .iter()
                .flat_map(|img| img.terms().filter_map(|(_, c)| c.ideal_valuation()))
                .min();
            if let Some(v) = v {
                valuation[s] = Some(valuation[s].map_or(v, |w: u32| w.min(v)));
                output[s] = Some(output[s].map_or(t, |w: usize| w.min(t)));
            }
        }
        for s in (0..=max_input).rev() {
            valuation[s] = min_opt(valuation[s], valuation[s + 1]);
            output[s] = min_opt(output[s], output[s + 1]);
        }
        UpperBounds {
            valuation,
            output,
            max_output,
        }
    }

    /// Whether blocks of these (possibly still growing) sizes can contribute.
    fn feasible(&self, sizes: impl Iterator<Item = usize>, budget: u32) -> bool {
        let (mut v, mut o) = (0, 0);
        for s in sizes {
            match (
                self.valuation.get(s).copied().flatten(),
                self.output.get(s).copied().flatten(),
            ) {
                (Some(a), Some(b)) => {
                    v += a;
                    o += b;
                }
                _ => return false,
            }
        }
        v <= budget && o <= self.max_output
    }
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Connected set partitions of the letters, blocks ordered by least letter,
/// returned as `(block sizes, unshuffle)`.
fn connected_partitions(
    lower: &[usize],
    bounds: &UpperBounds,
    budget: u32,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let lower_of: Vec<usize> = lower
        .iter()
        .enumerate()
        .flat_map(|(a, &len)| std::iter::repeat_n(a, len))
        .collect();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        p: usize,
        lower_of: &[usize],
        k: usize,
        bounds: &UpperBounds,
        budget: u32,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if p == lower_of.len() {
            let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
            let kappa: Vec<usize> = blocks.iter().flatten().copied().collect();
            let upper_of: Vec<usize> = sizes
                .iter()
                .enumerate()
                .flat_map(|(b, &len)| std::iter::repeat_n(b, len))
                .collect();
            if super::connectivity::graph_unchecked(&kappa, lower_of, &upper_of, k, sizes.len())
                .components()
                == 1
            {
                out.push((sizes, kappa));
            }
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![p]);
            } else {
                blocks[b].push(p);
            }
            if bounds.feasible(blocks.iter().map(Vec::len), budget) {
                rec(p + 1, lower_of, k, bounds, budget, blocks, out);
            }
            if blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    rec(
        0,
        &lower_of,
        lower.len(),
        bounds,
        budget,
        &mut blocks,
        &mut out,
    );
    out
}

/// `f ◇ g` for `g: S(U) → S(U′)` and `f: S(U′) → S(U″)`, cell by cell.
pub fn compose_explicit(f: &ComponentFamily, g: &ComponentFamily) -> Result<ComponentFamily> {
    compose_explicit_with_stats(f, g, Enumeration::default()).map(|(fam, _)| fam)
}

pub fn compose_explicit_with_stats(
    f: &ComponentFamily,
    g: &ComponentFamily,
    enumeration: Enumeration,
) -> Result<(ComponentFamily, ComposeStats)> {
    if !same_algebra(g.target(), f.source()) {
        return Err(Error::BasisMismatch("middle algebras differ".into()));
    }
    if !f.is_lin0() || !g.is_lin0() {
        return Err(Error::NotLin0);
    }
    for fam in [f, g] {
        if fam.cells().any(|(_, cell)| !cell.is_homogeneous_of(0)) {
            return Err(Error::NotDegreeZero);
        }
    }
    let src = sym_of(g.source())?.clone();
    let mid = sym_of(f.source())?.clone();
    let tgt = sym_of(f.target())?.clone();
    let ring = src.ring();
    let nilpotency = ring.ideal_nilpotency();
    let g_map = g.assemble()?.map().clone();
    let f_map = f.assemble()?.map().clone();
    let f_unit = f_map.image(0).clone();
    let bounds = UpperBounds::new(f, mid.max_len(), tgt.max_len());

    let mut cache = ConnectedCache::default();
    let mut stats = ComposeStats::default();
    let mut result = ComponentFamily::zero(g.source().clone(), f.target().clone())?;
    for x in 0..src.dim() {
        let n = src.word_length(x);
        let mut by_len: BTreeMap<usize, Element> = BTreeMap::new();
        if x == 0 && !f_unit.is_zero() {
            // No lower vertex: the unit passes straight to f.
            stats.max_upper = stats.max_upper.max(1);
            for (&w, c) in f_unit.terms() {
                by_len
                    .entry(tgt.word_length(w))
                    .or_insert_with(|| Element::zero(ring))
                    .add_term(w, c);
            }
        }
        // Each unit input block consumes a factor of g(1) from the maximal ideal.
        for k in 1..n + nilpotency as usize {
            let split = src.diagonal_monomial(x, k);
            let lower_maps = vec![&g_map; k];
            // Middle terms grouped by (unit input blocks, block pattern).
            let mut patterns: BTreeMap<(usize, Vec<usize>), Tensor> = BTreeMap::new();
            for (key, c) in split.terms() {
                let empty = key.iter().filter(|&&b| b == 0).count();
                let middle =
                    tensor_apply(&lower_maps, &Tensor::basis(ring, key.clone()).scale(c)?)?;
                for (mkey, mc) in middle.terms() {
                    let pattern: Vec<usize> = mkey.iter().map(|&y| mid.word_length(y)).collect();
                    patterns
                        .entry((empty, pattern))
                        .or_insert_with(|| Tensor::zero(ring))
                        .add_term(mkey.clone(), mc);
                }
            }
            let lower_weight = BigRational::new(BigInt::from(1), factorial(k));
            for ((empty, lower), terms) in &patterns {
                let total: usize = lower.iter().sum();
                if total == 0 {
                    if k == 1 {
                        // One lower vertex and no upper vertex: the counit of g(x).
                        let c = terms.coefficient(&vec![0]);
                        by_len
                            .entry(0)
                            .or_insert_with(|| Element::zero(ring))
                            .add_term(0, &c);
                        stats.max_lower = stats.max_lower.max(1);
                        stats.max_empty_inputs = stats.max_empty_inputs.max(*empty);
                    }
                    continue;
                }
                if lower.contains(&0) {
                    continue;
                }
                // Upper block patterns with their unshuffles and weights.
                let mut groups: Vec<(Vec<usize>, Vec<Vec<usize>>, BigRational)> = Vec::new();
                match enumeration {
                    Enumeration::Naive => {
                        for l in 1..=total {
                            for upper in compositions(total, l, mid.max_len()) {
                                if upper.contains(&0) {
                                    continue;
                                }
                                let connected = cache.get(lower, &upper)?;
                                if !connected.is_empty() {
                                    groups.push((upper, connected.clone(), weight(1, l)));
                                }
                            }
                        }
                    }
                    Enumeration::Reduced => {
                        let used = terms
                            .terms()
                            .filter_map(|(_, c)| c.ideal_valuation())
                            .min()
                            .unwrap_or(0);
                        let budget = (nilpotency - 1).saturating_sub(used);
                        let mut by_sizes: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
                        for (sizes, kappa) in connected_partitions(lower, &bounds, budget) {
                            by_sizes.entry(sizes).or_default().push(kappa);
                        }
                        groups.extend(
                            by_sizes
                                .into_iter()
                                .map(|(sizes, kappas)| (sizes, kappas, weight(1, 1))),
                        );
                    }
                }
                let mut contributions: BTreeMap<usize, Element> = BTreeMap::new();
                for (upper, kappas, w) in &groups {
                    let kappas: Vec<&[usize]> = kappas.iter().map(Vec::as_slice).collect();
                    let glued = psi_apply(&mid, lower, upper, &kappas, terms)?;
                    if glued.is_zero() {
                        continue;
                    }
                    let upper_maps = vec![&f_map; upper.len()];
                    let outputs = tensor_apply(&upper_maps, &glued)?.scale_rational(w);
                    multiply_fitting(&tgt, &outputs, &mut stats, &mut contributions)?;
                }
                if contributions.values().all(Element::is_zero) {
                    continue;
                }
                stats.max_lower = stats.max_lower.max(k);
                stats.max_empty_inputs = stats.max_empty_inputs.max(*empty);
                for (m, e) in contributions {
                    by_len
                        .entry(m)
                        .or_insert_with(|| Element::zero(ring))
                        .add_assign(&e.scale_rational(&lower_weight))?;
                }
            }
        }
        for (m, e) in by_len {
            result.add_to_cell(x, m, &e)?;
        }
    }
    Ok((result, stats))
}

/// How far the word length can grow under a family: `⌈e/v⌉·(N − 1)` over
/// terms of length excess `e > 0` and ideal valuation `v`.
pub fn length_growth(fam: &ComponentFamily) -> Result<usize> {
    let ring = fam.source().ring();
    let mut ratio = 0;
    for (&(n, m), cell) in fam.cells() {
        if m <= n {
            continue;
        }
        let excess = m - n;
        for img in cell.images() {
            for (_, c) in img.terms() {
                for (&(i, j), _) in c.terms() {
                    let v = ring.ideal_order(i, j) as usize;
                    if v == 0 {
                        return Err(Error::InvalidArgument(format!(
                            "component ({n},{m}) raises word length with a unit coefficient, so the composite is unbounded"
                        )));
                    }
                    ratio = ratio.max(excess.div_ceil(v));
                }
            }
        }
    }
    Ok(ratio * (ring.ideal_nilpotency() as usize).saturating_sub(1))
}

fn enlarged(a: &MVAlgebra, extra: usize) -> Result<Arc<MVAlgebra>> {
    let sym = sym_of(a)?;
    Ok(Arc::new(MVAlgebra::symmetric_trivial(
        sym.with_max_len(sym.max_len() + extra)?,
    )?))
}

/// Reference value of `f ◇ g`: `log(exp f ∘ exp g)` computed with enough
/// room in the middle and target algebras that no word is ever truncated.
pub fn compose_definitional(f: &ComponentFamily, g: &ComponentFamily) -> Result<ComponentFamily> {
    if !same_algebra(g.target(), f.source()) {
        return Err(Error::BasisMismatch("middle algebras differ".into()));
    }
    let (grow_g, grow_f) = (length_growth(g)?, length_growth(f)?);
    let mid = enlarged(f.source(), grow_g)?;
    let tgt = enlarged(
        f.target(),
        grow_g
            + grow_f
            + sym_of(f.source())?
                .max_len()
                .saturating_sub(sym_of(f.target())?.max_len()),
    )?;
    let g_big = g.transport(g.source().clone(), mid.clone())?.assemble()?;
    let f_big = f.transport(mid, tgt)?.assemble()?;
    let composite = ComponentFamily::components(&diamond(&f_big, &g_big)?)?;
    composite.transport(g.source().clone(), f.target().clone())
}
