//! Unshuffles between block patterns, their incidence graphs, and the maps
//! `Ψ` obtained by multiplying blocks together and splitting them again.

use crate::error::{Error, Result};
use crate::graded::{is_unshuffle, koszul_sign, unshuffles, Tensor};
use crate::symalg::{normalize, SymAlgebra};

/// Bipartite graph of an unshuffle: one lower vertex per input block, one
/// upper vertex per output block, one edge per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    lower: usize,
    upper: usize,
    edges: Vec<(usize, usize)>,
    components: usize,
}

impl ConnectivityGraph {
    pub fn lower(&self) -> usize {
        self.lower
    }
    pub fn upper(&self) -> usize {
        self.upper
    }
    /// Edges as `(upper block, lower block)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn vertex_count(&self) -> usize {
        self.lower + self.upper
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn components(&self) -> usize {
        self.components
    }
    /// First Betti number `E − V + c`.
    pub fn betti(&self) -> usize {
        self.edges.len() + self.components - self.vertex_count()
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Block index of every position for a pattern of block lengths.
fn block_of(blocks: &[usize]) -> Vec<usize> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(b, &len)| std::iter::repeat_n(b, len))
        .collect()
}

fn check_sums(lower: &[usize], upper: &[usize]) -> Result<()> {
    let (j, s) = (lower.iter().sum::<usize>(), upper.iter().sum::<usize>());
    if j != s {
        return Err(Error::BlockSumMismatch { lower: j, upper: s });
    }
    Ok(())
}

/// Graph of `kappa`, which reads `upper`-blocks off the concatenation of the
/// `lower`-blocks: `kappa[q]` is the letter placed at output position `q`.
pub fn connectivity(
    kappa: &[usize],
    lower: &[usize],
    upper: &[usize],
) -> Result<ConnectivityGraph> {
    check_sums(lower, upper)?;
    if !is_unshuffle(kappa, upper) {
        return Err(Error::NotAnUnshuffle);
    }
    Ok(graph_unchecked(
        kappa,
        &block_of(lower),
        &block_of(upper),
        lower.len(),
        upper.len(),
    ))
}

pub(crate) fn graph_unchecked(
    kappa: &[usize],
    lower_of: &[usize],
    upper_of: &[usize],
    k: usize,
    l: usize,
) -> ConnectivityGraph {
    let edges: Vec<(usize, usize)> = kappa
        .iter()
        .enumerate()
        .map(|(q, &p)| (upper_of[q], lower_of[p]))
        .collect();
    let mut parent: Vec<usize> = (0..k + l).collect();
    let mut components = k + l;
    for &(b, a) in &edges {
        let (x, y) = (find(&mut parent, k + b), find(&mut parent, a));
        if x != y {
            parent[x] = y;
            components -= 1;
        }
    }
    ConnectivityGraph {
        lower: k,
        upper: l,
        edges,
        components,
    }
}

/// Unshuffles for the pattern `upper`, paired with their component counts.
pub fn classified_unshuffles(lower: &[usize], upper: &[usize]) -> Result<Vec<(Vec<usize>, usize)>> {
    check_sums(lower, upper)?;
    let (lower_of, upper_of) = (block_of(lower), block_of(upper));
    Ok(unshuffles(upper)
        .into_iter()
        .map(|kappa| {
            let c =
                graph_unchecked(&kappa, &lower_of, &upper_of, lower.len(), upper.len()).components;
            (kappa, c)
        })
        .collect())
}

/// Apply the signed sum over `kappas` to the terms of `input` whose factor
/// lengths equal `lower`, producing factors of lengths `upper`.
pub(crate) fn psi_apply(
    sym: &SymAlgebra,
    lower: &[usize],
    upper: &[usize],
    kappas: &[&[usize]],
    input: &Tensor,
) -> Result<Tensor> {
    let degrees = sym.generators().degrees();
    let mut out = Tensor::zero(input.ring());
    for (key, c) in input.terms() {
        if key.len() != lower.len()
            || key
                .iter()
                .zip(lower)
                .any(|(&y, &j)| sym.word_length(y) != j)
        {
            continue;
        }
        let letters: Vec<usize> = key
            .iter()
            .flat_map(|&y| sym.monomial(y).iter().copied())
            .collect();
        let letter_degrees: Vec<i32> = letters.iter().map(|&g| degrees[g]).collect();
        'kappa: for kappa in kappas {
            let mut sign = koszul_sign(kappa, &letter_degrees);
            let mut factors = Vec::with_capacity(upper.len());
            let mut start = 0;
            for &len in upper {
                let word: Vec<usize> = kappa[start..start + len]
                    .iter()
                    .map(|&p| letters[p])
                    .collect();
                start += len;
                let Some((s, sorted)) = normalize(&word, degrees) else {
                    continue 'kappa;
                };
                sign *= s;
                match sym.index_of(&sorted) {
                    Some(z) => factors.push(z),
                    None => {
                        return Err(Error::TruncationOverflow {
                            length: len,
                            bound: sym.max_len(),
                        })
                    }
                }
            }
            out.add_term(factors, &if sign < 0 { c.neg() } else { c.clone() });
        }
    }
    Ok(out)
}

/// `Ψ`: multiply the `lower`-blocks together and split into `upper`-blocks,
/// summed over all unshuffles.
pub fn psi(sym: &SymAlgebra, lower: &[usize], upper: &[usize], input: &Tensor) -> Result<Tensor> {
    let all = classified_unshuffles(lower, upper)?;
    let kappas: Vec<&[usize]> = all.iter().map(|(k, _)| k.as_slice()).collect();
    psi_apply(sym, lower, upper, &kappas, input)
}

/// The part of `Ψ` coming from unshuffles with exactly `components`
/// connected components.
pub fn psi_by_connectivity(
    sym: &SymAlgebra,
    lower: &[usize],
    upper: &[usize],
    components: usize,
    input: &Tensor,
) -> Result<Tensor> {
    let all = classified_unshuffles(lower, upper)?;
    let kappas: Vec<&[usize]> = all
        .iter()
        .filter(|(_, c)| *c == components)
        .map(|(k, _)| k.as_slice())
        .collect();
    psi_apply(sym, lower, upper, &kappas, input)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graded::GradedBasis;
    use crate::scalars::{Ring, Scalar};

    fn sym(degs: &[i32], d: usize) -> SymAlgebra {
        let gens = GradedBasis::new(
            degs.iter()
                .enumerate()
                .map(|(i, &g)| (format!("u{}", i + 1), g)),
        )
        .unwrap();
        SymAlgebra::new(Arc::new(gens), d, Ring::rationals()).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = connectivity(&[0, 1], &[1, 1], &[1, 1]).unwrap();
        assert_eq!((g.components(), g.betti()), (2, 0));
        for kappa in unshuffles(&[1, 1]) {
            let g = connectivity(&kappa, &[2], &[1, 1]).unwrap();
            assert_eq!((g.components(), g.betti()), (1, 0));
        }
        assert!(matches!(
            connectivity(&[1, 0], &[2], &[2]),
            Err(Error::NotAnUnshuffle)
        ));
        assert!(matches!(
            connectivity(&[0, 1], &[1], &[2]),
            Err(Error::BlockSumMismatch { lower: 1, upper: 2 })
        ));
    }

    #[test]
    fn psi_examples() {
        let s = sym(&[0, 0], 2);
        let ring = s.ring();
        let (u1, u2) = (s.generator_monomial(0), s.generator_monomial(1));
        let input = Tensor::basis(ring, vec![u1, u2]);
        let product = s.index_of(&[0, 1]).unwrap();
        assert_eq!(
            psi(&s, &[1, 1], &[2], &input).unwrap(),
            Tensor::basis(ring, vec![product])
        );
        assert_eq!(
            psi_by_connectivity(&s, &[1, 1], &[2], 1, &input).unwrap(),
            Tensor::basis(ring, vec![product])
        );

        let full = psi(&s, &[1, 1], &[1, 1], &input).unwrap();
        let mut expected = Tensor::basis(ring, vec![u1, u2]);
        expected.add_term(vec![u2, u1], &Scalar::one(ring));
        assert_eq!(full, expected);
        assert!(psi_by_connectivity(&s, &[1, 1], &[1, 1], 1, &input)
            .unwrap()
            .is_zero());
        assert_eq!(
            psi_by_connectivity(&s, &[1, 1], &[1, 1], 2, &input).unwrap(),
            full
        );

        let single = Tensor::basis(ring, vec![product]);
        assert_eq!(psi(&s, &[2], &[2], &single).unwrap(), single);
    }
}
