//! Decomposition of K_n into K_c cliques and K_{c,c} bicliques by
//! recursive halving: K_m = K_{m/2} ⊎ K_{m/2,m/2} ⊎ K_{m/2}, with
//! oversized bicliques tiled into c-sized side groups.

use crate::error::{Error, Result};
use crate::graph::norm_edge;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Clique,
    Biclique,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionBlock {
    pub kind: BlockKind,
    pub left: Vec<usize>,
    /// Present for bicliques only.
    pub right: Option<Vec<usize>>,
}

impl DecompositionBlock {
    fn clique(vertices: Vec<usize>) -> Self {
        Self { kind: BlockKind::Clique, left: vertices, right: None }
    }

    fn biclique(left: Vec<usize>, right: Vec<usize>) -> Self {
        Self { kind: BlockKind::Biclique, left, right: Some(right) }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            BlockKind::Clique => self.left.len() * (self.left.len() - 1) / 2,
            BlockKind::Biclique => {
                self.left.len() * self.right.as_ref().map_or(0, Vec::len)
            }
        }
    }

    /// Normalized edges of this block, in deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        match self.kind {
            BlockKind::Clique => {
                for (i, &u) in self.left.iter().enumerate() {
                    for &v in &self.left[i + 1..] {
                        out.push(norm_edge(u, v));
                    }
                }
            }
            BlockKind::Biclique => {
                let right = self.right.as_deref().unwrap_or(&[]);
                for &u in &self.left {
                    for &v in right {
                        out.push(norm_edge(u, v));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteDecomposition {
    n: usize,
    c: usize,
    blocks: Vec<DecompositionBlock>,
}

impl CompleteDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn blocks(&self) -> &[DecompositionBlock] {
        &self.blocks
    }

    pub fn total_edges(&self) -> usize {
        self.blocks.iter().map(DecompositionBlock::edge_count).sum()
    }

    /// Check that the block edge sets partition E(K_n) exactly: every edge
    /// of the complete graph appears in exactly one block.
    pub fn is_edge_partition(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        let mut count = 0usize;
        for block in &self.blocks {
            for (u, v) in block.edges() {
                if u == v || v >= self.n {
                    return false;
                }
                let slot = &mut seen[u * self.n + v];
                if *slot {
                    return false;
                }
                *slot = true;
                count += 1;
            }
        }
        count == self.n * (self.n - 1) / 2
    }
}

/// Decompose K_n (n = c·2^k) into K_c and K_{c,c} blocks.
pub fn decompose_complete(n: usize, c: usize) -> Result<CompleteDecomposition> {
    if c == 0 {
        return Err(Error::InvalidParameter("group size c must be positive".into()));
    }
    let mut m = n;
    while m > c && m.is_multiple_of(2) {
        m /= 2;
    }
    if m != c {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is not of the form c·2^k for c = {c}"
        )));
    }
    let mut blocks = Vec::new();
    split(0, n, c, &mut blocks);
    Ok(CompleteDecomposition { n, c, blocks })
}

fn split(start: usize, end: usize, c: usize, blocks: &mut Vec<DecompositionBlock>) {
    if end - start == c {
        blocks.push(DecompositionBlock::clique((start..end).collect()));
        return;
    }
    let mid = start + (end - start) / 2;
    split(start, mid, c, blocks);
    // tile the K_{m/2,m/2} between the halves into c-sized side groups
    for ls in (start..mid).step_by(c) {
        for rs in (mid..end).step_by(c) {
            blocks.push(DecompositionBlock::biclique(
                (ls..ls + c).collect(),
                (rs..rs + c).collect(),
            ));
        }
    }
    split(mid, end, c, blocks);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_into_fours_gives_the_three_figure_blocks() {
        let d = decompose_complete(8, 4).unwrap();
        assert_eq!(
            d.blocks(),
            &[
                DecompositionBlock::clique(vec![0, 1, 2, 3]),
                DecompositionBlock::biclique(vec![0, 1, 2, 3], vec![4, 5, 6, 7]),
                DecompositionBlock::clique(vec![4, 5, 6, 7]),
            ]
        );
        let counts: Vec<usize> = d.blocks().iter().map(DecompositionBlock::edge_count).collect();
        assert_eq!(counts, [6, 16, 6]);
        assert_eq!(d.total_edges(), 28);
        assert!(d.is_edge_partition());
    }

    #[test]
    fn n_equals_c_is_a_single_clique() {
        for c in 1..=6 {
            let d = decompose_complete(c, c).unwrap();
            assert_eq!(d.blocks().len(), 1);
            assert_eq!(d.blocks()[0], DecompositionBlock::clique((0..c).collect()));
        }
    }

    #[test]
    fn sixteen_into_fours_tiles_the_large_biclique() {
        let d = decompose_complete(16, 4).unwrap();
        let cliques = d.blocks().iter().filter(|b| b.kind == BlockKind::Clique).count();
        let bicliques = d.blocks().iter().filter(|b| b.kind == BlockKind::Biclique).count();
        assert_eq!((cliques, bicliques), (4, 6));
        assert_eq!(d.total_edges(), 120);
        assert!(d.is_edge_partition());
    }

    #[test]
    fn partitions_hold_for_all_small_parameter_combinations() {
        for c in 1..=8 {
            for k in 0..=3 {
                let n = c << k;
                if n > 32 {
                    continue;
                }
                let d = decompose_complete(n, c).unwrap();
                assert!(d.is_edge_partition(), "n={n} c={c}");
                assert!(d.blocks().iter().all(|b| match b.kind {
                    BlockKind::Clique => b.left.len() == c && b.right.is_none(),
                    BlockKind::Biclique =>
                        b.left.len() == c && b.right.as_ref().unwrap().len() == c,
                }));
            }
        }
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        assert!(decompose_complete(12, 4).is_err());
        assert!(decompose_complete(6, 4).is_err());
        assert!(decompose_complete(0, 4).is_err());
        assert!(decompose_complete(5, 0).is_err());
        assert!(decompose_complete(3, 2).is_err());
    }
}
