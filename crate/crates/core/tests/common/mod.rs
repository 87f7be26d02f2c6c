//! Shared fixtures: an exhaustive enumerator of non-isomorphic graphs.

use triad_core::Graph;

/// Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, arr, out);
            if k.is_multiple_of(2) {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    let mut arr: Vec<usize> = (0..n).collect();
    go(n, &mut arr, &mut out);
    out
}

/// All non-isomorphic simple graphs on exactly `n` vertices (n <= 6): one
/// canonical representative per isomorphism class, found by keeping every
/// edge bitmask that is minimal over all vertex relabelings.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "enumeration is exponential; fixtures stop at 6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    let mut pair_idx = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        pair_idx[u][v] = k;
        pair_idx[v][u] = k;
    }
    let remaps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| pair_idx[p[u]][p[v]]).collect())
        .collect();

    let mut reps = Vec::new();
    'mask: for mask in 0u32..1 << m {
        for remap in &remaps {
            let mut img = 0u32;
            for (k, &image_k) in remap.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    img |= 1 << image_k;
                }
            }
            if img < mask {
                continue 'mask;
            }
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter_map(|(k, &e)| (mask >> k & 1 == 1).then_some(e))
            .collect();
        reps.push(Graph::new(n, edges).unwrap());
    }
    reps
}
