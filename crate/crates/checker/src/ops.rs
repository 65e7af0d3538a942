//! Brute-force recomputation of every quantity a rule depends on.
//!
//! Colorings are plain color slices here; nothing is taken from the solver
//! beyond adjacency queries on the input graph.

use std::cmp::Ordering;

use certcanon_core::{Graph, Vertex};

/// Cells in color order, each sorted.
pub fn cells(colors: &[u32]) -> Vec<Vec<Vertex>> {
    let m = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); m];
    for (v, &c) in colors.iter().enumerate() {
        out[c as usize].push(v as Vertex);
    }
    out
}

fn from_cells(n: usize, cells: &[Vec<Vertex>]) -> Vec<u32> {
    let mut colors = vec![0; n];
    for (k, cell) in cells.iter().enumerate() {
        for &v in cell {
            colors[v as usize] = k as u32;
        }
    }
    colors
}

pub fn is_discrete(colors: &[u32]) -> bool {
    let mut seen = vec![false; colors.len()];
    colors
        .iter()
        .all(|&c| !std::mem::replace(&mut seen[c as usize], true))
}

/// `ind(π, v)`: `{v}` placed just before the rest of its cell.
pub fn individualize(colors: &[u32], v: Vertex) -> Vec<u32> {
    let c = colors[v as usize];
    let alone = colors.iter().filter(|&&x| x == c).count() == 1;
    if alone {
        return colors.to_vec();
    }
    colors
        .iter()
        .enumerate()
        .map(|(u, &x)| if x > c || (x == c && u as Vertex != v) { x + 1 } else { x })
        .collect()
}

/// `split(G, π, i)`.
pub fn split(g: &Graph, colors: &[u32], i: u32) -> Vec<u32> {
    let cs = cells(colors);
    let w = &cs[i as usize];
    let mut out = Vec::with_capacity(cs.len());
    for cell in &cs {
        if cell.len() == 1 {
            out.push(cell.clone());
            continue;
        }
        let count = |u: Vertex| w.iter().filter(|&&x| g.has_edge(u, x)).count();
        let mut values: Vec<usize> = cell.iter().map(|&u| count(u)).collect();
        values.sort_unstable();
        values.dedup();
        let mut frags: Vec<Vec<Vertex>> = values
            .iter()
            .map(|&val| cell.iter().copied().filter(|&u| count(u) == val).collect())
            .collect();
        let big = frags.iter().map(Vec::len).max().unwrap();
        let at = frags.iter().position(|f| f.len() == big).unwrap();
        let largest = frags.remove(at);
        frags.push(largest);
        out.extend(frags);
    }
    from_cells(colors.len(), &out)
}

/// `min { i | split(G, π, i) ≺ π }`. A split is always at least as fine as
/// its input, so it refines exactly when it differs.
pub fn first_refining_cell(g: &Graph, colors: &[u32]) -> Option<u32> {
    let m = cells(colors).len() as u32;
    (0..m).find(|&i| split(g, colors, i) != colors)
}

/// First non-singleton cell.
pub fn target_cell(colors: &[u32]) -> Option<Vec<Vertex>> {
    cells(colors).into_iter().find(|c| c.len() > 1)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Hash of the quotient graph of `(G, π)`.
pub fn hash(g: &Graph, colors: &[u32]) -> u64 {
    let cs = cells(colors);
    let m = cs.len();
    let mut words = vec![m as u64];
    words.extend(cs.iter().map(|c| c.len() as u64));
    for i in 0..m {
        for j in i..m {
            let mut e = 0u64;
            for &u in &cs[i] {
                for &v in &cs[j] {
                    if g.has_edge(u, v) && (i != j || u < v) {
                        e += 1;
                    }
                }
            }
            words.push(e);
        }
    }
    let mut h = FNV_OFFSET;
    for w in words {
        for b in w.to_be_bytes() {
            h = (h ^ b as u64).wrapping_mul(FNV_PRIME);
        }
    }
    h
}

/// Adjacency matrix of `G^π`, row-major.
pub fn relabelled_matrix(g: &Graph, perm: &[u32]) -> Vec<bool> {
    let n = perm.len();
    let mut m = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            if g.has_edge(u as Vertex, v as Vertex) {
                m[perm[u] as usize * n + perm[v] as usize] = true;
            }
        }
    }
    m
}

/// Compares `G^π1` with `G^π2` bit by bit, a set bit winning.
pub fn compare_relabelled(g: &Graph, p1: &[u32], p2: &[u32]) -> Ordering {
    relabelled_matrix(g, p1).cmp(&relabelled_matrix(g, p2))
}

/// `σ ∈ Aut(G, π0)`.
pub fn is_automorphism(g: &Graph, pi0: &[u32], sigma: &[u32]) -> bool {
    let n = sigma.len();
    (0..n).all(|v| pi0[sigma[v] as usize] == pi0[v])
        && (0..n).all(|u| {
            (u + 1..n).all(|v| {
                g.has_edge(u as Vertex, v as Vertex)
                    == g.has_edge(sigma[u], sigma[v])
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn individualize_examples() {
        assert_eq!(individualize(&[0, 0, 0], 1), vec![1, 0, 1]);
        assert_eq!(individualize(&[0, 1, 1, 1], 2), vec![0, 2, 1, 2]);
        assert_eq!(individualize(&[1, 0], 0), vec![1, 0]);
    }

    #[test]
    fn split_examples() {
        let g = c4();
        // [{1},{2,3,4}] split by {1} gives [{1},{3},{2,4}]
        assert_eq!(split(&g, &[0, 1, 1, 1], 0), vec![0, 2, 1, 2]);
        assert_eq!(first_refining_cell(&g, &[0, 0, 0, 0]), None);
        assert_eq!(first_refining_cell(&g, &[0, 1, 1, 1]), Some(0));
    }

    #[test]
    fn hash_matches_reference() {
        assert_eq!(hash(&c4(), &[0, 2, 1, 2]), 5407533569738538226);
    }

    #[test]
    fn automorphisms_and_order() {
        let g = c4();
        assert!(is_automorphism(&g, &[0; 4], &[0, 3, 2, 1]));
        assert!(!is_automorphism(&g, &[0; 4], &[1, 0, 2, 3]));
        assert!(!is_automorphism(&g, &[0, 1, 1, 1], &[1, 2, 3, 0]));
        assert_eq!(compare_relabelled(&g, &[0, 2, 1, 3], &[0, 1, 2, 3]), Ordering::Less);
        assert!(is_discrete(&[2, 0, 1]));
        assert!(!is_discrete(&[0, 0, 1]));
    }
}
