//! Individualization and equitable refinement.
//!
//! Cell order is fully determined: splitting cells are taken in color order,
//! and the fragments of a split cell are ordered by ascending neighbor count
//! with the first largest fragment moved to the back. Vertices inside every
//! cell stay in increasing order.

use crate::coloring::Coloring;
use crate::error::DomainError;
use crate::graph::{Graph, Vertex};

/// The worklist of splitting cells, each a cell of the coloring it is used
/// with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingQueue {
    cells: Vec<Vec<Vertex>>,
}

impl SplittingQueue {
    pub fn all_cells(pi: &Coloring) -> Self {
        SplittingQueue {
            cells: pi.cells().to_vec(),
        }
    }

    pub fn single(v: Vertex) -> Self {
        SplittingQueue {
            cells: vec![vec![v]],
        }
    }

    /// A queue of explicit cells; each must be a cell of the coloring passed
    /// to [`make_equitable`].
    pub fn from_cells(mut cells: Vec<Vec<Vertex>>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort();
        cells.dedup();
        SplittingQueue { cells }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }
}

/// `ind(π, v)`: the cell `W` holding `v` becomes `{v}, W ∖ {v}` in place.
pub fn individualize(pi: &Coloring, v: Vertex) -> Coloring {
    let k = pi.cell_of(v);
    if pi.cell(k).len() == 1 {
        return pi.clone();
    }
    let mut cells = Vec::with_capacity(pi.num_cells() + 1);
    for (i, cell) in pi.cells().iter().enumerate() {
        if i == k {
            cells.push(vec![v]);
            cells.push(cell.iter().copied().filter(|&u| u != v).collect());
        } else {
            cells.push(cell.clone());
        }
    }
    Coloring::from_sorted_cells_unchecked(pi.n(), cells)
}

/// Orders the fragments of one cell: ascending by count, then the first
/// fragment of maximal size goes to the back. Returns the fragments and the
/// position of the moved fragment (always the last one).
fn order_fragments(mut frags: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let max = frags.iter().map(Vec::len).max().unwrap_or(0);
    if let Some(j) = frags.iter().position(|f| f.len() == max) {
        let big = frags.remove(j);
        frags.push(big);
    }
    frags
}

/// Partitions `cell` by `counts` (ascending), vertices kept sorted.
fn fragment(cell: &[Vertex], counts: &[u32]) -> Vec<Vec<Vertex>> {
    let mut keyed: Vec<(u32, Vertex)> = cell.iter().map(|&v| (counts[v as usize], v)).collect();
    keyed.sort_unstable();
    let mut frags: Vec<Vec<Vertex>> = Vec::new();
    let mut last = None;
    for (c, v) in keyed {
        if last != Some(c) {
            frags.push(Vec::new());
            last = Some(c);
        }
        frags.last_mut().unwrap().push(v);
    }
    order_fragments(frags)
}

fn neighbor_counts(g: &Graph, source: &[Vertex], counts: &mut [u32]) {
    counts.iter_mut().for_each(|c| *c = 0);
    for &w in source {
        for &u in g.neighbors(w) {
            counts[u as usize] += 1;
        }
    }
}

/// `split(G, π, i)`: every cell is partitioned by the number of neighbors in
/// cell `i` and replaced in place by its ordered fragments.
pub fn split(g: &Graph, pi: &Coloring, i: usize) -> Result<Coloring, DomainError> {
    crate::graph::check_size(g.n(), pi.n())?;
    if i >= pi.num_cells() {
        return Err(DomainError::CellOutOfRange {
            index: i,
            cells: pi.num_cells(),
        });
    }
    let mut counts = vec![0u32; g.n()];
    neighbor_counts(g, pi.cell(i), &mut counts);
    let mut cells = Vec::with_capacity(pi.num_cells());
    for cell in pi.cells() {
        if cell.len() == 1 {
            cells.push(cell.clone());
        } else {
            cells.extend(fragment(cell, &counts));
        }
    }
    Ok(Coloring::from_sorted_cells_unchecked(pi.n(), cells))
}

/// True iff splitting by any cell leaves `pi` unchanged.
pub fn is_equitable(g: &Graph, pi: &Coloring) -> bool {
    first_refining_cell(g, pi).is_none()
}

/// `min { i | split(G, π, i) ≺ π }`, if any.
pub fn first_refining_cell(g: &Graph, pi: &Coloring) -> Option<usize> {
    let mut counts = vec![0u32; g.n()];
    (0..pi.num_cells()).find(|&i| {
        neighbor_counts(g, pi.cell(i), &mut counts);
        pi.cells().iter().any(|cell| {
            let c0 = counts[cell[0] as usize];
            cell.iter().any(|&v| counts[v as usize] != c0)
        })
    })
}

/// One effective iteration of [`make_equitable`]: the coloring before the
/// split, the index of the splitting cell in it, and the coloring after.
pub struct SplitStep<'a> {
    pub before: &'a Coloring,
    pub cell: usize,
    pub after: &'a Coloring,
}

/// The coarsest equitable coloring finer than `pi` reachable by splitting with
/// respect to the cells of `alpha` and the fragments they produce.
pub fn make_equitable(g: &Graph, pi: &Coloring, alpha: &SplittingQueue) -> Coloring {
    run_make_equitable(g, pi, alpha, None)
}

/// Like [`make_equitable`], reporting every iteration that changed the
/// coloring.
pub fn make_equitable_traced(
    g: &Graph,
    pi: &Coloring,
    alpha: &SplittingQueue,
    on_split: &mut dyn FnMut(SplitStep<'_>),
) -> Coloring {
    run_make_equitable(g, pi, alpha, Some(on_split))
}

fn run_make_equitable(
    g: &Graph,
    pi: &Coloring,
    alpha: &SplittingQueue,
    mut on_split: Option<&mut dyn FnMut(SplitStep<'_>)>,
) -> Coloring {
    let n = pi.n();
    let mut cells: Vec<Vec<Vertex>> = pi.cells().to_vec();
    let mut in_alpha = vec![false; cells.len()];
    for a in &alpha.cells {
        let k = pi.cell_of(a[0]);
        assert_eq!(
            pi.cell(k),
            a.as_slice(),
            "splitting queue member is not a cell of the coloring"
        );
        in_alpha[k] = true;
    }
    let mut cell_of: Vec<u32> = pi.colors().to_vec();
    let mut counts = vec![0u32; n];
    let mut touched = Vec::new();
    let mut current = on_split.as_ref().map(|_| pi.clone());

    while cells.len() < n {
        let Some(wi) = in_alpha.iter().position(|&a| a) else {
            break;
        };
        in_alpha[wi] = false;
        let w = cells[wi].clone();
        neighbor_counts(g, &w, &mut counts);

        // only cells holding a neighbor of W can split
        touched.clear();
        touched.resize(cells.len(), false);
        for &x in &w {
            for &u in g.neighbors(x) {
                touched[cell_of[u as usize] as usize] = true;
            }
        }

        let mut changed = false;
        let mut next_cells = Vec::with_capacity(cells.len());
        let mut next_alpha = Vec::with_capacity(cells.len());
        for (k, cell) in cells.drain(..).enumerate() {
            if cell.len() == 1 || !touched[k] {
                next_cells.push(cell);
                next_alpha.push(in_alpha[k]);
                continue;
            }
            let frags = fragment(&cell, &counts);
            if frags.len() == 1 {
                next_cells.extend(frags);
                next_alpha.push(in_alpha[k]);
                continue;
            }
            changed = true;
            let last = frags.len() - 1;
            for (f, frag) in frags.into_iter().enumerate() {
                next_cells.push(frag);
                next_alpha.push(if f == last { in_alpha[k] } else { true });
            }
        }
        cells = next_cells;
        in_alpha = next_alpha;

        if changed {
            for (k, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v as usize] = k as u32;
                }
            }
            if let Some(cb) = on_split.as_mut() {
                let before = current.take().unwrap();
                let after = Coloring::from_sorted_cells_unchecked(n, cells.clone());
                cb(SplitStep {
                    before: &before,
                    cell: wi,
                    after: &after,
                });
                current = Some(after);
            }
        }
    }
    Coloring::from_sorted_cells_unchecked(n, cells)
}

/// The equitable coloring of the root node: `make_equitable` with every cell
/// of `pi0` queued.
pub fn refine_root(g: &Graph, pi0: &Coloring) -> Coloring {
    make_equitable(g, pi0, &SplittingQueue::all_cells(pi0))
}

/// The coloring of child `[ν, v]` given the coloring of `ν`.
pub fn refine_child(g: &Graph, parent: &Coloring, v: Vertex) -> Coloring {
    make_equitable(g, &individualize(parent, v), &SplittingQueue::single(v))
}

/// `R̄(G, π0, ν)`: the coarsest equitable coloring finer than `pi0` that
/// individualizes the vertices of `nu`, with the cell order fixed above.
pub fn refine(g: &Graph, pi0: &Coloring, nu: &[Vertex]) -> Coloring {
    nu.iter()
        .fold(refine_root(g, pi0), |pi, &v| refine_child(g, &pi, v))
}

/// `T̄`: the first non-singleton cell, or `None` for a discrete coloring.
pub fn target_cell(pi: &Coloring) -> Option<&[Vertex]> {
    pi.cells()
        .iter()
        .find(|c| c.len() > 1)
        .map(Vec::as_slice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(n: usize, c: &[&[Vertex]]) -> Coloring {
        Coloring::from_cells(n, c.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn p3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn individualize_examples() {
        let unit = Coloring::unit(3);
        assert_eq!(individualize(&unit, 1), cells(3, &[&[1], &[0, 2]]));
        let pi = cells(3, &[&[1], &[0, 2]]);
        assert_eq!(individualize(&pi, 1), pi);
        let pi = cells(4, &[&[0, 3], &[1, 2]]);
        assert_eq!(individualize(&pi, 2), cells(4, &[&[0, 3], &[2], &[1]]));
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(&k3(), &Coloring::unit(3), 0).unwrap(), Coloring::unit(3));
        assert_eq!(
            split(&p3(), &Coloring::unit(3), 0).unwrap(),
            cells(3, &[&[1], &[0, 2]])
        );
        let pi = cells(4, &[&[0], &[1, 2, 3]]);
        assert_eq!(
            split(&c4(), &pi, 0).unwrap(),
            cells(4, &[&[0], &[2], &[1, 3]])
        );
        assert!(split(&c4(), &pi, 2).is_err());
    }

    #[test]
    fn split_moves_first_largest_fragment_last() {
        // star centred at 0 plus an isolated pair: counts from cell {0}
        // over {1,2,3,4,5}: 1,2,3 -> 1 ; 4,5 -> 0
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap();
        let pi = cells(6, &[&[0], &[1, 2, 3, 4, 5]]);
        assert_eq!(
            split(&g, &pi, 0).unwrap(),
            cells(6, &[&[0], &[4, 5], &[1, 2, 3]])
        );
        // equal-size fragments: the smaller count one moves last
        let g = Graph::from_edges(5, [(0, 1), (0, 2)]).unwrap();
        let pi = cells(5, &[&[0], &[1, 2, 3, 4]]);
        assert_eq!(
            split(&g, &pi, 0).unwrap(),
            cells(5, &[&[0], &[1, 2], &[3, 4]])
        );
    }

    #[test]
    fn equitable_examples() {
        assert!(is_equitable(&k3(), &Coloring::unit(3)));
        assert!(!is_equitable(&p3(), &Coloring::unit(3)));
        assert!(is_equitable(&c4(), &cells(4, &[&[0], &[2], &[1, 3]])));
    }

    #[test]
    fn make_equitable_examples() {
        let unit = Coloring::unit(3);
        assert_eq!(make_equitable(&k3(), &unit, &SplittingQueue::all_cells(&unit)), unit);
        assert_eq!(
            make_equitable(&p3(), &unit, &SplittingQueue::all_cells(&unit)),
            cells(3, &[&[1], &[0, 2]])
        );
        let pi = cells(4, &[&[0], &[1, 2, 3]]);
        assert_eq!(
            make_equitable(&c4(), &pi, &SplittingQueue::from_cells(vec![vec![0]])),
            cells(4, &[&[0], &[2], &[1, 3]])
        );
    }

    #[test]
    fn refine_examples() {
        let unit = Coloring::unit(4);
        assert_eq!(refine(&c4(), &unit, &[]), unit);
        assert_eq!(refine(&c4(), &unit, &[0]), cells(4, &[&[0], &[2], &[1, 3]]));
        assert_eq!(
            refine(&c4(), &unit, &[0, 1]),
            cells(4, &[&[0], &[2], &[1], &[3]])
        );
    }

    #[test]
    fn target_cell_examples() {
        assert_eq!(target_cell(&Coloring::discrete_identity(3)), None);
        assert_eq!(
            target_cell(&cells(4, &[&[0], &[2], &[1, 3]])),
            Some(&[1, 3][..])
        );
        assert_eq!(target_cell(&cells(4, &[&[0, 1], &[2, 3]])), Some(&[0, 1][..]));
    }

    #[test]
    fn traced_steps_are_minimal_splits() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6)]).unwrap();
        let unit = Coloring::unit(7);
        let mut steps = Vec::new();
        let out = make_equitable_traced(&g, &unit, &SplittingQueue::all_cells(&unit), &mut |s| {
            steps.push((s.before.clone(), s.cell, s.after.clone()))
        });
        assert!(!steps.is_empty());
        for (before, cell, after) in &steps {
            assert_eq!(first_refining_cell(&g, before), Some(*cell));
            assert_eq!(&split(&g, before, *cell).unwrap(), after);
        }
        assert_eq!(&steps.last().unwrap().2, &out);
        assert!(is_equitable(&g, &out));
    }
}
