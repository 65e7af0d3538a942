//! Depth-first search of the individualization–refinement tree.
//!
//! Nodes are compared against the best leaf found so far one level at a time,
//! using the per-level hashes of the node invariant. A child whose hash falls
//! below the best path at the same depth is cut; automorphisms found between
//! equivalent leaves prune whole subtrees and feed per-node orbit partitions.
//! Every decision is reported to a [`SearchObserver`] in a form that maps
//! directly onto a proof rule.

use std::cmp::Ordering;

use crate::coloring::Coloring;
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::invariant::{hash_colored, NodeInvariant};
use crate::perm::Permutation;
use crate::refine::{refine, refine_child, refine_root, target_cell};

/// A node of the search tree with everything derived from its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub nu: Vec<Vertex>,
    pub coloring: Coloring,
    pub invariant: NodeInvariant,
    pub target: Option<Vec<Vertex>>,
}

impl SearchNode {
    pub fn compute(g: &Graph, pi0: &Coloring, nu: &[Vertex]) -> SearchNode {
        let mut pi = refine_root(g, pi0);
        let mut inv = NodeInvariant::root();
        for &v in nu {
            pi = refine_child(g, &pi, v);
            inv = inv.extend(hash_colored(g, &pi));
        }
        debug_assert_eq!(pi, refine(g, pi0, nu));
        SearchNode {
            nu: nu.to_vec(),
            target: target_cell(&pi).map(<[Vertex]>::to_vec),
            coloring: pi,
            invariant: inv,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.target.is_none()
    }
}

/// Union-find over the vertices, holding the orbit classes known at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    parent: Vec<Vertex>,
    // sorted members, kept at roots only
    members: Vec<Vec<Vertex>>,
}

impl OrbitPartition {
    pub fn new(n: usize) -> Self {
        OrbitPartition {
            parent: (0..n as Vertex).collect(),
            members: (0..n as Vertex).map(|v| vec![v]).collect(),
        }
    }

    pub fn find(&self, mut v: Vertex) -> Vertex {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    pub fn same_class(&self, a: Vertex, b: Vertex) -> bool {
        self.find(a) == self.find(b)
    }

    /// Sorted members of the class of `v`.
    pub fn class(&self, v: Vertex) -> &[Vertex] {
        &self.members[self.find(v) as usize]
    }

    /// Smallest member of the class of `v`.
    pub fn min_of(&self, v: Vertex) -> Vertex {
        self.class(v)[0]
    }

    /// Unites the classes of `a` and `b`; false if they already coincide.
    pub fn merge(&mut self, a: Vertex, b: Vertex) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.members[ra as usize].len() >= self.members[rb as usize].len() {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let moved = std::mem::take(&mut self.members[small as usize]);
        let kept = std::mem::take(&mut self.members[big as usize]);
        self.members[big as usize] = merge_sorted(&kept, &moved);
        self.parent[small as usize] = big;
        true
    }

    /// Classes with more than one member, each sorted, ordered by minimum.
    pub fn nontrivial_classes(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = (0..self.parent.len())
            .filter(|&v| self.parent[v] == v as Vertex && self.members[v].len() > 1)
            .map(|v| self.members[v].clone())
            .collect();
        out.sort();
        out
    }
}

fn merge_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Functional form of [`OrbitPartition::merge`].
pub fn orbit_merge(op: &OrbitPartition, w1: Vertex, w2: Vertex) -> OrbitPartition {
    let mut out = op.clone();
    out.merge(w1, w2);
    out
}

/// The best leaf found so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestLeaf {
    pub nu_star: Vec<Vertex>,
    pub coloring_star: Coloring,
    pub invariant_star: NodeInvariant,
    pub graph_star: Graph,
    /// Target cells of the proper prefixes of `nu_star`, by depth.
    pub path_targets: Vec<Vec<Vertex>>,
}

/// Automorphisms of `(G, π0)` discovered by the search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutomorphismStore {
    generators: Vec<Permutation>,
}

impl AutomorphismStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, sigma: Permutation) {
        self.generators.push(sigma);
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators that fix every vertex of `nu`.
    pub fn fixing<'a>(&'a self, nu: &'a [Vertex]) -> impl Iterator<Item = &'a Permutation> + 'a {
        self.generators.iter().filter(move |s| s.fixes_pointwise(nu))
    }
}

/// `σ = π1 π2⁻¹` when the two leaves give the same relabelled graph.
///
/// For leaves `ν1`, `ν2` of the same tree this σ is an automorphism of
/// `(G, π0)` with `ν1^σ = ν2`.
pub fn discover_automorphism(pi1: &Coloring, pi2: &Coloring, g: &Graph) -> Option<Permutation> {
    let p1 = pi1.to_permutation()?;
    let p2 = pi2.to_permutation()?;
    let same = g.relabel(&p1).ok()? == g.relabel(&p2).ok()?;
    if same {
        p1.compose(&p2.inverse()).ok()
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cut children whose invariant falls below the best path.
    pub prune_invariant: bool,
    /// Use discovered automorphisms to cut subtrees and orbit mates.
    pub prune_automorphism: bool,
    /// Keep an owned copy of every event in the result.
    pub record_trace: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune_invariant: true,
            prune_automorphism: true,
            record_trace: false,
        }
    }
}

impl SearchOptions {
    /// Full traversal: every leaf is visited.
    pub fn unpruned() -> Self {
        SearchOptions {
            prune_invariant: false,
            prune_automorphism: false,
            record_trace: false,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

/// One step of the search, borrowed from the search state.
///
/// With invariant pruning enabled, every event names facts that are already
/// derivable from the events before it, so an observer can turn the stream
/// into a proof.
#[derive(Clone, Copy, Debug)]
pub enum SearchEvent<'a> {
    /// A node was refined; `parent` is the coloring of its parent.
    NodeEntered {
        nu: &'a [Vertex],
        parent: Option<&'a Coloring>,
        coloring: &'a Coloring,
    },
    /// An internal node is about to have its children visited.
    Expand { nu: &'a [Vertex], target: &'a [Vertex] },
    /// `node` has the same invariant as the best path at the same depth.
    InvariantEqual { best: &'a [Vertex], node: &'a [Vertex] },
    /// Sibling-level hashes differ after equal parents; `loser` is cut.
    PrunedInvariant { winner: &'a [Vertex], loser: &'a [Vertex] },
    /// `loser` is a leaf beaten by `winner` with an equal invariant.
    PrunedLeaf { winner: &'a [Vertex], loser: &'a [Vertex] },
    NewBest { nu: &'a [Vertex] },
    /// `best^σ = leaf`, both leaves with the same relabelled graph.
    Automorphism {
        sigma: &'a Permutation,
        best: &'a [Vertex],
        leaf: &'a [Vertex],
    },
    /// Orbit classes at `nu` joined through `w1^σ = w2`.
    OrbitMerge {
        nu: &'a [Vertex],
        class1: &'a [Vertex],
        class2: &'a [Vertex],
        sigma: &'a Permutation,
        w1: Vertex,
        w2: Vertex,
    },
    /// `from <lex to` and `from^σ = to`; `to` is cut.
    PrunedAutomorphism {
        from: &'a [Vertex],
        to: &'a [Vertex],
        sigma: &'a Permutation,
    },
    /// Child `[nu, w2]` cut because `w1 < w2` lies in the same class.
    PrunedOrbit {
        nu: &'a [Vertex],
        class: &'a [Vertex],
        w1: Vertex,
        w2: Vertex,
    },
    /// Every child of `nu` has been cut.
    PrunedParent { nu: &'a [Vertex], target: &'a [Vertex] },
    /// The search is over and `leaf` is the canonical leaf.
    Finished {
        leaf: &'a [Vertex],
        path_targets: &'a [Vec<Vertex>],
        coloring: &'a Coloring,
    },
}

pub trait SearchObserver {
    fn on_event(&mut self, event: SearchEvent<'_>);
}

/// Observer that ignores everything.
pub struct NoObserver;

impl SearchObserver for NoObserver {
    fn on_event(&mut self, _: SearchEvent<'_>) {}
}

/// Owned, compact copy of a [`SearchEvent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    NodeEntered(Vec<Vertex>),
    Expand(Vec<Vertex>, Vec<Vertex>),
    InvariantEqual(Vec<Vertex>, Vec<Vertex>),
    PrunedInvariant(Vec<Vertex>, Vec<Vertex>),
    PrunedLeaf(Vec<Vertex>, Vec<Vertex>),
    NewBest(Vec<Vertex>),
    Automorphism(Permutation),
    OrbitMerge(Vec<Vertex>, Vertex, Vertex),
    PrunedAutomorphism(Vec<Vertex>, Vec<Vertex>),
    PrunedOrbit(Vec<Vertex>, Vertex, Vertex),
    PrunedParent(Vec<Vertex>),
    Finished(Vec<Vertex>),
}

impl From<SearchEvent<'_>> for TraceEvent {
    fn from(e: SearchEvent<'_>) -> Self {
        use SearchEvent as E;
        match e {
            E::NodeEntered { nu, .. } => TraceEvent::NodeEntered(nu.to_vec()),
            E::Expand { nu, target } => TraceEvent::Expand(nu.to_vec(), target.to_vec()),
            E::InvariantEqual { best, node } => {
                TraceEvent::InvariantEqual(best.to_vec(), node.to_vec())
            }
            E::PrunedInvariant { winner, loser } => {
                TraceEvent::PrunedInvariant(winner.to_vec(), loser.to_vec())
            }
            E::PrunedLeaf { winner, loser } => TraceEvent::PrunedLeaf(winner.to_vec(), loser.to_vec()),
            E::NewBest { nu } => TraceEvent::NewBest(nu.to_vec()),
            E::Automorphism { sigma, .. } => TraceEvent::Automorphism(sigma.clone()),
            E::OrbitMerge { nu, w1, w2, .. } => TraceEvent::OrbitMerge(nu.to_vec(), w1, w2),
            E::PrunedAutomorphism { from, to, .. } => {
                TraceEvent::PrunedAutomorphism(from.to_vec(), to.to_vec())
            }
            E::PrunedOrbit { nu, w1, w2, .. } => TraceEvent::PrunedOrbit(nu.to_vec(), w1, w2),
            E::PrunedParent { nu, .. } => TraceEvent::PrunedParent(nu.to_vec()),
            E::Finished { leaf, .. } => TraceEvent::Finished(leaf.to_vec()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchTrace {
    pub events: Vec<TraceEvent>,
}

impl SearchTrace {
    /// Labels of every node that was refined, in visiting order.
    pub fn visited(&self) -> impl Iterator<Item = &[Vertex]> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::NodeEntered(nu) => Some(nu.as_slice()),
            _ => None,
        })
    }
}

/// Observer that records a [`SearchTrace`].
#[derive(Default)]
pub struct TraceRecorder {
    pub trace: SearchTrace,
}

impl SearchObserver for TraceRecorder {
    fn on_event(&mut self, event: SearchEvent<'_>) {
        self.trace.events.push(event.into());
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub leaves: usize,
    pub pruned_invariant: usize,
    pub pruned_automorphism: usize,
    pub pruned_orbit: usize,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// `(G^{π*}, π0^{π*})`.
    pub canonical: ColoredGraph,
    /// `π*` read as a permutation.
    pub labelling: Permutation,
    pub leaf: Vec<Vertex>,
    pub best: BestLeaf,
    pub generators: AutomorphismStore,
    pub trace: Option<SearchTrace>,
    pub stats: SearchStats,
}

/// Canonical form of `(g, pi0)`.
///
/// # Panics
///
/// If `pi0` does not have `g.n()` vertices.
pub fn canonical_form(g: &Graph, pi0: &Coloring, options: SearchOptions) -> SearchResult {
    canonical_form_observed(g, pi0, options, &mut NoObserver)
}

/// [`canonical_form`] reporting every event to `observer`.
pub fn canonical_form_observed(
    g: &Graph,
    pi0: &Coloring,
    options: SearchOptions,
    observer: &mut dyn SearchObserver,
) -> SearchResult {
    assert_eq!(g.n(), pi0.n(), "coloring and graph sizes differ");
    let mut recorder = options.record_trace.then(TraceRecorder::default);
    let mut tee = Tee {
        first: observer,
        second: recorder.as_mut().map(|r| r as &mut dyn SearchObserver),
    };
    let mut s = Search {
        g,
        opts: options,
        obs: &mut tee,
        best: None,
        generators: AutomorphismStore::new(),
        nu: Vec::new(),
        inv: Vec::new(),
        targets: Vec::new(),
        orbits: Vec::new(),
        stats: SearchStats::default(),
    };
    s.run(pi0);
    let Search {
        best,
        generators,
        stats,
        ..
    } = s;
    let best = best.expect("search visits at least one leaf");
    let labelling = best
        .coloring_star
        .to_permutation()
        .expect("leaf colorings are discrete");
    let canonical = ColoredGraph::new(
        best.graph_star.clone(),
        pi0.act(&labelling).expect("sizes checked"),
    )
    .expect("sizes checked");
    SearchResult {
        canonical,
        labelling,
        leaf: best.nu_star.clone(),
        best,
        generators,
        trace: recorder.map(|r| r.trace),
        stats,
    }
}

struct Tee<'a> {
    first: &'a mut dyn SearchObserver,
    second: Option<&'a mut dyn SearchObserver>,
}

impl SearchObserver for Tee<'_> {
    fn on_event(&mut self, event: SearchEvent<'_>) {
        self.first.on_event(event);
        if let Some(s) = self.second.as_mut() {
            s.on_event(event);
        }
    }
}

enum Flow {
    Continue,
    /// Unwind to the node at this depth and go on with its next child.
    JumpTo(usize),
}

struct Search<'a> {
    g: &'a Graph,
    opts: SearchOptions,
    obs: &'a mut dyn SearchObserver,
    best: Option<BestLeaf>,
    generators: AutomorphismStore,
    // current path: labels, level hashes, targets and orbits of internal nodes
    nu: Vec<Vertex>,
    inv: Vec<u64>,
    targets: Vec<Vec<Vertex>>,
    orbits: Vec<OrbitPartition>,
    stats: SearchStats,
}

impl Search<'_> {
    fn run(&mut self, pi0: &Coloring) {
        let root = refine_root(self.g, pi0);
        self.stats.nodes += 1;
        self.obs.on_event(SearchEvent::NodeEntered {
            nu: &[],
            parent: None,
            coloring: &root,
        });
        if root.is_discrete() {
            self.stats.leaves += 1;
            self.new_best(root);
        } else {
            self.expand(&root);
        }
        let best = self.best.as_ref().unwrap();
        self.obs.on_event(SearchEvent::Finished {
            leaf: &best.nu_star,
            path_targets: &best.path_targets,
            coloring: &best.coloring_star,
        });
    }

    fn expand(&mut self, coloring: &Coloring) -> Flow {
        let depth = self.nu.len();
        let target = target_cell(coloring).expect("internal node").to_vec();
        self.obs.on_event(SearchEvent::Expand {
            nu: &self.nu,
            target: &target,
        });

        let mut orbits = OrbitPartition::new(self.g.n());
        if self.opts.prune_automorphism {
            for sigma in self.generators.fixing(&self.nu) {
                merge_by(&mut orbits, &target, sigma, &self.nu, &mut *self.obs);
            }
        }
        self.orbits.push(orbits);
        self.targets.push(target);

        let mut k = 0;
        while k < self.targets[depth].len() {
            let w = self.targets[depth][k];
            k += 1;
            if self.opts.prune_automorphism {
                let orb = &self.orbits[depth];
                let m = orb.min_of(w);
                if m < w {
                    self.stats.pruned_orbit += 1;
                    self.obs.on_event(SearchEvent::PrunedOrbit {
                        nu: &self.nu,
                        class: orb.class(w),
                        w1: m,
                        w2: w,
                    });
                    continue;
                }
            }
            let child = refine_child(self.g, coloring, w);
            self.nu.push(w);
            self.inv.push(hash_colored(self.g, &child));
            self.stats.nodes += 1;
            self.obs.on_event(SearchEvent::NodeEntered {
                nu: &self.nu,
                parent: Some(coloring),
                coloring: &child,
            });
            let flow = self.child(child);
            self.nu.pop();
            self.inv.pop();
            if let Flow::JumpTo(d) = flow {
                if d < depth {
                    self.orbits.pop();
                    self.targets.pop();
                    return flow;
                }
            }
        }

        self.orbits.pop();
        let target = self.targets.pop().unwrap();
        if !self.is_best_prefix(&self.nu) {
            self.obs.on_event(SearchEvent::PrunedParent {
                nu: &self.nu,
                target: &target,
            });
        }
        Flow::Continue
    }

    fn is_best_prefix(&self, nu: &[Vertex]) -> bool {
        self.best
            .as_ref()
            .is_some_and(|b| b.nu_star.starts_with(nu))
    }

    /// Relation of the current node's invariant to the best path, level by level.
    fn relation(&self) -> Ordering {
        let Some(b) = &self.best else {
            return Ordering::Greater;
        };
        let bi = b.invariant_star.hashes();
        let k = self.inv.len().min(bi.len());
        match self.inv[..k].cmp(&bi[..k]) {
            Ordering::Equal if self.inv.len() > bi.len() => Ordering::Greater,
            o => o,
        }
    }

    fn child(&mut self, child: Coloring) -> Flow {
        let k = self.nu.len();
        let discrete = child.is_discrete();
        if discrete {
            self.stats.leaves += 1;
        }
        match self.relation() {
            Ordering::Less => {
                if self.opts.prune_invariant {
                    self.stats.pruned_invariant += 1;
                    let b = self.best.as_ref().unwrap();
                    self.obs.on_event(SearchEvent::PrunedInvariant {
                        winner: &b.nu_star[..k],
                        loser: &self.nu,
                    });
                    Flow::Continue
                } else if discrete {
                    Flow::Continue
                } else {
                    self.expand(&child)
                }
            }
            Ordering::Greater => {
                if discrete {
                    self.new_best(child);
                    Flow::Continue
                } else {
                    self.expand(&child)
                }
            }
            Ordering::Equal => {
                let b = self.best.as_ref().unwrap();
                self.obs.on_event(SearchEvent::InvariantEqual {
                    best: &b.nu_star[..k],
                    node: &self.nu,
                });
                if !discrete {
                    return self.expand(&child);
                }
                if k < b.nu_star.len() {
                    self.obs.on_event(SearchEvent::PrunedLeaf {
                        winner: &b.nu_star[..k],
                        loser: &self.nu,
                    });
                    return Flow::Continue;
                }
                let graph = self.g.relabel_by_coloring(&child).expect("discrete");
                match graph.compare(&b.graph_star).expect("same size") {
                    Ordering::Less => {
                        self.obs.on_event(SearchEvent::PrunedLeaf {
                            winner: &b.nu_star,
                            loser: &self.nu,
                        });
                        Flow::Continue
                    }
                    Ordering::Greater => {
                        self.new_best_with_graph(child, graph);
                        Flow::Continue
                    }
                    Ordering::Equal => self.automorphism(&child),
                }
            }
        }
    }

    fn automorphism(&mut self, child: &Coloring) -> Flow {
        let b = self.best.as_ref().unwrap();
        let sigma = discover_automorphism(&b.coloring_star, child, self.g)
            .expect("equal leaf graphs give an automorphism");
        debug_assert_eq!(sigma.apply_seq(&b.nu_star), self.nu);
        self.obs.on_event(SearchEvent::Automorphism {
            sigma: &sigma,
            best: &b.nu_star,
            leaf: &self.nu,
        });
        self.stats.pruned_automorphism += 1;
        if !self.opts.prune_automorphism {
            self.obs.on_event(SearchEvent::PrunedAutomorphism {
                from: &b.nu_star,
                to: &self.nu,
                sigma: &sigma,
            });
            self.generators.push(sigma);
            return Flow::Continue;
        }
        let c = common_prefix(&b.nu_star, &self.nu);
        for j in 0..=c {
            merge_by(
                &mut self.orbits[j],
                &self.targets[j],
                &sigma,
                &self.nu[..j],
                &mut *self.obs,
            );
        }
        let mut from = self.nu[..c].to_vec();
        from.push(b.nu_star[c]);
        self.obs.on_event(SearchEvent::PrunedAutomorphism {
            from: &from,
            to: &self.nu[..c + 1],
            sigma: &sigma,
        });
        self.generators.push(sigma);
        Flow::JumpTo(c)
    }

    fn new_best(&mut self, child: Coloring) {
        let graph = self.g.relabel_by_coloring(&child).expect("discrete");
        self.new_best_with_graph(child, graph);
    }

    fn new_best_with_graph(&mut self, child: Coloring, graph: Graph) {
        if let Some(old) = self.best.take() {
            self.dethrone(&old);
        }
        self.best = Some(BestLeaf {
            nu_star: self.nu.clone(),
            coloring_star: child,
            invariant_star: NodeInvariant(self.inv.clone()),
            graph_star: graph,
            path_targets: self.targets.clone(),
        });
        self.obs.on_event(SearchEvent::NewBest { nu: &self.nu });
    }

    /// Cuts the branch of a best leaf beaten by the current node, up to just
    /// below their common ancestor.
    fn dethrone(&mut self, old: &BestLeaf) {
        let (on, oi) = (&old.nu_star, old.invariant_star.hashes());
        let c = common_prefix(on, &self.nu);
        let diff = oi.iter().zip(&self.inv).position(|(a, b)| a != b);
        let p = match diff {
            Some(k) => {
                debug_assert!(self.inv[k] > oi[k]);
                self.obs.on_event(SearchEvent::PrunedInvariant {
                    winner: &self.nu[..k + 1],
                    loser: &on[..k + 1],
                });
                k + 1
            }
            None => {
                debug_assert!(on.len() <= self.nu.len());
                self.obs.on_event(SearchEvent::PrunedLeaf {
                    winner: &self.nu[..on.len()],
                    loser: on,
                });
                on.len()
            }
        };
        for j in (c + 1..p).rev() {
            self.obs.on_event(SearchEvent::PrunedParent {
                nu: &on[..j],
                target: &old.path_targets[j],
            });
        }
    }
}

fn merge_by(
    orbits: &mut OrbitPartition,
    target: &[Vertex],
    sigma: &Permutation,
    nu: &[Vertex],
    obs: &mut dyn SearchObserver,
) {
    for &w in target {
        let u = sigma.apply(w);
        if !orbits.same_class(w, u) {
            obs.on_event(SearchEvent::OrbitMerge {
                nu,
                class1: orbits.class(w),
                class2: orbits.class(u),
                sigma,
                w1: w,
                w2: u,
            });
            orbits.merge(w, u);
        }
    }
}

fn common_prefix(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
