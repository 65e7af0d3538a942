//! Sets of fact keys.

use std::collections::HashSet;

/// A growing set of integer sequences.
pub trait FactDatabase {
    /// Inserts `key`; returns false if it was already present.
    fn insert(&mut self, key: &[u32]) -> bool;
    fn contains(&self, key: &[u32]) -> bool;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Flat,
    Trie,
}

impl Backend {
    pub fn create(self) -> Box<dyn FactDatabase + Send> {
        match self {
            Backend::Flat => Box::new(FlatDb::default()),
            Backend::Trie => Box::new(TrieDb::new()),
        }
    }
}

/// Hash set of boxed keys.
#[derive(Default)]
pub struct FlatDb {
    set: HashSet<Box<[u32]>>,
}

impl FactDatabase for FlatDb {
    fn insert(&mut self, key: &[u32]) -> bool {
        self.set.insert(key.into())
    }

    fn contains(&self, key: &[u32]) -> bool {
        self.set.contains(key)
    }

    fn len(&self) -> usize {
        self.set.len()
    }
}

/// Radix trie with path-compressed edges.
pub struct TrieDb {
    nodes: Vec<Node>,
    len: usize,
}

#[derive(Default)]
struct Node {
    // sorted by first label symbol
    edges: Vec<Edge>,
    terminal: bool,
}

struct Edge {
    label: Vec<u32>,
    to: usize,
}

impl Node {
    fn find(&self, first: u32) -> Result<usize, usize> {
        self.edges.binary_search_by_key(&first, |e| e.label[0])
    }
}

impl Default for TrieDb {
    fn default() -> Self {
        Self::new()
    }
}

impl TrieDb {
    pub fn new() -> Self {
        TrieDb { nodes: vec![Node::default()], len: 0 }
    }

    fn add_node(&mut self, terminal: bool) -> usize {
        self.nodes.push(Node { edges: Vec::new(), terminal });
        self.nodes.len() - 1
    }

    /// Number of trie nodes, root included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl FactDatabase for TrieDb {
    fn insert(&mut self, key: &[u32]) -> bool {
        let mut node = 0;
        let mut rest = key;
        loop {
            if rest.is_empty() {
                let fresh = !self.nodes[node].terminal;
                self.nodes[node].terminal = true;
                self.len += fresh as usize;
                return fresh;
            }
            match self.nodes[node].find(rest[0]) {
                Err(pos) => {
                    let leaf = self.add_node(true);
                    self.nodes[node].edges.insert(pos, Edge { label: rest.to_vec(), to: leaf });
                    self.len += 1;
                    return true;
                }
                Ok(ei) => {
                    let edge = &self.nodes[node].edges[ei];
                    let l = common_prefix(&edge.label, rest);
                    if l == edge.label.len() {
                        node = edge.to;
                        rest = &rest[l..];
                        continue;
                    }
                    // split the edge at l
                    let old_to = edge.to;
                    let tail = edge.label[l..].to_vec();
                    let mid = self.add_node(false);
                    self.nodes[mid].edges.push(Edge { label: tail, to: old_to });
                    let edge = &mut self.nodes[node].edges[ei];
                    edge.label.truncate(l);
                    edge.to = mid;
                    node = mid;
                    rest = &rest[l..];
                }
            }
        }
    }

    fn contains(&self, key: &[u32]) -> bool {
        let mut node = 0;
        let mut rest = key;
        loop {
            if rest.is_empty() {
                return self.nodes[node].terminal;
            }
            let Ok(ei) = self.nodes[node].find(rest[0]) else {
                return false;
            };
            let edge = &self.nodes[node].edges[ei];
            if !rest.starts_with(&edge.label) {
                return false;
            }
            rest = &rest[edge.label.len()..];
            node = edge.to;
        }
    }

    fn len(&self) -> usize {
        self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both() -> [Box<dyn FactDatabase + Send>; 2] {
        [Backend::Flat.create(), Backend::Trie.create()]
    }

    #[test]
    fn insert_then_contains() {
        for mut db in both() {
            assert!(!db.contains(&[5, 1, 0]));
            assert!(db.is_empty());
            assert!(db.insert(&[5, 1, 0]));
            assert!(db.contains(&[5, 1, 0]));
            assert!(!db.insert(&[5, 1, 0]));
            assert_eq!(db.len(), 1);
        }
    }

    #[test]
    fn prefixes_are_distinct_keys() {
        let mut t = TrieDb::new();
        assert!(t.insert(&[1, 2, 3, 4]));
        assert!(!t.contains(&[1, 2]));
        assert!(t.insert(&[1, 2]));
        assert!(t.contains(&[1, 2]));
        assert!(t.insert(&[1, 2, 9]));
        assert!(t.insert(&[]));
        assert!(t.contains(&[]));
        assert!(t.contains(&[1, 2, 3, 4]));
        assert!(!t.contains(&[1, 2, 3]));
        assert!(!t.contains(&[1, 2, 3, 4, 5]));
        assert_eq!(t.len(), 4);
    }
}
