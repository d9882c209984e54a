//! Rooted plane trees and the subtree-size labeling.
//!
//! Text encoding: a vertex is `(` followed by the encodings of its children
//! in order, then `)`. The single vertex is `()`.

mod enumerate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polyalg::Poly;

pub use enumerate::{dyck_prefixes, enumerate_trees, DyckWalker, TreeIter};

/// Rooted ordered tree. Vertices are numbered in preorder, the root is `0`,
/// so two trees are equal exactly when they are the same plane tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    children: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseTreeError {
    #[error("empty tree encoding")]
    Empty,
    #[error("unexpected character {found:?} at position {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unbalanced `)` at position {pos}")]
    Unbalanced { pos: usize },
    #[error("unclosed `(`: encoding ends at position {pos}")]
    Unclosed { pos: usize },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

impl PlaneTree {
    /// The tree with one vertex and no edges.
    pub fn single() -> Self {
        PlaneTree {
            children: vec![Vec::new()],
        }
    }

    /// A root whose child subtrees are `subtrees`, in order.
    pub fn from_subtrees<I: IntoIterator<Item = PlaneTree>>(subtrees: I) -> Self {
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        for sub in subtrees {
            let offset = children.len();
            children[0].push(offset);
            children.extend(
                sub.children
                    .into_iter()
                    .map(|cs| cs.into_iter().map(|c| c + offset).collect()),
            );
        }
        PlaneTree { children }
    }

    /// Path with `vertices` vertices (at least one).
    pub fn path(vertices: usize) -> Self {
        assert!(vertices >= 1);
        let children = (0..vertices)
            .map(|v| {
                if v + 1 < vertices {
                    vec![v + 1]
                } else {
                    Vec::new()
                }
            })
            .collect();
        PlaneTree { children }
    }

    /// Root with `leaves` leaf children.
    pub fn star(leaves: usize) -> Self {
        PlaneTree::from_subtrees((0..leaves).map(|_| PlaneTree::single()))
    }

    /// Builds from a parent table: `parents[v]` is `None` for the single
    /// root, and siblings keep their relative order in the table.
    pub fn from_parents(parents: &[Option<usize>]) -> Self {
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); parents.len()];
        let mut root = None;
        for (v, p) in parents.iter().enumerate() {
            match p {
                Some(p) => kids[*p].push(v),
                None => {
                    assert!(root.is_none(), "more than one root");
                    root = Some(v);
                }
            }
        }
        let root = root.expect("parent table has a root");
        // renumber in preorder
        let mut children: Vec<Vec<usize>> = Vec::with_capacity(parents.len());
        let mut stack = vec![(root, None::<usize>)];
        while let Some((v, new_parent)) = stack.pop() {
            let id = children.len();
            children.push(Vec::new());
            if let Some(p) = new_parent {
                children[p].push(id);
            }
            for &c in kids[v].iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        PlaneTree { children }
    }

    /// Builds from a Dyck word over `(`/`)` describing the root's child forest.
    pub fn from_dyck(word: &[u8]) -> Self {
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        let mut stack = vec![0usize];
        for &b in word {
            if b == b'(' {
                let id = children.len();
                children.push(Vec::new());
                children[*stack.last().expect("balanced word")].push(id);
                stack.push(id);
            } else {
                stack.pop();
            }
        }
        PlaneTree { children }
    }

    pub fn parse(text: &str) -> Result<Self, ParseTreeError> {
        let bytes = text.as_bytes();
        if bytes.is_empty() {
            return Err(ParseTreeError::Empty);
        }
        let unexpected = |pos: usize| ParseTreeError::UnexpectedChar {
            pos,
            found: text[pos..].chars().next().unwrap_or('?'),
        };
        match bytes[0] {
            b'(' => {}
            b')' => return Err(ParseTreeError::Unbalanced { pos: 0 }),
            _ => return Err(unexpected(0)),
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        let mut stack = vec![0usize];
        for (pos, &b) in bytes.iter().enumerate().skip(1) {
            match b {
                b'(' => {
                    let Some(&top) = stack.last() else {
                        return Err(ParseTreeError::Trailing { pos });
                    };
                    let id = children.len();
                    children.push(Vec::new());
                    children[top].push(id);
                    stack.push(id);
                }
                b')' => {
                    if stack.pop().is_none() {
                        return Err(ParseTreeError::Trailing { pos });
                    }
                }
                _ if stack.is_empty() => return Err(ParseTreeError::Trailing { pos }),
                _ => return Err(unexpected(pos)),
            }
        }
        if !stack.is_empty() {
            return Err(ParseTreeError::Unclosed { pos: bytes.len() });
        }
        Ok(PlaneTree { children })
    }

    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(2 * self.vertex_count());
        self.write_encoding(&mut out, |_| None);
        out
    }

    fn write_encoding(&self, out: &mut String, annotate: impl Fn(usize) -> Option<String>) {
        enum Step {
            Open(usize),
            Close,
        }
        let mut stack = vec![Step::Open(0)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Open(v) => {
                    out.push('(');
                    if let Some(a) = annotate(v) {
                        out.push_str(&a);
                    }
                    stack.push(Step::Close);
                    stack.extend(self.children[v].iter().rev().map(|&c| Step::Open(c)));
                }
                Step::Close => out.push(')'),
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertex count of the maximal subtree at every vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1usize; self.children.len()];
        // children always carry larger preorder numbers than their parent
        for v in (0..self.children.len()).rev() {
            for &c in &self.children[v] {
                sizes[v] += sizes[c];
            }
        }
        sizes
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.children.len()];
        for v in 0..self.children.len() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    /// Length of the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Root labeled 0; a child's label is its parent's plus the vertex count
    /// of the child's maximal subtree.
    pub fn label(&self) -> LabeledTree {
        let sizes = self.subtree_sizes();
        let mut labels = vec![0u64; self.children.len()];
        for v in 0..self.children.len() {
            for &c in &self.children[v] {
                labels[c] = labels[v] + sizes[c] as u64;
            }
        }
        LabeledTree {
            tree: self.clone(),
            labels,
        }
    }

    /// `sum_i p_i q^i` with `p_i` the number of non-root vertices labeled `i`.
    pub fn avalanche_poly(&self) -> Poly {
        self.label().avalanche_poly()
    }

    /// Representative of the tree's orbit under reordering children:
    /// siblings sorted by (subtree size, canonical encoding).
    pub fn canonical(&self) -> PlaneTree {
        let sizes = self.subtree_sizes();
        let mut enc: Vec<String> = vec![String::new(); self.children.len()];
        for v in (0..self.children.len()).rev() {
            let mut kids: Vec<usize> = self.children[v].clone();
            kids.sort_by(|&a, &b| (sizes[a], &enc[a]).cmp(&(sizes[b], &enc[b])));
            let mut s = String::with_capacity(2 * sizes[v]);
            s.push('(');
            for c in kids {
                s.push_str(&std::mem::take(&mut enc[c]));
            }
            s.push(')');
            enc[v] = s;
        }
        PlaneTree::parse(&enc[0]).expect("canonical encoding is well formed")
    }

    pub fn canonical_encoding(&self) -> String {
        self.canonical().encode()
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneTree({})", self.encode())
    }
}

impl FromStr for PlaneTree {
    type Err = ParseTreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlaneTree::parse(s)
    }
}

/// A plane tree together with its subtree-size labels (indexed in preorder).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    tree: PlaneTree,
    labels: Vec<u64>,
}

impl LabeledTree {
    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    /// Labels in preorder; `labels()[0]` is the root's 0.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label_of(&self, v: usize) -> u64 {
        self.labels[v]
    }

    /// Encoding with each vertex's label written after its `(`,
    /// e.g. `(0(2(3)))`.
    pub fn annotated(&self) -> String {
        let mut out = String::new();
        self.tree
            .write_encoding(&mut out, |v| Some(self.labels[v].to_string()));
        out
    }

    /// Non-root labels, sorted.
    pub fn label_multiset(&self) -> Vec<u64> {
        let mut l = self.labels[1..].to_vec();
        l.sort_unstable();
        l
    }

    pub fn avalanche_poly(&self) -> Poly {
        let max = self.labels.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u128; max + 1];
        for &l in &self.labels[1..] {
            counts[l as usize] += 1;
        }
        Poly::from_counts(&counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = "((((()))())((())(())(())())((())()()()))";

    fn t(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    #[test]
    fn parse_shapes() {
        assert_eq!(t("()").vertex_count(), 1);
        let star = t("(()())");
        assert_eq!(star.children(0), &[1, 2]);
        assert_eq!(star, PlaneTree::star(2));
        assert_eq!(t("((()))"), PlaneTree::path(3));
        assert_eq!(t("(()()())").encode(), "(()()())");
        assert_eq!(PlaneTree::single().encode(), "()");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(PlaneTree::parse(""), Err(ParseTreeError::Empty));
        assert_eq!(
            PlaneTree::parse(")("),
            Err(ParseTreeError::Unbalanced { pos: 0 })
        );
        assert_eq!(
            PlaneTree::parse("(()"),
            Err(ParseTreeError::Unclosed { pos: 3 })
        );
        assert_eq!(
            PlaneTree::parse("()()"),
            Err(ParseTreeError::Trailing { pos: 2 })
        );
        assert_eq!(
            PlaneTree::parse("())"),
            Err(ParseTreeError::Trailing { pos: 2 })
        );
        assert_eq!(
            PlaneTree::parse("()x"),
            Err(ParseTreeError::Trailing { pos: 2 })
        );
        assert_eq!(
            PlaneTree::parse("(x)"),
            Err(ParseTreeError::UnexpectedChar { pos: 1, found: 'x' })
        );
        assert_eq!(
            PlaneTree::parse("a"),
            Err(ParseTreeError::UnexpectedChar { pos: 0, found: 'a' })
        );
    }

    #[test]
    fn labels_of_small_trees() {
        assert_eq!(t("((()))").label().labels(), &[0, 2, 3]);
        assert_eq!(t("(()()())").label().labels(), &[0, 1, 1, 1]);
        assert_eq!(t("()").label().labels(), &[0]);
        assert_eq!(t("((()))").label().annotated(), "(0(2(3)))");
    }

    #[test]
    fn seven_term_sample_tree() {
        let tree = t(SAMPLE);
        assert_eq!(tree.vertex_count(), 20);
        let l = tree.label();
        assert_eq!(
            l.label_multiset(),
            vec![5, 6, 6, 7, 7, 7, 8, 8, 8, 9, 9, 10, 10, 10, 10, 11, 11, 11, 11]
        );
        assert_eq!(
            tree.avalanche_poly(),
            "q^5 + 2*q^6 + 3*q^7 + 3*q^8 + 2*q^9 + 4*q^10 + 4*q^11"
                .parse()
                .unwrap()
        );
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(PlaneTree::single().avalanche_poly(), Poly::zero());
        assert_eq!(t("((()))").avalanche_poly(), "q^2 + q^3".parse().unwrap());
        assert_eq!(t("(()())").avalanche_poly(), "2*q".parse().unwrap());
    }

    #[test]
    fn from_parents_renumbers_in_preorder() {
        // root 3 with children 0 and 2; 1 hangs under 0
        let tree = PlaneTree::from_parents(&[Some(3), Some(0), Some(3), None]);
        assert_eq!(tree.encode(), "((())())");
    }

    #[test]
    fn canonical_sorts_by_size_then_encoding() {
        assert_eq!(t("(((()))())").canonical().encode(), "(()((())))");
        assert_eq!(t("((()())(()))").canonical().encode(), "((())(()()))");
        assert_eq!(
            t(SAMPLE).canonical().avalanche_poly(),
            t(SAMPLE).avalanche_poly()
        );
    }

    #[test]
    fn deep_path_does_not_recurse() {
        let n = 200_000;
        let p = PlaneTree::path(n);
        let enc = p.encode();
        assert_eq!(enc.len(), 2 * n);
        let back = PlaneTree::parse(&enc).unwrap();
        assert_eq!(back.height(), n - 1);
        let labels = back.label();
        let last = labels.labels()[n - 1];
        assert_eq!(last, (n as u64 * (n as u64 - 1)) / 2);
    }

    fn arb_tree() -> impl Strategy<Value = PlaneTree> {
        let leaf = Just(PlaneTree::single());
        leaf.prop_recursive(5, 40, 4, |inner| {
            prop::collection::vec(inner, 0..4).prop_map(PlaneTree::from_subtrees)
        })
    }

    fn shuffle_children(tree: &PlaneTree, seed: u64) -> PlaneTree {
        let n = tree.vertex_count();
        let mut parents = vec![None; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        order.push(0);
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        for v in 0..n {
            let mut kids = tree.children(v).to_vec();
            for i in (1..kids.len()).rev() {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                kids.swap(i, (state >> 33) as usize % (i + 1));
            }
            for c in kids {
                parents[c] = Some(v);
                order.push(c);
            }
        }
        // lay the parent table out in the shuffled sibling order
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let mut table = vec![None; n];
        for v in 0..n {
            table[pos[v]] = parents[v].map(|p| pos[p]);
        }
        PlaneTree::from_parents(&table)
    }

    proptest! {
        #[test]
        fn encoding_round_trips(tree in arb_tree()) {
            prop_assert_eq!(PlaneTree::parse(&tree.encode()).unwrap(), tree);
        }

        #[test]
        fn labels_increase_along_edges(tree in arb_tree()) {
            let l = tree.label();
            let sizes = tree.subtree_sizes();
            for v in 0..tree.vertex_count() {
                for &c in tree.children(v) {
                    prop_assert!(l.label_of(c) > l.label_of(v));
                    prop_assert_eq!(l.label_of(c) - l.label_of(v), sizes[c] as u64);
                }
            }
            prop_assert_eq!(tree.avalanche_poly().mass(), (tree.vertex_count() as u64 - 1).into());
        }

        #[test]
        fn polynomial_ignores_child_order(tree in arb_tree(), seed in any::<u64>()) {
            let shuffled = shuffle_children(&tree, seed);
            prop_assert_eq!(shuffled.vertex_count(), tree.vertex_count());
            prop_assert_eq!(shuffled.avalanche_poly(), tree.avalanche_poly());
            prop_assert_eq!(shuffled.canonical(), tree.canonical());
        }
    }
}
