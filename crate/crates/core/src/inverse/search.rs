use std::collections::BTreeSet;

use super::{assert_sound, coefficient_counts, InverseError, InverseResult, InverseStatus};
use crate::polyalg::Poly;
use crate::tree::PlaneTree;

/// Default cap on child placements for [`solve_general`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest tree the general search will attempt.
const VERTEX_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: usize,
    label: u64,
    remaining: u64,
    min_child: u64,
}

#[derive(Clone, Copy, Debug)]
struct Placed {
    label_idx: usize,
    old_min: u64,
    sigma: u64,
}

#[derive(Debug)]
struct Frame {
    cursor: usize,
    next: usize,
    placed: Option<Placed>,
}

/// Backtracking over label assignments. Vertices are expanded in creation
/// order; a vertex with label `mu` and `r` vertices still to place below it
/// takes a child of size `sigma` by consuming an unused label `mu + sigma`.
/// Children are generated in nondecreasing size, which fixes one
/// representative per sibling permutation.
struct Search {
    labels: Vec<u64>,
    counts: Vec<u64>,
    nodes: Vec<Node>,
    used: u64,
    budget: u64,
    found: BTreeSet<String>,
}

impl Search {
    fn first_at_least(&self, lo: u64) -> usize {
        self.labels.partition_point(|&l| l < lo)
    }

    fn any_label_in(&self, lo: u64, hi: u64) -> bool {
        let mut i = self.first_at_least(lo);
        while i < self.labels.len() && self.labels[i] <= hi {
            if self.counts[i] > 0 {
                return true;
            }
            i += 1;
        }
        false
    }

    /// Every unfinished vertex from `from` on still has a usable label.
    fn feasible(&self, from: usize) -> bool {
        self.nodes[from..].iter().all(|nd| {
            nd.remaining == 0 || self.any_label_in(nd.label + nd.min_child, nd.label + nd.remaining)
        })
    }

    fn advance(&self, mut cursor: usize) -> usize {
        while cursor < self.nodes.len() && self.nodes[cursor].remaining == 0 {
            cursor += 1;
        }
        cursor
    }

    fn frame(&self, cursor: usize) -> Frame {
        let nd = self.nodes[cursor];
        Frame {
            cursor,
            next: self.first_at_least(nd.label + nd.min_child),
            placed: None,
        }
    }

    fn candidate(&self, cursor: usize, mut i: usize) -> Option<usize> {
        let nd = self.nodes[cursor];
        while i < self.labels.len() && self.labels[i] <= nd.label + nd.remaining {
            let sigma = self.labels[i] - nd.label;
            if self.counts[i] > 0 && (sigma == nd.remaining || 2 * sigma <= nd.remaining) {
                return Some(i);
            }
            i += 1;
        }
        None
    }

    fn place(&mut self, cursor: usize, label_idx: usize) -> Placed {
        let label = self.labels[label_idx];
        let parent = &mut self.nodes[cursor];
        let sigma = label - parent.label;
        let placed = Placed {
            label_idx,
            old_min: parent.min_child,
            sigma,
        };
        parent.remaining -= sigma;
        parent.min_child = sigma;
        self.counts[label_idx] -= 1;
        self.nodes.push(Node {
            parent: cursor,
            label,
            remaining: sigma - 1,
            min_child: 1,
        });
        placed
    }

    fn undo(&mut self, cursor: usize, placed: Placed) {
        self.nodes.pop();
        self.counts[placed.label_idx] += 1;
        let parent = &mut self.nodes[cursor];
        parent.remaining += placed.sigma;
        parent.min_child = placed.old_min;
    }

    fn record(&mut self) {
        let parents: Vec<Option<usize>> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, nd)| (i > 0).then_some(nd.parent))
            .collect();
        self.found
            .insert(PlaneTree::from_parents(&parents).canonical_encoding());
    }

    /// Returns `false` if the budget ran out.
    fn run(&mut self) -> bool {
        let start = self.advance(0);
        if start == self.nodes.len() {
            self.record();
            return true;
        }
        let mut stack = vec![self.frame(start)];
        while let Some(top) = stack.last_mut() {
            let cursor = top.cursor;
            if let Some(placed) = top.placed.take() {
                self.undo(cursor, placed);
            }
            let Some(i) = self.candidate(cursor, top.next) else {
                stack.pop();
                continue;
            };
            if self.used >= self.budget {
                return false;
            }
            self.used += 1;
            let placed = self.place(cursor, i);
            let top = stack.last_mut().expect("frame still on stack");
            top.next = i + 1;
            top.placed = Some(placed);
            if !self.feasible(cursor) {
                continue;
            }
            let next = self.advance(cursor);
            if next == self.nodes.len() {
                self.record();
            } else {
                stack.push(self.frame(next));
            }
        }
        true
    }
}

/// Finds every plane tree, up to reordering children, whose avalanche
/// polynomial is `p`. Gives up with [`InverseStatus::BudgetExhausted`] after
/// `budget` child placements, returning whatever was found so far.
pub fn solve_general(p: &Poly, budget: u64) -> Result<InverseResult, InverseError> {
    let terms = coefficient_counts(p, VERTEX_LIMIT - 1)?;
    if terms.first().is_some_and(|&(e, _)| e == 0) {
        return Ok(InverseResult::no_tree());
    }
    let total: u64 = terms.iter().map(|&(_, c)| c).sum();
    let mut search = Search {
        labels: terms.iter().map(|&(e, _)| e as u64).collect(),
        counts: terms.iter().map(|&(_, c)| c).collect(),
        nodes: vec![Node {
            parent: 0,
            label: 0,
            remaining: total,
            min_child: 1,
        }],
        used: 0,
        budget,
        found: BTreeSet::new(),
    };
    let closed = !search.feasible(0) || search.run();
    let trees: Vec<PlaneTree> = search
        .found
        .iter()
        .map(|e| PlaneTree::parse(e).expect("search emits valid encodings"))
        .collect();
    assert_sound(p, &trees);
    let status = if !closed {
        InverseStatus::BudgetExhausted
    } else if trees.is_empty() {
        InverseStatus::NoTree
    } else {
        InverseStatus::Found
    };
    Ok(InverseResult { status, trees })
}
