use avpoly::tree::enumerate_trees;
use avpoly::PlaneTree;

fn encodings_with_vertices(k: usize) -> Vec<String> {
    enumerate_trees(k - 1).map(|t| t.encode()).collect()
}

/// Number of (tree with `n` edges, position in the root's child list) pairs
/// where the root's children starting there are exactly `block`.
fn block_occurrences(n: usize, block: &[String]) -> usize {
    let mut count = 0;
    for t in enumerate_trees(n) {
        let kids: Vec<String> = t
            .children(0)
            .iter()
            .map(|&c| subtree(&t, c).encode())
            .collect();
        count += kids.windows(block.len()).filter(|w| *w == block).count();
    }
    count
}

fn subtree(t: &PlaneTree, v: usize) -> PlaneTree {
    PlaneTree::from_subtrees(t.children(v).iter().map(|&c| subtree(t, c)))
}

fn catalan_usize(k: usize) -> usize {
    avpoly::catalan(k).try_into().unwrap()
}

#[test]
fn subtree_count_for_small_patterns() {
    // every pattern tree with 2..=4 vertices, every tree with up to 8 edges
    for size in 2..=4 {
        for pattern in encodings_with_vertices(size) {
            let p = PlaneTree::parse(&pattern).unwrap();
            let block: Vec<String> = p
                .children(0)
                .iter()
                .map(|&c| subtree(&p, c).encode())
                .collect();
            for n in (size - 1)..=8 {
                assert_eq!(
                    block_occurrences(n, &block),
                    catalan_usize(n + 2 - size),
                    "pattern {pattern}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn labels_increase_down_every_path() {
    for n in 0..=10 {
        for t in enumerate_trees(n) {
            let l = t.label();
            for v in 0..t.vertex_count() {
                for &c in t.children(v) {
                    assert!(l.label_of(c) > l.label_of(v), "{t}");
                }
            }
        }
    }
}

#[test]
fn extreme_labels() {
    for n in 1..=10 {
        let top = (n * (n + 1) / 2) as u64;
        let mut at_top = 0;
        for t in enumerate_trees(n) {
            let l = t.label();
            let max = l.labels().iter().copied().max().unwrap();
            assert!(max <= top);
            if max == top {
                at_top += 1;
                assert_eq!(t, PlaneTree::path(n + 1));
            }
            let has_leaf_child = t.children(0).iter().any(|&c| t.children(c).is_empty());
            assert_eq!(l.label_multiset()[0] == 1, has_leaf_child, "{t}");
        }
        assert_eq!(at_top, 1);
    }
}
