use super::{assert_sound, coefficient_counts, InverseError, InverseResult, InverseStatus};
use crate::polyalg::Poly;
use crate::tree::PlaneTree;

/// Largest tree the height-2 solver will build.
const VERTEX_LIMIT: u64 = u32::MAX as u64;

/// Finds the tree of height at most two whose avalanche polynomial is `p`.
///
/// Greedy over ascending exponents: the lowest remaining exponent `j` with
/// coefficient `a` must come from `a` children of the root with subtree size
/// `j`, and each of those brings `j - 1` leaves labeled `j + 1`. Exponent 1
/// is leaves hanging directly off the root. Such a tree is unique up to child
/// order when it exists.
///
/// Runs in time linear in the number of terms plus the size of the tree it
/// builds.
pub fn solve_height2(p: &Poly) -> Result<InverseResult, InverseError> {
    let terms = coefficient_counts(p, VERTEX_LIMIT)?;
    let mut groups: Vec<(usize, u64)> = Vec::new();
    // leaves owed at the next exponent by the group just opened
    let mut owed: Option<(usize, u64)> = None;
    for (exp, count) in terms {
        let mut count = count;
        if let Some((owed_exp, amount)) = owed.take() {
            if owed_exp != exp || count < amount {
                return Ok(InverseResult::no_tree());
            }
            count -= amount;
        }
        if count == 0 {
            continue;
        }
        match exp {
            0 => return Ok(InverseResult::no_tree()),
            1 => groups.push((1, count)),
            j => {
                let leaves = match count.checked_mul(j as u64 - 1) {
                    Some(l) => l,
                    None => return Ok(InverseResult::no_tree()),
                };
                owed = Some((j + 1, leaves));
                groups.push((j, count));
            }
        }
    }
    if owed.is_some() {
        return Ok(InverseResult::no_tree());
    }
    let tree = PlaneTree::from_subtrees(
        groups
            .into_iter()
            .flat_map(|(j, count)| (0..count).map(move |_| PlaneTree::star(j - 1))),
    );
    let trees = vec![tree];
    assert_sound(p, &trees);
    Ok(InverseResult {
        status: InverseStatus::Found,
        trees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    fn solve(s: &str) -> InverseResult {
        solve_height2(&s.parse().unwrap()).unwrap()
    }

    fn found(s: &str) -> String {
        let r = solve(s);
        assert_eq!(r.status, InverseStatus::Found, "{s}");
        assert_eq!(r.trees.len(), 1);
        r.trees[0].encode()
    }

    #[test]
    fn examples() {
        assert_eq!(found("3*q"), "(()()())");
        assert_eq!(found("q^3 + 2*q^4"), "((()()))");
        assert_eq!(found("q + q^3 + 2*q^4"), "(()(()()))");
        assert_eq!(found("0"), "()");
        assert_eq!(solve("q^3 + q^4").status, InverseStatus::NoTree);
    }

    #[test]
    fn rejections() {
        // constant term: only the root carries label 0
        assert_eq!(solve("1 + q").status, InverseStatus::NoTree);
        // owed leaves missing entirely
        assert_eq!(solve("q^2").status, InverseStatus::NoTree);
        assert_eq!(solve("q^2 + q^4").status, InverseStatus::NoTree);
        assert_eq!(
            solve_height2(&"q - q^2".parse().unwrap()),
            Err(InverseError::NegativeCoefficient { exp: 2 })
        );
    }

    #[test]
    fn decides_exactly_the_height_two_polynomials() {
        // every tree with at most 9 edges: the solver answers Found exactly
        // for polynomials of some height <= 2 tree, and then returns it
        use std::collections::HashMap;
        let mut by_poly: HashMap<Poly, Vec<PlaneTree>> = HashMap::new();
        for n in 0..=9 {
            for t in enumerate_trees(n) {
                by_poly.entry(t.avalanche_poly()).or_default().push(t);
            }
        }
        for (poly, trees) in by_poly {
            let low: Vec<String> = trees
                .iter()
                .filter(|t| t.height() <= 2)
                .map(PlaneTree::canonical_encoding)
                .collect();
            let r = solve_height2(&poly).unwrap();
            if low.is_empty() {
                assert_eq!(r.status, InverseStatus::NoTree, "{poly}");
            } else {
                assert_eq!(r.status, InverseStatus::Found, "{poly}");
                assert!(r.trees[0].height() <= 2);
                assert!(low.contains(&r.trees[0].encode()), "{poly}");
            }
        }
    }
}
