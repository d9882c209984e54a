//! Exhaustive enumeration of plane trees through Dyck words.
//!
//! A tree with `n` edges is the Dyck word of length `2n` describing its root's
//! child forest; the full-tree encoding is that word wrapped in one more pair
//! of parentheses, so lexicographic order (`(` < `)`) is the same for both.

use super::PlaneTree;

/// Walks Dyck words of semilength `n` in lexicographic order, optionally
/// keeping a fixed prefix so disjoint prefixes can be walked independently.
#[derive(Clone, Debug)]
pub struct DyckWalker {
    word: Vec<u8>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl DyckWalker {
    pub fn new(n: usize) -> Self {
        Self::with_prefix(n, &[]).expect("empty prefix is always completable")
    }

    /// Walker over the words starting with `prefix`, or `None` if no Dyck
    /// word of semilength `n` has that prefix.
    pub fn with_prefix(n: usize, prefix: &[u8]) -> Option<Self> {
        if prefix.len() > 2 * n {
            return None;
        }
        let mut opens = 0usize;
        let mut balance = 0usize;
        for &b in prefix {
            match b {
                b'(' => {
                    opens += 1;
                    balance += 1;
                }
                b')' => balance = balance.checked_sub(1)?,
                _ => return None,
            }
        }
        if opens > n {
            return None;
        }
        let mut word = Vec::with_capacity(2 * n);
        word.extend_from_slice(prefix);
        word.extend(std::iter::repeat_n(b'(', n - opens));
        word.extend(std::iter::repeat_n(b')', balance + n - opens));
        Some(DyckWalker {
            word,
            fixed: prefix.len(),
            started: false,
            done: false,
        })
    }

    /// The next word, or `None` once the walk is exhausted.
    pub fn next_word(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        if self.advance() {
            Some(&self.word)
        } else {
            self.done = true;
            None
        }
    }

    fn advance(&mut self) -> bool {
        let len = self.word.len();
        // balance before each position
        let mut before = Vec::with_capacity(len);
        let mut bal = 0usize;
        for &b in &self.word {
            before.push(bal);
            if b == b'(' {
                bal += 1;
            } else {
                bal -= 1;
            }
        }
        for i in (self.fixed..len).rev() {
            if self.word[i] == b'(' && before[i] >= 1 {
                self.word[i] = b')';
                let balance = before[i] - 1;
                let rest = len - i - 1;
                let opens = (rest - balance) / 2;
                let tail = &mut self.word[i + 1..];
                tail[..opens].fill(b'(');
                tail[opens..].fill(b')');
                return true;
            }
        }
        false
    }
}

/// Iterator over all plane trees with a given number of edges.
pub struct TreeIter {
    walker: DyckWalker,
}

impl Iterator for TreeIter {
    type Item = PlaneTree;

    fn next(&mut self) -> Option<PlaneTree> {
        self.walker.next_word().map(PlaneTree::from_dyck)
    }
}

/// Every plane tree with `n` edges exactly once, in lexicographic order of
/// the encoding. Trees are produced one at a time.
pub fn enumerate_trees(n: usize) -> TreeIter {
    TreeIter {
        walker: DyckWalker::new(n),
    }
}

/// All completable prefixes of length `min(len, 2n)`, in lexicographic order.
/// The walks started from them partition the Dyck words of semilength `n`.
pub fn dyck_prefixes(n: usize, len: usize) -> Vec<Vec<u8>> {
    let len = len.min(2 * n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        n: usize,
        len: usize,
        opens: usize,
        bal: usize,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        if opens < n {
            cur.push(b'(');
            rec(n, len, opens + 1, bal + 1, cur, out);
            cur.pop();
        }
        if bal > 0 {
            cur.push(b')');
            rec(n, len, opens, bal - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, len, 0, 0, &mut cur, &mut out);
    out
}
