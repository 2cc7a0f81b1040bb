//! Aho-Corasick automaton over arrow indices.
//!
//! The patterns are the monomial relations written in traversal order. A path
//! is nonzero in the algebra exactly when feeding its arrows through the
//! automaton never enters a dead state.

use std::collections::VecDeque;

pub type StateId = usize;

pub const ROOT: StateId = 0;

#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    alphabet: usize,
    /// Dense transition table, `alphabet` entries per state.
    delta: Vec<StateId>,
    /// A state is dead when some pattern is a suffix of the word it encodes.
    dead: Vec<bool>,
}

impl FactorAutomaton {
    /// Builds the automaton for `patterns` over the symbols `0..alphabet`.
    pub fn new(alphabet: usize, patterns: &[Vec<usize>]) -> Self {
        const NONE: usize = usize::MAX;
        let mut trie: Vec<Vec<usize>> = vec![vec![NONE; alphabet]];
        let mut dead = vec![false];
        for pat in patterns {
            let mut s = ROOT;
            for &sym in pat {
                assert!(sym < alphabet, "pattern symbol out of range");
                if trie[s][sym] == NONE {
                    trie.push(vec![NONE; alphabet]);
                    dead.push(false);
                    trie[s][sym] = trie.len() - 1;
                }
                s = trie[s][sym];
            }
            dead[s] = true;
        }

        let mut fail = vec![ROOT; trie.len()];
        let mut delta = vec![ROOT; trie.len() * alphabet];
        let mut queue = VecDeque::new();
        for sym in 0..alphabet {
            let t = trie[ROOT][sym];
            if t != NONE {
                delta[sym] = t;
                fail[t] = ROOT;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for sym in 0..alphabet {
                let t = trie[s][sym];
                if t != NONE {
                    fail[t] = delta[fail[s] * alphabet + sym];
                    delta[s * alphabet + sym] = t;
                    queue.push_back(t);
                } else {
                    delta[s * alphabet + sym] = delta[fail[s] * alphabet + sym];
                }
            }
        }
        FactorAutomaton {
            alphabet,
            delta,
            dead,
        }
    }

    pub fn num_states(&self) -> usize {
        self.dead.len()
    }

    pub fn next(&self, state: StateId, sym: usize) -> StateId {
        self.delta[state * self.alphabet + sym]
    }

    pub fn is_dead(&self, state: StateId) -> bool {
        self.dead[state]
    }

    /// Runs the word from the root; `None` if some pattern occurs in it.
    pub fn run(&self, word: &[usize]) -> Option<StateId> {
        word.iter().try_fold(ROOT, |s, &sym| {
            let t = self.next(s, sym);
            (!self.is_dead(t)).then_some(t)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_avoids(word: &[usize], patterns: &[Vec<usize>]) -> bool {
        patterns
            .iter()
            .all(|p| p.is_empty() || !word.windows(p.len()).any(|w| w == p.as_slice()))
    }

    #[test]
    fn detects_overlapping_patterns() {
        // patterns "010" and "11" over {0, 1}
        let pats = vec![vec![0, 1, 0], vec![1, 1]];
        let ac = FactorAutomaton::new(2, &pats);
        assert!(ac.run(&[0, 1, 0]).is_none());
        assert!(ac.run(&[0, 0, 1, 1]).is_none());
        assert!(ac.run(&[0, 1, 1]).is_none());
        assert!(ac.run(&[0, 0, 1, 0]).is_none());
        assert!(ac.run(&[1, 0, 0, 1]).is_some());
    }

    #[test]
    fn pattern_inside_another_is_found_via_fail_links() {
        let pats = vec![vec![0, 1, 2, 3], vec![1, 2]];
        let ac = FactorAutomaton::new(4, &pats);
        assert!(ac.run(&[0, 1, 2]).is_none());
        assert!(ac.run(&[0, 1, 3]).is_some());
    }

    #[test]
    fn agrees_with_naive_search_on_all_short_words() {
        let pats = vec![vec![2, 1], vec![0, 0, 1], vec![1, 2, 0]];
        let ac = FactorAutomaton::new(3, &pats);
        for len in 0..=7u32 {
            for code in 0..3usize.pow(len) {
                let mut c = code;
                let word: Vec<usize> = (0..len)
                    .map(|_| {
                        let s = c % 3;
                        c /= 3;
                        s
                    })
                    .collect();
                assert_eq!(ac.run(&word).is_some(), naive_avoids(&word, &pats), "{word:?}");
            }
        }
    }
}
