//! Reference word-problem solver that materializes every word of a degree.
//!
//! Exponential in the degree; used to cross-check [`crate::engine::WordEngine`].

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::uf::UnionFind;
use crate::word::{all_words, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Union-find over rewrites in both directions.
    Bidirectional,
    /// Breadth-first search along forward rewrites only.
    Forward,
}

fn encode(letters: &[usize], n: usize) -> usize {
    letters.iter().fold(0, |acc, &x| acc * n + x)
}

fn decode(mut idx: usize, n: usize, degree: usize) -> Vec<usize> {
    let mut v = vec![0; degree];
    for i in (0..degree).rev() {
        v[i] = idx % n;
        idx /= n;
    }
    v
}

/// Partition of all `n^degree` words into classes, each sorted, classes
/// ordered by least member. Fails if `n^degree` exceeds `budget`.
pub fn degree_partition(
    pres: &Presentation,
    degree: usize,
    budget: u128,
    mode: Closure,
) -> Result<Vec<Vec<Word>>> {
    let n = pres.n();
    let required = (n as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded {
            degree,
            required,
            budget,
        });
    }
    let total = required as usize;
    let mut inverse = vec![(0, 0); n * n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = pres.pair(x, y);
            inverse[u * n + v] = (x, y);
        }
    }
    let rewrite = |idx: usize, i: usize, map: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut v = decode(idx, n, degree);
        let (a, b) = map(v[i], v[i + 1]);
        v[i] = a;
        v[i + 1] = b;
        encode(&v, n)
    };

    let mut label = vec![usize::MAX; total];
    match mode {
        Closure::Bidirectional => {
            let mut uf = UnionFind::new(total);
            for idx in 0..total {
                for i in 0..degree.saturating_sub(1) {
                    uf.union(idx, rewrite(idx, i, &|x, y| pres.pair(x, y)));
                    uf.union(idx, rewrite(idx, i, &|x, y| inverse[x * n + y]));
                }
            }
            let (labels, _) = uf.labels();
            for (i, l) in labels.into_iter().enumerate() {
                label[i] = l as usize;
            }
        }
        Closure::Forward => {
            let mut next = 0;
            for start in 0..total {
                if label[start] != usize::MAX {
                    continue;
                }
                label[start] = next;
                let mut queue = VecDeque::from([start]);
                while let Some(idx) = queue.pop_front() {
                    for i in 0..degree.saturating_sub(1) {
                        let t = rewrite(idx, i, &|x, y| pres.pair(x, y));
                        if label[t] == usize::MAX {
                            label[t] = next;
                            queue.push_back(t);
                        } else if label[t] != next {
                            return Err(Error::InternalInconsistency(format!(
                                "forward closure of {} reaches an earlier class",
                                Word(decode(start, n, degree))
                            )));
                        }
                    }
                }
                next += 1;
            }
        }
    }
    let count = label.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (idx, w) in all_words(n, degree).enumerate() {
        classes[label[idx]].push(w);
    }
    Ok(classes)
}
