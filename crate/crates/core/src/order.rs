//! Linear orders on finite label sets, represented as permutations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A strict linear order on `{0, …, n-1}`.
///
/// `rank[v]` is the position of label `v` (0-based); `v` precedes `w` iff
/// `rank[v] < rank[w]`. The inverse view, labels listed from smallest to
/// largest, is available through [`VertexOrder::sorted_labels`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    /// The natural order `0 < 1 < … < n-1`.
    pub fn natural(n: usize) -> Self {
        VertexOrder { rank: (0..n).collect() }
    }

    /// Builds an order from its rank vector (`rank[v]` = position of `v`).
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r >= n || seen[r] {
                return Err(Error::invalid("rank vector is not a permutation"));
            }
            seen[r] = true;
        }
        Ok(VertexOrder { rank })
    }

    /// Builds an order from the labels listed smallest-first, e.g.
    /// `[2, 0, 1]` means `2 < 0 < 1`.
    pub fn from_sorted_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in labels.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::invalid("label list is not a permutation"));
            }
            rank[v] = pos;
        }
        Ok(VertexOrder { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    /// Labels from smallest to largest.
    pub fn sorted_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            labels[r] = v;
        }
        labels
    }

    /// Sorts a set of labels ascending under this order.
    pub fn sort(&self, set: &[usize]) -> Vec<usize> {
        let mut out = set.to_vec();
        out.sort_by_key(|&v| self.rank[v]);
        out
    }

    pub fn reversed(&self) -> Self {
        let n = self.rank.len();
        VertexOrder { rank: self.rank.iter().map(|&r| n - 1 - r).collect() }
    }
}

/// Iterates over all `n!` orders, invoking the callback until it returns
/// `true` (found). Returns the first order accepted, if any.
pub fn find_order<F: FnMut(&VertexOrder) -> bool>(n: usize, mut accept: F) -> Option<VertexOrder> {
    let mut labels: Vec<usize> = (0..n).collect();
    loop {
        let order = VertexOrder::from_sorted_labels(&labels).expect("permutation");
        if accept(&order) {
            return Some(order);
        }
        if !next_permutation(&mut labels) {
            return None;
        }
    }
}

/// Advances `items` to the next lexicographic permutation; false if at the last.
pub fn next_permutation(items: &mut [usize]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}
