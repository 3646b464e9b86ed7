use serde::Serialize;

use super::BiGraph;

/// Isomorphism-invariant key for small graphs (both sides swapped
/// allowed). Two graphs have equal keys iff they are isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalKey {
    pub m: u8,
    pub n: u8,
    pub bits: u64,
}

impl BiGraph {
    /// Whether `self` is isomorphic to an induced subgraph of `g`, with
    /// the bipartition swap allowed.
    pub fn is_induced_subgraph(&self, g: &BiGraph) -> bool {
        embeds(self, g) || embeds(&self.transpose(), g)
    }

    /// Isomorphism up to relabeling and swapping the sides.
    pub fn is_isomorphic(&self, g: &BiGraph) -> bool {
        if self.edge_count() != g.edge_count() {
            return false;
        }
        ((self.m, self.n) == (g.m, g.n) && embeds(self, g))
            || ((self.n, self.m) == (g.m, g.n) && embeds(&self.transpose(), g))
    }

    /// Canonical key, available while `m, n ≤ 8` and `m·n ≤ 64`.
    pub fn canonical_key(&self) -> Option<CanonicalKey> {
        if self.m > 8 || self.n > 8 || self.m * self.n > 64 {
            return None;
        }
        let a = oriented_min(self);
        let t = oriented_min(&self.transpose());
        let ka = CanonicalKey { m: self.m as u8, n: self.n as u8, bits: a };
        let kt = CanonicalKey { m: self.n as u8, n: self.m as u8, bits: t };
        Some(ka.min(kt))
    }
}

/// Least row-major packing over row permutations, columns sorted.
fn oriented_min(g: &BiGraph) -> u64 {
    let (m, n) = (g.m, g.n);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best = u64::MAX;
    let mut cols = vec![0u64; n];
    let mut visit = |perm: &[usize]| {
        for (j, c) in cols.iter_mut().enumerate() {
            *c = perm.iter().fold(0u64, |acc, &i| (acc << 1) | g.get(i, j) as u64);
        }
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let mut packed = 0u64;
        for i in 0..m {
            for c in cols.iter() {
                packed = (packed << 1) | ((c >> (m - 1 - i)) & 1);
            }
        }
        best = best.min(packed);
    };
    heap_permutations(&mut perm, &mut visit);
    if m == 0 {
        0
    } else {
        best
    }
}

fn heap_permutations(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    let k = items.len();
    let mut c = vec![0usize; k];
    visit(items);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Backtracking search for an injection of rows and columns of `h` into
/// those of `g` that reproduces every bit of `h`. Rows are placed in order
/// of decreasing degree; columns are resolved by bipartite matching on the
/// candidate sets, which is checked after every row placement.
fn embeds(h: &BiGraph, g: &BiGraph) -> bool {
    if h.m > g.m || h.n > g.n {
        return false;
    }
    let hdeg = h.row_degrees();
    let gdeg = g.row_degrees();
    let mut order: Vec<usize> = (0..h.m).collect();
    order.sort_by(|&a, &b| hdeg[b].cmp(&hdeg[a]).then(a.cmp(&b)));
    let cand = vec![vec![true; g.n]; h.n];
    let mut used = vec![false; g.m];
    search(h, g, &order, &hdeg, &gdeg, 0, &cand, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search(
    h: &BiGraph,
    g: &BiGraph,
    order: &[usize],
    hdeg: &[usize],
    gdeg: &[usize],
    depth: usize,
    cand: &[Vec<bool>],
    used: &mut [bool],
) -> bool {
    if !has_column_matching(cand, g.n) {
        return false;
    }
    if depth == order.len() {
        return true;
    }
    let hi = order[depth];
    for r in 0..g.m {
        if used[r] || gdeg[r] < hdeg[hi] {
            continue;
        }
        let next: Vec<Vec<bool>> = cand
            .iter()
            .enumerate()
            .map(|(j, cs)| cs.iter().enumerate().map(|(c, &ok)| ok && g.get(r, c) == h.get(hi, j)).collect())
            .collect();
        used[r] = true;
        if search(h, g, order, hdeg, gdeg, depth + 1, &next, used) {
            return true;
        }
        used[r] = false;
    }
    false
}

/// Kuhn's augmenting-path matching: can every `h` column get a distinct
/// candidate `g` column?
fn has_column_matching(cand: &[Vec<bool>], gn: usize) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; gn];
    fn augment(j: usize, cand: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for c in 0..cand[j].len() {
            if !cand[j][c] || seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|o| augment(o, cand, seen, owner)) {
                owner[c] = Some(j);
                return true;
            }
        }
        false
    }
    (0..cand.len()).all(|j| {
        let mut seen = vec![false; gn];
        augment(j, cand, &mut seen, &mut owner)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&str]) -> BiGraph {
        BiGraph::from_rows(rows).unwrap()
    }

    #[test]
    fn subgraph_examples() {
        let e4 = g(&["100", "111", "001"]);
        let f4 = g(&["10010", "11100", "00101"]);
        assert!(e4.is_induced_subgraph(&f4));
        let lambda3 = g(&["110", "101", "011"]);
        let sigma33 = g(&["110", "011", "001"]);
        assert!(!lambda3.is_induced_subgraph(&sigma33));
        let trie = g(&["111", "110", "100"]);
        let gee7 = g(&["110", "111", "011"]);
        assert!(!trie.is_induced_subgraph(&gee7));
    }

    #[test]
    fn isomorphism_examples() {
        let s22 = g(&["11", "01"]);
        assert!(s22.is_isomorphic(&s22.transpose()));
        assert!(!s22.is_isomorphic(&g(&["11", "11"])));
        let f3 = g(&["1100", "0110", "0011", "1001"]);
        assert!(f3.is_isomorphic(&g(&["1001", "1100", "0110", "0011"])));
    }

    #[test]
    fn canonical_key_agrees_with_isomorphism() {
        let a = g(&["110", "011"]);
        let b = g(&["10", "11", "01"]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), g(&["111", "100"]).canonical_key());
        assert_eq!(BiGraph::empty(0, 3).canonical_key(), BiGraph::empty(3, 0).canonical_key());
    }
}
