//! Width and minimum chain decompositions.
//!
//! Elements are ordered by `⪯` with ties between identical coordinates broken
//! by element index, which turns the preorder into a strict partial order
//! whose antichains are exactly the antichains of `P` (two elements at the
//! same location are comparable and never share an antichain). By Dilworth's
//! theorem the width equals the minimum number of chains covering `P`, which is
//! `n` minus a maximum matching in the bipartite "i precedes j" graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// A chain: element indices (into the owning [`PointSet`]) in ascending `⪯` order.
pub type Chain = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    chains: Vec<Chain>,
}

impl ChainDecomposition {
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// The chains expressed as element ids.
    pub fn ids(&self, points: &PointSet) -> Vec<Vec<u64>> {
        self.chains.iter().map(|c| c.iter().map(|&i| points.id(i)).collect()).collect()
    }

    /// Checks disjointness, coverage and the ascending order inside each chain.
    pub fn validate(&self, points: &PointSet) -> Result<()> {
        let mut seen = vec![false; points.len()];
        for chain in &self.chains {
            if chain.is_empty() {
                return Err(Error::invalid("empty chain"));
            }
            for &i in chain {
                if i >= points.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::invalid(format!("element index {i} out of range or repeated")));
                }
            }
            if let Some(w) = chain.windows(2).find(|w| !points.ge(w[1], w[0])) {
                return Err(Error::invalid(format!("chain not ordered at {} -> {}", w[0], w[1])));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("chains do not cover every element"));
        }
        Ok(())
    }
}

/// `i` strictly precedes `j` in the tie-broken order.
#[inline]
fn precedes(points: &PointSet, i: usize, j: usize) -> bool {
    i != j && points.ge(j, i) && (i < j || !points.ge(i, j))
}

const NONE: u32 = u32::MAX;

/// Maximum bipartite matching (Hopcroft–Karp). `adj[u]` lists the right
/// vertices of left vertex `u`; both sides have `adj.len()` vertices here.
/// Returns the right partner of every left vertex.
fn hopcroft_karp(adj: &[Vec<u32>], n_right: usize) -> Vec<u32> {
    let n_left = adj.len();
    let mut match_l = vec![NONE; n_left];
    let mut match_r = vec![NONE; n_right];

    // greedy warm start
    for u in 0..n_left {
        if let Some(&v) = adj[u].iter().find(|&&v| match_r[v as usize] == NONE) {
            match_l[u] = v;
            match_r[v as usize] = u as u32;
        }
    }

    let mut dist = vec![u32::MAX; n_left];
    let mut it = vec![0usize; n_left];
    let mut queue = VecDeque::new();
    let mut stack: Vec<u32> = Vec::new();
    let mut via: Vec<u32> = Vec::new();
    loop {
        queue.clear();
        for u in 0..n_left {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v as usize];
                if w == NONE {
                    found = true;
                } else if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u] + 1;
                    queue.push_back(w as usize);
                }
            }
        }
        if !found {
            break;
        }

        it.iter_mut().for_each(|x| *x = 0);
        for root in 0..n_left {
            if match_l[root] != NONE {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root as u32);
            while let Some(&u) = stack.last() {
                let u = u as usize;
                if it[u] < adj[u].len() {
                    let v = adj[u][it[u]];
                    it[u] += 1;
                    let w = match_r[v as usize];
                    if w == NONE {
                        via.push(v);
                        // flip the alternating path root -> ... -> u -> v
                        for (k, &x) in stack.iter().enumerate() {
                            match_l[x as usize] = via[k];
                            match_r[via[k] as usize] = x;
                        }
                        break;
                    } else if dist[w as usize] == dist[u] + 1 {
                        via.push(v);
                        stack.push(w);
                    }
                } else {
                    dist[u] = u32::MAX;
                    stack.pop();
                    via.pop();
                }
            }
        }
    }
    match_l
}

fn check_nonempty(points: &PointSet) -> Result<()> {
    if points.is_empty() {
        return Err(Error::invalid("width is undefined for an empty set"));
    }
    Ok(())
}

/// Minimum chain decomposition; the number of chains equals [`width`].
pub fn chain_decomposition(points: &PointSet) -> Result<ChainDecomposition> {
    check_nonempty(points)?;
    let n = points.len();
    if n > u32::MAX as usize - 1 {
        return Err(Error::invalid("too many elements"));
    }
    let decomposition = if points.dim() == 1 {
        // a total preorder: one chain in sorted order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points.point(a).coords()[0].total_cmp(&points.point(b).coords()[0]).then(a.cmp(&b)));
        ChainDecomposition { chains: vec![order] }
    } else {
        let adj: Vec<Vec<u32>> =
            (0..n).map(|i| (0..n).filter(|&j| precedes(points, i, j)).map(|j| j as u32).collect()).collect();
        let successor = hopcroft_karp(&adj, n);
        let mut has_pred = vec![false; n];
        for &v in &successor {
            if v != NONE {
                has_pred[v as usize] = true;
            }
        }
        let chains = (0..n)
            .filter(|&s| !has_pred[s])
            .map(|s| {
                let mut chain = vec![s];
                let mut cur = s;
                while successor[cur] != NONE {
                    cur = successor[cur] as usize;
                    chain.push(cur);
                }
                chain
            })
            .collect();
        ChainDecomposition { chains }
    };
    decomposition.validate(points)?;
    Ok(decomposition)
}

/// Size of the largest antichain of `points`.
pub fn width(points: &PointSet) -> Result<usize> {
    Ok(chain_decomposition(points)?.len())
}
