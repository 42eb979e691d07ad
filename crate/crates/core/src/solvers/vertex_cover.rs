//! Exact minimum vertex cover by branch and bound.
//!
//! The decision procedure removes isolated vertices, takes the neighbour of
//! every pendant vertex, and otherwise branches on a maximum-degree vertex
//! `v`: either `v` is in the cover or all of `N(v)` is. The lexicographically
//! least optimum is then fixed vertex by vertex with one decision call each.

use super::{Budget, Meter};
use crate::error::Result;
use crate::resolving::{MmdGraph, OrderedVertexSet};

struct Residual<'a> {
    adj: &'a [Vec<usize>],
    alive: Vec<bool>,
}

impl Residual<'_> {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&w| self.alive[w]).count()
    }

    fn alive_neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&w| self.alive[w]).collect()
    }
}

/// Can the alive part be covered with at most `k` vertices?
fn coverable(res: &mut Residual<'_>, k: usize, meter: &Meter) -> Result<bool> {
    meter.tick()?;
    let saved = res.alive.clone();
    let mut k = k;

    // pendant and isolated vertices
    loop {
        let mut changed = false;
        for v in 0..res.adj.len() {
            if !res.alive[v] {
                continue;
            }
            match res.degree(v) {
                0 => {
                    res.alive[v] = false;
                    changed = true;
                }
                1 => {
                    if k == 0 {
                        res.alive = saved;
                        return Ok(false);
                    }
                    let w = res.alive_neighbors(v)[0];
                    res.alive[w] = false;
                    res.alive[v] = false;
                    k -= 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let mut best = None;
    let mut edges = 0;
    for v in 0..res.adj.len() {
        if res.alive[v] {
            let deg = res.degree(v);
            edges += deg;
            if best.is_none_or(|(_, bd)| deg > bd) {
                best = Some((v, deg));
            }
        }
    }
    edges /= 2;
    let Some((v, max_deg)) = best else {
        res.alive = saved;
        return Ok(true);
    };
    if k == 0 || edges > k * max_deg {
        res.alive = saved;
        return Ok(false);
    }

    let before = res.alive.clone();
    res.alive[v] = false;
    let found = coverable(res, k - 1, meter)?;
    res.alive = before;
    if found {
        res.alive = saved;
        return Ok(true);
    }

    let nbrs = res.alive_neighbors(v);
    let found = if nbrs.len() <= k {
        for &w in &nbrs {
            res.alive[w] = false;
        }
        res.alive[v] = false;
        coverable(res, k - nbrs.len(), meter)?
    } else {
        false
    };
    res.alive = saved;
    Ok(found)
}

/// Decision with some vertices forced into and out of the cover.
fn coverable_with(adj: &[Vec<usize>], include: &[bool], exclude: &[bool], k: usize, meter: &Meter) -> Result<bool> {
    let n = adj.len();
    let mut in_cover = include.to_vec();
    for v in 0..n {
        if exclude[v] {
            for &w in &adj[v] {
                if exclude[w] {
                    return Ok(false);
                }
                in_cover[w] = true;
            }
        }
    }
    let used = in_cover.iter().filter(|&&b| b).count();
    if used > k {
        return Ok(false);
    }
    let alive = (0..n).map(|v| !in_cover[v] && !exclude[v]).collect();
    coverable(&mut Residual { adj, alive }, k - used, meter)
}

fn maximal_matching_size(h: &MmdGraph) -> usize {
    let mut matched = vec![false; h.order()];
    let mut size = 0;
    for &(u, v) in h.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            size += 1;
        }
    }
    size
}

/// Minimum vertex cover of `h`, lexicographically least among optima,
/// together with the number of branch-and-bound nodes visited.
pub fn min_vertex_cover_with_stats(h: &MmdGraph, budget: &Budget) -> Result<(OrderedVertexSet, u64)> {
    let n = h.order();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in h.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let meter = Meter::new(budget);
    let mut include = vec![false; n];
    let mut exclude = vec![false; n];

    let mut k = maximal_matching_size(h);
    while !coverable_with(&adj, &include, &exclude, k, &meter)? {
        k += 1;
    }

    let mut cover = Vec::with_capacity(k);
    for v in 0..n {
        if adj[v].is_empty() {
            exclude[v] = true;
            continue;
        }
        include[v] = true;
        if coverable_with(&adj, &include, &exclude, k, &meter)? {
            cover.push(v);
        } else {
            include[v] = false;
            exclude[v] = true;
        }
    }
    debug_assert_eq!(cover.len(), k);
    Ok((OrderedVertexSet::from_trusted(cover), meter.examined()))
}

pub fn min_vertex_cover(h: &MmdGraph, budget: &Budget) -> Result<OrderedVertexSet> {
    min_vertex_cover_with_stats(h, budget).map(|(c, _)| c)
}
