//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's distance, verifier or solver code.

#![allow(dead_code)]

use itertools::Itertools;
use mdim::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

/// Floyd-Warshall on the adjacency of `g`.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn resolves(d: &[Vec<u32>], set: &[usize]) -> bool {
    let reps: Vec<Vec<u32>> = (0..d.len()).map(|u| set.iter().map(|&z| d[u][z]).collect()).collect();
    reps.iter().all_unique()
}

/// Literal form: no pair has `r(u) - r(v) = μ·(1, ..., 1)`.
pub fn doubly_resolves_all(d: &[Vec<u32>], set: &[usize]) -> bool {
    if set.len() < 2 {
        return false;
    }
    (0..d.len()).tuple_combinations().all(|(u, v)| {
        let diff: Vec<i64> = set.iter().map(|&z| d[u][z] as i64 - d[v][z] as i64).collect();
        diff.iter().any(|&x| x != diff[0])
    })
}

pub fn on_geodesic(d: &[Vec<u32>], w: usize, u: usize, v: usize) -> bool {
    d[u][w] + d[w][v] == d[u][v]
}

pub fn strong_resolves_all(d: &[Vec<u32>], set: &[usize]) -> bool {
    (0..d.len())
        .tuple_combinations()
        .all(|(u, v)| set.iter().any(|&w| on_geodesic(d, u, w, v) || on_geodesic(d, v, w, u)))
}

/// Smallest set size passing `pred`, by enumeration in increasing size.
pub fn brute_min(n: usize, min_size: usize, pred: impl Fn(&[usize]) -> bool) -> usize {
    for size in min_size..=n {
        if (0..n).combinations(size).any(|c| pred(&c)) {
            return size;
        }
    }
    panic!("no set of any size passes");
}

/// A connected graph on `n` vertices: a random spanning tree plus extra
/// edges with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded sample used by the oracle-equivalence checks.
pub fn random_corpus(count: usize) -> Vec<Graph> {
    let mut rng = seeded(0x5eed);
    (0..count)
        .map(|i| {
            let n = 4 + i % 7;
            let p = [0.1, 0.25, 0.4, 0.6][i % 4];
            random_connected(&mut rng, n, p)
        })
        .collect()
}

/// Pairs `(u, v)` that are mutually maximally distant, from the definition.
pub fn mmd_by_definition(g: &Graph, d: &[Vec<u32>]) -> Vec<(usize, usize)> {
    let md = |u: usize, v: usize| g.neighbors(v).iter().all(|&w| d[u][w] <= d[u][v]);
    (0..g.order())
        .tuple_combinations()
        .filter(|&(u, v)| md(u, v) && md(v, u))
        .collect()
}
