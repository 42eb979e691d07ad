//! Distance representations and the three resolving-set predicates.
//!
//! Every predicate works from a precomputed [`DistanceMatrix`]. Interval
//! membership is decided by distance additivity: `x` lies on a shortest
//! `u`-`v` path iff `d(u, x) + d(x, v) = d(u, v)`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Distinct vertex ids in a fixed order.
///
/// The order matters for [`representation`], whose coordinates follow it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedVertexSet {
    members: Vec<usize>,
}

impl OrderedVertexSet {
    /// Checks that members are distinct and below `order`.
    pub fn new(members: Vec<usize>, order: usize) -> Result<Self> {
        let mut seen = vec![false; order];
        for &m in &members {
            if m >= order {
                return Err(Error::domain(format!("vertex {m} out of range for order {order}")));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::domain(format!("vertex {m} listed twice")));
            }
        }
        Ok(OrderedVertexSet { members })
    }

    /// Caller guarantees distinct in-range ids.
    pub(crate) fn from_trusted(members: Vec<usize>) -> Self {
        OrderedVertexSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    /// Members in ascending id order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }

    pub fn is_subset_of(&self, other: &OrderedVertexSet) -> bool {
        let theirs: HashSet<usize> = other.members.iter().copied().collect();
        self.members.iter().all(|m| theirs.contains(m))
    }

    /// Comma-separated ids, in member order.
    pub fn to_csv(&self) -> String {
        self.members
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::ops::Index<usize> for OrderedVertexSet {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.members[i]
    }
}

fn check_members(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<()> {
    match set.members.iter().find(|&&m| m >= d.order()) {
        Some(m) => Err(Error::domain(format!("vertex {m} out of range for order {}", d.order()))),
        None => Ok(()),
    }
}

fn check_vertex(d: &DistanceMatrix, u: usize) -> Result<()> {
    if u < d.order() {
        Ok(())
    } else {
        Err(Error::domain(format!("vertex {u} out of range for order {}", d.order())))
    }
}

/// `(d(u, r_1), ..., d(u, r_m))`.
pub fn representation(d: &DistanceMatrix, u: usize, set: &OrderedVertexSet) -> Result<Vec<u32>> {
    if set.is_empty() {
        return Err(Error::domain("representation with respect to an empty set"));
    }
    check_vertex(d, u)?;
    check_members(d, set)?;
    let row = d.row(u);
    Ok(set.members.iter().map(|&r| row[r]).collect())
}

/// True iff all vertices have pairwise distinct representations.
pub fn is_resolving(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::domain("a resolving set must be nonempty"));
    }
    check_members(d, set)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(d.order());
    for u in 0..d.order() {
        let row = d.row(u);
        if !seen.insert(set.members.iter().map(|&r| row[r]).collect()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `d(u, x) - d(u, y) != d(v, x) - d(v, y)`.
pub fn doubly_resolves(d: &DistanceMatrix, x: usize, y: usize, u: usize, v: usize) -> Result<bool> {
    for w in [x, y, u, v] {
        check_vertex(d, w)?;
    }
    if x == y || u == v {
        return Err(Error::domain("doubly_resolves needs x != y and u != v"));
    }
    let diff = |a: usize| i64::from(d.get(a, x)) - i64::from(d.get(a, y));
    Ok(diff(u) != diff(v))
}

fn check_doubly_input(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<()> {
    if set.len() < 2 {
        return Err(Error::domain(format!(
            "a doubly resolving set needs at least two vertices, got {}",
            set.len()
        )));
    }
    check_members(d, set)
}

/// True iff `r(u|Z) - r(v|Z)` is never a constant vector for `u != v`.
pub fn is_doubly_resolving(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<bool> {
    check_doubly_input(d, set)?;
    let z = &set.members;
    let n = d.order();
    for u in 0..n {
        let ru = d.row(u);
        for v in u + 1..n {
            let rv = d.row(v);
            let delta = |i: usize| i64::from(ru[z[i]]) - i64::from(rv[z[i]]);
            let first = delta(0);
            if (1..z.len()).all(|i| delta(i) == first) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Same predicate as [`is_doubly_resolving`], phrased as "every pair
/// `u, v` is doubly resolved by some pair `x, y` of members".
pub fn is_doubly_resolving_by_pairs(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<bool> {
    check_doubly_input(d, set)?;
    let z = &set.members;
    let n = d.order();
    for u in 0..n {
        for v in u + 1..n {
            let mut resolved = false;
            'outer: for (i, &x) in z.iter().enumerate() {
                for &y in &z[i + 1..] {
                    if doubly_resolves(d, x, y, u, v)? {
                        resolved = true;
                        break 'outer;
                    }
                }
            }
            if !resolved {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `v` lies on a shortest `u`-`w` path or `u` on a shortest `v`-`w` path.
pub fn strongly_resolves(d: &DistanceMatrix, w: usize, u: usize, v: usize) -> Result<bool> {
    for x in [w, u, v] {
        check_vertex(d, x)?;
    }
    if u == v {
        return Err(Error::domain("strongly_resolves needs u != v"));
    }
    Ok(strongly_resolves_unchecked(d, w, u, v))
}

#[inline]
pub(crate) fn strongly_resolves_unchecked(d: &DistanceMatrix, w: usize, u: usize, v: usize) -> bool {
    let (uw, vw, uv) = (d.get(u, w), d.get(v, w), d.get(u, v));
    uw == uv + vw || vw == uv + uw
}

pub fn is_strong_resolving(d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::domain("a strong resolving set must be nonempty"));
    }
    check_members(d, set)?;
    let n = d.order();
    for u in 0..n {
        for v in u + 1..n {
            if !set.members.iter().any(|&w| strongly_resolves_unchecked(d, w, u, v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The strong resolving graph: same vertices, edges between mutually
/// maximally distant pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmdGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl MmdGraph {
    /// Edges are normalised to `(min, max)`, sorted and deduplicated.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= order || v >= order || u == v {
                return Err(Error::domain(format!("invalid edge ({u}, {v}) for order {order}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(MmdGraph { order, edges: list })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == u || b == u).count()
    }
}

/// `u` is maximally distant from `v`: no neighbour of `u` is farther from `v`.
pub fn is_maximally_distant(g: &Graph, d: &DistanceMatrix, u: usize, v: usize) -> bool {
    let duv = d.get(v, u);
    g.neighbors(u).iter().all(|&w| d.get(v, w) <= duv)
}

pub fn mmd_pairs(g: &Graph, d: &DistanceMatrix) -> MmdGraph {
    let n = g.order();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| is_maximally_distant(g, d, u, v) && is_maximally_distant(g, d, v, u))
        .collect();
    MmdGraph { order: n, edges }
}

/// Partition of the vertices into twin classes, where `u ~ v` iff
/// `N(u) \ {v} = N(v) \ {u}`. Classes are sorted and listed by smallest member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    // Twins share either their open or their closed neighbourhood.
    let n = g.order();
    let mut open: HashMap<&[usize], Vec<usize>> = HashMap::new();
    let mut closed: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for u in 0..n {
        open.entry(g.neighbors(u)).or_default().push(u);
        let mut c = g.neighbors(u).to_vec();
        let pos = c.binary_search(&u).unwrap_err();
        c.insert(pos, u);
        closed.entry(c).or_default().push(u);
    }

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for group in open.values().chain(closed.values()) {
        for &v in &group[1..] {
            let (a, b) = (find(&mut parent, group[0]), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for u in 0..n {
        let root = find(&mut parent, u);
        if index_of_root[root] == usize::MAX {
            index_of_root[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[index_of_root[root]].push(u);
    }
    classes
}

/// `sum over twin classes of (|class| - 1)`, a lower bound for any resolving set.
pub fn twin_lower_bound(classes: &[Vec<usize>]) -> usize {
    classes.iter().map(|c| c.len() - 1).sum()
}
