//! Deterministic constructors for the cube unit, cycles, `CCC(n)` and
//! `LCG(n, k)`.
//!
//! Both layered families share one shape. Layer 1 is a single unit (a cube
//! `C4 □ P2` or an `n`-cycle) whose vertices are named `1..=U`. Every later
//! layer consists of copies of the unit; position 1 of each copy is its
//! head. Layer-1 vertex `r` is joined to the head of unit `(2, r, 1)`, and
//! the non-head vertex at position `i` of unit `(p, r, s)` is joined to the
//! head of unit `(p + 1, r, (s - 1) * (U - 1) + (i - 1))`.
//!
//! Vertex ids are assigned layer-major, then by branch, unit and position.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Coordinate of a vertex in a layered family graph.
///
/// Layer-1 vertices use branch and unit 0 and store their raw name
/// (`1..=U`) in `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub layer: usize,
    pub branch: usize,
    pub unit: usize,
    pub position: usize,
}

impl VertexLabel {
    pub const fn new(layer: usize, branch: usize, unit: usize, position: usize) -> Self {
        VertexLabel {
            layer,
            branch,
            unit,
            position,
        }
    }

    pub const fn base(position: usize) -> Self {
        VertexLabel::new(1, 0, 0, position)
    }

    pub fn is_head(&self) -> bool {
        self.layer >= 2 && self.position == 1
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.layer, self.branch, self.unit, self.position)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 4 {
            return Err(Error::domain(format!("label {s:?} is not of the form p:r:s:i")));
        }
        let mut nums = [0usize; 4];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::domain(format!("label {s:?} has a non-integer field {part:?}")))?;
        }
        Ok(VertexLabel::new(nums[0], nums[1], nums[2], nums[3]))
    }
}

/// A generated graph family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Crystal cubic carbon with `n` layers; `n = 1` is the bare cube.
    Ccc { n: usize },
    /// Layer cycle graph: `k` layers of `n`-cycles.
    Lcg { n: usize, k: usize },
    /// A single cycle `C_n` (one layer, no heads).
    Cycle { n: usize },
}

const CUBE_ORDER: usize = 8;

// Largest family graph the constructors will materialise.
const MAX_ORDER: usize = 4_000_000;

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Ccc { n } if n < 1 => Err(Error::domain("CCC(n) requires n >= 1")),
            Family::Lcg { n, k } if n < 3 || k < 2 => {
                Err(Error::domain(format!("LCG(n, k) requires n >= 3 and k >= 2, got n={n}, k={k}")))
            }
            Family::Cycle { n } if n < 3 => Err(Error::domain(format!("C_n requires n >= 3, got n={n}"))),
            _ => {
                let order = self.checked_order()?;
                if order > MAX_ORDER {
                    return Err(Error::domain(format!("{self} has {order} vertices, above the limit {MAX_ORDER}")));
                }
                Ok(())
            }
        }
    }

    /// Number of vertices in one unit (and in layer 1).
    pub fn unit_size(&self) -> usize {
        match *self {
            Family::Ccc { .. } => CUBE_ORDER,
            Family::Lcg { n, .. } | Family::Cycle { n } => n,
        }
    }

    pub fn layers(&self) -> usize {
        match *self {
            Family::Ccc { n } => n,
            Family::Lcg { k, .. } => k,
            Family::Cycle { .. } => 1,
        }
    }

    /// Unit edges on positions `1..=U`, each pair `(i, j)` with `i < j`.
    pub fn unit_edges(&self) -> Vec<(usize, usize)> {
        match *self {
            Family::Ccc { .. } => cube_edges(),
            Family::Lcg { n, .. } | Family::Cycle { n } => cycle_edges(n),
        }
    }

    fn fanout(&self) -> usize {
        self.unit_size() - 1
    }

    /// Units per branch in layer `p >= 2`: `(U - 1)^(p - 2)`.
    pub fn units_per_branch(&self, p: usize) -> usize {
        debug_assert!(p >= 2);
        self.fanout().pow((p - 2) as u32)
    }

    /// Units in layer `p`; layer 1 counts as one unit.
    pub fn units_in_layer(&self, p: usize) -> usize {
        if p == 1 {
            1
        } else {
            self.unit_size() * self.units_per_branch(p)
        }
    }

    fn checked_order(&self) -> Result<usize> {
        let too_big = || Error::domain(format!("{self} is too large to construct"));
        let u = self.unit_size();
        let mut total = u;
        for p in 2..=self.layers() {
            let per_branch = self.fanout().checked_pow((p - 2) as u32).ok_or_else(too_big)?;
            let layer = per_branch.checked_mul(u * u).ok_or_else(too_big)?;
            total = total.checked_add(layer).ok_or_else(too_big)?;
        }
        Ok(total)
    }

    /// Vertex count, `U + sum_{p=2..L} U^2 (U-1)^(p-2)`.
    pub fn order(&self) -> usize {
        (1..=self.layers()).map(|p| self.layer_size(p)).sum()
    }

    pub fn layer_size(&self, p: usize) -> usize {
        self.units_in_layer(p) * self.unit_size()
    }

    /// Id of the first vertex of layer `p`.
    pub fn layer_offset(&self, p: usize) -> usize {
        (1..p).map(|q| self.layer_size(q)).sum()
    }

    pub fn id_of(&self, label: VertexLabel) -> Result<usize> {
        let u = self.unit_size();
        let bad = || Error::domain(format!("label {label} is not a vertex of {self}"));
        let VertexLabel {
            layer,
            branch,
            unit,
            position,
        } = label;
        if layer == 1 {
            if branch != 0 || unit != 0 || !(1..=u).contains(&position) {
                return Err(bad());
            }
            return Ok(position - 1);
        }
        if layer > self.layers()
            || !(1..=u).contains(&branch)
            || !(1..=self.units_per_branch(layer)).contains(&unit)
            || !(1..=u).contains(&position)
        {
            return Err(bad());
        }
        let unit_index = (branch - 1) * self.units_per_branch(layer) + (unit - 1);
        Ok(self.layer_offset(layer) + unit_index * u + (position - 1))
    }

    pub fn label_of(&self, id: usize) -> Result<VertexLabel> {
        let u = self.unit_size();
        let mut rest = id;
        for p in 1..=self.layers() {
            let size = self.layer_size(p);
            if rest < size {
                if p == 1 {
                    return Ok(VertexLabel::base(rest + 1));
                }
                let unit_index = rest / u;
                let per_branch = self.units_per_branch(p);
                return Ok(VertexLabel::new(
                    p,
                    unit_index / per_branch + 1,
                    unit_index % per_branch + 1,
                    rest % u + 1,
                ));
            }
            rest -= size;
        }
        Err(Error::domain(format!("vertex {id} out of range for {self}")))
    }

    /// Ids of one unit's vertices, ordered by position.
    pub fn unit_ids(&self, layer: usize, branch: usize, unit: usize) -> Result<Vec<usize>> {
        let first = if layer == 1 {
            self.id_of(VertexLabel::base(1))?
        } else {
            self.id_of(VertexLabel::new(layer, branch, unit, 1))?
        };
        Ok((first..first + self.unit_size()).collect())
    }

    /// Every unit of the last layer as `(branch, unit)`, in id order.
    pub fn last_layer_units(&self) -> Vec<(usize, usize)> {
        let p = self.layers();
        if p == 1 {
            return vec![(0, 0)];
        }
        let per_branch = self.units_per_branch(p);
        (1..=self.unit_size())
            .flat_map(|r| (1..=per_branch).map(move |s| (r, s)))
            .collect()
    }

    /// Vertex sets of the last-layer units, in id order.
    pub fn last_layer_unit_ids(&self) -> Vec<Vec<usize>> {
        let p = self.layers();
        self.last_layer_units()
            .into_iter()
            .map(|(r, s)| self.unit_ids(p, r, s).expect("valid unit"))
            .collect()
    }

    /// Builds the graph described by this descriptor.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let u = self.unit_size();
        let unit_edges = self.unit_edges();
        let order = self.order();
        let mut edges = Vec::with_capacity(order * 2);
        let mut labels = Vec::with_capacity(order);

        for i in 1..=u {
            labels.push(VertexLabel::base(i));
        }
        edges.extend(unit_edges.iter().map(|&(i, j)| (i - 1, j - 1)));

        for p in 2..=self.layers() {
            let offset = self.layer_offset(p);
            let per_branch = self.units_per_branch(p);
            for r in 1..=u {
                for s in 1..=per_branch {
                    let base = offset + ((r - 1) * per_branch + (s - 1)) * u;
                    labels.extend((1..=u).map(|i| VertexLabel::new(p, r, s, i)));
                    edges.extend(unit_edges.iter().map(|&(i, j)| (base + i - 1, base + j - 1)));
                    // parent of this unit's head
                    let parent = if p == 2 {
                        debug_assert_eq!(s, 1);
                        self.id_of(VertexLabel::base(r))?
                    } else {
                        let parent_unit = (s - 1) / self.fanout() + 1;
                        let parent_pos = (s - 1) % self.fanout() + 2;
                        self.id_of(VertexLabel::new(p - 1, r, parent_unit, parent_pos))?
                    };
                    edges.push((parent, base));
                }
            }
        }
        debug_assert_eq!(labels.len(), order);
        Ok(Graph::from_edges(order, edges)?.with_labels(labels, *self))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Ccc { n } => write!(f, "ccc:n={n}"),
            Family::Lcg { n, k } => write!(f, "lcg:n={n},k={k}"),
            Family::Cycle { n } => write!(f, "cycle:n={n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `ccc:n=<n>`, `lcg:n=<n>,k=<k>`, `cycle:n=<n>` or `cube`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut n = None;
        let mut k = None;
        for kv in params.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("malformed parameter {kv:?} in {s:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("parameter {key} in {s:?} is not a non-negative integer")))?;
            match key.trim() {
                "n" => n = Some(value),
                "k" => k = Some(value),
                other => return Err(Error::domain(format!("unknown parameter {other:?} in {s:?}"))),
            }
        }
        let need = |v: Option<usize>, key: &str| {
            v.ok_or_else(|| Error::domain(format!("family {s:?} is missing parameter {key}")))
        };
        let family = match name {
            "ccc" => Family::Ccc { n: need(n, "n")? },
            "lcg" => Family::Lcg {
                n: need(n, "n")?,
                k: need(k, "k")?,
            },
            "cycle" => Family::Cycle { n: need(n, "n")? },
            "cube" => Family::Ccc { n: 1 },
            other => return Err(Error::domain(format!("unknown family {other:?}"))),
        };
        family.validate()?;
        Ok(family)
    }
}

fn cube_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(12);
    for i in 1..=CUBE_ORDER {
        for j in i + 1..=CUBE_ORDER {
            let same_face = (i <= 4) == (j <= 4);
            let adjacent = if same_face {
                j - i == 1 || j - i == 3
            } else {
                j - i == 4
            };
            if adjacent {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if j - i == 1 || j - i == n - 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// The cube `C4 □ P2` on vertices named 1..=8 (ids 0..8).
pub fn build_cube_unit() -> Graph {
    Family::Ccc { n: 1 }.build().expect("the cube unit is always constructible")
}

pub fn build_cycle(n: usize) -> Result<Graph> {
    Family::Cycle { n }.build()
}

pub fn build_ccc(n: usize) -> Result<Graph> {
    Family::Ccc { n }.build()
}

pub fn build_lcg(n: usize, k: usize) -> Result<Graph> {
    Family::Lcg { n, k }.build()
}
