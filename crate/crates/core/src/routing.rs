//! Realizing layer permutations on constrained qubit topologies.
//!
//! All-to-all devices relabel for free. Lines and rings use an odd–even
//! transposition sorting network (at most `n` swap layers). Grids use the
//! three-phase column / row / column scheme: a regular bipartite matching
//! decomposition picks an intermediate row for every qubit so that each
//! phase is a set of independent sorts along rows or columns, giving at
//! most `2h + w` swap layers on a `w × h` grid.
//!
//! Grid positions are numbered in boustrophedon order (row 0 left to right,
//! row 1 right to left, …) so consecutive positions are always neighbours
//! and the default adjacent pairing stays executable without extra SWAPs.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::circuit::Circuit;
use crate::permutation;
use crate::sim::{Operation, Program};
use crate::{Error, Result};

/// Topology family as selected by the user, independent of the width.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TopologyKind {
    #[default]
    AllToAll,
    Line,
    Ring,
    /// `cols × rows`; `None` picks the most square factorization per width.
    Grid(Option<(usize, usize)>),
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(alloc::format!("unknown topology `{s}`"));
        match s {
            "all2all" | "all-to-all" => Ok(TopologyKind::AllToAll),
            "line" => Ok(TopologyKind::Line),
            "ring" => Ok(TopologyKind::Ring),
            "grid" => Ok(TopologyKind::Grid(None)),
            _ => {
                let dims = s.strip_prefix("grid:").ok_or_else(bad)?;
                let (w, h) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
                let w: usize = w.trim().parse().map_err(|_| bad())?;
                let h: usize = h.trim().parse().map_err(|_| bad())?;
                if w == 0 || h == 0 {
                    return Err(bad());
                }
                Ok(TopologyKind::Grid(Some((w, h))))
            }
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyKind::AllToAll => f.write_str("all2all"),
            TopologyKind::Line => f.write_str("line"),
            TopologyKind::Ring => f.write_str("ring"),
            TopologyKind::Grid(None) => f.write_str("grid"),
            TopologyKind::Grid(Some((w, h))) => write!(f, "grid:{w}x{h}"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for TopologyKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for TopologyKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let text = alloc::string::String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    AllToAll,
    Line,
    Ring,
    Grid { cols: usize, rows: usize },
}

/// A concrete device connectivity over `size` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Topology {
    shape: Shape,
    size: usize,
}

impl Topology {
    pub fn all_to_all(size: usize) -> Self {
        Topology { shape: Shape::AllToAll, size }
    }

    pub fn line(size: usize) -> Self {
        Topology { shape: Shape::Line, size }
    }

    pub fn ring(size: usize) -> Self {
        Topology { shape: Shape::Ring, size }
    }

    pub fn grid(cols: usize, rows: usize) -> Self {
        Topology { shape: Shape::Grid { cols, rows }, size: cols * rows }
    }

    /// Resolves `kind` at width `size`.
    pub fn new(kind: TopologyKind, size: usize) -> Result<Self> {
        Ok(match kind {
            TopologyKind::AllToAll => Self::all_to_all(size),
            TopologyKind::Line => Self::line(size),
            TopologyKind::Ring => Self::ring(size),
            TopologyKind::Grid(Some((w, h))) => {
                if w * h != size {
                    return Err(Error::Unsupported(alloc::format!(
                        "grid {w}x{h} has {} positions, circuit width is {size}",
                        w * h
                    )));
                }
                Self::grid(w, h)
            }
            TopologyKind::Grid(None) => {
                let rows = (1..=size).take_while(|r| r * r <= size).filter(|r| size % r == 0).last();
                let rows = rows.unwrap_or(1);
                Self::grid(size / rows, rows)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> TopologyKind {
        match self.shape {
            Shape::AllToAll => TopologyKind::AllToAll,
            Shape::Line => TopologyKind::Line,
            Shape::Ring => TopologyKind::Ring,
            Shape::Grid { cols, rows } => TopologyKind::Grid(Some((cols, rows))),
        }
    }

    pub fn is_all_to_all(&self) -> bool {
        self.shape == Shape::AllToAll
    }

    /// `(row, col)` of a position in boustrophedon order.
    fn grid_coord(cols: usize, p: usize) -> (usize, usize) {
        let (r, c) = (p / cols, p % cols);
        if r % 2 == 0 {
            (r, c)
        } else {
            (r, cols - 1 - c)
        }
    }

    fn grid_position(cols: usize, r: usize, c: usize) -> usize {
        if r % 2 == 0 {
            r * cols + c
        } else {
            r * cols + (cols - 1 - c)
        }
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.size || b >= self.size {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match self.shape {
            Shape::AllToAll => true,
            Shape::Line => hi - lo == 1,
            Shape::Ring => hi - lo == 1 || (lo == 0 && hi == self.size - 1),
            Shape::Grid { cols, .. } => {
                let (ra, ca) = Self::grid_coord(cols, a);
                let (rb, cb) = Self::grid_coord(cols, b);
                ra.abs_diff(rb) + ca.abs_diff(cb) == 1
            }
        }
    }
}

/// SWAP layers followed by a free relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutedLayer {
    /// Each inner list holds disjoint adjacent pairs executed in parallel.
    pub swap_layers: Vec<Vec<(usize, usize)>>,
    /// After the SWAPs, the qubit at position `p` is treated as position
    /// `relabeling[p]`.
    pub relabeling: Vec<usize>,
}

impl RoutedLayer {
    /// The permutation realized by the SWAPs and the relabeling, in the
    /// destination-table convention of [`crate::permutation`].
    pub fn realized_permutation(&self) -> Vec<usize> {
        let n = self.relabeling.len();
        let mut occupant: Vec<usize> = permutation::identity(n);
        for layer in &self.swap_layers {
            for &(a, b) in layer {
                occupant.swap(a, b);
            }
        }
        let mut realized = alloc::vec![0; n];
        for (pos, &token) in occupant.iter().enumerate() {
            realized[token] = self.relabeling[pos];
        }
        realized
    }

    pub fn swap_count(&self) -> usize {
        self.swap_layers.iter().map(Vec::len).sum()
    }
}

/// Odd–even transposition sort run in lock-step on several disjoint paths.
/// `occupant[pos]` is the token at `pos`; tokens move until `key(token)` is
/// non-decreasing along every path.
fn parallel_odd_even(
    paths: &[Vec<usize>],
    occupant: &mut [usize],
    key: impl Fn(usize) -> usize,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let longest = paths.iter().map(Vec::len).max().unwrap_or(0);
    let sorted = |occupant: &[usize]| {
        paths
            .iter()
            .all(|p| p.windows(2).all(|w| key(occupant[w[0]]) <= key(occupant[w[1]])))
    };
    for round in 0..longest {
        if sorted(occupant) {
            break;
        }
        let mut layer = Vec::new();
        for path in paths {
            let mut j = round % 2;
            while j + 1 < path.len() {
                let (a, b) = (path[j], path[j + 1]);
                if key(occupant[a]) > key(occupant[b]) {
                    occupant.swap(a, b);
                    layer.push((a, b));
                }
                j += 2;
            }
        }
        if !layer.is_empty() {
            out.push(layer);
        }
    }
    debug_assert!(sorted(occupant));
}

/// Kuhn augmenting-path perfect matching on a regular bipartite multigraph
/// given by edge multiplicities.
fn perfect_matching(multiplicity: &[Vec<usize>]) -> Vec<usize> {
    let n = multiplicity.len();
    let mut match_right: Vec<Option<usize>> = alloc::vec![None; n];

    fn augment(
        left: usize,
        multiplicity: &[Vec<usize>],
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for right in 0..multiplicity.len() {
            if multiplicity[left][right] == 0 || visited[right] {
                continue;
            }
            visited[right] = true;
            let free = match match_right[right] {
                None => true,
                Some(other) => augment(other, multiplicity, visited, match_right),
            };
            if free {
                match_right[right] = Some(left);
                return true;
            }
        }
        false
    }

    for left in 0..n {
        let mut visited = alloc::vec![false; n];
        let found = augment(left, multiplicity, &mut visited, &mut match_right);
        debug_assert!(found, "regular bipartite multigraph without perfect matching");
    }
    let mut match_left = alloc::vec![0; n];
    for (right, left) in match_right.iter().enumerate() {
        if let Some(left) = left {
            match_left[*left] = right;
        }
    }
    match_left
}

fn route_grid(perm: &[usize], cols: usize, rows: usize) -> Vec<Vec<(usize, usize)>> {
    let coord = |p: usize| Topology::grid_coord(cols, p);
    let pos = |r: usize, c: usize| Topology::grid_position(cols, r, c);

    // intermediate row per token: a decomposition of the source-column →
    // destination-column multigraph into `rows` perfect matchings
    let mut multiplicity = alloc::vec![alloc::vec![0usize; cols]; cols];
    for (token, &dest) in perm.iter().enumerate() {
        multiplicity[coord(token).1][coord(dest).1] += 1;
    }
    let mut via_row = alloc::vec![usize::MAX; perm.len()];
    for row in 0..rows {
        let matching = perfect_matching(&multiplicity);
        for (src_col, &dst_col) in matching.iter().enumerate() {
            multiplicity[src_col][dst_col] -= 1;
            let token = (0..rows)
                .map(|r| pos(r, src_col))
                .find(|&t| via_row[t] == usize::MAX && coord(perm[t]).1 == dst_col)
                .expect("matching edge without a token");
            via_row[token] = row;
        }
    }

    let columns: Vec<Vec<usize>> = (0..cols).map(|c| (0..rows).map(|r| pos(r, c)).collect()).collect();
    let row_paths: Vec<Vec<usize>> = (0..rows).map(|r| (0..cols).map(|c| pos(r, c)).collect()).collect();

    let mut occupant = permutation::identity(perm.len());
    let mut layers = Vec::new();
    parallel_odd_even(&columns, &mut occupant, |t| via_row[t], &mut layers);
    parallel_odd_even(&row_paths, &mut occupant, |t| coord(perm[t]).1, &mut layers);
    parallel_odd_even(&columns, &mut occupant, |t| coord(perm[t]).0, &mut layers);
    layers
}

pub fn route_permutation(perm: &[usize], topology: &Topology) -> Result<RoutedLayer> {
    let n = topology.size;
    if perm.len() != n {
        return Err(Error::Domain(alloc::format!(
            "permutation of length {} on a topology of size {n}",
            perm.len()
        )));
    }
    if !permutation::is_bijection(perm) {
        return Err(Error::Invariant("permutation is not a bijection".to_string()));
    }
    if permutation::is_identity(perm) {
        return Ok(RoutedLayer { swap_layers: Vec::new(), relabeling: permutation::identity(n) });
    }
    let swap_layers = match topology.shape {
        Shape::AllToAll => {
            return Ok(RoutedLayer { swap_layers: Vec::new(), relabeling: perm.to_vec() });
        }
        Shape::Line | Shape::Ring => {
            let mut occupant = permutation::identity(n);
            let mut layers = Vec::new();
            parallel_odd_even(&[permutation::identity(n)], &mut occupant, |t| perm[t], &mut layers);
            layers
        }
        Shape::Grid { cols, rows } => route_grid(perm, cols, rows),
    };
    Ok(RoutedLayer { swap_layers, relabeling: permutation::identity(n) })
}

/// A circuit lowered onto a topology.
#[derive(Clone, Debug, PartialEq)]
pub struct RoutedCircuit {
    pub program: Program,
    pub logical_depth: usize,
    /// Σ over layers of (swap layers + 1 gate layer).
    pub physical_depth: usize,
    pub swap_count: usize,
}

/// Lowers every layer onto `topology`, tracking the logical → physical
/// layout through relabelings. Gates must land on adjacent physical pairs.
pub fn route_circuit(circuit: &Circuit, topology: &Topology) -> Result<RoutedCircuit> {
    let n = circuit.width;
    if topology.size != n {
        return Err(Error::Domain(alloc::format!(
            "topology of size {} for a circuit of width {n}",
            topology.size
        )));
    }
    // layout[logical position] = physical qubit
    let mut layout = permutation::identity(n);
    let mut ops = Vec::new();
    let mut physical_depth = 0;
    let mut swap_count = 0;
    for (li, layer) in circuit.layers.iter().enumerate() {
        let physical_perm: Vec<usize> = {
            let mut p = alloc::vec![0; n];
            for (i, &dest) in layer.permutation.iter().enumerate() {
                p[layout[i]] = layout[dest];
            }
            p
        };
        let routed = route_permutation(&physical_perm, topology)?;
        for swaps in &routed.swap_layers {
            ops.extend(swaps.iter().map(|&(a, b)| Operation::Swap(a, b)));
        }
        swap_count += routed.swap_count();
        physical_depth += routed.swap_layers.len() + 1;
        let inverse_relabel = permutation::inverse(&routed.relabeling);
        layout = layout.iter().map(|&q| inverse_relabel[q]).collect();

        for gate in &layer.gates {
            let pair = (layout[gate.pair.0], layout[gate.pair.1]);
            if !topology.are_adjacent(pair.0, pair.1) {
                return Err(Error::Unsupported(alloc::format!(
                    "layer {li}: gate on positions {:?} maps to non-adjacent qubits {pair:?}",
                    gate.pair
                )));
            }
            ops.push(Operation::Gate { pair, unitary: gate.unitary });
        }
        ops.extend(layer.idle_positions(n).into_iter().map(|q| Operation::Idle(layout[q])));
    }
    Ok(RoutedCircuit {
        program: Program { width: n, ops, output_map: layout },
        logical_depth: circuit.depth(),
        physical_depth,
        swap_count,
    })
}

pub fn physical_depth(circuit: &Circuit, topology: &Topology) -> Result<usize> {
    Ok(route_circuit(circuit, topology)?.physical_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn check_layer(perm: &[usize], topo: &Topology) -> RoutedLayer {
        let routed = route_permutation(perm, topo).unwrap();
        assert_eq!(routed.realized_permutation(), perm);
        for layer in &routed.swap_layers {
            let mut used = vec![false; perm.len()];
            for &(a, b) in layer {
                assert!(topo.are_adjacent(a, b), "{a}-{b} not adjacent");
                assert!(!used[a] && !used[b]);
                used[a] = true;
                used[b] = true;
            }
        }
        routed
    }

    #[test]
    fn identity_needs_no_swaps() {
        for topo in [Topology::all_to_all(5), Topology::line(5), Topology::ring(5), Topology::grid(3, 2)] {
            let n = topo.size();
            let r = check_layer(&permutation::identity(n), &topo);
            assert!(r.swap_layers.is_empty());
        }
    }

    #[test]
    fn all_to_all_relabels() {
        let perm = [3, 1, 0, 2];
        let r = check_layer(&perm, &Topology::all_to_all(4));
        assert!(r.swap_layers.is_empty());
        assert_eq!(r.relabeling, perm);
    }

    #[test]
    fn reversal_on_a_line_of_four() {
        let r = check_layer(&[3, 2, 1, 0], &Topology::line(4));
        assert!(r.swap_layers.len() <= 4);
        assert_eq!(r.swap_count(), 6);
    }

    #[test]
    fn grid_routes_every_small_permutation() {
        // all 720 permutations of a 3x2 grid and a 2x3 grid
        for (w, h) in [(3, 2), (2, 3)] {
            let topo = Topology::grid(w, h);
            let mut perm: Vec<usize> = (0..6).collect();
            for_each_permutation(&mut perm, 0, &mut |p| {
                let r = check_layer(p, &topo);
                assert!(r.swap_layers.len() <= 2 * h + w);
            });
        }
    }

    fn for_each_permutation(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            for_each_permutation(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn grid_four_by_four_reversal() {
        let perm: Vec<usize> = (0..16).rev().collect();
        let r = check_layer(&perm, &Topology::grid(4, 4));
        assert!(r.swap_layers.len() <= 12);
    }

    #[test]
    fn snake_order_keeps_consecutive_positions_adjacent() {
        let topo = Topology::grid(3, 3);
        for p in 0..8 {
            assert!(topo.are_adjacent(p, p + 1));
        }
        assert!(!topo.are_adjacent(0, 4));
        assert!(topo.are_adjacent(0, 5));
    }

    #[test]
    fn ring_wraps_around() {
        let ring = Topology::ring(5);
        assert!(ring.are_adjacent(0, 4));
        assert!(!Topology::line(5).are_adjacent(0, 4));
    }

    #[test]
    fn topology_parsing() {
        assert_eq!("all2all".parse::<TopologyKind>().unwrap(), TopologyKind::AllToAll);
        assert_eq!("grid:3x2".parse::<TopologyKind>().unwrap(), TopologyKind::Grid(Some((3, 2))));
        assert_eq!("grid".parse::<TopologyKind>().unwrap(), TopologyKind::Grid(None));
        assert!("grid:0x2".parse::<TopologyKind>().is_err());
        assert!("torus".parse::<TopologyKind>().is_err());
        assert_eq!(TopologyKind::Grid(Some((3, 2))).to_string(), "grid:3x2");
    }

    #[test]
    fn auto_grid_is_near_square() {
        assert_eq!(Topology::new(TopologyKind::Grid(None), 6).unwrap(), Topology::grid(3, 2));
        assert_eq!(Topology::new(TopologyKind::Grid(None), 7).unwrap(), Topology::grid(7, 1));
        assert_eq!(Topology::new(TopologyKind::Grid(None), 16).unwrap(), Topology::grid(4, 4));
        assert!(Topology::new(TopologyKind::Grid(Some((2, 2))), 5).is_err());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(route_permutation(&[1, 0], &Topology::line(3)).is_err());
    }
}
