mod common;

use common::floyd_warshall;
use mdim::generators::{build_ccc, build_cube_unit, build_cycle, build_lcg};
use mdim::{apsp, Family, Graph};

fn assert_matches_fw(g: &Graph) {
    let fw = floyd_warshall(g);
    let d = apsp(g).unwrap();
    for u in 0..g.order() {
        assert_eq!(d.row(u), fw[u].as_slice(), "row {u}");
    }
}

#[test]
fn bfs_agrees_with_floyd_warshall_on_families() {
    assert_matches_fw(&build_cube_unit());
    assert_matches_fw(&build_cycle(7).unwrap());
    assert_matches_fw(&build_ccc(2).unwrap());
    assert_matches_fw(&build_lcg(3, 2).unwrap());
    assert_matches_fw(&build_lcg(4, 3).unwrap());
}

/// Lengths of all simple paths from `u` to `target`.
fn simple_path_lengths(g: &Graph, u: usize, target: usize, seen: &mut Vec<bool>, len: u32, out: &mut Vec<u32>) {
    if u == target {
        out.push(len);
        return;
    }
    seen[u] = true;
    for &v in g.neighbors(u) {
        if !seen[v] {
            simple_path_lengths(g, v, target, seen, len + 1, out);
        }
    }
    seen[u] = false;
}

#[test]
fn cube_corner_distance_by_path_enumeration() {
    let g = build_cube_unit();
    let mut lengths = Vec::new();
    simple_path_lengths(&g, 0, 6, &mut vec![false; 8], 0, &mut lengths);
    let shortest = *lengths.iter().min().unwrap();
    assert_eq!(shortest, 3);
    assert_eq!(apsp(&g).unwrap().get(0, 6), shortest);
}

#[test]
fn lcg_3_2_layer_one_eccentricity_by_floyd_warshall() {
    // a layer-1 vertex reaches the far side of another branch's triangle in 3 hops
    let fw = floyd_warshall(&build_lcg(3, 2).unwrap());
    for row in fw.iter().take(3) {
        assert_eq!(*row.iter().max().unwrap(), 3);
    }
}

#[test]
fn order_closed_forms() {
    for n in 1..=3 {
        let f = Family::Ccc { n };
        let expected = 8 + 64 * (2..=n).map(|k| 7usize.pow(k as u32 - 2)).sum::<usize>();
        assert_eq!(f.build().unwrap().order(), expected);
    }
    for (n, k) in [(3usize, 2usize), (4, 3), (5, 3), (6, 2)] {
        let f = Family::Lcg { n, k };
        let expected = n + (2..=k).map(|p| n * n * (n - 1).pow(p as u32 - 2)).sum::<usize>();
        assert_eq!(f.build().unwrap().order(), expected);
    }
}

#[test]
fn edge_count_closed_forms() {
    // units times unit edges plus one connector per non-root unit
    for n in 2..=3 {
        let cubes = 1 + 8 * (2..=n).map(|k| 7usize.pow(k as u32 - 2)).sum::<usize>();
        assert_eq!(build_ccc(n).unwrap().edge_count(), 12 * cubes + cubes - 1);
    }
    for (n, k) in [(3usize, 2usize), (4, 3), (5, 2)] {
        let cycles = 1 + (2..=k).map(|p| n * (n - 1).pow(p as u32 - 2)).sum::<usize>();
        assert_eq!(build_lcg(n, k).unwrap().edge_count(), n * cycles + cycles - 1);
    }
}
