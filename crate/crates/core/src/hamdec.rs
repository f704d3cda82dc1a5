//! Hamiltonian decompositions of digraphs.
//!
//! A digraph splits into vertex-disjoint directed cycles covering all vertices
//! iff there is a permutation `π` with an arc `i -> π(i)` for every `i`, i.e.
//! iff the bipartite graph (out-copies, in-copies) has a perfect matching.
//! Matching is done with Hopcroft–Karp; cycles are the cycles of `π`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Vertex-disjoint directed cycles covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeDefect {
    InDegreeZero,
    OutDegreeZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(HamiltonianDecomposition),
    /// No decomposition. `witness` names the first vertex with no outgoing or
    /// incoming arc, when there is one.
    No {
        witness: Option<(usize, DegreeDefect)>,
    },
}

/// Maximum matching between out-roles (left) and in-roles (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `mate[i] = Some(j)` pairs the out-role of `i` with the in-role of `j`.
    pub mate: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.mate.len()
    }
}

/// Out-neighbour lists in compressed form, each list sorted ascending.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    fn new(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0; n + 1];
        for &(i, _) in arcs {
            offsets[i + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; arcs.len()];
        for &(i, j) in arcs {
            targets[fill[i]] = j;
            fill[i] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Self { offsets, targets }
    }

    #[inline]
    fn neighbours(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

const UNREACHED: usize = usize::MAX;

/// Hopcroft–Karp. Neighbours and free vertices are scanned in index order,
/// so the matching found is a deterministic function of the arc set.
pub fn max_bipartite_matching(n: usize, arcs: &[(usize, usize)]) -> Matching {
    let adj = Csr::new(n, arcs);
    let mut mate_left: Vec<Option<usize>> = vec![None; n];
    let mut mate_right: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![UNREACHED; n];
    let mut cursor = vec![0usize; n];
    let mut size = 0;
    let mut queue = Vec::with_capacity(n);

    loop {
        // layered BFS from free left vertices
        queue.clear();
        for u in 0..n {
            if mate_left[u].is_none() {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = UNREACHED;
            }
        }
        let mut found_free = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in adj.neighbours(u) {
                match mate_right[v] {
                    None => found_free = true,
                    Some(w) if dist[w] == UNREACHED => {
                        dist[w] = dist[u] + 1;
                        queue.push(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found_free {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        let mut augmented = false;
        for root in 0..n {
            if mate_left[root].is_none()
                && augment(
                    root,
                    &adj,
                    &mut dist,
                    &mut cursor,
                    &mut mate_left,
                    &mut mate_right,
                )
            {
                size += 1;
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    Matching {
        mate: mate_left,
        size,
    }
}

/// Iterative layered DFS from `root`; flips the path on success.
fn augment(
    root: usize,
    adj: &Csr,
    dist: &mut [usize],
    cursor: &mut [usize],
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
) -> bool {
    let mut stack = vec![root];
    let mut via: Vec<usize> = Vec::new();
    while let Some(&u) = stack.last() {
        let nbrs = adj.neighbours(u);
        if cursor[u] == nbrs.len() {
            dist[u] = UNREACHED;
            stack.pop();
            via.pop();
            continue;
        }
        let v = nbrs[cursor[u]];
        cursor[u] += 1;
        match mate_right[v] {
            None => {
                via.push(v);
                for (&l, &r) in stack.iter().zip(&via) {
                    mate_left[l] = Some(r);
                    mate_right[r] = Some(l);
                }
                return true;
            }
            Some(w) if dist[w] != UNREACHED && dist[w] == dist[u] + 1 => {
                via.push(v);
                stack.push(w);
            }
            Some(_) => {}
        }
    }
    false
}

/// First vertex (by index) with out-degree or in-degree zero.
pub fn degree_witness(d: &DirectedGraph) -> Option<(usize, DegreeDefect)> {
    let outd = d.out_degrees();
    let ind = d.in_degrees();
    (0..d.n()).find_map(|v| {
        if outd[v] == 0 {
            Some((v, DegreeDefect::OutDegreeZero))
        } else if ind[v] == 0 {
            Some((v, DegreeDefect::InDegreeZero))
        } else {
            None
        }
    })
}

pub fn decide(d: &DirectedGraph) -> Decision {
    if let Some(w) = degree_witness(d) {
        return Decision::No { witness: Some(w) };
    }
    let m = max_bipartite_matching(d.n(), d.arcs());
    if !m.is_perfect() {
        return Decision::No { witness: None };
    }
    let succ: Vec<usize> = m
        .mate
        .iter()
        .map(|v| v.expect("perfect matching"))
        .collect();
    let mut seen = vec![false; d.n()];
    let mut cycles = Vec::new();
    for start in 0..d.n() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            v = succ[v];
        }
        cycles.push(cycle);
    }
    Decision::Yes(HamiltonianDecomposition { cycles })
}

/// A decomposition when one exists.
pub fn has_hamiltonian_decomposition(d: &DirectedGraph) -> Option<HamiltonianDecomposition> {
    match decide(d) {
        Decision::Yes(hd) => Some(hd),
        Decision::No { .. } => None,
    }
}

/// Checks disjointness, coverage, and that every cycle step is an arc.
pub fn validate_decomposition(d: &DirectedGraph, hd: &HamiltonianDecomposition) -> bool {
    let mut covered = vec![false; d.n()];
    for cycle in &hd.cycles {
        if cycle.is_empty() {
            return false;
        }
        for (k, &v) in cycle.iter().enumerate() {
            if v >= d.n() || covered[v] {
                return false;
            }
            covered[v] = true;
            let next = cycle[(k + 1) % cycle.len()];
            if !d.has_arc(v, next) {
                return false;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Exhaustive search for a permutation `π` with `i -> π(i)` an arc for all `i`.
pub fn brute_force_hd(d: &DirectedGraph) -> Result<bool> {
    let n = d.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::NTooLargeForOracle {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut adj = vec![[false; BRUTE_FORCE_MAX_N]; n];
    for &(i, j) in d.arcs() {
        adj[i][j] = true;
    }
    fn extend(i: usize, n: usize, adj: &[[bool; BRUTE_FORCE_MAX_N]], used: &mut [bool]) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if adj[i][j] && !used[j] {
                used[j] = true;
                if extend(i + 1, n, adj, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    Ok(extend(0, n, &adj, &mut vec![false; n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directify_edges;

    fn four_node_example() -> DirectedGraph {
        directify_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    }

    #[test]
    fn four_node_example_decomposes() {
        let d = four_node_example();
        let hd = has_hamiltonian_decomposition(&d).expect("decomposes");
        assert!(validate_decomposition(&d, &hd));
        assert!(brute_force_hd(&d).unwrap());
        // the 4-cycle 0 -> 1 -> 2 -> 3 -> 0 is one valid answer
        let four_cycle = HamiltonianDecomposition {
            cycles: vec![vec![0, 1, 2, 3]],
        };
        assert!(validate_decomposition(&d, &four_cycle));
    }

    #[test]
    fn single_vertex_without_loop() {
        let d = DirectedGraph::new(1, []).unwrap();
        assert_eq!(
            decide(&d),
            Decision::No {
                witness: Some((0, DegreeDefect::OutDegreeZero))
            }
        );
        assert!(!brute_force_hd(&d).unwrap());
        let looped = DirectedGraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(
            has_hamiltonian_decomposition(&looped),
            Some(HamiltonianDecomposition {
                cycles: vec![vec![0]]
            })
        );
    }

    #[test]
    fn k2_is_a_two_cycle() {
        let d = directify_edges(2, &[(0, 1)]);
        assert_eq!(
            has_hamiltonian_decomposition(&d),
            Some(HamiltonianDecomposition {
                cycles: vec![vec![0, 1]]
            })
        );
    }

    #[test]
    fn matching_examples() {
        let k3 = directify_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(max_bipartite_matching(3, k3.arcs()).size, 3);

        let star = directify_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let m = max_bipartite_matching(4, star.arcs());
        assert_eq!(m.size, 2);
        assert!(!brute_force_hd(&star).unwrap());
        assert_eq!(decide(&star), Decision::No { witness: None });

        assert_eq!(max_bipartite_matching(2, &[]).size, 0);
    }

    #[test]
    fn directed_path_has_in_degree_witness() {
        let d = DirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!brute_force_hd(&d).unwrap());
        // vertex 2 has no outgoing arc, but vertex 0 comes first and has no incoming arc
        assert_eq!(
            decide(&d),
            Decision::No {
                witness: Some((0, DegreeDefect::InDegreeZero))
            }
        );
    }

    #[test]
    fn five_cycle() {
        let d = directify_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert!(brute_force_hd(&d).unwrap());
        let hd = has_hamiltonian_decomposition(&d).unwrap();
        assert!(validate_decomposition(&d, &hd));
    }

    #[test]
    fn validator_rejects_bad_decompositions() {
        let d = four_node_example();
        let bad = [
            vec![vec![0, 1], vec![1, 2, 3]], // overlap
            vec![vec![0, 1]],                // missing vertices
            vec![vec![1, 3], vec![0, 2]],    // 1-3 is not an arc
            vec![vec![0], vec![1, 2, 3]],    // no loop at 0
        ];
        for cycles in bad {
            assert!(!validate_decomposition(
                &d,
                &HamiltonianDecomposition { cycles }
            ));
        }
    }

    #[test]
    fn oracle_size_guard() {
        let d = DirectedGraph::new(10, []).unwrap();
        assert_eq!(
            brute_force_hd(&d),
            Err(Error::NTooLargeForOracle { n: 10, max: 9 })
        );
    }

    #[test]
    fn long_augmenting_paths_do_not_overflow() {
        // a directed cycle on 200k vertices
        let n = 200_000;
        let d = DirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let hd = has_hamiltonian_decomposition(&d).unwrap();
        assert_eq!(hd.cycles.len(), 1);
    }
}
