//! Skeleton graph of a step-graphon, its edge-incidence matrix, and the
//! odd-cycle analyses behind Condition A and the surjectivity test.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Signed;

use crate::matrix::Matrix;
use crate::model::StepGraphon;
use crate::scalar::Scalar;

/// Undirected graph on `q` nodes, self-loops allowed, no parallel edges.
///
/// Nodes are 0-indexed; edges are stored as `(i, j)` with `i <= j`, sorted
/// lexicographically, so a loop at `i` precedes every other edge at `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    q: usize,
    edges: Vec<(usize, usize)>,
}

/// Two-colouring summary of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub nodes: Vec<usize>,
    pub bipartite: bool,
}

impl SkeletonGraph {
    /// Builds a skeleton from arbitrary edges, normalizing orientation and
    /// discarding duplicates.
    pub fn new(q: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| {
                assert!(i < q && j < q, "edge ({i}, {j}) out of range for q = {q}");
                (i.min(j), i.max(j))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { q, edges }
    }

    /// Edge `(i, j)` iff block `(i, j)` of the step-graphon is non-zero.
    pub fn from_step_graphon(g: &StepGraphon) -> Self {
        let q = g.q();
        let edges = (0..q)
            .flat_map(|i| (i..q).map(move |j| (i, j)))
            .filter(|&(i, j)| g.value(i, j).is_positive());
        Self::new(q, edges)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Canonical edge list `f_1, ..., f_r`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn r(&self) -> usize {
        self.edges.len()
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.edges.binary_search(&(i, i)).is_ok()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.q];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            if i != j {
                adj[j].push(i);
            }
        }
        adj
    }

    /// Column-stochastic `q x r` incidence matrix: a loop at `i` is `e_i`, an
    /// edge `(i, j)` is `(e_i + e_j) / 2`.
    pub fn incidence_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut b = Matrix::zeros(self.q, self.r());
        let half = T::ratio(1, 2);
        for (col, &(i, j)) in self.edges.iter().enumerate() {
            if i == j {
                b[(i, col)] = T::one();
            } else {
                b[(i, col)] = half.clone();
                b[(j, col)] = half.clone();
            }
        }
        b
    }

    /// Connected components with a BFS two-colouring; a loop makes its
    /// component non-bipartite.
    pub fn components(&self) -> Vec<Component> {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.q];
        let mut out = Vec::new();
        for start in 0..self.q {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            let mut nodes = Vec::new();
            let mut bipartite = true;
            while let Some(u) = queue.pop_front() {
                nodes.push(u);
                let cu = colour[u].expect("queued nodes are coloured");
                for &v in &adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        // a loop has v == u and lands here too
                        Some(cv) if cv == cu => bipartite = false,
                        Some(_) => {}
                    }
                }
            }
            nodes.sort_unstable();
            out.push(Component { nodes, bipartite });
        }
        out
    }

    /// Condition A: some cycle of odd length exists (a loop is a 1-cycle).
    pub fn has_odd_cycle(&self) -> bool {
        self.edges.iter().any(|&(i, j)| i == j) || self.components().iter().any(|c| !c.bipartite)
    }

    /// Every connected component carries an odd cycle; equivalently the
    /// incidence matrix has full row rank `q`.
    pub fn all_components_nonbipartite(&self) -> bool {
        self.components().iter().all(|c| !c.bipartite)
    }

    pub fn bipartite_component_count(&self) -> usize {
        self.components().iter().filter(|c| c.bipartite).count()
    }
}

impl fmt::Display for SkeletonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.q, self.r())?;
        for &(i, j) in &self.edges {
            writeln!(f, "{} {}", i + 1, j + 1)?;
        }
        Ok(())
    }
}
