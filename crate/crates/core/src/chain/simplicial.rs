use std::collections::BTreeSet;

use super::matrix::IntMatrix;
use super::{ChainComplex, ChainError, Result};

/// A finite simplicial complex given by its maximal simplices.
///
/// Simplices are sorted vertex lists; orientation follows vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    maximal: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, maximal: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(maximal.len());
        for mut s in maximal {
            if s.is_empty() {
                return Err(ChainError::MalformedSimplex("empty simplex".into()));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ChainError::MalformedSimplex(format!("repeated vertex in {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(ChainError::MalformedSimplex(format!(
                    "vertex {v} out of range for {vertex_count} vertices"
                )));
            }
            out.push(s);
        }
        Ok(SimplicialComplex { vertex_count, maximal: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// The full simplex on `n + 1` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex { vertex_count: n + 1, maximal: vec![(0..=n).collect()] }
    }

    /// Boundary of the `n`-simplex, a triangulated `(n-1)`-sphere (`n >= 1`).
    pub fn simplex_boundary(n: usize) -> Self {
        let maximal = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex { vertex_count: n + 1, maximal }
    }

    pub fn point() -> Self {
        Self::simplex(0)
    }

    /// All simplices grouped by dimension, each group sorted. Every vertex
    /// counts as a 0-simplex, whether or not a maximal simplex uses it.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let top = self.maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top + 1];
        for v in 0..self.vertex_count {
            by_dim[0].insert(vec![v]);
        }
        for s in &self.maximal {
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim.into_iter().map(|set| set.into_iter().collect()).collect()
    }
}

/// Join: vertices of `l` are renumbered after those of `k`, and every pair of
/// maximal simplices spans one maximal simplex of the join.
pub fn simplicial_join(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let shift = k.vertex_count;
    let vertex_count = k.vertex_count + l.vertex_count;
    if k.maximal.is_empty() || l.maximal.is_empty() {
        let shifted = l.maximal.iter().map(|s| s.iter().map(|v| v + shift).collect());
        let maximal = k.maximal.iter().cloned().chain(shifted).collect();
        return SimplicialComplex { vertex_count, maximal };
    }
    let mut maximal = Vec::with_capacity(k.maximal.len() * l.maximal.len());
    for s in &k.maximal {
        for t in &l.maximal {
            maximal.push(s.iter().copied().chain(t.iter().map(|v| v + shift)).collect());
        }
    }
    SimplicialComplex { vertex_count, maximal }
}

/// Simplicial chain complex with `d[v0..vk] = sum (-1)^i [v0..^vi..vk]`.
pub fn from_simplicial(k: &SimplicialComplex) -> Result<ChainComplex> {
    let faces = k.faces();
    let ranks: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut boundaries = vec![];
    for dim in 1..faces.len() {
        let lower = &faces[dim - 1];
        let mut m = IntMatrix::zeros(lower.len(), faces[dim].len());
        for (col, s) in faces[dim].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = lower.binary_search(&face).expect("faces are closed under subsets");
                m.set(row, col, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

#[cfg(test)]
mod tests {
    use super::super::{homology, HomologyGroup};
    use super::*;

    fn z(n: usize) -> HomologyGroup {
        HomologyGroup::free(n)
    }

    #[test]
    fn point_join_point_is_edge() {
        let e = simplicial_join(&SimplicialComplex::point(), &SimplicialComplex::point());
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.maximal(), &[vec![0, 1]]);
    }

    #[test]
    fn triangle_boundary() {
        let c = from_simplicial(&SimplicialComplex::simplex_boundary(2)).unwrap();
        assert_eq!(c.ranks(), &[3, 3]);
        assert_eq!(homology(&c).unwrap().groups, vec![z(1), z(1)]);
    }

    #[test]
    fn single_vertex_and_full_triangle() {
        let c = from_simplicial(&SimplicialComplex::point()).unwrap();
        assert_eq!(c.ranks(), &[1]);
        assert_eq!(homology(&c).unwrap().groups, vec![z(1)]);
        let c = from_simplicial(&SimplicialComplex::simplex(2)).unwrap();
        assert_eq!(homology(&c).unwrap().groups, vec![z(1), z(0), z(0)]);
    }

    #[test]
    fn circle_join_circle() {
        let s1 = SimplicialComplex::simplex_boundary(2);
        let j = simplicial_join(&s1, &s1);
        assert_eq!(j.vertex_count(), 6);
        assert_eq!(j.maximal().len(), 9);
        assert!(j.maximal().iter().all(|s| s.len() == 4));
        let c = from_simplicial(&j).unwrap();
        assert_eq!(c.ranks(), &[6, 15, 18, 9]);
        assert_eq!(homology(&c).unwrap().groups, vec![z(1), z(0), z(0), z(1)]);
    }

    #[test]
    fn isolated_vertices_count() {
        let k = SimplicialComplex::new(3, vec![vec![0, 1]]).unwrap();
        let c = from_simplicial(&k).unwrap();
        assert_eq!(homology(&c).unwrap().groups, vec![z(2), z(0)]);
    }

    #[test]
    fn malformed() {
        assert!(matches!(SimplicialComplex::new(2, vec![vec![]]), Err(ChainError::MalformedSimplex(_))));
        assert!(matches!(SimplicialComplex::new(2, vec![vec![0, 0]]), Err(ChainError::MalformedSimplex(_))));
        assert!(matches!(SimplicialComplex::new(2, vec![vec![0, 2]]), Err(ChainError::MalformedSimplex(_))));
        // unsorted input is accepted and sorted
        assert_eq!(SimplicialComplex::new(3, vec![vec![2, 0]]).unwrap().maximal(), &[vec![0, 2]]);
    }

    #[test]
    fn sphere_boundaries_of_simplices() {
        for n in 1..=4 {
            let h = homology(&from_simplicial(&SimplicialComplex::simplex_boundary(n)).unwrap()).unwrap();
            let mut expected = vec![HomologyGroup::default(); n];
            expected[0] = z(1);
            expected[n - 1] = z(1);
            if n == 1 {
                expected[0] = z(2);
            }
            assert_eq!(h.groups, expected, "n = {n}");
        }
    }
}
