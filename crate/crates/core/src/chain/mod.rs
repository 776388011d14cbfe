//! Integer chain complexes and their homology.
//!
//! Complexes are finite, nonnegatively graded and free; `boundary(k)` maps
//! degree `k` to degree `k - 1` and has shape `rank(k - 1) x rank(k)`.
//! Every constructor checks `d o d = 0`, and every chain map is checked to
//! commute with the boundaries.

mod io;
mod matrix;
mod simplicial;
mod snf;

use std::fmt;

use thiserror::Error;

pub use io::{ComplexFile, InputFile, SimplicialFile};
pub use matrix::IntMatrix;
pub use simplicial::{from_simplicial, simplicial_join, SimplicialComplex};
pub use snf::{smith_normal_form, SmithNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("integer overflow")]
    Overflow,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary squared is nonzero at degree {degree}")]
    BoundarySquare { degree: usize },
    #[error("not a chain map: square fails to commute at degree {degree}")]
    NotChainMap { degree: usize },
    #[error("maps do not share a source complex")]
    SourceMismatch,
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),
    #[error("invalid complex file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, ChainError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[k - 1]` is the boundary out of degree `k`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(ChainError::Shape("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(ChainError::Shape(format!(
                "{} ranks need {} boundaries, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let k = i + 1;
            if b.shape() != (ranks[k - 1], ranks[k]) {
                return Err(ChainError::Shape(format!(
                    "boundary {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    ranks[k - 1],
                    ranks[k]
                )));
            }
        }
        for k in 2..ranks.len() {
            if !boundaries[k - 2].mul(&boundaries[k - 1])?.is_zero() {
                return Err(ChainError::BoundarySquare { degree: k });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// One 0-cell.
    pub fn point() -> Self {
        ChainComplex { ranks: vec![1], boundaries: vec![] }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank in any degree; zero outside the stored range.
    pub fn rank(&self, k: isize) -> usize {
        if k < 0 {
            0
        } else {
            self.ranks.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// The boundary out of degree `k`, zero when `k` is outside `1..=top`.
    pub fn boundary(&self, k: isize) -> IntMatrix {
        if k >= 1 && (k as usize) <= self.boundaries.len() {
            self.boundaries[k as usize - 1].clone()
        } else {
            IntMatrix::zeros(self.rank(k - 1), self.rank(k))
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// Re-checks `d o d = 0` on the stored boundaries.
    pub fn boundary_squares_vanish(&self) -> Result<bool> {
        for k in 2..self.ranks.len() {
            if !self.boundaries[k - 2].mul(&self.boundaries[k - 1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Pads with zero-rank degrees up to `top`.
    fn extended_to(&self, top: usize) -> ChainComplex {
        let mut ranks = self.ranks.clone();
        let mut boundaries = self.boundaries.clone();
        while ranks.len() <= top {
            let k = ranks.len();
            ranks.push(0);
            boundaries.push(IntMatrix::zeros(ranks[k - 1], 0));
        }
        ChainComplex { ranks, boundaries }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let top = self.top_degree().max(other.top_degree());
        let (x, y) = (self.extended_to(top), other.extended_to(top));
        let ranks: Vec<usize> = (0..=top).map(|k| x.ranks[k] + y.ranks[k]).collect();
        let boundaries = (1..=top)
            .map(|k| {
                let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
                m.paste(0, 0, &x.boundaries[k - 1]);
                m.paste(x.ranks[k - 1], x.ranks[k], &y.boundaries[k - 1]);
                m
            })
            .collect();
        ChainComplex { ranks, boundaries }
    }
}

/// The cellular complex of the circle: one 0-cell, one 1-cell, zero boundary.
pub fn circle_complex() -> ChainComplex {
    ChainComplex { ranks: vec![1, 1], boundaries: vec![IntMatrix::zeros(1, 1)] }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// `components[k]` has shape `target.rank(k) x source.rank(k)`.
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// Components are given for degrees `0..=source.top_degree()`.
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        if components.len() != source.ranks.len() {
            return Err(ChainError::Shape(format!(
                "expected {} components, got {}",
                source.ranks.len(),
                components.len()
            )));
        }
        for (k, c) in components.iter().enumerate() {
            let want = (target.rank(k as isize), source.rank(k as isize));
            if c.shape() != want {
                return Err(ChainError::Shape(format!("component {k} is {:?}, expected {:?}", c.shape(), want)));
            }
        }
        let map = ChainMap { source, target, components };
        for k in 1..=map.source.top_degree() + 1 {
            let k = k as isize;
            let lhs = map.target.boundary(k).mul(&map.component(k))?;
            let rhs = map.component(k - 1).mul(&map.source.boundary(k))?;
            if lhs != rhs {
                return Err(ChainError::NotChainMap { degree: k as usize });
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let components = c.ranks.iter().map(|&r| IntMatrix::identity(r)).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        let components =
            (0..source.ranks.len()).map(|k| IntMatrix::zeros(target.rank(k as isize), source.ranks[k])).collect();
        ChainMap { source: source.clone(), target: target.clone(), components }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Component in degree `k`, zero outside the source range.
    pub fn component(&self, k: isize) -> IntMatrix {
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            IntMatrix::zeros(self.target.rank(k), self.source.rank(k))
        }
    }

    /// Applies the map to a chain given by its coefficient vector in degree `k`.
    pub fn apply(&self, k: usize, chain: &[i64]) -> Result<Vec<i64>> {
        let col = IntMatrix::from_rows(&chain.iter().map(|&x| vec![x]).collect::<Vec<_>>(), 1)?;
        Ok(self.component(k as isize).mul(&col)?.to_rows().into_iter().map(|r| r[0]).collect())
    }
}

/// Cells of a product in a fixed degree, in lexicographic order of
/// `(degree of first factor, first cell, second cell)`.
struct ProductBasis {
    /// `(i, sigma, tau)` per degree.
    cells: Vec<Vec<(usize, usize, usize)>>,
}

impl ProductBasis {
    fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        let top = c.top_degree() + d.top_degree();
        let cells = (0..=top)
            .map(|n| {
                let mut v = vec![];
                for i in 0..=n.min(c.top_degree()) {
                    let j = n - i;
                    if j > d.top_degree() {
                        continue;
                    }
                    for s in 0..c.ranks[i] {
                        for t in 0..d.ranks[j] {
                            v.push((i, s, t));
                        }
                    }
                }
                v
            })
            .collect();
        ProductBasis { cells }
    }

    fn index(&self, n: usize, cell: (usize, usize, usize)) -> usize {
        // Cells are few; the lists are sorted, so binary search works.
        self.cells[n].binary_search(&cell).expect("cell present in product basis")
    }
}

/// Cellular product with the Leibniz boundary
/// `d(s x t) = ds x t + (-1)^{deg s} s x dt`, plus the two projection maps.
pub fn product_complex(c: &ChainComplex, d: &ChainComplex) -> Result<(ChainComplex, ChainMap, ChainMap)> {
    let basis = ProductBasis::new(c, d);
    let ranks: Vec<usize> = basis.cells.iter().map(Vec::len).collect();
    let mut boundaries = vec![];
    for n in 1..ranks.len() {
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (col, &(i, s, t)) in basis.cells[n].iter().enumerate() {
            let j = n - i;
            if i >= 1 {
                let bc = c.boundary(i as isize);
                for s2 in 0..bc.rows() {
                    let coef = bc.get(s2, s);
                    if coef != 0 {
                        let row = basis.index(n - 1, (i - 1, s2, t));
                        m.set(row, col, matrix::ck_add(m.get(row, col), coef)?);
                    }
                }
            }
            if j >= 1 {
                let bd = d.boundary(j as isize);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for t2 in 0..bd.rows() {
                    let coef = bd.get(t2, t);
                    if coef != 0 {
                        let row = basis.index(n - 1, (i, s, t2));
                        m.set(row, col, matrix::ck_add(m.get(row, col), sign * coef)?);
                    }
                }
            }
        }
        boundaries.push(m);
    }
    let product = ChainComplex::new(ranks.clone(), boundaries)?;

    let first = (0..ranks.len())
        .map(|n| {
            let mut m = IntMatrix::zeros(c.rank(n as isize), ranks[n]);
            for (col, &(i, s, _)) in basis.cells[n].iter().enumerate() {
                if i == n {
                    m.set(s, col, 1);
                }
            }
            m
        })
        .collect();
    let second = (0..ranks.len())
        .map(|n| {
            let mut m = IntMatrix::zeros(d.rank(n as isize), ranks[n]);
            for (col, &(i, _, t)) in basis.cells[n].iter().enumerate() {
                if i == 0 {
                    m.set(t, col, 1);
                }
            }
            m
        })
        .collect();
    let p1 = ChainMap::new(product.clone(), c.clone(), first)?;
    let p2 = ChainMap::new(product.clone(), d.clone(), second)?;
    Ok((product, p1, p2))
}

/// Algebraic mapping cone: degree `n` is `C_{n-1} + D_n` with
/// `d(x, y) = (-dx, phi x + dy)`.
pub fn mapping_cone(phi: &ChainMap) -> Result<ChainComplex> {
    let (c, d) = (phi.source(), phi.target());
    let top = (c.top_degree() + 1).max(d.top_degree());
    let rank = |n: isize| c.rank(n - 1) + d.rank(n);
    let ranks: Vec<usize> = (0..=top as isize).map(rank).collect();
    let mut boundaries = vec![];
    for n in 1..=top as isize {
        let mut m = IntMatrix::zeros(rank(n - 1), rank(n));
        let c_rows = c.rank(n - 2);
        let c_cols = c.rank(n - 1);
        m.paste(0, 0, &c.boundary(n - 1).neg()?);
        m.paste(c_rows, 0, &phi.component(n - 1));
        m.paste(c_rows, c_cols, &d.boundary(n));
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

/// Chain model of the double mapping cylinder of `f: C -> D1` and
/// `g: C -> D2`: the cone of `x -> (f x, -g x)` into `D1 + D2`.
pub fn double_cylinder_complex(f: &ChainMap, g: &ChainMap) -> Result<ChainComplex> {
    if f.source() != g.source() {
        return Err(ChainError::SourceMismatch);
    }
    let target = f.target().direct_sum(g.target());
    let components = (0..f.source().ranks.len())
        .map(|k| {
            let k = k as isize;
            let (fk, gk) = (f.component(k), g.component(k));
            let mut m = IntMatrix::zeros(target.rank(k), f.source().rank(k));
            m.paste(0, 0, &fk);
            m.paste(fk.rows(), 0, &gk.neg()?);
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let combined = ChainMap::new(f.source().clone(), target, components)?;
    mapping_cone(&combined)
}

/// The torus `S^1 x S^1` with its two coordinate projections.
pub fn torus_with_projections() -> Result<(ChainComplex, ChainMap, ChainMap)> {
    product_complex(&circle_complex(), &circle_complex())
}

/// `S^3` as the double cylinder of the torus projections onto both circles.
pub fn s3_double_cylinder() -> Result<ChainComplex> {
    let (_, p1, p2) = torus_with_projections()?;
    double_cylinder_complex(&p1, &p2)
}

/// `S^3` as the simplicial join of two triangle boundaries.
pub fn s3_join() -> Result<ChainComplex> {
    let s1 = SimplicialComplex::simplex_boundary(2);
    from_simplicial(&simplicial_join(&s1, &s1))
}

/// One homology group: `Z^betti` plus cyclic torsion summands.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn degree(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Trailing zero groups removed, so results of different top degrees compare.
    pub fn trimmed(&self) -> HomologyResult {
        let mut groups = self.groups.clone();
        while groups.last().is_some_and(HomologyGroup::is_zero) {
            groups.pop();
        }
        HomologyResult { groups }
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Same homology as a point.
    pub fn is_point_like(&self) -> bool {
        self.degree(0) == HomologyGroup::free(1) && self.groups.iter().skip(1).all(HomologyGroup::is_zero)
    }

    /// Reduced homology vanishes: acyclic, or point-like.
    pub fn reduced_is_zero(&self) -> bool {
        self.is_acyclic() || self.is_point_like()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().enumerate().map(|(k, g)| format!("H{k}={g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `H_k = ker d_k / im d_{k+1}` for every degree, from Smith normal forms.
pub fn homology(c: &ChainComplex) -> Result<HomologyResult> {
    if !c.boundary_squares_vanish()? {
        return Err(ChainError::BoundarySquare { degree: 0 });
    }
    let top = c.top_degree();
    // snfs[k] is the form of the boundary out of degree k, for k in 0..=top+1.
    let snfs: Vec<SmithNormalForm> =
        (0..=top + 1).map(|k| smith_normal_form(&c.boundary(k as isize))).collect::<Result<_>>()?;
    let groups = (0..=top)
        .map(|k| HomologyGroup {
            betti: c.ranks[k] - snfs[k].rank - snfs[k + 1].rank,
            torsion: snfs[k + 1].invariant_factors.iter().copied().filter(|&d| d > 1).collect(),
        })
        .collect();
    Ok(HomologyResult { groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> HomologyGroup {
        HomologyGroup::free(n)
    }

    fn zero() -> HomologyGroup {
        HomologyGroup::default()
    }

    fn torus() -> (ChainComplex, ChainMap, ChainMap) {
        product_complex(&circle_complex(), &circle_complex()).unwrap()
    }

    #[test]
    fn circle() {
        let s1 = circle_complex();
        assert_eq!(s1.ranks(), &[1, 1]);
        assert!(s1.boundary(1).is_zero());
        assert!(s1.boundary_squares_vanish().unwrap());
        assert_eq!(homology(&s1).unwrap().groups, vec![z(1), z(1)]);
    }

    #[test]
    fn torus_cells_and_homology() {
        let (t, p1, _) = torus();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        assert_eq!(homology(&t).unwrap().groups, vec![z(1), z(2), z(1)]);
        assert_eq!(p1.apply(2, &[1]).unwrap(), Vec::<i64>::new());
        assert_eq!(p1.component(2).shape(), (0, 1));
        // the two 1-cells are (e x v) and (v x e); the first projection keeps only e x v
        assert_eq!(p1.apply(1, &[1, 0]).unwrap(), vec![0]);
        assert_eq!(p1.apply(1, &[0, 1]).unwrap(), vec![1]);
    }

    #[test]
    fn product_leibniz_signs() {
        // interval x interval: the square, contractible
        let interval =
            ChainComplex::new(vec![2, 1], vec![IntMatrix::from_rows(&[vec![-1], vec![1]], 1).unwrap()]).unwrap();
        let (sq, _, _) = product_complex(&interval, &interval).unwrap();
        assert_eq!(sq.ranks(), &[4, 4, 1]);
        assert!(homology(&sq).unwrap().is_point_like());
        let (cube, _, _) = product_complex(&sq, &interval).unwrap();
        assert_eq!(cube.ranks(), &[8, 12, 6, 1]);
        assert!(homology(&cube).unwrap().is_point_like());
    }

    #[test]
    fn projection_requires_augmented_factor() {
        // A 1-cell with boundary 2v: the projection off it is not a chain map.
        let bad = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[vec![2]], 1).unwrap()]).unwrap();
        assert!(matches!(product_complex(&circle_complex(), &bad), Err(ChainError::NotChainMap { .. })));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let cone = mapping_cone(&ChainMap::identity(&circle_complex())).unwrap();
        assert!(homology(&cone).unwrap().is_acyclic());
        let (t, _, _) = torus();
        assert!(homology(&mapping_cone(&ChainMap::identity(&t)).unwrap()).unwrap().is_acyclic());
    }

    #[test]
    fn cone_of_zero_map_to_point() {
        let phi = ChainMap::zero(&circle_complex(), &ChainComplex::point());
        let cone = mapping_cone(&phi).unwrap();
        assert_eq!(cone.ranks(), &[1, 1, 1]);
        let h = homology(&cone).unwrap();
        assert_eq!(h.degree(0), z(1));
        assert_eq!(h.degree(2), z(1));
        // the degree-0 cell of the circle survives as a 1-cycle
        assert_eq!(h.degree(1), z(1));
    }

    #[test]
    fn cone_of_collapse_to_point_is_reduced_sphere() {
        // the cellular map S^1 -> pt sends the vertex to the point
        let collapse = ChainMap::new(
            circle_complex(),
            ChainComplex::point(),
            vec![IntMatrix::from_rows(&[vec![1]], 1).unwrap(), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        let h = homology(&mapping_cone(&collapse).unwrap()).unwrap();
        assert_eq!(h.groups, vec![zero(), zero(), z(1)]);
    }

    #[test]
    fn double_cylinder_examples() {
        let s1 = circle_complex();
        let id = ChainMap::identity(&s1);
        let h = homology(&double_cylinder_complex(&id, &id).unwrap()).unwrap();
        assert_eq!(h.trimmed().groups, vec![z(1), z(1)]);

        let (_, p1, p2) = torus();
        let s3 = double_cylinder_complex(&p1, &p2).unwrap();
        assert_eq!(s3.ranks(), &[2, 3, 2, 1]);
        assert_eq!(homology(&s3).unwrap().groups, vec![z(1), zero(), zero(), z(1)]);

        let pt = ChainComplex::point();
        let idp = ChainMap::identity(&pt);
        assert!(homology(&double_cylinder_complex(&idp, &idp).unwrap()).unwrap().is_point_like());
    }

    #[test]
    fn double_cylinder_source_mismatch() {
        let a = ChainMap::identity(&circle_complex());
        let b = ChainMap::identity(&ChainComplex::point());
        assert_eq!(double_cylinder_complex(&a, &b), Err(ChainError::SourceMismatch));
    }

    #[test]
    fn torsion_example() {
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[vec![2]], 1).unwrap()]).unwrap();
        let h = homology(&c).unwrap();
        assert_eq!(h.groups, vec![HomologyGroup { betti: 0, torsion: vec![2] }, zero()]);
        assert_eq!(h.to_string(), "H0=Z/2, H1=0");
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(ChainComplex::new(vec![], vec![]), Err(ChainError::Shape(_))));
        assert!(matches!(ChainComplex::new(vec![1, 1], vec![IntMatrix::zeros(2, 1)]), Err(ChainError::Shape(_))));
        // d1 d2 != 0
        let d1 = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        assert_eq!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]), Err(ChainError::BoundarySquare { degree: 2 }));
        // a component that does not commute
        let bad = ChainMap::new(
            circle_complex(),
            ChainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[vec![2]], 1).unwrap()]).unwrap(),
            vec![IntMatrix::zeros(1, 1), IntMatrix::identity(1)],
        );
        assert_eq!(bad, Err(ChainError::NotChainMap { degree: 1 }));
    }

    #[test]
    fn direct_sum_pads_degrees() {
        let s = circle_complex().direct_sum(&ChainComplex::point());
        assert_eq!(s.ranks(), &[2, 1]);
        assert_eq!(homology(&s).unwrap().groups, vec![z(2), z(1)]);
    }

    #[test]
    fn display_groups() {
        assert_eq!(HomologyGroup { betti: 2, torsion: vec![2, 4] }.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(zero().to_string(), "0");
    }
}
