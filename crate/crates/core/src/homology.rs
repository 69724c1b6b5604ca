//! Reduced simplicial homology over GF(2) and over the integers.
//!
//! Chain groups include the empty face in degree -1, so every result is
//! reduced homology and the void complex has a single class in degree -1.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Guards, Result};
use crate::poset::{chains, is_closure_map, closure_image, ClosureDirection, Poset, PosetMap, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "GF2")]
    Gf2,
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Field::Z),
            "gf2" => Ok(Field::Gf2),
            _ => Err(Error::InvalidInput(format!("unknown field `{s}`"))),
        }
    }
}

/// Signed sparse column: `(row, coefficient)` pairs sorted by row.
type Column = Vec<(usize, i8)>;

/// Simplicial chain complex with the augmentation in degree -1.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `faces[d + 1]` holds the `d`-faces in lexicographic order.
    faces: Vec<Vec<Vec<usize>>>,
    /// `boundary[d + 1]` maps `d`-faces to `(d-1)`-faces; `boundary[0]` is
    /// empty.
    boundary: Vec<Vec<Column>>,
}

impl ChainComplex {
    /// Builds the complex from a face list closed under nonempty subsets.
    pub fn from_faces(mut all: Vec<Vec<usize>>) -> Result<Self> {
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let top = all.last().map_or(0, Vec::len);
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        faces[0].push(Vec::new());
        for f in all {
            if f.is_empty() {
                continue;
            }
            faces[f.len()].push(f);
        }
        let index: Vec<HashMap<&[usize], usize>> = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
            .collect();
        let mut boundary = vec![Vec::new()];
        for d in 1..faces.len() {
            let mut cols = Vec::with_capacity(faces[d].len());
            for f in &faces[d] {
                let mut col: Column = Vec::with_capacity(f.len());
                for i in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(i);
                    let r = *index[d - 1]
                        .get(g.as_slice())
                        .ok_or_else(|| Error::InvalidInput(format!("face {f:?} is missing the face {g:?}")))?;
                    col.push((r, if i % 2 == 0 { 1 } else { -1 }));
                }
                col.sort_unstable();
                cols.push(col);
            }
            boundary.push(cols);
        }
        let cc = ChainComplex { faces, boundary };
        if !cc.boundary_squares_to_zero() {
            return Err(Error::InvalidInput("boundary does not square to zero".into()));
        }
        Ok(cc)
    }

    pub fn from_complex(x: &SimplicialComplex, guards: &Guards) -> Result<Self> {
        let faces = x.faces(guards)?;
        Guards::check("faces", faces.len(), guards.faces)?;
        Self::from_faces(faces)
    }

    /// The order complex of `p`: faces are its nonempty chains.
    pub fn from_poset(p: &Poset, guards: &Guards) -> Result<Self> {
        let limit = guards.faces.min(guards.chains);
        Self::from_faces(chains(p, limit)?)
    }

    /// Top degree; -1 for the void complex.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 2
    }

    /// Number of faces of dimension `d >= -1`.
    pub fn rank_of(&self, d: i64) -> usize {
        usize::try_from(d + 1).ok().and_then(|i| self.faces.get(i)).map_or(0, Vec::len)
    }

    pub fn faces(&self, d: i64) -> &[Vec<usize>] {
        &self.faces[(d + 1) as usize]
    }

    /// Columns of the boundary from degree `d` to `d - 1`.
    pub fn boundary(&self, d: i64) -> &[Column] {
        usize::try_from(d + 1).ok().and_then(|i| self.boundary.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        for d in 1..self.dim() + 1 {
            let lower = self.boundary(d - 1);
            for col in self.boundary(d) {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(r, c) in col {
                    for &(r2, c2) in &lower[r] {
                        *acc.entry(r2).or_default() += (c as i64) * (c2 as i64);
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced Euler characteristic from face counts.
    pub fn reduced_euler(&self) -> i64 {
        (-1..=self.dim()).map(|d| sign(d) * self.rank_of(d) as i64).sum()
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Above this many matrix entries the GF(2) rank uses sparse column
/// reduction instead of dense bit rows.
const DENSE_GF2_ENTRIES: usize = 1 << 20;

/// GF(2) rank by Gaussian elimination on bit-packed rows.
pub fn gf2_rank_dense(rows: usize, cols: &[Column]) -> usize {
    let mut m: Vec<BitSet> = vec![BitSet::new(cols.len()); rows];
    for (j, col) in cols.iter().enumerate() {
        for &(r, c) in col {
            if c % 2 != 0 {
                m[r].insert(j);
            }
        }
    }
    let mut rank = 0;
    let mut rows_left: Vec<BitSet> = m.into_iter().filter(|r| !r.is_empty()).collect();
    while let Some(pivot_row) = rows_left.pop() {
        let Some(p) = pivot_row.first() else { continue };
        rank += 1;
        for r in rows_left.iter_mut() {
            if r.contains(p) {
                for (a, b) in r.blocks_mut().iter_mut().zip(pivot_row.blocks()) {
                    *a ^= b;
                }
            }
        }
        rows_left.retain(|r| !r.is_empty());
    }
    rank
}

/// GF(2) rank by sparse column reduction on lowest pivots.
pub fn gf2_rank_sparse(cols: &[Column]) -> usize {
    let mut owner: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<usize> = col.iter().filter(|&&(_, v)| v % 2 != 0).map(|&(r, _)| r).collect();
        while let Some(&low) = c.last() {
            match owner.get(&low) {
                Some(p) => c = sym_diff(&c, p),
                None => {
                    owner.insert(low, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn gf2_rank(rows: usize, cols: &[Column]) -> usize {
    if rows.saturating_mul(cols.len()) <= DENSE_GF2_ENTRIES {
        gf2_rank_dense(rows, cols)
    } else {
        gf2_rank_sparse(cols)
    }
}

/// Rank and invariant factors (those greater than 1) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerReduction {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

type IntColumn = Vec<(usize, i128)>;

/// `c + k * p` for sorted sparse columns, dropping zeros.
fn axpy(c: &[(usize, i128)], k: i128, p: &[(usize, i128)]) -> Result<IntColumn> {
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < p.len() {
        let take_c = j == p.len() || (i < c.len() && c[i].0 < p[j].0);
        let take_p = i == c.len() || (j < p.len() && p[j].0 < c[i].0);
        if take_c {
            out.push(c[i]);
            i += 1;
        } else if take_p {
            out.push((p[j].0, k.checked_mul(p[j].1).ok_or(Error::Overflow)?));
            j += 1;
        } else {
            let v = k.checked_mul(p[j].1).and_then(|x| x.checked_add(c[i].1)).ok_or(Error::Overflow)?;
            if v != 0 {
                out.push((c[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Column reduction keeping only pivots with unit lowest entry. Columns
/// whose lowest entry is not a unit are set aside, then cleared of every
/// pivot row; since the pivot block is unitriangular, what is left is a
/// Schur complement with the same nontrivial invariant factors, and it goes
/// to a dense Smith reduction.
pub fn integer_reduction(rows: usize, cols: &[Column], guards: &Guards) -> Result<IntegerReduction> {
    let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
    let mut pivots: Vec<IntColumn> = Vec::new();
    let mut stuck: Vec<IntColumn> = Vec::new();
    for col in cols {
        let mut c: IntColumn = col.iter().filter(|&&(_, v)| v != 0).map(|&(r, v)| (r, v as i128)).collect();
        while let Some(&(low, v)) = c.last() {
            let Some(&p) = pivot_of_row.get(&low) else { break };
            let u = pivots[p].last().expect("pivot columns are nonempty").1;
            c = axpy(&c, -(v * u), &pivots[p])?;
        }
        match c.last() {
            None => {}
            Some(&(low, v)) if v.abs() == 1 => {
                pivot_of_row.insert(low, pivots.len());
                pivots.push(c);
            }
            Some(_) => stuck.push(c),
        }
    }
    let mut residual = Vec::new();
    for mut c in stuck {
        while let Some(&(r, v)) = c.iter().rev().find(|(r, _)| pivot_of_row.contains_key(r)) {
            let p = &pivots[pivot_of_row[&r]];
            let u = p.last().expect("pivot columns are nonempty").1;
            c = axpy(&c, -(v * u), p)?;
        }
        if !c.is_empty() {
            residual.push(c);
        }
    }
    let nnz: usize = residual.iter().map(Vec::len).sum();
    Guards::check("snf nonzeros", nnz, guards.snf_nonzeros)?;
    let mut live: Vec<usize> = residual.iter().flatten().map(|&(r, _)| r).collect();
    live.sort_unstable();
    live.dedup();
    debug_assert!(live.last().is_none_or(|&r| r < rows));
    let rpos: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![0i128; residual.len()]; live.len()];
    for (j, c) in residual.iter().enumerate() {
        for &(r, v) in c {
            dense[rpos[&r]][j] = v;
        }
    }
    let diag = smith_diagonal(dense)?;
    let rank = pivots.len() + diag.len();
    let torsion = invariant_factors(diag)?.into_iter().filter(|&d| d > 1).collect();
    Ok(IntegerReduction { rank, torsion })
}

/// Nonzero diagonal entries of a diagonal form of `m`.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / p;
                    let (top, rest) = m.split_at_mut(i);
                    for (x, &y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        let d = q.checked_mul(y).ok_or(Error::Overflow)?;
                        *x = x.checked_sub(d).ok_or(Error::Overflow)?;
                    }
                    if m[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / p;
                    for row in m.iter_mut().skip(t) {
                        let d = q.checked_mul(row[t]).ok_or(Error::Overflow)?;
                        row[j] = row[j].checked_sub(d).ok_or(Error::Overflow)?;
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut bi = t;
            let mut bj = t;
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Normalizes a diagonal so each entry divides the next.
pub fn invariant_factors(mut d: Vec<i128>) -> Result<Vec<u64>> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(d[i], d[j]);
            let l = (d[i] / g).checked_mul(d[j]).ok_or(Error::Overflow)?;
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().map(|x| u64::try_from(x).map_err(|_| Error::Overflow)).collect()
}

/// Reduced homology in degrees `-1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub dim: i64,
    /// Reduced Betti numbers for degrees `0..=dim`.
    pub betti: Vec<usize>,
    /// Torsion coefficients for degrees `0..=dim`; empty over GF(2).
    pub torsion: Vec<Vec<u64>>,
    pub field: Field,
    /// Reduced Betti number in degree -1: 1 for the void complex.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub betti_minus_one: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl HomologyResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn betti_at(&self, d: i64) -> usize {
        match d {
            -1 => self.betti_minus_one,
            d if d >= 0 => self.betti.get(d as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn torsion_at(&self, d: i64) -> &[u64] {
        if d < 0 {
            return &[];
        }
        self.torsion.get(d as usize).map_or(&[], Vec::as_slice)
    }

    /// Single free class in degree `n` and nothing else.
    pub fn is_sphere(&self, n: i64) -> bool {
        (-1..=self.dim.max(n)).all(|d| self.betti_at(d) == usize::from(d == n) && self.torsion_at(d).is_empty())
    }

    pub fn is_acyclic(&self) -> bool {
        (-1..=self.dim).all(|d| self.betti_at(d) == 0 && self.torsion_at(d).is_empty())
    }

    /// Same groups in every degree, ignoring the recorded dimension.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        let top = self.dim.max(other.dim);
        (-1..=top).all(|d| self.betti_at(d) == other.betti_at(d) && self.torsion_at(d) == other.torsion_at(d))
    }

    /// Reduced Euler characteristic as an alternating sum of Betti numbers.
    pub fn reduced_euler(&self) -> i64 {
        (-1..=self.dim).map(|d| sign(d) * self.betti_at(d) as i64).sum()
    }
}

pub fn homology(c: &ChainComplex, field: Field, guards: &Guards) -> Result<HomologyResult> {
    let dim = c.dim();
    // ranks[d + 1] = rank of the boundary out of degree d.
    let mut ranks = vec![0usize; (dim + 3) as usize];
    let mut torsion_of = vec![Vec::new(); (dim + 3) as usize];
    for d in 0..=dim {
        let rows = c.rank_of(d - 1);
        let cols = c.boundary(d);
        let i = (d + 1) as usize;
        match field {
            Field::Gf2 => ranks[i] = gf2_rank(rows, cols),
            Field::Z => {
                let r = integer_reduction(rows, cols, guards)?;
                ranks[i] = r.rank;
                torsion_of[i] = r.torsion;
            }
        }
    }
    let reduced = |d: i64| -> usize {
        let i = (d + 1) as usize;
        c.rank_of(d) - ranks[i] - ranks[i + 1]
    };
    Ok(HomologyResult {
        dim,
        betti: (0..=dim).map(reduced).collect(),
        // Torsion of H_d comes from the boundary out of degree d + 1.
        torsion: (0..=dim).map(|d| torsion_of[(d + 2) as usize].clone()).collect(),
        field,
        betti_minus_one: reduced(-1),
    })
}

pub fn complex_homology(x: &SimplicialComplex, field: Field, guards: &Guards) -> Result<HomologyResult> {
    homology(&ChainComplex::from_complex(x, guards)?, field, guards)
}

/// Homology of the order complex of `p`.
pub fn poset_homology(p: &Poset, field: Field, guards: &Guards) -> Result<HomologyResult> {
    homology(&ChainComplex::from_poset(p, guards)?, field, guards)
}

/// Universal coefficients: the GF(2) Betti number in degree `d` is the
/// integral one plus the number of even torsion coefficients in degrees
/// `d` and `d - 1`.
pub fn uct_consistent(z: &HomologyResult, f2: &HomologyResult) -> bool {
    let even = |d: i64| z.torsion_at(d).iter().filter(|&&t| t % 2 == 0).count();
    let top = z.dim.max(f2.dim);
    (-1..=top).all(|d| f2.betti_at(d) == z.betti_at(d) + even(d) + even(d - 1))
}

/// Homological connectivity: the largest `c` with vanishing reduced
/// homology in all degrees up to `c`. This says nothing about homotopy
/// groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Connectivity {
    Degree(i64),
    Acyclic,
}

pub fn homology_connectivity(h: &HomologyResult) -> Connectivity {
    for d in -1..=h.dim {
        if h.betti_at(d) != 0 || !h.torsion_at(d).is_empty() {
            return Connectivity::Degree(d - 1);
        }
    }
    Connectivity::Acyclic
}

/// `B` looks like the suspension of `A`: `B_{i+1} = A_i` for `i >= -1`
/// and `B_{-1} = 0`.
pub fn suspension_check(a: &HomologyResult, b: &HomologyResult) -> bool {
    let top = a.dim.max(b.dim - 1);
    b.betti_at(-1) == 0
        && (-1..=top).all(|i| b.betti_at(i + 1) == a.betti_at(i) && b.torsion_at(i + 1) == a.torsion_at(i))
}

/// The image of a closure (or co-closure) map, which has the homotopy
/// type of `p`.
pub fn closure_reduce(p: &Poset, c: &PosetMap) -> Result<(Poset, Vec<usize>)> {
    let up = is_closure_map(c, p, ClosureDirection::Up)?;
    let down = is_closure_map(c, p, ClosureDirection::Down)?;
    if !up && !down {
        return Err(Error::NotClosureMap);
    }
    closure_image(c, p)
}

/// Standard 9-vertex triangulation of the Klein bottle.
pub fn klein_bottle() -> SimplicialComplex {
    // 3x3 grid with the top edge glued to the bottom and the left edge
    // glued to the right with a flip.
    let v = |i: usize, j: usize| -> usize {
        let (i, j) = (i % 3, j);
        if j == 3 {
            // Right edge identified with the left edge, flipped.
            ((3 - i) % 3) * 3
        } else {
            i * 3 + j
        }
    };
    let mut facets = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let a = v(i, j);
            let b = v(i + 1, j);
            let c = v(i, j + 1);
            let d = v(i + 1, j + 1);
            facets.push(vec![a, b, d]);
            facets.push(vec![a, c, d]);
        }
    }
    for f in facets.iter_mut() {
        f.sort_unstable();
    }
    SimplicialComplex::new(9, facets).expect("valid facets")
}

/// Boundary of the tetrahedron.
pub fn sphere2() -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(3)
}

/// Cone over a triangle boundary: contractible.
pub fn cone() -> SimplicialComplex {
    SimplicialComplex::new(4, vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).expect("valid facets")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Guards {
        Guards::default()
    }

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn edge_boundary() {
        let c = ChainComplex::from_complex(&cx(2, &[&[0, 1]]), &g()).unwrap();
        assert_eq!(c.boundary(1), &[vec![(0, -1), (1, 1)]]);
        let h = homology(&c, Field::Z, &g()).unwrap();
        assert!(h.is_acyclic());
    }

    #[test]
    fn circle_and_spheres() {
        let gd = g();
        let tri = cx(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        for f in [Field::Z, Field::Gf2] {
            assert!(complex_homology(&tri, f, &gd).unwrap().is_sphere(1));
        }
        let s2 = SimplicialComplex::simplex_boundary(3);
        let h = complex_homology(&s2, Field::Z, &gd).unwrap();
        assert!(h.is_sphere(2));
        assert_eq!(homology_connectivity(&h), Connectivity::Degree(1));
        let two = cx(2, &[&[0], &[1]]);
        let h0 = complex_homology(&two, Field::Z, &gd).unwrap();
        assert!(h0.is_sphere(0));
        assert_eq!(homology_connectivity(&h0), Connectivity::Degree(-1));
        let cone = cx(3, &[&[0, 1, 2]]);
        assert_eq!(homology_connectivity(&complex_homology(&cone, Field::Z, &gd).unwrap()), Connectivity::Acyclic);
        assert_eq!(homology_connectivity(&complex_homology(&super::cone(), Field::Z, &gd).unwrap()), Connectivity::Acyclic);
        assert!(complex_homology(&sphere2(), Field::Gf2, &gd).unwrap().is_sphere(2));
    }

    #[test]
    fn void_complex() {
        let h = complex_homology(&SimplicialComplex::void(), Field::Z, &g()).unwrap();
        assert_eq!((h.dim, h.betti_minus_one), (-1, 1));
        assert!(h.is_sphere(-1));
        assert_eq!(homology_connectivity(&h), Connectivity::Degree(-2));
    }

    #[test]
    fn klein_bottle_torsion() {
        let gd = g();
        let kb = klein_bottle();
        assert_eq!(kb.euler_characteristic(&gd).unwrap(), 0);
        let z = complex_homology(&kb, Field::Z, &gd).unwrap();
        assert_eq!(z.betti, vec![0, 1, 0]);
        assert_eq!(z.torsion, vec![vec![], vec![2], vec![]]);
        let f2 = complex_homology(&kb, Field::Gf2, &gd).unwrap();
        assert_eq!(f2.betti, vec![0, 2, 1]);
        assert!(uct_consistent(&z, &f2));
    }

    #[test]
    fn dense_and_sparse_gf2_agree() {
        let c = ChainComplex::from_complex(&klein_bottle(), &g()).unwrap();
        for d in 0..=2 {
            let cols = c.boundary(d);
            assert_eq!(gf2_rank_dense(c.rank_of(d - 1), cols), gf2_rank_sparse(cols));
        }
    }

    #[test]
    fn smith_small() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]).unwrap().len(), 2);
        assert_eq!(invariant_factors(vec![6, 4]).unwrap(), vec![2, 12]);
        let r = integer_reduction(2, &[vec![(0, 2)], vec![(1, 3)]], &g()).unwrap();
        assert_eq!(r, IntegerReduction { rank: 2, torsion: vec![6] });
    }

    #[test]
    fn suspension() {
        let gd = g();
        let s0 = complex_homology(&cx(2, &[&[0], &[1]]), Field::Z, &gd).unwrap();
        let s1 = complex_homology(&cx(3, &[&[0, 1], &[1, 2], &[0, 2]]), Field::Z, &gd).unwrap();
        assert!(suspension_check(&s0, &s1));
        assert!(!suspension_check(&s1, &s1));
    }

    #[test]
    fn json_shape() {
        let h = complex_homology(&klein_bottle(), Field::Z, &g()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&h.to_json()).unwrap();
        assert_eq!(v["field"], "Z");
        assert_eq!(v["torsion"][1][0], 2);
        assert_eq!(HomologyResult::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn closure_reduce_identity() {
        let p = Poset::chain(3);
        let (img, elems) = closure_reduce(&p, &PosetMap::identity(3)).unwrap();
        assert_eq!((img.len(), elems), (3, vec![0, 1, 2]));
        let bad = PosetMap { image: vec![1, 0, 2], codomain: 3 };
        assert!(closure_reduce(&p, &bad).is_err());
    }
}
