//! Finite posets, simplicial complexes, and the functors between them:
//! face posets, chain posets (barycentric subdivision), order complexes
//! and atom graphs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Guards, Result};
use crate::graph::Graph;

/// A finite partial order on `0..m`.
///
/// Both principal filters (`up`) and ideals (`down`) are cached as bit
/// rows; upper covers are derived from them once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    m: usize,
    covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

impl Poset {
    /// Builds a poset from its ideals; `down[x]` must contain `x` and be
    /// transitively closed.
    pub(crate) fn from_down_sets(down: Vec<BitSet>) -> Result<Self> {
        let m = down.len();
        let mut up = vec![BitSet::new(m); m];
        for (x, d) in down.iter().enumerate() {
            for y in d.iter() {
                up[y].insert(x);
            }
        }
        for x in 0..m {
            let strict = up[x].intersection(&down[x]);
            if strict.len() != 1 || !strict.contains(x) {
                return Err(Error::NotAntisymmetric(x));
            }
        }
        Ok(Self::finish(up, down))
    }

    fn finish(up: Vec<BitSet>, down: Vec<BitSet>) -> Self {
        let m = up.len();
        let mut upper_covers = vec![Vec::new(); m];
        let mut lower_covers = vec![Vec::new(); m];
        for x in 0..m {
            let mut strict = up[x].clone();
            strict.remove(x);
            let mut covers = strict.clone();
            for z in strict.iter() {
                if covers.contains(z) {
                    let mut above = up[z].clone();
                    above.remove(z);
                    covers.difference_with(&above);
                }
            }
            for y in covers.iter() {
                upper_covers[x].push(y);
                lower_covers[y].push(x);
            }
        }
        Poset {
            up,
            down,
            upper_covers,
            lower_covers,
            labels: (0..m).map(|i| i.to_string()).collect(),
        }
    }

    /// Builds the order generated by the pairs `lo <= hi`.
    pub fn from_relations(m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut down = vec![BitSet::new(m); m];
        for (x, d) in down.iter_mut().enumerate() {
            d.insert(x);
        }
        for &(lo, hi) in pairs {
            if lo >= m || hi >= m {
                return Err(Error::InvalidInput(format!("relation ({lo},{hi}) out of range")));
            }
            down[hi].insert(lo);
        }
        // Transitive closure, Warshall style over bit rows.
        for k in 0..m {
            let dk = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&dk);
                }
            }
        }
        Self::from_down_sets(down)
    }

    /// Builds a poset from an order predicate. The predicate must already be
    /// a partial order; only antisymmetry is verified.
    pub fn from_order_fn(m: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut down = vec![BitSet::new(m); m];
        for (y, d) in down.iter_mut().enumerate() {
            for x in 0..m {
                if x == y || leq(x, y) {
                    d.insert(x);
                }
            }
        }
        Self::from_down_sets(down)
    }

    pub fn chain(len: usize) -> Self {
        Poset::from_order_fn(len, |x, y| x <= y).expect("total order")
    }

    pub fn antichain(len: usize) -> Self {
        Poset::from_order_fn(len, |x, y| x == y).expect("discrete order")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidInput("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x <= y}`.
    pub fn up(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// Cover pairs `(lo, hi)` in increasing order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Minimal elements, in increasing index order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.down[x]
            .iter()
            .filter(|&y| self.lower_covers[y].is_empty())
            .collect()
    }

    /// Length of the longest chain ending at each element (minimal elements
    /// have height 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.linear_extension() {
            h[x] = self.lower_covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Elements sorted so that every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    /// Induced subposet on `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let down = (0..k)
            .map(|j| {
                BitSet::from_indices(k, (0..k).filter(|&i| self.leq(elements[i], elements[j])))
            })
            .collect();
        let mut p = Poset::from_down_sets(down).expect("subposet of a poset");
        p.labels = elements.iter().map(|&x| self.labels[x].clone()).collect();
        p
    }

    pub fn is_isomorphic_to(&self, other: &Poset) -> bool {
        find_poset_isomorphism(self, other).is_some()
    }

    pub fn to_json(&self) -> String {
        let j = PosetJson {
            m: self.len(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: Vec::new(),
        };
        serde_json::to_string(&j).expect("poset serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PosetJson = serde_json::from_str(s)?;
        let pairs: Vec<(usize, usize)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        let p = Poset::from_relations(j.m, &pairs)?;
        if j.labels.is_empty() {
            Ok(p)
        } else {
            p.with_labels(j.labels)
        }
    }
}

/// Backtracking search for an order isomorphism `P -> Q`.
pub fn find_poset_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let sig = |x: &Poset, v: usize| (x.down(v).len(), x.up(v).len());
    let mut ps: Vec<_> = (0..n).map(|v| sig(p, v)).collect();
    let mut qs: Vec<_> = (0..n).map(|v| sig(q, v)).collect();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return None;
    }
    let order = p.linear_extension();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(p: &Poset, q: &Poset, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..q.len() {
            if used[y] || p.down(x).len() != q.down(y).len() || p.up(x).len() != q.up(y).len() {
                continue;
            }
            let ok = order[..depth].iter().all(|&z| {
                p.leq(z, x) == q.leq(map[z], y) && p.leq(x, z) == q.leq(y, map[z])
            });
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(p, q, order, depth + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    go(p, q, &order, 0, &mut map, &mut used).then_some(map)
}

/// A finite abstract simplicial complex, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Normalizes the given faces: vertices sorted, duplicates and
    /// non-maximal faces dropped, facets in (size, lex) order.
    pub fn new(n: usize, faces: Vec<Vec<usize>>) -> Result<Self> {
        let mut fs: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
        for mut f in faces {
            if f.is_empty() {
                continue;
            }
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!("vertex {bad} out of range")));
            }
            fs.push(f);
        }
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        let mut kept: Vec<BitSet> = Vec::new();
        for f in fs {
            let s = BitSet::from_indices(n, f.iter().copied());
            if kept.iter().any(|k| s.is_subset(k)) {
                continue;
            }
            kept.push(s);
            facets.push(f);
        }
        facets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SimplicialComplex { n, facets })
    }

    /// The complex with no faces at all.
    pub fn void() -> Self {
        SimplicialComplex { n: 0, facets: Vec::new() }
    }

    /// All proper faces of the `d`-simplex on `d + 1` vertices.
    pub fn simplex_boundary(d: usize) -> Self {
        let n = d + 1;
        let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new(n, facets).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, with `-1` for the void complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// All nonempty faces, ordered by dimension then lexicographically.
    pub fn faces(&self, guards: &Guards) -> Result<Vec<Vec<usize>>> {
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for f in &self.facets {
            if f.len() >= 63 {
                return Err(Error::GuardExceeded {
                    what: "faces",
                    needed: u128::MAX,
                    limit: guards.faces as u128,
                });
            }
            for mask in 1u64..(1u64 << f.len()) {
                let face: Vec<usize> =
                    (0..f.len()).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                seen.insert(face);
                Guards::check("faces", seen.len(), guards.faces)?;
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Face counts `f_0, f_1, ...` (nonempty faces only).
    pub fn f_vector(&self, guards: &Guards) -> Result<Vec<usize>> {
        let faces = self.faces(guards)?;
        let top = faces.last().map_or(0, Vec::len);
        let mut f = vec![0; top];
        for face in &faces {
            f[face.len() - 1] += 1;
        }
        Ok(f)
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self, guards: &Guards) -> Result<i64> {
        Ok(self
            .f_vector(guards)?
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson { n: self.n, facets: self.facets.clone() })
            .expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(s)?;
        SimplicialComplex::new(j.n, j.facets)
    }
}

/// The face poset of a complex together with the face of each element.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: Poset,
    /// Faces in (dimension, lex) order; element `i` is `faces[i]`.
    pub faces: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FacePoset {
    pub fn index_of(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }
}

pub fn face_poset(x: &SimplicialComplex, guards: &Guards) -> Result<FacePoset> {
    if x.is_void() {
        return Err(Error::InvalidInput("face poset of the void complex".into()));
    }
    let faces = x.faces(guards)?;
    let index: HashMap<Vec<usize>, usize> =
        faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let down = subset_down_sets(&faces, &index);
    let poset = Poset::from_down_sets(down)?.with_labels(faces.iter().map(|f| set_label(f)).collect())?;
    Ok(FacePoset { poset, faces, index })
}

fn set_label(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Ideals of the inclusion order on a family closed under taking nonempty
/// subsets.
fn subset_down_sets(sets: &[Vec<usize>], index: &HashMap<Vec<usize>, usize>) -> Vec<BitSet> {
    let m = sets.len();
    sets.iter()
        .map(|s| {
            let mut d = BitSet::new(m);
            for mask in 1u64..(1u64 << s.len()) {
                let sub: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                d.insert(index[&sub]);
            }
            d
        })
        .collect()
}

/// `Chain P`: nonempty chains of `P` ordered by inclusion.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    pub poset: Poset,
    /// Chains as sorted element-index lists, ordered by length then lex.
    /// Singletons come first, so element `x` of `P` is chain `x`.
    pub chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ChainPoset {
    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }
}

/// All nonempty chains of `p`, as sorted index lists in (length, lex) order.
pub fn chains(p: &Poset, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();

    fn extend(p: &Poset, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> Result<()> {
        let top = *stack.last().expect("nonempty");
        let mut above = p.up(top).clone();
        above.remove(top);
        for y in above.iter() {
            stack.push(y);
            let mut c = stack.clone();
            c.sort_unstable();
            out.push(c);
            Guards::check("chains", out.len(), limit)?;
            extend(p, stack, out, limit)?;
            stack.pop();
        }
        Ok(())
    }

    for x in 0..p.len() {
        stack.push(x);
        out.push(vec![x]);
        Guards::check("chains", out.len(), limit)?;
        extend(p, &mut stack, &mut out, limit)?;
        stack.pop();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn chain_poset(p: &Poset, guards: &Guards) -> Result<ChainPoset> {
    let chains = chains(p, guards.chains)?;
    let index: HashMap<Vec<usize>, usize> =
        chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let down = subset_down_sets(&chains, &index);
    let labels = chains
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&x| p.labels()[x].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let poset = Poset::from_down_sets(down)?.with_labels(labels)?;
    Ok(ChainPoset { poset, chains, index })
}

/// `Chain^k P`; `k = 0` returns a copy of `P`.
pub fn chain_power(p: &Poset, k: usize, guards: &Guards) -> Result<Poset> {
    let mut cur = p.clone();
    for _ in 0..k {
        cur = chain_poset(&cur, guards)?.poset;
    }
    Ok(cur)
}

/// The atom graph `P^1`: atoms of `P`, adjacent when they have a common
/// upper bound. Vertex `i` is the `i`-th atom in index order.
pub fn atom_graph(p: &Poset) -> Graph {
    let atoms = p.atoms();
    let g = Graph::from_fn(atoms.len(), |i, j| p.up(atoms[i]).intersects(p.up(atoms[j])));
    g.with_labels(atoms.iter().map(|&a| p.labels()[a].clone()).collect())
        .expect("one label per atom")
}

/// Reflexive comparability graph on all elements of `P`.
pub fn comparability_graph(p: &Poset) -> Graph {
    Graph::from_fn(p.len(), |x, y| p.comparable(x, y))
        .with_labels(p.labels().to_vec())
        .expect("one label per element")
}

/// The order complex: vertices are elements, faces are chains. Facets are
/// the maximal chains, found as Hasse-diagram paths from minimal to
/// maximal elements.
pub fn order_complex(p: &Poset, guards: &Guards) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    let mut path = Vec::new();

    fn walk(p: &Poset, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> Result<()> {
        let top = *path.last().expect("nonempty");
        if p.upper_covers(top).is_empty() {
            out.push(path.clone());
            return Guards::check("chains", out.len(), limit);
        }
        for &y in p.upper_covers(top) {
            path.push(y);
            walk(p, path, out, limit)?;
            path.pop();
        }
        Ok(())
    }

    for a in p.atoms() {
        path.push(a);
        walk(p, &mut path, &mut facets, guards.chains)?;
        path.pop();
    }
    SimplicialComplex::new(p.len(), facets)
}

/// A total function between element index spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetMap {
    pub image: Vec<usize>,
    pub codomain: usize,
}

impl PosetMap {
    pub fn identity(n: usize) -> Self {
        PosetMap { image: (0..n).collect(), codomain: n }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &PosetMap) -> PosetMap {
        PosetMap {
            image: first.image.iter().map(|&x| self.image[x]).collect(),
            codomain: self.codomain,
        }
    }

    pub fn is_monotone(&self, p: &Poset, q: &Poset) -> bool {
        self.image.len() == p.len()
            && self.codomain == q.len()
            && p.covers().iter().all(|&(x, y)| q.leq(self.image[x], self.image[y]))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain];
        for &y in &self.image {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// `Chain P -> P`, sending a chain to its maximum.
pub fn support_map(p: &Poset, cp: &ChainPoset) -> PosetMap {
    let image = cp
        .chains
        .iter()
        .map(|c| {
            *c.iter()
                .find(|&&x| c.iter().all(|&y| p.leq(y, x)))
                .expect("chains have a maximum")
        })
        .collect();
    PosetMap { image, codomain: p.len() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureDirection {
    /// `c(x) >= x`.
    Up,
    /// `c(x) <= x`.
    Down,
}

/// Monotone, idempotent and extensive (or intensive, for `Down`).
pub fn is_closure_map(c: &PosetMap, p: &Poset, dir: ClosureDirection) -> Result<bool> {
    if c.image.len() != p.len() || c.codomain != p.len() {
        return Err(Error::NotEndomap);
    }
    if !c.is_monotone(p, p) {
        return Ok(false);
    }
    for x in 0..p.len() {
        let cx = c.image[x];
        if c.image[cx] != cx {
            return Ok(false);
        }
        let ok = match dir {
            ClosureDirection::Up => p.leq(x, cx),
            ClosureDirection::Down => p.leq(cx, x),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The image of an endomap as an induced subposet, with the image elements
/// in increasing index order.
pub fn closure_image(c: &PosetMap, p: &Poset) -> Result<(Poset, Vec<usize>)> {
    if c.image.len() != p.len() || c.codomain != p.len() {
        return Err(Error::NotEndomap);
    }
    let mut elems = c.image.clone();
    elems.sort_unstable();
    elems.dedup();
    Ok((p.induced(&elems), elems))
}

/// Enumerates monotone maps `P -> Q` by backtracking along a linear
/// extension of `P`; the candidates for `x` are the common upper bounds of
/// the images of its lower covers. `allowed[x]` further restricts the
/// image of `x`. Results are sorted lexicographically.
pub fn monotone_maps_restricted(
    p: &Poset,
    q: &Poset,
    allowed: Option<&[BitSet]>,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let order = p.linear_extension();
    let mut f = vec![usize::MAX; p.len()];
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        p: &Poset,
        q: &Poset,
        allowed: Option<&[BitSet]>,
        order: &[usize],
        depth: usize,
        f: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if depth == order.len() {
            Guards::check("poset maps", out.len() + 1, limit)?;
            out.push(f.to_vec());
            return Ok(());
        }
        let x = order[depth];
        let mut cand = match allowed {
            Some(a) => a[x].clone(),
            None => BitSet::full(q.len()),
        };
        for &y in p.lower_covers(x) {
            cand.intersect_with(q.up(f[y]));
        }
        for v in cand.iter() {
            f[x] = v;
            go(p, q, allowed, order, depth + 1, f, out, limit)?;
        }
        f[x] = usize::MAX;
        Ok(())
    }

    if p.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    go(p, q, allowed, &order, 0, &mut f, &mut out, limit)?;
    out.sort_unstable();
    Ok(out)
}

pub fn monotone_maps(p: &Poset, q: &Poset, limit: usize) -> Result<Vec<Vec<usize>>> {
    monotone_maps_restricted(p, q, None, limit)
}

/// A poset whose elements are maps `P -> Q`, ordered pointwise.
#[derive(Clone, Debug)]
pub struct MapPoset {
    pub poset: Poset,
    pub maps: Vec<Vec<usize>>,
}

/// Pointwise order on a list of maps into `q`.
pub fn pointwise_poset(q: &Poset, maps: Vec<Vec<usize>>) -> Result<MapPoset> {
    let n = maps.len();
    let down = (0..n)
        .map(|j| {
            BitSet::from_indices(
                n,
                (0..n).filter(|&i| maps[i].iter().zip(&maps[j]).all(|(&a, &b)| q.leq(a, b))),
            )
        })
        .collect();
    let poset = Poset::from_down_sets(down)?;
    Ok(MapPoset { poset, maps })
}

/// `Poset(P, Q)`: all monotone maps ordered pointwise.
pub fn poset_maps(p: &Poset, q: &Poset, guards: &Guards) -> Result<MapPoset> {
    let maps = monotone_maps(p, q, guards.poset_maps)?;
    pointwise_poset(q, maps)
}

/// True when every set of atoms below an element has a least upper bound.
pub fn has_atom_lub(p: &Poset) -> bool {
    (0..p.len()).all(|x| {
        let mut ub = BitSet::full(p.len());
        for a in p.atoms_below(x) {
            ub.intersect_with(p.up(a));
        }
        ub.iter().any(|u| ub.is_subset(p.up(u)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplicialComplex {
        SimplicialComplex::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(6, facets).unwrap()
    }

    #[test]
    fn face_poset_counts() {
        let g = Guards::default();
        let edge = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        let fp = face_poset(&edge, &g).unwrap();
        assert_eq!((fp.poset.len(), fp.poset.atoms().len()), (3, 2));
        assert_eq!(face_poset(&square(), &g).unwrap().poset.len(), 8);
        assert_eq!(face_poset(&octahedron(), &g).unwrap().poset.len(), 26);
        assert!(face_poset(&SimplicialComplex::void(), &g).is_err());
    }

    #[test]
    fn chain_poset_examples() {
        let g = Guards::default();
        assert_eq!(chain_poset(&Poset::antichain(2), &g).unwrap().poset.len(), 2);
        let c2 = chain_poset(&Poset::chain(2), &g).unwrap();
        assert_eq!(c2.chains, vec![vec![0], vec![1], vec![0, 1]]);
        let sq = face_poset(&square(), &g).unwrap().poset;
        // 8 elements and 8 comparable pairs.
        assert_eq!(chain_poset(&sq, &g).unwrap().poset.len(), 16);
        assert_eq!(chain_power(&sq, 0, &g).unwrap(), sq);
        let tight = Guards { chains: 10, ..Guards::default() };
        assert!(chain_poset(&sq, &tight).unwrap_err().is_guard());
    }

    #[test]
    fn atom_graph_examples() {
        let g = Guards::default();
        let hexagon = SimplicialComplex::new(6, (0..6).map(|i| vec![i, (i + 1) % 6]).collect()).unwrap();
        let p1 = atom_graph(&face_poset(&hexagon, &g).unwrap().poset);
        let c6 = Graph::cycle(6).unwrap().reflexive_closure();
        assert!(crate::graph::are_isomorphic(&p1, &c6));
        let a = atom_graph(&Poset::antichain(3));
        assert_eq!((a.n(), a.edge_count(), a.loop_count()), (3, 3, 3));
    }

    #[test]
    fn order_complex_examples() {
        let g = Guards::default();
        let oc = order_complex(&Poset::chain(2), &g).unwrap();
        assert_eq!(oc.facets(), &[vec![0, 1]]);
        let sq = face_poset(&square(), &g).unwrap().poset;
        let oct = order_complex(&sq, &g).unwrap();
        assert_eq!(oct.facets().len(), 8);
        assert_eq!(oct.euler_characteristic(&g).unwrap(), 0);
    }

    #[test]
    fn support_map_examples() {
        let g = Guards::default();
        let p = Poset::chain(2);
        let cp = chain_poset(&p, &g).unwrap();
        let s = support_map(&p, &cp);
        assert_eq!(s.image, vec![0, 1, 1]);
        assert!(s.is_monotone(&cp.poset, &p));
        let cp2 = chain_poset(&cp.poset, &g).unwrap();
        let s2 = support_map(&cp.poset, &cp2);
        let composite = s.after(&s2);
        assert!(composite.is_monotone(&cp2.poset, &p));
        assert!(composite.is_surjective());
    }

    #[test]
    fn closure_maps() {
        let p = Poset::chain(3);
        let id = PosetMap::identity(3);
        assert!(is_closure_map(&id, &p, ClosureDirection::Up).unwrap());
        assert_eq!(closure_image(&id, &p).unwrap().0, p);
        let top = PosetMap { image: vec![2, 2, 2], codomain: 3 };
        assert!(is_closure_map(&top, &p, ClosureDirection::Up).unwrap());
        assert!(!is_closure_map(&top, &p, ClosureDirection::Down).unwrap());
        let bad = PosetMap { image: vec![0, 0], codomain: 3 };
        assert!(matches!(is_closure_map(&bad, &p, ClosureDirection::Up), Err(Error::NotEndomap)));
    }

    #[test]
    fn poset_map_counts() {
        let g = Guards::default();
        let two = Poset::chain(2);
        assert_eq!(poset_maps(&two, &two, &g).unwrap().maps.len(), 3);
        let q = face_poset(&square(), &g).unwrap().poset;
        let one = poset_maps(&Poset::chain(1), &q, &g).unwrap();
        assert!(one.poset.is_isomorphic_to(&q));
        assert_eq!(poset_maps(&Poset::antichain(2), &two, &g).unwrap().maps.len(), 4);
    }

    #[test]
    fn atom_lub() {
        let g = Guards::default();
        assert!(has_atom_lub(&face_poset(&octahedron(), &g).unwrap().poset));
        // a, b below both c and d, with c, d incomparable.
        let bowtie = Poset::from_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(!has_atom_lub(&bowtie));
    }

    #[test]
    fn relations_reject_cycles() {
        assert!(matches!(
            Poset::from_relations(2, &[(0, 1), (1, 0)]),
            Err(Error::NotAntisymmetric(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = Guards::default();
        let p = face_poset(&square(), &g).unwrap().poset;
        let back = Poset::from_json(&p.to_json()).unwrap();
        assert_eq!(back.covers(), p.covers());
        let x = octahedron();
        assert_eq!(SimplicialComplex::from_json(&x.to_json()).unwrap(), x);
    }
}
