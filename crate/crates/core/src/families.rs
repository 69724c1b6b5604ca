//! Named graph families: spherical graphs `S(k,m)`, twisted toroidal graphs
//! `T(k,m)`, the cycle posets, generalized Mycielski graphs, universality
//! graphs, and the explicit colorings and certificates built from them.

use std::fmt;
use std::str::FromStr;

use crate::action::{atom_action, chain_action, twisted_product, Action, FiniteGroup, Side, TwistedProduct};
use crate::error::{Error, Guards, Result};
use crate::graph::{self, check_homomorphism, EquivRelation, Extended, Graph, VertexMap};
use crate::poset::{atom_graph, chain_poset, face_poset, Poset, SimplicialComplex};

/// A poset with a free left involution and, optionally, a commuting right
/// involution.
#[derive(Clone, Debug)]
pub struct SymmetricPoset {
    pub poset: Poset,
    pub antipodal: Action,
    pub reflection: Option<Action>,
}

impl SymmetricPoset {
    pub fn new(poset: Poset, antipodal: Action, reflection: Option<Action>) -> Result<Self> {
        antipodal.validate_poset(&poset)?;
        if let Some(r) = &reflection {
            r.validate_poset(&poset)?;
            if !actions_commute(&antipodal, r) {
                return Err(Error::ActionAxiom("reflection does not commute with the antipodal action".into()));
            }
        }
        Ok(SymmetricPoset { poset, antipodal: antipodal.to_left(), reflection: reflection.map(|r| r.to_right()) })
    }

    /// Barycentric subdivision `Chain P` with both actions transported.
    pub fn subdivide(&self, guards: &Guards) -> Result<SymmetricPoset> {
        let cp = chain_poset(&self.poset, guards)?;
        let antipodal = chain_action(&self.antipodal, &cp)?;
        let reflection = self.reflection.as_ref().map(|r| chain_action(r, &cp)).transpose()?;
        Ok(SymmetricPoset { poset: cp.poset, antipodal, reflection })
    }

    pub fn subdivide_times(&self, k: usize, guards: &Guards) -> Result<SymmetricPoset> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.subdivide(guards)?;
        }
        Ok(cur)
    }
}

/// True when every pair of elements of the two groups commutes pointwise.
pub fn actions_commute(a: &Action, b: &Action) -> bool {
    a.degree() == b.degree()
        && (0..a.group().order()).all(|g| {
            (0..b.group().order()).all(|h| (0..a.degree()).all(|x| a.apply(g, b.apply(h, x)) == b.apply(h, a.apply(g, x))))
        })
}

/// `T x_Z2 P^1` together with its right action.
#[derive(Clone, Debug)]
pub struct Twisted {
    pub graph: Graph,
    /// Induced by the reflection on `P`, when present.
    pub right_action: Option<Action>,
    pub product: TwistedProduct,
    /// Vertex count of `P^1`.
    pub fiber: usize,
}

pub fn twist(t: &Graph, t_right: &Action, p: &SymmetricPoset) -> Result<Twisted> {
    let h = atom_graph(&p.poset);
    let left = atom_action(&p.antipodal, &p.poset)?;
    let right = p.reflection.as_ref().map(|r| atom_action(r, &p.poset)).transpose()?;
    let product = twisted_product(t, t_right, &h, &left, right.as_ref())?;
    Ok(Twisted { graph: product.graph.clone(), right_action: product.right_action.clone(), fiber: h.n(), product })
}

pub fn k2_swap() -> Action {
    Action::involution(Side::Right, vec![1, 0]).expect("swap is an involution")
}

/// Involution of a permutation given as an array, extended to faces.
fn face_action(fp: &crate::poset::FacePoset, perm: &[usize], side: Side) -> Result<Action> {
    let images = (0..fp.faces.len())
        .map(|i| {
            let mut f: Vec<usize> = fp.faces[i].iter().map(|&v| perm[v]).collect();
            f.sort_unstable();
            fp.index_of(&f).ok_or_else(|| Error::ActionAxiom("vertex map does not preserve faces".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    Action::involution(side, images)
}

/// `𝒞_{2m}`: vertices `0..2m`, edge `{i, i+1}` is element `2m + i`. Left
/// action `i -> i + m`, right action `i -> 2m - 1 - i`.
pub fn cycle_face_poset(m: usize) -> Result<SymmetricPoset> {
    if m < 2 {
        return Err(Error::InvalidSize(format!("cycle poset needs m >= 2, got {m}")));
    }
    let n = 2 * m;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| [(i, n + i), ((i + 1) % n, n + i)]).collect();
    let labels = (0..n)
        .map(|i| i.to_string())
        .chain((0..n).map(|i| format!("{{{},{}}}", i, (i + 1) % n)))
        .collect();
    let poset = Poset::from_relations(2 * n, &pairs)?.with_labels(labels)?;
    let anti: Vec<usize> = (0..n).map(|i| (i + m) % n).chain((0..n).map(|i| n + (i + m) % n)).collect();
    let refl: Vec<usize> = (0..n).map(|i| n - 1 - i).chain((0..n).map(|i| n + (2 * n - 2 - i) % n)).collect();
    SymmetricPoset::new(
        poset,
        Action::involution(Side::Left, anti)?,
        Some(Action::involution(Side::Right, refl)?),
    )
}

/// Boundary of the `(k+1)`-dimensional cross polytope. Vertex `2i` is
/// `+e_i` and `2i+1` is `-e_i`.
pub fn cross_polytope_boundary(k: usize) -> SimplicialComplex {
    let d = k + 1;
    let facets = (0..1usize << d)
        .map(|mask| (0..d).map(|i| 2 * i + (mask >> i & 1)).collect())
        .collect();
    SimplicialComplex::new(2 * d, facets).expect("valid facets")
}

/// Face poset of the `m`-th subdivision of the cross polytope boundary, as
/// `Chain^m` of the face poset, with the antipodal action and the
/// reflection negating the first coordinate.
pub fn cross_polytope(k: usize, m: usize, guards: &Guards) -> Result<SymmetricPoset> {
    let x = cross_polytope_boundary(k);
    let fp = face_poset(&x, guards)?;
    let anti: Vec<usize> = (0..2 * (k + 1)).map(|v| v ^ 1).collect();
    let mut refl: Vec<usize> = (0..2 * (k + 1)).collect();
    refl.swap(0, 1);
    let base = SymmetricPoset::new(
        fp.poset.clone(),
        face_action(&fp, &anti, Side::Left)?,
        Some(face_action(&fp, &refl, Side::Right)?),
    )?;
    base.subdivide_times(m, guards)
}

/// `X^k_m` as a simplicial complex with the antipodal action on its
/// vertices.
pub fn cross_polytope_complex(k: usize, m: usize, guards: &Guards) -> Result<(SimplicialComplex, Action)> {
    if m == 0 {
        let anti: Vec<usize> = (0..2 * (k + 1)).map(|v| v ^ 1).collect();
        return Ok((cross_polytope_boundary(k), Action::involution(Side::Left, anti)?));
    }
    let p = cross_polytope(k, m - 1, guards)?;
    Ok((crate::poset::order_complex(&p.poset, guards)?, p.antipodal))
}

/// `S(k,m) = K2 x_Z2 F(X^k_m)^1`.
pub fn spherical_graph(k: usize, m: usize, guards: &Guards) -> Result<Twisted> {
    twist(&Graph::complete(2)?, &k2_swap(), &cross_polytope(k, m, guards)?)
}

/// The homomorphism `S(k,m+1) -> S(k,m)` induced by the poset map
/// `F(X^k_{m+1}) -> F(X^k_m)`. For `m >= 1` a chain goes to its maximum;
/// for `m = 0` a face goes to a vertex chosen on a representative of each
/// orbit of both involutions and transported.
pub fn system_map(k: usize, m: usize, guards: &Guards) -> Result<(Twisted, Twisted, VertexMap)> {
    let src = spherical_graph(k, m + 1, guards)?;
    let dst = spherical_graph(k, m, guards)?;
    let lower = cross_polytope(k, m, guards)?;
    // Vertices of S(k,m+1) sit over elements of F(X^k_m).
    let fiber_map: Vec<usize> = if m == 0 {
        face_vertex_choice(&lower)?
    } else {
        // Vertices of S(k,m) are elements of Chain^{m-1}; elements of
        // Chain^m are chains of those, stored as sorted index lists.
        let below = cross_polytope(k, m - 1, guards)?;
        let cp = chain_poset(&below.poset, guards)?;
        cp.chains
            .iter()
            .map(|c| *c.iter().max_by_key(|&&x| below.poset.down(x).len()).expect("nonempty chain"))
            .collect()
    };
    let map = twisted_fiber_map(&src, &dst, &fiber_map)?;
    if !check_homomorphism(&map, &src.graph, &dst.graph) {
        return Err(Error::InvalidInput("system map is not a homomorphism".into()));
    }
    Ok((src, dst, map))
}

fn face_vertex_choice(p: &SymmetricPoset) -> Result<Vec<usize>> {
    let n = p.poset.len();
    let refl = p.reflection.as_ref().expect("cross polytope carries a reflection");
    let moves = |x: usize| -> [usize; 4] {
        let a = p.antipodal.apply(1, x);
        [x, a, refl.apply(1, x), refl.apply(1, a)]
    };
    let mut choice = vec![usize::MAX; n];
    for x in 0..n {
        let orbit = moves(x);
        let rep = *orbit.iter().min().expect("four images");
        if rep != x {
            continue;
        }
        // Vertices are the first elements of the face poset.
        let v = *p.poset.atoms_below(x).iter().min().expect("faces have vertices");
        let vm = moves(v);
        for (g, &y) in orbit.iter().enumerate() {
            if choice[y] == usize::MAX {
                choice[y] = vm[g];
            } else if choice[y] != vm[g] {
                return Err(Error::NotEquivariant("vertex choice is not stable under the stabilizer".into()));
            }
        }
    }
    Ok(choice)
}

/// `[(t, x)] -> [(t, f(x))]` between twisted products over the same `T`.
fn twisted_fiber_map(src: &Twisted, dst: &Twisted, f: &[usize]) -> Result<VertexMap> {
    let image = src
        .product
        .reps
        .iter()
        .map(|&v| {
            let (t, x) = (v / src.fiber, v % src.fiber);
            dst.product.orbit_of[t * dst.fiber + f[x]]
        })
        .collect();
    VertexMap::new(image, dst.graph.n())
}

/// A graph with a right involution.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub graph: Graph,
    pub right_action: Action,
}

/// `T(k,m) = K2 x_Z2 C¹_2m x_Z2 ... x_Z2 C¹_2m`, left associated; the
/// carried right action is the reflection on the last factor.
pub fn twisted_toroidal(k: usize, m: usize) -> Result<FlipGraph> {
    let c = cycle_face_poset(m)?;
    let mut cur = FlipGraph { graph: Graph::complete(2)?, right_action: k2_swap() };
    for _ in 0..k {
        let tw = twist(&cur.graph, &cur.right_action, &c)?;
        cur = FlipGraph { graph: tw.graph, right_action: tw.right_action.expect("cycle poset has a reflection") };
    }
    Ok(cur)
}

/// `M_m G = (P'_m x G) / ({m} x V(G))`; the collapsed vertex is last.
pub fn mycielski(g: &Graph, m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(Error::InvalidSize("Mycielski construction needs m >= 1".into()));
    }
    let path = Graph::standard(graph::StandardGraph::LoopedPath(m))?;
    let prod = graph::product(&path, g);
    let n = g.n();
    let label: Vec<usize> = (0..prod.n()).map(|v| if v / n == m { m * n } else { v }).collect();
    graph::quotient(&prod, &EquivRelation::from_labels(&label))
}

pub fn iterated_mycielski(g: &Graph, m: usize, k: usize) -> Result<Graph> {
    let mut cur = g.clone();
    for _ in 0..k {
        cur = mycielski(&cur, m)?;
    }
    Ok(cur)
}

/// A coloring of a graph with a right involution into `K_colors`, where
/// the involution on `K_colors` swaps colors 0 and 1.
#[derive(Clone, Debug)]
pub struct EquivariantColoring {
    pub graph: Graph,
    pub right_action: Action,
    pub coloring: VertexMap,
    pub colors: usize,
}

fn swap01(c: usize) -> usize {
    match c {
        0 => 1,
        1 => 0,
        c => c,
    }
}

impl EquivariantColoring {
    pub fn is_proper(&self) -> bool {
        Graph::complete(self.colors).is_ok_and(|k| check_homomorphism(&self.coloring, &self.graph, &k))
    }

    pub fn is_equivariant(&self) -> bool {
        (0..self.graph.n()).all(|v| self.coloring.image[self.right_action.apply(1, v)] == swap01(self.coloring.image[v]))
    }
}

/// Colors `K2 x_Z2 (Chain^2 P)^1` with `n + 2` colors, `n` the height of
/// `P`: a chain `c` gets `max d(p)` over chosen elements `p` in `c`, or
/// `n + 1` if `c` has none. One element per orbit is chosen, the smallest.
pub fn subdivision_coloring(p: &SymmetricPoset, guards: &Guards) -> Result<(Graph, VertexMap, usize)> {
    if !p.antipodal.is_free() {
        return Err(Error::NotFree);
    }
    let heights = p.poset.heights();
    let n = heights.iter().copied().max().unwrap_or(0);
    let chosen: Vec<bool> = (0..p.poset.len()).map(|x| x <= p.antipodal.apply(1, x)).collect();
    let cp = chain_poset(&p.poset, guards)?;
    let phi: Vec<usize> = cp
        .chains
        .iter()
        .map(|c| c.iter().filter(|&&x| chosen[x]).map(|&x| heights[x]).max().unwrap_or(n + 1))
        .collect();
    let sym = SymmetricPoset { poset: cp.poset.clone(), antipodal: chain_action(&p.antipodal, &cp)?, reflection: None };
    let tw = twist(&Graph::complete(2)?, &k2_swap(), &sym.subdivide(guards)?)?;
    // Each orbit has exactly one member over K2 vertex 0, and it is the
    // smallest product index.
    let image = tw.product.reps.iter().map(|&v| phi[v % tw.fiber]).collect();
    let coloring = VertexMap::new(image, n + 2)?;
    if !check_homomorphism(&coloring, &tw.graph, &Graph::complete(n + 2)?) {
        return Err(Error::InvalidInput("subdivision coloring is not proper".into()));
    }
    Ok((tw.graph, coloring, n + 2))
}

/// Pairs `(f(0), f(1))` of the looped vertices of `K3^K2`, in the cyclic
/// order matching `C¹_6`.
const HEXAGON: [(usize, usize); 6] = [(1, 2), (1, 0), (2, 0), (2, 1), (0, 1), (0, 2)];

fn collapse_to_hexagon(i: usize, m: usize) -> usize {
    match i {
        0 => 0,
        i if i < m - 1 => 1,
        i if i == m - 1 => 2,
        i if i == m => 3,
        i if i < 2 * m - 1 => 4,
        _ => 5,
    }
}

/// From an equivariant coloring `T -> K_N` builds the equivariant coloring
/// `T x_Z2 C¹_2m -> K_{N+1}` through `C¹_2m -> K3^K2 -> K_{N+1}^{K_N}`.
pub fn equivariant_coloring_step(c: &EquivariantColoring, m: usize) -> Result<EquivariantColoring> {
    if m < 3 {
        return Err(Error::InvalidSize(format!("coloring step needs m >= 3, got {m}")));
    }
    if !c.is_proper() || !c.is_equivariant() {
        return Err(Error::NotEquivariant("input coloring".into()));
    }
    let tw = twist(&c.graph, &c.right_action, &cycle_face_poset(m)?)?;
    let extend = |x: usize, col: usize| -> usize {
        let (a, b) = HEXAGON[collapse_to_hexagon(x, m)];
        match col {
            0 => a,
            1 => b,
            col => col + 1,
        }
    };
    let image = tw
        .product
        .reps
        .iter()
        .map(|&v| extend(v % tw.fiber, c.coloring.image[v / tw.fiber]))
        .collect();
    let out = EquivariantColoring {
        graph: tw.graph,
        right_action: tw.right_action.expect("cycle poset has a reflection"),
        coloring: VertexMap::new(image, c.colors + 1)?,
        colors: c.colors + 1,
    };
    if !out.is_proper() || !out.is_equivariant() {
        return Err(Error::NotEquivariant("constructed coloring".into()));
    }
    Ok(out)
}

/// The identity coloring of `K2` with the swap.
pub fn k2_coloring() -> EquivariantColoring {
    EquivariantColoring {
        graph: Graph::complete(2).expect("K2"),
        right_action: k2_swap(),
        coloring: VertexMap::new(vec![0, 1], 2).expect("identity"),
        colors: 2,
    }
}

/// `T(k,m) -> K_{k+2}` by iterating the step from `K2`.
pub fn toroidal_coloring(k: usize, m: usize) -> Result<EquivariantColoring> {
    let mut c = k2_coloring();
    for _ in 0..k {
        c = equivariant_coloring_step(&c, m)?;
    }
    Ok(c)
}

/// Searches `S(k,m) -> G` for `m <= m_max`; a hit certifies
/// `coind Hom(K2, G) >= k`.
pub fn coindex_certificate(g: &Graph, k: usize, m_max: usize, guards: &Guards) -> Result<Option<(usize, VertexMap)>> {
    for m in 0..=m_max {
        let s = spherical_graph(k, m, guards)?;
        if let Some(f) = graph::find_homomorphism(&s.graph, g) {
            return Ok(Some((m, f)));
        }
    }
    Ok(None)
}

/// `min` over `i <= i_max` of `chi(B^i(G^T) x_Z2 K2)`, or `None` when
/// `Hom(T, G)` is empty.
pub fn index_upper_bound(t: &FlipGraph, g: &Graph, i_max: usize, guards: &Guards) -> Result<Option<Extended>> {
    if graph::find_homomorphism(&t.graph, g).is_none() {
        return Ok(None);
    }
    let flip = t.right_action.to_right();
    let tn = t.graph.n();
    let gn = g.n();
    let mut cur = graph::exponential(&t.graph, g, guards)?;
    // (f.s)(t) = f(t.s)
    let mut act = flip.transported(cur.n(), |s, code| {
        let f = graph::decode_function(code, tn, gn);
        let moved: Vec<usize> = (0..tn).map(|x| f[flip.apply(s, x)]).collect();
        graph::encode_function(&moved, gn)
    })?;
    let k2_left = Action::involution(Side::Left, vec![1, 0])?;
    let mut best = Extended::Infinite;
    for i in 0..=i_max {
        if i > 0 {
            let b = graph::clique_graph_b(&cur, guards)?;
            let index: std::collections::HashMap<&[usize], usize> =
                b.cliques.iter().enumerate().map(|(j, c)| (c.as_slice(), j)).collect();
            act = act.transported(b.cliques.len(), |s, j| {
                let mut c: Vec<usize> = b.cliques[j].iter().map(|&x| act.apply(s, x)).collect();
                c.sort_unstable();
                index[c.as_slice()]
            })?;
            cur = b.graph;
        }
        let tp = twisted_product(&cur, &act, &Graph::complete(2)?, &k2_left, None)?;
        best = best.min(graph::chromatic_number(&tp.graph));
    }
    Ok(Some(best))
}

/// Face poset of `X` with the vertex action transported to faces.
fn face_poset_with_action(x: &SimplicialComplex, a: &Action, guards: &Guards) -> Result<(Poset, Action)> {
    if a.degree() != x.vertex_count() {
        return Err(Error::ActionAxiom("action degree differs from vertex count".into()));
    }
    let fp = face_poset(x, guards)?;
    let a = a.to_left();
    let act = a.transported(fp.faces.len(), |g, i| {
        let mut f: Vec<usize> = fp.faces[i].iter().map(|&v| a.apply(g, v)).collect();
        f.sort_unstable();
        fp.index_of(&f).unwrap_or(usize::MAX)
    });
    let act = act.map_err(|_| Error::ActionAxiom("vertex action does not preserve faces".into()))?;
    if !act.is_free() {
        return Err(Error::NotFree);
    }
    Ok((fp.poset, act))
}

/// `K2 x_Z2 Chain(FX)^1` for a free involution on `X`.
pub fn csorba_graph(x: &SimplicialComplex, a: &Action, guards: &Guards) -> Result<Graph> {
    if a.group().order() != 2 {
        return Err(Error::MismatchedGroups);
    }
    let (fx, act) = face_poset_with_action(x, a, guards)?;
    let cp = chain_poset(&fx, guards)?;
    let ca = chain_action(&act, &cp)?;
    let h = atom_graph(&cp.poset);
    let ha = atom_action(&ca, &cp.poset)?;
    // Same group object as the fiber action, element 1 the involution.
    let swap = Action::new(ha.group().clone(), Side::Right, vec![vec![0, 1], vec![1, 0]])?;
    let g = twisted_product(&Graph::complete(2)?, &swap, &h, &ha, None)?.graph;
    debug_assert!(!g.has_loops());
    Ok(g)
}

/// `K_n x_G Chain^3(FX)^1` for a free action of a group of permutations of
/// `n` letters; `K_n` carries `x.g = g^-1(x)`.
pub fn universality_graph(x: &SimplicialComplex, n: usize, a: &Action, guards: &Guards) -> Result<Graph> {
    let group = a.group().clone();
    if group.degree() != n {
        return Err(Error::MismatchedGroups);
    }
    let (fx, act) = face_poset_with_action(x, a, guards)?;
    let mut p = fx;
    let mut pa = act;
    for _ in 0..3 {
        let cp = chain_poset(&p, guards)?;
        pa = chain_action(&pa, &cp)?;
        p = cp.poset;
    }
    let h = atom_graph(&p);
    let ha = atom_action(&pa, &p)?;
    let kn_left = Action::new(group.clone(), Side::Left, (0..group.order()).map(|g| group.element(g).to_vec()).collect())?;
    let g = twisted_product(&Graph::complete(n)?, &kn_left.flipped(), &h, &ha, None)?.graph;
    debug_assert!(!g.has_loops());
    Ok(g)
}

/// Built-in complexes with free actions.
pub fn fixture(name: &str, guards: &Guards) -> Result<(SimplicialComplex, Action)> {
    match name {
        "square" => cross_polytope_complex(1, 0, guards),
        "octahedron" => cross_polytope_complex(2, 0, guards),
        "points6" => {
            let s3 = FiniteGroup::symmetric(3, guards)?;
            let perms = (0..6).map(|g| (0..6).map(|x| s3.mul(g, x)).collect()).collect();
            let x = SimplicialComplex::new(6, (0..6).map(|v| vec![v]).collect())?;
            Ok((x, Action::new(s3, Side::Left, perms)?))
        }
        other => Err(Error::InvalidInput(format!("unknown complex `{other}`"))),
    }
}

/// CLI family identifiers: `S(k,m)`, `T(k,m)`, `M^k_m(K2)`, `csorba(X)`,
/// `univ(X,n)`, plus `K(n)`, `C(n)`, `C1(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Spherical { k: usize, m: usize },
    Toroidal { k: usize, m: usize },
    Mycielski { k: usize, m: usize, base: usize },
    Csorba { complex: String },
    Universal { complex: String, n: usize },
    Complete(usize),
    Cycle(usize),
    ReflexiveCycle(usize),
}

impl FamilySpec {
    pub fn build(&self, guards: &Guards) -> Result<Graph> {
        match self {
            FamilySpec::Spherical { k, m } => Ok(spherical_graph(*k, *m, guards)?.graph),
            FamilySpec::Toroidal { k, m } => Ok(twisted_toroidal(*k, *m)?.graph),
            FamilySpec::Mycielski { k, m, base } => iterated_mycielski(&Graph::complete(*base)?, *m, *k),
            FamilySpec::Csorba { complex } => {
                let (x, a) = fixture(complex, guards)?;
                csorba_graph(&x, &a, guards)
            }
            FamilySpec::Universal { complex, n } => {
                let (x, a) = fixture(complex, guards)?;
                universality_graph(&x, *n, &a, guards)
            }
            FamilySpec::Complete(n) => Graph::complete(*n),
            FamilySpec::Cycle(n) => Graph::cycle(*n),
            FamilySpec::ReflexiveCycle(n) => Ok(Graph::cycle(*n)?.reflexive_closure()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Spherical { k, m } => write!(f, "S({k},{m})"),
            FamilySpec::Toroidal { k, m } => write!(f, "T({k},{m})"),
            FamilySpec::Mycielski { k, m, base } => write!(f, "M^{k}_{m}(K{base})"),
            FamilySpec::Csorba { complex } => write!(f, "csorba({complex})"),
            FamilySpec::Universal { complex, n } => write!(f, "univ({complex},{n})"),
            FamilySpec::Complete(n) => write!(f, "K({n})"),
            FamilySpec::Cycle(n) => write!(f, "C({n})"),
            FamilySpec::ReflexiveCycle(n) => write!(f, "C1({n})"),
        }
    }
}

fn parse_args(s: &str, name: &str) -> Option<Vec<String>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(|p| p.trim().to_string()).collect())
}

fn num(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidInput(format!("expected a number, got `{s}`")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unrecognized family `{s}`"));
        let two = |args: Vec<String>| -> Result<(usize, usize)> {
            match args.as_slice() {
                [a, b] => Ok((num(a)?, num(b)?)),
                _ => Err(bad()),
            }
        };
        let one = |args: Vec<String>| -> Result<usize> {
            match args.as_slice() {
                [a] => num(a),
                _ => Err(bad()),
            }
        };
        if let Some(a) = parse_args(s, "S") {
            let (k, m) = two(a)?;
            return Ok(FamilySpec::Spherical { k, m });
        }
        if let Some(a) = parse_args(s, "T") {
            let (k, m) = two(a)?;
            return Ok(FamilySpec::Toroidal { k, m });
        }
        if let Some(a) = parse_args(s, "C1") {
            return Ok(FamilySpec::ReflexiveCycle(one(a)?));
        }
        if let Some(a) = parse_args(s, "C") {
            return Ok(FamilySpec::Cycle(one(a)?));
        }
        if let Some(a) = parse_args(s, "K") {
            return Ok(FamilySpec::Complete(one(a)?));
        }
        if let Some(a) = parse_args(s, "csorba") {
            return match a.as_slice() {
                [x] => Ok(FamilySpec::Csorba { complex: x.clone() }),
                _ => Err(bad()),
            };
        }
        if let Some(a) = parse_args(s, "univ") {
            return match a.as_slice() {
                [x, n] => Ok(FamilySpec::Universal { complex: x.clone(), n: num(n)? }),
                _ => Err(bad()),
            };
        }
        // M^k_m(Kb)
        if let Some(rest) = s.strip_prefix("M^") {
            let (k, rest) = rest.split_once('_').ok_or_else(bad)?;
            let (m, rest) = rest.split_once('(').ok_or_else(bad)?;
            let base = rest.strip_prefix('K').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            return Ok(FamilySpec::Mycielski { k: num(k)?, m: num(m)?, base: num(base)? });
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn cycle_poset() {
        let c = cycle_face_poset(3).unwrap();
        assert_eq!(c.poset.len(), 12);
        let c1 = atom_graph(&c.poset);
        assert!(graph::are_isomorphic(&c1, &Graph::cycle(6).unwrap().reflexive_closure()));
        assert!(actions_commute(&c.antipodal, c.reflection.as_ref().unwrap()));
        assert!(cycle_face_poset(1).is_err());
        assert_eq!(atom_graph(&cycle_face_poset(2).unwrap().poset).edge_count(), 8);
    }

    #[test]
    fn cross_polytopes() {
        let gd = g();
        assert_eq!(cross_polytope_complex(1, 0, &gd).unwrap().0.vertex_count(), 4);
        let (oct1, _) = cross_polytope_complex(1, 1, &gd).unwrap();
        assert_eq!((oct1.vertex_count(), oct1.facets().len()), (8, 8));
        assert_eq!(cross_polytope_boundary(2).f_vector(&gd).unwrap(), vec![6, 12, 8]);
    }

    #[test]
    fn spherical_small() {
        let gd = g();
        let s10 = spherical_graph(1, 0, &gd).unwrap();
        assert!(graph::are_isomorphic(&s10.graph, &Graph::complete(4).unwrap()));
        let s11 = spherical_graph(1, 1, &gd).unwrap();
        assert!(!s11.graph.has_loops());
        assert_eq!(graph::chromatic_number(&s11.graph), Extended::Finite(3));
        let (_, _, f) = system_map(1, 0, &gd).unwrap();
        assert_eq!(f.domain(), s11.graph.n());
        system_map(1, 1, &gd).unwrap();
    }

    #[test]
    fn toroidal_small() {
        let t13 = twisted_toroidal(1, 3).unwrap().graph;
        assert_eq!(t13.n(), 6);
        assert!((0..6).all(|v| t13.degree(v) == 3));
        assert_eq!(graph::chromatic_number(&t13), Extended::Finite(3));
        assert_eq!(graph::odd_girth(&t13), Extended::Finite(3));
        assert_eq!(twisted_toroidal(2, 3).unwrap().graph.n(), 18);
        assert_eq!(twisted_toroidal(0, 3).unwrap().graph.n(), 2);
    }

    #[test]
    fn mycielski_c5() {
        let m = mycielski(&Graph::complete(2).unwrap(), 2).unwrap();
        assert!(graph::are_isomorphic(&m, &Graph::cycle(5).unwrap()));
        let k3 = Graph::complete(3).unwrap();
        let m3 = mycielski(&k3, 3).unwrap();
        assert_eq!(m3.n(), 10);
        let apexless: Vec<usize> = (0..9).collect();
        let path = Graph::standard(graph::StandardGraph::LoopedPath(2)).unwrap();
        assert!(graph::are_isomorphic(&m3.induced_subgraph(&apexless), &graph::product(&path, &k3)));
        assert!(mycielski(&k3, 0).is_err());
    }

    #[test]
    fn colorings() {
        let gd = g();
        let (_, c, colors) = subdivision_coloring(&cross_polytope(1, 0, &gd).unwrap(), &gd).unwrap();
        assert_eq!(colors, 3);
        assert!(c.image.iter().all(|&x| x < 3));
        let t = toroidal_coloring(2, 3).unwrap();
        assert_eq!(t.colors, 4);
        assert!(graph::are_isomorphic(&t.graph, &twisted_toroidal(2, 3).unwrap().graph));
        assert!(equivariant_coloring_step(&k2_coloring(), 2).is_err());
    }

    #[test]
    fn c5_reflection_step() {
        let c5 = Graph::cycle(5).unwrap();
        let refl = Action::involution(Side::Right, (0..5).map(|v| (5 - v) % 5).collect()).unwrap();
        let base = EquivariantColoring {
            graph: c5,
            right_action: refl,
            coloring: VertexMap::new(vec![2, 1, 0, 1, 0], 3).unwrap(),
            colors: 3,
        };
        let out = equivariant_coloring_step(&base, 3).unwrap();
        assert_eq!(out.colors, 4);
    }

    #[test]
    fn certificates() {
        let gd = g();
        assert!(coindex_certificate(&Graph::complete(2).unwrap(), 1, 1, &gd).unwrap().is_none());
        let s11 = spherical_graph(1, 1, &gd).unwrap().graph;
        assert_eq!(coindex_certificate(&s11, 1, 1, &gd).unwrap().map(|(m, _)| m), Some(1));
        let k2 = FlipGraph { graph: Graph::complete(2).unwrap(), right_action: k2_swap() };
        assert_eq!(index_upper_bound(&k2, &Graph::complete(4).unwrap().induced_subgraph(&[]), 0, &gd).unwrap(), None);
    }

    #[test]
    fn universality_points() {
        let gd = g();
        let (x, a) = fixture("points6", &gd).unwrap();
        let u = universality_graph(&x, 3, &a, &gd).unwrap();
        assert!(graph::are_isomorphic(&u, &Graph::complete(3).unwrap()));
        let (sq, anti) = fixture("square", &gd).unwrap();
        let cs = csorba_graph(&sq, &anti, &gd).unwrap();
        assert_eq!(cs.n(), 8);
        assert!(!cs.has_loops());
    }

    #[test]
    fn family_parsing() {
        for s in ["S(1,2)", "T(2,3)", "M^2_2(K2)", "csorba(square)", "univ(points6,3)", "K(4)", "C(5)", "C1(6)"] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("Q(1)".parse::<FamilySpec>().is_err());
    }
}
