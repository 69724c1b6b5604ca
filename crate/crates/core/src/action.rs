//! Finite permutation groups and their actions on graphs and posets:
//! freeness, strong regularity, discontinuity, quotients, twisted products
//! and the actions induced on Hom posets.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Guards, Result};
use crate::graph::{self, bfs_distances, EquivRelation, Extended, Graph};
use crate::poset::{ChainPoset, MapPoset, Poset};

/// A finite group given by permutations of a reference set `0..degree`.
/// Element `0` is the identity; products compose right to left.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    perms: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// For each non-identity element `g`, a pair `(s, h)` with
    /// `g = generators[s] * h` and `h` found earlier.
    word: Vec<Option<(usize, usize)>>,
}

/// Equal when the same permutations are listed in the same order.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.perms == other.perms
    }
}

impl Eq for FiniteGroup {}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl FiniteGroup {
    /// Closes the generators under composition.
    pub fn generate(degree: usize, generators: Vec<Vec<usize>>, guards: &Guards) -> Result<Self> {
        for g in &generators {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidInput("generator is not a permutation of the reference set".into()));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut word = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (s, gen) in generators.iter().enumerate() {
                let p = compose(gen, &perms[h]);
                if !index.contains_key(&p) {
                    Guards::check("group order", perms.len() + 1, guards.group_order)?;
                    index.insert(p.clone(), perms.len());
                    perms.push(p);
                    word.push(Some((s, h)));
                    queue.push_back(perms.len() - 1);
                }
            }
        }
        let n = perms.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&perms[a], &perms[b])]).collect())
            .collect();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("finite group"))
            .collect();
        let generators = generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup { degree, perms, table, inverse, generators, word })
    }

    pub fn trivial() -> Self {
        FiniteGroup::generate(1, Vec::new(), &Guards::default()).expect("trivial group")
    }

    pub fn z2() -> Self {
        FiniteGroup::generate(2, vec![vec![1, 0]], &Guards::default()).expect("Z2")
    }

    /// The symmetric group on `n` letters, generated by a transposition and
    /// an `n`-cycle.
    pub fn symmetric(n: usize, guards: &Guards) -> Result<Self> {
        if n <= 1 {
            return FiniteGroup::generate(n.max(1), Vec::new(), guards);
        }
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::generate(n, vec![t, c], guards)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The element of `self` whose permutation is `p`.
    pub fn find(&self, p: &[usize]) -> Option<usize> {
        self.perms.iter().position(|q| q == p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A group action on `0..n`, stored as one permutation per group element.
/// For a left action `perm(g)[x] = g.x`; for a right action
/// `perm(g)[x] = x.g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    group: FiniteGroup,
    side: Side,
    perms: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    perms: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ActionJson {
    group: GroupJson,
    side: Side,
    on: ActsOn,
    maps: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActsOn {
    Graph,
    Poset,
}

impl Action {
    /// Checks the permutations and the action axioms.
    pub fn new(group: FiniteGroup, side: Side, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::ActionAxiom(format!(
                "{} maps for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        let n = perms.first().map_or(0, Vec::len);
        for (g, p) in perms.iter().enumerate() {
            if p.len() != n || !is_permutation(p) {
                return Err(Error::ActionAxiom(format!("map of element {g} is not a bijection")));
            }
        }
        if perms[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::ActionAxiom("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                let expected = match side {
                    Side::Left => compose(&perms[a], &perms[b]),
                    Side::Right => compose(&perms[b], &perms[a]),
                };
                if perms[ab] != expected {
                    return Err(Error::ActionAxiom(format!(
                        "compatibility fails for elements {a} and {b}"
                    )));
                }
            }
        }
        Ok(Action { group, side, perms })
    }

    /// Extends the images of the group generators to the whole group.
    pub fn from_generators(group: FiniteGroup, side: Side, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::ActionAxiom("one image per generator required".into()));
        }
        let n = images.first().map_or(0, Vec::len);
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(group.order());
        perms.push((0..n).collect());
        for g in 1..group.order() {
            let (s, h) = group.word[g].expect("non-identity elements have words");
            let p = match side {
                Side::Left => compose(&images[s], &perms[h]),
                Side::Right => compose(&perms[h], &images[s]),
            };
            perms.push(p);
        }
        Action::new(group, side, perms)
    }

    /// A `Z2` action by an involution.
    pub fn involution(side: Side, perm: Vec<usize>) -> Result<Self> {
        Action::from_generators(FiniteGroup::z2(), side, vec![perm])
    }

    pub fn trivial(group: FiniteGroup, side: Side, n: usize) -> Self {
        let perms = vec![(0..n).collect(); group.order()];
        Action { group, side, perms }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.perms[0].len()
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    /// The same action read on the other side via `g.x = x.g^-1`.
    pub fn flipped(&self) -> Action {
        let perms = (0..self.group.order())
            .map(|g| self.perms[self.group.inv(g)].clone())
            .collect();
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        Action { group: self.group.clone(), side, perms }
    }

    pub fn to_left(&self) -> Action {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => self.flipped(),
        }
    }

    pub fn to_right(&self) -> Action {
        match self.side {
            Side::Right => self.clone(),
            Side::Left => self.flipped(),
        }
    }

    /// The action on the images of a map that is equivariant by
    /// construction: `perm'(g)[i] = index(g . elems[i])`.
    pub fn transported<F: Fn(usize, usize) -> usize>(&self, n: usize, f: F) -> Result<Action> {
        let perms = (0..self.group.order())
            .map(|g| (0..n).map(|i| f(g, i)).collect())
            .collect();
        Action::new(self.group.clone(), self.side, perms)
    }

    /// Every permutation must be a graph automorphism.
    pub fn validate_graph(&self, g: &Graph) -> Result<()> {
        if self.degree() != g.n() {
            return Err(Error::ActionAxiom("action degree differs from vertex count".into()));
        }
        for (e, p) in self.perms.iter().enumerate() {
            for (u, v) in g.edges() {
                if !g.adjacent(p[u], p[v]) {
                    return Err(Error::ActionAxiom(format!(
                        "element {e} breaks adjacency {u}~{v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every permutation must be an order automorphism.
    pub fn validate_poset(&self, p: &Poset) -> Result<()> {
        if self.degree() != p.len() {
            return Err(Error::ActionAxiom("action degree differs from poset size".into()));
        }
        for (e, perm) in self.perms.iter().enumerate() {
            for (x, y) in p.covers() {
                if !p.leq(perm[x], perm[y]) {
                    return Err(Error::ActionAxiom(format!("element {e} breaks order {x}<{y}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| self.perms[g].iter().enumerate().all(|(x, &y)| x != y))
    }

    /// No non-identity element maps an element to another element with a
    /// common upper bound.
    pub fn is_strongly_regular(&self, p: &Poset) -> bool {
        (1..self.group.order()).all(|g| {
            (0..p.len()).all(|u| !p.up(u).intersects(p.up(self.perms[g][u])))
        })
    }

    /// Orbit partition, blocks ordered by minimum member.
    pub fn orbits(&self) -> EquivRelation {
        let label: Vec<usize> = (0..self.degree())
            .map(|x| self.perms.iter().map(|p| p[x]).min().expect("nonempty group"))
            .collect();
        EquivRelation::from_labels(&label)
    }

    /// Smallest distance between a vertex and a different point of its
    /// orbit.
    pub fn orbit_distance(&self, g: &Graph) -> Extended {
        let mut best = Extended::Infinite;
        for v in 0..g.n() {
            let d = bfs_distances(g, v);
            for e in 1..self.group.order() {
                let w = self.perms[e][v];
                if d[w] != usize::MAX {
                    best = best.min(Extended::Finite(d[w]));
                }
            }
        }
        best
    }

    /// `g.v` lies outside the ball of radius `d - 1` around `v` for every
    /// vertex `v` and non-identity `g`.
    pub fn is_d_discontinuous(&self, g: &Graph, d: usize) -> bool {
        self.orbit_distance(g) >= Extended::Finite(d)
    }

    pub fn to_json(&self, on: ActsOn) -> String {
        let j = ActionJson {
            group: GroupJson { perms: self.group.perms.clone() },
            side: self.side,
            on,
            maps: self.perms.clone(),
        };
        serde_json::to_string(&j).expect("action serializes")
    }

    pub fn from_json(s: &str) -> Result<(Self, ActsOn)> {
        let j: ActionJson = serde_json::from_str(s)?;
        let degree = j.group.perms.first().map_or(1, Vec::len);
        let group = FiniteGroup::generate(degree, j.group.perms.clone(), &Guards::default())?;
        // Reorder the maps to follow the generated element order.
        let mut maps = vec![Vec::new(); group.order()];
        for (p, m) in j.group.perms.iter().zip(j.maps) {
            let g = group
                .find(p)
                .ok_or_else(|| Error::InvalidInput("group listing is not closed".into()))?;
            maps[g] = m;
        }
        if j.group.perms.len() != group.order() {
            return Err(Error::InvalidInput("group listing is not closed".into()));
        }
        Ok((Action::new(group, j.side, maps)?, j.on))
    }
}

pub fn quotient_graph(g: &Graph, a: &Action) -> Result<Graph> {
    graph::quotient(g, &a.orbits())
}

#[derive(Clone, Debug)]
pub struct PosetQuotient {
    pub poset: Poset,
    pub orbit_of: Vec<usize>,
    /// True when the action is free and strongly regular, so that the
    /// order complex of the quotient is the quotient of the order complex.
    pub topological_guarantee: bool,
}

/// Orbit poset: `[x] <= [y]` iff `g.x <= y` for some `g`.
pub fn quotient_poset(p: &Poset, a: &Action) -> Result<PosetQuotient> {
    a.validate_poset(p)?;
    let orbits = a.orbits();
    let k = orbits.block_count();
    let down = (0..k)
        .map(|j| {
            let y = orbits.blocks()[j][0];
            let mut d = BitSet::new(k);
            for x in p.down(y).iter() {
                d.insert(orbits.block_of(x));
            }
            d
        })
        .collect();
    let labels = orbits.blocks().iter().map(|b| p.labels()[b[0]].clone()).collect();
    let poset = Poset::from_down_sets(down)?.with_labels(labels)?;
    Ok(PosetQuotient {
        poset,
        orbit_of: (0..p.len()).map(|x| orbits.block_of(x)).collect(),
        topological_guarantee: a.is_free() && a.is_strongly_regular(p),
    })
}

/// Transports a left action on `P` to `Chain P`.
pub fn chain_action(a: &Action, cp: &ChainPoset) -> Result<Action> {
    a.transported(cp.chains.len(), |g, i| {
        let mut c: Vec<usize> = cp.chains[i].iter().map(|&x| a.apply(g, x)).collect();
        c.sort_unstable();
        cp.index_of(&c).expect("automorphisms map chains to chains")
    })
}

/// Restricts an action on `P` to the atom graph `P^1`.
pub fn atom_action(a: &Action, p: &Poset) -> Result<Action> {
    let atoms = p.atoms();
    let pos: HashMap<usize, usize> = atoms.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    a.transported(atoms.len(), |g, i| pos[&a.apply(g, atoms[i])])
}

/// Checks that a free action on `P` is `2^k`-discontinuous on
/// `(Chain^k P)^1`.
pub fn check_chain_discontinuity(p: &Poset, a: &Action, k: usize, guards: &Guards) -> Result<bool> {
    if !a.is_free() {
        return Err(Error::NotFree);
    }
    a.validate_poset(p)?;
    let mut cur = p.clone();
    let mut act = a.clone();
    for _ in 0..k {
        let cp = crate::poset::chain_poset(&cur, guards)?;
        act = chain_action(&act, &cp)?;
        cur = cp.poset;
    }
    let g = crate::poset::atom_graph(&cur);
    let on_atoms = atom_action(&act, &cur)?;
    Ok(on_atoms.is_d_discontinuous(&g, 1 << k))
}

/// `T x_G H`: orbits of `(t, h)` under `g.(t, h) = (t.g^-1, g.h)`.
#[derive(Clone, Debug)]
pub struct TwistedProduct {
    pub graph: Graph,
    /// Orbit index of each product vertex `t * |H| + h`.
    pub orbit_of: Vec<usize>,
    /// Smallest product vertex of each orbit.
    pub reps: Vec<usize>,
    /// Right action induced by a right action on `H` commuting with the
    /// left one, when supplied.
    pub right_action: Option<Action>,
}

impl TwistedProduct {
    pub fn vertex(&self, t: usize, h: usize, h_len: usize) -> usize {
        self.orbit_of[t * h_len + h]
    }
}

pub fn twisted_product(
    t: &Graph,
    t_right: &Action,
    h: &Graph,
    h_left: &Action,
    h_extra_right: Option<&Action>,
) -> Result<TwistedProduct> {
    if t_right.group() != h_left.group() {
        return Err(Error::MismatchedGroups);
    }
    let t_right = t_right.to_right();
    let h_left = h_left.to_left();
    t_right.validate_graph(t)?;
    h_left.validate_graph(h)?;
    let group = t_right.group();
    let nh = h.n();
    let n = t.n() * nh;
    let label: Vec<usize> = (0..n)
        .map(|v| {
            let (tv, hv) = (v / nh, v % nh);
            (0..group.order())
                .map(|g| t_right.apply(group.inv(g), tv) * nh + h_left.apply(g, hv))
                .min()
                .expect("nonempty group")
        })
        .collect();
    let rel = EquivRelation::from_labels(&label);
    let prod = graph::product(t, h);
    let reps: Vec<usize> = rel.blocks().iter().map(|b| b[0]).collect();
    let graph = graph::quotient(&prod, &rel)?.with_labels(
        reps.iter()
            .map(|&v| format!("[{},{}]", t.labels()[v / nh], h.labels()[v % nh]))
            .collect(),
    )?;
    let orbit_of: Vec<usize> = (0..n).map(|v| rel.block_of(v)).collect();
    let right_action = match h_extra_right {
        None => None,
        Some(r) => {
            let r = r.to_right();
            r.validate_graph(h)?;
            for g in 0..group.order() {
                for s in 0..r.group().order() {
                    for x in 0..nh {
                        if h_left.apply(g, r.apply(s, x)) != r.apply(s, h_left.apply(g, x)) {
                            return Err(Error::ActionAxiom(
                                "extra right action does not commute with the left action".into(),
                            ));
                        }
                    }
                }
            }
            let act = r.transported(reps.len(), |s, i| {
                let v = reps[i];
                orbit_of[(v / nh) * nh + r.apply(s, v % nh)]
            })?;
            Some(act)
        }
    };
    Ok(TwistedProduct { graph, orbit_of, reps, right_action })
}

/// Right action of `S_n` on `K_n` through `x.g = g^-1(x)`.
pub fn symmetric_right_action(n: usize, guards: &Guards) -> Result<Action> {
    let group = FiniteGroup::symmetric(n, guards)?;
    let perms = (0..group.order()).map(|g| group.element(g).to_vec()).collect();
    Ok(Action::new(group, Side::Left, perms)?.flipped())
}

/// The subposet of fixed elements, in increasing index order.
pub fn fixed_subposet(p: &Poset, a: &Action) -> (Poset, Vec<usize>) {
    let fixed: Vec<usize> = (0..p.len())
        .filter(|&x| (0..a.group().order()).all(|g| a.apply(g, x) == x))
        .collect();
    (p.induced(&fixed), fixed)
}

/// `Poset_G(P, Q)`: equivariant monotone maps between posets with left
/// actions of the same group, ordered pointwise.
pub fn equivariant_poset_maps(
    p: &Poset,
    pa: &Action,
    q: &Poset,
    qa: &Action,
    guards: &Guards,
) -> Result<MapPoset> {
    if pa.group() != qa.group() {
        return Err(Error::MismatchedGroups);
    }
    let pa = pa.to_left();
    let qa = qa.to_left();
    pa.validate_poset(p)?;
    qa.validate_poset(q)?;
    let order = p.linear_extension();
    let mut f = vec![usize::MAX; p.len()];
    let mut out = Vec::new();

    struct Ctx<'a> {
        p: &'a Poset,
        q: &'a Poset,
        pa: &'a Action,
        qa: &'a Action,
        order: Vec<usize>,
        limit: usize,
    }

    fn go(c: &Ctx, depth: usize, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        if depth == c.order.len() {
            Guards::check("poset maps", out.len() + 1, c.limit)?;
            out.push(f.clone());
            return Ok(());
        }
        let x = c.order[depth];
        let below_ok = |f: &[usize], v: usize| c.p.lower_covers(x).iter().all(|&y| c.q.leq(f[y], v));
        if f[x] != usize::MAX {
            if below_ok(f, f[x]) {
                go(c, depth + 1, f, out)?;
            }
            return Ok(());
        }
        let mut cand = BitSet::full(c.q.len());
        for &y in c.p.lower_covers(x) {
            cand.intersect_with(c.q.up(f[y]));
        }
        for v in cand.iter() {
            let mut assigned = Vec::new();
            let mut ok = true;
            for g in 0..c.pa.group().order() {
                let (y, w) = (c.pa.apply(g, x), c.qa.apply(g, v));
                if f[y] == usize::MAX {
                    f[y] = w;
                    assigned.push(y);
                } else if f[y] != w {
                    ok = false;
                    break;
                }
            }
            if ok {
                go(c, depth + 1, f, out)?;
            }
            for y in assigned {
                f[y] = usize::MAX;
            }
        }
        Ok(())
    }

    let ctx = Ctx { p, q, pa: &pa, qa: &qa, order, limit: guards.poset_maps };
    if p.is_empty() {
        out.push(Vec::new());
    } else {
        go(&ctx, 0, &mut f, &mut out)?;
    }
    out.sort_unstable();
    crate::poset::pointwise_poset(q, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{chain_poset, Poset};

    fn reflexive_cycle(n: usize) -> Graph {
        Graph::cycle(n).unwrap().reflexive_closure()
    }

    fn antipodal(n: usize) -> Action {
        Action::involution(Side::Left, (0..n).map(|i| (i + n / 2) % n).collect()).unwrap()
    }

    fn k2_swap() -> Action {
        Action::involution(Side::Right, vec![1, 0]).unwrap()
    }

    #[test]
    fn group_closure() {
        let g = Guards::default();
        assert_eq!(FiniteGroup::generate(3, vec![vec![1, 0, 2]], &g).unwrap().order(), 2);
        let s3 = FiniteGroup::generate(3, vec![vec![1, 0, 2], vec![0, 2, 1]], &g).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::trivial().order(), 1);
        assert_eq!(FiniteGroup::symmetric(4, &g).unwrap().order(), 24);
        let tight = Guards { group_order: 5, ..Guards::default() };
        assert!(FiniteGroup::symmetric(3, &tight).unwrap_err().is_guard());
    }

    #[test]
    fn validation() {
        let c6 = reflexive_cycle(6);
        assert!(antipodal(6).validate_graph(&c6).is_ok());
        let broken = Action::involution(Side::Left, vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert!(matches!(broken.validate_graph(&c6), Err(Error::ActionAxiom(_))));
        assert!(Action::new(FiniteGroup::z2(), Side::Left, vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn strong_regularity() {
        // a, b below a common top c, swapped.
        let p = Poset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
        let swap = Action::involution(Side::Left, vec![1, 0, 2]).unwrap();
        assert!(!swap.is_strongly_regular(&p));
        let triv = Action::trivial(FiniteGroup::trivial(), Side::Left, 3);
        assert!(triv.is_strongly_regular(&p));
        assert!(triv.is_free());
    }

    #[test]
    fn discontinuity() {
        assert!(antipodal(10).is_d_discontinuous(&reflexive_cycle(10), 5));
        assert!(!antipodal(6).is_d_discontinuous(&reflexive_cycle(6), 4));
        assert!(antipodal(6).is_d_discontinuous(&reflexive_cycle(6), 3));
        assert!(antipodal(6).is_d_discontinuous(&reflexive_cycle(6), 1));
    }

    #[test]
    fn quotients() {
        let q = quotient_graph(&reflexive_cycle(6), &antipodal(6)).unwrap();
        assert!(graph::are_isomorphic(&q, &Graph::complete(3).unwrap().reflexive_closure()));
        let g = Guards::default();
        let s3 = FiniteGroup::symmetric(3, &g).unwrap();
        let perms = (0..6).map(|a| (0..6).map(|b| s3.mul(a, b)).collect()).collect();
        let regular = Action::new(s3, Side::Left, perms).unwrap();
        let points = Graph::empty(6).reflexive_closure();
        let one = quotient_graph(&points, &regular).unwrap();
        assert_eq!((one.n(), one.loop_count()), (1, 1));
    }

    #[test]
    fn twisted_products() {
        let k2 = Graph::complete(2).unwrap();
        let t13 = twisted_product(&k2, &k2_swap(), &reflexive_cycle(6), &antipodal(6), None).unwrap();
        assert_eq!(t13.graph.n(), 6);
        assert!((0..6).all(|v| t13.graph.degree(v) == 3));
        assert_eq!(t13.graph.loop_count(), 0);
        let k4 = twisted_product(&k2, &k2_swap(), &reflexive_cycle(4), &antipodal(4), None).unwrap();
        assert!(graph::are_isomorphic(&k4.graph, &Graph::complete(4).unwrap()));
        let c5 = Graph::cycle(5).unwrap();
        let triv = Action::trivial(FiniteGroup::trivial(), Side::Right, 2);
        let trivh = Action::trivial(FiniteGroup::trivial(), Side::Left, 5);
        let plain = twisted_product(&k2, &triv, &c5, &trivh, None).unwrap();
        assert!(graph::are_isomorphic(&plain.graph, &graph::product(&k2, &c5)));
        assert!(matches!(
            twisted_product(&k2, &k2_swap(), &c5, &trivh, None),
            Err(Error::MismatchedGroups)
        ));
    }

    #[test]
    fn chain_discontinuity_small() {
        let g = Guards::default();
        let p = crate::families::cycle_face_poset(4).unwrap();
        for k in 0..=2 {
            assert!(check_chain_discontinuity(&p.poset, &p.antipodal, k, &g).unwrap());
        }
        let fixed = Action::involution(Side::Left, vec![0, 1]).unwrap();
        assert!(matches!(
            check_chain_discontinuity(&Poset::antichain(2), &fixed, 1, &g),
            Err(Error::NotFree)
        ));
    }

    #[test]
    fn chain_action_is_valid() {
        let g = Guards::default();
        let p = crate::families::cycle_face_poset(3).unwrap();
        let cp = chain_poset(&p.poset, &g).unwrap();
        let ca = chain_action(&p.antipodal, &cp).unwrap();
        assert!(ca.validate_poset(&cp.poset).is_ok());
        assert!(ca.is_free() && ca.is_strongly_regular(&cp.poset));
    }

    #[test]
    fn equivariant_maps_trivial_group() {
        let g = Guards::default();
        let two = Poset::chain(2);
        let t = Action::trivial(FiniteGroup::trivial(), Side::Left, 2);
        let e = equivariant_poset_maps(&two, &t, &two, &t, &g).unwrap();
        assert_eq!(e.maps, crate::poset::poset_maps(&two, &two, &g).unwrap().maps);
    }

    #[test]
    fn json_round_trip() {
        let a = antipodal(6);
        let (b, on) = Action::from_json(&a.to_json(ActsOn::Graph)).unwrap();
        assert_eq!((b, on), (a, ActsOn::Graph));
    }
}
