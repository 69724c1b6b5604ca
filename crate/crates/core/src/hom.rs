//! Hom posets of multihomomorphisms and the explicit poset maps between
//! them: currying, product splitting, quotient comparison and loop
//! addition.

use std::collections::HashMap;

use crate::action::{quotient_graph, quotient_poset, Action, FiniteGroup, Side};
use crate::bitset::BitSet;
use crate::error::{Error, Guards, Result};
use crate::graph::{self, common_neighbors, Graph};
use crate::poset::{chain_poset, ChainPoset, Poset, PosetMap};

/// `v -> alpha[v]`, a nonempty target set per source vertex.
pub type MultiHom = Vec<BitSet>;

/// Edge condition: every edge `u ~ v` of `g` (loops included) has
/// `alpha[u] x alpha[v]` inside the adjacency of `h`.
pub fn is_multihom(alpha: &[BitSet], g: &Graph, h: &Graph) -> bool {
    alpha.len() == g.n()
        && alpha.iter().all(|s| !s.is_empty() && s.universe() == h.n())
        && g.edges().iter().all(|&(u, v)| {
            alpha[u].is_subset(&common_neighbors(h, &alpha[v]))
        })
}

pub fn rank(alpha: &[BitSet]) -> usize {
    alpha.iter().map(|s| s.len() - 1).sum()
}

fn as_lists(alpha: &[BitSet]) -> Vec<Vec<usize>> {
    alpha.iter().map(BitSet::to_vec).collect()
}

/// `Hom(G, H)` with elements sorted by rank, then lexicographically by
/// their assignment lists.
#[derive(Clone, Debug)]
pub struct HomPoset {
    source: Graph,
    target: Graph,
    elements: Vec<MultiHom>,
    index: HashMap<MultiHom, usize>,
    poset: Poset,
}

impl HomPoset {
    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[MultiHom] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MultiHom {
        &self.elements[i]
    }

    pub fn index_of(&self, alpha: &[BitSet]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn rank(&self, i: usize) -> usize {
        rank(&self.elements[i])
    }

    /// Rank-zero elements, i.e. the graph homomorphisms.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).take_while(|&i| self.rank(i) == 0).collect()
    }

    /// One JSON array of target lists per line.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for a in &self.elements {
            s.push_str(&serde_json::to_string(&as_lists(a)).expect("lists serialize"));
            s.push('\n');
        }
        s
    }

    /// Rebuilds the poset from stored assignments, re-validating each one.
    pub fn from_json_lines(g: &Graph, h: &Graph, text: &str) -> Result<HomPoset> {
        let mut elements = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let lists: Vec<Vec<usize>> = serde_json::from_str(line)?;
            if lists.iter().flatten().any(|&x| x >= h.n()) {
                return Err(Error::InvalidInput("target vertex out of range".into()));
            }
            let alpha: MultiHom = lists.into_iter().map(|l| BitSet::from_indices(h.n(), l)).collect();
            if !is_multihom(&alpha, g, h) {
                return Err(Error::InvalidInput("stored element is not a multihomomorphism".into()));
            }
            elements.push(alpha);
        }
        HomPoset::from_elements(g.clone(), h.clone(), elements)
    }

    fn from_elements(source: Graph, target: Graph, mut elements: Vec<MultiHom>) -> Result<HomPoset> {
        elements.sort_by_cached_key(|a| (rank(a), as_lists(a)));
        elements.dedup();
        let index: HashMap<MultiHom, usize> =
            elements.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let n = elements.len();
        // Lower covers drop one target vertex from one set; every subset of
        // a multihomomorphism with nonempty sets is again one.
        let mut down: Vec<BitSet> = Vec::with_capacity(n);
        for (j, a) in elements.iter().enumerate() {
            let mut d = BitSet::singleton(n, j);
            let mut b = a.clone();
            for v in 0..a.len() {
                if a[v].len() < 2 {
                    continue;
                }
                for x in a[v].iter() {
                    b[v].remove(x);
                    let i = *index.get(&b).ok_or_else(|| {
                        Error::InvalidInput("element set is not closed under shrinking".into())
                    })?;
                    d.union_with(&down[i]);
                    b[v].insert(x);
                }
            }
            down.push(d);
        }
        let labels = elements.iter().map(|a| format_multihom(a)).collect();
        let poset = Poset::from_down_sets(down)?.with_labels(labels)?;
        Ok(HomPoset { source, target, elements, index, poset })
    }
}

pub fn format_multihom(alpha: &[BitSet]) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .map(|s| {
            let xs: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", xs.join(","))
        })
        .collect();
    format!("({})", parts.join(","))
}

struct Enum<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    looped_h: BitSet,
    limit: usize,
}

impl Enum<'_> {
    fn allowed(&self, v: usize, alpha: &[BitSet], assigned: &BitSet) -> BitSet {
        let mut cand = if self.g.has_loop(v) { self.looped_h.clone() } else { BitSet::full(self.h.n()) };
        for u in self.g.neighbors(v).iter() {
            if u != v && assigned.contains(u) {
                cand.intersect_with(&common_neighbors(self.h, &alpha[u]));
            }
        }
        cand
    }

    fn go(&self, depth: usize, alpha: &mut Vec<BitSet>, assigned: &mut BitSet, out: &mut Vec<MultiHom>) -> Result<()> {
        if depth == self.order.len() {
            Guards::check("hom elements", out.len() + 1, self.limit)?;
            out.push(alpha.clone());
            return Ok(());
        }
        let v = self.order[depth];
        let cand = self.allowed(v, alpha, assigned);
        if cand.is_empty() {
            return Ok(());
        }
        let looped = self.g.has_loop(v);
        let members = cand.to_vec();
        assigned.insert(v);
        // Grow sets in increasing member order; for a looped source vertex
        // the set has to stay a clique.
        let mut stack: Vec<(usize, BitSet)> = vec![(0, cand.clone())];
        let mut current = BitSet::new(self.h.n());
        self.grow(v, looped, &members, 0, &cand, &mut current, depth, alpha, assigned, out)?;
        stack.clear();
        assigned.remove(v);
        alpha[v] = BitSet::new(self.h.n());
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &self,
        v: usize,
        looped: bool,
        members: &[usize],
        from: usize,
        cand: &BitSet,
        current: &mut BitSet,
        depth: usize,
        alpha: &mut Vec<BitSet>,
        assigned: &mut BitSet,
        out: &mut Vec<MultiHom>,
    ) -> Result<()> {
        for (k, &x) in members.iter().enumerate().skip(from) {
            if !cand.contains(x) {
                continue;
            }
            current.insert(x);
            alpha[v] = current.clone();
            if self.forward_ok(v, alpha, assigned) {
                self.go(depth + 1, alpha, assigned, out)?;
            }
            let next = if looped { cand.intersection(self.h.neighbors(x)) } else { cand.clone() };
            self.grow(v, looped, members, k + 1, &next, current, depth, alpha, assigned, out)?;
            current.remove(x);
        }
        Ok(())
    }

    /// Every unassigned neighbor of `v` keeps a nonempty candidate set.
    fn forward_ok(&self, v: usize, alpha: &[BitSet], assigned: &BitSet) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&w| w != v && !assigned.contains(w))
            .all(|w| !self.allowed(w, alpha, assigned).is_empty())
    }
}

/// Vertex order for enumeration: repeatedly the unassigned vertex with the
/// most assigned neighbors, ties by degree (descending) then index.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut done = BitSet::new(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done.contains(v))
            .max_by_key(|&v| (g.neighbors(v).intersection(&done).len(), g.degree(v), std::cmp::Reverse(v)))
            .expect("unassigned vertex");
        done.insert(v);
        order.push(v);
    }
    order
}

/// Enumerates `Hom(G, H)` completely.
pub fn hom_poset(g: &Graph, h: &Graph, guards: &Guards) -> Result<HomPoset> {
    let e = Enum {
        g,
        h,
        order: search_order(g),
        looped_h: h.looped_vertices(),
        limit: guards.hom_elements,
    };
    let mut out = Vec::new();
    let mut alpha = vec![BitSet::new(h.n()); g.n()];
    let mut assigned = BitSet::new(g.n());
    e.go(0, &mut alpha, &mut assigned, &mut out)?;
    HomPoset::from_elements(g.clone(), h.clone(), out)
}

/// `(beta . alpha)(v)` is the union of `beta(x)` over `x` in `alpha(v)`.
pub fn compose_multihoms(alpha: &[BitSet], beta: &[BitSet]) -> MultiHom {
    let k = beta.first().map_or(0, BitSet::universe);
    alpha
        .iter()
        .map(|s| {
            let mut r = BitSet::new(k);
            for x in s.iter() {
                r.union_with(&beta[x]);
            }
            r
        })
        .collect()
}

/// The induced action `(g.alpha)(v) = g.alpha(g^-1 v)` on `Hom(G, H)`.
/// Either side may be acted on trivially; right actions are converted to
/// left ones first.
pub fn induced_hom_action(hom: &HomPoset, on_source: Option<&Action>, on_target: Option<&Action>) -> Result<Action> {
    let group = match (on_source, on_target) {
        (Some(a), Some(b)) => {
            if a.group() != b.group() {
                return Err(Error::MismatchedGroups);
            }
            a.group().clone()
        }
        (Some(a), None) => a.group().clone(),
        (None, Some(b)) => b.group().clone(),
        (None, None) => FiniteGroup::trivial(),
    };
    let src = on_source.map(Action::to_left);
    let tgt = on_target.map(Action::to_left);
    if let Some(a) = &src {
        a.validate_graph(hom.source())?;
    }
    if let Some(b) = &tgt {
        b.validate_graph(hom.target())?;
    }
    let n = hom.target().n();
    let perms = (0..group.order())
        .map(|g| {
            let ginv = group.inv(g);
            (0..hom.len())
                .map(|i| {
                    let alpha = hom.element(i);
                    let moved: MultiHom = (0..alpha.len())
                        .map(|v| {
                            let pre = src.as_ref().map_or(v, |a| a.apply(ginv, v));
                            match &tgt {
                                None => alpha[pre].clone(),
                                Some(b) => BitSet::from_indices(n, alpha[pre].iter().map(|x| b.apply(g, x))),
                            }
                        })
                        .collect();
                    hom.index_of(&moved).expect("automorphisms preserve the edge condition")
                })
                .collect()
        })
        .collect();
    Action::new(group, Side::Left, perms)
}

/// Vertex of `G^T` for a function `t -> f[t]`.
fn encode(f: &[usize], g_n: usize) -> usize {
    graph::encode_function(f, g_n)
}

/// `phi(alpha)(h) = { f : f(t) in alpha(t,h) for all t }` on
/// `Hom(T x H, G) -> Hom(H, G^T)`.
pub fn curry(alpha: &[BitSet], t_n: usize, h_n: usize, g_n: usize) -> MultiHom {
    let size = g_n.pow(t_n as u32);
    (0..h_n)
        .map(|h| {
            let mut out = BitSet::new(size);
            let choices: Vec<Vec<usize>> = (0..t_n).map(|t| alpha[t * h_n + h].to_vec()).collect();
            let mut f = vec![0usize; t_n];
            let mut idx = vec![0usize; t_n];
            loop {
                for t in 0..t_n {
                    f[t] = choices[t][idx[t]];
                }
                out.insert(encode(&f, g_n));
                let mut t = 0;
                while t < t_n {
                    idx[t] += 1;
                    if idx[t] < choices[t].len() {
                        break;
                    }
                    idx[t] = 0;
                    t += 1;
                }
                if t == t_n {
                    break;
                }
            }
            out
        })
        .collect()
}

/// `psi(beta)(t,h) = { f(t) : f in beta(h) }`.
pub fn uncurry(beta: &[BitSet], t_n: usize, h_n: usize, g_n: usize) -> MultiHom {
    let mut out = vec![BitSet::new(g_n); t_n * h_n];
    for (h, fs) in beta.iter().enumerate() {
        for code in fs.iter() {
            let f = graph::decode_function(code, t_n, g_n);
            for t in 0..t_n {
                out[t * h_n + h].insert(f[t]);
            }
        }
    }
    out
}

/// Outcome of checking a pair of adjoint poset maps `phi: A -> B`,
/// `psi: B -> A` on every element.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AdjunctionReport {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub phi_well_defined: bool,
    pub psi_well_defined: bool,
    pub phi_monotone: bool,
    pub psi_monotone: bool,
    /// `psi . phi = id` on the domain.
    pub retraction: bool,
    /// `phi . psi` compared with the identity in the expected direction.
    pub comparison: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.phi_well_defined
            && self.psi_well_defined
            && self.phi_monotone
            && self.psi_monotone
            && self.retraction
            && self.comparison
    }
}

fn pointwise_leq(a: &[BitSet], b: &[BitSet]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

fn check_adjunction<FP, FS>(
    dom: &HomPoset,
    cod: &HomPoset,
    phi: FP,
    psi: FS,
    expect_geq: bool,
) -> (AdjunctionReport, Option<PosetMap>, Option<PosetMap>)
where
    FP: Fn(&[BitSet]) -> MultiHom,
    FS: Fn(&[BitSet]) -> MultiHom,
{
    let phi_img: Vec<Option<usize>> = dom.elements().iter().map(|a| cod.index_of(&phi(a))).collect();
    let psi_img: Vec<Option<usize>> = cod.elements().iter().map(|b| dom.index_of(&psi(b))).collect();
    let phi_ok = phi_img.iter().all(Option::is_some);
    let psi_ok = psi_img.iter().all(Option::is_some);
    let phi_map = phi_ok.then(|| PosetMap { image: phi_img.iter().map(|x| x.unwrap()).collect(), codomain: cod.len() });
    let psi_map = psi_ok.then(|| PosetMap { image: psi_img.iter().map(|x| x.unwrap()).collect(), codomain: dom.len() });
    let phi_monotone = phi_map.as_ref().is_some_and(|m| m.is_monotone(dom.poset(), cod.poset()));
    let psi_monotone = psi_map.as_ref().is_some_and(|m| m.is_monotone(cod.poset(), dom.poset()));
    let retraction = dom.elements().iter().all(|a| psi(&phi(a)) == *a);
    let comparison = cod.elements().iter().all(|b| {
        let back = phi(&psi(b));
        if expect_geq {
            pointwise_leq(b, &back)
        } else {
            pointwise_leq(&back, b)
        }
    });
    let report = AdjunctionReport {
        domain_size: dom.len(),
        codomain_size: cod.len(),
        phi_well_defined: phi_ok,
        psi_well_defined: psi_ok,
        phi_monotone,
        psi_monotone,
        retraction,
        comparison,
    };
    (report, phi_map, psi_map)
}

/// Both sides of the exponential adjunction, enumerated in full.
#[derive(Clone, Debug)]
pub struct CurryCheck {
    pub product_hom: HomPoset,
    pub exponential_hom: HomPoset,
    pub phi: Option<PosetMap>,
    pub psi: Option<PosetMap>,
    pub report: AdjunctionReport,
}

/// Checks `phi: Hom(T x H, G) -> Hom(H, G^T)` and `psi` in the other
/// direction: `psi . phi = id` and `phi . psi >= id`.
pub fn check_curry(t: &Graph, h: &Graph, g: &Graph, guards: &Guards) -> Result<CurryCheck> {
    let exp = graph::exponential(t, g, guards)?;
    let product_hom = hom_poset(&graph::product(t, h), g, guards)?;
    let exponential_hom = hom_poset(h, &exp, guards)?;
    let (tn, hn, gn) = (t.n(), h.n(), g.n());
    let (report, phi, psi) = check_adjunction(
        &product_hom,
        &exponential_hom,
        |a| curry(a, tn, hn, gn),
        |b| uncurry(b, tn, hn, gn),
        true,
    );
    Ok(CurryCheck { product_hom, exponential_hom, phi, psi, report })
}

impl CurryCheck {
    /// `phi` intertwines the actions induced by a right action on `T` and
    /// a left action on `H` of the same group.
    pub fn is_equivariant(&self, t_right: &Action, h_left: &Action) -> Result<bool> {
        let phi = self.phi.as_ref().ok_or_else(|| Error::InvalidInput("phi is not well defined".into()))?;
        let t_right = t_right.to_right();
        let h_left = h_left.to_left();
        let (tn, hn) = (t_right.degree(), h_left.degree());
        // (t,h).g = (t.g, g^-1 h) is a right action on T x H.
        let group = t_right.group();
        let prod_right = t_right.transported(tn * hn, |g, v| {
            t_right.apply(g, v / hn) * hn + h_left.apply(group.inv(g), v % hn)
        })?;
        let on_prod = induced_hom_action(&self.product_hom, Some(&prod_right), None)?;
        // G^T carries (g.f)(t) = f(t.g).
        let gn = self.product_hom.target().n();
        let size = gn.pow(tn as u32);
        let exp_left = Action::new(
            group.clone(),
            Side::Left,
            (0..group.order())
                .map(|g| {
                    (0..size)
                        .map(|code| {
                            let f = graph::decode_function(code, tn, gn);
                            let moved: Vec<usize> = (0..tn).map(|x| f[t_right.apply(g, x)]).collect();
                            encode(&moved, gn)
                        })
                        .collect()
                })
                .collect(),
        )?;
        let on_exp = induced_hom_action(&self.exponential_hom, Some(&h_left), Some(&exp_left))?;
        Ok((0..group.order()).all(|g| {
            (0..self.product_hom.len()).all(|i| phi.image[on_prod.apply(g, i)] == on_exp.apply(g, phi.image[i]))
        }))
    }
}

/// `phi(alpha)(x)` is the union of `alpha` over the atoms below `x`;
/// `psi(f)(a) = f(a)`. Between `Hom(P^1, G)` and `Poset(P, Hom(1, G))`.
///
/// The map poset can be far larger than `Hom(P^1, G)`, so its order is
/// never materialized: monotonicity of `psi` is checked on pairs of maps
/// that differ at one point, which generate the pointwise order.
#[derive(Clone, Debug)]
pub struct PosetCurryCheck {
    pub hom: HomPoset,
    pub cliques: HomPoset,
    /// Monotone maps `P -> Hom(1, G)` in lexicographic order.
    pub maps: Vec<Vec<usize>>,
    pub phi: Option<PosetMap>,
    pub psi: Option<PosetMap>,
    pub report: AdjunctionReport,
}

impl PosetCurryCheck {
    pub fn maps_poset(&self) -> Result<crate::poset::MapPoset> {
        crate::poset::pointwise_poset(self.cliques.poset(), self.maps.clone())
    }
}

pub fn poset_curry(alpha: &[BitSet], p: &Poset, cliques: &HomPoset) -> Option<Vec<usize>> {
    let atoms = p.atoms();
    let pos: HashMap<usize, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let n = cliques.target().n();
    (0..p.len())
        .map(|x| {
            let mut s = BitSet::new(n);
            for a in p.atoms_below(x) {
                s.union_with(&alpha[pos[&a]]);
            }
            cliques.index_of(&[s])
        })
        .collect()
}

pub fn poset_uncurry(f: &[usize], p: &Poset, cliques: &HomPoset) -> MultiHom {
    p.atoms().iter().map(|&a| cliques.element(f[a])[0].clone()).collect()
}

fn maps_leq(q: &Poset, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| q.leq(a, b))
}

pub fn check_poset_curry(p: &Poset, g: &Graph, guards: &Guards) -> Result<PosetCurryCheck> {
    let p1 = crate::poset::atom_graph(p);
    let hom = hom_poset(&p1, g, guards)?;
    let cliques = hom_poset(&Graph::one(), g, guards)?;
    let q = cliques.poset();
    let maps = crate::poset::monotone_maps(p, q, guards.poset_maps)?;
    let map_index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();

    let phi_img: Vec<Option<usize>> = hom
        .elements()
        .iter()
        .map(|a| poset_curry(a, p, &cliques).and_then(|f| map_index.get(f.as_slice()).copied()))
        .collect();
    let psi_img: Vec<Option<usize>> = maps.iter().map(|f| hom.index_of(&poset_uncurry(f, p, &cliques))).collect();
    let phi_ok = phi_img.iter().all(Option::is_some);
    let psi_ok = psi_img.iter().all(Option::is_some);
    let phi = phi_ok.then(|| PosetMap { image: phi_img.iter().map(|x| x.unwrap()).collect(), codomain: maps.len() });
    let psi = psi_ok.then(|| PosetMap { image: psi_img.iter().map(|x| x.unwrap()).collect(), codomain: hom.len() });
    let phi_monotone = phi.as_ref().is_some_and(|m| {
        (0..hom.len()).all(|a| hom.poset().upper_covers(a).iter().all(|&b| maps_leq(q, &maps[m.image[a]], &maps[m.image[b]])))
    });
    let psi_monotone = psi.as_ref().is_some_and(|m| {
        let mut f2 = Vec::new();
        maps.iter().enumerate().all(|(i, f)| {
            (0..p.len()).all(|x| {
                q.upper_covers(f[x]).iter().all(|&v| {
                    f2.clone_from(f);
                    f2[x] = v;
                    match map_index.get(f2.as_slice()) {
                        Some(&j) => hom.poset().leq(m.image[i], m.image[j]),
                        None => true,
                    }
                })
            })
        })
    });
    let (retraction, comparison) = match (&phi, &psi) {
        (Some(phi), Some(psi)) => (
            (0..hom.len()).all(|i| psi.image[phi.image[i]] == i),
            (0..maps.len()).all(|j| maps_leq(q, &maps[phi.image[psi.image[j]]], &maps[j])),
        ),
        _ => (false, false),
    };
    let report = AdjunctionReport {
        domain_size: hom.len(),
        codomain_size: maps.len(),
        phi_well_defined: phi_ok,
        psi_well_defined: psi_ok,
        phi_monotone,
        psi_monotone,
        retraction,
        comparison,
    };
    Ok(PosetCurryCheck { hom, cliques, maps, phi, psi, report })
}

/// Projections of `alpha(v)` inside `G x H` onto both factors.
pub fn product_split(alpha: &[BitSet], g_n: usize, h_n: usize) -> (MultiHom, MultiHom) {
    alpha
        .iter()
        .map(|s| {
            let mut a = BitSet::new(g_n);
            let mut b = BitSet::new(h_n);
            for x in s.iter() {
                a.insert(x / h_n);
                b.insert(x % h_n);
            }
            (a, b)
        })
        .unzip()
}

/// `rho(alpha, beta)(v) = alpha(v) x beta(v)`.
pub fn product_merge(alpha: &[BitSet], beta: &[BitSet]) -> MultiHom {
    let h_n = beta.first().map_or(0, BitSet::universe);
    let g_n = alpha.first().map_or(0, BitSet::universe);
    alpha
        .iter()
        .zip(beta)
        .map(|(a, b)| BitSet::from_indices(g_n * h_n, a.iter().flat_map(|x| b.iter().map(move |y| x * h_n + y))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProductSplitReport {
    pub product_size: usize,
    pub pair_count: usize,
    /// `split . merge = id`.
    pub split_after_merge: bool,
    /// `merge . split >= id`.
    pub merge_after_split: bool,
    pub merge_injective: bool,
    pub monotone: bool,
}

pub fn check_product_split(t: &Graph, g: &Graph, h: &Graph, guards: &Guards) -> Result<ProductSplitReport> {
    let prod = hom_poset(t, &graph::product(g, h), guards)?;
    let hg = hom_poset(t, g, guards)?;
    let hh = hom_poset(t, h, guards)?;
    let (gn, hn) = (g.n(), h.n());
    let mut merged = std::collections::HashSet::new();
    let mut split_after_merge = true;
    for a in hg.elements() {
        for b in hh.elements() {
            let r = product_merge(a, b);
            if prod.index_of(&r).is_none() || product_split(&r, gn, hn) != (a.clone(), b.clone()) {
                split_after_merge = false;
            }
            merged.insert(r);
        }
    }
    let pairs = hg.len() * hh.len();
    let mut merge_after_split = true;
    let mut monotone = true;
    let split_idx: Vec<(Option<usize>, Option<usize>)> = prod
        .elements()
        .iter()
        .map(|x| {
            let (a, b) = product_split(x, gn, hn);
            if !pointwise_leq(x, &product_merge(&a, &b)) {
                merge_after_split = false;
            }
            (hg.index_of(&a), hh.index_of(&b))
        })
        .collect();
    if split_idx.iter().any(|(a, b)| a.is_none() || b.is_none()) {
        merge_after_split = false;
        monotone = false;
    } else {
        for (x, y) in prod.poset().covers() {
            let (ax, bx) = split_idx[x];
            let (ay, by) = split_idx[y];
            if !hg.poset().leq(ax.unwrap(), ay.unwrap()) || !hh.poset().leq(bx.unwrap(), by.unwrap()) {
                monotone = false;
            }
        }
    }
    Ok(ProductSplitReport {
        product_size: prod.len(),
        pair_count: pairs,
        split_after_merge,
        merge_after_split,
        merge_injective: merged.len() == pairs,
        monotone,
    })
}

/// Walk-length hypothesis for comparing `Hom(T,G)/Γ` with `Hom(T,G/Γ)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WalkHypothesis {
    /// Lengths of the fundamental cycles of a BFS spanning forest of `T`.
    pub cycle_lengths: Vec<usize>,
    /// Lengths actually tested: the cycle lengths together with 4.
    pub tested: Vec<usize>,
    /// First `(length, v, g.v)` with a walk of that length, if any.
    pub witness: Option<(usize, usize, usize)>,
}

impl WalkHypothesis {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Fundamental cycle lengths of a BFS spanning forest; a loop counts as a
/// cycle of length 1.
pub fn fundamental_cycle_lengths(t: &Graph) -> Vec<usize> {
    let n = t.n();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in t.neighbors(u).iter() {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut lengths = Vec::new();
    for (u, v) in t.edges() {
        if parent[v] == u || parent[u] == v {
            continue;
        }
        let (mut a, mut b, mut len) = (u, v, 1);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths.dedup();
    lengths
}

/// Vertices reachable from `v` by walks of exactly `l` steps.
fn walk_reach(g: &Graph, v: usize, l: usize) -> BitSet {
    let mut cur = BitSet::singleton(g.n(), v);
    for _ in 0..l {
        let mut next = BitSet::new(g.n());
        for x in cur.iter() {
            next.union_with(g.neighbors(x));
        }
        cur = next;
    }
    cur
}

pub fn walk_hypothesis(t: &Graph, g: &Graph, a: &Action) -> WalkHypothesis {
    let cycle_lengths = fundamental_cycle_lengths(t);
    let mut tested = cycle_lengths.clone();
    tested.push(4);
    tested.sort_unstable();
    tested.dedup();
    let a = a.to_left();
    let mut witness = None;
    'outer: for &l in &tested {
        for v in 0..g.n() {
            let reach = walk_reach(g, v, l);
            for e in 1..a.group().order() {
                let w = a.apply(e, v);
                if reach.contains(w) {
                    witness = Some((l, v, w));
                    break 'outer;
                }
            }
        }
    }
    WalkHypothesis { cycle_lengths, tested, witness }
}

#[derive(Clone, Debug)]
pub struct QuotientComparison {
    pub hypothesis: WalkHypothesis,
    pub free: bool,
    pub strongly_regular: bool,
    /// `p_T` maps every element to one of the same rank.
    pub rank_preserving: bool,
    /// `p_T` is constant on orbits.
    pub well_defined: bool,
    pub iso: bool,
    /// From orbit poset elements to elements of `Hom(T, G/Γ)`.
    pub map: PosetMap,
    pub hom: HomPoset,
    pub orbit_poset: Poset,
    pub target: HomPoset,
}

/// Builds `Hom(T,G)/Γ -> Hom(T,G/Γ)` and checks it element by element.
pub fn quotient_compare(t: &Graph, g: &Graph, a: &Action, guards: &Guards) -> Result<QuotientComparison> {
    let a = a.to_left();
    a.validate_graph(g)?;
    let hypothesis = walk_hypothesis(t, g, &a);
    let hom = hom_poset(t, g, guards)?;
    let on_hom = induced_hom_action(&hom, None, Some(&a))?;
    let free = on_hom.is_free();
    let strongly_regular = on_hom.is_strongly_regular(hom.poset());
    let quot = quotient_poset(hom.poset(), &on_hom)?;
    let orbits = a.orbits();
    let gq = quotient_graph(g, &a)?;
    let target = hom_poset(t, &gq, guards)?;
    let project = |alpha: &MultiHom| -> MultiHom {
        alpha
            .iter()
            .map(|s| BitSet::from_indices(gq.n(), s.iter().map(|x| orbits.block_of(x))))
            .collect()
    };
    let mut rank_preserving = true;
    let mut well_defined = true;
    let k = quot.poset.len();
    let mut image = vec![usize::MAX; k];
    for (i, alpha) in hom.elements().iter().enumerate() {
        let p = project(alpha);
        let j = target.index_of(&p).expect("projection of a multihomomorphism is one");
        if rank(&p) != rank(alpha) {
            rank_preserving = false;
        }
        let o = quot.orbit_of[i];
        if image[o] == usize::MAX {
            image[o] = j;
        } else if image[o] != j {
            well_defined = false;
        }
    }
    let map = PosetMap { image, codomain: target.len() };
    let bijective = k == target.len() && map.is_surjective();
    let order_iso = bijective
        && (0..k).all(|x| (0..k).all(|y| quot.poset.leq(x, y) == target.poset().leq(map.image[x], map.image[y])));
    Ok(QuotientComparison {
        hypothesis,
        free,
        strongly_regular,
        rank_preserving,
        well_defined,
        iso: well_defined && order_iso,
        map,
        hom,
        orbit_poset: quot.poset,
        target,
    })
}

/// The maps `i`, `j`, `h` relating `Hom(T°, G)` and `Hom(T, G)` for a fine
/// graph `G`, where `T°` adds all loops to `T`.
#[derive(Clone, Debug)]
pub struct LoopAddition {
    pub looped_hom: HomPoset,
    pub hom: HomPoset,
    pub chains: ChainPoset,
    /// `Hom(T°, G) -> Hom(T, G)`.
    pub i: PosetMap,
    /// `Chain Hom(T, G) -> Hom(T°, G)`.
    pub j: PosetMap,
    /// `Chain Hom(T, G) -> Hom(T, G)`.
    pub h: PosetMap,
    pub checks: LoopAdditionChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LoopAdditionChecks {
    pub monotone: bool,
    /// `j(Chain i(c)) >= max c` for chains `c` of `Hom(T°, G)`.
    pub j_after_chain_i: bool,
    /// `i(j(c)) <= h(c)`.
    pub i_after_j_below_h: bool,
    /// `h(c) >= max c`.
    pub h_above_top: bool,
}

impl LoopAdditionChecks {
    pub fn holds(&self) -> bool {
        self.monotone && self.j_after_chain_i && self.i_after_j_below_h && self.h_above_top
    }
}

fn nu_meet(g: &Graph, m: &BitSet) -> BitSet {
    let nu = common_neighbors(g, m);
    let nu2 = common_neighbors(g, &nu);
    nu.intersection(&nu2)
}

pub fn loop_addition_maps(t: &Graph, g: &Graph, guards: &Guards) -> Result<LoopAddition> {
    if let Some(v) = (0..t.n()).find(|&v| t.neighbors(v).is_empty()) {
        return Err(Error::IsolatedVertex(v));
    }
    if !graph::is_fine(g, guards)? {
        return Err(Error::NotFine);
    }
    let looped_t = t.reflexive_closure();
    let looped_hom = hom_poset(&looped_t, g, guards)?;
    let hom = hom_poset(t, g, guards)?;
    let chains = chain_poset(hom.poset(), guards)?;
    let i = PosetMap {
        image: looped_hom
            .elements()
            .iter()
            .map(|a| hom.index_of(a).expect("T° homomorphisms restrict to T"))
            .collect(),
        codomain: hom.len(),
    };
    let meet_union = |chain: &[usize]| -> MultiHom {
        (0..t.n())
            .map(|u| {
                let mut s = BitSet::new(g.n());
                for &r in chain {
                    s.union_with(&nu_meet(g, &hom.element(r)[u]));
                }
                s
            })
            .collect()
    };
    let top_of = |chain: &[usize]| *chain.iter().max_by_key(|&&x| hom.poset().down(x).len()).expect("nonempty");
    let mut j_img = Vec::with_capacity(chains.chains.len());
    let mut h_img = Vec::with_capacity(chains.chains.len());
    let mut i_after_j_below_h = true;
    let mut h_above_top = true;
    for c in &chains.chains {
        let jm = meet_union(c);
        let top = hom.element(top_of(c));
        let hm: MultiHom = jm.iter().zip(top).map(|(a, b)| a.union(b)).collect();
        let jj = looped_hom
            .index_of(&jm)
            .ok_or_else(|| Error::InvalidInput("j does not land in Hom(T°, G)".into()))?;
        let hh = hom
            .index_of(&hm)
            .ok_or_else(|| Error::InvalidInput("h does not land in Hom(T, G)".into()))?;
        if !hom.poset().leq(i.image[jj], hh) {
            i_after_j_below_h = false;
        }
        if !pointwise_leq(top, &hm) {
            h_above_top = false;
        }
        j_img.push(jj);
        h_img.push(hh);
    }
    let j = PosetMap { image: j_img, codomain: looped_hom.len() };
    let h = PosetMap { image: h_img, codomain: hom.len() };
    let monotone = i.is_monotone(looped_hom.poset(), hom.poset())
        && j.is_monotone(&chains.poset, looped_hom.poset())
        && h.is_monotone(&chains.poset, hom.poset());
    // Chains of Hom(T°,G) are chains of Hom(T,G) under i.
    let looped_chains = crate::poset::chains(looped_hom.poset(), guards.chains)?;
    let j_after_chain_i = looped_chains.iter().all(|c| {
        let mut mapped: Vec<usize> = c.iter().map(|&x| i.image[x]).collect();
        mapped.sort_unstable();
        let top = *c.iter().max_by_key(|&&x| looped_hom.poset().down(x).len()).expect("nonempty");
        let idx = chains.index_of(&mapped).expect("image of a chain is a chain");
        looped_hom.poset().leq(top, j.image[idx])
    });
    Ok(LoopAddition {
        looped_hom,
        hom,
        chains,
        i,
        j,
        h,
        checks: LoopAdditionChecks { monotone, j_after_chain_i, i_after_j_below_h, h_above_top },
    })
}
