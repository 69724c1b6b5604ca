//! Experiment registry, content-hashed cache and report rendering.

use std::cell::Cell;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::action::{self, Action, Side};
use crate::error::{Error, Guards, Result};
use crate::families::{self, k2_swap};
use crate::graph::{self, Extended, Graph};
use crate::hom::{self, HomPoset};
use crate::homology::{self, ChainComplex, Field, HomologyResult};
use crate::poset::{self, Poset, SimplicialComplex};

pub const CACHE_ENV: &str = "HOMLAB_CACHE_DIR";

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    key: String,
    sha256: String,
}

/// Directory of values keyed by the hash of a canonical key. Each file is
/// a JSON header line followed by the value bytes.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// Uses `dir` if given, else the directory named by `HOMLAB_CACHE_DIR`.
    pub fn from_env_or(dir: Option<&Path>) -> Result<Option<Self>> {
        match dir {
            Some(d) => Ok(Some(Cache::new(d)?)),
            None => match std::env::var_os(CACHE_ENV) {
                Some(d) if !d.is_empty() => Ok(Some(Cache::new(PathBuf::from(d))?)),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    pub fn store(&self, key: &str, value: &str) -> Result<()> {
        let header = CacheHeader { key: key.to_owned(), sha256: sha256_hex(value.as_bytes()) };
        let mut text = serde_json::to_string(&header)?;
        text.push('\n');
        text.push_str(value);
        // Write then rename so a concurrent reader never sees half a file.
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, text)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(&self, key: &str) -> Result<Option<String>> {
        let path = self.path_for(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: &str| Error::CacheCorrupt(format!("{}: {why}", path.display()));
        let (head, value) = text.split_once('\n').ok_or_else(|| corrupt("missing header"))?;
        let header: CacheHeader = serde_json::from_str(head).map_err(|_| corrupt("bad header"))?;
        if header.key != key {
            return Err(corrupt("key mismatch"));
        }
        if header.sha256 != sha256_hex(value.as_bytes()) {
            return Err(corrupt("hash mismatch"));
        }
        Ok(Some(value.to_owned()))
    }
}

/// Settings shared by every experiment in one invocation.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub guards: Guards,
    pub cache: Option<Cache>,
}

/// Per-run view of a session; counts cache hits.
pub struct Ctx<'a> {
    pub session: &'a Session,
    hits: Cell<usize>,
}

impl<'a> Ctx<'a> {
    pub fn new(session: &'a Session) -> Self {
        Ctx { session, hits: Cell::new(0) }
    }

    pub fn guards(&self) -> &Guards {
        &self.session.guards
    }

    pub fn cache_hits(&self) -> usize {
        self.hits.get()
    }

    fn cached<T>(&self, key: &str, load: impl Fn(&str) -> Result<T>, save: impl Fn(&T) -> String, build: impl FnOnce() -> Result<T>) -> Result<T> {
        let Some(cache) = &self.session.cache else { return build() };
        if let Some(text) = cache.load(key)? {
            self.hits.set(self.hits.get() + 1);
            return load(&text);
        }
        let v = build()?;
        cache.store(key, &save(&v))?;
        Ok(v)
    }

    pub fn hom(&self, g: &Graph, h: &Graph) -> Result<HomPoset> {
        let key = format!("hom\n{}\n{}", g.to_json(), h.to_json());
        self.cached(
            &key,
            |t| HomPoset::from_json_lines(g, h, t),
            HomPoset::to_json_lines,
            || hom::hom_poset(g, h, self.guards()),
        )
    }

    pub fn hom_homology(&self, g: &Graph, h: &Graph, field: Field) -> Result<HomologyResult> {
        let key = format!("homology {field:?}\n{}\n{}", g.to_json(), h.to_json());
        self.cached(&key, HomologyResult::from_json, HomologyResult::to_json, || {
            let hp = self.hom(g, h)?;
            homology::poset_homology(hp.poset(), field, self.guards())
        })
    }

    pub fn poset_homology(&self, p: &Poset, field: Field) -> Result<HomologyResult> {
        let key = format!("poset homology {field:?}\n{}", p.to_json());
        self.cached(&key, HomologyResult::from_json, HomologyResult::to_json, || {
            homology::poset_homology(p, field, self.guards())
        })
    }
}

/// Measured values of one run, as readable fragments.
#[derive(Clone, Debug, Default)]
pub struct Measured {
    pub pass: bool,
    parts: Vec<String>,
}

impl Measured {
    fn new() -> Self {
        Measured { pass: true, parts: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        let what = what.into();
        self.parts.push(if ok { what } else { format!("FAILED {what}") });
        self.pass &= ok;
    }

    pub fn text(&self) -> String {
        self.parts.join("; ")
    }
}

pub struct Experiment {
    pub id: &'static str,
    /// Acceptance criterion number, if this experiment is one.
    pub criterion: Option<u8>,
    pub description: &'static str,
    pub expected: &'static str,
    run: fn(&Ctx) -> Result<Measured>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A size guard stopped the run.
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub id: String,
    pub criterion: Option<u8>,
    pub status: Status,
    pub pass: bool,
    pub expected: String,
    pub measured: String,
    pub seconds: f64,
    pub cache_hits: usize,
}

pub fn registry() -> Vec<Experiment> {
    vec![
        Experiment {
            id: "hom-k2-kn-sphere",
            criterion: Some(1),
            description: "Hom(K2,Kn) for n = 2..5",
            expected: "integral homology of S^(n-2)",
            run: hom_k2_kn_sphere,
        },
        Experiment {
            id: "tkm-invariants",
            criterion: Some(2),
            description: "T(k,m) for k = 1,2 and m = 2,3,5",
            expected: "chi = k+2; odd girth m for odd m; max degree 3^k",
            run: tkm_invariants,
        },
        Experiment {
            id: "spherical-graphs",
            criterion: Some(3),
            description: "S(1,m) for m = 0,1,2",
            expected: "chi(S(1,m)) = 3 for m = 1,2; S(1,0) = K4; Hom(K2,S(1,1)) ~ S^1",
            run: spherical_graphs,
        },
        Experiment {
            id: "hom-k2-tkm-circle",
            criterion: Some(4),
            description: "Hom(K2,T(1,m)) for m = 5,6",
            expected: "integral homology of S^1",
            run: hom_k2_tkm_circle,
        },
        Experiment {
            id: "mycielski-suspension",
            criterion: Some(5),
            description: "generalized Mycielski graphs of K2 and K3",
            expected: "M_2 K2 = C5; chi(M^k_2 K2) = k+2 for k <= 2; Hom(K2, M_m G) is a homology suspension of Hom(K2, G)",
            run: mycielski_suspension,
        },
        Experiment {
            id: "quotient-commutation",
            criterion: Some(6),
            description: "Hom(K2, K2 x C1(2m))/Z2 against Hom(K2, (K2 x C1(2m))/Z2) for m = 3,4,5",
            expected: "walk hypothesis holds; induced action free and strongly regular; comparison map an isomorphism",
            run: quotient_commutation,
        },
        Experiment {
            id: "adjunction-round-trips",
            criterion: Some(7),
            description: "exponential adjunction on (K2, C1(6), K3) and poset adjunction on (cycle poset of order 6, C1(6))",
            expected: "psi.phi = id; phi.psi compares with id; maps monotone",
            run: adjunction_round_trips,
        },
        Experiment {
            id: "equivariant-poset-hom",
            criterion: Some(8),
            description: "Z2-poset maps from the 6- and 4-cycle posets into Hom(K2,K3)",
            expected: "homology equals that of Hom(T(1,3),K3); the 4-cycle case and Hom(K4,K3) are both empty",
            run: equivariant_poset_hom,
        },
        Experiment {
            id: "fineness-loop-addition",
            criterion: Some(9),
            description: "fineness of reflexive cycles and subdivided polygons; Hom with a looped source",
            expected: "all fine; Hom(K2 looped, C1(8)) has the homology of Hom(K2, C1(8))",
            run: fineness_loop_addition,
        },
        Experiment {
            id: "universality",
            criterion: Some(10),
            description: "graphs realizing a square with antipodal action and six points with the regular S3 action",
            expected: "Hom(K2, csorba(square)) ~ S^1; univ(points6,3) = K3; Hom(K3,K3) is six points",
            run: universality,
        },
        Experiment {
            id: "discontinuity",
            criterion: Some(11),
            description: "antipodal action on (Chain^k of the 8-cycle poset)^1 and on C1(10)",
            expected: "2^k-discontinuous for k = 0..3; C1(10) is 5-discontinuous",
            run: discontinuity,
        },
        Experiment {
            id: "coloring-constructions",
            criterion: Some(12),
            description: "subdivision colorings of the square and octahedron; equivariant colorings of T(k,3)",
            expected: "proper (n+2)-colorings; equivariant homomorphisms T(k,3) -> K(k+2) for k = 1,2",
            run: coloring_constructions,
        },
        Experiment {
            id: "property-suites",
            criterion: Some(13),
            description: "structural invariants on constructed graphs, posets and complexes",
            expected: "symmetric adjacency; boundary squares to zero; Euler and universal-coefficient consistency; closure and subdivision invariance; chromatic number agrees with brute force",
            run: property_suites,
        },
        Experiment {
            id: "csorba-square",
            criterion: None,
            description: "Hom(K2, csorba(square))",
            expected: "integral homology of S^1",
            run: csorba_square,
        },
    ]
}

pub fn find_experiment(id: &str) -> Result<Experiment> {
    registry().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownExperiment(id.to_owned()))
}

fn execute(e: &Experiment, session: &Session) -> RunReport {
    let ctx = Ctx::new(session);
    let start = Instant::now();
    let outcome = (e.run)(&ctx);
    let seconds = start.elapsed().as_secs_f64();
    let (status, measured) = match outcome {
        Ok(m) if m.pass => (Status::Pass, m.text()),
        Ok(m) => (Status::Fail, m.text()),
        Err(err) if err.is_guard() => (Status::Skipped, format!("skipped (guard): {err}")),
        Err(err) => (Status::Error, format!("error: {err}")),
    };
    RunReport {
        id: e.id.to_owned(),
        criterion: e.criterion,
        status,
        pass: status == Status::Pass,
        expected: e.expected.to_owned(),
        measured,
        seconds,
        cache_hits: ctx.cache_hits(),
    }
}

pub fn run_experiment(id: &str, session: &Session) -> Result<RunReport> {
    Ok(execute(&find_experiment(id)?, session))
}

/// Runs experiments on up to `workers` threads; reports come back in the
/// order of `ids`.
pub fn run_all(ids: &[&str], session: &Session, workers: usize) -> Result<Vec<RunReport>> {
    let all = registry();
    let chosen: Vec<&Experiment> = ids
        .iter()
        .map(|id| all.iter().find(|e| e.id == *id).ok_or_else(|| Error::UnknownExperiment((*id).to_owned())))
        .collect::<Result<_>>()?;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunReport>>> = Mutex::new(vec![None; chosen.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, chosen.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(e) = chosen.get(i) else { break };
                let r = execute(e, session);
                slots.lock().expect("report slots")[i] = Some(r);
            });
        }
    });
    Ok(slots.into_inner().expect("report slots").into_iter().map(|r| r.expect("every slot filled")).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidInput(format!("unknown report format `{s}`"))),
        }
    }
}

fn status_word(r: &RunReport) -> &'static str {
    match r.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped (guard)",
        Status::Error => "ERROR",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn render(reports: &[RunReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        ReportFormat::Csv => {
            let mut out = String::from("id,pass,expected,measured,seconds\n");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.3}",
                    csv_field(&r.id),
                    r.pass,
                    csv_field(&r.expected),
                    csv_field(&r.measured),
                    r.seconds
                );
            }
            out
        }
        ReportFormat::Text => {
            let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
            let st_w = reports.iter().map(|r| status_word(r).len()).max().unwrap_or(6).max(6);
            let mut out = format!("{:<id_w$}  {:<st_w$}  {:>8}  measured\n", "id", "status", "seconds");
            for r in reports {
                let _ = writeln!(out, "{:<id_w$}  {:<st_w$}  {:>8.2}  {}", r.id, status_word(r), r.seconds, r.measured);
            }
            out
        }
    }
}

/// Compact description of reduced homology: nonzero groups by degree.
pub fn describe(h: &HomologyResult) -> String {
    let mut parts = Vec::new();
    for d in -1..=h.dim {
        let mut g = Vec::new();
        match h.betti_at(d) {
            0 => {}
            1 => g.push("Z".to_owned()),
            b => g.push(format!("Z^{b}")),
        }
        g.extend(h.torsion_at(d).iter().map(|t| format!("Z/{t}")));
        if !g.is_empty() {
            parts.push(format!("H{d}={}", g.join("+")));
        }
    }
    if parts.is_empty() {
        "acyclic".to_owned()
    } else {
        parts.join(",")
    }
}

fn k(n: usize) -> Result<Graph> {
    Graph::complete(n)
}

fn reflexive_cycle(n: usize) -> Result<Graph> {
    Ok(Graph::cycle(n)?.reflexive_closure())
}

fn hom_k2_kn_sphere(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    for n in 2..=5 {
        let h = ctx.hom_homology(&k(2)?, &k(n)?, Field::Z)?;
        m.check(format!("n={n}: {}", describe(&h)), h.is_sphere(n as i64 - 2));
    }
    Ok(m)
}

fn tkm_invariants(_: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    for kk in 1..=2 {
        for mm in [2, 3, 5] {
            let t = families::twisted_toroidal(kk, mm)?.graph;
            let chi = graph::chromatic_number(&t);
            m.check(format!("chi(T({kk},{mm}))={chi}"), chi == Extended::Finite(kk + 2));
            if mm % 2 == 1 {
                let og = graph::odd_girth(&t);
                m.check(format!("oddgirth(T({kk},{mm}))={og}"), og == Extended::Finite(mm));
                let deg = graph::graph_stats(&t).max_degree;
                m.check(format!("maxdeg(T({kk},{mm}))={deg}"), deg == 3usize.pow(kk as u32));
            }
        }
    }
    Ok(m)
}

fn spherical_graphs(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let g = ctx.guards();
    for mm in 1..=2 {
        let s = families::spherical_graph(1, mm, g)?.graph;
        let chi = graph::chromatic_number(&s);
        m.check(format!("chi(S(1,{mm}))={chi}"), chi == Extended::Finite(3));
    }
    let s0 = families::spherical_graph(1, 0, g)?.graph;
    m.check(format!("S(1,0)=K4: {}", graph::are_isomorphic(&s0, &k(4)?)), graph::are_isomorphic(&s0, &k(4)?));
    let s1 = families::spherical_graph(1, 1, g)?.graph;
    let h = ctx.hom_homology(&k(2)?, &s1, Field::Z)?;
    m.check(format!("Hom(K2,S(1,1)): {}", describe(&h)), h.is_sphere(1));
    Ok(m)
}

fn hom_k2_tkm_circle(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    for mm in [5, 6] {
        let t = families::twisted_toroidal(1, mm)?.graph;
        let h = ctx.hom_homology(&k(2)?, &t, Field::Z)?;
        m.check(format!("Hom(K2,T(1,{mm})): {}", describe(&h)), h.is_sphere(1));
    }
    Ok(m)
}

fn mycielski_suspension(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let m2k2 = families::mycielski(&k(2)?, 2)?;
    let iso = graph::are_isomorphic(&m2k2, &Graph::cycle(5)?);
    m.check(format!("M_2 K2 = C5: {iso}"), iso);
    for kk in 0..=2 {
        let chi = graph::chromatic_number(&families::iterated_mycielski(&k(2)?, 2, kk)?);
        m.check(format!("chi(M^{kk}_2 K2)={chi}"), chi == Extended::Finite(kk + 2));
    }
    for base in [2, 3] {
        let g = k(base)?;
        let a = ctx.hom_homology(&k(2)?, &g, Field::Z)?;
        for mm in [2, 3] {
            let b = ctx.hom_homology(&k(2)?, &families::mycielski(&g, mm)?, Field::Z)?;
            m.check(
                format!("Hom(K2,M_{mm} K{base}): {} over {}", describe(&b), describe(&a)),
                homology::suspension_check(&a, &b),
            );
        }
    }
    Ok(m)
}

/// Swap on `K2` times the antipodal map on `C1(2m)`, acting on the product.
pub fn diagonal_action(m: usize) -> Result<(Graph, Action)> {
    let c = reflexive_cycle(2 * m)?;
    let n = 2 * m;
    let g = graph::product(&k(2)?, &c);
    let perm = (0..2 * n).map(|v| (1 - v / n) * n + (v % n + m) % n).collect();
    Ok((g, Action::involution(Side::Left, perm)?))
}

fn quotient_commutation(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    for mm in 3..=5 {
        let (g, a) = diagonal_action(mm)?;
        let q = hom::quotient_compare(&k(2)?, &g, &a, ctx.guards())?;
        m.check(
            format!(
                "m={mm}: hypothesis={} free={} strongly_regular={} rank_preserving={} iso={} ({} orbits)",
                q.hypothesis.holds(),
                q.free,
                q.strongly_regular,
                q.rank_preserving,
                q.iso,
                q.orbit_poset.len()
            ),
            q.hypothesis.holds() && q.free && q.strongly_regular && q.rank_preserving && q.iso,
        );
    }
    Ok(m)
}

fn adjunction_round_trips(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let g = ctx.guards();
    let c6 = reflexive_cycle(6)?;
    let cc = hom::check_curry(&k(2)?, &c6, &k(3)?, g)?;
    let anti = Action::involution(Side::Left, (0..6).map(|i| (i + 3) % 6).collect())?;
    let equi = cc.is_equivariant(&k2_swap(), &anti)?;
    m.check(
        format!("(K2,C1(6),K3): {} -> {} elements, holds={}, equivariant={equi}", cc.report.domain_size, cc.report.codomain_size, cc.report.holds()),
        cc.report.holds() && equi,
    );
    let p = families::cycle_face_poset(3)?.poset;
    let pc = hom::check_poset_curry(&p, &c6, g)?;
    m.check(
        format!("(cycle poset 6, C1(6)): {} -> {} elements, holds={}", pc.report.domain_size, pc.report.codomain_size, pc.report.holds()),
        pc.report.holds(),
    );
    Ok(m)
}

fn equivariant_poset_hom(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let g = ctx.guards();
    let hk = ctx.hom(&k(2)?, &k(3)?)?;
    let flip = hom::induced_hom_action(&hk, Some(&k2_swap()), None)?;
    let c6 = families::cycle_face_poset(3)?;
    let maps6 = action::equivariant_poset_maps(&c6.poset, &c6.antipodal, hk.poset(), &flip, g)?;
    let h_maps = ctx.poset_homology(&maps6.poset, Field::Z)?;
    let t13 = families::twisted_toroidal(1, 3)?.graph;
    let h_t = ctx.hom_homology(&t13, &k(3)?, Field::Z)?;
    m.check(
        format!("{} maps: {}; Hom(T(1,3),K3): {}", maps6.maps.len(), describe(&h_maps), describe(&h_t)),
        h_maps.same_groups(&h_t),
    );
    let c4 = families::cycle_face_poset(2)?;
    let maps4 = action::equivariant_poset_maps(&c4.poset, &c4.antipodal, hk.poset(), &flip, g)?;
    let hk4 = ctx.hom(&k(4)?, &k(3)?)?;
    m.check(
        format!("cycle poset 4: {} maps; Hom(K4,K3): {} elements", maps4.maps.len(), hk4.len()),
        maps4.maps.is_empty() && hk4.is_empty(),
    );
    Ok(m)
}

/// Face poset of the `m`-gon.
pub fn polygon_face_poset(m: usize, guards: &Guards) -> Result<Poset> {
    let x = SimplicialComplex::new(m, (0..m).map(|i| vec![i.min((i + 1) % m), i.max((i + 1) % m)]).collect())?;
    Ok(poset::face_poset(&x, guards)?.poset)
}

fn fineness_loop_addition(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let g = ctx.guards();
    for mm in [3, 4] {
        let fine = graph::is_fine(&reflexive_cycle(2 * mm)?, g)?;
        m.check(format!("C1({}) fine={fine}", 2 * mm), fine);
    }
    for mm in 3..=5 {
        let cp = poset::chain_poset(&polygon_face_poset(mm, g)?, g)?;
        let fine = graph::is_fine(&poset::atom_graph(&cp.poset), g)?;
        m.check(format!("Chain({mm}-gon)^1 fine={fine}"), fine);
    }
    let c8 = reflexive_cycle(8)?;
    let looped = ctx.hom_homology(&k(2)?.reflexive_closure(), &c8, Field::Z)?;
    let plain = ctx.hom_homology(&k(2)?, &c8, Field::Z)?;
    m.check(format!("Hom(K2 looped,C1(8)): {}; Hom(K2,C1(8)): {}", describe(&looped), describe(&plain)), looped.same_groups(&plain));
    let la = hom::loop_addition_maps(&k(2)?, &c8, g)?;
    m.check(format!("loop addition maps valid={}", la.checks.holds()), la.checks.holds());
    Ok(m)
}

fn csorba_square_check(ctx: &Ctx, m: &mut Measured) -> Result<()> {
    let (x, a) = families::fixture("square", ctx.guards())?;
    let cs = families::csorba_graph(&x, &a, ctx.guards())?;
    let h = ctx.hom_homology(&k(2)?, &cs, Field::Z)?;
    m.check(format!("Hom(K2,csorba(square)) [{} vertices]: {}", cs.n(), describe(&h)), h.is_sphere(1));
    Ok(())
}

fn universality(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    csorba_square_check(ctx, &mut m)?;
    let (x, a) = families::fixture("points6", ctx.guards())?;
    let u = families::universality_graph(&x, 3, &a, ctx.guards())?;
    let iso = graph::are_isomorphic(&u, &k(3)?);
    m.check(format!("univ(points6,3)=K3: {iso}"), iso);
    let hk = ctx.hom(&k(3)?, &k(3)?)?;
    let h = ctx.hom_homology(&k(3)?, &k(3)?, Field::Z)?;
    let points = hk.len() == 6 && hk.atoms().len() == 6 && h.betti == vec![5] && h.torsion_at(0).is_empty();
    m.check(format!("Hom(K3,K3): {} elements, {} atoms, {}", hk.len(), hk.atoms().len(), describe(&h)), points);
    Ok(m)
}

fn csorba_square(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    csorba_square_check(ctx, &mut m)?;
    Ok(m)
}

fn discontinuity(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let c8 = families::cycle_face_poset(4)?;
    for kk in 0..=3 {
        let ok = action::check_chain_discontinuity(&c8.poset, &c8.antipodal, kk, ctx.guards())?;
        m.check(format!("k={kk}: {}-discontinuous={ok}", 1usize << kk), ok);
    }
    let anti = Action::involution(Side::Left, (0..10).map(|i| (i + 5) % 10).collect())?;
    let c10 = reflexive_cycle(10)?;
    let ok = anti.is_d_discontinuous(&c10, 5);
    m.check(format!("C1(10) 5-discontinuous={ok} (orbit distance {})", anti.orbit_distance(&c10)), ok);
    Ok(m)
}

fn coloring_constructions(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    for (name, n) in [("square", 1), ("octahedron", 2)] {
        let p = families::cross_polytope(n, 0, ctx.guards())?;
        let (g, col, colors) = families::subdivision_coloring(&p, ctx.guards())?;
        let proper = graph::check_homomorphism(&col, &g, &k(colors)?);
        m.check(format!("{name}: {colors} colors on {} vertices, proper={proper}", g.n()), proper && colors == n + 2);
    }
    for kk in 1..=2 {
        let c = families::toroidal_coloring(kk, 3)?;
        let ok = c.is_proper() && c.is_equivariant() && c.colors == kk + 2;
        m.check(
            format!("T({kk},3) -> K{}: proper={} equivariant={}", c.colors, c.is_proper(), c.is_equivariant()),
            ok,
        );
    }
    Ok(m)
}

/// Chromatic number by trying every assignment; for tiny graphs only.
pub fn brute_force_chromatic(g: &Graph) -> Extended {
    if g.has_loops() {
        return Extended::Infinite;
    }
    let n = g.n();
    for c in 0..=n {
        let total = (c as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        'assign: for code in 0..total {
            let mut col = vec![0; n];
            let mut x = code;
            for v in col.iter_mut() {
                *v = (x % c as u64) as usize;
                x /= c as u64;
            }
            for (u, v) in g.edges() {
                if col[u] == col[v] {
                    continue 'assign;
                }
            }
            return Extended::Finite(c);
        }
    }
    unreachable!("n colors always suffice")
}

/// Checks every structural invariant that applies to `p` and its order
/// complex; returns a short description of failures.
fn complex_invariants(ctx: &Ctx, name: &str, p: &Poset, m: &mut Measured) -> Result<()> {
    let g = ctx.guards();
    let cc = ChainComplex::from_poset(p, g)?;
    let z = homology::homology(&cc, Field::Z, g)?;
    let f2 = homology::homology(&cc, Field::Gf2, g)?;
    let ok = cc.boundary_squares_to_zero() && cc.reduced_euler() == z.reduced_euler() && homology::uct_consistent(&z, &f2);
    m.check(format!("{name}: {}", describe(&z)), ok);
    // Chain P has the same homology, and its atom graph is the
    // comparability graph of P.
    let chain = poset::chain_poset(p, g)?;
    let zc = homology::poset_homology(&chain.poset, Field::Z, g)?;
    let same = graph::are_isomorphic(&poset::atom_graph(&chain.poset), &poset::comparability_graph(p));
    m.check(format!("{name}: subdivision invariant, comparability identity"), zc.same_groups(&z) && same);
    Ok(())
}

fn property_suites(ctx: &Ctx) -> Result<Measured> {
    let mut m = Measured::new();
    let gd = ctx.guards();
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=5 {
        graphs.push((format!("K{n}"), k(n)?));
    }
    for n in [5, 6, 7] {
        graphs.push((format!("C{n}"), Graph::cycle(n)?));
    }
    for mm in [2, 3, 4] {
        graphs.push((format!("T(1,{mm})"), families::twisted_toroidal(1, mm)?.graph));
    }
    graphs.push(("T(2,3)".into(), families::twisted_toroidal(2, 3)?.graph));
    graphs.push(("S(1,0)".into(), families::spherical_graph(1, 0, gd)?.graph));
    graphs.push(("S(1,1)".into(), families::spherical_graph(1, 1, gd)?.graph));
    graphs.push(("M_3 K3".into(), families::mycielski(&k(3)?, 3)?));
    graphs.push(("C1(6)".into(), reflexive_cycle(6)?));
    let mut small = 0;
    for (name, g) in &graphs {
        m.check(format!("{name} symmetric"), g.is_symmetric());
        if g.n() <= 8 {
            small += 1;
            let (a, b) = (graph::chromatic_number(g), brute_force_chromatic(g));
            if a != b {
                m.check(format!("{name}: chi {a} vs brute force {b}"), false);
            }
        }
    }
    m.check(format!("chromatic number cross-checked on {small} graphs"), true);

    let hk23 = ctx.hom(&k(2)?, &k(3)?)?;
    let posets: Vec<(String, Poset)> = vec![
        ("cycle poset 6".into(), families::cycle_face_poset(3)?.poset),
        ("pentagon".into(), polygon_face_poset(5, gd)?),
        ("Hom(K2,K3)".into(), hk23.poset().clone()),
        ("octahedron".into(), families::cross_polytope(2, 0, gd)?.poset),
        ("empty".into(), Poset::antichain(0)),
    ];
    for (name, p) in &posets {
        complex_invariants(ctx, name, p, &mut m)?;
    }
    let kb = homology::klein_bottle();
    let z = homology::complex_homology(&kb, Field::Z, gd)?;
    let f2 = homology::complex_homology(&kb, Field::Gf2, gd)?;
    m.check(format!("Klein bottle: {}", describe(&z)), homology::uct_consistent(&z, &f2) && z.torsion_at(1) == [2]);

    // Closure maps from the adjunctions keep homology.
    let cc = hom::check_curry(&k(2)?, &k(2)?, &k(3)?, gd)?;
    if let (Some(phi), Some(psi)) = (&cc.phi, &cc.psi) {
        let p = cc.exponential_hom.poset();
        let (img, _) = homology::closure_reduce(p, &phi.after(psi))?;
        let (a, b) = (ctx.poset_homology(p, Field::Z)?, ctx.poset_homology(&img, Field::Z)?);
        m.check(format!("curry closure: {} -> {} elements, {}", p.len(), img.len(), describe(&b)), a.same_groups(&b));
    } else {
        m.check("curry closure maps defined", false);
    }
    let pc = hom::check_poset_curry(&families::cycle_face_poset(2)?.poset, &k(2)?.reflexive_closure(), gd)?;
    if let (Some(phi), Some(psi)) = (&pc.phi, &pc.psi) {
        let maps = pc.maps_poset()?.poset;
        let (img, _) = homology::closure_reduce(&maps, &phi.after(psi))?;
        let (a, b) = (ctx.poset_homology(&maps, Field::Z)?, ctx.poset_homology(&img, Field::Z)?);
        m.check(format!("poset curry closure: {} -> {} elements, {}", maps.len(), img.len(), describe(&b)), a.same_groups(&b));
    } else {
        m.check("poset curry closure maps defined", false);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_criteria_covered() {
        let r = registry();
        let mut ids: Vec<&str> = r.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
        let mut crit: Vec<u8> = r.iter().filter_map(|e| e.criterion).collect();
        crit.sort_unstable();
        assert_eq!(crit, (1..=13).collect::<Vec<u8>>());
        assert!(matches!(find_experiment("nope"), Err(Error::UnknownExperiment(_))));
    }

    #[test]
    fn cache_round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.load("k").unwrap(), None);
        cache.store("k", "value\nwith lines").unwrap();
        assert_eq!(cache.load("k").unwrap().as_deref(), Some("value\nwith lines"));
        let path = cache.path_for("k");
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("value", "vaLue")).unwrap();
        assert!(matches!(cache.load("k"), Err(Error::CacheCorrupt(_))));
    }

    #[test]
    fn cached_hom_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let session = Session { guards: Guards::default(), cache: Some(Cache::new(dir.path()).unwrap()) };
        let (k2, k4) = (k(2).unwrap(), k(4).unwrap());
        let ctx = Ctx::new(&session);
        let a = ctx.hom(&k2, &k4).unwrap();
        assert_eq!(ctx.cache_hits(), 0);
        let b = ctx.hom(&k2, &k4).unwrap();
        assert_eq!(ctx.cache_hits(), 1);
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.poset(), b.poset());
    }

    #[test]
    fn brute_force_matches_small() {
        assert_eq!(brute_force_chromatic(&Graph::cycle(5).unwrap()), Extended::Finite(3));
        assert_eq!(brute_force_chromatic(&Graph::empty(0)), Extended::Finite(0));
        assert_eq!(brute_force_chromatic(&Graph::one()), Extended::Infinite);
    }

    #[test]
    fn renders() {
        let r = RunReport {
            id: "x".into(),
            criterion: None,
            status: Status::Fail,
            pass: false,
            expected: "a, b".into(),
            measured: "c".into(),
            seconds: 0.5,
            cache_hits: 0,
        };
        let csv = render(std::slice::from_ref(&r), ReportFormat::Csv);
        assert_eq!(csv, "id,pass,expected,measured,seconds\nx,false,\"a, b\",c,0.500\n");
        let json: serde_json::Value = serde_json::from_str(&render(std::slice::from_ref(&r), ReportFormat::Json)).unwrap();
        assert_eq!(json[0]["status"], "fail");
        assert!(render(&[r], ReportFormat::Text).lines().nth(1).unwrap().starts_with("x   "));
    }
}
