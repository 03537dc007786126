//! Command-line surface: orbit tables, closure posets, and the reference-fixture
//! verification suite.
//!
//! ```text
//! korbit orbits spr:2 --parabolic levi=α
//! korbit poset --pair spr:2 --order full --dot
//! korbit verify-paper --seed 11
//! ```
//!
//! Parabolics are comma lists of Levi simple roots, 1-based in Bourbaki order:
//! `1..n-1` for `upq`/`cgl` (type `A_{n-1}`), `1..n` for `spr:n`/`sppq` with
//! root `n` the long root. For `cgl:n` a plain list applies to both factors;
//! `raw:` addresses the roots `1..2n-2` of `gl_n ⊕ gl_n` directly.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use petgraph::dot::{Config, Dot};
use petgraph::graph::DiGraph;
use serde_json::{json, Value};
use thiserror::Error;

use crate::fixtures::{match_diagram, RefDiagram, ALL_DIAGRAMS, SP11_LONG_PARABOLIC, SP4R_FULL_FLAG};
use crate::kgb_clans::{
    full_closure_order, saturate, weak_order, ClosurePoset, EdgeStyle, Kgb, ParabolicType, PosetEdge,
};
use crate::moment_geom::{
    is_p_regular, orbit_dim_from_tableau, parabolic_from_even_orbit, phi_b_table, Correspondence,
};
use crate::springer_data::{
    ak_image, component_group_g, moment_degree, sp_invariants, springer_rep_full, Ambient, NilpotentOrbitC,
    PairIrrep, SymmetricPair,
};
use crate::tableau::SignedTableau;
use crate::weyl_char::{character_value, dimension, sign_multiplicity, ConjClass, LeviType, WIrrep, WeylType};

/// Default sampling seed.
pub const DEFAULT_SEED: u64 = 0x5EED;
/// Default number of sampling trials per conormal space.
pub const DEFAULT_TRIALS: u64 = 8;

// ---------------------------------------------------------------------------
// Arguments
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "korbit", version, about = "K-orbits on flag varieties and the moment-map orbit correspondence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for sampling generic conormal covectors.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Sampling trials per conormal space.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One record per K-orbit on the (partial) flag variety.
    Orbits(Target),
    /// The weak or full closure order.
    Poset {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Order::Full)]
        order: Order,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check every reference fixture and cross-check invariant.
    VerifyPaper,
}

/// A symmetric pair and a parabolic type.
#[derive(Debug, Args)]
pub struct Target {
    /// Pair descriptor such as `spr:2`, `sppq:1,1`, `upq:2,1`, `cgl:3`.
    #[arg(value_name = "PAIR", required_unless_present = "pair")]
    pub pair_arg: Option<String>,
    #[arg(long = "pair", value_name = "PAIR", conflicts_with = "pair_arg")]
    pub pair: Option<String>,
    /// Levi simple roots, e.g. `levi=1`, `α`, `1,3`; `B` for the full flag variety.
    #[arg(long, default_value = "B")]
    pub parabolic: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Weak,
    Full,
}

/// Why a command failed; decides the exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) | CliError::Io(_) => 1,
        }
    }
}

impl Target {
    fn resolve(&self) -> Result<(SymmetricPair, ParabolicType), CliError> {
        let text = self.pair.as_deref().or(self.pair_arg.as_deref()).expect("clap requires a pair");
        let pair: SymmetricPair = text.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        let par = ParabolicType::parse(pair, &self.parabolic).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((pair, par))
    }
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Verification(e.to_string())
}

/// Runs a parsed command, writing its output.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let trials = cli.trials as usize;
    match &cli.command {
        Command::Orbits(target) => {
            let (pair, par) = target.resolve()?;
            let records = orbit_records(pair, &par, cli.seed, trials)?;
            if cli.json {
                for r in &records {
                    writeln!(out, "{}", r.to_json())?;
                }
            } else {
                write!(out, "{}", format_records(&records))?;
            }
            if let Some(bad) = records.iter().find(|r| r.predicted_fiber != r.geometric_fiber) {
                return Err(CliError::Verification(format!("fiber mismatch at {}", bad.id)));
            }
            Ok(())
        }
        Command::Poset { target, order, dot } => {
            let (pair, par) = target.resolve()?;
            let poset = poset_for(pair, &par, *order, cli.seed, trials)?;
            if *dot {
                write!(out, "{}", poset_to_dot(&poset))?;
            } else if cli.json {
                writeln!(out, "{}", poset_to_json(&poset))?;
            } else {
                write!(out, "{}", format_poset(&poset))?;
            }
            Ok(())
        }
        Command::VerifyPaper => {
            let checks = verify_paper(cli.seed, trials);
            for c in &checks {
                if cli.json {
                    writeln!(out, "{}", json!({"check": c.name, "passed": c.passed, "detail": c.detail}))?;
                } else {
                    writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Verification(format!("{failed} of {} checks failed", checks.len())));
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Orbit records
// ---------------------------------------------------------------------------

/// One row of `korbit orbits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Id of the dense `K\B` member `Q_C` of the class.
    pub id: String,
    /// Clans of all `K\B` orbits in the class.
    pub members: Vec<String>,
    pub dim: usize,
    pub phi: String,
    pub closed: bool,
    pub regular: bool,
    pub predicted_fiber: usize,
    pub geometric_fiber: usize,
}

impl OrbitRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "clan": self.id,
            "members": self.members,
            "dim": self.dim,
            "phi": self.phi,
            "closed": self.closed,
            "regular": self.regular,
            "predicted_fiber": self.predicted_fiber,
            "geometric_fiber": self.geometric_fiber,
        })
    }

    pub fn from_json(v: &Value) -> Option<OrbitRecord> {
        let s = |k: &str| v.get(k)?.as_str().map(str::to_string);
        let u = |k: &str| v.get(k)?.as_u64().and_then(|x| usize::try_from(x).ok());
        let b = |k: &str| v.get(k)?.as_bool();
        Some(OrbitRecord {
            id: s("id")?,
            members: v.get("members")?.as_array()?.iter().map(|m| m.as_str().map(str::to_string)).collect::<Option<_>>()?,
            dim: u("dim")?,
            phi: s("phi")?,
            closed: b("closed")?,
            regular: b("regular")?,
            predicted_fiber: u("predicted_fiber")?,
            geometric_fiber: u("geometric_fiber")?,
        })
    }
}

/// Records for every class of `K\P`, ordered by dimension, then id.
pub fn orbit_records(
    pair: SymmetricPair,
    par: &ParabolicType,
    seed: u64,
    trials: usize,
) -> Result<Vec<OrbitRecord>, CliError> {
    let kgb = Kgb::build(pair).map_err(internal)?;
    let table = phi_b_table(&kgb, seed, trials).map_err(internal)?;
    let corr = Correspondence::new(&kgb, par, &table, seed, trials).map_err(internal)?;
    Ok(corr
        .records
        .iter()
        .zip(&corr.classes)
        .map(|(r, c)| OrbitRecord {
            id: r.id.clone(),
            members: c.members.iter().map(|&i| kgb.orbits[i].id.clone()).collect(),
            dim: r.dim,
            phi: r.phi.to_string(),
            closed: r.closed,
            regular: r.regular,
            predicted_fiber: r.predicted_fiber,
            geometric_fiber: r.geometric_fiber,
        })
        .collect())
}

fn format_records(records: &[OrbitRecord]) -> String {
    let header = ["id", "dim", "phi", "closed", "regular", "predicted", "geometric"];
    let rows: Vec<[String; 7]> = records
        .iter()
        .map(|r| {
            [
                r.id.clone(),
                r.dim.to_string(),
                r.phi.clone(),
                r.closed.to_string(),
                r.regular.to_string(),
                r.predicted_fiber.to_string(),
                r.geometric_fiber.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..7)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    let line = |cells: Vec<&str>, s: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(s, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut s);
    for r in &rows {
        line(r.iter().map(String::as_str).collect(), &mut s);
    }
    s
}

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

/// The requested closure order on `K\B` (root-labelled) or on `K\P`.
pub fn poset_for(
    pair: SymmetricPair,
    par: &ParabolicType,
    order: Order,
    _seed: u64,
    _trials: usize,
) -> Result<ClosurePoset, CliError> {
    let kgb = Kgb::build(pair).map_err(internal)?;
    if par.levi.is_empty() {
        return Ok(match order {
            Order::Weak => weak_order(&kgb),
            Order::Full => full_closure_order(&kgb),
        });
    }
    let classes = crate::kgb_clans::project_to_p(&kgb, par).map_err(internal)?;
    let (weak, full) = crate::kgb_clans::closure_orders_on_p(&kgb, &classes);
    Ok(match order {
        Order::Weak => weak,
        Order::Full => full,
    })
}

fn style_name(s: EdgeStyle) -> &'static str {
    match s {
        EdgeStyle::Solid => "solid",
        EdgeStyle::Dashed => "dashed",
    }
}

/// Graphviz rendering: vertices labelled `id:dim`, edges styled solid/dashed
/// and labelled by their simple root when they have one.
pub fn poset_to_dot(poset: &ClosurePoset) -> String {
    let mut g: DiGraph<String, (Option<usize>, EdgeStyle)> = DiGraph::new();
    let nodes: Vec<_> = (0..poset.len()).map(|i| g.add_node(format!("{}:{}", poset.ids[i], poset.dims[i]))).collect();
    for e in &poset.edges {
        g.add_edge(nodes[e.from], nodes[e.to], (e.label, e.style));
    }
    let edge_attrs = |_, e: petgraph::graph::EdgeReference<'_, (Option<usize>, EdgeStyle)>| {
        let (label, style) = *e.weight();
        match label {
            Some(r) => format!("style = {}, label = \"{r}\"", style_name(style)),
            None => format!("style = {}", style_name(style)),
        }
    };
    let node_attrs = |_, (_, label): (petgraph::graph::NodeIndex, &String)| format!("label = \"{label}\"");
    format!(
        "{:?}",
        Dot::with_attr_getters(&g, &[Config::EdgeNoLabel, Config::NodeNoLabel], &edge_attrs, &node_attrs)
    )
}

pub fn poset_to_json(poset: &ClosurePoset) -> Value {
    let vertices: Vec<Value> =
        (0..poset.len()).map(|i| json!({"id": poset.ids[i], "dim": poset.dims[i]})).collect();
    let edges: Vec<Value> = poset
        .edges
        .iter()
        .map(|e| json!({"from": e.from, "to": e.to, "label": e.label, "style": style_name(e.style)}))
        .collect();
    json!({"vertices": vertices, "edges": edges})
}

pub fn poset_from_json(v: &Value) -> Option<ClosurePoset> {
    let vertices = v.get("vertices")?.as_array()?;
    let mut ids = Vec::new();
    let mut dims = Vec::new();
    for x in vertices {
        ids.push(x.get("id")?.as_str()?.to_string());
        dims.push(usize::try_from(x.get("dim")?.as_u64()?).ok()?);
    }
    let mut edges = Vec::new();
    for e in v.get("edges")?.as_array()? {
        let idx = |k: &str| e.get(k)?.as_u64().and_then(|x| usize::try_from(x).ok());
        let label = match e.get("label")? {
            Value::Null => None,
            l => Some(usize::try_from(l.as_u64()?).ok()?),
        };
        let style = match e.get("style")?.as_str()? {
            "solid" => EdgeStyle::Solid,
            "dashed" => EdgeStyle::Dashed,
            _ => return None,
        };
        edges.push(PosetEdge { from: idx("from")?, to: idx("to")?, label, style });
    }
    Some(ClosurePoset { ids, dims, edges })
}

fn format_poset(poset: &ClosurePoset) -> String {
    let mut s = String::new();
    for i in 0..poset.len() {
        let _ = writeln!(s, "vertex {} dim {}", poset.ids[i], poset.dims[i]);
    }
    for e in &poset.edges {
        let label = e.label.map(|r| format!(" root {r}")).unwrap_or_default();
        let _ = writeln!(s, "edge {} -> {}{label} {}", poset.ids[e.from], poset.ids[e.to], style_name(e.style));
    }
    s
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check { name: name.to_string(), passed: true, detail },
        Err(detail) => Check { name: name.to_string(), passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tab(s: &str) -> SignedTableau {
    s.parse().expect("fixture tableau")
}

/// Computed data for one pair and parabolic, shared by several checks.
struct Computed {
    kgb: Kgb,
    table: Vec<SignedTableau>,
}

impl Computed {
    fn new(pair: &str, seed: u64, trials: usize) -> Result<Computed, String> {
        let pair: SymmetricPair = pair.parse().map_err(|e| format!("{e}"))?;
        let kgb = Kgb::build(pair).map_err(|e| e.to_string())?;
        let table = phi_b_table(&kgb, seed, trials).map_err(|e| e.to_string())?;
        Ok(Computed { kgb, table })
    }

    fn parabolic(&self, spec: &str) -> Result<ParabolicType, String> {
        ParabolicType::parse(self.kgb.pair, spec).map_err(|e| e.to_string())
    }

    fn correspondence(&self, par: &ParabolicType, seed: u64, trials: usize) -> Result<Correspondence, String> {
        Correspondence::new(&self.kgb, par, &self.table, seed, trials).map_err(|e| e.to_string())
    }

    /// Matches a reference diagram; returns `reference vertex → computed vertex`.
    fn matched(&self, d: &RefDiagram, seed: u64, trials: usize) -> Result<(Vec<usize>, Option<Correspondence>), String> {
        let par = self.parabolic(d.parabolic)?;
        if par.levi.is_empty() {
            let poset = full_closure_order(&self.kgb);
            let m = match_diagram(d, &poset, &self.table).ok_or("no labelled isomorphism with the reference")?;
            Ok((m, None))
        } else {
            let corr = self.correspondence(&par, seed, trials)?;
            let phis: Vec<SignedTableau> = corr.records.iter().map(|r| r.phi.clone()).collect();
            let m = match_diagram(d, &corr.full, &phis).ok_or("no labelled isomorphism with the reference")?;
            Ok((m, Some(corr)))
        }
    }
}

fn names_of(d: &RefDiagram, mapping: &[usize], chosen: &[usize]) -> BTreeSet<&'static str> {
    (0..d.vertices.len()).filter(|&v| chosen.contains(&mapping[v])).map(|v| d.vertices[v].0).collect()
}

/// Whether `Φ` reverses the order both ways: `c ≤ c'` iff `Φ(c') ≤ Φ(c)`.
fn is_order_reversing_bijection(corr: &Correspondence, targets: &[SignedTableau]) -> Result<(), String> {
    let phis: Vec<&SignedTableau> = corr.records.iter().map(|r| &r.phi).collect();
    let image: BTreeSet<&SignedTableau> = phis.iter().copied().collect();
    let want: BTreeSet<&SignedTableau> = targets.iter().collect();
    ensure(image.len() == phis.len(), || "Φ_P is not injective".into())?;
    ensure(image == want, || "Φ_P is not onto the nilpotent K-orbits of the parabolic".into())?;
    let reach = corr.full.reachability();
    for i in 0..phis.len() {
        for j in 0..phis.len() {
            ensure(reach[i][j] == phis[j].closure_leq(phis[i]), || {
                format!("order not reversed between {} and {}", corr.records[i].id, corr.records[j].id)
            })?;
        }
    }
    Ok(())
}

/// Tableaux of maximal dimension in a list.
fn maximal_by_dim(pair: &SymmetricPair, ts: &[SignedTableau]) -> Result<BTreeSet<SignedTableau>, String> {
    let dims: Vec<usize> =
        ts.iter().map(|t| orbit_dim_from_tableau(pair, t)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let top = dims.iter().copied().max().unwrap_or(0);
    Ok(ts.iter().zip(&dims).filter(|(_, &d)| d == top).map(|(t, _)| t.clone()).collect())
}

/// The standard and sign-twisted linear characters of `W(C_2)` used for `Sp(4)`, `(2,2)`.
fn sp4_std_and_chi() -> (WIrrep, WIrrep) {
    let w = WeylType::bc(2);
    let s_alpha = ConjClass::BC(vec![2], vec![]);
    let s_beta = ConjClass::BC(vec![1], vec![1]);
    let value = |s: &WIrrep, c: &ConjClass| character_value(&w, s, c).expect("valid class");
    let std = w
        .irreps()
        .into_iter()
        .find(|s| dimension(&w, s).expect("valid") == BigInt::from(2))
        .expect("two-dimensional irreducible");
    let chi = w
        .irreps()
        .into_iter()
        .find(|s| {
            dimension(&w, s).expect("valid") == BigInt::from(1)
                && value(s, &s_alpha) == BigInt::from(1)
                && value(s, &s_beta) == BigInt::from(-1)
        })
        .expect("linear character");
    (std, chi)
}

/// Checks that the irreducibles attached to `Sp(4)`, `(2,2)` are exactly `{std, χ}`.
pub fn check_sp4_subregular_springer(irreps: &[WIrrep]) -> Result<String, String> {
    let (std, chi) = sp4_std_and_chi();
    let got: BTreeSet<&WIrrep> = irreps.iter().collect();
    ensure(irreps.len() == 2 && got == [&std, &chi].into_iter().collect(), || {
        format!("got {:?}, want {{{std}, {chi}}}", irreps.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    })?;
    Ok(format!("{{{std}, {chi}}}"))
}

/// Pairs and parabolics covered by the fiber-count cross-check.
pub fn fiber_check_targets() -> Vec<(SymmetricPair, Vec<ParabolicType>)> {
    let mut out = Vec::new();
    for p in ["spr:2", "spr:3", "sppq:1,1", "sppq:2,1", "upq:1,1", "upq:2,1", "upq:2,2"] {
        let pair: SymmetricPair = p.parse().expect("pair");
        out.push((pair, ParabolicType::all(pair)));
    }
    for n in 2..=5 {
        let pair = SymmetricPair::ComplexGL(n);
        out.push((pair, ParabolicType::all(pair)));
    }
    out
}

/// Runs every reference fixture and cross-check invariant.
pub fn verify_paper(seed: u64, trials: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let sp4 = Computed::new("spr:2", seed, trials);
    let sp11 = Computed::new("sppq:1,1", seed, trials);

    // Sp(4,R) and Sp(1,1): diagrams with Φ-images.
    for d in ALL_DIAGRAMS {
        let source = if d.pair == "spr:2" { &sp4 } else { &sp11 };
        checks.push(check(&format!("{}: closure diagram and correspondence", d.name), {
            source.as_ref().map_err(Clone::clone).and_then(|c| {
                let (_, corr) = c.matched(&d, seed, trials)?;
                if let Some(corr) = &corr {
                    ensure(corr.fibers_agree(), || "fiber counts disagree".into())?;
                }
                Ok(format!("{} vertices, {} edges", d.vertices.len(), d.edges.len()))
            })
        }));
    }

    checks.push(check("Sp(4,R) full flag: Φ_B reverses every relation except T± below S", {
        sp4.as_ref().map_err(Clone::clone).and_then(|c| {
            let d = SP4R_FULL_FLAG;
            let (m, _) = c.matched(&d, seed, trials)?;
            let poset = full_closure_order(&c.kgb);
            let reach = poset.reachability();
            let reversed = |x: usize, y: usize| c.table[y].closure_leq(&c.table[x]);
            let name = |x: usize| d.vertices[m.iter().position(|&v| v == x).expect("bijection")].0;
            let covering: BTreeSet<(&str, &str)> = poset
                .edges
                .iter()
                .filter(|e| !reversed(e.from, e.to))
                .map(|e| (name(e.from), name(e.to)))
                .collect();
            let want: BTreeSet<_> = [("T+", "S"), ("T-", "S")].into_iter().collect();
            ensure(covering == want, || format!("non-reversed covering edges {covering:?}"))?;
            let (s, t) = (m[d.vertex("S")], [m[d.vertex("T+")], m[d.vertex("T-")]]);
            for x in 0..poset.len() {
                for y in 0..poset.len() {
                    if x != y && reach[x][y] && !reversed(x, y) {
                        ensure(t.iter().any(|&ti| reach[x][ti] && reach[s][y]), || {
                            format!("{} < {} is not reversed and avoids T± < S", name(x), name(y))
                        })?;
                    }
                }
            }
            Ok("only the covering relations T+ < S and T- < S fail; all other failures factor through them".into())
        })
    }));

    checks.push(check("Sp(4,R) short-root parabolic: regular classes and order-reversing bijection", {
        sp4.as_ref().map_err(Clone::clone).and_then(|c| {
            let d = crate::fixtures::SP4R_SHORT_PARABOLIC;
            let (m, corr) = c.matched(&d, seed, trials)?;
            let corr = corr.expect("parabolic");
            let targets = crate::moment_geom::nilpotent_orbits_theta(&c.kgb.pair, &c.parabolic(d.parabolic)?.levi);
            is_order_reversing_bijection(&corr, &targets)?;
            let regular = names_of(&d, &m, &corr.regular());
            ensure(regular == ["T'+", "T'-", "S'"].into_iter().collect(), || format!("regular {regular:?}"))?;
            Ok(format!("regular {regular:?}"))
        })
    }));

    checks.push(check("Sp(4,R) long-root parabolic: zero orbit, maximal images, regular but not closed", {
        sp4.as_ref().map_err(Clone::clone).and_then(|c| {
            let d = crate::fixtures::SP4R_LONG_PARABOLIC;
            let (m, corr) = c.matched(&d, seed, trials)?;
            let corr = corr.expect("parabolic");
            let pair = c.kgb.pair;
            let levi = c.parabolic(d.parabolic)?.levi;
            let q = m[d.vertex("Q")];
            ensure(corr.records[q].phi == SignedTableau::zero(&pair), || "π(Q) not sent to zero".into())?;
            let maximal = maximal_by_dim(&pair, &crate::moment_geom::nilpotent_orbits_theta(&pair, &levi))?;
            let others: BTreeSet<SignedTableau> =
                (0..corr.records.len()).filter(|&i| i != q).map(|i| corr.records[i].phi.clone()).collect();
            ensure(others == maximal && others.len() == 3, || "other classes not onto the maximal orbits".into())?;
            let regular = names_of(&d, &m, &corr.regular());
            ensure(regular == ["T+", "T-", "S"].into_iter().collect(), || format!("regular {regular:?}"))?;
            let s = m[d.vertex("S")];
            ensure(corr.records[s].regular && !corr.records[s].closed, || "π(S) not regular-and-not-closed".into())?;
            Ok(format!("regular {regular:?}; π(S) not closed"))
        })
    }));

    checks.push(check("Sp(4,R) full flag: Φ_B fiber sizes from Weyl-group data", {
        sp4.as_ref().map_err(Clone::clone).and_then(|c| {
            let corr = c.correspondence(&ParabolicType::borel(c.kgb.pair), seed, trials)?;
            ensure(corr.fibers_agree(), || "fiber counts disagree".into())?;
            let sizes: Vec<usize> = corr.fibers.iter().map(|f| f.2).collect();
            let mut sorted = sizes.clone();
            sorted.sort_unstable();
            ensure(sorted == vec![1, 1, 1, 1, 1, 2, 2, 2] && sizes.iter().sum::<usize>() == 11, || {
                format!("sizes {sizes:?}")
            })?;
            Ok(format!("sizes {sizes:?}"))
        })
    }));

    checks.push(check("Sp(1,1): Φ_β two-to-one over 2^1+ 2^1-", {
        sp11.as_ref().map_err(Clone::clone).and_then(|c| {
            ensure(c.kgb.len() == 4, || format!("{} orbits", c.kgb.len()))?;
            let corr = c.correspondence(&c.parabolic(SP11_LONG_PARABOLIC.parabolic)?, seed, trials)?;
            let over = corr.records.iter().filter(|r| r.phi == tab("2^1+ 2^1-")).count();
            ensure(over == 2 && corr.fibers_agree(), || format!("{over} classes over 2^1+ 2^1-"))?;
            Ok("4 orbits; fiber of size 2".into())
        })
    }));

    checks.push(check("Sp(4), (2,2): Springer representation is std ⊕ χ", {
        NilpotentOrbitC::new(Ambient::Sp(2), vec![2, 2])
            .and_then(|o| springer_rep_full(&o))
            .map_err(|e| e.to_string())
            .and_then(|full| check_sp4_subregular_springer(&full.into_iter().map(|(s, _)| s).collect::<Vec<_>>()))
    }));

    checks.push(check("Sp(1,1) and Sp(4,R) at 2^1+ 2^1-: invariants under the A_K image", {
        (|| {
            let t = tab("2^1+ 2^1-");
            let singles = |pair: &str| -> Result<Vec<WIrrep>, String> {
                let pair: SymmetricPair = pair.parse().map_err(|e| format!("{e}"))?;
                Ok(sp_invariants(&pair, &t)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|s| match s {
                        PairIrrep::Single(s) => s,
                        PairIrrep::Outer(a, _) => a,
                    })
                    .collect())
            };
            let sp11_inv = singles("sppq:1,1")?;
            check_sp4_subregular_springer(&sp11_inv)?;
            let sp4_inv = singles("spr:2")?;
            ensure(sp4_inv.len() == 1, || format!("spr:2 invariants {sp4_inv:?}"))?;
            let full = ak_image(&"spr:2".parse().expect("pair"), &t).map_err(|e| e.to_string())?;
            let trivial = ak_image(&"sppq:1,1".parse().expect("pair"), &t).map_err(|e| e.to_string())?;
            ensure(full.full && !trivial.full, || "A_K images".into())?;
            Ok(format!("Sp(1,1): 2 irreducibles; Sp(4,R): {}", sp4_inv[0]))
        })()
    }));

    checks.push(check("sign multiplicities for the Sp(4) character χ", {
        (|| {
            let w = WeylType::bc(2);
            let (_, chi) = sp4_std_and_chi();
            let m = |roots: &[usize]| -> Result<BigInt, String> {
                let l = LeviType::from_simple_roots(&w, roots).map_err(|e| e.to_string())?;
                sign_multiplicity(&w, &l, &chi).map_err(|e| e.to_string())
            };
            let (a, b) = (m(&[1])?, m(&[2])?);
            ensure(a == BigInt::from(0) && b == BigInt::from(1), || format!("short {a}, long {b}"))?;
            Ok("short-root Levi 0, long-root Levi 1".into())
        })()
    }));

    checks.push(check("component groups", {
        (|| {
            let order = |amb: Ambient, l: Vec<usize>| -> Result<usize, String> {
                let o = NilpotentOrbitC::new(amb, l).map_err(|e| e.to_string())?;
                Ok(component_group_g(&o).map_err(|e| e.to_string())?.order())
            };
            let got = (order(Ambient::GL(3), vec![2, 1])?, order(Ambient::Sp(2), vec![2, 2])?, order(Ambient::Sp(2), vec![1; 4])?);
            ensure(got == (1, 2, 1), || format!("{got:?}"))?;
            Ok("GL(3),(2,1): 1; Sp(4),(2,2): 2; Sp(4),(1^4): 1".into())
        })()
    }));

    checks.push(check("moment-map degrees", {
        (|| {
            let deg = |amb: Ambient, levi: &[usize]| -> Result<BigInt, String> {
                moment_degree(amb, &levi.iter().copied().collect()).map_err(|e| e.to_string())
            };
            let (a, b) = (deg(Ambient::Sp(2), &[1])?, deg(Ambient::Sp(2), &[2])?);
            ensure(a == BigInt::from(1) && b == BigInt::from(2), || format!("Sp(4): {a}, {b}"))?;
            for n in 1..=5 {
                for mask in 0..(1usize << (n - 1)) {
                    let levi: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let d = deg(Ambient::GL(n), &levi)?;
                    ensure(d == BigInt::from(1), || format!("GL({n}) {levi:?}: {d}"))?;
                }
            }
            Ok("Sp(4): 1 and 2; GL(n ≤ 5): all 1".into())
        })()
    }));

    for n in 1..=3 {
        checks.push(check(&format!("Sp({},R), parabolic of the even orbit 2^{n}", 2 * n), {
            (|| {
                let c = Computed::new(&format!("spr:{n}"), seed, trials)?;
                let levi = parabolic_from_even_orbit(Ambient::Sp(n), &vec![2; n]).map_err(|e| e.to_string())?;
                ensure(levi == (1..n).collect(), || format!("Levi {levi:?} does not delete only the long root"))?;
                let par = ParabolicType::new(c.kgb.pair, levi.iter().copied()).map_err(|e| e.to_string())?;
                let corr = c.correspondence(&par, seed, trials)?;
                let reg = corr.regular();
                ensure(reg.len() == n + 1, || format!("{} regular classes", reg.len()))?;
                ensure(reg.iter().all(|&i| corr.records[i].closed), || "a regular class is not closed".into())?;
                let images: BTreeSet<&SignedTableau> = reg.iter().map(|&i| &corr.records[i].phi).collect();
                let maximal = maximal_by_dim(&c.kgb.pair, &crate::moment_geom::nilpotent_orbits_theta(&c.kgb.pair, &levi))?;
                ensure(images.len() == n + 1 && images.into_iter().cloned().collect::<BTreeSet<_>>() == maximal, || {
                    "regular classes not injective onto the maximal tableaux".into()
                })?;
                Ok(format!("{} regular classes, all closed", n + 1))
            })()
        }));
    }

    for n in 1..=3 {
        checks.push(check(&format!("U({n},{n}), middle-node parabolic"), {
            (|| {
                let c = Computed::new(&format!("upq:{n},{n}"), seed, trials)?;
                let levi: BTreeSet<usize> = (1..2 * n).filter(|&i| i != n).collect();
                let par = ParabolicType::new(c.kgb.pair, levi.iter().copied()).map_err(|e| e.to_string())?;
                let corr = c.correspondence(&par, seed, trials)?;
                is_order_reversing_bijection(&corr, &crate::moment_geom::nilpotent_orbits_theta(&c.kgb.pair, &levi))?;
                ensure(corr.regular().len() == n + 1, || format!("{} regular classes", corr.regular().len()))?;
                Ok(format!("order-reversing bijection; {} regular classes", n + 1))
            })()
        }));
    }

    checks.push(check("fiber counts: geometric = Weyl-group prediction, summing to |K\\P|", {
        (|| {
            let mut count = 0;
            for (pair, pars) in fiber_check_targets() {
                let c = Computed::new(&pair.to_string(), seed, trials)?;
                for par in pars {
                    let corr = c.correspondence(&par, seed, trials)?;
                    let total: usize = corr.fibers.iter().map(|f| f.1).sum();
                    ensure(corr.fibers_agree() && total == corr.records.len(), || format!("{pair} {par}"))?;
                    count += 1;
                }
            }
            Ok(format!("{count} (pair, parabolic) cases"))
        })()
    }));

    checks.push(check("regular classes are minimal in the weak order", {
        (|| {
            for p in ["spr:2", "spr:3", "sppq:1,1", "sppq:2,1", "upq:2,2", "cgl:3"] {
                let c = Computed::new(p, seed, trials)?;
                for par in ParabolicType::all(c.kgb.pair) {
                    let corr = c.correspondence(&par, seed, trials)?;
                    let minimal = corr.weak.minimal();
                    for (i, r) in corr.records.iter().enumerate() {
                        let ok = is_p_regular(&c.kgb.pair, &par.levi, &r.phi).map_err(|e| e.to_string())?;
                        ensure(ok == r.regular && (!r.regular || minimal.contains(&i)), || format!("{p} {par} {}", r.id))?;
                    }
                }
            }
            Ok("all parabolics of six pairs".into())
        })()
    }));

    checks.push(check("saturation is idempotent", {
        (|| {
            for p in ["spr:2", "spr:3", "sppq:2,1", "upq:2,2", "cgl:4"] {
                let c = Computed::new(p, seed, trials)?;
                let once = saturate(&weak_order(&c.kgb));
                ensure(saturate(&once) == once, || p.to_string())?;
            }
            Ok("five pairs".into())
        })()
    }));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<(), CliError>, String) {
        let cli = Cli::try_parse_from(args).expect("valid arguments");
        let mut out = Vec::new();
        let r = run(&cli, &mut out);
        (r, String::from_utf8(out).expect("utf-8"))
    }

    #[test]
    fn orbits_counts_and_fibers() {
        let (r, out) = run_args(&["korbit", "orbits", "spr:2", "--parabolic", "levi=α", "--json"]);
        r.unwrap();
        let recs: Vec<OrbitRecord> =
            out.lines().map(|l| OrbitRecord::from_json(&serde_json::from_str(l).unwrap()).unwrap()).collect();
        assert_eq!(recs.len(), 6);
        for rec in &recs {
            assert_eq!(OrbitRecord::from_json(&rec.to_json()).as_ref(), Some(rec));
        }
        let (r, out) = run_args(&["korbit", "orbits", "--pair", "cgl:3"]);
        r.unwrap();
        assert_eq!(out.lines().count(), 7);
        let (r, out) = run_args(&["korbit", "orbits", "sppq:1,1", "--parabolic", "levi=β", "--json"]);
        r.unwrap();
        let fibers: Vec<u64> = out
            .lines()
            .map(|l| serde_json::from_str::<Value>(l).unwrap()["geometric_fiber"].as_u64().unwrap())
            .collect();
        assert_eq!(fibers, vec![2, 2, 1]);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        let cli = Cli::try_parse_from(["korbit", "orbits", "spq:2"]).unwrap();
        let err = run(&cli, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let cli = Cli::try_parse_from(["korbit", "orbits", "spr:2", "--parabolic", "7"]).unwrap();
        assert_eq!(run(&cli, &mut Vec::new()).unwrap_err().exit_code(), 2);
        assert!(Cli::try_parse_from(["korbit", "orbits"]).is_err());
        assert!(Cli::try_parse_from(["korbit", "orbits", "spr:2", "--trials", "0"]).is_err());
    }

    #[test]
    fn poset_json_round_trip_and_dot_is_stable() {
        let (r, out) = run_args(&["korbit", "poset", "spr:2", "--json"]);
        r.unwrap();
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        let poset = poset_from_json(&v).unwrap();
        assert_eq!(poset.len(), 11);
        assert_eq!(poset.edges.iter().filter(|e| e.style == EdgeStyle::Dashed).count(), 4);
        assert_eq!(poset_to_json(&poset), v);
        let (_, a) = run_args(&["korbit", "poset", "spr:2", "--dot"]);
        let (_, b) = run_args(&["korbit", "poset", "spr:2", "--dot", "--seed", "99"]);
        assert_eq!(a, b);
        assert_eq!(a.matches("style = dashed").count(), 4);
        assert!(a.contains("label = \"1221:4\""));
    }

    #[test]
    fn single_orbit_poset() {
        let poset = poset_for("upq:1,1".parse().unwrap(), &ParabolicType::parse("upq:1,1".parse().unwrap(), "1").unwrap(), Order::Full, 0, 1).unwrap();
        assert_eq!(poset.len(), 1);
        assert!(poset.edges.is_empty());
    }

    #[test]
    fn transposed_springer_table_is_rejected() {
        let full = springer_rep_full(&NilpotentOrbitC::new(Ambient::Sp(2), vec![2, 2]).unwrap()).unwrap();
        let irreps: Vec<WIrrep> = full.into_iter().map(|(s, _)| s).collect();
        check_sp4_subregular_springer(&irreps).unwrap();
        let transposed: Vec<WIrrep> = irreps
            .iter()
            .map(|s| match s {
                WIrrep::BC(a, b) => WIrrep::BC(crate::partition::transpose(a), crate::partition::transpose(b)),
                other => other.clone(),
            })
            .collect();
        assert!(check_sp4_subregular_springer(&transposed).is_err());
    }
}
