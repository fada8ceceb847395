//! The `blocko` command line driver.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::blocks::{equivalence_check, BlockData, Bounds};
use crate::coxeter::{self, CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::kl::{BlockKL, IntPoly, KLTable};
use crate::rootdata::{CartanDatum, Weight};
use crate::zmod::decompose::{decompose, graded_char};
use crate::zmod::graph::{MomentGraph, DEFAULT_DEGREE_BOUND};
use crate::zmod::lattice::{bott_samelson, ZLattice};
use crate::zmod::structure_algebra;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "blocko", version, about = "Combinatorics of blocks of category O for Kac-Moody algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral roots, Coxeter system, stabilizer, orbit, level and criticality.
    Block(Common),
    /// Kazhdan-Lusztig polynomial P_{x,w} and its inverse Q_{x,w}.
    Kl(KlArgs),
    /// Simple character in terms of Verma characters.
    Character(CharArgs),
    /// Bott-Samelson lattice and its indecomposable summands.
    Bs(BsArgs),
    /// Structure algebra of the truncated block.
    Center(Common),
    /// Sufficient check for an equivalence of two blocks.
    Equiv(EquivArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Cartan matrix JSON file.
    #[arg(long)]
    pub cartan: PathBuf,
    /// Weight in fundamental coordinates, e.g. `0,-1/2` or `1;delta=2`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    #[arg(long, default_value_t = Bounds::default().height)]
    pub height_bound: usize,
    #[arg(long, default_value_t = Bounds::default().length)]
    pub length_bound: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree_bound: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Fail with exit code 2 on a critical block.
    #[arg(long)]
    pub require_noncritical: bool,
    /// KL cache directory (overrides `BLOCKO_CACHE`).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct KlArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[command(flatten)]
    pub common: Common,
    /// Vertex as a word from the dominant (or antidominant) element.
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
}

#[derive(Args, Debug)]
pub struct BsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    /// First and second Cartan files (the second defaults to the first).
    #[arg(long, required = true)]
    pub cartan: Vec<PathBuf>,
    /// Given twice: the weights of the two blocks.
    #[arg(long, allow_hyphen_values = true, required = true)]
    pub weight: Vec<String>,
    #[arg(long, default_value_t = Bounds::default().height)]
    pub height_bound: usize,
    #[arg(long, default_value_t = Bounds::default().length)]
    pub length_bound: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Runs one invocation; returns the exit code and the text for stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.to_string());
        }
    };
    let format = match &cli.command {
        Command::Block(c) | Command::Center(c) => c.format,
        Command::Kl(a) => a.common.format,
        Command::Character(a) => a.common.format,
        Command::Bs(a) => a.common.format,
        Command::Equiv(a) => a.format,
    };
    match execute(&cli.command) {
        Ok(report) => (EXIT_OK, render(&report, format)),
        Err((code, e)) => (code, render(&json!({ "error": e.to_string(), "code": code }), Format::Json)),
    }
}

type Failure = (i32, Error);

fn fail(e: Error) -> Failure {
    (if e.is_math_rejection() { EXIT_MATH } else { EXIT_USAGE }, e)
}

fn execute(cmd: &Command) -> std::result::Result<Value, Failure> {
    match cmd {
        Command::Block(c) => cmd_block(c),
        Command::Kl(a) => cmd_kl(a),
        Command::Character(a) => cmd_character(a),
        Command::Bs(a) => cmd_bs(a),
        Command::Center(c) => cmd_center(c),
        Command::Equiv(a) => cmd_equiv(a).map_err(fail),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Tsv => {
            let mut out = String::new();
            if let Value::Object(m) = v {
                for (k, x) in m {
                    let cell = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}\t{cell}\n"));
                }
            }
            out
        }
    }
}

fn load_cartan(path: &Path) -> Result<CartanDatum> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    CartanDatum::from_json(&text)
}

fn load_block(cartan: &Path, weight: Option<&str>, bounds: Bounds) -> Result<BlockData> {
    if bounds.height == 0 || bounds.length == 0 {
        return Err(Error::Parse("bounds must be positive".into()));
    }
    let cartan = load_cartan(cartan)?;
    let weight = match weight {
        Some(w) => Weight::parse(w)?,
        None => Weight::zero(cartan.matrix.len()),
    };
    BlockData::new(cartan, weight, bounds)
}

fn common_block(c: &Common) -> std::result::Result<BlockData, Failure> {
    let block = load_block(&c.cartan, c.weight.as_deref(), Bounds { height: c.height_bound, length: c.length_bound })
        .map_err(fail)?;
    if c.require_noncritical {
        block.require_noncritical().map_err(fail)?;
    }
    Ok(block)
}

fn cmd_block(c: &Common) -> std::result::Result<Value, Failure> {
    common_block(c)?.to_json().map_err(fail)
}

fn cache_dir(c: &Common) -> Option<PathBuf> {
    c.cache_dir.clone().or_else(|| std::env::var_os("BLOCKO_CACHE").map(PathBuf::from))
}

/// Content-addressed store of KL polynomials, one file per entry, written
/// by atomic rename.
pub struct KlCache {
    dir: PathBuf,
}

impl KlCache {
    pub fn new(dir: PathBuf) -> Result<Self> {
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(KlCache { dir })
    }

    pub fn key(kind: &str, sys: &CoxeterSystem, x: &Element, w: &Element) -> String {
        let matrix: Vec<Vec<Value>> = sys.matrix().iter().map(|r| r.iter().map(|l| l.to_json()).collect()).collect();
        let material = json!({ "kind": kind, "matrix": matrix, "x": x.word(), "w": w.word() });
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    pub fn get(&self, key: &str) -> Option<IntPoly> {
        std::fs::read_to_string(self.dir.join(key)).ok()?.trim().parse().ok()
    }

    pub fn put(&self, key: &str, p: &IntPoly) -> Result<()> {
        let tmp = self.dir.join(format!(".{key}.{}", std::process::id()));
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", self.dir.display()));
        std::fs::write(&tmp, p.to_string()).map_err(io)?;
        std::fs::rename(&tmp, self.dir.join(key)).map_err(io)
    }
}

fn cached(
    cache: Option<&KlCache>,
    kind: &str,
    sys: &CoxeterSystem,
    x: &Element,
    w: &Element,
    compute: impl FnOnce() -> Result<IntPoly>,
) -> Result<IntPoly> {
    let Some(cache) = cache else { return compute() };
    let key = KlCache::key(kind, sys, x, w);
    if let Some(p) = cache.get(&key) {
        return Ok(p);
    }
    let p = compute()?;
    cache.put(&key, &p)?;
    Ok(p)
}

fn cmd_kl(a: &KlArgs) -> std::result::Result<Value, Failure> {
    let block = common_block(&a.common)?;
    let sys = block
        .coxeter
        .clone()
        .ok_or_else(|| fail(Error::Unsupported("the integral Weyl group has no Coxeter system".into())))?;
    let parse = |s: &str| coxeter::parse_word(s).and_then(|w| sys.element(&w)).map_err(fail);
    let (x, w) = (parse(&a.x)?, parse(&a.w)?);
    let cache = cache_dir(&a.common).map(KlCache::new).transpose().map_err(fail)?;
    let table = KLTable::new(sys.clone());
    let p = cached(cache.as_ref(), "P", &sys, &x, &w, || Ok(table.kl_poly(&x, &w))).map_err(fail)?;
    let leq = sys.bruhat_leq(&x, &w);
    let q = if leq {
        let bound = w.length().max(block.bounds.length);
        Some(cached(cache.as_ref(), "Q", &sys, &x, &w, || table.inverse_kl(&x, &w, bound)).map_err(fail)?)
    } else {
        None
    };
    Ok(json!({
        "x": coxeter::format_word(x.word()),
        "w": coxeter::format_word(w.word()),
        "bruhat_leq": leq,
        "kl_poly": p.to_string(),
        "inverse_kl": q.map(|q| q.to_string()),
        "mu": table.mu(&x, &w),
    }))
}

fn cmd_character(a: &CharArgs) -> std::result::Result<Value, Failure> {
    let block = common_block(&a.common)?.anchored().map_err(fail)?;
    let word = coxeter::parse_word(&a.w).map_err(fail)?;
    let v = block
        .vertex_of_word(&word)
        .ok_or_else(|| fail(Error::BoundTooSmall(format!("vertex {:?} outside the orbit truncation", a.w))))?;
    let kl = BlockKL::new(block.clone()).map_err(fail)?;
    let ch = kl.simple_character(v).map_err(fail)?;
    Ok(json!({
        "form": kl.form,
        "base_weight": serde_json::to_value(&block.base_weight).expect("weight"),
        "vertex": crate::kl::vertex_label(&block, v),
        "character": ch.to_json(&block),
    }))
}

fn lattice_report(m: &ZLattice) -> Result<Value> {
    let ch = graded_char(m)?;
    let g = &m.graph;
    let graded: serde_json::Map<String, Value> =
        ch.iter().map(|(&v, p)| (g.vertices[v].label.clone(), json!(p.to_string()))).collect();
    let top = m
        .support()
        .into_iter()
        .max_by_key(|&v| (g.vertices[v].element.as_ref().map_or(0, Element::length), v))
        .map(|v| g.vertices[v].label.clone());
    Ok(json!({
        "rank": m.rank(),
        "multiplicities": m.labelled_multiplicities(),
        "graded_character": graded,
        "top": top,
        "lattice": m.to_json(),
    }))
}

fn moment_graph(c: &Common, block: &BlockData) -> Result<std::sync::Arc<MomentGraph>> {
    MomentGraph::from_block(block, c.degree_bound)
}

fn cmd_bs(a: &BsArgs) -> std::result::Result<Value, Failure> {
    let block = common_block(&a.common)?.anchored().map_err(fail)?;
    let word = coxeter::parse_word(&a.word).map_err(fail)?;
    let graph = moment_graph(&a.common, &block).map_err(fail)?;
    let bs = bott_samelson(&graph, &word).map_err(fail)?;
    let mut summands = decompose(&bs)
        .map_err(fail)?
        .iter()
        .map(lattice_report)
        .collect::<Result<Vec<_>>>()
        .map_err(fail)?;
    summands.sort_by_key(|s| (std::cmp::Reverse(s["rank"].as_u64()), s["top"].to_string(), s.to_string()));
    Ok(json!({
        "word": coxeter::format_word(&word),
        "rank": bs.rank(),
        "multiplicities": bs.labelled_multiplicities(),
        "summands": summands,
    }))
}

fn cmd_center(c: &Common) -> std::result::Result<Value, Failure> {
    let block = common_block(c)?;
    let graph = moment_graph(c, &block).map_err(fail)?;
    let all: Vec<usize> = (0..graph.len()).collect();
    let z = structure_algebra(&graph, &all).map_err(fail)?;
    Ok(json!({
        "vertices": graph.vertices.iter().map(|v| v.label.clone()).collect::<Vec<_>>(),
        "rank": z.rank(),
        "degrees": z.degrees(),
        "lattice": z.to_json(),
    }))
}

fn cmd_equiv(a: &EquivArgs) -> Result<Value> {
    if a.cartan.len() > 2 || a.weight.len() != 2 {
        return Err(Error::Parse("equiv takes one or two --cartan and exactly two --weight".into()));
    }
    let bounds = Bounds { height: a.height_bound, length: a.length_bound };
    let second = a.cartan.get(1).unwrap_or(&a.cartan[0]);
    let x = load_block(&a.cartan[0], Some(&a.weight[0]), bounds)?;
    let y = load_block(second, Some(&a.weight[1]), bounds)?;
    let r = equivalence_check(&x, &y)?;
    Ok(json!({
        "verdict": r.verdict,
        "bijection": r.bijection.map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()),
        "reason": r.reason,
    }))
}
