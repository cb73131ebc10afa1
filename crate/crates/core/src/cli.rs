//! Command-line driver: ideal files in, result envelopes out.
//!
//! Exit codes: 0 success, 2 success with caveats, 1 error.

use crate::complex::{groebner_complex, PolyComplex, WeightedComplex};
use crate::error::Error;
use crate::export::{complex_from_json, complex_to_json, complex_to_svg, weighted_from_json, weighted_to_json, ComplexJson};
use crate::field::ValuedField;
use crate::ideal::IdealTruncation;
use crate::multiplicity::{cell_multiplicity, variety};
use crate::parse::{parse_classical, parse_trop, parse_trop_auto, sort_var_names};
use crate::poly::{Ambient, ExpVec, TermOrder};
use crate::polyhedron::Polyhedron;
use crate::scalar::{fmt_q, parse_q, TropScalar, Q};
use crate::univariate::{convexify, factor};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;
pub const CAVEAT_WINDOW: &str = "stabilization window not reached";

#[derive(Parser, Debug)]
#[command(name = "tropical", version, about = "Exact computations with tropical ideals")]
pub struct Cli {
    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the degree bound D of the ideal file.
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    /// JSON envelope on standard output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Of {
    Variety,
    Groebner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a tropical polynomial at a point
    Eval {
        poly: String,
        #[arg(short, long, allow_hyphen_values = true)]
        w: String,
    },
    /// Convexify and factor a univariate tropical polynomial
    Factor { poly: String },
    /// Tropicalize a classical polynomial, or list the circuits of an ideal file
    Trop {
        input: String,
        /// Valued field for a polynomial argument: trivial | p-adic:<p> | t-adic
        #[arg(long, default_value = "trivial")]
        field: String,
        /// Comma-separated variable names for a polynomial argument
        #[arg(long)]
        vars: Option<String>,
    },
    /// Hilbert function values and polynomial
    Hilbert {
        file: PathBuf,
        #[arg(short = 'd', long)]
        degree: Option<usize>,
    },
    /// Dimension from the Hilbert polynomial and from coordinate subsets
    Dim { file: PathBuf },
    /// Degree from the Hilbert polynomial
    Degree { file: PathBuf },
    /// Initial ideal for a weight (-w) or a term order (-o)
    Initial {
        file: PathBuf,
        #[arg(short, long, allow_hyphen_values = true, conflicts_with = "order")]
        w: Option<String>,
        #[arg(short, long)]
        order: Option<String>,
    },
    /// Term-order cone of the initial monomial ideal
    Cone {
        file: PathBuf,
        #[arg(short, long, default_value = "revlex")]
        order: String,
    },
    /// Weighted tropical variety from the circuits up to a degree
    Variety {
        file: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Gröbner complex in the chart x_0 = 0
    GroebnerComplex { file: PathBuf },
    /// Star of a complex at a point
    Star {
        input: PathBuf,
        #[arg(short, long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, value_enum, default_value = "variety")]
        of: Of,
    },
    /// Recession fan of a complex
    RecessionFan {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "groebner")]
        of: Of,
    },
    /// Multiplicity at a point (-w) or of a maximal cell of the variety (--cell)
    Mult {
        file: PathBuf,
        #[arg(short, long, allow_hyphen_values = true, conflicts_with = "cell")]
        w: Option<String>,
        #[arg(long)]
        cell: Option<usize>,
    },
    /// Balancing condition of a weighted complex
    Balance { input: PathBuf },
    /// Stable intersection with the hyperplane x_i = a
    StableIntersect {
        input: PathBuf,
        /// Chart coordinate, by index or variable name
        #[arg(short = 'i', long)]
        coordinate: String,
        #[arg(short, long, allow_hyphen_values = true)]
        a: String,
    },
    /// Specialize one variable to a value
    Specialize {
        file: PathBuf,
        /// Variable, by name or input index
        #[arg(short = 'x', long)]
        var: String,
        #[arg(short, long, allow_hyphen_values = true)]
        a: String,
        /// Write the result as an ideal file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eliminate all variables outside a kept set
    Eliminate {
        file: PathBuf,
        /// Comma-separated variables to keep
        #[arg(long)]
        keep: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exchange axiom, monomial elimination and multiplication checks per degree
    Validate { file: PathBuf },
    /// Serialize a complex as JSON or SVG
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "variety")]
        of: Of,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// The TOML ideal description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub version: u32,
    /// affine | projective | laurent
    pub ambient: String,
    pub variables: Vec<String>,
    #[serde(default = "default_field")]
    pub field: String,
    /// Name of the transcendental of ℚ(t).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    pub degree_bound: usize,
    /// Classical generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    /// Tropical polynomials in min syntax.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<String>>,
    /// For projective circuits: the list is every circuit of every degree ≤ D.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
}

fn default_field() -> String {
    "trivial".into()
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub inputs_digest: String,
    pub degree_bound: Option<usize>,
    pub seed: u64,
    pub caveats: Vec<String>,
    pub payload: Value,
}

#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn fail<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure(msg.into()))
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Re-anchors a parse error inside an embedded string to its position in the file.
fn anchor(path: &Path, src: &str, text: &str, e: Error) -> Failure {
    match e {
        Error::Parse { line, col, msg } => match src.find(text) {
            Some(off) => {
                let (l0, c0) = line_col(src, off);
                let (l, c) = if line <= 1 { (l0, c0 + col - 1) } else { (l0 + line - 1, col) };
                Failure(format!("{}:{l}:{c}: parse error: {msg}", path.display()))
            }
            None => Failure(format!("{}: parse error at line {line}, column {col}: {msg}", path.display())),
        },
        e => Failure(format!("{}: {e}", path.display())),
    }
}

pub fn parse_ambient(kind: &str, n: usize) -> Res<Ambient> {
    match kind {
        "affine" => Ok(Ambient::Affine(n)),
        "projective" => Ok(Ambient::Projective(n)),
        "laurent" => Ok(Ambient::Laurent(n)),
        k => fail(format!("unknown ambient `{k}` (affine | projective | laurent)")),
    }
}

impl IdealFile {
    pub fn from_toml(path: &Path, src: &str) -> Res<IdealFile> {
        let f: IdealFile = toml::from_str(src).map_err(|e| {
            let (l, c) = e.span().map_or((0, 0), |s| line_col(src, s.start));
            Failure(format!("{}:{l}:{c}: {}", path.display(), e.message()))
        })?;
        if f.version != FORMAT_VERSION {
            return fail(format!("{}: unsupported format version {} (expected {FORMAT_VERSION})", path.display(), f.version));
        }
        if f.generators.is_some() == f.circuits.is_some() {
            return fail(format!("{}: exactly one of `generators` and `circuits` is required", path.display()));
        }
        Ok(f)
    }

    /// Builds the truncation; `src` locates parse errors.
    pub fn build(&self, path: &Path, src: &str, bound: Option<usize>) -> Res<IdealTruncation> {
        let amb = parse_ambient(&self.ambient, self.variables.len())?;
        let d = bound.unwrap_or(self.degree_bound);
        let at = |text: &str, e: Error| anchor(path, src, text, e);
        if let Some(gens) = &self.generators {
            let field = ValuedField::parse(&self.field).map_err(|e| at(&self.field, e))?;
            let par = field.has_parameter().then(|| self.parameter.as_deref().unwrap_or("t"));
            let polys = gens
                .iter()
                .map(|g| parse_classical(g, &self.variables, par).map_err(|e| at(g, e)))
                .collect::<Res<Vec<_>>>()?;
            Ok(IdealTruncation::tropicalize(&self.variables, amb, field, &polys, d)?)
        } else {
            let cs = self.circuits.as_ref().unwrap();
            let polys =
                cs.iter().map(|g| parse_trop(g, &self.variables, amb).map_err(|e| at(g, e))).collect::<Res<Vec<_>>>()?;
            Ok(IdealTruncation::from_tropical(&self.variables, amb, &polys, d, self.complete.unwrap_or(false))?)
        }
    }

    /// A complete projective description of a truncation by all of its circuits.
    pub fn from_truncation(t: &IdealTruncation) -> Res<IdealFile> {
        let names = t.names().to_vec();
        let mut circuits = Vec::new();
        for d in 0..=t.degree_bound() {
            circuits.extend(t.circuits(d)?.iter().map(|f| f.min_syntax_with(&names)));
        }
        Ok(IdealFile {
            version: FORMAT_VERSION,
            ambient: "projective".into(),
            variables: names,
            field: "trivial".into(),
            parameter: None,
            degree_bound: t.degree_bound(),
            generators: None,
            circuits: Some(circuits),
            complete: Some(true),
        })
    }
}

struct Ctx {
    seed: u64,
    bound: Option<usize>,
    digest: Sha256,
    used_bound: Option<usize>,
    caveats: Vec<String>,
}

impl Ctx {
    fn absorb(&mut self, label: &str, bytes: &[u8]) {
        self.digest.update((label.len() as u64).to_le_bytes());
        self.digest.update(label.as_bytes());
        self.digest.update((bytes.len() as u64).to_le_bytes());
        self.digest.update(bytes);
    }

    fn read(&mut self, path: &Path) -> Res<String> {
        let s = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        self.absorb("file", s.as_bytes());
        Ok(s)
    }

    fn arg(&mut self, s: &str) {
        self.absorb("arg", s.as_bytes());
    }

    fn caveat(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.caveats.contains(&c) {
            self.caveats.push(c);
        }
    }

    fn ideal(&mut self, path: &Path) -> Res<IdealTruncation> {
        let src = self.read(path)?;
        let f = IdealFile::from_toml(path, &src)?;
        let t = f.build(path, &src, self.bound)?;
        self.used_bound = Some(t.degree_bound());
        for c in t.caveats() {
            self.caveat(c.clone());
        }
        Ok(t)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

enum AnyComplex {
    Plain(PolyComplex),
    Weighted(WeightedComplex),
}

impl AnyComplex {
    fn json(&self) -> ComplexJson {
        match self {
            AnyComplex::Plain(c) => complex_to_json(c),
            AnyComplex::Weighted(w) => weighted_to_json(w),
        }
    }

    fn support(&self) -> PolyComplex {
        match self {
            AnyComplex::Plain(c) => c.clone(),
            AnyComplex::Weighted(w) => w.complex(),
        }
    }
}

fn variety_complex(ctx: &mut Ctx, t: &IdealTruncation) -> Res<AnyComplex> {
    let v = variety(t, t.degree_bound())?;
    for n in &v.notes {
        ctx.caveat(n.clone());
    }
    Ok(match v.weighted {
        Some(w) => AnyComplex::Weighted(w),
        None => AnyComplex::Plain(v.support),
    })
}

/// A complex from a JSON file, or the variety or Gröbner complex of an ideal file.
fn load_complex(ctx: &mut Ctx, path: &Path, of: Of) -> Res<AnyComplex> {
    if is_json(path) {
        let src = ctx.read(path)?;
        let j: ComplexJson = serde_json::from_str(&src).map_err(|e| {
            Failure(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
        })?;
        return Ok(if j.weighted {
            AnyComplex::Weighted(weighted_from_json(&j)?)
        } else {
            AnyComplex::Plain(complex_from_json(&j)?)
        });
    }
    let t = ctx.ideal(path)?;
    match of {
        Of::Variety => variety_complex(ctx, &t),
        Of::Groebner => Ok(AnyComplex::Plain(groebner_complex(&t, t.degree_bound())?)),
    }
}

fn weighted(c: AnyComplex) -> Res<WeightedComplex> {
    match c {
        AnyComplex::Weighted(w) => Ok(w),
        AnyComplex::Plain(_) => fail("this operation needs a weighted complex"),
    }
}

pub fn parse_vector(s: &str) -> Res<Vec<Q>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| parse_q(x.trim()).ok_or_else(|| Failure(format!("`{}` is not a rational number", x.trim())))).collect()
}

fn parse_value(s: &str) -> Res<TropScalar> {
    TropScalar::parse(s.trim()).ok_or_else(|| Failure(format!("`{s}` is not a rational number or inf")))
}

fn scalar_string(x: &TropScalar) -> String {
    match x {
        TropScalar::Inf => "inf".into(),
        TropScalar::Fin(q) => fmt_q(q),
    }
}

fn qv(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn monomial_string(u: &ExpVec, names: &[String]) -> String {
    let parts: Vec<String> = u
        .0
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn circuits_json(t: &IdealTruncation) -> Res<Value> {
    let names = t.names().to_vec();
    let mut out = Vec::new();
    for d in 0..=t.degree_bound() {
        let cs: Vec<String> = t.circuits(d)?.iter().map(|f| f.min_syntax_with(&names)).collect();
        out.push(json!({ "degree": d, "rank": t.hilbert_function(d)?, "circuits": cs }));
    }
    Ok(Value::Array(out))
}

fn polyhedron_json(p: &Polyhedron) -> Value {
    let c = |v: &[(Vec<Q>, Q)]| -> Vec<Value> { v.iter().map(|(a, b)| json!({ "a": qv(a), "b": fmt_q(b) })).collect() };
    json!({
        "dim": p.dim(),
        "equations": c(p.equations()),
        "inequalities": c(p.inequalities()),
        "relint": qv(p.relint_point()),
    })
}

fn infer_names(src: &str, parameter: Option<&str>) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, names: &mut Vec<String>| {
        if cur.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && Some(cur.as_str()) != parameter
            && cur != "inf"
            && !names.contains(cur)
        {
            names.push(cur.clone());
        }
        cur.clear();
    };
    for ch in src.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            if cur.is_empty() && ch.is_ascii_digit() {
                continue;
            }
            cur.push(ch);
        } else {
            flush(&mut cur, &mut names);
        }
    }
    flush(&mut cur, &mut names);
    sort_var_names(&mut names);
    names
}

fn chart_coordinate(names: Option<&[String]>, s: &str) -> Res<usize> {
    if let Ok(i) = s.parse::<usize>() {
        return Ok(i);
    }
    names
        .and_then(|n| n.iter().position(|x| x == s))
        .ok_or_else(|| Failure(format!("unknown coordinate `{s}`")))
}

/// Variable by name or input index; for projective input the index is homogeneous.
fn input_variable(t: &IdealTruncation, s: &str) -> Res<usize> {
    if let Ok(i) = s.parse::<usize>() {
        return Ok(i);
    }
    t.input_names().iter().position(|x| x == s).ok_or_else(|| Failure(format!("unknown variable `{s}`")))
}

fn write_out(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn derived_ideal(ctx: &mut Ctx, t: &IdealTruncation, out: Option<&Path>) -> Res<Value> {
    for c in t.caveats() {
        ctx.caveat(c.clone());
    }
    let file = IdealFile::from_truncation(t)?;
    let text = toml::to_string(&file).map_err(|e| Failure(e.to_string()))?;
    if let Some(p) = out {
        write_out(p, &text)?;
    }
    let hilbert = t.hilbert_values();
    let dim = t.dimension().ok();
    Ok(json!({
        "variables": t.names(),
        "input_variables": t.input_names(),
        "ambient": t.input_ambient().kind(),
        "hilbert": hilbert,
        "dimension": dim,
        "degrees": circuits_json(t)?,
        "ideal_file": text,
    }))
}

fn run_command(ctx: &mut Ctx, cmd: &Command) -> Res<(&'static str, Value)> {
    Ok(match cmd {
        Command::Eval { poly, w } => {
            ctx.arg(poly);
            ctx.arg(w);
            let (f, names) = parse_trop_auto(poly)?;
            let w = parse_vector(w)?;
            let v = f.eval(&w)?;
            ("eval", json!({ "variables": names, "point": qv(&w), "value": scalar_string(&v) }))
        }
        Command::Factor { poly } => {
            ctx.arg(poly);
            let (f, names) = parse_trop_auto(poly)?;
            if names.len() > 1 {
                return fail(format!("factor needs a univariate polynomial, got variables {names:?}"));
            }
            let var = names.first().cloned().unwrap_or_else(|| "x".into());
            let f = f.with_ambient(Ambient::Affine(1)).or_else(|_| f.with_ambient(Ambient::Laurent(1)))?;
            let c = convexify(&f)?;
            let fa = factor(&f)?;
            let roots: Vec<Value> = fa.roots.iter().map(|r| json!([fmt_q(&r.w), r.mult])).collect();
            let nm = vec![var.clone()];
            (
                "factor",
                json!({
                    "convexification": c.min_syntax_with(&nm),
                    "factorization": fa.display(&var),
                    "unit": fmt_q(&fa.unit),
                    "power_of_x": fa.power_of_x,
                    "roots": roots,
                }),
            )
        }
        Command::Trop { input, field, vars } => {
            let p = Path::new(input);
            if p.is_file() {
                let t = ctx.ideal(p)?;
                ("trop", json!({ "variables": t.names(), "degrees": circuits_json(&t)? }))
            } else {
                ctx.arg(input);
                ctx.arg(field);
                let fld = ValuedField::parse(field)?;
                let par = fld.has_parameter().then_some("t");
                let names: Vec<String> = match vars {
                    Some(v) => {
                        ctx.arg(v);
                        v.split(',').map(|s| s.trim().to_string()).collect()
                    }
                    None => infer_names(input, par),
                };
                let c = parse_classical(input, &names, par)?;
                let amb = if c.terms().keys().all(|u| u.is_nonneg()) { Ambient::Affine(names.len()) } else { Ambient::Laurent(names.len()) };
                let f = c.tropicalize(&fld, amb)?;
                ("trop", json!({ "variables": names, "field": fld.name(), "tropicalization": f.min_syntax_with(&names) }))
            }
        }
        Command::Hilbert { file, degree } => {
            let t = ctx.ideal(file)?;
            if let Some(d) = degree {
                ctx.arg(&d.to_string());
                ("hilbert", json!({ "degree": d, "value": t.hilbert_function(*d)? }))
            } else {
                match t.hilbert_polynomial() {
                    Ok(h) => ("hilbert", serde_json::to_value(&h).unwrap()),
                    Err(Error::NotStabilized(m)) => {
                        ctx.caveat(CAVEAT_WINDOW);
                        ("hilbert", json!({ "values": t.hilbert_values(), "note": m }))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Command::Dim { file } => {
            let t = ctx.ideal(file)?;
            let h = t.dimension()?;
            let c = t.dimension_via_coordinates()?;
            if h != c {
                ctx.caveat("dimension estimates disagree: raise the degree bound");
            }
            ("dim", json!({ "dimension": h, "via_coordinates": c, "hilbert": t.hilbert_values() }))
        }
        Command::Degree { file } => {
            let t = ctx.ideal(file)?;
            let h = t.hilbert_polynomial()?;
            let deg = t.degree()?;
            ("degree", json!({ "degree": deg, "dimension": h.dimension, "hilbert": h.values }))
        }
        Command::Initial { file, w, order } => {
            let t = ctx.ideal(file)?;
            match (w, order) {
                (Some(w), None) => {
                    ctx.arg(w);
                    let wv = parse_vector(w)?;
                    let j = t.initial_ideal(&wv)?;
                    ("initial", json!({ "weight": qv(&wv), "hilbert": j.hilbert_values(), "degrees": circuits_json(&j)? }))
                }
                (None, Some(o)) => {
                    ctx.arg(o);
                    let ord = TermOrder::parse(o).ok_or_else(|| Failure(format!("unknown term order `{o}` (lex | revlex)")))?;
                    let mi = t.initial_ideal_termorder(ord);
                    let names = t.names();
                    let gens: Vec<String> = mi.generators.iter().map(|u| monomial_string(u, names)).collect();
                    let standard: Vec<Vec<String>> =
                        mi.standard.iter().map(|s| s.iter().map(|u| monomial_string(u, names)).collect()).collect();
                    ("initial", json!({ "order": o, "generators": gens, "standard_monomials": standard }))
                }
                _ => return fail("initial needs exactly one of -w and -o"),
            }
        }
        Command::Cone { file, order } => {
            let t = ctx.ideal(file)?;
            ctx.arg(order);
            let ord = TermOrder::parse(order).ok_or_else(|| Failure(format!("unknown term order `{order}` (lex | revlex)")))?;
            let c = t.term_order_cone(ord)?;
            ("cone", json!({ "order": order, "variables": t.names(), "cone": polyhedron_json(&c) }))
        }
        Command::Variety { file, bound } => {
            let t = ctx.ideal(file)?;
            let b = bound.unwrap_or(t.degree_bound());
            ctx.arg(&b.to_string());
            let v = variety(&t, b)?;
            for n in &v.notes {
                ctx.caveat(n.clone());
            }
            let mut j = match &v.weighted {
                Some(w) => weighted_to_json(w),
                None => complex_to_json(&v.support),
            };
            j.label = Some(v.label.to_string());
            ("variety", json!({ "chart_variables": &t.names()[1..], "complex": j }))
        }
        Command::GroebnerComplex { file } => {
            let t = ctx.ideal(file)?;
            let g = groebner_complex(&t, t.degree_bound())?;
            ("groebner-complex", json!({ "chart_variables": &t.names()[1..], "complex": complex_to_json(&g) }))
        }
        Command::Star { input, w, of } => {
            ctx.arg(w);
            let wv = parse_vector(w)?;
            let c = load_complex(ctx, input, *of)?;
            let s = match c {
                AnyComplex::Weighted(x) => AnyComplex::Weighted(x.star(&wv)),
                AnyComplex::Plain(x) => AnyComplex::Plain(x.star(&wv)),
            };
            ("star", json!({ "point": qv(&wv), "complex": s.json() }))
        }
        Command::RecessionFan { input, of } => {
            let c = load_complex(ctx, input, *of)?;
            let r = c.support().recession_fan()?;
            ("recession-fan", json!({ "complex": complex_to_json(&r) }))
        }
        Command::Mult { file, w, cell } => {
            let t = ctx.ideal(file)?;
            match (w, cell) {
                (Some(w), None) => {
                    ctx.arg(w);
                    let wv = parse_vector(w)?;
                    let m = if t.dimension()? == 0 {
                        t.multiplicity_zero_dim(&wv)?
                    } else {
                        let v = variety(&t, t.degree_bound())?;
                        match v.support.maximal_cells().into_iter().find(|c| c.in_relint(&wv)) {
                            Some(c) => cell_multiplicity(&t, c)?,
                            None if v.support.contains_point(&wv) => {
                                return fail("the point is not in the relative interior of a maximal cell")
                            }
                            None => 0,
                        }
                    };
                    ("mult", json!({ "point": qv(&wv), "multiplicity": m }))
                }
                (None, Some(k)) => {
                    ctx.arg(&k.to_string());
                    let v = variety(&t, t.degree_bound())?;
                    let cells = v.support.maximal_cells();
                    let c = cells.get(*k).ok_or_else(|| Failure(format!("cell {k} out of range (variety has {} maximal cells)", cells.len())))?;
                    let m = cell_multiplicity(&t, c)?;
                    ("mult", json!({ "cell": polyhedron_json(c), "multiplicity": m }))
                }
                _ => return fail("mult needs exactly one of -w and --cell"),
            }
        }
        Command::Balance { input } => {
            let w = weighted(load_complex(ctx, input, Of::Variety)?)?;
            let payload = match w.check_balanced()? {
                None => json!({ "balanced": true, "dim": w.dim(), "cells": w.cells().len() }),
                Some(b) => json!({
                    "balanced": false,
                    "witness": { "cell": polyhedron_json(&b.cell), "sum": b.sum.iter().map(|x| x.to_string()).collect::<Vec<_>>() }
                }),
            };
            ("balance", payload)
        }
        Command::StableIntersect { input, coordinate, a } => {
            ctx.arg(coordinate);
            ctx.arg(a);
            let av = parse_q(a.trim()).ok_or_else(|| Failure(format!("`{a}` is not a rational number")))?;
            let (c, names) = if is_json(input) {
                (load_complex(ctx, input, Of::Variety)?, None)
            } else {
                let t = ctx.ideal(input)?;
                let names = t.names()[1..].to_vec();
                (variety_complex(ctx, &t)?, Some(names))
            };
            let i = chart_coordinate(names.as_deref(), coordinate)?;
            let w = weighted(c)?;
            if !w.is_balanced()? {
                return fail("stable intersection needs a balanced complex");
            }
            let s = w.stable_intersect_hyperplane(i, &av)?;
            ("stable-intersect", json!({ "coordinate": i, "a": fmt_q(&av), "total_weight": s.total_weight(), "complex": weighted_to_json(&s) }))
        }
        Command::Specialize { file, var, a, out } => {
            let t = ctx.ideal(file)?;
            ctx.arg(var);
            ctx.arg(a);
            let i = input_variable(&t, var)?;
            let av = parse_value(a)?;
            let s = t.specialize(i, &av, &mut ctx.rng())?;
            ("specialize", derived_ideal(ctx, &s, out.as_deref())?)
        }
        Command::Eliminate { file, keep, out } => {
            let t = ctx.ideal(file)?;
            ctx.arg(keep);
            let idx = keep.split(',').map(|s| input_variable(&t, s.trim())).collect::<Res<Vec<_>>>()?;
            let e = t.eliminate_vars(&idx)?;
            ("eliminate", derived_ideal(ctx, &e, out.as_deref())?)
        }
        Command::Validate { file } => {
            let t = ctx.ideal(file)?;
            let reports = t.validate()?;
            let valid = reports.iter().all(|r| {
                r.exchange_axiom != Some(false) && r.monomial_elimination != Some(false) && r.multiplication != Some(false)
            });
            if reports.iter().any(|r| !r.notes.is_empty()) {
                ctx.caveat("some checks skipped by size guards");
            }
            ("validate", json!({ "valid": valid, "degrees": reports }))
        }
        Command::Export { input, format, of, out } => {
            let c = load_complex(ctx, input, *of)?;
            let (fmt, text) = match format {
                Format::Json => ("json", serde_json::to_string_pretty(&c.json()).unwrap() + "\n"),
                Format::Svg => {
                    let w = match &c {
                        AnyComplex::Weighted(w) => Some(w),
                        AnyComplex::Plain(_) => None,
                    };
                    ("svg", complex_to_svg(&c.support(), w)?)
                }
            };
            match out {
                Some(p) => {
                    write_out(p, &text)?;
                    ("export", json!({ "format": fmt, "path": p.display().to_string(), "bytes": text.len() }))
                }
                None => ("export", json!({ "format": fmt, "content": text })),
            }
        }
    })
}

/// Runs a parsed command line; the envelope is deterministic in the inputs and the seed.
pub fn run(cli: &Cli) -> Res<Envelope> {
    let mut ctx = Ctx { seed: cli.seed, bound: cli.degree_bound, digest: Sha256::new(), used_bound: None, caveats: vec![] };
    let (name, payload) = run_command(&mut ctx, &cli.command)?;
    let digest = ctx.digest.clone().finalize();
    Ok(Envelope {
        command: name.into(),
        inputs_digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
        degree_bound: ctx.used_bound,
        seed: cli.seed,
        caveats: ctx.caveats,
        payload,
    })
}

fn pretty_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(out, x, indent + 1);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(out, x, indent + 1);
                    }
                    Value::String(s) if s.contains('\n') => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for l in s.lines() {
                            out.push_str(&format!("{pad}  {l}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k:<20} {}\n", inline(x))),
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    pretty_value(out, x, indent + 1);
                } else {
                    out.push_str(&format!("{pad}{}\n", inline(x)));
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(inline).collect::<Vec<_>>().join(", "),
        x => x.to_string(),
    }
}

pub fn render(e: &Envelope, pretty: bool) -> String {
    if !pretty {
        return serde_json::to_string_pretty(e).unwrap() + "\n";
    }
    let mut s = String::new();
    s.push_str(&format!("{:<20} {}\n", "command", e.command));
    s.push_str(&format!("{:<20} {}\n", "inputs", e.inputs_digest));
    s.push_str(&format!("{:<20} {}\n", "degree bound", e.degree_bound.map_or("-".into(), |d| d.to_string())));
    s.push_str(&format!("{:<20} {}\n", "seed", e.seed));
    for c in &e.caveats {
        s.push_str(&format!("{:<20} {c}\n", "caveat"));
    }
    s.push('\n');
    pretty_value(&mut s, &e.payload, 0);
    s
}

/// Entry point of the binary; returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(env) => {
            print!("{}", render(&env, cli.pretty));
            if env.caveats.is_empty() {
                0
            } else {
                2
            }
        }
        Err(Failure(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_inferred_in_natural_order() {
        assert_eq!(infer_names("x10*y + 3*x2 - t", Some("t")), vec!["x2", "x10", "y"]);
        assert_eq!(infer_names("x^2 + 2", None), vec!["x"]);
    }

    #[test]
    fn vectors_parse_with_brackets_and_fractions() {
        assert_eq!(qv(&parse_vector("(-1/2, 3)").unwrap()), vec!["-1/2", "3"]);
        assert!(parse_vector("1,a").is_err());
    }

    #[test]
    fn parse_errors_point_into_the_file() {
        let src = "version = 1\nambient = \"affine\"\nvariables = [\"x\"]\ndegree_bound = 2\ngenerators = [\"x +* 1\"]\n";
        let f = IdealFile::from_toml(Path::new("f.toml"), src).unwrap();
        let Failure(m) = f.build(Path::new("f.toml"), src, None).unwrap_err();
        assert!(m.starts_with("f.toml:5:"), "{m}");
    }
}
