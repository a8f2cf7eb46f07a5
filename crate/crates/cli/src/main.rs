//! `qrep`: file-based front end to the quiver representation library.
//!
//! Exit status: 0 on success, 2 for invalid input or usage, 3 when a computation
//! stops at a declared limit (undecided decomposition, irrational eigenvalue).

mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qrep_core::classify::{
    dynkin_indecomposables, euclidean_series, mesh_hom_dim, trichotomy, Classified, ZQuiver, ZVertex,
};
use qrep_core::decomp::{krs_decompose, radn_hom};
use qrep_core::forms::{classify_graph, enumerate_roots};
use qrep_core::io::{decomposition_json, graph_type_json, morphism_json, GroupRepJson, QuiverJson, RepJson};
use qrep_core::kronecker::{jordan_hom_basis, jordan_rep, kronecker_classify, kronecker_indec, KroneckerIndec};
use qrep_core::radical::{klein_classify, klein_indec, separated_s, separated_t, KleinIndec};
use qrep_core::reflect::coxeter_power;
use qrep_core::rep::{ext_dim, ext_dim_standard, hom_basis};
use qrep_core::wild::{embed, EmbedTarget};
use qrep_core::{Error, Field, Graph, GraphType, Representation};

#[derive(Parser)]
#[command(name = "qrep", version, about = "Exact computations with quiver representations")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Work over this field (`Q`, `GF:p` or `GF(p)`) instead of the one in the files.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin, Euclidean or neither, for the underlying graph of a quiver.
    ClassifyGraph { quiver: PathBuf },
    /// Roots of the Tits form (Dynkin: all roots; Euclidean: real roots in the box `-δ..=δ`).
    Roots {
        quiver: PathBuf,
        #[arg(long)]
        positive: bool,
    },
    /// One indecomposable per positive root of a Dynkin quiver.
    Indecomposables { quiver: PathBuf },
    /// Preprojectives `C^{-r}P(i)` (or preinjectives `C^r I(i)`) of a Euclidean quiver for `r <= N`.
    Series {
        quiver: PathBuf,
        #[arg(long)]
        max_r: usize,
        #[arg(long)]
        preinjective: bool,
    },
    /// Applies a reflection word such as `[["+",2],["-",1]]`, inline or from a file.
    Reflect {
        quiver: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// `C^r` for `r > 0`, `C^{-|r|}` for `r < 0`.
    Coxeter {
        quiver: PathBuf,
        rep: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        power: i64,
    },
    /// Krull-Remak-Schmidt decomposition with an isomorphism witness.
    Decompose { rep: PathBuf },
    /// A basis of `Hom(X, Y)`, or of `Rad^n(X, Y)` with `--rad`.
    Hom {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, requires = "universe")]
        rad: Option<usize>,
        /// Directory of representation files listing the indecomposables to factor through.
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// `dim Ext¹(Z, X)`.
    Ext { z: PathBuf, x: PathBuf },
    #[command(subcommand)]
    Kronecker(KroneckerCmd),
    #[command(subcommand)]
    Jordan(JordanCmd),
    /// The separated quiver, or `S` (`T` with `--inverse`) applied to a representation.
    Separated {
        quiver: PathBuf,
        rep: Option<PathBuf>,
        #[arg(long, requires = "rep")]
        inverse: bool,
    },
    #[command(subcommand)]
    Klein(KleinCmd),
    #[command(subcommand)]
    Wild(WildCmd),
    /// `dim` of the mesh category space between two vertices `i[r]` of `ℤQ`.
    MeshHom {
        quiver: PathBuf,
        #[arg(long, value_parser = parse_zvertex, allow_hyphen_values = true)]
        from: ZVertex,
        #[arg(long, value_parser = parse_zvertex, allow_hyphen_values = true)]
        to: ZVertex,
        /// Lowest level of the window; defaults to one below the lower end.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
    },
}

#[derive(Subcommand)]
enum KroneckerCmd {
    /// A Kronecker indecomposable from `{"kind":"P","r":1}`, `{"kind":"R","p":2,"point":["5","1"]}`, ...
    Make { kind: String },
    /// Multiplicities of `P_r`, `I_r` and `R_{p,λ}`.
    Classify { rep: PathBuf },
}

#[derive(Subcommand)]
enum JordanCmd {
    /// `J(p, λ)` on the Jordan quiver.
    Make(JordanArgs),
    /// A basis of `Hom(J(p, λ), J(q, μ))`.
    Hom {
        #[command(flatten)]
        x: JordanArgs,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Args)]
struct JordanArgs {
    #[arg(long)]
    p: usize,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Subcommand)]
enum KleinCmd {
    /// A Klein four indecomposable from `{"kind":"k[G]"}` or `{"kind":"T","kronecker":{...}}`.
    Make { kind: String },
    /// Splits off `k[G]` and classifies the rest through the Kronecker quiver.
    Classify { rep: PathBuf },
}

#[derive(Subcommand)]
enum WildCmd {
    /// `E` (gamma2), `F_Q` (k3) or a subspace-quiver embedding (subspace).
    Embed {
        quiver: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        target: Target,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Gamma2,
    K3,
    Subspace,
}

/// Why a run stopped early.
pub enum Failure {
    Core(Error),
    /// Unreadable file or malformed JSON.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_incompleteness() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input(s) => s.clone(),
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_zvertex(s: &str) -> Result<ZVertex, String> {
    let (i, r) = s.split_once(',').ok_or_else(|| format!("expected i,r, got {s:?}"))?;
    let i = i.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
    let r = r.trim().parse().map_err(|_| format!("bad level in {s:?}"))?;
    Ok(ZVertex::new(i, r))
}

fn rep_json(x: &Representation) -> Value {
    serde_json::to_value(RepJson::from_rep(x)).expect("serializable")
}

fn classified_json(c: &Classified) -> Value {
    let mut v = serde_json::to_value(&c.record).expect("serializable");
    v["rep"] = rep_json(&c.rep);
    v
}

fn basis_json(fs: &[qrep_core::Morphism]) -> Value {
    json!({"dim": fs.len(), "basis": fs.iter().map(morphism_json).collect::<Vec<_>>()})
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let field = cli.field;
    let make_field = field.unwrap_or(Field::Rationals);
    match &cli.command {
        Command::ClassifyGraph { quiver } => {
            let q = load::quiver(quiver)?;
            Ok(graph_type_json(&classify_graph(&Graph::of_quiver(&q))?))
        }
        Command::Roots { quiver, positive } => {
            let q = load::quiver(quiver)?;
            let set = enumerate_roots(&Graph::of_quiver(&q))?;
            let mut roots = if *positive { set.positive() } else { set.roots.clone() };
            roots.sort();
            Ok(json!(roots))
        }
        Command::Indecomposables { quiver } => {
            let q = load::quiver(quiver)?;
            let found = dynkin_indecomposables(make_field, &q)?;
            Ok(Value::Array(found.iter().map(classified_json).collect()))
        }
        Command::Series { quiver, max_r, preinjective } => {
            let q = load::quiver(quiver)?;
            let s = euclidean_series(make_field, &q, *max_r)?;
            let list = if *preinjective { &s.preinjective } else { &s.preprojective };
            Ok(Value::Array(list.iter().map(classified_json).collect()))
        }
        Command::Reflect { quiver, rep, word } => {
            let q = load::quiver(quiver)?;
            let x = load::rep(rep, Some(&q), field)?;
            Ok(rep_json(&*load::word(word)?.apply(&x)?))
        }
        Command::Coxeter { quiver, rep, power } => {
            let q = load::quiver(quiver)?;
            let x = load::rep(rep, Some(&q), field)?;
            Ok(rep_json(&*coxeter_power(&x, *power)?))
        }
        Command::Decompose { rep } => {
            let x = load::rep(rep, None, field)?;
            let d = krs_decompose(&x)?;
            let euclidean = matches!(classify_graph(&Graph::of_quiver(x.quiver())), Ok(GraphType::Euclidean { .. }));
            let tags: Vec<Option<Value>> = d
                .summands
                .iter()
                .map(|s| {
                    euclidean
                        .then(|| trichotomy(&s.rep).ok())
                        .flatten()
                        .map(|t| serde_json::to_value(t).expect("serializable"))
                })
                .collect();
            Ok(decomposition_json(&d, &tags))
        }
        Command::Hom { x, y, rad, universe } => {
            let x = load::rep(x, None, field)?;
            let y = load::rep(y, Some(x.quiver()), field)?;
            match (rad, universe) {
                (Some(n), Some(dir)) => {
                    let u = load::universe(dir, field)?;
                    Ok(basis_json(&radn_hom(&x, &y, *n, &u)?.morphisms()))
                }
                _ => Ok(basis_json(&hom_basis(&x, &y)?)),
            }
        }
        Command::Ext { z, x } => {
            let z = load::rep(z, None, field)?;
            let x = load::rep(x, Some(z.quiver()), field)?;
            let dim = if z.quiver().is_acyclic() { ext_dim(&z, &x)? } else { ext_dim_standard(&z, &x)? };
            Ok(json!({ "dim": dim }))
        }
        Command::Kronecker(KroneckerCmd::Make { kind }) => {
            let kind: KroneckerIndec = load::inline_or_file(kind, "Kronecker indecomposable")?;
            Ok(rep_json(&kronecker_indec(&kind, make_field)?))
        }
        Command::Kronecker(KroneckerCmd::Classify { rep }) => {
            let x = load::rep(rep, None, field)?;
            let found = kronecker_classify(&x)?;
            Ok(Value::Array(
                found
                    .iter()
                    .map(|(k, m)| json!({"label": k.to_string(), "summand": k, "multiplicity": m}))
                    .collect(),
            ))
        }
        Command::Jordan(JordanCmd::Make(a)) => {
            let lambda = make_field.parse_scalar(&a.lambda)?;
            Ok(rep_json(&jordan_rep(make_field, a.p, &lambda)?))
        }
        Command::Jordan(JordanCmd::Hom { x, q, mu }) => {
            let lambda = make_field.parse_scalar(&x.lambda)?;
            let mu = make_field.parse_scalar(mu)?;
            Ok(basis_json(&jordan_hom_basis(make_field, x.p, &lambda, *q, &mu)?))
        }
        Command::Separated { quiver, rep, inverse } => {
            let q = load::quiver(quiver)?;
            match rep {
                None => Ok(serde_json::to_value(QuiverJson::from(&q.separated())).expect("serializable")),
                Some(path) if *inverse => {
                    let y = load::rep(path, Some(&q.separated()), field)?;
                    Ok(rep_json(&*separated_t(&y, &q)?))
                }
                Some(path) => {
                    let x = load::rep(path, Some(&q), field)?;
                    Ok(rep_json(&*separated_s(&x)?))
                }
            }
        }
        Command::Klein(KleinCmd::Make { kind }) => {
            let kind: KleinIndec = load::inline_or_file(kind, "Klein four indecomposable")?;
            let f = field.unwrap_or(Field::Prime(2));
            let x = klein_indec(&kind, f)?;
            Ok(serde_json::to_value(GroupRepJson::from_group_rep(&x)).expect("serializable"))
        }
        Command::Klein(KleinCmd::Classify { rep }) => {
            let x = load::group_rep(rep, field)?;
            let found = klein_classify(&x)?;
            Ok(Value::Array(
                found
                    .iter()
                    .map(|(k, m)| json!({"label": k.to_string(), "summand": k, "multiplicity": m}))
                    .collect(),
            ))
        }
        Command::Wild(WildCmd::Embed { quiver, rep, target }) => {
            let q = load::quiver(quiver)?;
            let x = load::rep(rep, Some(&q), field)?;
            let t = match target {
                Target::Gamma2 => EmbedTarget::Gamma2,
                Target::K3 => EmbedTarget::K3,
                Target::Subspace => EmbedTarget::Subspace,
            };
            Ok(rep_json(&*embed(&x, t)?))
        }
        Command::MeshHom { quiver, from, to, window } => {
            let q = load::quiver(quiver)?;
            let r_min = window.unwrap_or(from.level.min(to.level) - 1);
            let zq = ZQuiver::new(q, r_min)?;
            Ok(json!({ "dim": mesh_hom_dim(&zq, *from, *to)? }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(v) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
