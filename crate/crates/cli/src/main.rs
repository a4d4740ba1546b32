use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use localface::catalog;
use localface::complex::{homology_validate_spec, v_set_elements, LocalHMethod};
use localface::duality::Monomial;
use localface::field::{FieldVisitor, SampleField};
use localface::geometry::{verify_regular, GeometricRealization};
use localface::lefschetz::{lefschetz, LefschetzMode};
use localface::linalg::rank;
use localface::regress::{self, RegressOptions};
use localface::specialize::{specialize, SpecializeOptions};
use localface::symbolic::{regression_corpus, verify_on, KxInstanceJson, SymbolicSphere};
use localface::{Error, FieldSpec, Result, Triangulation};

#[derive(Parser, Debug)]
#[command(name = "localface", version, about = "Local face modules of triangulations of simplices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field characteristic: 0 for the rationals, or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    /// Extension degree of the finite field.
    #[arg(long, global = true)]
    ext: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent specializations behind sampled verdicts.
    #[arg(long, global = true, default_value_t = 3)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Triangulation JSON file.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Built-in triangulation: gamma-t, interior-point, figure1, figure1-doctored, trivial.
    #[arg(long, global = true)]
    example: Option<String>,
    #[arg(long, global = true)]
    t: Option<usize>,
    #[arg(long, global = true)]
    d: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Excess,
    Alternating,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural checks plus homology validation over the prime field.
    Validate,
    /// Quasi-geometric and vertex-induced tests.
    Classify,
    /// The local h-polynomial.
    Localh {
        #[arg(long, value_enum, default_value_t = Method::Excess)]
        method: Method,
    },
    /// The relative local h-polynomial of a face.
    RelativeLocalh {
        /// Comma-separated vertex ids.
        #[arg(long)]
        face: String,
    },
    /// Hilbert function, socle and generators of the local face module.
    Module,
    /// Weak or strong Lefschetz test.
    Lefschetz {
        #[arg(long, value_enum, default_value_t = Mode::Strong)]
        mode: Mode,
        /// Random linear forms per specialization in weak mode.
        #[arg(long, default_value_t = 10)]
        forms: usize,
    },
    /// Gram matrix of B(·, u^w ·) on L^s.
    Gram {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        w: usize,
        /// Linear form as `id:coef,...`; defaults to the sum of all vertices.
        #[arg(long)]
        u: Option<String>,
        /// Monomials as `id^e*id;...`; defaults to the basis of L^s.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Symbolic check of the characteristic-2 differential identity.
    KxVerify {
        /// Instance JSON; without it the built-in corpus is checked.
        #[arg(long)]
        kx: Option<String>,
    },
    /// Checks a height function for regularity.
    RegularCheck {
        /// Realization JSON with coordinates and heights.
        #[arg(long)]
        realization: String,
    },
    /// Prints a built-in triangulation as JSON.
    Example { name: String },
    /// Runs the acceptance criteria.
    Regress {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

struct Loaded {
    t: Triangulation,
    hash: String,
}

fn sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read `{path}`: {e}")))
}

fn load(c: &Common) -> Result<Loaded> {
    match (&c.input, &c.example) {
        (Some(_), Some(_)) => Err(Error::Input("give either --in or --example, not both".into())),
        (Some(path), None) => {
            let text = read(path)?;
            Ok(Loaded {
                t: Triangulation::from_json(&text)?,
                hash: sha256(text.as_bytes()),
            })
        }
        (None, Some(name)) => Ok(Loaded {
            t: catalog::by_name(name, c.t, c.d)?,
            hash: sha256(format!("{name} t={:?} d={:?}", c.t, c.d).as_bytes()),
        }),
        (None, None) => Err(Error::Input("a triangulation is required: use --in or --example".into())),
    }
}

fn ids(t: &Triangulation, list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| t.vertex_index(s).ok_or_else(|| Error::UnknownVertex(s.into())))
        .collect()
}

fn parse_form(t: &Triangulation, text: &str) -> Result<Vec<(usize, i64)>> {
    text.split(',')
        .map(|part| {
            let (id, c) = part.split_once(':').unwrap_or((part, "1"));
            let j = t.vertex_index(id.trim()).ok_or_else(|| Error::UnknownVertex(id.trim().into()))?;
            let c: i64 = c.trim().parse().map_err(|_| Error::Input(format!("bad coefficient in `{part}`")))?;
            Ok((j, c))
        })
        .collect()
}

fn parse_monomials(t: &Triangulation, text: &str) -> Result<Vec<Monomial>> {
    text.split(';')
        .map(|m| {
            m.split('*')
                .map(|f| {
                    let (id, e) = f.split_once('^').unwrap_or((f, "1"));
                    let j = t.vertex_index(id.trim()).ok_or_else(|| Error::UnknownVertex(id.trim().into()))?;
                    let e: u32 = e.trim().parse().map_err(|_| Error::Input(format!("bad exponent in `{f}`")))?;
                    Ok((j, e))
                })
                .collect()
        })
        .collect()
}

fn format_monomial(t: &Triangulation, m: &Monomial) -> String {
    m.iter()
        .map(|&(j, e)| if e == 1 { t.ids()[j].clone() } else { format!("{}^{e}", t.ids()[j]) })
        .collect::<Vec<_>>()
        .join("*")
}

fn field_spec(c: &Common) -> Result<FieldSpec> {
    FieldSpec::new(c.characteristic, c.ext)
}

struct ModuleCmd<'a> {
    t: &'a Triangulation,
    seed: u64,
}

impl FieldVisitor for ModuleCmd<'_> {
    type Output = Result<Value>;
    fn visit<F: SampleField>(self, field: F) -> Result<Value> {
        let t = self.t;
        let spec = specialize(t, field, SpecializeOptions::new(self.seed))?;
        let m = &spec.module;
        let basis: Vec<Vec<Vec<String>>> = (0..=t.d())
            .map(|s| m.basis_faces(s).iter().map(|&g| t.face_ids(g)).collect())
            .collect();
        Ok(json!({
            "hilbert": m.hilbert(),
            "socle": m.socle_dims(),
            "generators": m.generator_degrees(),
            "basis_faces": basis,
            "attempts": spec.attempts,
        }))
    }
}

struct LefschetzCmd<'a> {
    t: &'a Triangulation,
    mode: LefschetzMode,
    seed: u64,
    samples: usize,
    forms: usize,
}

impl FieldVisitor for LefschetzCmd<'_> {
    type Output = Result<Value>;
    fn visit<F: SampleField>(self, field: F) -> Result<Value> {
        let r = lefschetz(self.t, field.clone(), self.mode, self.seed, self.samples, self.forms)?;
        let degrees: Vec<Value> = r
            .degrees
            .iter()
            .map(|v| {
                json!({
                    "s": v.s,
                    "target": v.target,
                    "source_dim": v.source_dim,
                    "target_dim": v.target_dim,
                    "rank": v.rank,
                    "full_rank": v.full_rank(),
                    "witness": v.witness.as_ref().map(|w| w.iter().map(|x| field.format(x)).collect::<Vec<_>>()),
                })
            })
            .collect();
        let failing: Vec<usize> = r.degrees.iter().filter(|v| !v.full_rank()).map(|v| v.s).collect();
        Ok(json!({
            "mode": r.mode,
            "verdict": r.label(),
            "holds": r.holds(),
            "failing_degrees": failing,
            "specializations": r.specializations,
            "forms_per_specialization": r.forms_per_specialization,
            "degrees": degrees,
        }))
    }
}

struct GramCmd<'a> {
    t: &'a Triangulation,
    seed: u64,
    s: usize,
    w: usize,
    u: Option<Vec<(usize, i64)>>,
    basis: Option<Vec<Monomial>>,
}

impl FieldVisitor for GramCmd<'_> {
    type Output = Result<Value>;
    fn visit<F: SampleField>(self, field: F) -> Result<Value> {
        let spec = specialize(self.t, field.clone(), SpecializeOptions::new(self.seed).with_sphere())?;
        let u: Option<Vec<(usize, F::Elem)>> = self
            .u
            .map(|form| form.into_iter().map(|(j, c)| (j, field.from_i64(c))).collect());
        let g = spec.gram(self.t, self.s, self.w, u.as_deref(), self.basis)?;
        let k = g.entries.rows();
        let entries: Vec<Vec<String>> = (0..k)
            .map(|i| (0..k).map(|j| field.format(g.entries.get(i, j))).collect())
            .collect();
        let r = rank(&field, &g.entries);
        let isotropic: Vec<String> = (0..k)
            .filter(|&i| field.is_zero(g.entries.get(i, i)))
            .map(|i| format_monomial(self.t, &g.basis[i]))
            .collect();
        Ok(json!({
            "s": g.s,
            "w": g.w,
            "basis": g.basis.iter().map(|m| format_monomial(self.t, m)).collect::<Vec<_>>(),
            "entries": entries,
            "rank": r,
            "nondegenerate": r == k,
            "isotropic_basis_vectors": isotropic,
            "facets_checked": spec.sphere()?.facets_checked,
        }))
    }
}

fn kx_report(t: &Triangulation, sphere: &SymbolicSphere, inst: &localface::symbolic::KxInstance) -> Result<Value> {
    let v = verify_on(sphere, t, inst)?;
    let names = sphere.var_names();
    Ok(json!({
        "name": inst.name,
        "mode": inst.mode,
        "s": v.s,
        "holds": v.holds,
        "lhs": v.lhs.simplify().format_with(names),
        "rhs": v.rhs.simplify().format_with(names),
    }))
}

/// Returns the result body and whether the run should exit with status 2.
fn execute(cmd: &Command, c: &Common) -> Result<(Map<String, Value>, Option<String>, bool)> {
    let spec = field_spec(c)?;
    let mut hash = None;
    let mut failed = false;
    let body = match cmd {
        Command::Regress { criterion } => {
            let opts = RegressOptions {
                seed: c.seed,
                samples: c.samples,
            };
            let outcomes = match criterion {
                Some(id) => vec![regress::run(*id, opts)?],
                None => regress::run_all(opts),
            };
            failed = outcomes.iter().any(|o| !o.passed);
            json!({ "all_passed": !failed, "criteria": outcomes })
        }
        Command::KxVerify { kx: None } if c.input.is_none() && c.example.is_none() => {
            let mut reports = Vec::new();
            for (t, inst) in regression_corpus() {
                let sphere = SymbolicSphere::new(&t)?;
                reports.push(kx_report(&t, &sphere, &inst)?);
            }
            let all = reports.iter().all(|r| r["holds"] == true);
            json!({ "all_hold": all, "instances": reports })
        }
        _ => {
            let Loaded { t, hash: h } = load(c)?;
            hash = Some(h);
            match cmd {
                Command::Validate => {
                    let report = t.validate();
                    let homology = if report.is_ok() {
                        let prime = match spec {
                            FieldSpec::Finite { p, .. } => FieldSpec::Finite { p, m: 1 },
                            FieldSpec::Rational => FieldSpec::Rational,
                        };
                        Some(homology_validate_spec(&t, prime)?)
                    } else {
                        None
                    };
                    let valid = report.is_ok() && homology.as_ref().is_some_and(|h| h.passed());
                    json!({
                        "valid": valid,
                        "violations": report.violations,
                        "homology": homology.map(|h| json!({
                            "field": h.field,
                            "passed": h.passed(),
                            "failures": h.failures(),
                        })),
                    })
                }
                Command::Classify => json!({ "classification": t.classify() }),
                Command::Localh { method } => {
                    let d = t.d();
                    let excess = t.local_h(LocalHMethod::Excess).padded(d + 1);
                    match method {
                        Method::Excess => json!({ "local_h": excess }),
                        Method::Alternating => json!({ "local_h": t.local_h(LocalHMethod::Alternating).padded(d + 1) }),
                        Method::Both => {
                            let alt = t.local_h(LocalHMethod::Alternating).padded(d + 1);
                            json!({ "local_h": excess, "alternating": alt, "agree": excess == alt })
                        }
                    }
                }
                Command::RelativeLocalh { face } => {
                    let e = localface::BitSet::from_indices(ids(&t, face)?);
                    let l = t.relative_local_h(e)?;
                    json!({
                        "face": t.face_ids(e),
                        "carrier": t.sigma(e).map(v_set_elements),
                        "relative_local_h": l.padded(t.d() - e.len() + 1),
                    })
                }
                Command::Module => spec.dispatch(ModuleCmd { t: &t, seed: c.seed })??,
                Command::Lefschetz { mode, forms } => spec.dispatch(LefschetzCmd {
                    t: &t,
                    mode: match mode {
                        Mode::Weak => LefschetzMode::Weak,
                        Mode::Strong => LefschetzMode::Strong,
                    },
                    seed: c.seed,
                    samples: c.samples,
                    forms: *forms,
                })??,
                Command::Gram { s, w, u, basis } => spec.dispatch(GramCmd {
                    t: &t,
                    seed: c.seed,
                    s: *s,
                    w: *w,
                    u: u.as_deref().map(|u| parse_form(&t, u)).transpose()?,
                    basis: basis.as_deref().map(|b| parse_monomials(&t, b)).transpose()?,
                })??,
                Command::KxVerify { kx } => {
                    let sphere = SymbolicSphere::new(&t)?;
                    let Some(path) = kx else {
                        return Err(Error::Input("kx-verify on a given triangulation needs --kx".into()));
                    };
                    let raw: KxInstanceJson = serde_json::from_str(&read(path)?)?;
                    let inst = raw.build(&t)?;
                    json!({ "instances": [kx_report(&t, &sphere, &inst)?] })
                }
                Command::RegularCheck { realization } => {
                    let g = GeometricRealization::from_json(&t, &read(realization)?)?;
                    json!({ "regularity": verify_regular(&t, &g)? })
                }
                Command::Example { .. } | Command::Regress { .. } => unreachable!("handled above"),
            }
        }
    };
    let Value::Object(map) = body else { unreachable!() };
    Ok((map, hash, failed))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate => "validate",
        Command::Classify => "classify",
        Command::Localh { .. } => "localh",
        Command::RelativeLocalh { .. } => "relative-localh",
        Command::Module => "module",
        Command::Lefschetz { .. } => "lefschetz",
        Command::Gram { .. } => "gram",
        Command::KxVerify { .. } => "kx-verify",
        Command::RegularCheck { .. } => "regular-check",
        Command::Example { .. } => "example",
        Command::Regress { .. } => "regress",
    }
}

fn render_text(map: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in map {
        match v {
            Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{k}:\n"));
                for item in items {
                    out.push_str(&format!("  {item}\n"));
                }
            }
            other => out.push_str(&format!("{k}: {other}\n")),
        }
    }
    out
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let c = &cli.common;
    if let Command::Example { name } = &cli.command {
        return match catalog::by_name(name, c.t, c.d) {
            Ok(t) => {
                emit(&serde_json::to_string_pretty(&t.to_json()).expect("triangulations serialize"));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    match execute(&cli.command, c) {
        Ok((body, hash, failed)) => {
            let mut report = Map::new();
            report.insert("command".into(), json!(command_name(&cli.command)));
            report.insert("input_sha256".into(), json!(hash));
            let field = match cli.command {
                Command::KxVerify { .. } => "GF(2)(a)".to_string(),
                _ => field_spec(c).map(|f| f.to_string()).unwrap_or_default(),
            };
            report.insert("field".into(), json!(field));
            report.insert("seed".into(), json!(c.seed));
            report.insert("samples".into(), json!(c.samples));
            report.extend(body);
            match c.format {
                Format::Json => emit(&serde_json::to_string_pretty(&Value::Object(report)).expect("JSON values serialize")),
                Format::Text => emit(render_text(&report).trim_end()),
            }
            if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
