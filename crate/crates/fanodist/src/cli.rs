//! Command-line front end. Every subcommand calls one library operation and
//! prints a [`Report`].

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::cohomology::{
    bott, deformation_dims, dolgachev_h0, dolgachev_vanishing, flenner_vanishing, wci_hilbert,
    wci_index, wci_o_cohomology, CohomologyQuery, WciSpec, WeightedSpace,
};
use crate::distribution::{
    class_symbolic, class_via_rank, restrict_class, singular_locus_dim, skew_normal_form,
    ClassResult,
};
use crate::error::{Error, Result};
use crate::grassmann::{
    class_on_g14, dominance_test, grass_form_space_dim, lines_through_point, maple_verification,
    maple_verification_sparsified, section_form_space_dim, section_kernel_dim, Dominance,
    ThreePlane,
};
use crate::json::{self, JsonRational};
use crate::report::{self, Report};
use crate::skew::SkewMatrix;
use crate::text::{parse_form, parse_polynomial};
use crate::verify::{run_suite, Group, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A `u64` seed or `random`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "random" {
            Ok(Seed::Random)
        } else {
            s.parse()
                .map(Seed::Fixed)
                .map_err(|_| format!("expected an integer or `random`, got `{s}`"))
        }
    }
}

impl Seed {
    fn resolve(self) -> u64 {
        match self {
            Seed::Fixed(s) => s,
            Seed::Random => rand::random(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fanodist",
    version,
    about = "Exact computations for codimension-one distributions"
)]
pub struct Cli {
    /// Seed for every randomized check (`random` for a fresh one).
    #[arg(long, global = true, default_value = "0")]
    seed: Seed,
    /// Worker threads for parallel expansions.
    #[arg(long, global = true, env = "FANODIST_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FormInput {
    /// JSON file holding a skew matrix (array of rows of rational strings).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// A 1-form in the text grammar, e.g. `z0 dz1 - z1 dz0`.
    #[arg(long)]
    form: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class of a twisted 1-form, from a skew matrix or a form.
    Class {
        #[command(flatten)]
        input: FormInput,
        /// Ambient dimension for `--form` (number of homogeneous coordinates).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Symplectic normal form `Pᵀ M P = diag(J, …, J, 0, …)`.
    NormalForm {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Pfaffian of a skew matrix, or all principal sub-Pfaffians of a size.
    Pfaffian {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Secant stratum, Pfaffian threshold and singular locus of a skew matrix.
    Secant {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Class of a form restricted to a hypersurface of a weighted space.
    RestrictClass {
        #[arg(long)]
        form: String,
        #[arg(long)]
        hypersurface: String,
        /// Comma-separated weights, one per coordinate.
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
    },
    /// `h^p(Pⁿ, Ω^q(t))`.
    Bott {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// `h⁰(P(a), Ω̄^q(t))`, or a vanishing verdict when `--p` is positive.
    WpsH0 {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// Invariants of a weighted complete intersection.
    Wci {
        #[command(flatten)]
        spec: WciArgs,
        #[command(flatten)]
        query: WciQuery,
    },
    /// Deformation numbers `h^i(T_X)` of a weighted complete intersection.
    Deform {
        #[command(flatten)]
        spec: WciArgs,
    },
    /// The Grassmannian of lines.
    #[command(subcommand)]
    Grass(GrassCommand),
    /// Run the acceptance suite.
    VerifyPaper {
        #[arg(long, value_enum)]
        only: Option<Group>,
        /// Use the prime-specialized chart check instead of the symbolic one.
        #[arg(long)]
        sparsified: bool,
    },
}

#[derive(Debug, Args)]
struct WciArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct WciQuery {
    /// Fano index `Σaᵢ − Σdⱼ`.
    #[arg(long)]
    index: bool,
    /// Hilbert function at degree `T`.
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    hilbert: Option<i64>,
    /// Deformation numbers.
    #[arg(long)]
    deform: bool,
    /// `h^i(O_X(t))` given as `I,T`.
    #[arg(
        long,
        value_name = "I,T",
        value_delimiter = ',',
        num_args = 1,
        allow_negative_numbers = true
    )]
    o_cohomology: Option<Vec<i64>>,
    /// Vanishing verdict for `h^p(Ω^q_X(t))` given as `P,Q,T`.
    #[arg(
        long,
        value_name = "P,Q,T",
        value_delimiter = ',',
        num_args = 1,
        allow_negative_numbers = true
    )]
    vanishing: Option<Vec<i64>>,
}

#[derive(Debug, Subcommand)]
enum GrassCommand {
    /// Dimension of the space of twisted forms on `G(1,n)` and its sections.
    Dims {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        section_codim: Option<u32>,
    },
    /// The chart computation on `G(1,4)`.
    VerifyG14 {
        #[arg(long)]
        sparsified: bool,
    },
    /// Class of `ω|G(1,4)` for a `10×10` skew matrix.
    Class {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Dominance of the projection from a 3-plane (JSON: four 10-vectors).
    Dominance {
        #[arg(long)]
        h_span: PathBuf,
    },
    /// The 3-plane of lines through a point of `P⁴`.
    Lines {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        point: Vec<String>,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Some(n) = cli.threads {
        // a pool may already exist when run repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let start = Instant::now();
    match execute(&cli) {
        Ok((mut report, passed)) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            Outcome {
                code: if passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: report::domain_error_json(&e) + "\n",
        },
        Err(Failure::Io(path, e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: report::error_json("io", &format!("{}: {e}", path.display())) + "\n",
        },
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_matrix(path: &Path) -> std::result::Result<SkewMatrix, Failure> {
    Ok(SkewMatrix::from_json(&read(path)?)?)
}

fn class_value(c: &ClassResult) -> (String, Value) {
    match c {
        ClassResult::ZeroForm => ("zero-form".into(), json!({ "class": null })),
        ClassResult::Class { k, certificate } => (
            format!("class-{k}"),
            json!({ "class": k, "certificate": certificate.to_string() }),
        ),
    }
}

fn wci(args: &WciArgs) -> Result<WciSpec> {
    WciSpec::new(
        WeightedSpace::new(args.weights.clone())?,
        args.degrees.clone(),
    )
}

fn deformation_report(command: &str, x: &WciSpec) -> Result<Report> {
    let d = deformation_dims(x)?;
    Ok(Report::new(
        command,
        "ok",
        json!({
            "h0": report::biguint(&d.h0_t),
            "h1": report::bigint(&d.h1_t),
            "h2": report::biguint(&d.h2_t),
            "aut_dim": report::biguint(&d.aut_dim),
            "sections": report::biguint(&d.sections),
        }),
    )
    .anchor("deformation-count")
    .branch("h1 = sum h0(O_X(d_j)) - dim Aut"))
}

fn vanishing_report(
    command: &str,
    v: crate::cohomology::Evaluated<crate::cohomology::Vanishing>,
) -> Report {
    let verdict = serde_json::to_value(v.value)
        .expect("enum")
        .as_str()
        .unwrap_or_default()
        .to_string();
    Report::new(command, verdict.clone(), json!({ "vanishing": verdict })).branch(v.branch)
}

fn query3(v: &[i64], what: &str) -> Result<CohomologyQuery> {
    match v {
        [p, q, t] => CohomologyQuery::new(*p, *q, *t),
        _ => Err(Error::InvalidArgument(format!("{what} expects P,Q,T"))),
    }
}

fn execute(cli: &Cli) -> std::result::Result<(Report, bool), Failure> {
    let ok = |r: Report| Ok((r, true));
    match &cli.command {
        Command::Class { input, dim } => {
            if let Some(path) = &input.matrix {
                let m = read_matrix(path)?;
                let r = class_via_rank(&m)?;
                let values = json!({ "class": r.class_k, "rank": r.rank, "stratum": r.stratum });
                ok(Report::new("class", format!("class-{}", r.class_k), values)
                    .anchor("secant-stratification"))
            } else {
                let text = input.form.as_deref().unwrap_or_default();
                let dim = dim.ok_or_else(|| Error::InvalidArgument("--form needs --dim".into()))?;
                let (verdict, values) = class_value(&class_symbolic(&parse_form(text, dim)?)?);
                ok(Report::new("class", verdict, values).anchor("secant-stratification"))
            }
        }
        Command::NormalForm { matrix } => {
            let m = read_matrix(matrix)?;
            let (p, k) = skew_normal_form(&m)?;
            let normal = m.congruence(&p)?;
            let values = json!({
                "class": k,
                "blocks": k + 1,
                "basis": report::matrix(&p),
                "normal_form": report::matrix(normal.matrix()),
            });
            ok(Report::new("normal-form", format!("class-{k}"), values))
        }
        Command::Pfaffian { matrix, size } => {
            let m = read_matrix(matrix)?;
            match size {
                None => {
                    let pf = m.pfaffian()?;
                    ok(Report::new(
                        "pfaffian",
                        "ok",
                        json!({ "pfaffian": report::rational(&pf) }),
                    ))
                }
                Some(s) => {
                    let subs = m.sub_pfaffians(*s)?;
                    let map: Map<String, Value> = subs
                        .iter()
                        .map(|(idx, v)| {
                            let key = idx
                                .iter()
                                .map(usize::to_string)
                                .collect::<Vec<_>>()
                                .join(",");
                            (key, report::rational(v))
                        })
                        .collect();
                    let all_zero = subs.values().all(num_traits::Zero::is_zero);
                    let verdict = if all_zero {
                        "all-vanish"
                    } else {
                        "some-nonzero"
                    };
                    ok(Report::new(
                        "pfaffian",
                        verdict,
                        json!({ "size": s, "sub_pfaffians": map }),
                    ))
                }
            }
        }
        Command::Secant { matrix } => {
            let m = read_matrix(matrix)?;
            let r = class_via_rank(&m)?;
            let values = json!({
                "rank": r.rank,
                "stratum": r.stratum,
                "class": r.class_k,
                "vanished_pfaffian_size": r.vanished_pfaffian_size,
                "singular_locus_dim": singular_locus_dim(&m)?,
            });
            ok(Report::new("secant", format!("sec-{}", r.stratum), values)
                .anchor("secant-stratification"))
        }
        Command::RestrictClass {
            form,
            hypersurface,
            weights,
        } => {
            let w = parse_form(form, weights.len())?;
            let f = parse_polynomial(hypersurface, weights.len())?;
            let (verdict, values) = class_value(&restrict_class(&w, &f, weights)?);
            ok(Report::new("restrict-class", verdict, values).anchor("quadric-restriction"))
        }
        Command::Bott { n, p, q, t } => {
            let e = bott(*n, CohomologyQuery::new(*p, *q, *t)?)?;
            ok(
                Report::new("bott", "ok", json!({ "value": report::biguint(&e.value) }))
                    .branch(e.branch),
            )
        }
        Command::WpsH0 { weights, p, q, t } => {
            let space = WeightedSpace::new(weights.clone())?;
            if *p > 0 {
                let v = dolgachev_vanishing(&space, CohomologyQuery::new(*p, *q, *t)?);
                return ok(vanishing_report("wps-h0", v));
            }
            let e = dolgachev_h0(&space, *q, *t)?;
            ok(Report::new(
                "wps-h0",
                "ok",
                json!({ "value": report::biguint(&e.value) }),
            )
            .branch(e.branch))
        }
        Command::Wci { spec, query } => {
            let x = wci(spec)?;
            if query.deform {
                return ok(deformation_report("wci", &x)?);
            }
            if let Some(t) = query.hilbert {
                let v = wci_hilbert(&x, t);
                return ok(Report::new(
                    "wci",
                    "ok",
                    json!({ "t": t, "hilbert": report::biguint(&v) }),
                ));
            }
            if let Some(it) = &query.o_cohomology {
                let [i, t] = it[..] else {
                    return Err(Error::InvalidArgument("--o-cohomology expects I,T".into()).into());
                };
                let e = wci_o_cohomology(&x, i, t)?;
                let values = json!({ "i": i, "t": t, "value": report::biguint(&e.value) });
                return ok(Report::new("wci", "ok", values).branch(e.branch));
            }
            if let Some(pqt) = &query.vanishing {
                return ok(vanishing_report(
                    "wci",
                    flenner_vanishing(&x, query3(pqt, "--vanishing")?)?,
                ));
            }
            let values = json!({ "dim": x.dim(), "index": wci_index(&x) });
            ok(Report::new(
                "wci",
                if wci_index(&x) > 0 {
                    "fano"
                } else {
                    "not-fano"
                },
                values,
            ))
        }
        Command::Deform { spec } => ok(deformation_report("deform", &wci(spec)?)?),
        Command::Grass(g) => grass(cli, g),
        Command::VerifyPaper { only, sparsified } => {
            let config = SuiteConfig {
                seed: cli.seed.resolve(),
                sparsified: *sparsified,
            };
            let mut results = run_suite(&config, *only);
            if !cli.timing {
                for r in &mut results {
                    r.elapsed_ms = None;
                }
            }
            let passed = results.iter().all(|r| r.passed);
            let lines: Vec<String> = results.iter().map(ToString::to_string).collect();
            let mut values = Map::new();
            values.insert("seed".into(), json!(config.seed));
            values.insert(
                "criteria".into(),
                serde_json::to_value(&results).expect("plain data"),
            );
            let mut r = Report::new(
                "verify-paper",
                if passed { "pass" } else { "fail" },
                Value::Object(values),
            );
            if cli.format == Format::Text {
                r.values = Value::String(lines.join("\n"));
            }
            Ok((r, passed))
        }
    }
}

fn grass(cli: &Cli, g: &GrassCommand) -> std::result::Result<(Report, bool), Failure> {
    match g {
        GrassCommand::Dims { n, section_codim } => {
            let mut values = Map::new();
            values.insert("n".into(), json!(n));
            values.insert(
                "form_space_dim".into(),
                report::biguint(&grass_form_space_dim(*n)?),
            );
            if let Some(i) = section_codim {
                let s = section_kernel_dim(*n, *i)?;
                values.insert("ambient_dim".into(), json!(s.ambient_dim));
                values.insert("codim".into(), json!(i));
                values.insert("kernel_dim".into(), json!(s.kernel_dim));
                values.insert("kernel_steps".into(), json!(s.steps));
                values.insert(
                    "section_form_space_dim".into(),
                    report::biguint(&section_form_space_dim(*n, *i)?),
                );
            }
            Ok((
                Report::new("grass dims", "ok", Value::Object(values))
                    .anchor("grassmannian-dimensions"),
                true,
            ))
        }
        GrassCommand::VerifyG14 { sparsified } => {
            if *sparsified {
                let r = maple_verification_sparsified()?;
                let passed = r.chart_class == Some(2) && r.nonzero_pf8 > 0;
                let values = serde_json::to_value(&r).expect("plain data");
                let verdict = if passed { "pass" } else { "fail" };
                return Ok((
                    Report::new("grass verify-g14", verdict, values)
                        .anchor("g14-coefficient-ideal"),
                    passed,
                ));
            }
            let r = maple_verification()?;
            let memberships: Vec<Value> = r
                .memberships
                .iter()
                .map(|m| {
                    json!({
                        "rows": m.indices,
                        "member": m.member,
                        "verified": m.verified,
                        "candidates": m.candidates,
                        "certificate": m.certificate.iter().map(|t| json!({
                            "coefficient": report::rational(&t.coefficient),
                            "a": [t.pair.0, t.pair.1],
                            "slot": t.slot,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let passed = r.all_members();
            let values = json!({
                "slots": r.slots,
                "span_dim": r.span_dim,
                "coefficient_degree": r.max_coefficient_degree,
                "linear_span_members": r.linear_span_members,
                "scalar_matches_size6": r.scalar_matches_size6,
                "span_members_size6": r.span_members_size6,
                "torus_homogeneous": r.torus_homogeneous,
                "certified": r.memberships.iter().filter(|m| m.member && m.verified).count(),
                "memberships": memberships,
            });
            let verdict = if passed { "pass" } else { "fail" };
            Ok((
                Report::new("grass verify-g14", verdict, values).anchor("g14-coefficient-ideal"),
                passed,
            ))
        }
        GrassCommand::Class { matrix } => {
            let m = read_matrix(matrix)?;
            let ambient = class_via_rank(&m)?.class_k;
            let (verdict, mut values) = class_value(&class_on_g14(&m)?);
            values["ambient_class"] = json!(ambient);
            Ok((
                Report::new("grass class", verdict, values).anchor("g14-class-drop"),
                true,
            ))
        }
        GrassCommand::Dominance { h_span } => {
            let rows: Vec<Vec<JsonRational>> = json::from_str(&read(h_span)?)?;
            let span = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect();
            let h = ThreePlane::new(span)?;
            let seed = cli.seed.resolve();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = dominance_test(&h, &mut rng)?;
            let verdict = match d.verdict {
                Dominance::Dominant => "dominant",
                Dominance::NotDominant => "not-dominant",
            };
            let values = json!({
                "image_dims": d.image_dims,
                "inside_grassmannian": h.inside_grassmannian()?,
                "seed": seed,
            });
            Ok((
                Report::new("grass dominance", verdict, values).anchor("g14-projection-dominance"),
                true,
            ))
        }
        GrassCommand::Lines { point } => {
            let p = point
                .iter()
                .map(|s| crate::rational::parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            let h = lines_through_point(&p)?;
            let values = json!({
                "basis": report::vectors(h.basis()),
                "inside_grassmannian": h.inside_grassmannian()?,
            });
            Ok((
                Report::new("grass lines", "ok", values).anchor("g14-projection-dominance"),
                true,
            ))
        }
    }
}
