//! `ntw` — command-line front end for the lattice-polytope weight toolkit.
//!
//! Every invocation prints either a human table (default) or a JSON report
//! wrapping the result in a run manifest whose digest the `verify`
//! subcommand can re-check. Exit codes: 0 success, 1 domain error, 2 usage
//! error, 3 empirical falsification of a predicted point-count window.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ntw_core::curve::{self, WeightVector};
use ntw_core::error::Error;
use ntw_core::ff::{self, FiniteFieldPoly};
use ntw_core::hodge::{
    self, ConditionMode, DistributionMode, Group, MiddleSign, TorusCorrection,
};
use ntw_core::json as iojson;
use ntw_core::lattice::ResidueClass;
use ntw_core::monodromy::{self, GabberVerdict, WeightPartition};
use ntw_core::polytope::LatticePolytope;
use ntw_core::signed::{curve_signed_weights, surface_signed_weights_dl, SignedWeightVector};
use ntw_core::surface;
use ntw_core::Budget;

#[derive(Parser)]
#[command(name = "ntw", version, about = "lattice-polytope weight toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cap the rayon thread pool.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a polytope: dimension, volume, face data.
    Polytope {
        #[command(subcommand)]
        cmd: PolytopeCmd,
    },
    /// Frobenius weight multiplicities of a curve in the 2-torus.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Weight multiplicities of a surface in the 3-torus.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Signed weight vectors (alternating by cohomological degree).
    Dl {
        #[command(subcommand)]
        cmd: DlCmd,
    },
    /// Eigenspace Hodge numbers of a residue class.
    Hodge {
        /// Polytope JSON file.
        #[arg(long)]
        polytope: PathBuf,
        /// Residue modulus.
        #[arg(long)]
        m: i64,
        /// Residue class, comma-separated.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
        /// Binomial torus-correction handling for the trivial class.
        #[arg(long, value_enum, default_value_t = CorrectionArg::None)]
        correction: CorrectionArg,
    },
    /// Centered descent-sum distribution and its analytic bounds.
    Eulerian {
        #[arg(long)]
        n: u64,
        /// Force the exact rational mode.
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Force the scaled floating-point mode.
        #[arg(long)]
        float: bool,
    },
    /// Adjoint Hodge numbers from a Hodge vector.
    Adjoint {
        /// Comma-separated Hodge numbers (integers or p/q rationals).
        #[arg(long, value_delimiter = ',')]
        hodge: Vec<String>,
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Sign of the middle contribution in the orthogonal case.
        #[arg(long, default_value = "+")]
        sign: String,
    },
    /// Numerical largeness conditions on an adjoint profile.
    Conditions {
        /// Either `ideal:N` (the limiting profile at n = N) or a
        /// comma-separated adjoint vector.
        #[arg(long)]
        adjoint_from: String,
        /// Dimension of the underlying variety.
        #[arg(long)]
        dimx: f64,
        /// Use the one-inequality simplified condition.
        #[arg(long)]
        simplified: bool,
    },
    /// Monodromy-largeness certificates.
    Monodromy {
        #[command(subcommand)]
        cmd: MonodromyCmd,
    },
    /// Searches over polytope families.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Finite-field brute-force oracle.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Re-check a JSON report produced with --format json.
    Verify {
        /// Report file.
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum PolytopeCmd {
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum CurveCmd {
    Weights {
        /// Laurent polynomial JSON file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
}

#[derive(Args)]
struct SurfaceInput {
    /// Polytope JSON file (alternative to --family).
    file: Option<PathBuf>,
    /// Family constructor: `prism a b c` or `pyramid a b c`.
    #[arg(long, num_args = 4, value_names = ["KIND", "A", "B", "C"])]
    family: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    Weights(SurfaceInput),
    TopWeight {
        /// Side lengths, comma-separated.
        #[arg(long, value_delimiter = ',')]
        sides: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum DlCmd {
    /// Signed curve weights from a Laurent polynomial's Newton polygon.
    Curve { file: PathBuf },
    /// Signed codimension-0 surface weights of a 3-polytope.
    Surface(SurfaceInput),
}

#[derive(Subcommand)]
enum MonodromyCmd {
    /// Largeness test on a weight partition.
    ThmA {
        #[arg(long, value_delimiter = ',')]
        partition: Vec<u64>,
        #[arg(long)]
        r: u64,
    },
    /// Full-classical-group criterion on a weight vector.
    Gabber {
        #[arg(long)]
        big_r: u64,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
        /// Waive the exceptional-group exclusion at R = 7.
        #[arg(long)]
        waive_g2: bool,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Smallest truncation level with a prime normalized volume.
    PrimeTruncation {
        #[arg(long, value_delimiter = ',')]
        sides: Vec<i64>,
    },
}

#[derive(Args)]
struct OracleInput {
    /// Laurent polynomial JSON file.
    file: PathBuf,
    /// Prime field characteristic.
    #[arg(long)]
    q: u64,
    /// Extension degree (for weil: check degrees 1..=ext).
    #[arg(long, default_value_t = 1)]
    ext: u32,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Nondegeneracy over F_{q^ext}.
    Nondeg(OracleInput),
    /// Torus point count over F_{q^ext}.
    Count(OracleInput),
    /// Point counts against the predicted window for degrees 1..=ext.
    Weil(OracleInput),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Slopes,
    Strata,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrectionArg {
    None,
    Add,
    Subtract,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Gl,
    Go,
}

#[derive(Serialize, Deserialize)]
struct RunManifest {
    command: Vec<String>,
    inputs: Value,
    version: String,
    seed: Option<u64>,
    outputs_digest: String,
}

struct Report {
    inputs: Value,
    result: Value,
    table: String,
}

fn weights_json(w: &WeightVector) -> Value {
    Value::Object(
        w.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i.to_string(), json!(m)))
            .collect(),
    )
}

fn signed_json(w: &SignedWeightVector) -> Value {
    Value::Object(
        w.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i.to_string(), json!(m)))
            .collect(),
    )
}

fn tuple(mult: &[impl std::fmt::Display]) -> String {
    format!(
        "({})",
        mult.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
    )
}

fn read_laurent(path: &PathBuf) -> Result<(ntw_core::polygon::MonomialSupport, Value), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let parsed: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON in {}: {e}", path.display())))?;
    Ok((iojson::laurent_from_str(&text)?, parsed))
}

fn read_polytope(path: &PathBuf) -> Result<(LatticePolytope, Value), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let parsed: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON in {}: {e}", path.display())))?;
    Ok((iojson::polytope_from_str(&text)?, parsed))
}

fn surface_polytope(input: &SurfaceInput) -> Result<(LatticePolytope, Value), Error> {
    match (&input.file, &input.family) {
        (Some(path), None) => read_polytope(path),
        (None, Some(parts)) => {
            let kind = parts[0].as_str();
            let dims: Vec<i64> = parts[1..]
                .iter()
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad side length {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            let inputs = json!({ "family": kind, "sides": dims });
            let p = match kind {
                "prism" => LatticePolytope::prism(&dims)?,
                "pyramid" => LatticePolytope::pyramid(dims[0], dims[1], dims[2])?,
                other => {
                    return Err(Error::InvalidInput(format!("unknown family {other:?}")));
                }
            };
            Ok((p, inputs))
        }
        _ => Err(Error::InvalidInput(
            "provide exactly one of a polytope file or --family".into(),
        )),
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let budget = Budget::default();
    match &cli.cmd {
        Cmd::Polytope { cmd: PolytopeCmd::Info { file } } => {
            let (p, inputs) = read_polytope(file)?;
            let nvol = p.normalized_volume();
            let face_counts: Vec<usize> = (0..p.dim()).map(|d| p.faces(d).len()).collect();
            let mut result = json!({
                "dim": p.dim(),
                "vertices": p.vertices(),
                "normalized_volume": nvol.to_string(),
                "face_counts": face_counts,
            });
            let mut table = format!(
                "dimension        {}\nvertices         {}\nnormalized vol.  {}\nface counts      {}\n",
                p.dim(),
                p.vertices().len(),
                nvol,
                tuple(&face_counts)
            );
            if p.dim() <= 4 {
                let fv = p.face_volumes()?;
                let u: Vec<String> = fv.u.iter().map(iojson::rational_to_string).collect();
                result["face_volume_sums"] = json!(u);
                result["edge_count"] = json!(fv.e);
                result["two_face_count"] = json!(fv.f);
                result["vertex_facet_incidences"] = json!(fv.w1);
                table.push_str(&format!(
                    "U (by dim)       {}\nE, F, W1         {}, {}, {}\n",
                    tuple(&u),
                    fv.e,
                    fv.f,
                    fv.w1
                ));
            }
            Ok(Report { inputs, result, table })
        }
        Cmd::Curve { cmd: CurveCmd::Weights { file, method } } => {
            let (f, inputs) = read_laurent(file)?;
            let (result, table) = match method {
                MethodArg::Slopes => {
                    let w = curve::weights_by_slopes(&f)?;
                    (
                        json!({ "method": "slopes", "weights": weights_json(&w) }),
                        format!("weights (slopes)  {}\n", tuple(&w.mult)),
                    )
                }
                MethodArg::Strata => {
                    let w = curve::weights_by_strata(&f)?;
                    (
                        json!({ "method": "strata", "weights": weights_json(&w) }),
                        format!("weights (strata)  {}\n", tuple(&w.mult)),
                    )
                }
                MethodArg::Both => {
                    let s = curve::weights_by_slopes(&f)?;
                    let r = curve::weights_by_strata(&f)?;
                    let agree = s.mult == r.mult;
                    curve::weights(&f)?;
                    (
                        json!({
                            "method": "both",
                            "weights": weights_json(&s),
                            "agreement": agree,
                        }),
                        format!(
                            "weights (slopes)  {}\nweights (strata)  {}\n{}\n",
                            tuple(&s.mult),
                            tuple(&r.mult),
                            if agree { "AGREE" } else { "DISAGREE" }
                        ),
                    )
                }
            };
            Ok(Report { inputs, result, table })
        }
        Cmd::Surface { cmd: SurfaceCmd::Weights(input) } => {
            let (p, inputs) = surface_polytope(input)?;
            let w = surface::assemble_surface_weights(&p)?;
            Ok(Report {
                inputs,
                result: json!({ "weights": weights_json(&w), "total": w.total() }),
                table: format!("weights  {}\ntotal    {}\n", tuple(&w.mult), w.total()),
            })
        }
        Cmd::Surface { cmd: SurfaceCmd::TopWeight { sides } } => {
            let top = surface::truncated_prism_top_weight(sides)?;
            Ok(Report {
                inputs: json!({ "sides": sides }),
                result: json!({ "top_weight": top }),
                table: format!("top weight  {top}\n"),
            })
        }
        Cmd::Dl { cmd: DlCmd::Curve { file } } => {
            let (f, inputs) = read_laurent(file)?;
            let pts: Vec<Vec<i64>> = f.terms.iter().map(|(e, _)| e.clone()).collect();
            let hull = LatticePolytope::convex_hull(&pts)?;
            let fv = hull.face_volumes()?;
            let u1 = i64::try_from(fv.u[1].to_integer())
                .map_err(|_| Error::InvalidInput("boundary length overflow".into()))?;
            let w = curve_signed_weights(&fv.u[2], u1)?;
            Ok(Report {
                inputs,
                result: json!({ "signed_weights": signed_json(&w) }),
                table: format!("signed weights  {}\n", tuple(&w.mult)),
            })
        }
        Cmd::Dl { cmd: DlCmd::Surface(input) } => {
            let (p, inputs) = surface_polytope(input)?;
            let w = surface_signed_weights_dl(&p.face_volumes()?)?;
            Ok(Report {
                inputs,
                result: json!({ "signed_weights": signed_json(&w) }),
                table: format!("signed weights (codim 0)  {}\n", tuple(&w.mult)),
            })
        }
        Cmd::Hodge { polytope, m, lambda, correction } => {
            let (p, poly_inputs) = read_polytope(polytope)?;
            let class = ResidueClass::new(*m, lambda.clone())?;
            let corr = match correction {
                CorrectionArg::None => TorusCorrection::None,
                CorrectionArg::Add => TorusCorrection::Add,
                CorrectionArg::Subtract => TorusCorrection::Subtract,
            };
            let t = hodge::hodge_numbers(&p, &class, corr, &budget)?;
            Ok(Report {
                inputs: json!({ "polytope": poly_inputs, "m": m, "lambda": lambda }),
                result: json!({
                    "h": t.h,
                    "total": t.total(),
                    "corrected": t.corrected,
                }),
                table: format!("h  {}\ntotal  {}\n", tuple(&t.h), t.total()),
            })
        }
        Cmd::Eulerian { n, exact, float } => {
            let mode = if *exact {
                DistributionMode::ExactRational
            } else if *float {
                DistributionMode::ScaledFloat
            } else if *n <= 2000 {
                DistributionMode::ExactRational
            } else {
                DistributionMode::ScaledFloat
            };
            let d = hodge::eulerian_distribution(*n, mode)?;
            let (b0, tail, var) = (
                d.beta0_bound_holds(),
                d.tail_bound_holds(),
                d.variance_bound_holds(),
            );
            let mode_name = match mode {
                DistributionMode::ExactRational => "exact",
                DistributionMode::ScaledFloat => "float",
            };
            Ok(Report {
                inputs: json!({ "n": n, "mode": mode_name }),
                result: json!({
                    "beta0": d.beta_f64(0),
                    "central_bound_holds": b0,
                    "tail_bound_holds": tail,
                    "variance_bound_holds": var,
                }),
                table: format!(
                    "mode            {mode_name}\nbeta_0          {:.6}\ncentral bound   {b0}\ntail bound      {tail}\nvariance bound  {var}\n",
                    d.beta_f64(0)
                ),
            })
        }
        Cmd::Adjoint { hodge: h, group, sign } => {
            let hs: Vec<_> = h
                .iter()
                .map(|s| iojson::rational_from_str(s))
                .collect::<Result<_, _>>()?;
            let grp = match group {
                GroupArg::Gl => Group::Gl,
                GroupArg::Go => Group::Go,
            };
            let sgn = match sign.as_str() {
                "+" => MiddleSign::Plus,
                "-" => MiddleSign::Minus,
                other => {
                    return Err(Error::InvalidInput(format!("bad sign {other:?}")));
                }
            };
            let a = hodge::adjoint_hodge(&hs, grp, sgn)?;
            let ha: Vec<String> = a.ha.iter().map(iojson::rational_to_string).collect();
            Ok(Report {
                inputs: json!({ "hodge": h, "group": format!("{grp:?}"), "sign": sign }),
                result: json!({
                    "adjoint": ha,
                    "total": iojson::rational_to_string(&a.total),
                }),
                table: format!(
                    "adjoint  {}\ntotal    {}\n",
                    tuple(&ha),
                    iojson::rational_to_string(&a.total)
                ),
            })
        }
        Cmd::Conditions { adjoint_from, dimx, simplified } => {
            let (ha, n): (Vec<f64>, u64) = if let Some(ns) = adjoint_from.strip_prefix("ideal:") {
                let n: u64 = ns
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad n in {adjoint_from:?}")))?;
                let d = hodge::eulerian_distribution(n, DistributionMode::ScaledFloat)?;
                (hodge::ideal_adjoint(&d), n)
            } else {
                let ha: Vec<f64> = adjoint_from
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidInput(format!("bad entry {s:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                let n = (ha.len() as u64 + 1) / 2;
                (ha, n)
            };
            let mode = if *simplified {
                ConditionMode::Simplified
            } else {
                ConditionMode::Full
            };
            let report = hodge::check_conditions(&ha, n, *dimx, mode);
            let ineqs: Vec<Value> = report
                .inequalities
                .iter()
                .map(|i| {
                    json!({
                        "name": i.name,
                        "lhs": i.lhs,
                        "rhs": i.rhs,
                        "strict": i.strict,
                        "holds": i.holds,
                    })
                })
                .collect();
            let mut table = format!("holds  {}\n", report.holds);
            for i in &report.inequalities {
                table.push_str(&format!(
                    "  {}: {:.4} {} {:.4} -> {}\n",
                    i.name,
                    i.lhs,
                    if i.strict { ">" } else { ">=" },
                    i.rhs,
                    i.holds
                ));
            }
            Ok(Report {
                inputs: json!({ "adjoint_from": adjoint_from, "dimx": dimx, "simplified": simplified }),
                result: json!({ "holds": report.holds, "inequalities": ineqs }),
                table,
            })
        }
        Cmd::Monodromy { cmd: MonodromyCmd::ThmA { partition, r } } => {
            let part = WeightPartition::new(partition.clone())?;
            let check = monodromy::theorem_a_check(&part, *r);
            Ok(Report {
                inputs: json!({ "partition": partition, "r": r }),
                result: json!({
                    "large": check.large,
                    "failed_conditions": check.failed_conditions,
                }),
                table: format!(
                    "large  {}\nfailed conditions  {:?}\n",
                    check.large, check.failed_conditions
                ),
            })
        }
        Cmd::Monodromy { cmd: MonodromyCmd::Gabber { big_r, weights: w, waive_g2 } } => {
            let total: u64 = w.iter().sum();
            let wv = WeightVector {
                n: (w.len() + 1) / 2,
                mult: w.clone(),
            };
            let verdict = monodromy::gabber_check(*big_r, &wv, *waive_g2)?;
            let (name, detail) = match &verdict {
                GabberVerdict::ContainsSLorSO => ("contains_sl_or_so", String::new()),
                GabberVerdict::Inconclusive(why) => ("inconclusive", why.clone()),
            };
            Ok(Report {
                inputs: json!({ "big_r": big_r, "weights": w, "waive_g2": waive_g2, "total": total }),
                result: json!({ "verdict": name, "detail": detail }),
                table: format!("verdict  {name}\n{detail}\n"),
            })
        }
        Cmd::Search { cmd: SearchCmd::PrimeTruncation { sides } } => {
            let found = monodromy::find_prime_truncation(sides)?;
            let (result, table) = match found {
                Some((b, n)) => (
                    json!({ "found": true, "b": b, "volume": n.to_string() }),
                    format!("b  {b}\nprime volume  {n}\n"),
                ),
                None => (json!({ "found": false }), "no prime truncation\n".into()),
            };
            Ok(Report { inputs: json!({ "sides": sides }), result, table })
        }
        Cmd::Oracle { cmd } => {
            let (input, kind) = match cmd {
                OracleCmd::Nondeg(i) => (i, "nondeg"),
                OracleCmd::Count(i) => (i, "count"),
                OracleCmd::Weil(i) => (i, "weil"),
            };
            let (f, poly_inputs) = read_laurent(&input.file)?;
            let poly = FiniteFieldPoly::new(&f, input.q)?;
            let inputs = json!({ "poly": poly_inputs, "q": input.q, "ext": input.ext });
            match kind {
                "nondeg" => {
                    let nd = ff::is_nondegenerate_ext(&poly, input.ext, &budget)?;
                    Ok(Report {
                        inputs,
                        result: json!({ "nondegenerate": nd }),
                        table: format!("nondegenerate over F_q^{}  {nd}\n", input.ext),
                    })
                }
                "count" => {
                    let n = ff::count_points(&poly, input.ext, &budget)?;
                    Ok(Report {
                        inputs,
                        result: json!({ "count": n }),
                        table: format!("torus points over F_q^{}  {n}\n", input.ext),
                    })
                }
                _ => {
                    let degrees: Vec<u32> = (1..=input.ext).collect();
                    let report = ff::weil_bound_check(&poly, &degrees, &budget)?;
                    let entries: Vec<Value> = report
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "degree": e.degree,
                                "count": e.count,
                                "expected": e.expected.to_string(),
                                "window": e.window,
                                "margin": e.margin,
                            })
                        })
                        .collect();
                    let mut table = String::new();
                    for e in &report.entries {
                        table.push_str(&format!(
                            "d = {}: N = {} (q^d = {}), window {:.3}, margin {:.3}\n",
                            e.degree, e.count, e.expected, e.window, e.margin
                        ));
                    }
                    Ok(Report {
                        inputs,
                        result: json!({ "q": report.q, "entries": entries }),
                        table,
                    })
                }
            }
        }
        Cmd::Verify { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", file.display())))?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad report JSON: {e}")))?;
            let manifest: RunManifest = serde_json::from_value(
                doc.get("manifest")
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput("report has no manifest".into()))?,
            )
            .map_err(|e| Error::InvalidInput(format!("bad manifest: {e}")))?;
            let result = doc
                .get("result")
                .ok_or_else(|| Error::InvalidInput("report has no result".into()))?;
            let digest_ok = digest(result) == manifest.outputs_digest;

            let mut argv = vec!["ntw".to_string()];
            argv.extend(manifest.command.iter().cloned());
            let reparsed = Cli::try_parse_from(&argv)
                .map_err(|e| Error::InvalidInput(format!("recorded command invalid: {e}")))?;
            let rerun = execute(&reparsed)?;
            let rerun_ok = &rerun.result == result;
            if !(digest_ok && rerun_ok) {
                return Err(Error::InvalidInput(format!(
                    "verification failed: digest match {digest_ok}, rerun match {rerun_ok}"
                )));
            }
            Ok(Report {
                inputs: json!({ "file": file.display().to_string() }),
                result: json!({ "digest_match": digest_ok, "rerun_match": rerun_ok }),
                table: format!("digest match  {digest_ok}\nrerun match   {rerun_ok}\n"),
            })
        }
    }
}

fn digest(result: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_string(result).expect("result serializes").as_bytes());
    format!("{:x}", hasher.finalize())
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::DegenerateHull { .. } => "DegenerateHull",
        Error::UnsupportedDimension(_) => "UnsupportedDimension",
        Error::DegenerateSupport(_) => "DegenerateSupport",
        Error::NegativeMultiplicity { .. } => "NegativeMultiplicity",
        Error::MethodDisagreement { .. } => "MethodDisagreement",
        Error::InvalidFaceData(_) => "InvalidFaceData",
        Error::UnsupportedCornerConfiguration(_) => "UnsupportedCornerConfiguration",
        Error::NegativeAssembledWeight { .. } => "NegativeAssembledWeight",
        Error::BudgetExceeded { .. } => "BudgetExceeded",
        Error::NegativeHodgeNumber { .. } => "NegativeHodgeNumber",
        Error::UnsupportedN { .. } => "UnsupportedN",
        Error::InsufficientMultiplicity { .. } => "InsufficientMultiplicity",
        Error::BoundViolated { .. } => "BoundViolated",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match execute(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Table => print!("{}", report.table),
                Format::Json => {
                    let manifest = RunManifest {
                        command: std::env::args().skip(1).collect(),
                        inputs: report.inputs,
                        version: env!("CARGO_PKG_VERSION").to_string(),
                        seed: None,
                        outputs_digest: digest(&report.result),
                    };
                    let doc = json!({
                        "manifest": serde_json::to_value(manifest).expect("manifest serializes"),
                        "result": report.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("doc serializes"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", error_name(&e));
            if matches!(e, Error::BoundViolated { .. }) {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
