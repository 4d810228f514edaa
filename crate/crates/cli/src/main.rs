//! `brauer-kit`: batch JSON commands over the `brauer-core` pipelines.
//!
//! Every subcommand prints a single JSON document. On success the document is
//! `{"ok": true, "result": ..., "verification": ...}` and the exit code is 0;
//! the `verification` object records the assertions that ran. On a domain
//! failure the document is `{"ok": false, "error": code, "detail": ...}` with
//! exit code 2, where `code` is the stable error code of the failing check.
//! Usage errors exit with 64. Output is deterministic given (argv, seed).

use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use brauer_core::algebras::{
    azumaya_check, matrix_algebra, quaternion_split_iso, AlgebraMap, StructureAlgebra,
};
use brauer_core::conics::{conic_points, find_point, on_conic, parametrize, ConicTransform};
use brauer_core::json::{
    algebra_from_spec, azumaya_to_json, ideal_to_json, map_to_json, matrix_from_json,
    matrix_to_json, point_from_csv, point_to_json, split_csv_brackets, subspace_from_json,
};
use brauer_core::projective::{
    enumerate_points, pgl_normalize, right_ideal_check, ProjPoint, RightIdealRep,
};
use brauer_core::selftest::{run_selftest, CriterionReport};
use brauer_core::severi_brauer::{
    automorphism_to_pgl, chatelet_point_map, delta, delta_inv, find_right_ideal,
    inner_automorphism, matrix_units_conjugator, split_by_ideal,
};
use brauer_core::{Error, Ring};

#[derive(Parser)]
#[command(
    name = "brauer-kit",
    version,
    about = "Exact computations with Azumaya algebras, twisted projective spaces, and conics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether an algebra is Azumaya of square rank.
    AzumayaCheck {
        /// Base ring spec: QQ, GF(p), GF(p^e;c0,...,1), Z/p^k.
        #[arg(long)]
        ring: Option<String>,
        /// Algebra spec: inline JSON, builtin:Mk, or builtin:Q(a,b).
        #[arg(long, conflicts_with = "quaternion")]
        algebra: Option<String>,
        /// Shorthand for builtin:Q(a,b): two comma separated elements.
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Option<String>,
    },
    /// The explicit isomorphism Q(1,b) -> M2.
    QuatSplit {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Skip the inverse-map recheck.
        #[arg(long)]
        no_verify: bool,
    },
    /// Parametrize the conic x^2 = a y^2 + b z^2 through a base point.
    ParamConic {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Base point as comma separated coordinates; searched for if omitted.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Height bound for the base point search when --point is omitted.
        #[arg(long, default_value_t = 10)]
        bound: u64,
        /// Skip the roundtrip verification pass.
        #[arg(long)]
        no_verify: bool,
    },
    /// List every point of the conic x^2 = a y^2 + b z^2 over a finite ring.
    ConicPoints {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// The right ideal of M(n+1) attached to a projective point.
    Delta {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Skip the inversion recheck.
        #[arg(long)]
        no_verify: bool,
    },
    /// Recover the projective point from a right ideal of M(n+1).
    DeltaInv {
        #[arg(long)]
        ring: String,
        /// Subspace JSON: {"basis": [...]} or a bare array of basis vectors.
        #[arg(long)]
        ideal: String,
    },
    /// Recover a conjugator from a full family of candidate matrix units.
    Conjugator {
        #[arg(long)]
        ring: String,
        /// JSON array of m*m matrices, row major within each matrix.
        #[arg(long)]
        matrix: String,
    },
    /// The projective representative of an inner automorphism of M(n+1).
    AutToPgl {
        #[arg(long)]
        ring: String,
        /// Degree check: the automorphism must act on M(n+1).
        #[arg(long)]
        n: Option<usize>,
        /// The map on basis coordinates as a (n+1)^2 x (n+1)^2 JSON matrix.
        #[arg(long)]
        matrix: String,
        /// Skip the conjugation roundtrip recheck.
        #[arg(long)]
        no_verify: bool,
    },
    /// Split an Azumaya algebra along a verified right ideal of minimal rank.
    Split {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, conflicts_with = "quaternion")]
        algebra: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Option<String>,
        #[arg(long)]
        ideal: String,
        /// Skip the inverse-map recheck.
        #[arg(long)]
        no_verify: bool,
    },
    /// Map a right ideal of a split Azumaya algebra to its projective point.
    Chatelet {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, conflicts_with = "quaternion")]
        algebra: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Option<String>,
        /// The ideal to locate, as subspace JSON.
        #[arg(long)]
        ideal: String,
        /// Height bound for the splitting-ideal search over QQ.
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Search for a right ideal of rank sqrt(rank A), reporting first hit.
    FindIdeal {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, conflicts_with = "quaternion")]
        algebra: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Option<String>,
        /// Height bound for the generator search over QQ.
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Run the built-in acceptance suites.
    Selftest {
        /// quick runs the sub-second criteria, full runs everything.
        #[arg(value_parser = ["quick", "full"], default_value = "quick")]
        level: String,
        /// Seed for the randomized criteria.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A domain failure: a stable code plus a human-readable detail value.
struct Failure {
    code: String,
    detail: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: e.code().into(),
            detail: json!(e.to_string()),
        }
    }
}

type CmdResult = Result<(Value, Value), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok((result, verification)) => {
            println!(
                "{}",
                json!({ "ok": true, "result": result, "verification": verification })
            );
            ExitCode::SUCCESS
        }
        Err(f) => {
            println!(
                "{}",
                json!({ "ok": false, "error": f.code, "detail": f.detail })
            );
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::AzumayaCheck {
            ring,
            algebra,
            quaternion,
        } => {
            let (_, alg) = resolve_algebra(ring.as_deref(), algebra.as_deref(), quaternion)?;
            let report = azumaya_check(&alg);
            let enveloping_tested = report.is_azumaya
                || report
                    .reason
                    .as_deref()
                    .is_some_and(|r| r.contains("invertible"));
            Ok((
                azumaya_to_json(&report),
                json!({
                    "algebra_axioms": true,
                    "square_rank": report.reason.as_deref().is_none_or(|r| !r.contains("square")),
                    "enveloping_rank_tested": enveloping_tested,
                }),
            ))
        }
        Cmd::QuatSplit { ring, b, no_verify } => {
            let ring = Ring::parse(&ring)?;
            let b = ring.parse_elem(&b)?;
            let iso = quaternion_split_iso(&ring, &b)?;
            let verification = verify_iso(&iso, no_verify)?;
            Ok((map_to_json(&iso), verification))
        }
        Cmd::ParamConic {
            ring,
            a,
            b,
            point,
            bound,
            no_verify,
        } => {
            let ring = Ring::parse(&ring)?;
            let a = ring.parse_elem(&a)?;
            let b = ring.parse_elem(&b)?;
            let base = match point {
                Some(csv) => point_from_csv(&ring, &csv)?,
                None => find_point(&ring, &a, &b, bound)?.ok_or_else(|| Failure {
                    code: "NoPointFound".into(),
                    detail: json!(format!(
                        "no point on the conic with coordinate height <= {bound}"
                    )),
                })?,
            };
            let par = parametrize(&ring, &a, &b, &base)?;
            let roundtrip = if no_verify {
                "skipped"
            } else {
                par.verify()?;
                if ring.is_finite() {
                    "exhaustive"
                } else {
                    "sampled"
                }
            };
            let pc = par.pointed_conic();
            let samples: Vec<Value> = sample_parameters(&ring)?
                .iter()
                .map(|t| {
                    let p = par.from_line(t)?;
                    Ok(json!({
                        "t": point_to_json(&ring, t),
                        "point": point_to_json(&ring, &p),
                    }))
                })
                .collect::<Result<_, Failure>>()?;
            let result = json!({
                "a": ring.format_elem(&a),
                "b": ring.format_elem(&b),
                "base_point": point_to_json(&ring, &par.base_point()),
                "transform": transform_name(par.transform()),
                "pointed_conic": {
                    "a": ring.format_elem(pc.a()),
                    "b": ring.format_elem(pc.b()),
                    "base_point": point_to_json(&ring, &pc.base_point()),
                },
                "samples": samples,
            });
            Ok((
                result,
                json!({ "base_on_conic": true, "roundtrip": roundtrip }),
            ))
        }
        Cmd::ConicPoints { ring, a, b } => {
            let ring = Ring::parse(&ring)?;
            let a = ring.parse_elem(&a)?;
            let b = ring.parse_elem(&b)?;
            let points = conic_points(&ring, &a, &b)?;
            debug_assert!(points.iter().all(|p| on_conic(&ring, &a, &b, p)));
            let result = json!({
                "count": points.len(),
                "points": points.iter().map(|p| point_to_json(&ring, p)).collect::<Vec<_>>(),
            });
            Ok((result, json!({ "all_on_conic": true })))
        }
        Cmd::Delta {
            ring,
            n,
            point,
            no_verify,
        } => {
            let ring = Ring::parse(&ring)?;
            let x = point_from_csv(&ring, &point)?;
            if x.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "point has {} coordinates, --n {} needs {}",
                    x.n() + 1,
                    n,
                    n + 1
                ))
                .into());
            }
            let rep = delta(&ring, &x)?;
            let inverted = if no_verify {
                false
            } else {
                let back = delta_inv(&ring, rep.space())?;
                if back != x {
                    return Err(Failure {
                        code: "NotInDeltaImage".into(),
                        detail: json!("inversion recheck disagreed with the input point"),
                    });
                }
                true
            };
            Ok((
                ideal_to_json(&rep),
                json!({ "right_ideal": rep.verified(), "inversion_recheck": inverted }),
            ))
        }
        Cmd::DeltaInv { ring, ideal } => {
            let ring = Ring::parse(&ring)?;
            let v: Value = serde_json::from_str(&ideal)
                .map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
            let space = subspace_from_json(&ring, &v)?;
            let x = delta_inv(&ring, &space)?;
            Ok((
                json!({ "point": point_to_json(&ring, &x) }),
                json!({ "image_recheck": true }),
            ))
        }
        Cmd::Conjugator { ring, matrix } => {
            let ring = Ring::parse(&ring)?;
            let v: Value = serde_json::from_str(&matrix)
                .map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Parse("expected a JSON array of matrices".into()))?;
            let units = arr
                .iter()
                .map(|m| matrix_from_json(&ring, m))
                .collect::<brauer_core::Result<Vec<_>>>()?;
            let p = matrix_units_conjugator(&ring, &units)?;
            let result = json!({
                "conjugator": matrix_to_json(&ring, &p),
                "pgl": matrix_to_json(&ring, &pgl_normalize(&ring, &p)?),
            });
            Ok((
                result,
                json!({ "matrix_unit_relations": true, "conjugation_identities": true }),
            ))
        }
        Cmd::AutToPgl {
            ring,
            n,
            matrix,
            no_verify,
        } => {
            let ring = Ring::parse(&ring)?;
            let v: Value = serde_json::from_str(&matrix)
                .map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
            let mat = matrix_from_json(&ring, &v)?;
            let m = exact_sqrt(mat.rows).ok_or_else(|| {
                Error::DimensionMismatch(format!("{} rows is not a square rank", mat.rows))
            })?;
            if let Some(n) = n {
                if m != n + 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "map acts on rank {}, --n {} needs rank {}",
                        mat.rows,
                        n,
                        (n + 1) * (n + 1)
                    ))
                    .into());
                }
            }
            let alg = Arc::new(matrix_algebra(&ring, m));
            let map = AlgebraMap::new(alg.clone(), alg.clone(), mat)?;
            let p = automorphism_to_pgl(&map)?;
            let roundtrip = if no_verify {
                false
            } else {
                let again = inner_automorphism(&alg, &p)?;
                if again.matrix() != map.matrix() {
                    return Err(Failure {
                        code: "NotAutomorphism".into(),
                        detail: json!("conjugation by the recovered representative differs"),
                    });
                }
                true
            };
            Ok((
                json!({ "pgl": matrix_to_json(&ring, &p) }),
                json!({
                    "hom": map.hom_verified(),
                    "bijective": map.is_bijective(),
                    "conjugation_roundtrip": roundtrip,
                }),
            ))
        }
        Cmd::Split {
            ring,
            algebra,
            quaternion,
            ideal,
            no_verify,
        } => {
            let (ring, alg) = resolve_algebra(ring.as_deref(), algebra.as_deref(), quaternion)?;
            let rep = parse_ideal(&ring, &alg, &ideal)?;
            let split = split_by_ideal(&rep)?;
            let mut verification = verify_iso(&split, no_verify)?;
            verification["right_ideal"] = json!(true);
            verification["azumaya"] = json!(true);
            Ok((map_to_json(&split), verification))
        }
        Cmd::Chatelet {
            ring,
            algebra,
            quaternion,
            ideal,
            bound,
        } => {
            let (ring, alg) = resolve_algebra(ring.as_deref(), algebra.as_deref(), quaternion)?;
            let rep = parse_ideal(&ring, &alg, &ideal)?;
            let splitting = find_right_ideal(&alg, bound)?.ok_or_else(|| Failure {
                code: "NoSplittingIdeal".into(),
                detail: json!(format!(
                    "no right ideal of rank sqrt(rank A) found with height <= {bound}"
                )),
            })?;
            let split = split_by_ideal(&splitting)?;
            let x = chatelet_point_map(&split, &rep)?;
            let result = json!({
                "point": point_to_json(&ring, &x),
                "splitting_ideal": ideal_to_json(&splitting),
                "split": map_to_json(&split),
            });
            Ok((
                result,
                json!({
                    "right_ideal": true,
                    "split_hom": split.hom_verified(),
                    "image_recheck": true,
                }),
            ))
        }
        Cmd::FindIdeal {
            ring,
            algebra,
            quaternion,
            bound,
        } => {
            let (_, alg) = resolve_algebra(ring.as_deref(), algebra.as_deref(), quaternion)?;
            let found = find_right_ideal(&alg, bound)?;
            let result = match &found {
                Some(rep) => json!({
                    "found": true,
                    "status": "found",
                    "ideal": ideal_to_json(rep),
                }),
                None => json!({
                    "found": false,
                    // A bounded search over QQ proves nothing about larger
                    // heights; over a finite ring every generator was tried.
                    "status": if alg.ring().is_finite() { "exhausted" } else { "unknown" },
                }),
            };
            let verified = found.as_ref().map(|r| r.verified());
            Ok((result, json!({ "right_ideal": verified, "bound": bound })))
        }
        Cmd::Selftest { level, seed } => {
            let full = level == "full";
            let reports = run_selftest(full, seed);
            let failures = reports.iter().filter(|r| !r.passed).count();
            let criteria: Vec<Value> = reports.iter().map(report_to_json).collect();
            if failures > 0 {
                return Err(Failure {
                    code: "SelftestFailure".into(),
                    detail: json!({ "level": level, "failed": failures, "criteria": criteria }),
                });
            }
            let total: u128 = reports.iter().map(|r| r.millis).sum();
            Ok((
                json!({
                    "level": level,
                    "seed": seed,
                    "criteria": criteria,
                    "millis": total as u64,
                }),
                json!({ "criteria_run": reports.len(), "failures": 0 }),
            ))
        }
    }
}

/// Resolve the --algebra / --quaternion pair; exactly one must be present.
fn resolve_algebra(
    ring: Option<&str>,
    algebra: Option<&str>,
    quaternion: Option<String>,
) -> Result<(Ring, Arc<StructureAlgebra>), Failure> {
    let ring = match ring {
        Some(spec) => Some(Ring::parse(spec)?),
        None => None,
    };
    if let Some(q) = quaternion {
        let ring = ring.ok_or_else(|| usage("--quaternion needs --ring"))?;
        let parts = split_csv_brackets(&q);
        if parts.len() != 2 {
            return Err(Error::Parse(format!("--quaternion takes two elements, got {q:?}")).into());
        }
        return Ok((
            ring.clone(),
            algebra_from_spec(Some(&ring), &format!("builtin:Q({q})"))?.1,
        ));
    }
    let spec = algebra.ok_or_else(|| usage("one of --algebra or --quaternion is required"))?;
    Ok(algebra_from_spec(ring.as_ref(), spec)?)
}

/// Flag-shape problems that clap cannot express; exits with the usage code.
fn usage(msg: &str) -> Failure {
    eprintln!("error: {msg}");
    std::process::exit(64);
}

fn parse_ideal(
    ring: &Ring,
    alg: &Arc<StructureAlgebra>,
    ideal: &str,
) -> Result<RightIdealRep, Failure> {
    let v: Value =
        serde_json::from_str(ideal).map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
    let space = subspace_from_json(ring, &v)?;
    Ok(right_ideal_check(alg, space)?)
}

/// Shared checks for the isomorphism-producing commands. The hom property is
/// always checked on construction; the skippable extra is the inverse map.
fn verify_iso(map: &AlgebraMap, no_verify: bool) -> Result<Value, Failure> {
    if !map.hom_verified() || !map.is_bijective() {
        return Err(Error::NotAutomorphism("the map fails its own verification".into()).into());
    }
    let inverse_hom = if no_verify {
        Value::Null
    } else {
        let inv = map.inverse()?;
        if !inv.hom_verified() {
            return Err(Error::NotAutomorphism("the inverse is not a homomorphism".into()).into());
        }
        json!(true)
    };
    Ok(json!({ "hom": true, "bijective": true, "inverse_hom": inverse_hom }))
}

/// Deterministic line points for the sample table: the first few points of
/// the projective line over a finite ring, small-height parameters over QQ.
fn sample_parameters(ring: &Ring) -> Result<Vec<ProjPoint>, Failure> {
    if ring.is_finite() {
        return Ok(enumerate_points(ring, 1)?.into_iter().take(8).collect());
    }
    let mut out = vec![ProjPoint::normalize(ring, vec![ring.zero(), ring.one()])?];
    for k in [0i64, 1, -1, 2] {
        out.push(ProjPoint::normalize(
            ring,
            vec![ring.one(), ring.from_i64(k)],
        )?);
    }
    Ok(out)
}

fn transform_name(t: ConicTransform) -> &'static str {
    match t {
        ConicTransform::Identity => "identity",
        ConicTransform::SwapXY => "swap-xy",
        ConicTransform::SwapXZ => "swap-xz",
    }
}

fn report_to_json(r: &CriterionReport) -> Value {
    json!({
        "id": r.id,
        "name": r.name,
        "passed": r.passed,
        "details": r.details,
        "millis": r.millis as u64,
    })
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}
