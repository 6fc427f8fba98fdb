use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commhom::invariants::{group_json, pi2_hom_pairs, pi2_rank_checked, pi4_commutative_classifying, spin_pi2_stability};
use commhom::rootdatum::dynkin_index;
use commhom::verify::{run_criterion, DiskCache, Enumerate, GroupSource, VerifyOptions, CRITERIA};
use commhom::weyl::{cell_census, euler_char_rep, molien_poincare};
use commhom::wps::{inclusion_degree, proj_degree, spin_stability_degree, spin_threshold, SpinParity};
use commhom::{build_root_datum, geom, AlcoveGeometry, Error, LieType, RootDatum, WeylGroup};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "commhom", version, about = "Invariants of spaces of commuting elements in compact Lie groups")]
struct Cli {
    /// Emit JSON (the default for every command except `verify`).
    #[arg(long, global = true)]
    json: bool,
    /// Largest rank enumerated by `verify`.
    #[arg(long, global = true, default_value_t = 6)]
    rank_cap: usize,
    /// Sample count for the geometry checks.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Residual threshold for the geometry checks.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Directory for enumerated Weyl groups.
    #[arg(long, global = true, env = "COMMHOM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coroot integers, π₂ of commuting pairs and the quotient degree.
    Invariants { lie_type: LieType },
    /// Poincaré series of the identity component of commuting n-tuples.
    Poincare {
        lie_type: LieType,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        deg: usize,
    },
    /// Cell counts of T^k/W by dimension.
    Cells {
        lie_type: LieType,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Degree on H_{2k} of CP^r → CP(w), or of CP(w_S) → CP(w) with --subset.
    WpsDegree {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Degrees of the Spin inclusions on the alcove level, or π₂ stability for Spin(m) with --m.
    SpinStability {
        #[arg(long, required_unless_present = "m")]
        ell: Option<usize>,
        #[arg(long, value_enum, default_value_t = Parity::Even)]
        parity: Parity,
        #[arg(long, conflicts_with = "ell")]
        m: Option<usize>,
    },
    /// Seam and commutativity residuals of the generator, and the degree of π∘β.
    BetaCheck {
        #[arg(long, default_value_t = 50)]
        mesh: usize,
    },
    /// Cocycle, commutativity and clutching residuals over the cover of S⁴.
    CocycleCheck,
    /// Runs every acceptance criterion and prints a pass/fail table.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parity {
    Even,
    Odd,
}

impl From<Parity> for SpinParity {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => SpinParity::Even,
            Parity::Odd => SpinParity::Odd,
        }
    }
}

/// Disk cache when a directory is available, with a progress line for
/// large enumerations.
struct Groups {
    disk: Option<DiskCache>,
}

impl Groups {
    fn new(dir: Option<PathBuf>) -> Groups {
        let dir = dir.or_else(default_cache_dir);
        let disk = dir.and_then(|d| match DiskCache::new(&d) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled: {e}");
                None
            }
        });
        Groups { disk }
    }
}

impl GroupSource for Groups {
    fn group(&mut self, datum: &RootDatum) -> commhom::Result<WeylGroup> {
        let cached = self.disk.as_ref().is_some_and(|c| c.path_for(datum).exists());
        if !cached && datum.rank() >= 5 {
            eprintln!("enumerating W({}) with {} elements", datum.lie_type, datum.weyl_order);
        }
        match &mut self.disk {
            Some(c) => c.group(datum),
            None => Enumerate.group(datum),
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("commhom"))
}

/// Rounds every float to six significant digits so output is byte-stable.
fn fix_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.5e}").parse().unwrap_or(x);
            json!(r)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(fix_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, fix_floats(v))).collect()),
        other => other,
    }
}

fn emit(v: Value) {
    let text = serde_json::to_string(&fix_floats(v)).expect("JSON value serializes");
    println!("{text}");
}

/// Runs a check and fails with an invariant breach if a residual exceeds `tol`.
fn residuals(tol: f64, list: &[(&str, f64)]) -> commhom::Result<()> {
    match list.iter().find(|(_, r)| r.is_nan() || *r >= tol) {
        Some((name, r)) => Err(Error::InvariantBreach(format!("{name} residual {r:e} exceeds {tol:e}"))),
        None => Ok(()),
    }
}

fn invariants(t: LieType) -> commhom::Result<Value> {
    let d = build_root_datum(t)?;
    let report = pi2_hom_pairs(t)?;
    let (e_com, b_com) = pi4_commutative_classifying(t)?;
    let mut out = report.to_json();
    let obj = out.as_object_mut().expect("report is an object");
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    obj.insert("type".into(), json!(d.lie_type.to_string()));
    obj.insert("pi2_hom".into(), json!(report.group.to_string()));
    obj.insert("quotient_degree".into(), json!(report.quotient_degree));
    obj.insert("coroot_integers".into(), json!(d.coroot_integers));
    obj.insert("dynkin_index".into(), json!(dynkin_index(&d)));
    obj.insert("degrees".into(), json!(d.degrees));
    obj.insert("weyl_order".into(), json!(d.weyl_order));
    obj.insert("pi4".into(), json!({ "e_com": group_json(&e_com), "b_com": group_json(&b_com) }));
    Ok(out)
}

fn run(cli: Cli) -> commhom::Result<bool> {
    let mut groups = Groups::new(cli.cache_dir.clone());
    match cli.command {
        Command::Invariants { lie_type } => emit(invariants(lie_type)?),
        Command::Poincare { lie_type, n, deg } => {
            let w = groups.group(&build_root_datum(lie_type)?)?;
            let series = molien_poincare(&w, n, deg)?;
            if deg >= 2 {
                // the t² coefficient must equal the closed-form rank
                pi2_rank_checked(&w, n)?;
            }
            emit(json!(series));
        }
        Command::Cells { lie_type, k } => {
            let d = build_root_datum(lie_type)?;
            let w = groups.group(&d)?;
            let census = cell_census(&w, &AlcoveGeometry::new(&d), k)?;
            let chi = euler_char_rep(&w, k)?;
            if census.euler_characteristic() != chi {
                return Err(Error::InvariantBreach(format!(
                    "alternating cell count {} differs from the Lefschetz average {chi}",
                    census.euler_characteristic()
                )));
            }
            emit(json!({
                "schema": SCHEMA_VERSION,
                "type": d.lie_type.to_string(),
                "k": k,
                "counts": census.counts,
                "euler_characteristic": chi,
            }));
        }
        Command::WpsDegree { weights, k, subset } => {
            let degree = match &subset {
                Some(s) => inclusion_degree(&weights, s, k)?,
                None => proj_degree(&weights, k)?,
            };
            emit(json!({
                "schema": SCHEMA_VERSION,
                "weights": weights,
                "subset": subset,
                "homology_degree": 2 * k,
                "degree": degree,
            }));
        }
        Command::SpinStability { ell, parity, m } => {
            if let Some(m) = m {
                emit(json!(spin_pi2_stability(m)?));
            } else {
                let ell = ell.expect("clap requires ell without m");
                let parity = SpinParity::from(parity);
                let rows = (0..=spin_threshold(ell, parity))
                    .map(|k| spin_stability_degree(ell, parity, k).map(|d| json!(d)))
                    .collect::<commhom::Result<Vec<_>>>()?;
                emit(json!({ "schema": SCHEMA_VERSION, "ell": ell, "parity": parity, "degrees": rows }));
            }
        }
        Command::BetaCheck { mesh } => {
            let r = geom::beta_check(cli.samples, mesh)?;
            residuals(cli.tol, &[("seam", r.seam_residual), ("commutator", r.commutator_residual)])?;
            if r.degree.degree != r.degree_refined.degree {
                return Err(Error::InvariantBreach(format!(
                    "degree {} changes to {} under mesh doubling",
                    r.degree.degree, r.degree_refined.degree
                )));
            }
            emit(json!(r));
        }
        Command::CocycleCheck => {
            let r = geom::cocycle_check(cli.samples)?;
            residuals(
                cli.tol,
                &[
                    ("cocycle", r.cocycle_residual),
                    ("commutator", r.commutator_residual),
                    ("clutching", r.clutching_residual),
                ],
            )?;
            emit(json!(r));
        }
        Command::Verify => {
            let opts = VerifyOptions { rank_cap: cli.rank_cap, samples: cli.samples, tol: cli.tol, ..Default::default() };
            let mut outcomes = Vec::new();
            for id in 1..=CRITERIA {
                let o = run_criterion(id, &opts, &mut groups);
                if !cli.json {
                    let mark = if o.passed { "PASS" } else { "FAIL" };
                    println!("{:>2}  {mark}  {:<48} {:>8.2} s  {}", o.id, o.title, o.seconds, o.detail);
                }
                outcomes.push(o);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            if cli.json {
                // timings vary between runs, so they stay out of the JSON
                let rows: Vec<Value> = outcomes
                    .iter()
                    .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
                    .collect();
                emit(json!({ "schema": SCHEMA_VERSION, "criteria": rows, "passed": passed, "total": CRITERIA }));
            } else {
                println!("{passed}/{CRITERIA} criteria passed");
            }
            return Ok(passed == CRITERIA);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant_breach() { 3 } else { 2 })
        }
    }
}
