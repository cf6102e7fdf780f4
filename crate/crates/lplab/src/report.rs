//! Run configuration, dispatch, persistence and reproducibility plumbing.
//!
//! A [`RunConfig`] fully determines a run: identical configs produce
//! byte-identical report bundles except for the timestamp field. All
//! randomness flows from the single recorded seed; tables use ordered maps so
//! serialization never depends on hash order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinatorics::{self, APSpec, ChainSearch, ChainSearchMode};
use crate::error::{Error, Result};
use crate::probe::{self, FrameProbeConfig, ProbeReport, RademacherConfig, SignMode};
use crate::set::{self, GapSequence, GapSet, PsiSpec};
use crate::thickness;

pub const SCHEMA_VERSION: u32 = 1;

/// Caps the rayon pool from `LP_LAB_THREADS`; call once at startup. Returns
/// the applied cap, if any.
pub fn init_thread_cap() -> Option<usize> {
    let n: usize = std::env::var("LP_LAB_THREADS").ok()?.parse().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok()?;
    Some(n)
}

// ---------------------------------------------------------------------------
// gap-set files

#[derive(Debug, Serialize, Deserialize)]
struct GapSetFile {
    window: [f64; 2],
    gaps: Vec<[f64; 2]>,
    depth: u32,
    meta: BTreeMap<String, serde_json::Value>,
}

/// Writes the gap-set JSON schema `{window, gaps, depth, meta}`; doubles
/// round-trip bit-exactly through [`load_set`].
pub fn save_set(set: &GapSet, path: &Path) -> Result<()> {
    let mut meta = BTreeMap::new();
    meta.insert("schema_version".to_string(), serde_json::json!(SCHEMA_VERSION));
    meta.insert("residual".to_string(), serde_json::json!(set.residual()));
    let file = GapSetFile {
        window: [set.window().0, set.window().1],
        gaps: set.gaps().iter().map(|&(a, b)| [a, b]).collect(),
        depth: set.depth(),
        meta,
    };
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Loads and re-validates a gap-set file.
pub fn load_set(path: &Path) -> Result<GapSet> {
    let raw = fs::read_to_string(path)?;
    let file: GapSetFile = serde_json::from_str(&raw)?;
    let found = file
        .meta
        .get("schema_version")
        .and_then(|v| v.as_u64())
        .unwrap_or(0) as u32;
    if found != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION, found });
    }
    if !file.window.iter().all(|v| v.is_finite()) || file.gaps.iter().any(|g| !g[0].is_finite() || !g[1].is_finite()) {
        return Err(Error::param("file", "non-finite number in gap-set file"));
    }
    let gaps = file.gaps.iter().map(|g| (g[0], g[1])).collect();
    GapSet::with_depth((file.window[0], file.window[1]), gaps, file.depth)
}

// ---------------------------------------------------------------------------
// configuration

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyConfig {
    Cantor { depth: u32 },
    Dyadic { k_min: i32, k_max: i32 },
    SumSet { lengths: Vec<f64> },
    /// Geometric gap sequence `delta_k = (e^b - 1) e^{-kb}` placed at `depth`.
    Generated { b: f64, depth: u32 },
    /// Stretched sequence via `gamma(t) ~ ln(e + 1/t)^-eta`.
    GeneratedStretched { eta: f64, depth: u32 },
    ThinChain { psi: PsiConfig, k: usize },
    File { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiConfig {
    Power { alpha: f64 },
    PowerLog { beta: f64 },
}

impl PsiConfig {
    pub fn build(&self) -> Result<PsiSpec> {
        match *self {
            PsiConfig::Power { alpha } => PsiSpec::power(alpha),
            PsiConfig::PowerLog { beta } => PsiSpec::power_log(beta),
        }
    }
}

impl FamilyConfig {
    /// Builds the set; also returns the generating sequence when one exists.
    pub fn build(&self) -> Result<(GapSet, Option<GapSequence>)> {
        match self {
            FamilyConfig::Cantor { depth } => Ok((set::cantor_triadic(*depth)?, None)),
            FamilyConfig::Dyadic { k_min, k_max } => Ok((set::dyadic_set(*k_min, *k_max)?, None)),
            FamilyConfig::SumSet { lengths } => Ok((set::sum_set(lengths)?, None)),
            FamilyConfig::Generated { b, depth } => {
                let seq = GapSequence::geometric_normalized(*b)?;
                Ok((set::generated_set(&seq, *depth)?, Some(seq)))
            }
            FamilyConfig::GeneratedStretched { eta, depth } => {
                let seq = GapSequence::stretched(*eta)?;
                Ok((set::generated_set(&seq, *depth)?, Some(seq)))
            }
            FamilyConfig::ThinChain { psi, k } => {
                let spec = psi.build()?;
                Ok((set::thin_chain_set(&spec, *k)?.set, None))
            }
            FamilyConfig::File { path } => Ok((load_set(path)?, None)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "analysis", rename_all = "snake_case")]
pub enum ThicknessConfig {
    /// Neighbourhood-measure table over a delta grid.
    Neighborhood { deltas: Vec<f64> },
    BoxDim { scales: Vec<f64> },
    Porosity { resolution: u32 },
    Decay { interval: [f64; 2], deltas: Vec<f64>, p: Option<f64>, tolerance: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "probe", rename_all = "snake_case")]
pub enum ProbeConfig {
    Frame { p: f64, trials: usize, grid: usize },
    Dirichlet { p: f64, n_list: Vec<usize> },
    Rademacher { k_list: Vec<i64>, ambient_n: usize, p: f64, montecarlo: bool, trials: usize, grid: usize },
    Khintchine { coeffs: Vec<f64>, p: f64, montecarlo: bool, trials: usize },
    Growth { p: f64, n_max: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandConfig {
    Construct { family: FamilyConfig },
    Thickness { family: FamilyConfig, analysis: ThicknessConfig },
    Split { family: FamilyConfig, ap_a: f64, ap_d: f64, ap_n: usize },
    Chain { points: Vec<f64>, n: usize, heuristic: bool },
    Probe { family: Option<FamilyConfig>, probe: ProbeConfig },
    Report { path: PathBuf },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub schema_version: u32,
    pub command: CommandConfig,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: CommandConfig) -> Self {
        RunConfig { schema_version: SCHEMA_VERSION, command, seed: 0, out_dir: None, format: OutputFormat::Json }
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> Result<String> {
        let canonical = serde_json::to_string(self)?;
        let digest = Sha256::digest(canonical.as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            let _ = write!(hex, "{byte:02x}");
        }
        Ok(hex)
    }
}

// ---------------------------------------------------------------------------
// bundles

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportBundle {
    pub schema_version: u32,
    pub config_hash: String,
    pub seed: u64,
    /// Seconds since the epoch; the only field allowed to differ between
    /// reruns of one config.
    pub timestamp: u64,
    pub config: RunConfig,
    /// Truncation residual of the constructed set, when one was built.
    pub residual: Option<f64>,
    pub reliability_flags: Vec<String>,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub probe_reports: Vec<ProbeReport>,
    /// Files written by the run, relative to the output directory.
    pub artifacts: Vec<String>,
}

impl ReportBundle {
    fn new(config: &RunConfig) -> Result<Self> {
        Ok(ReportBundle {
            schema_version: SCHEMA_VERSION,
            config_hash: config.hash()?,
            seed: config.seed,
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config: config.clone(),
            residual: None,
            reliability_flags: Vec::new(),
            summary: BTreeMap::new(),
            probe_reports: Vec::new(),
            artifacts: Vec::new(),
        })
    }

    /// JSON with the timestamp line removed, for determinism comparisons.
    pub fn stable_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timestamp");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }
}

fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Maps errors to the CLI exit code contract: 2 for validation problems,
/// 3 for numerical-reliability failures.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Unreliable(_)
        | Error::ShiftInfeasible { .. }
        | Error::SplitShiftExhausted { .. }
        | Error::NoAdmissibleBins
        | Error::AmbiguousBin { .. } => 3,
        _ => 2,
    }
}

// ---------------------------------------------------------------------------
// dispatch

/// Executes a validated config: builds sets, runs the requested analysis,
/// writes artifacts under `out_dir` and returns the bundle.
pub fn run(config: &RunConfig) -> Result<ReportBundle> {
    if config.schema_version != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION, found: config.schema_version });
    }
    let mut bundle = ReportBundle::new(config)?;
    if let Some(dir) = &config.out_dir {
        fs::create_dir_all(dir)?;
    }

    match &config.command {
        CommandConfig::Construct { family } => {
            let (set, seq) = family.build()?;
            describe_set(&mut bundle, &set);
            if let Some(seq) = seq {
                bundle.summary.insert("sequence_len".into(), serde_json::json!(seq.len()));
                bundle.summary.insert("sequence_sum".into(), serde_json::json!(seq.sum()));
            }
            if let Some(dir) = &config.out_dir {
                save_set(&set, &dir.join("set.json"))?;
                bundle.artifacts.push("set.json".into());
            }
        }
        CommandConfig::Thickness { family, analysis } => {
            let (set, seq) = family.build()?;
            describe_set(&mut bundle, &set);
            run_thickness(config, &mut bundle, &set, seq.as_ref(), analysis)?;
        }
        CommandConfig::Split { family, ap_a, ap_d, ap_n } => {
            let (set, _) = family.build()?;
            describe_set(&mut bundle, &set);
            let ap = APSpec::new(*ap_a, *ap_d, *ap_n)?;
            let (nu, subset) = combinatorics::max_splitting_subset(&set, &ap);
            let cert = combinatorics::splits(&subset, &set);
            bundle.summary.insert("nu".into(), serde_json::json!(nu));
            bundle.summary.insert("subset".into(), serde_json::json!(subset));
            bundle.summary.insert("certificate".into(), cert.to_json());
            if let Some(dir) = &config.out_dir {
                fs::write(dir.join("certificate.json"), serde_json::to_string_pretty(&cert.to_json())?)?;
                bundle.artifacts.push("certificate.json".into());
            }
        }
        CommandConfig::Chain { points, n, heuristic } => {
            let mode = if *heuristic { ChainSearchMode::Heuristic } else { ChainSearchMode::Exact };
            let found = combinatorics::find_chain(points, *n, mode, combinatorics::POINT_TOLERANCE)?;
            match found {
                ChainSearch::Found(chain) => {
                    bundle.summary.insert("found".into(), serde_json::json!(true));
                    bundle.summary.insert("base".into(), serde_json::json!(chain.base()));
                    bundle.summary.insert("lengths".into(), serde_json::json!(chain.lengths()));
                    bundle.summary.insert("chain_points".into(), serde_json::json!(chain.points()));
                }
                ChainSearch::NoneProved => {
                    bundle.summary.insert("found".into(), serde_json::json!(false));
                    bundle.summary.insert("proved_absent".into(), serde_json::json!(true));
                }
                ChainSearch::NoneHeuristic => {
                    bundle.summary.insert("found".into(), serde_json::json!(false));
                    bundle.summary.insert("proved_absent".into(), serde_json::json!(false));
                    bundle.reliability_flags.push("heuristic search: absence not proved".into());
                }
            }
        }
        CommandConfig::Probe { family, probe } => {
            run_probe(config, &mut bundle, family.as_ref(), probe)?;
        }
        CommandConfig::Report { path } => {
            let raw = fs::read_to_string(path)?;
            let loaded: ReportBundle = serde_json::from_str(&raw)?;
            bundle.summary.insert("loaded_config_hash".into(), serde_json::json!(loaded.config_hash));
            bundle.summary.insert("loaded_seed".into(), serde_json::json!(loaded.seed));
            bundle.summary.insert("loaded_summary".into(), serde_json::to_value(&loaded.summary)?);
            bundle.reliability_flags.extend(loaded.reliability_flags.clone());
        }
    }

    if let Some(dir) = &config.out_dir {
        fs::write(dir.join("report.json"), serde_json::to_string_pretty(&bundle)?)?;
        bundle.artifacts.push("report.json".into());
    }
    Ok(bundle)
}

fn describe_set(bundle: &mut ReportBundle, set: &GapSet) {
    bundle.residual = Some(set.residual());
    bundle.summary.insert("window".into(), serde_json::json!([set.window().0, set.window().1]));
    bundle.summary.insert("gap_count".into(), serde_json::json!(set.gaps().len()));
    bundle.summary.insert("component_count".into(), serde_json::json!(set.components().len()));
    bundle.summary.insert("residual".into(), serde_json::json!(set.residual()));
    bundle.summary.insert("reliable_floor".into(), serde_json::json!(set.reliable_floor()));
}

fn run_thickness(
    config: &RunConfig,
    bundle: &mut ReportBundle,
    set: &GapSet,
    seq: Option<&GapSequence>,
    analysis: &ThicknessConfig,
) -> Result<()> {
    match analysis {
        ThicknessConfig::Neighborhood { deltas } => {
            if deltas.is_empty() {
                return Err(Error::param("deltas", "empty delta grid"));
            }
            let floor = set.reliable_floor();
            let mut rows = Vec::new();
            let mut any_reliable = false;
            for &d in deltas {
                let measure = thickness::neighborhood_measure(set, d)?;
                let bound = match seq {
                    Some(s) => format!("{}", thickness::gap_lower_bound(s, d)?),
                    None => String::new(),
                };
                let reliable = d >= floor;
                any_reliable |= reliable;
                rows.push(vec![format!("{d}"), format!("{measure}"), bound, format!("{reliable}")]);
            }
            if !any_reliable {
                return Err(Error::Unreliable("every delta lies below the reliability floor".into()));
            }
            bundle.summary.insert("rows".into(), serde_json::json!(rows.len()));
            if let Some(dir) = &config.out_dir {
                write_csv(&dir.join("neighborhood.csv"), "delta,measure,bound,reliable", &rows)?;
                bundle.artifacts.push("neighborhood.csv".into());
            }
        }
        ThicknessConfig::BoxDim { scales } => {
            let fitres = thickness::box_counting(set, scales)?;
            bundle.summary.insert("slope".into(), serde_json::json!(fitres.slope));
            bundle.summary.insert("r2".into(), serde_json::json!(fitres.r2));
            if !fitres.unreliable_scales.is_empty() {
                bundle
                    .reliability_flags
                    .push(format!("{} scales below truncation resolution excluded", fitres.unreliable_scales.len()));
            }
            if let Some(dir) = &config.out_dir {
                let rows: Vec<Vec<String>> = fitres
                    .scales
                    .iter()
                    .zip(&fitres.counts)
                    .map(|(&s, &c)| vec![format!("{s}"), format!("{c}")])
                    .collect();
                write_csv(&dir.join("boxdim.csv"), "scale,count", &rows)?;
                fs::write(dir.join("boxdim.json"), serde_json::to_string_pretty(&fitres)?)?;
                bundle.artifacts.push("boxdim.csv".into());
                bundle.artifacts.push("boxdim.json".into());
            }
        }
        ThicknessConfig::Porosity { resolution } => {
            let est = thickness::porosity_estimate(set, *resolution)?;
            bundle.summary.insert("c_hat".into(), serde_json::json!(est.c_hat));
            bundle.summary.insert("witness".into(), serde_json::json!([est.witness.0, est.witness.1]));
            bundle
                .reliability_flags
                .push("porosity is a scanned estimate with witness, not a verified constant".into());
        }
        ThicknessConfig::Decay { interval, deltas, p, tolerance } => {
            let rep = thickness::portion_decay_fit(set, (interval[0], interval[1]), deltas, *p, *tolerance)?;
            bundle.summary.insert("exponent".into(), serde_json::json!(rep.fit.exponent));
            bundle.summary.insert("constant".into(), serde_json::json!(rep.fit.constant));
            bundle.summary.insert("r2".into(), serde_json::json!(rep.fit.r2));
            if let Some(check) = &rep.bound_check {
                bundle.summary.insert("bound_exponent".into(), serde_json::json!(check.bound_exponent));
                bundle.summary.insert("bound_passed".into(), serde_json::json!(check.passed));
            }
            if rep.excluded_points > 0 {
                bundle
                    .reliability_flags
                    .push(format!("{} grid points excluded below floor {:.3e}", rep.excluded_points, rep.reliable_floor));
            }
            if let Some(dir) = &config.out_dir {
                fs::write(dir.join("decay.json"), serde_json::to_string_pretty(&rep)?)?;
                bundle.artifacts.push("decay.json".into());
            }
        }
    }
    Ok(())
}

fn run_probe(
    config: &RunConfig,
    bundle: &mut ReportBundle,
    family: Option<&FamilyConfig>,
    probe_cfg: &ProbeConfig,
) -> Result<()> {
    let need_set = |family: Option<&FamilyConfig>| -> Result<GapSet> {
        match family {
            Some(f) => Ok(f.build()?.0),
            None => Err(Error::param("family", "this probe needs a set family")),
        }
    };
    let report = match probe_cfg {
        ProbeConfig::Frame { p, trials, grid } => {
            let set = need_set(family)?;
            describe_set(bundle, &set);
            let cfg = FrameProbeConfig::with_default_scale(*p, *trials, *grid, config.seed, &set);
            let fp = probe::frame_probe(&set, &cfg)?;
            bundle.summary.insert("c1_hat".into(), serde_json::json!(fp.c1_hat));
            bundle.summary.insert("c2_hat".into(), serde_json::json!(fp.c2_hat));
            fp.report
        }
        ProbeConfig::Dirichlet { p, n_list } => {
            let scaling = probe::dirichlet_scaling(*p, n_list)?;
            bundle.summary.insert("exponent".into(), serde_json::json!(scaling.fit.exponent));
            bundle.summary.insert("target_exponent".into(), serde_json::json!(scaling.target_exponent));
            let mut rep = ProbeReport::new("dirichlet_scaling");
            rep.params.insert("p".into(), serde_json::json!(*p));
            rep.scalars.insert("exponent".into(), scaling.fit.exponent);
            rep.scalars.insert("target_exponent".into(), scaling.target_exponent);
            rep.scalars.insert("r2".into(), scaling.fit.r2);
            for (&n, &v) in n_list.iter().zip(&scaling.norms) {
                rep.series.push((n as f64, v));
            }
            rep
        }
        ProbeConfig::Rademacher { k_list, ambient_n, p, montecarlo, trials, grid } => {
            let cfg = RademacherConfig {
                ambient_n: *ambient_n,
                p: *p,
                mode: if *montecarlo { SignMode::MonteCarlo } else { SignMode::Exhaustive },
                trials: *trials,
                seed: config.seed,
                grid: *grid,
            };
            let rep = probe::rademacher_experiment(k_list, &cfg)?;
            bundle.summary.insert("theta_mean_norm".into(), serde_json::json!(rep.scalars["theta_mean_norm"]));
            bundle.summary.insert("dirichlet_rhs".into(), serde_json::json!(rep.scalars["dirichlet_rhs"]));
            rep
        }
        ProbeConfig::Khintchine { coeffs, p, montecarlo, trials } => {
            let mode = if *montecarlo { SignMode::MonteCarlo } else { SignMode::Exhaustive };
            let ratio = probe::khintchine_ratio(coeffs, *p, mode, *trials, config.seed)?;
            bundle.summary.insert("ratio".into(), serde_json::json!(ratio));
            let mut rep = ProbeReport::new("khintchine");
            rep.seed = Some(config.seed);
            rep.params.insert("p".into(), serde_json::json!(*p));
            rep.params.insert("n".into(), serde_json::json!(coeffs.len()));
            rep.scalars.insert("ratio".into(), ratio);
            rep
        }
        ProbeConfig::Growth { p, n_max } => {
            if *n_max == 0 {
                return Err(Error::param("n_max", "need at least order 1"));
            }
            let ns: Vec<usize> = (1..=*n_max).collect();
            let rep = probe::chain_growth_table(&ns, *p)?;
            bundle.summary.insert("r".into(), serde_json::json!(rep.scalars["r"]));
            bundle
                .summary
                .insert("r_n_max".into(), serde_json::json!(rep.series.last().map(|s| s.1)));
            rep
        }
    };

    if let Some(dir) = &config.out_dir {
        fs::write(dir.join("probe.json"), serde_json::to_string_pretty(&report)?)?;
        bundle.artifacts.push("probe.json".into());
        if config.format == OutputFormat::Csv && !report.series.is_empty() {
            let p = report.params.get("p").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
            let rows: Vec<Vec<String>> = report
                .series
                .iter()
                .map(|&(x, v)| {
                    vec![
                        format!("{x}"),
                        format!("{p}"),
                        format!("{v}"),
                        String::new(),
                        report.seed.map(|s| s.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            write_csv(&dir.join("probe.csv"), "n_or_N,p,value,stderr,seed", &rows)?;
            bundle.artifacts.push("probe.csv".into());
        }
    }
    bundle.probe_reports.push(report);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::cantor_triadic;

    #[test]
    fn set_file_round_trip_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.json");
        let set = cantor_triadic(3).unwrap();
        save_set(&set, &path).unwrap();
        let loaded = load_set(&path).unwrap();
        assert_eq!(set.window(), loaded.window());
        assert_eq!(set.depth(), loaded.depth());
        assert_eq!(set.gaps().len(), loaded.gaps().len());
        for (a, b) in set.gaps().iter().zip(loaded.gaps()) {
            assert_eq!(a.0.to_bits(), b.0.to_bits());
            assert_eq!(a.1.to_bits(), b.1.to_bits());
        }
    }

    #[test]
    fn load_rejects_overlapping_gaps() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(
            &path,
            r#"{"window":[0.0,1.0],"gaps":[[0.2,0.5],[0.4,0.6]],"depth":0,"meta":{"schema_version":1}}"#,
        )
        .unwrap();
        assert!(matches!(load_set(&path), Err(Error::OverlappingGaps { .. })));
    }

    #[test]
    fn load_rejects_wrong_schema() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("old.json");
        fs::write(&path, r#"{"window":[0.0,1.0],"gaps":[],"depth":0,"meta":{"schema_version":99}}"#).unwrap();
        assert!(matches!(load_set(&path), Err(Error::SchemaMismatch { expected: 1, found: 99 })));
    }

    #[test]
    fn missing_file_errors_with_io() {
        assert!(matches!(load_set(Path::new("/nonexistent/set.json")), Err(Error::Io(_))));
    }

    #[test]
    fn config_hash_stable_and_sensitive() {
        let a = RunConfig::new(CommandConfig::Construct { family: FamilyConfig::Cantor { depth: 2 } });
        let b = RunConfig::new(CommandConfig::Construct { family: FamilyConfig::Cantor { depth: 2 } });
        let c = RunConfig::new(CommandConfig::Construct { family: FamilyConfig::Cantor { depth: 3 } });
        assert_eq!(a.hash().unwrap(), b.hash().unwrap());
        assert_ne!(a.hash().unwrap(), c.hash().unwrap());
    }

    #[test]
    fn construct_run_writes_set_and_report() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = RunConfig::new(CommandConfig::Construct { family: FamilyConfig::Cantor { depth: 2 } });
        config.out_dir = Some(dir.path().to_path_buf());
        let bundle = run(&config).unwrap();
        assert!(bundle.artifacts.contains(&"set.json".to_string()));
        assert!(dir.path().join("report.json").exists());
        let reloaded = load_set(&dir.path().join("set.json")).unwrap();
        assert_eq!(reloaded.gaps().len(), 3);
    }

    #[test]
    fn boxdim_run_produces_slope() {
        let mut config = RunConfig::new(CommandConfig::Thickness {
            family: FamilyConfig::Cantor { depth: 10 },
            analysis: ThicknessConfig::BoxDim { scales: (1..=8).map(|n| 3f64.powi(-n)).collect() },
        });
        config.out_dir = None;
        let bundle = run(&config).unwrap();
        let slope = bundle.summary["slope"].as_f64().unwrap();
        assert!((slope - 0.6309).abs() < 0.02);
    }

    #[test]
    fn validation_errors_map_to_exit_2_and_reliability_to_3() {
        assert_eq!(exit_code(&Error::param("depth", "bad")), 2);
        assert_eq!(exit_code(&Error::Unreliable("all deltas".into())), 3);
    }

    #[test]
    fn frame_probe_run_deterministic_modulo_timestamp() {
        let config = RunConfig::new(CommandConfig::Probe {
            family: Some(FamilyConfig::Dyadic { k_min: 0, k_max: 6 }),
            probe: ProbeConfig::Frame { p: 4.0 / 3.0, trials: 5, grid: 256 },
        });
        let a = run(&config).unwrap().stable_json().unwrap();
        let b = run(&config).unwrap().stable_json().unwrap();
        assert_eq!(a, b);
    }
}
