use ratsemi_core::algebra::{
    classify_exceptional, decompose, deck_group, parse_constant, parse_map, AffineMap, Decomposition, Exceptional, FactorPair, Poly,
    RationalMap,
};
use ratsemi_core::measure::{
    brolin_sample, measure_distance, moments, periodic_cycles, shared_cycle_check, CloudMeta, CompareConfig, ComparisonReport,
    CycleConfig, MeasureVerdict, MomentVector, SampleConfig,
};
use ratsemi_core::pingpong::{
    certify_auto, certify_pingpong, replay_certificate, AutoAttempt, ComplexBox, Disk, PingPongCertificate, Region, Verdict,
};
use ratsemi_core::semigroup::{
    affine_orbit_separation, amenability_verdict, enumerate_growth, levin_check, zieve_zhan_search, AffineSeparation, Budget,
    Enumeration, ProbeOutcome, Status,
};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{report, report_with_csv, write_file};
use crate::Command;

pub fn dispatch(cmd: Command, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let name = cmd.name();
    match cmd {
        Command::Classify => classify(name, cfg),
        Command::Deck => deck(name, cfg),
        Command::Decompose => decompose_cmd(name, cfg),
        Command::Growth => growth(name, cfg),
        Command::Relations => relations(name, cfg),
        Command::Levin => levin(name, cfg),
        Command::ZieveZhan => zieve_zhan(name, cfg),
        Command::CertifyFree => certify_free(name, cfg),
        Command::Brolin => brolin(name, cfg),
        Command::CompareMeasures => compare(name, cfg),
        Command::Cycles => cycles(name, cfg),
        Command::Verdict => verdict(name, cfg),
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn map_arg(v: &Option<String>, flag: &str) -> Result<RationalMap, CliError> {
    Ok(parse_map(required(v, flag)?)?)
}

fn poly_arg(v: &Option<String>, flag: &str) -> Result<Poly, CliError> {
    let m = map_arg(v, flag)?;
    m.as_poly().map_err(|_| CliError::Usage(format!("--{flag} must be a polynomial")))
}

fn gens(cfg: &ExperimentConfig) -> Result<Vec<RationalMap>, CliError> {
    if cfg.inputs.gens.is_empty() {
        return Err(CliError::Usage("--gens is required".into()));
    }
    cfg.inputs.gens.iter().map(|g| parse_map(g).map_err(CliError::from)).collect()
}

#[derive(Serialize)]
struct ClassifyResult {
    map: String,
    class: Exceptional,
    exceptional: bool,
}

fn classify(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let p = poly_arg(&cfg.inputs.map, "map")?;
    let class = classify_exceptional(&p)?;
    report(name, cfg, &ClassifyResult { map: p.to_string(), class, exceptional: class.is_exceptional() })?;
    Ok(0)
}

#[derive(Serialize)]
struct DeckResult {
    map: String,
    order: u64,
    is_primitive: bool,
}

fn deck(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let p = poly_arg(&cfg.inputs.map, "map")?;
    let d = deck_group(&p)?;
    report(name, cfg, &DeckResult { map: p.to_string(), order: d.order, is_primitive: d.is_primitive })?;
    Ok(0)
}

#[derive(Serialize)]
struct DecomposeResult {
    map: String,
    prime: bool,
    factors: Vec<FactorPair>,
}

fn decompose_cmd(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let p = poly_arg(&cfg.inputs.map, "map")?;
    let d: Decomposition = decompose(&p)?;
    report(name, cfg, &DecomposeResult { map: p.to_string(), prime: d.is_prime(), factors: d.factor_pairs() })?;
    Ok(0)
}

#[derive(Serialize)]
struct GrowthResult<'a> {
    counts: &'a [u64],
    exact: &'a [bool],
    truncated_at: Option<usize>,
    relations_total: u64,
    affine: Option<AffineSeparation>,
}

fn affine_gens(g: &[RationalMap]) -> Option<Vec<AffineMap>> {
    g.iter().map(AffineMap::from_map).collect()
}

fn growth(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let g = gens(cfg)?;
    let en: Enumeration = enumerate_growth(&g, cfg.run.depth, &cfg.policy)?;
    let affine = match affine_gens(&g) {
        Some(a) if g.len().checked_pow(cfg.run.depth as u32).is_some_and(|n| n <= 1 << 22) => Some(affine_orbit_separation(&a, cfg.run.depth)?),
        _ => None,
    };
    let t = &en.table;
    let res = GrowthResult { counts: &t.counts, exact: &t.exact, truncated_at: t.truncated_at, relations_total: en.relations_total, affine };
    report_with_csv(name, cfg, &t.to_csv(), &res)?;
    Ok(if t.is_truncated() || en.has_fingerprint_only() { 1 } else { 0 })
}

fn relations(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let g = gens(cfg)?;
    let en = enumerate_growth(&g, cfg.run.depth, &cfg.policy)?;
    report(name, cfg, &en)?;
    Ok(if en.table.is_truncated() || en.has_fingerprint_only() { 1 } else { 0 })
}

#[derive(Serialize)]
struct PairResult {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypothesis: Option<String>,
}

fn outcome_status<T>(o: &ProbeOutcome<T>) -> (&'static str, Option<u64>, i32) {
    match o {
        ProbeOutcome::Found(_) => ("found", None, 0),
        ProbeOutcome::NotFound => ("not_found", None, 0),
        ProbeOutcome::Inconclusive { skipped } => ("inconclusive", Some(*skipped), 1),
    }
}

fn levin(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let (r, q) = (map_arg(&cfg.inputs.map1, "map1")?, map_arg(&cfg.inputs.map2, "map2")?);
    let o = levin_check(&r, &q, cfg.run.max, &cfg.policy.caps)?;
    let (status, skipped, code) = outcome_status(&o);
    let (n, m) = o.found().map(|&(n, m)| (Some(n), Some(m))).unwrap_or((None, None));
    report(name, cfg, &PairResult { status, n, m, k: None, skipped, hypothesis: None })?;
    Ok(code)
}

fn zieve_zhan(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let (r, q) = (map_arg(&cfg.inputs.map1, "map1")?, map_arg(&cfg.inputs.map2, "map2")?);
    let rep = zieve_zhan_search(&r, &q, cfg.run.max, &cfg.policy.caps)?;
    let (status, skipped, code) = outcome_status(&rep.outcome);
    let (k, n, m) = rep.outcome.found().map(|&(k, n, m)| (Some(k), Some(n), Some(m))).unwrap_or((None, None, None));
    let hypothesis = Some(format!("{:?}", rep.hypothesis));
    report(name, cfg, &PairResult { status, n, m, k, skipped, hypothesis })?;
    Ok(code)
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Usage(format!("bad {what} `{s}`")))
}

fn parse_disk(s: &str) -> Result<Disk, CliError> {
    let v = numbers(s, "disk")?;
    let (re, im, r) = match v[..] {
        [re, r] => (re, 0.0, r),
        [re, im, r] => (re, im, r),
        _ => return Err(CliError::Usage(format!("disk must be `re,r` or `re,im,r`, got `{s}`"))),
    };
    if r <= 0.0 {
        return Err(CliError::Usage("disk radius must be positive".into()));
    }
    Ok(Disk::from_f64(re, im, r))
}

fn parse_region(s: &str) -> Result<Region, CliError> {
    let boxes = s
        .split(';')
        .filter(|b| !b.trim().is_empty())
        .map(|b| match numbers(b, "box")?[..] {
            [x0, x1, y0, y1] if x0 <= x1 && y0 <= y1 => Ok(ComplexBox::from_f64(x0, x1, y0, y1)),
            _ => Err(CliError::Usage(format!("box must be `x0,x1,y0,y1` with x0 ≤ x1, y0 ≤ y1, got `{b}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Region::new(boxes))
}

#[derive(Serialize)]
struct CertifyResult<'a> {
    free: bool,
    leaf_count: u64,
    max_depth: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    attempts: Option<&'a [AutoAttempt]>,
    certificate: &'a PingPongCertificate,
}

#[derive(Serialize)]
struct ReplayResult {
    replayed: bool,
    free: bool,
}

fn load_certificate(path: &std::path::Path) -> Result<PingPongCertificate, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("certificate: {e}")))?;
    // accept a bare certificate or a saved report
    let inner = v.pointer("/result/certificate").cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| CliError::Usage(format!("certificate: {e}")))
}

fn certify_free(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    if let Some(path) = &cfg.certify.replay {
        let cert = load_certificate(path)?;
        let ok = replay_certificate(&cert)?;
        report(name, cfg, &ReplayResult { replayed: ok, free: ok && cert.is_free() })?;
        return Ok(if ok { 0 } else { 1 });
    }
    let (p1, p2) = (poly_arg(&cfg.inputs.map1, "map1")?, poly_arg(&cfg.inputs.map2, "map2")?);
    let depth = cfg.certify.depth.unwrap_or(cfg.auto.depth_cap);
    let (cert, attempts) = if cfg.certify.auto || cfg.certify.disk.is_none() {
        let opts = ratsemi_core::pingpong::AutoOptions { depth_cap: depth, ..cfg.auto.clone() };
        let res = certify_auto(&p1, &p2, &opts)?;
        (res.certificate, Some(res.attempts))
    } else {
        let disk = parse_disk(required(&cfg.certify.disk, "disk")?)?;
        let n1 = parse_region(required(&cfg.certify.n1, "n1")?)?;
        let n2 = parse_region(required(&cfg.certify.n2, "n2")?)?;
        (certify_pingpong(&p1, &p2, &disk, &n1, &n2, depth)?, None)
    };
    let free = matches!(cert.verdict, Verdict::Free);
    let res = CertifyResult { free, leaf_count: cert.leaf_count, max_depth: cert.max_depth, attempts: attempts.as_deref(), certificate: &cert };
    report(name, cfg, &res)?;
    Ok(if free { 0 } else { 1 })
}

fn sample_config(cfg: &ExperimentConfig, seed: u64) -> Result<SampleConfig, CliError> {
    let start = parse_constant(&cfg.run.start)?.to_complex64();
    Ok(SampleConfig { samples: cfg.run.samples, burn_in: cfg.run.burn_in, seed, start, ..SampleConfig::default() })
}

#[derive(Serialize)]
struct BrolinResult<'a> {
    meta: &'a CloudMeta,
    moments: MomentVector,
    max_modulus: f64,
}

fn brolin(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let p = poly_arg(&cfg.inputs.map, "map")?;
    let cloud = brolin_sample(&p, &sample_config(cfg, cfg.run.seed)?)?;
    if let Some(csv) = &cfg.output.csv {
        let sidecar = serde_json::to_string_pretty(&cloud.meta).map_err(|e| CliError::Io(e.to_string()))?;
        write_file(&csv.with_extension("json"), &sidecar)?;
    }
    let res = BrolinResult {
        meta: &cloud.meta,
        moments: moments(&cloud.points, cfg.run.k.clamp(1, 16))?,
        max_modulus: cloud.points.iter().map(|z| z.norm()).fold(0.0, f64::max),
    };
    report_with_csv(name, cfg, &cloud.to_csv(), &res)?;
    Ok(0)
}

#[derive(Serialize)]
struct CompareResult<'a> {
    first: &'a CloudMeta,
    second: &'a CloudMeta,
    report: ComparisonReport,
}

fn compare(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let (p, q) = (poly_arg(&cfg.inputs.map1, "map1")?, poly_arg(&cfg.inputs.map2, "map2")?);
    let (sa, sb) = (sample_config(cfg, cfg.run.seed)?, sample_config(cfg, cfg.run.seed.wrapping_add(1))?);
    let (a, b) = rayon::join(|| brolin_sample(&p, &sa), || brolin_sample(&q, &sb));
    let (a, b) = (a?, b?);
    let cc = CompareConfig { k: cfg.run.k, ..cfg.compare.clone() };
    let rep = measure_distance(&a, &b, &cc)?;
    let code = if rep.verdict == MeasureVerdict::Inconclusive { 1 } else { 0 };
    report(name, cfg, &CompareResult { first: &a.meta, second: &b.meta, report: rep })?;
    Ok(code)
}

fn cycles(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let p = poly_arg(&cfg.inputs.map, "map")?;
    let cc = CycleConfig { tol: cfg.run.tol, ..CycleConfig::default() };
    if cfg.inputs.map2.is_some() {
        let q = poly_arg(&cfg.inputs.map2, "map2")?;
        let res = shared_cycle_check(&p, &q, cfg.run.k, &cc)?;
        report(name, cfg, &res)?;
        return Ok(if res.flagged.is_empty() { 0 } else { 1 });
    }
    let res = periodic_cycles(&p, cfg.run.k, &cc)?;
    report(name, cfg, &res)?;
    Ok(if res.flagged.is_empty() { 0 } else { 1 })
}

fn verdict(name: &str, cfg: &ExperimentConfig) -> Result<i32, CliError> {
    let g = gens(cfg)?;
    let budget = Budget {
        max_len: cfg.run.depth,
        policy: cfg.policy.clone(),
        thresholds: cfg.growth,
        probe_max: cfg.run.max,
        samples: cfg.run.samples,
        burn_in: cfg.run.burn_in,
        seed: cfg.run.seed,
        compare: CompareConfig { k: cfg.run.k, ..cfg.compare.clone() },
        certify: cfg.run.certify,
        auto: cfg.auto.clone(),
    };
    let rep = amenability_verdict(&g, &budget)?;
    report(name, cfg, &rep)?;
    Ok(if rep.status == Status::Inconclusive { 1 } else { 0 })
}
