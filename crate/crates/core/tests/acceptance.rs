//! Acceptance run: one line per criterion with its timing. Exits nonzero if
//! any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratsemi_core::algebra::{decompose, deck_group, AffineMap};
use ratsemi_core::measure::{
    brolin_sample, invariance_residual, koopman, lyubich_apply, measure_distance, moments, shared_cycle_check, CompareConfig,
    CycleConfig, MeasureVerdict, RootConfig, SampleConfig, TestFunction,
};
use ratsemi_core::pingpong::{certify_auto, replay_certificate, AutoOptions, FailedCheck, Verdict};
use ratsemi_core::semigroup::{
    affine_orbit_separation, amenability_verdict, enumerate_growth, levin_check, monomial_free_check, Budget, EnumPolicy,
    ProbeOutcome, SeparationOutcome, Status,
};
use ratsemi_core::{parse_map, Caps, GaussianRational, Poly, RationalMap};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn maps(texts: &[&str]) -> Vec<RationalMap> {
    texts.iter().map(|t| parse_map(t).unwrap()).collect()
}

fn poly(text: &str) -> Poly {
    parse_map(text).unwrap().as_poly().unwrap()
}

fn c1_affine_digits() -> Check {
    let gens = maps(&["2*z", "2*z+1"]);
    let en = enumerate_growth(&gens, 12, &EnumPolicy::default()).map_err(|e| e.to_string())?;
    for n in 1..=12 {
        ensure(en.table.count(n) == Some(1 << n) && en.table.exact[n - 1], format!("count at length {n}: {:?}", en.table.count(n)))?;
    }
    ensure(en.relations_total == 0, format!("{} relations", en.relations_total))?;
    let affine: Vec<AffineMap> = gens.iter().map(|g| AffineMap::from_map(g).unwrap()).collect();
    let sep = affine_orbit_separation(&affine, 12).map_err(|e| e.to_string())?;
    ensure(sep.outcome == SeparationOutcome::SeparatedToDepth { count: 4096 }, format!("{:?}", sep.outcome))?;
    Ok("counts 2^n to n=12, 0 relations, SeparatedToDepth(4096)".into())
}

fn c2_sign_pair() -> Check {
    let gens = maps(&["z^2", "-z^2"]);
    let en = enumerate_growth(&gens, 6, &EnumPolicy::default()).map_err(|e| e.to_string())?;
    for n in 1..=6 {
        ensure(en.table.count(n) == Some(2) && en.table.exact[n - 1], format!("count at length {n}: {:?}", en.table.count(n)))?;
    }
    let lv = levin_check(&gens[0], &gens[1], 3, &Caps::default()).map_err(|e| e.to_string())?;
    ensure(lv == ProbeOutcome::Found((1, 1)), format!("levin {lv:?}"))?;
    let v = amenability_verdict(&gens, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::ProvedRelated, format!("verdict {:?}", v.status))?;
    Ok("counts 2 for n<=6, levin (1,1), ProvedRelated".into())
}

fn c3_commuting_powers() -> Check {
    let gens = maps(&["z^2", "z^3"]);
    let en = enumerate_growth(&gens, 12, &EnumPolicy::default()).map_err(|e| e.to_string())?;
    for n in 1..=12 {
        ensure(en.table.count(n) == Some(n as u64 + 1) && en.table.exact[n - 1], format!("count at length {n}: {:?}", en.table.count(n)))?;
    }
    let r = en.first_relation().ok_or("no relation")?;
    ensure(r.left.len() == 2 && r.right.len() == 2, format!("first relation {} = {}", r.left, r.right))?;
    Ok(format!("counts n+1 for n<=12, first relation {} = {}", r.left, r.right))
}

fn c4_unit_monomials() -> Check {
    let gens = maps(&["(3/5+4/5i)*z^2", "z^2"]);
    let en = enumerate_growth(&gens, 16, &EnumPolicy::default()).map_err(|e| e.to_string())?;
    for n in 1..=16 {
        ensure(en.table.count(n) == Some(1 << n) && en.table.exact[n - 1], format!("count at length {n}: {:?}", en.table.count(n)))?;
    }
    let w = monomial_free_check(&gens, 16).map_err(|e| e.to_string())?;
    let w = w.witness().ok_or("no witness")?;
    Ok(format!("counts 2^n for n<=16, witness {} / {}", w.left, w.right))
}

fn c5_circle_sampler() -> Check {
    let p = poly("z^2");
    let n = 100_000;
    let cloud = brolin_sample(&p, &SampleConfig { samples: n, ..SampleConfig::default() }).map_err(|e| e.to_string())?;
    ensure(cloud.len() == n, "sample count")?;
    let worst = cloud.points.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    ensure(worst < 1e-9, format!("||z|-1| up to {worst:e}"))?;
    let bound = 4.0 / (n as f64).sqrt();
    let m = moments(&cloud.points, 6).map_err(|e| e.to_string())?;
    let mmax = m.complex.iter().map(|x| x.norm()).fold(0.0, f64::max);
    ensure(mmax <= bound, format!("max |m_k| = {mmax:.5} > {bound:.5}"))?;
    let res = invariance_residual(&p, &cloud, 6).map_err(|e| e.to_string())?;
    let rbound = 8.0 / (n as f64).sqrt();
    ensure(res <= rbound, format!("invariance residual {res:.5} > {rbound:.5}"))?;
    Ok(format!("max ||z|-1| {worst:.1e}, max |m_k| {mmax:.5} <= {bound:.5}, residual {res:.5} <= {rbound:.5}"))
}

fn c6_measure_dichotomy() -> Check {
    let sample = |text: &str, seed: u64| {
        brolin_sample(&poly(text), &SampleConfig { samples: 20_000, seed, ..SampleConfig::default() }).map_err(|e| e.to_string())
    };
    let (a, b, c) = (sample("z^2", 1)?, sample("-z^2", 2)?, sample("z^2-1", 3)?);
    let cfg = CompareConfig::default();
    let same = measure_distance(&a, &b, &cfg).map_err(|e| e.to_string())?;
    ensure(same.verdict == MeasureVerdict::LikelyEqual, format!("z^2 vs -z^2: {same:?}"))?;
    let diff = measure_distance(&a, &c, &cfg).map_err(|e| e.to_string())?;
    ensure(diff.verdict == MeasureVerdict::LikelyDifferent, format!("z^2 vs z^2-1: {diff:?}"))?;
    let ratio = diff.moment_distance / diff.moment_threshold;
    ensure(ratio > 10.0, format!("moment distance only {ratio:.1}x threshold"))?;
    Ok(format!("equal pair d={:.4}, different pair d={:.3} ({ratio:.0}x threshold)", same.moment_distance, diff.moment_distance))
}

fn c7_pingpong() -> Check {
    let opts = AutoOptions::default();
    let free = certify_auto(&poly("z^2+6"), &poly("z^2-6"), &opts).map_err(|e| e.to_string())?;
    let cert = &free.certificate;
    ensure(cert.is_free(), format!("not free: {:?}", free.attempts))?;
    ensure(cert.max_depth <= 14, format!("depth {}", cert.max_depth))?;
    ensure(replay_certificate(cert).map_err(|e| e.to_string())?, "replay failed")?;
    let text = serde_json::to_string(cert).map_err(|e| e.to_string())?;
    let back = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(replay_certificate(&back).map_err(|e| e.to_string())?, "replay after JSON round trip failed")?;

    let sign = certify_auto(&poly("z^2"), &poly("-z^2"), &opts).map_err(|e| e.to_string())?;
    let failed = match &sign.certificate.verdict {
        Verdict::Free => return Err("sign pair certified free".into()),
        Verdict::Inconclusive { failed, .. } => failed.clone(),
    };
    ensure(
        failed.iter().any(|f| matches!(f, FailedCheck::Disjointness | FailedCheck::Containment(_))),
        format!("failures {failed:?}"),
    )?;
    ensure(!replay_certificate(&sign.certificate).map_err(|e| e.to_string())?, "inconclusive certificate accepted by replay")?;
    Ok(format!(
        "free at radius {} with {} leaves, depth {}; sign pair fails {:?}",
        cert.disk.radius.to_f64(),
        cert.leaf_count,
        cert.max_depth,
        failed
    ))
}

/// Affine `a z + b` with `p(a z + b) = p(z)` counted numerically: `a` runs
/// over the `d`-th roots of unity and `b` is forced by the `z^(d-1)` term.
fn deck_oracle(p: &Poly) -> usize {
    let c = p.to_c64();
    let d = c.len() - 1;
    let scale = c.iter().map(|x| x.norm()).fold(1.0, f64::max);
    (0..d)
        .filter(|&j| {
            let a = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / d as f64);
            let b = if d >= 2 { c[d - 1] * (Complex64::new(1.0, 0.0) - a.powu(d as u32 - 1)) / (c[d] * d as f64 * a.powu(d as u32 - 1)) } else { 0.0.into() };
            (0..12).all(|k| {
                let z = Complex64::new(0.3 + 0.17 * k as f64, -0.4 + 0.11 * k as f64);
                (p.eval_c64(a * z + b) - p.eval_c64(z)).norm() < 1e-9 * scale
            })
        })
        .count()
}

fn c8_deck_and_decomposition() -> Check {
    for (text, order, primitive) in [("z^4+z^2", 2, false), ("z^3+1", 3, true), ("z^3+z", 1, false)] {
        let p = poly(text);
        let info = deck_group(&p).map_err(|e| e.to_string())?;
        ensure(info.order == order && info.is_primitive == primitive, format!("{text}: {info:?}"))?;
        ensure(deck_oracle(&p) as u64 == info.order, format!("{text}: oracle {} vs {}", deck_oracle(&p), info.order))?;
    }
    let p = poly("z^4+2*z^2");
    let dec = decompose(&p).map_err(|e| e.to_string())?;
    ensure(!dec.is_prime(), "z^4+2z^2 reported prime")?;
    let (g, t) = dec.pairs().iter().find(|(_, t)| t.deg() == 2).ok_or("no degree-2 right factor")?;
    ensure(g.compose(t, &Caps::default()).map_err(|e| e.to_string())? == p, "G∘T differs from p")?;
    ensure(*g == poly("z^2+2*z") && *t == poly("z^2"), format!("factors {g} ∘ {t}"))?;
    // degree-4 p = G∘T with monic T = z^2 + b z forces b = c3 / (2 c4)
    let b_forced = p.coeff(3).to_complex64() / (p.coeff(4).to_complex64() * 2.0);
    ensure(b_forced.norm() < 1e-15, "oracle right factor is not z^2")?;
    Ok(format!("deck orders 2/3/1 match oracle, z^4+2z^2 = ({g})∘({t})"))
}

fn c9_operator_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = RootConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let c = GaussianRational::from_parts(rng.gen_range(-200..=200), 100, rng.gen_range(-200..=200), 100);
        let p = Poly::new(vec![c, GaussianRational::zero(), GaussianRational::one()]);
        for _ in 0..100 {
            let x = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let k = rng.gen_range(1..=4);
            let phi = TestFunction::Monomial(k);
            let back = lyubich_apply(&p, &koopman(&p, &phi), x, &cfg).map_err(|e| e.to_string())?;
            worst = worst.max((back - phi.eval(x)).norm() / phi.eval(x).norm().max(1.0));
        }
    }
    ensure(worst < 1e-9, format!("L∘K error {worst:e}"))?;
    let sq = poly("z^2");
    let mut worst0: f64 = 0.0;
    for _ in 0..100 {
        let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        worst0 = worst0.max(lyubich_apply(&sq, &TestFunction::Monomial(1), x, &cfg).map_err(|e| e.to_string())?.norm());
    }
    ensure(worst0 < 1e-12, format!("L_(z^2)(z) up to {worst0:e}"))?;
    Ok(format!("L∘K error {worst:.1e}, L_(z^2)(z) max {worst0:.1e}"))
}

fn c10_shared_cycles() -> Check {
    let cfg = CycleConfig::default();
    let sorted_points = |cs: &[ratsemi_core::measure::CycleMeasure]| {
        let mut v: Vec<Vec<(f64, f64)>> = cs.iter().map(|c| c.points.iter().map(|z| (z.re, z.im)).collect()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    };
    let near = |got: &[Vec<(f64, f64)>], want: &[(f64, f64)]| {
        got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g.len() == 1 && (g[0].0 - w.0).hypot(g[0].1 - w.1) < 1e-9)
    };
    let a = shared_cycle_check(&poly("z^2"), &poly("z^3"), 2, &cfg).map_err(|e| e.to_string())?;
    ensure(near(&sorted_points(&a.shared), &[(0.0, 0.0), (1.0, 0.0)]) && a.infinity_shared, format!("z^2, z^3: {:?}", a.shared))?;
    let b = shared_cycle_check(&poly("z^2"), &poly("-z^2"), 2, &cfg).map_err(|e| e.to_string())?;
    ensure(near(&sorted_points(&b.shared), &[(0.0, 0.0)]), format!("z^2, -z^2 shared: {:?}", b.shared))?;
    ensure(
        b.rejected.iter().any(|c| c.period == 1 && (c.points[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9),
        format!("z^2, -z^2 rejected: {:?}", b.rejected),
    )?;
    Ok(format!("shared {{0}}, {{1}}, ∞; sign pair shares {{0}}, rejects {} cycles including {{1}}", b.rejected.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 affine digits free", c1_affine_digits, Duration::from_secs(10)),
        ("2 sign pair collapses", c2_sign_pair, Duration::from_secs(30)),
        ("3 commuting powers", c3_commuting_powers, Duration::from_secs(5)),
        ("4 unit monomials free", c4_unit_monomials, Duration::from_secs(10)),
        ("5 circle sampler", c5_circle_sampler, Duration::from_secs(60)),
        ("6 measure dichotomy", c6_measure_dichotomy, Duration::MAX),
        ("7 ping-pong certificate", c7_pingpong, Duration::from_secs(120)),
        ("8 deck and decomposition", c8_deck_and_decomposition, Duration::from_secs(5)),
        ("9 operator identities", c9_operator_identities, Duration::MAX),
        ("10 shared cycles", c10_shared_cycles, Duration::MAX),
    ];
    let mut failures = Vec::new();
    for (name, run, limit) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let dt = t0.elapsed();
        let outcome = match outcome {
            Ok(detail) if dt > limit => Err(format!("{detail}; took {dt:.1?}, limit {limit:?}")),
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("criterion {name}: PASS ({dt:.2?}) {detail}"),
            Err(why) => {
                println!("criterion {name}: FAIL ({dt:.2?}) {why}");
                failures.push(name);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failures.len());
    if !failures.is_empty() {
        std::process::exit(1);
    }
}
