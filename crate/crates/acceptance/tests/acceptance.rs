//! One PASS/FAIL line per acceptance criterion. Exits 1 if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptheta::certify::*;
use ptheta::constants::manifest;
use ptheta::poly::{build_perturbed_resultant, perturbation_key, perturbation_name, truncation_resultant};
use ptheta::spectrum::*;
use ptheta::theta::{jacobi_theta_star_eval, theta_eval, xi_tail_eval};
use ptheta::BallComplex;
use ptheta_cli::{computed_constants, lemma_entries, segment_entries, ThresholdTable};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    match truncation_resultant() {
        Ok(v) if Some(&v) == manifest().polynomial("V").as_ref() => {}
        Ok(v) => bad.push(format!("V = {}", v.pretty("q"))),
        Err(e) => bad.push(format!("V: {e}")),
    }
    match build_perturbed_resultant() {
        Ok(map) => {
            if map.len() != 8 {
                bad.push(format!("{} perturbation terms, expected 8", map.len()));
            }
            for name in ["V1", "V2", "V3", "W1", "W2", "W3", "W4"] {
                let got = perturbation_key(name).and_then(|k| map.get(&k));
                if got != manifest().polynomial(name).as_ref() {
                    bad.push(format!("{name} differs"));
                }
            }
            let names: Vec<_> = map.keys().filter_map(|k| perturbation_name(*k)).collect();
            if names.len() != 8 {
                bad.push(format!("unexpected monomials: {:?}", map.keys().collect::<Vec<_>>()));
            }
        }
        Err(e) => bad.push(e.to_string()),
    }
    ok(bad.is_empty(), if bad.is_empty() { "V and V1..V3, W1..W4 equal the published lists".into() } else { bad.join("; ") })
}

fn criterion_2() -> Outcome {
    let computed = computed_constants();
    let mut bad = Vec::new();
    let mut worst = String::new();
    for name in ["c0", "q_tilde_1", "y_1", "lambda0", "gamma_radius", "lambda"] {
        let c = manifest().constant(name).expect("manifest constant");
        let v = computed[name];
        let d = (v - c.value_f64()).abs();
        if !(d <= c.tolerance) {
            bad.push(format!("{name}: {v} vs {} (|diff| {d:.2e} > {:.0e})", c.value, c.tolerance));
        } else {
            worst = format!("{worst}{name} {d:.1e}, ");
        }
    }
    let (a0, b0) = segments::perturbation_radii().unwrap_or((f64::NAN, f64::NAN));
    for (name, v) in [("a0", a0), ("b0", b0)] {
        if !manifest().bound(name).expect("manifest bound").contains(v) {
            bad.push(format!("{name} = {v} outside its bracket"));
        }
    }
    let detail = if bad.is_empty() { format!("{worst}a0 = {a0:.6}, b0 = {b0:.6}") } else { bad.join("; ") };
    ok(bad.is_empty(), detail)
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let published = segment_entries(ThresholdTable::Published, 1.0);
    let sigma = published.iter().filter(|c| c.kind == "sigma").count();
    let failed: Vec<&str> = published.iter().filter(|c| !c.valid).map(|c| c.name.as_str()).collect();
    if sigma != 12 || !failed.is_empty() {
        bad.push(format!("published table: {sigma} Σ-certificates, failing {failed:?}"));
    }
    let corrected_ok = segment_entries(ThresholdTable::Corrected, 1.0).iter().all(|c| c.valid);
    let v = truncation_resultant().expect("V");
    let k = rouche_zero_count(square_k(), &v).map(|c| c.count);
    let strip = rouche_zero_count(left_strip(), &v).map(|c| c.count);
    if k != Ok(2) || strip != Ok(0) {
        bad.push(format!("Rouché counts {k:?}, {strip:?}"));
    }
    // inflating any single segment's thresholds must break the suite
    let base = ThresholdTable::Corrected.rows();
    let opts = SuiteOptions::default();
    let mut undetected = Vec::new();
    for i in 0..base.len() {
        let mut t = base.clone();
        let lv: f64 = t[i].lower_v.parse().expect("decimal");
        t[i].lower_v = format!("{}", lv * 10.0);
        let rep = segment_report(&t, &opts).expect("report");
        if rep.iter().all(|(_, r)| r.as_ref().is_ok_and(|c| c.valid)) {
            undetected.push(t[i].segment.clone());
        }
    }
    if !undetected.is_empty() {
        bad.push(format!("inflation not detected on {undetected:?}"));
    }
    let detail = format!(
        "{}; corrected table (K0 0.0465, S1 0.0316) {}; Rouché K = {k:?}, strip = {strip:?}",
        if bad.is_empty() { "all valid".into() } else { bad.join("; ") },
        if corrected_ok { "all valid" } else { "NOT valid" },
    );
    ok(bad.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    let r = verify_proposition_constants();
    let near = |name: &str, v: f64| {
        let c = manifest().constant(name).expect("manifest constant");
        (v - c.value_f64()).abs() <= c.tolerance
    };
    let checks = [
        ("b_tail < 0.0146", r.b_tail < 0.0146),
        ("g0", near("g0", r.g0)),
        ("sin", near("sin_threshold", r.sin_threshold)),
        ("cos", near("cos_threshold", r.cos_threshold)),
        ("cos 4γ", near("cos_4gamma", r.cos_4gamma)),
        ("all inequalities", r.all_passed && r.checks.len() >= 7),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    ok(
        failed.is_empty(),
        format!("|B| <= {:.6}, g0 = {:.10}, {} inequalities; failing {failed:?}", r.b_tail, r.g0, r.checks.len()),
    )
}

fn criterion_5() -> Outcome {
    let e = lemma_entries();
    let lemmas: Vec<_> = e.iter().filter(|c| c.kind == "lemma").collect();
    let failed: Vec<&str> = lemmas.iter().filter(|c| !c.valid).map(|c| c.name.as_str()).collect();
    ok(lemmas.len() == 3 && failed.is_empty(), format!("{} lemma certificates, failing {failed:?}", lemmas.len()))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let pts = match real_spectrum_scan(30, 1e-11) {
        Ok(p) => p,
        Err(e) => return ok(false, format!("positive scan: {e}")),
    };
    let fit = fit_positive_law(&pts, 0.0, 5, 15);
    if !(fit.relative_change < 0.25) {
        bad.push(format!("C moves by {:.1}%", 100.0 * fit.relative_change));
    }
    let ep = PI.exp();
    let worst_y = pts
        .iter()
        .filter(|p| p.index_label.unwrap_or(0) >= 15)
        .map(|p| (p.x_star.re + ep).abs() / ep)
        .fold(0.0, f64::max);
    if !(worst_y < 0.15) {
        bad.push(format!("y_j off -e^π by {:.1}%", 100.0 * worst_y));
    }
    let neg = match negative_spectrum_scan(30, 1e-10) {
        Ok(p) => p,
        Err(e) => return ok(false, format!("negative scan: {e}")),
    };
    let eh = (PI / 2.0).exp();
    let worst_neg = neg
        .iter()
        .filter(|p| p.point.index_label.unwrap_or(0) >= 15)
        .map(|p| (p.point.x_star.norm() - eh).abs() / eh)
        .fold(0.0, f64::max);
    if !(worst_neg < 0.10) {
        bad.push(format!("|ȳ_k| off e^(π/2) by {:.1}%", 100.0 * worst_neg));
    }
    ok(
        bad.is_empty(),
        format!(
            "C(5..30) = {:.4}, C(15..30) = {:.4} ({:.1}%), max |y_j + e^π|/e^π = {:.1}%, max ||ȳ_k| - e^(π/2)|/e^(π/2) = {:.1}%{}",
            fit.c_full,
            fit.c_tail,
            100.0 * fit.relative_change,
            100.0 * worst_y,
            100.0 * worst_neg,
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut worst_rec = 0.0f64;
    for q in [0.1, 0.2, 0.25] {
        match reciprocal_sum_check(re(q), 12) {
            Ok(r) => {
                worst_rec = worst_rec.max(r.residual);
                if !(r.residual < 1e-6) {
                    bad.push(format!("Σ 1/ξ_j + q = {:.1e} at {q}", r.residual));
                }
            }
            Err(e) => bad.push(format!("reciprocal sum at {q}: {e}")),
        }
    }
    let mut worst_fe = 0.0f64;
    for i in 0..10 {
        for k in 0..10 {
            let qa = 0.05 + 0.45 * f64::from(i) / 9.0;
            let xa = 1.0 + 19.0 * f64::from(k) / 9.0;
            let q = BallComplex::point(Complex64::new(qa * 0.6, qa * 0.8));
            let x = BallComplex::point(Complex64::new(-xa * 0.28, xa * 0.96));
            let lhs = jacobi_theta_star_eval(q, x, 1e-15);
            let rhs = jacobi_theta_star_eval(q, q * x, 1e-15);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => worst_fe = worst_fe.max((l.center - (q * x * r).center).norm()),
                _ => worst_fe = f64::INFINITY,
            }
        }
    }
    if !(worst_fe < 1e-10) {
        bad.push(format!("functional equation residual {worst_fe:.1e}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut split_bad = 0;
    for _ in 0..200 {
        let q = BallComplex::point(Complex64::from_polar(rng.gen_range(0.01..0.9), rng.gen_range(0.0..2.0 * PI)));
        let x = BallComplex::point(Complex64::from_polar(rng.gen_range(1.01..50.0), rng.gen_range(0.0..2.0 * PI)));
        let tol = 1e-12 * ptheta::theta::FastJet::log_mass(q.center, x.center).exp().max(1.0);
        let consistent = match (theta_eval(q, x, tol), jacobi_theta_star_eval(q, x, tol), xi_tail_eval(q, x)) {
            (Ok(t), Ok(s), Ok(xi)) => {
                let xi = xi.value;
                let d = (t.center - s.center - xi.center).norm();
                d <= t.radius + s.radius + xi.radius + 8.0 * f64::EPSILON * (t.center.norm() + s.center.norm() + xi.center.norm())
            }
            _ => false,
        };
        split_bad += usize::from(!consistent);
    }
    if split_bad > 0 {
        bad.push(format!("θ = Θ* + Ξ inconsistent at {split_bad}/200 points"));
    }
    let mut worst_lead = 0.0f64;
    for j in 1..=5 {
        match laurent_coefficients(j, 12, 0.08) {
            Ok(c) => worst_lead = worst_lead.max((c[0] + 1.0).norm()),
            Err(e) => bad.push(format!("Laurent j = {j}: {e}")),
        }
    }
    if !(worst_lead < 1e-8) {
        bad.push(format!("Laurent leading coefficient off -1 by {worst_lead:.1e}"));
    }
    let mut trips = 0;
    for _ in 0..60 {
        let j = rng.gen_range(3..=10u32);
        let q = Complex64::from_polar(rng.gen_range(0.06..0.31), rng.gen_range(0.0..2.0 * PI));
        if track_zero(j, &radial_path(q, 0.02, 30), 1e-13).is_err() {
            trips += 1;
        }
    }
    if trips > 0 {
        bad.push(format!("annulus guard tripped on {trips}/60 tracks"));
    }
    ok(
        bad.is_empty(),
        format!(
            "reciprocal residual {worst_rec:.1e}, functional equation {worst_fe:.1e}, Laurent lead {worst_lead:.1e}, 200 splittings, 60 tracks{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let mut grid = Vec::new();
    for q in [0.5, 0.7, 0.9] {
        for k in [12, 20, 40] {
            let cell = match omega_k_count(re(q), k, 0.1) {
                Ok(c) if c.count == 1 => "1".to_string(),
                Ok(c) => {
                    bad.push(format!("({q}, {k}): {} zeros", c.count));
                    c.count.to_string()
                }
                Err(e) => {
                    bad.push(format!("({q}, {k}): {e}"));
                    "?".into()
                }
            };
            grid.push(format!("{q}/{k}:{cell}"));
        }
    }
    let trend = rho_trend(&[0.3, 0.5, 0.7, 0.9], 30);
    let j0: Vec<Option<u32>> = trend.rows.iter().map(|r| r.j0).collect();
    let finite = j0.iter().all(Option::is_some);
    let nondecreasing = j0.windows(2).all(|w| w[0] <= w[1]);
    if !(finite && nondecreasing) {
        bad.push(format!("j0 = {j0:?}"));
    }
    ok(
        bad.is_empty(),
        format!(
            "counts [{}], j0(0.3, 0.5, 0.7, 0.9) = {j0:?}{}",
            grid.join(" "),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("exact resultant", criterion_1, Duration::from_secs(1)),
        ("constants", criterion_2, Duration::from_secs(10)),
        ("certification suite", criterion_3, Duration::from_secs(120)),
        ("proposition constants", criterion_4, Duration::from_secs(1)),
        ("lemma certificates", criterion_5, Duration::from_secs(1)),
        ("asymptotics", criterion_6, Duration::from_secs(300)),
        ("identities", criterion_7, Duration::from_secs(120)),
        ("localization", criterion_8, Duration::from_secs(300)),
    ];
    let mut all = true;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        let pass = o.pass && el <= *budget;
        all &= pass;
        let timing = if el <= *budget { String::new() } else { format!(" [over budget {budget:?}]") };
        println!("{} {} {name} ({:.2}s){timing}: {}", if pass { "PASS" } else { "FAIL" }, i + 1, el.as_secs_f64(), o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
