//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::excessive_precision)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, DiscreteCDF};

use lifespan::geometry::{
    capacity_breakpoints, capacity_pdf, capacity_support, distance_pdf, AreaShape,
};
use lifespan::models::{EnergyModel, TrafficModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::montecarlo::{
    run_trials, sample_death_time, simulate_multi_hop_betas, simulate_single_hop,
    simulate_single_hop_betas, wilson_interval, EmpiricalCcdf, SimulationPlan,
};
use lifespan::multihop::{multihop_ccdf_with, RingConfig};
use lifespan::network::{
    death_rank, hetero_bound_direction, network_ccdf, network_pdf, survival_moments_with,
    survivor_threshold, tau_for_mean_survival, BoundDirection, LifetimeQuery, MomentOptions,
    SurvivalMoments,
};
use lifespan::sensor::{survival_clt, survival_exact, survival_floor};
use lifespan::specfun::{
    gaussian_ccdf_inv, integrate, integrate_pieces, regularized_lower_gamma,
    regularized_upper_gamma, QuadratureSpec,
};

const SEED: u64 = 0x5eed_2024;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn radio_energy(e: f64) -> EnergyModel {
    EnergyModel::adjustable(FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, e).unwrap()
}

fn unit_rate() -> TrafficModel {
    TrafficModel::poisson(1.0).unwrap()
}

/// Root of a nonincreasing `f` crossing `target` inside `[lo, hi]`.
fn bisect_decreasing(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    assert!(f(lo) >= target && f(hi) <= target, "target not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn wilson_99(successes: u64, n: u64) -> (f64, f64) {
    wilson_interval(successes, n, gaussian_ccdf_inv(0.005).unwrap())
}

// 1 ---------------------------------------------------------------------------

fn erlang_cdf(a: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..a {
        term *= x / k as f64;
        sum += term;
    }
    1.0 - (-x).exp() * sum
}

fn special_functions() -> Verdict {
    let mut erlang_err: f64 = 0.0;
    for a in 1..=20u32 {
        for i in 0..=1000 {
            let x = 0.5 * i as f64;
            let got = regularized_lower_gamma(a as f64, x).unwrap();
            erlang_err = erlang_err.max((got - erlang_cdf(a, x)).abs());
        }
    }
    // (a, x, lower P, upper Q); mpmath at 60 digits, None where the
    // complement is the better-conditioned value
    let oracle: [(f64, f64, Option<f64>, Option<f64>); 10] = [
        (0.5, 0.25, Some(0.520_499_877_813_046_5), None),
        (0.5, 0.5, Some(0.682_689_492_137_085_9), None),
        (0.5, 1.0, Some(0.842_700_792_949_714_9), None),
        (220.0, 110.0, Some(1.872_961_862_607_667_4e-20), None),
        (220.0, 220.0, Some(0.508_965_785_123_563_8), None),
        (220.0, 440.0, None, Some(1.280_761_884_088_789_6e-31)),
        (1991.7, 995.85, Some(1.522_624_406_326_108_9e-169), None),
        (1991.7, 1991.7, Some(0.502_979_737_862_774_2), None),
        (1991.7, 3983.4, None, Some(3.372_620_367_062_265_9e-268)),
        (220.0, 100.0, Some(2.966_073_483_656_131_8e-25), None),
    ];
    let mut rel_err: f64 = 0.0;
    for (a, x, p, q) in oracle {
        if let Some(p) = p {
            rel_err = rel_err.max(((regularized_lower_gamma(a, x).unwrap() - p) / p).abs());
        }
        if let Some(q) = q {
            rel_err = rel_err.max(((regularized_upper_gamma(a, x).unwrap() - q) / q).abs());
            rel_err = rel_err.max((regularized_lower_gamma(a, x).unwrap() - 1.0).abs());
        }
    }
    verdict(
        erlang_err <= 1e-10 && rel_err <= 1e-9,
        format!("Erlang max abs err {erlang_err:.2e} (tol 1e-10), oracle max rel err {rel_err:.2e} (tol 1e-9)"),
    )
}

// 2 ---------------------------------------------------------------------------

fn distance_for(energy: &EnergyModel, x: f64) -> f64 {
    ((energy.initial_energy / x - energy.c) / energy.k).powf(1.0 / energy.alpha)
}

fn pdf_normalization() -> Verdict {
    let energy = radio_energy(0.011);
    let area = 100.0 * std::f64::consts::PI;
    let shapes = [
        ("circle", AreaShape::circle_with_area(area).unwrap()),
        ("triangle", AreaShape::polygon_with_area(3, area).unwrap()),
        ("square", AreaShape::polygon_with_area(4, area).unwrap()),
        ("hexagon", AreaShape::polygon_with_area(6, area).unwrap()),
    ];
    let spec = QuadratureSpec::default();
    let mut mass_err: f64 = 0.0;
    let mut push_err: f64 = 0.0;
    for (_, shape) in &shapes {
        let pts = capacity_breakpoints(shape, &energy).unwrap();
        let mass =
            integrate_pieces(|x| capacity_pdf(shape, &energy, x).unwrap(), &pts, &spec).unwrap();
        mass_err = mass_err.max((mass - 1.0).abs());
        let support = capacity_support(shape, &energy).unwrap();
        for i in 0..20 {
            // interior points, offset so none lands on the polygon kink
            let x = support.lo + (support.hi - support.lo) * (i as f64 + 0.37) / 20.0;
            let d = distance_for(&energy, x);
            let dd_dx = energy.initial_energy / (x * x * energy.k * energy.alpha)
                * d.powf(1.0 - energy.alpha);
            let expected = distance_pdf(shape, d) * dd_dx;
            let got = capacity_pdf(shape, &energy, x).unwrap();
            push_err = push_err.max(((got - expected) / expected).abs());
        }
    }
    verdict(
        mass_err <= 1e-6 && push_err <= 1e-9,
        format!("max |mass - 1| {mass_err:.2e} (tol 1e-6), push-forward max rel err {push_err:.2e} (tol 1e-9)"),
    )
}

// 3 ---------------------------------------------------------------------------

fn sensor_oracle() -> Verdict {
    let draws = 100_000u64;
    let mut misses = Vec::new();
    let mut worst: f64 = 0.0;
    for (idx, &k) in [5u64, 50, 220].iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + idx as u64);
        let mut sums: Vec<f64> = (0..draws)
            .map(|_| (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).sum())
            .collect();
        sums.sort_by(f64::total_cmp);
        let kf = k as f64;
        for target in linspace(0.95, 0.05, 10) {
            let tau = bisect_decreasing(
                |t| survival_exact(kf, 1.0, t).unwrap(),
                0.0,
                10.0 * kf + 50.0,
                target,
            );
            let exact = survival_exact(kf, 1.0, tau).unwrap();
            let alive = draws - sums.partition_point(|&x| x < tau) as u64;
            let (lo, hi) = wilson_99(alive, draws);
            worst = worst.max((alive as f64 / draws as f64 - exact).abs());
            if !(lo <= exact && exact <= hi) {
                misses.push(format!("k={k} tau={tau:.3}"));
            }
        }
    }
    let mut clt_err: f64 = 0.0;
    for p in [100.0, 150.0, 220.0, 219.94, 500.0, 1000.0, 1991.7] {
        for tau in linspace(0.5 * p, 1.5 * p, 401) {
            let d =
                (survival_clt(p, 1.0, tau).unwrap() - survival_exact(p, 1.0, tau).unwrap()).abs();
            clt_err = clt_err.max(d);
        }
    }
    verdict(
        misses.is_empty() && clt_err <= 0.02,
        format!(
            "30 points, {} outside 99% CI {:?}, max |emp - exact| {worst:.4}; CLT max err {clt_err:.4} (tol 0.02)",
            misses.len(),
            misses
        ),
    )
}

// 4 ---------------------------------------------------------------------------

fn exact_tail(n: u64, mu: f64, beta: f64) -> f64 {
    let need = survivor_threshold(n, beta);
    if need == 0 {
        return 1.0;
    }
    Binomial::new(mu, n).unwrap().sf(need - 1)
}

fn normal_vs_binomial() -> Verdict {
    let beta = 0.3;
    let mut small: f64 = 0.0;
    let mut per_n = Vec::new();
    for n in [10u64, 20, 30] {
        let mut worst: f64 = 0.0;
        for mu in [0.2, 0.5, 0.8] {
            let m = SurvivalMoments::new(mu, 1.0).unwrap();
            let q = network_ccdf(&LifetimeQuery::new(1.0, beta, n).unwrap(), &m);
            worst = worst.max((q - exact_tail(n, mu, beta)).abs());
        }
        per_n.push(format!("N={n}: {worst:.4}"));
        small = small.max(worst);
    }
    let mut large: f64 = 0.0;
    for mu in [0.2, 0.5, 0.8] {
        let m = SurvivalMoments::new(mu, 1.0).unwrap();
        let q = network_ccdf(&LifetimeQuery::new(1.0, beta, 500).unwrap(), &m);
        large = large.max((q - exact_tail(500, mu, beta)).abs());
    }
    verdict(
        small <= 0.06 && large <= 0.01,
        format!(
            "beta=0.3; {} (tol 0.06); N=500: {large:.2e} (tol 0.01)",
            per_n.join(", ")
        ),
    )
}

// 5 ---------------------------------------------------------------------------

fn single_hop_oracle() -> Verdict {
    let shape = AreaShape::circle(10.0).unwrap();
    let energy = radio_energy(0.011);
    let traffic = unit_rate();
    let opts = MomentOptions::floor();
    let nodes = 500;
    let betas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let plan = SimulationPlan::new(nodes, 0.5, 10_000, SEED).unwrap();
    let emps = simulate_single_hop_betas(&shape, &energy, &traffic, &plan, &betas).unwrap();
    let ccdf = |tau: f64, beta: f64| {
        let m = survival_moments_with(&shape, &energy, &traffic, tau, &opts).unwrap();
        network_ccdf(&LifetimeQuery::new(tau, beta, nodes).unwrap(), &m)
    };
    let mut failures = Vec::new();
    let mut worst_dev: f64 = 0.0;
    let mut exact_dev: f64 = 0.0;
    let support = capacity_support(&shape, &energy).unwrap();
    assert_eq!(support.lo.floor(), (support.hi - 1e-12).floor());
    for (beta, emp) in betas.iter().zip(&emps) {
        // μ(τ) = 1 - β marks the transition; the grid spans ccdf 0.95 .. 0.05 around it
        let centre = tau_for_mean_survival(&shape, &energy, &traffic, 1.0 - beta, &opts).unwrap();
        for target in linspace(0.95, 0.05, 10) {
            let tau = bisect_decreasing(|t| ccdf(t, *beta), 0.5 * centre, 1.5 * centre, target);
            let a = ccdf(tau, *beta);
            let e = emp.eval(tau);
            let (lo, hi) = emp.ci(tau, 0.99).unwrap();
            // every sensor here has the same floor budget, so the exact law is binomial
            let mu = survival_moments_with(&shape, &energy, &traffic, tau, &opts)
                .unwrap()
                .mu();
            let exact = Binomial::new(mu, nodes)
                .unwrap()
                .sf(nodes - death_rank(nodes, *beta));
            exact_dev = exact_dev.max((exact - e).abs());
            let tol = 0.02f64.max((e - lo).max(hi - e));
            let dev = (a - e).abs();
            worst_dev = worst_dev.max(dev);
            if dev > tol {
                failures.push(format!(
                    "beta={beta} tau={tau:.2} analytic={a:.4} emp={e:.4}"
                ));
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "90 points, max |analytic - emp| {worst_dev:.4}, {} over tolerance; exact binomial vs emp max {exact_dev:.4}{}",
            failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(": {}", failures.join("; "))
            }
        ),
    )
}

// 6 ---------------------------------------------------------------------------

fn pdf_consistency() -> Verdict {
    let shape = AreaShape::circle(10.0).unwrap();
    let energy = radio_energy(0.011);
    let traffic = unit_rate();
    let opts = MomentOptions::default();
    let (beta, nodes) = (0.3, 500);
    let ccdf = |tau: f64| {
        let m = survival_moments_with(&shape, &energy, &traffic, tau, &opts).unwrap();
        network_ccdf(&LifetimeQuery::new(tau, beta, nodes).unwrap(), &m)
    };
    let pdf = |tau: f64| {
        network_pdf(
            tau,
            &LifetimeQuery::new(tau, beta, nodes).unwrap(),
            &shape,
            &energy,
            &traffic,
        )
        .unwrap()
    };
    let centre = tau_for_mean_survival(&shape, &energy, &traffic, 1.0 - beta, &opts).unwrap();
    let lo = bisect_decreasing(ccdf, 1.0, centre, 1.0 - 1e-9);
    let hi = bisect_decreasing(ccdf, centre, 2.0 * centre, 1e-7);
    let peak = linspace(lo, hi, 400)
        .into_iter()
        .map(pdf)
        .fold(0.0, f64::max);
    let a = bisect_decreasing(ccdf, lo, centre, 0.99);
    let b = bisect_decreasing(ccdf, centre, hi, 0.01);
    let h = 1e-3;
    let mut fd_err: f64 = 0.0;
    for tau in linspace(a, b, 20) {
        let fd = (ccdf(tau - h) - ccdf(tau + h)) / (2.0 * h);
        fd_err = fd_err.max((pdf(tau) - fd).abs());
    }
    let spec = QuadratureSpec::new(1e-8, 1e-12, 2000).unwrap();
    let mass = integrate(pdf, lo, hi, &spec).unwrap();
    // the density peaks where μ(τ) = 1 - β
    let mode_ok = [centre - 0.05, centre + 0.05]
        .iter()
        .all(|&t| pdf(t) <= pdf(centre));
    verdict(
        fd_err <= 1e-4 * peak && (mass - 1.0).abs() <= 1e-3 && mode_ok,
        format!(
            "finite-difference max err {:.2e} x peak (tol 1e-4), mass {mass:.6} (tol 1e-3), mode at mu = 1 - beta: {mode_ok}",
            fd_err / peak
        ),
    )
}

// 7 ---------------------------------------------------------------------------

fn asymptotics() -> Verdict {
    let shape = AreaShape::circle(10.0).unwrap();
    let energy = radio_energy(0.011);
    let traffic = unit_rate();
    let opts = MomentOptions::floor();
    let beta = 0.3;
    // margin a = 1 - β - μ = +0.05 and -0.05
    let tau_fail = tau_for_mean_survival(&shape, &energy, &traffic, 0.65, &opts).unwrap();
    let tau_hold = tau_for_mean_survival(&shape, &energy, &traffic, 0.75, &opts).unwrap();
    let analytic = |tau: f64, n: u64| {
        let m = survival_moments_with(&shape, &energy, &traffic, tau, &opts).unwrap();
        network_ccdf(&LifetimeQuery::new(tau, beta, n).unwrap(), &m)
    };
    let big_fail = analytic(tau_fail, 5000);
    let big_hold = analytic(tau_hold, 5000);
    let sizes = [100u64, 200, 500, 1000];
    let mut fail_curve = Vec::new();
    let mut hold_curve = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let plan = SimulationPlan::new(n, beta, 1000, SEED + i as u64).unwrap();
        let emp = simulate_single_hop(&shape, &energy, &traffic, &plan).unwrap();
        fail_curve.push(emp.eval(tau_fail));
        hold_curve.push(emp.eval(tau_hold));
    }
    let decreasing = fail_curve.windows(2).all(|w| w[1] <= w[0]) && fail_curve[3] < fail_curve[0];
    let increasing = hold_curve.windows(2).all(|w| w[1] >= w[0]) && hold_curve[3] > hold_curve[0];
    let directional = fail_curve[3] < 0.5 && hold_curve[3] > 0.5;
    verdict(
        big_fail < 0.01 && big_hold > 0.99 && decreasing && increasing && directional,
        format!(
            "N=5000: a>0 {big_fail:.2e}, a<0 {:.6}; MC over N {:?}: a>0 {:?}, a<0 {:?}",
            big_hold, sizes, fail_curve, hold_curve
        ),
    )
}

// 8 ---------------------------------------------------------------------------

fn multihop_oracle() -> Verdict {
    let shape = AreaShape::circle(100.0).unwrap();
    let nodes = 500;
    let beta = 0.3;
    let floor = MomentOptions::floor();
    let cont = MomentOptions::default();
    let ranges = [10.0, 20.0, 25.0, 50.0];
    let model = |r: f64| {
        (
            RingConfig::new(shape, r, nodes, 1.0).unwrap(),
            EnergyModel::fixed_range(r, FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.1)
                .unwrap(),
        )
    };
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut transitions = Vec::new();
    for (i, &r) in ranges.iter().enumerate() {
        let (cfg, energy) = model(r);
        let f = |tau: f64| multihop_ccdf_with(&cfg, &energy, tau, beta, &floor).unwrap();
        let emp = simulate_multi_hop_betas(&cfg, &energy, &[beta], 10_000, SEED + i as u64)
            .unwrap()
            .remove(0);
        let hi = 10.0 * 2000.0;
        for target in linspace(0.9, 0.1, 8) {
            let tau = bisect_decreasing(f, 1e-9, hi, target);
            let dev = (f(tau) - emp.eval(tau)).abs();
            worst = worst.max(dev);
            if dev > 0.03 {
                failures.push(format!("r={r} tau={tau:.2} dev={dev:.4}"));
            }
        }
        let g = |tau: f64| multihop_ccdf_with(&cfg, &energy, tau, beta, &cont).unwrap();
        transitions.push(bisect_decreasing(g, 1e-9, hi, 0.5));
    }
    // at each range's transition, a wider range must not do worse
    let mut monotone = true;
    for &tau in &transitions {
        let vals: Vec<f64> = ranges
            .iter()
            .map(|&r| {
                let (cfg, energy) = model(r);
                multihop_ccdf_with(&cfg, &energy, tau, beta, &cont).unwrap()
            })
            .collect();
        monotone &= vals.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    }
    // β sensitivity at r = 20 m where the β = 0.3 curve crosses 1/2
    let (cfg, energy) = model(20.0);
    let tau = transitions[1];
    let betas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let vals: Vec<f64> = betas
        .iter()
        .map(|&b| multihop_ccdf_with(&cfg, &energy, tau, b, &cont).unwrap())
        .collect();
    let spread = vals.iter().cloned().fold(f64::MIN, f64::max)
        - vals.iter().cloned().fold(f64::MAX, f64::min);
    let (spread_ok, spread_note) = if spread <= 0.1 {
        (true, format!("analytic beta spread {spread:.4}"))
    } else {
        let emps = simulate_multi_hop_betas(&cfg, &energy, &betas, 10_000, SEED + 10).unwrap();
        let ev: Vec<f64> = emps.iter().map(|e| e.eval(tau)).collect();
        let s = ev.iter().cloned().fold(f64::MIN, f64::max)
            - ev.iter().cloned().fold(f64::MAX, f64::min);
        (
            s <= 0.1,
            format!("analytic beta spread {spread:.4} > 0.1, simulated {s:.4}"),
        )
    };
    verdict(
        failures.is_empty() && monotone && spread_ok,
        format!(
            "32 points, max dev {worst:.4} (tol 0.03){}; nondecreasing in r: {monotone}; {spread_note} (tol 0.1)",
            if failures.is_empty() {
                String::new()
            } else {
                format!(" failures: {}", failures.join("; "))
            }
        ),
    )
}

// 9 ---------------------------------------------------------------------------

fn bound_direction() -> Verdict {
    let nodes = 100u64;
    let trials = 100_000u64;
    // (packets in class A, class B, τ, β); half the nodes in each class, unit rate
    let cases = [
        (40u64, 20u64, 25.0, 0.4),
        (40, 20, 25.0, 0.5),
        (100, 30, 30.0, 0.2),
        (100, 30, 30.0, 0.3),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (i, &(ka, kb, tau, beta)) in cases.iter().enumerate() {
        // fixed-range classes whose budgets floor to ka and kb
        let budget = |k: u64| {
            let e =
                EnergyModel::fixed_range(10.0, FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 1.0)
                    .unwrap();
            let per_packet = FIRST_ORDER_RADIO_K * 1e4 + FIRST_ORDER_RADIO_C;
            e.with_initial_energy((k as f64 + 0.5) * per_packet)
                .unwrap()
        };
        let (ea, eb) = (budget(ka), budget(kb));
        let traffic = unit_rate();
        let shape = AreaShape::circle(10.0).unwrap();
        let opts = MomentOptions::floor();
        let mu_a = survival_moments_with(&shape, &ea, &traffic, tau, &opts)
            .unwrap()
            .mu();
        let mu_b = survival_moments_with(&shape, &eb, &traffic, tau, &opts)
            .unwrap()
            .mu();
        assert_eq!(mu_a, survival_floor(ka as f64 + 0.5, 1.0, tau).unwrap());
        let mean = 0.5 * (mu_a + mu_b);
        let query = LifetimeQuery::new(tau, beta, nodes).unwrap();
        let formula = network_ccdf(&query, &SurvivalMoments::new(mean, tau).unwrap());
        let rank = death_rank(nodes, beta) as usize;
        let lifetimes = run_trials(trials, SEED + i as u64, |_, rng| {
            let mut deaths: Vec<f64> = (0..nodes)
                .map(|j| sample_death_time(if j < nodes / 2 { ka } else { kb }, 1.0, rng))
                .collect();
            deaths.sort_by(f64::total_cmp);
            deaths[rank - 1]
        });
        let emp = EmpiricalCcdf::from_lifetimes(lifetimes).unwrap();
        let (lo, hi) = emp.ci(tau, 0.99).unwrap();
        let dir = hetero_bound_direction(&query, mean);
        let case_ok = match dir {
            BoundDirection::UpperBound => hi < formula,
            BoundDirection::LowerBound => lo > formula,
            BoundDirection::Exact => false,
        };
        ok &= case_ok;
        notes.push(format!(
            "a={:+.3} {:?}: emp {:.4} [{lo:.4}, {hi:.4}] vs {formula:.4}",
            query.margin(mean),
            dir,
            emp.eval(tau)
        ));
    }
    verdict(ok, notes.join("; "))
}

// 10 --------------------------------------------------------------------------

fn shape_ordering() -> Verdict {
    let area = std::f64::consts::PI * 2500.0;
    let circle = AreaShape::circle_with_area(area).unwrap();
    let triangle = AreaShape::polygon_with_area(3, area).unwrap();
    let energy = radio_energy(0.011);
    let traffic = unit_rate();
    let opts = MomentOptions::floor();
    let (beta, nodes) = (0.3, 500u64);
    let ccdf = |shape: &AreaShape, tau: f64| {
        let m = survival_moments_with(shape, &energy, &traffic, tau, &opts).unwrap();
        network_ccdf(&LifetimeQuery::new(tau, beta, nodes).unwrap(), &m)
    };
    let taus: Vec<f64> = [0.9, 0.5, 0.1]
        .iter()
        .map(|&p| bisect_decreasing(|t| ccdf(&circle, t), 1.0, 1000.0, p))
        .collect();
    let plan = SimulationPlan::new(nodes, beta, 2000, SEED).unwrap();
    let emp_c = simulate_single_hop(&circle, &energy, &traffic, &plan).unwrap();
    let emp_t = simulate_single_hop(&triangle, &energy, &traffic, &plan).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for &tau in &taus {
        let (c, t) = (ccdf(&circle, tau), ccdf(&triangle, tau));
        let (_, t_hi) = emp_t.ci(tau, 0.99).unwrap();
        let (c_lo, _) = emp_c.ci(tau, 0.99).unwrap();
        let in_range = c > 0.05 && c < 0.95;
        ok &= in_range && t <= c && t_hi < c_lo;
        notes.push(format!(
            "tau={tau:.1}: circle {c:.3} (emp {:.3}), triangle {t:.3} (emp {:.3})",
            emp_c.eval(tau),
            emp_t.eval(tau)
        ));
    }
    verdict(ok, notes.join("; "))
}

// 11 --------------------------------------------------------------------------

fn run_cli(sub: &str, config: &Path, out: &Path, threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lifespan"))
        .args([sub, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .env("LIFESPAN_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn cli_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.json");
    let multi = dir.path().join("multi.json");
    std::fs::write(
        &single,
        r#"{"shape": {"sides": 4, "area": 314.159}, "energy": {"k": 1.3e-12, "c": 5e-5, "alpha": 4, "initial_energy": 0.011},
            "traffic": {"rate": 1}, "nodes": [50, 200], "beta": [0.2, 0.6], "tau": {"start": 0, "stop": 260, "count": 14},
            "trials": 300, "seed": 99}"#,
    )
    .unwrap();
    std::fs::write(
        &multi,
        r#"{"shape": {"radius": 100}, "energy": {"k": 1.3e-12, "c": 5e-5, "alpha": 4, "initial_energy": 0.1},
            "traffic": {"rate": 1}, "mode": "multi-hop", "range": [20, 50], "nodes": 500, "beta": [0.3, 0.9],
            "tau": [0, 50, 80, 100, 300], "trials": 300, "seed": 5}"#,
    )
    .unwrap();
    let jobs = [
        ("sensor-ccdf", &single),
        ("network-ccdf", &single),
        ("network-pdf", &single),
        ("predict", &single),
        ("simulate", &single),
        ("compare", &single),
        ("multihop-ccdf", &multi),
        ("simulate", &multi),
        ("compare", &multi),
    ];
    let mut bad = Vec::new();
    let mut files = 0;
    for (i, (sub, cfg)) in jobs.iter().enumerate() {
        let runs: Vec<_> = ["1", "8", "1"]
            .iter()
            .enumerate()
            .map(|(k, threads)| {
                let out = dir.path().join(format!("{i}-{k}"));
                let status = run_cli(sub, cfg, &out, threads);
                (out, status)
            })
            .collect();
        if runs.iter().any(|(_, s)| !s.status.success()) {
            bad.push(format!(
                "{sub} failed: {}",
                String::from_utf8_lossy(&runs[0].1.stderr)
            ));
            continue;
        }
        let mut names: Vec<_> = std::fs::read_dir(&runs[0].0)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        for name in names {
            files += 1;
            let base = std::fs::read(runs[0].0.join(&name)).unwrap();
            for (out, _) in &runs[1..] {
                if std::fs::read(out.join(&name)).ok().as_ref() != Some(&base) {
                    bad.push(format!("{sub}/{}", name.to_string_lossy()));
                }
            }
        }
    }
    verdict(
        bad.is_empty() && files > 0,
        format!("{} subcommand runs, {files} files compared serial vs 8 threads vs rerun; mismatches: {bad:?}", jobs.len()),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 11] = [
        ("special-function accuracy", special_functions),
        ("budget density normalization", pdf_normalization),
        ("sensor survival vs simulated sums", sensor_oracle),
        ("normal approximation vs binomial tail", normal_vs_binomial),
        ("single-hop analytic vs simulation", single_hop_oracle),
        ("lifetime density consistency", pdf_consistency),
        ("large-N asymptotics", asymptotics),
        ("multi-hop analytic vs simulation", multihop_oracle),
        ("heterogeneous bound direction", bound_direction),
        ("area-shape ordering", shape_ordering),
        ("CLI determinism", cli_determinism),
    ];
    let filter: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {:<40} {} [{:.1}s] {}",
            name,
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
