//! Cross-module identities run by `--self-check`.

use num_bigint::BigUint;

use rydberg_jam_core::complexity::{
    complexity, complexity_closed_b1, complexity_closed_b2, kmer_complexity,
    kmer_complexity_direct, rho_star,
};
use rydberg_jam_core::genfunc::{growth_rate, jammed_counts, jammed_counts_by_recurrence};
use rydberg_jam_core::model::{enumerate_jammed, ModelParams};
use rydberg_jam_core::rsa::{jamming_limit_quadrature, kmer_jamming_limit};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn p(b: usize) -> ModelParams {
    ModelParams::new(b).expect("b >= 1")
}

fn max_dev<I: Iterator<Item = f64>>(it: I) -> f64 {
    it.fold(0.0, f64::max)
}

fn closed_forms() -> CheckResult {
    let grid = |lo: f64, hi: f64| (1..=200).map(move |i| lo + (hi - lo) * i as f64 / 200.0);
    let d1 = max_dev(grid(1.0 / 3.0, 0.5).map(|r| {
        (complexity(p(1), r).map(|c| c.f).unwrap_or(f64::NAN)
            - complexity_closed_b1(r).unwrap_or(f64::NAN))
        .abs()
    }));
    let d2 = max_dev(grid(0.2, 1.0 / 3.0).map(|r| {
        (complexity(p(2), r).map(|c| c.f).unwrap_or(f64::NAN)
            - complexity_closed_b2(r).unwrap_or(f64::NAN))
        .abs()
    }));
    CheckResult {
        name: "closed forms b=1,2 vs general path",
        pass: d1 <= 1e-10 && d2 <= 1e-10,
        detail: format!("max deviation {d1:.1e}, {d2:.1e}"),
    }
}

fn oracle_counts() -> CheckResult {
    let mut mismatches = 0;
    for b in 1..=3 {
        let t = jammed_counts(p(b), 16);
        for l in 0..=16 {
            let brute = enumerate_jammed(l, p(b)).expect("below cap");
            mismatches += (0..=l)
                .filter(|&n| t.count(n, l) != BigUint::from(brute.get(n)))
                .count();
        }
    }
    CheckResult {
        name: "brute force vs generating function, L<=16",
        pass: mismatches == 0,
        detail: format!("{mismatches} mismatches"),
    }
}

fn recurrence_route() -> CheckResult {
    let ok = (1..=4)
        .all(|b| jammed_counts_by_recurrence(p(b), 40).is_ok_and(|r| r == jammed_counts(p(b), 40)));
    CheckResult {
        name: "series vs recurrence expansion, L<=40",
        pass: ok,
        detail: String::new(),
    }
}

fn growth_identity() -> CheckResult {
    let d = max_dev((1..=10).map(|b| (rho_star(p(b)).f_at_star - growth_rate(p(b)).ln_w()).abs()));
    CheckResult {
        name: "f(rho*) = ln w_b, b<=10",
        pass: d <= 1e-9,
        detail: format!("max deviation {d:.1e}"),
    }
}

fn kmer_formula() -> CheckResult {
    let d = max_dev((2..=8).flat_map(|k| {
        (0..=50).map(move |i| {
            let rho = i as f64 / 50.0;
            match (kmer_complexity(k, rho), kmer_complexity_direct(k, rho)) {
                (Ok(a), Ok(b)) => (a - b).abs(),
                _ => f64::INFINITY,
            }
        })
    }));
    CheckResult {
        name: "k-mer reparameterisation vs direct formula",
        pass: d <= 1e-12,
        detail: format!("max deviation {d:.1e}"),
    }
}

fn quadrature() -> CheckResult {
    let exact = (1.0 - (-2.0f64).exp()) / 2.0;
    let q = jamming_limit_quadrature(p(1), 1e-12).map(|r| r.value);
    let k = kmer_jamming_limit(5, 1e-10);
    let pass = q.is_ok_and(|v| (v - exact).abs() < 1e-9) && k.is_ok();
    CheckResult {
        name: "jamming-limit quadrature routes",
        pass,
        detail: format!("rho_inf(1) = {q:?}"),
    }
}

pub fn run_self_check() -> Vec<CheckResult> {
    vec![
        closed_forms(),
        oracle_counts(),
        recurrence_route(),
        growth_identity(),
        kmer_formula(),
        quadrature(),
    ]
}
