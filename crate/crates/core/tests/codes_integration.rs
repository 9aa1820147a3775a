use twsec::channel::{build_library_channel, DiscreteTwc, LibraryKind, Mod2Params};
use twsec::codes::{
    build_system, build_system_with, evaluate_ensemble, exact_evaluation, simulate_trials, BuildOptions, CodeRates,
    Decoder, EvalMethod, LeakageReport, RateQuad, User,
};
use twsec::info::Pmf;
use twsec::region::PrefixedInputs;

fn uniform() -> PrefixedInputs {
    let h = Pmf::uniform(vec![2]).unwrap();
    PrefixedInputs::identity(h.clone(), h)
}

fn mod2(e1: f64, e2: f64, ez: f64) -> DiscreteTwc {
    build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(e1, e2, ez).unwrap())).unwrap()
}

fn rates(n: usize, r1s: f64, r1r: f64, r2s: f64, r2r: f64) -> CodeRates {
    CodeRates::quantized(n, RateQuad { r1s, r1r, r2s, r2r }).unwrap()
}

#[test]
fn same_seed_same_codebooks_and_report() {
    let ch = mod2(0.1, 0.1, 0.25);
    let a = build_system(&ch, &uniform(), rates(4, 0.5, 0.25, 0.25, 0.25), 42).unwrap();
    let b = build_system(&ch, &uniform(), rates(4, 0.5, 0.25, 0.25, 0.25), 42).unwrap();
    assert_eq!(a.codebook(User::One), b.codebook(User::One));
    assert_eq!(a.codebook(User::Two), b.codebook(User::Two));
    assert_eq!(exact_evaluation(&a).unwrap(), exact_evaluation(&b).unwrap());
    let c = build_system(&ch, &uniform(), rates(4, 0.5, 0.25, 0.25, 0.25), 43).unwrap();
    assert_ne!(a.codebook(User::One), c.codebook(User::One));
}

#[test]
fn exact_values_are_probabilities_and_bounded_leakage() {
    let ch = mod2(0.05, 0.15, 0.3);
    for seed in 0..4 {
        let r = rates(4, 0.5, 0.25, 0.25, 0.5);
        let s = build_system(&ch, &uniform(), r.clone(), seed).unwrap();
        let rep = exact_evaluation(&s).unwrap();
        let q = r.quantized_rates();
        assert!((0.0..=1.0).contains(&rep.pe1) && (0.0..=1.0).contains(&rep.pe2));
        assert!(rep.leak1 >= 0.0 && rep.leak1 <= q.r1s + 1e-12);
        assert!(rep.leak2 >= 0.0 && rep.leak2 <= q.r2s + 1e-12);
    }
}

#[test]
fn monte_carlo_tracks_exact_error() {
    let ch = mod2(0.1, 0.05, 0.3);
    let s = build_system(&ch, &uniform(), rates(4, 0.5, 0.0, 0.5, 0.25), 5).unwrap();
    let ex = exact_evaluation(&s).unwrap();
    let trials = 20_000u64;
    let mc = simulate_trials(&s, trials, 9).unwrap();
    for (m, e) in [(mc.pe1, ex.pe1), (mc.pe2, ex.pe2)] {
        let sd = (e * (1.0 - e) / trials as f64).sqrt();
        assert!((m - e).abs() <= 4.0 * sd + 1e-12, "mc {m} exact {e}");
    }
}

#[test]
fn ensemble_is_deterministic_and_serializes() {
    let ch = mod2(0.1, 0.1, 0.2);
    let r = rates(3, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    let opts = BuildOptions { decoder: Decoder::JointTypicality { eps: 1.0 }, ..BuildOptions::default() };
    let a = evaluate_ensemble(&ch, &uniform(), &r, 1, 3, &opts, EvalMethod::Exact).unwrap();
    let b = evaluate_ensemble(&ch, &uniform(), &r, 1, 3, &opts, EvalMethod::Exact).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.codebooks, Some(3));
    let text = serde_json::to_string(&a).unwrap();
    let back: LeakageReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, a);
}

#[test]
fn budget_is_enforced() {
    let ch = mod2(0.1, 0.1, 0.2);
    let opts = BuildOptions { budget: 200, ..BuildOptions::default() };
    let s = build_system_with(&ch, &uniform(), rates(4, 0.5, 0.5, 0.5, 0.5), 0, &opts).unwrap();
    assert!(matches!(exact_evaluation(&s), Err(twsec::error::Error::Capacity { .. })));
}
