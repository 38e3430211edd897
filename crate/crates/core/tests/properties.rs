use gaussmix::checks::closed_form_output;
use gaussmix::measures::{
    gaussian_discord, mutual_information, nonclassical_depth, nonclassical_depth_from_squeezing,
    Direction,
};
use gaussmix::sampling::MixingSample;
use gaussmix::thresholds::{effective_nc_closed_form, p_threshold_nt, sep_threshold_ns};
use gaussmix::{cm_thermal, mix, ppt_eigenvalue, BeamSplitter, SingleModeState};
use proptest::prelude::*;

fn photons(max: f64) -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        0.0..max,
        (-3.0..max.log10()).prop_map(|e| 10f64.powf(e))
    ]
}

fn moderate() -> impl Strategy<Value = MixingSample> {
    (photons(10.0), photons(10.0), photons(10.0), 0.0..=1.0)
        .prop_map(|(n_s, n_t, n2, tau)| MixingSample { n_s, n_t, n2, tau })
}

fn wide() -> impl Strategy<Value = MixingSample> {
    (photons(100.0), photons(100.0), photons(100.0), 0.0..=1.0)
        .prop_map(|(n_s, n_t, n2, tau)| MixingSample { n_s, n_t, n2, tau })
}

fn output(s: &MixingSample) -> gaussmix::CovMat4 {
    mix(
        &SingleModeState::new(s.n_s, s.n_t).unwrap(),
        s.n2,
        &BeamSplitter::new(s.tau).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn congruence_matches_entrywise_form(s in moderate()) {
        let diff = (output(&s).matrix() - closed_form_output(&s)).abs().max();
        prop_assert!(diff <= 1e-12, "{diff:e}");
    }

    #[test]
    fn congruence_matches_entrywise_form_relative(s in wide()) {
        let m = *output(&s).matrix();
        let diff = (m - closed_form_output(&s)).abs().max() / m.abs().max();
        prop_assert!(diff <= 1e-12, "{diff:e}");
    }

    #[test]
    fn symplectic_spectrum_is_preserved(s in wide()) {
        let (lp, lm) = output(&s).invariants().symplectic_eigenvalues().unwrap();
        let (a, b) = (0.5 + s.n_t, 0.5 + s.n2);
        prop_assert!((lp - a.max(b)).abs() <= 1e-10, "{lp} vs {}", a.max(b));
        prop_assert!((lm - a.min(b)).abs() <= 1e-10, "{lm} vs {}", a.min(b));
    }

    #[test]
    fn trace_is_conserved(s in moderate()) {
        let st = SingleModeState::new(s.n_s, s.n_t).unwrap();
        let input = st.covariance().trace() + cm_thermal(s.n2).unwrap().trace();
        prop_assert!((output(&s).trace() - input).abs() <= 1e-12);
    }

    #[test]
    fn trace_is_conserved_relative(s in wide()) {
        let st = SingleModeState::new(s.n_s, s.n_t).unwrap();
        let input = st.covariance().trace() + cm_thermal(s.n2).unwrap().trace();
        prop_assert!((output(&s).trace() - input).abs() <= 1e-12 * input);
    }

    #[test]
    fn transmissivity_exchange_swaps_modes(s in wide()) {
        let a = output(&s).invariants();
        let b = output(&MixingSample { tau: 1.0 - s.tau, ..s }).invariants();
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
        prop_assert!(rel(a.i1, b.i2) <= 1e-12);
        prop_assert!(rel(a.i2, b.i1) <= 1e-12);
        prop_assert!(rel(a.i3, b.i3) <= 1e-12);
        // det Σ of an ill-conditioned matrix carries ~cond·ε relative error
        prop_assert!(rel(a.i4, b.i4) <= 1e-10);
    }

    #[test]
    fn purity_identity(n_s in photons(100.0), n_t in photons(100.0)) {
        let st = SingleModeState::new(n_s, n_t).unwrap();
        let mu = 1.0 / (2.0 * st.covariance().det().sqrt());
        prop_assert!((mu - st.purity()).abs() <= 1e-12);
        prop_assert!((mu - 1.0 / (1.0 + 2.0 * n_t)).abs() <= 1e-12);
    }

    #[test]
    fn vacuum_reference_invariants(n_s in photons(10.0), n_t in photons(10.0), tau in 0.0..=1.0f64) {
        let st = SingleModeState::new(n_s, n_t).unwrap();
        let inv = mix(&st, 0.0, &BeamSplitter::new(tau).unwrap()).unwrap().invariants();
        let n1 = st.total_photons();
        let g = n_t * (1.0 + n_t);
        let i1 = 0.25 + n1 * tau * (1.0 - tau) + g * tau * tau;
        let i2 = 0.25 + n1 * tau * (1.0 - tau) + g * (1.0 - tau) * (1.0 - tau);
        let i3 = -(n1 - g) * tau * (1.0 - tau);
        let i4 = (1.0 + 2.0 * n_t).powi(2) / 16.0;
        let tol = 1e-12 * i1.max(i2).max(1.0);
        prop_assert!((inv.i1 - i1).abs() <= tol, "{} {}", inv.i1, i1);
        prop_assert!((inv.i2 - i2).abs() <= tol);
        prop_assert!((inv.i3 - i3).abs() <= tol);
        prop_assert!((inv.i4 - i4).abs() <= 1e-12 * i4.max(1.0));
    }

    #[test]
    fn thermal_reference_invariants(s in moderate()) {
        let (ns, nt, n2, t) = (s.n_s, s.n_t, s.n2, s.tau);
        let inv = output(&s).invariants();
        let n1 = nt + ns * (1.0 + 2.0 * nt);
        let u = 1.0 - t;
        let i1 = 0.25 + n2 * n2 * u * u + t * (nt + ns * (1.0 + 2.0 * nt) * u + t * nt * nt)
            + n2 * u * (1.0 + 2.0 * n1 * t);
        let i2 = 0.25 + nt * nt * u * u + t * (n2 + ns * (1.0 + 2.0 * n2) * u + t * n2 * n2)
            + nt * u * (1.0 + 2.0 * (ns + n2 + 2.0 * ns * n2) * t);
        let i3 = (n2 * n2 + nt * nt - ns * (1.0 + 2.0 * nt) - 2.0 * n1 * n2) * u * t;
        let i4 = (1.0 + 2.0 * nt).powi(2) * (1.0 + 2.0 * n2).powi(2) / 16.0;
        let tol = 1e-12 * i1.max(i2).max(1.0);
        prop_assert!((inv.i1 - i1).abs() <= tol);
        prop_assert!((inv.i2 - i2).abs() <= tol);
        prop_assert!((inv.i3 - i3).abs() <= tol);
        prop_assert!((inv.i4 - i4).abs() <= 1e-12 * i4.max(1.0));
    }

    #[test]
    fn discord_is_bounded_by_mutual_information(s in wide()) {
        let inv = output(&s).invariants();
        let im = mutual_information(&inv).unwrap();
        for d in [Direction::OneGivenTwo, Direction::TwoGivenOne] {
            let dd = gaussian_discord(&inv, d).unwrap();
            prop_assert!(dd >= 0.0);
            prop_assert!(dd <= im + 1e-9);
        }
    }

    #[test]
    fn depth_forms_agree(n_s in photons(100.0), n_t in photons(100.0)) {
        let st = SingleModeState::new(n_s, n_t).unwrap();
        prop_assert!((nonclassical_depth(&st) - nonclassical_depth_from_squeezing(&st)).abs() <= 1e-12);
    }

    #[test]
    fn p_threshold_is_tau_independent(n_t in photons(100.0), tau in 0.01..0.99f64) {
        let ns = sep_threshold_ns(n_t, 0.0, tau).unwrap();
        prop_assert!((ns - gaussmix::p_threshold_ns(n_t)).abs() <= 1e-12 * ns.max(1.0));
        let out = mix(&SingleModeState::new(ns, n_t).unwrap(), 0.0, &BeamSplitter::new(tau).unwrap()).unwrap();
        prop_assert!((ppt_eigenvalue(&out.invariants()).unwrap() - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn p_threshold_pair_inverts(n_t in 0.0..100.0f64) {
        prop_assert!((p_threshold_nt(gaussmix::p_threshold_ns(n_t)) - n_t).abs() <= 1e-10);
    }

    #[test]
    fn effective_nc_vanishes_iff_p_classical(n_s in photons(100.0), n_t in photons(100.0)) {
        let st = SingleModeState::new(n_s, n_t).unwrap();
        let e = effective_nc_closed_form(&st);
        prop_assert!(e >= 0.0);
        if gaussmix::p_classical(&st) {
            prop_assert!(e <= 1e-12);
        } else {
            prop_assert!(e > 0.0);
        }
    }
}
