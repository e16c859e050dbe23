//! Generative checks of the physical invariants, 1000+ cases each.

use cryolink_core::noise::{
    closed_form_terms, propagate_occupation, propagate_psd, qubit_noise_full, qubit_signal_power, CryoAmplifier,
    NoiseState, PhotonicFrontEnd, StageAttenuator,
};
use cryolink_core::optimizer::{min_photocurrent, noise_vs_photocurrent_sweep, NoiseTarget};
use cryolink_core::physics::{
    bose_einstein_occupation, current_psd_to_occupation, occupation_to_current_psd, CurrentPsd, BOLTZMANN,
    REDUCED_PLANCK,
};
use cryolink_core::{AttenuationFactor, Frequency, PowerLevel};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn freq() -> impl Strategy<Value = Frequency> {
    (1.0f64..12.0).prop_map(|g| Frequency::from_ghz(g).unwrap())
}

fn kelvin() -> impl Strategy<Value = f64> {
    (-2.5f64..2.5).prop_map(|e| 10f64.powf(e))
}

fn db() -> impl Strategy<Value = f64> {
    0.0f64..40.0
}

fn att(db: f64, t: f64) -> StageAttenuator {
    StageAttenuator::new("s", AttenuationFactor::from_db(db).unwrap(), t)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn thermal_fixed_point(t in kelvin(), a in db(), f in freq()) {
        let n = bose_einstein_occupation(t, f).unwrap();
        let out = propagate_occupation(n, &att(a, t), f).unwrap();
        prop_assert!(rel(out, n) < 1e-12, "{out} vs {n}");
    }

    #[test]
    fn same_temperature_attenuators_compose(n in 0.0f64..2000.0, a1 in db(), a2 in db(), t in kelvin(), f in freq()) {
        let two = propagate_occupation(propagate_occupation(n, &att(a1, t), f).unwrap(), &att(a2, t), f).unwrap();
        let combined = AttenuationFactor::from_db(a1).unwrap() * AttenuationFactor::from_db(a2).unwrap();
        let one = propagate_occupation(n, &StageAttenuator::new("s", combined, t), f).unwrap();
        prop_assert!((two - one).abs() <= 1e-12 * one.max(1e-300), "{two} vs {one}");
    }

    #[test]
    fn psd_and_occupation_paths_agree(n in 0.0f64..2000.0, a in db(), t in kelvin(), f in freq(), z in 10.0f64..200.0) {
        let psd_in = occupation_to_current_psd(n, f, z).unwrap().to(cryolink_core::Sidedness::OneSided);
        let mut at = att(a, t);
        at.impedance = z;
        let state = NoiseState::new(f, psd_in.value, z).unwrap();
        let via_psd = propagate_psd(state, &at).unwrap().current_psd;
        let via_occ = propagate_occupation(n, &at, f).unwrap();
        let back = current_psd_to_occupation(CurrentPsd::one_sided(via_psd), f, z).unwrap();
        prop_assert!(rel(back, via_occ) < 1e-9, "{back} vs {via_occ}");
    }

    #[test]
    fn classical_limit(t in 10.0f64..1000.0, f in (0.1f64..2.0).prop_map(|g| Frequency::from_ghz(g).unwrap())) {
        // kT/ħω ≥ 100 here, so the series correction ½ is what separates the two.
        let n = bose_einstein_occupation(t, f).unwrap();
        let classical = BOLTZMANN * t / (REDUCED_PLANCK * f.angular());
        prop_assert!(((n + 0.5) / classical - 1.0).abs() < 1e-3);
    }

    #[test]
    fn quantum_limit(t in 0.001f64..0.02, f in (5.0f64..12.0).prop_map(|g| Frequency::from_ghz(g).unwrap())) {
        let x = REDUCED_PLANCK * f.angular() / (BOLTZMANN * t);
        let n = bose_einstein_occupation(t, f).unwrap();
        prop_assert!(rel(n, (-x).exp()) < 1e-3);
    }

    #[test]
    fn occupation_increases_with_temperature(t in kelvin(), k in 1.001f64..10.0, f in freq()) {
        let lo = bose_einstein_occupation(t, f).unwrap();
        let hi = bose_einstein_occupation(t * k, f).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn recursion_matches_dominant_4k_approximation(
        i in 1e-6f64..50e-6,
        nf in 0.0f64..10.0,
        depth in 0.0f64..1.0,
        split in 0.0f64..1.0,
    ) {
        let front = PhotonicFrontEnd::default().with_photocurrent(i);
        let amp = CryoAmplifier::none().with_noise_figure(nf);
        let f = front.carrier;
        let z = 50.0;
        let s4k = qubit_noise_full(&front, &amp, &[], z).unwrap();
        let n_4k = current_psd_to_occupation(CurrentPsd::one_sided(s4k.current_psd), f, z).unwrap();
        let n_floor = bose_einstein_occupation(0.082, f).unwrap().max(bose_einstein_occupation(0.006, f).unwrap());
        // Largest total attenuation that keeps both stage floors under 1% of the signal.
        let max_db = 10.0 * (n_4k / (100.0 * n_floor)).log10();
        prop_assume!(max_db > 0.0);
        let total_db = depth * max_db;
        let cp = att(split * total_db, 0.082);
        let mxc = att((1.0 - split) * total_db, 0.006);
        let total = cp.attenuation.linear() * mxc.attenuation.linear();
        let full = qubit_noise_full(&front, &amp, &[cp.clone(), mxc.clone()], z).unwrap().current_psd;
        let approx = s4k.current_psd / total;
        prop_assert!(rel(full, approx) < 0.05, "{full} vs {approx}");
        // The closed form at the matching qubit power must agree as well.
        let pq = qubit_signal_power(&front, &amp, &[cp, mxc], z).unwrap();
        let closed = closed_form_terms(&front, &amp, pq, z).unwrap().total();
        prop_assert!(rel(full, closed) < 0.05, "{full} vs {closed}");
    }

    #[test]
    fn sweep_curves_fall_with_current_and_rise_with_nf(
        nf_lo in 0.0f64..5.0,
        dnf in 0.1f64..5.0,
        pq_dbm in -90.0f64..-50.0,
        lo_exp in -8.0f64..-6.5,
        span in 0.5f64..3.0,
    ) {
        let pq = PowerLevel::from_dbm(pq_dbm).unwrap();
        let lo = 10f64.powf(lo_exp);
        let hi = lo * 10f64.powf(span);
        let pts = noise_vs_photocurrent_sweep(
            &PhotonicFrontEnd::default(), &CryoAmplifier::none(), &[nf_lo, nf_lo + dnf], pq, (lo, hi), 12, 50.0,
        ).unwrap();
        let (a, b) = pts.split_at(12);
        for w in a.windows(2).chain(b.windows(2)) {
            prop_assert!(w[1].noise_asd <= w[0].noise_asd);
        }
        for (x, y) in a.iter().zip(b) {
            prop_assert!(y.noise_asd >= x.noise_asd);
        }
    }

    #[test]
    fn tighter_target_needs_more_current(
        asd_pa in 0.3f64..5.0,
        shrink in 0.5f64..0.99,
        nf in 0.0f64..3.0,
        pq_dbm in -80.0f64..-60.0,
    ) {
        let pq = PowerLevel::from_dbm(pq_dbm).unwrap();
        let amp = CryoAmplifier::none().with_noise_figure(nf);
        let front = PhotonicFrontEnd::default();
        let loose = min_photocurrent(&front, &amp, &NoiseTarget::current_asd(asd_pa * 1e-12), pq, 50.0);
        let tight = min_photocurrent(&front, &amp, &NoiseTarget::current_asd(asd_pa * shrink * 1e-12), pq, 50.0);
        match (loose, tight) {
            (Ok(l), Ok(t)) => prop_assert!(t.photocurrent >= l.photocurrent * (1.0 - 1e-4)),
            (Ok(_), Err(_)) | (Err(_), Err(_)) => {}
            (Err(e), Ok(_)) => prop_assert!(false, "looser target infeasible: {e}"),
        }
    }
}
