use proptest::prelude::*;
use rand::Rng;
use scos::channel::{frame_rng, snr_to_sigma, transmit};
use scos::code::{
    pac_precoder, polar_info_set, rm_info_set, sample_drm_polar, CodeSpec, Crc,
    ReliabilityProfile,
};
use scos::decoders::{
    scf_decode, scl_decode, sc_fano_decode, DecoderKind, FanoParams, FlipMetricParams,
};
use scos::oracle::{leaf_metric, ml_decode_bruteforce};
use scos::polar::{encode_input, polar_transform, transmitted_word};
use scos::sc::{estimate_first_error_probs, MetricMode};
use scos::scos::ScosParams;
use scos::Error;

const BETA: f64 = 1.189_207_115_002_721;

fn frame(spec: &CodeSpec, snr: f64, seed: u64, f: u64) -> (Vec<u8>, Vec<f64>) {
    let sigma = snr_to_sigma(snr, spec.rate()).unwrap();
    let mut rng = frame_rng(seed, 0, f);
    let payload: Vec<u8> = (0..spec.payload_len()).map(|_| rng.random_range(0..2)).collect();
    let u = encode_input(spec, &payload).unwrap();
    let llr = transmit(&transmitted_word(&u).unwrap(), sigma, &mut rng);
    (u, llr)
}

fn all_decoders(budget: u64) -> Vec<DecoderKind> {
    vec![
        DecoderKind::Sc,
        DecoderKind::Scl { list_size: 4 },
        DecoderKind::Scf(FlipMetricParams::default()),
        DecoderKind::Dscf(FlipMetricParams::default()),
        DecoderKind::ScFano(FanoParams {
            delta: 1.0,
            max_visits: Some(budget),
        }),
        DecoderKind::Scos(ScosParams::bounded(budget)),
    ]
}

#[test]
fn outputs_are_valid_and_within_budget() {
    let spec = sample_drm_polar(6, 36, BETA, 3)
        .unwrap()
        .with_crc(Some(Crc::parse("100000111").unwrap()))
        .unwrap();
    let sigma = snr_to_sigma(2.0, spec.rate()).unwrap();
    let prof = estimate_first_error_probs(&spec, sigma, 5000, 1, MetricMode::Exact);
    let budget = 8 * spec.len() as u64;
    for f in 0..200 {
        let (_, llr) = frame(&spec, 2.0, 5, f);
        for dec in all_decoders(budget) {
            let out = dec.decode(&spec, &llr, &prof, MetricMode::Exact).unwrap();
            assert!(spec.satisfies_constraints(&out.u), "{dec}");
            assert_eq!(out.codeword, polar_transform(&out.u).unwrap());
            let m = leaf_metric(&out.u, &llr, MetricMode::Exact).unwrap();
            assert!((m - out.metric).abs() < 1e-9, "{dec}");
            if let Some(cap) = dec.max_visits() {
                assert!(out.visits <= cap, "{dec}: {} > {cap}", out.visits);
            }
            assert!(out.visits >= spec.len() as u64);
        }
    }
}

#[test]
fn full_list_is_maximum_likelihood() {
    for seed in 1..=3 {
        let spec = sample_drm_polar(4, 6, BETA, seed).unwrap();
        for f in 0..200 {
            let (_, llr) = frame(&spec, 1.0, seed, f);
            for mode in [MetricMode::Exact, MetricMode::Hardened] {
                let scl = scl_decode(&spec, &llr, 64, mode).unwrap();
                let ml = ml_decode_bruteforce(&spec, &llr, mode).unwrap();
                assert!((scl.metric - ml.metric).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn toy_list_decision() {
    let spec = CodeSpec::with_static_frozen(2, vec![2, 4]).unwrap();
    let out = scl_decode(&spec, &[-1.2, 3.4, -2.2, 0.9], 4, MetricMode::Hardened).unwrap();
    assert_eq!(out.u, vec![0, 1, 0, 1]);
    assert!((out.metric - 2.1).abs() < 1e-9);
}

#[test]
fn scf_without_retrials_when_crc_passes() {
    let spec = polar_info_set(6, 40, BETA)
        .and_then(|a| CodeSpec::with_static_frozen(6, a))
        .unwrap()
        .with_crc(Some(Crc::parse("1011").unwrap()))
        .unwrap();
    let u = encode_input(&spec, &[1; 37]).unwrap();
    let llr: Vec<f64> = transmitted_word(&u)
        .unwrap()
        .iter()
        .map(|&b| if b == 0 { 20.0 } else { -20.0 })
        .collect();
    let out = scf_decode(&spec, &llr, &FlipMetricParams::default(), MetricMode::Exact).unwrap();
    assert_eq!(out.u, u);
    assert_eq!(out.crc_ok, Some(true));
    assert_eq!(out.visits, 64);
}

#[test]
fn flip_decoders_require_crc() {
    let spec = sample_drm_polar(4, 8, BETA, 1).unwrap();
    let llr = vec![1.0; 16];
    let p = FlipMetricParams::default();
    assert!(matches!(scf_decode(&spec, &llr, &p, MetricMode::Exact), Err(Error::MissingCrc)));
    assert!(matches!(DecoderKind::Dscf(p).validate(&spec), Err(Error::MissingCrc)));
}

#[test]
fn parameter_errors() {
    let spec = sample_drm_polar(4, 8, BETA, 1).unwrap();
    assert!(DecoderKind::Scl { list_size: 0 }.validate(&spec).is_err());
    assert!(DecoderKind::Scos(ScosParams::bounded(15)).validate(&spec).is_err());
    assert!(DecoderKind::Scos(ScosParams::unbounded().with_list_cap(0)).validate(&spec).is_err());
    let bad = FanoParams {
        delta: 0.0,
        max_visits: None,
    };
    assert!(sc_fano_decode(&spec, &[0.0; 16], &bad, &ReliabilityProfile::zeros(16), MetricMode::Exact).is_err());
    let big = CodeSpec::with_static_frozen(5, (1..=32).collect()).unwrap();
    assert!(matches!(DecoderKind::Ml.validate(&big), Err(Error::TooManyMessages(32))));
    assert!(matches!(
        DecoderKind::Sc.decode(&spec, &[0.0; 8], &ReliabilityProfile::zeros(16), MetricMode::Exact),
        Err(Error::LengthMismatch { expected: 16, actual: 8 })
    ));
}

#[test]
fn decoder_names_round_trip() {
    for name in ["sc", "scl", "scf", "dscf", "scfano", "scos", "ml"] {
        assert_eq!(name.parse::<DecoderKind>().unwrap().to_string(), name);
    }
    assert!("sco".parse::<DecoderKind>().is_err());
}

#[test]
fn pac_decoding_of_noiseless_frames() {
    let spec = pac_precoder(5, rm_info_set(5, 2).unwrap(), &[0, 1, 1, 0, 1, 1]).unwrap();
    let prof = ReliabilityProfile::zeros(32);
    let u = encode_input(&spec, &[1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]).unwrap();
    let llr: Vec<f64> = transmitted_word(&u)
        .unwrap()
        .iter()
        .map(|&b| if b == 0 { 30.0 } else { -30.0 })
        .collect();
    for dec in [
        DecoderKind::Sc,
        DecoderKind::Scl { list_size: 8 },
        DecoderKind::ScFano(FanoParams::default()),
        DecoderKind::Scos(ScosParams::unbounded()),
    ] {
        let out = dec.decode(&spec, &llr, &prof, MetricMode::Hardened).unwrap();
        assert_eq!(out.u, u, "{dec}");
        if !matches!(dec, DecoderKind::Scl { .. }) {
            assert_eq!(out.visits, 32, "{dec}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unbounded_scos_matches_bruteforce(seed in 1u64..1000, f in 0u64..1000, snr in -1.0f64..5.0) {
        let spec = sample_drm_polar(4, 8, BETA, seed).unwrap();
        let (_, llr) = frame(&spec, snr, seed, f);
        for mode in [MetricMode::Exact, MetricMode::Hardened] {
            let prof = ReliabilityProfile::zeros(16);
            let out = DecoderKind::Scos(ScosParams::unbounded()).decode(&spec, &llr, &prof, mode).unwrap();
            let ml = ml_decode_bruteforce(&spec, &llr, mode).unwrap();
            prop_assert!(out.ml_certified);
            prop_assert!((out.metric - ml.metric).abs() < 1e-9);
        }
    }

    #[test]
    fn scos_never_loses_to_sc(seed in 1u64..1000, f in 0u64..1000, budget in 64u64..2000) {
        let spec = sample_drm_polar(6, 32, BETA, seed).unwrap();
        let (_, llr) = frame(&spec, 1.5, seed, f);
        let prof = ReliabilityProfile::zeros(64);
        let sc = DecoderKind::Sc.decode(&spec, &llr, &prof, MetricMode::Exact).unwrap();
        let out = DecoderKind::Scos(ScosParams::bounded(budget)).decode(&spec, &llr, &prof, MetricMode::Exact).unwrap();
        prop_assert!(out.metric <= sc.metric + 1e-12);
        prop_assert!(out.visits <= budget);
    }
}
