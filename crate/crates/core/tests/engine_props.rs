mod common;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerosum_core::lab::sample_sequence;
use zerosum_core::*;

fn check_certificate(g: &GroupSpec, s: &ZSequence, h: &SubgroupVertex, cert: &ZeroSumCertificate) {
    let chosen = s.select(&cert.indices);
    assert!(!cert.indices.is_empty());
    assert!(cert.indices.windows(2).all(|w| w[0] < w[1]));
    assert!(is_h_sum(g, &chosen, h).unwrap());
    let cross: Ratio<u128> = cert
        .indices
        .iter()
        .map(|&i| Ratio::new(1, common::order_by_addition(g, &s.elements()[i]) as u128))
        .sum();
    assert_eq!(cert.cross.as_ratio(), cross);
    assert_eq!(cert.tree.leaves(), cert.indices);
    // Each merge consumes at least two pebbles, so merges stay below |S|.
    assert!(cert.tree.merges() <= s.len());
}

#[test]
fn cyclic_completeness_trivial_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=12u64 {
        let g = GroupSpec::cyclic(n).unwrap();
        let trivial = g.trivial_subgroup();
        for _ in 0..300 {
            let s = sample_sequence(&g, n as usize, &mut rng);
            let out = extract(&g, &s, &trivial, ExtractOptions::default()).unwrap();
            let cert = out
                .certificate()
                .unwrap_or_else(|| panic!("Z{n} {s:?}: {out:?}"));
            check_certificate(&g, &s, &trivial, cert);
            assert!(out.is_verified(), "Z{n} {s:?}: {out:?}");
            assert!(verify_certificate(&g, &s, cert).is_ok());
        }
    }
}

#[test]
fn outcomes_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let specs = ["Z12", "Z45", "Z8", "Z30", "2*2", "3*3", "2^2*2", "Z63"];
    for _ in 0..2000 {
        let g = parse_group_spec(specs[rng.gen_range(0..specs.len())]).unwrap();
        let subs = g.coordinate_subgroups();
        let h = subs[rng.gen_range(0..subs.len())].clone();
        let t = rng.gen_range(0..=14);
        let s = sample_sequence(&g, t, &mut rng);
        let out = extract(&g, &s, &h, ExtractOptions::default()).unwrap();
        if let Some(cert) = out.certificate() {
            check_certificate(&g, &s, &h, cert);
            let witness = min_cross_zero_sum(&g, &s, &h, OracleLimits::default())
                .unwrap()
                .expect("an H-sum exists");
            assert!(witness.cross <= cert.cross);
        }
        if out.is_verified() {
            assert!(has_small_h_sum(&g, &s, &h).unwrap());
        }
        if let ExtractOutcome::CrossExceeded { certificate, .. } = &out {
            assert!(verify_certificate(&g, &s, certificate).is_err());
        }
    }
}

#[test]
fn certificates_survive_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let g = parse_group_spec("3*3*5").unwrap();
    let mut seen = 0;
    for _ in 0..200 {
        let s = sample_sequence(&g, 45, &mut rng);
        if let ExtractOutcome::Verified(cert) =
            extract(&g, &s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap()
        {
            let back = ZeroSumCertificate::from_json(&cert.to_json()).unwrap();
            assert_eq!(back, cert);
            assert!(verify_certificate(&g, &s, &back).is_ok());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn tampered_certificates_are_rejected() {
    let g = GroupSpec::cyclic(45).unwrap();
    let s = ZSequence::from_integers(&g, &[32, -11, 31, 51, 42, -24, 48, 75, -15]).unwrap();
    let ExtractOutcome::Verified(cert) =
        extract(&g, &s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap()
    else {
        panic!("worked example must verify");
    };
    let mut bad = cert.clone();
    bad.indices.pop();
    assert!(verify_certificate(&g, &s, &bad).is_err());
    let mut bad = cert.clone();
    bad.cross = CrossValue::new(1, 1000);
    assert!(matches!(
        verify_certificate(&g, &s, &bad),
        Err(Diagnosis::ClaimedCross { .. })
    ));
    let other = GroupSpec::cyclic(9).unwrap();
    assert!(verify_certificate(&other, &s, &cert).is_err());
}
