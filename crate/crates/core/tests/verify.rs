//! Range verification, fault injection and partition independence.

use qprime::oracle::{verify, verify_range, verify_with, VerifyOptions};
use qprime::pipeline::{is_prime, PrimalityKind, PrimalityVerdict, SearchStrategy, Stage};
use qprime::qgrid;

fn verdict(n: u64, kind: PrimalityKind) -> PrimalityVerdict {
    PrimalityVerdict {
        n,
        kind,
        witness: None,
        stage: Stage::GridSearch,
        strategy: SearchStrategy::AscendingScan,
    }
}

#[test]
fn clean_at_ten_thousand() {
    for s in [SearchStrategy::AscendingScan, SearchStrategy::BalancedFirst] {
        let r = verify_range(10_000, s).unwrap();
        assert!(r.is_clean(), "{:?}", r.mismatches);
        assert_eq!(r.primality_checked, 9_999);
        assert!(r.factorizations_checked > 0);
    }
}

#[test]
fn dense_factorization_pass() {
    let r = verify(VerifyOptions {
        limit: 50_000,
        strategy: SearchStrategy::BalancedFirst,
        factor_stride: 1,
    })
    .unwrap();
    assert!(r.is_clean());
    assert_eq!(r.factorizations_checked, 49_999);
}

// Without the prime-modulus gate, "absent from the grid" is taken as prime
// for numbers the grid was never meant to hold.
#[test]
fn skipping_the_modulus_gate_is_caught() {
    let opts = VerifyOptions::new(1_000, SearchStrategy::AscendingScan);
    let r = verify_with(opts, |n| {
        let kind = match qgrid::contains(n) {
            Ok(Some(_)) => PrimalityKind::Composite,
            Ok(None) | Err(_) => PrimalityKind::Prime,
        };
        Ok(verdict(n, kind))
    })
    .unwrap();
    assert!(!r.is_clean());
    let bad: Vec<u64> = r.mismatches.iter().map(|m| m.n).collect();
    assert!(bad.contains(&4) && bad.contains(&9) && bad.contains(&15));
    assert!(!bad.contains(&2) && !bad.contains(&91));
}

#[test]
fn skipping_the_grid_search_is_caught() {
    let opts = VerifyOptions::new(1_000, SearchStrategy::AscendingScan);
    let r = verify_with(opts, |n| {
        let v = is_prime(n, SearchStrategy::AscendingScan)?;
        Ok(if v.stage == Stage::GridSearch {
            verdict(n, PrimalityKind::Prime)
        } else {
            v
        })
    })
    .unwrap();
    let bad: Vec<u64> = r.mismatches.iter().map(|m| m.n).collect();
    assert_eq!(&bad[..3], &[49, 77, 91]);
}

#[test]
fn classifier_errors_count_as_mismatches() {
    let opts = VerifyOptions::new(100, SearchStrategy::AscendingScan);
    let r = verify_with(opts, |n| {
        if n == 97 {
            Err(qprime::Error::Internal("boom".into()))
        } else {
            is_prime(n, SearchStrategy::AscendingScan)
        }
    })
    .unwrap();
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].n, 97);
    assert!(r.mismatches[0].pipeline.contains("boom"));
}

#[test]
fn result_does_not_depend_on_partitioning() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let opts = VerifyOptions::new(20_000, SearchStrategy::BalancedFirst);
                // A deliberately faulty classifier so the report is non-trivial.
                verify_with(opts, |n| {
                    let mut v = is_prime(n, SearchStrategy::BalancedFirst)?;
                    if n % 1_000 == 1 {
                        v.kind = PrimalityKind::Prime;
                    }
                    Ok(v)
                })
                .unwrap()
            })
    };
    let one = run(1);
    assert!(!one.is_clean());
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
    let ns: Vec<u64> = one.mismatches.iter().map(|m| m.n).collect();
    let mut sorted = ns.clone();
    sorted.sort();
    assert_eq!(ns, sorted);
}

#[test]
fn report_json_shape() {
    let r = verify_range(200, SearchStrategy::BalancedFirst).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["limit"], 200);
    assert_eq!(v["strategy"], "balanced");
    assert_eq!(v["mismatches"], serde_json::json!([]));
}

#[test]
fn verify_caps() {
    let too_big = qprime::oracle::VERIFY_CAP + 1;
    assert!(matches!(
        verify_range(too_big, SearchStrategy::AscendingScan),
        Err(qprime::Error::Resource { .. })
    ));
}
