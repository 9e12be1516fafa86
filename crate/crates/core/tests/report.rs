use nonspin_core::scenarios::{Check, Status, VerificationReport};
use proptest::prelude::*;

fn checks() -> impl Strategy<Value = Vec<Check>> {
    prop::collection::vec(("[a-z]{1,8}\\.[a-z_]{1,8}", any::<bool>(), ".{0,30}").prop_map(|(id, p, w)| Check::new(id, p, w)), 0..12)
}

proptest! {
    #[test]
    fn overall_status_is_conjunction(cs in checks(), ms in 0u64..1000) {
        let mut r = VerificationReport::new("x", 1, 2);
        let expect = cs.iter().all(|c| c.passed);
        r.push(cs.clone(), ms);
        prop_assert_eq!(r.passed(), expect);
        prop_assert_eq!(r.checks.len(), cs.len());
        prop_assert!(r.checks.iter().all(|c| c.ms == ms));
    }

    #[test]
    fn skipped_checks_do_not_fail(cs in checks()) {
        let mut r = VerificationReport::new("x", 1, 2);
        r.push(cs, 0);
        for c in &mut r.checks {
            if c.status == Status::Fail {
                c.status = Status::Skip;
            }
        }
        prop_assert!(r.passed());
    }

    #[test]
    fn json_is_valid_and_stable(cs in checks(), seed in any::<u64>()) {
        let mut r = VerificationReport::new("suite", seed, 10);
        r.push(cs, 0);
        let a = r.to_json();
        prop_assert_eq!(&a, &r.clone().to_json());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        prop_assert_eq!(v["seed"].as_u64(), Some(seed));
        prop_assert_eq!(v["checks"].as_array().unwrap().len(), r.checks.len());
    }

    #[test]
    fn markdown_has_one_row_per_check(cs in checks()) {
        let mut r = VerificationReport::new("suite", 0, 0);
        r.push(cs, 0);
        let md = r.to_markdown();
        let rows = md.lines().filter(|l| l.starts_with("| pass") || l.starts_with("| FAIL")).count();
        prop_assert_eq!(rows, r.checks.len());
    }
}
