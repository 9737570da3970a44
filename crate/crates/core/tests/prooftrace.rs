use qrr_core::catalog::Status;
use qrr_core::prooftrace::{run_trace, theorems, ProofTrace};
use qrr_core::QError;

fn reading_status(t: &ProofTrace, step: usize) -> Vec<Status> {
    t.steps[step - 1].readings.iter().map(|r| r.status).collect()
}

#[test]
fn all_traces_pass_at_40() {
    for k in theorems() {
        let t = run_trace(k, 40).unwrap();
        assert!(t.passed(), "{t}");
        for s in &t.steps {
            if s.compared_as == "z-series" {
                assert_eq!(s.window_stable, Some(true), "theorem {k} step {}", s.index);
                assert!(s.z_window.is_some());
            }
        }
    }
}

#[test]
fn unknown_theorem() {
    assert!(matches!(run_trace(0, 10), Err(QError::UnknownTheorem(0))));
    assert!(matches!(run_trace(6, 10), Err(QError::UnknownTheorem(6))));
    assert!(run_trace(1, -1).is_err());
}

#[test]
fn misprinted_readings_are_reported() {
    let fail_pass = vec![Status::Fail, Status::Pass];
    let t1 = run_trace(1, 24).unwrap();
    assert_eq!(reading_status(&t1, 2), fail_pass);
    let t2 = run_trace(2, 24).unwrap();
    assert_eq!(reading_status(&t2, 2), fail_pass);
    let t3 = run_trace(3, 24).unwrap();
    for step in [1, 5, 7] {
        assert_eq!(reading_status(&t3, step), fail_pass, "theorem 3 step {step}");
    }
    let t4 = run_trace(4, 24).unwrap();
    for step in [3, 5, 6, 7] {
        assert_eq!(reading_status(&t4, step), fail_pass, "theorem 4 step {step}");
    }
    let t5 = run_trace(5, 24).unwrap();
    assert!(t5.steps.iter().all(|s| s.readings.is_empty()));
}

#[test]
fn squared_factor_reading_differs_at_q6() {
    let t = run_trace(3, 12).unwrap();
    let m = t.steps[0].readings[0].first_mismatch.as_ref().unwrap();
    assert_eq!(m.q_exp, 6);
}

#[test]
fn inner_sum_check_is_attached() {
    let t = run_trace(3, 30).unwrap();
    let s = &t.steps[8];
    assert!(s.description.contains("(-q^(2m+1);q^2)_inf"));
    assert_eq!(s.side_checks.len(), 1);
    assert_eq!(s.side_checks[0].status, Status::Pass);
}

#[test]
fn recipe_cross_checks_run() {
    for k in theorems() {
        let t = run_trace(k, 20).unwrap();
        let n = t.steps.iter().flat_map(|s| &s.side_checks).filter(|c| c.label.starts_with("direct pairing")).count();
        assert!(n >= 2, "theorem {k}: {n}");
    }
}

#[test]
fn json_round_trip() {
    let t = run_trace(4, 16).unwrap();
    let back: ProofTrace = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(back, t);
    let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(v["theorem_id"], 4);
    assert_eq!(v["status"], "pass");
    assert!(v["steps"].as_array().unwrap().len() >= 8);
}

#[test]
fn text_output_lists_every_step() {
    let t = run_trace(2, 10).unwrap();
    let text = t.to_string();
    for s in &t.steps {
        assert!(text.contains(&format!("[{:>2}]", s.index)));
    }
    assert!(text.ends_with("result: PASS"));
}

#[test]
fn trivial_order() {
    for k in theorems() {
        assert!(run_trace(k, 0).unwrap().passed());
    }
}
