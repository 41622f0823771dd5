//! Exhaustive checks of the structural facts behind the two classification
//! routes, over every vector with n <= 6 and product <= 4096.

use lme_core::recursion::{special_pattern, special_pattern_stripped};
use lme_core::sweep::dim_vectors;
use lme_core::{
    castle, classify, classify_case, delta, gmax, hyperdet_nonzero, run_recursion, strip_ones,
    CaseOutcome, DimVec, EnumerationBounds, LmeError, RecordRow, Status, TerminalCase,
};

fn sweep() -> impl Iterator<Item = DimVec> {
    dim_vectors(EnumerationBounds::new(2, 6, 4096)).map(|(raw, _)| DimVec::new(&raw).unwrap())
}

#[test]
fn traces_terminate_and_shrink() {
    for d in sweep() {
        let t = run_recursion(&d).unwrap();
        assert!((t.steps.len() as i128) <= d.entry_sum(), "{d}");
        for w in t.steps.windows(2) {
            assert!(w[1].entry_sum() < w[0].entry_sum());
            assert_eq!(castle(&w[0]).unwrap(), w[1]);
        }
        assert!(matches!(
            classify_case(&t.terminal).unwrap(),
            CaseOutcome::Terminal(_)
        ));
        assert!(matches!(castle(&t.terminal), Err(LmeError::NotCaseC(_))));
        assert!(t.terminal.ones() <= d.len() - 2);
        assert_eq!(
            special_pattern(&t.terminal),
            special_pattern_stripped(&t.terminal)
        );
        match t.case {
            TerminalCase::CaseA => assert_eq!(t.d_value, -1),
            TerminalCase::CaseB => assert_eq!(t.d_value, 0),
            _ => assert!(t.d_value >= 0),
        }
    }
}

#[test]
fn delta_minus_two_terminates_on_2aa() {
    let mut seen = 0;
    for d in sweep() {
        if delta(&d).unwrap() != -2 {
            continue;
        }
        seen += 1;
        let t = run_recursion(&d).unwrap();
        let a = strip_ones(&t.terminal).unwrap();
        let g = gmax(&d);
        assert_eq!(a.dims(), &[2, g, g], "{d} -> {}", t.terminal);
    }
    assert!(seen > 10);
}

#[test]
fn delta_bands_fix_terminal_case() {
    for d in sweep() {
        let dl = delta(&d).unwrap();
        let t = run_recursion(&d).unwrap();
        if dl < -5 {
            assert!(
                matches!(t.case, TerminalCase::CaseA | TerminalCase::CaseB),
                "{d}"
            );
        } else if dl < -2 {
            assert_eq!(t.case, TerminalCase::CaseB, "{d}");
        } else if dl > -2 {
            assert!(dl >= 2, "{d}");
            assert!(matches!(t.case, TerminalCase::CaseD(_)), "{d}");
        }
    }
}

#[test]
fn hyperdeterminant_is_weaker_than_nonemptiness() {
    let witness = sweep().find(|d| {
        let p = d.leading_product().unwrap();
        !hyperdet_nonzero(d) && 2 * d.last() as i128 <= p && !classify(d).unwrap().status.is_empty()
    });
    let d = witness.expect("some case-D vector with vanishing hyperdeterminant");
    assert_eq!(
        classify(&d).unwrap().status,
        Status::PositiveDim(delta(&d).unwrap() as u64)
    );
}

#[test]
fn two_entry_vectors() {
    for a in 2..=64u64 {
        for b in a..=64u64 {
            let d = DimVec::new(&[a, b]).unwrap();
            let expected = if a == b { Status::Point } else { Status::Empty };
            assert_eq!(classify(&d).unwrap().status, expected);
        }
    }
}

#[test]
fn record_rows_follow_closed_form() {
    for d in sweep().take(20_000) {
        let row = RecordRow::compute(&d).unwrap();
        let expected = if row.delta > -2 {
            row.delta
        } else if row.delta == -2 {
            (row.gmax as i128 - 3).max(0)
        } else if row.r == 0 {
            0
        } else {
            -1
        };
        assert_eq!(row.status, expected, "{d}");
    }
}
