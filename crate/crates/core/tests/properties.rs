use proptest::prelude::*;

use obstructor::bundle::Triviality;
use obstructor::cech::{self, Window};
use obstructor::exotic::{self, RankThreeModel, SectionQ2};
use obstructor::obstruction::classify;
use obstructor::report::{self, ModelSpec, SweepBox};

fn valid_spec() -> impl Strategy<Value = ModelSpec> {
    (0u32..4, prop::collection::vec(-6i64..=6, 1..6), any::<bool>()).prop_map(|(genus, degrees, flagged)| {
        let triviality_flags = (flagged && genus > 0).then(|| {
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| match (d, i % 3) {
                    (0, 0) => Triviality::Trivial,
                    (0, 1) => Triviality::Unknown,
                    _ => Triviality::NonTrivial,
                })
                .collect()
        });
        ModelSpec {
            genus,
            degrees,
            triviality_flags,
        }
    })
}

proptest! {
    #[test]
    fn spec_round_trips(spec in valid_spec()) {
        prop_assert_eq!(ModelSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn analysis_ignores_summand_order(spec in valid_spec()) {
        let mut reversed = spec.clone();
        reversed.degrees.reverse();
        if let Some(f) = reversed.triviality_flags.as_mut() {
            f.reverse();
        }
        let a = report::analyze(&spec, Window::DEFAULT).unwrap();
        let b = report::analyze(&reversed, Window::DEFAULT).unwrap();
        prop_assert_eq!(a.model, b.model);
        prop_assert_eq!(a.obstruction, b.obstruction);
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn alpha_is_window_independent(d in prop::array::uniform3(-3i64..=3)) {
        let m = RankThreeModel::new(d);
        let tight = m.required_window();
        for phi in SectionQ2::basis(&m) {
            let lo = exotic::boundary_alpha(&m, &phi, tight).unwrap();
            let hi = exotic::boundary_alpha(&m, &phi, Window(40)).unwrap();
            prop_assert_eq!(lo.classes, hi.classes);
        }
    }

    #[test]
    fn oracle_dims_are_serre_dual(d in -20i64..=20) {
        let (h0, h1) = cech::cech_dims(d, Window::DEFAULT).unwrap();
        let (h0_dual, h1_dual) = cech::cech_dims(-d - 2, Window::DEFAULT).unwrap();
        prop_assert_eq!((h0, h1), (h1_dual, h0_dual));
    }
}

#[test]
fn sweep_rows_match_single_classification() {
    let b = SweepBox::Product {
        genus: 1,
        ranges: vec![(-1, 1), (0, 2), (-2, 0)],
    };
    let table = report::sweep(&b, false, Window::DEFAULT).unwrap();
    assert_eq!(table.rows.len(), 27);
    for row in &table.rows {
        let m = ModelSpec::new(1, row.degrees.clone()).model().unwrap();
        assert_eq!(classify(&m).status, row.status, "{:?}", row.degrees);
    }
    let again = report::sweep(&b, false, Window::DEFAULT).unwrap();
    assert_eq!(table.to_json(), again.to_json());
}
