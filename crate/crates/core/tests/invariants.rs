use proptest::prelude::*;
use qls_core::generators::generated;
use qls_core::square::{cardinality, from_json, to_json};
use qls_core::synthesis::{plan, synth, valid_cardinalities};
use qls_core::{GeneratorId, QlsGrid, RadExt};

fn target() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4).prop_flat_map(|m| {
        (Just(m), (4 * m..=16 * m * m).prop_filter("n+1 is impossible", move |&c| c != 4 * m + 1))
    })
}

fn negate_cells(grid: &QlsGrid, mask: u64) -> QlsGrid {
    let n = grid.order();
    let minus = RadExt::from_integer(-1);
    let cells = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let cell = grid.cell(i, j);
                    if mask >> ((i * n + j) % 64) & 1 == 1 {
                        cell.scaled(&minus)
                    } else {
                        cell.clone()
                    }
                })
                .collect()
        })
        .collect();
    QlsGrid::new("negated", cells).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synth_hits_every_valid_target((m, c) in target()) {
        let (plan, grid) = synth(m, c).unwrap();
        prop_assert!(plan.validate().is_ok());
        prop_assert_eq!(plan.target_c, c);
        prop_assert_eq!(grid.order(), 4 * m);
        prop_assert!(grid.is_qls());
        prop_assert_eq!(cardinality(&grid).unwrap().cardinality, c);
        prop_assert!(valid_cardinalities(m).unwrap().contains(c));
    }

    #[test]
    fn plans_are_deterministic((m, c) in target()) {
        prop_assert_eq!(plan(m, c).unwrap().to_json(), plan(m, c).unwrap().to_json());
    }

    #[test]
    fn cardinality_ignores_cell_signs(mask in any::<u64>(), pick in 0usize..4) {
        let id = [GeneratorId::H(5), GeneratorId::W0, GeneratorId::Wk(2), GeneratorId::w_pair(3, 4)][pick].clone();
        let grid = generated(&id).unwrap().grid.clone();
        let flipped = negate_cells(&grid, mask);
        prop_assert!(flipped.is_qls());
        prop_assert_eq!(
            cardinality(&flipped).unwrap().cardinality,
            cardinality(&grid).unwrap().cardinality
        );
    }

    #[test]
    fn json_round_trip_is_lossless(pick in 0usize..3, c_off in 0usize..40) {
        let grid = match pick {
            0 => generated(&GeneratorId::Hprime(6)).unwrap().grid.clone(),
            1 => generated(&GeneratorId::w_pair(7, 8)).unwrap().grid.clone(),
            _ => synth(2, 10 + c_off).unwrap().1,
        };
        let text = to_json(&grid);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(to_json(&back), text);
        prop_assert_eq!(back.cells(), grid.cells());
    }
}

#[test]
fn out_of_range_targets_are_rejected() {
    for m in 2..=6 {
        assert!(plan(m, 4 * m - 1).is_err());
        assert!(plan(m, 16 * m * m + 1).is_err());
        assert!(plan(m, 4 * m + 1).is_err());
    }
    assert!(plan(1, 4).is_err());
}
