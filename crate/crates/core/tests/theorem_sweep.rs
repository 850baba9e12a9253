use bwb_core::index::{bwb_index, IndexResult, ShellOracle};
use bwb_core::weyl::length_mu;
use bwb_core::{RootSystem, Weight};

fn box_weights(rank: usize, radius: i64) -> Vec<Weight> {
    let side = (2 * radius + 1) as usize;
    (0..side.pow(rank as u32))
        .map(|code| {
            let labels: Vec<i64> = (0..rank)
                .map(|k| ((code / side.pow(k as u32)) % side) as i64 - radius)
                .collect();
            Weight::from_ints(&labels)
        })
        .collect()
}

#[test]
fn closed_form_equals_shell_sum() {
    for label in ["A1", "A2", "A3", "B2", "G2", "C3"] {
        let rs = RootSystem::from_label(label).unwrap();
        let mut oracle = ShellOracle::new(&rs).unwrap();
        let radius = if rs.rank() == 3 { 2 } else { 3 };
        for mu in box_weights(rs.rank(), radius) {
            let expected = bwb_index(&rs, &mu).unwrap();
            assert_eq!(oracle.index(&mu).unwrap(), expected, "{label} {mu}");
        }
    }
}

#[test]
fn shell_pairings_follow_the_multiplicity_contract() {
    for label in ["A2", "B2", "G2"] {
        let rs = RootSystem::from_label(label).unwrap();
        let mut oracle = ShellOracle::new(&rs).unwrap();
        for mu in box_weights(2, 3) {
            let index = bwb_index(&rs, &mu).unwrap();
            for term in oracle.shell_terms(&mu).unwrap() {
                match &index {
                    IndexResult::Irreducible { lambda, .. } if *lambda == term.lambda => {
                        let l = length_mu(&rs, &mu).unwrap();
                        let expected = if l % 2 == 0 { (1, 0) } else { (0, 1) };
                        assert_eq!((term.plus, term.minus), expected, "{label} {mu}");
                    }
                    _ => assert_eq!(term.plus, term.minus, "{label} {mu} {}", term.lambda),
                }
            }
        }
    }
}

#[test]
fn higher_rank_spot_checks() {
    for (label, labels) in [
        ("B3", vec![-2, 1, 0]),
        ("C3", vec![1, -3, 1]),
        ("A4", vec![0, -2, 0, 1]),
        ("D4", vec![1, 0, -2, 0]),
        ("F4", vec![0, 0, -2, 0]),
    ] {
        let rs = RootSystem::from_label(label).unwrap();
        let mu = Weight::from_ints(&labels);
        assert_eq!(
            bwb_core::oracle_index(&rs, &mu).unwrap(),
            bwb_index(&rs, &mu).unwrap(),
            "{label} {mu}"
        );
    }
}
