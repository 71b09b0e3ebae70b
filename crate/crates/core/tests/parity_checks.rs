use jparity::hauptmodul::{expand, Catalog, HauptmodulId, Level};
use jparity::parity::*;
use jparity::Ring;
use num_integer::Integer;

fn brute_force_representable(value: u64, forms: &[QuadraticForm]) -> bool {
    forms.iter().any(|f| {
        (1u64..)
            .map(|l| f.eval(l))
            .take_while(|&v| v <= u128::from(value))
            .any(|v| v == u128::from(value))
    })
}

#[test]
fn solve_form_matches_enumeration_to_a_million() {
    let forms = [
        QuadraticForm::OBLONG,
        QuadraticForm::TWO_OBLONG,
        QuadraticForm::SIX_OBLONG,
        QuadraticForm::new(FormShape::Oblong, 3),
        QuadraticForm::PENT_MINUS,
        QuadraticForm::PENT_PLUS,
        QuadraticForm::new(FormShape::PentMinus, 2),
        QuadraticForm::new(FormShape::PentPlus, 2),
        QuadraticForm::new(FormShape::PentMinus, 7),
        QuadraticForm::new(FormShape::PentPlus, 7),
        QuadraticForm::new(FormShape::PentMinus, 14),
        QuadraticForm::new(FormShape::PentPlus, 14),
    ];
    const M: u64 = 1_000_000;
    for form in forms {
        let mut expected = vec![None; M as usize + 1];
        for l in 0..=10_000u64 {
            let v = form.eval(l);
            if v <= u128::from(M) {
                expected[v as usize] = Some(l);
            }
        }
        for m in 0..=M {
            assert_eq!(form.solve(m), expected[m as usize], "{form} at {m}");
        }
    }
}

#[test]
fn skipped_parameters_are_exactly_the_hypothesis_failures() {
    let catalog = Catalog::default();
    for family in Family::all() {
        let summary = verify_family(family, 50, &catalog).unwrap();
        let expected: Vec<i64> = (1..=50)
            .filter(|&t| {
                family
                    .hypothesis(t)
                    .is_some_and(|h| brute_force_representable(h.value, &h.forms))
            })
            .collect();
        assert_eq!(summary.skipped_t, expected, "{family}");
        assert_eq!(summary.pass + summary.skipped + summary.failed, 50);
    }
}

#[test]
fn witnesses_have_the_claimed_parity_over_int() {
    let catalog = Catalog::default();
    let mut int_series = std::collections::HashMap::new();
    for family in Family::all() {
        for t in 1..=3 {
            let claim = make_claim(family, t).unwrap();
            let report = check_claim(&claim, &catalog).unwrap();
            let series = int_series
                .entry(family.series())
                .or_insert_with(|| expand(family.series(), 1200, Ring::Int, true).unwrap());
            if claim.hi > series.valid_to() {
                continue;
            }
            for n in claim.candidates() {
                let odd = series.coeff_int(n).unwrap().is_odd();
                assert_eq!(
                    report.witnesses.contains(&n),
                    claim.expected.matches(odd),
                    "{family} t={t} n={n}"
                );
            }
        }
    }
}

/// The interval [13, 21] for t = 1 holds three `n ≡ 1 (mod 4)` and every
/// one of them has odd `b_7^+(n)`, although the hypothesis holds.
#[test]
fn t42b_has_no_even_witness_at_t1() {
    let claim = make_claim(Family::T42B, 1).unwrap();
    assert_eq!((claim.lo, claim.hi), (13, 21));
    assert!(claim.hypothesis_holds());

    let g7 = expand(
        HauptmodulId::GPlus(Level::new(7).unwrap()),
        21,
        Ring::Int,
        true,
    )
    .unwrap();
    let values: Vec<String> = claim
        .candidates()
        .map(|n| g7.coeff_int(n).unwrap().to_string())
        .collect();
    assert_eq!(values, ["34685", "332325", "2519825"]);

    let report = check_claim(&claim, &Catalog::default()).unwrap();
    assert!(report.witnesses.is_empty());
    assert_eq!(report.verdict, Verdict::Fail);

    let summary = verify_family(Family::T42B, 50, &Catalog::default()).unwrap();
    assert_eq!(
        summary.failures.iter().map(|r| r.t).collect::<Vec<_>>(),
        [1]
    );
}

#[test]
fn b3_identity_also_holds_at_zero() {
    let catalog = Catalog::default();
    assert!(lemma_lhs(Lemma::B3, 0, 10, &catalog).unwrap());
    assert!(Lemma::B3.rhs(0));
    assert_eq!(Lemma::B3.first_n(), 1);
}

#[test]
fn lemmas_hold_to_fifty_thousand() {
    let catalog = Catalog::default();
    for lemma in Lemma::ALL {
        let report = verify_lemma(lemma, 50_000, &catalog).unwrap();
        assert!(report.holds(), "{:?}", report.counterexamples);
        assert_eq!(report.checked, (50_001 - lemma.first_n()) as u64);
    }
}

#[test]
fn odd_theorems_have_a_witness_among_the_proof_points() {
    let catalog = Catalog::default();
    for family in [Family::T31A, Family::T32A, Family::T41A, Family::T42A] {
        for t in 1..=30 {
            let report = check_claim(&make_claim(family, t).unwrap(), &catalog).unwrap();
            if report.hypothesis_holds {
                assert_eq!(report.proof_point_witness, Some(true), "{family} t={t}");
            }
        }
    }
}

#[test]
fn table_rows_are_stated_symbolically() {
    let rows: Vec<(String, &str, Option<String>)> = Family::table5()
        .into_iter()
        .map(|f| (f.name(), f.interval_formula(), f.hypothesis_formula()))
        .collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0], ("TABLE5_ODD(2)".into(), "[t,4t(t+1)-1]", None));
    assert_eq!(rows[7].1, "[20t-1,10t(2t+1)-1]");
    assert_eq!(rows[7].2.as_deref(), Some("10t(2t+1) != l(l+1)"));
    assert_eq!(rows[10].1, "[52t-27,13t(3t-1)-1]");
    assert_eq!(rows[11].2.as_deref(), Some("26t(6t-1) != l(3l-1), l(3l+1)"));
}
