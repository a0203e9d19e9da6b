use qgraph_core::asymptotics::{
    check_case, eval_case, fit_case, AsymptoticCase, AsymptoticError, Model, Verdict, DEFAULT_GRID,
};

#[test]
fn numeric_and_exact_paths_agree() {
    let t = 0.5f64;
    for case in AsymptoticCase::ALL {
        let exact = case.series(60).eval_f64((-t).exp());
        let numeric = eval_case(case, t).unwrap();
        assert!((exact - numeric).abs() < 1e-10, "{case}: {exact} vs {numeric}");
    }
}

#[test]
fn every_item_passes_on_default_grid() {
    for case in AsymptoticCase::ALL {
        let r = check_case(case, &DEFAULT_GRID).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{case}: {:?}", r.rows);
    }
}

#[test]
fn a3_residual_halves() {
    let r = check_case(AsymptoticCase::A3, &[0.1, 0.05]).unwrap();
    let ratio = r.rows[1].ratio.unwrap();
    assert!((0.4..0.6).contains(&ratio));
    assert!((r.rows[0].value - 1.0).abs() < 0.15);
}

#[test]
fn wrong_model_fails() {
    // A4 grows like log(t)/t, so comparing t Q with 1 leaves a residual
    // that does not decay
    let grid = DEFAULT_GRID;
    let vals: Vec<f64> = grid.iter().map(|&t| t * eval_case(AsymptoticCase::A4, t).unwrap() - 1.0).collect();
    assert!(vals.windows(2).all(|w| w[1].abs() > 0.8 * w[0].abs()));
    assert_eq!(AsymptoticCase::A4.model(), Model::Log(1));
}

#[test]
fn insufficient_and_invalid_grids() {
    assert_eq!(check_case(AsymptoticCase::A2, &[0.2]).unwrap().verdict, Verdict::InsufficientGrid);
    assert!(matches!(check_case(AsymptoticCase::A2, &[0.1, 0.1]), Err(AsymptoticError::UnorderedGrid)));
    assert!(matches!(eval_case(AsymptoticCase::A2, 0.9), Err(AsymptoticError::OutOfRange(_))));
}

#[test]
fn log_coefficients_from_fit() {
    let grid = [0.1, 0.05, 0.025, 0.0125, 0.01];
    for (case, m) in [(AsymptoticCase::A4, 1.0), (AsymptoticCase::A6, 2.0), (AsymptoticCase::A8, 3.0)] {
        let f = fit_case(case, &grid).unwrap();
        let c = f.constants.iter().find(|(n, _)| n == "c").unwrap().1;
        assert!((c + m).abs() < 0.1, "{case}: c = {c}");
    }
}
